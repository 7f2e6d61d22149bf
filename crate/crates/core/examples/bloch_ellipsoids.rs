//! Affine Bloch maps of a few channels, their rotate-scale-rotate factors
//! and a CSV of the image ellipsoid.

use qsdiag::bloch::{affine_map_of_channel, decompose_map, ellipsoid_samples, points_to_csv};
use qsdiag::channels::{make_amp_damp, make_deformation, make_depolarizing_standard, make_rotation, Axis, DeformationKind, Direction};

fn main() -> qsdiag::Result<()> {
    let theta = 0.8;
    let channels = [
        ("rotation x", make_rotation(Axis::X, theta)),
        ("phase flip", make_deformation(DeformationKind::PhaseFlip, theta)?),
        ("damping y-", make_amp_damp(Axis::Y, Direction::Minus, theta)?),
        ("depolarizing", make_depolarizing_standard(theta)?),
    ];
    for (name, ch) in &channels {
        let map = affine_map_of_channel(ch)?;
        let dec = decompose_map(&map);
        println!("{name}");
        for row in map.m {
            println!("  [{:+.4} {:+.4} {:+.4}]", row[0], row[1], row[2]);
        }
        println!("  shift  ({:+.4}, {:+.4}, {:+.4})", map.c[0], map.c[1], map.c[2]);
        println!("  axes   ({:.4}, {:.4}, {:.4})", dec.d[0], dec.d[1], dec.d[2]);
    }

    let map = affine_map_of_channel(&channels[2].1)?;
    let csv = points_to_csv(&ellipsoid_samples(&map, 5, 8)?);
    print!("{}", csv.lines().take(6).map(|l| format!("{l}\n")).collect::<String>());
    println!("... {} points", csv.lines().count() - 1);
    Ok(())
}
