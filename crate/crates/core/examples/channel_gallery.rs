//! Every built-in channel at one angle: completeness and its effect on a
//! fixed input.

use qsdiag::bloch::bloch_from_dm;
use qsdiag::channels::{ChannelKind, ChannelSpec};
use qsdiag::kraus::{apply_channel, validate_channel};
use qsdiag::matrix::c;
use qsdiag::state::{dm_from_pure, PureState};

fn main() -> qsdiag::Result<()> {
    let theta = std::f64::consts::FRAC_PI_3;
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let input = dm_from_pure(&PureState::new(vec![c(h, 0.0), c(0.5, 0.5)])?);
    let b = bloch_from_dm(&input)?;
    println!("input bloch ({:+.4}, {:+.4}, {:+.4})", b.x, b.y, b.z);
    for kind in ChannelKind::ALL {
        let spec = match kind {
            ChannelKind::DepolarizingGeneral => {
                let (s, co) = theta.sin_cos();
                ChannelSpec::depolarizing_general([c(co, 0.0), c(0.6 * s, 0.0), c(0.0, 0.48 * s), c(0.64 * s, 0.0)])
            }
            _ => ChannelSpec::new(kind, theta),
        };
        let ch = spec.build()?;
        let out = bloch_from_dm(&apply_channel(&ch, &input)?)?;
        println!(
            "{:<24} ops={} defect={:.1e}  -> ({:+.4}, {:+.4}, {:+.4})",
            kind.name(),
            ch.len(),
            validate_channel(&ch),
            out.x,
            out.y,
            out.z
        );
    }
    Ok(())
}
