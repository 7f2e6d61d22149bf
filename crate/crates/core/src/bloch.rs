//! Bloch-vector coordinates of single-qubit states and the affine action
//! `λ′ = Mλ + c` a channel induces on them.

use std::f64::consts::PI;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::kraus::{apply_channel, KrausChannel};
use crate::linalg::{det3, real_svd};
use crate::matrix::{c, ComplexMatrix};
use crate::state::DensityMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub const ORIGIN: BlochVector = BlochVector { x: 0.0, y: 0.0, z: 0.0 };

    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Self { x: a[0], y: a[1], z: a[2] }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn norm(self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn max_abs_diff(self, other: BlochVector) -> f64 {
        (self.x - other.x).abs().max((self.y - other.y).abs()).max((self.z - other.z).abs())
    }
}

/// `X = 2 Re ρ₂₁`, `Y = 2 Im ρ₂₁`, `Z = ρ₁₁ − ρ₂₂`.
pub fn bloch_from_dm(rho: &DensityMatrix) -> Result<BlochVector> {
    if rho.n_qubits() != 1 {
        return Err(Error::Shape { expected: "2x2 density matrix".into(), found: format!("{0}x{0}", rho.dim()) });
    }
    let r21 = rho.get(1, 0);
    Ok(BlochVector { x: 2.0 * r21.re, y: 2.0 * r21.im, z: (rho.get(0, 0) - rho.get(1, 1)).re })
}

/// `½ [[1 + Z, X − iY], [X + iY, 1 − Z]]`
pub fn dm_from_bloch(v: BlochVector) -> Result<DensityMatrix> {
    let n = v.norm();
    if !(n <= 1.0 + 1e-10) {
        return Err(Error::OutsideBlochBall(n));
    }
    let m = ComplexMatrix::from_rows(&[
        [c(0.5 * (1.0 + v.z), 0.0), c(0.5 * v.x, -0.5 * v.y)],
        [c(0.5 * v.x, 0.5 * v.y), c(0.5 * (1.0 - v.z), 0.0)],
    ]);
    Ok(DensityMatrix::from_trusted(m))
}

pub type Mat3 = [[f64; 3]; 3];

pub const IDENTITY3: Mat3 = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];

pub fn mat3_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

pub fn mat3_transpose(a: &Mat3) -> Mat3 {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = a[j][i];
        }
    }
    out
}

pub fn mat3_vec(a: &Mat3, v: [f64; 3]) -> [f64; 3] {
    [0, 1, 2].map(|i| (0..3).map(|k| a[i][k] * v[k]).sum())
}

pub fn mat3_max_abs_diff(a: &Mat3, b: &Mat3) -> f64 {
    (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).map(|(i, j)| (a[i][j] - b[i][j]).abs()).fold(0.0, f64::max)
}

/// `‖AAᵀ − I‖_max`
pub fn orthogonality_defect(a: &Mat3) -> f64 {
    mat3_max_abs_diff(&mat3_mul(a, &mat3_transpose(a)), &IDENTITY3)
}

/// Spectral norm via the largest singular value.
pub fn mat3_norm2(a: &Mat3) -> f64 {
    let rows: Vec<Vec<f64>> = a.iter().map(|r| r.to_vec()).collect();
    real_svd(&rows).1[0]
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochAffineMap {
    pub m: Mat3,
    pub c: [f64; 3],
}

impl BlochAffineMap {
    pub const IDENTITY: BlochAffineMap = BlochAffineMap { m: IDENTITY3, c: [0.0; 3] };

    pub fn apply(&self, v: BlochVector) -> BlochVector {
        let mv = mat3_vec(&self.m, v.to_array());
        BlochVector::new(mv[0] + self.c[0], mv[1] + self.c[1], mv[2] + self.c[2])
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &BlochAffineMap) -> BlochAffineMap {
        let m = mat3_mul(&self.m, &first.m);
        let mc = mat3_vec(&self.m, first.c);
        BlochAffineMap { m, c: [0, 1, 2].map(|i| mc[i] + self.c[i]) }
    }

    /// Conjugation `R ∘ self ∘ Rᵀ` by an orthogonal `R`.
    pub fn conjugated(&self, r: &Mat3) -> BlochAffineMap {
        BlochAffineMap { m: mat3_mul(&mat3_mul(r, &self.m), &mat3_transpose(r)), c: mat3_vec(r, self.c) }
    }

    pub fn max_abs_diff(&self, other: &BlochAffineMap) -> f64 {
        let dc = (0..3).map(|i| (self.c[i] - other.c[i]).abs()).fold(0.0, f64::max);
        mat3_max_abs_diff(&self.m, &other.m).max(dc)
    }
}

/// Reads `(M, c)` off four channel applications: `c` is the image of I/2,
/// column `j` of `M` is the image of `(I + σⱼ)/2` minus `c`.
pub fn affine_map_of_channel(ch: &KrausChannel) -> Result<BlochAffineMap> {
    if ch.dim() != 2 {
        return Err(Error::Shape { expected: "single-qubit channel".into(), found: format!("dimension {}", ch.dim()) });
    }
    let center = bloch_from_dm(&apply_channel(ch, &DensityMatrix::maximally_mixed(1)?)?)?.to_array();
    let mut m = [[0.0; 3]; 3];
    for j in 0..3 {
        let mut e = [0.0; 3];
        e[j] = 1.0;
        let image = bloch_from_dm(&apply_channel(ch, &dm_from_bloch(BlochVector::from_array(e))?)?)?.to_array();
        for i in 0..3 {
            m[i][j] = image[i] - center[i];
        }
    }
    Ok(BlochAffineMap { m, c: center })
}

/// `M = O₁ D O₂ᵀ` with `O₁`, `O₂` orthogonal and `D` diagonal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapDecomposition {
    pub o1: Mat3,
    pub d: [f64; 3],
    pub o2: Mat3,
}

impl MapDecomposition {
    pub fn reconstruct(&self) -> Mat3 {
        let mut dm = [[0.0; 3]; 3];
        for i in 0..3 {
            dm[i][i] = self.d[i];
        }
        mat3_mul(&mat3_mul(&self.o1, &dm), &mat3_transpose(&self.o2))
    }
}

/// Rotate–scale–rotate factorization of `M`. `|D|` is sorted descending;
/// both factors are proper rotations, any reflection being absorbed as a
/// sign on the smallest entry of `D`.
///
/// Under degenerate `D` the rotations are not unique.
pub fn decompose_map(map: &BlochAffineMap) -> MapDecomposition {
    let rows: Vec<Vec<f64>> = map.m.iter().map(|r| r.to_vec()).collect();
    let (mut u, s, mut v) = real_svd(&rows);
    let mut d = [s[0], s[1], s[2]];
    if det3(&u) < 0.0 {
        u.iter_mut().for_each(|r| r[2] = -r[2]);
        d[2] = -d[2];
    }
    if det3(&v) < 0.0 {
        v.iter_mut().for_each(|r| r[2] = -r[2]);
        d[2] = -d[2];
    }
    let to3 = |x: Vec<Vec<f64>>| -> Mat3 { [0, 1, 2].map(|i| [x[i][0], x[i][1], x[i][2]]) };
    MapDecomposition { o1: to3(u), d, o2: to3(v) }
}

/// Image under `map` of a latitude–longitude grid on the unit sphere.
///
/// Latitudes run from the north pole to the south pole inclusive
/// (`n_lat` rings), longitudes over `[0, 2π)` (`n_lon` meridians); rows are
/// latitude-major. Pole rings keep their duplicated points.
pub fn ellipsoid_samples(map: &BlochAffineMap, n_lat: usize, n_lon: usize) -> Result<Vec<BlochVector>> {
    if n_lat < 2 || n_lon < 2 {
        return Err(Error::OutOfRange(format!("grid {n_lat}x{n_lon} needs at least 2x2")));
    }
    let mut out = Vec::with_capacity(n_lat * n_lon);
    for i in 0..n_lat {
        let polar = PI * i as f64 / (n_lat - 1) as f64;
        let (sp, cp) = polar.sin_cos();
        for j in 0..n_lon {
            let az = 2.0 * PI * j as f64 / n_lon as f64;
            let (sa, ca) = az.sin_cos();
            out.push(map.apply(BlochVector::new(sp * ca, sp * sa, cp)));
        }
    }
    Ok(out)
}

/// `x,y,z` header then one point per line, 17 significant digits.
pub fn points_to_csv(points: &[BlochVector]) -> String {
    let mut s = String::from("x,y,z\n");
    for p in points {
        let _ = writeln!(s, "{:.16e},{:.16e},{:.16e}", p.x, p.y, p.z);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{make_amp_damp, make_deformation, make_rotation, Axis, DeformationKind, Direction};

    #[test]
    fn basic_conversions() {
        let ground = DensityMatrix::new(ComplexMatrix::from_real_rows(&[[1.0, 0.0], [0.0, 0.0]])).unwrap();
        assert_eq!(bloch_from_dm(&ground).unwrap(), BlochVector::new(0.0, 0.0, 1.0));
        assert_eq!(bloch_from_dm(&DensityMatrix::maximally_mixed(1).unwrap()).unwrap(), BlochVector::ORIGIN);
        let plus = DensityMatrix::new(ComplexMatrix::from_real_rows(&[[0.5, 0.5], [0.5, 0.5]])).unwrap();
        assert_eq!(bloch_from_dm(&plus).unwrap(), BlochVector::new(1.0, 0.0, 0.0));

        assert_eq!(dm_from_bloch(BlochVector::new(0.0, 0.0, 1.0)).unwrap(), ground);
        assert_eq!(dm_from_bloch(BlochVector::new(1.0, 0.0, 0.0)).unwrap(), plus);
        assert!(dm_from_bloch(BlochVector::new(1.0, 0.1, 0.0)).is_err());
        assert!(bloch_from_dm(&DensityMatrix::maximally_mixed(2).unwrap()).is_err());
    }

    #[test]
    fn y_component_sign() {
        // (|0⟩ + i|1⟩)/√2 sits on +y
        let m = ComplexMatrix::from_rows(&[[c(0.5, 0.0), c(0.0, -0.5)], [c(0.0, 0.5), c(0.5, 0.0)]]);
        let v = bloch_from_dm(&DensityMatrix::new(m).unwrap()).unwrap();
        assert_eq!(v, BlochVector::new(0.0, 1.0, 0.0));
    }

    #[test]
    fn identity_channel_map() {
        let map = affine_map_of_channel(&KrausChannel::identity(2)).unwrap();
        assert!(map.max_abs_diff(&BlochAffineMap::IDENTITY) < 1e-15);
    }

    #[test]
    fn phase_flip_map() {
        let t = 0.8_f64;
        let map = affine_map_of_channel(&make_deformation(DeformationKind::PhaseFlip, t).unwrap()).unwrap();
        let expected = BlochAffineMap { m: [[t.cos(), 0.0, 0.0], [0.0, t.cos(), 0.0], [0.0, 0.0, 1.0]], c: [0.0; 3] };
        assert!(map.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn damping_map_from_operators() {
        let t = 1.2_f64;
        let h = (t / 2.0).cos();
        let map = affine_map_of_channel(&make_amp_damp(Axis::Z, Direction::Plus, t).unwrap()).unwrap();
        let expected = BlochAffineMap {
            m: [[h, 0.0, 0.0], [0.0, h, 0.0], [0.0, 0.0, h * h]],
            c: [0.0, 0.0, (t / 2.0).sin().powi(2)],
        };
        assert!(map.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn ry_quarter_turn() {
        let map = affine_map_of_channel(&make_rotation(Axis::Y, PI / 2.0)).unwrap();
        // (X, Y, Z) → (−Z, Y, X)
        let expected = [[0.0, 0.0, -1.0], [0.0, 1.0, 0.0], [1.0, 0.0, 0.0]];
        assert!(mat3_max_abs_diff(&map.m, &expected) < 1e-15);
    }

    #[test]
    fn decomposition_of_identity() {
        let dec = decompose_map(&BlochAffineMap::IDENTITY);
        assert_eq!(dec.d, [1.0, 1.0, 1.0]);
        assert!(mat3_max_abs_diff(&dec.o1, &IDENTITY3) < 1e-15);
        assert!(mat3_max_abs_diff(&dec.o2, &IDENTITY3) < 1e-15);
    }

    #[test]
    fn decomposition_sorts_axes() {
        let t = 1.0_f64;
        let map = BlochAffineMap { m: [[t.cos(), 0.0, 0.0], [0.0, t.cos(), 0.0], [0.0, 0.0, 1.0]], c: [0.0; 3] };
        let dec = decompose_map(&map);
        assert!((dec.d[0] - 1.0).abs() < 1e-15);
        assert!((dec.d[1] - t.cos()).abs() < 1e-15 && (dec.d[2] - t.cos()).abs() < 1e-15);
        assert!(mat3_max_abs_diff(&dec.reconstruct(), &map.m) < 1e-15);
        assert!((det3(dec.o1.map(|r| r.to_vec()).as_ref()) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn decomposition_absorbs_reflection() {
        let map = BlochAffineMap { m: [[1.0, 0.0, 0.0], [0.0, 0.5, 0.0], [0.0, 0.0, -0.25]], c: [0.0; 3] };
        let dec = decompose_map(&map);
        assert!((dec.d[2] + 0.25).abs() < 1e-15);
        assert!(mat3_max_abs_diff(&dec.reconstruct(), &map.m) < 1e-15);
        for o in [&dec.o1, &dec.o2] {
            assert!((det3(o.map(|r| r.to_vec()).as_ref()) - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn grid_layout() {
        let pts = ellipsoid_samples(&BlochAffineMap::IDENTITY, 3, 4).unwrap();
        assert_eq!(pts.len(), 12);
        for p in &pts[..4] {
            assert!(p.max_abs_diff(BlochVector::new(0.0, 0.0, 1.0)) < 1e-15);
        }
        assert!(pts[4].max_abs_diff(BlochVector::new(1.0, 0.0, 0.0)) < 1e-15);
        assert!(pts[5].max_abs_diff(BlochVector::new(0.0, 1.0, 0.0)) < 1e-15);
        assert!(pts[11].max_abs_diff(BlochVector::new(0.0, 0.0, -1.0)) < 1e-15);
        for p in &pts {
            assert!((p.norm() - 1.0).abs() < 1e-15);
        }
        assert!(ellipsoid_samples(&BlochAffineMap::IDENTITY, 1, 4).is_err());
    }

    #[test]
    fn phase_flip_half_pi_collapses_to_axis() {
        let map = affine_map_of_channel(&make_deformation(DeformationKind::PhaseFlip, PI / 2.0).unwrap()).unwrap();
        for p in ellipsoid_samples(&map, 5, 6).unwrap() {
            assert!(p.x.abs() < 1e-15 && p.y.abs() < 1e-15 && p.z.abs() <= 1.0 + 1e-15);
        }
    }

    #[test]
    fn csv_shape() {
        let csv = points_to_csv(&[BlochVector::new(0.1, -0.2, 1.0)]);
        assert_eq!(
            csv,
            "x,y,z\n1.0000000000000001e-1,-2.0000000000000001e-1,1.0000000000000000e0\n"
        );
        let back: Vec<f64> = csv.lines().nth(1).unwrap().split(',').map(|t| t.parse().unwrap()).collect();
        assert_eq!(back, vec![0.1, -0.2, 1.0]);
    }
}
