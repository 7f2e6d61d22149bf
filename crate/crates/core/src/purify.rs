//! Closed-form purification of one qubit into a two-qubit pure state.
//!
//! The ancilla is the least significant qubit: amplitude `C[i][a]` sits at
//! index `2i + a`. The gauge is fixed by `C[0][1] = 0` and `C[0][0] ≥ 0`
//! real, which leaves
//!
//! ```text
//! C00 = √ρ00    C10 = ρ01* / √ρ00    C11 = √(ρ11 − |ρ01|² / ρ00)
//! ```
//!
//! (zero-based entries here). When `ρ00 = 0` the state is `|11⟩`.

use crate::diagram::Circuit;
use crate::error::{Error, Result};
use crate::matrix::{c, C64, ZERO};
use crate::state::{DensityMatrix, PureState};

#[derive(Debug, Clone, PartialEq)]
pub struct PurificationResult {
    pub state: PureState,
    /// `[C00, C01, C10, C11]`.
    pub coefficients: [C64; 4],
    pub theta1: f64,
    pub theta2: f64,
    pub phi: f64,
}

fn check_single(rho: &DensityMatrix) -> Result<()> {
    if rho.n_qubits() != 1 {
        return Err(Error::Shape { expected: "2x2 density matrix".into(), found: format!("{0}x{0}", rho.dim()) });
    }
    Ok(())
}

fn coefficients(rho: &DensityMatrix) -> [C64; 4] {
    let p0 = rho.get(0, 0).re;
    let p1 = rho.get(1, 1).re;
    let off = rho.get(0, 1);
    if p0 <= 0.0 {
        return [ZERO, ZERO, ZERO, c(p1.max(0.0).sqrt(), 0.0)];
    }
    let s = p0.sqrt();
    let mut c10 = off.conj() / s;
    // rounding can push |C10|² past ρ11 for states on the PSD boundary
    let cap = p1.max(0.0);
    if c10.norm_sqr() > cap {
        c10 *= (cap / c10.norm_sqr()).sqrt();
    }
    let c11 = ((p0 * p1 - off.norm_sqr()).max(0.0) / p0).min(cap - c10.norm_sqr()).max(0.0).sqrt();
    let raw = [c(s, 0.0), ZERO, c10, c(c11, 0.0)];
    let norm = raw.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    raw.map(|z| z / norm)
}

/// Two-qubit pure state whose ancilla-traced reduction is `rho`.
pub fn purify_single_qubit(rho: &DensityMatrix) -> Result<PurificationResult> {
    check_single(rho)?;
    let coefficients = coefficients(rho);
    let (theta1, theta2, phi) = angles_of(&coefficients, rho);
    Ok(PurificationResult {
        state: PureState::from_raw(coefficients.to_vec()),
        coefficients,
        theta1,
        theta2,
        phi,
    })
}

fn angles_of(cf: &[C64; 4], rho: &DensityMatrix) -> (f64, f64, f64) {
    let tail = (cf[2].norm_sqr() + cf[3].norm_sqr()).sqrt();
    let theta1 = tail.atan2(cf[0].re);
    let theta2 = if tail > 0.0 { cf[3].norm().atan2(cf[2].norm()) } else { 0.0 };
    let off = rho.get(0, 1);
    let phi = if cf[2] == ZERO { 0.0 } else { off.arg() };
    (theta1, theta2, phi)
}

/// `(θ1, θ2, φ)`: the first two angles build the moduli
/// `[cos θ1, 0, cos θ2 sin θ1, sin θ2 sin θ1]`, both in `[0, π/2]`;
/// `φ` is the argument of the off-diagonal entry `ρ01`.
pub fn purification_angles(rho: &DensityMatrix) -> Result<(f64, f64, f64)> {
    check_single(rho)?;
    Ok(angles_of(&coefficients(rho), rho))
}

/// Circuit preparing the purification from `|00⟩`:
///
/// ```text
/// ry(2θ1) 1
/// cry(2θ2) 1 0
/// phase(-φ) 1
/// cphase(φ) 1 0
/// ```
///
/// The two phase gates together put `e^{-iφ}` on `|10⟩` alone, which is
/// the phase of `ρ01*`. Qubit 0 (the ancilla) is marked as traced out.
pub fn synthesize_purification_circuit(rho: &DensityMatrix) -> Result<Circuit> {
    let (t1, t2, phi) = purification_angles(rho)?;
    Circuit::new(2)?
        .gate("ry", &[2.0 * t1], &[1])?
        .gate("cry", &[2.0 * t2], &[1, 0])?
        .gate("phase", &[-phi], &[1])?
        .gate("cphase", &[phi], &[1, 0])?
        .with_traced(&[0])
}
