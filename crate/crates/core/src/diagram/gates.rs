//! Gate matrices of the circuit language.
//!
//! Multi-qubit matrices are written in the order the qubits are listed in a
//! gate statement: the first listed qubit is the most significant bit of the
//! gate's local space (so a control always comes first).

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

use crate::matrix::{c, ComplexMatrix, C64, I, ONE, ZERO};

/// Parameter count and qubit count of a base (uncontrolled) gate.
pub fn base_signature(name: &str) -> Option<(usize, usize)> {
    match name {
        "x" | "y" | "z" | "h" | "s" | "t" | "id" => Some((0, 1)),
        "rx" | "ry" | "rz" | "phase" => Some((1, 1)),
        "swap" => Some((0, 2)),
        _ => None,
    }
}

pub fn base_matrix(name: &str, params: &[f64]) -> Option<ComplexMatrix> {
    let p = |k: usize| params.get(k).copied();
    Some(match name {
        "id" => ComplexMatrix::identity(2),
        "x" => ComplexMatrix::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]]),
        "y" => ComplexMatrix::from_rows(&[[ZERO, -I], [I, ZERO]]),
        "z" => ComplexMatrix::diag(&[ONE, c(-1.0, 0.0)]),
        "h" => ComplexMatrix::from_real_rows(&[[1.0, 1.0], [1.0, -1.0]]).scale(c(FRAC_1_SQRT_2, 0.0)),
        "s" => ComplexMatrix::diag(&[ONE, I]),
        "t" => ComplexMatrix::diag(&[ONE, C64::from_polar(1.0, FRAC_PI_4)]),
        "rx" => {
            let (s, co) = (p(0)? / 2.0).sin_cos();
            ComplexMatrix::from_rows(&[[c(co, 0.0), c(0.0, -s)], [c(0.0, -s), c(co, 0.0)]])
        }
        "ry" => {
            let (s, co) = (p(0)? / 2.0).sin_cos();
            ComplexMatrix::from_real_rows(&[[co, -s], [s, co]])
        }
        "rz" => {
            let h = p(0)? / 2.0;
            ComplexMatrix::diag(&[C64::from_polar(1.0, -h), C64::from_polar(1.0, h)])
        }
        "phase" => ComplexMatrix::diag(&[ONE, C64::from_polar(1.0, p(0)?)]),
        "swap" => ComplexMatrix::from_real_rows(&[
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ]),
        _ => return None,
    })
}

/// `|0⟩⟨0| ⊗ I + |1⟩⟨1| ⊗ U`, control in the most significant position.
pub fn controlled(u: &ComplexMatrix) -> ComplexMatrix {
    let d = u.rows();
    let mut out = ComplexMatrix::identity(2 * d);
    for i in 0..d {
        for j in 0..d {
            out[(d + i, d + j)] = u[(i, j)];
        }
    }
    out
}

/// Splits `cc…base` into the number of controls and the base name, if the
/// base is a known gate.
pub fn split_controls(name: &str) -> Option<(usize, &str)> {
    let mut rest = name;
    let mut controls = 0;
    loop {
        if base_signature(rest).is_some() {
            return Some((controls, rest));
        }
        rest = rest.strip_prefix('c')?;
        controls += 1;
    }
}

/// Full matrix (controls included) and qubit arity for a gate name such as
/// `ccx` or `cry`.
pub fn named_gate(name: &str, params: &[f64]) -> Option<(ComplexMatrix, usize)> {
    let (controls, base) = split_controls(name)?;
    let (n_params, arity) = base_signature(base)?;
    if params.len() != n_params {
        return None;
    }
    let mut m = base_matrix(base, params)?;
    for _ in 0..controls {
        m = controlled(&m);
    }
    Some((m, arity + controls))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_base_gates_unitary() {
        for name in ["id", "x", "y", "z", "h", "s", "t", "swap"] {
            assert!(base_matrix(name, &[]).unwrap().unitarity_defect() < 1e-15, "{name}");
        }
        for name in ["rx", "ry", "rz", "phase"] {
            assert!(base_matrix(name, &[0.7]).unwrap().unitarity_defect() < 1e-15, "{name}");
        }
    }

    #[test]
    fn controls_are_parsed() {
        assert_eq!(split_controls("cx"), Some((1, "x")));
        assert_eq!(split_controls("ccx"), Some((2, "x")));
        assert_eq!(split_controls("cswap"), Some((1, "swap")));
        assert_eq!(split_controls("cphase"), Some((1, "phase")));
        assert_eq!(split_controls("foo"), None);
        assert_eq!(split_controls("c"), None);
    }

    #[test]
    fn cnot_layout() {
        let (m, k) = named_gate("cx", &[]).unwrap();
        assert_eq!(k, 2);
        assert_eq!(m[(2, 3)], ONE);
        assert_eq!(m[(3, 2)], ONE);
        assert_eq!(m[(0, 0)], ONE);
        assert!(named_gate("cx", &[1.0]).is_none());
        assert!(named_gate("ry", &[]).is_none());
    }

    #[test]
    fn ry_prepares_cos_sin() {
        let m = base_matrix("ry", &[1.0]).unwrap();
        let v = m.mul_vec(&[ONE, ZERO]);
        assert!((v[0] - c(0.5f64.cos(), 0.0)).norm() < 1e-16);
        assert!((v[1] - c(0.5f64.sin(), 0.0)).norm() < 1e-16);
    }
}
