//! Composite registers: tensor products, qubit relabeling, gate immersion and
//! partial trace.
//!
//! Qubit 0 is the least significant bit of a basis index, which is also the
//! top line of a diagram of states.

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::state::{qubits_for_dim, DensityMatrix};

/// Sorted, duplicate-free set of qubit positions in an `n_qubits` register.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QubitSubset {
    n_qubits: usize,
    indices: Vec<usize>,
}

impl QubitSubset {
    /// Accepts indices in any order; duplicates and out-of-range positions
    /// are errors.
    pub fn new(n_qubits: usize, indices: &[usize]) -> Result<Self> {
        let mut sorted = indices.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidSubset(format!("duplicate qubit in {indices:?}")));
        }
        if let Some(&q) = sorted.iter().find(|&&q| q >= n_qubits) {
            return Err(Error::InvalidSubset(format!("qubit {q} out of range for {n_qubits} qubits")));
        }
        Ok(Self { n_qubits, indices: sorted })
    }

    pub fn single(n_qubits: usize, q: usize) -> Result<Self> {
        Self::new(n_qubits, &[q])
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn complement(&self) -> Vec<usize> {
        (0..self.n_qubits).filter(|q| !self.indices.contains(q)).collect()
    }

    pub fn union(&self, other: &QubitSubset) -> Result<QubitSubset> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::InvalidSubset("subsets of different registers".into()));
        }
        let mut all = self.indices.clone();
        all.extend(other.indices.iter().filter(|q| !self.indices.contains(q)));
        QubitSubset::new(self.n_qubits, &all)
    }
}

/// Places bit `b` of `value` at position `positions[b]`.
#[inline]
pub(crate) fn scatter(value: usize, positions: &[usize]) -> usize {
    positions.iter().enumerate().fold(0, |acc, (b, &p)| acc | (((value >> b) & 1) << p))
}

/// Inverse of [`scatter`]: bit `b` of the result is bit `positions[b]` of `index`.
#[inline]
pub(crate) fn gather(index: usize, positions: &[usize]) -> usize {
    positions.iter().enumerate().fold(0, |acc, (b, &p)| acc | (((index >> p) & 1) << b))
}

/// Kronecker product, `a` more significant.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kron(b)
}

/// Reduced density matrix after discarding the qubits in `traced`.
pub fn partial_trace(rho: &DensityMatrix, traced: &QubitSubset) -> Result<DensityMatrix> {
    let n = rho.n_qubits();
    if traced.n_qubits() != n {
        return Err(Error::InvalidSubset(format!(
            "subset built for {} qubits applied to a {n}-qubit state",
            traced.n_qubits()
        )));
    }
    if traced.is_empty() {
        return Err(Error::InvalidSubset("nothing to trace".into()));
    }
    if traced.len() == n {
        return Err(Error::InvalidSubset("tracing the whole register leaves no qubits".into()));
    }
    let kept = traced.complement();
    let out_dim = 1usize << kept.len();
    let env_dim = 1usize << traced.len();
    let m = rho.matrix();
    let mut out = ComplexMatrix::zeros(out_dim, out_dim);
    for r in 0..out_dim {
        let rb = scatter(r, &kept);
        for col in 0..out_dim {
            let cb = scatter(col, &kept);
            let mut acc = crate::matrix::ZERO;
            for t in 0..env_dim {
                let tb = scatter(t, traced.indices());
                acc += m[(rb | tb, cb | tb)];
            }
            out[(r, col)] = acc;
        }
    }
    Ok(DensityMatrix::from_trusted(out))
}

fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::InvalidPermutation(format!("expected {n} entries, got {}", perm.len())));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(Error::InvalidPermutation(format!("{perm:?} is not a bijection on 0..{n}")));
        }
    }
    Ok(())
}

/// Basis index after moving qubit `q` to position `perm[q]`.
#[inline]
fn relabel(index: usize, perm: &[usize]) -> usize {
    perm.iter().enumerate().fold(0, |acc, (q, &p)| acc | (((index >> q) & 1) << p))
}

/// Unitary that moves qubit `q` to position `perm[q]`.
pub fn permutation_unitary(perm: &[usize]) -> Result<ComplexMatrix> {
    let n = perm.len();
    check_permutation(perm, n)?;
    let dim = 1usize << n;
    let mut p = ComplexMatrix::zeros(dim, dim);
    for i in 0..dim {
        p[(relabel(i, perm), i)] = crate::matrix::ONE;
    }
    Ok(p)
}

/// Relabels the qubits of a square operator: qubit `q` becomes `perm[q]`.
pub fn permute_matrix_qubits(m: &ComplexMatrix, perm: &[usize]) -> Result<ComplexMatrix> {
    let n = qubits_for_dim(m.rows())?;
    check_permutation(perm, n)?;
    let dim = m.rows();
    let map: Vec<usize> = (0..dim).map(|i| relabel(i, perm)).collect();
    let mut out = ComplexMatrix::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            out[(map[i], map[j])] = m[(i, j)];
        }
    }
    Ok(out)
}

pub fn permute_qubits(rho: &DensityMatrix, perm: &[usize]) -> Result<DensityMatrix> {
    Ok(DensityMatrix::from_trusted(permute_matrix_qubits(rho.matrix(), perm)?))
}

/// Immerses `gate` into an `n_qubits` register. Local bit `b` of the gate
/// acts on register qubit `qubits[b]`; all other qubits see the identity.
pub fn immerse_ordered(gate: &ComplexMatrix, qubits: &[usize], n_qubits: usize) -> Result<ComplexMatrix> {
    let k = qubits.len();
    if !gate.is_square() || gate.rows() != 1usize << k {
        return Err(Error::Shape {
            expected: format!("{0}x{0} gate for {k} target qubits", 1usize << k),
            found: format!("{}x{}", gate.rows(), gate.cols()),
        });
    }
    let subset = QubitSubset::new(n_qubits, qubits)?;
    if subset.len() != k {
        return Err(Error::InvalidSubset(format!("duplicate target in {qubits:?}")));
    }
    if n_qubits > crate::MAX_QUBITS {
        return Err(Error::RegisterTooLarge(n_qubits));
    }
    let dim = 1usize << n_qubits;
    let mask = scatter((1usize << k) - 1, qubits);
    let mut out = ComplexMatrix::zeros(dim, dim);
    for col in 0..dim {
        let local_c = gather(col, qubits);
        let rest = col & !mask;
        for local_r in 0..(1usize << k) {
            let z = gate[(local_r, local_c)];
            if z != crate::matrix::ZERO {
                out[(rest | scatter(local_r, qubits), col)] = z;
            }
        }
    }
    Ok(out)
}

/// Immersion with the gate's local bits mapped onto the subset in ascending
/// order (local LSB on the lowest target).
pub fn immerse_gate(gate: &ComplexMatrix, targets: &QubitSubset, n_qubits: usize) -> Result<ComplexMatrix> {
    if targets.n_qubits() != n_qubits {
        return Err(Error::InvalidSubset(format!(
            "subset built for {} qubits, register has {n_qubits}",
            targets.n_qubits()
        )));
    }
    immerse_ordered(gate, targets.indices(), n_qubits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{c, pauli, C64, ONE, ZERO};
    use crate::state::{dm_from_pure, PureState};
    use std::f64::consts::FRAC_1_SQRT_2;

    fn cnot_msb_control() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
            [0.0, 0.0, 1.0, 0.0],
        ])
    }

    #[test]
    fn subset_validation() {
        assert!(QubitSubset::new(2, &[0, 0]).is_err());
        assert!(QubitSubset::new(2, &[2]).is_err());
        assert_eq!(QubitSubset::new(3, &[2, 0]).unwrap().indices(), &[0, 2]);
        assert_eq!(QubitSubset::new(3, &[1]).unwrap().complement(), vec![0, 2]);
    }

    #[test]
    fn ancilla_tensor_places_rho_top_left() {
        let rho = ComplexMatrix::from_rows(&[[c(0.6, 0.0), c(0.1, 0.2)], [c(0.1, -0.2), c(0.4, 0.0)]]);
        let ket0 = ComplexMatrix::from_real_rows(&[[1.0, 0.0], [0.0, 0.0]]);
        let all = tensor(&ket0, &rho);
        assert_eq!(all.block(0, 0, 2, 2), rho);
        assert_eq!(all.block(0, 2, 2, 2).max_abs(), 0.0);
        assert_eq!(all.block(2, 0, 2, 2).max_abs(), 0.0);
        assert_eq!(all.block(2, 2, 2, 2).max_abs(), 0.0);
    }

    #[test]
    fn bell_state_traces_to_maximally_mixed() {
        let h = c(FRAC_1_SQRT_2, 0.0);
        let rho = dm_from_pure(&PureState::new(vec![h, ZERO, ZERO, h]).unwrap());
        for q in 0..2 {
            let red = partial_trace(&rho, &QubitSubset::single(2, q).unwrap()).unwrap();
            assert!(red.max_abs_diff(&DensityMatrix::maximally_mixed(1).unwrap()) < 1e-15);
        }
    }

    #[test]
    fn msb_trace_is_sum_of_diagonal_blocks() {
        let v: Vec<C64> = vec![c(0.1, 0.2), c(0.3, -0.1), c(-0.5, 0.4), c(0.2, 0.6)];
        let rho = dm_from_pure(&PureState::normalized(v).unwrap());
        let red = partial_trace(&rho, &QubitSubset::single(2, 1).unwrap()).unwrap();
        let m = rho.matrix();
        let blocks = &m.block(0, 0, 2, 2) + &m.block(2, 2, 2, 2);
        assert!(red.matrix().max_abs_diff(&blocks) < 1e-15);
    }

    #[test]
    fn lsb_trace_adds_entries_in_pairs() {
        let v: Vec<C64> = vec![c(0.1, 0.2), c(0.3, -0.1), c(-0.5, 0.4), c(0.2, 0.6)];
        let rho = dm_from_pure(&PureState::normalized(v).unwrap());
        let red = partial_trace(&rho, &QubitSubset::single(2, 0).unwrap()).unwrap();
        let m = rho.matrix();
        for i in 0..2 {
            for j in 0..2 {
                let want = m[(2 * i, 2 * j)] + m[(2 * i + 1, 2 * j + 1)];
                assert!((red.get(i, j) - want).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn trace_whole_register_or_nothing_rejected() {
        let rho = DensityMatrix::maximally_mixed(2).unwrap();
        assert!(partial_trace(&rho, &QubitSubset::new(2, &[0, 1]).unwrap()).is_err());
        assert!(partial_trace(&rho, &QubitSubset::new(2, &[]).unwrap()).is_err());
        assert!(partial_trace(&rho, &QubitSubset::new(3, &[0]).unwrap()).is_err());
    }

    #[test]
    fn swap_relabels_basis_state() {
        let rho = dm_from_pure(&PureState::basis(2, 0b01).unwrap());
        let swapped = permute_qubits(&rho, &[1, 0]).unwrap();
        assert_eq!(swapped, dm_from_pure(&PureState::basis(2, 0b10).unwrap()));
        assert_eq!(permute_qubits(&rho, &[0, 1]).unwrap(), rho);
        assert!(permute_qubits(&rho, &[0, 0]).is_err());
        assert!(permute_qubits(&rho, &[0]).is_err());
    }

    #[test]
    fn permutation_unitary_matches_relabel() {
        let perm = [2, 0, 1];
        let p = permutation_unitary(&perm).unwrap();
        let v: Vec<C64> = (0..8).map(|i| c(i as f64, 0.5 * i as f64)).collect();
        let rho = dm_from_pure(&PureState::normalized(v).unwrap());
        let via_unitary = p.sandwich(rho.matrix());
        assert!(via_unitary.max_abs_diff(permute_qubits(&rho, &perm).unwrap().matrix()) < 1e-15);
    }

    #[test]
    fn sigma_x_on_lsb_is_identity_kron_x() {
        let u = immerse_gate(&pauli::x(), &QubitSubset::single(2, 0).unwrap(), 2).unwrap();
        assert_eq!(u, ComplexMatrix::identity(2).kron(&pauli::x()));
        let u = immerse_gate(&pauli::x(), &QubitSubset::single(2, 1).unwrap(), 2).unwrap();
        assert_eq!(u, pauli::x().kron(&ComplexMatrix::identity(2)));
    }

    #[test]
    fn cnot_truth_table() {
        let u = immerse_gate(&cnot_msb_control(), &QubitSubset::new(2, &[0, 1]).unwrap(), 2).unwrap();
        for input in 0..4usize {
            let expected = if input & 0b10 != 0 { input ^ 1 } else { input };
            for out in 0..4 {
                let want = if out == expected { ONE } else { ZERO };
                assert_eq!(u[(out, input)], want, "in {input:02b} out {out:02b}");
            }
        }
    }

    #[test]
    fn ordered_immersion_reverses_control() {
        // local bit 1 (control) on qubit 0, local bit 0 (target) on qubit 1
        let u = immerse_ordered(&cnot_msb_control(), &[1, 0], 2).unwrap();
        assert_eq!(u[(0b11, 0b01)], ONE);
        assert_eq!(u[(0b10, 0b10)], ONE);
    }

    #[test]
    fn hadamard_in_middle_of_three() {
        let h = ComplexMatrix::from_real_rows(&[[1.0, 1.0], [1.0, -1.0]]).scale(c(FRAC_1_SQRT_2, 0.0));
        let u = immerse_gate(&h, &QubitSubset::single(3, 1).unwrap(), 3).unwrap();
        assert!(u.unitarity_defect() < 1e-15);
        let expected = ComplexMatrix::identity(2).kron(&h).kron(&ComplexMatrix::identity(2));
        assert!(u.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn immersion_shape_errors() {
        let bad = immerse_gate(&pauli::x(), &QubitSubset::new(2, &[0, 1]).unwrap(), 2);
        assert!(matches!(bad, Err(Error::Shape { .. })));
        assert!(immerse_ordered(&pauli::x(), &[3], 2).is_err());
    }
}
