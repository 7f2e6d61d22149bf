//! Pure states, density matrices and their validation.

use crate::error::{Error, Result};
use crate::linalg::hermitian_eigen;
use crate::matrix::{ComplexMatrix, C64, ONE, ZERO};
use crate::{MAX_QUBITS, TOL_ALGEBRAIC, TOL_SPECTRAL};

/// `log2(dim)` for a power-of-two dimension inside the supported range.
pub fn qubits_for_dim(dim: usize) -> Result<usize> {
    if dim == 0 || !dim.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(dim));
    }
    let n = dim.trailing_zeros() as usize;
    if n > MAX_QUBITS {
        return Err(Error::RegisterTooLarge(n));
    }
    Ok(n)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    n_qubits: usize,
    amplitudes: Vec<C64>,
}

impl PureState {
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        Self::with_tol(amplitudes, TOL_ALGEBRAIC)
    }

    pub fn with_tol(amplitudes: Vec<C64>, tol: f64) -> Result<Self> {
        let n_qubits = qubits_for_dim(amplitudes.len())?;
        let norm_sq: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if !norm_sq.is_finite() || (norm_sq - 1.0).abs() > tol {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(Self { n_qubits, amplitudes })
    }

    /// Normalizes an arbitrary non-zero vector.
    pub fn normalized(mut amplitudes: Vec<C64>) -> Result<Self> {
        let norm: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized { norm_sq: norm * norm });
        }
        amplitudes.iter_mut().for_each(|z| *z /= norm);
        Self::new(amplitudes)
    }

    /// Computational basis state `|index⟩` on `n_qubits` qubits.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        if n_qubits > MAX_QUBITS {
            return Err(Error::RegisterTooLarge(n_qubits));
        }
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::OutOfRange(format!("basis index {index} on {n_qubits} qubits")));
        }
        let mut amplitudes = vec![ZERO; dim];
        amplitudes[index] = ONE;
        Ok(Self { n_qubits, amplitudes })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amplitudes
    }

    /// `max_i |a_i − b_i|`
    pub fn max_abs_diff(&self, other: &PureState) -> f64 {
        if self.dim() != other.dim() {
            return f64::INFINITY;
        }
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// Indices whose amplitude modulus exceeds `tol`.
    pub fn support(&self, tol: f64) -> Vec<usize> {
        self.amplitudes.iter().enumerate().filter(|(_, z)| z.norm() > tol).map(|(i, _)| i).collect()
    }

    pub(crate) fn from_raw(amplitudes: Vec<C64>) -> Self {
        let n_qubits = amplitudes.len().trailing_zeros() as usize;
        Self { n_qubits, amplitudes }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n_qubits: usize,
    matrix: ComplexMatrix,
}

/// Outcome of [`validate_density`].
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub hermiticity_defect: f64,
    pub trace_defect: f64,
    pub min_eigenvalue: f64,
    pub tol: f64,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.hermiticity_defect <= self.tol && self.trace_defect <= self.tol && self.min_eigenvalue >= -self.tol
    }
}

/// Measures Hermiticity, trace and positivity defects of `matrix`. The
/// eigenvalues are computed from the Hermitian part so a non-Hermitian input
/// still yields a meaningful report.
pub fn validate_density(matrix: &ComplexMatrix, tol: f64) -> Result<ValidationReport> {
    if !matrix.is_square() {
        return Err(Error::Shape {
            expected: "square matrix".into(),
            found: format!("{}x{}", matrix.rows(), matrix.cols()),
        });
    }
    let herm = (matrix + &matrix.adjoint()).scale(C64::new(0.5, 0.0));
    let (vals, _) = hermitian_eigen(&herm);
    let tr = matrix.trace();
    Ok(ValidationReport {
        hermiticity_defect: matrix.hermiticity_defect(),
        trace_defect: (tr - ONE).norm(),
        min_eigenvalue: vals.last().copied().unwrap_or(0.0),
        tol,
    })
}

impl DensityMatrix {
    /// Validates with the default tolerances: 1e-12 on Hermiticity and trace,
    /// −1e-10 on the smallest eigenvalue.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        Self::with_tol(matrix, TOL_ALGEBRAIC, TOL_SPECTRAL)
    }

    pub fn with_tol(matrix: ComplexMatrix, algebraic_tol: f64, spectral_tol: f64) -> Result<Self> {
        let n_qubits = qubits_for_dim(matrix.rows())?;
        let report = validate_density(&matrix, algebraic_tol)?;
        if report.hermiticity_defect > algebraic_tol {
            return Err(Error::InvalidDensity(format!("hermiticity defect {:.3e}", report.hermiticity_defect)));
        }
        if report.trace_defect > algebraic_tol {
            return Err(Error::InvalidDensity(format!("trace defect {:.3e}", report.trace_defect)));
        }
        if report.min_eigenvalue < -spectral_tol {
            return Err(Error::InvalidDensity(format!("negative eigenvalue {:.3e}", report.min_eigenvalue)));
        }
        Ok(Self { n_qubits, matrix })
    }

    /// Skips validation; only for results of operations that provably
    /// preserve the density-matrix properties.
    pub(crate) fn from_trusted(matrix: ComplexMatrix) -> Self {
        let n_qubits = matrix.rows().trailing_zeros() as usize;
        Self { n_qubits, matrix }
    }

    pub fn maximally_mixed(n_qubits: usize) -> Result<Self> {
        let dim = 1usize << n_qubits;
        qubits_for_dim(dim)?;
        Ok(Self::from_trusted(ComplexMatrix::identity(dim).scale(C64::new(1.0 / dim as f64, 0.0))))
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.matrix[(i, j)]
    }

    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }

    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        self.matrix.max_abs_diff(&other.matrix)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::new(ComplexMatrix::from_json(text)?)
    }
}

/// `|Ψ⟩⟨Ψ|`
pub fn dm_from_pure(state: &PureState) -> DensityMatrix {
    let a = state.amplitudes();
    DensityMatrix { n_qubits: state.n_qubits(), matrix: ComplexMatrix::outer(a, a) }
}

/// Eigenpairs `(λᵢ, |i⟩)` with `ρ = Σ λᵢ |i⟩⟨i|`, eigenvalues descending.
pub fn spectral_decompose(rho: &DensityMatrix) -> Vec<(f64, PureState)> {
    let (vals, vecs) = hermitian_eigen(rho.matrix());
    vals.into_iter()
        .enumerate()
        .map(|(j, lambda)| (lambda, PureState::from_raw(vecs.col_vec(j))))
        .collect()
}

/// `Σ λᵢ |i⟩⟨i|` from an eigen-list.
pub fn reconstruct(pairs: &[(f64, PureState)]) -> ComplexMatrix {
    let dim = pairs.first().map_or(0, |(_, v)| v.dim());
    pairs.iter().fold(ComplexMatrix::zeros(dim, dim), |acc, (lambda, v)| {
        &acc + &ComplexMatrix::outer(v.amplitudes(), v.amplitudes()).scale(C64::new(*lambda, 0.0))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::c;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn dm_of_basis_state() {
        let rho = dm_from_pure(&PureState::basis(1, 0).unwrap());
        assert_eq!(rho.matrix(), &ComplexMatrix::from_real_rows(&[[1.0, 0.0], [0.0, 0.0]]));
    }

    #[test]
    fn dm_of_plus_state() {
        let plus = PureState::new(vec![c(FRAC_1_SQRT_2, 0.0); 2]).unwrap();
        let rho = dm_from_pure(&plus);
        for z in rho.matrix().data() {
            assert!((z - c(0.5, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn dm_of_bell_state() {
        let h = c(FRAC_1_SQRT_2, 0.0);
        let bell = PureState::new(vec![h, ZERO, ZERO, h]).unwrap();
        let rho = dm_from_pure(&bell);
        for i in 0..4 {
            for j in 0..4 {
                let corner = (i == 0 || i == 3) && (j == 0 || j == 3);
                let want = if corner { 0.5 } else { 0.0 };
                assert!((rho.get(i, j) - c(want, 0.0)).norm() < 1e-15, "({i},{j})");
            }
        }
    }

    #[test]
    fn non_normalized_state_rejected() {
        assert!(matches!(PureState::new(vec![ONE, ONE]), Err(Error::NotNormalized { .. })));
        assert!(matches!(PureState::new(vec![ONE, ZERO, ZERO]), Err(Error::NotPowerOfTwo(3))));
    }

    #[test]
    fn spectral_of_diagonal() {
        let rho = dm_from_pure(&PureState::basis(1, 0).unwrap());
        let pairs = spectral_decompose(&rho);
        assert_eq!(pairs[0].0, 1.0);
        assert_eq!(pairs[1].0, 0.0);
        assert_eq!(pairs[0].1.amplitudes(), &[ONE, ZERO]);
        assert_eq!(pairs[1].1.amplitudes(), &[ZERO, ONE]);
    }

    #[test]
    fn spectral_of_maximally_mixed() {
        let pairs = spectral_decompose(&DensityMatrix::maximally_mixed(1).unwrap());
        assert_eq!(pairs[0].0, 0.5);
        assert_eq!(pairs[1].0, 0.5);
    }

    #[test]
    fn spectral_two_by_two_closed_form() {
        // characteristic polynomial λ² − λ + 1/8 = 0
        let rho = DensityMatrix::new(ComplexMatrix::from_real_rows(&[[0.75, 0.25], [0.25, 0.25]])).unwrap();
        let pairs = spectral_decompose(&rho);
        let r2 = 2f64.sqrt() / 4.0;
        assert!((pairs[0].0 - (0.5 + r2)).abs() < 1e-14);
        assert!((pairs[1].0 - (0.5 - r2)).abs() < 1e-14);
        assert!(reconstruct(&pairs).max_abs_diff(rho.matrix()) < 1e-14);
    }

    #[test]
    fn validation_cases() {
        let ok = validate_density(&ComplexMatrix::from_real_rows(&[[0.5, 0.0], [0.0, 0.5]]), 1e-12).unwrap();
        assert!(ok.passed());

        let bad_trace = validate_density(&ComplexMatrix::from_real_rows(&[[0.7, 0.0], [0.0, 0.4]]), 1e-12).unwrap();
        assert!(!bad_trace.passed());
        assert!((bad_trace.trace_defect - 0.1).abs() < 1e-12);

        // eigenvalues 0.5 ± 0.6
        let bad_psd = validate_density(&ComplexMatrix::from_real_rows(&[[0.5, 0.6], [0.6, 0.5]]), 1e-12).unwrap();
        assert!(!bad_psd.passed());
        assert!((bad_psd.min_eigenvalue + 0.1).abs() < 1e-12);

        assert!(validate_density(&ComplexMatrix::zeros(2, 3), 1e-12).is_err());
    }

    #[test]
    fn non_hermitian_flagged() {
        let m = ComplexMatrix::from_rows(&[[c(0.5, 0.0), c(0.1, 0.0)], [c(0.2, 0.0), c(0.5, 0.0)]]);
        let report = validate_density(&m, 1e-12).unwrap();
        assert!((report.hermiticity_defect - 0.1).abs() < 1e-15);
        assert!(DensityMatrix::new(m).is_err());
    }
}
