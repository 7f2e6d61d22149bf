//! Kraus channels: application, completeness, extraction from a dilated
//! unitary and single-ancilla dilation.

use serde::{Deserialize, Serialize};

use crate::composite::{partial_trace, tensor, QubitSubset};
use crate::error::{Error, Result};
use crate::linalg::complete_unitary_columns;
use crate::matrix::{ComplexMatrix, MatrixJson, C64, ONE};
use crate::state::{dm_from_pure, qubits_for_dim, DensityMatrix, PureState};
use crate::TOL_SPECTRAL;

/// Operators below this max-norm are dropped from extracted channels.
pub const PRUNE_TOL: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    dim: usize,
    operators: Vec<ComplexMatrix>,
    name: Option<String>,
}

impl KrausChannel {
    /// Checks shapes only; completeness is measured by
    /// [`KrausChannel::completeness_defect`] and enforced on application.
    pub fn new(operators: Vec<ComplexMatrix>) -> Result<Self> {
        let first = operators.first().ok_or_else(|| Error::Format("channel needs at least one operator".into()))?;
        let dim = first.rows();
        qubits_for_dim(dim)?;
        for op in &operators {
            if op.rows() != dim || op.cols() != dim {
                return Err(Error::Shape {
                    expected: format!("{dim}x{dim} operator"),
                    found: format!("{}x{}", op.rows(), op.cols()),
                });
            }
        }
        Ok(Self { dim, operators, name: None })
    }

    pub fn identity(dim: usize) -> Self {
        Self { dim, operators: vec![ComplexMatrix::identity(dim)], name: Some("identity".into()) }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    pub fn len(&self) -> usize {
        self.operators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
    }

    /// `‖Σ Fᵢ†Fᵢ − I‖_max`
    pub fn completeness_defect(&self) -> f64 {
        let sum = self
            .operators
            .iter()
            .fold(ComplexMatrix::zeros(self.dim, self.dim), |acc, f| &acc + &(&f.adjoint() * f));
        sum.max_abs_diff(&ComplexMatrix::identity(self.dim))
    }

    /// Drops operators whose max-norm is below [`PRUNE_TOL`], keeping at
    /// least one.
    pub fn pruned(mut self) -> Self {
        let keep: Vec<ComplexMatrix> = self.operators.iter().filter(|f| f.max_abs() >= PRUNE_TOL).cloned().collect();
        if !keep.is_empty() {
            self.operators = keep;
        } else {
            self.operators.truncate(1);
        }
        self
    }

    /// `Σ Fᵢ M Fᵢ†` for an arbitrary square operator `M`.
    pub fn apply_to_operator(&self, m: &ComplexMatrix) -> ComplexMatrix {
        self.operators
            .iter()
            .fold(ComplexMatrix::zeros(self.dim, self.dim), |acc, f| &acc + &f.sandwich(m))
    }

    /// Sequential composition: `other` after `self`.
    pub fn then(&self, other: &KrausChannel) -> Result<KrausChannel> {
        if self.dim != other.dim {
            return Err(dim_mismatch(self.dim, other.dim));
        }
        let ops = other.operators.iter().flat_map(|g| self.operators.iter().map(move |f| g * f)).collect();
        Ok(KrausChannel::new(ops)?.pruned())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&ChannelJson::from(self)).expect("channel json")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let repr: ChannelJson =
            serde_json::from_str(text).map_err(|e| Error::Format(format!("channel json: {e}")))?;
        let ops = repr.operators.into_iter().map(ComplexMatrix::try_from).collect::<Result<Vec<_>>>()?;
        let ch = KrausChannel::new(ops)?;
        Ok(match repr.name {
            Some(n) => ch.with_name(n),
            None => ch,
        })
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct ChannelJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    operators: Vec<MatrixJson>,
}

impl From<&KrausChannel> for ChannelJson {
    fn from(ch: &KrausChannel) -> Self {
        Self { name: ch.name.clone(), operators: ch.operators.iter().map(MatrixJson::from).collect() }
    }
}

fn dim_mismatch(a: usize, b: usize) -> Error {
    Error::Shape { expected: format!("dimension {a}"), found: format!("dimension {b}") }
}

pub fn validate_channel(ch: &KrausChannel) -> f64 {
    ch.completeness_defect()
}

/// `ρ′ = Σ Fᵢ ρ Fᵢ†`. Rejects channels whose completeness defect exceeds
/// 1e-10.
pub fn apply_channel(ch: &KrausChannel, rho: &DensityMatrix) -> Result<DensityMatrix> {
    if ch.dim() != rho.dim() {
        return Err(dim_mismatch(ch.dim(), rho.dim()));
    }
    let defect = ch.completeness_defect();
    if defect > TOL_SPECTRAL {
        return Err(Error::IncompleteChannel { defect });
    }
    Ok(DensityMatrix::from_trusted(ch.apply_to_operator(rho.matrix())))
}

/// Largest discrepancy between two channels' actions on the matrix units
/// `|i⟩⟨j|`, which span all operators.
pub fn action_distance(a: &KrausChannel, b: &KrausChannel) -> f64 {
    if a.dim() != b.dim() {
        return f64::INFINITY;
    }
    let d = a.dim();
    let mut worst = 0.0_f64;
    for i in 0..d {
        for j in 0..d {
            let mut e = ComplexMatrix::zeros(d, d);
            e[(i, j)] = ONE;
            worst = worst.max(a.apply_to_operator(&e).max_abs_diff(&b.apply_to_operator(&e)));
        }
    }
    worst
}

/// Kraus operators `Fᵢ = (⟨i|_env ⊗ I) U (|env⟩ ⊗ I)` of the channel obtained
/// by coupling the system to an environment held in the most significant
/// qubits, applying `u`, and tracing the environment out.
pub fn kraus_from_unitary(u: &ComplexMatrix, env_state: &PureState) -> Result<KrausChannel> {
    let defect = u.unitarity_defect();
    if defect > TOL_SPECTRAL {
        return Err(Error::NotUnitary { defect });
    }
    let e = env_state.dim();
    if !u.rows().is_multiple_of(e) || u.rows() / e < 2 {
        return Err(Error::Shape {
            expected: format!("unitary on environment ({e}) ⊗ system"),
            found: format!("{}x{}", u.rows(), u.cols()),
        });
    }
    let d = u.rows() / e;
    qubits_for_dim(d)?;
    let env = env_state.amplitudes();
    let ops = (0..e)
        .map(|i| {
            let mut f = ComplexMatrix::zeros(d, d);
            for r in 0..d {
                for c in 0..d {
                    f[(r, c)] = (0..e).map(|k| u[(i * d + r, k * d + c)] * env[k]).sum();
                }
            }
            f
        })
        .collect();
    Ok(KrausChannel::new(ops)?.pruned())
}

/// 4×4 unitary whose ancilla-⟨0| column blocks are `F₀` (top) and `F₁`
/// (bottom); the right-hand columns are a deterministic Gram–Schmidt
/// completion.
pub fn dilate_single_ancilla(ch: &KrausChannel) -> Result<ComplexMatrix> {
    if ch.dim() != 2 {
        return Err(dim_mismatch(2, ch.dim()));
    }
    if ch.len() > 2 {
        return Err(Error::TooManyOperators(ch.len()));
    }
    let defect = ch.completeness_defect();
    if defect > TOL_SPECTRAL {
        return Err(Error::IncompleteChannel { defect });
    }
    let zero = ComplexMatrix::zeros(2, 2);
    let f0 = &ch.operators()[0];
    let f1 = ch.operators().get(1).unwrap_or(&zero);
    let cols: Vec<Vec<C64>> = (0..2)
        .map(|j| vec![f0[(0, j)], f0[(1, j)], f1[(0, j)], f1[(1, j)]])
        .collect();
    let basis = complete_unitary_columns(&cols, 4);
    let mut u = ComplexMatrix::zeros(4, 4);
    for (j, col) in basis.iter().enumerate() {
        for (i, z) in col.iter().enumerate() {
            u[(i, j)] = *z;
        }
    }
    Ok(u)
}

/// The other route to a channel's output: prepare `|env⟩⟨env| ⊗ ρ`, apply
/// `u` to the whole register, trace the environment qubits away.
pub fn apply_dilated(u: &ComplexMatrix, env_state: &PureState, rho: &DensityMatrix) -> Result<DensityMatrix> {
    let all = tensor(dm_from_pure(env_state).matrix(), rho.matrix());
    if all.rows() != u.rows() {
        return Err(dim_mismatch(u.rows(), all.rows()));
    }
    let evolved = DensityMatrix::from_trusted(u.sandwich(&all));
    let n = evolved.n_qubits();
    let env_qubits: Vec<usize> = (rho.n_qubits()..n).collect();
    partial_trace(&evolved, &QubitSubset::new(n, &env_qubits)?)
}

/// `|0⟩` on one qubit: the ancilla preparation of a single-ancilla dilation.
pub fn ancilla_zero() -> PureState {
    PureState::basis(1, 0).expect("one-qubit basis state")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{c, pauli, ZERO};
    use std::f64::consts::PI;

    fn controlled(p: &ComplexMatrix) -> ComplexMatrix {
        // |0⟩⟨0| ⊗ I + |1⟩⟨1| ⊗ P with the control as MSB
        let p0 = ComplexMatrix::diag(&[ONE, ZERO]);
        let p1 = ComplexMatrix::diag(&[ZERO, ONE]);
        &p0.kron(&ComplexMatrix::identity(2)) + &p1.kron(p)
    }

    fn sample_rho() -> DensityMatrix {
        DensityMatrix::new(ComplexMatrix::from_rows(&[[c(0.7, 0.0), c(0.1, 0.2)], [c(0.1, -0.2), c(0.3, 0.0)]]))
            .unwrap()
    }

    #[test]
    fn identity_channel_is_noop() {
        let rho = sample_rho();
        let out = apply_channel(&KrausChannel::identity(2), &rho).unwrap();
        assert!(out.max_abs_diff(&rho) < 1e-16);
    }

    #[test]
    fn completeness_defects() {
        assert_eq!(validate_channel(&KrausChannel::identity(2)), 0.0);
        let half = KrausChannel::new(vec![ComplexMatrix::identity(2).scale(c(0.5, 0.0))]).unwrap();
        assert!((validate_channel(&half) - 0.75).abs() < 1e-16);
        let t = PI / 3.0;
        let flip = KrausChannel::new(vec![
            ComplexMatrix::identity(2).scale(c((t / 2.0).cos(), 0.0)),
            pauli::x().scale(c((t / 2.0).sin(), 0.0)),
        ])
        .unwrap();
        assert!(validate_channel(&flip) <= 1e-15);
    }

    #[test]
    fn incomplete_channel_rejected_on_apply() {
        let half = KrausChannel::new(vec![ComplexMatrix::identity(2).scale(c(0.5, 0.0))]).unwrap();
        assert!(matches!(apply_channel(&half, &sample_rho()), Err(Error::IncompleteChannel { .. })));
        let wrong_dim = KrausChannel::identity(4);
        assert!(matches!(apply_channel(&wrong_dim, &sample_rho()), Err(Error::Shape { .. })));
    }

    #[test]
    fn identity_unitary_extracts_identity() {
        let ch = kraus_from_unitary(&ComplexMatrix::identity(4), &ancilla_zero()).unwrap();
        assert_eq!(ch.operators(), &[ComplexMatrix::identity(2)]);
    }

    #[test]
    fn cnot_with_tilted_environment_is_bit_flip() {
        let t: f64 = 1.1;
        let env = PureState::new(vec![c((t / 2.0).cos(), 0.0), c((t / 2.0).sin(), 0.0)]).unwrap();
        let ch = kraus_from_unitary(&controlled(&pauli::x()), &env).unwrap();
        assert_eq!(ch.len(), 2);
        assert!(ch.operators()[0].max_abs_diff(&ComplexMatrix::identity(2).scale(c((t / 2.0).cos(), 0.0))) < 1e-15);
        assert!(ch.operators()[1].max_abs_diff(&pauli::x().scale(c((t / 2.0).sin(), 0.0))) < 1e-15);
    }

    #[test]
    fn non_unitary_rejected() {
        let m = ComplexMatrix::identity(4).scale(c(0.9, 0.0));
        assert!(matches!(kraus_from_unitary(&m, &ancilla_zero()), Err(Error::NotUnitary { .. })));
    }

    #[test]
    fn dilation_of_identity_is_identity() {
        let u = dilate_single_ancilla(&KrausChannel::identity(2)).unwrap();
        assert!(u.max_abs_diff(&ComplexMatrix::identity(4)) < 1e-15);
    }

    #[test]
    fn dilation_rejects_three_operators() {
        let s = c(1.0 / 3f64.sqrt(), 0.0);
        let ch = KrausChannel::new(vec![
            ComplexMatrix::identity(2).scale(s),
            pauli::x().scale(s),
            pauli::z().scale(s),
        ])
        .unwrap();
        assert_eq!(dilate_single_ancilla(&ch), Err(Error::TooManyOperators(3)));
    }

    #[test]
    fn bit_flip_pi_is_sigma_x_conjugation() {
        let ch = KrausChannel::new(vec![ComplexMatrix::identity(2).scale(c(0.0, 0.0)), pauli::x()])
            .unwrap()
            .pruned();
        let rho = sample_rho();
        let out = apply_channel(&ch, &rho).unwrap();
        assert!(out.matrix().max_abs_diff(&pauli::x().sandwich(rho.matrix())) < 1e-16);
    }

    #[test]
    fn json_round_trip() {
        let ch = KrausChannel::new(vec![pauli::y()]).unwrap().with_name("y");
        let back = KrausChannel::from_json(&ch.to_json()).unwrap();
        assert_eq!(back, ch);
    }

    #[test]
    fn composition_matches_sequential_application() {
        let t = 0.4_f64;
        let a = KrausChannel::new(vec![
            ComplexMatrix::identity(2).scale(c(t.cos(), 0.0)),
            pauli::z().scale(c(t.sin(), 0.0)),
        ])
        .unwrap();
        let b = KrausChannel::new(vec![pauli::y()]).unwrap();
        let rho = sample_rho();
        let seq = apply_channel(&b, &apply_channel(&a, &rho).unwrap()).unwrap();
        let comp = apply_channel(&a.then(&b).unwrap(), &rho).unwrap();
        assert!(seq.max_abs_diff(&comp) < 1e-15);
    }
}
