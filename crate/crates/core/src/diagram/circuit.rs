use std::fmt::Write as _;

use crate::composite::{immerse_gate, permute_matrix_qubits, QubitSubset};
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, C64};
use crate::state::PureState;
use crate::{MAX_QUBITS, TOL_SPECTRAL};

use super::gates::named_gate;

/// A unitary on a subset of the register.
///
/// `matrix` is stored in the subset's ascending order (local bit `b` acts on
/// `targets.indices()[b]`); `qubits` keeps the order the gate was written
/// in, first = most significant local bit.
#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    pub name: String,
    pub matrix: ComplexMatrix,
    pub targets: QubitSubset,
    pub params: Vec<f64>,
    pub qubits: Vec<usize>,
}

impl Gate {
    /// Gate from a matrix written in `qubits` order (first listed qubit is
    /// the most significant local bit).
    pub fn from_matrix(
        name: impl Into<String>,
        matrix: ComplexMatrix,
        qubits: &[usize],
        params: Vec<f64>,
        n_qubits: usize,
    ) -> Result<Self> {
        let k = qubits.len();
        if !matrix.is_square() || matrix.rows() != 1usize << k {
            return Err(Error::Shape {
                expected: format!("{0}x{0} matrix for {k} qubits", 1usize << k),
                found: format!("{}x{}", matrix.rows(), matrix.cols()),
            });
        }
        let defect = matrix.unitarity_defect();
        if defect > TOL_SPECTRAL {
            return Err(Error::NotUnitary { defect });
        }
        let targets = QubitSubset::new(n_qubits, qubits)?;
        // local bit b is listed at position k-1-b; move it to its rank in the sorted subset
        let perm: Vec<usize> = (0..k)
            .map(|b| targets.indices().iter().position(|&q| q == qubits[k - 1 - b]).expect("in subset"))
            .collect();
        let sorted = permute_matrix_qubits(&matrix, &perm)?;
        Ok(Self { name: name.into(), matrix: sorted, targets, params, qubits: qubits.to_vec() })
    }

    /// Named gate of the circuit language, e.g. `("cry", [0.4], [1, 0])`.
    pub fn named(name: &str, params: &[f64], qubits: &[usize], n_qubits: usize) -> Result<Self> {
        let (m, arity) = named_gate(name, params)
            .ok_or_else(|| Error::Format(format!("unknown gate `{name}` with {} parameters", params.len())))?;
        if arity != qubits.len() {
            return Err(Error::Format(format!("`{name}` acts on {arity} qubits, got {}", qubits.len())));
        }
        Self::from_matrix(name, m, qubits, params.to_vec(), n_qubits)
    }

    /// Full-register unitary.
    pub fn immersed(&self) -> ComplexMatrix {
        immerse_gate(&self.matrix, &self.targets, self.targets.n_qubits()).expect("validated at construction")
    }

    /// Short label used by the renderers, e.g. `cry(0.785) q1 q0`.
    pub fn label(&self) -> String {
        let mut s = self.name.clone();
        if !self.params.is_empty() {
            let ps: Vec<String> = self.params.iter().map(|p| format!("{p:.3}")).collect();
            let _ = write!(s, "({})", ps.join(","));
        }
        for q in &self.qubits {
            let _ = write!(s, " q{q}");
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum InputState {
    Basis(usize),
    Amplitudes(PureState),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    pub n_qubits: usize,
    pub gates: Vec<Gate>,
    pub input: InputState,
    /// Qubits discarded after the circuit (ancillas of a dilation); only
    /// annotated by the renderers.
    pub traced: Vec<usize>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::RegisterTooLarge(n_qubits));
        }
        Ok(Self { n_qubits, gates: Vec::new(), input: InputState::Basis(0), traced: Vec::new() })
    }

    pub fn with_input(mut self, input: InputState) -> Result<Self> {
        match &input {
            InputState::Basis(k) if *k >= 1usize << self.n_qubits => {
                return Err(Error::OutOfRange(format!("input index {k} on {} qubits", self.n_qubits)))
            }
            InputState::Amplitudes(s) if s.n_qubits() != self.n_qubits => {
                return Err(Error::Shape {
                    expected: format!("{} amplitudes", 1usize << self.n_qubits),
                    found: format!("{}", s.dim()),
                })
            }
            _ => {}
        }
        self.input = input;
        Ok(self)
    }

    pub fn with_traced(mut self, qubits: &[usize]) -> Result<Self> {
        self.traced = QubitSubset::new(self.n_qubits, qubits)?.indices().to_vec();
        Ok(self)
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        if gate.targets.n_qubits() != self.n_qubits {
            return Err(Error::InvalidSubset(format!(
                "gate `{}` built for {} qubits, circuit has {}",
                gate.name,
                gate.targets.n_qubits(),
                self.n_qubits
            )));
        }
        self.gates.push(gate);
        Ok(())
    }

    /// Appends a named gate; chains.
    pub fn gate(mut self, name: &str, params: &[f64], qubits: &[usize]) -> Result<Self> {
        let g = Gate::named(name, params, qubits, self.n_qubits)?;
        self.gates.push(g);
        Ok(self)
    }

    pub fn input_state(&self) -> PureState {
        match &self.input {
            InputState::Basis(k) => PureState::basis(self.n_qubits, *k).expect("validated input"),
            InputState::Amplitudes(s) => s.clone(),
        }
    }

    /// Circuit-language text that parses back to this circuit.
    pub fn to_dsl(&self) -> String {
        let mut out = format!("qubits {}\n", self.n_qubits);
        match &self.input {
            InputState::Basis(k) => {
                let _ = writeln!(out, "input {k}");
            }
            InputState::Amplitudes(s) => {
                let amps: Vec<String> = s.amplitudes().iter().map(|z| fmt_complex(*z)).collect();
                let _ = writeln!(out, "input [{}]", amps.join(", "));
            }
        }
        if !self.traced.is_empty() {
            let qs: Vec<String> = self.traced.iter().map(|q| q.to_string()).collect();
            let _ = writeln!(out, "trace {}", qs.join(" "));
        }
        for g in &self.gates {
            let qs: Vec<String> = g.qubits.iter().map(|q| q.to_string()).collect();
            if named_gate(&g.name, &g.params).is_some() {
                let _ = write!(out, "{}", g.name);
                if !g.params.is_empty() {
                    let ps: Vec<String> = g.params.iter().map(|p| format!("{p:?}")).collect();
                    let _ = write!(out, "({})", ps.join(", "));
                }
            } else {
                // matrix literal in written order
                let k = g.qubits.len();
                let inv: Vec<usize> = (0..k)
                    .map(|b| g.targets.indices().iter().position(|&q| q == g.qubits[k - 1 - b]).expect("in subset"))
                    .collect();
                let mut back = vec![0; k];
                for (b, &p) in inv.iter().enumerate() {
                    back[p] = b;
                }
                let m = permute_matrix_qubits(&g.matrix, &back).expect("valid permutation");
                let rows: Vec<String> = (0..m.rows())
                    .map(|i| {
                        let es: Vec<String> = (0..m.cols()).map(|j| fmt_complex(m[(i, j)])).collect();
                        format!("[{}]", es.join(", "))
                    })
                    .collect();
                let _ = write!(out, "{} [{}]", g.name, rows.join(", "));
            }
            let _ = writeln!(out, " {}", qs.join(" "));
        }
        out
    }
}

fn fmt_complex(z: C64) -> String {
    if z.im == 0.0 {
        format!("{:?}", z.re)
    } else {
        format!("{:?}{}{:?}i", z.re, if z.im < 0.0 { "-" } else { "+" }, z.im.abs())
    }
}

/// Applies the immersed gates in order to the input state.
pub fn simulate(circuit: &Circuit) -> PureState {
    let mut amps = circuit.input_state().into_amplitudes();
    for g in &circuit.gates {
        amps = g.immersed().mul_vec(&amps);
    }
    PureState::from_raw(amps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{c, ONE, ZERO};
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn empty_circuit_returns_input() {
        let circ = Circuit::new(2).unwrap().with_input(InputState::Basis(3)).unwrap();
        assert_eq!(simulate(&circ), PureState::basis(2, 3).unwrap());
    }

    #[test]
    fn hadamard_on_zero() {
        let circ = Circuit::new(1).unwrap().gate("h", &[], &[0]).unwrap();
        let out = simulate(&circ);
        assert!(out.max_abs_diff(&PureState::new(vec![c(FRAC_1_SQRT_2, 0.0); 2]).unwrap()) < 1e-16);
    }

    #[test]
    fn written_order_controls() {
        // control qubit 0, target qubit 1: |01⟩ → |11⟩
        let circ = Circuit::new(2).unwrap().with_input(InputState::Basis(0b01)).unwrap().gate("cx", &[], &[0, 1]).unwrap();
        assert_eq!(simulate(&circ).amplitudes(), &[ZERO, ZERO, ZERO, ONE]);
        let circ = Circuit::new(2).unwrap().with_input(InputState::Basis(0b01)).unwrap().gate("cx", &[], &[1, 0]).unwrap();
        assert_eq!(simulate(&circ).amplitudes(), &[ZERO, ONE, ZERO, ZERO]);
    }

    #[test]
    fn gate_validation() {
        assert!(Gate::named("x", &[], &[2], 2).is_err());
        assert!(Gate::named("cx", &[], &[0], 2).is_err());
        assert!(Gate::named("cx", &[], &[1, 1], 2).is_err());
        let bad = ComplexMatrix::identity(2).scale(c(2.0, 0.0));
        assert!(matches!(Gate::from_matrix("u", bad, &[0], vec![], 1), Err(Error::NotUnitary { .. })));
        assert!(Circuit::new(11).is_err());
        assert!(Circuit::new(2).unwrap().with_input(InputState::Basis(4)).is_err());
    }

    #[test]
    fn label_format() {
        let g = Gate::named("cry", &[0.5], &[1, 0], 2).unwrap();
        assert_eq!(g.label(), "cry(0.500) q1 q0");
    }
}
