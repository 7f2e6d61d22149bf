//! Random states, unitaries and circuits for tests and demonstrations.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::diagram::Circuit;
use crate::matrix::{c, ComplexMatrix, C64};
use crate::state::{DensityMatrix, PureState};

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    c(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-random pure state.
pub fn random_pure_state<R: Rng + ?Sized>(rng: &mut R, n_qubits: usize) -> PureState {
    let amps: Vec<C64> = (0..1usize << n_qubits).map(|_| gaussian(rng)).collect();
    PureState::normalized(amps).expect("gaussian vector is nonzero")
}

/// Density matrix `G G† / tr(G G†)` with `G` a `2ⁿ × rank` Ginibre matrix.
pub fn random_density_of_rank<R: Rng + ?Sized>(rng: &mut R, n_qubits: usize, rank: usize) -> DensityMatrix {
    let dim = 1usize << n_qubits;
    let rank = rank.clamp(1, dim);
    let g = ComplexMatrix::new(dim, rank, (0..dim * rank).map(|_| gaussian(rng)).collect()).expect("shape");
    let m = &g * &g.adjoint();
    let tr = m.trace().re;
    let mut m = m.scale(c(1.0 / tr, 0.0));
    for i in 0..dim {
        m[(i, i)].im = 0.0;
        for j in 0..i {
            m[(i, j)] = m[(j, i)].conj();
        }
    }
    DensityMatrix::new(m).expect("ginibre product is a density matrix")
}

/// Full-rank random density matrix.
pub fn random_density<R: Rng + ?Sized>(rng: &mut R, n_qubits: usize) -> DensityMatrix {
    random_density_of_rank(rng, n_qubits, 1 << n_qubits)
}

/// Haar-random unitary (Gram-Schmidt of a Ginibre matrix).
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(dim);
    while cols.len() < dim {
        let mut v: Vec<C64> = (0..dim).map(|_| gaussian(rng)).collect();
        for u in &cols {
            let p: C64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in v.iter_mut().zip(u) {
                *x -= p * y;
            }
        }
        let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if n > 1e-8 {
            cols.push(v.into_iter().map(|z| z / n).collect());
        }
    }
    let mut m = ComplexMatrix::zeros(dim, dim);
    for (j, col) in cols.iter().enumerate() {
        for (i, z) in col.iter().enumerate() {
            m[(i, j)] = *z;
        }
    }
    m
}

/// Gate names drawn by [`random_circuit`], with parameter and qubit counts.
pub const CIRCUIT_GATES: [(&str, usize, usize); 14] = [
    ("x", 0, 1),
    ("y", 0, 1),
    ("z", 0, 1),
    ("h", 0, 1),
    ("s", 0, 1),
    ("t", 0, 1),
    ("rx", 1, 1),
    ("ry", 1, 1),
    ("rz", 1, 1),
    ("phase", 1, 1),
    ("swap", 0, 2),
    ("cx", 0, 2),
    ("cry", 1, 2),
    ("cphase", 1, 2),
];

/// Random circuit on a random basis input; two-qubit gates are skipped
/// on a single-qubit register.
pub fn random_circuit<R: Rng + ?Sized>(rng: &mut R, n_qubits: usize, n_gates: usize) -> Circuit {
    let input = rng.random_range(0..1usize << n_qubits);
    let mut circ = Circuit::new(n_qubits)
        .and_then(|c| c.with_input(crate::diagram::InputState::Basis(input)))
        .expect("valid register");
    while circ.gates.len() < n_gates {
        let (name, n_params, arity) = CIRCUIT_GATES[rng.random_range(0..CIRCUIT_GATES.len())];
        if arity > n_qubits {
            continue;
        }
        let params: Vec<f64> = (0..n_params).map(|_| rng.random_range(-std::f64::consts::PI..std::f64::consts::PI)).collect();
        let mut qs: Vec<usize> = Vec::with_capacity(arity);
        while qs.len() < arity {
            let q = rng.random_range(0..n_qubits);
            if !qs.contains(&q) {
                qs.push(q);
            }
        }
        circ = circ.gate(name, &params, &qs).expect("gate from the fixed table");
    }
    circ
}

/// Random single-qubit density matrix drawn from a mixture of families:
/// full rank, pure, and near the `ρ00 → 0` edge.
pub fn random_qubit_density<R: Rng + ?Sized>(rng: &mut R) -> DensityMatrix {
    match rng.random_range(0..4) {
        0 => random_density_of_rank(rng, 1, 1),
        1 => {
            // tiny population in |0⟩
            let eps: f64 = 10f64.powf(rng.random_range(-14.0..-4.0));
            let coh = (eps * (1.0 - eps)).sqrt() * rng.random_range(0.0..1.0);
            let off = C64::from_polar(coh, rng.random_range(-std::f64::consts::PI..std::f64::consts::PI));
            let m = ComplexMatrix::from_rows(&[[c(eps, 0.0), off], [off.conj(), c(1.0 - eps, 0.0)]]);
            DensityMatrix::new(m).expect("psd by construction")
        }
        _ => random_density(rng, 1),
    }
}
