//! Purify a qubit onto two qubits and check the circuit that prepares it.

use qsdiag::composite::{partial_trace, QubitSubset};
use qsdiag::diagram::simulate;
use qsdiag::matrix::{c, ComplexMatrix};
use qsdiag::purify::{purify_single_qubit, synthesize_purification_circuit};
use qsdiag::state::{dm_from_pure, DensityMatrix};

fn main() -> qsdiag::Result<()> {
    let rho = DensityMatrix::new(ComplexMatrix::from_rows(&[
        [c(0.6, 0.0), c(0.2, -0.1)],
        [c(0.2, 0.1), c(0.4, 0.0)],
    ]))?;
    let p = purify_single_qubit(&rho)?;
    for (name, z) in ["C00", "C01", "C10", "C11"].iter().zip(p.coefficients) {
        println!("{name} = {:+.6} {:+.6}i", z.re, z.im);
    }
    println!("theta1 = {:.6}  theta2 = {:.6}  phi = {:.6}", p.theta1, p.theta2, p.phi);

    let back = partial_trace(&dm_from_pure(&p.state), &QubitSubset::single(2, 0)?)?;
    println!("reduced state error: {:.2e}", back.max_abs_diff(&rho));

    let circ = synthesize_purification_circuit(&rho)?;
    print!("{}", circ.to_dsl());
    println!("circuit output error: {:.2e}", simulate(&circ).max_abs_diff(&p.state));
    Ok(())
}
