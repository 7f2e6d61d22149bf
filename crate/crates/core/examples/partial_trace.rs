//! Build a Bell pair, trace out either qubit and a product state's factor.

use qsdiag::composite::{partial_trace, tensor, QubitSubset};
use qsdiag::matrix::{c, ComplexMatrix};
use qsdiag::state::{dm_from_pure, DensityMatrix, PureState};

fn show(label: &str, rho: &DensityMatrix) {
    println!("{label}:");
    for i in 0..rho.dim() {
        let row: Vec<String> = (0..rho.dim()).map(|j| format!("{:+.3}{:+.3}i", rho.get(i, j).re, rho.get(i, j).im)).collect();
        println!("  {}", row.join("  "));
    }
}

fn main() -> qsdiag::Result<()> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let bell = dm_from_pure(&PureState::new(vec![c(h, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(h, 0.0)])?);
    for q in 0..2 {
        let reduced = partial_trace(&bell, &QubitSubset::single(2, q)?)?;
        show(&format!("bell with qubit {q} traced out"), &reduced);
    }

    // tensor(a, b): a sits on the higher qubit
    let a = ComplexMatrix::from_real_rows(&[[1.0, 0.0], [0.0, 0.0]]);
    let b = ComplexMatrix::from_real_rows(&[[0.5, 0.5], [0.5, 0.5]]);
    let product = DensityMatrix::new(tensor(&a, &b))?;
    show("product, qubit 1 traced out", &partial_trace(&product, &QubitSubset::single(2, 1)?)?);
    show("product, qubit 0 traced out", &partial_trace(&product, &QubitSubset::single(2, 0)?)?);
    Ok(())
}
