//! Validate a density matrix and split it into weighted pure states.

use qsdiag::matrix::{c, ComplexMatrix};
use qsdiag::state::{reconstruct, spectral_decompose, validate_density, DensityMatrix};

fn main() -> qsdiag::Result<()> {
    let m = ComplexMatrix::from_rows(&[[c(0.6, 0.0), c(0.2, -0.1)], [c(0.2, 0.1), c(0.4, 0.0)]]);
    let report = validate_density(&m, 1e-10)?;
    println!("valid: {}", report.passed());

    let rho = DensityMatrix::new(m)?;
    println!("purity: {:.6}", rho.purity());
    let pairs = spectral_decompose(&rho);
    for (w, v) in &pairs {
        let amps: Vec<String> = v.amplitudes().iter().map(|z| format!("{:+.4}{:+.4}i", z.re, z.im)).collect();
        println!("weight {w:.6}  vector [{}]", amps.join(", "));
    }
    println!("reconstruction error: {:.2e}", reconstruct(&pairs).max_abs_diff(rho.matrix()));

    let bad = ComplexMatrix::from_real_rows(&[[0.6, 0.0], [0.0, 0.5]]);
    let report = validate_density(&bad, 1e-10)?;
    println!("trace 1.1 passes: {}", report.passed());
    Ok(())
}
