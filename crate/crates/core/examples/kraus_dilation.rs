//! Apply a channel through its operators and through a unitary on an
//! ancilla, then compare.

use qsdiag::channels::{amp_damp_unitary, make_amp_damp, Axis, Direction};
use qsdiag::kraus::{ancilla_zero, apply_channel, apply_dilated, dilate_single_ancilla, kraus_from_unitary, validate_channel};
use qsdiag::matrix::{c, ComplexMatrix};
use qsdiag::state::DensityMatrix;

fn main() -> qsdiag::Result<()> {
    let theta = 0.9;
    let ch = make_amp_damp(Axis::Z, Direction::Plus, theta)?;
    println!("operators: {}  completeness defect: {:.2e}", ch.len(), validate_channel(&ch));

    let rho = DensityMatrix::new(ComplexMatrix::from_rows(&[
        [c(0.3, 0.0), c(0.1, 0.2)],
        [c(0.1, -0.2), c(0.7, 0.0)],
    ]))?;
    let direct = apply_channel(&ch, &rho)?;

    let u = dilate_single_ancilla(&ch)?;
    let via_dilation = apply_dilated(&u, &ancilla_zero(), &rho)?;
    println!("generic dilation vs operators: {:.2e}", direct.max_abs_diff(&via_dilation));

    let physical = amp_damp_unitary(theta);
    let via_coupling = apply_dilated(&physical, &ancilla_zero(), &rho)?;
    println!("physical coupling vs operators: {:.2e}", direct.max_abs_diff(&via_coupling));

    let recovered = kraus_from_unitary(&physical, &ancilla_zero())?;
    println!("operators read back from the coupling: {}", recovered.len());
    println!("{}", ch.to_json());
    Ok(())
}
