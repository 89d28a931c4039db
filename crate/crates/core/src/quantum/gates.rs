//! Standard gates.
//!
//! `ry` follows the usual convention
//! `R_y(θ) = [[cos θ/2, −sin θ/2], [sin θ/2, cos θ/2]]`, so
//! `R_y(θ)|0⟩ = cos(θ/2)|0⟩ + sin(θ/2)|1⟩`. Two-qubit gates use big-endian
//! ordering: the first qubit is the most significant bit of the basis index.

use std::f64::consts::FRAC_1_SQRT_2;

use super::matrix::ComplexMatrix;

pub fn identity(dim: usize) -> ComplexMatrix {
    ComplexMatrix::identity(dim)
}

pub fn hadamard() -> ComplexMatrix {
    let h = FRAC_1_SQRT_2;
    ComplexMatrix::from_real_rows(&[&[h, h], &[h, -h]]).expect("static gate")
}

pub fn ry(angle: f64) -> ComplexMatrix {
    let (s, c) = (angle / 2.0).sin_cos();
    ComplexMatrix::from_real_rows(&[&[c, -s], &[s, c]]).expect("finite angle")
}

/// CNOT with the first qubit as control.
pub fn cnot() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[
        &[1.0, 0.0, 0.0, 0.0],
        &[0.0, 1.0, 0.0, 0.0],
        &[0.0, 0.0, 0.0, 1.0],
        &[0.0, 0.0, 1.0, 0.0],
    ])
    .expect("static gate")
}
