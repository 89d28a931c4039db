//! Dense complex linear algebra, gates and quantum channels.

mod channel;
pub mod gates;
mod matrix;

pub use channel::{
    apply_channel, check_kraus_completeness, completeness_deviation, fidelity_pure, DensityBlock,
    KrausSet, CPTP_TOL, HERMITIAN_TOL, NORM_TOL, PSD_TOL, TRACE_TOL,
};
pub use matrix::{ComplexMatrix, StateVector};
