//! Density blocks, Kraus sets and the channel map `ρ ↦ Σ K ρ K†`.

use super::matrix::{ComplexMatrix, StateVector};
use crate::error::{Error, Result};

/// Tolerance on `‖Σ K†K − 𝟙‖_max`.
pub const CPTP_TOL: f64 = 1e-10;
/// Tolerance on `‖ρ − ρ†‖_max`.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Smallest eigenvalue a density block may have.
pub const PSD_TOL: f64 = 1e-9;
/// Slack on trace bounds.
pub const TRACE_TOL: f64 = 1e-10;
/// Slack on "this state is normalized" checks for user-supplied inputs.
pub const NORM_TOL: f64 = 1e-9;

/// A Hermitian, positive semidefinite matrix with trace in `[0, 1]`.
///
/// Blocks are unnormalized: an OQW state splits unit trace across nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityBlock(ComplexMatrix);

impl DensityBlock {
    /// Validates Hermiticity, positivity and the trace bound.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_finite() {
            return Err(Error::NonFinite);
        }
        let herm = matrix.hermiticity_deviation();
        if herm > HERMITIAN_TOL {
            return Err(Error::InvalidDensity(format!(
                "not Hermitian (deviation {herm:.3e})"
            )));
        }
        let tr = matrix.trace().re;
        if !(-TRACE_TOL..=1.0 + TRACE_TOL).contains(&tr) {
            return Err(Error::InvalidDensity(format!("trace {tr} outside [0, 1]")));
        }
        let min_eig = matrix.min_hermitian_eigenvalue();
        if min_eig < -PSD_TOL {
            return Err(Error::InvalidDensity(format!(
                "negative eigenvalue {min_eig:.3e}"
            )));
        }
        Ok(Self(matrix))
    }

    /// Wraps a matrix produced by a CPTP map applied to a valid block.
    pub(crate) fn from_channel_output(matrix: ComplexMatrix) -> Self {
        Self(matrix)
    }

    pub fn zero(dim: usize) -> Self {
        Self(ComplexMatrix::zeros(dim))
    }

    /// `|ψ⟩⟨ψ|` for a normalized `ψ`.
    pub fn pure(psi: &StateVector) -> Result<Self> {
        let norm = psi.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::Unnormalized { norm });
        }
        Ok(Self(ComplexMatrix::outer(psi)))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self(self.0.scale(factor))
    }
}

/// A set of same-dimension operators satisfying `Σ K†K = 𝟙`.
#[derive(Debug, Clone)]
pub struct KrausSet {
    operators: Vec<ComplexMatrix>,
}

impl KrausSet {
    pub fn new(operators: Vec<ComplexMatrix>) -> Result<Self> {
        let deviation = completeness_deviation(&operators)?;
        if deviation > CPTP_TOL {
            return Err(Error::NotCompletePositive { deviation });
        }
        Ok(Self { operators })
    }

    pub fn dim(&self) -> usize {
        self.operators[0].dim()
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }
}

/// `‖Σ K†K − 𝟙‖_max`, or an error for an empty or ragged set.
pub fn completeness_deviation(operators: &[ComplexMatrix]) -> Result<f64> {
    let first = operators.first().ok_or(Error::EmptyKrausSet)?;
    let dim = first.dim();
    let mut sum = ComplexMatrix::zeros(dim);
    for k in operators {
        if k.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: k.dim(),
            });
        }
        sum = &sum + &(&k.dagger() * k);
    }
    Ok(sum.max_abs_diff(&ComplexMatrix::identity(dim)))
}

/// True iff `‖Σ K†K − 𝟙‖_max ≤ tol`.
pub fn check_kraus_completeness(operators: &[ComplexMatrix], tol: f64) -> Result<bool> {
    Ok(completeness_deviation(operators)? <= tol)
}

/// `Λ(ρ) = Σ_i K_i ρ K_i†`.
pub fn apply_channel(kraus: &KrausSet, rho: &DensityBlock) -> Result<DensityBlock> {
    if kraus.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: kraus.dim(),
            found: rho.dim(),
        });
    }
    let mut out = ComplexMatrix::zeros(rho.dim());
    for k in kraus.operators() {
        out = &out + &sandwich(k, rho.matrix());
    }
    Ok(DensityBlock::from_channel_output(out))
}

/// `K ρ K†`.
fn sandwich(k: &ComplexMatrix, rho: &ComplexMatrix) -> ComplexMatrix {
    &(k * rho) * &k.dagger()
}

/// `⟨ψ|ρ|ψ⟩` for a normalized block and a normalized vector.
pub fn fidelity_pure(rho: &DensityBlock, psi: &StateVector) -> Result<f64> {
    let tr = rho.trace();
    if (tr - 1.0).abs() > NORM_TOL {
        return Err(Error::InvalidDensity(format!("trace {tr} is not 1")));
    }
    let norm = psi.norm();
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(Error::Unnormalized { norm });
    }
    let rho_psi = rho.matrix().apply(psi)?;
    Ok(psi.inner(&rho_psi)?.re.clamp(0.0, 1.0))
}
