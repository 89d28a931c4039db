use super::{check_unit, dot, Label, LabeledDataset, Prediction};
use crate::error::{Error, Result};
use crate::oqw::POSTSELECT_EPS;

/// `K(x, x') = 1 − |x − x'|² / (4M)` for unit vectors.
pub fn kernel(x: &[f64], x2: &[f64], dataset_size: usize) -> Result<f64> {
    if x.len() != x2.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: x2.len(),
        });
    }
    if dataset_size == 0 {
        return Err(Error::EmptyDataset);
    }
    check_unit(x)?;
    check_unit(x2)?;
    Ok(kernel_unchecked(x, x2, dataset_size))
}

fn kernel_unchecked(x: &[f64], x2: &[f64], m: usize) -> f64 {
    let dist2: f64 = x.iter().zip(x2).map(|(a, b)| (a - b) * (a - b)).sum();
    1.0 - dist2 / (4.0 * m as f64)
}

/// `Σ_m y_m K(x_m, x)`.
pub fn classical_score(dataset: &LabeledDataset, x_test: &[f64]) -> Result<f64> {
    check_test_point(dataset, x_test)?;
    let m = dataset.len();
    Ok(dataset
        .points()
        .iter()
        .map(|p| p.label.sign() * kernel_unchecked(&p.vector, x_test, m))
        .sum())
}

/// Sign of the kernel-weighted vote, or a tie when it vanishes.
pub fn classical_classify(dataset: &LabeledDataset, x_test: &[f64]) -> Result<Prediction> {
    classical_score(dataset, x_test).map(Prediction::from_score)
}

/// Exact post-selection and class probabilities of the interference
/// classifier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactProbabilities {
    /// Probability that the ancilla post-selection succeeds.
    pub p_acc: f64,
    pub p_minus: f64,
    pub p_plus: f64,
}

impl ExactProbabilities {
    pub fn prediction(&self) -> Prediction {
        Prediction::from_score(self.p_plus - self.p_minus)
    }
}

/// Closed-form probabilities for the interference classifier on any dataset:
///
/// ```text
/// p_acc      = Σ_m ‖x + x_m‖² / 4M
/// p(y = ±1)  = Σ_{m: y_m = ±1} ‖x + x_m‖² / (4M p_acc)
/// ```
pub fn quantum_exact_probabilities(
    dataset: &LabeledDataset,
    x_test: &[f64],
) -> Result<ExactProbabilities> {
    check_test_point(dataset, x_test)?;
    let four_m = 4.0 * dataset.len() as f64;
    let (mut minus, mut plus) = (0.0, 0.0);
    for p in dataset.points() {
        // ‖x + x_m‖² = 2 + 2⟨x, x_m⟩ for unit vectors.
        let w = 2.0 + 2.0 * dot(x_test, &p.vector);
        match p.label {
            Label::Minus => minus += w,
            Label::Plus => plus += w,
        }
    }
    let p_acc = (minus + plus) / four_m;
    if p_acc <= POSTSELECT_EPS {
        return Err(Error::PostSelection { probability: p_acc });
    }
    let p_minus = minus / (minus + plus);
    Ok(ExactProbabilities {
        p_acc,
        p_minus,
        p_plus: 1.0 - p_minus,
    })
}

/// Both sides of `Σ_m y_m (1 − ‖x_m − x‖²/4M) = p_acc · E[y]`.
///
/// The two sides differ by exactly `(1 − 1/M) Σ_m y_m`, so they agree for
/// label-balanced datasets (and for `M = 1`).
pub fn expectation_identity_check(dataset: &LabeledDataset, x_test: &[f64]) -> Result<(f64, f64)> {
    let lhs = classical_score(dataset, x_test)?;
    let probs = quantum_exact_probabilities(dataset, x_test)?;
    Ok((lhs, probs.p_acc * (probs.p_plus - probs.p_minus)))
}

fn check_test_point(dataset: &LabeledDataset, x_test: &[f64]) -> Result<()> {
    if x_test.len() != dataset.feature_dim() {
        return Err(Error::LengthMismatch {
            left: dataset.feature_dim(),
            right: x_test.len(),
        });
    }
    check_unit(x_test)
}
