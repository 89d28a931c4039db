//! Distance-based classification, classically and via post-selected quantum
//! interference.
//!
//! Labels map to class kets as `−1 ↔ |0⟩` and `+1 ↔ |1⟩`. In the reduced
//! two-qubit circuit, class `|0⟩` is always the class of the reference point
//! `x0`.

mod circuit;
mod distance;
mod sampling;

pub use circuit::{
    angles_from_triple, build_classifier_unitaries, omega_prime_from_t, ratio_from_omega_prime,
    ratio_t, run_circuit_reference, run_classifier_oqw, tangent_half_angle_identity,
    ClassifierInstance, OqwClassifierRun, CLASSIFIER_NODES,
};
pub use distance::{
    classical_classify, classical_score, expectation_identity_check, kernel,
    quantum_exact_probabilities, ExactProbabilities,
};
pub use sampling::{sample_outcome, ShotCounts};

use crate::error::{Error, Result};

/// Scores with magnitude below this are reported as ties.
pub const TIE_TOL: f64 = 1e-12;
/// Tolerance on unit-norm feature vectors.
pub const UNIT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Minus,
    Plus,
}

impl Label {
    pub fn sign(self) -> f64 {
        match self {
            Label::Minus => -1.0,
            Label::Plus => 1.0,
        }
    }

    pub fn from_sign(value: i32) -> Result<Self> {
        match value {
            -1 => Ok(Label::Minus),
            1 => Ok(Label::Plus),
            other => Err(Error::InvalidArgument(format!(
                "label must be -1 or +1, got {other}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Prediction {
    Class(Label),
    Tie,
}

impl Prediction {
    /// Sign of `score`, with `|score| < TIE_TOL` treated as a tie.
    pub fn from_score(score: f64) -> Self {
        if score.abs() < TIE_TOL {
            Prediction::Tie
        } else if score > 0.0 {
            Prediction::Class(Label::Plus)
        } else {
            Prediction::Class(Label::Minus)
        }
    }

    pub fn label(self) -> Option<Label> {
        match self {
            Prediction::Class(l) => Some(l),
            Prediction::Tie => None,
        }
    }
}

impl std::fmt::Display for Prediction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Prediction::Class(Label::Minus) => write!(f, "-1"),
            Prediction::Class(Label::Plus) => write!(f, "+1"),
            Prediction::Tie => write!(f, "tie"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LabeledPoint {
    pub vector: Vec<f64>,
    pub label: Label,
}

/// A non-empty set of unit vectors of equal length with ±1 labels.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset {
    points: Vec<LabeledPoint>,
}

impl LabeledDataset {
    pub fn new(points: Vec<LabeledPoint>) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptyDataset)?;
        let dim = first.vector.len();
        for p in &points {
            if p.vector.len() != dim {
                return Err(Error::LengthMismatch {
                    left: dim,
                    right: p.vector.len(),
                });
            }
            check_unit(&p.vector)?;
        }
        Ok(Self { points })
    }

    /// The two-point set `{(x0, −1), (x1, +1)}`.
    pub fn pair(x0: &[f64], x1: &[f64]) -> Result<Self> {
        Self::new(vec![
            LabeledPoint {
                vector: x0.to_vec(),
                label: Label::Minus,
            },
            LabeledPoint {
                vector: x1.to_vec(),
                label: Label::Plus,
            },
        ])
    }

    pub fn points(&self) -> &[LabeledPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn feature_dim(&self) -> usize {
        self.points[0].vector.len()
    }
}

/// Post-selected class distribution of the reduced circuit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassifierOutcome {
    /// Probability that the ancilla is found in `|0⟩`.
    pub p_post_accept: f64,
    /// `P'(y = |0⟩)`, the class of `x0` (label −1).
    pub p_class_minus: f64,
    /// `P'(y = |1⟩)`, label +1.
    pub p_class_plus: f64,
    pub prediction: Prediction,
}

impl ClassifierOutcome {
    pub(crate) fn from_class_weights(p_post_accept: f64, minus: f64, plus: f64) -> Self {
        let total = minus + plus;
        let (p_class_minus, p_class_plus) = (minus / total, plus / total);
        Self {
            p_post_accept,
            p_class_minus,
            p_class_plus,
            prediction: Prediction::from_score(p_class_plus - p_class_minus),
        }
    }
}

pub(crate) fn check_unit(v: &[f64]) -> Result<()> {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > UNIT_TOL {
        return Err(Error::Unnormalized { norm });
    }
    Ok(())
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
