use rand::Rng;

use super::{ClassifierOutcome, Label, Prediction};

/// Tally of simulated measurement shots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ShotCounts {
    pub shots: u64,
    /// Shots that found the walker on the last node and the ancilla in `|0⟩`.
    pub accepted: u64,
    pub minus: u64,
    pub plus: u64,
}

impl ShotCounts {
    /// Majority class among accepted shots; equal counts (including none
    /// accepted) are a tie.
    pub fn prediction(&self) -> Prediction {
        use std::cmp::Ordering::*;
        match self.plus.cmp(&self.minus) {
            Greater => Prediction::Class(Label::Plus),
            Less => Prediction::Class(Label::Minus),
            Equal => Prediction::Tie,
        }
    }
}

/// Draws `shots` independent runs. Each run is accepted with probability
/// `terminal_probability · p_post_accept` and then reveals a class drawn from
/// the post-selected distribution.
pub fn sample_outcome<R: Rng + ?Sized>(
    outcome: &ClassifierOutcome,
    terminal_probability: f64,
    shots: u64,
    rng: &mut R,
) -> ShotCounts {
    let accept = (terminal_probability * outcome.p_post_accept).clamp(0.0, 1.0);
    let mut counts = ShotCounts {
        shots,
        ..Default::default()
    };
    for _ in 0..shots {
        if rng.random::<f64>() >= accept {
            continue;
        }
        counts.accepted += 1;
        if rng.random::<f64>() < outcome.p_class_minus {
            counts.minus += 1;
        } else {
            counts.plus += 1;
        }
    }
    counts
}
