//! The reduced two-qubit classifier circuit and its embedding into a four-node
//! linear open quantum walk.
//!
//! For a training pair `{(x0, −1), (x1, +1)}` and a test point `x̃`, all in
//! two dimensions, the frame is rotated so that `x0` encodes as `|0⟩`. The
//! remaining points encode as `R_y(φ)|0⟩` and `R_y(γ)|0⟩`. The class ratio
//!
//! ```text
//! t = P(y=|0⟩) / P(y=|1⟩) = cos²(γ/4) / cos²((γ−φ)/4)
//! ```
//!
//! is reproduced by the circuit
//! `(H ⊗ R_y(ω'/2)) · CNOT · (H ⊗ R_y(−ω'/2)) |00⟩` after post-selecting the
//! ancilla (first qubit) on `|0⟩`, with `ω' = 4 arctan((1 − √t)/(1 + √t))`.

use std::f64::consts::PI;

use super::{check_unit, ClassifierOutcome};
use crate::chain::{build_linear_chain, LinearChainSpec};
use crate::error::{Error, Result};
use crate::oqw::{OqwState, POSTSELECT_EPS};
use crate::quantum::{gates, ComplexMatrix, DensityBlock, StateVector};

/// Nodes in the walk that runs the three circuit layers.
pub const CLASSIFIER_NODES: usize = 4;
const POLE_TOL: f64 = 1e-12;

/// Encoding angles `(φ, γ)` of `x1` and `x_test` in the frame where `x0`
/// encodes as `|0⟩`, each in `(−2π, 2π]`.
///
/// With `R_y(θ)|0⟩ = cos(θ/2)|0⟩ + sin(θ/2)|1⟩`, a 2-vector at polar angle α
/// encodes with `θ = 2α`, so `⟨x0|x1⟩ = cos(φ/2)` and `⟨x0|x̃⟩ = cos(γ/2)`.
pub fn angles_from_triple(x0: &[f64], x1: &[f64], x_test: &[f64]) -> Result<(f64, f64)> {
    for v in [x0, x1, x_test] {
        if v.len() != 2 {
            return Err(Error::LengthMismatch {
                left: 2,
                right: v.len(),
            });
        }
        check_unit(v)?;
    }
    let base = x0[1].atan2(x0[0]);
    let relative = |v: &[f64]| 2.0 * wrap_half_turn(v[1].atan2(v[0]) - base);
    Ok((relative(x1), relative(x_test)))
}

/// Wraps an angle into `(−π, π]`.
fn wrap_half_turn(angle: f64) -> f64 {
    let mut a = angle % (2.0 * PI);
    if a <= -PI {
        a += 2.0 * PI;
    } else if a > PI {
        a -= 2.0 * PI;
    }
    a
}

/// `t = cos²(γ/4) / cos²((γ − φ)/4)`.
pub fn ratio_t(gamma: f64, phi: f64) -> Result<f64> {
    let denom = ((gamma - phi) / 4.0).cos().powi(2);
    if denom < POLE_TOL {
        return Err(Error::SingularRatio);
    }
    Ok((gamma / 4.0).cos().powi(2) / denom)
}

/// `ω' = 4 arctan((1 − √t)/(1 + √t))`, in `(−π, π]`.
pub fn omega_prime_from_t(t: f64) -> Result<f64> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::OutOfRange {
            name: "t",
            value: t,
        });
    }
    let r = t.sqrt();
    Ok(4.0 * ((1.0 - r) / (1.0 + r)).atan())
}

/// The post-selected class ratio the circuit produces for angle `ω'`:
/// `(1 − sin(ω'/2))² / cos²(ω'/2)`.
pub fn ratio_from_omega_prime(omega_prime: f64) -> f64 {
    let (s, c) = (omega_prime / 2.0).sin_cos();
    (1.0 - s).powi(2) / (c * c)
}

/// Both sides of `(1 − tan(x/2))/(1 + tan(x/2)) = (1 − sin x)/cos x`.
pub fn tangent_half_angle_identity(x: f64) -> Result<(f64, f64)> {
    let tan_half = (x / 2.0).tan();
    let (s, c) = x.sin_cos();
    // x = π/2 + 2kπ is removable on the right (0/0); x = −π/2 + 2kπ is a
    // genuine pole of both sides.
    if (1.0 + tan_half).abs() < POLE_TOL || (c.abs() < POLE_TOL && (1.0 - s) > POLE_TOL) {
        return Err(Error::OutOfRange {
            name: "x",
            value: x,
        });
    }
    let lhs = (1.0 - tan_half) / (1.0 + tan_half);
    let rhs = if c.abs() < POLE_TOL {
        0.0
    } else {
        (1.0 - s) / c
    };
    Ok((lhs, rhs))
}

/// `[H ⊗ R_y(−ω'/2), CNOT, H ⊗ R_y(ω'/2)]`.
pub fn build_classifier_unitaries(omega_prime: f64) -> [ComplexMatrix; 3] {
    let h = gates::hadamard();
    [
        h.kron(&gates::ry(-omega_prime / 2.0)),
        gates::cnot(),
        h.kron(&gates::ry(omega_prime / 2.0)),
    ]
}

/// The circuit's output state `U3 U2 U1 |00⟩`.
pub(crate) fn circuit_state(omega_prime: f64) -> StateVector {
    let mut psi = StateVector::basis(4, 0);
    for u in build_classifier_unitaries(omega_prime) {
        psi = u.apply(&psi).expect("4x4 gates on a 2-qubit state");
    }
    psi
}

/// Runs the circuit by direct state-vector multiplication and post-selects
/// the ancilla on `|0⟩`.
pub fn run_circuit_reference(omega_prime: f64) -> Result<ClassifierOutcome> {
    let psi = circuit_state(omega_prime);
    let a = psi.amplitudes();
    let (w0, w1) = (a[0].norm_sqr(), a[1].norm_sqr());
    let accept = w0 + w1;
    if accept <= POSTSELECT_EPS {
        return Err(Error::PostSelection {
            probability: accept,
        });
    }
    Ok(ClassifierOutcome::from_class_weights(accept, w0, w1))
}

/// Result of running the classifier on the walk.
#[derive(Debug, Clone)]
pub struct OqwClassifierRun {
    pub outcome: ClassifierOutcome,
    /// Occupation of the last node when the walk was stopped.
    pub terminal_probability: f64,
    /// Internal state conditioned on the last node.
    pub terminal_state: DensityBlock,
}

/// Runs the circuit as a four-node linear walk: start in `|00⟩` at node 0,
/// take `steps` steps, condition on node 3, then post-select the ancilla.
///
/// `ω = 1` is allowed here: the walk is then a one-way conveyor that puts all
/// mass on node 3 after three steps.
pub fn run_classifier_oqw(omega_prime: f64, omega: f64, steps: usize) -> Result<OqwClassifierRun> {
    if !(omega > 0.0 && omega <= 1.0) {
        return Err(Error::OutOfRange {
            name: "omega",
            value: omega,
        });
    }
    if steps == 0 {
        return Err(Error::InvalidArgument(
            "the walk needs at least one step".into(),
        ));
    }
    let spec = LinearChainSpec::new(build_classifier_unitaries(omega_prime).to_vec(), omega)?;
    let walk = build_linear_chain(&spec)?;
    let start = OqwState::localized(
        CLASSIFIER_NODES,
        0,
        DensityBlock::pure(&StateVector::basis(4, 0))?,
    )?;
    let end = walk.evolve(&start, steps)?;

    let last = CLASSIFIER_NODES - 1;
    let terminal_probability = end.node_distribution()[last];
    let terminal_state = end.conditional_state(last)?;
    let rho = terminal_state.matrix();
    let (w0, w1) = (rho[(0, 0)].re, rho[(1, 1)].re);
    let accept = w0 + w1;
    if accept <= POSTSELECT_EPS {
        return Err(Error::PostSelection {
            probability: accept,
        });
    }
    Ok(OqwClassifierRun {
        outcome: ClassifierOutcome::from_class_weights(accept, w0, w1),
        terminal_probability,
        terminal_state,
    })
}

/// A classification triple with its derived circuit parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassifierInstance {
    pub x0: [f64; 2],
    pub x1: [f64; 2],
    pub x_test: [f64; 2],
    pub phi: f64,
    pub gamma: f64,
    pub t: f64,
    pub omega_prime: f64,
}

impl ClassifierInstance {
    /// `x0` carries label −1 and `x1` label +1.
    pub fn from_triple(x0: [f64; 2], x1: [f64; 2], x_test: [f64; 2]) -> Result<Self> {
        let (phi, gamma) = angles_from_triple(&x0, &x1, &x_test)?;
        let t = ratio_t(gamma, phi)?;
        let omega_prime = omega_prime_from_t(t)?;
        Ok(Self {
            x0,
            x1,
            x_test,
            phi,
            gamma,
            t,
            omega_prime,
        })
    }

    pub fn run_reference(&self) -> Result<ClassifierOutcome> {
        run_circuit_reference(self.omega_prime)
    }

    pub fn run_oqw(&self, omega: f64, steps: usize) -> Result<OqwClassifierRun> {
        run_classifier_oqw(self.omega_prime, omega, steps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::{quantum_exact_probabilities, LabeledDataset, Prediction};
    use crate::quantum::fidelity_pure;
    use num_complex::Complex64;

    #[test]
    fn angles_simple_cases() {
        let x0 = [0.6, 0.8];
        assert_eq!(angles_from_triple(&x0, &x0, &x0).unwrap(), (0.0, 0.0));
        let (phi, gamma) = angles_from_triple(&[1.0, 0.0], &[0.0, 1.0], &[1.0, 0.0]).unwrap();
        assert!((phi - PI).abs() < 1e-15);
        assert_eq!(gamma, 0.0);
    }

    #[test]
    fn angles_reproduce_overlaps_on_worked_example() {
        let x0 = [0.999807, 0.0196469];
        let x1 = [-0.275974, 0.961165];
        let xt = [-0.194006, -0.981000];
        let normalize = |v: [f64; 2]| {
            let n = (v[0] * v[0] + v[1] * v[1]).sqrt();
            [v[0] / n, v[1] / n]
        };
        let (x0, x1, xt) = (normalize(x0), normalize(x1), normalize(xt));
        let (phi, gamma) = angles_from_triple(&x0, &x1, &xt).unwrap();
        let o1 = x0[0] * x1[0] + x0[1] * x1[1];
        let ot = x0[0] * xt[0] + x0[1] * xt[1];
        assert!((o1 * o1 - (phi / 2.0).cos().powi(2)).abs() < 1e-9);
        assert!((ot * ot - (gamma / 2.0).cos().powi(2)).abs() < 1e-9);
        // γ lands on the same branch as the printed value; φ differs by 4π.
        assert!((gamma - -3.57138).abs() < 1e-4);
        assert!((phi - 4.0 * PI - -8.90487).abs() < 2e-3 || (phi - -8.90487).abs() < 2e-3);
        assert!(phi > -2.0 * PI && phi <= 2.0 * PI && gamma > -2.0 * PI && gamma <= 2.0 * PI);
    }

    #[test]
    fn ratio_examples() {
        assert!((ratio_t(0.0, 0.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(matches!(ratio_t(0.0, 2.0 * PI), Err(Error::SingularRatio)));
        assert!(matches!(ratio_t(PI, -PI), Err(Error::SingularRatio)));
        assert!((ratio_t(PI, 0.0).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn omega_prime_examples() {
        assert_eq!(omega_prime_from_t(1.0).unwrap(), 0.0);
        assert!((omega_prime_from_t(0.0).unwrap() - PI).abs() < 1e-15);
        // t(ω') is continuous at π and vanishes there.
        assert!(ratio_from_omega_prime(PI - 1e-6) < 1e-11);
        assert!(omega_prime_from_t(-0.1).is_err());
        assert!(omega_prime_from_t(f64::INFINITY).is_err());
    }

    #[test]
    fn half_angle_identity_examples() {
        let (l, r) = tangent_half_angle_identity(0.0).unwrap();
        assert!((l - 1.0).abs() < 1e-15 && (r - 1.0).abs() < 1e-15);
        let (l, r) = tangent_half_angle_identity(PI / 2.0).unwrap();
        assert!(l.abs() < 1e-12 && r.abs() < 1e-12);
        assert!(tangent_half_angle_identity(-PI / 2.0).is_err());
    }

    #[test]
    fn zero_angle_unitaries() {
        let [u1, u2, u3] = build_classifier_unitaries(0.0);
        let hi = gates::hadamard().kron(&gates::identity(2));
        assert!(u1.max_abs_diff(&hi) < 1e-15);
        assert!(u3.max_abs_diff(&hi) < 1e-15);
        assert_eq!(u2, gates::cnot());
    }

    #[test]
    fn circuit_state_matches_closed_form() {
        for &w in &[-2.7, -0.4, 0.0, 0.9, 1.06501, 3.0] {
            let psi = circuit_state(w);
            let (s, c) = (w / 2.0).sin_cos();
            let expected = [0.5 * (1.0 - s), 0.5 * c, 0.5 * (1.0 + s), -0.5 * c];
            for (a, e) in psi.amplitudes().iter().zip(expected) {
                assert!((a - Complex64::new(e, 0.0)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn reference_at_zero_angle_ties() {
        let out = run_circuit_reference(0.0).unwrap();
        assert!((out.p_post_accept - 0.5).abs() < 1e-15);
        assert!((out.p_class_minus - 0.5).abs() < 1e-15);
        assert_eq!(out.prediction, Prediction::Tie);
        assert!(matches!(
            run_circuit_reference(PI),
            Err(Error::PostSelection { .. })
        ));
    }

    #[test]
    fn reference_ratio_matches_formula() {
        for &w in &[-3.0, -1.0, 0.3, 2.2] {
            let out = run_circuit_reference(w).unwrap();
            assert!(
                (out.p_class_minus / out.p_class_plus - ratio_from_omega_prime(w)).abs() < 1e-10
            );
            assert!((out.p_post_accept - (1.0 - (w / 2.0).sin()) / 2.0).abs() < 1e-14);
        }
    }

    #[test]
    fn oqw_run_matches_reference() {
        let run = run_classifier_oqw(0.0, 0.7, 10).unwrap();
        assert_eq!(run.outcome.prediction, Prediction::Tie);
        assert!((run.terminal_probability - 0.57298).abs() < 1e-5);

        let w = 1.3;
        let a = run_classifier_oqw(w, 0.7, 10).unwrap();
        let b = run_classifier_oqw(w, 0.9, 5).unwrap();
        let r = run_circuit_reference(w).unwrap();
        for o in [a.outcome, b.outcome] {
            assert!((o.p_class_minus - r.p_class_minus).abs() < 1e-9);
            assert!((o.p_post_accept - r.p_post_accept).abs() < 1e-9);
        }
        assert!((fidelity_pure(&a.terminal_state, &circuit_state(w)).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn oqw_run_at_unit_omega() {
        let run = run_classifier_oqw(0.4, 1.0, 3).unwrap();
        assert!((run.terminal_probability - 1.0).abs() < 1e-14);
        assert!(matches!(
            run_classifier_oqw(0.4, 1.0, 2),
            Err(Error::PostSelection { .. })
        ));
        assert!(run_classifier_oqw(0.4, 0.0, 3).is_err());
        assert!(run_classifier_oqw(0.4, 0.5, 0).is_err());
    }

    #[test]
    fn instance_matches_exact_probabilities() {
        let norm = |v: [f64; 2]| {
            let n = (v[0] * v[0] + v[1] * v[1]).sqrt();
            [v[0] / n, v[1] / n]
        };
        let x0 = norm([0.3, 0.9]);
        let x1 = norm([-0.8, 0.2]);
        let xt = norm([-0.5, -0.6]);
        let inst = ClassifierInstance::from_triple(x0, x1, xt).unwrap();
        let exact =
            quantum_exact_probabilities(&LabeledDataset::pair(&x0, &x1).unwrap(), &xt).unwrap();
        let out = inst.run_reference().unwrap();
        assert!((out.p_class_minus - exact.p_minus).abs() < 1e-12);
        assert_eq!(out.prediction, exact.prediction());
        assert!((exact.p_minus / exact.p_plus - inst.t).abs() < 1e-12);
    }
}
