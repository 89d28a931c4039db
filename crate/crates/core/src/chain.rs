//! The linear open quantum walk and the birth–death Markov chain it induces.
//!
//! Nodes `0..N` sit on a line. A rightward hop `i → i+1` applies `√ω U_i`, a
//! leftward hop applies `√λ U_i†`, node 0 keeps the walker with `√λ 𝟙` and
//! node `N−1` keeps it with `√ω 𝟙`, where `λ = 1 − ω`. Every Kraus operator is
//! proportional to a unitary, so node occupations evolve exactly like the
//! classical chain with the tridiagonal transition matrix returned by
//! [`transition_matrix`].

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::oqw::TransitionOperatorSet;
use crate::quantum::{gates, ComplexMatrix};

/// Tolerance on the unitarity of user-supplied layers.
pub const UNITARY_TOL: f64 = 1e-10;
/// Below this distance from `a = 1` the steady state uses the uniform limit.
const UNIFORM_BRANCH_TOL: f64 = 1e-9;
/// Slack when rounding the iteration estimate up to an integer.
const ESTIMATE_SNAP: f64 = 1e-9;

/// Layers `[U_0, …, U_{N−2}]` and hop-right probability `ω` of a linear walk.
#[derive(Debug, Clone)]
pub struct LinearChainSpec {
    unitaries: Vec<ComplexMatrix>,
    omega: f64,
}

impl LinearChainSpec {
    pub fn new(unitaries: Vec<ComplexMatrix>, omega: f64) -> Result<Self> {
        check_closed_probability("omega", omega)?;
        let first = unitaries.first().ok_or_else(|| {
            Error::InvalidArgument("a linear chain needs at least one layer (N >= 2)".into())
        })?;
        let dim = first.dim();
        for u in &unitaries {
            if u.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: u.dim(),
                });
            }
            let deviation = u.unitarity_deviation();
            if deviation > UNITARY_TOL {
                return Err(Error::NotUnitary { deviation });
            }
        }
        Ok(Self { unitaries, omega })
    }

    pub fn num_nodes(&self) -> usize {
        self.unitaries.len() + 1
    }

    pub fn internal_dim(&self) -> usize {
        self.unitaries[0].dim()
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn lambda(&self) -> f64 {
        1.0 - self.omega
    }

    pub fn unitaries(&self) -> &[ComplexMatrix] {
        &self.unitaries
    }
}

/// Transition operators of the linear walk. Edges with zero weight (at
/// `ω ∈ {0, 1}`) are omitted.
pub fn build_linear_chain(spec: &LinearChainSpec) -> Result<TransitionOperatorSet> {
    let n = spec.num_nodes();
    let dim = spec.internal_dim();
    let (sw, sl) = (spec.omega().sqrt(), spec.lambda().sqrt());
    let id = gates::identity(dim);

    let mut ops = BTreeMap::new();
    let mut put = |from: usize, to: usize, weight: f64, op: &ComplexMatrix| {
        if weight > 0.0 {
            ops.insert((from, to), op.scale(weight));
        }
    };
    put(0, 0, sl, &id);
    for (i, u) in spec.unitaries().iter().enumerate() {
        put(i, i + 1, sw, u);
        put(i + 1, i, sl, &u.dagger());
    }
    put(n - 1, n - 1, sw, &id);
    TransitionOperatorSet::new(n, dim, ops)
}

/// A column-stochastic matrix `T`: `p' = T p`.
#[derive(Debug, Clone, PartialEq)]
pub struct MarkovChain {
    size: usize,
    matrix: Vec<f64>,
}

impl MarkovChain {
    pub fn size(&self) -> usize {
        self.size
    }

    /// `T[row][col]`, the probability of moving from `col` to `row`.
    pub fn entry(&self, row: usize, col: usize) -> f64 {
        self.matrix[row * self.size + col]
    }

    pub fn column(&self, col: usize) -> Vec<f64> {
        (0..self.size).map(|r| self.entry(r, col)).collect()
    }

    pub fn apply(&self, p: &[f64]) -> Result<Vec<f64>> {
        if p.len() != self.size {
            return Err(Error::LengthMismatch {
                left: self.size,
                right: p.len(),
            });
        }
        Ok((0..self.size)
            .map(|r| (0..self.size).map(|c| self.entry(r, c) * p[c]).sum())
            .collect())
    }

    /// `Tⁿ p`.
    pub fn apply_n(&self, p: &[f64], steps: usize) -> Result<Vec<f64>> {
        if p.len() != self.size {
            return Err(Error::LengthMismatch {
                left: self.size,
                right: p.len(),
            });
        }
        let mut out = p.to_vec();
        for _ in 0..steps {
            out = self.apply(&out)?;
        }
        Ok(out)
    }
}

/// The tridiagonal transition matrix of the linear chain.
pub fn transition_matrix(num_nodes: usize, omega: f64) -> Result<MarkovChain> {
    check_size(num_nodes)?;
    check_closed_probability("omega", omega)?;
    let lambda = 1.0 - omega;
    let n = num_nodes;
    let mut matrix = vec![0.0; n * n];
    matrix[0] = lambda;
    matrix[n * n - 1] += omega;
    for i in 0..n - 1 {
        matrix[(i + 1) * n + i] = omega;
        matrix[i * n + i + 1] = lambda;
    }
    Ok(MarkovChain { size: n, matrix })
}

/// Stationary distribution `π_m = a^m (a − 1) / (a^N − 1)` with `a = ω/(1 − ω)`.
///
/// Near `a = 1` the uniform limit is returned. For `ω ∈ {0, 1}` the chain is
/// absorbing and [`Error::AbsorbingChain`] names the node holding all mass;
/// see [`absorbing_distribution`].
pub fn steady_state(num_nodes: usize, omega: f64) -> Result<Vec<f64>> {
    check_size(num_nodes)?;
    check_closed_probability("omega", omega)?;
    if omega == 0.0 || omega == 1.0 {
        return Err(Error::AbsorbingChain {
            omega,
            node: if omega == 0.0 { 0 } else { num_nodes - 1 },
        });
    }
    let n = num_nodes;
    let a = omega / (1.0 - omega);
    if (a - 1.0).abs() < UNIFORM_BRANCH_TOL {
        return Ok(vec![1.0 / n as f64; n]);
    }
    // Evaluate with ratio r = min(a, 1/a) ≤ 1 so powers never overflow.
    let (r, reversed) = if a > 1.0 { (1.0 / a, true) } else { (a, false) };
    let denom = 1.0 - r.powi(n as i32);
    let mut pi: Vec<f64> = (0..n)
        .map(|m| r.powi(m as i32) * (1.0 - r) / denom)
        .collect();
    if reversed {
        pi.reverse();
    }
    Ok(pi)
}

/// Point mass at the absorbing node reported by [`steady_state`].
pub fn absorbing_distribution(num_nodes: usize, node: usize) -> Vec<f64> {
    let mut p = vec![0.0; num_nodes];
    p[node] = 1.0;
    p
}

/// Steps needed to approach the steady state, `⌈N / (2ω − 1)⌉`, for `ω > 1/2`.
pub fn iterations_estimate(num_nodes: usize, omega: f64) -> Result<usize> {
    check_size(num_nodes)?;
    check_closed_probability("omega", omega)?;
    if omega <= 0.5 {
        return Err(Error::EstimateUndefined { omega });
    }
    let raw = num_nodes as f64 / (2.0 * omega - 1.0);
    let rounded = raw.round();
    let steps = if (raw - rounded).abs() < ESTIMATE_SNAP * raw.max(1.0) {
        rounded
    } else {
        raw.ceil()
    };
    Ok(steps as usize)
}

/// Expected number of full runs until one lands on the last node and passes
/// the extra post-selection, treating runs as independent trials at the
/// steady state: `1 / (π_{N−1} · postselect_prob)`.
pub fn expected_repetitions(num_nodes: usize, omega: f64, postselect_prob: f64) -> Result<f64> {
    if !(0.0 < omega && omega < 1.0) {
        return Err(Error::OutOfRange {
            name: "omega",
            value: omega,
        });
    }
    if !(postselect_prob > 0.0 && postselect_prob <= 1.0) {
        return Err(Error::PostSelection {
            probability: postselect_prob,
        });
    }
    let pi = steady_state(num_nodes, omega)?;
    Ok(1.0 / (pi[num_nodes - 1] * postselect_prob))
}

fn check_size(num_nodes: usize) -> Result<()> {
    if num_nodes < 2 {
        return Err(Error::InvalidArgument(format!(
            "chain needs at least 2 nodes, got {num_nodes}"
        )));
    }
    Ok(())
}

fn check_closed_probability(name: &'static str, value: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&value) {
        return Err(Error::OutOfRange { name, value });
    }
    Ok(())
}
