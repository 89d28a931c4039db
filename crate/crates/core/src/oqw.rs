//! Open quantum walks on finite graphs.
//!
//! A walk is given by labeled-edge operators `B_i^j` acting on the walker's
//! internal space when it jumps from node `i` to node `j`. The full Kraus
//! operators `B_i^j ⊗ |j⟩⟨i|` are never materialized: after a single step the
//! walker state is block diagonal, `Σ_i ρ_ii ⊗ |i⟩⟨i|`, and the step rule acts
//! on the blocks directly:
//!
//! ```text
//! ρ_jj' = Σ_i B_i^j ρ_ii B_i^j†
//! ```
//!
//! Only block-diagonal states are representable. A general initial state with
//! graph coherences loses them after one step anyway, so callers project first.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::quantum::{completeness_deviation, ComplexMatrix, DensityBlock, CPTP_TOL, TRACE_TOL};

/// Node mass below which post-selection on that node is refused.
pub const POSTSELECT_EPS: f64 = 1e-12;
/// Successive-distribution TV distance at which a walk counts as converged.
pub const CONVERGENCE_TV: f64 = 1e-8;

#[derive(Debug, Clone)]
struct Edge {
    from: usize,
    to: usize,
    op: ComplexMatrix,
    op_dagger: ComplexMatrix,
}

/// The edge operators of an open quantum walk, with per-node completeness
/// `Σ_j B_i^j† B_i^j = 𝟙` checked at construction.
///
/// Missing edges are simply absent; they are not stored as zero matrices.
#[derive(Debug, Clone)]
pub struct TransitionOperatorSet {
    num_nodes: usize,
    internal_dim: usize,
    edges: Vec<Edge>,
}

impl TransitionOperatorSet {
    /// `ops` maps `(from, to)` to `B_from^to`.
    pub fn new(
        num_nodes: usize,
        internal_dim: usize,
        ops: BTreeMap<(usize, usize), ComplexMatrix>,
    ) -> Result<Self> {
        if num_nodes == 0 || internal_dim == 0 {
            return Err(Error::InvalidArgument(
                "graph and internal space must be non-empty".into(),
            ));
        }
        let mut outgoing: Vec<Vec<ComplexMatrix>> = vec![Vec::new(); num_nodes];
        let mut edges = Vec::with_capacity(ops.len());
        for ((from, to), op) in ops {
            for node in [from, to] {
                if node >= num_nodes {
                    return Err(Error::NodeOutOfRange { node, num_nodes });
                }
            }
            if op.dim() != internal_dim {
                return Err(Error::DimensionMismatch {
                    expected: internal_dim,
                    found: op.dim(),
                });
            }
            outgoing[from].push(op.clone());
            edges.push(Edge {
                from,
                to,
                op_dagger: op.dagger(),
                op,
            });
        }
        for (node, ops) in outgoing.iter().enumerate() {
            let deviation = if ops.is_empty() {
                1.0
            } else {
                completeness_deviation(ops)?
            };
            if deviation > CPTP_TOL {
                return Err(Error::IncompleteNode { node, deviation });
            }
        }
        Ok(Self {
            num_nodes,
            internal_dim,
            edges,
        })
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn internal_dim(&self) -> usize {
        self.internal_dim
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// `B_from^to`, if the edge exists.
    pub fn operator(&self, from: usize, to: usize) -> Option<&ComplexMatrix> {
        self.edges
            .iter()
            .find(|e| e.from == from && e.to == to)
            .map(|e| &e.op)
    }

    /// All operators leaving `from`.
    pub fn outgoing(&self, from: usize) -> impl Iterator<Item = (usize, &ComplexMatrix)> {
        self.edges
            .iter()
            .filter(move |e| e.from == from)
            .map(|e| (e.to, &e.op))
    }

    /// One application of the walk map.
    pub fn step(&self, state: &OqwState) -> Result<OqwState> {
        self.check_state(state)?;
        let mut blocks = vec![ComplexMatrix::zeros(self.internal_dim); self.num_nodes];
        for edge in &self.edges {
            let rho = state.blocks[edge.from].matrix();
            if rho.entries().iter().all(|z| z.norm_sqr() == 0.0) {
                continue;
            }
            let term = &(&edge.op * rho) * &edge.op_dagger;
            blocks[edge.to] = &blocks[edge.to] + &term;
        }
        Ok(OqwState {
            blocks: blocks
                .into_iter()
                .map(DensityBlock::from_channel_output)
                .collect(),
        })
    }

    /// `n`-fold composition of [`step`](Self::step).
    pub fn evolve(&self, state: &OqwState, steps: usize) -> Result<OqwState> {
        self.check_state(state)?;
        let mut current = state.clone();
        for _ in 0..steps {
            current = self.step(&current)?;
        }
        Ok(current)
    }

    /// States after `0, 1, …, steps` steps.
    pub fn trajectory(&self, state: &OqwState, steps: usize) -> Result<Vec<OqwState>> {
        self.check_state(state)?;
        let mut out = Vec::with_capacity(steps + 1);
        out.push(state.clone());
        for n in 0..steps {
            let next = self.step(&out[n])?;
            out.push(next);
        }
        Ok(out)
    }

    /// Steps until the TV distance between successive node distributions
    /// drops below `tol`, or `max_steps` is reached.
    pub fn evolve_until_converged(
        &self,
        state: &OqwState,
        tol: f64,
        max_steps: usize,
    ) -> Result<Convergence> {
        self.check_state(state)?;
        let mut current = state.clone();
        let mut prev = current.node_distribution();
        for n in 1..=max_steps {
            current = self.step(&current)?;
            let dist = current.node_distribution();
            if total_variation(&prev, &dist)? < tol {
                return Ok(Convergence {
                    state: current,
                    steps: n,
                    converged: true,
                });
            }
            prev = dist;
        }
        Ok(Convergence {
            state: current,
            steps: max_steps,
            converged: false,
        })
    }

    fn check_state(&self, state: &OqwState) -> Result<()> {
        if state.num_nodes() != self.num_nodes {
            return Err(Error::DimensionMismatch {
                expected: self.num_nodes,
                found: state.num_nodes(),
            });
        }
        if state.internal_dim() != self.internal_dim {
            return Err(Error::DimensionMismatch {
                expected: self.internal_dim,
                found: state.internal_dim(),
            });
        }
        Ok(())
    }
}

/// Outcome of [`TransitionOperatorSet::evolve_until_converged`].
#[derive(Debug, Clone)]
pub struct Convergence {
    pub state: OqwState,
    pub steps: usize,
    pub converged: bool,
}

/// Block-diagonal walker state: one unnormalized density block per node,
/// with total trace one.
#[derive(Debug, Clone, PartialEq)]
pub struct OqwState {
    blocks: Vec<DensityBlock>,
}

impl OqwState {
    pub fn new(blocks: Vec<DensityBlock>) -> Result<Self> {
        let dim = blocks
            .first()
            .ok_or_else(|| Error::InvalidArgument("state needs at least one node".into()))?
            .dim();
        if let Some(b) = blocks.iter().find(|b| b.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: b.dim(),
            });
        }
        let total: f64 = blocks.iter().map(DensityBlock::trace).sum();
        if (total - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidDensity(format!(
                "total trace {total} is not 1"
            )));
        }
        Ok(Self { blocks })
    }

    /// All mass at `node`, in internal state `rho` (which must have trace one).
    pub fn localized(num_nodes: usize, node: usize, rho: DensityBlock) -> Result<Self> {
        if node >= num_nodes {
            return Err(Error::NodeOutOfRange { node, num_nodes });
        }
        let dim = rho.dim();
        let mut blocks = vec![DensityBlock::zero(dim); num_nodes];
        blocks[node] = rho;
        Self::new(blocks)
    }

    pub fn num_nodes(&self) -> usize {
        self.blocks.len()
    }

    pub fn internal_dim(&self) -> usize {
        self.blocks[0].dim()
    }

    pub fn blocks(&self) -> &[DensityBlock] {
        &self.blocks
    }

    pub fn block(&self, node: usize) -> Option<&DensityBlock> {
        self.blocks.get(node)
    }

    /// `p_i = tr ρ_ii`.
    pub fn node_distribution(&self) -> Vec<f64> {
        self.blocks.iter().map(DensityBlock::trace).collect()
    }

    pub fn total_trace(&self) -> f64 {
        self.blocks.iter().map(DensityBlock::trace).sum()
    }

    /// The internal state given that the walker is found at `node`.
    pub fn conditional_state(&self, node: usize) -> Result<DensityBlock> {
        let block = self.blocks.get(node).ok_or(Error::NodeOutOfRange {
            node,
            num_nodes: self.blocks.len(),
        })?;
        let p = block.trace();
        if p <= POSTSELECT_EPS {
            return Err(Error::PostSelection { probability: p });
        }
        Ok(block.scaled(1.0 / p))
    }
}

/// `½ Σ |p_i − q_i|`.
pub fn total_variation(p: &[f64], q: &[f64]) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    Ok(0.5 * p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum::<f64>())
}
