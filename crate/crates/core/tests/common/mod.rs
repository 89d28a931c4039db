#![allow(dead_code)]

use std::collections::BTreeMap;

use num_complex::Complex64;
use oqwc_core::classifier::{Label, LabeledDataset, LabeledPoint};
use oqwc_core::oqw::TransitionOperatorSet;
use oqwc_core::quantum::{ComplexMatrix, DensityBlock};
use rand::Rng;

pub fn random_complex<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

/// Columns of a random `rows × cols` complex matrix, orthonormalized by
/// Gram–Schmidt.
pub fn random_isometry<R: Rng>(rows: usize, cols: usize, rng: &mut R) -> Vec<Vec<Complex64>> {
    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(cols);
    while basis.len() < cols {
        let mut v: Vec<Complex64> = (0..rows).map(|_| random_complex(rng)).collect();
        for b in &basis {
            let proj: Complex64 = b.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi -= proj * bi;
            }
        }
        let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            basis.push(v.into_iter().map(|x| x / norm).collect());
        }
    }
    basis
}

/// `k` operators on `C^d` obtained by slicing a random `dk × d` isometry, so
/// that `Σ K†K = I` holds by construction.
pub fn random_kraus<R: Rng>(dim: usize, count: usize, rng: &mut R) -> Vec<ComplexMatrix> {
    let cols = random_isometry(dim * count, dim, rng);
    (0..count)
        .map(|k| ComplexMatrix::from_fn(dim, |r, c| cols[c][k * dim + r]))
        .collect()
}

pub fn random_unitary<R: Rng>(dim: usize, rng: &mut R) -> ComplexMatrix {
    random_kraus(dim, 1, rng).remove(0)
}

/// `A A† / tr(A A†)` scaled to trace `weight`.
pub fn random_density<R: Rng>(dim: usize, weight: f64, rng: &mut R) -> DensityBlock {
    let a = ComplexMatrix::from_fn(dim, |_, _| random_complex(rng));
    let aa = &a * &a.dagger();
    let tr = aa.trace().re;
    DensityBlock::new(aa.scale(weight / tr)).unwrap()
}

/// A walk on `num_nodes` nodes where every node hops to a random non-empty
/// subset of nodes.
pub fn random_walk<R: Rng>(num_nodes: usize, dim: usize, rng: &mut R) -> TransitionOperatorSet {
    let mut ops = BTreeMap::new();
    for from in 0..num_nodes {
        let mut targets: Vec<usize> = (0..num_nodes).filter(|_| rng.random_bool(0.5)).collect();
        if targets.is_empty() {
            targets.push(rng.random_range(0..num_nodes));
        }
        for (to, k) in targets.iter().zip(random_kraus(dim, targets.len(), rng)) {
            ops.insert((from, *to), k);
        }
    }
    TransitionOperatorSet::new(num_nodes, dim, ops).unwrap()
}

pub fn random_unit<R: Rng>(dim: usize, rng: &mut R) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect();
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-3 {
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}

pub fn random_dataset<R: Rng>(size: usize, dim: usize, rng: &mut R) -> LabeledDataset {
    let points = (0..size)
        .map(|_| LabeledPoint {
            vector: random_unit(dim, rng),
            label: if rng.random_bool(0.5) {
                Label::Plus
            } else {
                Label::Minus
            },
        })
        .collect();
    LabeledDataset::new(points).unwrap()
}

/// Class probabilities of the interference classifier by explicit
/// state-vector simulation.
///
/// The register order is `|m⟩|a⟩|i⟩|c⟩`: training index, ancilla, feature
/// index and class qubit. The ancilla branch `|0⟩` holds the test point and
/// `|1⟩` the training point. A Hadamard on the ancilla interferes the two
/// branches; the result is post-selected on ancilla `|0⟩` and the class
/// qubit is read out. Returns `(p_acc, p(−1), p(+1))`.
pub fn brute_force_classifier(dataset: &LabeledDataset, x_test: &[f64]) -> (f64, f64, f64) {
    let m = dataset.len();
    let f = dataset.feature_dim();
    let idx = |mi: usize, a: usize, i: usize, c: usize| ((mi * 2 + a) * f + i) * 2 + c;
    let mut psi = vec![0.0; m * 2 * f * 2];
    let norm = 1.0 / (2.0 * m as f64).sqrt();
    for (mi, p) in dataset.points().iter().enumerate() {
        let c = match p.label {
            Label::Minus => 0,
            Label::Plus => 1,
        };
        for i in 0..f {
            psi[idx(mi, 0, i, c)] = norm * x_test[i];
            psi[idx(mi, 1, i, c)] = norm * p.vector[i];
        }
    }
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut out = vec![0.0; psi.len()];
    for mi in 0..m {
        for i in 0..f {
            for c in 0..2 {
                let (a0, a1) = (psi[idx(mi, 0, i, c)], psi[idx(mi, 1, i, c)]);
                out[idx(mi, 0, i, c)] = h * (a0 + a1);
                out[idx(mi, 1, i, c)] = h * (a0 - a1);
            }
        }
    }
    let mut class = [0.0; 2];
    for mi in 0..m {
        for i in 0..f {
            for (c, w) in class.iter_mut().enumerate() {
                *w += out[idx(mi, 0, i, c)].powi(2);
            }
        }
    }
    let acc = class[0] + class[1];
    (acc, class[0] / acc, class[1] / acc)
}

/// `U3 U2 U1 |00⟩ = ½[(1 − S)|00⟩ + C|01⟩ + (1 + S)|10⟩ − C|11⟩]` with
/// `S = sin(ω'/2)`, `C = cos(ω'/2)`.
pub fn circuit_state_closed_form(omega_prime: f64) -> [f64; 4] {
    let (s, c) = (omega_prime / 2.0).sin_cos();
    [(1.0 - s) / 2.0, c / 2.0, (1.0 + s) / 2.0, -c / 2.0]
}
