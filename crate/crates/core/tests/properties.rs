mod common;

use std::f64::consts::PI;

use num_complex::Complex64;
use oqwc_core::chain::{build_linear_chain, steady_state, transition_matrix, LinearChainSpec};
use oqwc_core::classifier::{
    classical_classify, omega_prime_from_t, quantum_exact_probabilities, ratio_from_omega_prime,
    run_classifier_oqw, ClassifierInstance, LabeledDataset, LabeledPoint, Prediction,
};
use oqwc_core::data::{sample_triples, standardize_normalize, RawDataset, RawRow, Species};
use oqwc_core::oqw::OqwState;
use oqwc_core::quantum::{
    apply_channel, fidelity_pure, gates, ComplexMatrix, DensityBlock, KrausSet, StateVector,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn unit_pair() -> impl Strategy<Value = [f64; 2]> {
    (-PI..PI).prop_map(|a: f64| [a.cos(), a.sin()])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn channels_preserve_trace_hermiticity_and_positivity(seed: u64, dim in 1usize..=4, count in 1usize..=4) {
        let mut r = rng(seed);
        let kraus = KrausSet::new(random_kraus(dim, count, &mut r)).unwrap();
        let rho = random_density(dim, 1.0, &mut r);
        let out = apply_channel(&kraus, &rho).unwrap();
        prop_assert!((out.trace() - 1.0).abs() <= 1e-10);
        prop_assert!(out.matrix().hermiticity_deviation() <= 1e-10);
        prop_assert!(out.matrix().min_hermitian_eigenvalue() >= -1e-9);
    }

    #[test]
    fn rotations_are_unitary(angle in -20.0f64..20.0) {
        prop_assert!(gates::ry(angle).unitarity_deviation() <= 1e-12);
        let two = gates::hadamard().kron(&gates::ry(angle));
        prop_assert!(two.unitarity_deviation() <= 1e-12);
    }

    #[test]
    fn kron_laws(seed: u64, da in 1usize..=3, db in 1usize..=3) {
        let mut r = rng(seed);
        let m = |d: usize, r: &mut ChaCha8Rng| ComplexMatrix::from_fn(d, |_, _| random_complex(r));
        let (a, b, c, d) = (m(da, &mut r), m(db, &mut r), m(da, &mut r), m(db, &mut r));
        let ab = a.kron(&b);
        prop_assert_eq!(ab.dim(), da * db);
        let lhs = &ab * &c.kron(&d);
        let rhs = (&a * &c).kron(&(&b * &d));
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-12);
        prop_assert_eq!(ab.dagger().dagger(), ab.clone());
        prop_assert!(ab.dagger().max_abs_diff(&a.dagger().kron(&b.dagger())) <= 1e-15);
    }

    #[test]
    fn random_walks_conserve_trace(seed: u64, nodes in 1usize..=8, dim in 1usize..=4, steps in 0usize..=100) {
        let mut r = rng(seed);
        let walk = random_walk(nodes, dim, &mut r);
        let start = OqwState::localized(nodes, 0, random_density(dim, 1.0, &mut r)).unwrap();
        let traj = walk.trajectory(&start, steps).unwrap();
        for state in &traj {
            prop_assert!((state.total_trace() - 1.0).abs() <= 1e-9);
            for b in state.blocks() {
                prop_assert!(b.matrix().min_hermitian_eigenvalue() >= -1e-9);
            }
        }
    }

    #[test]
    fn evolution_composes(seed: u64, nodes in 2usize..=5, a in 0usize..=15, b in 0usize..=15) {
        let mut r = rng(seed);
        let walk = random_walk(nodes, 2, &mut r);
        let start = OqwState::localized(nodes, 0, random_density(2, 1.0, &mut r)).unwrap();
        let split = walk.evolve(&walk.evolve(&start, a).unwrap(), b).unwrap();
        let direct = walk.evolve(&start, a + b).unwrap();
        for (x, y) in split.blocks().iter().zip(direct.blocks()) {
            prop_assert!(x.matrix().max_abs_diff(y.matrix()) <= 1e-12);
        }
    }

    #[test]
    fn linear_chain_matches_markov_chain(seed: u64, nodes in 2usize..=8, omega in 0.01f64..0.99, steps in 0usize..=60) {
        let mut r = rng(seed);
        let layers = (0..nodes - 1).map(|_| random_unitary(3, &mut r)).collect();
        let walk = build_linear_chain(&LinearChainSpec::new(layers, omega).unwrap()).unwrap();
        let start = OqwState::localized(nodes, 0, random_density(3, 1.0, &mut r)).unwrap();
        let chain = transition_matrix(nodes, omega).unwrap();
        let walked = walk.evolve(&start, steps).unwrap().node_distribution();
        let markov = chain.apply_n(&start.node_distribution(), steps).unwrap();
        for (x, y) in walked.iter().zip(&markov) {
            prop_assert!((x - y).abs() <= 1e-10);
        }
    }

    #[test]
    fn conditional_states_follow_the_layers(seed: u64, nodes in 2usize..=6, omega in 0.05f64..0.95, extra in 0usize..=10) {
        let mut r = rng(seed);
        let layers: Vec<ComplexMatrix> = (0..nodes - 1).map(|_| random_unitary(2, &mut r)).collect();
        let walk = build_linear_chain(&LinearChainSpec::new(layers.clone(), omega).unwrap()).unwrap();
        let psi = StateVector::new(random_isometry(2, 1, &mut r).remove(0));
        let start = OqwState::localized(nodes, 0, DensityBlock::pure(&psi).unwrap()).unwrap();
        let end = walk.evolve(&start, nodes - 1 + extra).unwrap();
        let mut expected = psi;
        for node in 0..nodes {
            if node > 0 {
                expected = layers[node - 1].apply(&expected).unwrap();
            }
            let cond = end.conditional_state(node).unwrap();
            prop_assert!(fidelity_pure(&cond, &expected).unwrap() >= 1.0 - 1e-9);
        }
    }

    #[test]
    fn steady_state_is_a_fixed_point(nodes in 2usize..=12, omega in 0.01f64..0.99) {
        let pi = steady_state(nodes, omega).unwrap();
        prop_assert!((pi.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        prop_assert!(pi.iter().all(|&p| p >= 0.0));
        let next = transition_matrix(nodes, omega).unwrap().apply(&pi).unwrap();
        for (x, y) in next.iter().zip(&pi) {
            prop_assert!((x - y).abs() <= 1e-12);
        }
    }

    #[test]
    fn steady_state_is_continuous_at_one_half(nodes in 2usize..=10, sign in prop::bool::ANY) {
        let omega = if sign { 0.5 + 1e-6 } else { 0.5 - 1e-6 };
        let uniform = 1.0 / nodes as f64;
        for p in steady_state(nodes, omega).unwrap() {
            prop_assert!((p - uniform).abs() <= 1e-5);
        }
    }

    #[test]
    fn exact_probabilities_match_state_vector_simulation(seed: u64, m in 1usize..=4, f in 1usize..=4) {
        let mut r = rng(seed);
        let dataset = random_dataset(m, f, &mut r);
        let x = random_unit(f, &mut r);
        let (acc, minus, plus) = brute_force_classifier(&dataset, &x);
        prop_assume!(acc > 1e-9);
        let exact = quantum_exact_probabilities(&dataset, &x).unwrap();
        prop_assert!((exact.p_acc - acc).abs() <= 1e-10);
        prop_assert!((exact.p_minus - minus).abs() <= 1e-10);
        prop_assert!((exact.p_plus - plus).abs() <= 1e-10);
    }

    #[test]
    fn duplicating_the_dataset_keeps_class_probabilities(seed: u64, m in 1usize..=4, f in 1usize..=4, copies in 2usize..=4) {
        let mut r = rng(seed);
        let dataset = random_dataset(m, f, &mut r);
        let x = random_unit(f, &mut r);
        let repeated: Vec<LabeledPoint> = (0..copies).flat_map(|_| dataset.points().to_vec()).collect();
        let bigger = LabeledDataset::new(repeated).unwrap();
        match (quantum_exact_probabilities(&dataset, &x), quantum_exact_probabilities(&bigger, &x)) {
            (Ok(a), Ok(b)) => {
                prop_assert!((a.p_acc - b.p_acc).abs() <= 1e-12);
                prop_assert!((a.p_minus - b.p_minus).abs() <= 1e-12);
                prop_assert_eq!(a.prediction(), b.prediction());
            }
            (a, b) => prop_assert_eq!(a.is_err(), b.is_err()),
        }
        // Copies shift the classical score by (copies − 1)·Σy, so its sign is
        // only stable for balanced labels.
        let label_sum: f64 = dataset.points().iter().map(|p| p.label.sign()).sum();
        if label_sum == 0.0 {
            prop_assert_eq!(classical_classify(&dataset, &x).unwrap(), classical_classify(&bigger, &x).unwrap());
        }
    }

    #[test]
    fn classifiers_agree_on_two_point_sets(x0 in unit_pair(), x1 in unit_pair(), xt in unit_pair()) {
        let pair = LabeledDataset::pair(&x0, &x1).unwrap();
        let classical = classical_classify(&pair, &xt).unwrap();
        let instance = match ClassifierInstance::from_triple(x0, x1, xt) {
            Ok(i) => i,
            Err(_) => return Ok(()),
        };
        let quantum = instance.run_reference().unwrap().prediction;
        if classical != Prediction::Tie && quantum != Prediction::Tie {
            prop_assert_eq!(classical, quantum);
        }
        let exact = quantum_exact_probabilities(&pair, &xt).unwrap();
        let outcome = instance.run_reference().unwrap();
        prop_assert!((outcome.p_class_minus - exact.p_minus).abs() <= 1e-9);
    }

    #[test]
    fn class_distribution_is_independent_of_omega(omega_prime in -3.1f64..3.1) {
        let base = run_classifier_oqw(omega_prime, 0.3, 12).unwrap().outcome;
        for omega in [0.5, 0.7, 0.9] {
            let o = run_classifier_oqw(omega_prime, omega, 12).unwrap().outcome;
            prop_assert!((o.p_class_minus - base.p_class_minus).abs() <= 1e-9);
            prop_assert!((o.p_post_accept - base.p_post_accept).abs() <= 1e-9);
        }
    }

    #[test]
    fn omega_prime_round_trips(w in -PI + 1e-3..PI - 1e-3) {
        let back = omega_prime_from_t(ratio_from_omega_prime(w)).unwrap();
        prop_assert!((back - w).abs() <= 1e-9);
    }

    #[test]
    fn standardized_data_is_centered_and_unit(seed: u64, n in 3usize..=40) {
        use rand::Rng;
        let mut r = rng(seed);
        let rows: Vec<RawRow> = (0..n)
            .map(|i| RawRow {
                features: vec![r.random_range(4.0..8.0), r.random_range(2.0..4.5)],
                species: if i % 2 == 0 { Species::Setosa } else { Species::Versicolor },
            })
            .collect();
        let raw = RawDataset::new(rows).unwrap();
        let prepared = match standardize_normalize(&raw) {
            Ok(p) => p,
            Err(_) => return Ok(()),
        };
        for (c, (&mean, &sd)) in prepared.means().iter().zip(prepared.std_devs()).enumerate() {
            let z: Vec<f64> = raw.rows().iter().map(|row| (row.features[c] - mean) / sd).collect();
            let zmean = z.iter().sum::<f64>() / n as f64;
            let zvar = z.iter().map(|x| (x - zmean).powi(2)).sum::<f64>() / n as f64;
            prop_assert!(zmean.abs() <= 1e-9 && (zvar.sqrt() - 1.0).abs() <= 1e-9);
        }
        for p in prepared.points() {
            prop_assert!((p.vector.iter().map(|x| x * x).sum::<f64>().sqrt() - 1.0).abs() <= 1e-10);
        }
        for t in sample_triples(&prepared, 50, seed).unwrap() {
            prop_assert!(t.x0 != t.x1 && t.test != t.x0 && t.test != t.x1);
        }
    }
}

#[test]
fn density_rejects_non_hermitian_input() {
    let m = ComplexMatrix::from_rows(vec![
        vec![Complex64::new(0.5, 0.0), Complex64::new(0.3, 0.0)],
        vec![Complex64::new(0.0, 0.0), Complex64::new(0.5, 0.0)],
    ])
    .unwrap();
    assert!(DensityBlock::new(m).is_err());
}
