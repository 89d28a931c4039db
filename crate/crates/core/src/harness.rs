//! The experiments behind the `oqwc` command line tool.
//!
//! Every command takes an [`ExperimentConfig`] and returns a table that can be
//! written as CSV. Exact mode (`shots == 0`) is deterministic for a given
//! configuration.

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::chain::{build_linear_chain, iterations_estimate, steady_state, LinearChainSpec};
use crate::classifier::{
    build_classifier_unitaries, classical_classify, quantum_exact_probabilities, sample_outcome,
    ClassifierInstance, ClassifierOutcome, ExactProbabilities, Label, LabeledDataset,
    OqwClassifierRun, Prediction, CLASSIFIER_NODES,
};
use crate::data::{
    load_bundled, load_csv, sample_triples, standardize_normalize, PreparedDataset, RawDataset,
    Triple, IRIS_FILE_NAME,
};
use crate::error::{Error, Result};
use crate::oqw::{total_variation, OqwState, TransitionOperatorSet, CONVERGENCE_TV};
use crate::quantum::{gates, DensityBlock, StateVector};

/// Environment variable naming a directory that holds the Iris CSV.
pub const DATA_DIR_ENV: &str = "OQWC_DATA_DIR";
/// Walk rates used by `iris-experiment` when none are given.
pub const DEFAULT_OMEGAS: [f64; 3] = [0.5, 0.8, 1.0];
/// Repetitions averaged in sampling mode.
pub const SAMPLING_REPEATS: usize = 10;
pub const DEFAULT_SEED: u64 = 7;
pub const DEFAULT_TRIPLES: usize = 2000;
/// Steps shown by `curves` and `evolution` when none are given.
pub const DEFAULT_FIGURE_STEPS: usize = 10;
/// Rows of the bundled data used as `(x0, x1, x_test)` in the worked example.
pub const WORKED_EXAMPLE_INDICES: [usize; 3] = [33, 74, 12];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Curves,
    Evolution,
    ClassifyOne,
    IrisExperiment,
    SteadyState,
}

/// Inputs to `classify-one`: explicit vectors or row indices into the data.
#[derive(Debug, Clone, PartialEq)]
pub enum TripleSource {
    Vectors {
        x0: [f64; 2],
        x1: [f64; 2],
        x_test: [f64; 2],
    },
    Indices(Triple),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub command: Command,
    pub omega: f64,
    /// Overrides `omega` for commands that sweep several rates.
    pub omega_list: Vec<f64>,
    /// `None` selects each command's default.
    pub steps: Option<usize>,
    pub nodes: usize,
    pub triples: usize,
    pub seed: u64,
    /// Measurement shots per triple; 0 selects exact probabilities.
    pub shots: u64,
    pub stride: usize,
    pub omega_prime: Option<f64>,
    pub data_path: Option<PathBuf>,
    pub output_path: Option<PathBuf>,
    pub verify: bool,
    pub triple: Option<TripleSource>,
}

impl ExperimentConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            omega: 0.7,
            omega_list: Vec::new(),
            steps: None,
            nodes: CLASSIFIER_NODES,
            triples: DEFAULT_TRIPLES,
            seed: DEFAULT_SEED,
            shots: 0,
            stride: 2,
            omega_prime: None,
            data_path: None,
            output_path: None,
            verify: false,
            triple: None,
        }
    }

    /// The rates a command runs over: `omega_list` if given, otherwise
    /// `omega` (or the defaults for `iris-experiment`).
    pub fn omegas(&self) -> Vec<f64> {
        if !self.omega_list.is_empty() {
            self.omega_list.clone()
        } else if self.command == Command::IrisExperiment {
            DEFAULT_OMEGAS.to_vec()
        } else {
            vec![self.omega]
        }
    }

    pub fn validate(&self) -> Result<()> {
        let walk_rates_allow_one =
            matches!(self.command, Command::IrisExperiment | Command::ClassifyOne);
        for omega in self.omegas() {
            let ok = omega > 0.0 && (omega < 1.0 || (walk_rates_allow_one && omega == 1.0));
            if !ok {
                return Err(Error::OutOfRange {
                    name: "omega",
                    value: omega,
                });
            }
        }
        if self.nodes < 2 {
            return Err(Error::InvalidArgument(format!(
                "need at least 2 nodes, got {}",
                self.nodes
            )));
        }
        if self.command == Command::IrisExperiment && self.triples == 0 {
            return Err(Error::InvalidArgument("triples must be at least 1".into()));
        }
        if self.stride == 0 {
            return Err(Error::InvalidArgument("stride must be at least 1".into()));
        }
        if let Some(w) = self.omega_prime {
            if !w.is_finite() {
                return Err(Error::OutOfRange {
                    name: "omega_prime",
                    value: w,
                });
            }
        }
        Ok(())
    }
}

/// Where a dataset was read from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DataSource {
    File(PathBuf),
    Bundled,
}

/// Reads the dataset from `path`, else from `$OQWC_DATA_DIR`, else the
/// bundled copy.
pub fn resolve_dataset(path: Option<&Path>) -> Result<(RawDataset, DataSource)> {
    let chosen = path.map(Path::to_path_buf).or_else(|| {
        std::env::var_os(DATA_DIR_ENV).map(|dir| PathBuf::from(dir).join(IRIS_FILE_NAME))
    });
    match chosen {
        Some(p) => Ok((load_csv(&p)?, DataSource::File(p))),
        None => Ok((load_bundled(), DataSource::Bundled)),
    }
}

pub fn prepare_dataset(config: &ExperimentConfig) -> Result<PreparedDataset> {
    let (raw, _) = resolve_dataset(config.data_path.as_deref())?;
    standardize_normalize(&raw)
}

/// The classifier instance for `triple`, with `x0` carrying label −1.
pub fn instance_for(prepared: &PreparedDataset, triple: &Triple) -> Result<ClassifierInstance> {
    let n = prepared.len();
    for i in [triple.x0, triple.x1, triple.test] {
        if i >= n {
            return Err(Error::InvalidArgument(format!(
                "row {i} out of range for {n} points"
            )));
        }
    }
    ClassifierInstance::from_triple(
        prepared.vector_2d(triple.x0)?,
        prepared.vector_2d(triple.x1)?,
        prepared.vector_2d(triple.test)?,
    )
}

/// ω' of the worked example triple in `prepared`.
pub fn worked_example_omega_prime(prepared: &PreparedDataset) -> Result<f64> {
    let [x0, x1, test] = WORKED_EXAMPLE_INDICES;
    Ok(instance_for(prepared, &Triple { x0, x1, test })?.omega_prime)
}

/// `max(iterations_estimate, steps until successive node distributions are
/// within CONVERGENCE_TV)`, capped at `10 N`. For `ω = 1` the walk reaches
/// the last node after exactly `N − 1` steps.
pub fn default_steps(num_nodes: usize, omega: f64) -> Result<usize> {
    if omega == 1.0 {
        return Ok(num_nodes.saturating_sub(1));
    }
    let cap = 10 * num_nodes;
    let estimate = match iterations_estimate(num_nodes, omega) {
        Ok(n) => n,
        Err(Error::EstimateUndefined { .. }) => 0,
        Err(e) => return Err(e),
    };
    // Occupations do not depend on the layers, so a scalar walk suffices.
    let layers = vec![gates::identity(1); num_nodes - 1];
    let walk = build_linear_chain(&LinearChainSpec::new(layers, omega)?)?;
    let start = OqwState::localized(num_nodes, 0, DensityBlock::pure(&StateVector::basis(1, 0))?)?;
    let converged = walk
        .evolve_until_converged(&start, CONVERGENCE_TV, cap)?
        .steps;
    Ok(estimate.max(converged).min(cap))
}

/// The linear walk used by `curves`, `evolution` and `steady-state`: the
/// classifier layers for four nodes, otherwise `R_y(ω')` on a qubit per hop.
/// Node occupations do not depend on the layers.
fn figure_walk(
    num_nodes: usize,
    omega: f64,
    omega_prime: f64,
) -> Result<(TransitionOperatorSet, OqwState)> {
    let (layers, dim) = if num_nodes == CLASSIFIER_NODES {
        (build_classifier_unitaries(omega_prime).to_vec(), 4)
    } else {
        (vec![gates::ry(omega_prime); num_nodes - 1], 2)
    };
    let walk = build_linear_chain(&LinearChainSpec::new(layers, omega)?)?;
    let start = OqwState::localized(
        num_nodes,
        0,
        DensityBlock::pure(&StateVector::basis(dim, 0))?,
    )?;
    Ok((walk, start))
}

fn figure_omega_prime(config: &ExperimentConfig) -> Result<f64> {
    match config.omega_prime {
        Some(w) => Ok(w),
        None => worked_example_omega_prime(&prepare_dataset(config)?),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveRow {
    pub omega: f64,
    pub n: usize,
    /// Occupation of the last node after `n` steps.
    pub p_last: f64,
}

/// Last-node occupation for `n = 0..=steps` at each rate.
pub fn cmd_curves(config: &ExperimentConfig) -> Result<Vec<CurveRow>> {
    config.validate()?;
    let steps = config.steps.unwrap_or(DEFAULT_FIGURE_STEPS);
    let omega_prime = figure_omega_prime(config)?;
    let last = config.nodes - 1;
    let mut rows = Vec::new();
    for omega in config.omegas() {
        let (walk, start) = figure_walk(config.nodes, omega, omega_prime)?;
        for (n, state) in walk.trajectory(&start, steps)?.iter().enumerate() {
            rows.push(CurveRow {
                omega,
                n,
                p_last: state.node_distribution()[last],
            });
        }
    }
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolutionRow {
    pub omega: f64,
    pub n: usize,
    pub node: usize,
    pub probability: f64,
}

/// Full node distribution at `n = 0, stride, 2·stride, …` and at `steps`.
pub fn cmd_evolution(config: &ExperimentConfig) -> Result<Vec<EvolutionRow>> {
    config.validate()?;
    let steps = config.steps.unwrap_or(DEFAULT_FIGURE_STEPS);
    let omega_prime = figure_omega_prime(config)?;
    let mut rows = Vec::new();
    for omega in config.omegas() {
        let (walk, start) = figure_walk(config.nodes, omega, omega_prime)?;
        let trajectory = walk.trajectory(&start, steps)?;
        for (n, state) in trajectory.iter().enumerate() {
            if n % config.stride != 0 && n != steps {
                continue;
            }
            for (node, probability) in state.node_distribution().into_iter().enumerate() {
                rows.push(EvolutionRow {
                    omega,
                    n,
                    node,
                    probability,
                });
            }
        }
    }
    Ok(rows)
}

#[derive(Debug, Clone)]
pub struct ClassifyOneReport {
    pub instance: ClassifierInstance,
    pub omega: f64,
    pub steps: usize,
    pub reference: ClassifierOutcome,
    pub walk: OqwClassifierRun,
    pub exact: ExactProbabilities,
    pub classical: Prediction,
}

/// Classifies one triple with the walk, the plain circuit and the classical
/// rule. Explicit vectors are scaled to unit norm first.
pub fn cmd_classify_one(config: &ExperimentConfig) -> Result<ClassifyOneReport> {
    config.validate()?;
    let instance = match &config.triple {
        Some(TripleSource::Vectors { x0, x1, x_test }) => {
            ClassifierInstance::from_triple(unit(*x0)?, unit(*x1)?, unit(*x_test)?)?
        }
        Some(TripleSource::Indices(triple)) => instance_for(&prepare_dataset(config)?, triple)?,
        None => {
            let [x0, x1, test] = WORKED_EXAMPLE_INDICES;
            instance_for(&prepare_dataset(config)?, &Triple { x0, x1, test })?
        }
    };
    let omega = config.omega;
    let steps = match config.steps {
        Some(s) => s,
        None => default_steps(CLASSIFIER_NODES, omega)?,
    };
    let pair = LabeledDataset::pair(&instance.x0, &instance.x1)?;
    Ok(ClassifyOneReport {
        reference: instance.run_reference()?,
        walk: instance.run_oqw(omega, steps)?,
        exact: quantum_exact_probabilities(&pair, &instance.x_test)?,
        classical: classical_classify(&pair, &instance.x_test)?,
        instance,
        omega,
        steps,
    })
}

fn unit(v: [f64; 2]) -> Result<[f64; 2]> {
    let norm = v[0].hypot(v[1]);
    if !(norm > 1e-12 && norm.is_finite()) {
        return Err(Error::InvalidArgument(format!("cannot normalize {v:?}")));
    }
    Ok([v[0] / norm, v[1] / norm])
}

impl fmt::Display for ClassifyOneReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = &self.instance;
        let o = &self.walk.outcome;
        writeln!(f, "x0      = ({:.6}, {:.6})  label -1", i.x0[0], i.x0[1])?;
        writeln!(f, "x1      = ({:.6}, {:.6})  label +1", i.x1[0], i.x1[1])?;
        writeln!(f, "x_test  = ({:.6}, {:.6})", i.x_test[0], i.x_test[1])?;
        writeln!(f, "phi     = {:.6}", i.phi)?;
        writeln!(f, "gamma   = {:.6}", i.gamma)?;
        writeln!(f, "t       = {:.6}", i.t)?;
        writeln!(f, "omega'  = {:.6}", i.omega_prime)?;
        writeln!(
            f,
            "walk    : omega = {}, steps = {}, P(last node) = {:.6}",
            self.omega, self.steps, self.walk.terminal_probability
        )?;
        writeln!(f, "p'_acc  = {:.6}", o.p_post_accept)?;
        writeln!(f, "P'(-1)  = {:.6}", o.p_class_minus)?;
        writeln!(f, "P'(+1)  = {:.6}", o.p_class_plus)?;
        writeln!(f, "quantum prediction   = {}", o.prediction)?;
        write!(f, "classical prediction = {}", self.classical)
    }
}

/// Outcome of one triple at one rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TripleResult {
    pub truth: Label,
    pub prediction: Prediction,
    pub terminal_probability: f64,
    pub p_post_accept: f64,
    pub outcome: ClassifierOutcome,
}

/// Runs every triple through the walk in parallel; results keep the order of
/// `triples`.
pub fn classify_triples(
    prepared: &PreparedDataset,
    triples: &[Triple],
    omega: f64,
    steps: usize,
) -> Result<Vec<TripleResult>> {
    triples
        .par_iter()
        .map(|triple| {
            let run = instance_for(prepared, triple)?.run_oqw(omega, steps)?;
            Ok(TripleResult {
                truth: prepared.points()[triple.test].label,
                prediction: run.outcome.prediction,
                terminal_probability: run.terminal_probability,
                p_post_accept: run.outcome.p_post_accept,
                outcome: run.outcome,
            })
        })
        .collect()
}

/// One row of the classification table. Rates are percentages; class 1 is
/// setosa (label −1) and class 2 is versicolor (label +1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResultsRow {
    pub omega: f64,
    pub steps: usize,
    pub triples: usize,
    pub p_succ: f64,
    /// Versicolor test points predicted as setosa, among versicolor tests.
    pub p_err_1_given_2: f64,
    /// Setosa test points predicted as versicolor, among setosa tests.
    pub p_err_2_given_1: f64,
    pub p_err_total: f64,
    pub tie_rate: f64,
    pub mean_terminal_probability: f64,
    pub mean_p_post_accept: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultsTable {
    pub rows: Vec<ResultsRow>,
}

#[derive(Debug, Default, Clone, Copy)]
struct Tally {
    total: usize,
    success: usize,
    ties: usize,
    setosa: usize,
    versicolor: usize,
    setosa_as_versicolor: usize,
    versicolor_as_setosa: usize,
}

impl Tally {
    fn add(&mut self, truth: Label, prediction: Prediction) {
        self.total += 1;
        match truth {
            Label::Minus => self.setosa += 1,
            Label::Plus => self.versicolor += 1,
        }
        match prediction {
            Prediction::Tie => self.ties += 1,
            Prediction::Class(p) if p == truth => self.success += 1,
            Prediction::Class(Label::Plus) => self.setosa_as_versicolor += 1,
            Prediction::Class(Label::Minus) => self.versicolor_as_setosa += 1,
        }
    }

    /// `(p_succ, p_err_1_given_2, p_err_2_given_1, p_err_total, tie_rate)`.
    fn rates(&self) -> [f64; 5] {
        let pct = |num: usize, den: usize| {
            if den == 0 {
                0.0
            } else {
                100.0 * num as f64 / den as f64
            }
        };
        [
            pct(self.success, self.total),
            pct(self.versicolor_as_setosa, self.versicolor),
            pct(self.setosa_as_versicolor, self.setosa),
            pct(
                self.setosa_as_versicolor + self.versicolor_as_setosa,
                self.total,
            ),
            pct(self.ties, self.total),
        ]
    }
}

/// Classifies `triples` seeded triples at each rate and scores them against
/// the true labels. Ties count as failures. With `shots > 0` each triple is
/// decided by majority vote over sampled shots, and the whole experiment is
/// repeated [`SAMPLING_REPEATS`] times and averaged.
pub fn cmd_iris_experiment(config: &ExperimentConfig) -> Result<ResultsTable> {
    config.validate()?;
    let prepared = prepare_dataset(config)?;
    let triples = sample_triples(&prepared, config.triples, config.seed)?;
    let mut rows = Vec::new();
    for (omega_index, omega) in config.omegas().into_iter().enumerate() {
        let steps = match config.steps {
            Some(s) => s,
            None => default_steps(CLASSIFIER_NODES, omega)?,
        };
        let results = classify_triples(&prepared, &triples, omega, steps)?;
        let rates = if config.shots == 0 {
            let mut tally = Tally::default();
            for r in &results {
                tally.add(r.truth, r.prediction);
            }
            tally.rates()
        } else {
            let mut sum = [0.0; 5];
            for repeat in 0..SAMPLING_REPEATS {
                let tally = sampled_tally(&results, config, omega_index, repeat);
                for (s, r) in sum.iter_mut().zip(tally.rates()) {
                    *s += r;
                }
            }
            sum.map(|s| s / SAMPLING_REPEATS as f64)
        };
        let count = results.len() as f64;
        rows.push(ResultsRow {
            omega,
            steps,
            triples: results.len(),
            p_succ: rates[0],
            p_err_1_given_2: rates[1],
            p_err_2_given_1: rates[2],
            p_err_total: rates[3],
            tie_rate: rates[4],
            mean_terminal_probability: results.iter().map(|r| r.terminal_probability).sum::<f64>()
                / count,
            mean_p_post_accept: results.iter().map(|r| r.p_post_accept).sum::<f64>() / count,
        });
    }
    Ok(ResultsTable { rows })
}

fn sampled_tally(
    results: &[TripleResult],
    config: &ExperimentConfig,
    omega_index: usize,
    repeat: usize,
) -> Tally {
    let predictions: Vec<(Label, Prediction)> = results
        .par_iter()
        .enumerate()
        .map(|(i, r)| {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(((omega_index as u64) << 48) | ((repeat as u64) << 32) | i as u64);
            let counts = sample_outcome(&r.outcome, r.terminal_probability, config.shots, &mut rng);
            (r.truth, counts.prediction())
        })
        .collect();
    let mut tally = Tally::default();
    for (truth, prediction) in predictions {
        tally.add(truth, prediction);
    }
    tally
}

#[derive(Debug, Clone, PartialEq)]
pub struct SteadyStateReport {
    pub omega: f64,
    pub pi: Vec<f64>,
    /// Walk distribution after `10 N` steps, when verification was asked for.
    pub empirical: Option<Vec<f64>>,
    pub tv_distance: Option<f64>,
}

pub fn cmd_steady_state(config: &ExperimentConfig) -> Result<Vec<SteadyStateReport>> {
    config.validate()?;
    config
        .omegas()
        .into_iter()
        .map(|omega| {
            let pi = steady_state(config.nodes, omega)?;
            let (empirical, tv_distance) = if config.verify {
                let (walk, start) =
                    figure_walk(config.nodes, omega, config.omega_prime.unwrap_or(0.0))?;
                let p = walk.evolve(&start, 10 * config.nodes)?.node_distribution();
                let tv = total_variation(&p, &pi)?;
                (Some(p), Some(tv))
            } else {
                (None, None)
            };
            Ok(SteadyStateReport {
                omega,
                pi,
                empirical,
                tv_distance,
            })
        })
        .collect()
}

fn csv_io(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(source) => Error::Io {
            path: PathBuf::from("<output>"),
            source,
        },
        other => Error::InvalidArgument(format!("csv output: {other:?}")),
    }
}

fn write_records<W: Write>(
    out: W,
    header: &[&str],
    records: impl IntoIterator<Item = Vec<String>>,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header).map_err(csv_io)?;
    for r in records {
        w.write_record(&r).map_err(csv_io)?;
    }
    w.flush().map_err(|source| Error::Io {
        path: PathBuf::from("<output>"),
        source,
    })
}

pub fn write_curves_csv<W: Write>(out: W, rows: &[CurveRow]) -> Result<()> {
    write_records(
        out,
        &["omega", "n", "p_last"],
        rows.iter()
            .map(|r| vec![r.omega.to_string(), r.n.to_string(), r.p_last.to_string()]),
    )
}

pub fn write_evolution_csv<W: Write>(out: W, rows: &[EvolutionRow]) -> Result<()> {
    write_records(
        out,
        &["omega", "n", "node", "probability"],
        rows.iter().map(|r| {
            vec![
                r.omega.to_string(),
                r.n.to_string(),
                r.node.to_string(),
                r.probability.to_string(),
            ]
        }),
    )
}

pub fn write_classify_one_csv<W: Write>(out: W, report: &ClassifyOneReport) -> Result<()> {
    let i = &report.instance;
    let o = &report.walk.outcome;
    write_records(
        out,
        &[
            "phi",
            "gamma",
            "t",
            "omega_prime",
            "omega",
            "steps",
            "p_last",
            "p_post_accept",
            "p_class_minus",
            "p_class_plus",
            "prediction",
            "classical_prediction",
        ],
        [vec![
            i.phi.to_string(),
            i.gamma.to_string(),
            i.t.to_string(),
            i.omega_prime.to_string(),
            report.omega.to_string(),
            report.steps.to_string(),
            report.walk.terminal_probability.to_string(),
            o.p_post_accept.to_string(),
            o.p_class_minus.to_string(),
            o.p_class_plus.to_string(),
            o.prediction.to_string(),
            report.classical.to_string(),
        ]],
    )
}

pub fn write_results_csv<W: Write>(out: W, table: &ResultsTable) -> Result<()> {
    write_records(
        out,
        &[
            "omega",
            "steps",
            "triples",
            "p_succ",
            "p_err_1_given_2",
            "p_err_2_given_1",
            "p_err_total",
            "tie_rate",
            "mean_p_last",
            "mean_p_post_accept",
        ],
        table.rows.iter().map(|r| {
            vec![
                r.omega.to_string(),
                r.steps.to_string(),
                r.triples.to_string(),
                r.p_succ.to_string(),
                r.p_err_1_given_2.to_string(),
                r.p_err_2_given_1.to_string(),
                r.p_err_total.to_string(),
                r.tie_rate.to_string(),
                r.mean_terminal_probability.to_string(),
                r.mean_p_post_accept.to_string(),
            ]
        }),
    )
}

pub fn write_steady_state_csv<W: Write>(out: W, reports: &[SteadyStateReport]) -> Result<()> {
    let verify = reports.iter().any(|r| r.empirical.is_some());
    let mut header = vec!["omega", "node", "pi"];
    if verify {
        header.extend(["empirical", "tv_distance"]);
    }
    let mut records = Vec::new();
    for r in reports {
        for (node, pi) in r.pi.iter().enumerate() {
            let mut rec = vec![r.omega.to_string(), node.to_string(), pi.to_string()];
            if let (Some(emp), Some(tv)) = (&r.empirical, r.tv_distance) {
                rec.extend([emp[node].to_string(), tv.to_string()]);
            }
            records.push(rec);
        }
    }
    write_records(out, &header, records)
}
