use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use oqwc_core::data::Triple;
use oqwc_core::harness::{self, Command, ExperimentConfig, TripleSource};
use oqwc_core::{Error, ErrorKind};

/// Open quantum walk experiments and the dissipative quantum classifier.
#[derive(Parser, Debug)]
#[command(name = "oqwc", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Occupation of the last node against the number of steps.
    Curves(Common),
    /// Full node distribution every `--stride` steps.
    Evolution(Common),
    /// Classify a single triple and compare with the classical rule.
    ClassifyOne(ClassifyArgs),
    /// Success and error rates over random Iris triples.
    IrisExperiment(Common),
    /// Closed-form stationary distribution of the chain.
    SteadyState(Common),
}

#[derive(Args, Debug)]
struct Common {
    /// Rightward hop probability of the walk.
    #[arg(long, default_value_t = 0.7)]
    omega: f64,
    /// Comma-separated rates; overrides --omega.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    omega_list: Vec<f64>,
    /// Number of walk steps (command-specific default).
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long, default_value_t = 4)]
    nodes: usize,
    #[arg(long, default_value_t = harness::DEFAULT_TRIPLES)]
    triples: usize,
    #[arg(long, default_value_t = harness::DEFAULT_SEED)]
    seed: u64,
    /// Shots per triple; 0 uses exact probabilities.
    #[arg(long, default_value_t = 0)]
    shots: u64,
    /// Emit every n-th step in `evolution`.
    #[arg(long, default_value_t = 2)]
    stride: usize,
    /// Circuit angle for the walk layers (defaults to the worked example).
    #[arg(long, allow_negative_numbers = true)]
    omega_prime: Option<f64>,
    /// Iris CSV (`sepal_length,sepal_width,species`).
    #[arg(long)]
    data: Option<PathBuf>,
    /// Write CSV here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also evolve the walk for 10N steps and report the distance to π.
    #[arg(long)]
    verify: bool,
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    #[command(flatten)]
    common: Common,
    /// Reference point with label -1, as `a,b`.
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true, requires_all = ["x1", "x_test"])]
    x0: Option<[f64; 2]>,
    /// Reference point with label +1, as `a,b`.
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true, requires_all = ["x0", "x_test"])]
    x1: Option<[f64; 2]>,
    /// Point to classify, as `a,b`.
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true, requires_all = ["x0", "x1"])]
    x_test: Option<[f64; 2]>,
    /// 0-based data rows for x0, x1 and the test point, as `i,j,k`.
    #[arg(long, value_parser = parse_indices, conflicts_with_all = ["x0", "x1", "x_test"])]
    indices: Option<Triple>,
}

fn config(command: Command, c: Common) -> ExperimentConfig {
    ExperimentConfig {
        command,
        omega: c.omega,
        omega_list: c.omega_list,
        steps: c.steps,
        nodes: c.nodes,
        triples: c.triples,
        seed: c.seed,
        shots: c.shots,
        stride: c.stride,
        omega_prime: c.omega_prime,
        data_path: c.data,
        output_path: c.out,
        verify: c.verify,
        triple: None,
    }
}

fn parse_point(s: &str) -> Result<[f64; 2], String> {
    let parts: Vec<&str> = s.split(',').collect();
    let [a, b] = parts.as_slice() else {
        return Err(format!("expected two comma-separated numbers, got {s:?}"));
    };
    let num = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("{x:?}: {e}"));
    Ok([num(a)?, num(b)?])
}

fn parse_indices(s: &str) -> Result<Triple, String> {
    let parts = s
        .split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|e| format!("{x:?}: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    let [x0, x1, test] = parts.as_slice() else {
        return Err(format!(
            "expected three comma-separated row numbers, got {s:?}"
        ));
    };
    Ok(Triple {
        x0: *x0,
        x1: *x1,
        test: *test,
    })
}

fn output(config: &ExperimentConfig) -> oqwc_core::Result<Box<dyn Write>> {
    match &config.output_path {
        Some(path) => {
            let file = File::create(path).map_err(|source| Error::Io {
                path: path.clone(),
                source,
            })?;
            Ok(Box::new(BufWriter::new(file)))
        }
        None => Ok(Box::new(io::stdout().lock())),
    }
}

fn run(cli: Cli) -> oqwc_core::Result<()> {
    match cli.command {
        Cmd::Curves(c) => {
            let cfg = config(Command::Curves, c);
            let rows = harness::cmd_curves(&cfg)?;
            harness::write_curves_csv(output(&cfg)?, &rows)
        }
        Cmd::Evolution(c) => {
            let cfg = config(Command::Evolution, c);
            let rows = harness::cmd_evolution(&cfg)?;
            harness::write_evolution_csv(output(&cfg)?, &rows)
        }
        Cmd::IrisExperiment(c) => {
            let cfg = config(Command::IrisExperiment, c);
            let table = harness::cmd_iris_experiment(&cfg)?;
            harness::write_results_csv(output(&cfg)?, &table)
        }
        Cmd::SteadyState(c) => {
            let cfg = config(Command::SteadyState, c);
            let reports = harness::cmd_steady_state(&cfg)?;
            harness::write_steady_state_csv(output(&cfg)?, &reports)
        }
        Cmd::ClassifyOne(a) => {
            let mut cfg = config(Command::ClassifyOne, a.common);
            cfg.triple = match (a.x0, a.x1, a.x_test, a.indices) {
                (Some(x0), Some(x1), Some(x_test), _) => {
                    Some(TripleSource::Vectors { x0, x1, x_test })
                }
                (_, _, _, Some(triple)) => Some(TripleSource::Indices(triple)),
                _ => None,
            };
            let report = harness::cmd_classify_one(&cfg)?;
            println!("{report}");
            if cfg.output_path.is_some() {
                harness::write_classify_one_csv(output(&cfg)?, &report)?;
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e.kind() {
                ErrorKind::Argument => 2,
                ErrorKind::Data => 3,
                ErrorKind::Numerical => 4,
            })
        }
    }
}
