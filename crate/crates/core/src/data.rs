//! Loading, standardizing and sampling the two-class Iris data.
//!
//! Input is CSV with a header whose last column is `species` and whose other
//! columns are numeric features, e.g. `sepal_length,sepal_width,species`.
//! Only `setosa` (label −1) and `versicolor` (label +1) are accepted.

use std::fs::File;
use std::io::Read;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classifier::{Label, LabeledDataset, LabeledPoint};
use crate::error::{Error, Result};

/// File name of the bundled dataset.
pub const IRIS_FILE_NAME: &str = "iris_sepal_2class.csv";
/// Setosa and versicolor sepal length/width, 100 rows in the standard order.
pub const BUNDLED_IRIS_CSV: &str = include_str!("../data/iris_sepal_2class.csv");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Species {
    Setosa,
    Versicolor,
}

impl Species {
    pub fn parse(name: &str) -> Option<Self> {
        match name.trim() {
            "setosa" => Some(Species::Setosa),
            "versicolor" => Some(Species::Versicolor),
            _ => None,
        }
    }

    pub fn label(self) -> Label {
        match self {
            Species::Setosa => Label::Minus,
            Species::Versicolor => Label::Plus,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Species::Setosa => "setosa",
            Species::Versicolor => "versicolor",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RawRow {
    pub features: Vec<f64>,
    pub species: Species,
}

/// Rows in file order; row `i` has original index `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct RawDataset {
    rows: Vec<RawRow>,
}

impl RawDataset {
    pub fn new(rows: Vec<RawRow>) -> Result<Self> {
        let first = rows.first().ok_or(Error::EmptyDataset)?;
        let arity = first.features.len();
        if arity == 0 {
            return Err(Error::InvalidArgument(
                "rows need at least one feature".into(),
            ));
        }
        if let Some(r) = rows.iter().find(|r| r.features.len() != arity) {
            return Err(Error::LengthMismatch {
                left: arity,
                right: r.features.len(),
            });
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &[RawRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

pub fn load_csv(path: &Path) -> Result<RawDataset> {
    let io_err = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut text = String::new();
    File::open(path)
        .map_err(io_err)?
        .read_to_string(&mut text)
        .map_err(io_err)?;
    parse_csv(&text)
}

pub fn load_bundled() -> RawDataset {
    parse_csv(BUNDLED_IRIS_CSV).expect("bundled dataset is well formed")
}

pub fn parse_csv(text: &str) -> Result<RawDataset> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(text.as_bytes());
    let headers = reader.headers().map_err(|e| csv_error(1, e))?.clone();
    if headers.is_empty() || (headers.len() == 1 && headers[0].trim().is_empty()) {
        return Err(Error::EmptyDataset);
    }
    if headers.len() < 2 || headers[headers.len() - 1].trim() != "species" {
        return Err(Error::MalformedRow {
            line: 1,
            message: "header must list feature columns followed by `species`".into(),
        });
    }
    let arity = headers.len() - 1;

    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            csv_error(line, e)
        })?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != arity + 1 {
            return Err(Error::MalformedRow {
                line,
                message: format!("expected {} fields, found {}", arity + 1, record.len()),
            });
        }
        let features = record
            .iter()
            .take(arity)
            .map(|f| {
                f.trim()
                    .parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| Error::MalformedRow {
                        line,
                        message: format!("{f:?} is not a finite number"),
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        let name = &record[arity];
        let species = Species::parse(name).ok_or_else(|| Error::UnknownSpecies {
            line,
            name: name.to_string(),
        })?;
        rows.push(RawRow { features, species });
    }
    RawDataset::new(rows)
}

fn csv_error(line: u64, e: csv::Error) -> Error {
    Error::MalformedRow {
        line,
        message: e.to_string(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PreparedPoint {
    /// Unit-norm feature vector.
    pub vector: Vec<f64>,
    pub label: Label,
    /// Row index in the raw dataset, 0-based.
    pub original_index: usize,
}

/// Z-scored (population standard deviation) then row-normalized data.
#[derive(Debug, Clone, PartialEq)]
pub struct PreparedDataset {
    points: Vec<PreparedPoint>,
    means: Vec<f64>,
    std_devs: Vec<f64>,
}

impl PreparedDataset {
    pub fn points(&self) -> &[PreparedPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Column means used for standardization.
    pub fn means(&self) -> &[f64] {
        &self.means
    }

    /// Population standard deviations used for standardization.
    pub fn std_devs(&self) -> &[f64] {
        &self.std_devs
    }

    pub fn vector_2d(&self, index: usize) -> Result<[f64; 2]> {
        let v = &self.points[index].vector;
        match v.as_slice() {
            [a, b] => Ok([*a, *b]),
            _ => Err(Error::LengthMismatch {
                left: 2,
                right: v.len(),
            }),
        }
    }

    pub fn to_labeled(&self) -> Result<LabeledDataset> {
        LabeledDataset::new(
            self.points
                .iter()
                .map(|p| LabeledPoint {
                    vector: p.vector.clone(),
                    label: p.label,
                })
                .collect(),
        )
    }
}

/// Standardizes each feature column over all rows (mean 0, population std 1),
/// then scales every row to unit Euclidean norm.
pub fn standardize_normalize(raw: &RawDataset) -> Result<PreparedDataset> {
    let standardized = standardize(raw)?;
    let points = standardized
        .rows
        .into_iter()
        .enumerate()
        .map(|(i, z)| {
            let norm = z.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm < 1e-12 {
                return Err(Error::ZeroNorm { row: i });
            }
            Ok(PreparedPoint {
                vector: z.iter().map(|x| x / norm).collect(),
                label: raw.rows[i].species.label(),
                original_index: i,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PreparedDataset {
        points,
        means: standardized.means,
        std_devs: standardized.std_devs,
    })
}

pub(crate) struct Standardized {
    pub rows: Vec<Vec<f64>>,
    pub means: Vec<f64>,
    pub std_devs: Vec<f64>,
}

pub(crate) fn standardize(raw: &RawDataset) -> Result<Standardized> {
    let n = raw.len();
    if n < 2 {
        return Err(Error::InsufficientData(format!(
            "standardization needs at least 2 rows, got {n}"
        )));
    }
    let arity = raw.rows[0].features.len();
    let mut means = vec![0.0; arity];
    let mut std_devs = vec![0.0; arity];
    for c in 0..arity {
        let mean = raw.rows.iter().map(|r| r.features[c]).sum::<f64>() / n as f64;
        let var = raw
            .rows
            .iter()
            .map(|r| (r.features[c] - mean).powi(2))
            .sum::<f64>()
            / n as f64;
        let sd = var.sqrt();
        if sd < 1e-12 * mean.abs().max(1.0) {
            return Err(Error::ZeroVariance { column: c });
        }
        means[c] = mean;
        std_devs[c] = sd;
    }
    let rows = raw
        .rows
        .iter()
        .map(|r| {
            (0..arity)
                .map(|c| (r.features[c] - means[c]) / std_devs[c])
                .collect()
        })
        .collect();
    Ok(Standardized {
        rows,
        means,
        std_devs,
    })
}

/// Indices into a [`PreparedDataset`]: a label −1 reference, a label +1
/// reference and a distinct test point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Triple {
    pub x0: usize,
    pub x1: usize,
    pub test: usize,
}

/// Draws `count` triples uniformly: `x0` among label −1 points, `x1` among
/// label +1 points and the test point among the remaining points.
/// Deterministic for a given seed.
pub fn sample_triples(prepared: &PreparedDataset, count: usize, seed: u64) -> Result<Vec<Triple>> {
    if count == 0 {
        return Err(Error::InvalidArgument(
            "triple count must be at least 1".into(),
        ));
    }
    let n = prepared.len();
    if n < 3 {
        return Err(Error::InsufficientData(format!(
            "need at least 3 points, got {n}"
        )));
    }
    let by_label = |label| -> Vec<usize> {
        prepared
            .points()
            .iter()
            .enumerate()
            .filter(|(_, p)| p.label == label)
            .map(|(i, _)| i)
            .collect()
    };
    let (minus, plus) = (by_label(Label::Minus), by_label(Label::Plus));
    if minus.is_empty() || plus.is_empty() {
        return Err(Error::InsufficientData(
            "both classes must be present".into(),
        ));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let triples = (0..count)
        .map(|_| {
            let x0 = minus[rng.random_range(0..minus.len())];
            let x1 = plus[rng.random_range(0..plus.len())];
            let (lo, hi) = (x0.min(x1), x0.max(x1));
            let mut test = rng.random_range(0..n - 2);
            if test >= lo {
                test += 1;
            }
            if test >= hi {
                test += 1;
            }
            Triple { x0, x1, test }
        })
        .collect();
    Ok(triples)
}
