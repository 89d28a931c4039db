//! Open quantum walks on graphs and a dissipative distance-based classifier
//! built on a four-node linear walk.
//!
//! The crate is organized bottom up:
//!
//! - [`quantum`]: dense complex matrices, gates and Kraus channels.
//! - [`oqw`]: block-diagonal walker states and the walk step.
//! - [`chain`]: the linear-chain walk and its classical Markov shadow.
//! - [`classifier`]: classical and quantum distance-based classification.
//! - [`data`]: the two-class Iris data and triple sampling.
//! - [`harness`]: the experiments behind the `oqwc` command line tool.

pub mod chain;
pub mod classifier;
pub mod data;
pub mod error;
pub mod harness;
pub mod oqw;
pub mod quantum;

pub use error::{Error, ErrorKind, Result};
