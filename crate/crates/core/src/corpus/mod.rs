//! Instance files, the built-in worked examples, randomized suites and the
//! reports shared by the command-line tool.

pub mod builtin;
pub mod harness;
pub mod instance;
pub mod report;
pub mod series;

use thiserror::Error;

use crate::graded::GradedError;
use crate::lattice::LatticeError;
use crate::monoid::MonoidError;
use crate::values::ValueError;
use crate::verifier::VerifierError;

pub use builtin::{run_example, EXAMPLE_NAMES};
pub use harness::{rand_suite, run_instance, RandSummary, RunOptions};
pub use instance::{Instance, Kind, INSTANCE_FORMAT};
pub use report::Report;
pub use series::{series_order, SeriesOrder, TruncatedSeries};

/// Seed used when neither the instance nor `GRADVAL_SEED` gives one.
pub const DEFAULT_SEED: u64 = 20_231_117;

/// `GRADVAL_SEED` when set and numeric, else [`DEFAULT_SEED`].
pub fn default_seed() -> u64 {
    std::env::var("GRADVAL_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CorpusError {
    /// unreadable, unparsable or invalid input
    #[error("input error: {0}")]
    Input(String),
    /// a computation refused the input (caps, undecidable comparisons)
    #[error("{0}")]
    Compute(String),
    #[error("internal invariant failed: {0}")]
    Invariant(String),
}

impl CorpusError {
    /// 2 for input problems, 3 for internal invariant failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CorpusError::Input(_) | CorpusError::Compute(_) => 2,
            CorpusError::Invariant(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, CorpusError>;

fn lattice_invariant(e: &LatticeError) -> bool {
    matches!(e, LatticeError::Invariant(_))
}

fn value_invariant(e: &ValueError) -> bool {
    matches!(e, ValueError::Lattice(l) if lattice_invariant(l))
}

fn monoid_invariant(e: &MonoidError) -> bool {
    match e {
        MonoidError::Value(v) => value_invariant(v),
        MonoidError::Lattice(l) => lattice_invariant(l),
        _ => false,
    }
}

fn classify(invariant: bool, msg: String) -> CorpusError {
    if invariant {
        CorpusError::Invariant(msg)
    } else {
        CorpusError::Compute(msg)
    }
}

impl From<LatticeError> for CorpusError {
    fn from(e: LatticeError) -> Self {
        classify(lattice_invariant(&e), e.to_string())
    }
}

impl From<ValueError> for CorpusError {
    fn from(e: ValueError) -> Self {
        classify(value_invariant(&e), e.to_string())
    }
}

impl From<MonoidError> for CorpusError {
    fn from(e: MonoidError) -> Self {
        classify(monoid_invariant(&e), e.to_string())
    }
}

impl From<GradedError> for CorpusError {
    fn from(e: GradedError) -> Self {
        let inv = matches!(&e, GradedError::Monoid(m) if monoid_invariant(m));
        classify(inv, e.to_string())
    }
}

impl From<VerifierError> for CorpusError {
    fn from(e: VerifierError) -> Self {
        let inv = match &e {
            VerifierError::Value(v) => value_invariant(v),
            VerifierError::Lattice(l) => lattice_invariant(l),
            VerifierError::Monoid(m) => monoid_invariant(m),
            _ => false,
        };
        classify(inv, e.to_string())
    }
}
