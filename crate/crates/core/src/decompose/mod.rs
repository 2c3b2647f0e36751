//! Decompositions of factor languages into products `S · T`.

mod counting;
mod cover;
mod greedy;
mod language;
mod split;
mod sturmian;
mod thue_morse;

use thiserror::Error;

use crate::factors::FactorError;
use crate::periodicity::PeriodicityError;
use crate::words::FiniteWord;

pub use counting::{compositions_count, product_complexity_bound};
pub use cover::{covers, verify_cover, CoverReport};
pub use greedy::{greedy_two_sets, refine_decomposition, GreedyOutcome};
pub use language::LeveledLanguage;
pub use split::{
    build_st, cardinality_bound, linear_slope, marker_decomposition, order_window_holds,
    records_to_csv, split_factor, MarkerDecomposition, SplitRecord,
};
pub use sturmian::sturmian_st;
pub use thue_morse::{thue_morse_cut, thue_morse_st, ThueMorseDecomposition};

#[derive(Debug, Error, PartialEq)]
pub enum DecomposeError {
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("not a factor of the window: {0}")]
    NotAFactor(String),
    #[error("no marker of any verified order occurs in {0}")]
    NoMarkerFound(String),
    #[error("no classifiable marker occurrence in {0}")]
    NoClassifiableOccurrence(String),
    #[error("not Sturmian: p({n}) = {p}")]
    NotSturmian { n: usize, p: u64 },
    #[error("complexity not linear on the window: slope {half} up to n_max/2, {full} up to n_max = {n_max}")]
    NotLinear { half: u64, full: u64, n_max: usize },
    #[error("no split of word #{step} ({word:?}) respects the per-length cap")]
    NoFeasibleSplit { word: FiniteWord, step: usize },
    #[error("arithmetic overflow")]
    Overflow,
    #[error("set file line {line}: {reason}")]
    SetFormat { line: usize, reason: String },
    #[error(transparent)]
    Periodicity(#[from] PeriodicityError),
    #[error(transparent)]
    Factor(#[from] FactorError),
}
