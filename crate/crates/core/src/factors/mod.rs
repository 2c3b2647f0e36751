//! Factor indexing of window prefixes: complexity, special factors, occurrences.

mod index;
mod profile;
pub mod suffix_array;

use thiserror::Error;

use crate::words::WordError;

pub use index::{
    stabilization_check, window_profile, FactorEntry, FactorIndex, LetterSet, STABILIZATION_FACTOR,
};
pub use profile::ComplexityProfile;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FactorError {
    #[error("window of {window} letters is too small for n_max = {n_max}")]
    WindowTooSmall { window: usize, n_max: usize },
    #[error("length {n} outside {lo}..={hi}")]
    OutOfRange { n: usize, lo: usize, hi: usize },
    #[error(transparent)]
    Word(#[from] WordError),
}
