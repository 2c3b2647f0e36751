//! Factor complexity of infinite words and decompositions of their factor
//! languages into products of languages with bounded per-length cardinality.

pub mod cli;
pub mod decompose;
pub mod experiments;
pub mod factors;
pub mod periodicity;
pub mod words;
pub mod wordspec;

pub use factors::{ComplexityProfile, FactorError, FactorIndex};
pub use words::{Alphabet, FiniteWord, Letter, Morphism, WordError, WordSource};
pub use wordspec::{parse_exponent, parse_growth, parse_word_spec};
