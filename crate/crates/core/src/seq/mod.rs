//! Bi-infinite ±1 sequences, the shift, cylinder sets and the Markov measures.

mod cylinder;
mod markov;
pub(crate) mod rng;
mod sequence;
mod symbol;

pub use cylinder::{cylinder_measure, cylinder_measure_in, pair_measure, CylinderPattern};
pub use markov::{
    bernoulli_sequence, degenerate_alternating, degenerate_persistent, sample_markov,
    MarkovParams,
};
pub use rng::{derive_seed, keyed_u64};
pub use sequence::Sequence;
pub(crate) use sequence::Generator;
pub use symbol::{Pair, Symbol};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeqError {
    #[error("pattern with lo={lo} and length {len} does not cover index 0")]
    InvalidPattern { lo: i64, len: usize },
    #[error("bad sequence literal {literal:?}: {reason}")]
    InvalidLiteral { literal: String, reason: String },
    #[error("parameter {name}={value} out of range, expected {expected}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },
}

/// Parses a literal such as `−+^+−−` and writes it over `background`.
pub fn parse_over(literal: &str, background: Sequence) -> Result<Sequence, SeqError> {
    let pat: CylinderPattern = literal.parse()?;
    Ok(pat.over(background))
}
