//! Counter-based keyed random streams.
//!
//! Every random decision is addressed by `(seed, stream, index)`: the key is
//! the seed, the ChaCha stream id selects the purpose, and the 64-bit word at
//! position `index` is the decision. Reading a stream sequentially yields the
//! same words as seeking to each index, so the order in which a lazy sequence
//! is extended never changes its values.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// Stream ids. Distinct purposes never share a stream.
pub(crate) mod streams {
    pub const MARKOV_FORWARD: u64 = 0;
    pub const MARKOV_BACKWARD: u64 = 1;
    pub const MARKOV_ORIGIN: u64 = 2;
    pub const NORMAL: u64 = 3;
    pub const BERNOULLI_FORWARD: u64 = 4;
    pub const BERNOULLI_BACKWARD: u64 = 5;
    pub const DERIVE: u64 = 16;
}

/// Sequential reader over one keyed stream, starting at `index`.
pub(crate) struct KeyedStream {
    rng: ChaCha8Rng,
}

impl KeyedStream {
    pub fn new(seed: u64, stream: u64, index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        rng.set_word_pos(2 * u128::from(index));
        KeyedStream { rng }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform in [0, 1) with 53 bits of resolution.
    pub fn next_unit(&mut self) -> f64 {
        unit(self.next_u64())
    }
}

pub(crate) fn unit(x: u64) -> f64 {
    (x >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// The word at `(seed, stream, index)`.
pub fn keyed_u64(seed: u64, stream: u64, index: u64) -> u64 {
    KeyedStream::new(seed, stream, index).next_u64()
}

/// Child seed number `index` of `seed`; used to give each Monte Carlo sample
/// its own independent sequences.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    keyed_u64(seed, streams::DERIVE, index)
}
