use serde::{Deserialize, Serialize};

use super::rng::{streams, KeyedStream};
use super::sequence::{Generator, Sequence};
use super::symbol::Symbol;
use super::SeqError;

/// Persistence probability of the stationary two-state chain, `0 < p < 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MarkovParams {
    p: f64,
}

impl MarkovParams {
    pub fn new(p: f64) -> Result<Self, SeqError> {
        if p > 0.0 && p < 1.0 {
            Ok(MarkovParams { p })
        } else {
            Err(SeqError::InvalidParameter {
                name: "p",
                value: p,
                expected: "0 < p < 1",
            })
        }
    }

    pub fn p(self) -> f64 {
        self.p
    }
}

/// Sample of `μ_p`: `ω_0` is a fair coin and each step away from the origin
/// repeats the previous symbol with probability `p`.
///
/// The decision between `ω_n` and `ω_{n+1}` (`n ≥ 0`) is word `n` of the
/// forward stream, the one between `ω_{−n}` and `ω_{−n−1}` word `n` of the
/// backward stream.
pub fn sample_markov(params: MarkovParams, seed: u64) -> Sequence {
    Sequence::from_generator(Box::new(MarkovGen {
        p: params.p,
        seed,
        forward: KeyedStream::new(seed, streams::MARKOV_FORWARD, 0),
        backward: KeyedStream::new(seed, streams::MARKOV_BACKWARD, 0),
    }))
}

/// `μ_1` sample: one of the two constant sequences.
pub fn degenerate_persistent(seed: u64) -> Sequence {
    Sequence::constant(origin_coin(seed))
}

/// `μ_0` sample: `ω^alt` or `σω^alt`.
pub fn degenerate_alternating(seed: u64) -> Sequence {
    let alt = Sequence::alternating();
    if origin_coin(seed).is_plus() {
        alt
    } else {
        alt.shift(1)
    }
}

fn origin_coin(seed: u64) -> Symbol {
    Symbol::from_bool(KeyedStream::new(seed, streams::MARKOV_ORIGIN, 0).next_u64() >> 63 == 0)
}

struct MarkovGen {
    p: f64,
    seed: u64,
    forward: KeyedStream,
    backward: KeyedStream,
}

impl Generator for MarkovGen {
    fn origin(&mut self) -> Symbol {
        origin_coin(self.seed)
    }

    fn right(&mut self, _index: i64, prev: Symbol) -> Symbol {
        if self.forward.next_unit() < self.p {
            prev
        } else {
            -prev
        }
    }

    fn left(&mut self, _index: i64, next: Symbol) -> Symbol {
        if self.backward.next_unit() < self.p {
            next
        } else {
            -next
        }
    }

    fn batched(&self) -> bool {
        true
    }

    fn describe(&self) -> String {
        format!("markov(p={}, seed={})", self.p, self.seed)
    }
}

/// I.i.d. symbols, `+1` with probability `r`.
pub fn bernoulli_sequence(r: f64, seed: u64) -> Result<Sequence, SeqError> {
    if !(0.0..=1.0).contains(&r) {
        return Err(SeqError::InvalidParameter {
            name: "r",
            value: r,
            expected: "0 <= r <= 1",
        });
    }
    Ok(Sequence::from_generator(Box::new(BernoulliGen {
        r,
        seed,
        forward: KeyedStream::new(seed, streams::BERNOULLI_FORWARD, 0),
        backward: KeyedStream::new(seed, streams::BERNOULLI_BACKWARD, 0),
    })))
}

struct BernoulliGen {
    r: f64,
    seed: u64,
    forward: KeyedStream,
    backward: KeyedStream,
}

impl BernoulliGen {
    fn draw(r: f64, u: f64) -> Symbol {
        Symbol::from_bool(u < r)
    }
}

impl Generator for BernoulliGen {
    fn origin(&mut self) -> Symbol {
        Self::draw(self.r, self.forward.next_unit())
    }

    fn right(&mut self, _index: i64, _prev: Symbol) -> Symbol {
        Self::draw(self.r, self.forward.next_unit())
    }

    fn left(&mut self, _index: i64, _next: Symbol) -> Symbol {
        Self::draw(self.r, self.backward.next_unit())
    }

    fn batched(&self) -> bool {
        true
    }

    fn describe(&self) -> String {
        format!("bernoulli(r={}, seed={})", self.r, self.seed)
    }
}
