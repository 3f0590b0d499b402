use std::fmt;
use std::ops::RangeInclusive;
use std::sync::{Arc, Mutex, MutexGuard};

use super::cylinder::CylinderPattern;
use super::symbol::Symbol;

/// Lazily evaluated bi-infinite ±1 sequence.
///
/// A `Sequence` is a view `n ↦ source(n + offset)` over a shared source.
/// Sources that need memory (random samples, collapsed and inserted
/// sequences) realize a contiguous window containing 0 on demand and keep it;
/// the window is behind a mutex, so views can be shared across threads.
/// Shifting only changes the offset.
#[derive(Clone)]
pub struct Sequence {
    src: Arc<Source>,
    offset: i64,
}

enum Source {
    Constant(Symbol),
    Periodic(Vec<Symbol>),
    Patched {
        lo: i64,
        word: Vec<Symbol>,
        background: Sequence,
    },
    Negated(Sequence),
    Lazy(Mutex<Memo>),
}

/// Produces the symbols of a memoized source, outward from index 0.
///
/// `right` is called for 1, 2, 3, … in order and `left` for −1, −2, … in
/// order, each with the already realized neighbour on the inner side.
pub(crate) trait Generator: Send {
    fn origin(&mut self) -> Symbol;
    fn right(&mut self, index: i64, prev: Symbol) -> Symbol;
    fn left(&mut self, index: i64, next: Symbol) -> Symbol;

    /// Cheap generators grow their window by doubling.
    fn batched(&self) -> bool {
        false
    }

    fn describe(&self) -> String;
}

struct Memo {
    gen: Box<dyn Generator>,
    // nonneg[i] = s_i, neg[j] = s_{-1-j}
    nonneg: Vec<Symbol>,
    neg: Vec<Symbol>,
}

impl Memo {
    fn ensure_origin(&mut self) {
        if self.nonneg.is_empty() {
            let s = self.gen.origin();
            self.nonneg.push(s);
        }
    }

    fn get(&mut self, n: i64) -> Symbol {
        self.ensure_origin();
        if n >= 0 {
            let need = n as usize + 1;
            if self.nonneg.len() < need {
                let target = if self.gen.batched() {
                    need.max(2 * self.nonneg.len()).max(64)
                } else {
                    need
                };
                while self.nonneg.len() < target {
                    let idx = self.nonneg.len() as i64;
                    let prev = self.nonneg[self.nonneg.len() - 1];
                    let s = self.gen.right(idx, prev);
                    self.nonneg.push(s);
                }
            }
            self.nonneg[n as usize]
        } else {
            let need = (-n) as usize;
            if self.neg.len() < need {
                let target = if self.gen.batched() {
                    need.max(2 * self.neg.len()).max(64)
                } else {
                    need
                };
                while self.neg.len() < target {
                    let idx = -(self.neg.len() as i64) - 1;
                    let next = self.neg.last().copied().unwrap_or(self.nonneg[0]);
                    let s = self.gen.left(idx, next);
                    self.neg.push(s);
                }
            }
            self.neg[need - 1]
        }
    }

    fn realized(&self) -> Option<(i64, i64)> {
        if self.nonneg.is_empty() {
            None
        } else {
            Some((-(self.neg.len() as i64), self.nonneg.len() as i64 - 1))
        }
    }
}

fn lock(m: &Mutex<Memo>) -> MutexGuard<'_, Memo> {
    // a panic inside a generator only happens on exhaustion; the memo itself
    // stays consistent, so a poisoned lock is still usable
    m.lock().unwrap_or_else(|e| e.into_inner())
}

impl Sequence {
    fn from_source(src: Source) -> Sequence {
        Sequence {
            src: Arc::new(src),
            offset: 0,
        }
    }

    pub(crate) fn from_generator(gen: Box<dyn Generator>) -> Sequence {
        Sequence::from_source(Source::Lazy(Mutex::new(Memo {
            gen,
            nonneg: Vec::new(),
            neg: Vec::new(),
        })))
    }

    pub fn constant(s: Symbol) -> Sequence {
        Sequence::from_source(Source::Constant(s))
    }

    /// `ω^alt_n = (−1)^n`.
    pub fn alternating() -> Sequence {
        Sequence::periodic(vec![Symbol::Plus, Symbol::Minus])
    }

    /// Periodic sequence with `s_n = word[n mod len]`.
    ///
    /// Panics on an empty word.
    pub fn periodic(word: Vec<Symbol>) -> Sequence {
        assert!(!word.is_empty(), "periodic sequence needs a non-empty word");
        Sequence::from_source(Source::Periodic(word))
    }

    /// The finite pattern written over `background`.
    pub fn patched(pattern: &CylinderPattern, background: Sequence) -> Sequence {
        Sequence::from_source(Source::Patched {
            lo: pattern.lo(),
            word: pattern.word().to_vec(),
            background,
        })
    }

    /// `(−ω)_n = −ω_n`.
    pub fn negated(&self) -> Sequence {
        Sequence::from_source(Source::Negated(self.clone()))
    }

    /// Symbol at index `n`, realizing and memoizing the window as needed.
    pub fn at(&self, n: i64) -> Symbol {
        let i = n + self.offset;
        match &*self.src {
            Source::Constant(s) => *s,
            Source::Periodic(word) => word[i.rem_euclid(word.len() as i64) as usize],
            Source::Patched {
                lo,
                word,
                background,
            } => {
                let j = i - lo;
                if j >= 0 && (j as usize) < word.len() {
                    word[j as usize]
                } else {
                    background.at(i)
                }
            }
            Source::Negated(base) => -base.at(i),
            Source::Lazy(memo) => lock(memo).get(i),
        }
    }

    /// `shift(k).at(n) == at(n + k)`, i.e. `σ^k`.
    pub fn shift(&self, k: i64) -> Sequence {
        Sequence {
            src: Arc::clone(&self.src),
            offset: self.offset + k,
        }
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn window(&self, range: RangeInclusive<i64>) -> Vec<Symbol> {
        range.map(|n| self.at(n)).collect()
    }

    /// Extensional equality on a finite index range.
    pub fn agrees_on(&self, other: &Sequence, range: RangeInclusive<i64>) -> bool {
        range.into_iter().all(|n| self.at(n) == other.at(n))
    }

    /// The realized window of a memoized source, in this view's indices.
    pub fn realized_range(&self) -> Option<(i64, i64)> {
        match &*self.src {
            Source::Lazy(memo) => lock(memo)
                .realized()
                .map(|(lo, hi)| (lo - self.offset, hi - self.offset)),
            _ => None,
        }
    }

    /// Number of realized symbols of the underlying memo (0 for stateless
    /// sources).
    pub fn realized_len(&self) -> usize {
        self.realized_range()
            .map(|(lo, hi)| (hi - lo + 1) as usize)
            .unwrap_or(0)
    }

    /// Renders `lo..=hi` as a literal with the caret before index 0.
    pub fn literal(&self, lo: i64, hi: i64) -> String {
        CylinderPattern::new(lo, self.window(lo..=hi))
            .map(|p| p.to_string())
            .unwrap_or_default()
    }
}

impl fmt::Debug for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &*self.src {
            Source::Constant(s) => format!("constant({s})"),
            Source::Periodic(w) => {
                format!("periodic({})", w.iter().map(|s| s.to_char()).collect::<String>())
            }
            Source::Patched { .. } => "patched".to_string(),
            Source::Negated(_) => "negated".to_string(),
            Source::Lazy(m) => lock(m).gen.describe(),
        };
        write!(f, "Sequence({kind}, offset={}, ", self.offset)?;
        write!(f, "{})", self.literal(-4, 4))
    }
}
