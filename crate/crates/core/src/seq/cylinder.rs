use std::fmt;
use std::str::FromStr;

use num_traits::Num;

use super::markov::MarkovParams;
use super::sequence::Sequence;
use super::symbol::Symbol;
use super::SeqError;

/// A finite word pinned to indices `lo..=hi` with `lo ≤ 0 ≤ hi`; the set of
/// sequences agreeing with it there is a cylinder set.
///
/// Textual form: symbols over `+`/`−` with a caret immediately before the
/// symbol at index 0, e.g. `−+^+−−` has `lo = −2`, `hi = 2`. ASCII `-` is
/// accepted on input; output always uses `−`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CylinderPattern {
    lo: i64,
    word: Vec<Symbol>,
}

impl CylinderPattern {
    pub fn new(lo: i64, word: Vec<Symbol>) -> Result<Self, SeqError> {
        let hi = lo + word.len() as i64 - 1;
        if lo > 0 || hi < 0 {
            return Err(SeqError::InvalidPattern { lo, len: word.len() });
        }
        Ok(CylinderPattern { lo, word })
    }

    /// Single symbol at index 0.
    pub fn single(s: Symbol) -> Self {
        CylinderPattern { lo: 0, word: vec![s] }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.word.len() as i64 - 1
    }

    pub fn word(&self) -> &[Symbol] {
        &self.word
    }

    pub fn get(&self, i: i64) -> Option<Symbol> {
        let j = i - self.lo;
        (j >= 0).then(|| self.word.get(j as usize).copied()).flatten()
    }

    /// Number of `i` in `lo..hi` with `word(i) = word(i+1)`.
    pub fn matches(&self) -> usize {
        self.word.windows(2).filter(|w| w[0] == w[1]).count()
    }

    pub fn extended_right(&self, s: Symbol) -> Self {
        let mut word = self.word.clone();
        word.push(s);
        CylinderPattern { lo: self.lo, word }
    }

    pub fn extended_left(&self, s: Symbol) -> Self {
        let mut word = Vec::with_capacity(self.word.len() + 1);
        word.push(s);
        word.extend_from_slice(&self.word);
        CylinderPattern {
            lo: self.lo - 1,
            word,
        }
    }

    /// Whether `seq` lies in the cylinder set.
    pub fn contains(&self, seq: &Sequence) -> bool {
        self.word
            .iter()
            .enumerate()
            .all(|(j, &s)| seq.at(self.lo + j as i64) == s)
    }

    /// All `2^len` patterns on `lo..=hi`, in lexicographic order with `+`
    /// first.
    pub fn all_on(lo: i64, hi: i64) -> Vec<CylinderPattern> {
        assert!(lo <= 0 && hi >= 0 && hi - lo < 30);
        let len = (hi - lo + 1) as usize;
        (0u64..1 << len)
            .map(|bits| {
                let word = (0..len)
                    .map(|j| Symbol::from_bool(bits >> (len - 1 - j) & 1 == 0))
                    .collect();
                CylinderPattern { lo, word }
            })
            .collect()
    }

    /// The same pattern over a background, as a full sequence.
    pub fn over(&self, background: Sequence) -> Sequence {
        Sequence::patched(self, background)
    }
}

impl fmt::Display for CylinderPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, s) in self.word.iter().enumerate() {
            if self.lo + j as i64 == 0 {
                write!(f, "^")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for CylinderPattern {
    type Err = SeqError;

    fn from_str(text: &str) -> Result<Self, SeqError> {
        let bad = |reason: &str| SeqError::InvalidLiteral {
            literal: text.to_string(),
            reason: reason.to_string(),
        };
        let mut word = Vec::new();
        let mut zero = None;
        for c in text.chars() {
            if c == '^' {
                if zero.is_some() {
                    return Err(bad("more than one caret"));
                }
                zero = Some(word.len());
            } else {
                word.push(Symbol::from_char(c).ok_or_else(|| bad("unexpected character"))?);
            }
        }
        let zero = zero.ok_or_else(|| bad("missing caret"))?;
        if zero >= word.len() {
            return Err(bad("caret must precede a symbol"));
        }
        CylinderPattern::new(-(zero as i64), word)
    }
}

/// `μ_p(C(f)) = ½ p^k (1−p)^{(hi−lo)−k}`, `k` the number of adjacent
/// matches.
pub fn cylinder_measure(params: MarkovParams, pat: &CylinderPattern) -> f64 {
    cylinder_measure_in(&params.p(), pat)
}

/// [`cylinder_measure`] over any number field; exact for rationals.
pub fn cylinder_measure_in<T: Num + Clone>(p: &T, pat: &CylinderPattern) -> T {
    let k = pat.matches();
    let pairs = pat.word().len() - 1;
    let two = T::one() + T::one();
    let mut out = T::one() / two;
    for _ in 0..k {
        out = out * p.clone();
    }
    let q = T::one() - p.clone();
    for _ in 0..pairs - k {
        out = out * q.clone();
    }
    out
}

/// Convenience: the measure of the two-letter word `ab` at indices 0, 1.
pub fn pair_measure<T: Num + Clone>(p: &T, a: Symbol, b: Symbol) -> T {
    let pat = CylinderPattern { lo: 0, word: vec![a, b] };
    cylinder_measure_in(p, &pat)
}
