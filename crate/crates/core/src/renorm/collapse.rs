use std::fmt;
use std::ops::RangeInclusive;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use super::RenormError;
use crate::seq::{Generator, Sequence, Symbol};

/// Longest run of removed positions scanned before a lazy collapse gives up.
pub const SCAN_LIMIT: i64 = 1 << 22;

/// Whether `k ∈ K(ω)`: position `k` is not part of a `−+` pair.
pub fn is_kept(omega: &Sequence, k: i64) -> bool {
    let s = omega.at(k);
    match s {
        Symbol::Minus => omega.at(k + 1) != Symbol::Plus,
        Symbol::Plus => omega.at(k - 1) != Symbol::Minus,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

/// What a finite scan says about `K(ω)` being unbounded in both directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Unbounded {
    /// Kept indices found beyond `±horizon/2` on both sides.
    Yes,
    /// None found on this side; the other side has one.
    NoWitness(Side),
    /// None found on either side within the horizon.
    Unknown(u64),
}

impl fmt::Display for Unbounded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Unbounded::Yes => write!(f, "yes"),
            Unbounded::NoWitness(side) => write!(f, "no witness on the {side:?} side"),
            Unbounded::Unknown(h) => write!(f, "unknown within horizon {h}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Collapsibility {
    pub zero: bool,
    pub unbounded: Unbounded,
}

impl Collapsibility {
    pub fn is_collapsible(&self) -> bool {
        self.zero && self.unbounded == Unbounded::Yes
    }
}

/// Scans `−horizon..=horizon` for kept indices at distance at least
/// `horizon/2` from the origin.
pub fn collapsibility(omega: &Sequence, horizon: u64) -> Collapsibility {
    let h = horizon.max(2) as i64;
    let right = (h / 2..=h).any(|k| is_kept(omega, k));
    let left = (h / 2..=h).any(|k| is_kept(omega, -k));
    let unbounded = match (left, right) {
        (true, true) => Unbounded::Yes,
        (true, false) => Unbounded::NoWitness(Side::Right),
        (false, true) => Unbounded::NoWitness(Side::Left),
        (false, false) => Unbounded::Unknown(h as u64),
    };
    Collapsibility {
        zero: is_kept(omega, 0),
        unbounded,
    }
}

/// The order preserving enumeration `i ↦ k_i` of `K(ω)` with `k_0 = 0`,
/// realized outward on demand.
struct KeptIndices {
    base: Sequence,
    memo: Mutex<KeptMemo>,
}

struct KeptMemo {
    // right[i] = k_i for i ≥ 0, left[j] = k_{−1−j}
    right: Vec<i64>,
    left: Vec<i64>,
}

impl KeptIndices {
    fn new(base: Sequence) -> KeptIndices {
        KeptIndices {
            base,
            memo: Mutex::new(KeptMemo {
                right: vec![0],
                left: Vec::new(),
            }),
        }
    }

    fn next_kept(&self, from: i64, step: i64) -> i64 {
        let mut k = from + step;
        while !is_kept(&self.base, k) {
            k += step;
            if (k - from).abs() > SCAN_LIMIT {
                panic!(
                    "resource exhaustion: no kept index within {SCAN_LIMIT} positions of {from}; \
                     the sequence is not unbounded-collapsible on this side"
                );
            }
        }
        k
    }

    fn get(&self, i: i64) -> i64 {
        let mut memo = self.memo.lock().unwrap_or_else(|e| e.into_inner());
        if i >= 0 {
            while memo.right.len() <= i as usize {
                let last = *memo.right.last().unwrap();
                let k = self.next_kept(last, 1);
                memo.right.push(k);
            }
            memo.right[i as usize]
        } else {
            let j = (-i - 1) as usize;
            while memo.left.len() <= j {
                let last = memo.left.last().copied().unwrap_or(0);
                let k = self.next_kept(last, -1);
                memo.left.push(k);
            }
            memo.left[j]
        }
    }

    /// Collapsed indices whose kept index has been realized.
    fn realized(&self) -> RangeInclusive<i64> {
        let memo = self.memo.lock().unwrap_or_else(|e| e.into_inner());
        -(memo.left.len() as i64)..=memo.right.len() as i64 - 1
    }
}

struct CollapsedGen {
    kept: Arc<KeptIndices>,
}

impl Generator for CollapsedGen {
    fn origin(&mut self) -> Symbol {
        self.kept.base.at(0)
    }

    fn right(&mut self, index: i64, _prev: Symbol) -> Symbol {
        self.kept.base.at(self.kept.get(index))
    }

    fn left(&mut self, index: i64, _next: Symbol) -> Symbol {
        self.kept.base.at(self.kept.get(index))
    }

    fn describe(&self) -> String {
        format!("collapse of {:?}", self.kept.base)
    }
}

/// `c(ω)` together with the data to undo it.
#[derive(Clone)]
pub struct CollapseWitness {
    eta: Sequence,
    kept: Arc<KeptIndices>,
}

impl fmt::Debug for CollapseWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CollapseWitness")
            .field("eta", &self.eta)
            .field("window", &self.window())
            .finish()
    }
}

impl CollapseWitness {
    pub fn eta(&self) -> &Sequence {
        &self.eta
    }

    pub fn base(&self) -> &Sequence {
        &self.kept.base
    }

    /// `k_i`, realizing further kept indices if needed.
    pub fn kept_index(&self, i: i64) -> i64 {
        self.kept.get(i)
    }

    /// `n_i = (k_{i+1} − k_i − 1)/2`, the number of `−+` pairs removed
    /// between `k_i` and `k_{i+1}`.
    pub fn count(&self, i: i64) -> u64 {
        ((self.kept.get(i + 1) - self.kept.get(i) - 1) / 2) as u64
    }

    /// Collapsed indices whose `k_i` is realized so far.
    pub fn window(&self) -> RangeInclusive<i64> {
        self.kept.realized()
    }

    /// `(i, k_i)` over the realized window.
    pub fn kept_indices(&self) -> Vec<(i64, i64)> {
        self.window().map(|i| (i, self.kept.get(i))).collect()
    }

    /// The indices of `ω` covered by the realized window.
    pub fn base_window(&self) -> RangeInclusive<i64> {
        let w = self.window();
        self.kept.get(*w.start())..=self.kept.get(*w.end())
    }

    /// Explicit counts on the realized window, minimal outside it.
    pub fn rule(&self) -> InsertionRule {
        let w = self.window();
        let counts = (*w.start()..*w.end()).map(|i| self.count(i)).collect();
        InsertionRule::explicit(*w.start(), counts)
    }
}

/// `c(ω)`, provided `0 ∈ K(ω)` and kept indices are found beyond
/// `±horizon/2`. All kept indices in `−horizon..=horizon` are realized.
pub fn collapse(omega: &Sequence, horizon: u64) -> Result<CollapseWitness, RenormError> {
    let status = collapsibility(omega, horizon);
    if !status.zero {
        return Err(RenormError::NotZeroCollapsible);
    }
    if status.unbounded != Unbounded::Yes {
        return Err(RenormError::HorizonExhausted {
            horizon,
            status: status.unbounded,
        });
    }
    let kept = Arc::new(KeptIndices::new(omega.clone()));
    let h = horizon as i64;
    let mut i = 0;
    while kept.get(i) < h / 2 {
        i += 1;
    }
    let mut i = -1;
    while kept.get(i) > -h / 2 {
        i -= 1;
    }
    let eta = Sequence::from_generator(Box::new(CollapsedGen {
        kept: Arc::clone(&kept),
    }));
    Ok(CollapseWitness { eta, kept })
}

/// Counts `n_i` with `f(i) = (−+)^{n_i}`: explicit on `lo..lo+len`,
/// elsewhere the least admissible value (1 before a collapsed `−+`, else 0).
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct InsertionRule {
    lo: i64,
    counts: Vec<u64>,
}

impl InsertionRule {
    pub fn minimal() -> InsertionRule {
        InsertionRule::default()
    }

    pub fn explicit(lo: i64, counts: Vec<u64>) -> InsertionRule {
        InsertionRule { lo, counts }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn explicit_count(&self, i: i64) -> Option<u64> {
        let j = i - self.lo;
        (j >= 0).then(|| self.counts.get(j as usize).copied()).flatten()
    }

    pub fn count(&self, eta: &Sequence, i: i64) -> u64 {
        self.explicit_count(i)
            .unwrap_or_else(|| needs_insertion(eta, i) as u64)
    }

    /// Fails at the first explicit `n_i = 0` sitting before a collapsed `−+`.
    pub fn validate(&self, eta: &Sequence) -> Result<(), RenormError> {
        for (j, &n) in self.counts.iter().enumerate() {
            let i = self.lo + j as i64;
            if n == 0 && needs_insertion(eta, i) {
                return Err(RenormError::InvariantViolation { index: i });
            }
        }
        Ok(())
    }
}

fn needs_insertion(eta: &Sequence, i: i64) -> bool {
    eta.at(i) == Symbol::Minus && eta.at(i + 1) == Symbol::Plus
}

struct InsertGen {
    eta: Sequence,
    rule: InsertionRule,
    // current block index and its start m_i, one pair per direction
    right: (i64, i64),
    left: (i64, i64),
}

impl InsertGen {
    fn symbol(&self, block: (i64, i64), k: i64) -> Symbol {
        let (i, m) = block;
        if k == m {
            self.eta.at(i)
        } else if (k - m) % 2 == 1 {
            Symbol::Minus
        } else {
            Symbol::Plus
        }
    }
}

impl Generator for InsertGen {
    fn origin(&mut self) -> Symbol {
        self.eta.at(0)
    }

    fn right(&mut self, k: i64, _prev: Symbol) -> Symbol {
        loop {
            let (i, m) = self.right;
            let n = self.rule.count(&self.eta, i) as i64;
            if k <= m + 2 * n {
                break;
            }
            self.right = (i + 1, m + 1 + 2 * n);
        }
        self.symbol(self.right, k)
    }

    fn left(&mut self, k: i64, _next: Symbol) -> Symbol {
        while k < self.left.1 {
            let (i, m) = self.left;
            let n = self.rule.count(&self.eta, i - 1) as i64;
            self.left = (i - 1, m - 1 - 2 * n);
        }
        self.symbol(self.left, k)
    }

    fn describe(&self) -> String {
        format!("insertion into {:?}", self.eta)
    }
}

/// `I_f(η)`: `η_i` placed at `m_i` with `m_0 = 0`, `m_{i+1} − m_i = 1 + 2n_i`,
/// and `(−+)^{n_i}` filling the gap.
pub fn insert(eta: &Sequence, rule: &InsertionRule) -> Result<Sequence, RenormError> {
    rule.validate(eta)?;
    Ok(Sequence::from_generator(Box::new(InsertGen {
        eta: eta.clone(),
        rule: rule.clone(),
        right: (0, 0),
        left: (0, 0),
    })))
}
