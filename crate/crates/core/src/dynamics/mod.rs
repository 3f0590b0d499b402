//! The tiling `τ(m, n) = ω_m ω′_n`, the map `Φ` following its curves, and
//! curve tracing.

mod normal;
mod trace;

pub use normal::Normal;
pub use trace::{closes_within, is_period4, trace, Orbit, TraceError, TraceRecord, TraceResult, TraceStatus};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::seq::{Pair, Sequence, Symbol};

/// Subscript of the tile at `(m, n)`.
pub fn tile_at(omega: &Sequence, omega_prime: &Sequence, m: i64, n: i64) -> Symbol {
    omega.at(m) * omega_prime.at(n)
}

/// A point `(ω, ω′, v)`: a curve sitting in square `(0, 0)` of `τ_{ω,ω′}`,
/// having entered with inward normal `v`.
#[derive(Clone, Debug)]
pub struct State {
    pub omega: Sequence,
    pub omega_prime: Sequence,
    pub v: Normal,
}

impl State {
    pub fn new(omega: Sequence, omega_prime: Sequence, v: Normal) -> State {
        State {
            omega,
            omega_prime,
            v,
        }
    }

    /// The state seen from square `(a, b)` with normal `v`.
    pub fn translated(&self, a: i64, b: i64, v: Normal) -> State {
        State {
            omega: self.omega.shift(a),
            omega_prime: self.omega_prime.shift(b),
            v,
        }
    }

    /// Equality of normals and of both sequences on `−r..=r`.
    pub fn agrees_on(&self, other: &State, r: i64) -> bool {
        self.v == other.v
            && self.omega.agrees_on(&other.omega, -r..=r)
            && self.omega_prime.agrees_on(&other.omega_prime, -r..=r)
    }
}

/// `Φ(ω, ω′, (a,b)) = (σ^{sb}ω, σ^{sa}ω′, s(b,a))` with `s = ω_0 ω′_0`.
pub fn phi(state: &State) -> State {
    let s = tile_at(&state.omega, &state.omega_prime, 0, 0).value();
    let (a, b) = (state.v.x(), state.v.y());
    State {
        omega: state.omega.shift(s * b),
        omega_prime: state.omega_prime.shift(s * a),
        v: state.v.swapped(s),
    }
}

/// `Φ⁻¹(ω, ω′, (a,b)) = (σ^{−a}ω, σ^{−b}ω′, ω_{−a} ω′_{−b} (b,a))`.
pub fn phi_inverse(state: &State) -> State {
    let (a, b) = (state.v.x(), state.v.y());
    let s = tile_at(&state.omega, &state.omega_prime, -a, -b).value();
    State {
        omega: state.omega.shift(-a),
        omega_prime: state.omega_prime.shift(-b),
        v: state.v.swapped(s),
    }
}

/// The `Φ`-invariant `b ω_0 + a ω′_0`.
pub fn invariant_m(state: &State) -> Symbol {
    let (a, b) = (state.v.x(), state.v.y());
    let value = b * state.omega.at(0).value() + a * state.omega_prime.at(0).value();
    Symbol::from_value(value).expect("exactly one normal component is nonzero")
}

/// Class of a single application of `Φ`, numbered 1 to 6:
/// `−+`, `+−`, matching horizontal, then the same three vertical.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub struct StepClass(u8);

impl StepClass {
    pub fn new(id: u8) -> Option<StepClass> {
        (1..=6).contains(&id).then_some(StepClass(id))
    }

    pub fn all() -> impl Iterator<Item = StepClass> {
        (1..=6).map(StepClass)
    }

    pub fn from_pair(pair: Pair, horizontal: bool) -> StepClass {
        let base = match pair {
            Pair::MinusPlus => 1,
            Pair::PlusMinus => 2,
            Pair::Matching => 3,
        };
        StepClass(if horizontal { base } else { base + 3 })
    }

    pub fn id(self) -> u8 {
        self.0
    }

    /// Zero-based position in count vectors.
    pub fn index(self) -> usize {
        self.0 as usize - 1
    }

    pub fn is_horizontal(self) -> bool {
        self.0 <= 3
    }

    pub fn pair(self) -> Pair {
        match (self.0 - 1) % 3 {
            0 => Pair::MinusPlus,
            1 => Pair::PlusMinus,
            _ => Pair::Matching,
        }
    }
}

impl From<StepClass> for u8 {
    fn from(c: StepClass) -> u8 {
        c.0
    }
}

impl TryFrom<u8> for StepClass {
    type Error = String;
    fn try_from(id: u8) -> Result<StepClass, String> {
        StepClass::new(id).ok_or_else(|| format!("step class {id} not in 1..=6"))
    }
}

impl fmt::Display for StepClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Class of the step from square `(a, b)` with normal `v`, together with the
/// outgoing normal.
pub(crate) fn step_at(
    omega: &Sequence,
    omega_prime: &Sequence,
    a: i64,
    b: i64,
    v: Normal,
) -> (StepClass, Normal) {
    let s = (omega.at(a) * omega_prime.at(b)).value();
    let out = v.swapped(s);
    let class = if out.is_horizontal() {
        let m = if out.x() == 1 { a } else { a - 1 };
        StepClass::from_pair(Pair::of(omega.at(m), omega.at(m + 1)), true)
    } else {
        let n = if out.y() == 1 { b } else { b - 1 };
        StepClass::from_pair(Pair::of(omega_prime.at(n), omega_prime.at(n + 1)), false)
    };
    (class, out)
}

pub fn step_class(state: &State) -> StepClass {
    step_at(&state.omega, &state.omega_prime, 0, 0, state.v).0
}

#[cfg(test)]
mod tests;
