use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{step_at, Normal, State, StepClass};
use crate::seq::Sequence;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("trace budget must be at least 1")]
    ZeroBudget,
}

/// Forward orbit of a state, tracked as a displacement in the initial frame.
///
/// After `k` steps the orbit is at `Φ^k(x) = (σ^{a_k}ω, σ^{b_k}ω′, v_k)`;
/// only `(a_k, b_k, v_k)` is stored.
#[derive(Clone, Debug)]
pub struct Orbit {
    omega: Sequence,
    omega_prime: Sequence,
    a: i64,
    b: i64,
    v: Normal,
    v0: Normal,
    steps: u64,
}

impl Orbit {
    pub fn new(state: &State) -> Orbit {
        Orbit {
            omega: state.omega.clone(),
            omega_prime: state.omega_prime.clone(),
            a: 0,
            b: 0,
            v: state.v,
            v0: state.v,
            steps: 0,
        }
    }

    /// Applies `Φ` once and returns the class of that step.
    pub fn advance(&mut self) -> StepClass {
        let (class, out) = step_at(&self.omega, &self.omega_prime, self.a, self.b, self.v);
        self.a += out.x();
        self.b += out.y();
        self.v = out;
        self.steps += 1;
        class
    }

    pub fn peek_class(&self) -> StepClass {
        step_at(&self.omega, &self.omega_prime, self.a, self.b, self.v).0
    }

    pub fn displacement(&self) -> (i64, i64) {
        (self.a, self.b)
    }

    pub fn normal(&self) -> Normal {
        self.v
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    /// Back at the start square with the starting normal.
    pub fn is_closed(&self) -> bool {
        self.steps > 0 && self.a == 0 && self.b == 0 && self.v == self.v0
    }

    pub fn state(&self) -> State {
        State {
            omega: self.omega.shift(self.a),
            omega_prime: self.omega_prime.shift(self.b),
            v: self.v,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TraceStatus {
    Closed,
    OpenAtBudget,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceResult {
    pub status: TraceStatus,
    /// Number of squares on the closed curve, counted with multiplicity.
    pub period: Option<u64>,
    /// `Φ` applications performed.
    pub steps: u64,
    /// Steps per class, indexed by `StepClass::index`.
    pub step_counts: [u64; 6],
    /// `visited[k] = (a_k, b_k)`, the square occupied before step `k`, in
    /// the initial frame.
    pub visited: Vec<(i64, i64)>,
    pub final_displacement: (i64, i64),
    pub final_normal: Normal,
}

/// Flat export of a [`TraceResult`] without the path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub status: TraceStatus,
    pub period: Option<u64>,
    pub steps: u64,
    pub step_counts: [u64; 6],
    pub final_a: i64,
    pub final_b: i64,
    pub min_a: i64,
    pub max_a: i64,
    pub min_b: i64,
    pub max_b: i64,
}

impl TraceResult {
    pub fn is_closed(&self) -> bool {
        self.status == TraceStatus::Closed
    }

    pub fn record(&self) -> TraceRecord {
        let xs = self.visited.iter().map(|p| p.0);
        let ys = self.visited.iter().map(|p| p.1);
        TraceRecord {
            status: self.status,
            period: self.period,
            steps: self.steps,
            step_counts: self.step_counts,
            final_a: self.final_displacement.0,
            final_b: self.final_displacement.1,
            min_a: xs.clone().min().unwrap_or(0),
            max_a: xs.max().unwrap_or(0),
            min_b: ys.clone().min().unwrap_or(0),
            max_b: ys.max().unwrap_or(0),
        }
    }
}

/// Follows the curve through `state` for at most `budget` steps, stopping at
/// the first return to the initial square with the initial normal.
pub fn trace(state: &State, budget: u64) -> Result<TraceResult, TraceError> {
    if budget == 0 {
        return Err(TraceError::ZeroBudget);
    }
    let mut orbit = Orbit::new(state);
    let mut counts = [0u64; 6];
    let mut visited = Vec::new();
    while orbit.steps() < budget {
        visited.push(orbit.displacement());
        counts[orbit.advance().index()] += 1;
        if orbit.is_closed() {
            break;
        }
    }
    let closed = orbit.is_closed();
    Ok(TraceResult {
        status: if closed {
            TraceStatus::Closed
        } else {
            TraceStatus::OpenAtBudget
        },
        period: closed.then_some(orbit.steps()),
        steps: orbit.steps(),
        step_counts: counts,
        visited,
        final_displacement: orbit.displacement(),
        final_normal: orbit.normal(),
    })
}

/// First closure time within `budget`, without recording the path.
pub fn closes_within(state: &State, budget: u64) -> Option<u64> {
    let mut orbit = Orbit::new(state);
    while orbit.steps() < budget {
        orbit.advance();
        if orbit.is_closed() {
            return Some(orbit.steps());
        }
    }
    None
}

/// Whether the curve through `state` closes after exactly four squares.
pub fn is_period4(state: &State) -> bool {
    closes_within(state, 4) == Some(4)
}
