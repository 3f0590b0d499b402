use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::collapse::{collapse, collapsibility, is_kept, CollapseWitness, Unbounded};
use super::{Component, RenormError};
use crate::dynamics::{closes_within, is_period4, Normal, Orbit, State, StepClass};

/// `ρ(x)` along with both collapse witnesses.
#[derive(Clone, Debug)]
pub struct Renormalized {
    pub state: State,
    pub omega: CollapseWitness,
    pub omega_prime: CollapseWitness,
}

impl Renormalized {
    /// `4n + 1`, with `n` the number of `−+` pairs the curve must cross
    /// after leaving the origin in direction `out`.
    pub fn predicted_return_time(&self, out: Normal) -> u64 {
        let n = match out {
            Normal::Right => self.omega.count(0),
            Normal::Left => self.omega.count(-1),
            Normal::Up => self.omega_prime.count(0),
            Normal::Down => self.omega_prime.count(-1),
        };
        4 * n + 1
    }
}

pub fn renormalize(state: &State, horizon: u64) -> Result<Renormalized, RenormError> {
    let wrap = |component| move |e: RenormError| e.in_component(component);
    let omega = collapse(&state.omega, horizon).map_err(wrap(Component::Omega))?;
    let omega_prime = collapse(&state.omega_prime, horizon).map_err(wrap(Component::OmegaPrime))?;
    Ok(Renormalized {
        state: State::new(omega.eta().clone(), omega_prime.eta().clone(), state.v),
        omega,
        omega_prime,
    })
}

/// `ρ(ω, ω′, v) = (c(ω), c(ω′), v)`.
pub fn rho(state: &State, horizon: u64) -> Result<State, RenormError> {
    renormalize(state, horizon).map(|r| r.state)
}

/// Both components keep index 0 (membership in `R_1` up to the tail
/// condition).
pub fn zero_collapsible(state: &State) -> bool {
    is_kept(&state.omega, 0) && is_kept(&state.omega_prime, 0)
}

fn check_zero(state: &State) -> Result<(), RenormError> {
    if !is_kept(&state.omega, 0) {
        return Err(RenormError::NotZeroCollapsible.in_component(Component::Omega));
    }
    if !is_kept(&state.omega_prime, 0) {
        return Err(RenormError::NotZeroCollapsible.in_component(Component::OmegaPrime));
    }
    Ok(())
}

/// One return block: the orbit from `x` up to its first return to `R_1`.
#[derive(Clone, Debug)]
pub struct ReturnBlock {
    pub state: State,
    pub return_time: u64,
    /// Classes of `x, Φx, …, Φ^{ret−1}x`.
    pub step_counts: [u64; 6],
    /// Normal after the first step.
    pub outgoing: Normal,
}

pub fn return_block(state: &State, budget: u64) -> Result<ReturnBlock, RenormError> {
    check_zero(state)?;
    let mut orbit = Orbit::new(state);
    let mut counts = [0u64; 6];
    let mut outgoing = None;
    while orbit.steps() < budget {
        counts[orbit.advance().index()] += 1;
        outgoing.get_or_insert(orbit.normal());
        if orbit.is_closed() && orbit.steps() == 4 {
            return Err(RenormError::P4Detected);
        }
        let y = orbit.state();
        if zero_collapsible(&y) {
            return Ok(ReturnBlock {
                state: y,
                return_time: orbit.steps(),
                step_counts: counts,
                outgoing: outgoing.unwrap(),
            });
        }
    }
    Err(RenormError::BudgetExhausted { budget })
}

/// `Φ_R(x)` and the return time.
pub fn first_return(state: &State, budget: u64) -> Result<(State, u64), RenormError> {
    return_block(state, budget).map(|b| (b.state, b.return_time))
}

pub fn collapsed_step_counts(state: &State, budget: u64) -> Result<[u64; 6], RenormError> {
    return_block(state, budget).map(|b| b.step_counts)
}

/// Step counts of a return block of length `4m + 1` whose image under `ρ`
/// has class `class`.
pub fn collapsed_steps_row(class: StepClass, m: u64) -> [u64; 6] {
    let m = m as i64;
    let row: [i64; 6] = match class.id() {
        1 => [m, m - 1, 2, 0, 0, 2 * m],
        2 => [m, m + 1, 0, 0, 0, 2 * m],
        3 => [m, m, 1, 0, 0, 2 * m],
        4 => [0, 0, 2 * m, m, m - 1, 2],
        5 => [0, 0, 2 * m, m, m + 1, 0],
        _ => [0, 0, 2 * m, m, m, 1],
    };
    row.map(|x| {
        assert!(x >= 0, "class {class} needs m >= 1");
        x as u64
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LevelOutcome {
    Renormalized,
    P4,
    NotUnboundedCollapsible,
    HorizonExhausted,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelReport {
    pub level: usize,
    pub outcome: LevelOutcome,
    /// Steps from the level's starting state to the point renormalized.
    pub steps_to_r1: Option<u64>,
    /// Return times to `R_1` along the orbit, as `time → count`.
    pub return_times: BTreeMap<u64, u64>,
    /// Period of the curve at this level, if it closes within the budget.
    pub period: Option<u64>,
    /// Collapsibility horizon that succeeded, or the last one tried.
    pub horizon: u64,
    /// Realized symbols of `ω` and `ω′` after the level's work.
    pub realized_len: [usize; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RenormConfig {
    pub depth: usize,
    /// Initial collapsibility horizon; doubled on failure up to `horizon_cap`.
    pub horizon: u64,
    pub horizon_cap: u64,
    /// Φ-steps allowed when searching for `R_1` and for sampling returns.
    pub budget: u64,
    /// Whether to trace each level for its period.
    pub measure_period: bool,
}

impl Default for RenormConfig {
    fn default() -> Self {
        RenormConfig {
            depth: 5,
            horizon: 1 << 12,
            horizon_cap: 1 << 16,
            budget: 100_000,
            measure_period: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RenormTrace {
    pub levels: Vec<LevelReport>,
}

impl RenormTrace {
    /// Number of successful renormalizations.
    pub fn depth_reached(&self) -> usize {
        self.levels
            .iter()
            .take_while(|l| l.outcome == LevelOutcome::Renormalized)
            .count()
    }

    pub fn final_outcome(&self) -> Option<LevelOutcome> {
        self.levels.last().map(|l| l.outcome)
    }
}

/// [`renormalize`], doubling the horizon while the tails are undecided.
pub fn renormalize_with_doubling(
    state: &State,
    horizon: u64,
    cap: u64,
) -> Result<Renormalized, RenormError> {
    let mut h = horizon.max(2);
    loop {
        match renormalize(state, h) {
            Err(e) if e.is_horizon_exhausted() && h < cap => h = (2 * h).min(cap),
            other => return other,
        }
    }
}

fn unbounded_with_doubling(state: &State, config: &RenormConfig) -> (bool, u64) {
    let mut h = config.horizon.max(2);
    loop {
        let ok = [&state.omega, &state.omega_prime]
            .iter()
            .all(|s| collapsibility(s, h).unbounded == Unbounded::Yes);
        if ok || h >= config.horizon_cap {
            return (ok, h);
        }
        h = (2 * h).min(config.horizon_cap);
    }
}

/// Return times to `R_1` starting from `start ∈ R_1`, until the curve
/// closes or the budget runs out.
fn return_histogram(start: &State, budget: u64) -> BTreeMap<u64, u64> {
    let mut hist = BTreeMap::new();
    let mut orbit = Orbit::new(start);
    let mut last = 0;
    while orbit.steps() < budget {
        orbit.advance();
        if zero_collapsible(&orbit.state()) {
            *hist.entry(orbit.steps() - last).or_insert(0) += 1;
            last = orbit.steps();
            if orbit.is_closed() {
                break;
            }
        }
    }
    hist
}

/// Renormalizes the orbit of `state` up to `config.depth` times. At each
/// level the orbit is searched forward for a point of `R_1`, which is then
/// collapsed.
pub fn repeated_renormalize(state: &State, config: &RenormConfig) -> RenormTrace {
    let mut levels = Vec::new();
    let mut x = state.clone();
    for level in 0..config.depth {
        let period = config
            .measure_period
            .then(|| closes_within(&x, config.budget))
            .flatten();
        let mut report = LevelReport {
            level,
            outcome: LevelOutcome::P4,
            steps_to_r1: None,
            return_times: BTreeMap::new(),
            period,
            horizon: config.horizon,
            realized_len: [0, 0],
        };
        let finish = |mut report: LevelReport, x: &State, outcome| {
            report.outcome = outcome;
            report.realized_len = [x.omega.realized_len(), x.omega_prime.realized_len()];
            report
        };
        if is_period4(&x) {
            levels.push(finish(report, &x, LevelOutcome::P4));
            break;
        }
        let (ok, h) = unbounded_with_doubling(&x, config);
        report.horizon = h;
        if !ok {
            levels.push(finish(report, &x, LevelOutcome::NotUnboundedCollapsible));
            break;
        }
        let mut orbit = Orbit::new(&x);
        let found = loop {
            if zero_collapsible(&orbit.state()) {
                break Some(orbit.state());
            }
            if orbit.steps() >= config.budget {
                break None;
            }
            orbit.advance();
        };
        let Some(y) = found else {
            levels.push(finish(report, &x, LevelOutcome::HorizonExhausted));
            break;
        };
        report.steps_to_r1 = Some(orbit.steps());
        report.return_times = return_histogram(&y, config.budget);
        match renormalize_with_doubling(&y, h, config.horizon_cap) {
            Ok(r) => {
                levels.push(finish(report, &x, LevelOutcome::Renormalized));
                x = r.state;
            }
            Err(_) => {
                levels.push(finish(report, &x, LevelOutcome::NotUnboundedCollapsible));
                break;
            }
        }
    }
    RenormTrace { levels }
}
