//! Seeded Monte Carlo estimators checked against the closed forms.
//!
//! Sample `i` of a run with seed `s` is built from `derive_seed(s, i)`, and
//! all aggregation is over integer counts, so a report depends only on its
//! parameters and seed, never on thread scheduling.

mod experiments;

pub use experiments::{
    closed_fraction, closed_fraction_report, insertion, p4_joint, renorm_depth, return_times,
    step_measures, step_measures_report, transport, COLLAPSE_HORIZON,
};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::{Normal, State};
use crate::seq::rng::streams;
use crate::seq::{bernoulli_sequence, derive_seed, keyed_u64, sample_markov, MarkovParams, SeqError, Sequence};

/// A proportion or a mean with its standard error.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub label: String,
    pub value: f64,
    pub stderr: f64,
    pub n_samples: u64,
    pub seed: u64,
}

impl Estimate {
    /// `k` successes out of `n`, with the Wilson score half-width at one
    /// standard deviation as the error, which stays positive at 0 and 1.
    pub fn proportion(label: impl Into<String>, k: u64, n: u64, seed: u64) -> Estimate {
        let nf = n.max(1) as f64;
        let p = k as f64 / nf;
        let stderr = (p * (1.0 - p) / nf + 0.25 / (nf * nf)).sqrt() / (1.0 + 1.0 / nf);
        Estimate {
            label: label.into(),
            value: p,
            stderr,
            n_samples: n,
            seed,
        }
    }

    /// Sample mean and its standard error from integer moments.
    pub fn mean(label: impl Into<String>, sum: u64, sum_sq: u128, n: u64, seed: u64) -> Estimate {
        let nf = n as f64;
        let mean = sum as f64 / nf;
        let var = if n > 1 {
            ((sum_sq as f64 - sum as f64 * mean) / (nf - 1.0)).max(0.0)
        } else {
            f64::NAN
        };
        Estimate {
            label: label.into(),
            value: if n == 0 { f64::NAN } else { mean },
            stderr: (var / nf).sqrt(),
            n_samples: n,
            seed,
        }
    }

    pub fn z(&self, analytic: f64) -> f64 {
        let d = self.value - analytic;
        if d == 0.0 {
            0.0
        } else {
            d / self.stderr
        }
    }
}

/// How each driving sequence is drawn.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MeasureSpec {
    /// `μ_p × μ_q`.
    Markov { p: f64, q: f64 },
    /// I.i.d. symbols, `+1` with probability `r` in `ω` and `r_prime` in `ω′`.
    Bernoulli { r: f64, r_prime: f64 },
}

impl MeasureSpec {
    pub fn markov(p: f64, q: f64) -> Result<MeasureSpec, SeqError> {
        MarkovParams::new(p)?;
        MarkovParams::new(q)?;
        Ok(MeasureSpec::Markov { p, q })
    }

    pub fn bernoulli(r: f64, r_prime: f64) -> Result<MeasureSpec, SeqError> {
        bernoulli_sequence(r, 0)?;
        bernoulli_sequence(r_prime, 0)?;
        Ok(MeasureSpec::Bernoulli { r, r_prime })
    }

    /// Means of `ω_0` and `ω′_0`.
    pub fn means(&self) -> (f64, f64) {
        match *self {
            MeasureSpec::Markov { .. } => (0.0, 0.0),
            MeasureSpec::Bernoulli { r, r_prime } => (2.0 * r - 1.0, 2.0 * r_prime - 1.0),
        }
    }

    /// `ω` (or `ω′` when `second`) of [`sample_state`] for the same seed.
    pub fn draw(&self, seed: u64, second: bool) -> Sequence {
        let child = derive_seed(seed, second as u64);
        match *self {
            MeasureSpec::Markov { p, q } => {
                let x = if second { q } else { p };
                sample_markov(MarkovParams::new(x).expect("validated"), child)
            }
            MeasureSpec::Bernoulli { r, r_prime } => {
                let x = if second { r_prime } else { r };
                bernoulli_sequence(x, child).expect("validated")
            }
        }
    }
}

/// `(ω, ω′, v)` with independent components and `v` uniform on the four
/// normals.
pub fn sample_state(spec: &MeasureSpec, seed: u64) -> State {
    State::new(spec.draw(seed, false), spec.draw(seed, true), sample_normal(seed))
}

/// The normal of [`sample_state`] for the same seed.
pub fn sample_normal(seed: u64) -> Normal {
    Normal::ALL[(keyed_u64(seed, streams::NORMAL, 0) >> 62) as usize]
}

/// Runs `f` on every sample seed in parallel and sums the integer tallies
/// it writes.
pub(crate) fn tally<F>(samples: u64, seed: u64, width: usize, f: F) -> Vec<u64>
where
    F: Fn(u64, &mut [u64]) + Sync,
{
    (0..samples)
        .into_par_iter()
        .fold(
            || vec![0u64; width],
            |mut acc, i| {
                f(derive_seed(seed, i), &mut acc);
                acc
            },
        )
        .reduce(
            || vec![0u64; width],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        )
}

/// An exact condition checked on every sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub violations: u64,
    pub checked: u64,
}

/// Estimates, the analytic values they are compared with and the z-scores.
///
/// `analytic[i]` and `z_scores[i]` are `None` for estimates reported without
/// a closed form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub experiment: String,
    pub params: serde_json::Value,
    pub seed: u64,
    pub n: u64,
    /// Tolerance in standard errors: 3 for fewer than six comparisons,
    /// 4 otherwise.
    pub sigma: f64,
    pub estimates: Vec<Estimate>,
    pub analytic: Vec<Option<f64>>,
    pub z_scores: Vec<Option<f64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    pub details: serde_json::Value,
}

impl Report {
    pub fn new(experiment: &str, params: serde_json::Value, seed: u64, n: u64) -> Report {
        Report {
            experiment: experiment.to_string(),
            params,
            seed,
            n,
            sigma: 3.0,
            estimates: Vec::new(),
            analytic: Vec::new(),
            z_scores: Vec::new(),
            checks: Vec::new(),
            details: serde_json::Value::Null,
        }
    }

    pub fn compare(&mut self, est: Estimate, analytic: f64) {
        self.z_scores.push(Some(est.z(analytic)));
        self.analytic.push(Some(analytic));
        self.estimates.push(est);
        self.sigma = if self.comparisons() >= 6 { 4.0 } else { 3.0 };
    }

    pub fn record(&mut self, est: Estimate) {
        self.estimates.push(est);
        self.analytic.push(None);
        self.z_scores.push(None);
    }

    pub fn check(&mut self, name: &str, violations: u64, checked: u64) {
        self.checks.push(Check {
            name: name.to_string(),
            violations,
            checked,
        });
    }

    pub fn comparisons(&self) -> usize {
        self.z_scores.iter().flatten().count()
    }

    pub fn estimate(&self, label: &str) -> Option<&Estimate> {
        self.estimates.iter().find(|e| e.label == label)
    }

    pub fn find_check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Largest `|z|`, 0 without comparisons.
    pub fn worst_z(&self) -> f64 {
        self.z_scores
            .iter()
            .flatten()
            .fold(0.0f64, |m, z| m.max(z.abs()))
    }

    /// Every z-score within `sigma` and no check violated.
    pub fn passed(&self) -> bool {
        self.worst_z() <= self.sigma && self.checks.iter().all(|c| c.violations == 0)
    }
}

#[cfg(test)]
mod tests;
