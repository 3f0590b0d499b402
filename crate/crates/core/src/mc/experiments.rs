use serde_json::json;

use super::{sample_state, tally, Estimate, MeasureSpec, Report};
use crate::cocycle::{
    drift_lower_bound, expected_insertion, insertion_means, measure_vector, nu_on_sequence,
    p4_class_probabilities, transport_q,
};
use crate::dynamics::{closes_within, is_period4, step_class};
use crate::renorm::{
    collapse, collapsed_steps_row, renormalize, repeated_renormalize, return_block,
    zero_collapsible, RenormConfig, RenormError,
};
use crate::seq::{cylinder_measure_in, sample_markov, CylinderPattern, MarkovParams, Pair, SeqError, Symbol};

/// Horizon for collapsing sampled sequences. At `p ≤ 0.9` a window of 32
/// symbols without a kept index has probability far below `10^-9`.
pub const COLLAPSE_HORIZON: u64 = 64;

/// Longest return block tabulated individually in the histogram.
const HISTOGRAM_BLOCKS: usize = 64;

fn markov(p: f64) -> Result<MarkovParams, SeqError> {
    MarkovParams::new(p)
}

/// Fraction of sampled curves that close within `budget` steps; a lower
/// bound for the probability of closing.
pub fn closed_fraction(spec: &MeasureSpec, budget: u64, samples: u64, seed: u64) -> Estimate {
    let t = tally(samples, seed, 1, |s, acc| {
        if closes_within(&sample_state(spec, s), budget).is_some() {
            acc[0] += 1;
        }
    });
    Estimate::proportion(format!("closed@{budget}"), t[0], samples, seed)
}

/// Closed fractions at several budgets on the same samples, with the upper
/// bound implied by the drift of the measure.
pub fn closed_fraction_report(
    spec: &MeasureSpec,
    budgets: &[u64],
    samples: u64,
    seed: u64,
) -> Report {
    let max = budgets.iter().copied().max().unwrap_or(0);
    let t = tally(samples, seed, budgets.len(), |s, acc| {
        if let Some(period) = closes_within(&sample_state(spec, s), max) {
            for (slot, &b) in acc.iter_mut().zip(budgets) {
                *slot += (period <= b) as u64;
            }
        }
    });
    let mut report = Report::new(
        "closed_fraction",
        json!({ "measure": spec, "budgets": budgets }),
        seed,
        samples,
    );
    for (&b, &k) in budgets.iter().zip(&t) {
        report.record(Estimate::proportion(format!("closed@{b}"), k, samples, seed));
    }
    let (a, b) = spec.means();
    report.details = json!({ "closed_upper_bound": 1.0 - drift_lower_bound(a, b) });
    report
}

fn cylinders_up_to_three() -> Vec<CylinderPattern> {
    (0..3).flat_map(|hi| CylinderPattern::all_on(0, hi)).collect()
}

/// Collapses `ω ~ μ_p` and compares the collapsible fraction with `p` and
/// the cylinder frequencies of `c(ω)` with `μ_q`, `q = 1/(2−p)`.
pub fn transport(p: f64, samples: u64, seed: u64) -> Result<Report, SeqError> {
    let params = markov(p)?;
    let patterns = cylinders_up_to_three();
    // collapsible, undecided, c_0 = c_1, then one slot per pattern
    let t = tally(samples, seed, 3 + patterns.len(), |s, acc| {
        let omega = sample_markov(params, s);
        match collapse(&omega, COLLAPSE_HORIZON) {
            Ok(w) => {
                acc[0] += 1;
                let eta = w.eta();
                acc[2] += (eta.at(0) == eta.at(1)) as u64;
                for (j, pat) in patterns.iter().enumerate() {
                    acc[3 + j] += pat.contains(eta) as u64;
                }
            }
            Err(RenormError::HorizonExhausted { .. }) => acc[1] += 1,
            Err(_) => {}
        }
    });
    let q = transport_q(&p);
    let kept = t[0];
    let mut report = Report::new("transport", json!({ "p": p, "q": q }), seed, samples);
    report.compare(Estimate::proportion("collapsible", kept, samples, seed), p);
    report.compare(Estimate::proportion("collapsed_match", t[2], kept, seed), q);
    for (j, pat) in patterns.iter().enumerate() {
        report.compare(
            Estimate::proportion(format!("c:{pat}"), t[3 + j], kept, seed),
            cylinder_measure_in(&q, pat),
        );
    }
    report.check("undecided_tails", t[1], samples);
    Ok(report)
}

const PAIRS: [(Pair, &str, Symbol, Symbol); 3] = [
    (Pair::MinusPlus, "−+", Symbol::Minus, Symbol::Plus),
    (Pair::PlusMinus, "+−", Symbol::Plus, Symbol::Minus),
    (Pair::Matching, "matching", Symbol::Plus, Symbol::Plus),
];

/// Mean number of `−+` pairs removed between the kept indices `k_0` and
/// `k_1`, split by the collapsed word `c(ω)_0 c(ω)_1`.
pub fn insertion(p: f64, samples: u64, seed: u64) -> Result<Report, SeqError> {
    let params = markov(p)?;
    // per bucket: count, sum, sum of squares
    let t = tally(samples, seed, 9, |s, acc| {
        let omega = sample_markov(params, s);
        if let Ok(w) = collapse(&omega, COLLAPSE_HORIZON) {
            let eta = w.eta();
            let pair = Pair::of(eta.at(0), eta.at(1));
            let b = PAIRS.iter().position(|x| x.0 == pair).unwrap();
            let n = w.count(0);
            acc[3 * b] += 1;
            acc[3 * b + 1] += n;
            acc[3 * b + 2] += n * n;
        }
    });
    let mut report = Report::new("insertion", json!({ "p": p }), seed, samples);
    for (b, &(_, name, s0, s1)) in PAIRS.iter().enumerate() {
        let est = Estimate::mean(
            format!("insertion|{name}"),
            t[3 * b + 1],
            u128::from(t[3 * b + 2]),
            t[3 * b],
            seed,
        );
        report.compare(est, expected_insertion(&p, s0, s1));
    }
    Ok(report)
}

/// Empirical frequencies of the six step classes.
pub fn step_measures(spec: &MeasureSpec, samples: u64, seed: u64) -> [Estimate; 6] {
    let t = tally(samples, seed, 6, |s, acc| {
        acc[step_class(&sample_state(spec, s)).index()] += 1;
    });
    std::array::from_fn(|j| Estimate::proportion(format!("class{}", j + 1), t[j], samples, seed))
}

pub fn step_measures_report(p: f64, q: f64, samples: u64, seed: u64) -> Result<Report, SeqError> {
    let spec = MeasureSpec::markov(p, q)?;
    let mut report = Report::new("step_measures", json!({ "p": p, "q": q }), seed, samples);
    for (est, m) in step_measures(&spec, samples, seed).into_iter().zip(measure_vector(&p, &q)) {
        report.compare(est, m);
    }
    Ok(report)
}

/// Return times to `R_1` from sampled states in `R_1`, bucketed by the class
/// of the renormalized state, with the exact block structure checked on
/// every return.
pub fn return_times(p: f64, q: f64, samples: u64, seed: u64, budget: u64) -> Result<Report, SeqError> {
    let spec = MeasureSpec::markov(p, q)?;
    // 0 in R_1, 1 undecided tails, 2 budget exhausted, 3 four-loops,
    // 4 ret ≢ 1 mod 4, 5 ret ≠ 4n+1 from the counts, 6 step counts ≠ row,
    // then count/sum/sumsq per class, then the histogram of (ret−1)/4
    const BASE: usize = 7;
    const HIST: usize = BASE + 18;
    let t = tally(samples, seed, HIST + HISTOGRAM_BLOCKS + 1, |s, acc| {
        let state = sample_state(&spec, s);
        if !zero_collapsible(&state) {
            return;
        }
        let ren = match renormalize(&state, COLLAPSE_HORIZON) {
            Ok(r) => r,
            Err(_) => {
                acc[1] += 1;
                return;
            }
        };
        let block = match return_block(&state, budget) {
            Ok(b) => b,
            Err(RenormError::P4Detected) => {
                acc[3] += 1;
                return;
            }
            Err(_) => {
                acc[2] += 1;
                return;
            }
        };
        acc[0] += 1;
        let ret = block.return_time;
        let m = (ret - 1) / 4;
        acc[4] += (ret % 4 != 1) as u64;
        acc[5] += (ret != ren.predicted_return_time(block.outgoing)) as u64;
        let class = step_class(&ren.state);
        let row_ok = (m > 0 || class.pair() != Pair::MinusPlus)
            && collapsed_steps_row(class, m) == block.step_counts;
        acc[6] += (!row_ok) as u64;
        let j = class.index();
        acc[BASE + 3 * j] += 1;
        acc[BASE + 3 * j + 1] += ret;
        acc[BASE + 3 * j + 2] += ret * ret;
        acc[HIST + (m as usize).min(HISTOGRAM_BLOCKS)] += 1;
    });
    let mut report = Report::new(
        "return_times",
        json!({ "p": p, "q": q, "budget": budget }),
        seed,
        samples,
    );
    let means = insertion_means(&p, &q);
    for j in 0..6 {
        let est = Estimate::mean(
            format!("return|class{}", j + 1),
            t[BASE + 3 * j + 1],
            u128::from(t[BASE + 3 * j + 2]),
            t[BASE + 3 * j],
            seed,
        );
        report.compare(est, 4.0 * means[j] + 1.0);
    }
    let returns = t[0];
    report.check("return_mod_4", t[4], returns);
    report.check("return_matches_insertion", t[5], returns);
    report.check("step_counts_match_row", t[6], returns);
    let histogram: Vec<_> = (0..=HISTOGRAM_BLOCKS)
        .filter(|&b| t[HIST + b] > 0)
        .map(|b| {
            let time = if b == HISTOGRAM_BLOCKS {
                format!(">={}", 4 * b + 1)
            } else {
                (4 * b + 1).to_string()
            };
            json!({ "return_time": time, "count": t[HIST + b] })
        })
        .collect();
    report.details = json!({
        "in_r1": returns,
        "undecided_tails": t[1],
        "budget_exhausted": t[2],
        "four_loops": t[3],
        "histogram": histogram,
    });
    Ok(report)
}

/// Joint frequencies of (step class, curve closes after four squares).
pub fn p4_joint(p: f64, q: f64, samples: u64, seed: u64) -> Result<Report, SeqError> {
    let spec = MeasureSpec::markov(p, q)?;
    let t = tally(samples, seed, 6, |s, acc| {
        let state = sample_state(&spec, s);
        if is_period4(&state) {
            acc[step_class(&state).index()] += 1;
        }
    });
    let mut report = Report::new("p4_joint", json!({ "p": p, "q": q }), seed, samples);
    for (j, analytic) in p4_class_probabilities(&p, &q).into_iter().enumerate() {
        report.compare(
            Estimate::proportion(format!("class{}&p4", j + 1), t[j], samples, seed),
            analytic,
        );
    }
    report.check("p4_in_matching_class", t[2] + t[5], samples);
    Ok(report)
}

/// Fraction of sampled curves renormalizable at least `k` times, against
/// the `ν(O_k)` approximants at `m = p/(1−p)`, `n = q/(1−q)`.
pub fn renorm_depth(
    p: f64,
    q: f64,
    config: &RenormConfig,
    samples: u64,
    seed: u64,
) -> Result<Report, SeqError> {
    let spec = MeasureSpec::markov(p, q)?;
    let depth = config.depth;
    let t = tally(samples, seed, depth + 1, |s, acc| {
        let reached = repeated_renormalize(&sample_state(&spec, s), config).depth_reached();
        for slot in acc.iter_mut().take(reached.min(depth) + 1) {
            *slot += 1;
        }
    });
    let nu = nu_on_sequence(&(p / (1.0 - p)), &(q / (1.0 - q)), depth);
    let mut report = Report::new(
        "renorm_depth",
        json!({ "p": p, "q": q, "config": config }),
        seed,
        samples,
    );
    for k in 1..=depth {
        report.compare(
            Estimate::proportion(format!("depth>={k}"), t[k], samples, seed),
            nu[k],
        );
    }
    Ok(report)
}
