use super::*;
use crate::renorm::RenormConfig;

#[test]
fn proportion_error_is_positive_at_the_ends() {
    let zero = Estimate::proportion("x", 0, 100, 1);
    assert_eq!(zero.value, 0.0);
    assert!(zero.stderr > 0.0 && zero.stderr < 0.01);
    let half = Estimate::proportion("x", 5000, 10_000, 1);
    assert!((half.stderr - 0.005).abs() < 1e-5);
    assert_eq!(half.z(0.5), 0.0);
}

#[test]
fn mean_of_integer_moments() {
    // samples 1, 2, 3, 6
    let e = Estimate::mean("m", 12, 50, 4, 0);
    assert_eq!(e.value, 3.0);
    let var: f64 = (4.0 + 1.0 + 0.0 + 9.0) / 3.0;
    assert!((e.stderr - (var / 4.0).sqrt()).abs() < 1e-12);
}

#[test]
fn spec_validation() {
    assert!(MeasureSpec::markov(0.0, 0.5).is_err());
    assert!(MeasureSpec::bernoulli(0.5, 1.2).is_err());
    let b = MeasureSpec::bernoulli(0.8, 0.5).unwrap();
    assert!((b.means().0 - 0.6).abs() < 1e-15);
}

#[test]
fn sampling_is_reproducible() {
    let spec = MeasureSpec::markov(0.4, 0.6).unwrap();
    let a = sample_state(&spec, 77);
    let b = sample_state(&spec, 77);
    assert!(a.agrees_on(&b, 200));
    assert_eq!(a.v, b.v);
    let r1 = transport(0.5, 2000, 9).unwrap();
    let r2 = transport(0.5, 2000, 9).unwrap();
    assert_eq!(
        serde_json::to_string(&r1).unwrap(),
        serde_json::to_string(&r2).unwrap()
    );
}

#[test]
fn normals_are_uniform() {
    let spec = MeasureSpec::markov(0.5, 0.5).unwrap();
    let t = tally(40_000, 3, 4, |s, acc| {
        let v = sample_state(&spec, s).v;
        acc[Normal::ALL.iter().position(|&n| n == v).unwrap()] += 1;
    });
    for k in t {
        let e = Estimate::proportion("v", k, 40_000, 3);
        assert!(e.z(0.25).abs() <= 4.0, "{k}");
    }
}

#[test]
fn report_json_shape() {
    let r = step_measures_report(0.5, 0.5, 1000, 1).unwrap();
    let v: serde_json::Value = serde_json::to_value(&r).unwrap();
    for key in ["experiment", "params", "seed", "n", "estimates", "analytic", "z_scores"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(r.sigma, 4.0);
    let back: Report = serde_json::from_value(v).unwrap();
    assert_eq!(back, r);
}

#[test]
fn constant_sequences_never_close() {
    let spec = MeasureSpec::bernoulli(1.0, 1.0).unwrap();
    assert_eq!(closed_fraction(&spec, 1000, 200, 5).value, 0.0);
}

#[test]
fn more_budget_closes_more() {
    let spec = MeasureSpec::markov(0.5, 0.5).unwrap();
    let r = closed_fraction_report(&spec, &[100, 10_000], 2000, 8);
    assert!(r.estimates[1].value >= r.estimates[0].value);
}

#[test]
fn step_measures_at_high_persistence() {
    let spec = MeasureSpec::markov(0.9, 0.9).unwrap();
    let est = step_measures(&spec, 40_000, 12);
    assert_eq!(est.iter().map(|e| e.value).sum::<f64>(), 1.0);
    assert!(est[2].z(0.45).abs() <= 4.0, "{:?}", est[2]);
}

#[test]
fn transport_small_run() {
    let r = transport(0.5, 20_000, 21).unwrap();
    assert!(r.passed(), "{r:#?}");
    let r = transport(2.0 / 3.0, 20_000, 22).unwrap();
    let fit = r.estimate("collapsed_match").unwrap();
    assert!(fit.z(0.75).abs() <= 3.0, "{fit:?}");
}

#[test]
fn insertion_small_run() {
    let r = insertion(0.5, 20_000, 31).unwrap();
    assert!(r.passed(), "{r:#?}");
}

#[test]
fn return_times_small_run() {
    let r = return_times(0.5, 0.5, 5000, 41, 100_000).unwrap();
    assert!(r.passed(), "{r:#?}");
    assert!(r.find_check("return_mod_4").unwrap().checked > 1000);
}

#[test]
fn p4_joint_small_run() {
    let r = p4_joint(0.5, 0.5, 50_000, 51).unwrap();
    assert!(r.passed(), "{r:#?}");
}

#[test]
fn renorm_depth_small_run() {
    let config = RenormConfig {
        depth: 3,
        budget: 20_000,
        ..RenormConfig::default()
    };
    let r = renorm_depth(0.5, 0.5, &config, 2000, 61).unwrap();
    assert!(r.passed(), "{r:#?}");
}
