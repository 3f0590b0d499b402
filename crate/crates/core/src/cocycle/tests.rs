use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;

use super::*;
use crate::seq::Symbol::{Minus, Plus};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn r(n: i64) -> BigRational {
    rat(n, 1)
}

fn swap_blocks<T: Scalar>(m: &Matrix6<T>) -> Matrix6<T> {
    let perm = [3, 4, 5, 0, 1, 2];
    std::array::from_fn(|i| std::array::from_fn(|j| m[perm[i]][perm[j]].clone()))
}

#[test]
fn transport_values() {
    assert_eq!(transport_q(&r(1)), r(1));
    assert_eq!(transport_q(&rat(1, 2)), rat(2, 3));
    for m in 1..40 {
        assert_eq!(
            transport_q(&persistence_of(&r(m))),
            persistence_of(&r(m + 1))
        );
    }
    assert!((transport_q(&0.25f64) - 1.0 / 1.75).abs() < 1e-15);
}

#[test]
fn insertion_values() {
    assert_eq!(expected_insertion(&r(1), Minus, Plus), r(1));
    assert_eq!(expected_insertion(&r(1), Plus, Plus), r(0));
    assert_eq!(expected_insertion(&rat(1, 2), Minus, Plus), rat(4, 3));
    assert_eq!(expected_insertion(&rat(1, 2), Plus, Plus), rat(1, 3));
    assert_eq!(expected_insertion(&rat(1, 2), Plus, Minus), rat(1, 3));
    // at p(m) the excess is 1/(m(m+2))
    for m in 1..30 {
        assert_eq!(insertion_excess(&persistence_of(&r(m))), rat(1, m * (m + 2)));
    }
}

#[test]
fn cocycle_matrix_examples() {
    let zero: Vector6<BigRational> = std::array::from_fn(|_| r(0));
    for row in cocycle_matrix(&zero) {
        assert_eq!(row.iter().fold(r(0), |a, x| a + x), r(1));
    }
    let m = insertion_means(&rat(1, 2), &rat(1, 2));
    assert_eq!(
        m,
        [rat(4, 3), rat(1, 3), rat(1, 3), rat(4, 3), rat(1, 3), rat(1, 3)]
    );
    let c = cocycle_matrix(&m);
    assert_eq!(c[0][0], rat(4, 3));
    assert_eq!(c[0][5], rat(8, 3));
    assert_eq!(c, matrix_mpq(&rat(1, 2), &rat(1, 2)));
}

fn means_from_classes(p: &BigRational, q: &BigRational) -> Vector6<BigRational> {
    [
        expected_insertion(p, Minus, Plus),
        expected_insertion(p, Plus, Minus),
        expected_insertion(p, Plus, Plus),
        expected_insertion(q, Minus, Plus),
        expected_insertion(q, Plus, Minus),
        expected_insertion(q, Minus, Minus),
    ]
}

#[test]
fn symmetric_reduction_exact() {
    for n in 1..=50u64 {
        let p = persistence_of(&r(n as i64));
        let big = matrix_mpq(&p, &p);
        let small = reduced_n::<BigRational>(n);
        for w in [[r(1), r(0)], [r(0), r(1)], [rat(3, 7), rat(-2, 5)]] {
            let lhs = vec_mat(&section(&w), &big);
            let wn = [
                w[0].clone() * small[0][0].clone() + w[1].clone() * small[1][0].clone(),
                w[0].clone() * small[0][1].clone() + w[1].clone() * small[1][1].clone(),
            ];
            assert_eq!(lhs, section(&wn), "n={n}");
        }
    }
}

#[test]
fn reduced_n_values() {
    assert_eq!(
        reduced_n::<BigRational>(1),
        [[rat(5, 3), rat(8, 3)], [rat(2, 3), rat(5, 3)]]
    );
    let far = reduced_n::<f64>(1_000_000);
    assert!((far[0][0] - 1.0).abs() < 1e-11 && (far[0][1] - 2.0).abs() < 1e-11);
    assert!(far[1][0].abs() < 1e-11 && (far[1][1] - 1.0).abs() < 1e-11);
}

#[test]
fn section_and_projection() {
    let w = [rat(2, 5), rat(3, 5)];
    assert_eq!(project(&section(&w)), w);
    // m_{p,p} = s(1−p, p)
    let p = rat(2, 7);
    assert_eq!(measure_vector(&p, &p), section(&[r(1) - p.clone(), p]));
}

#[test]
fn p4_probabilities() {
    let v = p4_class_probabilities(&rat(1, 2), &rat(1, 2));
    assert_eq!(v, [rat(1, 16), rat(1, 16), r(0), rat(1, 16), rat(1, 16), r(0)]);
    let near_one = p4_class_probabilities(&0.999_999f64, &0.999_999f64);
    assert!(near_one.iter().all(|x| *x < 1e-11));
    let v = p4_class_probabilities(&rat(1, 3), &rat(3, 4));
    // (1−p)/2 · (1−q)/2 on every nonzero entry
    assert_eq!(v[0], rat(1, 3) * rat(1, 8));
    assert_eq!(v[1], v[0]);
}

#[test]
fn drift_examples() {
    assert_eq!(drift_lower_bound(0.0, 0.0), 0.0);
    assert!(drift_lower_bound(2.0 * 0.8 - 1.0, 0.0) >= 0.6 - 1e-15);
    assert_eq!(drift_lower_bound(1.0, -0.3), 1.0);
}

#[test]
fn nu_on_basics() {
    let seq = nu_on_sequence(&r(1), &r(1), 40);
    assert_eq!(seq[0], r(1));
    for w in seq.windows(2) {
        assert!(w[1] <= w[0]);
        assert!(w[1] > r(0));
    }
    let seq = nu_on_sequence(&r(3), &rat(5, 2), 30);
    assert_eq!(seq[0], r(1));
    assert!(seq.windows(2).all(|w| w[1] <= w[0]));
}

#[test]
fn nu_on_float_matches_exact() {
    let exact = nu_on_sequence(&r(2), &r(5), 25);
    let float = nu_on_sequence(&2.0f64, &5.0, 25);
    for (e, f) in exact.iter().zip(&float) {
        assert!((e.to_f64().unwrap() - f).abs() < 1e-13);
    }
}

#[test]
fn nu_on_at_one_one_is_a_reduced_product() {
    // independent route: collapse the 6×6 product onto the 2×2 image of s
    let seq = nu_on_sequence(&r(1), &r(1), 30);
    let mut col = [r(1), r(1)];
    for k in 0..=30i64 {
        if k > 0 {
            let c = rat(2, k * (k + 2));
            col = [
                (r(1) + c.clone()) * col[0].clone() + (r(2) + c.clone()) * col[1].clone(),
                c.clone() * col[0].clone() + (r(1) + c) * col[1].clone(),
            ];
        }
        let v = [rat(1, k + 2), rat(k + 1, k + 2)];
        let expect = (v[0].clone() * col[0].clone() + v[1].clone() * col[1].clone())
            / r((k + 1) * (k + 1));
        assert_eq!(seq[k as usize], expect, "k={k}");
    }
}

#[test]
fn l11_and_simp3_values() {
    assert_eq!(l11_partial::<BigRational>(1), rat(1, 6));
    assert_eq!(simp3_partial::<BigRational>(1), rat(5, 6));
    let l = l11_partial_series::<BigRational>(60);
    let s = simp3_partial_series::<BigRational>(60);
    for k in 1..=60i64 {
        let i = (k - 1) as usize;
        assert!(l[i] > r(0));
        assert_eq!(
            l[i].clone() / s[i].clone(),
            rat((k + 1) * (k + 1), (k + 3) * (k + 4)),
            "k={k}"
        );
    }
    // the two normalizations agree asymptotically
    let l = l11_partial::<f64>(20_000);
    let s = simp3_partial::<f64>(20_000);
    assert!((l / s - 1.0).abs() < 5e-4);
}

fn expansion(k: usize) -> f64 {
    // Σ over α ∈ {a,b}^k of ∏ w(n, α_n) · v_k M(α_k) ⋯ M(α_1) (1,1)
    fn go(n: usize, k: usize, weight: f64, col: [f64; 2], acc: &mut f64) {
        if n > k {
            let kf = k as f64;
            *acc += weight * (col[0] + kf * col[1]) / (kf + 1.0);
            return;
        }
        let nf = n as f64;
        let a = [col[0] + 2.0 * col[1], col[1]];
        go(n + 1, k, weight * (nf + 2.0) / (nf + 4.0), a, acc);
        let s = (col[0] + col[1]) / nf;
        go(n + 1, k, weight * 2.0 / (nf + 4.0), [s, s], acc);
    }
    let mut acc = 0.0;
    go(1, k, 1.0, [1.0, 1.0], &mut acc);
    acc / 12.0
}

#[test]
fn l11_matches_word_expansion() {
    let series = l11_partial_series::<f64>(18);
    for k in 1..=18 {
        let brute = expansion(k);
        assert!(
            (brute - series[k - 1]).abs() <= 1e-12 * brute,
            "k={k}: {brute} vs {}",
            series[k - 1]
        );
    }
}

fn gamma_quadratic(kmax: usize) -> Vec<BigRational> {
    let mut g = vec![r(2)];
    for k in 1..=kmax as i64 {
        let mut sum = r(0);
        for (n, gn) in g.iter().enumerate() {
            let n = n as i64;
            sum += rat(2 * (n + 3) * (2 * k - 2 * n), k * (k + 2) * (k + 3)) * gn.clone();
        }
        g.push(sum);
    }
    g
}

#[test]
fn gamma_matches_quadratic_recursion() {
    let fast = gamma_sequence::<BigRational>(80);
    assert_eq!(fast, gamma_quadratic(80));
    assert_eq!(fast[1], r(2));
    assert_eq!(fast[2], r(2));
    assert_eq!(fast[3], rat(88, 45));
    assert_eq!(fast[3], r(2) * s_k::<BigRational>(3));
}

#[test]
fn gamma_bounded_by_twice_s() {
    let g = gamma_sequence::<BigRational>(300);
    for (k, gk) in g.iter().enumerate().skip(1) {
        assert!(*gk <= r(2) * s_k::<BigRational>(k as u64), "k={k}");
    }
    let f = gamma_sequence::<f64>(500);
    assert!((f[500] - g_at_500()).abs() < 1e-12);
}

fn g_at_500() -> f64 {
    gamma_sequence::<BigRational>(500)[500].to_f64().unwrap()
}

#[test]
fn s_k_values() {
    assert_eq!(s_k::<BigRational>(1), r(1));
    assert!((s_k::<f64>(10_000_000) - 2.0 / 3.0).abs() < 1e-6);
    for k in 1..=100i64 {
        let mut sum = r(0);
        for n in 0..k {
            sum += rat(2 * (n + 3) * (2 * k - 2 * n), k * (k + 2) * (k + 3));
        }
        assert_eq!(sum, s_k::<BigRational>(k as u64), "k={k}");
    }
}

fn unit_rational() -> impl Strategy<Value = BigRational> {
    (1i64..200).prop_map(|n| rat(n, 200))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn matrix_decomposition_matches_printed_rows(p in unit_rational(), q in unit_rational()) {
        let m = means_from_classes(&p, &q);
        prop_assert_eq!(&m, &insertion_means(&p, &q));
        prop_assert_eq!(cocycle_matrix(&m), matrix_mpq(&p, &q));
    }

    #[test]
    fn row_sums_and_normalization(p in unit_rational(), q in unit_rational()) {
        let m = insertion_means(&p, &q);
        let c = cocycle_matrix(&m);
        for (row, mj) in c.iter().zip(&m) {
            let sum = row.iter().fold(BigRational::zero(), |a, x| a + x);
            prop_assert_eq!(sum, r(4) * mj.clone() + r(1));
        }
        let total = measure_vector(&p, &q).iter().fold(BigRational::zero(), |a, x| a + x);
        prop_assert!(total.is_one());
    }

    #[test]
    fn equal_parameters_commute_with_swap(p in unit_rational()) {
        let m = matrix_mpq(&p, &p);
        prop_assert_eq!(swap_blocks(&m), m);
    }

    #[test]
    fn swap_exchanges_parameters(p in unit_rational(), q in unit_rational()) {
        prop_assert_eq!(swap_blocks(&matrix_mpq(&p, &q)), matrix_mpq(&q, &p));
    }

    #[test]
    fn nu_on_float_bounded(m in 0.1f64..20.0, n in 0.1f64..20.0) {
        let seq = nu_on_sequence(&m, &n, 60);
        prop_assert!((seq[0] - 1.0).abs() < 1e-12);
        for w in seq.windows(2) {
            prop_assert!(w[1] <= w[0] * (1.0 + 1e-12));
            prop_assert!(w[1] >= 0.0);
        }
    }
}
