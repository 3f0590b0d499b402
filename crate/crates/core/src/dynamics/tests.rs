use super::*;
use crate::seq::{derive_seed, keyed_u64, sample_markov, CylinderPattern, MarkovParams};
use proptest::prelude::*;
use Symbol::{Minus, Plus};

fn markov_state(p: f64, q: f64, seed: u64) -> State {
    let omega = sample_markov(MarkovParams::new(p).unwrap(), derive_seed(seed, 0));
    let omega_prime = sample_markov(MarkovParams::new(q).unwrap(), derive_seed(seed, 1));
    let v = Normal::ALL[(keyed_u64(seed, 99, 0) % 4) as usize];
    State::new(omega, omega_prime, v)
}

fn constant(s: Symbol) -> Sequence {
    Sequence::constant(s)
}

fn lit(text: &str, background: Symbol) -> Sequence {
    text.parse::<CylinderPattern>().unwrap().over(constant(background))
}

// Geometric curve follower in doubled coordinates: square (m, n) has center
// (2m, 2n), edge midpoints at distance 1 and corners at (±1, ±1).
mod geometry {
    use super::*;

    pub type Pt = (i64, i64);

    fn arc_corners(tile: Symbol) -> [Pt; 2] {
        match tile {
            // arcs centered at top-left and bottom-right
            Plus => [(-1, 1), (1, -1)],
            // arcs centered at bottom-left and top-right
            Minus => [(-1, -1), (1, 1)],
        }
    }

    /// Corner (relative to the center) of the arc through edge point `e`.
    pub fn corner(tile: Symbol, e: Pt) -> Pt {
        *arc_corners(tile)
            .iter()
            .find(|k| (k.0 - e.0).abs() + (k.1 - e.1).abs() == 1)
            .unwrap()
    }

    /// The other end of the arc through edge point `e`.
    pub fn other_end(tile: Symbol, e: Pt) -> Pt {
        let k = corner(tile, e);
        [(1, 0), (-1, 0), (0, 1), (0, -1)]
            .into_iter()
            .find(|q| *q != e && (k.0 - q.0).abs() + (k.1 - q.1).abs() == 1)
            .unwrap()
    }

    /// Next square and inward normal after crossing square `sq` entered with
    /// normal `v`.
    pub fn forward(om: &Sequence, omp: &Sequence, sq: Pt, v: Normal) -> (Pt, Normal) {
        let tile = tile_at(om, omp, sq.0, sq.1);
        let q = other_end(tile, (-v.x(), -v.y()));
        ((sq.0 + q.0, sq.1 + q.1), Normal::from_xy(q.0, q.1).unwrap())
    }

    /// Square and inward normal one step earlier.
    pub fn backward(om: &Sequence, omp: &Sequence, sq: Pt, v: Normal) -> (Pt, Normal) {
        let prev = (sq.0 - v.x(), sq.1 - v.y());
        let tile = tile_at(om, omp, prev.0, prev.1);
        let q = other_end(tile, (v.x(), v.y()));
        (prev, Normal::from_xy(-q.0, -q.1).unwrap())
    }
}

/// Class of the domino `{from, to}` put in standard position.
fn domino_class(om: &Sequence, omp: &Sequence, from: (i64, i64), to: (i64, i64)) -> StepClass {
    if from.1 == to.1 {
        let m = from.0.min(to.0);
        StepClass::from_pair(Pair::of(om.at(m), om.at(m + 1)), true)
    } else {
        let n = from.1.min(to.1);
        StepClass::from_pair(Pair::of(omp.at(n), omp.at(n + 1)), false)
    }
}

/// Dividing-line criterion for four-square loops, read off the arc used in
/// square 0.
fn loop4_by_dividing_lines(state: &State) -> bool {
    let tile = tile_at(&state.omega, &state.omega_prime, 0, 0);
    let k = geometry::corner(tile, (-state.v.x(), -state.v.y()));
    // corner at (m + ½, n + ½)
    let m = (k.0 - 1) / 2;
    let n = (k.1 - 1) / 2;
    let vertical = Pair::of(state.omega.at(m), state.omega.at(m + 1));
    let horizontal = Pair::of(state.omega_prime.at(n), state.omega_prime.at(n + 1));
    matches!(
        (vertical, horizontal),
        (Pair::MinusPlus, Pair::PlusMinus) | (Pair::PlusMinus, Pair::MinusPlus)
    )
}

/// All states whose sequences are arbitrary on −1..=1 and `+` elsewhere.
fn local_states() -> Vec<State> {
    let mut out = Vec::new();
    for bits in 0u32..64 {
        let word = |shift: u32| -> Vec<Symbol> {
            (0..3).map(|j| Symbol::from_bool(bits >> (shift + j) & 1 == 1)).collect()
        };
        let om = CylinderPattern::new(-1, word(0)).unwrap().over(constant(Plus));
        let omp = CylinderPattern::new(-1, word(3)).unwrap().over(constant(Plus));
        for v in Normal::ALL {
            out.push(State::new(om.clone(), omp.clone(), v));
        }
    }
    out
}

#[test]
fn tile_examples() {
    let p = constant(Plus);
    assert_eq!(tile_at(&p, &p, 0, 0), Plus);
    let om = lit("^++−", Plus);
    let omp = lit("^+++++−", Plus);
    assert_eq!(tile_at(&om, &omp, 2, 5), Plus);
    let x = markov_state(0.5, 0.5, 3);
    let (nom, nomp) = (x.omega.negated(), x.omega_prime.negated());
    for m in -10..10 {
        for n in -10..10 {
            assert_eq!(tile_at(&x.omega, &x.omega_prime, m, n), tile_at(&nom, &nomp, m, n));
        }
    }
}

#[test]
fn phi_examples() {
    let x = State::new(lit("^+", Minus), lit("^−", Plus), Normal::Up);
    let y = phi(&x);
    assert_eq!(y.v, Normal::Left);
    assert_eq!(y.omega.offset(), -1);
    assert_eq!(y.omega_prime.offset(), 0);

    let x = State::new(constant(Plus), constant(Plus), Normal::Right);
    let y = phi(&x);
    assert_eq!(y.v, Normal::Up);
    assert_eq!((y.omega.offset(), y.omega_prime.offset()), (0, 1));
}

#[test]
fn phi_inverse_examples() {
    let x = State::new(constant(Plus), constant(Plus), Normal::Right);
    assert_eq!(phi_inverse(&x).v, Normal::Up);

    let x = State::new(Sequence::alternating(), constant(Plus), Normal::Up);
    let y = phi_inverse(&x);
    let (sq, v) = geometry::backward(&x.omega, &x.omega_prime, (0, 0), Normal::Up);
    assert_eq!(y.v, v);
    assert_eq!((y.omega.offset(), y.omega_prime.offset()), sq);
}

#[test]
fn invariant_examples() {
    let x = State::new(constant(Minus), constant(Plus), Normal::Right);
    assert_eq!(invariant_m(&x), Plus);
    let x = State::new(constant(Minus), constant(Plus), Normal::Down);
    assert_eq!(invariant_m(&x), Plus);
}

#[test]
fn step_class_example() {
    let x = State::new(constant(Plus), lit("^+", Minus), Normal::Up);
    assert_eq!(step_class(&x), StepClass::new(3).unwrap());
}

#[test]
fn step_class_matches_domino_exhaustively() {
    for x in local_states() {
        let (next, _) = geometry::forward(&x.omega, &x.omega_prime, (0, 0), x.v);
        assert_eq!(
            step_class(&x),
            domino_class(&x.omega, &x.omega_prime, (0, 0), next),
            "{x:?}"
        );
        let y = phi(&x);
        assert_eq!((y.omega.offset(), y.omega_prime.offset()), next);
    }
}

#[test]
fn period4_matches_dividing_lines_exhaustively() {
    let mut hits = 0;
    for x in local_states() {
        let oracle = loop4_by_dividing_lines(&x);
        assert_eq!(is_period4(&x), oracle, "{x:?}");
        hits += oracle as usize;
    }
    assert!(hits > 0);
}

#[test]
fn period4_local_pictures() {
    // ω_0ω_1 = +−, ω′_0ω′_1 = −+: loop around (½, ½), entered on the arc in
    // square 0 from the right or from the top
    let om = lit("^+−", Plus);
    let omp = lit("^−+", Minus);
    for v in [Normal::Left, Normal::Down] {
        let x = State::new(om.clone(), omp.clone(), v);
        assert!(is_period4(&x));
        let t = trace(&x, 100).unwrap();
        assert_eq!(t.period, Some(4));
        let mut squares = t.visited.clone();
        squares.sort();
        assert_eq!(squares, vec![(0, 0), (0, 1), (1, 0), (1, 1)]);
    }
    // the mirrored signs close as well
    let x = State::new(lit("^−+", Minus), lit("^+−", Plus), Normal::Left);
    assert!(is_period4(&x));
    for v in Normal::ALL {
        assert!(!is_period4(&State::new(constant(Plus), constant(Minus), v)));
    }
}

#[test]
fn constant_sequences_never_close() {
    for v in Normal::ALL {
        let x = State::new(constant(Plus), constant(Plus), v);
        let twice = phi(&phi(&x));
        assert_eq!(twice.v, x.v);
        let t = trace(&x, 1000).unwrap();
        assert_eq!(t.status, TraceStatus::OpenAtBudget);
        assert_eq!(t.steps, 1000);
    }
    assert_eq!(
        trace(&State::new(constant(Plus), constant(Plus), Normal::Up), 0),
        Err(TraceError::ZeroBudget)
    );
}

#[test]
fn geometric_follower_agrees_with_phi() {
    for seed in 0..100 {
        let x = markov_state(0.5, 0.5, seed);
        let t = trace(&x, 200).unwrap();
        let (mut sq, mut v) = ((0, 0), x.v);
        for (k, &expected) in t.visited.iter().enumerate() {
            assert_eq!(sq, expected, "seed {seed} step {k}");
            (sq, v) = geometry::forward(&x.omega, &x.omega_prime, sq, v);
        }
    }
}

#[test]
fn trace_invariants_on_random_states() {
    let mut closed = 0;
    for seed in 0..300 {
        let x = markov_state(0.5, 0.5, seed);
        let t = trace(&x, 2000).unwrap();
        assert_eq!(t.step_counts.iter().sum::<u64>(), t.steps);
        assert_eq!(t.visited.len() as u64, t.steps);
        if t.is_closed() {
            closed += 1;
            assert_eq!(t.final_displacement, (0, 0));
            assert_eq!(t.final_normal, x.v);
            assert_eq!(Some(t.steps), t.period);
            assert_eq!(t.period.unwrap() % 4, 0);
        }
        let r = t.record();
        assert!(r.min_a <= 0 && r.max_a >= 0 && r.min_b <= 0 && r.max_b >= 0);
    }
    assert!(closed > 100);
}

#[test]
fn period_counts_squares_with_multiplicity() {
    for seed in 0..200 {
        let x = markov_state(0.5, 0.5, seed);
        if let Some(n) = closes_within(&x, 400) {
            let t = trace(&x, 400).unwrap();
            assert_eq!(t.period, Some(n));
            assert_eq!(t.visited.len() as u64, n);
        }
    }
}

#[test]
fn orbit_state_matches_iterated_phi() {
    let x = markov_state(0.3, 0.7, 8);
    let mut orbit = Orbit::new(&x);
    let mut y = x.clone();
    for _ in 0..300 {
        assert_eq!(orbit.peek_class(), step_class(&y));
        orbit.advance();
        y = phi(&y);
        assert!(orbit.state().agrees_on(&y, 3));
    }
}

#[test]
fn step_class_serde_and_ids() {
    let c = StepClass::new(5).unwrap();
    assert_eq!(serde_json::to_string(&c).unwrap(), "5");
    assert_eq!(serde_json::from_str::<StepClass>("5").unwrap(), c);
    assert!(serde_json::from_str::<StepClass>("7").is_err());
    assert!(!c.is_horizontal());
    assert_eq!(c.pair(), Pair::PlusMinus);
    assert_eq!(StepClass::all().count(), 6);
}

#[test]
fn step_class_frequencies_match_measure_vector() {
    // ((1−p)/4, (1−p)/4, p/2, (1−q)/4, (1−q)/4, q/2), 4σ each
    let (p, q) = (0.3, 0.8);
    let expected = [(1.0 - p) / 4.0, (1.0 - p) / 4.0, p / 2.0, (1.0 - q) / 4.0, (1.0 - q) / 4.0, q / 2.0];
    let n = 40_000;
    let mut counts = [0usize; 6];
    for seed in 0..n {
        counts[step_class(&markov_state(p, q, 1_000_000 + seed as u64)).index()] += 1;
    }
    for (j, &e) in expected.iter().enumerate() {
        let sd = (e * (1.0 - e) / n as f64).sqrt();
        let f = counts[j] as f64 / n as f64;
        assert!((f - e).abs() <= 4.0 * sd, "class {}: {f} vs {e}", j + 1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn phi_is_invertible(seed in any::<u64>(), p in 0.05f64..0.95, q in 0.05f64..0.95) {
        let x = markov_state(p, q, seed);
        prop_assert!(phi_inverse(&phi(&x)).agrees_on(&x, 8));
        prop_assert!(phi(&phi_inverse(&x)).agrees_on(&x, 8));
    }

    #[test]
    fn invariant_and_parity_along_orbits(seed in any::<u64>(), p in 0.05f64..0.95, q in 0.05f64..0.95) {
        let mut x = markov_state(p, q, seed);
        let m = invariant_m(&x);
        for _ in 0..300 {
            let y = phi(&x);
            prop_assert_eq!(invariant_m(&y), m);
            prop_assert_ne!(y.v.is_horizontal(), x.v.is_horizontal());
            x = y;
        }
    }
}
