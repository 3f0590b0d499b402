//! Closed-form measures and the renormalization cocycle for Markov-driven
//! tilings.
//!
//! Every formula is generic over the number type: `f64` for general
//! parameters, `BigRational` for exact evaluation at rational ones.

mod limit;

pub use limit::{
    drift_lower_bound, gamma_sequence, l11_partial, l11_partial_series, nu_on_sequence,
    reduced_n, s_k, simp3_partial, simp3_partial_series, Reduced2,
};

use std::fmt::Debug;

use num_traits::{FromPrimitive, Num};

use crate::seq::{pair_measure, Symbol};

/// Number types the calculus runs over.
pub trait Scalar: Num + Clone + FromPrimitive + PartialOrd + Debug {}
impl<T: Num + Clone + FromPrimitive + PartialOrd + Debug> Scalar for T {}

pub type Vector6<T> = [T; 6];
pub type Matrix6<T> = [[T; 6]; 6];

pub(crate) fn int<T: Scalar>(n: i64) -> T {
    T::from_i64(n).expect("integer fits the scalar type")
}

/// `m/(m+1)`: the persistence whose collapse is one step further along.
pub fn persistence_of<T: Scalar>(m: &T) -> T {
    m.clone() / (m.clone() + T::one())
}

/// `1/(2−p)`: the collapse of a `μ_p` sample is `μ_q` distributed.
pub fn transport_q<T: Scalar>(p: &T) -> T {
    T::one() / (int::<T>(2) - p.clone())
}

/// `(1−p)²/(p(2−p))`, the mean number of removed pairs beyond the required
/// one.
pub fn insertion_excess<T: Scalar>(p: &T) -> T {
    let q = T::one() - p.clone();
    q.clone() * q / (p.clone() * (int::<T>(2) - p.clone()))
}

/// Mean number of `−+` pairs removed between `c(ω)_0 = s0` and
/// `c(ω)_1 = s1` for `ω ~ μ_p`.
pub fn expected_insertion<T: Scalar>(p: &T, s0: Symbol, s1: Symbol) -> T {
    let base = insertion_excess(p);
    if s0 == Symbol::Minus && s1 == Symbol::Plus {
        T::one() + base
    } else {
        base
    }
}

/// Probabilities of the six step classes under `μ_p × μ_q × uniform`.
pub fn measure_vector<T: Scalar>(p: &T, q: &T) -> Vector6<T> {
    let four = int::<T>(4);
    let two = int::<T>(2);
    let a = (T::one() - p.clone()) / four.clone();
    let b = (T::one() - q.clone()) / four;
    [
        a.clone(),
        a,
        p.clone() / two.clone(),
        b.clone(),
        b,
        q.clone() / two,
    ]
}

/// Mean insertion count behind each step class of `ρ(x)`.
pub fn insertion_means<T: Scalar>(p: &T, q: &T) -> Vector6<T> {
    let hp = insertion_excess(p);
    let hq = insertion_excess(q);
    [
        T::one() + hp.clone(),
        hp.clone(),
        hp,
        T::one() + hq.clone(),
        hq.clone(),
        hq,
    ]
}

/// Expected step counts over one return block, row `j` for `ρ(x)` of class
/// `j + 1`, given mean insertion counts `m`.
pub fn cocycle_matrix<T: Scalar>(m: &Vector6<T>) -> Matrix6<T> {
    let z = T::zero;
    let one = T::one;
    let two = || int::<T>(2);
    let dbl = |x: &T| two() * x.clone();
    let [m1, m2, m3, m4, m5, m6] = m.clone();
    [
        [m1.clone(), m1.clone() - one(), two(), z(), z(), dbl(&m1)],
        [m2.clone(), m2.clone() + one(), z(), z(), z(), dbl(&m2)],
        [m3.clone(), m3.clone(), one(), z(), z(), dbl(&m3)],
        [z(), z(), dbl(&m4), m4.clone(), m4.clone() - one(), two()],
        [z(), z(), dbl(&m5), m5.clone(), m5.clone() + one(), z()],
        [z(), z(), dbl(&m6), m6.clone(), m6.clone(), one()],
    ]
}

fn int_matrix<T: Scalar>(rows: [[i64; 6]; 6]) -> Matrix6<T> {
    rows.map(|r| r.map(int::<T>))
}

/// `M_{p,q}` as the sum of a constant part and the two insertion-excess
/// parts.
pub fn matrix_mpq<T: Scalar>(p: &T, q: &T) -> Matrix6<T> {
    let base = int_matrix::<T>([
        [1, 0, 2, 0, 0, 2],
        [0, 1, 0, 0, 0, 0],
        [0, 0, 1, 0, 0, 0],
        [0, 0, 2, 1, 0, 2],
        [0, 0, 0, 0, 1, 0],
        [0, 0, 0, 0, 0, 1],
    ]);
    let horizontal = int_matrix::<T>([
        [1, 1, 0, 0, 0, 2],
        [1, 1, 0, 0, 0, 2],
        [1, 1, 0, 0, 0, 2],
        [0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0],
    ]);
    let vertical = int_matrix::<T>([
        [0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0],
        [0, 0, 2, 1, 1, 0],
        [0, 0, 2, 1, 1, 0],
        [0, 0, 2, 1, 1, 0],
    ]);
    let hp = insertion_excess(p);
    let hq = insertion_excess(q);
    let mut out = base;
    for i in 0..6 {
        for j in 0..6 {
            out[i][j] = out[i][j].clone()
                + hp.clone() * horizontal[i][j].clone()
                + hq.clone() * vertical[i][j].clone();
        }
    }
    out
}

pub fn mat_vec<T: Scalar>(m: &Matrix6<T>, v: &Vector6<T>) -> Vector6<T> {
    std::array::from_fn(|i| dot(&m[i], v))
}

/// Row vector times matrix.
pub fn vec_mat<T: Scalar>(v: &Vector6<T>, m: &Matrix6<T>) -> Vector6<T> {
    std::array::from_fn(|j| {
        (0..6).fold(T::zero(), |acc, i| acc + v[i].clone() * m[i][j].clone())
    })
}

pub fn dot<T: Scalar>(a: &Vector6<T>, b: &Vector6<T>) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// Joint probabilities of step class `i` and a four-square loop.
pub fn p4_class_probabilities<T: Scalar>(p: &T, q: &T) -> Vector6<T> {
    use Symbol::{Minus, Plus};
    let mp = pair_measure(p, Minus, Plus) * pair_measure(q, Plus, Minus);
    let pm = pair_measure(p, Plus, Minus) * pair_measure(q, Minus, Plus);
    [mp.clone(), pm.clone(), T::zero(), pm, mp, T::zero()]
}

/// `π(a,b,c,d,e,f) = (a+b+d+e, c+f)`.
pub fn project<T: Scalar>(v: &Vector6<T>) -> [T; 2] {
    let [a, b, c, d, e, f] = v.clone();
    [a + b + d + e, c + f]
}

/// `s(a,b) = (a/4, a/4, b/2, a/4, a/4, b/2)`, a section of [`project`].
pub fn section<T: Scalar>(w: &[T; 2]) -> Vector6<T> {
    let a = w[0].clone() / int::<T>(4);
    let b = w[1].clone() / int::<T>(2);
    [a.clone(), a.clone(), b.clone(), a.clone(), a, b]
}

#[cfg(test)]
mod tests;
