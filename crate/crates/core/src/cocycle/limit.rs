//! The finite-`k` approximants whose limits decide whether a random tiling
//! has an infinite curve.

use super::{int, mat_vec, matrix_mpq, measure_vector, persistence_of, dot, Scalar, Vector6};

pub type Reduced2<T> = [[T; 2]; 2];

fn mat2_vec<T: Scalar>(m: &Reduced2<T>, v: &[T; 2]) -> [T; 2] {
    [
        m[0][0].clone() * v[0].clone() + m[0][1].clone() * v[1].clone(),
        m[1][0].clone() * v[0].clone() + m[1][1].clone() * v[1].clone(),
    ]
}

fn ones6<T: Scalar>() -> Vector6<T> {
    std::array::from_fn(|_| T::one())
}

/// `ν(O_k)` approximants for `k = 0..=kmax`: the mass of states that survive
/// `k` renormalizations, starting from `μ_{p(m)} × μ_{p(n)}` up to the
/// normalizing factor.
pub fn nu_on_sequence<T: Scalar>(m: &T, n: &T, kmax: usize) -> Vec<T> {
    let mut out = Vec::with_capacity(kmax + 1);
    let mut column = ones6::<T>();
    for k in 0..=kmax {
        let mk = m.clone() + int::<T>(k as i64);
        let nk = n.clone() + int::<T>(k as i64);
        let weights = measure_vector(&persistence_of(&mk), &persistence_of(&nk));
        let scale = m.clone() * n.clone() / (mk.clone() * nk.clone());
        out.push(scale * dot(&weights, &column));
        // prepend M_{p(m+k), q(n+k)} to the product
        column = mat_vec(&matrix_mpq(&persistence_of(&mk), &persistence_of(&nk)), &column);
    }
    out
}

/// `N_n = A + 2/(n(n+2)) B`, the action of the symmetric cocycle on the
/// two-dimensional image of [`super::section`].
pub fn reduced_n<T: Scalar>(n: u64) -> Reduced2<T> {
    let n = n as i64;
    let c = int::<T>(2) / int::<T>(n * (n + 2));
    [
        [T::one() + c.clone(), int::<T>(2) + c.clone()],
        [c.clone(), T::one() + c],
    ]
}

/// `N_k ⋯ N_1 · (1,1)` for `k = 0..=kmax`, built right to left.
fn reduced_columns<T: Scalar>(kmax: usize) -> Vec<[T; 2]> {
    let mut out = Vec::with_capacity(kmax + 1);
    let mut column = [T::one(), T::one()];
    out.push(column.clone());
    for k in 1..=kmax {
        column = mat2_vec(&reduced_n::<T>(k as u64), &column);
        out.push(column.clone());
    }
    out
}

fn left_vector_dot<T: Scalar>(k: usize, column: &[T; 2]) -> T {
    let k1 = int::<T>(k as i64 + 1);
    (column[0].clone() + int::<T>(k as i64) * column[1].clone()) / k1
}

/// `L(1,1)` truncated at `k ≥ 1`:
/// `(1/12) v_k ∏_{n=k..1} ((n+2)/(n+4) A + 2/(n+4) B/n) (1,1)`
/// with `v_k = (1/(k+1), k/(k+1))`.
pub fn l11_partial<T: Scalar>(k: usize) -> T {
    l11_partial_series::<T>(k).pop().expect("k ≥ 1")
}

/// [`l11_partial`] for every `k = 1..=kmax`, sharing the product.
pub fn l11_partial_series<T: Scalar>(kmax: usize) -> Vec<T> {
    let mut column = [T::one(), T::one()];
    let mut out = Vec::with_capacity(kmax);
    let twelfth = T::one() / int::<T>(12);
    for k in 1..=kmax {
        let n = k as i64;
        let a = int::<T>(n + 2) / int::<T>(n + 4);
        let b = int::<T>(2) / int::<T>(n * (n + 4));
        let factor = [
            [a.clone() + b.clone(), int::<T>(2) * a.clone() + b.clone()],
            [b.clone(), a + b],
        ];
        column = mat2_vec(&factor, &column);
        out.push(twelfth.clone() * left_vector_dot(k, &column));
    }
    out
}

/// `1/(1+k)² · v_k N_k ⋯ N_1 (1,1)`.
pub fn simp3_partial<T: Scalar>(k: usize) -> T {
    simp3_partial_series::<T>(k).pop().expect("k ≥ 1")
}

pub fn simp3_partial_series<T: Scalar>(kmax: usize) -> Vec<T> {
    reduced_columns::<T>(kmax)
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, column)| {
            let k1 = int::<T>(k as i64 + 1);
            left_vector_dot(k, column) / (k1.clone() * k1)
        })
        .collect()
}

/// `γ_0 = 2`, `γ_k = Σ_{n<k} 2(n+3)(2k−2n)/(k(k+2)(k+3)) γ_n`.
///
/// Evaluated with the running sums `Σ (n+3)γ_n` and `Σ n(n+3)γ_n`, so the
/// whole sequence costs `O(kmax)` operations and is still exact over the
/// rationals.
pub fn gamma_sequence<T: Scalar>(kmax: usize) -> Vec<T> {
    let mut out = Vec::with_capacity(kmax + 1);
    out.push(int::<T>(2));
    let mut s1 = int::<T>(6);
    let mut s2 = T::zero();
    for k in 1..=kmax {
        let kk = k as i64;
        let g = int::<T>(4) * (int::<T>(kk) * s1.clone() - s2.clone())
            / int::<T>(kk * (kk + 2) * (kk + 3));
        s1 = s1 + int::<T>(kk + 3) * g.clone();
        s2 = s2 + int::<T>(kk * (kk + 3)) * g.clone();
        out.push(g);
    }
    out
}

/// `s_k = 2(k+1)(k+8)/(3(k+2)(k+3))`, the recursion coefficients' sum.
pub fn s_k<T: Scalar>(k: u64) -> T {
    let k = k as i64;
    int::<T>(2 * (k + 1) * (k + 8)) / int::<T>(3 * (k + 2) * (k + 3))
}

/// Lower bound on the fraction of states on bi-infinite curves, from the
/// means of `ω_0` and `ω′_0`.
pub fn drift_lower_bound(pbar: f64, qbar: f64) -> f64 {
    pbar.abs().max(qbar.abs())
}
