//! Truchet tilings driven by pairs of bi-infinite ±1 sequences.
//!
//! The tile at `(m, n)` is `T_{ω_m ω′_n}`; the curves of the tiling are
//! followed by a map `Φ` on triples `(ω, ω′, v)`. The crate provides the
//! sequences and Markov measures ([`seq`]), the curve dynamics
//! ([`dynamics`]), the collapsing renormalization ([`renorm`]), the exact
//! matrix calculus of the random case ([`cocycle`]), Monte Carlo estimators
//! ([`mc`]) and an SVG renderer ([`render`]).

pub mod cocycle;
pub mod dynamics;
pub mod mc;
pub mod render;
pub mod renorm;
pub mod seq;
