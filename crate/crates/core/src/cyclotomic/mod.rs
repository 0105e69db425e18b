//! Exact arithmetic in cyclotomic fields.

mod cyc;
mod rational;
mod text;

pub use cyc::{Cyc, CycBuilder};
pub use rational::{ParseRationalError, Rational};

use crate::arith::legendre;

/// Quadratic Gauss sum `τ_p = Σ_{t=1}^{p-1} (t/p) ζ_p^t`, with
/// `τ_p² = (-1)^{(p-1)/2} p`.
pub fn gauss_sum(p: u64) -> Cyc {
    let terms = (1..p).map(|t| (t as i64, Rational::from(legendre(t as i64, p) as i64)));
    Cyc::from_terms(p, terms).expect("positive order")
}

/// Embed a rational as a cyclotomic number.
pub fn embed_rational(q: Rational) -> Cyc {
    Cyc::from_rational(q)
}
