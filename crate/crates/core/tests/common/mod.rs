//! Helpers shared by the integration test targets.
#![allow(dead_code)]

use dlcusp_core::{Cyc, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;

/// Fractional bits of the fixed-point oracle (about 77 decimal digits).
pub const FIXED_BITS: u32 = 256;

/// Agreement required between the reduced form and the raw terms.
pub const EMBEDDING_TOLERANCE_DIGITS: u32 = 30;

/// Fixed-point complex number `(re + i·im) / 2^FIXED_BITS`.
#[derive(Clone, Debug, PartialEq)]
pub struct Fixed {
    pub re: BigInt,
    pub im: BigInt,
}

impl Fixed {
    fn zero() -> Self {
        Fixed { re: BigInt::zero(), im: BigInt::zero() }
    }

    fn one() -> Self {
        Fixed { re: BigInt::one() << FIXED_BITS, im: BigInt::zero() }
    }

    fn mul(&self, o: &Fixed) -> Fixed {
        Fixed {
            re: (&self.re * &o.re - &self.im * &o.im) >> FIXED_BITS,
            im: (&self.re * &o.im + &self.im * &o.re) >> FIXED_BITS,
        }
    }

    /// `max(|Δre|, |Δim|) < 10^-digits`.
    pub fn close_to(&self, o: &Fixed, digits: u32) -> bool {
        let bound = (BigInt::one() << FIXED_BITS) / BigInt::from(10u32).pow(digits);
        (&self.re - &o.re).abs() < bound && (&self.im - &o.im).abs() < bound
    }

    pub fn to_f64(&self) -> (f64, f64) {
        let s = 2f64.powi(FIXED_BITS as i32);
        let f = |x: &BigInt| x.to_string().parse::<f64>().unwrap() / s;
        (f(&self.re), f(&self.im))
    }
}

fn scale() -> BigInt {
    BigInt::one() << FIXED_BITS
}

/// `atan(1/x)` in fixed point.
fn atan_inv(x: u64) -> BigInt {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = scale() / &x;
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    sum
}

/// `π` by Machin's formula.
pub fn pi_fixed() -> BigInt {
    atan_inv(5) * 16 - atan_inv(239) * 4
}

/// `ζ_n^e` for `e = 0 … n−1`, from the Taylor series of `exp(2πi/n)` and
/// repeated multiplication.
pub fn roots_of_unity(n: u64) -> Vec<Fixed> {
    let x = pi_fixed() * 2 / BigInt::from(n);
    // exp(ix) = Σ (ix)^k / k!
    let mut z = Fixed::zero();
    let mut term = Fixed::one();
    let mut k = 0u64;
    while !(term.re.is_zero() && term.im.is_zero()) {
        z.re += &term.re;
        z.im += &term.im;
        k += 1;
        // term *= i·x/k
        let k_big = BigInt::from(k);
        let re_scaled: BigInt = (&term.im * &x) >> FIXED_BITS;
        let im_scaled: BigInt = (&term.re * &x) >> FIXED_BITS;
        let re = -(re_scaled / &k_big);
        let im = im_scaled / &k_big;
        term = Fixed { re, im };
    }
    let mut out = Vec::with_capacity(n as usize);
    let mut acc = Fixed::one();
    for _ in 0..n {
        out.push(acc.clone());
        acc = acc.mul(&z);
    }
    out
}

/// `Σ c·ζ_n^e` evaluated term by term.
pub fn evaluate(n: u64, roots: &[Fixed], terms: &[(i64, Rational)]) -> Fixed {
    let mut re = BigInt::zero();
    let mut im = BigInt::zero();
    for (e, c) in terms {
        let z = &roots[e.rem_euclid(n as i64) as usize];
        let (num, den) = (c.numer(), c.denom());
        re += &z.re * &num / &den;
        im += &z.im * &num / &den;
    }
    Fixed { re, im }
}

/// The canonical form of `x` evaluated with roots of order `n`, where the
/// conductor of `x` divides `n`.
pub fn evaluate_cyc(n: u64, roots: &[Fixed], x: &Cyc) -> Fixed {
    let m = x.order();
    assert_eq!(n % m, 0, "conductor {m} does not divide {n}");
    let step = (n / m) as i64;
    let terms: Vec<(i64, Rational)> = x.terms().iter().map(|(e, c)| (*e as i64 * step, c.clone())).collect();
    evaluate(n, roots, &terms)
}

/// A small random rational with denominator dividing 12.
pub fn small_rational(rng: &mut impl Rng) -> Rational {
    let den = [1, 2, 3, 4, 6, 12][rng.gen_range(0..6)];
    let mut num = rng.gen_range(-6..=6);
    if num == 0 {
        num = 1;
    }
    Rational::new(num, den)
}

/// Unreduced random terms of `Q(ζ_n)` with 1 to `max_terms` monomials.
pub fn sparse_terms(rng: &mut impl Rng, n: u64, max_terms: usize) -> Vec<(i64, Rational)> {
    let count = rng.gen_range(1..=max_terms);
    (0..count).map(|_| (rng.gen_range(0..n as i64), small_rational(rng))).collect()
}

pub fn sparse_cyc(rng: &mut impl Rng, n: u64, max_terms: usize) -> Cyc {
    Cyc::from_terms(n, sparse_terms(rng, n, max_terms)).unwrap()
}

/// Terms of `c·Σ_{d<q} ζ_n^{e + d·n/q}`, which sum to zero for a prime `q | n`.
pub fn zero_relation(n: u64, q: u64, e: i64, c: Rational) -> Vec<(i64, Rational)> {
    let step = (n / q) as i64;
    (0..q as i64).map(|d| (e + d * step, c.clone())).collect()
}

