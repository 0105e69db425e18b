//! Elements of cyclotomic fields in canonical Zumbroich form.
//!
//! An element of `Q(ζ_N)` is stored as a sparse list of `(exponent, coefficient)`
//! pairs over the Zumbroich basis of `Q(ζ_N)`, where `N` is always the
//! conductor of the element (the smallest `N`, never `≡ 2 mod 4`, whose field
//! contains it). With both the basis and the order fixed, equality is a
//! structural comparison of the term lists.
//!
//! The basis is the tensor product over the prime powers `q^ν ∥ N`. Writing
//! `e_q = e · (N/q^ν)^{-1} mod q^ν` for the `q`-component of an exponent `e`,
//! `ζ_N^e` is excluded from the basis when
//!
//! * `q = 2` and `e_q ≥ 2^{ν-1}`, or
//! * `q` odd and `e_q` lies in the window `[-(q^{ν-1}-1)/2, (q^{ν-1}-1)/2] mod q^ν`.
//!
//! Excluded monomials are rewritten with `ζ^{e+N/2} = -ζ^e` and
//! `Σ_{d<q} ζ^{e + dN/q} = 0`; the rewritten terms keep every other prime
//! component unchanged, so one pass per prime suffices.

use std::collections::HashMap;
use std::fmt;
use std::hash::{BuildHasherDefault, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use super::rational::Rational;
use crate::arith::{factorize, lcm, mod_inv};
use crate::error::{Error, Result};

/// Multiplicative hasher for exponent keys.
#[derive(Default)]
pub(crate) struct ExpHasher(u64);

impl Hasher for ExpHasher {
    fn finish(&self) -> u64 {
        self.0
    }
    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 = (self.0.rotate_left(8) ^ b as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
        }
    }
    fn write_u64(&mut self, n: u64) {
        self.0 = (n ^ 0x5851_F42D_4C95_7F2D).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    }
}

pub(crate) type ExpMap = HashMap<u64, Rational, BuildHasherDefault<ExpHasher>>;

fn accumulate(map: &mut ExpMap, e: u64, c: &Rational) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(&e) {
        Some(v) => *v += c,
        None => {
            map.insert(e, c.clone());
        }
    }
}

fn accumulate_neg(map: &mut ExpMap, e: u64, c: &Rational) {
    accumulate(map, e, &-c);
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyc {
    order: u64,
    terms: Vec<(u64, Rational)>,
}

impl Cyc {
    pub fn zero() -> Self {
        Cyc {
            order: 1,
            terms: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::ONE)
    }

    pub fn from_rational(q: Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Cyc {
            order: 1,
            terms: vec![(0, q)],
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n))
    }

    /// `ζ_n^k`.
    pub fn root_of_unity(n: u64, k: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroOrder);
        }
        let e = k.rem_euclid(n as i64) as u64;
        let mut map = ExpMap::default();
        map.insert(e, Rational::ONE);
        Ok(canonicalize(n, map))
    }

    /// Build from arbitrary (not necessarily reduced) terms of `Q(ζ_n)`.
    pub fn from_terms<I>(n: u64, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        if n == 0 {
            return Err(Error::ZeroOrder);
        }
        let mut map = ExpMap::default();
        for (k, c) in terms {
            accumulate(&mut map, k.rem_euclid(n as i64) as u64, &c);
        }
        Ok(canonicalize(n, map))
    }

    /// Conductor of the element; 1 for rationals.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Canonical terms, sorted by exponent.
    pub fn terms(&self) -> &[(u64, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match (self.order, self.terms.as_slice()) {
            (1, []) => Some(Rational::ZERO),
            (1, [(0, c)]) => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.order == 1
    }

    /// Complex conjugation `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        if self.order <= 2 {
            return self.clone();
        }
        let n = self.order;
        let mut map = ExpMap::default();
        for (e, c) in &self.terms {
            accumulate(&mut map, (n - e) % n, c);
        }
        canonicalize(n, map)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Cyc {
            order: self.order,
            terms: self.terms.iter().map(|(e, c)| (*e, c * s)).collect(),
        }
    }

    /// Image under the Galois automorphism `ζ ↦ ζ^k`, `gcd(k, N) = 1`.
    pub fn galois(&self, k: i64) -> Result<Self> {
        let n = self.order;
        let k = k.rem_euclid(n as i64) as u64;
        if n > 1 && num_integer::gcd(k, n) != 1 {
            return Err(Error::Precondition(format!(
                "galois exponent {k} not coprime to {n}"
            )));
        }
        let mut map = ExpMap::default();
        for (e, c) in &self.terms {
            accumulate(&mut map, ((*e as u128 * k as u128) % n as u128) as u64, c);
        }
        Ok(canonicalize(n, map))
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Cyc::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    /// Floating-point embedding with `ζ_N = exp(2πi/N)`; for diagnostics only.
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.order as f64;
        self.terms.iter().fold((0.0, 0.0), |(re, im), (e, c)| {
            let angle = std::f64::consts::TAU * *e as f64 / n;
            let x = c.to_f64();
            (re + x * angle.cos(), im + x * angle.sin())
        })
    }
}

impl Default for Cyc {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<Rational> for Cyc {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

impl From<i64> for Cyc {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

/// Accumulates unreduced monomials and reduces once at the end.
///
/// Monomials are bucketed by the order of the field they were produced in, so
/// sums of elements from unrelated small fields are reduced in those fields
/// and only their (usually rational) results are combined.
#[derive(Default)]
pub struct CycBuilder {
    buckets: HashMap<u64, ExpMap, BuildHasherDefault<ExpHasher>>,
}

impl CycBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    fn bucket(&mut self, order: u64) -> &mut ExpMap {
        self.buckets.entry(order).or_default()
    }

    /// Add `c · ζ_order^e`.
    pub fn add_monomial(&mut self, order: u64, e: u64, c: &Rational) {
        accumulate(self.bucket(order), e % order, c);
    }

    pub fn add(&mut self, x: &Cyc) {
        if x.is_zero() {
            return;
        }
        let b = self.bucket(x.order);
        for (e, c) in &x.terms {
            accumulate(b, *e, c);
        }
    }

    pub fn add_scaled(&mut self, x: &Cyc, s: &Rational) {
        if x.is_zero() || s.is_zero() {
            return;
        }
        let b = self.bucket(x.order);
        for (e, c) in &x.terms {
            accumulate(b, *e, &(c * s));
        }
    }

    /// Add `s · x · y`, or `s · x · conj(y)` when `conj_y` is set.
    pub fn add_product(&mut self, x: &Cyc, y: &Cyc, conj_y: bool, s: &Rational) {
        if x.is_zero() || y.is_zero() || s.is_zero() {
            return;
        }
        let l = lcm(x.order, y.order);
        let sx = l / x.order;
        let sy = l / y.order;
        let unit = s.is_one();
        let b = self.bucket(l);
        for (ex, cx) in &x.terms {
            let cxs = if unit { cx.clone() } else { cx * s };
            for (ey, cy) in &y.terms {
                let ey = ey * sy;
                let ey = if conj_y { (l - ey) % l } else { ey };
                let e = (ex * sx + ey) % l;
                accumulate(b, e, &(&cxs * cy));
            }
        }
    }

    pub fn finish(self) -> Cyc {
        let mut parts: Vec<Cyc> = self
            .buckets
            .into_iter()
            .map(|(order, map)| canonicalize(order, map))
            .filter(|c| !c.is_zero())
            .collect();
        match parts.len() {
            0 => Cyc::zero(),
            1 => parts.pop().unwrap(),
            _ => {
                // Combine pieces smallest-order first.
                parts.sort_by_key(|c| c.order);
                let mut acc = parts[0].clone();
                for p in &parts[1..] {
                    acc = add_lifted(&acc, p);
                }
                acc
            }
        }
    }
}

fn add_lifted(x: &Cyc, y: &Cyc) -> Cyc {
    if x.is_zero() {
        return y.clone();
    }
    if y.is_zero() {
        return x.clone();
    }
    let l = lcm(x.order, y.order);
    let mut map = ExpMap::default();
    for (e, c) in &x.terms {
        accumulate(&mut map, e * (l / x.order), c);
    }
    for (e, c) in &y.terms {
        accumulate(&mut map, e * (l / y.order), c);
    }
    canonicalize(l, map)
}

/// Reduce terms of `Q(ζ_n)` to the canonical (conductor, Zumbroich) form.
pub(crate) fn canonicalize(n: u64, mut map: ExpMap) -> Cyc {
    map.retain(|_, c| !c.is_zero());
    if map.is_empty() {
        return Cyc::zero();
    }
    let mut order = n;
    for (q, nu) in factorize(n) {
        map = reduce_prime(order, q, nu, map);
        if map.is_empty() {
            return Cyc::zero();
        }
    }
    // Descend to the conductor.
    'outer: loop {
        for (q, nu) in factorize(order) {
            if let Some(smaller) = shrink_prime(order, q, nu, &map) {
                map = smaller;
                order /= q;
                continue 'outer;
            }
        }
        break;
    }
    let mut terms: Vec<(u64, Rational)> = map.into_iter().collect();
    terms.sort_unstable_by_key(|(e, _)| *e);
    Cyc { order, terms }
}

fn prime_component(e: u64, qn: u64, inv_cof: u64) -> u64 {
    ((e % qn) as u128 * inv_cof as u128 % qn as u128) as u64
}

fn reduce_prime(n: u64, q: u64, nu: u32, map: ExpMap) -> ExpMap {
    let qn = q.pow(nu);
    let inv = mod_inv((n / qn) % qn, qn).expect("cofactor is a unit");
    let mut out = ExpMap::default();
    out.reserve(map.len());
    if q == 2 {
        let half = qn / 2;
        let shift = n / 2;
        for (e, c) in map {
            if prime_component(e, qn, inv) >= half {
                accumulate_neg(&mut out, (e + shift) % n, &c);
            } else {
                accumulate(&mut out, e, &c);
            }
        }
    } else {
        let low = qn / q;
        let h = (low - 1) / 2;
        let step = n / q;
        for (e, c) in map {
            let t = (prime_component(e, qn, inv) + h) % qn;
            if t < low {
                for d in 1..q {
                    accumulate_neg(&mut out, (e + d * step) % n, &c);
                }
            } else {
                accumulate(&mut out, e, &c);
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// If the reduced element lies in `Q(ζ_{n/q})`, return its terms there.
fn shrink_prime(n: u64, q: u64, nu: u32, map: &ExpMap) -> Option<ExpMap> {
    if q == 2 || nu >= 2 {
        if map.keys().all(|e| e % q == 0) {
            return Some(map.iter().map(|(e, c)| (e / q, c.clone())).collect());
        }
        return None;
    }
    // q odd, q ∥ n: every orbit must carry all q - 1 basis exponents with equal
    // coefficients.
    let m = n / q;
    let inv = mod_inv(m % q, q).expect("cofactor is a unit");
    if map.len() % (q as usize - 1) != 0 {
        return None;
    }
    let mut groups: HashMap<u64, (usize, Rational), BuildHasherDefault<ExpHasher>> =
        HashMap::default();
    for (e, c) in map {
        let eq = prime_component(*e, q, inv);
        let g = ((e + n - (eq * m) % n) % n) / q;
        match groups.get_mut(&g) {
            Some((count, coeff)) => {
                if coeff != c {
                    return None;
                }
                *count += 1;
            }
            None => {
                groups.insert(g, (1, c.clone()));
            }
        }
    }
    if groups.values().any(|(count, _)| *count != q as usize - 1) {
        return None;
    }
    Some(groups.into_iter().map(|(g, (_, c))| (g, -c)).collect())
}

impl<'a> Add<&'a Cyc> for &'a Cyc {
    type Output = Cyc;
    fn add(self, rhs: &'a Cyc) -> Cyc {
        add_lifted(self, rhs)
    }
}

impl<'a> Sub<&'a Cyc> for &'a Cyc {
    type Output = Cyc;
    fn sub(self, rhs: &'a Cyc) -> Cyc {
        add_lifted(self, &-rhs)
    }
}

impl<'a> Mul<&'a Cyc> for &'a Cyc {
    type Output = Cyc;
    fn mul(self, rhs: &'a Cyc) -> Cyc {
        if let Some(q) = self.as_rational() {
            return rhs.scale(&q);
        }
        if let Some(q) = rhs.as_rational() {
            return self.scale(&q);
        }
        let mut b = CycBuilder::new();
        b.add_product(self, rhs, false, &Rational::ONE);
        b.finish()
    }
}

impl<'a> Neg for &'a Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        Cyc {
            order: self.order,
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Cyc> for Cyc {
            type Output = Cyc;
            fn $m(self, rhs: Cyc) -> Cyc {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Cyc> for Cyc {
            type Output = Cyc;
            fn $m(self, rhs: &'a Cyc) -> Cyc {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        -&self
    }
}

impl std::iter::Sum for Cyc {
    fn sum<I: Iterator<Item = Cyc>>(iter: I) -> Self {
        let mut b = CycBuilder::new();
        for x in iter {
            b.add(&x);
        }
        b.finish()
    }
}

impl fmt::Debug for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
