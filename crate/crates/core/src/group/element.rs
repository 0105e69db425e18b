use std::fmt;
use std::ops::{Mul, Neg};

use serde::{Deserialize, Serialize};

use crate::arith::{factorize, residue};
use crate::error::{Error, Result};

/// A matrix `[[a, b], [c, d]]` in `SL₂(F_p)`, entries in `[0, p)`.
///
/// The derived ordering is lexicographic on `(a, b, c, d)` for a fixed `p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    p: u64,
    a: u64,
    b: u64,
    c: u64,
    d: u64,
}

impl GroupElement {
    pub fn new(p: u64, a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let (a, b, c, d) = (residue(a, p), residue(b, p), residue(c, p), residue(d, p));
        let det = (a * d % p + p - b * c % p) % p;
        if det != 1 % p {
            return Err(Error::NotInSl2 { p, a, b, c, d, det });
        }
        Ok(GroupElement { p, a, b, c, d })
    }

    pub fn from_rows(p: u64, rows: [[i64; 2]; 2]) -> Result<Self> {
        Self::new(p, rows[0][0], rows[0][1], rows[1][0], rows[1][1])
    }

    /// Unchecked constructor for entries already reduced with determinant 1.
    pub(crate) fn raw(p: u64, a: u64, b: u64, c: u64, d: u64) -> Self {
        debug_assert_eq!((a * d + p * p - b * c) % p, 1 % p);
        GroupElement { p, a, b, c, d }
    }

    pub fn identity(p: u64) -> Self {
        GroupElement::raw(p, 1, 0, 0, 1)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn entries(&self) -> [u64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn trace(&self) -> u64 {
        (self.a + self.d) % self.p
    }

    pub fn is_identity(&self) -> bool {
        self.a == 1 && self.b == 0 && self.c == 0 && self.d == 1
    }

    /// `±I`.
    pub fn is_central(&self) -> bool {
        self.b == 0 && self.c == 0 && self.a == self.d
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.p != rhs.p {
            return Err(Error::ModulusMismatch {
                left: self.p,
                right: rhs.p,
            });
        }
        Ok(self.mul_same(rhs))
    }

    pub(crate) fn mul_same(&self, rhs: &Self) -> Self {
        let p = self.p;
        GroupElement {
            p,
            a: (self.a * rhs.a + self.b * rhs.c) % p,
            b: (self.a * rhs.b + self.b * rhs.d) % p,
            c: (self.c * rhs.a + self.d * rhs.c) % p,
            d: (self.c * rhs.b + self.d * rhs.d) % p,
        }
    }

    pub fn inverse(&self) -> Self {
        let p = self.p;
        GroupElement {
            p,
            a: self.d,
            b: (p - self.b) % p,
            c: (p - self.c) % p,
            d: self.a,
        }
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut acc = GroupElement::identity(self.p);
        let mut base = *self;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_same(&base);
            }
            base = base.mul_same(&base);
            k >>= 1;
        }
        acc
    }

    /// `h · self · h⁻¹`.
    pub fn conjugate_by(&self, h: &Self) -> Self {
        h.mul_same(self).mul_same(&h.inverse())
    }

    /// Whether the element has order exactly `n`.
    pub fn has_order(&self, n: u64) -> bool {
        self.pow(n).is_identity()
            && factorize(n)
                .iter()
                .all(|(q, _)| !self.pow(n / q).is_identity())
    }

    /// Order of the element, found among divisors of `|SL₂(F_p)|`.
    pub fn order(&self) -> u64 {
        let p = self.p;
        let mut n = p * (p * p - 1);
        for (q, k) in factorize(n) {
            for _ in 0..k {
                if self.pow(n / q).is_identity() {
                    n /= q;
                } else {
                    break;
                }
            }
        }
        n
    }
}

impl Mul for GroupElement {
    type Output = GroupElement;
    /// Panics if the moduli differ; use [`GroupElement::checked_mul`] for a checked product.
    fn mul(self, rhs: Self) -> Self {
        assert_eq!(self.p, rhs.p, "modulus mismatch");
        self.mul_same(&rhs)
    }
}

impl Neg for GroupElement {
    type Output = GroupElement;
    fn neg(self) -> Self {
        let p = self.p;
        GroupElement {
            p,
            a: (p - self.a) % p,
            b: (p - self.b) % p,
            c: (p - self.c) % p,
            d: (p - self.d) % p,
        }
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]] mod {}", self.a, self.b, self.c, self.d, self.p)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

/// Every element of `SL₂(F_p)`, in lexicographic order.
pub fn elements(p: u64) -> impl Iterator<Item = GroupElement> {
    (0..p).flat_map(move |a| {
        (0..p).flat_map(move |b| {
            (0..p).flat_map(move |c| {
                (0..p).filter_map(move |d| {
                    ((a * d + p * p - b * c) % p == 1).then(|| GroupElement::raw(p, a, b, c, d))
                })
            })
        })
    })
}

/// Every element of `SL₂(F_p)`, generated without scanning `F_p⁴`.
pub(crate) fn elements_fast(p: u64) -> Vec<GroupElement> {
    let mut out = Vec::with_capacity((p * (p * p - 1)) as usize);
    for a in 0..p {
        for b in 0..p {
            if a == 0 {
                if b == 0 {
                    continue;
                }
                // -bc = 1
                let c = (p - crate::arith::mod_inv(b, p).unwrap()) % p;
                for d in 0..p {
                    out.push(GroupElement::raw(p, a, b, c, d));
                }
            } else {
                let ainv = crate::arith::mod_inv(a, p).unwrap();
                for c in 0..p {
                    let d = (1 + b * c) % p * ainv % p;
                    out.push(GroupElement::raw(p, a, b, c, d));
                }
            }
        }
    }
    out
}
