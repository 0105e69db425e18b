use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::element::GroupElement;
use crate::arith::{is_prime, legendre, mod_inv, smallest_nonsquare};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassKind {
    Central,
    Unipotent,
    SplitSemisimple,
    NonsplitSemisimple,
}

/// Stable name of a conjugacy class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassKey {
    /// `I` or `-I`.
    Central { negative: bool },
    /// `±u_1` (`square`) or `±u_ε`, with `u_c = [[1, c], [0, 1]]`.
    Unipotent { negative: bool, square: bool },
    /// `diag(a, a⁻¹)`, keyed by `min(a, a⁻¹)`.
    Split { a: u64 },
    /// Elliptic class of the given trace.
    Nonsplit { trace: u64 },
}

impl fmt::Display for ClassKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = |neg: bool| if neg { "-" } else { "" };
        match *self {
            ClassKey::Central { negative } => write!(f, "{}1", sign(negative)),
            ClassKey::Unipotent { negative, square } => {
                write!(f, "{}u{}", sign(negative), if square { "1" } else { "e" })
            }
            ClassKey::Split { a } => write!(f, "d({a})"),
            ClassKey::Nonsplit { trace } => write!(f, "t({trace})"),
        }
    }
}

impl FromStr for ClassKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Document(format!("unknown class key {s:?}"));
        let (negative, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let inner = |prefix: &str| -> Option<u64> {
            body.strip_prefix(prefix)?.strip_suffix(')')?.parse().ok()
        };
        Ok(match body {
            "1" => ClassKey::Central { negative },
            "u1" => ClassKey::Unipotent { negative, square: true },
            "ue" => ClassKey::Unipotent { negative, square: false },
            _ if negative => return Err(bad()),
            _ => {
                if let Some(a) = inner("d(") {
                    ClassKey::Split { a }
                } else if let Some(trace) = inner("t(") {
                    ClassKey::Nonsplit { trace }
                } else {
                    return Err(bad());
                }
            }
        })
    }
}

impl Serialize for ClassKey {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ClassKey {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassRecord {
    pub key: ClassKey,
    pub representative: GroupElement,
    pub size: u64,
    pub centralizer_order: u64,
    pub trace: u64,
    pub kind: ClassKind,
    pub inverse_class: usize,
}

/// The `p + 4` conjugacy classes of `SL₂(F_p)`.
///
/// Class order: `I, -I, u_1, u_ε, -u_1, -u_ε`, then split classes by
/// increasing key, then elliptic classes by increasing trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyTable {
    p: u64,
    epsilon: u64,
    group_order: u64,
    classes: Vec<ClassRecord>,
    /// Class index of non-central semisimple elements by trace.
    by_trace: Vec<Option<usize>>,
}

pub const IDENTITY_CLASS: usize = 0;
pub const MINUS_IDENTITY_CLASS: usize = 1;

pub fn check_prime(p: u64) -> Result<()> {
    if p < 7 || !is_prime(p) {
        return Err(Error::InvalidPrime(p));
    }
    Ok(())
}

pub fn build_conjugacy_table(p: u64) -> Result<ConjugacyTable> {
    check_prime(p)?;
    let eps = smallest_nonsquare(p);
    let order = p * (p * p - 1);
    let inv2 = mod_inv(2, p).unwrap();
    let el = |a: u64, b: u64, c: u64, d: u64| GroupElement::raw(p, a, b, c, d);

    let mut classes = Vec::with_capacity(p as usize + 4);
    let mut push = |key, representative: GroupElement, centralizer_order: u64, kind| {
        classes.push(ClassRecord {
            key,
            representative,
            size: order / centralizer_order,
            centralizer_order,
            trace: representative.trace(),
            kind,
            inverse_class: usize::MAX,
        });
        classes.len() - 1
    };

    push(ClassKey::Central { negative: false }, el(1, 0, 0, 1), order, ClassKind::Central);
    push(ClassKey::Central { negative: true }, el(p - 1, 0, 0, p - 1), order, ClassKind::Central);
    for (negative, s) in [(false, 1), (true, p - 1)] {
        for (square, c) in [(true, 1), (false, eps)] {
            push(
                ClassKey::Unipotent { negative, square },
                el(s, s * c % p, 0, s),
                2 * p,
                ClassKind::Unipotent,
            );
        }
    }

    let mut by_trace = vec![None; p as usize];
    for a in 2..p - 1 {
        let ainv = mod_inv(a, p).unwrap();
        if a < ainv {
            let i = push(ClassKey::Split { a }, el(a, 0, 0, ainv), p - 1, ClassKind::SplitSemisimple);
            by_trace[((a + ainv) % p) as usize] = Some(i);
        }
    }
    for t in 0..p {
        let disc = (t * t + 4 * p - 4) as i64;
        if legendre(disc, p) != -1 {
            continue;
        }
        // [[x, bε], [b, x]] with x = t/2 and x² - εb² = 1.
        let x = t * inv2 % p;
        let b = (1..p)
            .find(|&b| (x * x + p * p - eps * b % p * b % p) % p == 1)
            .expect("elliptic trace has a torus representative");
        let i = push(ClassKey::Nonsplit { trace: t }, el(x, eps * b % p, b, x), p + 1, ClassKind::NonsplitSemisimple);
        by_trace[t as usize] = Some(i);
    }

    let mut table = ConjugacyTable {
        p,
        epsilon: eps,
        group_order: order,
        classes,
        by_trace,
    };
    for i in 0..table.classes.len() {
        let inv = table.class_of_unchecked(&table.classes[i].representative.inverse());
        table.classes[i].inverse_class = inv;
    }
    debug_assert_eq!(table.classes.len() as u64, p + 4);
    Ok(table)
}

impl ConjugacyTable {
    pub fn p(&self) -> u64 {
        self.p
    }

    /// The fixed nonsquare `ε` (smallest positive nonsquare mod `p`).
    pub fn epsilon(&self) -> u64 {
        self.epsilon
    }

    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    pub fn classes(&self) -> &[ClassRecord] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class(&self, i: usize) -> &ClassRecord {
        &self.classes[i]
    }

    pub fn index_of_key(&self, key: &ClassKey) -> Option<usize> {
        self.classes.iter().position(|c| c.key == *key)
    }

    pub fn unipotent_index(&self, negative: bool, square: bool) -> usize {
        2 + 2 * negative as usize + (!square) as usize
    }

    pub fn class_of(&self, g: &GroupElement) -> Result<usize> {
        if g.p() != self.p {
            return Err(Error::ModulusMismatch {
                left: self.p,
                right: g.p(),
            });
        }
        Ok(self.class_of_unchecked(g))
    }

    pub(crate) fn class_of_unchecked(&self, g: &GroupElement) -> usize {
        let p = self.p;
        if g.is_central() {
            return if g.is_identity() { IDENTITY_CLASS } else { MINUS_IDENTITY_CLASS };
        }
        let t = g.trace();
        if t == 2 || t == p - 2 {
            let negative = t == p - 2;
            let h = if negative { -*g } else { *g };
            let square = legendre(unipotent_invariant(&h) as i64, p) == 1;
            return self.unipotent_index(negative, square);
        }
        self.by_trace[t as usize].expect("every non-central trace has a class")
    }
}

/// `det[Nv | v]` for `N = h - I` and the first standard basis vector `v`
/// with `Nv ≠ 0`; its square class separates `u_1` from `u_ε`.
fn unipotent_invariant(h: &GroupElement) -> u64 {
    let p = h.p();
    let [a, b, c, d] = h.entries();
    let n = [(a + p - 1) % p, b, c, (d + p - 1) % p];
    if n[0] != 0 || n[2] != 0 {
        // v = e1, Nv = (n0, n2): det = n0·0 - 1·n2
        (p - n[2]) % p
    } else {
        // v = e2, Nv = (n1, n3) with n3 = 0: det = n1
        n[1]
    }
}
