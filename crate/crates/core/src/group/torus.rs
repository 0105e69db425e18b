use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::classes::check_prime;
use super::element::GroupElement;
use crate::arith::{mod_inv, smallest_nonsquare};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TorusType {
    Split,
    Nonsplit,
}

impl TorusType {
    pub const BOTH: [TorusType; 2] = [TorusType::Split, TorusType::Nonsplit];

    /// `|T^F|`: `p - 1` or `p + 1`.
    pub fn order(self, p: u64) -> u64 {
        match self {
            TorusType::Split => p - 1,
            TorusType::Nonsplit => p + 1,
        }
    }

    /// `T_s` or `T_a`.
    pub fn symbol(self) -> &'static str {
        match self {
            TorusType::Split => "s",
            TorusType::Nonsplit => "a",
        }
    }
}

impl fmt::Display for TorusType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TorusType::Split => "split",
            TorusType::Nonsplit => "nonsplit",
        })
    }
}

/// A maximal torus `T^F`, cyclic, with a fixed generator.
///
/// Split: the diagonal matrices. Nonsplit: `[[a, bε], [b, a]]` with
/// `a² - εb² = 1`.
#[derive(Clone, Debug)]
pub struct TorusData {
    pub torus_type: TorusType,
    pub generator: GroupElement,
    pub order: u64,
    /// Only for the nonsplit torus.
    pub epsilon: Option<u64>,
    /// `powers[k] = generator^k`.
    powers: Vec<GroupElement>,
    log: HashMap<GroupElement, u64>,
}

pub fn build_torus(p: u64, torus_type: TorusType) -> Result<TorusData> {
    check_prime(p)?;
    let n = torus_type.order(p);
    let (mut members, epsilon) = match torus_type {
        TorusType::Split => (
            (1..p)
                .map(|a| GroupElement::raw(p, a, 0, 0, mod_inv(a, p).unwrap()))
                .collect::<Vec<_>>(),
            None,
        ),
        TorusType::Nonsplit => {
            let eps = smallest_nonsquare(p);
            let mut v = Vec::with_capacity(n as usize);
            for a in 0..p {
                for b in 0..p {
                    if (a * a + p * p - eps * (b * b % p)) % p == 1 {
                        v.push(GroupElement::raw(p, a, eps * b % p, b, a));
                    }
                }
            }
            (v, Some(eps))
        }
    };
    members.sort();
    assert_eq!(members.len() as u64, n, "torus has the wrong order");
    let generator = *members
        .iter()
        .find(|g| g.has_order(n))
        .expect("torus is cyclic");

    let mut powers = Vec::with_capacity(n as usize);
    let mut log = HashMap::with_capacity(n as usize);
    let mut x = GroupElement::identity(p);
    for k in 0..n {
        powers.push(x);
        log.insert(x, k);
        x = x.mul_same(&generator);
    }
    Ok(TorusData {
        torus_type,
        generator,
        order: n,
        epsilon,
        powers,
        log,
    })
}

impl TorusData {
    pub fn p(&self) -> u64 {
        self.generator.p()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.log.contains_key(g)
    }

    /// `k` with `generator^k = g`, if `g ∈ T^F`.
    pub fn discrete_log(&self, g: &GroupElement) -> Option<u64> {
        self.log.get(g).copied()
    }

    pub fn power(&self, k: u64) -> GroupElement {
        self.powers[(k % self.order) as usize]
    }

    /// Elements in generator-power order.
    pub fn elements(&self) -> &[GroupElement] {
        &self.powers
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factorize;

    #[test]
    fn orders_at_seven() {
        assert_eq!(build_torus(7, TorusType::Split).unwrap().order, 6);
        assert_eq!(build_torus(7, TorusType::Nonsplit).unwrap().order, 8);
    }

    #[test]
    fn generators_and_logs() {
        for p in [7u64, 11, 13, 29, 101] {
            for ty in TorusType::BOTH {
                let t = build_torus(p, ty).unwrap();
                let n = t.order;
                assert!(t.generator.pow(n).is_identity());
                for (q, _) in factorize(n) {
                    assert!(!t.generator.pow(n / q).is_identity());
                }
                for k in 0..2 * n {
                    assert_eq!(t.discrete_log(&t.generator.pow(k)), Some(k % n));
                }
                let minus = -GroupElement::identity(p);
                assert_eq!(t.discrete_log(&minus), Some(n / 2));
            }
        }
    }

    #[test]
    fn nonsplit_uses_smallest_nonsquare() {
        let t = build_torus(7, TorusType::Nonsplit).unwrap();
        assert_eq!(t.epsilon, Some(3));
        for g in t.elements() {
            let [a, b, c, d] = g.entries();
            assert_eq!(a, d);
            assert_eq!(b, 3 * c % 7);
        }
    }

    #[test]
    fn tori_meet_in_center() {
        let s = build_torus(11, TorusType::Split).unwrap();
        let a = build_torus(11, TorusType::Nonsplit).unwrap();
        let common: Vec<_> = s.elements().iter().filter(|g| a.contains(g)).collect();
        assert_eq!(common.len(), 2);
        assert!(common.iter().all(|g| g.is_central()));
    }

    #[test]
    fn generator_is_lexicographically_first() {
        let t = build_torus(13, TorusType::Split).unwrap();
        // diag(2, 7): 2 is a primitive root mod 13.
        assert_eq!(t.generator.entries(), [2, 0, 0, 7]);
    }
}
