use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::classes::ConjugacyTable;
use super::element::GroupElement;
use super::torus::{build_torus, TorusType};
use crate::arith::mod_inv;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SubgroupName {
    Z,
    #[serde(rename = "Gx_tilde")]
    GxTilde,
    #[serde(rename = "Gy_tilde")]
    GyTilde,
    #[serde(rename = "Gz_tilde")]
    GzTilde,
    Borel,
    Ts,
    Ta,
}

impl SubgroupName {
    pub const ALL: [SubgroupName; 7] = [
        SubgroupName::Z,
        SubgroupName::GxTilde,
        SubgroupName::GyTilde,
        SubgroupName::GzTilde,
        SubgroupName::Borel,
        SubgroupName::Ts,
        SubgroupName::Ta,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SubgroupName::Z => "Z",
            SubgroupName::GxTilde => "Gx_tilde",
            SubgroupName::GyTilde => "Gy_tilde",
            SubgroupName::GzTilde => "Gz_tilde",
            SubgroupName::Borel => "Borel",
            SubgroupName::Ts => "Ts",
            SubgroupName::Ta => "Ta",
        }
    }

    pub fn expected_order(self, p: u64) -> u64 {
        match self {
            SubgroupName::Z => 2,
            SubgroupName::GxTilde => 4,
            SubgroupName::GyTilde => 6,
            SubgroupName::GzTilde => 2 * p,
            SubgroupName::Borel => p * (p - 1),
            SubgroupName::Ts => p - 1,
            SubgroupName::Ta => p + 1,
        }
    }
}

impl fmt::Display for SubgroupName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SubgroupName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SubgroupName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown subgroup {s:?}")))
    }
}

#[derive(Clone, Debug)]
pub struct SubgroupData {
    pub name: SubgroupName,
    /// Sorted.
    pub elements: Vec<GroupElement>,
    pub order: u64,
    /// `fusion[i]` is the class of `elements[i]` in `G`.
    pub fusion: Vec<usize>,
}

impl SubgroupData {
    pub fn contains(&self, g: &GroupElement) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    /// Number of elements in each `G`-class.
    pub fn class_counts(&self, num_classes: usize) -> Vec<u64> {
        let mut counts = vec![0; num_classes];
        for &c in &self.fusion {
            counts[c] += 1;
        }
        counts
    }
}

/// The subgroup generated by `gens`, by closure under right multiplication.
pub fn closure(p: u64, gens: &[GroupElement]) -> Vec<GroupElement> {
    let mut seen = BTreeSet::new();
    let id = GroupElement::identity(p);
    seen.insert(id);
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = x.mul_same(g);
            if seen.insert(y) {
                frontier.push(y);
            }
        }
    }
    seen.into_iter().collect()
}

pub fn build_subgroup(table: &ConjugacyTable, name: SubgroupName) -> Result<SubgroupData> {
    let p = table.p();
    let m = |rows| GroupElement::from_rows(p, rows);
    let minus = -GroupElement::identity(p);
    let mut elements = match name {
        SubgroupName::Z => closure(p, &[minus]),
        SubgroupName::GxTilde => closure(p, &[m([[0, 1], [-1, 0]])?, minus]),
        SubgroupName::GyTilde => closure(p, &[m([[0, 1], [-1, -1]])?, minus]),
        SubgroupName::GzTilde => closure(p, &[m([[1, 1], [0, 1]])?, minus]),
        SubgroupName::Borel => {
            let mut v = Vec::with_capacity((p * (p - 1)) as usize);
            for a in 1..p {
                let ainv = mod_inv(a, p).unwrap();
                for b in 0..p {
                    v.push(GroupElement::raw(p, a, b, 0, ainv));
                }
            }
            v
        }
        SubgroupName::Ts => build_torus(p, TorusType::Split)?.elements().to_vec(),
        SubgroupName::Ta => build_torus(p, TorusType::Nonsplit)?.elements().to_vec(),
    };
    elements.sort();
    let order = elements.len() as u64;
    assert_eq!(order, name.expected_order(p), "{name} has the wrong order");
    let fusion = elements.iter().map(|g| table.class_of_unchecked(g)).collect();
    Ok(SubgroupData {
        name,
        elements,
        order,
        fusion,
    })
}
