//! `SL₂(F_p)`: elements, conjugacy classes, distinguished subgroups and tori.

mod classes;
mod element;
mod subgroup;
mod torus;

use std::sync::Arc;

pub use classes::{
    build_conjugacy_table, check_prime, ClassKey, ClassKind, ClassRecord, ConjugacyTable,
    IDENTITY_CLASS, MINUS_IDENTITY_CLASS,
};
pub use element::{elements, GroupElement};
pub(crate) use element::elements_fast;
pub use subgroup::{build_subgroup, closure, SubgroupData, SubgroupName};
pub use torus::{build_torus, TorusData, TorusType};

use crate::error::Result;

/// Returns `h` with `h · sub · h⁻¹ ⊆ T^F`, or `None` if `sub` is not
/// conjugate into the torus.
///
/// Intended for the cyclic groups `G̃_x`, `G̃_y`. The search solves
/// `h·g = t·h` linearly for a generator `g` of `sub` and each candidate
/// image `t`, then looks for a determinant-one solution.
pub fn conjugate_into_torus(
    table: &ConjugacyTable,
    sub: &SubgroupData,
    torus: &TorusData,
) -> Option<GroupElement> {
    let p = table.p();
    let n = sub.order;
    let Some(g) = sub.elements.iter().find(|g| g.has_order(n)) else {
        // Not cyclic: fall back to checking every element of G.
        return elements_fast(p).into_iter().find(|h| maps_into(h, sub, torus));
    };
    if g.is_central() {
        return Some(GroupElement::identity(p));
    }
    let class = table.class_of_unchecked(g);
    for t in torus.elements() {
        if table.class_of_unchecked(t) != class {
            continue;
        }
        if let Some(h) = intertwiner(g, t) {
            debug_assert!(maps_into(&h, sub, torus));
            return Some(h);
        }
    }
    None
}

/// Checks `h · s · h⁻¹ ∈ T^F` for every `s` in `sub`.
pub fn maps_into(h: &GroupElement, sub: &SubgroupData, torus: &TorusData) -> bool {
    sub.elements.iter().all(|s| torus.contains(&s.conjugate_by(h)))
}

/// Some `h ∈ SL₂(F_p)` with `h·g·h⁻¹ = t`, found from the kernel of
/// `h ↦ h·g − t·h`.
fn intertwiner(g: &GroupElement, t: &GroupElement) -> Option<GroupElement> {
    let p = g.p();
    let ge = g.entries();
    let te = t.entries();
    let at = |m: &[u64; 4], i: usize, j: usize| m[2 * i + j];
    let mut rows = [[0u64; 4]; 4];
    for i in 0..2 {
        for j in 0..2 {
            for r in 0..2 {
                for s in 0..2 {
                    let mut v = 0;
                    if r == i {
                        v += at(&ge, s, j);
                    }
                    if s == j {
                        v += p - at(&te, i, r);
                    }
                    rows[2 * i + j][2 * r + s] = v % p;
                }
            }
        }
    }
    let basis = kernel_mod_p(rows, p);
    let k = basis.len() as u32;
    for idx in 0..p.pow(k) {
        let mut h = [0u64; 4];
        let mut rest = idx;
        for v in &basis {
            let coef = rest % p;
            rest /= p;
            for (hk, vk) in h.iter_mut().zip(v) {
                *hk = (*hk + coef * vk) % p;
            }
        }
        if (h[0] * h[3] + p * p - h[1] * h[2]) % p == 1 {
            return Some(GroupElement::raw(p, h[0], h[1], h[2], h[3]));
        }
    }
    None
}

fn kernel_mod_p(mut m: [[u64; 4]; 4], p: u64) -> Vec<[u64; 4]> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..4 {
        let Some(r) = (row..4).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(row, r);
        let inv = crate::arith::mod_inv(m[row][col], p).unwrap();
        for x in m[row].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..4 {
            if r != row && m[r][col] != 0 {
                let f = m[r][col];
                for c in 0..4 {
                    m[r][c] = (m[r][c] + p * p - f * m[row][c]) % p;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (0..4)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = [0u64; 4];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m[r][free]) % p;
            }
            v
        })
        .collect()
}

/// Everything about `SL₂(F_p)` that the character computations share.
#[derive(Clone, Debug)]
pub struct Sl2Group {
    pub table: Arc<ConjugacyTable>,
    pub split: TorusData,
    pub nonsplit: TorusData,
    pub z: SubgroupData,
    pub gx: SubgroupData,
    pub gy: SubgroupData,
    pub gz: SubgroupData,
    pub borel: SubgroupData,
    /// Conjugator placing `G̃_x` (resp. `G̃_y`) in a torus, with that torus.
    pub gx_embedding: (TorusType, GroupElement),
    pub gy_embedding: (TorusType, GroupElement),
}

impl Sl2Group {
    pub fn new(p: u64) -> Result<Self> {
        let table = Arc::new(build_conjugacy_table(p)?);
        let split = build_torus(p, TorusType::Split)?;
        let nonsplit = build_torus(p, TorusType::Nonsplit)?;
        let sub = |name| build_subgroup(&table, name);
        let (z, gx, gy, gz, borel) = (
            sub(SubgroupName::Z)?,
            sub(SubgroupName::GxTilde)?,
            sub(SubgroupName::GyTilde)?,
            sub(SubgroupName::GzTilde)?,
            sub(SubgroupName::Borel)?,
        );
        let embed = |s: &SubgroupData| {
            [&split, &nonsplit]
                .into_iter()
                .find_map(|t| conjugate_into_torus(&table, s, t).map(|h| (t.torus_type, h)))
                .expect("a cyclic subgroup of order 4 or 6 lies in some torus")
        };
        let gx_embedding = embed(&gx);
        let gy_embedding = embed(&gy);
        Ok(Sl2Group {
            table,
            split,
            nonsplit,
            z,
            gx,
            gy,
            gz,
            borel,
            gx_embedding,
            gy_embedding,
        })
    }

    pub fn p(&self) -> u64 {
        self.table.p()
    }

    pub fn torus(&self, ty: TorusType) -> &TorusData {
        match ty {
            TorusType::Split => &self.split,
            TorusType::Nonsplit => &self.nonsplit,
        }
    }

    pub fn subgroup(&self, name: SubgroupName) -> &SubgroupData {
        match name {
            SubgroupName::Z => &self.z,
            SubgroupName::GxTilde => &self.gx,
            SubgroupName::GyTilde => &self.gy,
            SubgroupName::GzTilde => &self.gz,
            SubgroupName::Borel => &self.borel,
            SubgroupName::Ts => unimplemented!("use Sl2Group::torus"),
            SubgroupName::Ta => unimplemented!("use Sl2Group::torus"),
        }
    }
}

/// Which torus contains a conjugate of `G̃_x` and `G̃_y`, by `p mod 12`.
pub fn expected_embedding(p: u64) -> (TorusType, TorusType) {
    use TorusType::{Nonsplit, Split};
    match p % 12 {
        1 => (Split, Split),
        5 => (Split, Nonsplit),
        7 => (Nonsplit, Split),
        11 => (Nonsplit, Nonsplit),
        _ => unreachable!("p ≥ 7 prime"),
    }
}
