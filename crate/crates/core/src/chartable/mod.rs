//! Irreducible and Deligne–Lusztig characters of `SL₂(F_p)`.

mod document;
mod irreducible;

use std::fmt;
use serde::{Deserialize, Serialize};

pub use document::{CharTableDocument, ClassEntry, CharacterEntry, SCHEMA, SCHEMA_VERSION};
pub use irreducible::{
    exceptional_constituents, irreducible_table, validate_table, CharacterTable, IrrLabel,
    Irreducible, TableReport,
};

use crate::classfun::ClassFunction;
use crate::cyclotomic::Cyc;
use crate::error::{Error, Result};
use crate::group::{ClassKey, ClassKind, Sl2Group, TorusData, TorusType};

/// `θ = ω^k`, where `ω` sends the fixed torus generator to `ζ_{|T|}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TorusCharacter {
    pub torus_type: TorusType,
    pub order: u64,
    pub k: u64,
}

impl TorusCharacter {
    pub fn new(torus_type: TorusType, order: u64, k: u64) -> Self {
        TorusCharacter {
            torus_type,
            order,
            k: k % order,
        }
    }

    pub fn alpha(torus: &TorusData) -> Self {
        Self::new(torus.torus_type, torus.order, torus.order / 2)
    }

    /// `θ(generator^l)`.
    pub fn value_at_log(&self, l: u64) -> Cyc {
        Cyc::root_of_unity(self.order, ((self.k * l) % self.order) as i64).expect("positive order")
    }

    pub fn value(&self, torus: &TorusData, t: &crate::group::GroupElement) -> Option<Cyc> {
        torus.discrete_log(t).map(|l| self.value_at_log(l))
    }

    pub fn is_trivial(&self) -> bool {
        self.k == 0
    }

    pub fn is_alpha(&self) -> bool {
        2 * self.k == self.order
    }

    /// `θ² = 1`.
    pub fn is_real(&self) -> bool {
        self.is_trivial() || self.is_alpha()
    }

    /// `θ(-I) = 1`; `-I` is `generator^{|T|/2}`.
    pub fn is_trivial_on_z(&self) -> bool {
        self.k % 2 == 0
    }

    /// Whether `θ` is trivial on the subgroup of order `m` of `T^F`.
    pub fn is_trivial_on_order(&self, m: u64) -> bool {
        self.order % m == 0 && (self.k * (self.order / m)) % self.order == 0
    }

    pub fn inverse(&self) -> Self {
        Self::new(self.torus_type, self.order, self.order - self.k)
    }

    /// `min(k, |T| - k)`.
    pub fn orbit_rep(&self) -> u64 {
        self.k.min((self.order - self.k) % self.order)
    }

    /// Order of `θ` in the character group.
    pub fn character_order(&self) -> u64 {
        self.order / num_integer::gcd(self.k, self.order)
    }

    /// `⟨θ, θ'⟩_{T^F}`.
    pub fn pairing(&self, other: &Self) -> i64 {
        (self.torus_type == other.torus_type && self.k == other.k) as i64
    }
}

impl fmt::Display for TorusCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "θ_{}^{}", self.torus_type.symbol(), self.k)
    }
}

pub fn torus_characters(torus: &TorusData) -> Vec<TorusCharacter> {
    (0..torus.order)
        .map(|k| TorusCharacter::new(torus.torus_type, torus.order, k))
        .collect()
}

/// `R_T^θ` as a virtual character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DLCharacter {
    pub theta: TorusCharacter,
    pub chi: ClassFunction,
}

impl DLCharacter {
    pub fn torus_type(&self) -> TorusType {
        self.theta.torus_type
    }

    pub fn k(&self) -> u64 {
        self.theta.k
    }
}

fn sign_power(k: u64) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `R_{T_s}^θ` from its closed form.
pub fn dl_split_closed(g: &Sl2Group, k: u64) -> ClassFunction {
    let p = g.p() as i64;
    let theta = TorusCharacter::new(TorusType::Split, g.split.order, k);
    let z = sign_power(theta.k);
    let values = g
        .table
        .classes()
        .iter()
        .enumerate()
        .map(|(i, c)| match c.kind {
            ClassKind::Central => Cyc::from_integer((p + 1) * if i == 0 { 1 } else { z }),
            ClassKind::Unipotent => Cyc::from_integer(if is_negative(&c.key) { z } else { 1 }),
            ClassKind::SplitSemisimple => torus_pair_sum(&g.split, &theta, &c.representative),
            ClassKind::NonsplitSemisimple => Cyc::zero(),
        })
        .collect();
    ClassFunction::new(g.table.clone(), values).expect("one value per class")
}

/// `R_{T_s}^θ = Ind_B θ̃`, with `θ̃` the trivial extension of `θ` to the Borel.
pub fn dl_split_induced(g: &Sl2Group, k: u64) -> ClassFunction {
    let p = g.p();
    let theta = TorusCharacter::new(TorusType::Split, g.split.order, k);
    let chi: Vec<Cyc> = g
        .borel
        .elements
        .iter()
        .map(|b| {
            let [a, _, _, d] = b.entries();
            let t = crate::group::GroupElement::new(p, a as i64, 0, 0, d as i64).expect("diagonal part");
            theta.value(&g.split, &t).expect("diagonal element lies in T_s")
        })
        .collect();
    ClassFunction::induce(g.table.clone(), &g.borel, &chi).expect("Borel has fusion data")
}

/// `R_{T_s}^θ`, built both ways and checked to agree.
pub fn dl_split(g: &Sl2Group, k: u64) -> Result<DLCharacter> {
    let closed = dl_split_closed(g, k);
    let induced = dl_split_induced(g, k);
    if closed != induced {
        return Err(Error::Consistency(format!(
            "R_Ts^θ (k = {k}) differs between Borel induction and the closed form at p = {}",
            g.p()
        )));
    }
    Ok(DLCharacter {
        theta: TorusCharacter::new(TorusType::Split, g.split.order, k),
        chi: closed,
    })
}

/// `R_{T_a}^θ` from its closed form.
pub fn dl_nonsplit(g: &Sl2Group, k: u64) -> DLCharacter {
    let p = g.p() as i64;
    let theta = TorusCharacter::new(TorusType::Nonsplit, g.nonsplit.order, k);
    let z = sign_power(theta.k);
    let values = g
        .table
        .classes()
        .iter()
        .enumerate()
        .map(|(i, c)| match c.kind {
            ClassKind::Central => Cyc::from_integer((1 - p) * if i == 0 { 1 } else { z }),
            ClassKind::Unipotent => Cyc::from_integer(if is_negative(&c.key) { z } else { 1 }),
            ClassKind::SplitSemisimple => Cyc::zero(),
            ClassKind::NonsplitSemisimple => torus_pair_sum(&g.nonsplit, &theta, &c.representative),
        })
        .collect();
    DLCharacter {
        theta,
        chi: ClassFunction::new(g.table.clone(), values).expect("one value per class"),
    }
}

/// `R_T^θ` for either torus.
pub fn dl_character(g: &Sl2Group, theta: &TorusCharacter) -> Result<DLCharacter> {
    match theta.torus_type {
        TorusType::Split => dl_split(g, theta.k),
        TorusType::Nonsplit => Ok(dl_nonsplit(g, theta.k)),
    }
}

fn is_negative(key: &ClassKey) -> bool {
    matches!(key, ClassKey::Unipotent { negative: true, .. } | ClassKey::Central { negative: true })
}

/// `θ(x) + θ(x⁻¹)` for a torus element `x`.
fn torus_pair_sum(torus: &TorusData, theta: &TorusCharacter, x: &crate::group::GroupElement) -> Cyc {
    let l = torus.discrete_log(x).expect("class representative lies in the torus");
    let n = theta.order;
    let e = (theta.k * l % n) as i64;
    Cyc::from_terms(n, [(e, 1.into()), (-e, 1.into())]).expect("positive order")
}

/// `St = Ind_B 1 - 1`.
pub fn steinberg(g: &Sl2Group) -> Result<ClassFunction> {
    let ind = ClassFunction::induce_trivial(g.table.clone(), &g.borel)?;
    let st = ind.checked_sub(&ClassFunction::trivial(g.table.clone()))?;
    if !st.norm().as_rational().is_some_and(|n| n.is_one()) {
        return Err(Error::TableCheck {
            p: g.p(),
            detail: "Steinberg character does not have norm 1".into(),
        });
    }
    Ok(st)
}

/// `Ind_{T^F}^{G^F} θ`.
pub fn induce_from_torus(g: &Sl2Group, theta: &TorusCharacter) -> Result<ClassFunction> {
    let torus = g.torus(theta.torus_type);
    let mut sub = crate::group::SubgroupData {
        name: match theta.torus_type {
            TorusType::Split => crate::group::SubgroupName::Ts,
            TorusType::Nonsplit => crate::group::SubgroupName::Ta,
        },
        elements: torus.elements().to_vec(),
        order: torus.order,
        fusion: Vec::new(),
    };
    sub.fusion = sub.elements.iter().map(|t| g.table.class_of(t)).collect::<Result<_>>()?;
    let chi: Vec<Cyc> = (0..torus.order).map(|l| theta.value_at_log(l)).collect();
    ClassFunction::induce(g.table.clone(), &sub, &chi)
}

/// The sign `(-1)^{1+ε(T)}` in `(-1)^{1+ε(T)} St ⊗ R_T^θ = Ind_T θ`.
pub fn steinberg_twist_sign(torus_type: TorusType) -> i64 {
    match torus_type {
        TorusType::Split => 1,
        TorusType::Nonsplit => -1,
    }
}

/// Checks `(-1)^{1+ε(T)} St ⊗ R_T^θ = Ind_{T^F} θ` for every `θ` on both tori.
pub fn check_steinberg_induction(g: &Sl2Group) -> Result<usize> {
    let st = steinberg(g)?;
    let mut count = 0;
    for ty in TorusType::BOTH {
        for theta in torus_characters(g.torus(ty)) {
            let r = dl_character(g, &theta)?;
            let lhs = st.tensor(&r.chi)?.scale(&steinberg_twist_sign(ty).into());
            let rhs = induce_from_torus(g, &theta)?;
            if lhs != rhs {
                return Err(Error::Consistency(format!(
                    "St ⊗ R_T^θ ≠ ±Ind_T θ for {theta} at p = {}",
                    g.p()
                )));
            }
            count += 1;
        }
    }
    Ok(count)
}
