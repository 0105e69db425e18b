//! The weight-2 cusp form character `S_{2,p}` and its Deligne–Lusztig
//! decomposition.

mod corollary;
mod fit;
mod remark;
mod sets;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use corollary::{
    all_appear_report, corollary_all_appear, corollary_odd_multiplicity, odd_multiplicity_report, AllAppearReport,
    OddMultiplicityReport,
};
pub use fit::{fit_cell, linearity_report, computed_table, LinearityReport, LinearityRow};
pub use remark::{pipeline_reproduces_s, remark_coefficients, remark_pipeline, verify_remark, PerTheta, RemarkCase, RemarkReport};
pub use sets::{
    cell_name, classify_theta, paper_cell, paper_coefficient, paper_coefficients, render_paper_table,
    render_table, subgroup_triviality, Cell, Reading, SetLabel, ThetaSetLabel, RESIDUES,
};

use crate::chartable::{dl_nonsplit, dl_split, irreducible_table, steinberg, CharacterTable, IrrLabel, TorusCharacter};
use crate::classfun::ClassFunction;
use crate::cyclotomic::{Cyc, Rational};
use crate::error::{Error, Result};
use crate::group::{Sl2Group, TorusType};

/// Character table plus `St` and every `R_T^θ` up to `θ ↔ θ⁻¹`.
#[derive(Clone, Debug)]
pub struct DlContext {
    pub chars: CharacterTable,
    pub st: ClassFunction,
    split: Vec<ClassFunction>,
    nonsplit: Vec<ClassFunction>,
}

impl DlContext {
    pub fn build(p: u64) -> Result<Self> {
        Self::new(irreducible_table(Arc::new(Sl2Group::new(p)?))?)
    }

    pub fn new(chars: CharacterTable) -> Result<Self> {
        let g = &chars.group;
        let split = (0..=g.split.order / 2)
            .map(|k| dl_split(g, k).map(|r| r.chi))
            .collect::<Result<_>>()?;
        let nonsplit = (0..=g.nonsplit.order / 2).map(|k| dl_nonsplit(g, k).chi).collect();
        let st = steinberg(g)?;
        Ok(DlContext {
            chars,
            st,
            split,
            nonsplit,
        })
    }

    pub fn p(&self) -> u64 {
        self.chars.p()
    }

    pub fn group(&self) -> &Sl2Group {
        &self.chars.group
    }

    /// `R_T^θ` for `θ = ω^k`.
    pub fn r(&self, torus: TorusType, k: u64) -> &ClassFunction {
        let n = torus.order(self.p());
        let k = k % n;
        let rep = k.min(n - k);
        match torus {
            TorusType::Split => &self.split[rep as usize],
            TorusType::Nonsplit => &self.nonsplit[rep as usize],
        }
    }
}

/// `|G/Z|(1 − 1/2 − 1/3 − 1/p) + 2` and `2(1 + (p²−1)(p−6)/24)`.
pub fn degree_formulas(p: u64) -> (Rational, Rational) {
    let q = |n: i64, d: i64| Rational::new(n, d);
    let half_order = Rational::from(p * (p * p - 1) / 2);
    let index = &(&half_order * &(&(&(&Rational::ONE - &q(1, 2)) - &q(1, 3)) - &q(1, p as i64)))
        + &Rational::from(2);
    let genus = &Rational::from(2)
        * &(&Rational::ONE + &q(((p * p - 1) as i64) * (p as i64 - 6), 24));
    (index, genus)
}

/// `S_{2,p} = Ind_Z 1 − Ind_{G̃_x} 1 − Ind_{G̃_y} 1 − Ind_{G̃_z} 1 + 2`.
pub fn weinstein_character(g: &Sl2Group) -> Result<ClassFunction> {
    let p = g.p();
    let t = g.table.clone();
    let ind = |s| ClassFunction::induce_trivial(t.clone(), s);
    let mut s = ind(&g.z)?;
    for sub in [&g.gx, &g.gy, &g.gz] {
        s = s.checked_sub(&ind(sub)?)?;
    }
    let s = s.checked_add(&ClassFunction::trivial(t.clone()).scale(&Rational::from(2)))?;

    let (index, genus) = degree_formulas(p);
    let deg = s.degree().as_rational();
    if index != genus || deg.as_ref() != Some(&index) {
        return Err(Error::DegreeMismatch {
            p,
            index: deg.map_or_else(|| s.degree().to_string(), |d| d.to_string()),
            genus: genus.to_string(),
        });
    }
    if !s.values().iter().all(|v| v.as_rational().is_some_and(|q| q.is_integer())) {
        return Err(Error::Consistency(format!("S_2,{p} has a non-integral value")));
    }
    if s.dual() != s {
        return Err(Error::Consistency(format!("S_2,{p} is not self-dual")));
    }
    if s.value(0) != s.value(1) {
        return Err(Error::Consistency(format!("Z acts nontrivially on S_2,{p}")));
    }
    Ok(s)
}

/// Coefficients of `φ = Σ_θ c_θ R_T^θ`, summed over every `θ` of both tori,
/// stored per orbit representative `k ≤ |T|/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DlCoefficients {
    pub split: Vec<Rational>,
    pub nonsplit: Vec<Rational>,
}

impl DlCoefficients {
    pub fn zero(p: u64) -> Self {
        DlCoefficients {
            split: vec![Rational::ZERO; ((p - 1) / 2 + 1) as usize],
            nonsplit: vec![Rational::ZERO; ((p + 1) / 2 + 1) as usize],
        }
    }

    pub fn get(&self, torus: TorusType, k_orbit: u64) -> &Rational {
        match torus {
            TorusType::Split => &self.split[k_orbit as usize],
            TorusType::Nonsplit => &self.nonsplit[k_orbit as usize],
        }
    }

    fn get_mut(&mut self, torus: TorusType, k_orbit: u64) -> &mut Rational {
        match torus {
            TorusType::Split => &mut self.split[k_orbit as usize],
            TorusType::Nonsplit => &mut self.nonsplit[k_orbit as usize],
        }
    }

    /// `(torus, k_orbit, c)` for every orbit.
    pub fn iter(&self) -> impl Iterator<Item = (TorusType, u64, &Rational)> {
        let s = self.split.iter().enumerate().map(|(k, c)| (TorusType::Split, k as u64, c));
        let a = self.nonsplit.iter().enumerate().map(|(k, c)| (TorusType::Nonsplit, k as u64, c));
        s.chain(a)
    }
}

/// Number of `θ` in the orbit `{ω^k, ω^{-k}}`.
fn orbit_size(n: u64, k: u64) -> i64 {
    if k == 0 || 2 * k == n {
        1
    } else {
        2
    }
}

/// `Σ c_θ R_T^θ` over all `θ`.
pub fn rebuild(ctx: &DlContext, coeffs: &DlCoefficients) -> Result<ClassFunction> {
    let p = ctx.p();
    let terms: Vec<(Rational, &ClassFunction)> = coeffs
        .iter()
        .filter(|(_, _, c)| !c.is_zero())
        .map(|(t, k, c)| (c * &Rational::from(orbit_size(t.order(p), k)), ctx.r(t, k)))
        .collect();
    ClassFunction::linear_combination(ctx.chars.classes().clone(), &terms)
}

/// Solves `φ = Σ c_θ R_T^θ` from the multiplicities of `φ`.
///
/// Fails if `φ` is not uniform, i.e. the two constituents of some
/// `±R_T^α` occur with different multiplicities, or the solution does not
/// reproduce `φ`.
pub fn solve_dl_coefficients(ctx: &DlContext, phi: &ClassFunction) -> Result<(DlCoefficients, Vec<Rational>)> {
    let p = ctx.p();
    let t = &ctx.chars;
    let m = t.multiplicities(phi)?;
    let at = |label| m[t.index_of(label).expect("label present")].clone();
    let mut c = DlCoefficients::zero(p);
    let half = Rational::new(1, 2);
    for k in 1..(p - 1) / 2 {
        *c.get_mut(TorusType::Split, k) = &at(IrrLabel::Principal(k)) * &half;
    }
    for k in 1..=(p - 1) / 2 {
        *c.get_mut(TorusType::Nonsplit, k) = -(&at(IrrLabel::Discrete(k)) * &half);
    }
    for torus in TorusType::BOTH {
        let plus = at(IrrLabel::exceptional(torus, true));
        let minus = at(IrrLabel::exceptional(torus, false));
        if plus != minus {
            return Err(Error::Consistency(format!(
                "not uniform: the constituents of the {torus} α character occur {plus} and {minus} times"
            )));
        }
        let alpha = torus.order(p) / 2;
        *c.get_mut(torus, alpha) = match torus {
            TorusType::Split => plus,
            TorusType::Nonsplit => -plus,
        };
    }
    let m1 = at(IrrLabel::Trivial);
    let mst = at(IrrLabel::Steinberg);
    *c.get_mut(TorusType::Split, 0) = &(&m1 + &mst) * &half;
    *c.get_mut(TorusType::Nonsplit, 0) = &(&m1 - &mst) * &half;

    if rebuild(ctx, &c)? != *phi {
        return Err(Error::Consistency("Deligne–Lusztig coefficients do not reproduce the class function".into()));
    }
    Ok((c, m))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientEntry {
    pub torus: TorusType,
    pub k_orbit: u64,
    pub set_label: SetLabel,
    pub c: Rational,
    pub expected: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientDiff {
    pub cell: String,
    pub torus: TorusType,
    pub k_orbit: u64,
    pub expected: Rational,
    pub computed: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityEntry {
    pub label: IrrLabel,
    pub degree: u64,
    pub m: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionResult {
    pub p: u64,
    pub residue_mod12: u64,
    pub reading: Reading,
    /// One entry per orbit of characters trivial on `Z`.
    pub coefficients: Vec<CoefficientEntry>,
    pub exact: bool,
    pub table_match: bool,
    pub diffs: Vec<CoefficientDiff>,
    pub multiplicities: Vec<MultiplicityEntry>,
}

impl DecompositionResult {
    pub fn nonzero(&self) -> impl Iterator<Item = &CoefficientEntry> {
        self.coefficients.iter().filter(|e| !e.c.is_zero())
    }

    pub fn coefficient(&self, torus: TorusType, k_orbit: u64) -> Option<&Rational> {
        self.coefficients
            .iter()
            .find(|e| e.torus == torus && e.k_orbit == k_orbit)
            .map(|e| &e.c)
    }

    pub fn multiplicity(&self, label: IrrLabel) -> Option<&Rational> {
        self.multiplicities.iter().find(|e| e.label == label).map(|e| &e.m)
    }

    pub fn verified(&self) -> bool {
        self.exact && self.table_match
    }
}

/// Decomposes `S_{2,p}` and compares each orbit coefficient with the
/// printed table through [`classify_theta`].
pub fn decompose_dl(ctx: &DlContext, s: &ClassFunction, reading: Reading) -> Result<DecompositionResult> {
    let p = ctx.p();
    let g = ctx.group();
    let (coeffs, m) = solve_dl_coefficients(ctx, s)?;

    let mut z_trivial = coeffs.clone();
    let mut entries = Vec::new();
    let mut diffs = Vec::new();
    for (torus, k, c) in coeffs.iter() {
        let theta = TorusCharacter::new(torus, torus.order(p), k);
        if !theta.is_trivial_on_z() {
            *z_trivial.get_mut(torus, k) = Rational::ZERO;
            continue;
        }
        let label = classify_theta(g, &theta, reading)?.label;
        let expected = paper_coefficient(p, label, torus);
        if *c != expected {
            diffs.push(CoefficientDiff {
                cell: cell_name(label, torus),
                torus,
                k_orbit: k,
                expected: expected.clone(),
                computed: c.clone(),
            });
        }
        entries.push(CoefficientEntry {
            torus,
            k_orbit: k,
            set_label: label,
            c: c.clone(),
            expected,
        });
    }
    let exact = rebuild(ctx, &z_trivial)? == *s;
    let multiplicities = ctx
        .chars
        .irreducibles
        .iter()
        .zip(m)
        .map(|(chi, m)| MultiplicityEntry {
            label: chi.label,
            degree: chi.degree,
            m,
        })
        .collect();
    Ok(DecompositionResult {
        p,
        residue_mod12: p % 12,
        reading,
        table_match: diffs.is_empty(),
        coefficients: entries,
        exact,
        diffs,
        multiplicities,
    })
}

/// `S_{2,p}` and its decomposition under one reading.
pub fn decompose_prime(ctx: &DlContext, reading: Reading) -> Result<DecompositionResult> {
    let s = weinstein_character(ctx.group())?;
    decompose_dl(ctx, &s, reading)
}

/// `2·1 = R_{T_s}^1 + R_{T_a}^1`.
pub fn two_trivial_identity(ctx: &DlContext) -> bool {
    let two = ClassFunction::trivial(ctx.chars.classes().clone()).scale(&Rational::from(2));
    &(ctx.r(TorusType::Split, 0) + ctx.r(TorusType::Nonsplit, 0)) == &two
}

/// Checks `Σ c_θ deg R_T^θ = deg S`.
pub fn degree_identity(ctx: &DlContext, r: &DecompositionResult) -> bool {
    let p = ctx.p() as i64;
    let total: Rational = r
        .coefficients
        .iter()
        .map(|e| {
            let deg = match e.torus {
                TorusType::Split => p + 1,
                TorusType::Nonsplit => 1 - p,
            };
            &e.c * &Rational::from(deg * orbit_size(e.torus.order(p as u64), e.k_orbit))
        })
        .sum();
    Cyc::from_rational(total) == Cyc::from_rational(degree_formulas(p as u64).0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees() {
        assert_eq!(degree_formulas(7), (Rational::from(6), Rational::from(6)));
        assert_eq!(degree_formulas(11).0, Rational::from(52));
        let s = weinstein_character(&Sl2Group::new(11).unwrap()).unwrap();
        assert_eq!(*s.degree(), Cyc::from_integer(52));
        assert_eq!(s.value(0), s.value(1));
    }

    #[test]
    fn example_at_seven() {
        let ctx = DlContext::build(7).unwrap();
        let r = decompose_prime(&ctx, Reading::Primary).unwrap();
        assert!(r.exact);
        let nz: Vec<_> = r.nonzero().collect();
        assert_eq!(nz.len(), 1);
        assert_eq!((nz[0].torus, nz[0].k_orbit, nz[0].set_label), (TorusType::Nonsplit, 4, SetLabel::C));
        assert_eq!(nz[0].c, Rational::from(-1));
        assert!(r.table_match);
        assert!(degree_identity(&ctx, &r));
        let alt = decompose_prime(&ctx, Reading::Alternative).unwrap();
        assert!(!alt.table_match);
    }

    #[test]
    fn eleven() {
        let ctx = DlContext::build(11).unwrap();
        let r = decompose_prime(&ctx, Reading::Primary).unwrap();
        let c = |t, k| r.coefficient(t, k).unwrap().clone();
        use TorusType::*;
        assert_eq!(c(Nonsplit, 2), Rational::ZERO);
        assert_eq!(c(Nonsplit, 4), Rational::from(-1));
        assert_eq!(c(Nonsplit, 6), Rational::from(-1));
        assert_eq!(c(Nonsplit, 0), Rational::from(-1));
        assert_eq!(c(Split, 0), Rational::from(1));
        assert_eq!(c(Split, 2), Rational::ZERO);
        assert!(r.exact && r.table_match);
    }

    #[test]
    fn two_is_sum_of_trivial_dl() {
        assert!(two_trivial_identity(&DlContext::build(13).unwrap()));
    }

    #[test]
    fn solver_rejects_nonuniform() {
        let ctx = DlContext::build(7).unwrap();
        let plus = ctx.chars.get(IrrLabel::ExceptionalNonsplitPlus).unwrap().chi.clone();
        assert!(solve_dl_coefficients(&ctx, &plus).is_err());
    }
}
