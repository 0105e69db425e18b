use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;

use super::{dl_nonsplit, dl_split, steinberg, TorusCharacter};
use crate::classfun::ClassFunction;
use crate::cyclotomic::{gauss_sum, Cyc, CycBuilder, Rational};
use crate::error::{Error, Result};
use crate::group::{ConjugacyTable, Sl2Group, TorusType};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IrrLabel {
    Trivial,
    Steinberg,
    /// `Ind_B θ` for `θ = ω^k` on `T_s`, `θ² ≠ 1`, `k ≤ |T_s|/2`.
    Principal(u64),
    /// `-R_{T_a}^θ` for `θ = ω^k`, `θ² ≠ 1`, `k ≤ |T_a|/2`.
    Discrete(u64),
    ExceptionalSplitPlus,
    ExceptionalSplitMinus,
    ExceptionalNonsplitPlus,
    ExceptionalNonsplitMinus,
}

impl IrrLabel {
    pub fn exceptional(torus: TorusType, plus: bool) -> Self {
        match (torus, plus) {
            (TorusType::Split, true) => IrrLabel::ExceptionalSplitPlus,
            (TorusType::Split, false) => IrrLabel::ExceptionalSplitMinus,
            (TorusType::Nonsplit, true) => IrrLabel::ExceptionalNonsplitPlus,
            (TorusType::Nonsplit, false) => IrrLabel::ExceptionalNonsplitMinus,
        }
    }
}

impl fmt::Display for IrrLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IrrLabel::Trivial => f.write_str("trivial"),
            IrrLabel::Steinberg => f.write_str("steinberg"),
            IrrLabel::Principal(k) => write!(f, "principal({k})"),
            IrrLabel::Discrete(k) => write!(f, "discrete({k})"),
            IrrLabel::ExceptionalSplitPlus => f.write_str("exceptional_split_plus"),
            IrrLabel::ExceptionalSplitMinus => f.write_str("exceptional_split_minus"),
            IrrLabel::ExceptionalNonsplitPlus => f.write_str("exceptional_nonsplit_plus"),
            IrrLabel::ExceptionalNonsplitMinus => f.write_str("exceptional_nonsplit_minus"),
        }
    }
}

impl FromStr for IrrLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let arg = |prefix: &str| s.strip_prefix(prefix)?.strip_suffix(')')?.parse::<u64>().ok();
        Ok(match s {
            "trivial" => IrrLabel::Trivial,
            "steinberg" => IrrLabel::Steinberg,
            "exceptional_split_plus" => IrrLabel::ExceptionalSplitPlus,
            "exceptional_split_minus" => IrrLabel::ExceptionalSplitMinus,
            "exceptional_nonsplit_plus" => IrrLabel::ExceptionalNonsplitPlus,
            "exceptional_nonsplit_minus" => IrrLabel::ExceptionalNonsplitMinus,
            _ => {
                if let Some(k) = arg("principal(") {
                    IrrLabel::Principal(k)
                } else if let Some(k) = arg("discrete(") {
                    IrrLabel::Discrete(k)
                } else {
                    return Err(Error::Document(format!("unknown character label {s:?}")));
                }
            }
        })
    }
}

impl serde::Serialize for IrrLabel {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for IrrLabel {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Irreducible {
    pub label: IrrLabel,
    pub chi: ClassFunction,
    pub degree: u64,
}

impl Irreducible {
    fn new(label: IrrLabel, chi: ClassFunction) -> Result<Self> {
        let degree = chi
            .degree()
            .as_rational()
            .and_then(|d| d.to_i64())
            .filter(|&d| d > 0)
            .ok_or_else(|| Error::TableCheck {
                p: chi.table().p(),
                detail: format!("{label} has degree {} (not a positive integer)", chi.degree()),
            })?;
        Ok(Irreducible {
            label,
            chi,
            degree: degree as u64,
        })
    }
}

/// The two constituents of `R_{T_s}^α` (split) or `-R_{T_a}^α` (nonsplit).
///
/// They are `(base ± δ)/2`, where `δ` lives on `±u_1, ±u_ε` with
/// `δ(z·u_c) = α(z)·(c/p)·τ_p`. The `plus` constituent carries `+τ_p/2` at `u_1`.
pub fn exceptional_constituents(
    g: &Sl2Group,
    torus: TorusType,
    tau: &Cyc,
) -> Result<(Irreducible, Irreducible)> {
    let p = g.p();
    let table = &g.table;
    let alpha = TorusCharacter::alpha(g.torus(torus));
    let base = match torus {
        TorusType::Split => dl_split(g, alpha.k)?.chi,
        TorusType::Nonsplit => -&dl_nonsplit(g, alpha.k).chi,
    };
    let central = if alpha.is_trivial_on_z() { 1 } else { -1 };
    let mut delta = vec![Cyc::zero(); table.len()];
    for negative in [false, true] {
        for square in [true, false] {
            let s = if negative { central } else { 1 } * if square { 1 } else { -1 };
            delta[table.unipotent_index(negative, square)] = tau.scale(&Rational::from(s as i64));
        }
    }
    let delta = ClassFunction::new(table.clone(), delta)?;
    let half = Rational::new(1, 2);
    let plus = (&base + &delta).scale(&half);
    let minus = (&base - &delta).scale(&half);

    let fail = |what: &str| Error::TableCheck {
        p,
        detail: format!("exceptional {torus} constituents: {what}"),
    };
    if plus.norm() != Cyc::one() || minus.norm() != Cyc::one() {
        return Err(fail("norm is not 1"));
    }
    if !plus.inner_product(&minus)?.is_zero() {
        return Err(fail("not orthogonal"));
    }
    if &plus + &minus != base {
        return Err(fail("do not sum to the base character"));
    }
    let want = match torus {
        TorusType::Split => (p + 1) / 2,
        TorusType::Nonsplit => (p - 1) / 2,
    };
    let plus = Irreducible::new(IrrLabel::exceptional(torus, true), plus)?;
    let minus = Irreducible::new(IrrLabel::exceptional(torus, false), minus)?;
    if plus.degree != want || minus.degree != want {
        return Err(fail("wrong degree"));
    }
    Ok((plus, minus))
}

/// All irreducible characters of `SL₂(F_p)` with their group context.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub group: Arc<Sl2Group>,
    pub gauss_sum: Cyc,
    pub irreducibles: Vec<Irreducible>,
}

impl CharacterTable {
    pub fn p(&self) -> u64 {
        self.group.p()
    }

    pub fn classes(&self) -> &Arc<ConjugacyTable> {
        &self.group.table
    }

    pub fn index_of(&self, label: IrrLabel) -> Option<usize> {
        self.irreducibles.iter().position(|c| c.label == label)
    }

    pub fn get(&self, label: IrrLabel) -> Option<&Irreducible> {
        self.irreducibles.iter().find(|c| c.label == label)
    }

    pub fn characters(&self) -> Vec<ClassFunction> {
        self.irreducibles.iter().map(|c| c.chi.clone()).collect()
    }

    /// `⟨φ, χ⟩` for every irreducible, in table order.
    pub fn multiplicities(&self, phi: &ClassFunction) -> Result<Vec<Rational>> {
        phi.decompose_multiplicities(&self.characters())
    }
}

/// Trivial, Steinberg, principal series, discrete series, then the four
/// exceptional characters.
pub fn irreducible_table(group: Arc<Sl2Group>) -> Result<CharacterTable> {
    let g = &*group;
    let p = g.p();
    let tau = gauss_sum(p);
    let mut out = vec![
        Irreducible::new(IrrLabel::Trivial, ClassFunction::trivial(g.table.clone()))?,
        Irreducible::new(IrrLabel::Steinberg, steinberg(g)?)?,
    ];
    let principal: Vec<_> = (1..(p - 1) / 2)
        .into_par_iter()
        .map(|k| dl_split(g, k).and_then(|r| Irreducible::new(IrrLabel::Principal(k), r.chi)))
        .collect::<Result<_>>()?;
    out.extend(principal);
    for k in 1..=(p - 1) / 2 {
        out.push(Irreducible::new(IrrLabel::Discrete(k), -&dl_nonsplit(g, k).chi)?);
    }
    for torus in TorusType::BOTH {
        let (plus, minus) = exceptional_constituents(g, torus, &tau)?;
        out.push(plus);
        out.push(minus);
    }
    debug_assert_eq!(out.len() as u64, p + 4);
    Ok(CharacterTable {
        group,
        gauss_sum: tau,
        irreducibles: out,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableReport {
    pub p: u64,
    pub count: usize,
    pub sum_degree_squares: u64,
    pub orthonormal_pairs: usize,
    pub column_pairs: usize,
    pub dual_closed: bool,
}

/// Orthonormality, `Σ χ(1)² = |G|`, column orthogonality and closure under
/// duals. The first failure is reported with the offending pair.
pub fn validate_table(t: &CharacterTable) -> Result<TableReport> {
    let p = t.p();
    let classes = t.classes();
    let chars = &t.irreducibles;
    let fail = |detail: String| Error::TableCheck { p, detail };
    if chars.len() != classes.len() {
        return Err(fail(format!("{} characters for {} classes", chars.len(), classes.len())));
    }

    let pairs: Vec<(usize, usize)> =
        (0..chars.len()).flat_map(|i| (i..chars.len()).map(move |j| (i, j))).collect();
    pairs.par_iter().try_for_each(|&(i, j)| {
        let v = chars[i].chi.inner_product(&chars[j].chi)?;
        let want = if i == j { Cyc::one() } else { Cyc::zero() };
        if v != want {
            return Err(fail(format!(
                "⟨{}, {}⟩ = {v}",
                chars[i].label, chars[j].label
            )));
        }
        Ok(())
    })?;

    let sum_sq: u64 = chars.iter().map(|c| c.degree * c.degree).sum();
    if sum_sq != classes.group_order() {
        return Err(fail(format!("Σ degree² = {sum_sq}, |G| = {}", classes.group_order())));
    }

    let n = classes.len();
    let cols: Vec<(usize, usize)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
    cols.par_iter().try_for_each(|&(a, b)| {
        let mut acc = CycBuilder::new();
        for c in chars {
            acc.add_product(c.chi.value(a), c.chi.value(b), true, &Rational::ONE);
        }
        let v = acc.finish();
        let want = if a == b {
            Cyc::from_integer(classes.class(a).centralizer_order as i64)
        } else {
            Cyc::zero()
        };
        if v != want {
            return Err(fail(format!(
                "column relation for {} and {} gives {v}",
                classes.class(a).key,
                classes.class(b).key
            )));
        }
        Ok(())
    })?;

    for c in chars {
        let d = c.chi.dual();
        if d != c.chi.conj() {
            return Err(fail(format!("dual of {} is not its conjugate", c.label)));
        }
        if !chars.iter().any(|x| x.chi == d) {
            return Err(fail(format!("dual of {} is not in the table", c.label)));
        }
    }

    Ok(TableReport {
        p,
        count: chars.len(),
        sum_degree_squares: sum_sq,
        orthonormal_pairs: pairs.len(),
        column_pairs: cols.len(),
        dual_closed: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(p: u64) -> CharacterTable {
        irreducible_table(Arc::new(Sl2Group::new(p).unwrap())).unwrap()
    }

    #[test]
    fn degrees_at_seven() {
        let t = table(7);
        let mut degs: Vec<u64> = t.irreducibles.iter().map(|c| c.degree).collect();
        degs.sort();
        assert_eq!(degs, vec![1, 3, 3, 4, 4, 6, 6, 6, 7, 8, 8]);
        assert_eq!(degs.iter().map(|d| d * d).sum::<u64>(), 336);
    }

    #[test]
    fn validates_small_primes() {
        for p in [7u64, 11, 13] {
            let r = validate_table(&table(p)).unwrap();
            assert_eq!(r.count as u64, p + 4);
        }
    }

    #[test]
    fn nonsplit_exceptionals_dual_at_seven() {
        let t = table(7);
        let plus = t.get(IrrLabel::ExceptionalNonsplitPlus).unwrap();
        let minus = t.get(IrrLabel::ExceptionalNonsplitMinus).unwrap();
        assert_eq!(plus.degree, 3);
        assert_eq!(plus.chi.dual(), minus.chi);
    }

    #[test]
    fn split_exceptionals_at_thirteen() {
        let t = table(13);
        let plus = t.get(IrrLabel::ExceptionalSplitPlus).unwrap();
        let minus = t.get(IrrLabel::ExceptionalSplitMinus).unwrap();
        assert_eq!((plus.degree, minus.degree), (7, 7));
        let alpha = dl_split(&t.group, 6).unwrap().chi;
        assert_eq!(&plus.chi + &minus.chi, alpha);
    }

    #[test]
    fn label_round_trip() {
        let t = table(11);
        for c in &t.irreducibles {
            assert_eq!(c.label.to_string().parse::<IrrLabel>().unwrap(), c.label);
        }
        assert!("principal(x)".parse::<IrrLabel>().is_err());
    }

    #[test]
    fn discrete_series_duals_at_eleven() {
        let t = table(11);
        for k in 1..=5u64 {
            let rho = t.get(IrrLabel::Discrete(k)).unwrap();
            let inverse = -&dl_nonsplit(&t.group, 12 - k).chi;
            assert_eq!(rho.chi.dual(), inverse);
        }
    }
}
