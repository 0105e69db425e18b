use serde::{Deserialize, Serialize};

use super::{decompose_prime, DlContext, Reading};
use crate::chartable::IrrLabel;
use crate::cyclotomic::Rational;
use crate::error::{Error, Result};
use crate::group::{TorusType, MINUS_IDENTITY_CLASS};

fn is_odd_integer(q: &Rational) -> bool {
    q.to_i64().is_some_and(|n| n % 2 != 0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddMultiplicityReport {
    pub p: u64,
    /// Multiplicities in `S_{2,p}` of the two constituents of `R_{T_s}^α`.
    pub split_plus: Rational,
    pub split_minus: Rational,
    pub split_both_odd: bool,
    /// `α|_Z = 1` on `T_s`; otherwise the constituents cannot occur in the
    /// `Z`-trivial `S_{2,p}` at all.
    pub split_alpha_trivial_on_z: bool,
    pub split_alpha_real: bool,
    /// Same data for the constituents of `-R_{T_a}^α`, for comparison.
    pub nonsplit_plus: Rational,
    pub nonsplit_minus: Rational,
    pub nonsplit_both_odd: bool,
}

/// Multiplicities of the exceptional characters in `S_{2,p}`, for
/// `p ≡ 23 mod 24`.
pub fn odd_multiplicity_report(ctx: &DlContext) -> Result<OddMultiplicityReport> {
    let p = ctx.p();
    if p % 24 != 23 {
        return Err(Error::Precondition(format!("p = {p} is not 23 mod 24")));
    }
    let r = decompose_prime(ctx, Reading::Primary)?;
    let m = |l| r.multiplicity(l).cloned().expect("label present");
    let alpha_s = ctx.r(TorusType::Split, (p - 1) / 2);
    let (sp, sm) = (m(IrrLabel::ExceptionalSplitPlus), m(IrrLabel::ExceptionalSplitMinus));
    let (np, nm) = (m(IrrLabel::ExceptionalNonsplitPlus), m(IrrLabel::ExceptionalNonsplitMinus));
    Ok(OddMultiplicityReport {
        p,
        split_both_odd: is_odd_integer(&sp) && is_odd_integer(&sm),
        split_alpha_trivial_on_z: alpha_s.value(MINUS_IDENTITY_CLASS) == alpha_s.value(0),
        split_alpha_real: alpha_s.conj() == *alpha_s,
        nonsplit_both_odd: is_odd_integer(&np) && is_odd_integer(&nm),
        split_plus: sp,
        split_minus: sm,
        nonsplit_plus: np,
        nonsplit_minus: nm,
    })
}

/// Requires both constituents of `R_{T_s}^α` to occur an odd number of times.
pub fn corollary_odd_multiplicity(ctx: &DlContext) -> Result<OddMultiplicityReport> {
    let r = odd_multiplicity_report(ctx)?;
    if !r.split_both_odd {
        return Err(Error::CorollaryFalsified {
            p: r.p,
            detail: format!(
                "constituents of R_Ts^α occur {} and {} times",
                r.split_plus, r.split_minus
            ),
        });
    }
    Ok(r)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AllAppearReport {
    pub p: u64,
    /// Nontrivial irreducibles with `χ(−I) = χ(1)` and multiplicity 0.
    pub missing: Vec<IrrLabel>,
    pub trivial_multiplicity: Rational,
    /// The statement holds at this `p`.
    pub holds: bool,
    /// `p ≥ 23`, where the statement is claimed.
    pub asserted: bool,
}

/// Which nontrivial irreducibles of `PSL₂(F_p)` are missing from `S_{2,p}`,
/// and whether the trivial one occurs.
pub fn all_appear_report(ctx: &DlContext) -> Result<AllAppearReport> {
    let p = ctx.p();
    let r = decompose_prime(ctx, Reading::Primary)?;
    let mut missing = Vec::new();
    let mut trivial = Rational::ZERO;
    for (chi, e) in ctx.chars.irreducibles.iter().zip(&r.multiplicities) {
        if chi.chi.value(MINUS_IDENTITY_CLASS) != chi.chi.value(0) {
            continue;
        }
        if chi.label == IrrLabel::Trivial {
            trivial = e.m.clone();
        } else if e.m < Rational::ONE {
            missing.push(chi.label);
        }
    }
    let holds = missing.is_empty() && trivial.is_zero();
    Ok(AllAppearReport {
        p,
        missing,
        trivial_multiplicity: trivial,
        holds,
        asserted: p >= 23,
    })
}

/// Every nontrivial irreducible of `PSL₂(F_p)` occurs in `S_{2,p}` and the
/// trivial one does not. A failure is an error only for `p ≥ 23`.
pub fn corollary_all_appear(ctx: &DlContext) -> Result<AllAppearReport> {
    let report = all_appear_report(ctx)?;
    if report.asserted && !report.holds {
        return Err(Error::CorollaryFalsified {
            p: report.p,
            detail: format!(
                "missing {:?}, trivial multiplicity {}",
                report.missing.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
                report.trivial_multiplicity
            ),
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn refuses_outside_residue() {
        let ctx = DlContext::build(13).unwrap();
        assert!(matches!(odd_multiplicity_report(&ctx), Err(Error::Precondition(_))));
    }

    #[test]
    fn all_appear_at_eleven_is_sharp() {
        let ctx = DlContext::build(11).unwrap();
        let r = corollary_all_appear(&ctx).unwrap();
        assert!(!r.asserted);
        assert!(!r.holds);
        assert!(r.missing.iter().any(|l| matches!(l, IrrLabel::Principal(_))));
        assert!(r.trivial_multiplicity.is_zero());
    }

    #[test]
    fn all_appear_at_23() {
        let ctx = DlContext::build(23).unwrap();
        let r = corollary_all_appear(&ctx).unwrap();
        assert!(r.holds && r.asserted);
    }
}
