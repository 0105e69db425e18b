//! Class functions on `SL₂(F_p)` with exact cyclotomic values.

use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use rayon::prelude::*;

use crate::cyclotomic::{Cyc, CycBuilder, Rational};
use crate::error::{Error, Result};
use crate::group::{ConjugacyTable, SubgroupData, IDENTITY_CLASS};

/// Values indexed by class, on a shared [`ConjugacyTable`].
#[derive(Clone, Debug)]
pub struct ClassFunction {
    table: Arc<ConjugacyTable>,
    values: Vec<Cyc>,
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        self.table.p() == other.table.p() && self.values == other.values
    }
}

impl Eq for ClassFunction {}

impl ClassFunction {
    pub fn new(table: Arc<ConjugacyTable>, values: Vec<Cyc>) -> Result<Self> {
        if values.len() != table.len() {
            return Err(Error::LengthMismatch {
                expected: table.len(),
                got: values.len(),
            });
        }
        Ok(ClassFunction { table, values })
    }

    pub fn constant(table: Arc<ConjugacyTable>, c: Cyc) -> Self {
        let values = vec![c; table.len()];
        ClassFunction { table, values }
    }

    pub fn zero(table: Arc<ConjugacyTable>) -> Self {
        Self::constant(table, Cyc::zero())
    }

    pub fn trivial(table: Arc<ConjugacyTable>) -> Self {
        Self::constant(table, Cyc::one())
    }

    pub fn from_integers(table: Arc<ConjugacyTable>, values: &[i64]) -> Result<Self> {
        Self::new(table, values.iter().map(|&v| Cyc::from_integer(v)).collect())
    }

    /// Characteristic function of one class.
    pub fn indicator(table: Arc<ConjugacyTable>, class: usize) -> Self {
        let mut f = Self::zero(table);
        f.values[class] = Cyc::one();
        f
    }

    pub fn table(&self) -> &Arc<ConjugacyTable> {
        &self.table
    }

    pub fn values(&self) -> &[Cyc] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &Cyc {
        &self.values[class]
    }

    /// Value at the identity.
    pub fn degree(&self) -> &Cyc {
        &self.values[IDENTITY_CLASS]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Cyc::is_zero)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.table, &other.table) || self.table.p() == other.table.p() {
            Ok(())
        } else {
            Err(Error::TableMismatch {
                left: self.table.p(),
                right: other.table.p(),
            })
        }
    }

    /// `⟨φ, ψ⟩ = (1/|G|) Σ_g φ(g)·conj(ψ(g))`.
    pub fn inner_product(&self, other: &Self) -> Result<Cyc> {
        self.check_same(other)?;
        let mut b = CycBuilder::new();
        for (i, c) in self.table.classes().iter().enumerate() {
            let w = Rational::new(1, c.centralizer_order as i64);
            b.add_product(&self.values[i], &other.values[i], true, &w);
        }
        Ok(b.finish())
    }

    /// `⟨φ, φ⟩`.
    pub fn norm(&self) -> Cyc {
        self.inner_product(self).expect("same table")
    }

    /// Inner product that must be rational, as for virtual characters.
    pub fn rational_inner_product(&self, other: &Self) -> Result<Rational> {
        let v = self.inner_product(other)?;
        v.as_rational().ok_or_else(|| Error::NotRational {
            value: v.to_string(),
            context: " (inner product)".into(),
        })
    }

    /// Pointwise product.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let values = self.values.iter().zip(&other.values).map(|(x, y)| x * y).collect();
        Ok(ClassFunction {
            table: self.table.clone(),
            values,
        })
    }

    /// `g ↦ φ(g⁻¹)`.
    pub fn dual(&self) -> Self {
        let values = self
            .table
            .classes()
            .iter()
            .map(|c| self.values[c.inverse_class].clone())
            .collect();
        ClassFunction {
            table: self.table.clone(),
            values,
        }
    }

    /// Pointwise complex conjugate.
    pub fn conj(&self) -> Self {
        self.map(Cyc::conj)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        self.map(|v| v.scale(s))
    }

    pub fn map(&self, f: impl Fn(&Cyc) -> Cyc) -> Self {
        ClassFunction {
            table: self.table.clone(),
            values: self.values.iter().map(f).collect(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.zip(other, |x, y| x + y))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.zip(other, |x, y| x - y))
    }

    fn zip(&self, other: &Self, f: impl Fn(&Cyc, &Cyc) -> Cyc) -> Self {
        ClassFunction {
            table: self.table.clone(),
            values: self.values.iter().zip(&other.values).map(|(x, y)| f(x, y)).collect(),
        }
    }

    /// `Σ q_i φ_i`, reduced once per class.
    pub fn linear_combination(
        table: Arc<ConjugacyTable>,
        terms: &[(Rational, &ClassFunction)],
    ) -> Result<Self> {
        for (_, f) in terms {
            if f.table.p() != table.p() {
                return Err(Error::TableMismatch {
                    left: table.p(),
                    right: f.table.p(),
                });
            }
        }
        let values = (0..table.len())
            .map(|i| {
                let mut b = CycBuilder::new();
                for (q, f) in terms {
                    b.add_scaled(&f.values[i], q);
                }
                b.finish()
            })
            .collect();
        Ok(ClassFunction { table, values })
    }

    /// Values on the elements of `sub`, in its element order.
    pub fn restrict(&self, sub: &SubgroupData) -> Result<Vec<Cyc>> {
        if sub.fusion.len() != sub.elements.len() {
            return Err(Error::Precondition(format!("{} has no fusion data", sub.name)));
        }
        if let Some(g) = sub.elements.first() {
            if g.p() != self.table.p() {
                return Err(Error::ModulusMismatch {
                    left: self.table.p(),
                    right: g.p(),
                });
            }
        }
        Ok(sub.fusion.iter().map(|&c| self.values[c].clone()).collect())
    }

    /// `Ind_H^G χ(g) = (|C_G(g)|/|H|) Σ_{h ∈ H, h ∼ g} χ(h)`, with `χ` given
    /// per element of `sub`.
    pub fn induce(table: Arc<ConjugacyTable>, sub: &SubgroupData, chi: &[Cyc]) -> Result<Self> {
        if chi.len() != sub.elements.len() {
            return Err(Error::LengthMismatch {
                expected: sub.elements.len(),
                got: chi.len(),
            });
        }
        if sub.fusion.len() != sub.elements.len() {
            return Err(Error::Precondition(format!("{} has no fusion data", sub.name)));
        }
        let mut builders: Vec<CycBuilder> = (0..table.len()).map(|_| CycBuilder::new()).collect();
        for (&c, x) in sub.fusion.iter().zip(chi) {
            builders[c].add(x);
        }
        let values = builders
            .into_iter()
            .zip(table.classes())
            .map(|(b, c)| {
                b.finish()
                    .scale(&Rational::new(c.centralizer_order as i64, sub.order as i64))
            })
            .collect();
        Ok(ClassFunction { table, values })
    }

    /// `Ind_H^G 1`.
    pub fn induce_trivial(table: Arc<ConjugacyTable>, sub: &SubgroupData) -> Result<Self> {
        let n = table.len();
        let counts = sub.class_counts(n);
        let values = counts
            .iter()
            .zip(table.classes())
            .map(|(&k, c)| {
                Cyc::from_rational(Rational::new((k * c.centralizer_order) as i64, sub.order as i64))
            })
            .collect();
        Ok(ClassFunction { table, values })
    }

    /// `m_i = ⟨φ, χ_i⟩`, required rational, with `Σ m_i χ_i = φ` checked.
    pub fn decompose_multiplicities(&self, irreducibles: &[ClassFunction]) -> Result<Vec<Rational>> {
        let ms = irreducibles
            .par_iter()
            .map(|chi| self.rational_inner_product(chi))
            .collect::<Result<Vec<_>>>()?;
        let terms: Vec<_> = ms.iter().cloned().zip(irreducibles).collect();
        let rebuilt = ClassFunction::linear_combination(self.table.clone(), &terms)?;
        if rebuilt != *self {
            return Err(Error::Consistency(
                "multiplicities do not reconstruct the class function".into(),
            ));
        }
        Ok(ms)
    }
}

impl<'a> Add<&'a ClassFunction> for &'a ClassFunction {
    type Output = ClassFunction;
    /// Panics on a table mismatch; see [`ClassFunction::checked_add`].
    fn add(self, rhs: &'a ClassFunction) -> ClassFunction {
        self.checked_add(rhs).expect("class functions on the same table")
    }
}

impl<'a> Sub<&'a ClassFunction> for &'a ClassFunction {
    type Output = ClassFunction;
    /// Panics on a table mismatch; see [`ClassFunction::checked_sub`].
    fn sub(self, rhs: &'a ClassFunction) -> ClassFunction {
        self.checked_sub(rhs).expect("class functions on the same table")
    }
}

impl Neg for &ClassFunction {
    type Output = ClassFunction;
    fn neg(self) -> ClassFunction {
        self.map(|v| -v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_conjugacy_table, build_subgroup, SubgroupName};

    fn table(p: u64) -> Arc<ConjugacyTable> {
        Arc::new(build_conjugacy_table(p).unwrap())
    }

    #[test]
    fn trivial_has_norm_one() {
        let t = table(7);
        assert_eq!(ClassFunction::trivial(t).norm(), Cyc::one());
    }

    #[test]
    fn borel_permutation_character_norm_two() {
        let t = table(7);
        let b = build_subgroup(&t, SubgroupName::Borel).unwrap();
        let ind = ClassFunction::induce_trivial(t.clone(), &b).unwrap();
        assert_eq!(ind.norm(), Cyc::from_integer(2));
        assert_eq!(*ind.degree(), Cyc::from_integer(8));
    }

    #[test]
    fn induction_degrees() {
        for p in [7u64, 11, 13] {
            let t = table(p);
            let order = t.group_order() as i64;
            for name in [SubgroupName::Z, SubgroupName::GxTilde, SubgroupName::GyTilde, SubgroupName::GzTilde] {
                let s = build_subgroup(&t, name).unwrap();
                let ind = ClassFunction::induce_trivial(t.clone(), &s).unwrap();
                assert_eq!(*ind.degree(), Cyc::from_integer(order / s.order as i64));
                let ones = vec![Cyc::one(); s.elements.len()];
                assert_eq!(ClassFunction::induce(t.clone(), &s, &ones).unwrap(), ind);
            }
        }
        let t = table(7);
        let gx = build_subgroup(&t, SubgroupName::GxTilde).unwrap();
        assert_eq!(*ClassFunction::induce_trivial(t, &gx).unwrap().degree(), Cyc::from_integer(84));
    }

    #[test]
    fn table_mismatch_is_an_error() {
        let a = ClassFunction::trivial(table(7));
        let b = ClassFunction::trivial(table(11));
        assert_eq!(a.inner_product(&b), Err(Error::TableMismatch { left: 7, right: 11 }));
        assert!(a.tensor(&b).is_err());
        assert!(ClassFunction::new(table(7), vec![Cyc::one(); 3]).is_err());
    }

    #[test]
    fn dual_and_tensor_basics() {
        let t = table(11);
        let one = ClassFunction::trivial(t.clone());
        assert_eq!(one.dual(), one);
        let f = ClassFunction::new(
            t.clone(),
            (0..t.len()).map(|i| Cyc::root_of_unity(t.len() as u64, i as i64).unwrap()).collect(),
        )
        .unwrap();
        assert_eq!(f.dual().dual(), f);
        assert_eq!(one.tensor(&f).unwrap(), f);
    }

    #[test]
    fn restrict_trivial() {
        let t = table(7);
        let z = build_subgroup(&t, SubgroupName::Z).unwrap();
        let r = ClassFunction::trivial(t).restrict(&z).unwrap();
        assert_eq!(r, vec![Cyc::one(), Cyc::one()]);
    }
}
