//! Re-deriving `c = a·p + b` per residue class from computed coefficients.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::sets::{Cell, SetLabel, RESIDUES};
use super::DecompositionResult;
use crate::cyclotomic::Rational;
use crate::group::TorusType;

/// The line through the first two points with distinct `p`.
pub fn fit_cell(points: &[(u64, Rational)]) -> Option<Cell> {
    let (p0, c0) = points.first()?;
    let (p1, c1) = points.iter().find(|(p, _)| p != p0)?;
    let a = &(c1 - c0) / &Rational::from(*p1 as i64 - *p0 as i64);
    let b = c0 - &(&a * &Rational::from(*p0));
    Some(Cell { a, b })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearityRow {
    pub residue: u64,
    pub label: SetLabel,
    pub torus: TorusType,
    /// `(p, c)` at each prime where the set is nonempty.
    pub points: Vec<(u64, Rational)>,
    pub fitted: Option<Cell>,
    /// Primes where the set's members do not all share one coefficient.
    pub not_constant_at: Vec<u64>,
    /// Primes beyond the first two where the fit is wrong.
    pub mispredicted_at: Vec<u64>,
    pub in_twelfths: bool,
}

impl LinearityRow {
    /// The set is empty at every prime considered.
    pub fn vacuous(&self) -> bool {
        self.points.is_empty()
    }

    /// Nonempty at fewer than two primes, so no line is pinned down.
    pub fn undetermined(&self) -> bool {
        !self.vacuous() && self.fitted.is_none()
    }

    pub fn passed(&self) -> bool {
        self.not_constant_at.is_empty()
            && self.mispredicted_at.is_empty()
            && (self.vacuous() || (self.fitted.is_some() && self.in_twelfths))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearityReport {
    pub rows: Vec<LinearityRow>,
}

impl LinearityReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(LinearityRow::passed)
    }

    pub fn row(&self, residue: u64, label: SetLabel, torus: TorusType) -> Option<&LinearityRow> {
        self.rows
            .iter()
            .find(|r| r.residue == residue && r.label == label && r.torus == torus)
    }
}

/// Fits every (residue, set) row from the two smallest primes where the set
/// is nonempty and checks the prediction at the others.
pub fn linearity_report(results: &[DecompositionResult]) -> LinearityReport {
    let mut sorted: Vec<&DecompositionResult> = results.iter().collect();
    sorted.sort_by_key(|r| r.p);
    let mut rows = Vec::new();
    for residue in RESIDUES {
        for torus in TorusType::BOTH {
            for label in SetLabel::ALL {
                let mut points = Vec::new();
                let mut not_constant_at = Vec::new();
                for r in sorted.iter().filter(|r| r.p % 12 == residue) {
                    let values: Vec<&Rational> = r
                        .coefficients
                        .iter()
                        .filter(|e| e.torus == torus && e.set_label == label)
                        .map(|e| &e.c)
                        .collect();
                    if let Some(first) = values.first() {
                        if values.iter().any(|v| v != first) {
                            not_constant_at.push(r.p);
                        }
                        points.push((r.p, (*first).clone()));
                    }
                }
                let fitted = fit_cell(&points);
                let mispredicted_at = match &fitted {
                    Some(cell) => points
                        .iter()
                        .filter(|(p, c)| cell.at(*p) != *c)
                        .map(|(p, _)| *p)
                        .collect(),
                    None => Vec::new(),
                };
                let in_twelfths = fitted.as_ref().is_some_and(Cell::in_twelfths);
                rows.push(LinearityRow {
                    residue,
                    label,
                    torus,
                    points,
                    fitted,
                    not_constant_at,
                    mispredicted_at,
                    in_twelfths,
                });
            }
        }
    }
    LinearityReport { rows }
}

/// The fitted table; a set that is empty at every prime takes the `A` row
/// of its torus and residue.
pub fn computed_table(report: &LinearityReport) -> BTreeMap<(u64, SetLabel, TorusType), Option<Cell>> {
    let mut out = BTreeMap::new();
    for row in &report.rows {
        let cell = if row.vacuous() {
            report
                .row(row.residue, SetLabel::A, row.torus)
                .and_then(|a| a.fitted.clone())
        } else {
            row.fitted.clone()
        };
        out.insert((row.residue, row.label, row.torus), cell);
    }
    out
}
