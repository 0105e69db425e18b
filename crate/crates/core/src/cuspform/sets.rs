//! The sets `A_*, …, E_*` of torus characters and the printed coefficient
//! table they index.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::chartable::TorusCharacter;
use crate::cyclotomic::Rational;
use crate::error::{Error, Result};
use crate::group::{GroupElement, Sl2Group, TorusType};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SetLabel {
    A,
    B,
    C,
    D,
    E,
}

impl SetLabel {
    pub const ALL: [SetLabel; 5] = [SetLabel::A, SetLabel::B, SetLabel::C, SetLabel::D, SetLabel::E];
}

impl fmt::Display for SetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// How "defined and (non-)trivial on both" is read when only one of
/// `G̃_x`, `G̃_y` embeds in the torus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Reading {
    /// `B` needs both subgroups embedded; otherwise `C`/`D` test each one.
    Primary,
    /// `B` takes every `θ ≠ 1` trivial on all embedded subgroups, even when
    /// only one embeds.
    Alternative,
}

impl Reading {
    pub const BOTH: [Reading; 2] = [Reading::Primary, Reading::Alternative];
}

impl fmt::Display for Reading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Reading::Primary => "primary",
            Reading::Alternative => "alternative",
        })
    }
}

impl FromStr for Reading {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "primary" => Ok(Reading::Primary),
            "alternative" => Ok(Reading::Alternative),
            _ => Err(Error::Precondition(format!("unknown reading {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ThetaSetLabel {
    pub label: SetLabel,
    pub torus: TorusType,
    pub reading: Reading,
}

/// Row name such as `A_s` or `E_a`.
pub fn cell_name(label: SetLabel, torus: TorusType) -> String {
    format!("{label}_{}", torus.symbol())
}

/// Triviality of `θ` on the conjugated copies of `G̃_x` and `G̃_y`, or
/// `None` where the subgroup does not embed in `θ`'s torus.
pub fn subgroup_triviality(g: &Sl2Group, theta: &TorusCharacter) -> (Option<bool>, Option<bool>) {
    let p = g.p();
    let torus = g.torus(theta.torus_type);
    let x = GroupElement::from_rows(p, [[0, 1], [-1, 0]]).expect("in SL2");
    let y = -GroupElement::from_rows(p, [[0, 1], [-1, -1]]).expect("in SL2");
    let test = |gen: GroupElement, (ty, h): (TorusType, GroupElement)| {
        (ty == theta.torus_type).then(|| {
            let l = torus
                .discrete_log(&gen.conjugate_by(&h))
                .expect("witness conjugates into the torus");
            theta.k * l % theta.order == 0
        })
    };
    (test(x, g.gx_embedding), test(y, g.gy_embedding))
}

pub fn classify_theta(g: &Sl2Group, theta: &TorusCharacter, reading: Reading) -> Result<ThetaSetLabel> {
    if !theta.is_trivial_on_z() {
        return Err(Error::Precondition(format!("{theta} is not trivial on Z")));
    }
    let (tx, ty) = subgroup_triviality(g, theta);
    let label = label_from_triviality(theta.is_trivial(), tx, ty, reading);
    Ok(ThetaSetLabel {
        label,
        torus: theta.torus_type,
        reading,
    })
}

fn label_from_triviality(is_one: bool, tx: Option<bool>, ty: Option<bool>, reading: Reading) -> SetLabel {
    if is_one {
        return SetLabel::E;
    }
    let trivial_x = tx == Some(true);
    let trivial_y = ty == Some(true);
    let b = match reading {
        Reading::Primary => trivial_x && trivial_y,
        Reading::Alternative => {
            (tx.is_some() || ty.is_some()) && tx != Some(false) && ty != Some(false)
        }
    };
    if b {
        SetLabel::B
    } else if trivial_x {
        SetLabel::C
    } else if trivial_y {
        SetLabel::D
    } else {
        SetLabel::A
    }
}

pub const RESIDUES: [u64; 4] = [1, 5, 7, 11];

/// The printed table entry `c = a·p + b` for one row and residue column.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub a: Rational,
    pub b: Rational,
}

impl Cell {
    /// `sign·(p − r)/12 + offset`.
    pub fn shifted(sign: i64, r: u64, offset: i64) -> Self {
        Cell {
            a: Rational::new(sign, 12),
            b: &Rational::new(-sign * r as i64, 12) + &Rational::from(offset),
        }
    }

    pub fn at(&self, p: u64) -> Rational {
        &(&self.a * &Rational::from(p)) + &self.b
    }

    /// Renders as `(p−r)/12 + k` style when the slope is `±1/12`, otherwise
    /// as `a·p + b`.
    pub fn render(&self, r: u64) -> String {
        let twelve = Rational::from(12);
        let slope = (&self.a * &twelve).to_i64();
        if let Some(sign @ (1 | -1)) = slope {
            let offset = &self.b + &Rational::new(sign * r as i64, 12);
            if let Some(off) = offset.to_i64() {
                let head = format!("{}(p−{r})/12", if sign < 0 { "−" } else { "" });
                return match off {
                    0 => head,
                    o if o > 0 => format!("{head} + {o}"),
                    o => format!("{head} − {}", -o),
                };
            }
        }
        format!("({})·p + ({})", self.a, self.b)
    }

    pub fn in_twelfths(&self) -> bool {
        self.a.is_twelfth() && self.b.is_twelfth()
    }
}

/// The coefficient table as printed, rows `A_s … E_s, A_a … E_a`.
pub fn paper_cell(r: u64, label: SetLabel, torus: TorusType) -> Cell {
    use SetLabel::*;
    use TorusType::*;
    let offset = match (r, torus, label) {
        (1, Split, A) => 1,
        (1, Split, B) => -2,
        (1, Split, C | D | E) => -1,
        (1, Nonsplit, E) => 1,
        (1, Nonsplit, _) => 0,
        (5, Split, C) => -1,
        (5, Split, _) => 0,
        (5, Nonsplit, A | B | C) => 1,
        (5, Nonsplit, D | E) => 0,
        (7, Split, D) => -1,
        (7, Split, _) => 0,
        (7, Nonsplit, C) => -1,
        (7, Nonsplit, _) => 0,
        (11, Split, E) => 1,
        (11, Split, _) => 0,
        (11, Nonsplit, A) => 0,
        (11, Nonsplit, B) => -2,
        (11, Nonsplit, C | D | E) => -1,
        _ => panic!("residue {r} is not a unit mod 12"),
    };
    let sign = match torus {
        Split => 1,
        Nonsplit => -1,
    };
    Cell::shifted(sign, r, offset)
}

/// The printed coefficient for every row at a given prime.
pub fn paper_coefficients(p: u64) -> Vec<((SetLabel, TorusType), Rational)> {
    let r = p % 12;
    TorusType::BOTH
        .into_iter()
        .flat_map(|t| SetLabel::ALL.into_iter().map(move |l| (l, t)))
        .map(|(l, t)| ((l, t), paper_cell(r, l, t).at(p)))
        .collect()
}

pub fn paper_coefficient(p: u64, label: SetLabel, torus: TorusType) -> Rational {
    paper_cell(p % 12, label, torus).at(p)
}

/// Markdown rendering of a 10×4 table of cells indexed like [`paper_cell`];
/// missing cells print as `?`.
pub fn render_table(cell: impl Fn(u64, SetLabel, TorusType) -> Option<Cell>) -> String {
    let mut out = String::from("| θ \\ p | 1 mod 12 | 5 mod 12 | 7 mod 12 | 11 mod 12 |\n");
    out.push_str("|---|---|---|---|---|\n");
    for torus in TorusType::BOTH {
        for label in SetLabel::ALL {
            out.push_str(&format!("| {} |", cell_name(label, torus)));
            for r in RESIDUES {
                let text = cell(r, label, torus).map_or_else(|| "?".to_string(), |c| c.render(r));
                out.push_str(&format!(" {text} |"));
            }
            out.push('\n');
        }
    }
    out
}

/// The printed table in [`render_table`] form.
pub fn render_paper_table() -> String {
    render_table(|r, l, t| Some(paper_cell(r, l, t)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::is_prime;

    #[test]
    fn printed_examples() {
        assert_eq!(paper_coefficient(13, SetLabel::A, TorusType::Split), Rational::from(2));
        assert_eq!(paper_coefficient(23, SetLabel::A, TorusType::Split), Rational::from(1));
        assert_eq!(paper_coefficient(7, SetLabel::C, TorusType::Nonsplit), Rational::from(-1));
        assert_eq!(paper_cell(1, SetLabel::A, TorusType::Split).render(1), "(p−1)/12 + 1");
        assert_eq!(paper_cell(7, SetLabel::C, TorusType::Nonsplit).render(7), "−(p−7)/12 − 1");
        assert_eq!(paper_cell(11, SetLabel::A, TorusType::Split).render(11), "(p−11)/12");
    }

    #[test]
    fn printed_cells_are_twelfths() {
        for r in RESIDUES {
            for l in SetLabel::ALL {
                for t in TorusType::BOTH {
                    assert!(paper_cell(r, l, t).in_twelfths());
                }
            }
        }
    }

    #[test]
    fn rendering_has_ten_rows() {
        let md = render_paper_table();
        assert_eq!(md.lines().count(), 12);
        assert!(md.contains("| A_s | (p−1)/12 + 1 | (p−5)/12 | (p−7)/12 | (p−11)/12 |"));
    }

    #[test]
    fn examples_of_classification() {
        let g = Sl2Group::new(7).unwrap();
        let alpha = TorusCharacter::alpha(&g.nonsplit);
        assert_eq!(classify_theta(&g, &alpha, Reading::Primary).unwrap().label, SetLabel::C);
        assert_eq!(classify_theta(&g, &alpha, Reading::Alternative).unwrap().label, SetLabel::B);

        let g = Sl2Group::new(11).unwrap();
        let alpha = TorusCharacter::new(TorusType::Nonsplit, 12, 6);
        assert_eq!(classify_theta(&g, &alpha, Reading::Primary).unwrap().label, SetLabel::D);

        for p in [7u64, 13, 17] {
            let g = Sl2Group::new(p).unwrap();
            for ty in TorusType::BOTH {
                let one = TorusCharacter::new(ty, ty.order(p), 0);
                assert_eq!(classify_theta(&g, &one, Reading::Primary).unwrap().label, SetLabel::E);
            }
        }
        let g = Sl2Group::new(7).unwrap();
        assert!(classify_theta(&g, &TorusCharacter::new(TorusType::Split, 6, 1), Reading::Primary).is_err());
    }

    /// The witness-based test agrees with divisibility in the cyclic torus.
    #[test]
    fn triviality_matches_subgroup_orders() {
        for p in (7..60).filter(|&p| is_prime(p)) {
            let g = Sl2Group::new(p).unwrap();
            for ty in TorusType::BOTH {
                let n = ty.order(p);
                for k in 0..n {
                    let th = TorusCharacter::new(ty, n, k);
                    let (tx, ty_) = subgroup_triviality(&g, &th);
                    assert_eq!(tx, (g.gx_embedding.0 == ty).then(|| th.is_trivial_on_order(4)));
                    assert_eq!(ty_, (g.gy_embedding.0 == ty).then(|| th.is_trivial_on_order(6)));
                }
            }
        }
    }
}
