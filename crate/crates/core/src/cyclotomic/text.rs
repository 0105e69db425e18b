//! Text form `N=<order>: c0 + c1*z^e1 - c2*z^e2 ...` used in JSON documents.
//!
//! `z` stands for `ζ_N = exp(2πi/N)`. The printer emits canonical terms in
//! increasing exponent order; the parser accepts any term list (repeated or
//! non-basis exponents included) and reduces it.

use std::fmt;
use std::str::FromStr;

use super::cyc::Cyc;
use super::rational::Rational;
use crate::error::Error;

impl fmt::Display for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N={}: ", self.order())?;
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().iter().enumerate() {
            let mag = if i == 0 {
                c.clone()
            } else {
                write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
                c.abs()
            };
            if *e == 0 {
                write!(f, "{mag}")?;
            } else {
                write!(f, "{mag}*z^{e}")?;
            }
        }
        Ok(())
    }
}

fn parse_term(tok: &str, input: &str) -> Result<(i64, Rational), Error> {
    let err = |reason: &str| Error::ParseCyc {
        input: input.to_string(),
        reason: reason.to_string(),
    };
    let (coef, exp) = match tok.split_once("z^") {
        Some((head, e)) => {
            let head = head.strip_suffix('*').unwrap_or(head);
            let coef = match head {
                "" => Rational::ONE,
                "-" => -Rational::ONE,
                h => h.parse().map_err(|_| err("bad coefficient"))?,
            };
            let e: i64 = e.parse().map_err(|_| err("bad exponent"))?;
            (coef, e)
        }
        None => (tok.parse().map_err(|_| err("bad term"))?, 0),
    };
    Ok((exp, coef))
}

impl FromStr for Cyc {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| Error::ParseCyc {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let rest = input
            .trim()
            .strip_prefix("N=")
            .ok_or_else(|| err("missing N= header"))?;
        let (n, body) = rest.split_once(':').ok_or_else(|| err("missing ':'"))?;
        let n: u64 = n.trim().parse().map_err(|_| err("bad order"))?;
        if n == 0 {
            return Err(Error::ZeroOrder);
        }
        let mut tokens = body.split_whitespace();
        let mut terms = Vec::new();
        let first = tokens.next().ok_or_else(|| err("empty body"))?;
        terms.push(parse_term(first, input)?);
        while let Some(op) = tokens.next() {
            let tok = tokens.next().ok_or_else(|| err("dangling operator"))?;
            let (e, c) = parse_term(tok, input)?;
            match op {
                "+" => terms.push((e, c)),
                "-" => terms.push((e, -c)),
                _ => return Err(err("expected '+' or '-'")),
            }
        }
        Cyc::from_terms(n, terms)
    }
}

impl serde::Serialize for Cyc {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Cyc {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prints_canonical_terms() {
        let x = &Cyc::root_of_unity(8, 3).unwrap() - &Cyc::from_rational(Rational::new(1, 2));
        assert_eq!(x.to_string(), "N=8: -1/2 + 1*z^3");
        assert_eq!(Cyc::zero().to_string(), "N=1: 0");
        assert_eq!(Cyc::from_integer(-4).to_string(), "N=1: -4");
    }

    #[test]
    fn parses_noncanonical_input() {
        let x: Cyc = "N=3: 1 + z^1 + 1*z^2".parse().unwrap();
        assert!(x.is_zero());
        let y: Cyc = "N=12: -z^6 + 2".parse().unwrap();
        assert_eq!(y, Cyc::from_integer(3));
        let w: Cyc = "N=8: -1/2 - 3/4*z^9".parse().unwrap();
        assert_eq!(w.to_string(), "N=8: -1/2 - 3/4*z^1");
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["3: 1", "N=0: 1", "N=5 1", "N=5: 1 +", "N=5: 1 * z^2", "N=5: a"] {
            assert!(bad.parse::<Cyc>().is_err(), "{bad}");
        }
    }
}
