//! Text form of polynomials: terms `c*x^i`, `x^i`, `c*x`, `x`, `c` joined by
//! `+`, where `c` is a field element encoding.

use std::fmt;

use super::Poly;
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElem};

impl fmt::Display for Poly {
    /// Canonical form: descending degree, zero terms omitted, unit
    /// coefficients omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, *c == FieldElem::ONE) {
                (0, _) => write!(f, "{c}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{c}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{c}*x^{i}")?,
            }
        }
        Ok(())
    }
}

fn parse_term(field: &Field, term: &str) -> Result<(FieldElem, usize)> {
    let bad = || Error::Parse(format!("invalid term '{term}'"));
    let (coeff, mono) = match term.split_once('*') {
        Some((c, m)) => (Some(c), Some(m)),
        None if term.starts_with('x') => (None, Some(term)),
        None => (Some(term), None),
    };
    let c = match coeff {
        Some(c) => field.elem(c.parse::<u64>().map_err(|_| bad())?)?,
        None => FieldElem::ONE,
    };
    let exp = match mono {
        None => 0,
        Some("x") => 1,
        Some(m) => m
            .strip_prefix("x^")
            .ok_or_else(bad)?
            .parse::<usize>()
            .map_err(|_| bad())?,
    };
    Ok((c, exp))
}

/// Parses the text form; terms may come in any order and repeated powers are
/// summed.
pub fn parse_poly(field: &Field, s: &str) -> Result<Poly> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut coeffs: Vec<FieldElem> = Vec::new();
    for term in compact.split('+') {
        let (c, e) = parse_term(field, term)?;
        if coeffs.len() <= e {
            coeffs.resize(e + 1, FieldElem::ZERO);
        }
        coeffs[e] = field.add(coeffs[e], c);
    }
    Ok(Poly::new(field, coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldSpec;

    #[test]
    fn canonical_printing() {
        let f5 = FieldSpec::prime(5).unwrap();
        let f = parse_poly(&f5, "3 + x + 2*x^4 + x^9").unwrap();
        assert_eq!(f.to_string(), "x^9+2*x^4+x+3");
        assert_eq!(parse_poly(&f5, "x+x").unwrap().to_string(), "2*x");
        assert_eq!(parse_poly(&f5, "0").unwrap().to_string(), "0");
        assert_eq!(parse_poly(&f5, "1*x^2+0*x").unwrap().to_string(), "x^2");
    }

    #[test]
    fn rejects_garbage() {
        let f5 = FieldSpec::prime(5).unwrap();
        assert!(parse_poly(&f5, "").is_err());
        assert!(parse_poly(&f5, "x^").is_err());
        assert!(parse_poly(&f5, "y^2").is_err());
        assert!(parse_poly(&f5, "7*x").is_err());
        assert!(parse_poly(&f5, "x^2++x").is_err());
    }
}
