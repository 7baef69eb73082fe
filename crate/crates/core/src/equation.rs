//! Right-hand sides `f(u)` of equations `u_xy = f(u)`.

use std::fmt;

use serde::Serialize;

use crate::exactring::{fmt_rational, parse_quasipolynomial, rat, int, Quasipolynomial, Rational};
use crate::{Error, Result};

/// A nonzero exponential sum `f(u) = sum c * e^(a*u)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationSpec {
    /// Alias the spec was parsed from, if any.
    pub name: Option<String>,
    /// `(c, a)` pairs in ascending order of `a`.
    pub terms: Vec<(Rational, i64)>,
}

impl EquationSpec {
    fn from_qp(name: Option<&str>, q: &Quasipolynomial) -> Result<Self> {
        let terms = q.exponential_terms().ok_or_else(|| {
            Error::Unsupported(format!("the right-hand side must depend on u only, got {q}"))
        })?;
        if terms.is_empty() {
            return Err(Error::Unsupported("the right-hand side is identically zero".into()));
        }
        Ok(EquationSpec { name: name.map(str::to_string), terms })
    }

    pub fn liouville() -> Self {
        EquationSpec { name: Some("liouville".into()), terms: vec![(int(1), 1)] }
    }

    pub fn sinh_gordon() -> Self {
        EquationSpec { name: Some("sinh".into()), terms: vec![(rat(-1, 2), -1), (rat(1, 2), 1)] }
    }

    pub fn tzitzeica() -> Self {
        EquationSpec { name: Some("tzitzeica".into()), terms: vec![(int(1), -2), (int(1), 1)] }
    }

    pub fn rhs(&self) -> Quasipolynomial {
        Quasipolynomial::exponential_sum(self.terms.iter().cloned())
    }

    /// Exponential indices present in `f`, descending.
    pub fn exponents(&self) -> Vec<i64> {
        let mut a: Vec<i64> = self.terms.iter().map(|(_, a)| *a).collect();
        a.sort_unstable_by(|x, y| y.cmp(x));
        a
    }

    /// Label used in reports: the alias when known, else the canonical text.
    pub fn label(&self) -> String {
        self.name.clone().unwrap_or_else(|| self.rhs().to_string())
    }
}

impl fmt::Display for EquationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u_xy = {}", self.rhs())
    }
}

impl Serialize for EquationSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<(String, i64)> = self.terms.iter().map(|(c, a)| (fmt_rational(c), *a)).collect();
        serde_json::json!({ "name": self.name, "rhs": self.rhs().to_string(), "terms": terms }).serialize(s)
    }
}

/// Parses an equation right-hand side: an alias (`liouville`, `sinh`,
/// `sinh-gordon`, `tzitzeica`) or an exponential sum such as
/// `e^u + e^(-2u)`. An optional leading `u_xy =` is ignored.
pub fn parse_equation(text: &str) -> Result<EquationSpec> {
    let body = text.trim();
    let body = body
        .strip_prefix("u_xy")
        .and_then(|rest| rest.trim_start().strip_prefix('='))
        .map(str::trim)
        .unwrap_or(body);
    let lower = body.to_ascii_lowercase();
    match lower.as_str() {
        "liouville" => return Ok(EquationSpec::liouville()),
        "sinh" | "sinh-gordon" | "sinh u" | "sinh(u)" => return Ok(EquationSpec::sinh_gordon()),
        "tzitzeica" => return Ok(EquationSpec::tzitzeica()),
        "sin" | "sine-gordon" | "sin-gordon" | "sin u" | "sin(u)" => {
            return Err(Error::Unsupported(
                "sin u is rejected: its characteristic algebra is only defined over the reals \
                 through a real form with non-rational structure, use sinh instead"
                    .into(),
            ))
        }
        _ => {}
    }
    let q = parse_quasipolynomial(body)?;
    EquationSpec::from_qp(None, &q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aliases_and_sums() {
        assert_eq!(parse_equation("sinh").unwrap().terms, vec![(rat(-1, 2), -1), (rat(1, 2), 1)]);
        assert_eq!(parse_equation("e^u + e^(-2u)").unwrap().terms, vec![(int(1), -2), (int(1), 1)]);
        assert_eq!(parse_equation("e^u").unwrap().terms, vec![(int(1), 1)]);
        assert_eq!(parse_equation("u_xy = e^u").unwrap().terms, vec![(int(1), 1)]);
        assert_eq!(parse_equation("tzitzeica").unwrap().rhs(), parse_equation("e^(-2u)+e^u").unwrap().rhs());
        assert_eq!(parse_equation(" Liouville ").unwrap(), EquationSpec::liouville());
    }

    #[test]
    fn rejections() {
        assert!(matches!(parse_equation("sin"), Err(Error::Unsupported(_))));
        assert!(matches!(parse_equation("e^u u1"), Err(Error::Unsupported(_))));
        assert!(matches!(parse_equation("e^u - e^u"), Err(Error::Unsupported(_))));
        assert!(matches!(parse_equation("e^u +"), Err(Error::Parse(_))));
        assert!(parse_equation("2 sin(u)").is_err());
    }
}
