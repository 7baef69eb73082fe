use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::json;

use crate::exactring::{JetMonomial, JetPolynomial, Quasipolynomial, Rational};
use crate::jetfield::{total_derivative, JetField};
use crate::linalg::nullspace;
use crate::{Error, Result};

/// All monomials in `u1, u2, ...` of weight exactly `w`, in graded order.
pub fn monomials_of_weight(w: u32) -> Vec<JetMonomial> {
    fn parts(rest: u32, max: u32, acc: &mut Vec<(u32, u32)>, out: &mut Vec<JetMonomial>) {
        if rest == 0 {
            out.push(JetMonomial::from_exponents(acc.iter().copied()));
            return;
        }
        for part in (1..=max.min(rest)).rev() {
            acc.push((part, 1));
            parts(rest - part, part, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    parts(w, w, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Nonconstant `u`-free polynomials of weight at most `max_weight`
/// annihilated by `X(f)`, as a basis of the solution space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralSpace {
    pub max_weight: u32,
    pub order: usize,
    pub candidates: usize,
    pub basis: Vec<JetPolynomial>,
}

impl Serialize for IntegralSpace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        json!({
            "max_weight": self.max_weight,
            "order": self.order,
            "candidates": self.candidates,
            "dimension": self.basis.len(),
            "basis": self.basis.iter().map(ToString::to_string).collect::<Vec<_>>(),
        })
        .serialize(s)
    }
}

/// Solves `X(f) w = 0` over `u`-free polynomials of weight `1..=max_weight`.
/// Each `e^(a*u)` component of the image must vanish separately, which the
/// coefficient vectors keyed by `(a, monomial)` enforce.
pub fn find_x_integrals(f: &Quasipolynomial, max_weight: u32, order: usize) -> Result<IntegralSpace> {
    if order < max_weight as usize + 1 {
        return Err(Error::OrderTooSmall {
            order,
            reason: format!("weight {max_weight} needs order at least {}", max_weight + 1),
        });
    }
    let xf = JetField::xf(f, order)?;
    let monomials: Vec<JetMonomial> = (1..=max_weight).flat_map(monomials_of_weight).collect();
    let images: Vec<Vec<((i64, JetMonomial), Rational)>> = monomials
        .iter()
        .map(|m| {
            let w = Quasipolynomial::from_poly(JetPolynomial::monomial(m.clone(), Rational::one()));
            let image = xf.apply(&w).expect("order covers every candidate variable");
            image.terms().map(|(a, m, c)| ((a, m.clone()), c.clone())).collect()
        })
        .collect();
    let basis = nullspace(&images)
        .into_iter()
        .map(|v| {
            let poly = JetPolynomial::from_terms(monomials.iter().cloned().zip(v).filter(|(_, c)| !c.is_zero()));
            normalize_leading(poly)
        })
        .collect();
    Ok(IntegralSpace { max_weight, order, candidates: monomials.len(), basis })
}

/// Scales so that the coefficient of the largest monomial is one.
fn normalize_leading(p: JetPolynomial) -> JetPolynomial {
    match p.terms().last().map(|(_, c)| c.clone()) {
        Some(c) => p.scale(&c.recip()),
        None => p,
    }
}

/// Result of `D X(f) phi - f'(u) phi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefiningEquationCheck {
    pub phi: JetPolynomial,
    pub residual: Quasipolynomial,
}

impl DefiningEquationCheck {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

impl Serialize for DefiningEquationCheck {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        json!({ "phi": self.phi.to_string(), "holds": self.holds(), "residual": self.residual.to_string() }).serialize(s)
    }
}

/// Evaluates the defining equation of higher symmetries for `phi`.
pub fn check_defining_equation(f: &Quasipolynomial, phi: &JetPolynomial, order: usize) -> Result<DefiningEquationCheck> {
    let need = phi.max_var() as usize + 2;
    if order < need {
        return Err(Error::OrderTooSmall { order, reason: format!("phi needs order at least {need}") });
    }
    let xf = JetField::xf(f, order)?;
    let phi_q = Quasipolynomial::from_poly(phi.clone());
    let x_phi = xf.apply(&phi_q).expect("order covers phi");
    let residual = &total_derivative(&x_phi) - &(&f.derive_u() * &phi_q);
    Ok(DefiningEquationCheck { phi: phi.clone(), residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::parse_quasipolynomial;

    fn qp(s: &str) -> Quasipolynomial {
        parse_quasipolynomial(s).unwrap()
    }

    fn poly(s: &str) -> JetPolynomial {
        qp(s).part(0)
    }

    #[test]
    fn partitions() {
        assert_eq!(monomials_of_weight(4).len(), 5);
        assert_eq!(monomials_of_weight(6).len(), 11);
        assert!(monomials_of_weight(3).iter().all(|m| m.weight() == 3));
    }

    #[test]
    fn liouville_integral() {
        let sp = find_x_integrals(&qp("e^u"), 2, 3).unwrap();
        assert_eq!(sp.basis.len(), 1);
        assert!(sp.basis[0].scale(&crate::exactring::int(-1)) == poly("1/2 u1^2 - u2") || sp.basis[0] == poly("u2 - 1/2 u1^2"));
        assert!(find_x_integrals(&qp("e^u"), 1, 2).unwrap().basis.is_empty());
    }

    #[test]
    fn liouville_higher_integrals_are_generated_by_w2() {
        // weight 3 adds D(w2) = u1 u2 - u3
        let sp = find_x_integrals(&qp("e^u"), 3, 4).unwrap();
        assert_eq!(sp.basis.len(), 2);
    }

    #[test]
    fn sinh_has_no_small_integrals() {
        assert!(find_x_integrals(&qp("1/2 e^u - 1/2 e^(-u)"), 6, 7).unwrap().basis.is_empty());
    }

    #[test]
    fn defining_equation() {
        let f = qp("1/2 e^u - 1/2 e^(-u)");
        assert!(check_defining_equation(&f, &poly("u3 - 1/2 u1^3"), 5).unwrap().holds());
        let bad = check_defining_equation(&f, &poly("u2"), 4).unwrap();
        assert!(!bad.holds());
        assert_eq!(bad.residual, &f * &qp("u1^2"));
        assert!(check_defining_equation(&f, &poly("u3"), 4).is_err());
    }
}
