//! Two-component exponential systems `u^a_xy = exp(a_a1 u^1 + a_a2 u^2)`.
//!
//! Jet variables of both components share one polynomial ring: `u^1_k` is
//! stored as variable `2k - 1` and `u^2_k` as variable `2k`.

use std::fmt;

use serde::Serialize;
use serde_json::json;

use crate::bell::complete_bell;
use crate::exactring::{int, JetPolynomial, Rational};
use crate::{Error, Result};

/// Variable index of `u^component_k`, `component` in `{1, 2}`.
pub fn system_var(component: u32, k: u32) -> u32 {
    assert!(component == 1 || component == 2);
    2 * k - 2 + component
}

/// The fields `X_a = sum_k B_{k-1}(rho_a^1, ..., rho_a^{k-1}) d/du^a_k` with
/// `rho_a^i = a_a1 u^1_i + a_a2 u^2_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpSystem2D {
    pub matrix: [[Rational; 2]; 2],
    pub order: usize,
    /// `slots[a][k - 1]` is the coefficient of `d/du^{a+1}_k`.
    slots: [Vec<JetPolynomial>; 2],
}

impl ExpSystem2D {
    pub fn field_slot(&self, component: usize, k: usize) -> &JetPolynomial {
        &self.slots[component - 1][k - 1]
    }

    /// `X_component(w)`.
    pub fn apply(&self, component: usize, w: &JetPolynomial) -> Result<JetPolynomial> {
        let mut out = JetPolynomial::zero();
        let c = component as u32;
        for k in 1..=self.order as u32 {
            let dw = w.derive(system_var(c, k));
            if !dw.is_zero() {
                out = &out + &(&dw * self.field_slot(component, k as usize));
            }
        }
        let top = w.max_var();
        if top > system_var(2, self.order as u32) {
            return Err(Error::OrderTooSmall { order: self.order, reason: format!("variable {top} is beyond the truncation") });
        }
        Ok(out)
    }
}

/// `rho_a^i` for row `a` of the matrix.
fn rho(matrix: &[[Rational; 2]; 2], a: usize, i: u32) -> JetPolynomial {
    let mut p = JetPolynomial::zero();
    p.add_term(crate::exactring::JetMonomial::var(system_var(1, i)), matrix[a][0].clone());
    p.add_term(crate::exactring::JetMonomial::var(system_var(2, i)), matrix[a][1].clone());
    p
}

pub fn build_exp_system(matrix: [[Rational; 2]; 2], order: usize) -> ExpSystem2D {
    assert!(order >= 1);
    let slots = [0usize, 1].map(|a| {
        (1..=order)
            .map(|k| complete_bell(k - 1).substitute(|i| rho(&matrix, a, i)))
            .collect::<Vec<_>>()
    });
    ExpSystem2D { matrix, order, slots }
}

/// The second-order integral
/// `2 a21 u^1_2 + 2 a12 u^2_2 - a11 a21 (u^1_1)^2 - 2 a12 a21 u^1_1 u^2_1 - a22 a12 (u^2_1)^2`.
pub fn w2_integral(matrix: &[[Rational; 2]; 2]) -> JetPolynomial {
    let [[a11, a12], [a21, a22]] = matrix;
    let v = |c, k| JetPolynomial::var(system_var(c, k));
    let two = int(2);
    let terms = [
        v(1, 2).scale(&(&two * a21)),
        v(2, 2).scale(&(&two * a12)),
        (&v(1, 1) * &v(1, 1)).scale(&-(a11 * a21)),
        (&v(1, 1) * &v(2, 1)).scale(&-(&two * a12 * a21)),
        (&v(2, 1) * &v(2, 1)).scale(&-(a22 * a12)),
    ];
    terms.iter().fold(JetPolynomial::zero(), |acc, t| &acc + t)
}

/// Images of `w2` under both fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct W2Check {
    pub matrix: [[Rational; 2]; 2],
    pub w2: JetPolynomial,
    pub images: [JetPolynomial; 2],
}

impl W2Check {
    pub fn holds(&self) -> bool {
        self.images.iter().all(JetPolynomial::is_zero)
    }
}

impl Serialize for W2Check {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let m: Vec<Vec<String>> =
            self.matrix.iter().map(|r| r.iter().map(crate::exactring::fmt_rational).collect()).collect();
        json!({
            "matrix": m,
            "w2": self.w2.to_string(),
            "variables": "u^1_k = u{2k-1}, u^2_k = u{2k}",
            "x1_w2": self.images[0].to_string(),
            "x2_w2": self.images[1].to_string(),
            "holds": self.holds(),
        })
        .serialize(s)
    }
}

pub fn check_w2_integral(sys: &ExpSystem2D) -> Result<W2Check> {
    let w2 = w2_integral(&sys.matrix);
    let images = [sys.apply(1, &w2)?, sys.apply(2, &w2)?];
    Ok(W2Check { matrix: sys.matrix.clone(), w2, images })
}

/// Parses `"a11,a12,a21,a22"` (rationals, commas or whitespace).
pub fn parse_matrix(text: &str) -> Result<[[Rational; 2]; 2]> {
    let parts: Vec<&str> = text.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).collect();
    if parts.len() != 4 {
        return Err(Error::InvalidArgument(format!("expected four matrix entries, got {}", parts.len())));
    }
    let mut v = Vec::with_capacity(4);
    for p in parts {
        let r: Rational = p
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("matrix entry {p:?} is not a rational number")))?;
        v.push(r);
    }
    Ok([[v[0].clone(), v[1].clone()], [v[2].clone(), v[3].clone()]])
}

/// The six sample matrices: the affine and finite Cartan matrices of rank
/// two, the decoupled pair and the rank-two non-simply-laced types.
pub fn sample_matrices() -> Vec<[[Rational; 2]; 2]> {
    [[2, -2, -2, 2], [2, -4, -1, 2], [2, 0, 0, 2], [2, -1, -1, 2], [2, -2, -1, 2], [2, -3, -1, 2]]
        .iter()
        .map(|m| [[int(m[0]), int(m[1])], [int(m[2]), int(m[3])]])
        .collect()
}

impl fmt::Display for ExpSystem2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.matrix;
        write!(f, "A = [[{}, {}], [{}, {}]], order {}", m[0][0], m[0][1], m[1][0], m[1][1], self.order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_slots() {
        let sys = build_exp_system(parse_matrix("2,-1,-1,2").unwrap(), 3);
        assert_eq!(sys.field_slot(1, 1).to_string(), "1");
        // rho_1^1 = 2 u^1_1 - u^2_1 = 2 u1 - u2
        assert_eq!(sys.field_slot(1, 2).to_string(), "2 * u1 + -1 * u2");
    }

    #[test]
    fn w2_is_an_integral_for_all_samples() {
        for m in sample_matrices() {
            let sys = build_exp_system(m, 4);
            let c = check_w2_integral(&sys).unwrap();
            assert!(c.holds(), "{sys}");
        }
    }

    #[test]
    fn perturbed_w2_is_not() {
        let sys = build_exp_system(parse_matrix("2 -1 -1 2").unwrap(), 4);
        let w = &w2_integral(&sys.matrix) + &JetPolynomial::var(system_var(1, 2));
        assert!(!sys.apply(1, &w).unwrap().is_zero());
    }

    #[test]
    fn matrix_parsing() {
        assert_eq!(parse_matrix("1/2, 0, 0, 3").unwrap()[0][0], crate::exactring::rat(1, 2));
        assert!(parse_matrix("1,2,3").is_err());
        assert!(parse_matrix("1,2,x,4").is_err());
    }
}
