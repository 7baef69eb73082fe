//! Truncated first-order differential operators on the jet space of one
//! dependent variable.
//!
//! A [`JetField`] is `A d/du + sum_{j=1}^{N} Q_j d/du_j` where every stored
//! coefficient is exact. Brackets only keep slots whose computation never
//! needs a slot beyond the operands' truncation order, so every retained
//! coefficient is a statement about the untruncated operator.
//!
//! Bigrading convention: a field has bigrading `(d, r)` when slot `j` is
//! `e^(r*u)` times a polynomial of weight `j - d` and the `d/du` slot is
//! `e^(r*u)` times a polynomial of weight `-d`.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::bell::d_power_exp;
use crate::exactring::{JetMonomial, JetPolynomial, Quasipolynomial, Rational};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetField {
    u_slot: Quasipolynomial,
    slots: Vec<Quasipolynomial>,
    d_count: usize,
}

/// Operator bigrading `(d, r)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Bigrading {
    pub d: i64,
    pub r: i64,
}

impl Bigrading {
    pub fn new(d: i64, r: i64) -> Self {
        Bigrading { d, r }
    }
}

impl std::ops::Add for Bigrading {
    type Output = Bigrading;
    fn add(self, o: Bigrading) -> Bigrading {
        Bigrading::new(self.d + o.d, self.r + o.r)
    }
}

impl fmt::Display for Bigrading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.d, self.r)
    }
}

/// Outcome of a truncated zero test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroStatus {
    /// The `d/du` slot and slots `1..=n` all vanish.
    ZeroUpTo(usize),
    /// First nonvanishing slot; `0` denotes the `d/du` slot.
    Nonzero(usize),
}

impl ZeroStatus {
    pub fn is_zero(self) -> bool {
        matches!(self, ZeroStatus::ZeroUpTo(_))
    }
}

impl fmt::Display for ZeroStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZeroStatus::ZeroUpTo(n) => write!(f, "ZERO_UP_TO({n})"),
            ZeroStatus::Nonzero(j) => write!(f, "NONZERO({j})"),
        }
    }
}

/// Coordinate of a coefficient vector: (slot, exponential index, monomial),
/// with slot 0 standing for `d/du`.
pub type FieldKey = (usize, i64, JetMonomial);

/// Total derivative `D = u1 d/du + sum u_{k+1} d/du_k` applied to `q`.
pub fn total_derivative(q: &Quasipolynomial) -> Quasipolynomial {
    let mut out = q.derive_u().mul_poly(&JetPolynomial::var(1));
    for k in jet_vars(q) {
        out = out + q.derive_uk(k).mul_poly(&JetPolynomial::var(k + 1));
    }
    out
}

fn jet_vars(q: &Quasipolynomial) -> BTreeSet<u32> {
    q.terms().flat_map(|(_, m, _)| m.iter().map(|(i, _)| i)).collect()
}

impl JetField {
    pub fn new(u_slot: Quasipolynomial, slots: Vec<Quasipolynomial>) -> Result<Self> {
        if slots.is_empty() {
            return Err(Error::OrderTooSmall { order: 0, reason: "a field needs at least one slot".into() });
        }
        Ok(JetField { u_slot, slots, d_count: 0 })
    }

    /// The total derivative `D`, bigrading `(-1, 0)`.
    pub fn total_derivative(order: usize) -> Self {
        assert!(order >= 1);
        let slots = (1..=order as u32)
            .map(|k| Quasipolynomial::from_poly(JetPolynomial::var(k + 1)))
            .collect();
        JetField { u_slot: Quasipolynomial::from_poly(JetPolynomial::var(1)), slots, d_count: 0 }
    }

    /// `X0 = d/du`.
    pub fn x0(order: usize) -> Self {
        assert!(order >= 1);
        JetField { u_slot: Quasipolynomial::one(), slots: vec![Quasipolynomial::zero(); order], d_count: 0 }
    }

    /// `X(f) = sum_j D^{j-1}(f) d/du_j` for an exponential sum `f`.
    pub fn xf(f: &Quasipolynomial, order: usize) -> Result<Self> {
        assert!(order >= 1);
        let terms = f.exponential_terms().ok_or_else(|| {
            Error::Unsupported(format!("X(f) needs f to depend on u only, got {f}"))
        })?;
        let slots = (0..order)
            .map(|k| {
                terms.iter().fold(Quasipolynomial::zero(), |acc, (c, a)| {
                    acc + d_power_exp(k, *a).scale(c)
                })
            })
            .collect();
        Ok(JetField { u_slot: Quasipolynomial::zero(), slots, d_count: 0 })
    }

    pub fn zero(order: usize) -> Self {
        JetField { u_slot: Quasipolynomial::zero(), slots: vec![Quasipolynomial::zero(); order], d_count: 0 }
    }

    pub fn valid_order(&self) -> usize {
        self.slots.len()
    }

    pub fn d_count(&self) -> usize {
        self.d_count
    }

    pub fn u_slot(&self) -> &Quasipolynomial {
        &self.u_slot
    }

    /// Coefficient of `d/du_j` for `1 <= j <= valid_order`.
    pub fn slot(&self, j: usize) -> &Quasipolynomial {
        &self.slots[j - 1]
    }

    pub fn slots(&self) -> &[Quasipolynomial] {
        &self.slots
    }

    /// Applies the field to `q`; `None` when `q` involves a jet variable
    /// beyond the truncation order.
    pub fn apply(&self, q: &Quasipolynomial) -> Option<Quasipolynomial> {
        if q.max_var() as usize > self.valid_order() {
            return None;
        }
        let mut out = if self.u_slot.is_zero() {
            Quasipolynomial::zero()
        } else {
            &self.u_slot * &q.derive_u()
        };
        for k in jet_vars(q) {
            let s = &self.slots[k as usize - 1];
            if !s.is_zero() {
                out = out + s * &q.derive_uk(k);
            }
        }
        Some(out)
    }

    /// `[self, other]`, keeping the longest prefix of slots that is exact.
    pub fn bracket(&self, other: &JetField) -> Result<JetField> {
        let commute = |a: &Quasipolynomial, b: &Quasipolynomial| -> Option<Quasipolynomial> {
            Some(self.apply(b)? - other.apply(a)?)
        };
        let u_slot = commute(&self.u_slot, &other.u_slot).ok_or_else(|| Error::OrderTooSmall {
            order: self.valid_order().min(other.valid_order()),
            reason: "the d/du coefficient of the bracket needs more slots".into(),
        })?;
        let common = self.valid_order().min(other.valid_order());
        let mut slots = Vec::with_capacity(common);
        for j in 0..common {
            match commute(&self.slots[j], &other.slots[j]) {
                Some(q) => slots.push(q),
                None => break,
            }
        }
        if slots.is_empty() {
            return Err(Error::OrderTooSmall {
                order: common,
                reason: "no slot of the bracket is exact at this truncation".into(),
            });
        }
        Ok(JetField { u_slot, slots, d_count: self.d_count + other.d_count })
    }

    /// Commutator with `D`; the bookkeeping counter records the step.
    pub fn bracket_with_d(&self) -> Result<JetField> {
        let d = JetField::total_derivative(self.valid_order());
        let mut out = d.bracket(self)?;
        out.d_count = self.d_count + 1;
        Ok(out)
    }

    /// First `order` slots of the field.
    pub fn restrict(&self, order: usize) -> JetField {
        assert!(order >= 1 && order <= self.valid_order());
        JetField { u_slot: self.u_slot.clone(), slots: self.slots[..order].to_vec(), d_count: self.d_count }
    }

    pub fn scale(&self, c: &Rational) -> JetField {
        self.map(|q| q.scale(c))
    }

    /// Multiplies every coefficient by the function `g`.
    pub fn mul_coeff(&self, g: &Quasipolynomial) -> JetField {
        self.map(|q| q * g)
    }

    fn map<F: Fn(&Quasipolynomial) -> Quasipolynomial>(&self, f: F) -> JetField {
        JetField {
            u_slot: f(&self.u_slot),
            slots: self.slots.iter().map(f).collect(),
            d_count: self.d_count,
        }
    }

    fn zip<F: Fn(&Quasipolynomial, &Quasipolynomial) -> Quasipolynomial>(&self, o: &JetField, f: F) -> JetField {
        let n = self.valid_order().min(o.valid_order());
        JetField {
            u_slot: f(&self.u_slot, &o.u_slot),
            slots: (0..n).map(|j| f(&self.slots[j], &o.slots[j])).collect(),
            d_count: self.d_count.max(o.d_count),
        }
    }

    /// Sum on the common range of slots.
    pub fn add(&self, o: &JetField) -> JetField {
        self.zip(o, |a, b| a + b)
    }

    /// Difference on the common range of slots.
    pub fn sub(&self, o: &JetField) -> JetField {
        self.zip(o, |a, b| a - b)
    }

    pub fn is_zero_up_to(&self) -> ZeroStatus {
        if !self.u_slot.is_zero() {
            return ZeroStatus::Nonzero(0);
        }
        match self.slots.iter().position(|q| !q.is_zero()) {
            Some(j) => ZeroStatus::Nonzero(j + 1),
            None => ZeroStatus::ZeroUpTo(self.valid_order()),
        }
    }

    /// `(d, r)` when the field is bihomogeneous; `None` for zero or mixed
    /// fields.
    pub fn bigrading(&self) -> Option<Bigrading> {
        let mut found: Option<Bigrading> = None;
        let entries = std::iter::once((0i64, &self.u_slot))
            .chain(self.slots.iter().enumerate().map(|(j, q)| (j as i64 + 1, q)));
        for (j, q) in entries {
            if q.is_zero() {
                continue;
            }
            let (r, w) = q.homogeneity()?;
            let g = Bigrading::new(j - w as i64, r);
            match found {
                Some(prev) if prev != g => return None,
                _ => found = Some(g),
            }
        }
        found
    }

    /// `lambda` with `[X0, self] = lambda * self`, if the field is a nonzero
    /// eigenvector of `ad X0` with integral eigenvalue.
    pub fn ad_x0_eigenvalue(&self) -> Option<i64> {
        if !self.is_zero_up_to().is_zero() {
            let image = self.map(Quasipolynomial::derive_u);
            if image.is_zero_up_to().is_zero() {
                return Some(0);
            }
            let (j, q) = self.first_nonzero()?;
            let (a, m, c) = q.terms().next()?;
            let ratio = image.coefficient(j).part(a).coeff(m) / c;
            if self.scale(&ratio) == image && ratio.is_integer() {
                return ratio.to_integer().to_i64();
            }
        }
        None
    }

    fn coefficient(&self, j: usize) -> &Quasipolynomial {
        if j == 0 {
            &self.u_slot
        } else {
            &self.slots[j - 1]
        }
    }

    fn first_nonzero(&self) -> Option<(usize, &Quasipolynomial)> {
        (0..=self.valid_order())
            .map(|j| (j, self.coefficient(j)))
            .find(|(_, q)| !q.is_zero())
    }

    /// Sparse coefficient vector in a fixed graded order.
    pub fn to_vector(&self) -> Vec<(FieldKey, Rational)> {
        (0..=self.valid_order())
            .flat_map(|j| {
                self.coefficient(j)
                    .terms()
                    .map(move |(a, m, c)| ((j, a, m.clone()), c.clone()))
            })
            .collect()
    }

    /// Ratio `c` with `self = c * other`, if one exists and is nonzero.
    pub fn ratio_to(&self, other: &JetField) -> Option<Rational> {
        let (j, q) = other.first_nonzero()?;
        let (a, m, c) = q.terms().next()?;
        let ratio = self.coefficient(j).part(a).coeff(m) / c;
        let n = self.valid_order().min(other.valid_order());
        (!ratio.is_zero() && self.restrict(n) == other.restrict(n).scale(&ratio)).then_some(ratio)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "u_slot": self.u_slot.to_string(),
            "slots": self.slots.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "valid_order": self.valid_order(),
        })
    }
}

impl Serialize for JetField {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// `(d, r)` of a field, if bihomogeneous.
pub fn bigrading_of(x: &JetField) -> Option<Bigrading> {
    x.bigrading()
}

/// Eigenvalue of `ad X0` on `x`, if `x` is an eigenvector.
pub fn eigencheck_adx0(x: &JetField) -> Option<i64> {
    x.ad_x0_eigenvalue()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::{int, parse_quasipolynomial, rat};

    fn qp(s: &str) -> Quasipolynomial {
        parse_quasipolynomial(s).unwrap()
    }

    fn sinh() -> Quasipolynomial {
        Quasipolynomial::sinh()
    }

    #[test]
    fn total_derivative_examples() {
        assert_eq!(total_derivative(&qp("u3")), qp("u4"));
        assert_eq!(total_derivative(&Quasipolynomial::exp(-2)), qp("-2 e^(-2u) u1"));
        assert_eq!(total_derivative(&qp("u1^2/2 - u2")), qp("u1 u2 - u3"));
        let d = JetField::total_derivative(6);
        assert_eq!(d.apply(&qp("u1^2/2 - u2")), Some(qp("u1 u2 - u3")));
        assert_eq!(d.apply(&qp("u7")), None);
    }

    #[test]
    fn d_power_agrees_with_repeated_total_derivative() {
        for lambda in [-2, -1, 1, 2] {
            let mut q = Quasipolynomial::exp(lambda);
            for k in 0..=10 {
                assert_eq!(d_power_exp(k, lambda), q, "k={k} lambda={lambda}");
                q = total_derivative(&q);
            }
        }
    }

    #[test]
    fn generator_slots() {
        let x = JetField::xf(&Quasipolynomial::exp(1), 3).unwrap();
        assert_eq!(*x.slot(3), qp("e^u (u1^2 + u2)"));
        let s = JetField::xf(&sinh(), 2).unwrap();
        assert_eq!(*s.slot(2), qp("(1/2 e^u + 1/2 e^(-u)) u1"));
        assert!(JetField::xf(&qp("e^u u1"), 3).is_err());
    }

    #[test]
    fn x0_differentiates_coefficients() {
        let x = JetField::xf(&qp("e^u + e^(-2u)"), 6).unwrap();
        let br = JetField::x0(6).bracket(&x).unwrap();
        let expected = JetField::new(
            Quasipolynomial::zero(),
            x.slots().iter().map(Quasipolynomial::derive_u).collect(),
        )
        .unwrap();
        assert_eq!(br, expected);
    }

    #[test]
    fn liouville_generators_commute_to_x1() {
        let x1 = JetField::xf(&Quasipolynomial::exp(1), 8).unwrap();
        assert_eq!(JetField::x0(8).bracket(&x1).unwrap(), x1);
    }

    #[test]
    fn bracket_with_d_is_minus_f_x0() {
        let n = 12;
        for f in [Quasipolynomial::exp(1), sinh(), qp("e^u + e^(-2u)")] {
            let br = JetField::total_derivative(n).bracket(&JetField::xf(&f, n).unwrap()).unwrap();
            assert_eq!(br.valid_order(), n - 1);
            let expected = JetField::x0(n - 1).mul_coeff(&f).scale(&int(-1));
            assert_eq!(br, expected);
        }
    }

    #[test]
    fn sinh_third_generator() {
        let x1 = JetField::xf(&Quasipolynomial::exp(1), 6).unwrap();
        let x2 = JetField::xf(&Quasipolynomial::exp(-1), 6).unwrap().scale(&int(-1));
        let x3 = x1.bracket(&x2).unwrap();
        assert_eq!(*x3.slot(1), Quasipolynomial::zero());
        assert_eq!(*x3.slot(2), qp("2"));
        assert_eq!(*x3.slot(3), qp("0"));
        assert_eq!(*x3.slot(4), qp("2u1^2"));
        assert_eq!(*x3.slot(5), qp("10 u1 u2"));
        assert_eq!(x3.bigrading(), Some(Bigrading::new(2, 0)));
        assert_eq!(x3.ad_x0_eigenvalue(), Some(0));
    }

    #[test]
    fn bigradings_of_generators() {
        assert_eq!(JetField::total_derivative(5).bigrading(), Some(Bigrading::new(-1, 0)));
        assert_eq!(JetField::x0(5).bigrading(), Some(Bigrading::new(0, 0)));
        assert_eq!(JetField::xf(&Quasipolynomial::exp(-2), 5).unwrap().bigrading(), Some(Bigrading::new(1, -2)));
        assert_eq!(JetField::xf(&sinh(), 5).unwrap().bigrading(), None);
        assert_eq!(JetField::zero(3).bigrading(), None);
    }

    #[test]
    fn zero_status() {
        assert_eq!(JetField::xf(&Quasipolynomial::exp(1), 4).unwrap().is_zero_up_to(), ZeroStatus::Nonzero(1));
        assert_eq!(JetField::x0(4).is_zero_up_to(), ZeroStatus::Nonzero(0));
        assert_eq!(JetField::zero(7).is_zero_up_to(), ZeroStatus::ZeroUpTo(7));
    }

    #[test]
    fn eigenvalues() {
        let y2 = JetField::xf(&Quasipolynomial::exp(-2), 6).unwrap();
        assert_eq!(y2.ad_x0_eigenvalue(), Some(-2));
        assert_eq!(JetField::xf(&sinh(), 6).unwrap().ad_x0_eigenvalue(), None);
        assert_eq!(JetField::zero(3).ad_x0_eigenvalue(), None);
    }

    #[test]
    fn truncation_is_exact() {
        let f = qp("e^u + e^(-2u)");
        let a12 = JetField::xf(&f, 12).unwrap();
        let b12 = JetField::x0(12).bracket(&JetField::xf(&f, 12).unwrap()).unwrap();
        let a16 = JetField::xf(&f, 16).unwrap();
        let b16 = JetField::x0(16).bracket(&JetField::xf(&f, 16).unwrap()).unwrap();
        let c12 = a12.bracket(&b12).unwrap();
        let c16 = a16.bracket(&b16).unwrap();
        assert_eq!(c12.valid_order(), 12);
        assert_eq!(c16.restrict(12), c12);
    }

    #[test]
    fn ratio_and_json() {
        let x = JetField::xf(&Quasipolynomial::exp(1), 3).unwrap();
        assert_eq!(x.scale(&rat(-1, 3)).ratio_to(&x), Some(rat(-1, 3)));
        let json = x.to_json();
        assert_eq!(json["valid_order"], 3);
        assert_eq!(json["slots"][1], "1 * e^u * u1");
        assert_eq!(json["u_slot"], "0");
    }
}
