use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{forward_binops, int, JetMonomial, JetPolynomial, Rational};

/// Finite sum `sum_a e^(a*u) * P_a(u1, u2, ...)` with integer exponential
/// indices `a` and exact polynomial parts.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Quasipolynomial {
    parts: BTreeMap<i64, JetPolynomial>,
}

impl Quasipolynomial {
    pub fn zero() -> Self {
        Quasipolynomial { parts: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::from_poly(JetPolynomial::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(JetPolynomial::constant(c))
    }

    /// `e^(alpha*u)`.
    pub fn exp(alpha: i64) -> Self {
        Self::exp_times(alpha, JetPolynomial::one())
    }

    /// `e^(alpha*u) * p`.
    pub fn exp_times(alpha: i64, p: JetPolynomial) -> Self {
        let mut q = Self::zero();
        q.add_part(alpha, &p);
        q
    }

    pub fn from_poly(p: JetPolynomial) -> Self {
        Self::exp_times(0, p)
    }

    /// `sum c * e^(a*u)` from `(c, a)` pairs.
    pub fn exponential_sum<I: IntoIterator<Item = (Rational, i64)>>(terms: I) -> Self {
        let mut q = Self::zero();
        for (c, a) in terms {
            q.add_part(a, &JetPolynomial::constant(c));
        }
        q
    }

    /// `1/2 e^u - 1/2 e^(-u)`.
    pub fn sinh() -> Self {
        Self::exponential_sum([(super::rat(1, 2), 1), (super::rat(-1, 2), -1)])
    }

    /// `1/2 e^u + 1/2 e^(-u)`.
    pub fn cosh() -> Self {
        Self::exponential_sum([(super::rat(1, 2), 1), (super::rat(1, 2), -1)])
    }

    pub fn add_part(&mut self, alpha: i64, p: &JetPolynomial) {
        if p.is_zero() {
            return;
        }
        let merged = match self.parts.remove(&alpha) {
            Some(old) => &old + p,
            None => p.clone(),
        };
        if !merged.is_zero() {
            self.parts.insert(alpha, merged);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    /// Nonzero parts in ascending order of the exponential index.
    pub fn parts(&self) -> impl Iterator<Item = (i64, &JetPolynomial)> {
        self.parts.iter().map(|(&a, p)| (a, p))
    }

    pub fn part(&self, alpha: i64) -> JetPolynomial {
        self.parts.get(&alpha).cloned().unwrap_or_default()
    }

    /// Number of `(alpha, monomial)` terms.
    pub fn term_count(&self) -> usize {
        self.parts.values().map(JetPolynomial::len).sum()
    }

    /// All `(alpha, monomial, coefficient)` triples in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &JetMonomial, &Rational)> {
        self.parts
            .iter()
            .flat_map(|(&a, p)| p.terms().map(move |(m, c)| (a, m, c)))
    }

    pub fn scale(&self, c: &Rational) -> Quasipolynomial {
        if c.is_zero() {
            return Self::zero();
        }
        Quasipolynomial {
            parts: self.parts.iter().map(|(&a, p)| (a, p.scale(c))).collect(),
        }
    }

    /// `d/du`: the part at `alpha` is multiplied by `alpha`.
    pub fn derive_u(&self) -> Quasipolynomial {
        let mut out = Self::zero();
        for (&a, p) in &self.parts {
            out.add_part(a, &p.scale(&int(a)));
        }
        out
    }

    /// `d/du_k`, acting on the polynomial parts only.
    pub fn derive_uk(&self, k: u32) -> Quasipolynomial {
        assert!(k >= 1, "jet derivatives are indexed from 1");
        let mut out = Self::zero();
        for (&a, p) in &self.parts {
            out.add_part(a, &p.derive(k));
        }
        out
    }

    /// Largest jet index occurring anywhere (0 when no jet variable occurs).
    pub fn max_var(&self) -> u32 {
        self.parts.values().map(JetPolynomial::max_var).max().unwrap_or(0)
    }

    /// True when every part is a constant, i.e. the value depends on `u` only
    /// through exponentials.
    pub fn is_pure_exponential(&self) -> bool {
        self.parts.values().all(|p| p.as_constant().is_some())
    }

    /// `(coefficient, alpha)` pairs of a pure exponential sum.
    pub fn exponential_terms(&self) -> Option<Vec<(Rational, i64)>> {
        self.parts
            .iter()
            .map(|(&a, p)| p.as_constant().map(|c| (c, a)))
            .collect()
    }

    /// `(alpha, weight)` when the value is `e^(alpha*u)` times a
    /// weight-homogeneous polynomial.
    pub fn homogeneity(&self) -> Option<(i64, u64)> {
        if self.parts.len() != 1 {
            return None;
        }
        let (&a, p) = self.parts.iter().next()?;
        Some((a, p.weight_of()?))
    }

    /// Multiplies every part by the plain polynomial `p`.
    pub fn mul_poly(&self, p: &JetPolynomial) -> Quasipolynomial {
        let mut out = Self::zero();
        for (&a, q) in &self.parts {
            out.add_part(a, &(q * p));
        }
        out
    }

    /// Substitutes jet variables in every part; exponential prefactors are
    /// left untouched.
    pub fn substitute<F: Fn(u32) -> JetPolynomial>(&self, image: F) -> Quasipolynomial {
        let mut out = Self::zero();
        for (&a, p) in &self.parts {
            out.add_part(a, &p.substitute(&image));
        }
        out
    }

    /// True if the value is a nonzero rational constant multiple of `other`;
    /// returns the multiplier.
    pub fn ratio_to(&self, other: &Quasipolynomial) -> Option<Rational> {
        let (a, m, c) = other.terms().next()?;
        let ratio = self.part(a).coeff(m) / c;
        (other.scale(&ratio) == *self && !ratio.is_zero()).then_some(ratio)
    }
}

impl Add for &Quasipolynomial {
    type Output = Quasipolynomial;
    fn add(self, rhs: &Quasipolynomial) -> Quasipolynomial {
        let mut out = self.clone();
        for (&a, p) in &rhs.parts {
            out.add_part(a, p);
        }
        out
    }
}

impl Sub for &Quasipolynomial {
    type Output = Quasipolynomial;
    fn sub(self, rhs: &Quasipolynomial) -> Quasipolynomial {
        let mut out = self.clone();
        for (&a, p) in &rhs.parts {
            out.add_part(a, &-p);
        }
        out
    }
}

impl Mul for &Quasipolynomial {
    type Output = Quasipolynomial;
    fn mul(self, rhs: &Quasipolynomial) -> Quasipolynomial {
        let mut out = Quasipolynomial::zero();
        for (&a, p) in &self.parts {
            for (&b, q) in &rhs.parts {
                out.add_part(a + b, &(p * q));
            }
        }
        out
    }
}

impl Neg for &Quasipolynomial {
    type Output = Quasipolynomial;
    fn neg(self) -> Quasipolynomial {
        self.scale(&-Rational::one())
    }
}

impl Neg for Quasipolynomial {
    type Output = Quasipolynomial;
    fn neg(self) -> Quasipolynomial {
        -&self
    }
}

forward_binops!(Quasipolynomial, Add::add, Sub::sub, Mul::mul);
