use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{forward_binops, JetMonomial, Rational};

/// Sparse polynomial in the jet variables with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct JetPolynomial {
    terms: BTreeMap<JetMonomial, Rational>,
}

impl JetPolynomial {
    pub fn zero() -> Self {
        JetPolynomial { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(JetMonomial::one(), c)
    }

    pub fn var(i: u32) -> Self {
        Self::monomial(JetMonomial::var(i), Rational::one())
    }

    pub fn monomial(m: JetMonomial, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (JetMonomial, Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c * m` in place, removing the term if it cancels.
    pub fn add_term(&mut self, m: JetMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in graded monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&JetMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &JetMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The constant term's coefficient when the polynomial is a constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&JetMonomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rational) -> JetPolynomial {
        if c.is_zero() {
            return Self::zero();
        }
        JetPolynomial {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// `d/du_i`.
    pub fn derive(&self, i: u32) -> JetPolynomial {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if let Some((e, dm)) = m.derive(i) {
                out.add_term(dm, c * Rational::from_integer(e.into()));
            }
        }
        out
    }

    /// Common weight of all terms; `None` for zero or for mixed weights.
    pub fn weight_of(&self) -> Option<u64> {
        let mut it = self.terms.keys().map(JetMonomial::weight);
        let w = it.next()?;
        it.all(|v| v == w).then_some(w)
    }

    /// Largest jet index occurring in any term (0 for constants).
    pub fn max_var(&self) -> u32 {
        self.terms.keys().map(JetMonomial::max_var).max().unwrap_or(0)
    }

    /// Substitutes `u_i -> lambda * u_i` for every variable.
    pub fn scale_vars(&self, lambda: &Rational) -> JetPolynomial {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut f = Rational::one();
            for _ in 0..m.degree() {
                f *= lambda;
            }
            out.add_term(m.clone(), c * f);
        }
        out
    }

    /// Replaces every variable `u_i` by `image(i)`.
    pub fn substitute<F: Fn(u32) -> JetPolynomial>(&self, image: F) -> JetPolynomial {
        let mut cache: BTreeMap<u32, JetPolynomial> = BTreeMap::new();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut term = Self::constant(c.clone());
            for (i, e) in m.iter() {
                let base = cache.entry(i).or_insert_with(|| image(i));
                for _ in 0..e {
                    term = &term * &*base;
                }
            }
            out = out + term;
        }
        out
    }

    pub fn pow(&self, n: u32) -> JetPolynomial {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }
}

impl Add for &JetPolynomial {
    type Output = JetPolynomial;
    fn add(self, rhs: &JetPolynomial) -> JetPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &JetPolynomial {
    type Output = JetPolynomial;
    fn sub(self, rhs: &JetPolynomial) -> JetPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &JetPolynomial {
    type Output = JetPolynomial;
    fn mul(self, rhs: &JetPolynomial) -> JetPolynomial {
        let mut out = JetPolynomial::zero();
        for (m, a) in &self.terms {
            for (n, b) in &rhs.terms {
                out.add_term(m.mul(n), a * b);
            }
        }
        out
    }
}

impl Neg for &JetPolynomial {
    type Output = JetPolynomial;
    fn neg(self) -> JetPolynomial {
        JetPolynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for JetPolynomial {
    type Output = JetPolynomial;
    fn neg(self) -> JetPolynomial {
        -&self
    }
}

forward_binops!(JetPolynomial, Add::add, Sub::sub, Mul::mul);
