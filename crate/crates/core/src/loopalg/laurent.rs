use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::exactring::{fmt_rational, Rational};

/// Laurent polynomial in `t` with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `c * t^k`.
    pub fn monomial(c: Rational, k: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(k, c);
        p
    }

    fn add_term(&mut self, k: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(k).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: i64) -> Rational {
        self.coeffs.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs.iter().map(|(&k, c)| (k, c))
    }

    pub fn add(&self, o: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in o.terms() {
            out.add_term(k, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> LaurentPoly {
        let mut out = Self::zero();
        for (k, a) in self.terms() {
            out.add_term(k, a * c);
        }
        out
    }

    pub fn mul(&self, o: &LaurentPoly) -> LaurentPoly {
        let mut out = Self::zero();
        for (i, a) in self.terms() {
            for (j, b) in o.terms() {
                out.add_term(i + j, a * b);
            }
        }
        out
    }
}

/// Square matrix of Laurent polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentMatrix {
    size: usize,
    entries: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn zero(size: usize) -> Self {
        LaurentMatrix { size, entries: vec![LaurentPoly::zero(); size * size] }
    }

    /// `m (x) t^k` for a constant matrix `m` given row by row.
    pub fn constant_times_power(rows: &[Vec<Rational>], k: i64) -> Self {
        let size = rows.len();
        let mut out = Self::zero(size);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), size);
            for (j, c) in row.iter().enumerate() {
                out.entries[i * size + j] = LaurentPoly::monomial(c.clone(), k);
            }
        }
        out
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entry(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.size + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(LaurentPoly::is_zero)
    }

    /// Powers of `t` occurring in any entry, ascending.
    pub fn powers(&self) -> Vec<i64> {
        let mut p: Vec<i64> = self.entries.iter().flat_map(|e| e.terms().map(|(k, _)| k)).collect();
        p.sort_unstable();
        p.dedup();
        p
    }

    /// Constant matrix multiplying `t^k`.
    pub fn component(&self, k: i64) -> Vec<Vec<Rational>> {
        (0..self.size)
            .map(|i| (0..self.size).map(|j| self.entry(i, j).coeff(k)).collect())
            .collect()
    }

    pub fn trace(&self) -> LaurentPoly {
        (0..self.size).fold(LaurentPoly::zero(), |acc, i| acc.add(self.entry(i, i)))
    }

    pub fn add(&self, o: &LaurentMatrix) -> LaurentMatrix {
        assert_eq!(self.size, o.size);
        LaurentMatrix {
            size: self.size,
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> LaurentMatrix {
        LaurentMatrix { size: self.size, entries: self.entries.iter().map(|a| a.scale(c)).collect() }
    }

    pub fn sub(&self, o: &LaurentMatrix) -> LaurentMatrix {
        self.add(&o.scale(&-Rational::from_integer(1.into())))
    }

    pub fn mul(&self, o: &LaurentMatrix) -> LaurentMatrix {
        assert_eq!(self.size, o.size);
        let n = self.size;
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = LaurentPoly::zero();
                for k in 0..n {
                    acc = acc.add(&self.entry(i, k).mul(o.entry(k, j)));
                }
                out.entries[i * n + j] = acc;
            }
        }
        out
    }

    /// `[self, o] = self*o - o*self`.
    pub fn commutator(&self, o: &LaurentMatrix) -> LaurentMatrix {
        self.mul(o).sub(&o.mul(self))
    }

    /// `c` with `self = c * o`, when `o` is nonzero and such `c` exists.
    pub fn ratio_to(&self, o: &LaurentMatrix) -> Option<Rational> {
        let (idx, k, c) = o
            .entries
            .iter()
            .enumerate()
            .find_map(|(idx, e)| e.terms().next().map(|(k, c)| (idx, k, c.clone())))?;
        let ratio = self.entries[idx].coeff(k) / c;
        (o.scale(&ratio) == *self).then_some(ratio)
    }
}

impl fmt::Display for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cell = |p: &LaurentPoly| -> String {
            if p.is_zero() {
                return "0".into();
            }
            p.terms()
                .map(|(k, c)| match k {
                    0 => fmt_rational(c),
                    _ => format!("{}*t^{}", fmt_rational(c), k),
                })
                .collect::<Vec<_>>()
                .join(" + ")
        };
        let rows: Vec<String> = (0..self.size)
            .map(|i| {
                let cells: Vec<String> = (0..self.size).map(|j| cell(self.entry(i, j))).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}
