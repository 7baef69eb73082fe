//! Fraction-free exact elimination on sparse vectors.
//!
//! Inserted vectors are cleared to primitive integer vectors and kept in
//! echelon form keyed by their leading coordinate. Every stored row remembers
//! how it was combined from the inserted vectors, so a dependent candidate is
//! returned together with its exact expansion over earlier insertions.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exactring::Rational;

#[derive(Clone, Debug)]
struct Row<K> {
    entries: BTreeMap<K, BigInt>,
    /// `entries = sum combo[i] * inserted_int[i]`.
    combo: BTreeMap<usize, BigInt>,
}

/// Result of inserting a vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reduction {
    /// The vector was independent and received this insertion index.
    Independent(usize),
    /// The vector equals `sum c_i * v_i` over earlier independent insertions.
    Dependent(Vec<(usize, Rational)>),
}

/// Echelon form over an ordered coordinate set `K`.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Clone> {
    rows: Vec<Row<K>>,
    pivots: BTreeMap<K, usize>,
    /// `inserted_int[i] = scales[i] * inserted[i]`.
    scales: Vec<Rational>,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Echelon { rows: Vec::new(), pivots: BTreeMap::new(), scales: Vec::new() }
    }
}

fn content<'a, I: IntoIterator<Item = &'a BigInt>>(values: I) -> BigInt {
    values.into_iter().fold(BigInt::zero(), |g, v| g.gcd(v))
}

/// Scales a rational vector to a primitive integer vector; returns the scale.
fn to_primitive<K: Ord + Clone>(v: &[(K, Rational)]) -> (BTreeMap<K, BigInt>, Rational) {
    let lcm = v.iter().fold(BigInt::one(), |l, (_, c)| l.lcm(c.denom()));
    let mut ints: BTreeMap<K, BigInt> = BTreeMap::new();
    for (k, c) in v {
        if c.is_zero() {
            continue;
        }
        let x = c.numer() * (&lcm / c.denom());
        let slot = ints.entry(k.clone()).or_insert_with(BigInt::zero);
        *slot += x;
    }
    ints.retain(|_, x| !x.is_zero());
    let g = content(ints.values());
    if g.is_zero() {
        return (ints, Rational::one());
    }
    for x in ints.values_mut() {
        *x /= &g;
    }
    (ints, Rational::new(lcm, g))
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of independent vectors inserted.
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` without modifying the echelon form.
    pub fn express(&self, v: &[(K, Rational)]) -> Option<Vec<(usize, Rational)>> {
        let (ints, scale) = to_primitive(v);
        let (rest, multiplier, combo) = self.eliminate(ints);
        rest.is_empty().then(|| self.expansion(&combo, &multiplier, &scale))
    }

    /// Inserts `v`, returning either its new index or its expansion.
    pub fn insert(&mut self, v: &[(K, Rational)]) -> Reduction {
        let (ints, scale) = to_primitive(v);
        let (rest, multiplier, mut combo) = self.eliminate(ints);
        if rest.is_empty() {
            return Reduction::Dependent(self.expansion(&combo, &multiplier, &scale));
        }
        let index = self.scales.len();
        combo.insert(index, multiplier);
        let lead = rest.keys().next().expect("nonzero row").clone();
        self.pivots.insert(lead, self.rows.len());
        self.rows.push(Row { entries: rest, combo });
        self.scales.push(scale);
        Reduction::Independent(index)
    }

    /// Returns `(residual, m, combo)` with
    /// `residual = m * v + sum combo[i] * inserted_int[i]`.
    #[allow(clippy::type_complexity)]
    fn eliminate(
        &self,
        mut v: BTreeMap<K, BigInt>,
    ) -> (BTreeMap<K, BigInt>, BigInt, BTreeMap<usize, BigInt>) {
        let mut m = BigInt::one();
        let mut combo: BTreeMap<usize, BigInt> = BTreeMap::new();
        let mut cursor: Option<K> = None;
        loop {
            let next = v.keys().find(|k| {
                cursor.as_ref().is_none_or(|c| *k > c) && self.pivots.contains_key(*k)
            });
            let Some(key) = next.cloned() else { break };
            let row = &self.rows[self.pivots[&key]];
            let a = v[&key].clone();
            let b = row.entries[&key].clone();
            let g = a.gcd(&b);
            let (a, b) = (a / &g, b / &g);
            // v <- b*v - a*row
            for x in v.values_mut() {
                *x *= &b;
            }
            for (k, x) in &row.entries {
                let slot = v.entry(k.clone()).or_insert_with(BigInt::zero);
                *slot -= &a * x;
            }
            v.retain(|_, x| !x.is_zero());
            for x in combo.values_mut() {
                *x *= &b;
            }
            for (i, x) in &row.combo {
                let slot = combo.entry(*i).or_insert_with(BigInt::zero);
                *slot -= &a * x;
            }
            combo.retain(|_, x| !x.is_zero());
            m *= &b;
            let g = content(v.values().chain(combo.values()).chain(std::iter::once(&m)));
            if !g.is_one() {
                for x in v.values_mut().chain(combo.values_mut()) {
                    *x /= &g;
                }
                m /= &g;
            }
            cursor = Some(key);
        }
        (v, m, combo)
    }

    fn expansion(&self, combo: &BTreeMap<usize, BigInt>, m: &BigInt, scale: &Rational) -> Vec<(usize, Rational)> {
        // 0 = m * scale * v + sum combo[i] * scales[i] * inserted[i]
        let denom = Rational::from_integer(m.clone()) * scale;
        combo
            .iter()
            .map(|(&i, c)| (i, -(Rational::from_integer(c.clone()) * &self.scales[i]) / &denom))
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }
}

/// Basis of the kernel of the linear map sending the `j`-th unit vector to
/// `images[j]`. Each basis vector is dense over the input indices.
pub fn nullspace<K: Ord + Clone>(images: &[Vec<(K, Rational)>]) -> Vec<Vec<Rational>> {
    let mut echelon = Echelon::new();
    let mut owner: Vec<usize> = Vec::new();
    let mut basis = Vec::new();
    for (j, img) in images.iter().enumerate() {
        match echelon.insert(img) {
            Reduction::Independent(_) => owner.push(j),
            Reduction::Dependent(expansion) => {
                let mut v = vec![Rational::zero(); images.len()];
                v[j] = Rational::one();
                for (i, c) in expansion {
                    v[owner[i]] -= c;
                }
                basis.push(v);
            }
        }
    }
    basis
}
