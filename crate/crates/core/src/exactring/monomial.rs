use std::cmp::Ordering;

/// A monomial in the jet variables `u1, u2, ...`.
///
/// Stored as `(variable index, exponent)` pairs sorted by index, with no zero
/// exponents. The empty monomial is `1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct JetMonomial {
    exps: Vec<(u32, u32)>,
}

impl JetMonomial {
    pub fn one() -> Self {
        JetMonomial { exps: Vec::new() }
    }

    /// The single variable `u_i`. Panics for `i == 0`: the base variable `u`
    /// only ever appears inside exponential prefactors.
    pub fn var(i: u32) -> Self {
        Self::var_pow(i, 1)
    }

    pub fn var_pow(i: u32, e: u32) -> Self {
        assert!(i >= 1, "jet variables are indexed from 1");
        if e == 0 {
            return Self::one();
        }
        JetMonomial { exps: vec![(i, e)] }
    }

    /// Builds a monomial from arbitrary `(index, exponent)` pairs, merging
    /// repeated indices and dropping zero exponents.
    pub fn from_exponents<I: IntoIterator<Item = (u32, u32)>>(pairs: I) -> Self {
        let mut exps: Vec<(u32, u32)> = Vec::new();
        for (i, e) in pairs {
            assert!(i >= 1, "jet variables are indexed from 1");
            if e == 0 {
                continue;
            }
            match exps.binary_search_by_key(&i, |&(v, _)| v) {
                Ok(pos) => exps[pos].1 += e,
                Err(pos) => exps.insert(pos, (i, e)),
            }
        }
        JetMonomial { exps }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    /// `sum i * e_i`.
    pub fn weight(&self) -> u64 {
        self.exps.iter().map(|&(i, e)| i as u64 * e as u64).sum()
    }

    /// Total degree `sum e_i`.
    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&(_, e)| e as u64).sum()
    }

    pub fn exponent(&self, i: u32) -> u32 {
        self.exps
            .binary_search_by_key(&i, |&(v, _)| v)
            .map(|pos| self.exps[pos].1)
            .unwrap_or(0)
    }

    /// Largest variable index present, 0 for the monomial `1`.
    pub fn max_var(&self) -> u32 {
        self.exps.last().map(|&(i, _)| i).unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.exps.iter().copied()
    }

    pub fn mul(&self, other: &JetMonomial) -> JetMonomial {
        let mut exps = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut a, mut b) = (self.exps.iter().peekable(), other.exps.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(i, e)), Some(&&(j, f))) => match i.cmp(&j) {
                    Ordering::Less => {
                        exps.push((i, e));
                        a.next();
                    }
                    Ordering::Greater => {
                        exps.push((j, f));
                        b.next();
                    }
                    Ordering::Equal => {
                        exps.push((i, e + f));
                        a.next();
                        b.next();
                    }
                },
                (Some(&&p), None) => {
                    exps.push(p);
                    a.next();
                }
                (None, Some(&&p)) => {
                    exps.push(p);
                    b.next();
                }
                (None, None) => break,
            }
        }
        JetMonomial { exps }
    }

    /// `d/du_i` of the monomial as `(multiplier, monomial)`, or `None` when
    /// `u_i` does not occur.
    pub fn derive(&self, i: u32) -> Option<(u32, JetMonomial)> {
        let pos = self.exps.binary_search_by_key(&i, |&(v, _)| v).ok()?;
        let e = self.exps[pos].1;
        let mut exps = self.exps.clone();
        if e == 1 {
            exps.remove(pos);
        } else {
            exps[pos].1 = e - 1;
        }
        Some((e, JetMonomial { exps }))
    }
}

/// Graded order: by weight first, then lexicographically on the sorted
/// exponent list. Iteration over polynomial terms follows this order.
impl Ord for JetMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for JetMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
