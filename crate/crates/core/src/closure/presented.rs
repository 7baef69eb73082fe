//! Graded Lie algebras given by closed-form brackets.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::LazyLock;

use num_traits::Zero;
use serde::Serialize;

use super::{StructureTable, TableBasis, TableBracket};
use crate::exactring::{int, Rational};
use crate::linalg::{Echelon, Reduction};
use crate::loopalg::sl3_residue_table;
use crate::{Error, Result};

static N2_CONSTANTS: LazyLock<[[i64; 8]; 8]> = LazyLock::new(sl3_residue_table);

/// A basis element: `E(i)` is `e_i` (or `f_i`), `C(k)` a central element of
/// degree `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Gen {
    E(i64),
    C(i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PresentedAlgebra {
    /// `[e1, e_i] = e_{i+1}` for `i >= 2`.
    M0,
    /// `m0` plus `[e2, e_j] = e_{j+2}` for `j >= 3`.
    M2,
    /// `[e_i, e_j] = (j - i) e_{i+j}`.
    WPlus,
    /// `m0` plus `[e_i, e_j] = (-1)^i c_{i+j}` for `i, j >= 2`, `i + j` in the set.
    M0Central(Vec<i64>),
    /// Positive part of the twisted sl(3) loop algebra plus `[f2, f3] = c`.
    N2Cube,
}

impl PresentedAlgebra {
    pub fn name(&self) -> String {
        match self {
            PresentedAlgebra::M0 => "m0".into(),
            PresentedAlgebra::M2 => "m2".into(),
            PresentedAlgebra::WPlus => "w+".into(),
            PresentedAlgebra::M0Central(s) => {
                format!("m0s:{}", s.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
            }
            PresentedAlgebra::N2Cube => "n2^3".into(),
        }
    }

    pub fn label(&self, g: Gen) -> String {
        match (self, g) {
            (PresentedAlgebra::N2Cube, Gen::E(i)) => format!("f{i}"),
            (PresentedAlgebra::N2Cube, Gen::C(_)) => "c".into(),
            (_, Gen::E(i)) => format!("e{i}"),
            (_, Gen::C(k)) => format!("c{k}"),
        }
    }

    pub fn degree(&self, g: Gen) -> i64 {
        match g {
            Gen::E(i) | Gen::C(i) => i,
        }
    }

    /// Basis elements of degree at most `bound`, ordered by degree.
    pub fn basis(&self, bound: i64) -> Vec<Gen> {
        let mut out: Vec<Gen> = (1..=bound).map(Gen::E).collect();
        match self {
            PresentedAlgebra::M0Central(s) => out.extend(s.iter().filter(|&&k| k >= 5 && k <= bound).map(|&k| Gen::C(k))),
            PresentedAlgebra::N2Cube if bound >= 5 => out.push(Gen::C(5)),
            _ => {}
        }
        out.sort_by_key(|&g| (self.degree(g), g));
        out
    }

    /// `[a, b]` as a sparse combination.
    pub fn bracket(&self, a: Gen, b: Gen) -> Vec<(Gen, Rational)> {
        let (i, j) = match (a, b) {
            (Gen::E(i), Gen::E(j)) => (i, j),
            _ => return Vec::new(),
        };
        if i == j {
            return Vec::new();
        }
        let mut out = Vec::new();
        let filiform = || -> Option<(Gen, Rational)> {
            if i == 1 && j >= 2 {
                Some((Gen::E(j + 1), int(1)))
            } else if j == 1 && i >= 2 {
                Some((Gen::E(i + 1), int(-1)))
            } else {
                None
            }
        };
        match self {
            PresentedAlgebra::M0 => out.extend(filiform()),
            PresentedAlgebra::M2 => {
                out.extend(filiform());
                if i == 2 && j >= 3 {
                    out.push((Gen::E(j + 2), int(1)));
                } else if j == 2 && i >= 3 {
                    out.push((Gen::E(i + 2), int(-1)));
                }
            }
            PresentedAlgebra::WPlus => out.push((Gen::E(i + j), int(j - i))),
            PresentedAlgebra::M0Central(s) => {
                out.extend(filiform());
                if i >= 2 && j >= 2 && s.contains(&(i + j)) {
                    out.push((Gen::C(i + j), int(if i % 2 == 0 { 1 } else { -1 })));
                }
            }
            PresentedAlgebra::N2Cube => {
                let d = N2_CONSTANTS[(i % 8) as usize][(j % 8) as usize];
                out.push((Gen::E(i + j), int(d)));
                match (i, j) {
                    (2, 3) => out.push((Gen::C(5), int(1))),
                    (3, 2) => out.push((Gen::C(5), int(-1))),
                    _ => {}
                }
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        out
    }

    fn bracket_vec(&self, a: Gen, v: &BTreeMap<Gen, Rational>) -> BTreeMap<Gen, Rational> {
        let mut acc = BTreeMap::new();
        for (g, c) in v {
            for (h, x) in self.bracket(a, *g) {
                *acc.entry(h).or_insert_with(Rational::zero) += c * &x;
            }
        }
        acc.retain(|_, x: &mut Rational| !x.is_zero());
        acc
    }

    /// Jacobi identity on all triples of distinct basis elements of degree
    /// at most `bound`.
    pub fn jacobi_check(&self, bound: i64) -> JacobiReport {
        let basis = self.basis(bound);
        let single = |g: Gen| BTreeMap::from([(g, int(1))]);
        let mut checked = 0;
        let mut violations = Vec::new();
        for (x, &a) in basis.iter().enumerate() {
            for (y, &b) in basis.iter().enumerate().skip(x + 1) {
                for &c in &basis[y + 1..] {
                    checked += 1;
                    let terms = [
                        self.bracket_vec(a, &self.bracket_vec(b, &single(c))),
                        self.bracket_vec(b, &self.bracket_vec(c, &single(a))),
                        self.bracket_vec(c, &self.bracket_vec(a, &single(b))),
                    ];
                    let mut sum: BTreeMap<Gen, Rational> = BTreeMap::new();
                    for t in terms {
                        for (g, v) in t {
                            *sum.entry(g).or_insert_with(Rational::zero) += v;
                        }
                    }
                    if sum.values().any(|v| !v.is_zero()) {
                        violations.push((self.label(a), self.label(b), self.label(c)));
                    }
                }
            }
        }
        JacobiReport { algebra: self.name(), bound, triples_checked: checked, violations }
    }

    /// Structure table over degrees at most `bound`; `r` is zero throughout.
    pub fn to_table(&self, bound: i64) -> StructureTable {
        let basis = self.basis(bound);
        let mut brackets = Vec::new();
        for (x, &a) in basis.iter().enumerate() {
            for &b in &basis[x + 1..] {
                if self.degree(a) + self.degree(b) <= bound {
                    let out = self.bracket(a, b).into_iter().map(|(g, c)| (self.label(g), c)).collect();
                    brackets.push(TableBracket { i: self.label(a), j: self.label(b), out });
                }
            }
        }
        StructureTable {
            basis: basis.iter().map(|&g| TableBasis { name: self.label(g), d: self.degree(g), r: 0 }).collect(),
            brackets,
        }
    }

    /// `dim g / C^{n+1}`, the codimension of the `(n+1)`-st term of the lower
    /// central series. Computed modulo degrees above `n + 4`; fails if that
    /// window does not contain the whole quotient.
    pub fn growth(&self, n: i64) -> Result<usize> {
        let window = n + 4;
        let basis = self.basis(window);
        let truncate = |v: BTreeMap<Gen, Rational>| -> Vec<(Gen, Rational)> {
            v.into_iter().filter(|(g, _)| self.degree(*g) <= window).collect()
        };
        let mut term: Vec<Vec<(Gen, Rational)>> = basis.iter().map(|&g| vec![(g, int(1))]).collect();
        for _ in 0..n {
            let mut echelon: Echelon<Gen> = Echelon::new();
            let mut next = Vec::new();
            for &a in &basis {
                for v in &term {
                    let map: BTreeMap<Gen, Rational> = v.iter().cloned().collect();
                    let w = truncate(self.bracket_vec(a, &map));
                    if let Reduction::Independent(_) = echelon.insert(&w) {
                        next.push(w);
                    }
                }
            }
            term = next;
        }
        let mut echelon: Echelon<Gen> = Echelon::new();
        for v in &term {
            echelon.insert(v);
        }
        let top_missing = basis
            .iter()
            .filter(|&&g| self.degree(g) == window)
            .any(|&g| echelon.express(&[(g, int(1))]).is_none());
        if top_missing {
            return Err(Error::InvalidArgument(format!(
                "{}: degree {window} is not inside the {}-th central term",
                self.name(),
                n + 1
            )));
        }
        Ok(basis.len() - echelon.rank())
    }
}

impl fmt::Display for PresentedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for PresentedAlgebra {
    type Err = Error;

    /// `m0`, `m2`, `w+`, `n2^3`, or `m0s:5,7` for a central set.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        match lower.as_str() {
            "m0" => return Ok(PresentedAlgebra::M0),
            "m2" => return Ok(PresentedAlgebra::M2),
            "w+" | "wplus" | "witt+" => return Ok(PresentedAlgebra::WPlus),
            "n2^3" | "n2cube" | "n23" => return Ok(PresentedAlgebra::N2Cube),
            _ => {}
        }
        let bad = || Error::InvalidArgument(format!("unknown presented algebra {s:?}"));
        let set = lower.strip_prefix("m0s:").ok_or_else(bad)?;
        let mut values = Vec::new();
        for part in set.split(',') {
            let k: i64 = part.trim().parse().map_err(|_| bad())?;
            if k < 3 || k % 2 == 0 {
                return Err(Error::InvalidArgument(format!("central degrees must be odd and at least 3, got {k}")));
            }
            values.push(k);
        }
        values.sort_unstable();
        values.dedup();
        Ok(PresentedAlgebra::M0Central(values))
    }
}

/// Outcome of [`PresentedAlgebra::jacobi_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JacobiReport {
    pub algebra: String,
    pub bound: i64,
    pub triples_checked: usize,
    pub violations: Vec<(String, String, String)>,
}

pub fn presented_bracket(alg: &PresentedAlgebra, a: Gen, b: Gen) -> Vec<(Gen, Rational)> {
    alg.bracket(a, b)
}

pub fn jacobi_check(alg: &PresentedAlgebra, bound: i64) -> JacobiReport {
    alg.jacobi_check(bound)
}
