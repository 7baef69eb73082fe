use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use crate::exactring::{fmt_rational, Rational};

/// A named, bigraded basis entry of a structure table. `d` is the natural
/// degree and `r` the eigenvalue of the toral element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableBasis {
    pub name: String,
    pub d: i64,
    pub r: i64,
}

/// `[i, j] = sum c * out_k`; an empty `out` records a vanishing bracket.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableBracket {
    pub i: String,
    pub j: String,
    pub out: Vec<(String, Rational)>,
}

/// Basis list plus exact bracket coefficients over a finite degree window.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StructureTable {
    pub basis: Vec<TableBasis>,
    pub brackets: Vec<TableBracket>,
}

impl StructureTable {
    fn position(&self) -> HashMap<&str, usize> {
        self.basis.iter().enumerate().map(|(k, b)| (b.name.as_str(), k)).collect()
    }

    pub fn basis_entry(&self, name: &str) -> Option<&TableBasis> {
        self.basis.iter().find(|b| b.name == name)
    }

    /// Expansion of `[a, b]`, using antisymmetry when only `[b, a]` is stored.
    pub fn bracket(&self, a: &str, b: &str) -> Option<Vec<(String, Rational)>> {
        if a == b {
            return self.basis_entry(a).map(|_| Vec::new());
        }
        for br in &self.brackets {
            if br.i == a && br.j == b {
                return Some(br.out.clone());
            }
            if br.i == b && br.j == a {
                return Some(br.out.iter().map(|(n, c)| (n.clone(), -c)).collect());
            }
        }
        None
    }

    /// Puts basis entries and brackets in basis order, each pair as `i < j`.
    pub fn canonicalize(&mut self) {
        let pos: HashMap<String, usize> =
            self.basis.iter().enumerate().map(|(k, b)| (b.name.clone(), k)).collect();
        for br in &mut self.brackets {
            if pos[&br.i] > pos[&br.j] {
                std::mem::swap(&mut br.i, &mut br.j);
                for (_, c) in &mut br.out {
                    *c = -c.clone();
                }
            }
            br.out.sort_by_key(|(n, _)| pos[n]);
        }
        self.brackets.sort_by_key(|br| (pos[&br.i], pos[&br.j]));
    }

    /// Renames every label through `f`.
    pub fn renamed<F: Fn(&str) -> String>(&self, f: F) -> StructureTable {
        StructureTable {
            basis: self
                .basis
                .iter()
                .map(|b| TableBasis { name: f(&b.name), d: b.d, r: b.r })
                .collect(),
            brackets: self
                .brackets
                .iter()
                .map(|br| TableBracket {
                    i: f(&br.i),
                    j: f(&br.j),
                    out: br.out.iter().map(|(n, c)| (f(n), c.clone())).collect(),
                })
                .collect(),
        }
    }

    /// Keeps basis entries with `d <= max_degree` and brackets whose
    /// operands' degrees sum to at most `max_degree`.
    pub fn restricted(&self, max_degree: i64) -> StructureTable {
        let deg: HashMap<&str, i64> = self.basis.iter().map(|b| (b.name.as_str(), b.d)).collect();
        StructureTable {
            basis: self.basis.iter().filter(|b| b.d <= max_degree).cloned().collect(),
            brackets: self
                .brackets
                .iter()
                .filter(|br| deg[br.i.as_str()] + deg[br.j.as_str()] <= max_degree)
                .cloned()
                .collect(),
        }
    }

    /// Nonzero coefficients whose output grading is not the sum of the
    /// operand gradings.
    pub fn grading_violations(&self) -> Vec<String> {
        let g: HashMap<&str, (i64, i64)> =
            self.basis.iter().map(|b| (b.name.as_str(), (b.d, b.r))).collect();
        let mut bad = Vec::new();
        for br in &self.brackets {
            let (a, b) = (g[br.i.as_str()], g[br.j.as_str()]);
            for (n, _) in &br.out {
                if g[n.as_str()] != (a.0 + b.0, a.1 + b.1) {
                    bad.push(format!("[{}, {}] -> {}", br.i, br.j, n));
                }
            }
        }
        bad
    }

    /// Triples `(a, b, c)` in the window whose Jacobi sum is nonzero.
    /// Triples needing a bracket outside the table are skipped.
    pub fn jacobi_violations(&self) -> Vec<(String, String, String)> {
        let pos = self.position();
        let mut map: HashMap<(usize, usize), Vec<(usize, Rational)>> = HashMap::new();
        for br in &self.brackets {
            let (i, j) = (pos[br.i.as_str()], pos[br.j.as_str()]);
            let out: Vec<(usize, Rational)> = br.out.iter().map(|(n, c)| (pos[n.as_str()], c.clone())).collect();
            map.insert((j, i), out.iter().map(|(k, c)| (*k, -c)).collect());
            map.insert((i, j), out);
        }
        let get = |i: usize, j: usize| -> Option<Vec<(usize, Rational)>> {
            if i == j {
                Some(Vec::new())
            } else {
                map.get(&(i, j)).cloned()
            }
        };
        let nested = |a: usize, b: usize, c: usize| -> Option<BTreeMap<usize, Rational>> {
            let mut acc = BTreeMap::new();
            for (k, x) in get(a, b)? {
                for (m, y) in get(k, c)? {
                    *acc.entry(m).or_insert_with(Rational::zero) += &x * &y;
                }
            }
            Some(acc)
        };
        let n = self.basis.len();
        let mut bad = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let (Some(x), Some(y), Some(z)) = (nested(a, b, c), nested(b, c, a), nested(c, a, b)) else {
                        continue;
                    };
                    let mut sum: BTreeMap<usize, Rational> = BTreeMap::new();
                    for (k, v) in x.into_iter().chain(y).chain(z) {
                        *sum.entry(k).or_insert_with(Rational::zero) += v;
                    }
                    if sum.values().any(|v| !v.is_zero()) {
                        let name = |k: usize| self.basis[k].name.clone();
                        bad.push((name(a), name(b), name(c)));
                    }
                }
            }
        }
        bad
    }

    pub fn to_json(&self) -> Value {
        json!({
            "basis": self.basis,
            "brackets": self.brackets.iter().map(|br| json!({
                "i": br.i,
                "j": br.j,
                "out": br.out.iter().map(|(n, c)| json!([n, fmt_rational(c)])).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }

    /// Compact JSON of the canonicalized table; equal tables give equal bytes.
    pub fn canonical_json(&self) -> String {
        let mut t = self.clone();
        t.canonicalize();
        serde_json::to_string(&t.to_json()).expect("table serializes")
    }
}

impl Serialize for StructureTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}
