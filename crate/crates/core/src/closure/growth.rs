use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use super::StructureTable;
use crate::exactring::Rational;
use crate::linalg::{Echelon, Reduction};

/// Cumulative number of non-toral basis elements of degree at most `n`.
pub fn growth_function(table: &StructureTable, n: i64) -> usize {
    table.basis.iter().filter(|b| b.d >= 1 && b.d <= n).count()
}

/// `dim V_n` for `n = 1..=max_n`, where `V_1` is spanned by the elements of
/// degree at most one and `V_n = V_{n-1} + [V_1, V_{n-1}]`. Computed from the
/// structure constants alone; `None` if a needed bracket is missing.
pub fn span_growth(table: &StructureTable, max_n: i64) -> Option<Vec<usize>> {
    let names: Vec<&str> = table.basis.iter().map(|b| b.name.as_str()).collect();
    let index: BTreeMap<&str, usize> = names.iter().enumerate().map(|(k, n)| (*n, k)).collect();
    let gens: Vec<usize> = (0..names.len()).filter(|&k| table.basis[k].d <= 1).collect();
    let mut echelon: Echelon<usize> = Echelon::new();
    let mut fresh: Vec<Vec<(usize, Rational)>> = Vec::new();
    for &g in &gens {
        let v = vec![(g, Rational::from_integer(1.into()))];
        if let Reduction::Independent(_) = echelon.insert(&v) {
            fresh.push(v);
        }
    }
    let mut dims = vec![echelon.rank()];
    for _ in 2..=max_n {
        let mut next = Vec::new();
        for &g in &gens {
            for v in &fresh {
                let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
                for (k, c) in v {
                    for (name, x) in table.bracket(names[g], names[*k])? {
                        *acc.entry(index[name.as_str()]).or_insert_with(Rational::zero) += c * &x;
                    }
                }
                let w: Vec<(usize, Rational)> = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
                if let Reduction::Independent(_) = echelon.insert(&w) {
                    next.push(w);
                }
            }
        }
        fresh = next;
        dims.push(echelon.rank());
    }
    Some(dims)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthRow {
    pub n: i64,
    pub full: usize,
    pub commutant: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthOffset {
    pub rows: Vec<GrowthRow>,
    /// The common difference `full - commutant`, if constant over the window.
    pub offset: Option<i64>,
}

/// Compares the span growth of the whole table with the commutant count over
/// the table's degree window.
pub fn commutant_growth_offset(table: &StructureTable) -> GrowthOffset {
    let max_n = table.basis.iter().map(|b| b.d).max().unwrap_or(0).max(1);
    let full = span_growth(table, max_n).unwrap_or_default();
    let rows: Vec<GrowthRow> = full
        .iter()
        .enumerate()
        .map(|(k, &f)| {
            let n = k as i64 + 1;
            GrowthRow { n, full: f, commutant: growth_function(table, n) }
        })
        .collect();
    let diffs: Vec<i64> = rows.iter().map(|r| r.full as i64 - r.commutant as i64).collect();
    let offset = match diffs.first() {
        Some(&d) if diffs.iter().all(|&x| x == d) && rows.len() as i64 == max_n => Some(d),
        _ => None,
    };
    GrowthOffset { rows, offset }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::{generate, Normalization};
    use crate::equation::EquationSpec;

    #[test]
    fn liouville_offset() {
        let alg = generate(&EquationSpec::liouville(), 9, 6, Normalization::Raw).unwrap();
        let g = commutant_growth_offset(&alg.table);
        assert_eq!(g.offset, Some(1));
        assert!(g.rows.iter().all(|r| r.full == 2 && r.commutant == 1));
    }

    #[test]
    fn sinh_growth() {
        let alg = generate(&EquationSpec::sinh_gordon(), 10, 7, Normalization::SinhGordon).unwrap();
        let f: Vec<usize> = (1..=7).map(|n| growth_function(&alg.table, n)).collect();
        assert_eq!(f, vec![2, 3, 5, 6, 8, 9, 11]);
        assert_eq!(commutant_growth_offset(&alg.table).offset, Some(1));
    }
}
