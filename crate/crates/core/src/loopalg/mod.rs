//! Matrix realizations of the loop algebra of sl(2) and the twisted loop
//! algebra of sl(3).
//!
//! These are the exact reference side: every structure constant is obtained
//! from a commutator of Laurent-polynomial matrices.
//!
//! - `e_i`, `i >= 0`, spans `sl(2) (x) K[t]`: `e_{3k+1} = 1/2 E12 t^k`,
//!   `e_{3k-1} = E21 t^k`, `e_{3k} = 1/2 diag(1, -1) t^k`;
//! - `f_n`, `n >= 0`, spans the non-negative part of the twisted loop
//!   algebra: `f_{8k+s} = F_s (x) t^(2k)` for `s <= 1` and `F_s (x) t^(2k+1)`
//!   for `s >= 2`, with `F_{-1}, ..., F_6` a fixed basis of sl(3).

mod laurent;
mod realform;

pub use laurent::{LaurentMatrix, LaurentPoly};
pub use realform::{real_form_bracket, real_form_element, verify_real_form_relations, RealFamily, RealLabel, RealRelation};

use serde::Serialize;

use crate::closure::{StructureTable, TableBasis, TableBracket};
use crate::exactring::{int, rat, Rational};

/// The two algebras realized here.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LoopAlgebra {
    /// `sl(2) (x) K[t]`, positive part `n1`.
    Sl2,
    /// Non-negative twisted loop algebra of sl(3), positive part `n2`.
    Sl3Twisted,
}

impl LoopAlgebra {
    pub fn basis(self, n: i64) -> LaurentMatrix {
        match self {
            LoopAlgebra::Sl2 => sl2_basis(n),
            LoopAlgebra::Sl3Twisted => sl3_twisted_basis(n),
        }
    }

    /// Label prefix: `e` or `f`.
    pub fn prefix(self) -> &'static str {
        match self {
            LoopAlgebra::Sl2 => "e",
            LoopAlgebra::Sl3Twisted => "f",
        }
    }

    /// Structure constant from the matrix commutator.
    pub fn constant(self, q: i64, l: i64) -> Rational {
        match self {
            LoopAlgebra::Sl2 => sl2_bracket_constant(q, l),
            LoopAlgebra::Sl3Twisted => sl3_bracket_constant(q, l),
        }
    }

    pub fn canonical_bigrading(self, n: i64) -> (i64, i64) {
        match self {
            LoopAlgebra::Sl2 => sl2_canonical_bigrading(n),
            LoopAlgebra::Sl3Twisted => sl3_canonical_bigrading(n),
        }
    }

    /// Natural degree, the sum of the canonical bigrading components.
    pub fn natural_degree(self, n: i64) -> i64 {
        let (p, q) = self.canonical_bigrading(n);
        p + q
    }

    /// Eigenvalue of `ad` of the index-0 element.
    pub fn toral_eigenvalue(self, n: i64) -> i64 {
        let c = self.constant(0, n);
        assert!(c.is_integer());
        c.to_integer().try_into().expect("small eigenvalue")
    }
}

fn r(n: i64) -> Rational {
    int(n)
}

fn mat(rows: [[i64; 3]; 3]) -> Vec<Vec<Rational>> {
    rows.iter().map(|row| row.iter().map(|&x| r(x)).collect()).collect()
}

/// `e_n` of the sl(2) loop algebra, any integer `n`.
pub fn sl2_basis(n: i64) -> LaurentMatrix {
    let half = rat(1, 2);
    let z = r(0);
    let (rows, k) = match n.rem_euclid(3) {
        1 => (vec![vec![z.clone(), half], vec![z.clone(), z]], (n - 1) / 3),
        2 => (vec![vec![z.clone(), z.clone()], vec![r(1), z]], (n + 1) / 3),
        _ => (vec![vec![half.clone(), z.clone()], vec![z, -half]], n / 3),
    };
    LaurentMatrix::constant_times_power(&rows, k)
}

/// `c_{i,j}` by the residue rule: `1`, `0`, `-1` for `j - i = 1, 0, -1 (mod 3)`.
pub fn sl2_rule_constant(i: i64, j: i64) -> Rational {
    match (j - i).rem_euclid(3) {
        1 => r(1),
        0 => r(0),
        _ => r(-1),
    }
}

/// `c` with `[e_i, e_j] = c e_{i+j}`, from the matrix commutator.
pub fn sl2_bracket_constant(i: i64, j: i64) -> Rational {
    let br = sl2_basis(i).commutator(&sl2_basis(j));
    if br.is_zero() {
        return r(0);
    }
    br.ratio_to(&sl2_basis(i + j))
        .unwrap_or_else(|| panic!("[e{i}, e{j}] is not a multiple of e{}", i + j))
}

/// The sl(3) matrices `F_{-1}, ..., F_6`.
pub fn sl3_base_matrix(s: i64) -> Vec<Vec<Rational>> {
    match s {
        -1 => mat([[0, 0, 0], [1, 0, 0], [0, 1, 0]]),
        0 => mat([[1, 0, 0], [0, 0, 0], [0, 0, -1]]),
        1 => mat([[0, 1, 0], [0, 0, 1], [0, 0, 0]]),
        2 => mat([[0, 0, 0], [0, 0, 0], [1, 0, 0]]),
        3 => mat([[0, 0, 0], [1, 0, 0], [0, -1, 0]]),
        4 => mat([[1, 0, 0], [0, -2, 0], [0, 0, 1]]),
        5 => mat([[0, 1, 0], [0, 0, -1], [0, 0, 0]]),
        6 => mat([[0, 0, 1], [0, 0, 0], [0, 0, 0]]),
        _ => panic!("no base matrix with index {s}"),
    }
}

/// `(s, k)` with `n = 8k + s`, `-1 <= s <= 6`.
fn sl3_residue(n: i64) -> (i64, i64) {
    let s = (n + 1).rem_euclid(8) - 1;
    (s, (n - s) / 8)
}

/// `f_n` of the twisted loop algebra, any integer `n`.
pub fn sl3_twisted_basis(n: i64) -> LaurentMatrix {
    let (s, k) = sl3_residue(n);
    let power = if s <= 1 { 2 * k } else { 2 * k + 1 };
    LaurentMatrix::constant_times_power(&sl3_base_matrix(s), power)
}

/// `d` with `[f_q, f_l] = d f_{q+l}`, from the matrix commutator.
pub fn sl3_bracket_constant(q: i64, l: i64) -> Rational {
    let br = sl3_twisted_basis(q).commutator(&sl3_twisted_basis(l));
    if br.is_zero() {
        return r(0);
    }
    br.ratio_to(&sl3_twisted_basis(q + l))
        .unwrap_or_else(|| panic!("[f{q}, f{l}] is not a multiple of f{}", q + l))
}

/// The order-two automorphism `mu` of sl(3).
pub fn mu(a: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    vec![
        vec![-a[2][2].clone(), a[1][2].clone(), -a[0][2].clone()],
        vec![a[2][1].clone(), -a[1][1].clone(), a[0][1].clone()],
        vec![-a[2][0].clone(), a[1][0].clone(), -a[0][0].clone()],
    ]
}

/// True iff every `t^j` component of `m` is a `(-1)^j` eigenvector of `mu`.
pub fn twist_check(m: &LaurentMatrix) -> bool {
    assert_eq!(m.size(), 3, "the twist is defined on 3x3 matrices");
    m.powers().into_iter().all(|j| {
        let c = m.component(j);
        let sign = if j.rem_euclid(2) == 0 { r(1) } else { r(-1) };
        let expected: Vec<Vec<Rational>> =
            c.iter().map(|row| row.iter().map(|x| x * &sign).collect()).collect();
        mu(&c) == expected
    })
}

/// Table of `d_{q,l}` by residues as printed in the literature: row is the
/// residue of `q`, column the residue of `l`.
pub const PRINTED_TABLE1: [[i64; 8]; 8] = [
    [0, 1, -2, -1, 0, 1, 2, -1],
    [-1, 0, 1, 1, -3, -2, 0, 1],
    [2, -1, 0, 0, 0, 1, -1, 0],
    [1, -1, 0, 0, 3, -1, 1, -2],
    [0, 3, 0, -3, 0, 3, 0, -3],
    [-1, 2, -1, 1, -3, 0, 0, -1],
    [-2, 0, 1, -1, 0, 0, 0, 1],
    [1, -1, 0, 2, 3, 1, -1, 0],
];

/// `d` by residues, computed from matrices with representatives `8 + res`.
pub fn sl3_residue_table() -> [[i64; 8]; 8] {
    let mut t = [[0i64; 8]; 8];
    for (q, row) in t.iter_mut().enumerate() {
        for (l, cell) in row.iter_mut().enumerate() {
            let d = sl3_bracket_constant(8 + q as i64, 8 + l as i64);
            *cell = d.to_integer().try_into().expect("small constant");
        }
    }
    t
}

/// A residue cell where the printed table and the matrices disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table1Diff {
    pub q_residue: usize,
    pub l_residue: usize,
    pub printed: i64,
    pub matrix: i64,
}

pub fn table1_diff() -> Vec<Table1Diff> {
    let computed = sl3_residue_table();
    let mut out = Vec::new();
    for q in 0..8 {
        for l in 0..8 {
            if computed[q][l] != PRINTED_TABLE1[q][l] {
                out.push(Table1Diff { q_residue: q, l_residue: l, printed: PRINTED_TABLE1[q][l], matrix: computed[q][l] });
            }
        }
    }
    out
}

/// Residue pairs violating `d_{i,j} + d_{q,l} = 0` for `i + q = j + l = 0 (mod 8)`.
pub fn residue_relation_violations(table: &[[i64; 8]; 8]) -> Vec<(usize, usize)> {
    let mut bad = Vec::new();
    for i in 0..8 {
        for j in 0..8 {
            let (q, l) = ((8 - i) % 8, (8 - j) % 8);
            if table[i][j] + table[q][l] != 0 {
                bad.push((i, j));
            }
        }
    }
    bad
}

/// Canonical bigrading of `e_n`, `n >= 0`.
pub fn sl2_canonical_bigrading(n: i64) -> (i64, i64) {
    let k = n.div_euclid(3);
    match n.rem_euclid(3) {
        1 => (k + 1, k),
        2 => (k, k + 1),
        _ => (k, k),
    }
}

/// Canonical bigrading of `f_n`, `n >= 0`.
pub fn sl3_canonical_bigrading(n: i64) -> (i64, i64) {
    let (s, m) = sl3_residue(n);
    if s <= 1 {
        (4 * m + s, 2 * m)
    } else {
        (4 * m + s - 2, 2 * m + 1)
    }
}

/// Label of `e_n` / `f_n` in the width-two natural-grading bases
/// (`a`, `b`, `c` for n1; `a`, `b` for n2).
pub fn natural_label(alg: LoopAlgebra, n: i64) -> String {
    assert!(n >= 1);
    match alg {
        LoopAlgebra::Sl2 => {
            let k = n.div_euclid(3);
            match n.rem_euclid(3) {
                1 => format!("a{}", 2 * k + 1),
                2 => format!("b{}", 2 * k + 1),
                _ => format!("c{}", 2 * k),
            }
        }
        LoopAlgebra::Sl3Twisted => {
            let q = n.div_euclid(8);
            let base = 6 * q;
            match n.rem_euclid(8) {
                1 => format!("a{}", base + 1),
                2 => format!("b{}", base + 1),
                3 => format!("a{}", base + 2),
                4 => format!("a{}", base + 3),
                5 => format!("a{}", base + 4),
                6 => format!("a{}", base + 5),
                7 => format!("b{}", base + 5),
                _ => format!("a{}", base),
            }
        }
    }
}

/// Basis indices of the natural-degree-`i` component of the positive part.
pub fn natural_grading_basis(alg: LoopAlgebra, i: i64) -> Vec<i64> {
    assert!(i >= 1);
    // Natural degree grows at least like 3n/4, so 2i + 2 bounds the search.
    (1..=2 * i + 2).filter(|&n| alg.natural_degree(n) == i).collect()
}

/// Structure table of the non-negative part over indices whose natural
/// degree is at most `max_degree`.
pub fn matrix_structure_table(alg: LoopAlgebra, max_degree: i64) -> StructureTable {
    let p = alg.prefix();
    let indices: Vec<i64> = (0..=2 * max_degree + 2).filter(|&n| alg.natural_degree(n) <= max_degree).collect();
    let basis = indices
        .iter()
        .map(|&n| TableBasis { name: format!("{p}{n}"), d: alg.natural_degree(n), r: alg.toral_eigenvalue(n) })
        .collect();
    let mut brackets = Vec::new();
    for (x, &q) in indices.iter().enumerate() {
        for &l in &indices[x + 1..] {
            if alg.natural_degree(q) + alg.natural_degree(l) > max_degree {
                continue;
            }
            let c = alg.constant(q, l);
            let out = if num_traits::Zero::is_zero(&c) { vec![] } else { vec![(format!("{p}{}", q + l), c)] };
            brackets.push(TableBracket { i: format!("{p}{q}"), j: format!("{p}{l}"), out });
        }
    }
    StructureTable { basis, brackets }
}

/// Which Serre relations to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AffineType {
    /// Cartan matrix `[[2,-2],[-2,2]]`: `ad^3 e1 (e2) = ad^3 e2 (e1) = 0`.
    A11,
    /// Cartan matrix `[[2,-4],[-1,2]]`: `ad^5 e1 (e2) = ad^2 e2 (e1) = 0`.
    A22,
}

impl AffineType {
    /// `(i, j, power)` triples `ad^power g_i (g_j)` that must vanish.
    pub fn relations(self) -> [(usize, usize, usize); 2] {
        match self {
            AffineType::A11 => [(1, 2, 3), (2, 1, 3)],
            AffineType::A22 => [(1, 2, 5), (2, 1, 2)],
        }
    }

    pub fn loop_algebra(self) -> LoopAlgebra {
        match self {
            AffineType::A11 => LoopAlgebra::Sl2,
            AffineType::A22 => LoopAlgebra::Sl3Twisted,
        }
    }
}

/// `ad^power x (y)` evaluated by any bracket.
pub fn ad_power<T: Clone, F: Fn(&T, &T) -> T>(x: &T, y: &T, power: usize, bracket: F) -> T {
    (0..power).fold(y.clone(), |acc, _| bracket(x, &acc))
}

/// Checks the Serre relations on the matrix generators `g_1, g_2`; returns
/// `(relation, vanishes)` pairs.
pub fn serre_check_matrix(ty: AffineType) -> Vec<(String, bool)> {
    let alg = ty.loop_algebra();
    let p = alg.prefix();
    ty.relations()
        .iter()
        .map(|&(i, j, k)| {
            let v = ad_power(&alg.basis(i as i64), &alg.basis(j as i64), k, |a, b| a.commutator(b));
            (format!("ad^{k} {p}{i} ({p}{j})"), v.is_zero())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_rule_examples() {
        assert_eq!(sl2_bracket_constant(0, 1), r(1));
        assert_eq!(sl2_bracket_constant(1, 4), r(0));
        assert_eq!(sl2_bracket_constant(2, 1), r(-1));
    }

    #[test]
    fn sl2_matrices_follow_residue_rule() {
        for i in 0..=24 {
            for j in 0..=24 {
                assert_eq!(sl2_bracket_constant(i, j), sl2_rule_constant(i, j), "[e{i}, e{j}]");
            }
        }
    }

    #[test]
    fn sl3_examples() {
        assert_eq!(sl3_bracket_constant(0, 2), r(-2));
        assert_eq!(sl3_bracket_constant(1, 4), r(-3));
        assert_eq!(sl3_bracket_constant(4, 8), r(0));
        assert_eq!(sl3_bracket_constant(3, 4), r(3));
    }

    #[test]
    fn sl3_constants_are_skew_and_residue_periodic() {
        for q in 0..=16 {
            for l in 0..=16 {
                let d = sl3_bracket_constant(q, l);
                assert_eq!(d, -sl3_bracket_constant(l, q));
                assert_eq!(d, sl3_bracket_constant(q % 8 + 8, l % 8 + 8), "d({q},{l})");
            }
        }
    }

    #[test]
    fn printed_table_differs_in_one_antisymmetric_pair() {
        let diff = table1_diff();
        assert_eq!(
            diff,
            vec![
                Table1Diff { q_residue: 5, l_residue: 7, printed: -1, matrix: 1 },
                Table1Diff { q_residue: 7, l_residue: 5, printed: 1, matrix: -1 },
            ]
        );
        assert!(residue_relation_violations(&sl3_residue_table()).is_empty());
        assert!(!residue_relation_violations(&PRINTED_TABLE1).is_empty());
    }

    #[test]
    fn twist_parity() {
        for n in 0..20 {
            assert!(twist_check(&sl3_twisted_basis(n)), "f{n}");
        }
        let bad = LaurentMatrix::constant_times_power(&sl3_base_matrix(0), 1);
        assert!(!twist_check(&bad));
        // Brackets of combinations stay twisted.
        let a = sl3_twisted_basis(3).add(&sl3_twisted_basis(8).scale(&rat(2, 3)));
        let b = sl3_twisted_basis(5).sub(&sl3_twisted_basis(10));
        assert!(twist_check(&a.commutator(&b)));
    }

    #[test]
    fn canonical_bigradings() {
        assert_eq!(sl2_canonical_bigrading(7), (3, 2));
        assert_eq!(sl3_canonical_bigrading(15), (7, 4));
        for k in 0..5 {
            assert_eq!(LoopAlgebra::Sl3Twisted.natural_degree(8 * k + 6), 6 * k + 5);
            assert_eq!(LoopAlgebra::Sl3Twisted.natural_degree(8 * k + 7), 6 * k + 5);
        }
    }

    #[test]
    fn canonical_bigradings_are_additive() {
        for alg in [LoopAlgebra::Sl2, LoopAlgebra::Sl3Twisted] {
            assert_eq!(alg.canonical_bigrading(1), (1, 0));
            assert_eq!(alg.canonical_bigrading(2), (0, 1));
            for q in 1..=30 {
                for l in 1..=30 {
                    if alg.constant(q, l) != r(0) {
                        let (a, b) = (alg.canonical_bigrading(q), alg.canonical_bigrading(l));
                        assert_eq!(alg.canonical_bigrading(q + l), (a.0 + b.0, a.1 + b.1));
                    }
                }
            }
        }
    }

    #[test]
    fn natural_components() {
        let dims = |alg: LoopAlgebra| (1..=12).map(|i| natural_grading_basis(alg, i).len()).collect::<Vec<_>>();
        assert_eq!(dims(LoopAlgebra::Sl2), vec![2, 1, 2, 1, 2, 1, 2, 1, 2, 1, 2, 1]);
        assert_eq!(dims(LoopAlgebra::Sl3Twisted), vec![2, 1, 1, 1, 2, 1, 2, 1, 1, 1, 2, 1]);
        assert_eq!(natural_label(LoopAlgebra::Sl2, 4), "a3");
        assert_eq!(natural_label(LoopAlgebra::Sl3Twisted, 15), "b11");
    }

    #[test]
    fn width_two_relations_of_n1() {
        // [a_{2k+1}, b_{2l+1}] = c_{2(k+l+1)}, [c_{2k}, a_{2l+1}] = a_{2(k+l)+1},
        // [c_{2k}, b_{2l+1}] = -b_{2(k+l)+1}
        for k in 0..5 {
            for l in 0..5 {
                assert_eq!(sl2_bracket_constant(3 * k + 1, 3 * l + 2), r(1));
                if k >= 1 {
                    assert_eq!(sl2_bracket_constant(3 * k, 3 * l + 1), r(1));
                    assert_eq!(sl2_bracket_constant(3 * k, 3 * l + 2), r(-1));
                }
            }
        }
    }

    #[test]
    fn serre_relations_on_matrices() {
        for ty in [AffineType::A11, AffineType::A22] {
            for (rel, ok) in serre_check_matrix(ty) {
                assert!(ok, "{rel}");
            }
        }
        // One power less does not vanish.
        let e1 = sl2_basis(1);
        let e2 = sl2_basis(2);
        assert!(!ad_power(&e1, &e2, 2, |a, b| a.commutator(b)).is_zero());
    }

    #[test]
    fn table_has_expected_shape() {
        let t = matrix_structure_table(LoopAlgebra::Sl2, 4);
        assert_eq!(t.basis.len(), 7);
        assert!(t.grading_violations().is_empty());
        assert!(t.jacobi_violations().is_empty());
        assert_eq!(t.bracket("e1", "e2"), Some(vec![("e3".to_string(), r(1))]));
    }
}
