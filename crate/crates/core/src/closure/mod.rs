//! Characteristic Lie algebras as graded bracket closures.
//!
//! Generation runs breadth-first over the natural degree. The generators are
//! the toral element `X0 = d/du` (degree 0) and the `ad X0` eigencomponents
//! of `X(f)` (degree 1). Every degree-`n` candidate is a bracket of two
//! non-toral basis elements whose degrees add up to `n`; candidates are
//! reduced exactly against the earlier candidates of the same bigrading and
//! the independent ones become new basis elements.

mod growth;
mod presented;
mod table;

pub use growth::{commutant_growth_offset, growth_function, span_growth, GrowthOffset, GrowthRow};
pub use presented::{jacobi_check, presented_bracket, Gen, JacobiReport, PresentedAlgebra};
pub use table::*;

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::equation::EquationSpec;
use crate::exactring::{fmt_rational, int, rat, Quasipolynomial, Rational};
use crate::jetfield::{Bigrading, FieldKey, JetField, ZeroStatus};
use crate::linalg::{Echelon, Reduction};
use crate::{Error, Result};

/// How new basis elements are scaled and named.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    /// Raw brackets, names `Z0, Z1, ...`.
    Raw,
    /// `X0', X1', ...` for `f = sinh u`.
    SinhGordon,
    /// `Y0', Y1', ...` for `f = e^u + e^(-2u)`.
    Tzitzeica,
}

/// How a normalized element is built from earlier ones.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Recipe {
    /// `sign * X(e^(alpha*u))`.
    Exp { sign: Rational, alpha: i64 },
    /// `coeff * [left, right]`.
    Bracket { coeff: Rational, left: usize, right: usize },
}

impl Normalization {
    /// The normalization whose equation matches `eq` up to the right-hand
    /// side, else `Raw`.
    pub fn for_equation(eq: &EquationSpec) -> Self {
        let rhs = eq.rhs();
        if rhs == EquationSpec::sinh_gordon().rhs() {
            Normalization::SinhGordon
        } else if rhs == EquationSpec::tzitzeica().rhs() {
            Normalization::Tzitzeica
        } else {
            Normalization::Raw
        }
    }

    pub fn prefix(self) -> &'static str {
        match self {
            Normalization::Raw => "Z",
            Normalization::SinhGordon => "X",
            Normalization::Tzitzeica => "Y",
        }
    }

    fn exponents(self) -> Option<[i64; 2]> {
        match self {
            Normalization::Raw => None,
            Normalization::SinhGordon => Some([1, -1]),
            Normalization::Tzitzeica => Some([1, -2]),
        }
    }

    fn recipe(self, index: usize) -> Option<Recipe> {
        let n = index;
        let br = |coeff: Rational, left: usize, right: usize| Some(Recipe::Bracket { coeff, left, right });
        match (self, n) {
            (Normalization::Raw, _) | (_, 0) => None,
            (Normalization::SinhGordon, 1) => Some(Recipe::Exp { sign: int(1), alpha: 1 }),
            (Normalization::SinhGordon, 2) => Some(Recipe::Exp { sign: int(-1), alpha: -1 }),
            (Normalization::SinhGordon, _) => match n % 3 {
                0 => br(int(1), 1, n - 1),
                1 => br(int(-1), 1, n - 1),
                _ => br(int(1), 2, n - 2),
            },
            (Normalization::Tzitzeica, 1) => Some(Recipe::Exp { sign: int(1), alpha: 1 }),
            (Normalization::Tzitzeica, 2) => Some(Recipe::Exp { sign: int(1), alpha: -2 }),
            (Normalization::Tzitzeica, _) => match n % 8 {
                3 | 4 | 0 => br(int(1), 1, n - 1),
                5 => br(rat(-1, 3), 1, n - 1),
                6 => br(rat(-1, 2), 1, n - 1),
                7 => br(int(1), 2, n - 2),
                1 => br(int(-1), 1, n - 1),
                _ => br(rat(1, 2), 2, n - 2),
            },
        }
    }
}

impl fmt::Display for Normalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Normalization::Raw => "raw",
            Normalization::SinhGordon => "sinh-gordon",
            Normalization::Tzitzeica => "tzitzeica",
        })
    }
}

/// Where a basis element came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Origin {
    Toral,
    /// `c * X(e^(alpha*u))`, a summand of `X(f)`.
    Generator { alpha: i64 },
    /// First candidate bracket found independent.
    Bracket { left: String, right: String },
}

#[derive(Clone, Debug)]
pub struct BasisElement {
    pub name: String,
    pub index: usize,
    pub natural_degree: i64,
    pub bigrading: Bigrading,
    pub eigenvalue: i64,
    /// Normalized field, `scale * raw`.
    pub field: JetField,
    /// Field as produced by the closure.
    pub raw: JetField,
    pub scale: Rational,
    pub origin: Origin,
}

impl BasisElement {
    pub fn is_toral(&self) -> bool {
        self.natural_degree == 0
    }

    pub fn to_json(&self, with_field: bool) -> Value {
        let mut v = json!({
            "name": self.name,
            "natural_degree": self.natural_degree,
            "bigrading": [self.bigrading.d, self.bigrading.r],
            "eigenvalue": self.eigenvalue,
            "scale": fmt_rational(&self.scale),
            "origin": self.origin,
        });
        if with_field {
            v["field"] = self.field.to_json();
        }
        v
    }
}

/// A declared dependency together with its truncated zero test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub left: String,
    pub right: String,
    pub expansion: Vec<(String, Rational)>,
    pub status: ZeroStatus,
}

impl Certificate {
    /// `[left, right] = ...` in normalized elements.
    pub fn relation(&self) -> String {
        format!("[{}, {}] = {}", self.left, self.right, format_combination(&self.expansion))
    }
}

impl Serialize for Certificate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        json!({ "relation": self.relation(), "status": self.status.to_string() }).serialize(s)
    }
}

/// `c1*A + c2*B`, or `0` when empty.
pub fn format_combination(terms: &[(String, Rational)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    terms
        .iter()
        .map(|(n, c)| if c.is_one() { n.clone() } else { format!("{}*{}", fmt_rational(c), n) })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Result of a closure run.
#[derive(Clone, Debug)]
pub struct CharacteristicAlgebra {
    pub equation: EquationSpec,
    pub order: usize,
    pub max_degree: i64,
    pub normalization: Normalization,
    pub basis: Vec<BasisElement>,
    pub table: StructureTable,
    pub certificates: Vec<Certificate>,
}

impl CharacteristicAlgebra {
    pub fn element(&self, name: &str) -> Option<&BasisElement> {
        self.basis.iter().find(|b| b.name == name)
    }

    /// Number of basis elements of each natural degree `1..=max_degree`.
    pub fn dimensions(&self) -> Vec<usize> {
        (1..=self.max_degree)
            .map(|d| self.basis.iter().filter(|b| b.natural_degree == d).count())
            .collect()
    }

    pub fn to_json(&self, with_fields: bool) -> Value {
        json!({
            "equation": self.equation,
            "order": self.order,
            "max_degree": self.max_degree,
            "normalization": self.normalization,
            "grading_convention": "slot-weight-j-minus-d",
            "basis": self.basis.iter().map(|b| b.to_json(with_fields)).collect::<Vec<_>>(),
            "table": self.table,
            "certificates": self.certificates,
        })
    }
}

fn mismatch(msg: String) -> Error {
    Error::Mismatch(msg)
}

/// Closure of `X0` and the eigencomponents of `X(f)` through natural degree
/// `max_degree`, on jets truncated at `order`.
pub fn generate(
    eq: &EquationSpec,
    order: usize,
    max_degree: i64,
    normalization: Normalization,
) -> Result<CharacteristicAlgebra> {
    if max_degree < 1 {
        return Err(Error::InvalidArgument(format!("degree must be at least 1, got {max_degree}")));
    }
    if (order as i64) <= max_degree + 2 {
        return Err(Error::OrderTooSmall {
            order,
            reason: format!("degree {max_degree} needs order at least {}", max_degree + 3),
        });
    }
    if let Some(want) = normalization.exponents() {
        let mut have = eq.exponents();
        have.sort_unstable_by(|a, b| b.cmp(a));
        if have != want {
            return Err(Error::InvalidArgument(format!(
                "{normalization} normalization does not apply to {}",
                eq.rhs()
            )));
        }
    }
    let prefix = normalization.prefix();
    let mut basis: Vec<BasisElement> = Vec::new();
    let x0 = JetField::x0(order);
    basis.push(BasisElement {
        name: format!("{prefix}0"),
        index: 0,
        natural_degree: 0,
        bigrading: Bigrading::new(0, 0),
        eigenvalue: 0,
        field: x0.clone(),
        raw: x0,
        scale: int(1),
        origin: Origin::Toral,
    });

    let mut components = eq.terms.clone();
    components.sort_by(|a, b| b.1.cmp(&a.1));
    for (c, alpha) in components {
        let raw = JetField::xf(&Quasipolynomial::exponential_sum([(c, alpha)]), order)?;
        let index = basis.len();
        let scale = normalized_scale(normalization, index, &basis, &raw)?;
        basis.push(new_element(prefix, index, raw, scale, Origin::Generator { alpha })?);
    }

    let mut brackets: Vec<TableBracket> = Vec::new();
    let mut certificates = Vec::new();
    let mut echelons: HashMap<(i64, i64), (Echelon<FieldKey>, Vec<usize>)> = HashMap::new();

    for n in 2..=max_degree {
        let pairs: Vec<(usize, usize)> = (1..basis.len())
            .flat_map(|a| (a + 1..basis.len()).map(move |b| (a, b)))
            .filter(|&(a, b)| basis[a].natural_degree + basis[b].natural_degree == n)
            .collect();
        let fields: Vec<JetField> = pairs
            .par_iter()
            .map(|&(a, b)| basis[a].field.bracket(&basis[b].field))
            .collect::<Result<_>>()?;
        let mut order_of: Vec<usize> = (0..pairs.len()).collect();
        order_of.sort_by_key(|&k| {
            let (a, b) = pairs[k];
            (-(basis[a].eigenvalue + basis[b].eigenvalue), k)
        });
        for k in order_of {
            let (a, b) = pairs[k];
            let cand = &fields[k];
            let r = basis[a].eigenvalue + basis[b].eigenvalue;
            let (left, right) = (basis[a].name.clone(), basis[b].name.clone());
            let (echelon, owners) = echelons.entry((n, r)).or_insert_with(|| (Echelon::new(), Vec::new()));
            match echelon.insert(&cand.to_vector()) {
                Reduction::Independent(_) => {
                    let index = basis.len();
                    let scale = normalized_scale(normalization, index, &basis, cand)?;
                    let origin = Origin::Bracket { left: left.clone(), right: right.clone() };
                    let el = new_element(prefix, index, cand.clone(), scale, origin)?;
                    if el.natural_degree != n || el.eigenvalue != r {
                        return Err(mismatch(format!("[{left}, {right}] has bigrading {}", el.bigrading)));
                    }
                    owners.push(index);
                    brackets.push(TableBracket { i: left, j: right, out: vec![(el.name.clone(), el.scale.recip())] });
                    basis.push(el);
                }
                Reduction::Dependent(expansion) => {
                    let mut residual = cand.clone();
                    let mut out = Vec::new();
                    for (i, c) in expansion {
                        let owner = &basis[owners[i]];
                        residual = residual.sub(&owner.raw.scale(&c));
                        out.push((owner.name.clone(), c / &owner.scale));
                    }
                    certificates.push(Certificate {
                        left: left.clone(),
                        right: right.clone(),
                        expansion: out.clone(),
                        status: residual.is_zero_up_to(),
                    });
                    brackets.push(TableBracket { i: left, j: right, out });
                }
            }
        }
    }

    for el in &basis[1..] {
        let out = if el.eigenvalue == 0 { vec![] } else { vec![(el.name.clone(), int(el.eigenvalue))] };
        brackets.push(TableBracket { i: basis[0].name.clone(), j: el.name.clone(), out });
    }
    let mut table = StructureTable {
        basis: basis
            .iter()
            .map(|b| TableBasis { name: b.name.clone(), d: b.natural_degree, r: b.eigenvalue })
            .collect(),
        brackets,
    };
    table.canonicalize();
    Ok(CharacteristicAlgebra { equation: eq.clone(), order, max_degree, normalization, basis, table, certificates })
}

fn normalized_scale(norm: Normalization, index: usize, basis: &[BasisElement], raw: &JetField) -> Result<Rational> {
    let order = raw.valid_order();
    let target = match norm.recipe(index) {
        None => return Ok(Rational::one()),
        Some(Recipe::Exp { sign, alpha }) => JetField::xf(&Quasipolynomial::exp(alpha), order)?.scale(&sign),
        Some(Recipe::Bracket { coeff, left, right }) => {
            if left >= index || right >= index {
                return Err(mismatch(format!("element {index} is defined through a later element")));
            }
            basis[left].field.bracket(&basis[right].field)?.scale(&coeff)
        }
    };
    target
        .ratio_to(raw)
        .ok_or_else(|| mismatch(format!("element {index} is not proportional to its {norm} definition")))
}

fn new_element(prefix: &str, index: usize, raw: JetField, scale: Rational, origin: Origin) -> Result<BasisElement> {
    let name = format!("{prefix}{index}");
    let field = raw.scale(&scale);
    let bigrading = field.bigrading().ok_or_else(|| mismatch(format!("{name} is not bihomogeneous")))?;
    let eigenvalue = field.ad_x0_eigenvalue().ok_or_else(|| mismatch(format!("{name} is not an ad X0 eigenvector")))?;
    if eigenvalue != bigrading.r {
        return Err(mismatch(format!("{name} has eigenvalue {eigenvalue} but bigrading {bigrading}")));
    }
    debug_assert!(!scale.is_zero());
    Ok(BasisElement { name, index, natural_degree: bigrading.d, bigrading, eigenvalue, field, raw, scale, origin })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::int;

    fn sinh(d: i64) -> CharacteristicAlgebra {
        generate(&EquationSpec::sinh_gordon(), (d + 3) as usize, d, Normalization::SinhGordon).unwrap()
    }

    fn one(name: &str, c: Rational) -> Option<Vec<(String, Rational)>> {
        Some(vec![(name.to_string(), c)])
    }

    #[test]
    fn liouville_is_two_dimensional() {
        let alg = generate(&EquationSpec::liouville(), 8, 5, Normalization::Raw).unwrap();
        assert_eq!(alg.basis.len(), 2);
        assert_eq!(alg.table.brackets.len(), 1);
        assert_eq!(alg.table.bracket("Z0", "Z1"), one("Z1", int(1)));
    }

    #[test]
    fn sinh_gordon_relations() {
        let alg = sinh(8);
        assert_eq!(alg.dimensions(), vec![2, 1, 2, 1, 2, 1, 2, 1]);
        assert_eq!(alg.table.bracket("X3", "X1"), one("X4", int(1)));
        assert_eq!(alg.table.bracket("X4", "X2"), one("X6", int(1)));
        let eig: Vec<i64> = alg.basis[1..].iter().map(|b| b.eigenvalue).collect();
        let expected: Vec<i64> = (1..alg.basis.len()).map(|n| [0, 1, -1][n % 3]).collect();
        assert_eq!(eig, expected);
        assert!(alg.certificates.iter().all(|c| c.status.is_zero()));
        assert!(alg.table.grading_violations().is_empty());
        assert!(alg.table.jacobi_violations().is_empty());
    }

    #[test]
    fn sinh_x3_field() {
        let alg = sinh(4);
        let x3 = alg.element("X3").unwrap();
        assert_eq!(x3.bigrading, Bigrading::new(2, 0));
        assert_eq!(x3.field.slot(2).to_string(), "2");
    }

    #[test]
    fn tzitzeica_normalization() {
        let alg = generate(&EquationSpec::tzitzeica(), 11, 8, Normalization::Tzitzeica).unwrap();
        assert_eq!(alg.dimensions(), vec![2, 1, 1, 1, 2, 1, 2, 1]);
        assert_eq!(alg.table.bracket("Y1", "Y5"), one("Y6", int(-2)));
        assert_eq!(alg.table.bracket("Y1", "Y4"), one("Y5", int(-3)));
        let eig: Vec<i64> = alg.basis[1..9].iter().map(|b| b.eigenvalue).collect();
        assert_eq!(eig, vec![1, -2, -1, 0, 1, 2, -1, 0]);
        assert!(alg.table.jacobi_violations().is_empty());
    }

    #[test]
    fn raw_names_and_toral_row() {
        let alg = generate(&EquationSpec::sinh_gordon(), 7, 4, Normalization::Raw).unwrap();
        assert_eq!(alg.basis[1].name, "Z1");
        assert_eq!(alg.table.bracket("Z0", "Z2"), one("Z2", int(-1)));
        assert_eq!(alg.table.bracket("Z0", "Z3"), Some(vec![]));
    }

    #[test]
    fn argument_checks() {
        assert!(matches!(
            generate(&EquationSpec::sinh_gordon(), 6, 4, Normalization::SinhGordon),
            Err(Error::OrderTooSmall { .. })
        ));
        assert!(matches!(
            generate(&EquationSpec::liouville(), 8, 4, Normalization::SinhGordon),
            Err(Error::InvalidArgument(_))
        ));
        assert_eq!(Normalization::for_equation(&EquationSpec::tzitzeica()), Normalization::Tzitzeica);
    }

    #[test]
    fn runs_are_deterministic() {
        let a = sinh(6);
        let b = sinh(6);
        assert_eq!(a.table.canonical_json(), b.table.canonical_json());
        assert_eq!(a.to_json(true), b.to_json(true));
    }
}
