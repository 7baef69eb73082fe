//! The real forms spanned by `u_{2k-1}`, `v^±_{2k-1}` and `w^±_{2k}`.

use std::fmt;

use serde::Serialize;

use super::LaurentMatrix;
use crate::exactring::{int, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RealFamily {
    U,
    V,
    W,
}

/// A basis element of one real form. `plus` selects the `+` form; the `u`
/// family is shared by both.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RealLabel {
    pub family: RealFamily,
    pub plus: bool,
    pub index: i64,
}

impl RealLabel {
    pub fn u(index: i64) -> Self {
        RealLabel { family: RealFamily::U, plus: true, index }
    }

    pub fn v(plus: bool, index: i64) -> Self {
        RealLabel { family: RealFamily::V, plus, index }
    }

    pub fn w(plus: bool, index: i64) -> Self {
        RealLabel { family: RealFamily::W, plus, index }
    }

    /// `u` and `v` carry odd indices, `w` even positive ones.
    pub fn is_valid(&self) -> bool {
        match self.family {
            RealFamily::U | RealFamily::V => self.index > 0 && self.index % 2 == 1,
            RealFamily::W => self.index > 0 && self.index % 2 == 0,
        }
    }
}

impl fmt::Display for RealLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.plus { "+" } else { "-" };
        match self.family {
            RealFamily::U => write!(f, "u{}", self.index),
            RealFamily::V => write!(f, "v{}{}", self.index, sign),
            RealFamily::W => write!(f, "w{}{}", self.index, sign),
        }
    }
}

fn unit_pair(a: (usize, usize), b: (usize, usize), b_coeff: i64) -> Vec<Vec<Rational>> {
    let mut m = vec![vec![int(0); 3]; 3];
    m[a.0][a.1] = int(1);
    m[b.0][b.1] = int(b_coeff);
    m
}

/// Matrix of a real-form basis element.
pub fn real_form_element(label: RealLabel) -> LaurentMatrix {
    assert!(label.is_valid(), "invalid real-form label {label}");
    let s = if label.plus { -1 } else { 1 };
    let rows = match label.family {
        RealFamily::U => unit_pair((0, 1), (1, 0), -1),
        RealFamily::V => unit_pair((1, 2), (2, 1), s),
        RealFamily::W => unit_pair((0, 2), (2, 0), s),
    };
    LaurentMatrix::constant_times_power(&rows, label.index)
}

/// `[a, b]` identified as `c * label`, or `None` for zero. Panics when the
/// commutator is not a multiple of a single basis element of the same form.
pub fn real_form_bracket(a: RealLabel, b: RealLabel) -> Option<(Rational, RealLabel)> {
    let m = real_form_element(a).commutator(&real_form_element(b));
    if m.is_zero() {
        return None;
    }
    let plus = if a.family == RealFamily::U { b.plus } else { a.plus };
    let index = a.index + b.index;
    let family = [RealFamily::U, RealFamily::V, RealFamily::W]
        .into_iter()
        .find(|&f| f != a.family && f != b.family)
        .unwrap_or_else(|| panic!("[{a}, {b}] does not lie in a single family"));
    let target = match family {
        RealFamily::U => RealLabel::u(index),
        _ => RealLabel { family, plus, index },
    };
    let c = m.ratio_to(&real_form_element(target)).unwrap_or_else(|| panic!("[{a}, {b}] is not a multiple of {target}"));
    Some((c, target))
}

/// One checked instance of a defining relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealRelation {
    pub lhs: String,
    pub expected: String,
    pub holds: bool,
}

/// Checks `[u_{2k-1}, v_{2l-1}] = w_{2(k+l)-2}`, `[v_{2k-1}, w_{2l}] = ±u_{2(k+l)-1}`
/// and `[w_{2k}, u_{2l-1}] = v_{2(k+l)-1}` for `1 <= k, l <= max` in both forms.
pub fn verify_real_form_relations(max: i64) -> Vec<RealRelation> {
    let mut out = Vec::new();
    for plus in [true, false] {
        let sign = if plus { int(1) } else { int(-1) };
        for k in 1..=max {
            for l in 1..=max {
                let cases = [
                    (RealLabel::u(2 * k - 1), RealLabel::v(plus, 2 * l - 1), int(1), RealLabel::w(plus, 2 * (k + l) - 2)),
                    (RealLabel::v(plus, 2 * k - 1), RealLabel::w(plus, 2 * l), sign.clone(), RealLabel::u(2 * (k + l) - 1)),
                    (RealLabel::w(plus, 2 * k), RealLabel::u(2 * l - 1), int(1), RealLabel::v(plus, 2 * (k + l) - 1)),
                ];
                for (a, b, c, target) in cases {
                    let lhs = real_form_element(a).commutator(&real_form_element(b));
                    let holds = lhs == real_form_element(target).scale(&c);
                    let coeff = if c == int(1) { String::new() } else { "-".into() };
                    out.push(RealRelation { lhs: format!("[{a}, {b}]"), expected: format!("{coeff}{target}"), holds });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(real_form_bracket(RealLabel::u(1), RealLabel::v(true, 1)), Some((int(1), RealLabel::w(true, 2))));
        assert_eq!(real_form_bracket(RealLabel::v(false, 1), RealLabel::w(false, 2)), Some((int(-1), RealLabel::u(3))));
        assert_eq!(real_form_bracket(RealLabel::w(true, 2), RealLabel::u(1)), Some((int(1), RealLabel::v(true, 3))));
        assert_eq!(real_form_bracket(RealLabel::w(true, 2), RealLabel::u(3)), Some((int(1), RealLabel::v(true, 5))));
        assert_eq!(real_form_bracket(RealLabel::u(1), RealLabel::u(3)), None);
    }

    #[test]
    fn all_relations_hold() {
        let rels = verify_real_form_relations(4);
        assert_eq!(rels.len(), 2 * 16 * 3);
        assert!(rels.iter().all(|r| r.holds), "{:?}", rels.iter().find(|r| !r.holds));
    }

    #[test]
    fn elements_are_traceless() {
        for l in [RealLabel::u(3), RealLabel::v(false, 5), RealLabel::w(true, 4)] {
            assert!(real_form_element(l).trace().is_zero());
        }
    }
}
