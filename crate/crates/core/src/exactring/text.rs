//! Canonical text form and a lenient parser for quasipolynomials.
//!
//! Canonical form: terms `c * e^(a*u) * u1^2*u3` joined by `" + "`, in
//! ascending order of the exponential index and then of the monomial. The
//! coefficient is always printed, the exponential factor is omitted when
//! `a = 0`, `e^(1*u)` is written `e^u`, and the monomial `1` is omitted.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{JetMonomial, JetPolynomial, Quasipolynomial, Rational};

/// `p` or `p/q`.
pub fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn fmt_monomial(m: &JetMonomial) -> String {
    m.iter()
        .map(|(i, e)| if e == 1 { format!("u{i}") } else { format!("u{i}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

fn fmt_exp(a: i64) -> String {
    if a == 1 {
        "e^u".to_string()
    } else {
        format!("e^({a}*u)")
    }
}

fn fmt_term(a: i64, m: &JetMonomial, c: &Rational) -> String {
    let mut parts = vec![fmt_rational(c)];
    if a != 0 {
        parts.push(fmt_exp(a));
    }
    if !m.is_one() {
        parts.push(fmt_monomial(m));
    }
    parts.join(" * ")
}

impl fmt::Display for Quasipolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self.terms().map(|(a, m, c)| fmt_term(a, m, c)).collect();
        f.write_str(&terms.join(" + "))
    }
}

impl fmt::Display for JetPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&Quasipolynomial::from_poly(self.clone()), f)
    }
}

/// Parse failure with the character offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

/// Parses a quasipolynomial.
///
/// Accepts the canonical form and the usual hand-written variants: signed
/// sums, rationals `p/q`, jet variables `u3` with powers `u3^2`, exponentials
/// `e^u`, `e^(-2u)`, `e^(-2*u)`, the functions `sinh(u)` and `cosh(u)` (also
/// bare `sinh`/`cosh`), parentheses, explicit `*` or juxtaposition, and
/// division by a number.
pub fn parse_quasipolynomial(text: &str) -> Result<Quasipolynomial, ParseError> {
    let mut p = Parser { chars: text.chars().collect(), pos: 0 };
    p.skip_ws();
    if p.at_end() {
        return Err(p.error("empty input"));
    }
    let value = p.sum()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error(&format!("unexpected '{}'", p.chars[p.pos])));
    }
    Ok(value)
}

impl std::str::FromStr for Quasipolynomial {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_quasipolynomial(s)
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

fn is_minus(c: char) -> bool {
    c == '-' || c == '\u{2212}'
}

impl Parser {
    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn error(&self, message: &str) -> ParseError {
        ParseError { position: self.pos, message: message.to_string() }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{c}'")))
        }
    }

    fn eat_sign(&mut self) -> Option<bool> {
        self.skip_ws();
        match self.peek() {
            Some('+') => {
                self.pos += 1;
                Some(false)
            }
            Some(c) if is_minus(c) => {
                self.pos += 1;
                Some(true)
            }
            _ => None,
        }
    }

    fn sum(&mut self) -> Result<Quasipolynomial, ParseError> {
        let mut acc = self.product()?;
        while let Some(neg) = self.eat_sign() {
            let t = self.product()?;
            acc = if neg { acc - t } else { acc + t };
        }
        Ok(acc)
    }

    fn starts_factor(&mut self) -> bool {
        self.skip_ws();
        matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '(')
    }

    fn product(&mut self) -> Result<Quasipolynomial, ParseError> {
        let negate = self.eat_sign() == Some(true);
        let mut acc = self.power()?;
        if negate {
            acc = -acc;
        }
        loop {
            if self.eat('*') {
                acc = acc * self.power()?;
            } else if self.eat('/') {
                let at = self.pos;
                let d = self.number()?;
                if d.is_zero() {
                    return Err(ParseError { position: at, message: "division by zero".into() });
                }
                acc = acc.scale(&d.recip());
            } else if self.starts_factor() {
                acc = acc * self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<Quasipolynomial, ParseError> {
        let base = self.primary()?;
        if self.eat('^') {
            let n = self.small_uint()?;
            let mut out = Quasipolynomial::one();
            for _ in 0..n {
                out = &out * &base;
            }
            return Ok(out);
        }
        Ok(base)
    }

    fn digits(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn small_uint(&mut self) -> Result<u32, ParseError> {
        let at = self.pos;
        let s = self.digits().ok_or_else(|| self.error("expected a non-negative integer"))?;
        s.parse::<u32>()
            .ok()
            .filter(|&n| n <= 64)
            .ok_or(ParseError { position: at, message: format!("exponent {s} out of range") })
    }

    fn number(&mut self) -> Result<Rational, ParseError> {
        let s = self.digits().ok_or_else(|| self.error("expected a number"))?;
        Ok(Rational::from_integer(s.parse::<BigInt>().expect("digit string")))
    }

    fn identifier(&mut self) -> String {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn primary(&mut self) -> Result<Quasipolynomial, ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some('(') => {
                self.pos += 1;
                let inner = self.sum()?;
                self.expect(')')?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => Ok(Quasipolynomial::constant(self.number()?)),
            Some(c) if c.is_ascii_alphabetic() => {
                let ident = self.identifier();
                match ident.as_str() {
                    "u" => {
                        let at = self.pos;
                        let idx = self.digits().ok_or(ParseError {
                            position: at,
                            message: "bare 'u' is only allowed inside an exponent".into(),
                        })?;
                        match idx.parse::<u32>() {
                            Ok(i) if i >= 1 => Ok(Quasipolynomial::from_poly(JetPolynomial::var(i))),
                            _ => Err(ParseError {
                                position: at,
                                message: format!("invalid jet index '{idx}'"),
                            }),
                        }
                    }
                    "e" => {
                        self.expect('^')?;
                        let a = self.exp_argument()?;
                        Ok(Quasipolynomial::exp(a))
                    }
                    "sinh" | "cosh" => {
                        self.function_argument()?;
                        Ok(if ident == "sinh" {
                            Quasipolynomial::sinh()
                        } else {
                            Quasipolynomial::cosh()
                        })
                    }
                    "sin" | "cos" => Err(ParseError {
                        position: start,
                        message: format!(
                            "'{ident}' is not supported: trigonometric terms have no exact \
                             representation over the rationals"
                        ),
                    }),
                    _ => Err(ParseError {
                        position: start,
                        message: format!("unknown identifier '{ident}'"),
                    }),
                }
            }
            Some(c) => Err(self.error(&format!("unexpected '{c}'"))),
        }
    }

    /// Optional `(u)` or `u` after `sinh`/`cosh`.
    fn function_argument(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        let save = self.pos;
        if self.eat('(') {
            self.skip_ws();
            if self.identifier() != "u" {
                return Err(self.error("only the argument 'u' is supported"));
            }
            return self.expect(')');
        }
        if self.peek() == Some('u') {
            self.pos += 1;
            if self.peek().is_some_and(|c| c.is_ascii_alphanumeric()) {
                self.pos = save;
            }
        }
        Ok(())
    }

    /// The exponent of `e`: `u`, or a parenthesized `[+-][k][*]u`.
    fn exp_argument(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        if self.eat('(') {
            let neg = self.eat_sign() == Some(true);
            let k = match self.digits() {
                Some(s) => {
                    let at = self.pos;
                    let k = s.parse::<i64>().map_err(|_| ParseError {
                        position: at,
                        message: "exponential index out of range".into(),
                    })?;
                    self.eat('*');
                    k
                }
                None => 1,
            };
            self.skip_ws();
            if self.peek() != Some('u') {
                return Err(self.error("expected 'u' in exponent"));
            }
            self.pos += 1;
            self.expect(')')?;
            return Ok(if neg { -k } else { k });
        }
        if self.peek() == Some('u') {
            self.pos += 1;
            if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
                return Ok(1);
            }
        }
        Err(self.error("expected 'u' or '(k*u)' after 'e^'"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::{int, rat};
    use proptest::prelude::*;

    fn parse(s: &str) -> Quasipolynomial {
        parse_quasipolynomial(s).unwrap_or_else(|e| panic!("{s}: {e}"))
    }

    #[test]
    fn canonical_form_of_simple_values() {
        assert_eq!(Quasipolynomial::zero().to_string(), "0");
        assert_eq!(Quasipolynomial::sinh().to_string(), "-1/2 * e^(-1*u) + 1/2 * e^u");
        let q = Quasipolynomial::exp_times(
            -2,
            JetPolynomial::monomial(JetMonomial::from_exponents([(1, 2), (3, 1)]), rat(3, 4)),
        );
        assert_eq!(q.to_string(), "3/4 * e^(-2*u) * u1^2*u3");
    }

    #[test]
    fn lenient_spellings() {
        let tz = Quasipolynomial::exponential_sum([(int(1), 1), (int(1), -2)]);
        assert_eq!(parse("e^u + e^(-2u)"), tz);
        assert_eq!(parse("e^u+e^(-2*u)"), tz);
        assert_eq!(parse("e^(u) + e^(−2 u)"), tz);
        assert_eq!(parse("sinh"), Quasipolynomial::sinh());
        assert_eq!(parse("sinh(u)"), parse("1/2 e^u - 1/2*e^(-u)"));
        assert_eq!(parse("cosh u"), Quasipolynomial::cosh());
        assert_eq!(
            parse("u3 - u1^3/2"),
            Quasipolynomial::from_poly(
                JetPolynomial::var(3) - JetPolynomial::var(1).pow(3).scale(&rat(1, 2))
            )
        );
        assert_eq!(parse("2(u1 + u2)"), parse("2*u1 + 2*u2"));
        assert_eq!(parse("0"), Quasipolynomial::zero());
    }

    #[test]
    fn rejects_malformed_input() {
        for bad in ["", "e^", "u0", "u", "1/0", "sin(u)", "cos", "u1 +", "(u1", "e^(2v)", "x"] {
            assert!(parse_quasipolynomial(bad).is_err(), "accepted {bad:?}");
        }
        let err = parse_quasipolynomial("u1 + sin u").unwrap_err();
        assert_eq!(err.position, 5);
    }

    fn arb_qp() -> impl Strategy<Value = Quasipolynomial> {
        let term = (-3i64..=3, proptest::collection::vec((1u32..5, 0u32..3), 0..3), -9i64..=9, 1i64..5);
        proptest::collection::vec(term, 0..6).prop_map(|terms| {
            let mut q = Quasipolynomial::zero();
            for (a, exps, n, d) in terms {
                let p = JetPolynomial::monomial(JetMonomial::from_exponents(exps), rat(n, d));
                q.add_part(a, &p);
            }
            q
        })
    }

    proptest! {
        #[test]
        fn canonical_text_round_trips(q in arb_qp()) {
            let text = q.to_string();
            let back = parse_quasipolynomial(&text).unwrap();
            prop_assert_eq!(&back, &q);
            prop_assert_eq!(back.to_string(), text);
        }

        #[test]
        fn product_is_associative_and_commutative(a in arb_qp(), b in arb_qp(), c in arb_qp()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn leibniz_rule(a in arb_qp(), b in arb_qp(), k in 1u32..5) {
            let lhs = (&a * &b).derive_uk(k);
            let rhs = &a.derive_uk(k) * &b + &a * &b.derive_uk(k);
            prop_assert_eq!(lhs, rhs);
            let lhs_u = (&a * &b).derive_u();
            let rhs_u = &a.derive_u() * &b + &a * &b.derive_u();
            prop_assert_eq!(lhs_u, rhs_u);
        }

        #[test]
        fn weight_is_additive(
            e1 in proptest::collection::vec((1u32..5, 1u32..3), 1..3),
            e2 in proptest::collection::vec((1u32..5, 1u32..3), 1..3),
            c in 1i64..7,
        ) {
            let m1 = JetMonomial::from_exponents(e1);
            let m2 = JetMonomial::from_exponents(e2);
            // Build homogeneous polynomials by adding a permuted monomial of equal weight.
            let w1 = m1.weight();
            let p = JetPolynomial::monomial(m1, int(c)) + JetPolynomial::monomial(JetMonomial::var(w1 as u32), int(1));
            let q = JetPolynomial::monomial(m2, int(1));
            let expected = p.weight_of().unwrap() + q.weight_of().unwrap();
            prop_assert_eq!((&p * &q).weight_of(), Some(expected));
        }
    }
}
