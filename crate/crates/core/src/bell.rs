//! Complete and incomplete Bell polynomials and powers of the total
//! derivative applied to exponentials.
//!
//! `B_n` follows the binomial recursion
//! `B_{n+1} = sum_{i=0}^{n} C(n, i) B_{n-i} u_{i+1}` with `B_0 = 1`, and
//! `D^k(e^(lambda*u)) = e^(lambda*u) B_k(lambda*u1, ..., lambda*uk)`.
//! Results are memoized process-wide.

use std::collections::HashMap;
use std::sync::{LazyLock, RwLock};

use num_bigint::BigInt;

use crate::exactring::{JetPolynomial, Quasipolynomial, Rational};
use crate::{Error, Result};

#[derive(Default)]
struct BellCache {
    complete: Vec<JetPolynomial>,
    incomplete: HashMap<(usize, usize), JetPolynomial>,
}

static CACHE: LazyLock<RwLock<BellCache>> = LazyLock::new(Default::default);

fn binomial(n: usize, k: usize) -> Rational {
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Rational::from_integer(acc)
}

/// The complete Bell polynomial `B_n`.
pub fn complete_bell(n: usize) -> JetPolynomial {
    if let Some(p) = CACHE.read().unwrap().complete.get(n) {
        return p.clone();
    }
    let mut cache = CACHE.write().unwrap();
    if cache.complete.is_empty() {
        cache.complete.push(JetPolynomial::one());
    }
    while cache.complete.len() <= n {
        let m = cache.complete.len() - 1;
        let mut next = JetPolynomial::zero();
        for i in 0..=m {
            let term = &cache.complete[m - i] * &JetPolynomial::var(i as u32 + 1);
            next = next + term.scale(&binomial(m, i));
        }
        cache.complete.push(next);
    }
    cache.complete[n].clone()
}

/// The partial Bell polynomial `B_{n,k}` for `1 <= k <= n`.
pub fn incomplete_bell(n: usize, k: usize) -> Result<JetPolynomial> {
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!(
            "incomplete Bell polynomial B({n},{k}) needs 1 <= k <= n"
        )));
    }
    Ok(partial(n, k))
}

fn partial(n: usize, k: usize) -> JetPolynomial {
    match (n, k) {
        (0, 0) => return JetPolynomial::one(),
        (_, 0) => return JetPolynomial::zero(),
        _ if k > n => return JetPolynomial::zero(),
        _ => {}
    }
    if let Some(p) = CACHE.read().unwrap().incomplete.get(&(n, k)) {
        return p.clone();
    }
    let mut out = JetPolynomial::zero();
    for i in 1..=(n - k + 1) {
        let term = &JetPolynomial::var(i as u32) * &partial(n - i, k - 1);
        out = out + term.scale(&binomial(n - 1, i - 1));
    }
    CACHE.write().unwrap().incomplete.entry((n, k)).or_insert_with(|| out.clone());
    out
}

/// `D^k(e^(lambda*u))`.
pub fn d_power_exp(k: usize, lambda: i64) -> Quasipolynomial {
    let poly = complete_bell(k).scale_vars(&Rational::from_integer(lambda.into()));
    Quasipolynomial::exp_times(lambda, poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::{int, parse_quasipolynomial, JetMonomial};

    fn factorial(n: usize) -> Rational {
        (1..=n).fold(int(1), |acc, i| acc * int(i as i64))
    }

    /// Truncated power series in `t` with polynomial coefficients.
    type Series = Vec<JetPolynomial>;

    /// `S(t) = sum_{i>=1} u_i t^i / i!` up to `t^n`.
    fn inner_series(n: usize) -> Series {
        let mut s = vec![JetPolynomial::zero(); n + 1];
        for (i, c) in s.iter_mut().enumerate().skip(1) {
            *c = JetPolynomial::var(i as u32).scale(&factorial(i).recip());
        }
        s
    }

    fn series_mul(a: &Series, b: &Series) -> Series {
        let n = a.len() - 1;
        let mut out = vec![JetPolynomial::zero(); n + 1];
        for i in 0..=n {
            for j in 0..=(n - i) {
                out[i + j] = &out[i + j] + &(&a[i] * &b[j]);
            }
        }
        out
    }

    /// `exp(S)` by the recurrence `m e_m = sum_{j=1}^m j s_j e_{m-j}`.
    fn series_exp(s: &Series) -> Series {
        let n = s.len() - 1;
        let mut e = vec![JetPolynomial::one()];
        for m in 1..=n {
            let mut acc = JetPolynomial::zero();
            for j in 1..=m {
                acc = acc + (&s[j] * &e[m - j]).scale(&int(j as i64));
            }
            e.push(acc.scale(&int(m as i64).recip()));
        }
        e
    }

    #[test]
    fn printed_low_order_forms() {
        let expect = [
            "1",
            "u1",
            "u1^2 + u2",
            "u1^3 + 3u1 u2 + u3",
            "u1^4 + 6u1^2u2 + 4u1u3 + 3u2^2 + u4",
        ];
        for (n, text) in expect.iter().enumerate() {
            let p = parse_quasipolynomial(text).unwrap().part(0);
            assert_eq!(complete_bell(n), p, "B_{n}");
        }
    }

    #[test]
    fn recursion_matches_generating_function() {
        let e = series_exp(&inner_series(10));
        for (n, coeff) in e.iter().enumerate() {
            assert_eq!(complete_bell(n), coeff.scale(&factorial(n)), "B_{n}");
            assert_eq!(complete_bell(n).weight_of(), if n == 0 { Some(0) } else { Some(n as u64) });
        }
    }

    #[test]
    fn incomplete_matches_powers_of_inner_series() {
        let s = inner_series(10);
        let mut power = s.clone();
        for k in 1..=10 {
            for n in k..=10 {
                let expected = power[n].scale(&(factorial(n) / factorial(k)));
                assert_eq!(incomplete_bell(n, k).unwrap(), expected, "B({n},{k})");
            }
            power = series_mul(&power, &s);
        }
    }

    #[test]
    fn extreme_partial_polynomials() {
        assert_eq!(incomplete_bell(5, 1).unwrap(), JetPolynomial::var(5));
        assert_eq!(
            incomplete_bell(4, 4).unwrap(),
            JetPolynomial::monomial(JetMonomial::var_pow(1, 4), int(1))
        );
        assert!(incomplete_bell(3, 0).is_err());
        assert!(incomplete_bell(3, 4).is_err());
    }

    #[test]
    fn partial_polynomials_sum_to_complete() {
        for n in 1..=10 {
            let sum = (1..=n).fold(JetPolynomial::zero(), |acc, k| {
                let p = incomplete_bell(n, k).unwrap();
                assert_eq!(p.weight_of(), Some(n as u64));
                assert!(p.terms().all(|(m, _)| m.degree() == k as u64));
                acc + p
            });
            assert_eq!(sum, complete_bell(n));
        }
    }

    #[test]
    fn d_power_examples() {
        assert_eq!(d_power_exp(0, 3), Quasipolynomial::exp(3));
        assert_eq!(d_power_exp(2, 1), parse_quasipolynomial("e^u (u1^2 + u2)").unwrap());
        assert_eq!(
            d_power_exp(2, -2),
            parse_quasipolynomial("e^(-2u) (4u1^2 - 2u2)").unwrap()
        );
    }

    #[test]
    fn concurrent_fills_agree() {
        let handles: Vec<_> = (0..4)
            .map(|i| std::thread::spawn(move || (complete_bell(12 - i), partial(9, 3 + i))))
            .collect();
        let results: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        for (i, (b, p)) in results.into_iter().enumerate() {
            assert_eq!(b, complete_bell(12 - i));
            assert_eq!(p, partial(9, 3 + i));
        }
    }
}
