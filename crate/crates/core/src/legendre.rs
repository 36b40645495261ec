//! Legendre polynomials over `Q`, generated by the three-term recurrence
//! `(n+1) P_(n+1) = (2n+1) a P_n - n P_(n-1)`, `P_0 = 1`, `P_1 = a`.

use std::sync::{LazyLock, Mutex};

use thiserror::Error;

use crate::param_poly::ParamPoly;
use crate::rational::{int, rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LegendreError {
    #[error("({numerator}) is not exactly divisible by {divisor}")]
    DivisibilityViolation { numerator: String, divisor: i64 },
    #[error("index must be positive, got {0}")]
    NonPositiveIndex(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LegendrePoly {
    pub n: usize,
    pub poly: ParamPoly,
}

// Append-only; grows to the largest index requested so far.
static CACHE: LazyLock<Mutex<Vec<ParamPoly>>> =
    LazyLock::new(|| Mutex::new(vec![ParamPoly::one(), ParamPoly::param()]));

fn extend_to(cache: &mut Vec<ParamPoly>, n: usize) {
    let a = ParamPoly::param();
    while cache.len() <= n {
        let k = cache.len() - 1;
        let next = (&(&a * &cache[k]).scale(&int(2 * k as i64 + 1))
            - &cache[k - 1].scale(&int(k as i64)))
            .scale(&rat(1, k as i64 + 1));
        cache.push(next);
    }
}

pub fn legendre_poly(n: usize) -> LegendrePoly {
    let mut cache = CACHE.lock().expect("legendre cache poisoned");
    extend_to(&mut cache, n);
    LegendrePoly {
        n,
        poly: cache[n].clone(),
    }
}

/// `P_0, ..., P_max` in one lock acquisition.
pub fn legendre_family(max: usize) -> Vec<ParamPoly> {
    let mut cache = CACHE.lock().expect("legendre cache poisoned");
    extend_to(&mut cache, max);
    cache[..=max].to_vec()
}

/// Shorthand for `legendre_poly(n).poly`.
pub fn p(n: usize) -> ParamPoly {
    legendre_poly(n).poly
}

/// `(P_(n-1) - P_(n+1)) / (2n+1)`.
pub fn antiderivative_tail(n: usize) -> Result<ParamPoly, LegendreError> {
    if n == 0 {
        return Err(LegendreError::NonPositiveIndex(n));
    }
    let numerator = &p(n - 1) - &p(n + 1);
    let divisor = 2 * n as i64 + 1;
    numerator
        .div_exact(&ParamPoly::from_int(divisor))
        .ok_or_else(|| LegendreError::DivisibilityViolation {
            numerator: numerator.to_string(),
            divisor,
        })
}

/// `∫_a^1 p(t) dt` as the polynomial `Q(1) - Q(a)` with `Q` the termwise antiderivative.
pub fn formal_integral_to_one(poly: &ParamPoly) -> ParamPoly {
    let anti = poly.antiderivative();
    let at_one = anti.eval(&Rational::from_integer(1.into()));
    &ParamPoly::constant(at_one) - &anti
}

/// `(1 - a^2) P_n'' - 2a P_n' + n(n+1) P_n`; zero for every `n`.
pub fn legendre_ode_residual(n: usize) -> ParamPoly {
    let pn = p(n);
    let d1 = pn.derivative();
    let d2 = d1.derivative();
    let one_minus_a2 = ParamPoly::from_ints(&[1, 0, -1]);
    let two_a = ParamPoly::from_ints(&[0, 2]);
    &(&(&one_minus_a2 * &d2) - &(&two_a * &d1)) + &pn.scale(&int((n * (n + 1)) as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn poly(c: &[(i64, i64)]) -> ParamPoly {
        ParamPoly::from_coeffs(c.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn first_members() {
        assert_eq!(p(0), ParamPoly::one());
        assert_eq!(p(1), ParamPoly::param());
        assert_eq!(p(2), poly(&[(-1, 2), (0, 1), (3, 2)]));
        assert_eq!(p(3), poly(&[(0, 1), (-3, 2), (0, 1), (5, 2)]));
        assert_eq!(p(3).eval(&int(1)), int(1));
        assert_eq!(legendre_poly(7).n, 7);
        assert_eq!(legendre_family(4)[4], p(4));
    }

    #[test]
    fn degree_parity_and_endpoints() {
        for n in 0..=200usize {
            let pn = p(n);
            assert_eq!(pn.degree(), Some(n));
            let sign = if n % 2 == 0 { pn.clone() } else { -&pn };
            assert_eq!(pn.reflect(), sign);
            assert_eq!(pn.eval(&int(1)), int(1));
            assert_eq!(pn.eval(&int(-1)), int(if n % 2 == 0 { 1 } else { -1 }));
        }
    }

    #[test]
    fn derivative_identities() {
        let a = ParamPoly::param();
        let a2m1 = ParamPoly::from_ints(&[-1, 0, 1]);
        for n in 1..=100usize {
            let nn = int(n as i64);
            // P'_(n+1) - P'_(n-1) = (2n+1) P_n
            assert_eq!(
                &p(n + 1).derivative() - &p(n - 1).derivative(),
                p(n).scale(&int(2 * n as i64 + 1))
            );
            // Bonnet: a P'_n - P'_(n-1) = n P_n
            assert_eq!(&(&a * &p(n).derivative()) - &p(n - 1).derivative(), p(n).scale(&nn));
            // (a^2 - 1) P'_n = n a P_n - n P_(n-1)
            assert_eq!(
                &a2m1 * &p(n).derivative(),
                (&(&a * &p(n)) - &p(n - 1)).scale(&nn)
            );
        }
    }

    #[test]
    fn tails() {
        assert_eq!(antiderivative_tail(1).unwrap(), poly(&[(1, 2), (0, 1), (-1, 2)]));
        assert_eq!(
            antiderivative_tail(2).unwrap(),
            poly(&[(0, 1), (1, 2), (0, 1), (-1, 2)])
        );
        // -(5a^2 - 1)(a^2 - 1)/8
        let expected = (&ParamPoly::from_ints(&[-1, 0, 5]) * &ParamPoly::from_ints(&[-1, 0, 1]))
            .scale(&rat(-1, 8));
        assert_eq!(antiderivative_tail(3).unwrap(), expected);
        assert_eq!(antiderivative_tail(0), Err(LegendreError::NonPositiveIndex(0)));
    }

    #[test]
    fn tails_are_integrals() {
        assert_eq!(formal_integral_to_one(&p(1)), poly(&[(1, 2), (0, 1), (-1, 2)]));
        assert_eq!(formal_integral_to_one(&p(2)), antiderivative_tail(2).unwrap());
        assert_eq!(formal_integral_to_one(&ParamPoly::one()), ParamPoly::from_ints(&[1, -1]));
        for n in 1..=100 {
            let tail = antiderivative_tail(n).unwrap();
            assert_eq!(tail, formal_integral_to_one(&p(n)), "n = {n}");
            assert!(tail.eval(&int(1)).is_zero());
            assert!(tail.eval(&int(-1)).is_zero());
            if n % 2 == 0 {
                assert!(tail.eval(&int(0)).is_zero());
            }
        }
        let at_zero: Vec<Rational> = [1, 3, 5]
            .iter()
            .map(|&n| antiderivative_tail(n).unwrap().eval(&int(0)))
            .collect();
        assert_eq!(at_zero, vec![rat(1, 2), rat(-1, 8), rat(1, 16)]);
    }

    #[test]
    fn sturm_liouville_residual_vanishes() {
        for n in [0, 1, 2, 3, 10, 25, 60] {
            assert!(legendre_ode_residual(n).is_zero(), "n = {n}");
        }
    }
}
