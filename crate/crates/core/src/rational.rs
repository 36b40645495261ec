//! Exact rational scalars.
//!
//! All coefficients in the crate live in `Q`. The representation is
//! `num_rational::BigRational`, which keeps numerator and denominator
//! coprime with a positive denominator, and represents zero as `0/1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

pub type Rational = BigRational;

/// `n / d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Serialize as `num/den`, or `num` when the denominator is one.
pub fn to_exact_string(q: &Rational) -> String {
    q.to_string()
}

/// Parse `num` or `num/den` (optional leading sign, surrounding whitespace ignored).
pub fn parse_exact(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;
    use proptest::prelude::*;

    #[test]
    fn zero_is_canonical() {
        let z = rat(0, -7);
        assert_eq!(z.numer(), &BigInt::from(0));
        assert_eq!(z.denom(), &BigInt::from(1));
        assert_eq!(to_exact_string(&z), "0");
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_exact("-6/4"), Some(rat(-3, 2)));
        assert_eq!(parse_exact(" 5 "), Some(int(5)));
        assert_eq!(parse_exact("1/0"), None);
        assert_eq!(parse_exact("x"), None);
        assert_eq!(to_exact_string(&rat(3, -9)), "-1/3");
    }

    proptest! {
        #[test]
        fn normalization_is_idempotent(n in -10_000i64..10_000, d in 1i64..10_000) {
            let q = rat(n, d);
            let again = Rational::new(q.numer().clone(), q.denom().clone());
            prop_assert_eq!(&q, &again);
            prop_assert!(q.denom().is_positive());
            prop_assert_eq!(parse_exact(&to_exact_string(&q)), Some(q));
        }
    }
}
