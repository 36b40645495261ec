//! Truncated power series in `z` with parameter-polynomial coefficients.
//!
//! A series of order `N` stores the coefficients of `z^0 .. z^N`; everything
//! past `z^N` is unknown, and no operation reads beyond it.

use std::fmt;

use thiserror::Error;

use crate::param_poly::ParamPoly;
use crate::rational::{int, rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("constant term must be 1, got {0}")]
    BadConstantTerm(String),
}

/// Default order used when certifying generating-function identities.
pub const DEFAULT_ORDER: usize = 64;

#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<ParamPoly>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![ParamPoly::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::from_coeffs(vec![ParamPoly::one()], order)
    }

    /// Leading `order + 1` coefficients of `coeffs`, padded with zeros.
    pub fn from_coeffs(mut coeffs: Vec<ParamPoly>, order: usize) -> Self {
        coeffs.resize(order + 1, ParamPoly::zero());
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[ParamPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &ParamPoly {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(ParamPoly::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(self.coeffs[..=order.min(self.order())].to_vec(), order)
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        Ok(Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(x, y)| x + y).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        Ok(Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(x, y)| x - y).collect(),
        })
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.order();
        let mut out = vec![ParamPoly::zero(); n + 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.coeffs[..=n - i].iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += &(x * y);
                }
            }
        }
        Self { coeffs: out }
    }

    fn check_order(&self, other: &Self) -> Result<(), SeriesError> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(SeriesError::OrderMismatch(self.order(), other.order()))
        }
    }

    pub fn scale(&self, s: &ParamPoly) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Termwise `d/dz`. The result has order `N - 1` (order 0 maps to the zero series of order 0).
    pub fn ddz(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&int(k as i64)))
                .collect(),
        }
    }

    /// Multiply by `z^k`, keeping the order.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.order();
        let mut coeffs = vec![ParamPoly::zero(); k.min(n + 1)];
        coeffs.extend(self.coeffs.iter().take((n + 1).saturating_sub(k)).cloned());
        Self { coeffs }
    }

    /// `s(z^2)`. An input of order `N` determines the output through `z^(2N+1)`.
    pub fn substitute_z_squared(&self) -> Self {
        let n = self.order();
        let mut coeffs = vec![ParamPoly::zero(); 2 * n + 2];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[2 * k] = c.clone();
        }
        Self { coeffs }
    }

    /// `s^(-1/2)` for `s(0) = 1`, by the Newton step `y <- y (3 - s y^2) / 2`,
    /// which doubles the number of correct coefficients each round.
    pub fn inv_sqrt(&self) -> Result<Self, SeriesError> {
        if *self.coeff(0) != ParamPoly::one() {
            return Err(SeriesError::BadConstantTerm(self.coeff(0).to_string()));
        }
        let target = self.order() + 1;
        let mut y = Self::one(0);
        let mut correct = 1;
        let three = ParamPoly::from_int(3);
        let half = ParamPoly::constant(rat(1, 2));
        while correct < target {
            correct = (2 * correct).min(target);
            let order = correct - 1;
            let y_ext = y.truncate(order);
            let s = self.truncate(order);
            let t = s.mul_unchecked(&y_ext.mul_unchecked(&y_ext));
            let mut corr = t.scale(&ParamPoly::from_int(-1));
            corr.coeffs[0] += &three;
            y = y_ext.mul_unchecked(&corr).scale(&half);
        }
        Ok(y)
    }
}

/// `p F' + q F`, truncated to the order of `F'`. `p` and `q` must be known at least that far.
pub fn ode_residual(
    p: &TruncatedSeries,
    q: &TruncatedSeries,
    f: &TruncatedSeries,
) -> Result<TruncatedSeries, SeriesError> {
    let df = f.ddz();
    let order = df.order();
    for s in [p, q] {
        if s.order() < order {
            return Err(SeriesError::OrderMismatch(s.order(), order));
        }
    }
    let pf = p.truncate(order).mul(&df)?;
    let qf = q.truncate(order).mul(&f.truncate(order))?;
    pf.add(&qf)
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("({c})z^{k}"))
            .collect();
        write!(f, "{} + O(z^{})", terms.join(" + "), self.order() + 1)
    }
}

/// `1 - 2a z^k + z^(2k)` as a series of the given order.
pub fn symmetric_trinomial(k: usize, order: usize) -> TruncatedSeries {
    let mut coeffs = vec![ParamPoly::zero(); 2 * k + 1];
    coeffs[0] = ParamPoly::one();
    coeffs[k] = ParamPoly::from_ints(&[0, -2]);
    coeffs[2 * k] = ParamPoly::one();
    TruncatedSeries::from_coeffs(coeffs, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::legendre;

    fn series(c: &[ParamPoly], order: usize) -> TruncatedSeries {
        TruncatedSeries::from_coeffs(c.to_vec(), order)
    }

    #[test]
    fn products() {
        let a = series(&[1.into(), 1.into()], 4);
        let b = series(&[1.into(), (-1).into()], 4);
        assert_eq!(a.mul(&b).unwrap(), series(&[1.into(), 0.into(), (-1).into()], 4));
        assert_eq!(a.mul(&TruncatedSeries::one(4)).unwrap(), a);
        assert_eq!(
            a.mul(&TruncatedSeries::one(3)),
            Err(SeriesError::OrderMismatch(4, 3))
        );
    }

    #[test]
    fn derivatives() {
        let z3 = series(&[0.into(), 0.into(), 0.into(), 1.into()], 5);
        assert_eq!(z3.ddz(), series(&[0.into(), 0.into(), 3.into()], 4));
        assert!(series(&[7.into()], 5).ddz().is_zero());
        let f = series(&legendre::legendre_family(10), 10);
        let df = f.ddz();
        for r in 0..10 {
            assert_eq!(*df.coeff(r), legendre::p(r + 1).scale(&int(r as i64 + 1)));
        }
    }

    #[test]
    fn inverse_square_root() {
        assert_eq!(TruncatedSeries::one(8).inv_sqrt().unwrap(), TruncatedSeries::one(8));
        let s = symmetric_trinomial(1, 64);
        let g = s.inv_sqrt().unwrap();
        assert_eq!(g.order(), 64);
        for k in 0..=64 {
            assert_eq!(*g.coeff(k), legendre::p(k), "k = {k}");
        }
        assert_eq!(s.mul(&g.mul(&g).unwrap()).unwrap(), TruncatedSeries::one(64));
        assert!(matches!(
            series(&[2.into()], 3).inv_sqrt(),
            Err(SeriesError::BadConstantTerm(_))
        ));
    }

    #[test]
    fn quartic_generating_function_by_two_routes() {
        let direct = symmetric_trinomial(2, 41).inv_sqrt().unwrap().shift(1);
        let substituted = symmetric_trinomial(1, 20)
            .inv_sqrt()
            .unwrap()
            .substitute_z_squared()
            .shift(1);
        assert_eq!(direct, substituted);
        for k in 0..=20 {
            assert_eq!(*direct.coeff(2 * k + 1), legendre::p(k));
            assert!(direct.coeff(2 * k).is_zero());
        }
    }

    #[test]
    fn substitution_basics() {
        let s = series(&[1.into(), 1.into()], 1);
        assert_eq!(s.substitute_z_squared(), series(&[1.into(), 0.into(), 1.into()], 3));
        assert!(TruncatedSeries::zero(4).substitute_z_squared().is_zero());
    }

    #[test]
    fn ode_residuals() {
        let order = 65;
        let f = symmetric_trinomial(1, order).inv_sqrt().unwrap();
        let p = symmetric_trinomial(1, order);
        let q = series(&[ParamPoly::from_ints(&[0, -1]), 1.into()], order);
        let res = ode_residual(&p, &q, &f).unwrap();
        assert_eq!(res.order(), 64);
        assert!(res.is_zero());

        let g = symmetric_trinomial(1, 32).inv_sqrt().unwrap();
        let fq = g.substitute_z_squared().shift(1).truncate(order);
        let pq = series(
            &[0.into(), 1.into(), 0.into(), ParamPoly::from_ints(&[0, -2]), 0.into(), 1.into()],
            order,
        );
        let qq = series(&[(-1).into(), 0.into(), 0.into(), 0.into(), 1.into()], order);
        assert!(ode_residual(&pq, &qq, &fq).unwrap().is_zero());

        let arbitrary = series(&[1.into(), 2.into(), 3.into(), ParamPoly::param()], 6);
        let res = ode_residual(&TruncatedSeries::one(6), &TruncatedSeries::zero(6), &arbitrary).unwrap();
        assert_eq!(res, arbitrary.ddz());
        assert!(matches!(
            ode_residual(&TruncatedSeries::one(2), &TruncatedSeries::zero(6), &arbitrary),
            Err(SeriesError::OrderMismatch(2, 5))
        ));
    }
}
