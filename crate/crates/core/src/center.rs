//! Normal forms in the center `A/∂A`.
//!
//! For `m = 2` the odd sector collapses onto `ω0 = [x^-1 u]`, since
//! `x^k u = ∂(x^(k+1)) / (k+1)` for `k != -1`. The even sector is cut down by
//! the relations `R_r = ∂(x^r u) = Σ_i (r + i/2) p_i x^(r+i-1)`. Every Laurent
//! polynomial is rewritten into the window `{-1, ..., n-2}`: exponents above
//! the window are eliminated with the top pivot `r + n/2` and exponents below it
//! with the bottom pivot `r p_0`. Neither pivot can vanish in the regime where
//! it is used, so no elimination bookkeeping is needed.
//!
//! Coordinates are `ω0` followed by `[x^-1], [1], [x], ..., [x^(n-2)]`, which
//! reproduces `ω0, ω1 = [x^-1], ω2 = [1]` for the quadratic curve and adds
//! `ω3 = [x], ω4 = [x^2]` for the quartic.

use std::fmt;
use std::ops::{Add, Sub};

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::laurent::LaurentPoly;
use crate::param_poly::ParamPoly;
use crate::rational::{int, rat, Rational};
use crate::superelliptic::{AlgebraElement, Curve};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CenterError {
    #[error("P(0) = {0} is not a nonzero rational constant; the upward pivot r*P(0) is not invertible in Q[a]")]
    NonUnitTrailing(String),
}

/// `dim A/∂A = 1 + n(m - 1)` with `m = 2`.
pub fn dimension(curve: &Curve) -> usize {
    1 + curve.degree()
}

/// A class in `A/∂A`: coordinates on `ω0, ω1, ..., ωn`, where `ω(e+2) = [x^e]`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CenterClass {
    coords: Vec<ParamPoly>,
}

impl CenterClass {
    pub fn zero(dimension: usize) -> Self {
        Self {
            coords: vec![ParamPoly::zero(); dimension],
        }
    }

    /// The basis vector `ω_i`.
    pub fn basis(dimension: usize, i: usize) -> Self {
        let mut c = Self::zero(dimension);
        c.coords[i] = ParamPoly::one();
        c
    }

    pub fn from_coords(coords: Vec<ParamPoly>) -> Self {
        Self { coords }
    }

    pub fn dimension(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[ParamPoly] {
        &self.coords
    }

    /// Coefficient of `ω_i`.
    pub fn omega(&self, i: usize) -> &ParamPoly {
        &self.coords[i]
    }

    pub fn omega0(&self) -> &ParamPoly {
        &self.coords[0]
    }

    /// Coefficient of the window class `[x^e]`.
    pub fn window(&self, e: i64) -> &ParamPoly {
        &self.coords[(e + 2) as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(ParamPoly::is_zero)
    }

    pub fn scale(&self, s: &ParamPoly) -> Self {
        Self {
            coords: self.coords.iter().map(|c| c * s).collect(),
        }
    }

    /// Indices `i` with a nonzero `ω_i` coefficient.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coords.len())
            .filter(|&i| !self.coords[i].is_zero())
            .collect()
    }

    /// e.g. `(1/2 - a^2/2)*ω2`, with `var` as the parameter name.
    pub fn display_with(&self, var: &str) -> String {
        let parts: Vec<String> = self
            .support()
            .into_iter()
            .map(|i| {
                let c = &self.coords[i];
                if *c == ParamPoly::one() {
                    format!("ω{i}")
                } else {
                    format!("({})*ω{i}", c.display_with(var))
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Display for CenterClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("a"))
    }
}

impl fmt::Debug for CenterClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CenterClass({self})")
    }
}

impl Add<&CenterClass> for &CenterClass {
    type Output = CenterClass;
    fn add(self, rhs: &CenterClass) -> CenterClass {
        assert_eq!(self.coords.len(), rhs.coords.len(), "dimension mismatch");
        CenterClass {
            coords: self.coords.iter().zip(&rhs.coords).map(|(x, y)| x + y).collect(),
        }
    }
}

impl Sub<&CenterClass> for &CenterClass {
    type Output = CenterClass;
    fn sub(self, rhs: &CenterClass) -> CenterClass {
        assert_eq!(self.coords.len(), rhs.coords.len(), "dimension mismatch");
        CenterClass {
            coords: self.coords.iter().zip(&rhs.coords).map(|(x, y)| x - y).collect(),
        }
    }
}

/// Reduction engine for one curve.
#[derive(Clone, Debug)]
pub struct Center {
    curve: Curve,
    /// `i/2` for `i = 0..=n`.
    halves: Vec<Rational>,
    p0_inv: Rational,
}

impl Center {
    pub fn new(curve: Curve) -> Result<Self, CenterError> {
        let p0 = curve.p(0);
        let p0_inv = match p0.as_constant() {
            Some(c) if !c.is_zero() => c.recip(),
            _ => return Err(CenterError::NonUnitTrailing(p0.to_string())),
        };
        let halves = (0..=curve.degree()).map(|i| rat(i as i64, 2)).collect();
        Ok(Self {
            curve,
            halves,
            p0_inv,
        })
    }

    pub fn quadratic() -> Self {
        Self::new(Curve::quadratic()).expect("P(0) = 1")
    }

    pub fn quartic() -> Self {
        Self::new(Curve::quartic()).expect("P(0) = 1")
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn dimension(&self) -> usize {
        dimension(&self.curve)
    }

    /// Smallest and largest window exponent: `-1` and `n - 2`.
    pub fn window_bounds(&self) -> (i64, i64) {
        (-1, self.curve.degree() as i64 - 2)
    }

    pub fn zero_class(&self) -> CenterClass {
        CenterClass::zero(self.dimension())
    }

    /// Nonzero terms of `R_r`: the coefficient of `x^(r+i-1)` is `(r + i/2) p_i`.
    pub fn relation_coeffs(&self, r: i64) -> Vec<(i64, ParamPoly)> {
        (0..=self.curve.degree())
            .filter_map(|i| {
                let c = self.curve.p(i).scale(&(int(r) + &self.halves[i]));
                (!c.is_zero()).then_some((r + i as i64 - 1, c))
            })
            .collect()
    }

    /// Rewrite an even-sector Laurent polynomial into the window.
    fn reduce_even(&self, even: &LaurentPoly) -> Vec<ParamPoly> {
        let n = self.curve.degree();
        let (lo, hi) = self.window_bounds();
        let mut work = even.clone();
        while let Some(e) = work.max_exp().filter(|&e| e > hi) {
            let (_, c) = work.pop_max().expect("nonempty");
            let r = e - n as i64 + 1;
            // top coefficient (r + n/2) * p_n with p_n = 1
            let pivot = int(r) + &self.halves[n];
            let factor = c.scale(&(-pivot.recip()));
            for i in 0..n {
                let coeff = self.curve.p(i);
                if coeff.is_zero() {
                    continue;
                }
                let k = int(r) + &self.halves[i];
                work.add_term(r + i as i64 - 1, &(&factor * &coeff.scale(&k)));
            }
        }
        while let Some(e) = work.min_exp().filter(|&e| e < lo) {
            let (_, c) = work.pop_min().expect("nonempty");
            let r = e + 1;
            let pivot_inv = int(r).recip() * &self.p0_inv;
            let factor = c.scale(&(-pivot_inv));
            for i in 1..=n {
                let coeff = self.curve.p(i);
                if coeff.is_zero() {
                    continue;
                }
                let k = int(r) + &self.halves[i];
                work.add_term(r + i as i64 - 1, &(&factor * &coeff.scale(&k)));
            }
        }
        (lo..=hi).map(|e| work.coeff(e)).collect()
    }

    /// Normal form of `f` in `A/∂A`.
    pub fn reduce(&self, f: &AlgebraElement) -> CenterClass {
        let mut coords = Vec::with_capacity(self.dimension());
        coords.push(f.odd.coeff(-1));
        coords.extend(self.reduce_even(&f.even));
        CenterClass { coords }
    }

    /// Class of `x^k u^sector`.
    pub fn monomial_class(&self, k: i64, sector: u8) -> CenterClass {
        self.reduce(&AlgebraElement::monomial(k, sector, ParamPoly::one()))
    }
}

/// `(α_j, β_j)` with `[x^(2j)] = α_j ω2 + β_j ω4` on `x^4 - 2ax^2 + 1`, from the
/// two-component recurrence `(2j+1) v_(j+1) = 4aj v_j - (2j-1) v_(j-1)`.
pub fn quartic_even_pair(j: usize) -> (ParamPoly, ParamPoly) {
    let mut prev = (ParamPoly::one(), ParamPoly::zero());
    let mut cur = (ParamPoly::zero(), ParamPoly::one());
    if j == 0 {
        return prev;
    }
    for step in 1..j {
        let s = step as i64;
        let mid = ParamPoly::from_ints(&[0, 4 * s]);
        let back = int(2 * s - 1);
        let inv = rat(1, 2 * s + 1);
        let next = (
            (&(&mid * &cur.0) - &prev.0.scale(&back)).scale(&inv),
            (&(&mid * &cur.1) - &prev.1.scale(&back)).scale(&inv),
        );
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}
