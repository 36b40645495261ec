//! The cocycle `ψ(f∂, g∂) = [∂f · ∂²g]` of the centrally extended derivation
//! algebra, and the closed form of its cross values `ψ(x^r ∂, x^s u ∂)`.
//!
//! `psi` always goes through the generic engine. `cross_closed_form` is a
//! separate code path that never calls `psi`, so the two can check each other.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::center::{Center, CenterClass};
use crate::legendre;
use crate::param_poly::ParamPoly;
use crate::rational::int;
use crate::superelliptic::{AlgebraElement, Curve};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CocycleError {
    #[error("r must be nonzero")]
    ZeroIndex,
    #[error("the closed form holds on the quadratic curve only, got {0}")]
    NotQuadratic(String),
    #[error("n must be at least 1, got {0}")]
    NonPositiveIndex(i64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kind {
    /// `e_r = x^r ∂`
    E,
    /// `f_s = x^s u ∂`
    F,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DerivationBasisElement {
    pub kind: Kind,
    pub index: i64,
}

impl DerivationBasisElement {
    pub fn e(index: i64) -> Self {
        Self { kind: Kind::E, index }
    }

    pub fn f(index: i64) -> Self {
        Self { kind: Kind::F, index }
    }

    /// The coefficient `x^index` or `x^index u` of `∂`.
    pub fn coefficient(&self) -> AlgebraElement {
        match self.kind {
            Kind::E => AlgebraElement::x_pow(self.index),
            Kind::F => AlgebraElement::x_pow_u(self.index),
        }
    }
}

impl fmt::Display for DerivationBasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            Kind::E => 'e',
            Kind::F => 'f',
        };
        write!(f, "{k}{}", self.index)
    }
}

/// `f∂ + c` with `c` central.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedElement {
    pub vector: AlgebraElement,
    pub central: CenterClass,
}

impl ExtendedElement {
    pub fn from_vector(center: &Center, vector: AlgebraElement) -> Self {
        Self {
            vector,
            central: center.zero_class(),
        }
    }

    pub fn basis(center: &Center, x: DerivationBasisElement) -> Self {
        Self::from_vector(center, x.coefficient())
    }

    pub fn is_zero(&self) -> bool {
        self.vector.is_zero() && self.central.is_zero()
    }
}

impl std::ops::Add<&ExtendedElement> for &ExtendedElement {
    type Output = ExtendedElement;
    fn add(self, rhs: &ExtendedElement) -> ExtendedElement {
        ExtendedElement {
            vector: &self.vector + &rhs.vector,
            central: &self.central + &rhs.central,
        }
    }
}

/// `C_1, C_0, C_-1, C_-2, C_-3` as polynomials in `a` at a fixed `s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCoefficients {
    pub c1: ParamPoly,
    pub c0: ParamPoly,
    pub cm1: ParamPoly,
    pub cm2: ParamPoly,
    pub cm3: ParamPoly,
}

impl CrossCoefficients {
    /// `(k, C_k)` for `k = 1, 0, -1, -2, -3`.
    pub fn indexed(&self) -> [(i64, &ParamPoly); 5] {
        [
            (1, &self.c1),
            (0, &self.c0),
            (-1, &self.cm1),
            (-2, &self.cm2),
            (-3, &self.cm3),
        ]
    }
}

/// `ψ(f∂, g∂)`.
pub fn psi(center: &Center, f: &AlgebraElement, g: &AlgebraElement) -> CenterClass {
    let curve = center.curve();
    center.reduce(&curve.mul(&curve.partial(f), &curve.partial2(g)))
}

pub fn psi_basis(
    center: &Center,
    x: DerivationBasisElement,
    y: DerivationBasisElement,
) -> CenterClass {
    psi(center, &x.coefficient(), &y.coefficient())
}

pub fn cross_coefficients(s: i64) -> CrossCoefficients {
    let a = |coeffs: &[i64]| ParamPoly::from_ints(coeffs);
    CrossCoefficients {
        c1: a(&[(s + 1) * (s + 1)]),
        c0: a(&[0, -(4 * s * s + 5 * s + 2)]),
        cm1: a(&[2 * s * s + s + 1, 0, 2 * s * (2 * s + 1)]),
        cm2: a(&[0, -s * (4 * s - 1)]),
        cm3: a(&[s * (s - 1)]),
    }
}

/// `r Σ_k C_k(s, a) [x^(r+s+k)]` on the quadratic curve.
pub fn cross_closed_form(center: &Center, r: i64, s: i64) -> Result<CenterClass, CocycleError> {
    if r == 0 {
        return Err(CocycleError::ZeroIndex);
    }
    let curve = center.curve();
    if curve.degree() != 2 || curve.p_coeffs() != Curve::quadratic().p_coeffs() {
        return Err(CocycleError::NotQuadratic(curve.describe()));
    }
    let n = r + s;
    let coeffs = cross_coefficients(s);
    let mut out = center.zero_class();
    for (k, c) in coeffs.indexed() {
        if c.is_zero() {
            continue;
        }
        out = &out + &center.monomial_class(n + k, 0).scale(c);
    }
    Ok(out.scale(&ParamPoly::constant(int(r))))
}

/// `g_n = Σ_k C_k(n-1, a) P_(n+k)(a)`.
pub fn g_n(n: i64) -> Result<ParamPoly, CocycleError> {
    if n < 1 {
        return Err(CocycleError::NonPositiveIndex(n));
    }
    let coeffs = cross_coefficients(n - 1);
    let mut out = ParamPoly::zero();
    for (k, c) in coeffs.indexed() {
        // the terms with n + k < 0 carry C_k = 0
        if c.is_zero() {
            continue;
        }
        out += &(c * &legendre::p((n + k) as usize));
    }
    Ok(out)
}

/// `[X, Y]` in the extension; central inputs drop out.
pub fn uce_bracket(center: &Center, x: &ExtendedElement, y: &ExtendedElement) -> ExtendedElement {
    let curve = center.curve();
    let (f, g) = (&x.vector, &y.vector);
    let vector = &curve.mul(f, &curve.partial(g)) - &curve.mul(g, &curve.partial(f));
    ExtendedElement {
        vector,
        central: psi(center, f, g),
    }
}

/// `ψ(X, Y)` for every `X` in `xs` and `Y` in `ys`, split across scoped threads.
pub fn psi_table(
    center: &Center,
    xs: &[DerivationBasisElement],
    ys: &[DerivationBasisElement],
) -> Vec<(DerivationBasisElement, DerivationBasisElement, CenterClass)> {
    let cells: Vec<_> = xs.iter().flat_map(|&x| ys.iter().map(move |&y| (x, y))).collect();
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(cells.len().max(1));
    let chunk = cells.len().div_ceil(workers).max(1);
    std::thread::scope(|scope| {
        let handles: Vec<_> = cells
            .chunks(chunk)
            .map(|part| {
                scope.spawn(move || {
                    part.iter()
                        .map(|&(x, y)| (x, y, psi_basis(center, x, y)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("psi worker panicked"))
            .collect()
    })
}
