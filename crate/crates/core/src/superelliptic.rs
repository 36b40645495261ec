//! The algebra `A = Q[a][x^±1, u] / (u^2 - P(x))` and its derivation `∂ = u d/dx`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::laurent::LaurentPoly;
use crate::param_poly::ParamPoly;
use crate::rational::{int, rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("P(x) has no coefficients")]
    Empty,
    #[error("P(x) is not monic: leading coefficient is {0}")]
    NotMonic(String),
    #[error("P(0) = 0: curves with a root at x = 0 are not supported")]
    RootAtZero,
    #[error("P(x) has a repeated root: gcd(P, P') is nontrivial over Q(a)")]
    RepeatedRoots,
}

/// `u^2 = P(x)` with `P` monic of degree `n`, `P(0) != 0` and squarefree over `Q(a)`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<ParamPoly>", into = "Vec<ParamPoly>")]
pub struct Curve {
    p_coeffs: Vec<ParamPoly>,
    palindromic: bool,
    poly: LaurentPoly,
    half_derivative: LaurentPoly,
}

impl TryFrom<Vec<ParamPoly>> for Curve {
    type Error = CurveError;
    fn try_from(p_coeffs: Vec<ParamPoly>) -> Result<Self, CurveError> {
        Curve::new(p_coeffs)
    }
}

impl From<Curve> for Vec<ParamPoly> {
    fn from(c: Curve) -> Self {
        c.p_coeffs
    }
}

impl Curve {
    /// Validate `P(x) = p_0 + p_1 x + ... + p_n x^n` (coefficients low to high).
    pub fn new(p_coeffs: Vec<ParamPoly>) -> Result<Self, CurveError> {
        let lead = p_coeffs.last().ok_or(CurveError::Empty)?;
        if *lead != ParamPoly::one() {
            return Err(CurveError::NotMonic(lead.to_string()));
        }
        if p_coeffs[0].is_zero() {
            return Err(CurveError::RootAtZero);
        }
        let derivative: Vec<ParamPoly> = p_coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale(&int(i as i64)))
            .collect();
        if p_coeffs.len() > 1 && sylvester_resultant(&p_coeffs, &derivative).is_zero() {
            return Err(CurveError::RepeatedRoots);
        }
        let n = p_coeffs.len() - 1;
        let palindromic = (0..=n).all(|i| p_coeffs[i] == p_coeffs[n - i]);
        let poly = LaurentPoly::from_poly(&p_coeffs);
        let half_derivative = poly.ddx().scale_rational(&rat(1, 2));
        Ok(Self {
            p_coeffs,
            palindromic,
            poly,
            half_derivative,
        })
    }

    /// `x^2 - 2ax + 1`.
    pub fn quadratic() -> Self {
        Self::symmetric_trinomial(2)
    }

    /// `x^4 - 2ax^2 + 1`.
    pub fn quartic() -> Self {
        Self::symmetric_trinomial(4)
    }

    /// `x^n - 2a x^(n/2) + 1` for even `n >= 2`; palindromic with simple roots for generic `a`.
    pub fn symmetric_trinomial(n: usize) -> Self {
        assert!(n >= 2 && n.is_multiple_of(2), "degree must be even and positive");
        let mut coeffs = vec![ParamPoly::zero(); n + 1];
        coeffs[0] = ParamPoly::one();
        coeffs[n / 2] = ParamPoly::from_ints(&[0, -2]);
        coeffs[n] = ParamPoly::one();
        Self::new(coeffs).expect("symmetric trinomial is a valid curve")
    }

    pub fn degree(&self) -> usize {
        self.p_coeffs.len() - 1
    }

    pub fn p_coeffs(&self) -> &[ParamPoly] {
        &self.p_coeffs
    }

    pub fn p(&self, i: usize) -> &ParamPoly {
        &self.p_coeffs[i]
    }

    pub fn is_palindromic(&self) -> bool {
        self.palindromic
    }

    pub fn poly(&self) -> &LaurentPoly {
        &self.poly
    }

    /// `P'(x) / 2`, which equals `u u'` in `A`.
    pub fn half_derivative(&self) -> &LaurentPoly {
        &self.half_derivative
    }

    /// `(f0 + f1 u)(g0 + g1 u) = (f0 g0 + f1 g1 P) + (f0 g1 + f1 g0) u`.
    pub fn mul(&self, f: &AlgebraElement, g: &AlgebraElement) -> AlgebraElement {
        let even = &(&f.even * &g.even) + &(&(&f.odd * &g.odd) * &self.poly);
        let odd = &(&f.even * &g.odd) + &(&f.odd * &g.even);
        AlgebraElement { even, odd }
    }

    /// `∂(f0 + f1 u) = (f1' P + f1 P'/2) + f0' u`.
    pub fn partial(&self, f: &AlgebraElement) -> AlgebraElement {
        let even = &(&f.odd.ddx() * &self.poly) + &(&f.odd * &self.half_derivative);
        AlgebraElement {
            even,
            odd: f.even.ddx(),
        }
    }

    pub fn partial2(&self, f: &AlgebraElement) -> AlgebraElement {
        self.partial(&self.partial(f))
    }

    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        for (i, c) in self.p_coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            let text = c.to_string();
            let compound = text.contains(" + ") || text.contains(" - ");
            let coeff = if compound && i > 0 { format!("({text})") } else { text };
            parts.push(match (mono.is_empty(), c == &ParamPoly::one()) {
                (true, _) => coeff,
                (false, true) => mono,
                (false, false) => format!("{coeff}*{mono}"),
            });
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

impl fmt::Debug for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Curve(u^2 = {})", self.describe())
    }
}

/// Resultant of two polynomials in `x` with coefficients in `Q[a]`, via fraction-free
/// (Bareiss) elimination of the Sylvester matrix. Exact divisions stay inside `Q[a]`.
fn sylvester_resultant(p: &[ParamPoly], q: &[ParamPoly]) -> ParamPoly {
    let m = p.len() - 1;
    let n = q.len() - 1;
    let size = m + n;
    if size == 0 {
        return ParamPoly::one();
    }
    let mut mat = vec![vec![ParamPoly::zero(); size]; size];
    // rows hold coefficients from the highest power of x down
    for row in 0..n {
        for (k, c) in p.iter().rev().enumerate() {
            mat[row][row + k] = c.clone();
        }
    }
    for row in 0..m {
        for (k, c) in q.iter().rev().enumerate() {
            mat[n + row][row + k] = c.clone();
        }
    }
    let mut sign = false;
    let mut prev = ParamPoly::one();
    for k in 0..size {
        let Some(pivot_row) = (k..size).find(|&r| !mat[r][k].is_zero()) else {
            return ParamPoly::zero();
        };
        if pivot_row != k {
            mat.swap(pivot_row, k);
            sign = !sign;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = &(&mat[i][j] * &mat[k][k]) - &(&mat[i][k] * &mat[k][j]);
                mat[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss elimination divides exactly");
            }
            mat[i][k] = ParamPoly::zero();
        }
        prev = mat[k][k].clone();
    }
    let det = mat[size - 1][size - 1].clone();
    if sign {
        -det
    } else {
        det
    }
}

/// `f0(x) + f1(x) u`, with `u^2` always eliminated.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct AlgebraElement {
    pub even: LaurentPoly,
    pub odd: LaurentPoly,
}

impl AlgebraElement {
    pub fn new(even: LaurentPoly, odd: LaurentPoly) -> Self {
        Self { even, odd }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_even(LaurentPoly::one())
    }

    pub fn u() -> Self {
        Self::from_odd(LaurentPoly::one())
    }

    pub fn from_even(even: LaurentPoly) -> Self {
        Self {
            even,
            odd: LaurentPoly::zero(),
        }
    }

    pub fn from_odd(odd: LaurentPoly) -> Self {
        Self {
            even: LaurentPoly::zero(),
            odd,
        }
    }

    /// `x^k`.
    pub fn x_pow(k: i64) -> Self {
        Self::from_even(LaurentPoly::x_pow(k))
    }

    /// `x^k u`.
    pub fn x_pow_u(k: i64) -> Self {
        Self::from_odd(LaurentPoly::x_pow(k))
    }

    /// `c x^k u^sector` for `sector` in {0, 1}.
    pub fn monomial(k: i64, sector: u8, c: ParamPoly) -> Self {
        match sector {
            0 => Self::from_even(LaurentPoly::monomial(k, c)),
            1 => Self::from_odd(LaurentPoly::monomial(k, c)),
            _ => panic!("sector must be 0 or 1"),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.even.is_zero() && self.odd.is_zero()
    }

    pub fn scale(&self, s: &ParamPoly) -> Self {
        Self {
            even: self.even.scale(s),
            odd: self.odd.scale(s),
        }
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}] + [{:?}]*u", self.even, self.odd)
    }
}

impl Add<&AlgebraElement> for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            even: &self.even + &rhs.even,
            odd: &self.odd + &rhs.odd,
        }
    }
}

impl Sub<&AlgebraElement> for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            even: &self.even - &rhs.even,
            odd: &self.odd - &rhs.odd,
        }
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        AlgebraElement {
            even: -&self.even,
            odd: -&self.odd,
        }
    }
}

impl Add for AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: AlgebraElement) -> AlgebraElement {
        &self + &rhs
    }
}

impl Sub for AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: AlgebraElement) -> AlgebraElement {
        &self - &rhs
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::laurent::tests::arb_laurent;
    use proptest::prelude::*;

    pub(crate) fn arb_element() -> impl Strategy<Value = AlgebraElement> {
        (arb_laurent(), arb_laurent()).prop_map(|(e, o)| AlgebraElement::new(e, o))
    }

    fn a(k: i64) -> ParamPoly {
        ParamPoly::from_ints(&[0, k])
    }

    /// `sum c_j x^j` from (exponent, coefficient) pairs.
    fn lp(terms: &[(i64, ParamPoly)]) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(*e, c);
        }
        p
    }

    #[test]
    fn curve_validation() {
        let q = Curve::new(vec![1.into(), a(-2), 1.into()]).unwrap();
        assert!(q.is_palindromic());
        assert_eq!(q, Curve::quadratic());
        let quartic = Curve::new(vec![1.into(), 0.into(), a(-2), 0.into(), 1.into()]).unwrap();
        assert!(quartic.is_palindromic());
        // x - 2b with symbolic b: degree-one, non-palindromic
        let lin = Curve::new(vec![a(-2), 1.into()]).unwrap();
        assert!(!lin.is_palindromic());
        assert_eq!(lin.degree(), 1);

        assert!(matches!(
            Curve::new(vec![1.into(), 2.into()]),
            Err(CurveError::NotMonic(_))
        ));
        assert_eq!(
            Curve::new(vec![0.into(), a(-2), 1.into()]),
            Err(CurveError::RootAtZero)
        );
        // (x - 1)^2
        assert_eq!(
            Curve::new(vec![1.into(), (-2).into(), 1.into()]),
            Err(CurveError::RepeatedRoots)
        );
        // (x - a)^2 = x^2 - 2ax + a^2
        assert_eq!(
            Curve::new(vec![ParamPoly::from_ints(&[0, 0, 1]), a(-2), 1.into()]),
            Err(CurveError::RepeatedRoots)
        );
        // (x^2 - 2ax + 1)^2 is palindromic but not squarefree
        let sq = &Curve::quadratic().poly().clone() * Curve::quadratic().poly();
        let coeffs: Vec<ParamPoly> = (0..=4).map(|i| sq.coeff(i)).collect();
        assert_eq!(Curve::new(coeffs), Err(CurveError::RepeatedRoots));
        assert_eq!(Curve::new(vec![]), Err(CurveError::Empty));
    }

    #[test]
    fn product_examples() {
        let c = Curve::quadratic();
        let u = AlgebraElement::u();
        assert_eq!(c.mul(&u, &u), AlgebraElement::from_even(c.poly().clone()));
        assert_eq!(
            c.mul(&AlgebraElement::x_pow(1), &u),
            AlgebraElement::x_pow_u(1)
        );
        let xinv_u = AlgebraElement::x_pow_u(-1);
        let expected = lp(&[(-2, 1.into()), (-1, a(-2)), (0, 1.into())]);
        assert_eq!(c.mul(&xinv_u, &xinv_u), AlgebraElement::from_even(expected));
    }

    #[test]
    fn partial_on_quadratic_monomials() {
        let c = Curve::quadratic();
        for r in -3..=3 {
            let expected = lp(&[
                (r + 1, (r + 1).into()),
                (r, a(-(2 * r + 1))),
                (r - 1, r.into()),
            ]);
            assert_eq!(
                c.partial(&AlgebraElement::x_pow_u(r)),
                AlgebraElement::from_even(expected),
                "r = {r}"
            );
        }
        assert!(c.partial(&AlgebraElement::one()).is_zero());
    }

    #[test]
    fn partial_on_quartic_monomials() {
        let c = Curve::quartic();
        for r in -20..=20 {
            let expected = lp(&[
                (r + 3, (r + 2).into()),
                (r + 1, a(-2 * (r + 1))),
                (r - 1, r.into()),
            ]);
            assert_eq!(
                c.partial(&AlgebraElement::x_pow_u(r)),
                AlgebraElement::from_even(expected),
                "r = {r}"
            );
        }
    }

    #[test]
    fn second_derivative_closed_form() {
        let c = Curve::quadratic();
        for s in -20..=20 {
            let expected = lp(&[
                (s, ((s + 1) * (s + 1)).into()),
                (s - 1, a(-s * (2 * s + 1))),
                (s - 2, (s * (s - 1)).into()),
            ]);
            assert_eq!(
                c.partial2(&AlgebraElement::x_pow_u(s)),
                AlgebraElement::from_odd(expected),
                "s = {s}"
            );
        }
        // ∂²(x) = ∂(u) = P'/2
        assert_eq!(
            c.partial2(&AlgebraElement::x_pow(1)),
            AlgebraElement::from_even(c.half_derivative().clone())
        );
        assert!(c.partial2(&AlgebraElement::one()).is_zero());
    }

    #[test]
    fn partial_kills_defining_relation() {
        for c in [Curve::quadratic(), Curve::quartic(), Curve::symmetric_trinomial(6)] {
            let u = AlgebraElement::u();
            let rel = &c.mul(&u, &u) - &AlgebraElement::from_even(c.poly().clone());
            assert!(rel.is_zero());
            assert!(c.partial(&rel).is_zero());
        }
    }

    proptest! {
        #[test]
        fn leibniz_rule(f in arb_element(), g in arb_element()) {
            for c in [Curve::quadratic(), Curve::quartic()] {
                let lhs = c.partial(&c.mul(&f, &g));
                let rhs = &c.mul(&c.partial(&f), &g) + &c.mul(&f, &c.partial(&g));
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn partial_swaps_sectors(e in arb_laurent(), o in arb_laurent()) {
            let c = Curve::symmetric_trinomial(6);
            prop_assert!(c.partial(&AlgebraElement::from_even(e)).even.is_zero());
            prop_assert!(c.partial(&AlgebraElement::from_odd(o)).odd.is_zero());
        }
    }
}
