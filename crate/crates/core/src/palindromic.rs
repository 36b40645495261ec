//! Symmetry diagnostics for palindromic curves `P(x) = x^n P(1/x)`.
//!
//! Writing `n = 2h` and centering the relation index at `τ = r + h/2`, the
//! coefficient of `R_r` on `x^(r+h-1+d)` is `c_d(τ) = (τ + d/2) p_(h+d)`.
//! Palindromic `P` gives `c_(-d)(-τ) = -c_d(τ)`, so the reflection
//! `e -> h - 2 - e` maps `R_r` to `-R_(-r-h)` and therefore acts on `A/∂A`.
//! The report checks that, the sign rule itself, and whether each residue
//! class of exponents (modulo the gcd of the support of `P`) with a single
//! nonnegative window generator is governed by the Legendre recurrence.
//! Nothing here asserts anything for degree 6 and above; those reports are data.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::center::{Center, CenterClass, CenterError};
use crate::legendre;
use crate::param_poly::ParamPoly;
use crate::superelliptic::{AlgebraElement, Curve};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PalindromicError {
    #[error("P is not palindromic: {0}")]
    NotPalindromic(String),
    #[error("P has odd degree {0}")]
    OddDegree(usize),
    #[error(transparent)]
    Center(#[from] CenterError),
}

/// `p_i = p_(n-i)` for all `i`, read literally (no rescaling).
pub fn is_palindromic(p_coeffs: &[ParamPoly]) -> bool {
    let n = p_coeffs.len();
    (0..n / 2).all(|i| p_coeffs[i] == p_coeffs[n - 1 - i])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Fails { detail: String },
    NotApplicable { reason: String },
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationRow {
    pub r: i64,
    /// `(exponent, coefficient)` pairs of `R_r`.
    pub terms: Vec<(i64, ParamPoly)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    /// Exponents `e ≡ residue (mod stride)`.
    pub residue: i64,
    pub window_exponents: Vec<i64>,
    pub nonnegative_generators: Vec<i64>,
    /// Relations whose exponents lie in this class.
    pub relations: Vec<RelationRow>,
    pub symmetric_coefficients: Verdict,
    /// `[x^(e0 + stride k)] = P_k(a) [x^e0]` for the single nonnegative generator `e0`.
    pub legendre_chain: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryReport {
    pub curve: String,
    pub degree: usize,
    pub dimension_observed: usize,
    pub dimension_formula: usize,
    /// gcd of the exponents in the support of `P`.
    pub stride: i64,
    pub parity_separation: Verdict,
    pub sign_symmetry: Verdict,
    pub mirror_law: Verdict,
    pub classes: Vec<ClassReport>,
    /// Exponent and index ranges the checks ran over.
    pub checked_exponents: (i64, i64),
    pub checked_chain_length: usize,
}

impl SymmetryReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ReportOptions {
    /// Checks run over `|e| ≤ exponent_radius`.
    pub exponent_radius: i64,
    pub chain_length: usize,
}

impl Default for ReportOptions {
    fn default() -> Self {
        Self {
            exponent_radius: 40,
            chain_length: 40,
        }
    }
}

pub fn symmetry_report(curve: &Curve) -> Result<SymmetryReport, PalindromicError> {
    symmetry_report_with(curve, ReportOptions::default())
}

pub fn symmetry_report_with(
    curve: &Curve,
    opts: ReportOptions,
) -> Result<SymmetryReport, PalindromicError> {
    let n = curve.degree();
    if n % 2 == 1 {
        return Err(PalindromicError::OddDegree(n));
    }
    if !is_palindromic(curve.p_coeffs()) {
        return Err(PalindromicError::NotPalindromic(curve.describe()));
    }
    let center = Center::new(curve.clone())?;
    let h = (n / 2) as i64;
    let stride = curve
        .p_coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .fold(0i64, |g, (i, _)| gcd(g, i as i64));
    let radius = opts.exponent_radius;
    let classes_of = |e: i64| -> CenterClass { center.monomial_class(e, 0) };

    let dimension_observed = center.zero_class().dimension();

    let parity_separation = if stride == 1 {
        Verdict::NotApplicable {
            reason: "P has nonzero coefficients in every residue class".into(),
        }
    } else {
        first_failure((-radius..=radius).map(|e| {
            let cls = classes_of(e);
            let bad: Vec<i64> = window_support(&cls)
                .into_iter()
                .filter(|w| (w - e).rem_euclid(stride) != 0)
                .collect();
            (bad.is_empty(), format!("[x^{e}] has support on {bad:?}"))
        }))
    };

    let sign_symmetry = first_failure((-radius..=radius).map(|r| {
        let ok = mirrored_relation_matches(&center, r, h);
        (ok, format!("R_{r} and R_{} are not negated mirrors", -r - h))
    }));

    let mirror = |e: i64| h - 2 - e;
    let (lo, hi) = center.window_bounds();
    let window_images: Vec<CenterClass> = (lo..=hi).map(|w| classes_of(mirror(w))).collect();
    let mirror_law = first_failure((-radius..=radius).map(|e| {
        let cls = classes_of(e);
        let mut image = center.zero_class();
        for (w, img) in (lo..=hi).zip(&window_images) {
            let c = cls.window(w);
            if !c.is_zero() {
                image = &image + &img.scale(c);
            }
        }
        (
            image == classes_of(mirror(e)),
            format!("[x^{}] is not the mirror image of [x^{e}]", mirror(e)),
        )
    }));

    let relation_rows: Vec<RelationRow> = (-radius..=radius)
        .map(|r| RelationRow {
            r,
            terms: center.relation_coeffs(r),
        })
        .collect();

    let classes = (0..stride)
        .map(|residue| {
            let in_class = |e: i64| (e - residue).rem_euclid(stride) == 0;
            let window_exponents: Vec<i64> = (lo..=hi).filter(|&e| in_class(e)).collect();
            let nonnegative_generators: Vec<i64> =
                window_exponents.iter().copied().filter(|&e| e >= 0).collect();
            let relations: Vec<RelationRow> = relation_rows
                .iter()
                .filter(|row| row.terms.first().is_some_and(|(e, _)| in_class(*e)))
                .cloned()
                .collect();
            let symmetric_coefficients = first_failure(relations.iter().map(|row| {
                (
                    mirrored_relation_matches(&center, row.r, h),
                    format!("R_{} breaks c_(-d)(-τ) = -c_d(τ)", row.r),
                )
            }));
            let legendre_chain = match nonnegative_generators.as_slice() {
                [e0] => {
                    let base = classes_of(*e0);
                    first_failure((0..=opts.chain_length).map(|k| {
                        let e = e0 + stride * k as i64;
                        (
                            classes_of(e) == base.scale(&legendre::p(k)),
                            format!("[x^{e}] != P_{k}(a) [x^{e0}]"),
                        )
                    }))
                }
                gens => Verdict::NotApplicable {
                    reason: format!("{} nonnegative window generators", gens.len()),
                },
            };
            ClassReport {
                residue,
                window_exponents,
                nonnegative_generators,
                relations,
                symmetric_coefficients,
                legendre_chain,
            }
        })
        .collect();

    Ok(SymmetryReport {
        curve: curve.describe(),
        degree: n,
        dimension_observed,
        dimension_formula: 1 + n,
        stride,
        parity_separation,
        sign_symmetry,
        mirror_law,
        classes,
        checked_exponents: (-radius, radius),
        checked_chain_length: opts.chain_length,
    })
}

/// `R_(-r-h)` equals `-μ(R_r)` with `μ(e) = h - 2 - e`.
fn mirrored_relation_matches(center: &Center, r: i64, h: i64) -> bool {
    let mut mirrored: Vec<(i64, ParamPoly)> = center
        .relation_coeffs(r)
        .into_iter()
        .map(|(e, c)| (h - 2 - e, -&c))
        .collect();
    mirrored.sort_by_key(|(e, _)| *e);
    center.relation_coeffs(-r - h) == mirrored
}

fn window_support(cls: &CenterClass) -> Vec<i64> {
    cls.support()
        .into_iter()
        .filter(|&i| i > 0)
        .map(|i| i as i64 - 2)
        .collect()
}

fn first_failure(checks: impl Iterator<Item = (bool, String)>) -> Verdict {
    for (ok, detail) in checks {
        if !ok {
            return Verdict::Fails { detail };
        }
    }
    Verdict::Holds
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// `[x^k u]` vanishes except at `k = -1`, where it is `ω0`.
pub fn odd_sector_is_rank_one(center: &Center, radius: i64) -> bool {
    (-radius..=radius).all(|k| {
        let cls = center.reduce(&AlgebraElement::x_pow_u(k));
        cls.support().iter().all(|&i| i == 0) && (k == -1) != cls.is_zero()
    })
}
