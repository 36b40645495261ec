//! Exact computer algebra for the `m = 2` superelliptic algebra
//! `A = Q[a][x^±1, u] / (u^2 - P(x))`: normal forms in `A/∂A`, the
//! central-extension cocycle `ψ(f∂, g∂) = [∂f ∂²g]`, and the Legendre
//! identities those normal forms obey.

pub mod center;
pub mod cocycle;
pub mod current;
pub mod expr;
pub mod laurent;
pub mod legendre;
pub mod output;
pub mod palindromic;
pub mod param_poly;
pub mod rational;
pub mod series;
pub mod superelliptic;
pub mod verify;

pub use center::{Center, CenterClass, CenterError};
pub use cocycle::{psi, psi_basis, DerivationBasisElement};
pub use expr::{parse_element, parse_expr, ExprAst, ExprError};
pub use laurent::LaurentPoly;
pub use param_poly::ParamPoly;
pub use rational::Rational;
pub use series::TruncatedSeries;
pub use superelliptic::{AlgebraElement, Curve, CurveError};
