//! Parser for algebra elements.
//!
//! ```text
//! expr     := ['-'] term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := rational | atom ('^' signed-int)?
//! atom     := 'x' | 'u' | 'a' | '(' expr ')'
//! rational := int ('/' int)?
//! ```
//!
//! Whitespace is ignored. `u^k` is reduced with `u^2 = P(x)` when the tree is
//! elaborated onto a curve.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::laurent::LaurentPoly;
use crate::param_poly::ParamPoly;
use crate::rational::Rational;
use crate::superelliptic::{AlgebraElement, Curve};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("parse error at offset {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("negative power of an expression involving u: ({0})^{1}")]
    NegativeUExponent(String, i64),
    #[error("cannot invert ({0}): only c*x^k with rational c != 0 has an inverse")]
    NotInvertible(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprAst {
    Rational(Rational),
    Param,
    X,
    U,
    Pow(Box<ExprAst>, i64),
    Product(Vec<ExprAst>),
    Sum(Vec<ExprAst>),
    Neg(Box<ExprAst>),
}

pub fn parse_expr(input: &str) -> Result<ExprAst, ExprError> {
    let mut p = Parser {
        src: input.as_bytes(),
        pos: 0,
    };
    let ast = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(ast)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error(&self, message: &str) -> ExprError {
        let found = match self.src.get(self.pos) {
            Some(&c) => format!("{message}, found {:?}", c as char),
            None => format!("{message}, found end of input"),
        };
        ExprError::Parse {
            position: self.pos,
            message: found,
        }
    }

    fn expr(&mut self) -> Result<ExprAst, ExprError> {
        let mut items = Vec::new();
        let first = if self.eat(b'-') {
            ExprAst::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        items.push(first);
        loop {
            if self.eat(b'+') {
                items.push(self.term()?);
            } else if self.eat(b'-') {
                items.push(ExprAst::Neg(Box::new(self.term()?)));
            } else {
                break;
            }
        }
        Ok(if items.len() == 1 {
            items.pop().expect("one item")
        } else {
            ExprAst::Sum(items)
        })
    }

    fn term(&mut self) -> Result<ExprAst, ExprError> {
        let mut items = vec![self.factor()?];
        while self.eat(b'*') {
            items.push(self.factor()?);
        }
        Ok(if items.len() == 1 {
            items.pop().expect("one item")
        } else {
            ExprAst::Product(items)
        })
    }

    fn factor(&mut self) -> Result<ExprAst, ExprError> {
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let num = self.int()?;
            if self.eat(b'/') {
                let start = self.pos;
                let den = self.int()?;
                if den.is_zero() {
                    self.pos = start;
                    return Err(self.error("zero denominator"));
                }
                return Ok(ExprAst::Rational(Rational::new(num, den)));
            }
            return Ok(ExprAst::Rational(Rational::from_integer(num)));
        }
        let atom = self.atom()?;
        if self.eat(b'^') {
            let negative = self.eat(b'-');
            if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
                return Err(self.error("expected an integer exponent"));
            }
            let start = self.pos;
            let e: i64 = self.int()?.try_into().map_err(|_| {
                self.pos = start;
                self.error("exponent out of range")
            })?;
            return Ok(ExprAst::Pow(Box::new(atom), if negative { -e } else { e }));
        }
        Ok(atom)
    }

    fn atom(&mut self) -> Result<ExprAst, ExprError> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(ExprAst::X)
            }
            Some(b'u') => {
                self.pos += 1;
                Ok(ExprAst::U)
            }
            Some(b'a') => {
                self.pos += 1;
                Ok(ExprAst::Param)
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            _ => Err(self.error("expected a number, 'x', 'u', 'a' or '('")),
        }
    }

    fn int(&mut self) -> Result<BigInt, ExprError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("nonempty digit run"))
    }
}

impl ExprAst {
    fn is_atomic(&self) -> bool {
        matches!(self, ExprAst::X | ExprAst::U | ExprAst::Param)
    }
}

impl fmt::Display for ExprAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExprAst::Rational(q) if q.is_negative() => write!(f, "(0 - {})", -q),
            ExprAst::Rational(q) => write!(f, "{q}"),
            ExprAst::Param => f.write_str("a"),
            ExprAst::X => f.write_str("x"),
            ExprAst::U => f.write_str("u"),
            ExprAst::Pow(base, e) if base.is_atomic() => write!(f, "{base}^{e}"),
            ExprAst::Pow(base, e) => write!(f, "({base})^{e}"),
            ExprAst::Product(items) => {
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str("*")?;
                    }
                    match item {
                        ExprAst::Sum(_) | ExprAst::Neg(_) | ExprAst::Product(_) => write!(f, "({item})")?,
                        _ => write!(f, "{item}")?,
                    }
                }
                Ok(())
            }
            ExprAst::Sum(items) => {
                for (i, item) in items.iter().enumerate() {
                    match (i, item) {
                        (0, ExprAst::Neg(t)) => write!(f, "-{}", Parenthesized(t))?,
                        (0, t) => write!(f, "{}", Parenthesized(t))?,
                        (_, ExprAst::Neg(t)) => write!(f, " - {}", Parenthesized(t))?,
                        (_, t) => write!(f, " + {}", Parenthesized(t))?,
                    }
                }
                Ok(())
            }
            ExprAst::Neg(t) => write!(f, "-{}", Parenthesized(t)),
        }
    }
}

/// A sum operand: bare unless it would re-associate.
struct Parenthesized<'a>(&'a ExprAst);

impl fmt::Display for Parenthesized<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            ExprAst::Sum(_) | ExprAst::Neg(_) => write!(f, "({})", self.0),
            t => write!(f, "{t}"),
        }
    }
}

/// Interpret the tree in `A = Q[a][x^±1, u]/(u^2 - P)`.
pub fn elaborate(ast: &ExprAst, curve: &Curve) -> Result<AlgebraElement, ExprError> {
    Ok(match ast {
        ExprAst::Rational(q) => AlgebraElement::from_even(LaurentPoly::monomial(0, q.clone().into())),
        ExprAst::Param => AlgebraElement::from_even(LaurentPoly::monomial(0, ParamPoly::param())),
        ExprAst::X => AlgebraElement::x_pow(1),
        ExprAst::U => AlgebraElement::u(),
        ExprAst::Neg(t) => -&elaborate(t, curve)?,
        ExprAst::Sum(items) => {
            let mut acc = AlgebraElement::zero();
            for t in items {
                acc = &acc + &elaborate(t, curve)?;
            }
            acc
        }
        ExprAst::Product(items) => {
            let mut acc = AlgebraElement::one();
            for t in items {
                acc = curve.mul(&acc, &elaborate(t, curve)?);
            }
            acc
        }
        ExprAst::Pow(base, e) => {
            let b = elaborate(base, curve)?;
            let b = if *e < 0 {
                invert(&b, base, *e)?
            } else {
                b
            };
            power(curve, &b, e.unsigned_abs())
        }
    })
}

fn invert(b: &AlgebraElement, base: &ExprAst, e: i64) -> Result<AlgebraElement, ExprError> {
    if !b.odd.is_zero() {
        return Err(ExprError::NegativeUExponent(base.to_string(), e));
    }
    let mut terms = b.even.terms();
    match (terms.next(), terms.next()) {
        (Some((k, c)), None) => match c.as_constant() {
            Some(q) if !q.is_zero() => Ok(AlgebraElement::from_even(LaurentPoly::monomial(
                -k,
                q.recip().into(),
            ))),
            _ => Err(ExprError::NotInvertible(base.to_string())),
        },
        _ => Err(ExprError::NotInvertible(base.to_string())),
    }
}

fn power(curve: &Curve, b: &AlgebraElement, mut e: u64) -> AlgebraElement {
    let mut acc = AlgebraElement::one();
    let mut sq = b.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = curve.mul(&acc, &sq);
        }
        e >>= 1;
        if e > 0 {
            sq = curve.mul(&sq, &sq);
        }
    }
    acc
}

/// Parse and elaborate in one step.
pub fn parse_element(input: &str, curve: &Curve) -> Result<AlgebraElement, ExprError> {
    elaborate(&parse_expr(input)?, curve)
}

/// Parse a polynomial in `a` alone, e.g. a curve coefficient like `-2*a` or `1/2`.
pub fn parse_param_poly(input: &str) -> Result<ParamPoly, ExprError> {
    let ast = parse_expr(input)?;
    if mentions(&ast, &|n| matches!(n, ExprAst::X | ExprAst::U)) {
        return Err(ExprError::Parse {
            position: 0,
            message: format!("{input:?} must be a polynomial in a alone"),
        });
    }
    let el = elaborate(&ast, &Curve::quadratic())?;
    Ok(el.even.coeff(0))
}

fn mentions(ast: &ExprAst, pred: &dyn Fn(&ExprAst) -> bool) -> bool {
    pred(ast)
        || match ast {
            ExprAst::Pow(b, _) | ExprAst::Neg(b) => mentions(b, pred),
            ExprAst::Product(items) | ExprAst::Sum(items) => items.iter().any(|t| mentions(t, pred)),
            _ => false,
        }
}
