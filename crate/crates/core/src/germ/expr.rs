//! Expression trees for parametrized germs.
//!
//! An expression denotes the first coordinate `h_s(x)` of a fiber-preserving
//! map `(x, s) -> (h_s(x), s)`. Trees are built from the variables `x` and
//! `s`, rational constants, the arithmetic operators, and `min`, `max`,
//! `abs`. Composition of germs is substitution for `x`, so composites stay
//! in the same tree language.

use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::presentation::parse_rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    X,
    S,
    Const(BigRational),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Min(Box<Expr>, Box<Expr>),
    Max(Box<Expr>, Box<Expr>),
    Abs(Box<Expr>),
}

impl Expr {
    pub fn constant(q: BigRational) -> Expr {
        Expr::Const(q)
    }

    /// Exact evaluation at a point.
    pub fn eval(&self, x: &BigRational, s: &BigRational) -> Result<BigRational> {
        Ok(match self {
            Expr::X => x.clone(),
            Expr::S => s.clone(),
            Expr::Const(c) => c.clone(),
            Expr::Neg(e) => -e.eval(x, s)?,
            Expr::Add(a, b) => a.eval(x, s)? + b.eval(x, s)?,
            Expr::Sub(a, b) => a.eval(x, s)? - b.eval(x, s)?,
            Expr::Mul(a, b) => a.eval(x, s)? * b.eval(x, s)?,
            Expr::Div(a, b) => {
                let d = b.eval(x, s)?;
                if d.is_zero() {
                    return Err(Error::Eval("division by zero".into()));
                }
                a.eval(x, s)? / d
            }
            Expr::Min(a, b) => a.eval(x, s)?.min(b.eval(x, s)?),
            Expr::Max(a, b) => a.eval(x, s)?.max(b.eval(x, s)?),
            Expr::Abs(e) => e.eval(x, s)?.abs(),
        })
    }

    /// Substitutes `g` for the variable `x`; this is composition of the
    /// underlying fiber maps.
    pub fn substitute_x(&self, g: &Expr) -> Expr {
        match self {
            Expr::X => g.clone(),
            Expr::S => Expr::S,
            Expr::Const(c) => Expr::Const(c.clone()),
            Expr::Neg(e) => Expr::Neg(Box::new(e.substitute_x(g))),
            Expr::Add(a, b) => {
                Expr::Add(Box::new(a.substitute_x(g)), Box::new(b.substitute_x(g)))
            }
            Expr::Sub(a, b) => {
                Expr::Sub(Box::new(a.substitute_x(g)), Box::new(b.substitute_x(g)))
            }
            Expr::Mul(a, b) => {
                Expr::Mul(Box::new(a.substitute_x(g)), Box::new(b.substitute_x(g)))
            }
            Expr::Div(a, b) => {
                Expr::Div(Box::new(a.substitute_x(g)), Box::new(b.substitute_x(g)))
            }
            Expr::Min(a, b) => {
                Expr::Min(Box::new(a.substitute_x(g)), Box::new(b.substitute_x(g)))
            }
            Expr::Max(a, b) => {
                Expr::Max(Box::new(a.substitute_x(g)), Box::new(b.substitute_x(g)))
            }
            Expr::Abs(e) => Expr::Abs(Box::new(e.substitute_x(g))),
        }
    }

    pub fn uses_x(&self) -> bool {
        match self {
            Expr::X => true,
            Expr::S | Expr::Const(_) => false,
            Expr::Neg(e) | Expr::Abs(e) => e.uses_x(),
            Expr::Add(a, b)
            | Expr::Sub(a, b)
            | Expr::Mul(a, b)
            | Expr::Div(a, b)
            | Expr::Min(a, b)
            | Expr::Max(a, b) => a.uses_x() || b.uses_x(),
        }
    }

    /// Writes `self` as `a(s) * x + b(s)` when possible. The first
    /// component is `None` when the x-coefficient is structurally zero.
    /// `min`/`max`/`abs` are only admitted in x-free subtrees, so a `Some`
    /// answer always has a closed-form monotone inverse wherever `a(s) > 0`.
    pub fn affine_in_x(&self) -> Option<(Option<Expr>, Expr)> {
        match self {
            Expr::X => Some((Some(Expr::Const(BigRational::from_integer(1.into()))), Expr::Const(BigRational::zero()))),
            Expr::S => Some((None, Expr::S)),
            Expr::Const(c) => Some((None, Expr::Const(c.clone()))),
            Expr::Neg(e) => {
                let (a, b) = e.affine_in_x()?;
                Some((a.map(|a| Expr::Neg(Box::new(a))), Expr::Neg(Box::new(b))))
            }
            Expr::Add(l, r) => {
                let (a1, b1) = l.affine_in_x()?;
                let (a2, b2) = r.affine_in_x()?;
                let a = match (a1, a2) {
                    (None, None) => None,
                    (Some(a), None) | (None, Some(a)) => Some(a),
                    (Some(a1), Some(a2)) => Some(Expr::Add(Box::new(a1), Box::new(a2))),
                };
                Some((a, Expr::Add(Box::new(b1), Box::new(b2))))
            }
            Expr::Sub(l, r) => {
                let (a1, b1) = l.affine_in_x()?;
                let (a2, b2) = r.affine_in_x()?;
                let a = match (a1, a2) {
                    (None, None) => None,
                    (Some(a), None) => Some(a),
                    (None, Some(a)) => Some(Expr::Neg(Box::new(a))),
                    (Some(a1), Some(a2)) => Some(Expr::Sub(Box::new(a1), Box::new(a2))),
                };
                Some((a, Expr::Sub(Box::new(b1), Box::new(b2))))
            }
            Expr::Mul(l, r) => {
                let (a1, b1) = l.affine_in_x()?;
                let (a2, b2) = r.affine_in_x()?;
                match (a1, a2) {
                    (None, None) => Some((None, Expr::Mul(Box::new(b1), Box::new(b2)))),
                    (Some(a1), None) => Some((
                        Some(Expr::Mul(Box::new(a1), Box::new(b2.clone())))
,
                        Expr::Mul(Box::new(b1), Box::new(b2)),
                    )),
                    (None, Some(a2)) => Some((
                        Some(Expr::Mul(Box::new(b1.clone()), Box::new(a2))),
                        Expr::Mul(Box::new(b1), Box::new(b2)),
                    )),
                    // a quadratic term appears; not affine
                    (Some(_), Some(_)) => None,
                }
            }
            Expr::Div(l, r) => {
                let (a1, b1) = l.affine_in_x()?;
                let (a2, b2) = r.affine_in_x()?;
                if a2.is_some() {
                    return None;
                }
                let a = a1.map(|a| Expr::Div(Box::new(a), Box::new(b2.clone())));
                Some((a, Expr::Div(Box::new(b1), Box::new(b2))))
            }
            Expr::Min(l, r) => {
                if l.uses_x() || r.uses_x() {
                    return None;
                }
                Some((None, self.clone()))
            }
            Expr::Max(l, r) => {
                if l.uses_x() || r.uses_x() {
                    return None;
                }
                Some((None, self.clone()))
            }
            Expr::Abs(e) => {
                if e.uses_x() {
                    return None;
                }
                Some((None, self.clone()))
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::X => write!(f, "x"),
            Expr::S => write!(f, "s"),
            Expr::Const(c) => write!(f, "{c}"),
            Expr::Neg(e) => write!(f, "(- {e})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
            Expr::Min(a, b) => write!(f, "min({a}, {b})"),
            Expr::Max(a, b) => write!(f, "max({a}, {b})"),
            Expr::Abs(e) => write!(f, "abs({e})"),
        }
    }
}

/// Recursive-descent parser for the expression syntax: `+ - * /`, unary
/// minus, `min(e, e)`, `max(e, e)`, `abs(e)`, the variables `x`, `s`, and
/// integer or `p/q` constants.
pub fn parse_expr(text: &str) -> Result<Expr> {
    let mut parser = Parser { text, pos: 0, line: 1 };
    let expr = parser.expr()?;
    parser.skip_ws();
    if parser.pos != text.len() {
        return Err(parser.error("trailing input"));
    }
    Ok(expr)
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.line, self.pos + 1, msg)
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        while self.rest().starts_with(|c: char| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        loop {
            if self.eat("+") {
                acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat("-") {
                acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        loop {
            if self.eat("*") {
                acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
            } else if self.eat("/") {
                acc = fold_div(acc, self.factor()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        if self.eat("-") {
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Expr> {
        self.skip_ws();
        if self.eat("(") {
            let e = self.expr()?;
            if !self.eat(")") {
                return Err(self.error("expected `)`"));
            }
            return Ok(e);
        }
        for (name, binary) in [("min", true), ("max", true), ("abs", false)] {
            if self.rest().starts_with(name) {
                let after = &self.rest()[name.len()..];
                if after.trim_start().starts_with('(') {
                    self.pos += name.len();
                    if !self.eat("(") {
                        return Err(self.error("expected `(`"));
                    }
                    let first = self.expr()?;
                    let expr = if binary {
                        if !self.eat(",") {
                            return Err(self.error("expected `,`"));
                        }
                        let second = self.expr()?;
                        if name == "min" {
                            Expr::Min(Box::new(first), Box::new(second))
                        } else {
                            Expr::Max(Box::new(first), Box::new(second))
                        }
                    } else {
                        Expr::Abs(Box::new(first))
                    };
                    if !self.eat(")") {
                        return Err(self.error("expected `)`"));
                    }
                    return Ok(expr);
                }
            }
        }
        let rest = self.rest();
        if let Some(c) = rest.chars().next() {
            if c == 'x' && !rest[1..].starts_with(|c: char| c.is_ascii_alphanumeric()) {
                self.pos += 1;
                return Ok(Expr::X);
            }
            if c == 's' && !rest[1..].starts_with(|c: char| c.is_ascii_alphanumeric()) {
                self.pos += 1;
                return Ok(Expr::S);
            }
            if c.is_ascii_digit() {
                let end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
                let digits = &rest[..end];
                let value = parse_rational(digits)
                    .ok_or_else(|| self.error(format!("bad number `{digits}`")))?;
                self.pos += end;
                return Ok(Expr::Const(value));
            }
        }
        Err(self.error("expected an expression"))
    }
}

/// `p / q` on constants folds into one constant so integer-ratio literals
/// stay single nodes.
fn fold_div(a: Expr, b: Expr) -> Result<Expr> {
    if let (Expr::Const(x), Expr::Const(y)) = (&a, &b) {
        if y.is_zero() {
            return Err(Error::Eval("division by zero in constant".into()));
        }
        return Ok(Expr::Const(x / y));
    }
    Ok(Expr::Div(Box::new(a), Box::new(b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn parses_and_evaluates() {
        let e = parse_expr("(1 + s) * x").unwrap();
        assert_eq!(e.eval(&rat(1, 2), &rat(1, 2)).unwrap(), rat(3, 4));
        let e = parse_expr("x + s").unwrap();
        assert_eq!(e.eval(&rat(0, 1), &rat(1, 3)).unwrap(), rat(1, 3));
    }

    #[test]
    fn constant_ratio_folds() {
        let e = parse_expr("1/2").unwrap();
        assert_eq!(e, Expr::Const(rat(1, 2)));
    }

    #[test]
    fn min_max_abs() {
        let e = parse_expr("min(x, 1/2) + max(s, 0) + abs(x - 1)").unwrap();
        assert_eq!(e.eval(&rat(1, 4), &rat(1, 8)).unwrap(), rat(1, 4) + rat(1, 8) + rat(3, 4));
    }

    #[test]
    fn display_round_trips() {
        for text in ["(1 + s) * x", "x + s", "min(s, 1/2) * x + abs(s)"] {
            let e = parse_expr(text).unwrap();
            let again = parse_expr(&e.to_string()).unwrap();
            assert_eq!(e, again);
        }
    }

    #[test]
    fn substitution_composes() {
        // (x+s) after (x+s) is x + 2s
        let f = parse_expr("x + s").unwrap();
        let composed = f.substitute_x(&f);
        let x = rat(1, 5);
        let s = rat(1, 7);
        assert_eq!(composed.eval(&x, &s).unwrap(), &x + &s + &s);
    }

    #[test]
    fn affine_decomposition() {
        let f = parse_expr("(1 + s) * x + abs(s)").unwrap();
        let (a, b) = f.affine_in_x().unwrap();
        let a = a.unwrap();
        let s = rat(1, 3);
        let zero = rat(0, 1);
        assert_eq!(a.eval(&zero, &s).unwrap(), rat(4, 3));
        assert_eq!(b.eval(&zero, &s).unwrap(), rat(1, 3));
        // x*x is not affine
        assert!(parse_expr("x * x").unwrap().affine_in_x().is_none());
        // abs(x) is not affine
        assert!(parse_expr("abs(x)").unwrap().affine_in_x().is_none());
    }

    #[test]
    fn division_by_zero_reported() {
        let e = parse_expr("x / s").unwrap();
        assert!(e.eval(&rat(1, 2), &rat(0, 1)).is_err());
    }

    #[test]
    fn parse_errors_have_location() {
        let err = parse_expr("x + ").unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
    }
}
