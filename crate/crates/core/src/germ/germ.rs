//! Parametrized germs at the origin of the line times the parameter space
//! S = {0} union {1/n}.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::germ::expr::Expr;

/// Checks that `s` lies in S = {0} union {1/n : n a positive integer}.
pub fn is_s_value(s: &BigRational) -> bool {
    s.is_zero() || (s.numer() == &BigInt::one() && s.denom() > &BigInt::zero())
}

/// The parameter value 1/n.
pub fn s_value(n: u64) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(n))
}

/// A germ of a parametrized family `(x, s) -> (h_s(x), s)` at (0, 0),
/// represented by an expression for `h_s(x)` and a declared neighborhood
/// radius in the x direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamGerm {
    pub name: String,
    pub expr: Expr,
    pub rho: BigRational,
}

impl ParamGerm {
    pub fn new(name: impl Into<String>, expr: Expr, rho: BigRational) -> Result<Self> {
        if !rho.is_positive() {
            return Err(Error::precondition("neighborhood radius must be positive"));
        }
        Ok(ParamGerm { name: name.into(), expr, rho })
    }

    pub fn identity(name: impl Into<String>) -> Self {
        ParamGerm { name: name.into(), expr: Expr::X, rho: BigRational::one() }
    }

    pub fn is_identity_expr(&self) -> bool {
        self.expr == Expr::X
    }

    /// Sampled validation of the germ invariants: `h_0(0) = 0` exactly,
    /// strict monotonicity in x at every sampled parameter, and
    /// nonincreasing `|h_{1/2^m}(0)|` as evidence that the family fixes
    /// the base point in the limit.
    pub fn validate(&self, depth: u32) -> Result<()> {
        let zero = BigRational::zero();
        let at_origin = self.expr.eval(&zero, &zero)?;
        if !at_origin.is_zero() {
            return Err(Error::precondition(format!(
                "germ `{}` does not fix the origin: h_0(0) = {at_origin}",
                self.name
            )));
        }

        let mut xs: Vec<BigRational> = Vec::new();
        for m in 1..=depth {
            for x in super::witness::shell_x_values(m) {
                if x.abs() < self.rho && !xs.contains(&x) {
                    xs.push(x);
                }
            }
        }
        xs.sort();

        let mut params = vec![zero.clone()];
        for n in 1..=(1u64 << depth.min(6)) {
            params.push(s_value(n));
        }
        for s in &params {
            let mut prev: Option<BigRational> = None;
            for x in &xs {
                let y = self.expr.eval(x, s)?;
                if let Some(p) = prev {
                    if p >= y {
                        return Err(Error::precondition(format!(
                            "germ `{}` is not strictly increasing in x at s = {s}",
                            self.name
                        )));
                    }
                }
                prev = Some(y);
            }
        }

        let mut last_mag: Option<BigRational> = None;
        for m in 0..=depth.min(6) {
            let s = s_value(1 << m);
            let mag = self.expr.eval(&zero, &s)?.abs();
            if let Some(prev) = last_mag {
                if mag > prev {
                    return Err(Error::precondition(format!(
                        "germ `{}` does not settle at the origin: |h_s(0)| grows along s = 1/2^m",
                        self.name
                    )));
                }
            }
            last_mag = Some(mag);
        }
        Ok(())
    }
}

/// Evaluates the first coordinate of a germ at an exact point.
pub fn eval_param_germ(f: &ParamGerm, x: &BigRational, s: &BigRational) -> Result<BigRational> {
    if x.abs() >= f.rho {
        return Err(Error::Domain(format!(
            "|{x}| is outside the declared neighborhood of `{}`",
            f.name
        )));
    }
    if !is_s_value(s) {
        return Err(Error::Domain(format!("{s} is not in S = {{0}} u {{1/n}}")));
    }
    f.expr.eval(x, s)
}

/// Composition `f . g` as expression substitution; the composite inherits
/// the smaller neighborhood.
pub fn compose_param_germ(f: &ParamGerm, g: &ParamGerm) -> ParamGerm {
    ParamGerm {
        name: format!("({}.{})", f.name, g.name),
        expr: f.expr.substitute_x(&g.expr),
        rho: f.rho.clone().min(g.rho.clone()),
    }
}

/// Closed-form inverse for germs that are affine in x. Anything else is
/// refused: no numeric inversion is ever attempted.
pub fn invert_param_germ(f: &ParamGerm) -> Result<ParamGerm> {
    let Some((coeff, offset)) = f.expr.affine_in_x() else {
        return Err(Error::Unsupported(format!(
            "germ `{}` has no supported closed-form inverse (not affine in x)",
            f.name
        )));
    };
    let Some(coeff) = coeff else {
        return Err(Error::Unsupported(format!(
            "germ `{}` is constant in x and has no inverse",
            f.name
        )));
    };
    let numerator = Expr::Sub(Box::new(Expr::X), Box::new(offset));
    let expr = if coeff == Expr::Const(BigRational::one()) {
        numerator
    } else {
        Expr::Div(Box::new(numerator), Box::new(coeff))
    };
    Ok(ParamGerm { name: format!("{}^-1", f.name), expr, rho: f.rho.clone() })
}
