//! The germ file format.
//!
//! Line oriented; `#` starts a comment. Each entry is
//!
//! ```text
//! <name> = <expr> [; rho <rational>]
//! ```
//!
//! where `<expr>` follows the expression syntax of [`super::expr`] and the
//! optional radius defaults to 1. Names follow the same rules as generator
//! names so a germ file can be matched against a presentation.

use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::germ::expr::parse_expr;
use crate::germ::germ::ParamGerm;
use crate::presentation::parse_rational;

/// Parses a germ file into named germs, in file order.
pub fn parse_germ_file(text: &str) -> Result<Vec<ParamGerm>> {
    let mut out: Vec<ParamGerm> = Vec::new();
    for (lineno, raw_line) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = match raw_line.find('#') {
            Some(i) => &raw_line[..i],
            None => raw_line,
        };
        if content.trim().is_empty() {
            continue;
        }
        let Some((name, rest)) = content.split_once('=') else {
            return Err(Error::parse(line, 1, "expected `<name> = <expr>`"));
        };
        let name = name.trim();
        if name.is_empty() {
            return Err(Error::parse(line, 1, "missing germ name"));
        }
        if out.iter().any(|g| g.name == name) {
            return Err(Error::parse(line, 1, format!("duplicate germ `{name}`")));
        }
        let (expr_text, rho) = match rest.split_once(';') {
            Some((e, tail)) => {
                let tail = tail.trim();
                let Some(rho_text) = tail.strip_prefix("rho") else {
                    return Err(Error::parse(line, 1, "expected `; rho <rational>`"));
                };
                let rho = parse_rational(rho_text).ok_or_else(|| {
                    Error::parse(line, 1, format!("bad radius `{}`", rho_text.trim()))
                })?;
                (e, rho)
            }
            None => (rest, BigRational::one()),
        };
        let expr = parse_expr(expr_text).map_err(|e| match e {
            Error::Parse { col, msg, .. } => Error::parse(line, col, msg),
            other => other,
        })?;
        out.push(ParamGerm::new(name, expr, rho)?);
    }
    if out.is_empty() {
        return Err(Error::parse(1, 1, "germ file declares no germs"));
    }
    Ok(out)
}

/// Canonical text form of a germ list; `parse_germ_file` round-trips it.
pub fn germs_to_text(germs: &[ParamGerm]) -> String {
    let mut out = String::new();
    for g in germs {
        if g.rho.is_one() {
            out.push_str(&format!("{} = {}\n", g.name, g.expr));
        } else {
            out.push_str(&format!("{} = {} ; rho {}\n", g.name, g.expr, g.rho));
        }
    }
    out
}
