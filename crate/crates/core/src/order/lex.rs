//! Lexicographic order on Z^n and the oracle it induces on free abelian
//! presentations.

use crate::error::{Error, Result};
use crate::order::{Comparison, OrderOracle};
use crate::presentation::Presentation;
use crate::words::Word;

/// Lexicographic comparison of integer vectors of equal length. Total and
/// translation-invariant.
pub fn lex_order_compare(u: &[i64], v: &[i64]) -> Result<Comparison> {
    if u.len() != v.len() {
        return Err(Error::precondition(format!(
            "length mismatch: {} vs {}",
            u.len(),
            v.len()
        )));
    }
    for (a, b) in u.iter().zip(v) {
        if a < b {
            return Ok(Comparison::Less);
        }
        if a > b {
            return Ok(Comparison::Greater);
        }
    }
    Ok(Comparison::Equal)
}

/// Order oracle comparing words by the lexicographic order on their
/// exponent-sum vectors.
///
/// This is a genuine left order exactly when the presented group is free
/// abelian (the exponent vector is then a complete invariant). On other
/// presentations the downstream consistency checks will fail honestly.
pub struct LexOracle {
    presentation: Presentation,
}

impl LexOracle {
    pub fn new(presentation: Presentation) -> Self {
        LexOracle { presentation }
    }
}

impl OrderOracle for LexOracle {
    fn compare(&self, u: &Word, v: &Word) -> Comparison {
        let n = self.presentation.n_gens();
        lex_order_compare(&u.exponent_sums(n), &v.exponent_sums(n))
            .expect("vectors built with equal length")
    }

    fn presentation(&self) -> &Presentation {
        &self.presentation
    }
}
