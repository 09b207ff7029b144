//! The Magnus order on free groups.
//!
//! Each generator expands as `x -> 1 + X` and `x^-1 -> 1 - X + X^2 - ...`
//! in the ring of noncommuting power series. The expansion of a nontrivial
//! reduced word differs from 1 in some degree bounded by the word length,
//! so truncating at the letter count of `v^-1 u` decides every comparison
//! exactly: the sign of the first nonzero coefficient in graded
//! lexicographic term order orders `u` against `v`.

use crate::error::{Error, Result};
use crate::order::{Comparison, OrderOracle};
use crate::presentation::Presentation;
use crate::words::Word;

/// Compares `u` and `v` in the Magnus order. The presentation must be free.
pub fn magnus_compare(p: &Presentation, u: &Word, v: &Word) -> Result<Comparison> {
    if !p.is_free() {
        return Err(Error::precondition(
            "the Magnus order is defined on free presentations only",
        ));
    }
    u.check_gens(p.n_gens())?;
    v.check_gens(p.n_gens())?;
    Ok(compare_free(p.n_gens().max(1), u, v))
}

fn compare_free(n_gens: usize, u: &Word, v: &Word) -> Comparison {
    let w = v.inverse().mul(u);
    if w.is_identity() {
        return Comparison::Equal;
    }
    // the degree-1 coefficients are the exponent sums; when any is nonzero
    // the first one decides without touching the series machinery
    for sum in w.exponent_sums(n_gens) {
        if sum > 0 {
            return Comparison::Greater;
        }
        if sum < 0 {
            return Comparison::Less;
        }
    }
    let max_degree = w.len();
    // the first nonzero coefficient sits beyond degree 1; escalate the
    // truncation until it shows up
    let mut degree = 2;
    loop {
        let series = expand(n_gens, &w, degree);
        // coefficients of degree <= the truncation are exact
        for idx in 1..series.coeffs.len() {
            let c = series.coeffs[idx];
            if c > 0 {
                return Comparison::Greater;
            }
            if c < 0 {
                return Comparison::Less;
            }
        }
        assert!(
            degree < max_degree,
            "nontrivial reduced word with no coefficient up to its length"
        );
        degree = (degree * 2).min(max_degree);
    }
}

/// Truncated series of a whole word.
fn expand(n_gens: usize, w: &Word, degree: usize) -> Series {
    let mut acc = Series::one(n_gens, degree);
    for l in w.letters() {
        acc = acc.mul_letter(l.gen, l.exp);
    }
    acc
}

/// Dense truncated series over noncommuting generators. Monomials of degree
/// d are ranked by their base-k digit string (first letter most
/// significant), which makes index order within a degree the lexicographic
/// order used for comparisons.
struct Series {
    n_gens: usize,
    degree: usize,
    /// starts[d] = index of the first degree-d monomial
    starts: Vec<usize>,
    coeffs: Vec<i128>,
}

impl Series {
    fn one(n_gens: usize, degree: usize) -> Series {
        let mut starts = Vec::with_capacity(degree + 2);
        let mut total = 0usize;
        let mut layer = 1usize;
        for _ in 0..=degree + 1 {
            starts.push(total);
            total += layer;
            layer = layer.checked_mul(n_gens).expect("monomial space overflow");
        }
        let size = starts[degree + 1];
        let mut coeffs = vec![0i128; size];
        coeffs[0] = 1;
        Series { n_gens, degree, starts, coeffs }
    }

    /// Multiplies on the right by the expansion of one letter `x_g^e`.
    fn mul_letter(&self, gen: usize, exp: i64) -> Series {
        let mut out = Series {
            n_gens: self.n_gens,
            degree: self.degree,
            starts: self.starts.clone(),
            coeffs: vec![0i128; self.coeffs.len()],
        };
        let coeffs = binomial_column(exp, self.degree);
        for d in 0..=self.degree {
            let width = self.starts[d + 1] - self.starts[d];
            for off in 0..width {
                let c = self.coeffs[self.starts[d] + off];
                if c == 0 {
                    continue;
                }
                let mut run = 0usize; // digit string g^j appended
                let mut k_pow = 1usize;
                for (j, bc) in coeffs.iter().enumerate().take(self.degree - d + 1) {
                    if j > 0 {
                        run = run * self.n_gens + gen;
                        k_pow *= self.n_gens;
                    }
                    if *bc == 0 {
                        continue;
                    }
                    let idx = self.starts[d + j] + off * k_pow + run;
                    let term = c.checked_mul(*bc).expect("coefficient overflow");
                    out.coeffs[idx] =
                        out.coeffs[idx].checked_add(term).expect("coefficient overflow");
                }
            }
        }
        out
    }
}

/// Coefficients of (1 + X)^e truncated at `degree`, exact for any integer
/// exponent through the generalized binomial recurrence.
fn binomial_column(exp: i64, degree: usize) -> Vec<i128> {
    let mut out = Vec::with_capacity(degree + 1);
    let mut c: i128 = 1;
    out.push(c);
    for j in 0..degree as i64 {
        let num = exp as i128 - j as i128;
        c = c.checked_mul(num).expect("binomial overflow") / (j as i128 + 1);
        out.push(c);
    }
    out
}

/// Oracle wrapper; construction fails on presentations with relators.
pub struct MagnusOracle {
    presentation: Presentation,
}

impl MagnusOracle {
    pub fn new(presentation: Presentation) -> Result<Self> {
        if !presentation.is_free() {
            return Err(Error::precondition(
                "the Magnus order is defined on free presentations only",
            ));
        }
        Ok(MagnusOracle { presentation })
    }
}

impl OrderOracle for MagnusOracle {
    fn compare(&self, u: &Word, v: &Word) -> Comparison {
        compare_free(self.presentation.n_gens().max(1), u, v)
    }

    fn presentation(&self) -> &Presentation {
        &self.presentation
    }
}
