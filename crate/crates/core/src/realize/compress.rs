//! Compression of a line action to the negative ray.
//!
//! The fixed homeomorphism `phi(x) = (x/(1+|x|) - 1)/2` identifies the
//! whole line with the interval (-1, 0). Conjugating a PL map by `phi`
//! produces a map of (-1, 0) that extends by fixing 0; every orbit of a
//! positive element then climbs toward the fixed point 0 from below, which
//! is the germ-at-0 picture of the action.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::realize::plmap::PlMap;

/// phi(x) = (x/(1+|x|) - 1)/2, an increasing bijection from the line onto
/// (-1, 0).
pub fn phi(x: &BigRational) -> BigRational {
    let one = BigRational::one();
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    (x / (&one + x.abs()) - one) * half
}

/// Inverse of [`phi`]; defined on (-1, 0).
pub fn phi_inv(y: &BigRational) -> Result<BigRational> {
    if !(y > &-BigRational::one() && y < &BigRational::zero()) {
        return Err(Error::Domain(format!("{y} is outside (-1, 0)")));
    }
    let u = y * BigRational::from(BigInt::from(2)) + BigRational::one();
    let one = BigRational::one();
    if u.is_negative() {
        Ok(&u / (&one + &u))
    } else {
        Ok(&u / (&one - &u))
    }
}

/// A PL map conjugated onto the negative ray, evaluated pointwise as the
/// composite `phi . inner . phi^-1` on (-1, 0) and extended by fixing 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompressedMap {
    inner: PlMap,
}

impl CompressedMap {
    pub fn inner(&self) -> &PlMap {
        &self.inner
    }

    /// Exact evaluation on (-1, 0].
    pub fn eval(&self, x: &BigRational) -> Result<BigRational> {
        if x.is_zero() {
            return Ok(BigRational::zero());
        }
        if !(x > &-BigRational::one() && x < &BigRational::zero()) {
            return Err(Error::Domain(format!("{x} is outside (-1, 0]")));
        }
        Ok(phi(&self.inner.eval(&phi_inv(x)?)))
    }

    /// Forward orbit of a point under repeated evaluation.
    pub fn orbit(&self, start: &BigRational, iterates: usize) -> Result<Vec<BigRational>> {
        let mut out = Vec::with_capacity(iterates);
        let mut x = start.clone();
        for _ in 0..iterates {
            x = self.eval(&x)?;
            out.push(x.clone());
        }
        Ok(out)
    }
}

/// Conjugates a PL map onto the negative ray.
pub fn compress_to_negative_ray(m: PlMap) -> CompressedMap {
    CompressedMap { inner: m }
}
