//! Nontriviality witnesses: grid search for points a germ moves.
//!
//! The grid shrinks toward (0, 0) in shells indexed by a depth parameter:
//! shell m samples x in {0} u {±k/(8 * 2^m) : k = 1..8} and s in
//! {0} u {1/n : n <= 2^m}. A germ is witnessed nontrivial by one moved
//! point per shell; since shell m confines x to [-2^-m, 2^-m] and offers
//! parameters down to 2^-m, the chosen points converge to the origin.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::germ::germ::{s_value, ParamGerm};

/// x grid of shell m, in scan order: 0 first, then positive values from the
/// shell boundary inward, then negative values likewise.
pub fn shell_x_values(m: u32) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero()];
    let denom = BigInt::from(8u64) * BigInt::from(2u64).pow(m);
    for k in (1..=8i64).rev() {
        out.push(BigRational::new(BigInt::from(k), denom.clone()));
    }
    for k in (1..=8i64).rev() {
        out.push(BigRational::new(BigInt::from(-k), denom.clone()));
    }
    out
}

/// s grid of shell m, in scan order: 0 first, then 1/n ascending (largest n
/// first), so a moved point is found at the smallest moving parameter.
pub fn shell_s_values(m: u32) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero()];
    for n in (1..=(1u64 << m)).rev() {
        out.push(s_value(n));
    }
    out
}

/// Result of the witness search: one moved point per shell, or `NoWitness`
/// when some shell has none.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessOutcome {
    Witness(Vec<(BigRational, BigRational)>),
    NoWitness,
}

/// Scans shells m = 1..depth for points the germ moves. The scan order is
/// fixed, so the witness sequence is deterministic. Grid points outside the
/// germ's declared neighborhood, or where evaluation fails, are skipped.
pub fn find_nontriviality_witness(f: &ParamGerm, depth: u32) -> Result<WitnessOutcome> {
    if depth == 0 {
        return Err(Error::precondition("depth must be at least 1"));
    }
    let mut points = Vec::with_capacity(depth as usize);
    for m in 1..=depth {
        let mut found = None;
        'shell: for x in shell_x_values(m) {
            if x.abs() >= f.rho {
                continue;
            }
            for s in shell_s_values(m) {
                match f.expr.eval(&x, &s) {
                    Ok(y) if y != x => {
                        found = Some((x.clone(), s));
                        break 'shell;
                    }
                    _ => {}
                }
            }
        }
        match found {
            Some(p) => points.push(p),
            None => return Ok(WitnessOutcome::NoWitness),
        }
    }
    Ok(WitnessOutcome::Witness(points))
}
