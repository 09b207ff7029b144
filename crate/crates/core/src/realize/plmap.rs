//! Monotone piecewise-linear self-maps of the rationals.

use num_rational::BigRational;

use crate::error::{Error, Result};

/// An orientation-preserving piecewise-linear homeomorphism of the line,
/// given by finitely many breakpoints with strictly increasing images,
/// affine interpolation in between, and slope-1 translation beyond both
/// extremes. The empty breakpoint list is the identity map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlMap {
    points: Vec<(BigRational, BigRational)>,
}

impl PlMap {
    pub fn identity() -> Self {
        PlMap { points: vec![] }
    }

    /// Builds a map from (x, f(x)) samples. The x values must be strictly
    /// increasing after sorting, and the images must be strictly increasing
    /// with them; otherwise the data does not describe a monotone map.
    pub fn new(mut points: Vec<(BigRational, BigRational)>) -> Result<Self> {
        points.sort_by(|a, b| a.0.cmp(&b.0));
        for pair in points.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(Error::Invariant(format!(
                    "duplicate breakpoint at {}",
                    pair[0].0
                )));
            }
            if pair[0].1 >= pair[1].1 {
                return Err(Error::Invariant(format!(
                    "values not strictly increasing at breakpoint {}",
                    pair[1].0
                )));
            }
        }
        Ok(PlMap { points })
    }

    pub fn breakpoints(&self) -> impl Iterator<Item = &BigRational> {
        self.points.iter().map(|(x, _)| x)
    }

    pub fn values(&self) -> impl Iterator<Item = &BigRational> {
        self.points.iter().map(|(_, y)| y)
    }

    pub fn points(&self) -> &[(BigRational, BigRational)] {
        &self.points
    }

    pub fn is_identity_data(&self) -> bool {
        self.points.iter().all(|(x, y)| x == y)
    }

    /// Exact evaluation.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        if self.points.is_empty() {
            return x.clone();
        }
        let first = &self.points[0];
        if *x <= first.0 {
            return x - &first.0 + &first.1;
        }
        let last = self.points.last().unwrap();
        if *x >= last.0 {
            return x - &last.0 + &last.1;
        }
        let hi = self.points.partition_point(|(bx, _)| bx < x);
        let (x0, y0) = &self.points[hi - 1];
        let (x1, y1) = &self.points[hi];
        if x == x1 {
            return y1.clone();
        }
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }

    /// The inverse homeomorphism: swap breakpoints and values.
    pub fn inverse(&self) -> PlMap {
        PlMap { points: self.points.iter().map(|(x, y)| (y.clone(), x.clone())).collect() }
    }

    pub fn monotone_check(&self) -> Result<()> {
        for pair in self.points.windows(2) {
            if pair[0].1 >= pair[1].1 {
                return Err(Error::Invariant(format!(
                    "monotonicity violated between breakpoints {} and {}",
                    pair[0].0, pair[1].0
                )));
            }
        }
        Ok(())
    }
}
