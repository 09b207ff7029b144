//! Integer matrices and Smith normal form.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// A dense integer matrix with exact entries, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let entries = rows.into_iter().flatten().map(BigInt::from).collect();
        IntMatrix { rows: r, cols: c, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j { self.get(i, j).is_one() } else { self.get(i, j).is_zero() }
                })
            })
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = IntMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let add = a * rhs.get(k, j);
                    let cur = out.get(i, j) + add;
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// row_i += c * row_j
    fn row_axpy(&mut self, i: usize, j: usize, c: &BigInt) {
        for k in 0..self.cols {
            let add = c * self.get(j, k);
            let cur = self.get(i, k) + add;
            self.set(i, k, cur);
        }
    }

    /// col_j += c * col_i
    fn col_axpy(&mut self, j: usize, i: usize, c: &BigInt) {
        for k in 0..self.rows {
            let add = c * self.get(k, i);
            let cur = self.get(k, j) + add;
            self.set(k, j, cur);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for k in 0..self.cols {
            let v = -self.get(i, k);
            self.set(i, k, v);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for k in 0..self.rows {
            let v = -self.get(k, j);
            self.set(k, j, v);
        }
    }
}

/// Smith normal form decomposition of a matrix `a`.
///
/// `left * diag * right == a` exactly, with `left` and `right` unimodular;
/// `left_inv * a * right_inv == diag`. The diagonal is nonnegative and
/// satisfies the divisibility chain d1 | d2 | ... .
#[derive(Debug, Clone)]
pub struct Snf {
    pub diag: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
    pub left_inv: IntMatrix,
    pub right_inv: IntMatrix,
}

impl Snf {
    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }

    /// Rebuilds `left * diag * right`; used when replaying certificates.
    pub fn reconstruct(&self, rows: usize, cols: usize) -> IntMatrix {
        let mut d = IntMatrix::zero(rows, cols);
        for (i, v) in self.diag.iter().enumerate() {
            d.set(i, i, v.clone());
        }
        self.left.mul(&d).mul(&self.right)
    }
}

/// Computes the Smith normal form by elementary row and column operations,
/// accumulating the transforms and their inverses simultaneously.
pub fn smith_normal_form(a: &IntMatrix) -> Snf {
    let (m, n) = (a.rows(), a.cols());
    let mut work = a.clone();
    // invariant: left_inv * a * right_inv == work, left * left_inv == I, right * right_inv == I
    let mut left = IntMatrix::identity(m);
    let mut left_inv = IntMatrix::identity(m);
    let mut right = IntMatrix::identity(n);
    let mut right_inv = IntMatrix::identity(n);

    let swap_rows = |w: &mut IntMatrix, l: &mut IntMatrix, li: &mut IntMatrix, i: usize, j: usize| {
        w.swap_rows(i, j);
        li.swap_rows(i, j);
        l.swap_cols(i, j);
    };
    let swap_cols = |w: &mut IntMatrix, r: &mut IntMatrix, ri: &mut IntMatrix, i: usize, j: usize| {
        w.swap_cols(i, j);
        ri.swap_cols(i, j);
        r.swap_rows(i, j);
    };

    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = find_pivot(&work, t) else { break };
        swap_rows(&mut work, &mut left, &mut left_inv, t, pi);
        swap_cols(&mut work, &mut right, &mut right_inv, t, pj);

        loop {
            // clear the pivot column below the pivot
            let mut dirty = false;
            for i in t + 1..m {
                if !work.get(i, t).is_zero() {
                    let q = work.get(i, t) / work.get(t, t);
                    if !q.is_zero() {
                        let c = -q;
                        work.row_axpy(i, t, &c);
                        left_inv.row_axpy(i, t, &c);
                        // left <- left * E^{-1}: col t += q * col i
                        let q_back = -&c;
                        left.col_axpy(t, i, &q_back);
                    }
                    if !work.get(i, t).is_zero() {
                        dirty = true;
                    }
                }
            }
            // clear the pivot row right of the pivot
            for j in t + 1..n {
                if !work.get(t, j).is_zero() {
                    let q = work.get(t, j) / work.get(t, t);
                    if !q.is_zero() {
                        let c = -q;
                        work.col_axpy(j, t, &c);
                        right_inv.col_axpy(j, t, &c);
                        // right <- F^{-1} * right: row t -= c * row j
                        right.row_axpy(t, j, &(-&c));
                    }
                    if !work.get(t, j).is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                // a smaller remainder appeared; re-center the pivot
                let (pi, pj) = find_pivot(&work, t).expect("nonzero remainder");
                swap_rows(&mut work, &mut left, &mut left_inv, t, pi);
                swap_cols(&mut work, &mut right, &mut right_inv, t, pj);
                continue;
            }
            // pivot divides its row and column; enforce divisibility of the
            // remaining block by folding a non-divisible entry into row t
            if let Some((i, _)) = find_nondivisible(&work, t) {
                let one = BigInt::one();
                work.row_axpy(t, i, &one);
                left_inv.row_axpy(t, i, &one);
                let neg = -&one;
                left.col_axpy(i, t, &neg);
                continue;
            }
            break;
        }
        t += 1;
    }

    // normalize diagonal signs
    for i in 0..m.min(n) {
        if work.get(i, i).is_negative() {
            work.negate_row(i);
            left_inv.negate_row(i);
            left.negate_col(i);
        }
    }

    let diag = (0..m.min(n)).map(|i| work.get(i, i).clone()).collect();
    Snf { diag, left, right, left_inv, right_inv }
}

/// Smallest-magnitude nonzero entry of the trailing block starting at `t`.
fn find_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let v = a.get(i, j);
            if v.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a.get(bi, bj).abs() <= v.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

fn find_nondivisible(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let pivot = a.get(t, t);
    for i in t + 1..a.rows() {
        for j in t + 1..a.cols() {
            if !(a.get(i, j) % pivot).is_zero() {
                return Some((i, j));
            }
        }
    }
    None
}
