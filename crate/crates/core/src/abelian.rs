//! Abelianization: the relator exponent matrix, first Betti number, and
//! membership tests in the relator lattice.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::matrix::{smith_normal_form, IntMatrix, Snf};
use crate::presentation::Presentation;
use crate::words::Word;

/// Exponent-sum matrix of a presentation: rows are generators, column `j`
/// holds the per-generator exponent sums of relator `j`.
pub fn abelianization_matrix(p: &Presentation) -> IntMatrix {
    let mut m = IntMatrix::zero(p.n_gens(), p.relators().len());
    for (j, r) in p.relators().iter().enumerate() {
        for (i, s) in r.exponent_sums(p.n_gens()).into_iter().enumerate() {
            m.set(i, j, BigInt::from(s));
        }
    }
    m
}

/// First Betti number: generator count minus the rank of the
/// abelianization matrix.
pub fn first_betti(p: &Presentation) -> usize {
    p.n_gens() - smith_normal_form(&abelianization_matrix(p)).rank()
}

/// Abelianized image of a word in Z^gens.
pub fn exponent_vector(w: &Word, n_gens: usize) -> Vec<BigInt> {
    w.exponent_sums(n_gens).into_iter().map(BigInt::from).collect()
}

/// The abelianized presentation with its Smith decomposition precomputed,
/// so lattice-membership queries are cheap.
#[derive(Debug, Clone)]
pub struct Abelianization {
    pub matrix: IntMatrix,
    pub snf: Snf,
    n_gens: usize,
}

impl Abelianization {
    pub fn new(p: &Presentation) -> Self {
        let matrix = abelianization_matrix(p);
        let snf = smith_normal_form(&matrix);
        Abelianization { matrix, snf, n_gens: p.n_gens() }
    }

    /// Whether `v` lies in the lattice spanned by the relator columns.
    /// Solves `M x = v` over the integers through the Smith decomposition:
    /// with `left_inv * M * right_inv = D`, the system is solvable iff each
    /// coordinate of `left_inv * v` is divisible by the matching diagonal
    /// entry (and zero wherever the diagonal is).
    pub fn lattice_contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.n_gens);
        let u = self.snf.left_inv.mul_vec(v);
        for (i, ui) in u.iter().enumerate() {
            match self.snf.diag.get(i) {
                Some(d) if !d.is_zero() => {
                    if !(ui % d).is_zero() {
                        return false;
                    }
                }
                _ => {
                    if !ui.is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Whether the word has nonzero image in the abelianization.
    pub fn nonzero_image(&self, w: &Word) -> bool {
        !self.lattice_contains(&exponent_vector(w, self.n_gens))
    }

    /// The abelianization is finite iff the rank equals the generator count.
    pub fn is_finite(&self) -> bool {
        self.snf.rank() == self.n_gens
    }
}
