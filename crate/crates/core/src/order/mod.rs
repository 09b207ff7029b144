//! Left-order oracles and the semigroup criterion for non-left-orderability.

mod lex;
mod magnus;
mod semigroup;

pub use lex::{lex_order_compare, LexOracle};
pub use magnus::{magnus_compare, MagnusOracle};
pub(crate) use semigroup::verify_criterion_parts;
pub use semigroup::{
    semigroup_criterion, semigroup_criterion_with_threads, verify_non_lo_certificate,
    CriterionOutcome, KilledAssignment, NonLoCertificate, SignAssignment,
};

use serde::{Deserialize, Serialize};

use crate::presentation::Presentation;
use crate::words::Word;

/// Outcome of comparing two group elements under a left order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Comparison {
    Less,
    Equal,
    Greater,
    Unknown,
}

impl Comparison {
    pub fn reverse(self) -> Comparison {
        match self {
            Comparison::Less => Comparison::Greater,
            Comparison::Greater => Comparison::Less,
            other => other,
        }
    }

    pub fn is_decided(self) -> bool {
        !matches!(self, Comparison::Unknown)
    }
}

/// A left-invariant comparison procedure on words of a fixed presentation.
///
/// Implementations must be antisymmetric and transitive on every triple
/// where all comparisons are decided, and left-invariant:
/// `compare(w*u, w*v) == compare(u, v)` whenever both sides are decided.
pub trait OrderOracle {
    fn compare(&self, u: &Word, v: &Word) -> Comparison;
    fn presentation(&self) -> &Presentation;

    fn is_positive(&self, w: &Word) -> bool {
        self.compare(w, &Word::identity()) == Comparison::Greater
    }
}
