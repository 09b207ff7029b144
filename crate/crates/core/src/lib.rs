//! Left-orderability toolkit for finitely presented groups.
//!
//! The crate decides and certifies what can be decided at desk scale:
//!
//! - a three-valued word problem oracle with replayable certificates
//!   ([`word_problem`]), abelianization through Smith normal form
//!   ([`abelian`], [`matrix`]), and Cayley ball enumeration ([`ball`]);
//! - left-order oracles (lexicographic on free abelian groups, Magnus on
//!   free groups) and the bounded semigroup-criterion search whose
//!   all-assignments-killed outcome is a sound certificate of
//!   non-left-orderability ([`order`]);
//! - the dynamic realization of a left order as an action on the line by
//!   monotone piecewise-linear maps over exact rationals, compressed onto
//!   the negative ray so every positive element has an orbit climbing to
//!   the fixed point 0 ([`realize`]);
//! - parametrized germs over S = {0} u {1/n}: the diagonal sign-selection
//!   procedure, a comparison oracle on germ words, and the stability
//!   obstruction harness ([`germ`]);
//! - versioned JSON artifacts for all of the above with search-free replay
//!   verification ([`artifact`]), plus a corpus of named groups
//!   ([`corpus`]).
//!
//! Everything is deterministic: no randomness, no hash-order dependence in
//! any output, and all arithmetic on exact integers and rationals.

pub mod abelian;
pub mod artifact;
pub mod ball;
pub mod corpus;
pub mod error;
pub mod germ;
pub mod matrix;
pub mod order;
pub mod presentation;
pub mod realize;
pub mod word_problem;
pub mod words;

pub use error::{Error, Result, VerifyError};
