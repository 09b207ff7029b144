//! A bounded, certificate-producing word problem oracle.
//!
//! The word problem is undecidable in general, so the oracle is
//! three-valued. `Identity` comes with a rewrite trace that replays to the
//! empty word using only relator insertions and free reduction; `NotIdentity`
//! comes with a witness that can be checked independently (a nonzero image
//! in the abelianization, a registered matrix representation with
//! non-identity image, or free reducedness in a free group). When neither
//! side can be settled within the budget the verdict is `Unknown`, and every
//! consumer in this crate treats `Unknown` as "no information" rather than
//! as evidence either way.

use std::collections::HashMap;
use std::collections::VecDeque;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::abelian::{exponent_vector, Abelianization};
use crate::error::{Error, Result, VerifyError};
use crate::presentation::{Presentation, RationalMatrix2};
use crate::words::{reduce_flat, Word};

/// Caps for the identity rewrite search: a bound on intermediate word
/// length and on the number of search states created.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_len: usize,
    pub max_nodes: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_len: 24, max_nodes: 10_000 }
    }
}

impl Budget {
    pub fn new(max_len: usize, max_nodes: usize) -> Self {
        Budget { max_len, max_nodes }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_len == 0 || self.max_nodes == 0 {
            return Err(Error::precondition("budget must be positive"));
        }
        Ok(())
    }
}

/// One rewrite step: insert relator `relator` (inverted if asked) at flat
/// position `pos` of the current word, then freely reduce.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RewriteStep {
    pub pos: usize,
    pub relator: usize,
    pub inverted: bool,
}

/// Replayable proof that a word represents the identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityTrace {
    pub word: Word,
    pub steps: Vec<RewriteStep>,
}

/// Independently checkable evidence that a word is not the identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum NonIdentityWitness {
    /// The presentation has no relators and the word is nonempty.
    FreelyReduced,
    /// The abelianized image lies outside the relator lattice.
    Abelianized { vector: Vec<BigInt> },
    /// A registered matrix representation sends the word to a
    /// non-identity matrix.
    MatrixImage { image: Box<RationalMatrix2> },
}

/// How much of the budget an inconclusive search consumed. `exhausted`
/// distinguishes hitting the node cap from exhausting the whole reachable
/// space under the length cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BudgetReport {
    pub nodes: usize,
    pub max_len: usize,
    pub exhausted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum IdentityStatus {
    Identity(IdentityTrace),
    NotIdentity(NonIdentityWitness),
    Unknown(BudgetReport),
}

impl IdentityStatus {
    pub fn is_identity(&self) -> bool {
        matches!(self, IdentityStatus::Identity(_))
    }

    pub fn is_not_identity(&self) -> bool {
        matches!(self, IdentityStatus::NotIdentity(_))
    }
}

/// Decides whether `w` is the identity of the presented group, within the
/// budget. `Identity` is only returned with a replayable trace and
/// `NotIdentity` only with a verifiable witness.
pub fn identity_status(p: &Presentation, w: &Word, budget: Budget) -> Result<IdentityStatus> {
    budget.validate()?;
    w.check_gens(p.n_gens())?;
    let ab = Abelianization::new(p);
    identity_status_with(p, &ab, w, budget)
}

/// As [`identity_status`], reusing a precomputed abelianization.
pub fn identity_status_with(
    p: &Presentation,
    ab: &Abelianization,
    w: &Word,
    budget: Budget,
) -> Result<IdentityStatus> {
    budget.validate()?;
    if w.is_identity() {
        return Ok(IdentityStatus::Identity(IdentityTrace { word: w.clone(), steps: vec![] }));
    }
    if p.is_free() {
        return Ok(IdentityStatus::NotIdentity(NonIdentityWitness::FreelyReduced));
    }
    if ab.nonzero_image(w) {
        return Ok(IdentityStatus::NotIdentity(NonIdentityWitness::Abelianized {
            vector: exponent_vector(w, p.n_gens()),
        }));
    }
    if !p.reps().is_empty() {
        if let Some(image) = p.rep_image(w) {
            if !image.is_identity() {
                return Ok(IdentityStatus::NotIdentity(NonIdentityWitness::MatrixImage {
                    image: Box::new(image),
                }));
            }
        }
    }
    Ok(search_identity(p, w, budget))
}

/// Breadth-first search over relator insertions. States are freely reduced
/// words in flat form; the goal is the empty word.
fn search_identity(p: &Presentation, w: &Word, budget: Budget) -> IdentityStatus {
    let rels: Vec<Vec<i32>> = p.relators().iter().map(Word::flat).collect();
    let rel_invs: Vec<Vec<i32>> = p.relators().iter().map(|r| r.inverse().flat()).collect();

    let start = w.flat();
    if start.len() > budget.max_len {
        return IdentityStatus::Unknown(BudgetReport {
            nodes: 0,
            max_len: budget.max_len,
            exhausted: false,
        });
    }

    // arena of visited states with back-pointers for trace reconstruction;
    // max_nodes caps the arena, which bounds both memory and time
    let mut states: Vec<Vec<i32>> = vec![start.clone()];
    let mut parents: Vec<Option<(usize, RewriteStep)>> = vec![None];
    let mut seen: HashMap<Vec<i32>, usize> = HashMap::new();
    seen.insert(start, 0);

    let mut queue: VecDeque<usize> = VecDeque::new();
    queue.push_back(0);

    while let Some(idx) = queue.pop_front() {
        let current = states[idx].clone();
        for (ri, (rel, rel_inv)) in rels.iter().zip(&rel_invs).enumerate() {
            for inverted in [false, true] {
                let ins = if inverted { rel_inv } else { rel };
                for pos in 0..=current.len() {
                    let mut child: Vec<i32> = Vec::with_capacity(current.len() + ins.len());
                    child.extend_from_slice(&current[..pos]);
                    child.extend_from_slice(ins);
                    child.extend_from_slice(&current[pos..]);
                    reduce_flat(&mut child);
                    if child.len() > budget.max_len || seen.contains_key(&child) {
                        continue;
                    }
                    if states.len() >= budget.max_nodes {
                        return IdentityStatus::Unknown(BudgetReport {
                            nodes: states.len(),
                            max_len: budget.max_len,
                            exhausted: true,
                        });
                    }
                    let step = RewriteStep { pos, relator: ri, inverted };
                    let child_idx = states.len();
                    states.push(child.clone());
                    parents.push(Some((idx, step)));
                    seen.insert(child.clone(), child_idx);
                    if child.is_empty() {
                        let mut steps = Vec::new();
                        let mut at = child_idx;
                        while let Some((parent, step)) = parents[at] {
                            steps.push(step);
                            at = parent;
                        }
                        steps.reverse();
                        return IdentityStatus::Identity(IdentityTrace { word: w.clone(), steps });
                    }
                    queue.push_back(child_idx);
                }
            }
        }
    }

    IdentityStatus::Unknown(BudgetReport {
        nodes: states.len(),
        max_len: budget.max_len,
        exhausted: false,
    })
}

/// Replays an identity trace: applies each insertion to the freely reduced
/// start word and checks the result is empty.
pub fn replay_identity_trace(
    p: &Presentation,
    w: &Word,
    trace: &IdentityTrace,
) -> Result<(), VerifyError> {
    if trace.word != *w {
        return Err(VerifyError::new("trace starts from a different word"));
    }
    let mut current = w.flat();
    for (i, step) in trace.steps.iter().enumerate() {
        let rel = p
            .relators()
            .get(step.relator)
            .ok_or_else(|| VerifyError::new(format!("step {i}: no relator {}", step.relator)))?;
        if step.pos > current.len() {
            return Err(VerifyError::new(format!("step {i}: position out of range")));
        }
        let ins = if step.inverted { rel.inverse().flat() } else { rel.flat() };
        let mut next: Vec<i32> = Vec::with_capacity(current.len() + ins.len());
        next.extend_from_slice(&current[..step.pos]);
        next.extend_from_slice(&ins);
        next.extend_from_slice(&current[step.pos..]);
        reduce_flat(&mut next);
        current = next;
    }
    if current.is_empty() {
        Ok(())
    } else {
        Err(VerifyError::new("trace does not reach the empty word"))
    }
}

/// Re-checks a non-identity witness against the presentation.
pub fn verify_not_identity(
    p: &Presentation,
    w: &Word,
    witness: &NonIdentityWitness,
) -> Result<(), VerifyError> {
    match witness {
        NonIdentityWitness::FreelyReduced => {
            if !p.is_free() {
                return Err(VerifyError::new("free-group witness but presentation has relators"));
            }
            if w.is_identity() {
                return Err(VerifyError::new("free-group witness on the empty word"));
            }
            Ok(())
        }
        NonIdentityWitness::Abelianized { vector } => {
            let v = exponent_vector(w, p.n_gens());
            if v != *vector {
                return Err(VerifyError::new("stored abelianized vector does not match the word"));
            }
            let ab = Abelianization::new(p);
            if ab.lattice_contains(&v) {
                return Err(VerifyError::new("abelianized image lies in the relator lattice"));
            }
            Ok(())
        }
        NonIdentityWitness::MatrixImage { image } => {
            let computed = p
                .rep_image(w)
                .ok_or_else(|| VerifyError::new("word uses a generator without a registered rep"))?;
            if computed != **image {
                return Err(VerifyError::new("stored matrix image does not match the word"));
            }
            if image.is_identity() {
                return Err(VerifyError::new("matrix image is the identity"));
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{parse_presentation, parse_word};

    fn status(text: &str, word: &str) -> (Presentation, Word, IdentityStatus) {
        let p = parse_presentation(text).unwrap();
        let w = parse_word(&p, word).unwrap();
        let s = identity_status(&p, &w, Budget::default()).unwrap();
        (p, w, s)
    }

    #[test]
    fn free_group_commutator_is_not_identity() {
        let (p, w, s) = status("gens: a b\n", "a b a^-1 b^-1");
        match &s {
            IdentityStatus::NotIdentity(witness) => {
                verify_not_identity(&p, &w, witness).unwrap();
                assert_eq!(*witness, NonIdentityWitness::FreelyReduced);
            }
            other => panic!("expected NotIdentity, got {other:?}"),
        }
    }

    #[test]
    fn torsion_relator_is_identity() {
        let (p, w, s) = status("gens: a\nrels: a^2\n", "a^2");
        match &s {
            IdentityStatus::Identity(trace) => {
                assert_eq!(trace.steps.len(), 1);
                replay_identity_trace(&p, &w, trace).unwrap();
            }
            other => panic!("expected Identity, got {other:?}"),
        }
    }

    #[test]
    fn thurston_relator_instance_is_identity() {
        let text = "gens: a b c\nrels: a^2 c^-1 b^-1 a^-1, b^3 c^-1 b^-1 a^-1, c^7 c^-1 b^-1 a^-1\n";
        let (p, w, s) = status(text, "a^2 c^-1 b^-1 a^-1");
        match &s {
            IdentityStatus::Identity(trace) => replay_identity_trace(&p, &w, trace).unwrap(),
            other => panic!("expected Identity, got {other:?}"),
        }
    }

    #[test]
    fn abelianized_witness() {
        let (p, w, s) = status("gens: a\nrels: a^2\n", "a");
        match &s {
            IdentityStatus::NotIdentity(witness) => {
                assert!(matches!(witness, NonIdentityWitness::Abelianized { .. }));
                verify_not_identity(&p, &w, witness).unwrap();
            }
            other => panic!("expected NotIdentity, got {other:?}"),
        }
    }

    #[test]
    fn matrix_witness_for_trefoil_commutator() {
        // a^2 = b^3 with its standard exact 2x2 representation; the
        // commutator [a,b] has zero exponent sums, so only the matrix
        // witness can certify it is not the identity
        let text = "gens: a b\nrels: a^2 b^-3\nrep: a = [[0,-1],[1,0]]\nrep: b = [[0,-1],[1,1]]\n";
        let p = parse_presentation(text).unwrap();
        let w = parse_word(&p, "a b a^-1 b^-1").unwrap();
        let s = identity_status(&p, &w, Budget::new(16, 50)).unwrap();
        match &s {
            IdentityStatus::NotIdentity(witness) => {
                assert!(matches!(witness, NonIdentityWitness::MatrixImage { .. }));
                verify_not_identity(&p, &w, witness).unwrap();
            }
            other => panic!("expected matrix witness, got {other:?}"),
        }
    }

    #[test]
    fn unknown_when_budget_too_small() {
        // this word needs two commutator insertions; a two-node budget
        // cannot reach the empty word
        let p = parse_presentation("gens: a b\nrels: a b a^-1 b^-1\n").unwrap();
        let w = parse_word(&p, "a^2 b a^-2 b^-1").unwrap();
        let s = identity_status(&p, &w, Budget::new(16, 2)).unwrap();
        assert!(matches!(s, IdentityStatus::Unknown(_)));
        // with room to search, the same word is certified
        let s = identity_status(&p, &w, Budget::default()).unwrap();
        assert!(s.is_identity());
    }

    #[test]
    fn commutator_in_z2_is_identity() {
        let (p, w, s) = status("gens: a b\nrels: a b a^-1 b^-1\n", "a b a^-1 b^-1");
        match &s {
            IdentityStatus::Identity(trace) => replay_identity_trace(&p, &w, trace).unwrap(),
            other => panic!("expected Identity, got {other:?}"),
        }
    }

    #[test]
    fn zero_budget_rejected() {
        let p = parse_presentation("gens: a\nrels: a^2\n").unwrap();
        let w = parse_word(&p, "a").unwrap();
        assert!(identity_status(&p, &w, Budget::new(0, 10)).is_err());
    }

    #[test]
    fn verdicts_consistent_across_budgets() {
        // the oracle must never produce Identity and NotIdentity for the
        // same word under different budgets
        let text = "gens: a b\nrels: a^4, a^2 b^-2, b^-1 a b a\n";
        let p = parse_presentation(text).unwrap();
        let words = ["a^4", "a^2", "a b", "b^2 a^-2", "a b a b"];
        for wtext in words {
            let w = parse_word(&p, wtext).unwrap();
            let mut saw_identity = false;
            let mut saw_not_identity = false;
            for nodes in [1, 10, 100, 2_000] {
                match identity_status(&p, &w, Budget::new(16, nodes)).unwrap() {
                    IdentityStatus::Identity(trace) => {
                        replay_identity_trace(&p, &w, &trace).unwrap();
                        saw_identity = true;
                    }
                    IdentityStatus::NotIdentity(witness) => {
                        verify_not_identity(&p, &w, &witness).unwrap();
                        saw_not_identity = true;
                    }
                    IdentityStatus::Unknown(_) => {}
                }
            }
            assert!(!(saw_identity && saw_not_identity), "conflicting verdicts for {wtext}");
        }
    }
}
