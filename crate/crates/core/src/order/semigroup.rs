//! The semigroup criterion search.
//!
//! A group is left-orderable only if every finite subset of non-identity
//! elements admits signs eps_i such that the semigroup generated by the
//! signed elements avoids the identity. The search below runs the
//! contrapositive on one given subset: if for every one of the 2^n sign
//! assignments some bounded semigroup product is provably the identity, the
//! group is certified non-left-orderable, and the certificate carries a
//! replayable identity trace per assignment.
//!
//! Soundness rules: subset elements must come with NotIdentity witnesses,
//! and an `Unknown` word problem verdict never kills an assignment.

use std::collections::HashSet;
use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::abelian::Abelianization;
use crate::error::{Error, Result, VerifyError};
use crate::presentation::Presentation;
use crate::word_problem::{
    identity_status_with, replay_identity_trace, verify_not_identity, Budget, IdentityStatus,
    IdentityTrace, NonIdentityWitness,
};
use crate::words::Word;

/// One choice of signs for the subset, entries in {-1, +1}.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignAssignment(pub Vec<i8>);

impl SignAssignment {
    /// Enumerates all 2^n assignments in lexicographic order with -1 < +1.
    pub fn all(n: usize) -> Vec<SignAssignment> {
        (0..1usize << n)
            .map(|mask| {
                SignAssignment(
                    (0..n)
                        .map(|i| if mask >> (n - 1 - i) & 1 == 1 { 1 } else { -1 })
                        .collect(),
                )
            })
            .collect()
    }
}

/// A killed assignment: a bounded semigroup product of the signed subset
/// elements together with the identity trace that kills it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KilledAssignment {
    pub epsilons: SignAssignment,
    /// Indices into the subset, in product order.
    pub factors: Vec<usize>,
    /// The freely reduced product of the signed factors.
    pub killer_word: Word,
    pub identity_trace: IdentityTrace,
}

/// Certificate of non-left-orderability for one subset: every sign
/// assignment is killed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonLoCertificate {
    pub subset: Vec<(Word, NonIdentityWitness)>,
    pub assignments: Vec<KilledAssignment>,
    pub max_len: usize,
    pub oracle_budget: Budget,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum CriterionOutcome {
    NotLeftOrderable(NonLoCertificate),
    /// Some assignments survived the bounded search. This carries no claim
    /// about orderability: the criterion quantifies over all subsets and
    /// all product lengths, and this run checked one subset with bounds.
    Undetermined {
        survivors: Vec<SignAssignment>,
        killed: Vec<KilledAssignment>,
        max_len: usize,
        oracle_budget: Budget,
        subset: Vec<(Word, NonIdentityWitness)>,
    },
}

pub fn semigroup_criterion(
    p: &Presentation,
    subset: &[Word],
    max_len: usize,
    budget: Budget,
) -> Result<CriterionOutcome> {
    semigroup_criterion_with_threads(p, subset, max_len, budget, 1)
}

/// As [`semigroup_criterion`]; assignments are searched on up to `threads`
/// worker threads. The per-assignment searches are independent and the
/// merged result does not depend on scheduling.
pub fn semigroup_criterion_with_threads(
    p: &Presentation,
    subset: &[Word],
    max_len: usize,
    budget: Budget,
    threads: usize,
) -> Result<CriterionOutcome> {
    budget.validate()?;
    if subset.is_empty() {
        return Err(Error::precondition("subset must be nonempty"));
    }
    if max_len == 0 {
        return Err(Error::precondition("max_len must be positive"));
    }
    let ab = Abelianization::new(p);

    // the criterion only applies to subsets of non-identity elements
    let mut witnesses = Vec::with_capacity(subset.len());
    for w in subset {
        match identity_status_with(p, &ab, w, budget)? {
            IdentityStatus::NotIdentity(witness) => witnesses.push((w.clone(), witness)),
            IdentityStatus::Identity(_) => {
                return Err(Error::precondition(format!(
                    "subset element `{}` is the identity",
                    p.word_to_text(w)
                )))
            }
            IdentityStatus::Unknown(_) => {
                return Err(Error::precondition(format!(
                    "subset element `{}` has unknown identity status",
                    p.word_to_text(w)
                )))
            }
        }
    }

    let assignments = SignAssignment::all(subset.len());
    let mut results: Vec<Option<KilledAssignment>> = Vec::with_capacity(assignments.len());
    let workers = threads.max(1).min(assignments.len());
    if workers <= 1 {
        for eps in &assignments {
            results.push(search_assignment(p, &ab, subset, eps, max_len, budget));
        }
    } else {
        let mut slots: Vec<Option<KilledAssignment>> = vec![None; assignments.len()];
        let chunk = assignments.len().div_ceil(workers);
        std::thread::scope(|scope| {
            for (slot_chunk, eps_chunk) in slots.chunks_mut(chunk).zip(assignments.chunks(chunk)) {
                let ab = &ab;
                scope.spawn(move || {
                    for (slot, eps) in slot_chunk.iter_mut().zip(eps_chunk) {
                        *slot = search_assignment(p, ab, subset, eps, max_len, budget);
                    }
                });
            }
        });
        results = slots;
    }

    let mut killed = Vec::new();
    let mut survivors = Vec::new();
    for (eps, result) in assignments.into_iter().zip(results) {
        match result {
            Some(k) => killed.push(k),
            None => survivors.push(eps),
        }
    }
    if survivors.is_empty() {
        Ok(CriterionOutcome::NotLeftOrderable(NonLoCertificate {
            subset: witnesses,
            assignments: killed,
            max_len,
            oracle_budget: budget,
        }))
    } else {
        Ok(CriterionOutcome::Undetermined {
            survivors,
            killed,
            max_len,
            oracle_budget: budget,
            subset: witnesses,
        })
    }
}

/// Breadth-first product search for one assignment, memoized on freely
/// reduced forms. Returns the first product (in enumeration order) that is
/// provably the identity.
fn search_assignment(
    p: &Presentation,
    ab: &Abelianization,
    subset: &[Word],
    eps: &SignAssignment,
    max_len: usize,
    budget: Budget,
) -> Option<KilledAssignment> {
    let signed: Vec<Word> = subset
        .iter()
        .zip(&eps.0)
        .map(|(w, &e)| if e == 1 { w.clone() } else { w.inverse() })
        .collect();

    let mut seen: HashSet<Word> = HashSet::new();
    let mut queue: VecDeque<(Word, Vec<usize>)> = VecDeque::new();
    queue.push_back((Word::identity(), vec![]));
    while let Some((product, factors)) = queue.pop_front() {
        if factors.len() == max_len {
            continue;
        }
        for (i, g) in signed.iter().enumerate() {
            let next = product.mul(g);
            let mut next_factors = factors.clone();
            next_factors.push(i);
            if !seen.insert(next.clone()) {
                continue;
            }
            // NotIdentity and Unknown both leave the assignment alive;
            // only a certified identity may kill it
            if let Ok(IdentityStatus::Identity(trace)) = identity_status_with(p, ab, &next, budget)
            {
                return Some(KilledAssignment {
                    epsilons: eps.clone(),
                    factors: next_factors,
                    killer_word: next,
                    identity_trace: trace,
                });
            }
            queue.push_back((next, next_factors));
        }
    }
    None
}

/// Replays a non-left-orderability certificate without re-running any
/// search: witnesses are re-checked, the assignment list must cover all
/// 2^n sign vectors, each killer word must be the product of its signed
/// factors, and each identity trace must replay to the empty word.
pub fn verify_non_lo_certificate(
    p: &Presentation,
    cert: &NonLoCertificate,
) -> Result<(), VerifyError> {
    verify_criterion_parts(p, &cert.subset, &cert.assignments, None, cert.max_len)
}

pub(crate) fn verify_criterion_parts(
    p: &Presentation,
    subset: &[(Word, NonIdentityWitness)],
    killed: &[KilledAssignment],
    survivors: Option<&[SignAssignment]>,
    max_len: usize,
) -> Result<(), VerifyError> {
    if subset.is_empty() {
        return Err(VerifyError::new("empty subset"));
    }
    for (w, witness) in subset {
        verify_not_identity(p, w, witness)?;
    }

    let mut covered: Vec<&SignAssignment> = killed.iter().map(|k| &k.epsilons).collect();
    if let Some(surv) = survivors {
        covered.extend(surv.iter());
    }
    let mut sorted: Vec<Vec<i8>> = covered.iter().map(|s| s.0.clone()).collect();
    sorted.sort();
    let expected: Vec<Vec<i8>> =
        SignAssignment::all(subset.len()).into_iter().map(|s| s.0).collect();
    if sorted != expected {
        return Err(VerifyError::new("assignments do not cover all sign vectors exactly once"));
    }

    for k in killed {
        if k.factors.is_empty() || k.factors.len() > max_len {
            return Err(VerifyError::new("killer factor sequence has bad length"));
        }
        let mut product = Word::identity();
        for &f in &k.factors {
            let (w, _) = subset
                .get(f)
                .ok_or_else(|| VerifyError::new(format!("factor index {f} out of range")))?;
            let e = k.epsilons.0.get(f).copied().unwrap_or(0);
            let signed = if e == 1 { w.clone() } else { w.inverse() };
            product = product.mul(&signed);
        }
        if product != k.killer_word {
            return Err(VerifyError::new("killer word does not match its factors"));
        }
        replay_identity_trace(p, &k.killer_word, &k.identity_trace)?;
    }
    Ok(())
}
