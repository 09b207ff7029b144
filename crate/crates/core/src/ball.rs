//! Ball enumeration in the Cayley graph, with oracle-backed deduplication.

use serde::{Deserialize, Serialize};

use crate::abelian::{exponent_vector, Abelianization};
use crate::error::Result;
use crate::presentation::Presentation;
use crate::word_problem::{identity_status_with, Budget, IdentityStatus};
use crate::words::Word;

/// One element of an enumerated ball. `distinct_unknown` marks words the
/// oracle could not separate from an earlier representative; they are kept
/// so the ball never silently drops elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallElement {
    pub word: Word,
    pub distinct_unknown: bool,
}

/// Enumerates the ball of the given radius: all group elements with a
/// representative word of length at most `radius`.
///
/// Candidates are generated in shortlex order, so the surviving
/// representative of each element is its shortlex-least word of bounded
/// length. Duplicates are detected with the word problem oracle on
/// quotients; a quotient whose verdict is `Unknown` keeps the candidate and
/// flags it.
pub fn enumerate_ball(p: &Presentation, radius: usize, budget: Budget) -> Result<Vec<BallElement>> {
    budget.validate()?;
    let candidates = free_ball(p.n_gens(), radius);
    if p.is_free() {
        // freely reduced words are pairwise distinct in a free group
        return Ok(candidates
            .into_iter()
            .map(|word| BallElement { word, distinct_unknown: false })
            .collect());
    }

    let ab = Abelianization::new(p);
    let mut kept: Vec<BallElement> = Vec::new();
    'candidates: for cand in candidates {
        let mut flagged = false;
        for rep in &kept {
            let quotient = cand.mul(&rep.word.inverse());
            // cheap separation first: if the quotient escapes the relator
            // lattice the two words are certainly distinct
            if !ab.lattice_contains(&exponent_vector(&quotient, p.n_gens())) {
                continue;
            }
            match identity_status_with(p, &ab, &quotient, budget)? {
                IdentityStatus::Identity(_) => continue 'candidates,
                IdentityStatus::NotIdentity(_) => {}
                IdentityStatus::Unknown(_) => flagged = true,
            }
        }
        kept.push(BallElement { word: cand, distinct_unknown: flagged });
    }
    Ok(kept)
}

/// All freely reduced words of length at most `radius`, in shortlex order.
fn free_ball(n_gens: usize, radius: usize) -> Vec<Word> {
    let mut out = vec![Word::identity()];
    // flat codes ordered (gen asc, positive before negative)
    let letters: Vec<i32> = (0..n_gens as i32)
        .flat_map(|g| [g + 1, -(g + 1)])
        .collect();
    let mut layer: Vec<Vec<i32>> = vec![vec![]];
    for _ in 0..radius {
        let mut next = Vec::new();
        for word in &layer {
            for &c in &letters {
                if word.last() == Some(&-c) {
                    continue;
                }
                let mut child = word.clone();
                child.push(c);
                next.push(child);
            }
        }
        out.extend(next.iter().map(|flat| Word::from_flat(flat)));
        layer = next;
    }
    out
}

/// Convenience: just the words of a ball, dropping the flags.
pub fn ball_words(ball: &[BallElement]) -> Vec<Word> {
    ball.iter().map(|e| e.word.clone()).collect()
}
