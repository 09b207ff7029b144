//! Bundled example groups.
//!
//! The same texts ship as `.grp` files in the repository's `corpus/`
//! directory; the round-trip between the two is covered by tests.

use crate::error::Result;
use crate::presentation::{parse_presentation, Presentation};

#[derive(Debug, Clone, Copy)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub text: &'static str,
    pub notes: &'static str,
}

pub const CORPUS: &[CorpusEntry] = &[
    CorpusEntry {
        name: "zmod2",
        text: "gens: a\nrels: a^2\namenable: true\n",
        notes: "cyclic of order 2; torsion obstructs any left order",
    },
    CorpusEntry {
        name: "zmod3",
        text: "gens: a\nrels: a^3\namenable: true\n",
        notes: "cyclic of order 3",
    },
    CorpusEntry {
        name: "zmod4",
        text: "gens: a\nrels: a^4\namenable: true\n",
        notes: "cyclic of order 4",
    },
    CorpusEntry {
        name: "zmod5",
        text: "gens: a\nrels: a^5\namenable: true\n",
        notes: "cyclic of order 5",
    },
    CorpusEntry {
        name: "zmod6",
        text: "gens: a\nrels: a^6\namenable: true\n",
        notes: "cyclic of order 6",
    },
    CorpusEntry {
        name: "zmod7",
        text: "gens: a\nrels: a^7\namenable: true\n",
        notes: "cyclic of order 7",
    },
    CorpusEntry {
        name: "z",
        text: "gens: a\namenable: true\n",
        notes: "the integers; the translation action is the model realization",
    },
    CorpusEntry {
        name: "z2",
        text: "gens: a b\nrels: a b a^-1 b^-1\namenable: true\n",
        notes: "free abelian of rank 2; lexicographic orders realize on the line",
    },
    CorpusEntry {
        name: "z3",
        text: "gens: a b c\nrels: a b a^-1 b^-1, a c a^-1 c^-1, b c b^-1 c^-1\namenable: true\n",
        notes: "free abelian of rank 3",
    },
    CorpusEntry {
        name: "f2",
        text: "gens: a b\namenable: false\n",
        notes: "free of rank 2; ordered by the Magnus expansion",
    },
    CorpusEntry {
        name: "klein",
        text: "gens: a b\nrels: a b a b^-1\namenable: true\n",
        notes: "Klein bottle group; left-orderable with first Betti number 1",
    },
    CorpusEntry {
        name: "heisenberg",
        text: "gens: a b c\nrels: a b a^-1 b^-1 c^-1, a c a^-1 c^-1, b c b^-1 c^-1\namenable: true\n",
        notes: "integer Heisenberg group; nilpotent, left-orderable",
    },
    CorpusEntry {
        name: "q8",
        text: "gens: a b\nrels: a^4, a^2 b^-2, b^-1 a b a\namenable: true\n",
        notes: "quaternion group of order 8; torsion obstructs any left order",
    },
    CorpusEntry {
        name: "thurston",
        text: "gens: a b c\nrels: a^2 c^-1 b^-1 a^-1, b^3 c^-1 b^-1 a^-1, c^7 c^-1 b^-1 a^-1\namenable: false\n",
        notes: "fundamental group of the (2,3,7) Brieskorn homology sphere; perfect, so b1 = 0",
    },
    CorpusEntry {
        name: "tsuboi",
        text: "gens: a b\nrels: a^2 b a^-1 b^-1 a^-1 b a b^-1 a^-1\n",
        notes: "a commutes with its commutator with b: the single relator is [a,[a,b]]",
    },
];

/// Looks up and parses a corpus entry.
pub fn corpus_presentation(name: &str) -> Option<Result<Presentation>> {
    CORPUS.iter().find(|e| e.name == name).map(|e| parse_presentation(e.text))
}
