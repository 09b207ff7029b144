//! The order-preserving embedding of an enumerated group into the
//! rationals.
//!
//! The first element (always the identity) is placed at 0. Each later
//! element goes to previous-maximum + 1 if it exceeds everything placed,
//! previous-minimum - 1 if it is below everything placed, and otherwise to
//! the midpoint of its two order-neighbors among the placed elements. The
//! resulting value assignment is order-compatible by construction.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::order::{Comparison, OrderOracle};
use crate::words::Word;

#[derive(Debug, Clone)]
pub struct Embedding {
    /// (element, value) pairs in placement order.
    entries: Vec<(Word, BigRational)>,
    /// Entry indices sorted by value.
    by_value: Vec<usize>,
    /// Fast path for exact word matches.
    index: HashMap<Word, usize>,
}

/// Where a placement landed relative to the existing entries.
enum Slot {
    Equal(usize),
    Insert { below: Option<usize>, above: Option<usize> },
}

impl Embedding {
    /// Builds the embedding for an enumeration, which must start with the
    /// identity and contain no duplicates (up to the oracle's equality).
    pub fn build(enumeration: &[Word], oracle: &dyn OrderOracle) -> Result<Embedding> {
        let mut enumeration = enumeration.iter();
        let Some(first) = enumeration.next() else {
            return Err(Error::precondition("enumeration is empty"));
        };
        if !first.is_identity() {
            return Err(Error::precondition("enumeration must begin with the identity"));
        }
        let mut emb = Embedding { entries: vec![], by_value: vec![], index: HashMap::new() };
        emb.insert(first.clone(), BigRational::zero());
        for word in enumeration {
            match emb.find_slot(word, oracle)? {
                Slot::Equal(i) => {
                    return Err(Error::precondition(format!(
                        "duplicate elements in enumeration: `{}` equals `{}`",
                        oracle.presentation().word_to_text(word),
                        oracle.presentation().word_to_text(&emb.entries[i].0),
                    )))
                }
                slot => {
                    let value = emb.slot_value(&slot);
                    emb.insert(word.clone(), value);
                }
            }
        }
        Ok(emb)
    }

    /// Returns the value of `word`, placing it by the inductive rule if no
    /// existing entry equals it.
    pub fn place_or_get(&mut self, word: &Word, oracle: &dyn OrderOracle) -> Result<BigRational> {
        if let Some(&i) = self.index.get(word) {
            return Ok(self.entries[i].1.clone());
        }
        match self.find_slot(word, oracle)? {
            Slot::Equal(i) => Ok(self.entries[i].1.clone()),
            slot => {
                let value = self.slot_value(&slot);
                self.insert(word.clone(), value.clone());
                Ok(value)
            }
        }
    }

    /// Looks up an element without placing it.
    pub fn value_of(&self, word: &Word, oracle: &dyn OrderOracle) -> Result<Option<BigRational>> {
        if let Some(&i) = self.index.get(word) {
            return Ok(Some(self.entries[i].1.clone()));
        }
        match self.find_slot(word, oracle)? {
            Slot::Equal(i) => Ok(Some(self.entries[i].1.clone())),
            _ => Ok(None),
        }
    }

    pub fn entries(&self) -> &[(Word, BigRational)] {
        &self.entries
    }

    /// Rebuilds an embedding from stored (word, value) pairs without any
    /// placement logic. Used when replaying reports and in negative
    /// controls; performs no order validation.
    pub fn from_entries(entries: Vec<(Word, BigRational)>) -> Embedding {
        let mut by_value: Vec<usize> = (0..entries.len()).collect();
        by_value.sort_by(|&i, &j| entries[i].1.cmp(&entries[j].1));
        let index = entries.iter().enumerate().map(|(i, (w, _))| (w.clone(), i)).collect();
        Embedding { entries, by_value, index }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.entries.iter().map(|(w, _)| w)
    }

    fn insert(&mut self, word: Word, value: BigRational) {
        let idx = self.entries.len();
        let pos = self.by_value.partition_point(|&i| self.entries[i].1 < value);
        self.by_value.insert(pos, idx);
        self.index.insert(word.clone(), idx);
        self.entries.push((word, value));
    }

    /// Binary search through the value-sorted entries using the oracle.
    /// Sound because placed values are ordered exactly as the oracle orders
    /// the placed elements.
    fn find_slot(&self, word: &Word, oracle: &dyn OrderOracle) -> Result<Slot> {
        let mut lo: isize = -1;
        let mut hi: isize = self.by_value.len() as isize;
        while lo + 1 < hi {
            let mid = (lo + hi) / 2;
            let entry = self.by_value[mid as usize];
            match oracle.compare(word, &self.entries[entry].0) {
                Comparison::Less => hi = mid,
                Comparison::Greater => lo = mid,
                Comparison::Equal => return Ok(Slot::Equal(entry)),
                Comparison::Unknown => {
                    return Err(Error::precondition(format!(
                        "comparison unknown for pair `{}`, `{}`",
                        oracle.presentation().word_to_text(word),
                        oracle.presentation().word_to_text(&self.entries[entry].0),
                    )))
                }
            }
        }
        Ok(Slot::Insert {
            below: (lo >= 0).then(|| self.by_value[lo as usize]),
            above: (hi < self.by_value.len() as isize).then(|| self.by_value[hi as usize]),
        })
    }

    fn slot_value(&self, slot: &Slot) -> BigRational {
        let one = BigRational::one();
        match slot {
            Slot::Equal(i) => self.entries[*i].1.clone(),
            Slot::Insert { below: None, above: None } => BigRational::zero(),
            Slot::Insert { below: Some(b), above: None } => &self.entries[*b].1 + &one,
            Slot::Insert { below: None, above: Some(a) } => &self.entries[*a].1 - &one,
            Slot::Insert { below: Some(b), above: Some(a) } => {
                (&self.entries[*b].1 + &self.entries[*a].1)
                    / BigRational::from(BigInt::from(2))
            }
        }
    }
}

/// Free-function form of [`Embedding::build`].
pub fn build_embedding_t(enumeration: &[Word], oracle: &dyn OrderOracle) -> Result<Embedding> {
    Embedding::build(enumeration, oracle)
}
