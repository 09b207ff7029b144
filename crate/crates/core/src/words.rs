//! Freely reduced words over a finite generating set.
//!
//! A generator is identified by its index into the owning presentation's
//! generator list. Words are stored in merged syllable form: adjacent
//! letters always refer to distinct generators and no exponent is zero.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One syllable of a word: a generator index with a nonzero exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub gen: usize,
    pub exp: i64,
}

impl Letter {
    pub fn new(gen: usize, exp: i64) -> Self {
        Letter { gen, exp }
    }
}

/// A freely reduced word.
///
/// The only constructors reduce their input, so every `Word` in circulation
/// satisfies the invariants: adjacent letters have distinct generator
/// indices and no letter has exponent zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Word {
    letters: Vec<Letter>,
}

/// Free reduction: merge adjacent syllables over the same generator and
/// drop zero exponents. Idempotent and length-nonincreasing.
pub fn free_reduce<I: IntoIterator<Item = Letter>>(raw: I) -> Word {
    let mut out: Vec<Letter> = Vec::new();
    for l in raw {
        if l.exp == 0 {
            continue;
        }
        match out.last_mut() {
            Some(top) if top.gen == l.gen => {
                top.exp += l.exp;
                if top.exp == 0 {
                    out.pop();
                }
            }
            _ => out.push(l),
        }
    }
    Word { letters: out }
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(raw: I) -> Self {
        free_reduce(raw)
    }

    /// Builds a word from flat codes `+(gen+1)` / `-(gen+1)`.
    pub fn from_flat(flat: &[i32]) -> Self {
        free_reduce(flat.iter().map(|&c| {
            let gen = (c.unsigned_abs() as usize) - 1;
            Letter::new(gen, if c > 0 { 1 } else { -1 })
        }))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Word length: total letter count with multiplicity.
    pub fn len(&self) -> usize {
        self.letters.iter().map(|l| l.exp.unsigned_abs() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Largest generator index used, if any.
    pub fn max_gen(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.gen).max()
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| Letter::new(l.gen, -l.exp)).collect(),
        }
    }

    pub fn mul(&self, rhs: &Word) -> Word {
        free_reduce(self.letters.iter().chain(rhs.letters.iter()).copied())
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n >= 0 { self.clone() } else { self.inverse() };
        let mut out = Word::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// Expands to flat letter codes, one entry per single letter.
    pub fn flat(&self) -> Vec<i32> {
        let mut out = Vec::with_capacity(self.len());
        for l in &self.letters {
            let code = if l.exp > 0 { l.gen as i32 + 1 } else { -(l.gen as i32 + 1) };
            for _ in 0..l.exp.unsigned_abs() {
                out.push(code);
            }
        }
        out
    }

    /// Per-generator exponent sums.
    pub fn exponent_sums(&self, n_gens: usize) -> Vec<i64> {
        let mut v = vec![0i64; n_gens];
        for l in &self.letters {
            v[l.gen] += l.exp;
        }
        v
    }

    /// Shortlex order: length first, then letterwise with positive letters
    /// before negative ones and lower generator indices first.
    pub fn shortlex_cmp(&self, other: &Word) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.flat_keys().cmp(other.flat_keys()))
    }

    fn flat_keys(&self) -> impl Iterator<Item = u64> + '_ {
        self.letters.iter().flat_map(|l| {
            let key = (l.gen as u64) * 2 + if l.exp > 0 { 0 } else { 1 };
            std::iter::repeat_n(key, l.exp.unsigned_abs() as usize)
        })
    }

    /// Renders the word in the token syntax used by presentation files;
    /// the identity renders as the empty string.
    pub fn to_text(&self, names: &[String]) -> String {
        let mut parts = Vec::with_capacity(self.letters.len());
        for l in &self.letters {
            let name = names.get(l.gen).map(String::as_str).unwrap_or("?");
            if l.exp == 1 {
                parts.push(name.to_string());
            } else {
                parts.push(format!("{}^{}", name, l.exp));
            }
        }
        parts.join(" ")
    }

    /// Checks that every generator index is below `n_gens`.
    pub fn check_gens(&self, n_gens: usize) -> Result<()> {
        for l in &self.letters {
            if l.gen >= n_gens {
                return Err(Error::UnknownGenerator(format!("generator index {}", l.gen)));
            }
        }
        Ok(())
    }
}

/// Reduces a flat code list in place; used by the rewrite search where words
/// stay in expanded form.
pub fn reduce_flat(flat: &mut Vec<i32>) {
    let mut out: Vec<i32> = Vec::with_capacity(flat.len());
    for &c in flat.iter() {
        if let Some(&top) = out.last() {
            if top == -c {
                out.pop();
                continue;
            }
        }
        out.push(c);
    }
    *flat = out;
}
