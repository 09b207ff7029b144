//! Group presentations and their text format.
//!
//! The file format is line oriented. `#` starts a comment, blank lines are
//! ignored, and the directives are:
//!
//! ```text
//! gens: a b c
//! rels: a^2 c^-1 b^-1 a^-1, b^3 c^-1 b^-1 a^-1
//! amenable: true
//! rep: a = [[1,1],[0,1]]
//! ```
//!
//! A word is a whitespace-separated token list; a token is an identifier
//! (`[a-z][a-z0-9_]*`) optionally followed by `^` and a signed integer
//! exponent. `rels:` may appear on several lines; the words on each are
//! comma separated. `rep:` registers an exact-rational 2x2 matrix for one
//! generator, used as a non-identity witness source by the word problem
//! oracle.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{free_reduce, Letter, Word};

/// An exact-rational 2x2 matrix, used for registered linear representations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalMatrix2 {
    pub entries: [[BigRational; 2]; 2],
}

impl RationalMatrix2 {
    pub fn identity() -> Self {
        let one = BigRational::one();
        let zero = BigRational::zero();
        RationalMatrix2 {
            entries: [[one.clone(), zero.clone()], [zero, one]],
        }
    }

    pub fn det(&self) -> BigRational {
        &self.entries[0][0] * &self.entries[1][1] - &self.entries[0][1] * &self.entries[1][0]
    }

    pub fn mul(&self, rhs: &RationalMatrix2) -> RationalMatrix2 {
        let a = &self.entries;
        let b = &rhs.entries;
        let cell = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
        RationalMatrix2 { entries: [[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]] }
    }

    pub fn inverse(&self) -> Option<RationalMatrix2> {
        let d = self.det();
        if d.is_zero() {
            return None;
        }
        let a = &self.entries;
        Some(RationalMatrix2 {
            entries: [
                [&a[1][1] / &d, -&a[0][1] / &d],
                [-&a[1][0] / &d, &a[0][0] / &d],
            ],
        })
    }

    pub fn is_identity(&self) -> bool {
        self == &RationalMatrix2::identity()
    }
}

/// A finite presentation: named generators, freely reduced relators, and
/// optional user-supplied metadata (an amenability assertion and registered
/// matrix representations).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    gens: Vec<String>,
    rels: Vec<Word>,
    amenable: Option<bool>,
    reps: BTreeMap<usize, RationalMatrix2>,
}

impl Presentation {
    pub fn new(gens: Vec<String>, rels: Vec<Word>) -> Result<Self> {
        Presentation::with_metadata(gens, rels, None, BTreeMap::new())
    }

    pub fn with_metadata(
        gens: Vec<String>,
        rels: Vec<Word>,
        amenable: Option<bool>,
        reps: BTreeMap<usize, RationalMatrix2>,
    ) -> Result<Self> {
        for (i, g) in gens.iter().enumerate() {
            if !is_identifier(g) {
                return Err(Error::precondition(format!("invalid generator name `{g}`")));
            }
            if gens[..i].contains(g) {
                return Err(Error::precondition(format!("duplicate generator `{g}`")));
            }
        }
        for r in &rels {
            r.check_gens(gens.len())?;
            if r.is_identity() {
                return Err(Error::precondition("empty relator after reduction"));
            }
        }
        for (&g, m) in &reps {
            if g >= gens.len() {
                return Err(Error::UnknownGenerator(format!("rep for generator index {g}")));
            }
            if m.det().is_zero() {
                return Err(Error::precondition(format!(
                    "rep matrix for `{}` is singular",
                    gens[g]
                )));
            }
        }
        let p = Presentation { gens, rels, amenable, reps };
        // a registered representation is only a sound witness source if it
        // is a homomorphism: it must cover every generator and kill every
        // relator
        if !p.reps.is_empty() {
            for g in 0..p.gens.len() {
                if !p.reps.contains_key(&g) {
                    return Err(Error::precondition(format!(
                        "rep must cover all generators; `{}` is missing",
                        p.gens[g]
                    )));
                }
            }
            for r in &p.rels {
                let image = p.rep_image(r).expect("reps cover all generators");
                if !image.is_identity() {
                    return Err(Error::precondition(format!(
                        "rep does not satisfy relator `{}`",
                        r.to_text(&p.gens)
                    )));
                }
            }
        }
        Ok(p)
    }

    pub fn generators(&self) -> &[String] {
        &self.gens
    }

    pub fn n_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.rels
    }

    pub fn amenable(&self) -> Option<bool> {
        self.amenable
    }

    pub fn reps(&self) -> &BTreeMap<usize, RationalMatrix2> {
        &self.reps
    }

    pub fn is_free(&self) -> bool {
        self.rels.is_empty()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g == name)
    }

    /// Validates letters against the declared generators and reduces.
    pub fn reduce(&self, raw: Vec<Letter>) -> Result<Word> {
        for l in &raw {
            if l.gen >= self.gens.len() {
                return Err(Error::UnknownGenerator(format!("generator index {}", l.gen)));
            }
        }
        Ok(free_reduce(raw))
    }

    /// Evaluates a registered matrix representation on a word, if every
    /// generator in the word has a registered matrix.
    pub fn rep_image(&self, w: &Word) -> Option<RationalMatrix2> {
        let mut acc = RationalMatrix2::identity();
        for l in w.letters() {
            let m = self.reps.get(&l.gen)?;
            let factor = if l.exp > 0 { m.clone() } else { m.inverse()? };
            for _ in 0..l.exp.unsigned_abs() {
                acc = acc.mul(&factor);
            }
        }
        Some(acc)
    }

    pub fn word_to_text(&self, w: &Word) -> String {
        w.to_text(&self.gens)
    }

    /// Canonical text form; `parse_presentation` round-trips it.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "gens: {}", self.gens.join(" "));
        if !self.rels.is_empty() {
            let rels: Vec<String> = self.rels.iter().map(|r| self.word_to_text(r)).collect();
            let _ = writeln!(out, "rels: {}", rels.join(", "));
        }
        if let Some(flag) = self.amenable {
            let _ = writeln!(out, "amenable: {flag}");
        }
        for (&g, m) in &self.reps {
            let _ = writeln!(
                out,
                "rep: {} = [[{},{}],[{},{}]]",
                self.gens[g],
                m.entries[0][0],
                m.entries[0][1],
                m.entries[1][0],
                m.entries[1][1]
            );
        }
        out
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
}

/// Parses one word in token syntax against a generator table.
/// `line`/`col0` locate the text within a larger file for diagnostics.
pub fn parse_word_tokens(
    text: &str,
    gens: &[String],
    line: usize,
    col0: usize,
) -> Result<Vec<Letter>> {
    let mut letters = Vec::new();
    let mut idx = 0;
    let bytes = text.as_bytes();
    while idx < bytes.len() {
        if bytes[idx].is_ascii_whitespace() {
            idx += 1;
            continue;
        }
        let start = idx;
        while idx < bytes.len() && !bytes[idx].is_ascii_whitespace() {
            idx += 1;
        }
        let token = &text[start..idx];
        let col = col0 + start + 1;
        let (name, exp) = match token.split_once('^') {
            Some((n, e)) => {
                let exp: i64 = e
                    .parse()
                    .map_err(|_| Error::parse(line, col + n.len() + 1, format!("bad exponent `{e}`")))?;
                (n, exp)
            }
            None => (token, 1),
        };
        if !is_identifier(name) {
            return Err(Error::parse(line, col, format!("bad token `{token}`")));
        }
        let gen = gens
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| Error::parse(line, col, format!("undeclared generator `{name}`")))?;
        if exp == 0 {
            return Err(Error::parse(line, col, format!("zero exponent in `{token}`")));
        }
        letters.push(Letter::new(gen, exp));
    }
    Ok(letters)
}

/// Parses a word using a presentation's generator table. The empty string
/// parses to the identity; this form appears only inside emitted artifacts.
pub fn parse_word(p: &Presentation, text: &str) -> Result<Word> {
    Ok(free_reduce(parse_word_tokens(text, p.generators(), 0, 0)?))
}

/// Parses the presentation text format.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut gens: Option<Vec<String>> = None;
    let mut rel_specs: Vec<(String, usize, usize)> = Vec::new();
    let mut amenable = None;
    let mut rep_specs: Vec<(String, String, usize, usize)> = Vec::new();

    for (lineno, raw_line) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = match raw_line.find('#') {
            Some(i) => &raw_line[..i],
            None => raw_line,
        };
        if content.trim().is_empty() {
            continue;
        }
        let Some((keyword, rest)) = content.split_once(':') else {
            return Err(Error::parse(line, 1, "expected `<directive>: ...`"));
        };
        let body_col = keyword.len() + 1;
        match keyword.trim() {
            "gens" => {
                if gens.is_some() {
                    return Err(Error::parse(line, 1, "duplicate `gens:` line"));
                }
                let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                if names.is_empty() {
                    return Err(Error::parse(line, body_col, "no generators declared"));
                }
                for name in &names {
                    if !is_identifier(name) {
                        let col = content.find(name.as_str()).unwrap_or(0) + 1;
                        return Err(Error::parse(line, col, format!("bad generator name `{name}`")));
                    }
                }
                gens = Some(names);
            }
            "rels" => {
                let mut col = body_col;
                for part in rest.split(',') {
                    rel_specs.push((part.to_string(), line, col));
                    col += part.len() + 1;
                }
            }
            "amenable" => {
                amenable = Some(match rest.trim() {
                    "true" => true,
                    "false" => false,
                    other => {
                        return Err(Error::parse(
                            line,
                            body_col + 1,
                            format!("expected true|false, got `{other}`"),
                        ))
                    }
                });
            }
            "rep" => {
                let Some((name, matrix)) = rest.split_once('=') else {
                    return Err(Error::parse(line, body_col, "expected `rep: <gen> = [[..],[..]]`"));
                };
                rep_specs.push((name.trim().to_string(), matrix.to_string(), line, body_col));
            }
            other => {
                return Err(Error::parse(line, 1, format!("unknown directive `{other}`")));
            }
        }
    }

    let gens = gens.ok_or_else(|| Error::parse(1, 1, "missing `gens:` line"))?;

    let mut rels = Vec::new();
    for (spec, line, col) in rel_specs {
        let letters = parse_word_tokens(&spec, &gens, line, col)?;
        let word = free_reduce(letters);
        if word.is_identity() {
            return Err(Error::parse(line, col, "empty relator after reduction"));
        }
        rels.push(word);
    }

    let mut reps = BTreeMap::new();
    for (name, matrix, line, col) in rep_specs {
        let gen = gens
            .iter()
            .position(|g| *g == name)
            .ok_or_else(|| Error::parse(line, col, format!("undeclared generator `{name}`")))?;
        let m = parse_matrix2(&matrix, line, col)?;
        reps.insert(gen, m);
    }

    Presentation::with_metadata(gens, rels, amenable, reps)
}

fn parse_matrix2(text: &str, line: usize, col: usize) -> Result<RationalMatrix2> {
    let bad = |msg: &str| Error::parse(line, col, format!("bad matrix: {msg}"));
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = compact
        .strip_prefix("[[")
        .and_then(|s| s.strip_suffix("]]"))
        .ok_or_else(|| bad("expected [[q,q],[q,q]]"))?;
    let rows: Vec<&str> = inner.split("],[").collect();
    if rows.len() != 2 {
        return Err(bad("expected two rows"));
    }
    let mut out = RationalMatrix2::identity();
    for (i, row) in rows.iter().enumerate() {
        let cells: Vec<&str> = row.split(',').collect();
        if cells.len() != 2 {
            return Err(bad("expected two entries per row"));
        }
        for (j, cell) in cells.iter().enumerate() {
            out.entries[i][j] = parse_rational(cell).ok_or_else(|| bad(&format!("bad entry `{cell}`")))?;
        }
    }
    Ok(out)
}

/// Parses `p` or `p/q` into an exact rational.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}
