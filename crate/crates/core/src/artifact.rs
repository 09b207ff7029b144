//! Versioned, replayable artifacts.
//!
//! Every command that produces evidence serializes one of the documents in
//! this module. The documents embed everything verification needs: the
//! presentation or germ family in canonical text form, exact rationals as
//! numerator/denominator string pairs, and the traces or sampled data the
//! claims rest on. `verify_artifact` replays those traces without re-running
//! any bounded search.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::VerifyError;
use crate::germ::{
    diagonal_sequence, stability_obstruction, GermOrderTranscript, ObstructionReport,
    ObstructionVerdict, ParamGerm, TierRecord,
};
use crate::order::{
    verify_criterion_parts, CriterionOutcome, KilledAssignment, SignAssignment,
};
use crate::order::{LexOracle, MagnusOracle, OrderOracle};
use crate::presentation::{parse_presentation, parse_word, Presentation, RationalMatrix2};
use crate::realize::{check_realization, Embedding, PlMap, Realization, RealizationChecks};
use crate::word_problem::{
    Budget, IdentityTrace, NonIdentityWitness, RewriteStep,
};

pub const FORMAT_VERSION: u32 = 1;

/// An exact rational as numerator/denominator strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatJson {
    pub num: String,
    pub den: String,
}

impl RatJson {
    pub fn from_rational(q: &BigRational) -> Self {
        RatJson { num: q.numer().to_string(), den: q.denom().to_string() }
    }

    pub fn to_rational(&self) -> Result<BigRational, VerifyError> {
        let num: BigInt =
            self.num.parse().map_err(|_| VerifyError::new(format!("bad numerator `{}`", self.num)))?;
        let den: BigInt =
            self.den.parse().map_err(|_| VerifyError::new(format!("bad denominator `{}`", self.den)))?;
        if den == BigInt::from(0) {
            return Err(VerifyError::new("zero denominator"));
        }
        Ok(BigRational::new(num, den))
    }
}

// ---------------------------------------------------------------------------
// semigroup criterion artifacts
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessJson {
    FreelyReduced,
    Abelianized { vector: Vec<String> },
    MatrixImage { matrix: Vec<Vec<RatJson>> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetEntryJson {
    pub word: String,
    pub witness: WitnessJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepJson {
    pub pos: usize,
    pub relator: usize,
    pub inverted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KilledJson {
    pub epsilons: Vec<i8>,
    pub factors: Vec<usize>,
    pub killer_word: String,
    pub identity_trace: Vec<StepJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionArtifact {
    pub format_version: u32,
    pub presentation: String,
    pub subset: Vec<SubsetEntryJson>,
    pub max_len: usize,
    pub oracle_budget: Budget,
    /// "not_left_orderable" or "undetermined"
    pub outcome: String,
    pub assignments: Vec<KilledJson>,
    pub survivors: Vec<Vec<i8>>,
}

fn witness_to_json(w: &NonIdentityWitness) -> WitnessJson {
    match w {
        NonIdentityWitness::FreelyReduced => WitnessJson::FreelyReduced,
        NonIdentityWitness::Abelianized { vector } => WitnessJson::Abelianized {
            vector: vector.iter().map(BigInt::to_string).collect(),
        },
        NonIdentityWitness::MatrixImage { image } => WitnessJson::MatrixImage {
            matrix: image
                .entries
                .iter()
                .map(|row| row.iter().map(RatJson::from_rational).collect())
                .collect(),
        },
    }
}

fn witness_from_json(w: &WitnessJson) -> Result<NonIdentityWitness, VerifyError> {
    Ok(match w {
        WitnessJson::FreelyReduced => NonIdentityWitness::FreelyReduced,
        WitnessJson::Abelianized { vector } => NonIdentityWitness::Abelianized {
            vector: vector
                .iter()
                .map(|s| s.parse().map_err(|_| VerifyError::new(format!("bad integer `{s}`"))))
                .collect::<Result<_, _>>()?,
        },
        WitnessJson::MatrixImage { matrix } => {
            if matrix.len() != 2 || matrix.iter().any(|r| r.len() != 2) {
                return Err(VerifyError::new("matrix witness is not 2x2"));
            }
            let cell = |i: usize, j: usize| matrix[i][j].to_rational();
            NonIdentityWitness::MatrixImage {
                image: Box::new(RationalMatrix2 {
                    entries: [[cell(0, 0)?, cell(0, 1)?], [cell(1, 0)?, cell(1, 1)?]],
                }),
            }
        }
    })
}

fn killed_to_json(p: &Presentation, k: &KilledAssignment) -> KilledJson {
    KilledJson {
        epsilons: k.epsilons.0.clone(),
        factors: k.factors.clone(),
        killer_word: p.word_to_text(&k.killer_word),
        identity_trace: k
            .identity_trace
            .steps
            .iter()
            .map(|s| StepJson { pos: s.pos, relator: s.relator, inverted: s.inverted })
            .collect(),
    }
}

/// Packs a criterion outcome into its artifact.
pub fn criterion_artifact(p: &Presentation, outcome: &CriterionOutcome) -> CriterionArtifact {
    let (subset, killed, survivors, max_len, budget, name) = match outcome {
        CriterionOutcome::NotLeftOrderable(cert) => (
            &cert.subset,
            &cert.assignments,
            vec![],
            cert.max_len,
            cert.oracle_budget,
            "not_left_orderable",
        ),
        CriterionOutcome::Undetermined { survivors, killed, max_len, oracle_budget, subset } => (
            subset,
            killed,
            survivors.iter().map(|s| s.0.clone()).collect(),
            *max_len,
            *oracle_budget,
            "undetermined",
        ),
    };
    CriterionArtifact {
        format_version: FORMAT_VERSION,
        presentation: p.to_text(),
        subset: subset
            .iter()
            .map(|(w, witness)| SubsetEntryJson {
                word: p.word_to_text(w),
                witness: witness_to_json(witness),
            })
            .collect(),
        max_len,
        oracle_budget: budget,
        outcome: name.to_string(),
        assignments: killed.iter().map(|k| killed_to_json(p, k)).collect(),
        survivors,
    }
}

fn verify_criterion(a: &CriterionArtifact) -> Result<(), VerifyError> {
    let p = parse_presentation(&a.presentation)
        .map_err(|e| VerifyError::new(format!("embedded presentation: {e}")))?;
    let parse = |text: &str| {
        parse_word(&p, text).map_err(|e| VerifyError::new(format!("embedded word `{text}`: {e}")))
    };
    let mut subset = Vec::with_capacity(a.subset.len());
    for entry in &a.subset {
        subset.push((parse(&entry.word)?, witness_from_json(&entry.witness)?));
    }
    let mut killed = Vec::with_capacity(a.assignments.len());
    for k in &a.assignments {
        let killer = parse(&k.killer_word)?;
        killed.push(KilledAssignment {
            epsilons: SignAssignment(k.epsilons.clone()),
            factors: k.factors.clone(),
            killer_word: killer.clone(),
            identity_trace: IdentityTrace {
                word: killer,
                steps: k
                    .identity_trace
                    .iter()
                    .map(|s| RewriteStep { pos: s.pos, relator: s.relator, inverted: s.inverted })
                    .collect(),
            },
        });
    }
    let survivors: Vec<SignAssignment> =
        a.survivors.iter().map(|s| SignAssignment(s.clone())).collect();
    match a.outcome.as_str() {
        "not_left_orderable" => {
            if !survivors.is_empty() {
                return Err(VerifyError::new("non-LO certificate lists survivors"));
            }
            verify_criterion_parts(&p, &subset, &killed, None, a.max_len)
        }
        "undetermined" => {
            if survivors.is_empty() {
                return Err(VerifyError::new("undetermined outcome without survivors"));
            }
            verify_criterion_parts(&p, &subset, &killed, Some(&survivors), a.max_len)
        }
        other => Err(VerifyError::new(format!("unknown outcome `{other}`"))),
    }
}

// ---------------------------------------------------------------------------
// realization artifacts
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingEntryJson {
    pub word: String,
    pub value_num: String,
    pub value_den: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapJson {
    pub word: String,
    pub breakpoints: Vec<RatJson>,
    pub values: Vec<RatJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitJson {
    pub word: String,
    pub points: Vec<RatJson>,
    pub strictly_increasing: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChecksJson {
    pub order_compatible: bool,
    pub faithful: bool,
    pub monotone: bool,
    pub partial_hom: bool,
    pub germ_orbit: Vec<OrbitJson>,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizationArtifact {
    pub format_version: u32,
    pub presentation: String,
    /// "lex" or "magnus"
    pub order: String,
    pub radius: usize,
    pub iterates: usize,
    pub embedding: Vec<EmbeddingEntryJson>,
    pub maps: Vec<MapJson>,
    pub checks: ChecksJson,
    /// "PASS" or "FAILED"
    pub status: String,
}

fn checks_to_json(p: &Presentation, checks: &RealizationChecks) -> ChecksJson {
    ChecksJson {
        order_compatible: checks.order_compatible,
        faithful: checks.faithful,
        monotone: checks.monotone,
        partial_hom: checks.partial_hom,
        germ_orbit: checks
            .germ_orbits
            .iter()
            .map(|o| OrbitJson {
                word: p.word_to_text(&o.word),
                points: o.points.iter().map(RatJson::from_rational).collect(),
                strictly_increasing: o.strictly_increasing,
            })
            .collect(),
        failures: checks.failures.clone(),
    }
}

/// Packs a realization and its checks into the report artifact.
pub fn realization_artifact(
    p: &Presentation,
    order: &str,
    radius: usize,
    iterates: usize,
    realization: &Realization,
    checks: &RealizationChecks,
) -> RealizationArtifact {
    RealizationArtifact {
        format_version: FORMAT_VERSION,
        presentation: p.to_text(),
        order: order.to_string(),
        radius,
        iterates,
        embedding: realization
            .embedding
            .entries()
            .iter()
            .map(|(w, v)| EmbeddingEntryJson {
                word: p.word_to_text(w),
                value_num: v.numer().to_string(),
                value_den: v.denom().to_string(),
            })
            .collect(),
        maps: realization
            .maps
            .iter()
            .map(|(w, m)| MapJson {
                word: p.word_to_text(w),
                breakpoints: m.breakpoints().map(RatJson::from_rational).collect(),
                values: m.values().map(RatJson::from_rational).collect(),
            })
            .collect(),
        checks: checks_to_json(p, checks),
        status: if checks.passed() { "PASS" } else { "FAILED" }.to_string(),
    }
}

/// Builds the order oracle named in an artifact.
pub fn oracle_by_name(
    name: &str,
    p: &Presentation,
) -> Result<Box<dyn OrderOracle>, crate::error::Error> {
    match name {
        "lex" => Ok(Box::new(LexOracle::new(p.clone()))),
        "magnus" => Ok(Box::new(MagnusOracle::new(p.clone())?)),
        other => Err(crate::error::Error::precondition(format!("unknown order `{other}`"))),
    }
}

fn verify_realization(a: &RealizationArtifact) -> Result<(), VerifyError> {
    let p = parse_presentation(&a.presentation)
        .map_err(|e| VerifyError::new(format!("embedded presentation: {e}")))?;
    let oracle = oracle_by_name(&a.order, &p)
        .map_err(|e| VerifyError::new(format!("cannot rebuild oracle: {e}")))?;

    let mut entries = Vec::with_capacity(a.embedding.len());
    for e in &a.embedding {
        let word = parse_word(&p, &e.word)
            .map_err(|err| VerifyError::new(format!("embedded word `{}`: {err}", e.word)))?;
        let value = RatJson { num: e.value_num.clone(), den: e.value_den.clone() }.to_rational()?;
        entries.push((word, value));
    }

    let mut prefix = Vec::with_capacity(a.maps.len());
    let mut maps = Vec::with_capacity(a.maps.len());
    for m in &a.maps {
        let word = parse_word(&p, &m.word)
            .map_err(|err| VerifyError::new(format!("embedded word `{}`: {err}", m.word)))?;
        if m.breakpoints.len() != m.values.len() {
            return Err(VerifyError::new("map breakpoint/value length mismatch"));
        }
        let mut points = Vec::with_capacity(m.breakpoints.len());
        for (x, y) in m.breakpoints.iter().zip(&m.values) {
            points.push((x.to_rational()?, y.to_rational()?));
        }
        let map = PlMap::new(points)
            .map_err(|e| VerifyError::new(format!("map for `{}`: {e}", m.word)))?;
        prefix.push(word.clone());
        maps.push((word, map));
    }

    let realization =
        Realization { prefix, embedding: Embedding::from_entries(entries), maps };
    let checks = check_realization(&realization, oracle.as_ref(), a.iterates);

    // recomputed checks must reproduce the stored ones
    if checks.order_compatible != a.checks.order_compatible
        || checks.faithful != a.checks.faithful
        || checks.monotone != a.checks.monotone
        || checks.partial_hom != a.checks.partial_hom
    {
        return Err(VerifyError::new("stored check flags do not replay"));
    }
    let recomputed_orbits = checks_to_json(&p, &checks).germ_orbit;
    if recomputed_orbits != a.checks.germ_orbit {
        return Err(VerifyError::new("stored germ orbits do not replay"));
    }
    let status = if checks.passed() { "PASS" } else { "FAILED" };
    if status != a.status {
        return Err(VerifyError::new(format!(
            "status `{}` does not match replayed `{status}`",
            a.status
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// germ order transcripts
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GermJson {
    pub name: String,
    pub expr: String,
    pub rho: RatJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TierPointJson {
    pub p: RatJson,
    pub q: RatJson,
    pub shell: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TierJson {
    pub germ_indices: Vec<usize>,
    pub sequence: Vec<TierPointJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessPointJson {
    pub p: RatJson,
    pub q: RatJson,
    pub tier: usize,
    pub shell: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailedWordJson {
    pub factors: Vec<usize>,
    pub tier: usize,
    pub p: RatJson,
    pub q: RatJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationJson {
    pub max_len: usize,
    pub words_checked: usize,
    pub failures: Vec<FailedWordJson>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptArtifact {
    pub format_version: u32,
    pub germs: Vec<GermJson>,
    pub depth: u32,
    pub epsilons: Vec<i8>,
    pub tiers: Vec<TierJson>,
    pub witness: Vec<WitnessPointJson>,
    pub verification: VerificationJson,
    /// "PASS" or "FAILED"
    pub status: String,
}

fn germ_to_json(g: &ParamGerm) -> GermJson {
    GermJson {
        name: g.name.clone(),
        expr: g.expr.to_string(),
        rho: RatJson::from_rational(&g.rho),
    }
}

fn germ_from_json(g: &GermJson) -> Result<ParamGerm, VerifyError> {
    let expr = crate::germ::parse_expr(&g.expr)
        .map_err(|e| VerifyError::new(format!("embedded germ `{}`: {e}", g.name)))?;
    ParamGerm::new(&g.name, expr, g.rho.to_rational()?)
        .map_err(|e| VerifyError::new(format!("embedded germ `{}`: {e}", g.name)))
}

/// Packs a sign-selection transcript into its artifact.
pub fn transcript_artifact(t: &GermOrderTranscript) -> TranscriptArtifact {
    TranscriptArtifact {
        format_version: FORMAT_VERSION,
        germs: t.germs.iter().map(germ_to_json).collect(),
        depth: t.depth,
        epsilons: t.epsilons.clone(),
        tiers: t
            .tiers
            .iter()
            .map(|tier| TierJson {
                germ_indices: tier.germ_indices.clone(),
                sequence: tier
                    .sequence
                    .iter()
                    .map(|(x, s, shell)| TierPointJson {
                        p: RatJson::from_rational(x),
                        q: RatJson::from_rational(s),
                        shell: *shell,
                    })
                    .collect(),
            })
            .collect(),
        witness: t
            .witness
            .iter()
            .map(|w| WitnessPointJson {
                p: RatJson::from_rational(&w.p),
                q: RatJson::from_rational(&w.q),
                tier: w.tier,
                shell: w.shell,
            })
            .collect(),
        verification: VerificationJson {
            max_len: t.verification.max_len,
            words_checked: t.verification.words_checked,
            failures: t
                .verification
                .failures
                .iter()
                .map(|f| FailedWordJson {
                    factors: f.factors.clone(),
                    tier: f.tier,
                    p: RatJson::from_rational(&f.point.0),
                    q: RatJson::from_rational(&f.point.1),
                })
                .collect(),
            passed: t.verification.passed,
        },
        status: if t.verification.passed { "PASS" } else { "FAILED" }.to_string(),
    }
}

fn verify_transcript(a: &TranscriptArtifact) -> Result<(), VerifyError> {
    let germs: Vec<ParamGerm> =
        a.germs.iter().map(germ_from_json).collect::<Result<_, _>>()?;
    if a.epsilons.len() != germs.len() {
        return Err(VerifyError::new("epsilon count does not match germ count"));
    }
    if a.epsilons.iter().any(|e| *e != 1 && *e != -1) {
        return Err(VerifyError::new("epsilons must be -1 or +1"));
    }

    // tiers partition the indices
    let mut seen = vec![false; germs.len()];
    for tier in &a.tiers {
        for &i in &tier.germ_indices {
            if i >= germs.len() || seen[i] {
                return Err(VerifyError::new("tiers do not partition the germ indices"));
            }
            seen[i] = true;
        }
        if tier.sequence.is_empty() {
            return Err(VerifyError::new("tier with empty sequence"));
        }
    }
    if !seen.iter().all(|&b| b) {
        return Err(VerifyError::new("tiers do not cover every germ"));
    }

    let signed: Vec<ParamGerm> = germs
        .iter()
        .zip(&a.epsilons)
        .map(|(g, &e)| {
            if e == 1 {
                Ok(g.clone())
            } else {
                crate::germ::invert_param_germ(g)
                    .map_err(|err| VerifyError::new(format!("signed germ `{}`: {err}", g.name)))
            }
        })
        .collect::<Result<_, _>>()?;

    // rebuild the internal tier records and check the sampled claims
    let mut tiers = Vec::with_capacity(a.tiers.len());
    for tier in &a.tiers {
        let mut sequence = Vec::with_capacity(tier.sequence.len());
        for pt in &tier.sequence {
            let x = pt.p.to_rational()?;
            let s = pt.q.to_rational()?;
            // the point must come from its declared shell's grid
            if !crate::germ::shell_x_values(pt.shell).contains(&x)
                || !crate::germ::shell_s_values(pt.shell).contains(&s)
            {
                return Err(VerifyError::new(format!(
                    "tier point ({x}, {s}) is not on the shell-{} grid",
                    pt.shell
                )));
            }
            sequence.push((x, s, pt.shell));
        }
        tiers.push(TierRecord { germ_indices: tier.germ_indices.clone(), sequence });
    }

    for (ti, tier) in tiers.iter().enumerate() {
        // members move every tier point strictly up
        for &i in &tier.germ_indices {
            for (x, s, _) in &tier.sequence {
                let y = signed[i]
                    .expr
                    .eval(x, s)
                    .map_err(|e| VerifyError::new(format!("evaluation failed: {e}")))?;
                if y <= *x {
                    return Err(VerifyError::new(format!(
                        "germ `{}` does not move tier-{ti} point ({x}, {s}) up",
                        germs[i].name
                    )));
                }
            }
        }
        // germs of later tiers fix this tier's points
        for later in &tiers[ti + 1..] {
            for &i in &later.germ_indices {
                for (x, s, _) in &tier.sequence {
                    let y = germs[i]
                        .expr
                        .eval(x, s)
                        .map_err(|e| VerifyError::new(format!("evaluation failed: {e}")))?;
                    if y != *x {
                        return Err(VerifyError::new(format!(
                            "deferred germ `{}` moves tier-{ti} point ({x}, {s})",
                            germs[i].name
                        )));
                    }
                }
            }
        }
    }

    // the witness sequence is the diagonal interleave of the tiers
    let expected = diagonal_sequence(&tiers);
    if expected.len() != a.witness.len() {
        return Err(VerifyError::new("witness sequence length mismatch"));
    }
    for (want, got) in expected.iter().zip(&a.witness) {
        if want.p != got.p.to_rational()?
            || want.q != got.q.to_rational()?
            || want.tier != got.tier
            || want.shell != got.shell
        {
            return Err(VerifyError::new("witness sequence does not replay"));
        }
    }

    // re-evaluate the verification stage
    let tier_of: Vec<usize> = (0..germs.len())
        .map(|i| tiers.iter().position(|t| t.germ_indices.contains(&i)).unwrap())
        .collect();
    let mut failures = 0usize;
    let mut words_checked = 0usize;
    let mut frontier: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..a.verification.max_len {
        let mut next = Vec::new();
        for stem in &frontier {
            for i in 0..germs.len() {
                let mut word = stem.clone();
                word.push(i);
                words_checked += 1;
                let tier = word.iter().map(|&j| tier_of[j]).min().unwrap();
                let composite = crate::germ::composite_expr(&signed, &word);
                for (x, s, _) in &tiers[tier].sequence {
                    let y = composite
                        .eval(x, s)
                        .map_err(|e| VerifyError::new(format!("evaluation failed: {e}")))?;
                    if y <= *x {
                        failures += 1;
                        break;
                    }
                }
                next.push(word);
            }
        }
        frontier = next;
    }
    if words_checked != a.verification.words_checked {
        return Err(VerifyError::new("verification word count mismatch"));
    }
    let passed = failures == 0;
    if passed != a.verification.passed || a.verification.failures.is_empty() != passed {
        return Err(VerifyError::new("verification outcome does not replay"));
    }
    let status = if passed { "PASS" } else { "FAILED" };
    if a.status != status {
        return Err(VerifyError::new("transcript status does not match replay"));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// obstruction reports
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VerdictJson {
    NotARepresentation { relator: usize, p: RatJson, q: RatJson, image: RatJson },
    NoObstruction { betti: usize },
    ObstructionWitness { generator: String, points: Vec<(RatJson, RatJson)> },
    TrivialRepresentation,
    HypothesesNotMet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionArtifact {
    pub format_version: u32,
    pub presentation: String,
    pub germs: Vec<GermJson>,
    pub depth: u32,
    pub betti: usize,
    pub amenable: Option<bool>,
    pub verdict: VerdictJson,
    pub relators_checked: usize,
    pub grid_points_checked: usize,
}

fn verdict_to_json(v: &ObstructionVerdict) -> VerdictJson {
    match v {
        ObstructionVerdict::NotARepresentation { relator, point, image } => {
            VerdictJson::NotARepresentation {
                relator: *relator,
                p: RatJson::from_rational(&point.0),
                q: RatJson::from_rational(&point.1),
                image: RatJson::from_rational(image),
            }
        }
        ObstructionVerdict::NoObstruction { betti } => VerdictJson::NoObstruction { betti: *betti },
        ObstructionVerdict::ObstructionWitness { generator, points } => {
            VerdictJson::ObstructionWitness {
                generator: generator.clone(),
                points: points
                    .iter()
                    .map(|(x, s)| (RatJson::from_rational(x), RatJson::from_rational(s)))
                    .collect(),
            }
        }
        ObstructionVerdict::TrivialRepresentation => VerdictJson::TrivialRepresentation,
        ObstructionVerdict::HypothesesNotMet => VerdictJson::HypothesesNotMet,
    }
}

/// Packs an obstruction report into its artifact.
pub fn obstruction_artifact(
    p: &Presentation,
    assignment: &[ParamGerm],
    report: &ObstructionReport,
) -> ObstructionArtifact {
    ObstructionArtifact {
        format_version: FORMAT_VERSION,
        presentation: p.to_text(),
        germs: assignment.iter().map(germ_to_json).collect(),
        depth: report.depth,
        betti: report.betti,
        amenable: report.amenable,
        verdict: verdict_to_json(&report.verdict),
        relators_checked: report.relators_checked,
        grid_points_checked: report.grid_points_checked,
    }
}

fn verify_obstruction(a: &ObstructionArtifact) -> Result<(), VerifyError> {
    let p = parse_presentation(&a.presentation)
        .map_err(|e| VerifyError::new(format!("embedded presentation: {e}")))?;
    let assignment: Vec<ParamGerm> =
        a.germs.iter().map(germ_from_json).collect::<Result<_, _>>()?;
    // the harness is deterministic grid evaluation; re-run and compare
    let report = stability_obstruction(&p, &assignment, a.depth)
        .map_err(|e| VerifyError::new(format!("replay failed: {e}")))?;
    if report.betti != a.betti
        || report.amenable != a.amenable
        || report.relators_checked != a.relators_checked
        || report.grid_points_checked != a.grid_points_checked
    {
        return Err(VerifyError::new("obstruction report fields do not replay"));
    }
    if verdict_to_json(&report.verdict) != a.verdict {
        return Err(VerifyError::new("obstruction verdict does not replay"));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// the artifact envelope
// ---------------------------------------------------------------------------

/// Any document this toolkit emits, tagged by kind.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "artifact", rename_all = "snake_case")]
pub enum Artifact {
    SemigroupCriterion(CriterionArtifact),
    Realization(RealizationArtifact),
    GermOrderTranscript(TranscriptArtifact),
    Obstruction(ObstructionArtifact),
}

impl Artifact {
    pub fn format_version(&self) -> u32 {
        match self {
            Artifact::SemigroupCriterion(a) => a.format_version,
            Artifact::Realization(a) => a.format_version,
            Artifact::GermOrderTranscript(a) => a.format_version,
            Artifact::Obstruction(a) => a.format_version,
        }
    }
}

/// Replays an artifact's evidence. No bounded search is re-run: traces are
/// replayed, witnesses re-checked, and sampled data re-evaluated.
pub fn verify_artifact(artifact: &Artifact) -> Result<(), VerifyError> {
    if artifact.format_version() != FORMAT_VERSION {
        return Err(VerifyError::new(format!(
            "unsupported format_version {}",
            artifact.format_version()
        )));
    }
    match artifact {
        Artifact::SemigroupCriterion(a) => verify_criterion(a),
        Artifact::Realization(a) => verify_realization(a),
        Artifact::GermOrderTranscript(a) => verify_transcript(a),
        Artifact::Obstruction(a) => verify_obstruction(a),
    }
}
