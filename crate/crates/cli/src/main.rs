//! leftorder: certificates, realizations, and germ orders for finitely
//! presented groups.
//!
//! Exit codes: 0 success, 1 usage or input parse error, 2 precondition
//! error, 3 failed verification (of a run's own checks or of a replayed
//! artifact). Diagnostics go to standard error; data goes to files or
//! standard output.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use leftorder::abelian::{abelianization_matrix, first_betti};
use leftorder::artifact::{
    criterion_artifact, obstruction_artifact, oracle_by_name, realization_artifact,
    transcript_artifact, verify_artifact, Artifact,
};
use leftorder::ball::{ball_words, enumerate_ball};
use leftorder::corpus::CORPUS;
use leftorder::error::Error;
use leftorder::germ::{parse_germ_file, select_signs, stability_obstruction, ParamGerm};
use leftorder::matrix::smith_normal_form;
use leftorder::order::{semigroup_criterion_with_threads, CriterionOutcome};
use leftorder::presentation::{parse_presentation, parse_word, Presentation};
use leftorder::realize::{check_realization, realize};
use leftorder::word_problem::Budget;
use leftorder::words::Word;

#[derive(Parser)]
#[command(name = "leftorder", version, about = "Left-orderability toolkit", long_about = None)]
struct Cli {
    /// Worker threads for the per-assignment criterion searches
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the first Betti number and the Smith diagonal of a presentation
    Betti { file: PathBuf },
    /// Run the bounded semigroup-criterion search and emit a certificate
    CheckLo {
        file: PathBuf,
        /// Subset elements as words; comma separated or repeated
        #[arg(long, value_delimiter = ',', required = true)]
        subset: Vec<String>,
        /// Cap on semigroup product length
        #[arg(long)]
        max_len: usize,
        /// Node cap for the word problem oracle
        #[arg(long)]
        budget: Option<usize>,
        /// Write the certificate here instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a dynamic realization over a ball and emit the checked report
    Realize {
        file: PathBuf,
        /// Order oracle: lex (free abelian) or magnus (free)
        #[arg(long)]
        order: String,
        /// Ball radius to enumerate and realize
        #[arg(long)]
        radius: usize,
        /// Orbit length for the compressed germ evidence
        #[arg(long)]
        iterates: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Select signs for a germ family and emit the transcript
    GermOrder {
        germfile: PathBuf,
        /// Witness grid depth (number of shells)
        #[arg(long)]
        depth: u32,
        /// Semigroup verification length
        #[arg(long)]
        max_len: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the stability obstruction harness on a germ assignment
    Obstruct {
        file: PathBuf,
        germfile: PathBuf,
        /// Sampling grid depth
        #[arg(long)]
        depth: u32,
        /// Write the report here instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the bundled corpus of named groups
    Corpus {
        /// Print one bundled presentation instead of the listing
        #[arg(long)]
        dump: Option<String>,
    },
    /// Replay the evidence inside an emitted artifact
    Verify { file: PathBuf },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse { .. } | Error::UnknownGenerator(_) => 1,
            _ => 2,
        };
        Failure::new(code, e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // route clap's rendering but pin the documented exit code
            let is_help = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            return if is_help { ExitCode::SUCCESS } else { ExitCode::from(1) };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Betti { file } => betti(&file),
        Command::CheckLo { file, subset, max_len, budget, out } => {
            check_lo(&file, &subset, max_len, budget, out.as_deref(), cli.threads)
        }
        Command::Realize { file, order, radius, iterates, out } => {
            cmd_realize(&file, &order, radius, iterates, &out)
        }
        Command::GermOrder { germfile, depth, max_len, out } => {
            germ_order(&germfile, depth, max_len, &out)
        }
        Command::Obstruct { file, germfile, depth, out } => {
            obstruct(&file, &germfile, depth, out.as_deref())
        }
        Command::Corpus { dump } => corpus_cmd(dump.as_deref()),
        Command::Verify { file } => verify_cmd(&file),
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::new(1, format!("cannot read {}: {e}", path.display())))
}

fn load_presentation(path: &Path) -> Result<Presentation, Failure> {
    let text = read_file(path)?;
    parse_presentation(&text)
        .map_err(|e| Failure::new(1, format!("{}: {e}", path.display())))
}

fn load_germs(path: &Path) -> Result<Vec<ParamGerm>, Failure> {
    let text = read_file(path)?;
    parse_germ_file(&text).map_err(|e| Failure::new(1, format!("{}: {e}", path.display())))
}

/// Budget defaults come from the environment when set:
/// LEFTORDER_BUDGET_NODES and LEFTORDER_BUDGET_LEN.
fn resolve_budget(nodes_flag: Option<usize>) -> Result<Budget, Failure> {
    let env_usize = |name: &str| -> Result<Option<usize>, Failure> {
        match std::env::var(name) {
            Ok(v) => v
                .parse()
                .map(Some)
                .map_err(|_| Failure::new(1, format!("bad {name}: `{v}`"))),
            Err(_) => Ok(None),
        }
    };
    let default = Budget::default();
    let nodes = match nodes_flag {
        Some(n) => n,
        None => env_usize("LEFTORDER_BUDGET_NODES")?.unwrap_or(default.max_nodes),
    };
    let max_len = env_usize("LEFTORDER_BUDGET_LEN")?.unwrap_or(default.max_len);
    Ok(Budget::new(max_len, nodes))
}

fn write_artifact(artifact: &Artifact, out: Option<&Path>) -> Result<(), Failure> {
    let json = serde_json::to_string_pretty(artifact)
        .map_err(|e| Failure::new(2, format!("serialization failed: {e}")))?;
    match out {
        Some(path) => fs::write(path, json + "\n")
            .map_err(|e| Failure::new(1, format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{json}");
            Ok(())
        }
    }
}

fn betti(file: &Path) -> Result<u8, Failure> {
    let p = load_presentation(file)?;
    let snf = smith_normal_form(&abelianization_matrix(&p));
    let diag: Vec<String> = snf.diag.iter().map(|d| d.to_string()).collect();
    println!("b1 = {}", first_betti(&p));
    println!("snf_diag = [{}]", diag.join(", "));
    Ok(0)
}

fn check_lo(
    file: &Path,
    subset: &[String],
    max_len: usize,
    budget_flag: Option<usize>,
    out: Option<&Path>,
    threads: usize,
) -> Result<u8, Failure> {
    let p = load_presentation(file)?;
    let budget = resolve_budget(budget_flag)?;
    let words: Vec<Word> = subset
        .iter()
        .map(|text| parse_word(&p, text).map_err(Failure::from))
        .collect::<Result<_, _>>()?;
    let outcome = semigroup_criterion_with_threads(&p, &words, max_len, budget, threads)?;
    match &outcome {
        CriterionOutcome::NotLeftOrderable(cert) => {
            eprintln!(
                "not left-orderable: all {} sign assignments are killed",
                cert.assignments.len()
            );
        }
        CriterionOutcome::Undetermined { survivors, .. } => {
            eprintln!("undetermined: {} sign assignments survive the bounds", survivors.len());
        }
    }
    write_artifact(&Artifact::SemigroupCriterion(criterion_artifact(&p, &outcome)), out)?;
    Ok(0)
}

fn cmd_realize(
    file: &Path,
    order: &str,
    radius: usize,
    iterates: usize,
    out: &Path,
) -> Result<u8, Failure> {
    let p = load_presentation(file)?;
    let oracle = oracle_by_name(order, &p)?;
    let budget = resolve_budget(None)?;
    let ball = enumerate_ball(&p, radius, budget)?;
    let words = ball_words(&ball);
    let realization = realize(&words, oracle.as_ref())?;
    let checks = check_realization(&realization, oracle.as_ref(), iterates);
    let artifact = realization_artifact(&p, order, radius, iterates, &realization, &checks);
    let passed = checks.passed();
    eprintln!(
        "realized {} elements over {} placed points: {}",
        words.len(),
        realization.embedding.len(),
        if passed { "PASS" } else { "FAILED" }
    );
    if !passed {
        for f in &checks.failures {
            eprintln!("  {f}");
        }
    }
    write_artifact(&Artifact::Realization(artifact), Some(out))?;
    Ok(if passed { 0 } else { 3 })
}

fn germ_order(germfile: &Path, depth: u32, max_len: usize, out: &Path) -> Result<u8, Failure> {
    let germs = load_germs(germfile)?;
    for g in &germs {
        g.validate(depth.min(6)).map_err(Failure::from)?;
    }
    let transcript = select_signs(&germs, depth, max_len)?;
    let passed = transcript.verification.passed;
    eprintln!(
        "signs {:?} across {} tier(s), {} words verified: {}",
        transcript.epsilons,
        transcript.tiers.len(),
        transcript.verification.words_checked,
        if passed { "PASS" } else { "FAILED" }
    );
    write_artifact(&Artifact::GermOrderTranscript(transcript_artifact(&transcript)), Some(out))?;
    Ok(if passed { 0 } else { 3 })
}

fn obstruct(file: &Path, germfile: &Path, depth: u32, out: Option<&Path>) -> Result<u8, Failure> {
    let p = load_presentation(file)?;
    let germs = load_germs(germfile)?;
    let mut assignment = Vec::with_capacity(p.n_gens());
    for gen in p.generators() {
        let germ = germs
            .iter()
            .find(|g| g.name == *gen)
            .ok_or_else(|| Failure::new(2, format!("no germ named `{gen}` in the germ file")))?;
        assignment.push(germ.clone());
    }
    for g in &germs {
        if !p.generators().contains(&g.name) {
            return Err(Failure::new(2, format!("germ `{}` matches no generator", g.name)));
        }
    }
    let report = stability_obstruction(&p, &assignment, depth)?;
    eprintln!("verdict: {}", verdict_summary(&report.verdict));
    write_artifact(&Artifact::Obstruction(obstruction_artifact(&p, &assignment, &report)), out)?;
    Ok(0)
}

fn verdict_summary(v: &leftorder::germ::ObstructionVerdict) -> String {
    use leftorder::germ::ObstructionVerdict as V;
    match v {
        V::NotARepresentation { relator, point, image } => format!(
            "not a representation (relator {relator} moves ({}, {}) to {image})",
            point.0, point.1
        ),
        V::NoObstruction { betti } => format!("no obstruction (b1 = {betti})"),
        V::ObstructionWitness { generator, .. } => {
            format!("obstruction witness (generator `{generator}` moves sampled points)")
        }
        V::TrivialRepresentation => "trivial representation".into(),
        V::HypothesesNotMet => "hypotheses not met (amenability not asserted)".into(),
    }
}

fn corpus_cmd(dump: Option<&str>) -> Result<u8, Failure> {
    match dump {
        Some(name) => {
            let entry = CORPUS
                .iter()
                .find(|e| e.name == name)
                .ok_or_else(|| Failure::new(1, format!("no corpus entry named `{name}`")))?;
            print!("{}", entry.text);
            Ok(0)
        }
        None => {
            for e in CORPUS {
                let p = parse_presentation(e.text).expect("corpus entries parse");
                println!(
                    "{:<12} gens={} rels={} amenable={} :: {}",
                    e.name,
                    p.n_gens(),
                    p.relators().len(),
                    match p.amenable() {
                        Some(true) => "true",
                        Some(false) => "false",
                        None => "unset",
                    },
                    e.notes
                );
            }
            Ok(0)
        }
    }
}

fn verify_cmd(file: &Path) -> Result<u8, Failure> {
    let text = read_file(file)?;
    let artifact: Artifact = serde_json::from_str(&text)
        .map_err(|e| Failure::new(3, format!("artifact does not parse: {e}")))?;
    match verify_artifact(&artifact) {
        Ok(()) => {
            println!("ok: artifact verifies");
            Ok(0)
        }
        Err(e) => Err(Failure::new(3, e.to_string())),
    }
}
