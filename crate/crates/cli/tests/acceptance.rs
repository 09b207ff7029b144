//! Acceptance suite.
//!
//! Each test runs one acceptance criterion end to end at its stated
//! tolerance (exact unless noted) and prints one pass/fail line. Run with
//! `cargo test -p leftorder-cli --test acceptance -- --nocapture` to see
//! the lines.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use leftorder::abelian::abelianization_matrix;
use leftorder::ball::{ball_words, enumerate_ball};
use leftorder::corpus::{corpus_presentation, CORPUS};
use leftorder::germ::{germ_compare, parse_germ_file, select_signs, GermWord};
use leftorder::order::{magnus_compare, Comparison};
use leftorder::presentation::parse_presentation;
use leftorder::word_problem::Budget;
use leftorder::words::Word;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_leftorder"))
}

fn repo_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..").canonicalize().unwrap()
}

fn corpus_path(name: &str) -> PathBuf {
    repo_root().join("corpus").join(format!("{name}.grp"))
}

fn artifact_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("leftorder-acceptance-{}-{name}", std::process::id()))
}

fn criterion(n: u32, label: &str, body: impl FnOnce() -> Result<(), String>) {
    match body() {
        Ok(()) => println!("criterion {n} ({label}): PASS"),
        Err(e) => {
            println!("criterion {n} ({label}): FAIL: {e}");
            panic!("criterion {n} ({label}) failed: {e}");
        }
    }
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn json_rat(v: &serde_json::Value) -> Result<BigRational, String> {
    let num: BigInt = v["num"]
        .as_str()
        .ok_or("missing num")?
        .parse()
        .map_err(|_| "bad num".to_string())?;
    let den: BigInt = v["den"]
        .as_str()
        .ok_or("missing den")?
        .parse()
        .map_err(|_| "bad den".to_string())?;
    Ok(BigRational::new(num, den))
}

/// Independent rank oracle for criterion 2: fraction-free Gaussian
/// elimination, sharing no code with the Smith normal form path.
fn ffge_rank(m: &leftorder::matrix::IntMatrix) -> usize {
    let rows = m.rows();
    let cols = m.cols();
    let mut a: Vec<Vec<BigInt>> =
        (0..rows).map(|i| (0..cols).map(|j| m.get(i, j).clone()).collect()).collect();
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(rank, pivot);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let num = &a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c];
                a[r][c] = num / &prev;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

fn run_to_file(args: &[&str], out: &Path) -> Result<i32, String> {
    let output = bin()
        .args(args)
        .args(["--out", out.to_str().unwrap()])
        .output()
        .map_err(|e| e.to_string())?;
    Ok(output.status.code().unwrap_or(-1))
}

fn load_artifact(path: &Path) -> Result<serde_json::Value, String> {
    let text = fs::read_to_string(path).map_err(|e| e.to_string())?;
    serde_json::from_str(&text).map_err(|e| e.to_string())
}

fn verify_file(path: &Path) -> i32 {
    bin().arg("verify").arg(path).output().unwrap().status.code().unwrap_or(-1)
}

// --- criterion 1 ------------------------------------------------------

#[test]
fn criterion_1_torsion_obstruction() {
    criterion(1, "torsion obstruction", || {
        for n in 2..=7u32 {
            let name = format!("zmod{n}");
            let out = artifact_path(&format!("c1-{name}.json"));
            let code = run_to_file(
                &[
                    "check-lo",
                    corpus_path(&name).to_str().unwrap(),
                    "--subset",
                    "a",
                    "--max-len",
                    &n.to_string(),
                ],
                &out,
            )?;
            ensure(code == 0, format!("{name}: exit {code}"))?;
            let doc = load_artifact(&out)?;
            ensure(
                doc["outcome"] == "not_left_orderable",
                format!("{name}: outcome {}", doc["outcome"]),
            )?;
            let assignments = doc["assignments"].as_array().ok_or("no assignments")?;
            ensure(assignments.len() == 2, format!("{name}: {} assignments", assignments.len()))?;
            let mut signs: Vec<i64> = assignments
                .iter()
                .map(|a| a["epsilons"][0].as_i64().unwrap_or(0))
                .collect();
            signs.sort();
            ensure(signs == vec![-1, 1], format!("{name}: signs {signs:?}"))?;
            // the certificate replays
            ensure(verify_file(&out) == 0, format!("{name}: certificate does not replay"))?;
        }
        Ok(())
    });
}

// --- criterion 2 ------------------------------------------------------

#[test]
fn criterion_2_betti_hypothesis_checks() {
    criterion(2, "betti hypothesis checks", || {
        let expect = [
            ("thurston", 0usize),
            ("klein", 1),
            ("z", 1),
            ("z2", 2),
            ("z3", 3),
            ("tsuboi", 2),
        ];
        for (name, b) in expect {
            let output = bin().arg("betti").arg(corpus_path(name)).output().unwrap();
            ensure(output.status.code() == Some(0), format!("{name}: nonzero exit"))?;
            let text = String::from_utf8_lossy(&output.stdout).into_owned();
            ensure(
                text.lines().any(|l| l.trim() == format!("b1 = {b}")),
                format!("{name}: expected b1 = {b}, got {text:?}"),
            )?;
            // independent oracle: fraction-free Gaussian elimination
            let p = corpus_presentation(name).unwrap().unwrap();
            let m = abelianization_matrix(&p);
            ensure(
                p.n_gens() - ffge_rank(&m) == b,
                format!("{name}: elimination oracle disagrees"),
            )?;
        }
        Ok(())
    });
}

// --- criterion 3 ------------------------------------------------------

#[test]
fn criterion_3_dynamic_realization_of_z() {
    criterion(3, "dynamic realization of Z", || {
        let out = artifact_path("c3-z.json");
        let code = run_to_file(
            &[
                "realize",
                corpus_path("z").to_str().unwrap(),
                "--order",
                "lex",
                "--radius",
                "2",
                "--iterates",
                "20",
            ],
            &out,
        )?;
        ensure(code == 0, format!("exit {code}"))?;
        let doc = load_artifact(&out)?;
        ensure(doc["status"] == "PASS", format!("status {}", doc["status"]))?;

        // t on the enumeration (e, a, a^-1, a^2, a^-2) is (0, 1, -1, 2, -2)
        let embedding = doc["embedding"].as_array().ok_or("no embedding")?;
        let expected = [("", 0i64), ("a", 1), ("a^-1", -1), ("a^2", 2), ("a^-2", -2)];
        for (i, (word, value)) in expected.iter().enumerate() {
            let entry = &embedding[i];
            ensure(entry["word"] == *word, format!("entry {i}: word {}", entry["word"]))?;
            ensure(
                entry["value_num"].as_str() == Some(value.to_string().as_str())
                    && entry["value_den"] == "1",
                format!("entry {i}: value {}/{}", entry["value_num"], entry["value_den"]),
            )?;
        }

        for key in ["order_compatible", "faithful", "monotone", "partial_hom"] {
            ensure(doc["checks"][key] == true, format!("check {key} failed"))?;
        }

        // the compressed orbit of a is phi(n) = (n/(1+n) - 1)/2, n = 1..20
        let orbits = doc["checks"]["germ_orbit"].as_array().ok_or("no orbits")?;
        let a_orbit = orbits
            .iter()
            .find(|o| o["word"] == "a")
            .ok_or("no orbit for a")?;
        ensure(a_orbit["strictly_increasing"] == true, "orbit of a not increasing")?;
        let points = a_orbit["points"].as_array().ok_or("no points")?;
        ensure(points.len() == 20, format!("{} orbit points", points.len()))?;
        let mut prev = rat(-1, 2);
        for (i, point) in points.iter().enumerate() {
            let n = i as i64 + 1;
            let phi_n = (rat(n, n + 1) - rat(1, 1)) / rat(2, 1);
            let got = json_rat(point)?;
            ensure(got == phi_n, format!("orbit point {n}: {got} != {phi_n}"))?;
            ensure(got > prev, format!("orbit not strictly increasing at {n}"))?;
            prev = got;
        }
        ensure(verify_file(&out) == 0, "report does not replay")?;
        Ok(())
    });
}

// --- criterion 4 ------------------------------------------------------

#[test]
fn criterion_4_realization_of_z2_lex_radius_3() {
    criterion(4, "realization of Z^2, lex, radius 3", || {
        let out = artifact_path("c4-z2.json");
        let code = run_to_file(
            &[
                "realize",
                corpus_path("z2").to_str().unwrap(),
                "--order",
                "lex",
                "--radius",
                "3",
                "--iterates",
                "5",
            ],
            &out,
        )?;
        ensure(code == 0, format!("exit {code}"))?;
        let doc = load_artifact(&out)?;
        ensure(doc["status"] == "PASS", format!("status {}", doc["status"]))?;
        ensure(doc["checks"]["order_compatible"] == true, "order compatibility failed")?;
        ensure(doc["checks"]["partial_hom"] == true, "partial homomorphism failed")?;
        ensure(doc["maps"].as_array().map(Vec::len) == Some(25), "ball size is not 25")?;
        Ok(())
    });
}

// --- criterion 5 ------------------------------------------------------

#[test]
fn criterion_5_magnus_order_on_f2() {
    criterion(5, "Magnus order on F2, radius-2 ball", || {
        let p = corpus_presentation("f2").unwrap().unwrap();
        let ball = enumerate_ball(&p, 2, Budget::default()).map_err(|e| e.to_string())?;
        let words = ball_words(&ball);
        ensure(words.len() == 17, format!("ball size {}", words.len()))?;

        let cmp = |u: &Word, v: &Word| magnus_compare(&p, u, v).unwrap();
        // total and antisymmetric
        for u in &words {
            for v in &words {
                let uv = cmp(u, v);
                ensure(uv.is_decided(), "undecided comparison")?;
                ensure(uv == cmp(v, u).reverse(), "antisymmetry failed")?;
                if u == v {
                    ensure(uv == Comparison::Equal, "reflexivity failed")?;
                } else {
                    ensure(uv != Comparison::Equal, "distinct elements equal")?;
                }
            }
        }
        // transitive on all decided triples
        for u in &words {
            for v in &words {
                if cmp(u, v) != Comparison::Less {
                    continue;
                }
                for w in &words {
                    if cmp(v, w) == Comparison::Less {
                        ensure(cmp(u, w) == Comparison::Less, "transitivity failed")?;
                    }
                }
            }
        }
        // left-invariant
        for w in &words {
            for u in &words {
                for v in &words {
                    ensure(
                        cmp(&w.mul(u), &w.mul(v)) == cmp(u, v),
                        "left invariance failed",
                    )?;
                }
            }
        }
        Ok(())
    });
}

// --- criterion 6 ------------------------------------------------------

#[test]
fn criterion_6_germ_order_sign_selection() {
    criterion(6, "germ order sign selection", || {
        // single upward shift
        let up = parse_germ_file("f = x + s\n").unwrap();
        let t = select_signs(&up, 4, 4).map_err(|e| e.to_string())?;
        ensure(t.epsilons == vec![1], format!("x+s signs {:?}", t.epsilons))?;
        ensure(t.tiers.len() == 1, "x+s tier count")?;
        ensure(t.verification.passed, "x+s verification failed")?;

        // single downward shift
        let down = parse_germ_file("f = x - s\n").unwrap();
        let t = select_signs(&down, 4, 4).map_err(|e| e.to_string())?;
        ensure(t.epsilons == vec![-1], format!("x-s signs {:?}", t.epsilons))?;

        // the two-tier family, through the CLI
        let germfile = artifact_path("c6.germ");
        fs::write(&germfile, "f = x + s\ng = (1 + s) * x\n").map_err(|e| e.to_string())?;
        let out = artifact_path("c6-transcript.json");
        let code = run_to_file(
            &["germ-order", germfile.to_str().unwrap(), "--depth", "4", "--max-len", "4"],
            &out,
        )?;
        ensure(code == 0, format!("germ-order exit {code}"))?;
        let doc = load_artifact(&out)?;
        ensure(doc["status"] == "PASS", "transcript FAILED")?;
        ensure(doc["epsilons"] == serde_json::json!([1, 1]), "signs not (+1, +1)")?;
        let tiers = doc["tiers"].as_array().ok_or("no tiers")?;
        ensure(tiers.len() == 2, format!("{} tiers", tiers.len()))?;
        ensure(tiers[0]["germ_indices"] == serde_json::json!([0]), "tier 1 holds f")?;
        ensure(tiers[1]["germ_indices"] == serde_json::json!([1]), "tier 2 holds g")?;
        // tier 1 rides (0, 1/2^m), tier 2 rides (1/2^m, 1/2^m)
        for pt in tiers[0]["sequence"].as_array().ok_or("tier 1 seq")? {
            let shell = pt["shell"].as_u64().ok_or("shell")?;
            ensure(json_rat(&pt["p"])? == rat(0, 1), "tier 1 p != 0")?;
            ensure(json_rat(&pt["q"])? == rat(1, 1 << shell), "tier 1 q != 1/2^m")?;
        }
        for pt in tiers[1]["sequence"].as_array().ok_or("tier 2 seq")? {
            let shell = pt["shell"].as_u64().ok_or("shell")?;
            ensure(json_rat(&pt["p"])? == rat(1, 1 << shell), "tier 2 p != 2^-m")?;
            ensure(json_rat(&pt["q"])? == rat(1, 1 << shell), "tier 2 q != 2^-m")?;
        }
        ensure(verify_file(&out) == 0, "transcript does not replay")?;

        // the induced relation on the word ball is antisymmetric,
        // transitive, left-invariant
        let germs = parse_germ_file("f = x + s\ng = (1 + s) * x\n").unwrap();
        let t = select_signs(&germs, 4, 4).map_err(|e| e.to_string())?;
        let gcmp = |u: &GermWord, v: &GermWord| germ_compare(&t, u, v);

        // semigroup words over the signed germs up to the verified length
        let mut semigroup_ball: Vec<GermWord> = vec![vec![]];
        let mut frontier: Vec<GermWord> = vec![vec![]];
        for _ in 0..4 {
            let mut next = Vec::new();
            for stem in &frontier {
                for g in 0..2usize {
                    let mut w = stem.clone();
                    w.push((g, 1));
                    next.push(leftorder::germ::reduce_germ_word(&w));
                }
            }
            semigroup_ball.extend(next.iter().cloned());
            frontier = next;
        }
        semigroup_ball.sort();
        semigroup_ball.dedup();
        for u in &semigroup_ball {
            for v in &semigroup_ball {
                let uv = gcmp(u, v);
                ensure(uv.is_decided(), "undecided germ comparison")?;
                ensure(uv == gcmp(v, u).reverse(), "germ antisymmetry failed")?;
                if u != v {
                    ensure(uv != Comparison::Equal, "distinct semigroup words equal")?;
                }
            }
        }
        for u in &semigroup_ball {
            for v in &semigroup_ball {
                if gcmp(u, v) != Comparison::Less {
                    continue;
                }
                for w in &semigroup_ball {
                    if gcmp(v, w) == Comparison::Less {
                        ensure(gcmp(u, w) == Comparison::Less, "germ transitivity failed")?;
                    }
                }
            }
        }

        // left invariance over group words with inverses
        let mut ball: Vec<GermWord> = vec![vec![]];
        for len in 1..=2 {
            let mut next = Vec::new();
            for stem in ball.iter().filter(|w| w.len() == len - 1) {
                for g in 0..2usize {
                    for e in [1i64, -1] {
                        let mut w = stem.clone();
                        w.push((g, e));
                        next.push(leftorder::germ::reduce_germ_word(&w));
                    }
                }
            }
            ball.extend(next);
        }
        ball.sort();
        ball.dedup();
        for w in &ball {
            for u in &ball {
                for v in &ball {
                    let wu = leftorder::germ::reduce_germ_word(
                        &[w.clone(), u.clone()].concat(),
                    );
                    let wv = leftorder::germ::reduce_germ_word(
                        &[w.clone(), v.clone()].concat(),
                    );
                    ensure(gcmp(&wu, &wv) == gcmp(u, v), "germ left invariance failed")?;
                }
            }
        }
        Ok(())
    });
}

// --- criterion 7 ------------------------------------------------------

#[test]
fn criterion_7_obstruction_harness() {
    criterion(7, "obstruction harness", || {
        // HypothesesNotMet: the (2,3,7) group carries no amenability claim
        let identity_two = artifact_path("c7-id2.germ");
        let identity_three = artifact_path("c7-id3.germ");
        fs::write(&identity_two, "a = x\nb = x\n").map_err(|e| e.to_string())?;
        fs::write(&identity_three, "a = x\nb = x\nc = x\n").map_err(|e| e.to_string())?;

        let out = artifact_path("c7-thurston.json");
        let code = run_to_file(
            &[
                "obstruct",
                corpus_path("thurston").to_str().unwrap(),
                identity_three.to_str().unwrap(),
                "--depth",
                "3",
            ],
            &out,
        )?;
        ensure(code == 0, format!("thurston exit {code}"))?;
        let doc = load_artifact(&out)?;
        ensure(
            doc["verdict"]["kind"] == "hypotheses_not_met",
            format!("thurston verdict {}", doc["verdict"]["kind"]),
        )?;
        ensure(verify_file(&out) == 0, "thurston report does not replay")?;

        // NoObstruction: the Klein bottle group has b1 = 1
        let klein_germs = artifact_path("c7-klein.germ");
        fs::write(&klein_germs, "a = x\nb = x + s\n").map_err(|e| e.to_string())?;
        let out2 = artifact_path("c7-klein.json");
        let code = run_to_file(
            &[
                "obstruct",
                corpus_path("klein").to_str().unwrap(),
                klein_germs.to_str().unwrap(),
                "--depth",
                "3",
            ],
            &out2,
        )?;
        ensure(code == 0, format!("klein exit {code}"))?;
        let doc = load_artifact(&out2)?;
        ensure(
            doc["verdict"]["kind"] == "no_obstruction",
            format!("klein verdict {}", doc["verdict"]["kind"]),
        )?;
        ensure(doc["verdict"]["betti"] == 1, "klein betti != 1")?;
        ensure(verify_file(&out2) == 0, "klein report does not replay")?;

        // NotARepresentation: a torsion relator cannot carry a shift
        let shift = artifact_path("c7-shift.germ");
        fs::write(&shift, "a = x + s\n").map_err(|e| e.to_string())?;
        let out3 = artifact_path("c7-zmod3.json");
        let code = run_to_file(
            &[
                "obstruct",
                corpus_path("zmod3").to_str().unwrap(),
                shift.to_str().unwrap(),
                "--depth",
                "3",
            ],
            &out3,
        )?;
        ensure(code == 0, format!("zmod3 exit {code}"))?;
        let doc = load_artifact(&out3)?;
        ensure(
            doc["verdict"]["kind"] == "not_a_representation",
            format!("zmod3 verdict {}", doc["verdict"]["kind"]),
        )?;
        ensure(verify_file(&out3) == 0, "zmod3 report does not replay")?;

        // TrivialRepresentation: identity germs on every b1 = 0,
        // amenable-flagged corpus group
        let mut hit = 0;
        for entry in CORPUS {
            let p = parse_presentation(entry.text).unwrap();
            if p.amenable() != Some(true) || leftorder::abelian::first_betti(&p) != 0 {
                continue;
            }
            hit += 1;
            let germfile = if p.n_gens() == 1 {
                let single = artifact_path("c7-id1.germ");
                fs::write(&single, "a = x\n").map_err(|e| e.to_string())?;
                single
            } else if p.n_gens() == 2 {
                identity_two.clone()
            } else {
                identity_three.clone()
            };
            let out = artifact_path(&format!("c7-trivial-{}.json", entry.name));
            let code = run_to_file(
                &[
                    "obstruct",
                    corpus_path(entry.name).to_str().unwrap(),
                    germfile.to_str().unwrap(),
                    "--depth",
                    "3",
                ],
                &out,
            )?;
            ensure(code == 0, format!("{}: exit {code}", entry.name))?;
            let doc = load_artifact(&out)?;
            ensure(
                doc["verdict"]["kind"] == "trivial_representation",
                format!("{}: verdict {}", entry.name, doc["verdict"]["kind"]),
            )?;
        }
        ensure(hit >= 7, format!("only {hit} b1=0 amenable corpus groups"))?;
        Ok(())
    });
}

// --- criterion 8 ------------------------------------------------------

#[test]
fn criterion_8_certificate_replay_and_negative_control() {
    criterion(8, "certificate replay", || {
        // fresh artifacts of all four kinds
        let cert = artifact_path("c8-cert.json");
        run_to_file(
            &["check-lo", corpus_path("q8").to_str().unwrap(), "--subset", "a", "--max-len", "4"],
            &cert,
        )?;
        let report = artifact_path("c8-realization.json");
        run_to_file(
            &[
                "realize",
                corpus_path("z").to_str().unwrap(),
                "--order",
                "lex",
                "--radius",
                "2",
                "--iterates",
                "10",
            ],
            &report,
        )?;
        let germfile = artifact_path("c8.germ");
        fs::write(&germfile, "f = x + s\ng = (1 + s) * x\n").map_err(|e| e.to_string())?;
        let transcript = artifact_path("c8-transcript.json");
        run_to_file(
            &["germ-order", germfile.to_str().unwrap(), "--depth", "3", "--max-len", "3"],
            &transcript,
        )?;
        let shift = artifact_path("c8-shift.germ");
        fs::write(&shift, "a = x + s\n").map_err(|e| e.to_string())?;
        let obstruction = artifact_path("c8-obstruction.json");
        run_to_file(
            &[
                "obstruct",
                corpus_path("zmod3").to_str().unwrap(),
                shift.to_str().unwrap(),
                "--depth",
                "3",
            ],
            &obstruction,
        )?;

        for path in [&cert, &report, &transcript, &obstruction] {
            ensure(
                verify_file(path) == 0,
                format!("{} does not verify", path.display()),
            )?;
        }

        // negative control: flip one meaningful byte in each and verify
        // must fail
        for path in [&cert, &report, &transcript, &obstruction] {
            let original = fs::read_to_string(path).map_err(|e| e.to_string())?;
            let corrupted = corrupt_one_digit(&original)
                .ok_or_else(|| format!("no digit to corrupt in {}", path.display()))?;
            let bad = artifact_path(&format!(
                "corrupt-{}",
                path.file_name().unwrap().to_string_lossy()
            ));
            fs::write(&bad, corrupted).map_err(|e| e.to_string())?;
            let code = verify_file(&bad);
            ensure(
                code == 3,
                format!("corrupted {} verified with exit {code}", path.display()),
            )?;
        }
        Ok(())
    });
}

/// Flips the last digit that sits inside a quoted string. In every
/// artifact kind the trailing quoted digits belong to load-bearing exact
/// values: killer words, orbit rationals, witness points, verdict data.
fn corrupt_one_digit(text: &str) -> Option<String> {
    let bytes = text.as_bytes();
    for i in (1..bytes.len().saturating_sub(1)).rev() {
        if bytes[i].is_ascii_digit() && (bytes[i + 1] == b'"' || bytes[i + 1].is_ascii_digit()) {
            // confirm we are inside a quoted token by scanning left
            let mut j = i;
            while j > 0 && bytes[j - 1] != b'"' && bytes[j - 1] != b'\n' {
                j -= 1;
            }
            if j == 0 || bytes[j - 1] != b'"' {
                continue;
            }
            let replacement = if bytes[i] == b'7' { b'5' } else { b'7' };
            let mut out = bytes.to_vec();
            out[i] = replacement;
            return String::from_utf8(out).ok();
        }
    }
    None
}
