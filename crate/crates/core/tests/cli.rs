use std::process::Command;

use mcfl_on::cli::{run, BOUND_ENV};
use mcfl_on::decompose::{verify_decomposition, Decomposition};
use mcfl_on::grammar_gn::build_gn;
use mcfl_on::mcfg::{verify_tree, DerivationTree, Grammar};
use mcfl_on::necklace::{verify_single_split, NecklaceSplit, Part};
use mcfl_on::words::{Word, WordTuple};
use serde_json::Value;

struct Outcome {
    code: i32,
    out: String,
    err: String,
}

fn cli(args: &[&str]) -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("mcfl-on").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Outcome { code, out: String::from_utf8(out).unwrap(), err: String::from_utf8(err).unwrap() }
}

/// `key value` lines as pairs.
fn fields(text: &str) -> Vec<(String, String)> {
    text.lines()
        .map(|l| match l.split_once(' ') {
            Some((k, v)) => (k.to_string(), v.to_string()),
            None => (l.to_string(), String::new()),
        })
        .collect()
}

fn field(text: &str, key: &str) -> String {
    fields(text).into_iter().find(|(k, _)| k == key).unwrap_or_else(|| panic!("no {key} in {text}")).1
}

fn csv(s: &str) -> Vec<usize> {
    s.split(',').filter(|p| !p.is_empty()).map(|p| p.parse().unwrap()).collect()
}

#[test]
fn member_examples() {
    let o = cli(&["member", "--n", "2", "a1a1A2A1A1a2"]);
    assert_eq!((o.code, o.out.as_str()), (0, "true\n"));
    let o = cli(&["member", "--n", "2", "a1"]);
    assert_eq!((o.code, o.out.as_str()), (0, "false\n"));
}

#[test]
fn derive_check_prints_a_valid_tree() {
    let o = cli(&["derive", "--n", "2", "--check", "a1A1"]);
    assert_eq!(o.code, 0, "{}", o.err);
    let tree = DerivationTree::parse(&o.out).unwrap();
    verify_tree(&build_gn(2).unwrap().grammar, &tree).unwrap();
    assert_eq!(tree.conclusion.args.to_string(), "a1A1");
}

#[test]
fn derive_tuple_round_trips() {
    for backend in ["necklace", "brute", "kyfan"] {
        let o = cli(&["derive", "--n", "2", "--tuple", "--backend", backend, "a1A1A2a2|a2A2A1a1"]);
        assert_eq!(o.code, 0, "{}", o.err);
        let tree = DerivationTree::parse(&o.out).unwrap();
        assert_eq!(tree.to_string(), o.out);
        verify_tree(&build_gn(2).unwrap().grammar, &tree).unwrap();
    }
}

#[test]
fn grammar_dump_reparses() {
    for ids in [false, true] {
        let mut args = vec!["grammar", "--n", "3"];
        if ids {
            args.push("--ids");
        }
        let o = cli(&args);
        assert_eq!(o.code, 0);
        let g = Grammar::parse(&o.out).unwrap();
        assert_eq!(g.rules().len(), build_gn(3).unwrap().grammar.rules().len());
        assert_eq!(g.dump(ids), o.out);
    }
    let o = cli(&["grammar", "--n", "2", "--census"]);
    assert_eq!(field(&o.out, "total"), "31");
}

#[test]
fn decompose_output_is_a_decomposition() {
    let t: WordTuple = "a1A1A2a2|a2A2A1a1".parse().unwrap();
    for backend in ["necklace", "brute", "kyfan"] {
        let o = cli(&["decompose", "--backend", backend, "a1A1A2a2|a2A2A1a1"]);
        assert_eq!(o.code, 0, "{}", o.err);
        let k = csv(&field(&o.out, "k"));
        let u: Vec<Word> = field(&o.out, "u").split('|').map(|w| w.parse().unwrap()).collect();
        assert!(verify_decomposition(&t, &Decomposition { k, u }), "{backend}: {}", o.out);
    }
}

#[test]
fn necklace_split_output_meets_target() {
    let x: Word = "a1A2a2a1a1a2".parse().unwrap();
    for target in ["1,1", "-1,1", "1,-1"] {
        let o = cli(&["necklace-split", "--n", "2", "--target", target, "a1A2a2a1a1a2"]);
        assert_eq!(o.code, 0, "{}", o.err);
        let split = NecklaceSplit {
            cuts: csv(&field(&o.out, "cuts")),
            start_part: if field(&o.out, "start") == "A" { Part::A } else { Part::B },
        };
        let d: Vec<i64> = target.split(',').map(|p| p.parse().unwrap()).collect();
        assert!(verify_single_split(&x, 2, &split, &d));
        assert_eq!(field(&o.out, "discrepancy"), target);
    }
    let o = cli(&["necklace-split", "--target", "0", "a1"]);
    assert_eq!(o.code, 1);
    assert!(o.err.starts_with("error: domain:"), "{}", o.err);
}

#[test]
fn collection_split_parts_are_balanced() {
    let o = cli(&["collection-split", "a1a2A1a1|a1A1A1A2"]);
    assert_eq!(o.code, 0, "{}", o.err);
    for part in ["A", "B"] {
        let words: Vec<Word> = field(&o.out, part).split('|').map(|w| w.parse().unwrap()).collect();
        let joined = words.iter().fold(Word::empty(), |acc, w| acc.concat(w));
        assert!(!joined.is_empty() && joined.is_in_on(2).unwrap());
        assert!(words.len() <= 2);
    }
}

#[test]
fn tucker_zero_both_variants() {
    let o = cli(&["tucker-zero", "--variant", "53", "a1A1A2a2|a2A2A1a1"]);
    assert_eq!(o.code, 0, "{}", o.err);
    let o = cli(&["tucker-zero", "--variant", "52", "--n", "2", "a1a2A1a2"]);
    assert_eq!(o.code, 0, "{}", o.err);
}

#[test]
fn enumerate_matches_membership() {
    let o = cli(&["enumerate", "--n", "1", "--max-len", "4"]);
    let words: Vec<&str> = o.out.lines().collect();
    assert_eq!(words.len(), 1 + 2 + 6);
    for w in words {
        assert!(w.parse::<Word>().unwrap().is_in_on(1).unwrap());
    }
}

#[test]
fn json_mirrors_text() {
    for args in [
        vec!["decompose", "a1A1A2a2|a2A2A1a1"],
        vec!["collection-split", "a1A1A2a2|a2A2A1a1"],
        vec!["necklace-split", "a1A1a1"],
        vec!["grammar", "--n", "2", "--census"],
    ] {
        let text = cli(&args);
        let mut json_args = vec!["--format", "json"];
        json_args.extend(&args);
        let json = cli(&json_args);
        assert_eq!((text.code, json.code), (0, 0));
        let record: Value = serde_json::from_str(json.out.trim()).unwrap();
        let obj = record.as_object().unwrap();
        let pairs = fields(&text.out);
        assert_eq!(obj.len(), pairs.len());
        for ((k, v), (jk, jv)) in pairs.iter().zip(obj) {
            assert_eq!(k, jk);
            let shown = match jv {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            assert_eq!(v, &shown);
        }
    }
    let o = cli(&["--format", "json", "enumerate", "--n", "2", "--max-len", "2"]);
    assert_eq!(o.out.lines().count(), 5);
    for line in o.out.lines() {
        let v: Value = serde_json::from_str(line).unwrap();
        assert!(v["word"].is_string());
    }
}

#[test]
fn exit_codes() {
    // domain
    assert_eq!(cli(&["derive", "--n", "2", "a1A2"]).code, 1);
    assert_eq!(cli(&["decompose", "a1a2|A2A1"]).code, 1);
    assert_eq!(cli(&["decompose", "--backend", "brute", "--bound-m", "4", "a1A1A2a2|a2A2A1a1"]).code, 1);
    // usage
    assert_eq!(cli(&["member", "--n", "2", "a1b2"]).code, 2);
    assert_eq!(cli(&["member", "a1"]).code, 2);
    assert_eq!(cli(&["frobnicate"]).code, 2);
    assert_eq!(cli(&["decompose", "--backend", "magic", "a1A1|a1A1"]).code, 2);
    // help is not an error
    assert_eq!(cli(&["--help"]).code, 0);
    for args in [vec!["member", "a1"], vec!["derive", "--n", "2", "a1A2"]] {
        let o = cli(&args);
        assert_eq!(o.err.lines().filter(|l| l.starts_with("error")).count(), 1, "{}", o.err);
    }
}

#[test]
fn selftest_single_criterion() {
    let o = cli(&["selftest", "--criterion", "2"]);
    assert_eq!(o.code, 0, "{}", o.err);
    assert!(o.out.starts_with("[PASS] 2."));
}

fn binary(env: Option<&str>, args: &[&str]) -> std::process::Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_mcfl-on"));
    cmd.args(args).env_remove(BOUND_ENV);
    if let Some(v) = env {
        cmd.env(BOUND_ENV, v);
    }
    cmd.output().unwrap()
}

#[test]
fn bound_precedence() {
    let args = ["decompose", "--backend", "brute", "a1A1A2a2|a2A2A1a1"];
    assert_eq!(binary(None, &args).status.code(), Some(0));
    let low = binary(Some("4"), &args);
    assert_eq!(low.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&low.stderr).contains("bound"));
    let flagged = ["decompose", "--backend", "brute", "--bound-m", "8", "a1A1A2a2|a2A2A1a1"];
    assert_eq!(binary(Some("4"), &flagged).status.code(), Some(0));
    assert_eq!(binary(Some("many"), &args).status.code(), Some(2));
}
