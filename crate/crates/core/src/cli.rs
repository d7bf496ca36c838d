//! Command-line front end.
//!
//! Text output is a sequence of `key value` lines (or a raw listing for
//! `grammar`, `derive` and `enumerate`); `--format json` prints the same
//! fields as one JSON object per line.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::decompose::{decompose_with_bound, Backend};
use crate::derivation::{derive_tuple_with, derive_word_with};
use crate::error::{Error, ErrorKind, Result};
use crate::grammar_gn::build_gn;
use crate::mcfg::{enumerate_language, verify_tree};
use crate::necklace::{default_target, split_collection, split_single, CollectionSplit, NecklaceSplit, Part};
use crate::selftest;
use crate::tucker::{self, DEFAULT_SCAN_BOUND};
use crate::words::{Word, WordTuple};

pub const BOUND_ENV: &str = "MCFL_ON_BOUND_M";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    #[value(name = "52")]
    Necklace,
    #[value(name = "53")]
    Tuple,
}

#[derive(Debug, Parser)]
#[command(name = "mcfl-on", version, about = "MCFGs for the word problem of Z^n, necklace splitting and Tucker-lemma searches")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the rules of G_n.
    Grammar {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        /// Prefix every rule with its id.
        #[arg(long)]
        ids: bool,
        /// Print rule counts per family instead of the rules.
        #[arg(long)]
        census: bool,
    },
    /// Decide membership in O_n.
    Member {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        word: String,
    },
    /// Print a G_n derivation tree for a word (or, with --tuple, a tuple).
    Derive {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long)]
        tuple: bool,
        /// Replay the tree through the rule checker.
        #[arg(long)]
        check: bool,
        #[arg(long, default_value = "necklace")]
        backend: Backend,
        #[arg(long)]
        bound_m: Option<usize>,
        input: String,
    },
    /// Split an irreducible tuple into interleaved balanced pieces.
    Decompose {
        #[arg(long, default_value = "necklace")]
        backend: Backend,
        #[arg(long)]
        bound_m: Option<usize>,
        tuple: String,
    },
    /// Split one signed necklace with at most n cuts.
    NecklaceSplit {
        /// Number of bead types (default: largest type in the word).
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: Option<u32>,
        /// Required amount of A minus amount of B per type, e.g. 1,0,-1.
        #[arg(long, allow_hyphen_values = true)]
        target: Option<String>,
        word: String,
    },
    /// Split a balanced collection of n necklaces with at most n cuts.
    CollectionSplit { tuple: String },
    /// Find the first zero of a Tucker labeling and decode it.
    TuckerZero {
        #[arg(long, value_enum)]
        variant: Variant,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: Option<u32>,
        #[arg(long, allow_hyphen_values = true)]
        target: Option<String>,
        #[arg(long)]
        bound_m: Option<usize>,
        input: String,
    },
    /// List the words of L(G_n) up to a length.
    Enumerate {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long)]
        max_len: usize,
    },
    /// Run the oracle cross-check suite.
    Selftest {
        #[arg(long, default_value_t = selftest::DEFAULT_SEED)]
        seed: u64,
        /// Run a single check (1-8).
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=8))]
        criterion: Option<u8>,
    },
}

/// Outcome of a command: text for humans, JSON records for scripts, and
/// whether the run counts as a failure of the library's own checks.
struct Output {
    text: String,
    records: Vec<Value>,
    internal_failure: bool,
}

impl Output {
    fn new(text: String, record: Value) -> Self {
        Output { text, records: vec![record], internal_failure: false }
    }

    /// `key value` lines mirrored into one JSON object.
    fn fields(fields: Vec<(&str, Value)>) -> Self {
        let mut text = String::new();
        let mut obj = serde_json::Map::new();
        for (k, v) in fields {
            let shown = match &v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            text.push_str(k);
            if !shown.is_empty() {
                text.push(' ');
                text.push_str(&shown);
            }
            text.push('\n');
            obj.insert(k.to_string(), v);
        }
        Output::new(text, Value::Object(obj))
    }
}

fn resolve_bound(flag: Option<usize>) -> Result<usize> {
    let bound = match flag {
        Some(b) => b,
        None => match std::env::var(BOUND_ENV) {
            Ok(v) => v.trim().parse().map_err(|_| Error::Parse(format!("{BOUND_ENV}={v:?} is not a number")))?,
            Err(_) => DEFAULT_SCAN_BOUND,
        },
    };
    if bound == 0 {
        return Err(Error::Parse("scan bound must be at least 1".into()));
    }
    Ok(bound)
}

fn parse_target(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| p.trim().parse().map_err(|_| Error::Parse(format!("bad target entry {p:?}"))))
        .collect()
}

fn words_field(words: &[Word]) -> Value {
    Value::String(words.iter().map(Word::to_string).collect::<Vec<_>>().join("|"))
}

fn list(values: &[usize]) -> Value {
    Value::String(values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
}

fn single_split_fields(x: &Word, n: usize, split: &NecklaceSplit) -> Vec<(&'static str, Value)> {
    vec![
        ("cuts", list(&split.cuts)),
        ("start", json!(split.start_part.to_string())),
        ("A", words_field(&split.part_words(x, Part::A))),
        ("B", words_field(&split.part_words(x, Part::B))),
        ("discrepancy", json!(split.discrepancy(x, n).to_string())),
    ]
}

fn collection_fields(t: &WordTuple, split: &CollectionSplit) -> Vec<(&'static str, Value)> {
    let pieces: Vec<String> = split
        .pieces
        .iter()
        .map(|p| format!("{}:{}-{}:{}", p.necklace + 1, p.start, p.end, p.part))
        .collect();
    let cuts: Vec<String> = split.cuts().iter().map(|(j, g)| format!("{}:{g}", j + 1)).collect();
    vec![
        ("case", json!(split.case.to_string())),
        ("cuts", json!(cuts.join(","))),
        ("pieces", json!(pieces.join(","))),
        ("A", words_field(&split.subnecklaces(t, Part::A))),
        ("B", words_field(&split.subnecklaces(t, Part::B))),
    ]
}

fn decomposition_fields(d: &crate::decompose::Decomposition) -> Vec<(&'static str, Value)> {
    vec![
        ("k", list(&d.k)),
        ("u", words_field(&d.u)),
        ("odd", json!(d.odd().to_string())),
        ("even", json!(d.even().to_string())),
    ]
}

fn types_of(w: &Word, n: Option<u32>) -> usize {
    n.map(|n| n as usize).unwrap_or_else(|| w.max_type().max(1))
}

fn execute(command: &Command) -> Result<Output> {
    match command {
        Command::Grammar { n, ids, census } => {
            let g = build_gn(*n as usize)?;
            if *census {
                let c = g.census();
                Ok(Output::fields(vec![
                    ("init", json!(c.init)),
                    ("binary", json!(c.binary)),
                    ("unary", json!(c.unary)),
                    ("empty", json!(c.empty)),
                    ("total", json!(c.total())),
                ]))
            } else {
                let text = g.grammar.dump(*ids);
                let rules: Vec<Value> = g
                    .grammar
                    .rules()
                    .iter()
                    .map(|r| if *ids { json!({"id": r.id, "rule": r.to_string()}) } else { json!({"rule": r.to_string()}) })
                    .collect();
                Ok(Output { text, records: rules, internal_failure: false })
            }
        }
        Command::Member { n, word } => {
            let w: Word = word.parse()?;
            let member = w.is_in_on(*n as usize)?;
            Ok(Output::new(format!("{member}\n"), json!({ "member": member })))
        }
        Command::Derive { n, tuple, check, backend, bound_m, input } => {
            let n = *n as usize;
            let bound = resolve_bound(*bound_m)?;
            let tree = if *tuple {
                let t: WordTuple = input.parse()?;
                if t.arity() != n {
                    return Err(Error::Parse(format!("tuple has {} components, expected {n}", t.arity())));
                }
                derive_tuple_with(&t, *backend, bound)?
            } else {
                derive_word_with(&input.parse()?, n, *backend, bound)?
            };
            if *check {
                let g = build_gn(n)?;
                verify_tree(&g.grammar, &tree).map_err(|e| Error::Internal(format!("derivation failed replay: {e}")))?;
            }
            Ok(Output::new(tree.to_string(), json!({ "tree": tree.to_string() })))
        }
        Command::Decompose { backend, bound_m, tuple } => {
            let t: WordTuple = tuple.parse()?;
            let d = decompose_with_bound(&t, *backend, resolve_bound(*bound_m)?)?;
            let mut fields = vec![("backend", json!(backend.to_string()))];
            fields.extend(decomposition_fields(&d));
            Ok(Output::fields(fields))
        }
        Command::NecklaceSplit { n, target, word } => {
            let x: Word = word.parse()?;
            let n = types_of(&x, *n);
            let target = match target {
                Some(t) => parse_target(t)?,
                None => default_target(&x, n),
            };
            let split = split_single(&x, n, &target)?;
            Ok(Output::fields(single_split_fields(&x, n, &split)))
        }
        Command::CollectionSplit { tuple } => {
            let t: WordTuple = tuple.parse()?;
            let split = split_collection(&t)?;
            Ok(Output::fields(collection_fields(&t, &split)))
        }
        Command::TuckerZero { variant, n, target, bound_m, input } => {
            let bound = resolve_bound(*bound_m)?;
            match variant {
                Variant::Necklace => {
                    let s: Word = input.parse()?;
                    let n = types_of(&s, *n);
                    let target = match target {
                        Some(t) => parse_target(t)?,
                        None => default_target(&s, n),
                    };
                    let z = tucker::find_zero_52(&s, n, &target, bound)?;
                    let mut fields = vec![("x", json!(z.x.to_string())), ("completion", json!(z.completion.to_string()))];
                    fields.extend(single_split_fields(&s, n, &z.split));
                    Ok(Output::fields(fields))
                }
                Variant::Tuple => {
                    let t: WordTuple = input.parse()?;
                    let z = tucker::find_zero_53(&t, bound)?;
                    let mut fields = vec![("x", json!(z.x.to_string())), ("completion", json!(z.completion.to_string()))];
                    fields.extend(decomposition_fields(&z.decomposition));
                    Ok(Output::fields(fields))
                }
            }
        }
        Command::Enumerate { n, max_len } => {
            let g = build_gn(*n as usize)?;
            let words = enumerate_language(&g.grammar, *max_len)?;
            let mut sorted: Vec<&Word> = words.iter().collect();
            sorted.sort_by(|a, b| (a.len(), *a).cmp(&(b.len(), *b)));
            let text: String = sorted.iter().map(|w| format!("{w}\n")).collect();
            let records = sorted.iter().map(|w| json!({ "word": w.to_string() })).collect();
            Ok(Output { text, records, internal_failure: false })
        }
        Command::Selftest { seed, criterion } => {
            let reports = match criterion {
                Some(id) => selftest::run_criterion(*id, *seed).into_iter().collect(),
                None => selftest::run_all(*seed),
            };
            let text: String = reports.iter().map(|r| format!("{r}\n")).collect();
            let records = reports.iter().map(|r| serde_json::to_value(r).expect("serializable")).collect();
            Ok(Output { text, records, internal_failure: reports.iter().any(|r| !r.passed) })
        }
    }
}

pub fn exit_code(kind: ErrorKind) -> i32 {
    match kind {
        ErrorKind::Domain => 1,
        ErrorKind::Usage => 2,
        ErrorKind::Internal => 3,
    }
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(output) => {
            let written = match cli.format {
                Format::Text => write!(out, "{}", output.text),
                Format::Json => output.records.iter().try_for_each(|r| writeln!(out, "{r}")),
            };
            if written.is_err() {
                return 3;
            }
            if output.internal_failure {
                let _ = writeln!(err, "error: internal: check failed");
                3
            } else {
                0
            }
        }
        Err(e) => {
            let kind = match e.kind() {
                ErrorKind::Domain => "domain",
                ErrorKind::Usage => "usage",
                ErrorKind::Internal => "internal",
            };
            let _ = writeln!(err, "error: {kind}: {e}");
            exit_code(e.kind())
        }
    }
}
