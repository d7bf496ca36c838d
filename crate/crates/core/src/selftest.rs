//! Oracle cross-checks covering the grammar, derivations, decompositions,
//! necklace splitting and the sign-vector formulas. Each check returns a
//! [`CriterionReport`]; [`run_all`] runs them with their standard sizes.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::decompose::{decompose, verify_decomposition, Backend};
use crate::derivation::derive_word;
use crate::grammar_gn::{build_gn, expected_census};
use crate::mcfg::{enumerate_language, verify_tree};
use crate::necklace::{amount, split_collection, split_single, verify_collection_split, verify_single_split, Part};
use crate::oracle;
use crate::tucker::{self, SignVector};
use crate::words::{Word, WordTuple};

/// The canonical G_2 dump.
pub const G2_GOLDEN: &str = include_str!("../tests/golden/g2.txt");

pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    /// Number of instances examined.
    pub checked: usize,
    pub detail: String,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {}. {} ({} checked): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.checked,
            self.detail
        )
    }
}

struct Tally {
    checked: usize,
    failures: usize,
    first: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { checked: 0, failures: 0, first: None }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.first.is_none() {
                self.first = Some(what());
            }
        }
    }

    fn report(self, id: u8, name: &'static str) -> CriterionReport {
        let detail = match &self.first {
            None => "zero failures".to_string(),
            Some(f) => format!("{} failure(s); first: {f}", self.failures),
        };
        CriterionReport { id, name, passed: self.failures == 0, checked: self.checked, detail }
    }
}

/// Enumerated language of G_n versus O_n filtered by length.
pub fn language_equality(cases: &[(usize, usize)]) -> CriterionReport {
    let mut tally = Tally::new();
    for &(n, len) in cases {
        let produced = build_gn(n).and_then(|g| enumerate_language(&g.grammar, len));
        let expected = oracle::on_words(n, len);
        match produced {
            Ok(words) => tally.check(words == expected, || {
                let missing = expected.difference(&words).next();
                let extra = words.difference(&expected).next();
                format!("n={n} L={len}: missing {missing:?}, extra {extra:?}")
            }),
            Err(e) => tally.check(false, || format!("n={n} L={len}: {e}")),
        }
    }
    tally.report(1, "language equality")
}

/// G_2 census and canonical dump against the golden file.
pub fn g2_structure() -> CriterionReport {
    let mut tally = Tally::new();
    match build_gn(2) {
        Ok(g) => {
            let census = g.census();
            tally.check(census == expected_census(2) && census.total() == 31, || format!("census {census:?}"));
            let mut schemas: Vec<String> = g
                .grammar
                .rules()
                .iter()
                .map(|r| match r.id.rsplit_once(':') {
                    Some((shape, _)) if r.id.starts_with("un:") => shape.to_string(),
                    _ => r.id.clone(),
                })
                .collect();
            schemas.dedup();
            tally.check(schemas.len() == 13, || format!("{} rule shapes", schemas.len()));
            let dump = g.grammar.dump(false);
            tally.check(dump == G2_GOLDEN, || "dump differs from the golden file".into());
        }
        Err(e) => tally.check(false, || e.to_string()),
    }
    tally.report(2, "G_2 structure")
}

fn derive_and_replay(w: &Word, n: usize, g: &crate::grammar_gn::GnGrammar) -> Result<(), String> {
    let tree = derive_word(w, n).map_err(|e| e.to_string())?;
    verify_tree(&g.grammar, &tree).map_err(|e| e.to_string())
}

/// Derivation trees for every short word of O_2 and random words of O_3.
pub fn constructive_completeness(seed: u64, exhaustive_len: usize, random: usize, random_len: usize) -> CriterionReport {
    let mut tally = Tally::new();
    let g2 = build_gn(2).expect("G_2");
    for w in oracle::on_words(2, exhaustive_len) {
        let r = derive_and_replay(&w, 2, &g2);
        tally.check(r.is_ok(), || format!("{w}: {}", r.unwrap_err()));
    }
    let g3 = build_gn(3).expect("G_3");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..random {
        let w = oracle::random_on_word(&mut rng, 3, random_len);
        let r = derive_and_replay(&w, 3, &g3);
        tally.check(r.is_ok(), || format!("{w}: {}", r.unwrap_err()));
    }
    tally.report(3, "constructive completeness")
}

fn all_backends(t: &WordTuple, tally: &mut Tally) {
    for backend in Backend::ALL {
        let r = decompose(t, backend);
        let ok = matches!(&r, Ok(d) if verify_decomposition(t, d));
        tally.check(ok, || format!("{t} with {backend}: {r:?}"));
    }
}

/// All three decomposition backends on exhaustive 2-tuples and random 3-tuples.
pub fn decomposition_lemma(seed: u64, lo: usize, hi: usize, random: usize, max_total: usize) -> CriterionReport {
    let mut tally = Tally::new();
    for t in oracle::irreducible_pairs(lo, hi) {
        all_backends(&t, &mut tally);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..random {
        let t = oracle::random_irreducible_tuple(&mut rng, 3, max_total);
        all_backends(&t, &mut tally);
    }
    tally.report(4, "decomposition lemma")
}

/// Every parity-feasible target vector for `x` over `n` types.
pub fn feasible_targets(x: &Word, n: usize) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for m in amount(x.letters(), n).0 {
        let opts: &[i64] = if m.rem_euclid(2) == 0 { &[0] } else { &[-1, 1] };
        out = out.into_iter().flat_map(|p| opts.iter().map(move |&o| [p.clone(), vec![o]].concat())).collect();
    }
    out
}

/// Single-necklace splits for random signed necklaces and all targets.
pub fn necklace_splitting(seed: u64, count: usize, max_m: usize, max_types: usize) -> CriterionReport {
    let mut tally = Tally::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        let n = rng.gen_range(1..=max_types);
        let x = oracle::random_word(&mut rng, n, max_m);
        for d in feasible_targets(&x, n) {
            let r = split_single(&x, n, &d);
            let ok = matches!(&r, Ok(s) if verify_single_split(&x, n, s, &d));
            tally.check(ok, || format!("{x} n={n} d={d:?}: {r:?}"));
        }
    }
    tally.report(5, "necklace splitting")
}

/// Collection splits for random balanced collections, with the parts'
/// amounts recomputed from the returned pieces.
pub fn collection_splitting(seed: u64, count: usize, max_total: usize) -> CriterionReport {
    let mut tally = Tally::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        let n = rng.gen_range(2..=3);
        let t = oracle::random_balanced_tuple(&mut rng, n, max_total);
        let r = split_collection(&t);
        let ok = match &r {
            Ok(split) => {
                let q = |part| {
                    let beads: Vec<_> = split.part_words(&t, part).iter().flat_map(|w| w.letters().to_vec()).collect();
                    amount(&beads, n)
                };
                verify_collection_split(&t, split) && q(Part::A).is_zero() && q(Part::B).is_zero()
            }
            Err(_) => false,
        };
        tally.check(ok, || format!("{t}: {r:?}"));
    }
    tally.report(6, "collection splitting")
}

/// All compositions of `m` into positive parts.
pub fn profiles(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![];
    }
    (0u32..1 << (m - 1))
        .map(|mask| {
            let mut parts = vec![1];
            for b in 0..m - 1 {
                if mask >> b & 1 == 1 {
                    parts.push(1);
                } else {
                    *parts.last_mut().unwrap() += 1;
                }
            }
            parts
        })
        .collect()
}

/// Closed forms against brute force over completions, plus the Fig. 1 instance.
pub fn formula_fidelity(seed: u64, max_m: usize) -> CriterionReport {
    let mut tally = Tally::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for m in 1..=max_m {
        let profs = profiles(m);
        let words: Vec<Word> = if m <= 4 {
            oracle::all_words(2, m).into_iter().filter(|w| w.len() == m).collect()
        } else {
            (0..16)
                .map(|_| loop {
                    let w = oracle::random_word(&mut rng, 3, m);
                    if w.len() == m {
                        break w;
                    }
                })
                .collect()
        };
        let n_words = if m <= 4 { 2 } else { 3 };
        let mut x = SignVector::zeros(m);
        while x.advance() {
            let alt = tucker::alt(&x).ok();
            tally.check(alt == Some(oracle::alt(&x)), || format!("alt {x}"));
            let firsts = oracle::alt_first_letters(&x);
            let sign = tucker::sign_of(&x).ok();
            tally.check(firsts.len() == 1 && sign == firsts.first().copied(), || format!("sign {x}"));
            for p in &profs {
                let h = tucker::h(&x, p).ok();
                tally.check(h == Some(oracle::h(&x, p)), || format!("h {x} {p:?}"));
                let firsts = oracle::malt_first_letters(&x, p);
                let sign = tucker::sign_53(&x, p).ok();
                tally.check(firsts.len() == 1 && sign == firsts.first().copied(), || format!("sign_53 {x} {p:?}"));
                if x.is_full() {
                    let malt = tucker::malt(&x, p).ok();
                    tally.check(malt == Some(oracle::h(&x, p)), || format!("malt {x} {p:?}"));
                }
            }
            for s in &words {
                let u = tucker::unbalance(&x, s, n_words).ok();
                tally.check(u == Some(oracle::unbalance(&x, s, n_words)), || format!("unb {x} {s}"));
            }
        }
    }

    let fig_x: SignVector = "+------+--".parse().expect("vector");
    let fig_t: WordTuple = "a1a2A2a3|A2A3a1|A1A1A2".parse().expect("tuple");
    let malt = tucker::malt(&fig_x, &fig_t.lengths()).ok();
    tally.check(malt == Some(5), || format!("Fig. 1 malt {malt:?}"));
    let decoded = tucker::decode_decomposition(&fig_x, &fig_t).ok().flatten();
    let ok = decoded.as_ref().is_some_and(|d| {
        d.odd().to_string() == "a1||A1" && d.even().to_string() == "a2A2a3|A2A3a1|A1A2"
    });
    tally.check(ok, || format!("Fig. 1 decode {decoded:?}"));
    tally.report(7, "sign-vector formulas")
}

/// Tucker/Ky Fan hypotheses on random small instances; zeros on irreducible
/// instances must decode to valid decompositions.
pub fn kyfan_hypotheses(seed: u64, count: usize, max_m: usize) -> CriterionReport {
    let mut tally = Tally::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut irreducible = 0;
    for k in 0..count {
        // irreducible instances need m >= 4n, so within m <= 9 only n = 2 has them
        let t = if k % 2 == 0 && max_m >= oracle::min_irreducible_total(2) {
            oracle::random_irreducible_tuple(&mut rng, 2, max_m)
        } else {
            let n = if max_m >= 6 { rng.gen_range(2..=3) } else { 2 };
            oracle::random_balanced_tuple(&mut rng, n, max_m)
        };
        let n = t.arity();
        let s = t.concat();
        let m = s.len();
        let profile = t.lengths();
        let r52 = tucker::check_kyfan_hypotheses(m, max_m, |x| tucker::lambda_52(x, &s, n));
        tally.check(matches!(&r52, Ok(r) if r.is_ok_or_zero()), || format!("λ on {t}: {r52:?}"));
        for b in [1i8, -1] {
            let r = tucker::check_kyfan_hypotheses(m, max_m, |x| tucker::lambda_53(b, x, &profile, &s, n));
            tally.check(matches!(&r, Ok(r) if r.is_ok_or_zero()), || format!("λ_{b} on {t}: {r:?}"));
        }
        if t.is_irreducible() {
            irreducible += 1;
            let z = tucker::find_zero_53(&t, max_m);
            let ok = matches!(&z, Ok(z) if verify_decomposition(&t, &z.decomposition));
            tally.check(ok, || format!("zero on {t}: {z:?}"));
        }
    }
    let mut report = tally.report(8, "Ky Fan hypotheses");
    report.detail = format!("{} ({irreducible} irreducible instances)", report.detail);
    report
}

pub fn run_criterion(id: u8, seed: u64) -> Option<CriterionReport> {
    Some(match id {
        1 => language_equality(&[(1, 10), (2, 8), (3, 6)]),
        2 => g2_structure(),
        3 => constructive_completeness(seed, 8, 1000, 14),
        4 => decomposition_lemma(seed, 2, 4, 500, 12),
        5 => necklace_splitting(seed, 500, 18, 3),
        6 => collection_splitting(seed, 500, 16),
        7 => formula_fidelity(seed, 8),
        8 => kyfan_hypotheses(seed, 50, 9),
        _ => return None,
    })
}

pub fn run_all(seed: u64) -> Vec<CriterionReport> {
    (1..=8).filter_map(|id| run_criterion(id, seed)).collect()
}
