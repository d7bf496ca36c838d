use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mcfl_on::decompose::{brute_feasible, decompose, encode, verify_decomposition, Backend};
use mcfl_on::derivation::{derive_tuple, derive_word};
use mcfl_on::grammar_gn::build_gn;
use mcfl_on::mcfg::{verify_tree, DerivationTree};
use mcfl_on::necklace::{amount, split_collection, split_single, verify_collection_split, verify_single_split, Part};
use mcfl_on::oracle;
use mcfl_on::selftest::{feasible_targets, G2_GOLDEN};
use mcfl_on::tucker::{self, decode_decomposition, SignVector};
use mcfl_on::words::{Letter, Sign, Word, WordTuple};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn sign_vector(max_len: usize) -> impl Strategy<Value = SignVector> {
    prop::collection::vec(-1i8..=1, 1..=max_len)
        .prop_filter("nonzero", |v| v.iter().any(|&e| e != 0))
        .prop_map(SignVector)
}

/// A sign vector with a random composition of its length into `n` parts.
fn profiled(max_len: usize) -> impl Strategy<Value = (SignVector, Vec<usize>)> {
    sign_vector(max_len).prop_flat_map(|x| {
        let m = x.len();
        prop::collection::vec(any::<bool>(), m - 1).prop_map(move |breaks| {
            let mut profile = vec![1];
            for b in breaks {
                if b {
                    profile.push(1);
                } else {
                    *profile.last_mut().unwrap() += 1;
                }
            }
            (x.clone(), profile)
        })
    })
}

proptest! {
    #[test]
    fn word_and_tuple_text_round_trip(seed: u64, n in 1usize..=4) {
        let mut r = rng(seed);
        let w = oracle::random_word(&mut r, n, 12);
        prop_assert_eq!(w.to_string().parse::<Word>().unwrap(), w.clone());
        prop_assert_eq!(w.bar().bar(), w.clone());
        prop_assert_eq!(amount(w.bar().letters(), n).0, amount(w.letters(), n).0.iter().map(|a| -a).collect::<Vec<_>>());
        let t = oracle::random_balanced_tuple(&mut r, n, 2 * n + 8);
        prop_assert_eq!(t.to_string().parse::<WordTuple>().unwrap(), t);
    }

    #[test]
    fn derivation_trees_replay_and_reparse(seed: u64, n in 1usize..=3) {
        let w = oracle::random_on_word(&mut rng(seed), n, 12);
        let tree = derive_word(&w, n).unwrap();
        prop_assert!(verify_tree(&build_gn(n).unwrap().grammar, &tree).is_ok());
        let text = tree.to_string();
        prop_assert_eq!(DerivationTree::parse(&text).unwrap(), tree);
    }

    #[test]
    fn balanced_tuples_derive(seed: u64, n in 2usize..=3) {
        let t = oracle::random_balanced_tuple(&mut rng(seed), n, 14);
        let tree = derive_tuple(&t).unwrap();
        prop_assert!(verify_tree(&build_gn(n).unwrap().grammar, &tree).is_ok());
        prop_assert_eq!(&tree.conclusion.args, &t);
    }

    #[test]
    fn backends_agree_on_validity(seed: u64) {
        let t = oracle::random_irreducible_tuple(&mut rng(seed), 2, 10);
        for backend in Backend::ALL {
            let d = decompose(&t, backend).unwrap();
            prop_assert!(verify_decomposition(&t, &d));
            let x = encode(&t, &d).unwrap();
            prop_assert!(brute_feasible(&x, &t.concat(), &t.lengths(), 2).unwrap());
        }
    }

    #[test]
    fn brute_feasibility_matches_verifier(seed: u64, mask: u16) {
        let t = oracle::random_irreducible_tuple(&mut rng(seed), 2, 10);
        let m = t.total_len();
        let x = SignVector((0..m).map(|p| if mask >> p & 1 == 1 { -1 } else { 1 }).collect());
        let feasible = brute_feasible(&x, &t.concat(), &t.lengths(), 2).unwrap();
        let decoded = decode_decomposition(&x, &t).unwrap();
        let valid = decoded.as_ref().is_some_and(|d| verify_decomposition(&t, d));
        prop_assert_eq!(feasible, valid);
        if let Some(d) = decoded.filter(|_| valid) {
            // u_1 takes the first run whatever its sign
            let back = encode(&t, &d).unwrap();
            prop_assert!(back == x || back == x.neg());
        }
    }

    #[test]
    fn single_splits_hit_every_feasible_target(seed: u64, n in 1usize..=3) {
        let x = oracle::random_word(&mut rng(seed), n, 14);
        for target in feasible_targets(&x, n) {
            let split = split_single(&x, n, &target).unwrap();
            prop_assert!(verify_single_split(&x, n, &split, &target));
        }
    }

    #[test]
    fn collection_splits_are_balanced(seed: u64, n in 2usize..=3) {
        let t = oracle::random_balanced_tuple(&mut rng(seed), n, 6 * n);
        let split = split_collection(&t).unwrap();
        prop_assert!(verify_collection_split(&t, &split));
        for part in [Part::A, Part::B] {
            let beads: Vec<_> = split.subnecklaces(&t, part).iter().flat_map(|w| w.letters().to_vec()).collect();
            prop_assert!(!beads.is_empty());
            prop_assert!(amount(&beads, n).is_zero());
        }
    }

    #[test]
    fn alt_and_h_are_antipodal_invariant((x, profile) in profiled(9)) {
        prop_assert_eq!(tucker::alt(&x.neg()).unwrap(), tucker::alt(&x).unwrap());
        prop_assert_eq!(tucker::h(&x.neg(), &profile).unwrap(), tucker::h(&x, &profile).unwrap());
        prop_assert_eq!(tucker::h(&x, &profile).unwrap(), oracle::h(&x, &profile));
    }

    #[test]
    fn h_is_antitone((x, profile) in profiled(9), fill: u16) {
        // y fills some zeros of x, so its completions are a subset
        let y = SignVector(
            x.0.iter().enumerate().map(|(p, &e)| if e == 0 && fill >> p & 1 == 1 { 1 } else { e }).collect(),
        );
        prop_assert!(x.preceq(&y));
        prop_assert!(tucker::h(&y, &profile).unwrap() <= tucker::h(&x, &profile).unwrap());
        prop_assert!(tucker::alt(&y).unwrap() <= tucker::alt(&x).unwrap());
    }

    #[test]
    fn malt_is_bounded((x, profile) in profiled(12)) {
        let y = tucker::h_completion(&x, &profile).unwrap();
        prop_assert!(y.is_full());
        prop_assert!(tucker::malt(&y, &profile).unwrap() <= x.len() + profile.len() - 2);
    }

    #[test]
    fn labels_are_antisymmetric(seed: u64, (x, profile) in profiled(10)) {
        let n = profile.len();
        let mut r = rng(seed);
        let s: Word = (0..x.len())
            .map(|_| Letter::new(r.gen_range(1..=n), if r.gen_bool(0.5) { Sign::Pos } else { Sign::Neg }))
            .collect();
        let l52 = tucker::lambda_52(&x, &s, n).unwrap();
        prop_assert_eq!(tucker::lambda_52(&x.neg(), &s, n).unwrap(), -l52);
        prop_assert!(l52.unsigned_abs() as usize <= x.len() + n);
        for b in [1i8, -1] {
            let l = tucker::lambda_53(b, &x, &profile, &s, n).unwrap();
            prop_assert_eq!(tucker::lambda_53(b, &x.neg(), &profile, &s, n).unwrap(), -l);
        }
    }
}

#[test]
fn every_splitting_of_short_words_derives() {
    let g = build_gn(2).unwrap();
    let mut checked = 0;
    for w in oracle::on_words(2, 8) {
        for t in oracle::all_splittings(&w, 2) {
            let tree = derive_tuple(&t).unwrap_or_else(|e| panic!("{t}: {e}"));
            verify_tree(&g.grammar, &tree).unwrap_or_else(|e| panic!("{t}: {e}"));
            checked += 1;
        }
    }
    assert!(checked > 10_000);
}

#[test]
fn g2_dump_matches_golden() {
    assert_eq!(build_gn(2).unwrap().grammar.dump(false), G2_GOLDEN);
}

