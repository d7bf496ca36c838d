//! Brute-force references and random instance generators used to cross-check
//! the closed forms and constructions.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::tucker::SignVector;
use crate::words::{Letter, Sign, Word, WordTuple};

/// Every fully signed `y` with `x ⪯ y`.
pub fn completions(x: &SignVector) -> Vec<SignVector> {
    let zeros: Vec<usize> = (0..x.len()).filter(|&p| x.0[p] == 0).collect();
    (0u64..1 << zeros.len())
        .map(|mask| {
            let mut y = x.0.clone();
            for (b, &p) in zeros.iter().enumerate() {
                y[p] = if mask >> b & 1 == 1 { -1 } else { 1 };
            }
            SignVector(y)
        })
        .collect()
}

fn full_alt(y: &SignVector) -> usize {
    y.0.windows(2).filter(|w| w[0] != w[1]).count()
}

fn full_malt(y: &SignVector, profile: &[usize]) -> usize {
    let mut boundaries = BTreeSet::new();
    let mut acc = 0;
    for &l in &profile[..profile.len() - 1] {
        acc += l;
        boundaries.insert(acc);
    }
    (1..y.len())
        .map(|p| match (boundaries.contains(&p), y.0[p - 1] == y.0[p]) {
            (true, true) => 2,
            (_, false) => 1,
            (false, true) => 0,
        })
        .sum()
}

/// Number of sign changes maximized over completions.
pub fn alt(x: &SignVector) -> usize {
    completions(x).iter().map(full_alt).max().unwrap_or(0)
}

/// Weighted alternations maximized over completions.
pub fn h(x: &SignVector, profile: &[usize]) -> usize {
    completions(x).iter().map(|y| full_malt(y, profile)).max().unwrap_or(0)
}

/// Distinct first letters among the maximizers of `score`.
fn first_letters_of_maximizers(x: &SignVector, score: impl Fn(&SignVector) -> usize) -> BTreeSet<i8> {
    let all = completions(x);
    let best = all.iter().map(&score).max().unwrap_or(0);
    all.iter().filter(|y| score(y) == best).map(|y| y.0[0]).collect()
}

pub fn alt_first_letters(x: &SignVector) -> BTreeSet<i8> {
    first_letters_of_maximizers(x, full_alt)
}

pub fn malt_first_letters(x: &SignVector, profile: &[usize]) -> BTreeSet<i8> {
    first_letters_of_maximizers(x, |y| full_malt(y, profile))
}

/// `E_{κ,i}(y)`: signed amount of type `i` under positions signed `κ`.
pub fn e(y: &SignVector, s: &Word, kappa: i8, i: usize) -> i64 {
    y.0.iter()
        .zip(s.letters())
        .filter(|(&v, l)| v == kappa && l.index == i)
        .map(|(_, l)| l.value())
        .sum()
}

/// The unbalance label straight from its definition.
pub fn unbalance(x: &SignVector, s: &Word, n: usize) -> i64 {
    let all = completions(x);
    for i in 1..=n {
        for kappa in [1i8, -1] {
            if all.iter().all(|y| e(y, s, kappa, i) > e(y, s, -kappa, i)) {
                return i64::from(kappa) * i as i64;
            }
        }
    }
    0
}

/// All words over `Σ_n` of length at most `max_len`.
pub fn all_words(n: usize, max_len: usize) -> Vec<Word> {
    let alphabet = Letter::alphabet(n);
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| alphabet.iter().map(move |&a| w.concat(&Word::new(vec![a]))))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Members of O_n of length at most `max_len`, by filtering all words.
pub fn on_words(n: usize, max_len: usize) -> BTreeSet<Word> {
    all_words(n, max_len).into_iter().filter(|w| w.is_in_on(n).unwrap_or(false)).collect()
}

/// A random member of O_n of even length at most `max_len`.
pub fn random_on_word<R: Rng>(rng: &mut R, n: usize, max_len: usize) -> Word {
    let pairs = rng.gen_range(0..=max_len / 2);
    random_on_word_with_pairs(rng, n, pairs)
}

fn random_on_word_with_pairs<R: Rng>(rng: &mut R, n: usize, pairs: usize) -> Word {
    let mut letters = Vec::with_capacity(2 * pairs);
    for _ in 0..pairs {
        let i = rng.gen_range(1..=n);
        letters.push(Letter::pos(i));
        letters.push(Letter::neg(i));
    }
    letters.shuffle(rng);
    Word::new(letters)
}

/// A random word over `Σ_n` of length at most `max_len`.
pub fn random_word<R: Rng>(rng: &mut R, n: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| Letter::new(rng.gen_range(1..=n), if rng.gen_bool(0.5) { Sign::Pos } else { Sign::Neg }))
        .collect()
}

/// A random `n`-tuple with balanced concatenation and every component of
/// length at least 2, total length between `2n` and `max_total`.
pub fn random_balanced_tuple<R: Rng>(rng: &mut R, n: usize, max_total: usize) -> WordTuple {
    random_balanced_tuple_between(rng, n, 2 * n, max_total)
}

fn random_balanced_tuple_between<R: Rng>(rng: &mut R, n: usize, min_total: usize, max_total: usize) -> WordTuple {
    assert!(max_total >= min_total.max(2 * n), "max_total too small for {n} components of length 2");
    let pairs = rng.gen_range(min_total.max(2 * n).div_ceil(2)..=max_total / 2);
    let w = random_on_word_with_pairs(rng, n, pairs);
    // choose n − 1 cut points leaving at least two letters per component
    let slack = w.len() - 2 * n;
    let mut extra: Vec<usize> = (0..n - 1).map(|_| rng.gen_range(0..=slack)).collect();
    extra.sort_unstable();
    let mut cuts = Vec::with_capacity(n + 1);
    cuts.push(0);
    for (j, e) in extra.iter().enumerate() {
        cuts.push(2 * (j + 1) + e);
    }
    cuts.push(w.len());
    WordTuple::new(cuts.windows(2).map(|c| w.slice(c[0], c[1])).collect())
}

/// Smallest total length of an irreducible `n`-tuple with components of
/// length at least 2: the `2n` endpoints need `2n` distinct compatible pairs.
pub fn min_irreducible_total(n: usize) -> usize {
    4 * n
}

/// Rejection-samples an irreducible balanced tuple.
pub fn random_irreducible_tuple<R: Rng>(rng: &mut R, n: usize, max_total: usize) -> WordTuple {
    assert!(max_total >= min_irreducible_total(n), "no irreducible {n}-tuple has total length <= {max_total}");
    loop {
        let t = random_balanced_tuple_between(rng, n, min_irreducible_total(n), max_total);
        if t.is_irreducible() {
            return t;
        }
    }
}

/// Every irreducible 2-tuple with component lengths in `lo..=hi` and balanced
/// concatenation.
pub fn irreducible_pairs(lo: usize, hi: usize) -> Vec<WordTuple> {
    let mut by_len: Vec<Vec<Word>> = vec![Vec::new(); hi + 1];
    for w in all_words(2, hi) {
        if w.len() >= lo {
            by_len[w.len()].push(w);
        }
    }
    let mut out = Vec::new();
    for l1 in lo..=hi {
        for l2 in lo..=hi {
            for a in &by_len[l1] {
                for b in &by_len[l2] {
                    let t = WordTuple::new(vec![a.clone(), b.clone()]);
                    if t.concat().is_in_on(2).unwrap_or(false) && t.is_irreducible() {
                        out.push(t);
                    }
                }
            }
        }
    }
    out
}

/// Every way to cut `w` into `n` consecutive (possibly empty) components.
pub fn all_splittings(w: &Word, n: usize) -> Vec<WordTuple> {
    fn go(w: &Word, start: usize, left: usize, acc: &mut Vec<Word>, out: &mut Vec<WordTuple>) {
        if left == 1 {
            acc.push(w.slice(start, w.len()));
            out.push(WordTuple::new(acc.clone()));
            acc.pop();
            return;
        }
        for end in start..=w.len() {
            acc.push(w.slice(start, end));
            go(w, end, left - 1, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(w, 0, n, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn spec_examples() {
        let x: SignVector = "+0+".parse().unwrap();
        assert_eq!(completions(&x).len(), 2);
        assert_eq!(alt(&x), 2);
        let x: SignVector = "0+0".parse().unwrap();
        assert_eq!(alt_first_letters(&x), BTreeSet::from([-1]));
        let s: Word = "a1a1".parse().unwrap();
        assert_eq!(unbalance(&"+0".parse().unwrap(), &s, 1), 0);
    }

    #[test]
    fn on_word_counts() {
        // central binomial coefficients for n = 1
        let counts: Vec<usize> =
            (0..=4).map(|k| on_words(1, 2 * k).iter().filter(|w| w.len() == 2 * k).count()).collect();
        assert_eq!(counts, vec![1, 2, 6, 20, 70]);
        // Σ_i C(4,2)… for n = 2, length 2: a1A1, A1a1, a2A2, A2a2
        assert_eq!(on_words(2, 2).len(), 5);
    }

    #[test]
    fn generators_respect_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let t = random_balanced_tuple(&mut rng, 3, 12);
            assert_eq!(t.arity(), 3);
            assert!(t.total_len() <= 12);
            assert!(t.components().iter().all(|c| c.len() >= 2));
            assert!(t.concat().is_in_on(3).unwrap());
            let w = random_on_word(&mut rng, 3, 14);
            assert!(w.is_in_on(3).unwrap() && w.len() <= 14);
        }
        assert_eq!(all_splittings(&"a1A1".parse().unwrap(), 2).len(), 3);
    }
}
