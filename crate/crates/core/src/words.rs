//! Letters of the alphabet `Σ_n`, words, word tuples and the language `O_n`.
//!
//! Text format: a positive letter `a_k` is written `a<k>`, its bar `ā_k` is
//! written `A<k>`. Words are concatenations of letter tokens (whitespace is
//! ignored). Tuples separate components with `|`; an empty component is the
//! empty string between separators.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }
}

/// A letter `a_i` (positive) or `ā_i` (negative). Types are 1-based.
///
/// Ordering is by type first, positive before negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub index: usize,
    pub sign: Sign,
}

impl Letter {
    pub fn new(index: usize, sign: Sign) -> Self {
        assert!(index >= 1, "letter types are 1-based");
        Letter { index, sign }
    }

    pub fn pos(index: usize) -> Self {
        Letter::new(index, Sign::Pos)
    }

    pub fn neg(index: usize) -> Self {
        Letter::new(index, Sign::Neg)
    }

    pub fn bar(self) -> Self {
        Letter { index: self.index, sign: self.sign.flip() }
    }

    /// `+1` for `a_i`, `-1` for `ā_i`.
    pub fn value(self) -> i64 {
        self.sign.value()
    }

    pub fn is_compatible(self, other: Letter) -> bool {
        self.bar() == other
    }

    /// All `2n` letters of `Σ_n` in canonical order `a1 A1 a2 A2 …`.
    pub fn alphabet(n: usize) -> Vec<Letter> {
        (1..=n).flat_map(|i| [Letter::pos(i), Letter::neg(i)]).collect()
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Pos => write!(f, "a{}", self.index),
            Sign::Neg => write!(f, "A{}", self.index),
        }
    }
}

impl FromStr for Letter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let word: Word = s.parse()?;
        match word.letters() {
            [l] => Ok(*l),
            _ => Err(Error::Parse(format!("expected a single letter, got {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    /// `|w|_c`.
    pub fn count(&self, c: Letter) -> usize {
        self.0.iter().filter(|&&l| l == c).count()
    }

    pub fn bar(&self) -> Word {
        Word(self.0.iter().map(|l| l.bar()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    /// Largest letter type occurring in the word, 0 for `ε`.
    pub fn max_type(&self) -> usize {
        self.0.iter().map(|l| l.index).max().unwrap_or(0)
    }

    /// Membership in `O_n`: equally many `a_i` and `ā_i` for every `i ≤ n`.
    pub fn is_in_on(&self, n: usize) -> Result<bool> {
        check_types(self, n)?;
        let mut balance = vec![0i64; n + 1];
        for l in &self.0 {
            balance[l.index] += l.value();
        }
        Ok(balance.iter().all(|&b| b == 0))
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        let mut chars = s.chars().filter(|c| !c.is_whitespace()).peekable();
        while let Some(c) = chars.next() {
            let sign = match c {
                'a' => Sign::Pos,
                'A' => Sign::Neg,
                _ => return Err(Error::Parse(format!("unexpected character {c:?} in word {s:?}"))),
            };
            let mut digits = String::new();
            while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                digits.push(*d);
                chars.next();
            }
            let index: usize = digits
                .parse()
                .map_err(|_| Error::Parse(format!("letter without type index in {s:?}")))?;
            if index == 0 {
                return Err(Error::Parse(format!("letter type 0 in {s:?}; types start at 1")));
            }
            letters.push(Letter { index, sign });
        }
        Ok(Word(letters))
    }
}

impl From<Word> for String {
    fn from(w: Word) -> String {
        w.to_string()
    }
}

impl TryFrom<String> for Word {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

pub(crate) fn check_types(w: &Word, n: usize) -> Result<()> {
    match w.letters().iter().find(|l| l.index > n) {
        Some(l) => Err(Error::Malformed(format!("letter {l} has type above n = {n}"))),
        None => Ok(()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn tag(self) -> &'static str {
        match self {
            Side::Left => "L",
            Side::Right => "R",
        }
    }
}

/// One endpoint of a nonempty tuple component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Endpoint {
    pub component: usize,
    pub side: Side,
    pub letter: Letter,
}

/// An ordered tuple `(s_1, …, s_n)` of words; components may be empty.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct WordTuple(Vec<Word>);

impl WordTuple {
    pub fn new(components: Vec<Word>) -> Self {
        WordTuple(components)
    }

    pub fn empty(arity: usize) -> Self {
        WordTuple(vec![Word::empty(); arity])
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[Word] {
        &self.0
    }

    pub fn into_components(self) -> Vec<Word> {
        self.0
    }

    pub fn component(&self, j: usize) -> &Word {
        &self.0[j]
    }

    pub fn total_len(&self) -> usize {
        self.0.iter().map(Word::len).sum()
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.0.iter().map(Word::len).collect()
    }

    pub fn empty_count(&self) -> usize {
        self.0.iter().filter(|w| w.is_empty()).count()
    }

    pub fn concat(&self) -> Word {
        self.0.iter().flat_map(|w| w.letters().iter().copied()).collect()
    }

    /// Endpoints in scan order: component index, then left before right.
    /// A length-1 component yields its letter once per side.
    pub fn endpoint_list(&self) -> Vec<Endpoint> {
        let mut out = Vec::new();
        for (j, w) in self.0.iter().enumerate() {
            if let (Some(first), Some(last)) = (w.first(), w.last()) {
                out.push(Endpoint { component: j, side: Side::Left, letter: first });
                out.push(Endpoint { component: j, side: Side::Right, letter: last });
            }
        }
        out
    }

    /// Multiset of endpoint letters.
    pub fn endpoints(&self) -> Vec<Letter> {
        self.endpoint_list().into_iter().map(|e| e.letter).collect()
    }

    /// No compatible pair `α, ᾱ` among the endpoints.
    pub fn is_irreducible(&self) -> bool {
        let ends = self.endpoints();
        !ends.iter().any(|&a| ends.contains(&a.bar()))
    }
}

impl From<Vec<Word>> for WordTuple {
    fn from(v: Vec<Word>) -> Self {
        WordTuple(v)
    }
}

impl fmt::Display for WordTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, w) in self.0.iter().enumerate() {
            if j > 0 {
                f.write_str("|")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

impl FromStr for WordTuple {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split('|').map(str::parse).collect::<Result<Vec<Word>>>().map(WordTuple)
    }
}

impl From<WordTuple> for String {
    fn from(t: WordTuple) -> String {
        t.to_string()
    }
}

impl TryFrom<String> for WordTuple {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn t(s: &str) -> WordTuple {
        s.parse().unwrap()
    }

    #[test]
    fn membership() {
        assert!(w("").is_in_on(1).unwrap());
        assert!(w("a1A1").is_in_on(1).unwrap());
        assert!(!w("a1a1").is_in_on(1).unwrap());
        assert!(w("a1a1A2A1A1a2").is_in_on(2).unwrap());
        assert!(matches!(w("a3").is_in_on(2), Err(Error::Malformed(_))));
    }

    #[test]
    fn bar_examples() {
        assert_eq!(w("").bar(), w(""));
        assert_eq!(w("a1A2").bar(), w("A1a2"));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(w(" a1 A12 a3 ").letters(), &[Letter::pos(1), Letter::neg(12), Letter::pos(3)]);
        assert!("a0".parse::<Word>().is_err());
        assert!("a".parse::<Word>().is_err());
        assert!("b1".parse::<Word>().is_err());
        assert_eq!(t("a1||A1").lengths(), vec![1, 0, 1]);
        assert_eq!(t("").arity(), 1);
    }

    #[test]
    fn endpoint_examples() {
        assert!(t("|").endpoints().is_empty());
        assert_eq!(
            t("a1A1A2a2|a2A2A1a1").endpoints(),
            vec![Letter::pos(1), Letter::pos(2), Letter::pos(2), Letter::pos(1)]
        );
        assert_eq!(t("a1").endpoints(), vec![Letter::pos(1), Letter::pos(1)]);
    }

    #[test]
    fn irreducibility_examples() {
        assert!(t("a1A1A2a2|a2A2A1a1").is_irreducible());
        assert!(!t("a1a2A2a3|A2A3a1|A1A1A2").is_irreducible());
        assert!(t("|").is_irreducible());
        // a single letter is both endpoints, so it pairs with any ᾱ endpoint
        assert!(!t("a1|a2A1").is_irreducible());
        assert!(t("a1|a2a1").is_irreducible());
    }

    pub(crate) fn arb_word(n: usize, max_len: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec((1..=n, any::<bool>()), 0..=max_len).prop_map(|v| {
            v.into_iter()
                .map(|(i, p)| Letter::new(i, if p { Sign::Pos } else { Sign::Neg }))
                .collect()
        })
    }

    proptest! {
        #[test]
        fn bar_is_involution(x in arb_word(4, 12)) {
            prop_assert_eq!(x.bar().bar(), x);
        }

        #[test]
        fn membership_bar_invariant(x in arb_word(3, 10)) {
            prop_assert_eq!(x.is_in_on(3).unwrap(), x.bar().is_in_on(3).unwrap());
        }

        #[test]
        fn membership_rotation_invariant(x in arb_word(3, 10), y in arb_word(3, 10)) {
            prop_assert_eq!(x.concat(&y).is_in_on(3).unwrap(), y.concat(&x).is_in_on(3).unwrap());
        }

        #[test]
        fn text_round_trip(x in arb_word(12, 16)) {
            prop_assert_eq!(x.to_string().parse::<Word>().unwrap(), x);
        }

        #[test]
        fn tuple_round_trip(v in prop::collection::vec(arb_word(3, 4), 1..5)) {
            let tuple = WordTuple::new(v);
            prop_assert_eq!(tuple.to_string().parse::<WordTuple>().unwrap(), tuple);
        }
    }
}
