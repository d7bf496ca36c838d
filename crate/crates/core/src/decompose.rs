//! Splitting an irreducible tuple `(s_1, …, s_n)` into pieces `u_1 … u_2n`
//! whose odd and even interleavings are nonempty members of O_n.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::necklace::split_collection;
use crate::tucker::{self, decode_decomposition, malt, SignVector};
use crate::words::{check_types, Letter, Word, WordTuple};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    /// `0 = k_0 ≤ k_1 ≤ … ≤ k_n = 2n`; component `j` is `u_{k_{j-1}+1} … u_{k_j}`.
    pub k: Vec<usize>,
    pub u: Vec<Word>,
}

impl Decomposition {
    fn interleaving(&self, parity: usize) -> WordTuple {
        WordTuple::new(self.u.iter().skip(parity).step_by(2).cloned().collect())
    }

    /// `(u_1, u_3, …, u_{2n-1})`.
    pub fn odd(&self) -> WordTuple {
        self.interleaving(0)
    }

    /// `(u_2, u_4, …, u_2n)`.
    pub fn even(&self) -> WordTuple {
        self.interleaving(1)
    }

    /// `c_j = k_j − k_{j-1}`.
    pub fn composition(&self) -> Vec<usize> {
        self.k.windows(2).map(|w| w[1] - w[0]).collect()
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k: Vec<String> = self.k.iter().map(|k| k.to_string()).collect();
        let u: Vec<String> = self.u.iter().map(|u| u.to_string()).collect();
        write!(f, "k={} u={}", k.join(","), u.join("|"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    #[default]
    Necklace,
    Brute,
    Kyfan,
}

impl Backend {
    pub const ALL: [Backend; 3] = [Backend::Necklace, Backend::Brute, Backend::Kyfan];
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Necklace => "necklace",
            Backend::Brute => "brute",
            Backend::Kyfan => "kyfan",
        })
    }
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "necklace" => Ok(Backend::Necklace),
            "brute" => Ok(Backend::Brute),
            "kyfan" => Ok(Backend::Kyfan),
            _ => Err(Error::Parse(format!("unknown backend {s:?} (expected necklace, brute or kyfan)"))),
        }
    }
}

/// Irreducible, every component of length at least two, balanced.
pub fn check_lemma_preconditions(t: &WordTuple) -> Result<()> {
    let n = t.arity();
    if n == 0 {
        return Err(Error::Precondition("empty tuple".into()));
    }
    let s = t.concat();
    check_types(&s, n)?;
    if let Some(j) = t.components().iter().position(|c| c.len() < 2) {
        return Err(Error::Precondition(format!("component {} of {t} has fewer than two letters", j + 1)));
    }
    if !s.is_in_on(n)? {
        return Err(Error::Precondition(format!("{t} is not balanced")));
    }
    if !t.is_irreducible() {
        return Err(Error::Precondition(format!("{t} is reducible")));
    }
    Ok(())
}

pub fn decompose(t: &WordTuple, backend: Backend) -> Result<Decomposition> {
    decompose_with_bound(t, backend, tucker::DEFAULT_SCAN_BOUND)
}

/// `bound` limits the total length for the exhaustive backends.
pub fn decompose_with_bound(t: &WordTuple, backend: Backend, bound: usize) -> Result<Decomposition> {
    check_lemma_preconditions(t)?;
    let d = match backend {
        Backend::Necklace if t.arity() == 1 => decompose_n1(t.component(0))?,
        Backend::Necklace => {
            let split = split_collection(t)?;
            let (k, u) = split
                .interleaved(t)
                .ok_or_else(|| Error::Internal(format!("split of {t} is not interleaved")))?;
            Decomposition { k, u }
        }
        Backend::Brute => decompose_brute(t, bound)?,
        Backend::Kyfan => tucker::find_zero_53(t, bound)?.decomposition,
    };
    if !verify_decomposition(t, &d) {
        return Err(Error::Internal(format!("{backend} backend produced an invalid decomposition of {t}")));
    }
    Ok(d)
}

/// The one-component case: `u_1` is the shortest nonempty balanced prefix.
pub fn decompose_n1(s: &Word) -> Result<Decomposition> {
    check_types(s, 1)?;
    if s.len() < 2 || !s.is_in_on(1)? {
        return Err(Error::Precondition(format!("{s} is not a balanced word of length at least 2")));
    }
    if s.first() == Some(Letter::neg(1)) {
        let d = decompose_n1(&s.bar())?;
        return Ok(Decomposition { k: d.k, u: d.u.iter().map(Word::bar).collect() });
    }
    let mut sum = 0;
    let cut = s
        .letters()
        .iter()
        .position(|l| {
            sum += l.value();
            sum == 0
        })
        .expect("balanced word")
        + 1;
    if cut == s.len() {
        return Err(Error::Precondition(format!("{s} has no proper balanced prefix")));
    }
    Ok(Decomposition { k: vec![0, 2], u: vec![s.slice(0, cut), s.slice(cut, s.len())] })
}

/// Lexicographically first (+ before −) fully signed vector with both signs,
/// malt at most `2n − 1` and every type balanced on each side.
pub fn decompose_brute(t: &WordTuple, bound: usize) -> Result<Decomposition> {
    let n = t.arity();
    let s = t.concat();
    let m = s.len();
    if m > bound {
        return Err(Error::BoundExceeded { m, bound });
    }
    let profile = t.lengths();
    for mask in 0u64..(1u64 << m) {
        // bit m-1-p set means position p is −, so + < − lexicographically
        let x = SignVector((0..m).map(|p| if mask >> (m - 1 - p) & 1 == 1 { -1 } else { 1 }).collect());
        if brute_feasible(&x, &s, &profile, n)? {
            return decode_decomposition(&x, t)?
                .ok_or_else(|| Error::Internal(format!("feasible vector {x} failed to decode")));
        }
    }
    Err(Error::Internal(format!("no decomposition of {t} found")))
}

/// The brute backend's acceptance test for a fully signed vector.
pub fn brute_feasible(x: &SignVector, s: &Word, profile: &[usize], n: usize) -> Result<bool> {
    if x.count(1) == 0 || x.count(-1) == 0 || malt(x, profile)? > 2 * n - 1 {
        return Ok(false);
    }
    let mut diff = vec![0i64; n];
    for (&e, l) in x.0.iter().zip(s.letters()) {
        diff[l.index - 1] += i64::from(e) * l.value();
    }
    Ok(diff.iter().all(|&d| d == 0))
}

/// Signs every bead of `u_ℓ` with `+` for odd `ℓ` and `−` for even `ℓ`.
pub fn encode(t: &WordTuple, d: &Decomposition) -> Option<SignVector> {
    if !verify_decomposition(t, d) {
        return None;
    }
    let mut x = Vec::with_capacity(t.total_len());
    for (l, u) in d.u.iter().enumerate() {
        let sign = if l % 2 == 0 { 1 } else { -1 };
        x.extend(std::iter::repeat_n(sign, u.len()));
    }
    Some(SignVector(x))
}

/// Checks both interleavings are nonempty members of O_n and the pieces
/// reassemble every component.
pub fn verify_decomposition(t: &WordTuple, d: &Decomposition) -> bool {
    let n = t.arity();
    if d.k.len() != n + 1 || d.u.len() != 2 * n || d.k[0] != 0 || d.k[n] != 2 * n {
        return false;
    }
    if d.k.windows(2).any(|w| w[0] > w[1]) {
        return false;
    }
    for j in 0..n {
        let rebuilt: Word = d.u[d.k[j]..d.k[j + 1]].iter().flat_map(|u| u.letters().iter().copied()).collect();
        if &rebuilt != t.component(j) {
            return false;
        }
    }
    [d.odd(), d.even()].iter().all(|side| {
        let w = side.concat();
        !w.is_empty() && w.is_in_on(n).unwrap_or(false)
    })
}
