//! Sign vectors over {−1, 0, +1}, the alternation counts `alt`, `malt`, `h`,
//! the labelings λ and λ_±, and exhaustive zero search.
//!
//! Positions of a sign vector are aligned with the beads of a word. A
//! *profile* lists component lengths; a pair of adjacent positions straddling
//! two components is a boundary pair.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::decompose::Decomposition;
use crate::error::{Error, Result};
use crate::necklace::{verify_single_split, NecklaceSplit, Part};
use crate::words::{check_types, Word, WordTuple};

pub const DEFAULT_SCAN_BOUND: usize = 12;
pub const DEFAULT_PAIR_BOUND: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector(pub Vec<i8>);

impl SignVector {
    pub fn zeros(m: usize) -> Self {
        SignVector(vec![0; m])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn is_full(&self) -> bool {
        self.0.iter().all(|&e| e != 0)
    }

    pub fn count(&self, sign: i8) -> usize {
        self.0.iter().filter(|&&e| e == sign).count()
    }

    pub fn neg(&self) -> SignVector {
        SignVector(self.0.iter().map(|e| -e).collect())
    }

    /// `self ⪯ other`: every nonzero entry of `self` is kept in `other`.
    pub fn preceq(&self, other: &SignVector) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(&a, &b)| a == 0 || a == b)
    }

    /// Index in the scan order (0 < + < −, position 0 most significant).
    pub fn scan_index(&self) -> usize {
        self.0.iter().fold(0, |acc, &e| acc * 3 + digit(e))
    }

    pub fn from_scan_index(m: usize, mut idx: usize) -> SignVector {
        let mut v = vec![0i8; m];
        for e in v.iter_mut().rev() {
            *e = [0, 1, -1][idx % 3];
            idx /= 3;
        }
        SignVector(v)
    }

    /// Advances to the next vector in scan order; false after the last one.
    pub fn advance(&mut self) -> bool {
        for e in self.0.iter_mut().rev() {
            match *e {
                0 => {
                    *e = 1;
                    return true;
                }
                1 => {
                    *e = -1;
                    return true;
                }
                _ => *e = 0,
            }
        }
        false
    }
}

fn digit(e: i8) -> usize {
    match e {
        0 => 0,
        1 => 1,
        _ => 2,
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &e in &self.0 {
            f.write_str(match e {
                0 => "0",
                1 => "+",
                _ => "-",
            })?;
        }
        Ok(())
    }
}

impl FromStr for SignVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .filter(|c| !matches!(c, ',' | ' ' | '|'))
            .map(|c| match c {
                '0' => Ok(0),
                '+' => Ok(1),
                '-' => Ok(-1),
                _ => Err(Error::Parse(format!("bad sign {c:?} in {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(SignVector)
    }
}

impl Serialize for SignVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn nonzero(x: &SignVector) -> Result<()> {
    if x.is_zero() {
        Err(Error::Precondition("sign vector is all zero".into()))
    } else {
        Ok(())
    }
}

fn first_signed(x: &SignVector) -> usize {
    x.0.iter().position(|&e| e != 0).expect("nonzero vector")
}

/// Maximum number of sign alternations over all completions of `x`.
pub fn alt(x: &SignVector) -> Result<usize> {
    nonzero(x)?;
    let signed: Vec<usize> = (0..x.len()).filter(|&p| x.0[p] != 0).collect();
    let mut total = signed[0] + (x.len() - 1 - signed[signed.len() - 1]);
    for w in signed.windows(2) {
        let g = w[1] - w[0] - 1;
        let differ = x.0[w[0]] != x.0[w[1]];
        // g + 1 pairs; their flip count has the parity of `differ`
        total += if (g + 1) % 2 == usize::from(differ) { g + 1 } else { g };
    }
    Ok(total)
}

/// First letter of an alt-maximizing completion: leading zeros alternate.
pub fn sign_of(x: &SignVector) -> Result<i8> {
    nonzero(x)?;
    let p = first_signed(x);
    Ok(if p.is_multiple_of(2) { x.0[p] } else { -x.0[p] })
}

/// Returns `κ·i` for the smallest type `i` such that every completion puts
/// strictly more type-`i` amount on side `κ` than on side `−κ`; else 0.
pub fn unbalance(x: &SignVector, s: &Word, n: usize) -> Result<i64> {
    if x.len() != s.len() {
        return Err(Error::Precondition(format!("sign vector length {} vs word length {}", x.len(), s.len())));
    }
    check_types(s, n)?;
    let mut diff = vec![0i64; n];
    let mut unsigned = vec![0i64; n];
    for (&e, l) in x.0.iter().zip(s.letters()) {
        if e == 0 {
            unsigned[l.index - 1] += 1;
        } else {
            diff[l.index - 1] += i64::from(e) * l.value();
        }
    }
    for i in 0..n {
        // each unsigned bead moves E_+ − E_− by exactly ±1
        if diff[i] > unsigned[i] {
            return Ok(i as i64 + 1);
        }
        if -diff[i] > unsigned[i] {
            return Ok(-(i as i64 + 1));
        }
    }
    Ok(0)
}

fn guard(label: i64, m: usize, n: usize) -> Result<i64> {
    if label.unsigned_abs() as usize > m + n {
        return Err(Error::Internal(format!("label {label} outside ±{}", m + n)));
    }
    Ok(label)
}

/// The labeling whose zeros are necklace splits with at most `n` cuts.
pub fn lambda_52(x: &SignVector, s: &Word, n: usize) -> Result<i64> {
    let a = alt(x)?;
    let label = if a > n { i64::from(sign_of(x)?) * a as i64 } else { unbalance(x, s, n)? };
    guard(label, x.len(), n)
}

/// `flags[p]` is true when positions `p` and `p + 1` lie in different components.
pub fn boundary_pairs(profile: &[usize]) -> Result<Vec<bool>> {
    if profile.contains(&0) {
        return Err(Error::Precondition("profile has an empty component".into()));
    }
    let m: usize = profile.iter().sum();
    let mut flags = vec![false; m.saturating_sub(1)];
    let mut acc = 0;
    for &l in &profile[..profile.len().saturating_sub(1)] {
        acc += l;
        flags[acc - 1] = true;
    }
    Ok(flags)
}

fn check_profile(x: &SignVector, profile: &[usize]) -> Result<Vec<bool>> {
    let m: usize = profile.iter().sum();
    if m != x.len() {
        return Err(Error::Precondition(format!("profile sums to {m}, vector has length {}", x.len())));
    }
    boundary_pairs(profile)
}

/// Sign alternations of a fully signed vector, counting two at a boundary
/// pair with equal signs.
pub fn malt(x: &SignVector, profile: &[usize]) -> Result<usize> {
    let flags = check_profile(x, profile)?;
    if !x.is_full() {
        return Err(Error::Precondition(format!("{x} has unsigned positions")));
    }
    Ok(malt_unchecked(x, &flags))
}

fn malt_unchecked(x: &SignVector, flags: &[bool]) -> usize {
    flags
        .iter()
        .enumerate()
        .map(|(p, &boundary)| {
            let differ = x.0[p] != x.0[p + 1];
            match (boundary, differ) {
                (false, true) | (true, true) => 1,
                (false, false) => 0,
                (true, false) => 2,
            }
        })
        .sum()
}

/// A malt-maximizing completion: every zero takes the sign dictated by its
/// signed neighbor (left neighbor, or right one for leading zeros), equal
/// across a boundary pair and opposite otherwise.
pub fn h_completion(x: &SignVector, profile: &[usize]) -> Result<SignVector> {
    nonzero(x)?;
    let flags = check_profile(x, profile)?;
    Ok(h_completion_unchecked(x, &flags))
}

fn h_completion_unchecked(x: &SignVector, flags: &[bool]) -> SignVector {
    let mut y = x.0.clone();
    let p = first_signed(x);
    for q in (0..p).rev() {
        y[q] = if flags[q] { y[q + 1] } else { -y[q + 1] };
    }
    for q in p + 1..y.len() {
        if y[q] == 0 {
            y[q] = if flags[q - 1] { y[q - 1] } else { -y[q - 1] };
        }
    }
    SignVector(y)
}

/// Maximum malt over all completions of `x`.
pub fn h(x: &SignVector, profile: &[usize]) -> Result<usize> {
    let y = h_completion(x, profile)?;
    malt(&y, profile)
}

/// First letter of every malt-maximizing completion.
pub fn sign_53(x: &SignVector, profile: &[usize]) -> Result<i8> {
    Ok(h_completion(x, profile)?.0[0])
}

/// The labelings λ_+ (`b = 1`) and λ_− (`b = −1`).
pub fn lambda_53(b: i8, x: &SignVector, profile: &[usize], s: &Word, n: usize) -> Result<i64> {
    if b != 1 && b != -1 {
        return Err(Error::Precondition(format!("b must be ±1, got {b}")));
    }
    nonzero(x)?;
    let flags = check_profile(x, profile)?;
    lambda_53_unchecked(b, x, &flags, s, n)
}

fn lambda_53_unchecked(b: i8, x: &SignVector, flags: &[bool], s: &Word, n: usize) -> Result<i64> {
    let y = h_completion_unchecked(x, flags);
    let hx = malt_unchecked(&y, flags);
    let n_i = n as i64;
    let label = if hx >= 2 * n {
        i64::from(y.0[0]) * (hx as i64 - n_i + 2)
    } else if x.count(1) == 0 {
        -i64::from(b) * (n_i + 1)
    } else if x.count(-1) == 0 {
        i64::from(b) * (n_i + 1)
    } else {
        unbalance(x, s, n)?
    };
    guard(label, x.len(), n)
}

/// Completes `x` so that every type `i` has `E_+ − E_− = target[i]`, filling
/// unsigned positions left to right. None if some type cannot reach its target.
pub fn complete_to_target(x: &SignVector, s: &Word, n: usize, target: &[i64]) -> Result<Option<SignVector>> {
    if x.len() != s.len() {
        return Err(Error::Precondition(format!("sign vector length {} vs word length {}", x.len(), s.len())));
    }
    check_types(s, n)?;
    let mut diff = vec![0i64; n];
    let mut unsigned: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (p, (&e, l)) in x.0.iter().zip(s.letters()).enumerate() {
        if e == 0 {
            unsigned[l.index - 1].push(p);
        } else {
            diff[l.index - 1] += i64::from(e) * l.value();
        }
    }
    let mut y = x.0.clone();
    for i in 0..n {
        let u = unsigned[i].len() as i64;
        let r = target[i] - diff[i];
        if r.abs() > u || (r + u) % 2 != 0 {
            return Ok(None);
        }
        let ups = ((u + r) / 2) as usize;
        for (k, &p) in unsigned[i].iter().enumerate() {
            let contribution: i64 = if k < ups { 1 } else { -1 };
            y[p] = (contribution * s.letters()[p].value()) as i8;
        }
    }
    Ok(Some(SignVector(y)))
}

/// Component boundaries `k` and the global position range of every run.
pub type Runs = (Vec<usize>, Vec<(usize, usize)>);

/// Runs of a fully signed vector with a zero-length run of the opposite sign
/// inserted at every equal-sign boundary, padded to `2n` runs. Returns
/// `(k, ranges)` with global position ranges; None if there are more than
/// `2n` runs.
pub fn decode_runs(y: &SignVector, profile: &[usize]) -> Result<Option<Runs>> {
    check_profile(y, profile)?;
    if !y.is_full() {
        return Err(Error::Precondition(format!("{y} has unsigned positions")));
    }
    let n = profile.len();
    // (component, start, end, sign)
    let mut runs: Vec<(usize, usize, usize, i8)> = Vec::new();
    let mut start = 0;
    for (j, &len) in profile.iter().enumerate() {
        let end = start + len;
        if let Some(&(_, _, _, prev)) = runs.last() {
            if prev == y.0[start] {
                runs.push((j - 1, start, start, -prev));
            }
        }
        let mut p = start;
        while p < end {
            let mut q = p;
            while q < end && y.0[q] == y.0[p] {
                q += 1;
            }
            runs.push((j, p, q, y.0[p]));
            p = q;
        }
        start = end;
    }
    if runs.len() > 2 * n {
        return Ok(None);
    }
    let m = y.len();
    while runs.len() < 2 * n {
        let sign = -runs.last().map_or(1, |r| r.3);
        runs.push((n - 1, m, m, sign));
    }
    let mut k = vec![0];
    for j in 0..n {
        k.push(runs.iter().filter(|r| r.0 <= j).count());
    }
    Ok(Some((k, runs.iter().map(|r| (r.1, r.2)).collect())))
}

/// Decodes a fully signed vector into a decomposition of `t`, if it has at
/// most `2n` runs.
pub fn decode_decomposition(y: &SignVector, t: &WordTuple) -> Result<Option<Decomposition>> {
    let profile = t.lengths();
    let s = t.concat();
    Ok(decode_runs(y, &profile)?.map(|(k, ranges)| Decomposition {
        k,
        u: ranges.into_iter().map(|(a, b)| s.slice(a, b)).collect(),
    }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Zero52 {
    pub x: SignVector,
    pub completion: SignVector,
    pub split: NecklaceSplit,
}

/// Scans for the first zero of λ and decodes it into a split of `s` with at
/// most `n` cuts and discrepancy `target` (A = `+` side).
pub fn find_zero_52(s: &Word, n: usize, target: &[i64], bound: usize) -> Result<Zero52> {
    let m = s.len();
    if m > bound {
        return Err(Error::BoundExceeded { m, bound });
    }
    check_types(s, n)?;
    crate::necklace::check_target(s, n, target)?;
    if m == 0 {
        let split = NecklaceSplit { cuts: vec![], start_part: Part::A };
        return Ok(Zero52 { x: SignVector::zeros(0), completion: SignVector::zeros(0), split });
    }
    let mut x = SignVector::zeros(m);
    while x.advance() {
        if lambda_52(&x, s, n)? != 0 {
            continue;
        }
        let y = complete_to_target(&x, s, n, target)?
            .ok_or_else(|| Error::Internal(format!("zero {x} cannot be completed to {target:?}")))?;
        let cuts: Vec<usize> = (1..m).filter(|&g| y.0[g - 1] != y.0[g]).collect();
        let start_part = if y.0[0] == 1 { Part::A } else { Part::B };
        let split = NecklaceSplit { cuts, start_part };
        if !verify_single_split(s, n, &split, target) {
            return Err(Error::Internal(format!("zero {x} decodes to an invalid split")));
        }
        return Ok(Zero52 { x, completion: y, split });
    }
    if n >= m {
        Err(Error::Precondition(format!("λ has no zero on {s}; a zero is only guaranteed when n < m")))
    } else {
        Err(Error::Internal(format!("λ has no zero on {s}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Zero53 {
    pub x: SignVector,
    pub completion: SignVector,
    pub decomposition: Decomposition,
}

/// Scans for the first common zero of λ_± on an irreducible tuple and decodes
/// its balanced completion into a decomposition.
pub fn find_zero_53(t: &WordTuple, bound: usize) -> Result<Zero53> {
    crate::decompose::check_lemma_preconditions(t)?;
    let n = t.arity();
    let s = t.concat();
    let m = s.len();
    if m > bound {
        return Err(Error::BoundExceeded { m, bound });
    }
    let flags = boundary_pairs(&t.lengths())?;
    let mut x = SignVector::zeros(m);
    while x.advance() {
        // the two labelings differ only off their common zero set
        if lambda_53_unchecked(1, &x, &flags, &s, n)? != 0 {
            continue;
        }
        let y = complete_to_target(&x, &s, n, &vec![0; n])?
            .ok_or_else(|| Error::Internal(format!("zero {x} has no balanced completion")))?;
        let d = decode_decomposition(&y, t)?
            .ok_or_else(|| Error::Internal(format!("completion {y} has too many alternations")))?;
        if !crate::decompose::verify_decomposition(t, &d) {
            return Err(Error::Internal(format!("zero {x} decodes to an invalid decomposition")));
        }
        return Ok(Zero53 { x, completion: y, decomposition: d });
    }
    Err(Error::Internal(format!("λ_± have no zero on irreducible {t}")))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum KyFanReport {
    /// Both properties hold and there is no zero.
    Ok,
    Zero(SignVector),
    /// `λ(−x) ≠ −λ(x)`.
    NotAntipodal(SignVector),
    /// `x ⪯ y` with `λ(x) + λ(y) = 0`.
    Complementary(SignVector, SignVector),
}

impl KyFanReport {
    pub fn is_ok_or_zero(&self) -> bool {
        matches!(self, KyFanReport::Ok | KyFanReport::Zero(_))
    }
}

impl fmt::Display for KyFanReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KyFanReport::Ok => write!(f, "ok"),
            KyFanReport::Zero(x) => write!(f, "zero {x}"),
            KyFanReport::NotAntipodal(x) => write!(f, "not-antipodal {x}"),
            KyFanReport::Complementary(x, y) => write!(f, "complementary {x} {y}"),
        }
    }
}

/// Checks antipodality and the no-complementary-pair property of `label`
/// over all of O^m \ {0^m}. A zero is reported first if there is one.
pub fn check_kyfan_hypotheses<F>(m: usize, bound: usize, label: F) -> Result<KyFanReport>
where
    F: Fn(&SignVector) -> Result<i64>,
{
    if m > bound {
        return Err(Error::BoundExceeded { m, bound });
    }
    if m == 0 {
        return Ok(KyFanReport::Ok);
    }
    let size = 3usize.pow(m as u32);
    let mut table = vec![0i64; size];
    let mut x = SignVector::zeros(m);
    while x.advance() {
        let v = label(&x)?;
        if v == 0 {
            return Ok(KyFanReport::Zero(x));
        }
        table[x.scan_index()] = v;
    }
    let mut x = SignVector::zeros(m);
    while x.advance() {
        if table[x.neg().scan_index()] != -table[x.scan_index()] {
            return Ok(KyFanReport::NotAntipodal(x));
        }
    }
    // pairs x ⪯ y, five choices per position
    const PAIRS: [(i8, i8); 5] = [(0, 0), (0, 1), (0, -1), (1, 1), (-1, -1)];
    let mut choice = vec![0usize; m];
    loop {
        let xs = SignVector(choice.iter().map(|&c| PAIRS[c].0).collect());
        if !xs.is_zero() {
            let ys = SignVector(choice.iter().map(|&c| PAIRS[c].1).collect());
            if table[xs.scan_index()] + table[ys.scan_index()] == 0 {
                return Ok(KyFanReport::Complementary(xs, ys));
            }
        }
        let mut p = m;
        loop {
            if p == 0 {
                return Ok(KyFanReport::Ok);
            }
            p -= 1;
            choice[p] += 1;
            if choice[p] < PAIRS.len() {
                break;
            }
            choice[p] = 0;
        }
    }
}
