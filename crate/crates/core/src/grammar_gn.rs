//! The grammar `G_n`: non-terminals `S` (rank 1) and `I` (rank n) with
//!
//! 1. `S(x1⋯xn) <- I(x1, …, xn)`, id `init`;
//! 2. `I(w1, …, wn) <- I(x1, …), I(y1, …)` for every factorization
//!    `w1⋯wn = x1y1⋯xnyn`, id `bin:<|w1|>,…,<|wn|>`;
//! 3. unary rules adding a compatible pair `α, ᾱ` at endpoints, ids
//!    `un:<k>:<L|R>:<l>:<L|R>:<α>` (k < l) and `un:<k>:wrap:<α>`;
//! 4. `I(ε, …, ε)`, id `empty`.
//!
//! Unary rules are ground instances. The instances `(k, l, α)` and
//! `(l, k, ᾱ)` denote the same rule and are stored once, under the form with
//! `k < l`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::mcfg::{Grammar, NonTerminal, Rule, Sym, Var};
use crate::words::{Letter, Side};

pub fn start_symbol() -> NonTerminal {
    NonTerminal::new("S", 1)
}

pub fn tuple_symbol(n: usize) -> NonTerminal {
    NonTerminal::new("I", n)
}

pub const INIT_ID: &str = "init";
pub const EMPTY_ID: &str = "empty";

pub fn binary_id(composition: &[usize]) -> String {
    let parts: Vec<String> = composition.iter().map(|c| c.to_string()).collect();
    format!("bin:{}", parts.join(","))
}

/// Id of the unary rule placing `alpha` at side `side_k` of component `k`
/// and `ᾱ` at side `side_l` of component `l` (1-based, `k != l`).
pub fn cross_id(k: usize, side_k: Side, l: usize, side_l: Side, alpha: Letter) -> String {
    let (k, side_k, l, side_l, alpha) = if k < l { (k, side_k, l, side_l, alpha) } else { (l, side_l, k, side_k, alpha.bar()) };
    format!("un:{k}:{}:{l}:{}:{alpha}", side_k.tag(), side_l.tag())
}

/// Id of `I(…, α x_k ᾱ, …) <- I(…)`.
pub fn wrap_id(k: usize, alpha: Letter) -> String {
    format!("un:{k}:wrap:{alpha}")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum UnaryShape {
    // ordering gives the listing order: per k, the wrap rule, then the cross
    // rules with l > k
    Wrap { k: usize },
    Cross { k: usize, side_k: Side, l: usize, side_l: Side },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct UnaryInstance {
    shape_key: (usize, u8, usize, Side, Side),
    alpha: Letter,
    shape: UnaryShape,
}

impl UnaryInstance {
    fn canonical(shape: UnaryShape, alpha: Letter) -> Self {
        let (shape, alpha) = match shape {
            UnaryShape::Cross { k, side_k, l, side_l } if k > l => {
                (UnaryShape::Cross { k: l, side_k: side_l, l: k, side_l: side_k }, alpha.bar())
            }
            s => (s, alpha),
        };
        let shape_key = match shape {
            UnaryShape::Wrap { k } => (k, 0, 0, Side::Left, Side::Left),
            UnaryShape::Cross { k, side_k, l, side_l } => (k, 1, l, side_k, side_l),
        };
        UnaryInstance { shape_key, alpha, shape }
    }

    fn rule(&self, n: usize) -> Rule {
        let i = tuple_symbol(n);
        let mut patterns: Vec<Vec<Sym>> = (0..n).map(|j| vec![Sym::V(Var::new(0, j))]).collect();
        let alpha = self.alpha;
        let id = match self.shape {
            UnaryShape::Wrap { k } => {
                patterns[k - 1] = vec![Sym::T(alpha), Sym::V(Var::new(0, k - 1)), Sym::T(alpha.bar())];
                wrap_id(k, alpha)
            }
            UnaryShape::Cross { k, side_k, l, side_l } => {
                place(&mut patterns[k - 1], side_k, alpha);
                place(&mut patterns[l - 1], side_l, alpha.bar());
                cross_id(k, side_k, l, side_l, alpha)
            }
        };
        Rule { id, lhs: i.clone(), patterns, rhs: vec![i] }
    }
}

fn place(pattern: &mut Vec<Sym>, side: Side, letter: Letter) {
    match side {
        Side::Left => pattern.insert(0, Sym::T(letter)),
        Side::Right => pattern.push(Sym::T(letter)),
    }
}

/// All compositions of `total` into `parts` nonnegative parts, in decreasing
/// lexicographic order.
pub fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn go(total: usize, parts: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in (0..=total).rev() {
            prefix.push(first);
            go(total - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts > 0 {
        go(total, parts, &mut Vec::new(), &mut out);
    }
    out
}

/// The binary rule whose patterns factor `x1y1⋯xnyn` with the given lengths.
pub fn binary_rule(n: usize, composition: &[usize]) -> Rule {
    let i = tuple_symbol(n);
    let flat: Vec<Sym> = (0..n).flat_map(|j| [Sym::V(Var::new(0, j)), Sym::V(Var::new(1, j))]).collect();
    let mut patterns = Vec::with_capacity(n);
    let mut at = 0;
    for &c in composition {
        patterns.push(flat[at..at + c].to_vec());
        at += c;
    }
    Rule { id: binary_id(composition), lhs: i.clone(), patterns, rhs: vec![i.clone(), i] }
}

#[derive(Debug, Clone)]
pub struct GnGrammar {
    pub n: usize,
    pub grammar: Grammar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RuleCensus {
    pub init: usize,
    pub binary: usize,
    pub unary: usize,
    pub empty: usize,
}

impl RuleCensus {
    pub fn total(&self) -> usize {
        self.init + self.binary + self.unary + self.empty
    }
}

pub fn build_gn(n: usize) -> Result<GnGrammar> {
    if n < 1 {
        return Err(Error::Precondition("G_n needs n >= 1".into()));
    }
    let s = start_symbol();
    let i = tuple_symbol(n);
    let mut rules = Vec::new();

    rules.push(Rule {
        id: INIT_ID.into(),
        lhs: s.clone(),
        patterns: vec![(0..n).map(|j| Sym::V(Var::new(0, j))).collect()],
        rhs: vec![i.clone()],
    });

    for c in compositions(2 * n, n) {
        rules.push(binary_rule(n, &c));
    }

    let mut unary = BTreeSet::new();
    for alpha in Letter::alphabet(n) {
        for k in 1..=n {
            for l in 1..=n {
                if k == l {
                    unary.insert(UnaryInstance::canonical(UnaryShape::Wrap { k }, alpha));
                    continue;
                }
                for side_k in [Side::Left, Side::Right] {
                    for side_l in [Side::Left, Side::Right] {
                        unary.insert(UnaryInstance::canonical(UnaryShape::Cross { k, side_k, l, side_l }, alpha));
                    }
                }
            }
        }
    }
    rules.extend(unary.iter().map(|u| u.rule(n)));

    rules.push(Rule { id: EMPTY_ID.into(), lhs: i, patterns: vec![Vec::new(); n], rhs: vec![] });

    Ok(GnGrammar { n, grammar: Grammar::new(s, rules)? })
}

impl GnGrammar {
    pub fn census(&self) -> RuleCensus {
        let mut c = RuleCensus { init: 0, binary: 0, unary: 0, empty: 0 };
        for r in self.grammar.rules() {
            match r.id.split(':').next() {
                Some("init") => c.init += 1,
                Some("bin") => c.binary += 1,
                Some("un") => c.unary += 1,
                Some("empty") => c.empty += 1,
                _ => {}
            }
        }
        c
    }
}

pub fn rule_census(g: &GnGrammar) -> RuleCensus {
    g.census()
}

/// Expected counts: `C(3n-1, n-1)` binary rules, `2n·n` wrap rules and
/// `2n·4·C(n,2)` cross rules.
pub fn expected_census(n: usize) -> RuleCensus {
    RuleCensus {
        init: 1,
        binary: binomial(3 * n - 1, n - 1),
        unary: 2 * n * n + 2 * n * 4 * binomial(n, 2),
        empty: 1,
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}
