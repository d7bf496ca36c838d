//! Generic multiple context-free grammars.
//!
//! A rule `A(w_1, …, w_n) <- B_1(x_{1,1}, …), …, B_p(…)` is stored with its
//! patterns over terminals and variables; variable `(k, j)` stands for the
//! `j`-th argument of the `k`-th premise. In the text format the variables of
//! premise `k` are written with the `k`-th name of [`VAR_NAMES`] followed by
//! the 1-based argument index, e.g. `x1`, `y2`.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{Letter, Word, WordTuple};

/// Variable prefixes, one per premise position.
pub const VAR_NAMES: [char; 6] = ['x', 'y', 'z', 'w', 'v', 'u'];

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NonTerminal {
    pub name: String,
    pub rank: usize,
}

impl NonTerminal {
    pub fn new(name: impl Into<String>, rank: usize) -> Self {
        NonTerminal { name: name.into(), rank }
    }
}

/// The `index`-th argument (0-based) of premise `premise` (0-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    pub premise: usize,
    pub index: usize,
}

impl Var {
    pub fn new(premise: usize, index: usize) -> Self {
        Var { premise, index }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match VAR_NAMES.get(self.premise) {
            Some(c) => write!(f, "{c}{}", self.index + 1),
            None => write!(f, "?{}_{}", self.premise + 1, self.index + 1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sym {
    T(Letter),
    V(Var),
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sym::T(l) => write!(f, "{l}"),
            Sym::V(v) => write!(f, "{v}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rule {
    pub id: String,
    pub lhs: NonTerminal,
    pub patterns: Vec<Vec<Sym>>,
    pub rhs: Vec<NonTerminal>,
}

/// First condition a rule breaks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RuleViolation {
    Arity { expected: usize, found: usize },
    RepeatedVariable(Var),
    UndeclaredVariable(Var),
}

impl fmt::Display for RuleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleViolation::Arity { expected, found } => {
                write!(f, "left-hand side has rank {expected} but {found} patterns")
            }
            RuleViolation::RepeatedVariable(v) => write!(f, "variable {v} occurs more than once"),
            RuleViolation::UndeclaredVariable(v) => write!(f, "variable {v} is not declared"),
        }
    }
}

impl Rule {
    pub fn validate(&self) -> std::result::Result<(), RuleViolation> {
        if self.patterns.len() != self.lhs.rank {
            return Err(RuleViolation::Arity { expected: self.lhs.rank, found: self.patterns.len() });
        }
        let mut seen = HashSet::new();
        for sym in self.patterns.iter().flatten() {
            if let Sym::V(v) = *sym {
                let declared = self.rhs.get(v.premise).is_some_and(|b| v.index < b.rank);
                if !declared {
                    return Err(RuleViolation::UndeclaredVariable(v));
                }
                if !seen.insert(v) {
                    return Err(RuleViolation::RepeatedVariable(v));
                }
            }
        }
        Ok(())
    }

    pub fn terminal_count(&self) -> usize {
        self.patterns.iter().flatten().filter(|s| matches!(s, Sym::T(_))).count()
    }

    /// Every declared variable occurs in some pattern, so the conclusion is
    /// never shorter than any premise.
    pub fn is_non_erasing(&self) -> bool {
        let used = self.patterns.iter().flatten().filter(|s| matches!(s, Sym::V(_))).count();
        used == self.rhs.iter().map(|b| b.rank).sum::<usize>()
    }

    fn instantiate(&self, args: &[&WordTuple]) -> WordTuple {
        self.patterns
            .iter()
            .map(|pat| {
                let mut letters = Vec::new();
                for sym in pat {
                    match *sym {
                        Sym::T(l) => letters.push(l),
                        Sym::V(v) => letters.extend_from_slice(args[v.premise].component(v.index).letters()),
                    }
                }
                Word::new(letters)
            })
            .collect::<Vec<_>>()
            .into()
    }

    /// Substitutes the premises' arguments into the patterns.
    pub fn apply(&self, premises: &[Judgment]) -> Result<Judgment> {
        if premises.len() != self.rhs.len() {
            return Err(Error::Apply(format!(
                "rule {} takes {} premises, got {}",
                self.id,
                self.rhs.len(),
                premises.len()
            )));
        }
        for (k, (b, p)) in self.rhs.iter().zip(premises).enumerate() {
            if *b != p.head || p.args.arity() != b.rank {
                return Err(Error::Apply(format!("rule {}: premise {} is {p}, expected head {}", self.id, k + 1, b.name)));
            }
        }
        if let Err(v) = self.validate() {
            return Err(Error::Apply(format!("rule {} is invalid: {v}", self.id)));
        }
        let args: Vec<&WordTuple> = premises.iter().map(|p| &p.args).collect();
        Ok(Judgment { head: self.lhs.clone(), args: self.instantiate(&args) })
    }
}

pub fn validate_rule(r: &Rule) -> std::result::Result<(), RuleViolation> {
    r.validate()
}

pub fn apply_rule(r: &Rule, premises: &[Judgment]) -> Result<Judgment> {
    r.apply(premises)
}

fn write_args<T: fmt::Display>(f: &mut fmt::Formatter<'_>, name: &str, items: &[T]) -> fmt::Result {
    write!(f, "{name}(")?;
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{item}")?;
    }
    f.write_str(")")
}

struct Pattern<'a>(&'a [Sym]);

impl fmt::Display for Pattern<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|s| write!(f, "{s}"))
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pats: Vec<Pattern> = self.patterns.iter().map(|p| Pattern(p)).collect();
        write_args(f, &self.lhs.name, &pats)?;
        for (k, b) in self.rhs.iter().enumerate() {
            f.write_str(if k == 0 { " <- " } else { ", " })?;
            let vars: Vec<Var> = (0..b.rank).map(|j| Var::new(k, j)).collect();
            write_args(f, &b.name, &vars)?;
        }
        Ok(())
    }
}

/// Splits at `sep` outside parentheses.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// `Name(a, b, …)` → (`Name`, [`a`, `b`, …]).
fn split_call(s: &str) -> Result<(&str, Vec<&str>)> {
    let s = s.trim();
    let open = s.find('(').ok_or_else(|| Error::Parse(format!("missing '(' in {s:?}")))?;
    if !s.ends_with(')') {
        return Err(Error::Parse(format!("missing ')' in {s:?}")));
    }
    let name = s[..open].trim();
    if name.is_empty() {
        return Err(Error::Parse(format!("missing non-terminal name in {s:?}")));
    }
    let inner = &s[open + 1..s.len() - 1];
    Ok((name, split_top(inner, ',').into_iter().map(str::trim).collect()))
}

fn parse_pattern(s: &str) -> Result<Vec<Sym>> {
    let mut out = Vec::new();
    let mut chars = s.chars().filter(|c| !c.is_whitespace()).peekable();
    while let Some(c) = chars.next() {
        let mut digits = String::new();
        while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
            digits.push(*d);
            chars.next();
        }
        let k: usize = digits.parse().map_err(|_| Error::Parse(format!("symbol {c:?} without index in {s:?}")))?;
        if k == 0 {
            return Err(Error::Parse(format!("index 0 in pattern {s:?}")));
        }
        let sym = match c {
            'a' => Sym::T(Letter::pos(k)),
            'A' => Sym::T(Letter::neg(k)),
            _ => match VAR_NAMES.iter().position(|&v| v == c) {
                Some(p) => Sym::V(Var::new(p, k - 1)),
                None => return Err(Error::Parse(format!("unexpected character {c:?} in pattern {s:?}"))),
            },
        };
        out.push(sym);
    }
    Ok(out)
}

impl Rule {
    /// Parses one dump line, with an optional `id :: ` prefix.
    pub fn parse_line(line: &str, default_id: &str) -> Result<Rule> {
        let (id, body) = match line.split_once(" :: ") {
            Some((id, body)) => (id.trim().to_string(), body),
            None => (default_id.to_string(), line),
        };
        let (lhs_text, rhs_text) = match body.split_once("<-") {
            Some((l, r)) => (l, Some(r)),
            None => (body, None),
        };
        let (name, pats) = split_call(lhs_text)?;
        let patterns = pats.into_iter().map(parse_pattern).collect::<Result<Vec<_>>>()?;
        let lhs = NonTerminal::new(name, patterns.len());
        let mut rhs = Vec::new();
        if let Some(r) = rhs_text {
            for (k, item) in split_top(r, ',').into_iter().enumerate() {
                let (bname, vars) = split_call(item)?;
                let prefix = VAR_NAMES
                    .get(k)
                    .ok_or_else(|| Error::Parse(format!("more than {} premises", VAR_NAMES.len())))?;
                for (j, v) in vars.iter().enumerate() {
                    if *v != format!("{prefix}{}", j + 1) {
                        return Err(Error::Parse(format!("premise {} must declare {prefix}1, {prefix}2, …; found {v:?}", k + 1)));
                    }
                }
                rhs.push(NonTerminal::new(bname, vars.len()));
            }
        }
        Ok(Rule { id, lhs, patterns, rhs })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grammar {
    initial: NonTerminal,
    rules: Vec<Rule>,
    by_id: HashMap<String, usize>,
}

impl Grammar {
    pub fn new(initial: NonTerminal, rules: Vec<Rule>) -> Result<Self> {
        if initial.rank != 1 {
            return Err(Error::UnsupportedGrammar(format!("initial non-terminal {} has rank {}", initial.name, initial.rank)));
        }
        let mut by_id = HashMap::new();
        for (i, r) in rules.iter().enumerate() {
            if let Err(v) = r.validate() {
                return Err(Error::UnsupportedGrammar(format!("rule {}: {v}", r.id)));
            }
            if by_id.insert(r.id.clone(), i).is_some() {
                return Err(Error::UnsupportedGrammar(format!("duplicate rule id {}", r.id)));
            }
        }
        Ok(Grammar { initial, rules, by_id })
    }

    /// Parses a dump; the initial non-terminal is the head of the first rule.
    /// Lines without an `id :: ` prefix get ids `r1`, `r2`, ….
    pub fn parse(text: &str) -> Result<Self> {
        let rules = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .enumerate()
            .map(|(i, l)| Rule::parse_line(l, &format!("r{}", i + 1)))
            .collect::<Result<Vec<_>>>()?;
        let initial = rules.first().map(|r| r.lhs.clone()).ok_or_else(|| Error::Parse("empty grammar".into()))?;
        Grammar::new(initial, rules)
    }

    pub fn initial(&self) -> &NonTerminal {
        &self.initial
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn rule(&self, id: &str) -> Option<&Rule> {
        self.by_id.get(id).map(|&i| &self.rules[i])
    }

    /// One rule per line in the dump format, optionally prefixed by ids.
    pub fn dump(&self, with_ids: bool) -> String {
        let mut out = String::new();
        for r in &self.rules {
            if with_ids {
                out.push_str(&r.id);
                out.push_str(" :: ");
            }
            out.push_str(&r.to_string());
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Judgment {
    pub head: NonTerminal,
    pub args: WordTuple,
}

impl Judgment {
    pub fn new(head: NonTerminal, args: WordTuple) -> Self {
        Judgment { head, args }
    }
}

impl fmt::Display for Judgment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_args(f, &self.head.name, self.args.components())
    }
}

impl FromStr for Judgment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, args) = split_call(s)?;
        let words = args.into_iter().map(str::parse).collect::<Result<Vec<Word>>>()?;
        Ok(Judgment { head: NonTerminal::new(name, words.len()), args: words.into() })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationTree {
    pub rule_id: String,
    pub conclusion: Judgment,
    pub children: Vec<DerivationTree>,
}

impl DerivationTree {
    pub fn new(rule_id: impl Into<String>, conclusion: Judgment, children: Vec<DerivationTree>) -> Self {
        DerivationTree { rule_id: rule_id.into(), conclusion, children }
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(DerivationTree::size).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.children.iter().map(DerivationTree::depth).max().unwrap_or(0)
    }

    /// Node reached by following child indices from the root.
    pub fn node(&self, path: &[usize]) -> Option<&DerivationTree> {
        path.iter().try_fold(self, |t, &i| t.children.get(i))
    }

    pub fn node_mut(&mut self, path: &[usize]) -> Option<&mut DerivationTree> {
        path.iter().try_fold(self, |t, &i| t.children.get_mut(i))
    }

    fn write_indented(&self, out: &mut String, depth: usize) {
        for _ in 0..depth {
            out.push_str("  ");
        }
        out.push_str(&format!("{} :: {}\n", self.rule_id, self.conclusion));
        for c in &self.children {
            c.write_indented(out, depth + 1);
        }
    }

    /// Parses the indented `rule_id :: judgment` format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut stack: Vec<(usize, DerivationTree)> = Vec::new();
        let mut root = None;
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let indent = line.len() - line.trim_start_matches(' ').len();
            if indent % 2 != 0 {
                return Err(Error::Parse(format!("odd indentation in {line:?}")));
            }
            let depth = indent / 2;
            let (id, judgment) = line
                .trim()
                .split_once(" :: ")
                .ok_or_else(|| Error::Parse(format!("missing ' :: ' in {line:?}")))?;
            let node = DerivationTree::new(id, judgment.parse()?, Vec::new());
            while stack.last().is_some_and(|(d, _)| *d >= depth) {
                let (_, done) = stack.pop().unwrap();
                attach(&mut stack, &mut root, done)?;
            }
            if stack.last().map_or(depth != 0, |(d, _)| *d + 1 != depth) {
                return Err(Error::Parse(format!("unexpected indentation in {line:?}")));
            }
            stack.push((depth, node));
        }
        while let Some((_, done)) = stack.pop() {
            attach(&mut stack, &mut root, done)?;
        }
        root.ok_or_else(|| Error::Parse("empty derivation tree".into()))
    }
}

fn attach(stack: &mut [(usize, DerivationTree)], root: &mut Option<DerivationTree>, node: DerivationTree) -> Result<()> {
    match stack.last_mut() {
        Some((_, parent)) => parent.children.push(node),
        None if root.is_none() => *root = Some(node),
        None => return Err(Error::Parse("more than one root".into())),
    }
    Ok(())
}

impl fmt::Display for DerivationTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        self.write_indented(&mut out, 0);
        f.write_str(&out)
    }
}

/// Why replay failed, and where (child indices from the root).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeError {
    pub path: Vec<usize>,
    pub reason: String,
}

impl fmt::Display for TreeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let path: Vec<String> = self.path.iter().map(|i| i.to_string()).collect();
        write!(f, "node /{}: {}", path.join("/"), self.reason)
    }
}

impl std::error::Error for TreeError {}

/// Replays every node of `t` against `g`, preorder; reports the first failure.
pub fn verify_tree(g: &Grammar, t: &DerivationTree) -> std::result::Result<(), TreeError> {
    let mut path = Vec::new();
    verify_node(g, t, &mut path)
}

fn verify_node(g: &Grammar, t: &DerivationTree, path: &mut Vec<usize>) -> std::result::Result<(), TreeError> {
    let fail = |path: &Vec<usize>, reason: String| Err(TreeError { path: path.clone(), reason });
    let Some(rule) = g.rule(&t.rule_id) else {
        return fail(path, format!("unknown rule id {}", t.rule_id));
    };
    let premises: Vec<Judgment> = t.children.iter().map(|c| c.conclusion.clone()).collect();
    match rule.apply(&premises) {
        Ok(j) if j == t.conclusion => {}
        Ok(j) => return fail(path, format!("rule {} yields {j}, node claims {}", rule.id, t.conclusion)),
        Err(e) => return fail(path, e.to_string()),
    }
    for (i, c) in t.children.iter().enumerate() {
        path.push(i);
        verify_node(g, c, path)?;
        path.pop();
    }
    Ok(())
}

/// All words `w` with `|w| ≤ max_len` and `S(w)` derivable.
///
/// Semi-naive least fixpoint over judgments of total argument length at most
/// `max_len`. Sound and complete for non-erasing grammars, where no premise is
/// longer than its conclusion; erasing grammars are rejected.
pub fn enumerate_language(g: &Grammar, max_len: usize) -> Result<BTreeSet<Word>> {
    if let Some(r) = g.rules.iter().find(|r| !r.is_non_erasing()) {
        return Err(Error::UnsupportedGrammar(format!("rule {} erases a variable and may shrink length", r.id)));
    }
    let heads: Vec<NonTerminal> = {
        let mut set: BTreeSet<NonTerminal> = BTreeSet::new();
        set.insert(g.initial.clone());
        for r in &g.rules {
            set.insert(r.lhs.clone());
            set.extend(r.rhs.iter().cloned());
        }
        set.into_iter().collect()
    };
    let head_ix: HashMap<&NonTerminal, usize> = heads.iter().enumerate().map(|(i, h)| (h, i)).collect();
    struct Compiled<'a> {
        rule: &'a Rule,
        lhs: usize,
        rhs: Vec<usize>,
        extra: usize,
    }
    let compiled: Vec<Compiled> = g
        .rules
        .iter()
        .map(|r| Compiled {
            rule: r,
            lhs: head_ix[&r.lhs],
            rhs: r.rhs.iter().map(|b| head_ix[b]).collect(),
            extra: r.terminal_count(),
        })
        .collect();

    // chart[head][len] = processed judgments of that head and total length
    let mut chart: Vec<Vec<Vec<WordTuple>>> = vec![vec![Vec::new(); max_len + 1]; heads.len()];
    let mut seen: HashSet<(usize, WordTuple)> = HashSet::new();
    let mut agenda: VecDeque<(usize, WordTuple)> = VecDeque::new();

    let push = |head: usize, t: WordTuple, seen: &mut HashSet<(usize, WordTuple)>, agenda: &mut VecDeque<(usize, WordTuple)>| {
        if t.total_len() <= max_len && seen.insert((head, t.clone())) {
            agenda.push_back((head, t));
        }
    };

    for c in compiled.iter().filter(|c| c.rhs.is_empty()) {
        push(c.lhs, c.rule.instantiate(&[]), &mut seen, &mut agenda);
    }

    while let Some((head, item)) = agenda.pop_front() {
        let len = item.total_len();
        chart[head][len].push(item.clone());
        let mut produced = Vec::new();
        for c in &compiled {
            if c.extra + len > max_len {
                continue;
            }
            for pos in 0..c.rhs.len() {
                if c.rhs[pos] != head {
                    continue;
                }
                let mut chosen: Vec<&WordTuple> = Vec::with_capacity(c.rhs.len());
                combine(c.rule, &c.rhs, pos, &item, &chart, max_len - c.extra - len, &mut chosen, &mut |t| {
                    produced.push((c.lhs, t))
                });
            }
        }
        for (h, t) in produced {
            push(h, t, &mut seen, &mut agenda);
        }
    }

    let start = head_ix[&g.initial];
    Ok(chart[start].iter().flatten().map(|t| t.component(0).clone()).collect())
}

/// Enumerates premise combinations with `fixed` at position `pos` and the
/// other positions drawn from the chart within the length `budget`.
#[allow(clippy::too_many_arguments)]
fn combine<'a>(
    rule: &Rule,
    rhs: &[usize],
    pos: usize,
    fixed: &'a WordTuple,
    chart: &'a [Vec<Vec<WordTuple>>],
    budget: usize,
    chosen: &mut Vec<&'a WordTuple>,
    emit: &mut dyn FnMut(WordTuple),
) {
    let k = chosen.len();
    if k == rhs.len() {
        emit(rule.instantiate(chosen));
        return;
    }
    if k == pos {
        chosen.push(fixed);
        combine(rule, rhs, pos, fixed, chart, budget, chosen, emit);
        chosen.pop();
        return;
    }
    for (len, bucket) in chart[rhs[k]].iter().enumerate().take(budget + 1) {
        for t in bucket {
            chosen.push(t);
            combine(rule, rhs, pos, fixed, chart, budget - len, chosen, emit);
            chosen.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn rule(line: &str) -> Rule {
        Rule::parse_line(line, "r").unwrap()
    }

    fn judg(s: &str) -> Judgment {
        s.parse().unwrap()
    }

    #[test]
    fn validate_examples() {
        assert_eq!(rule("I(x1y1, x2y2) <- I(x1, x2), I(y1, y2)").validate(), Ok(()));
        assert_eq!(
            rule("I(x1x1, ) <- I(x1, x2)").validate(),
            Err(RuleViolation::RepeatedVariable(Var::new(0, 0)))
        );
        assert_eq!(
            rule("I(x1, y3) <- I(x1, x2), I(y1, y2)").validate(),
            Err(RuleViolation::UndeclaredVariable(Var::new(1, 2)))
        );
        let mut r = rule("I(x1, x2) <- I(x1, x2)");
        r.lhs.rank = 3;
        assert_eq!(r.validate(), Err(RuleViolation::Arity { expected: 3, found: 2 }));
    }

    #[test]
    fn apply_examples() {
        let wrap = rule("I(a1x1A1, x2) <- I(x1, x2)");
        assert_eq!(wrap.apply(&[judg("I(, )")]).unwrap(), judg("I(a1A1, )"));

        let empty = rule("I(, )");
        assert_eq!(empty.apply(&[]).unwrap(), judg("I(, )"));

        let bin = rule("I(x1y1, x2y2) <- I(x1, x2), I(y1, y2)");
        assert_eq!(bin.apply(&[judg("I(a1, A1)"), judg("I(a2, A2)")]).unwrap(), judg("I(a1a2, A1A2)"));
    }

    #[test]
    fn apply_rejects_mismatched_premises() {
        let bin = rule("I(x1y1, x2y2) <- I(x1, x2), I(y1, y2)");
        assert!(bin.apply(&[judg("I(a1, A1)")]).is_err());
        assert!(bin.apply(&[judg("I(a1, A1)"), judg("J(a1, A1)")]).is_err());
        assert!(bin.apply(&[judg("I(a1, A1)"), judg("I(a1)")]).is_err());
    }

    #[test]
    fn rule_text_round_trip() {
        for line in [
            "S(x1x2) <- I(x1, x2)",
            "I(x1y1x2, y2) <- I(x1, x2), I(y1, y2)",
            "I(A2x1, x2a2) <- I(x1, x2)",
            "I(, )",
            "T(x1z1y1) <- A(x1), B(y1), C(z1)",
        ] {
            assert_eq!(rule(line).to_string(), line);
        }
        assert_eq!(Rule::parse_line("bin:2,2 :: I(x1y1, x2y2) <- I(x1, x2), I(y1, y2)", "r").unwrap().id, "bin:2,2");
        assert!(Rule::parse_line("I(x1) <- I(y1)", "r").is_err());
    }

    #[test]
    fn judgment_text() {
        assert_eq!(judg("I(a1A1, )").args.lengths(), vec![2, 0]);
        assert_eq!(judg("S()").args.lengths(), vec![0]);
        assert_eq!(judg("I(a1A1, )").to_string(), "I(a1A1, )");
    }

    fn dyck() -> Grammar {
        Grammar::parse(
            "init :: S(x1) <- D(x1)\n\
             cat :: D(x1y1) <- D(x1), D(y1)\n\
             wrap :: D(a1x1A1) <- D(x1)\n\
             eps :: D()\n",
        )
        .unwrap()
    }

    #[test]
    fn enumerate_dyck_words() {
        let words = enumerate_language(&dyck(), 6).unwrap();
        // Catalan numbers 1, 1, 2, 5 for lengths 0, 2, 4, 6
        assert_eq!(words.len(), 9);
        assert!(words.contains(&w("a1A1a1a1A1A1")));
        assert!(!words.contains(&w("A1a1")));
    }

    #[test]
    fn enumerate_rejects_erasing_rules() {
        let g = Grammar::parse("S(x1) <- D(x1), D(y1)\nD()\n").unwrap();
        assert!(matches!(enumerate_language(&g, 3), Err(Error::UnsupportedGrammar(_))));
    }

    #[test]
    fn tree_replay_and_text() {
        let g = dyck();
        let leaf = DerivationTree::new("eps", judg("D()"), vec![]);
        let wrapped = DerivationTree::new("wrap", judg("D(a1A1)"), vec![leaf.clone()]);
        let tree = DerivationTree::new(
            "init",
            judg("S(a1A1)"),
            vec![DerivationTree::new("cat", judg("D(a1A1)"), vec![wrapped, leaf])],
        );
        assert_eq!(verify_tree(&g, &tree), Ok(()));
        let text = tree.to_string();
        assert_eq!(text, "init :: S(a1A1)\n  cat :: D(a1A1)\n    wrap :: D(a1A1)\n      eps :: D()\n    eps :: D()\n");
        assert_eq!(DerivationTree::parse(&text).unwrap(), tree);

        let mut bad = tree.clone();
        bad.node_mut(&[0, 0, 0]).unwrap().conclusion = judg("D(a1)");
        let err = verify_tree(&g, &bad).unwrap_err();
        // the parent's replay fails first in preorder
        assert_eq!(err.path, vec![0, 0]);

        let mut unknown = tree;
        unknown.node_mut(&[0]).unwrap().rule_id = "nope".into();
        assert_eq!(verify_tree(&g, &unknown).unwrap_err().path, vec![0]);
    }

    #[test]
    fn tree_parse_rejects_bad_indent() {
        assert!(DerivationTree::parse("eps :: D()\n    eps :: D()\n").is_err());
        assert!(DerivationTree::parse("eps :: D()\neps :: D()\n").is_err());
        assert!(DerivationTree::parse("").is_err());
    }
}
