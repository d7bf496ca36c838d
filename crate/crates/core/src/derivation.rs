//! Derivation trees in G_n for every tuple whose concatenation is in O_n.

use crate::decompose::{decompose_with_bound, Backend};
use crate::error::{Error, Result};
use crate::grammar_gn::{binary_id, cross_id, start_symbol, tuple_symbol, wrap_id, EMPTY_ID, INIT_ID};
use crate::mcfg::{DerivationTree, Judgment};
use crate::tucker::DEFAULT_SCAN_BOUND;
use crate::words::{check_types, Word, WordTuple};

/// Derives `⊢ S(w)` through `⊢ I(w, ε, …, ε)`.
pub fn derive_word(w: &Word, n: usize) -> Result<DerivationTree> {
    derive_word_with(w, n, Backend::Necklace, DEFAULT_SCAN_BOUND)
}

pub fn derive_word_with(w: &Word, n: usize, backend: Backend, bound: usize) -> Result<DerivationTree> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let mut components = vec![Word::empty(); n];
    components[0] = w.clone();
    let child = derive_tuple_with(&WordTuple::new(components), backend, bound)?;
    let conclusion = Judgment::new(start_symbol(), WordTuple::new(vec![w.clone()]));
    Ok(DerivationTree::new(INIT_ID, conclusion, vec![child]))
}

/// Derives `⊢ I(s_1, …, s_n)`.
pub fn derive_tuple(t: &WordTuple) -> Result<DerivationTree> {
    derive_tuple_with(t, Backend::Necklace, DEFAULT_SCAN_BOUND)
}

pub fn derive_tuple_with(t: &WordTuple, backend: Backend, bound: usize) -> Result<DerivationTree> {
    let n = t.arity();
    if n == 0 {
        return Err(Error::Precondition("tuple must have at least one component".into()));
    }
    let s = t.concat();
    check_types(&s, n)?;
    if !s.is_in_on(n)? {
        return Err(Error::NotInLanguage(format!("{t} is not balanced")));
    }
    Deriver { backend, bound }.derive(t)
}

struct Deriver {
    backend: Backend,
    bound: usize,
}

fn measure(t: &WordTuple) -> (usize, usize) {
    (t.total_len(), t.empty_count())
}

impl Deriver {
    fn child(&self, parent: &WordTuple, t: &WordTuple) -> Result<DerivationTree> {
        if measure(t) >= measure(parent) {
            return Err(Error::Internal(format!("measure does not decrease from {parent} to {t}")));
        }
        self.derive(t)
    }

    fn node(&self, id: String, t: &WordTuple, children: Vec<DerivationTree>) -> DerivationTree {
        DerivationTree::new(id, Judgment::new(tuple_symbol(t.arity()), t.clone()), children)
    }

    fn derive(&self, t: &WordTuple) -> Result<DerivationTree> {
        let n = t.arity();
        let comps = t.components();

        // (R) two compatible endpoints: peel them with a unary rule
        let ends = t.endpoint_list();
        let pair = ends
            .iter()
            .enumerate()
            .flat_map(|(i, a)| ends[i + 1..].iter().map(move |b| (a, b)))
            .find(|(a, b)| a.letter.is_compatible(b.letter));
        if let Some((e1, e2)) = pair {
            let mut reduced: Vec<Word> = comps.to_vec();
            let id = if e1.component == e2.component {
                let c = &comps[e1.component];
                reduced[e1.component] = c.slice(1, c.len() - 1);
                wrap_id(e1.component + 1, e1.letter)
            } else {
                for e in [e1, e2] {
                    let c = &reduced[e.component];
                    reduced[e.component] = match e.side {
                        crate::words::Side::Left => c.slice(1, c.len()),
                        crate::words::Side::Right => c.slice(0, c.len() - 1),
                    };
                }
                cross_id(e1.component + 1, e1.side, e2.component + 1, e2.side, e1.letter)
            };
            let reduced = WordTuple::new(reduced);
            let sub = self.child(t, &reduced)?;
            return Ok(self.node(id, t, vec![sub]));
        }

        // (1) a one-letter component α: carry α, ᾱ in a tuple of their own
        if let Some(j) = comps.iter().position(|c| c.len() == 1) {
            let alpha = comps[j].letters()[0];
            let (k, pos) = comps
                .iter()
                .enumerate()
                .find_map(|(k, c)| c.letters().iter().position(|&l| l == alpha.bar()).map(|p| (k, p)))
                .ok_or_else(|| Error::Internal(format!("no {} to pair with {alpha} in {t}", alpha.bar())))?;
            let (v1, v2) = (comps[k].slice(0, pos), comps[k].slice(pos + 1, comps[k].len()));
            let mut carrier = vec![Word::empty(); n];
            carrier[j] = comps[j].clone();
            carrier[k] = Word::new(vec![alpha.bar()]);
            let carrier = WordTuple::new(carrier);

            let mut rest = Vec::with_capacity(n);
            let mut composition = vec![2; n];
            composition[j] = 1;
            composition[k] = 3;
            for (i, c) in comps.iter().enumerate() {
                if i == k {
                    rest.push(v1.clone());
                    rest.push(v2.clone());
                } else if i != j {
                    rest.push(c.clone());
                }
            }
            let rest = WordTuple::new(rest);
            let carrier_tree = self.child(t, &carrier)?;
            let rest_tree = self.child(t, &rest)?;
            let children = if j < k { vec![carrier_tree, rest_tree] } else { vec![rest_tree, carrier_tree] };
            return Ok(self.node(binary_id(&composition), t, children));
        }

        // (2) all empty
        if comps.iter().all(Word::is_empty) {
            return Ok(self.node(EMPTY_ID.into(), t, vec![]));
        }

        // (3) an empty component next to a long one: split the long one
        if comps.iter().any(Word::is_empty) {
            let pick = (0..n - 1)
                .find(|&j| comps[j].is_empty() && !comps[j + 1].is_empty())
                .map(|j| (j, j + 1))
                .or_else(|| (0..n - 1).find(|&j| !comps[j].is_empty() && comps[j + 1].is_empty()).map(|j| (j + 1, j)))
                .ok_or_else(|| Error::Internal(format!("no empty/nonempty neighbors in {t}")))?;
            let (empty, long) = pick;
            let lo = empty.min(long);
            let c = &comps[long];
            let mut split = comps.to_vec();
            split[lo] = c.slice(0, 1);
            split[lo + 1] = c.slice(1, c.len());
            let split = WordTuple::new(split);
            let mut composition = vec![2; n];
            composition[empty] = 0;
            composition[long] = 4;
            let split_tree = self.child(t, &split)?;
            let empty_tree = self.child(t, &WordTuple::empty(n))?;
            return Ok(self.node(binary_id(&composition), t, vec![split_tree, empty_tree]));
        }

        // (4) irreducible with every component of length ≥ 2
        let d = decompose_with_bound(t, self.backend, self.bound)?;
        let odd = self.child(t, &d.odd())?;
        let even = self.child(t, &d.even())?;
        Ok(self.node(binary_id(&d.composition()), t, vec![odd, even]))
    }
}
