use std::collections::{BTreeMap, BTreeSet};

use crate::automata::dfa::Dfa;
use crate::error::{Error, Result};

/// Nondeterministic automaton with epsilon moves (`None` labels).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nfa<I: Ord> {
    pub alphabet: BTreeSet<I>,
    pub edges: Vec<Vec<(Option<I>, usize)>>,
    pub initial: BTreeSet<usize>,
    pub accepting: BTreeSet<usize>,
}

impl<I: Ord + Clone> Nfa<I> {
    pub fn new(alphabet: BTreeSet<I>) -> Self {
        Nfa {
            alphabet,
            edges: Vec::new(),
            initial: BTreeSet::new(),
            accepting: BTreeSet::new(),
        }
    }

    pub fn add_state(&mut self) -> usize {
        self.edges.push(Vec::new());
        self.edges.len() - 1
    }

    pub fn add_edge(&mut self, from: usize, label: Option<I>, to: usize) {
        self.edges[from].push((label, to));
    }

    pub fn from_dfa(d: &Dfa<I>) -> Self {
        let mut n = Nfa::new(d.alphabet.clone());
        for _ in 0..d.states {
            n.add_state();
        }
        for ((f, a), t) in &d.transitions {
            n.add_edge(*f, Some(a.clone()), *t);
        }
        n.initial.insert(d.initial);
        n.accepting = d.accepting.clone();
        n
    }

    /// The finite language `{words}` as a trie.
    pub fn from_words<'a>(alphabet: BTreeSet<I>, words: impl IntoIterator<Item = &'a [I]>) -> Self
    where
        I: 'a,
    {
        let mut n = Nfa::new(alphabet);
        let root = n.add_state();
        n.initial.insert(root);
        for w in words {
            let mut s = root;
            for a in w {
                let t = n.add_state();
                n.add_edge(s, Some(a.clone()), t);
                s = t;
            }
            n.accepting.insert(s);
        }
        n
    }

    pub fn closure(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut out = set.clone();
        let mut stack: Vec<usize> = set.iter().copied().collect();
        while let Some(s) = stack.pop() {
            for (label, t) in &self.edges[s] {
                if label.is_none() && out.insert(*t) {
                    stack.push(*t);
                }
            }
        }
        out
    }

    pub fn step(&self, set: &BTreeSet<usize>, a: &I) -> BTreeSet<usize> {
        let moved = set
            .iter()
            .flat_map(|&s| &self.edges[s])
            .filter(|(label, _)| label.as_ref() == Some(a))
            .map(|&(_, t)| t)
            .collect();
        self.closure(&moved)
    }

    pub fn accepts(&self, word: &[I]) -> bool {
        let mut cur = self.closure(&self.initial);
        for a in word {
            cur = self.step(&cur, a);
            if cur.is_empty() {
                return false;
            }
        }
        cur.iter().any(|s| self.accepting.contains(s))
    }

    /// Subset construction restricted to reachable, non-empty subsets,
    /// then trimmed of dead states.
    pub fn determinize(&self) -> Dfa<I> {
        let start = self.closure(&self.initial);
        let mut index: BTreeMap<BTreeSet<usize>, usize> = BTreeMap::new();
        let mut order = vec![start.clone()];
        index.insert(start, 0);
        let mut transitions = BTreeMap::new();
        let mut k = 0;
        while k < order.len() {
            let cur = order[k].clone();
            for a in &self.alphabet {
                let next = self.step(&cur, a);
                if next.is_empty() {
                    continue;
                }
                let j = match index.get(&next) {
                    Some(&j) => j,
                    None => {
                        order.push(next.clone());
                        index.insert(next, order.len() - 1);
                        order.len() - 1
                    }
                };
                transitions.insert((k, a.clone()), j);
            }
            k += 1;
        }
        let accepting = order
            .iter()
            .enumerate()
            .filter(|(_, set)| set.iter().any(|s| self.accepting.contains(s)))
            .map(|(i, _)| i)
            .collect();
        Dfa {
            alphabet: self.alphabet.clone(),
            states: order.len(),
            transitions,
            initial: 0,
            accepting,
        }
        .trim()
    }

    /// Copies `other`'s states into `self`, returning the index offset.
    fn absorb(&mut self, other: &Nfa<I>) -> usize {
        let offset = self.edges.len();
        for edges in &other.edges {
            self.edges.push(edges.iter().map(|(l, t)| (l.clone(), t + offset)).collect());
        }
        offset
    }
}

/// Union / concatenation expression over automata sharing one alphabet.
#[derive(Debug, Clone)]
pub enum Expr<I: Ord> {
    Leaf(Nfa<I>),
    Union(Vec<Expr<I>>),
    Concat(Vec<Expr<I>>),
}

impl<I: Ord + Clone> Expr<I> {
    fn alphabet(&self) -> Option<&BTreeSet<I>> {
        match self {
            Expr::Leaf(n) => Some(&n.alphabet),
            Expr::Union(v) | Expr::Concat(v) => v.iter().find_map(|e| e.alphabet()),
        }
    }

    fn check(&self, alphabet: &BTreeSet<I>) -> Result<()> {
        match self {
            Expr::Leaf(n) if &n.alphabet != alphabet => Err(Error::AlphabetMismatch),
            Expr::Leaf(_) => Ok(()),
            Expr::Union(v) | Expr::Concat(v) => v.iter().try_for_each(|e| e.check(alphabet)),
        }
    }

    /// Builds into `out` and returns `(entry, exit)` states joined by epsilons.
    fn build(&self, out: &mut Nfa<I>) -> (usize, usize) {
        let entry = out.add_state();
        let exit = out.add_state();
        match self {
            Expr::Leaf(n) => {
                let off = out.absorb(n);
                for &s in &n.initial {
                    out.add_edge(entry, None, s + off);
                }
                for &s in &n.accepting {
                    out.add_edge(s + off, None, exit);
                }
            }
            Expr::Union(v) => {
                for e in v {
                    let (a, b) = e.build(out);
                    out.add_edge(entry, None, a);
                    out.add_edge(b, None, exit);
                }
            }
            Expr::Concat(v) => {
                let mut cur = entry;
                for e in v {
                    let (a, b) = e.build(out);
                    out.add_edge(cur, None, a);
                    cur = b;
                }
                out.add_edge(cur, None, exit);
            }
        }
        (entry, exit)
    }

    pub fn to_nfa(&self) -> Result<Nfa<I>> {
        let alphabet = self.alphabet().cloned().unwrap_or_default();
        self.check(&alphabet)?;
        let mut out = Nfa::new(alphabet);
        let (entry, exit) = self.build(&mut out);
        out.initial.insert(entry);
        out.accepting.insert(exit);
        Ok(out)
    }
}

pub fn nfa_concat_union<I: Ord + Clone>(expr: &Expr<I>) -> Result<Dfa<I>> {
    Ok(expr.to_nfa()?.determinize())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ab() -> BTreeSet<char> {
        BTreeSet::from(['a', 'b'])
    }

    fn single(c: char) -> Expr<char> {
        Expr::Leaf(Nfa::from_words(ab(), [&[c][..]]))
    }

    fn all_words(n: usize) -> Vec<Vec<char>> {
        (0..=n)
            .flat_map(|len| {
                (0..1usize << len).map(move |bits| (0..len).map(|i| if bits >> i & 1 == 1 { 'b' } else { 'a' }).collect())
            })
            .collect()
    }

    #[test]
    fn union_and_concat() {
        let u = nfa_concat_union(&Expr::Union(vec![single('a'), single('b')])).unwrap();
        let c = nfa_concat_union(&Expr::Concat(vec![single('a'), single('b')])).unwrap();
        for w in all_words(4) {
            assert_eq!(u.accepts(&w), w == ['a'] || w == ['b']);
            assert_eq!(c.accepts(&w), w == ['a', 'b']);
        }
    }

    #[test]
    fn union_is_idempotent() {
        let l = Expr::Concat(vec![single('a'), Expr::Union(vec![single('a'), single('b')])]);
        let once = nfa_concat_union(&l).unwrap();
        let twice = nfa_concat_union(&Expr::Union(vec![l.clone(), l])).unwrap();
        for w in all_words(6) {
            assert_eq!(once.accepts(&w), twice.accepts(&w));
        }
    }

    #[test]
    fn mismatch_is_an_error() {
        let other = Expr::Leaf(Nfa::from_words(BTreeSet::from(['a']), [&['a'][..]]));
        assert_eq!(nfa_concat_union(&Expr::Union(vec![single('a'), other])).unwrap_err(), Error::AlphabetMismatch);
    }

    proptest! {
        #[test]
        fn determinize_agrees_with_simulation(
            n in 1usize..5,
            edges in proptest::collection::vec((0usize..5, 0u8..3, 0usize..5), 0..14),
            acc in proptest::collection::vec(0usize..5, 0..3),
        ) {
            let mut nfa = Nfa::new(ab());
            for _ in 0..n { nfa.add_state(); }
            nfa.initial.insert(0);
            for (f, l, t) in edges {
                let label = match l { 0 => None, 1 => Some('a'), _ => Some('b') };
                nfa.add_edge(f % n, label, t % n);
            }
            for s in acc { nfa.accepting.insert(s % n); }
            let dfa = nfa.determinize();
            for w in all_words(6) {
                prop_assert_eq!(dfa.accepts(&w), nfa.accepts(&w));
            }
        }
    }
}
