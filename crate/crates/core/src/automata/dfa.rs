use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Deterministic finite automaton with a partial transition map. States are
/// `0..states`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa<I: Ord> {
    pub alphabet: BTreeSet<I>,
    pub states: usize,
    pub transitions: BTreeMap<(usize, I), usize>,
    pub initial: usize,
    pub accepting: BTreeSet<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DfaFile<I> {
    pub alphabet: Vec<I>,
    pub states: usize,
    pub transitions: Vec<(usize, I, usize)>,
    pub initial: usize,
    pub accepting: Vec<usize>,
}

impl<I: Ord + Clone> Dfa<I> {
    pub fn new(alphabet: BTreeSet<I>, states: usize, initial: usize) -> Result<Self> {
        if initial >= states {
            return Err(Error::Precondition("initial state out of range".into()));
        }
        Ok(Dfa {
            alphabet,
            states,
            transitions: BTreeMap::new(),
            initial,
            accepting: BTreeSet::new(),
        })
    }

    pub fn add_transition(&mut self, from: usize, input: I, to: usize) -> Result<()> {
        if from >= self.states || to >= self.states {
            return Err(Error::Precondition("state out of range".into()));
        }
        if !self.alphabet.contains(&input) {
            return Err(Error::AlphabetMismatch);
        }
        match self.transitions.get(&(from, input.clone())) {
            Some(&prev) if prev != to => Err(Error::Nondeterministic(format!("state {from} has two targets"))),
            _ => {
                self.transitions.insert((from, input), to);
                Ok(())
            }
        }
    }

    pub fn step(&self, state: usize, input: &I) -> Option<usize> {
        self.transitions.get(&(state, input.clone())).copied()
    }

    pub fn run(&self, word: &[I]) -> Option<usize> {
        word.iter().try_fold(self.initial, |s, a| self.step(s, a))
    }

    pub fn accepts(&self, word: &[I]) -> bool {
        self.run(word).is_some_and(|s| self.accepting.contains(&s))
    }

    /// States from which an accepting state is reachable.
    pub fn live_states(&self) -> BTreeSet<usize> {
        let mut back: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (&(from, _), &to) in &self.transitions {
            back.entry(to).or_default().push(from);
        }
        let mut live: BTreeSet<usize> = self.accepting.clone();
        let mut queue: VecDeque<usize> = live.iter().copied().collect();
        while let Some(s) = queue.pop_front() {
            for &p in back.get(&s).into_iter().flatten() {
                if live.insert(p) {
                    queue.push_back(p);
                }
            }
        }
        live
    }

    /// Drops unreachable and dead states and renumbers in BFS order.
    pub fn trim(&self) -> Dfa<I> {
        let live = self.live_states();
        let mut index = BTreeMap::new();
        let mut order = Vec::new();
        if live.contains(&self.initial) {
            index.insert(self.initial, 0);
            order.push(self.initial);
        }
        let mut k = 0;
        while k < order.len() {
            let s = order[k];
            for a in &self.alphabet {
                if let Some(t) = self.step(s, a) {
                    if live.contains(&t) && !index.contains_key(&t) {
                        index.insert(t, order.len());
                        order.push(t);
                    }
                }
            }
            k += 1;
        }
        let mut out = Dfa {
            alphabet: self.alphabet.clone(),
            states: order.len().max(1),
            transitions: BTreeMap::new(),
            initial: 0,
            accepting: BTreeSet::new(),
        };
        for (&s, &i) in &index {
            if self.accepting.contains(&s) {
                out.accepting.insert(i);
            }
            for a in &self.alphabet {
                if let Some(j) = self.step(s, a).and_then(|t| index.get(&t)) {
                    out.transitions.insert((i, a.clone()), *j);
                }
            }
        }
        out
    }

    /// Every accepted word of length exactly `n`.
    pub fn words(&self, n: usize) -> BTreeSet<Vec<I>> {
        let live = self.live_states();
        let mut out = BTreeSet::new();
        let mut word = Vec::with_capacity(n);
        self.collect(self.initial, n, &live, &mut word, &mut out);
        out
    }

    fn collect(&self, s: usize, left: usize, live: &BTreeSet<usize>, word: &mut Vec<I>, out: &mut BTreeSet<Vec<I>>) {
        if !live.contains(&s) {
            return;
        }
        if left == 0 {
            if self.accepting.contains(&s) {
                out.insert(word.clone());
            }
            return;
        }
        for a in &self.alphabet {
            if let Some(t) = self.step(s, a) {
                word.push(a.clone());
                self.collect(t, left - 1, live, word, out);
                word.pop();
            }
        }
    }

    pub fn to_file(&self) -> DfaFile<I> {
        DfaFile {
            alphabet: self.alphabet.iter().cloned().collect(),
            states: self.states,
            transitions: self.transitions.iter().map(|((f, a), t)| (*f, a.clone(), *t)).collect(),
            initial: self.initial,
            accepting: self.accepting.iter().copied().collect(),
        }
    }

    pub fn from_file(file: DfaFile<I>) -> Result<Self> {
        let mut d = Dfa::new(file.alphabet.into_iter().collect(), file.states, file.initial)?;
        for (f, a, t) in file.transitions {
            d.add_transition(f, a, t)?;
        }
        for s in file.accepting {
            if s >= d.states {
                return Err(Error::Precondition("accepting state out of range".into()));
            }
            d.accepting.insert(s);
        }
        Ok(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn even_as() -> Dfa<char> {
        let mut d = Dfa::new(BTreeSet::from(['a', 'b']), 2, 0).unwrap();
        d.add_transition(0, 'a', 1).unwrap();
        d.add_transition(1, 'a', 0).unwrap();
        d.add_transition(0, 'b', 0).unwrap();
        d.add_transition(1, 'b', 1).unwrap();
        d.accepting.insert(0);
        d
    }

    #[test]
    fn runs_and_words() {
        let d = even_as();
        assert!(d.accepts(&[]));
        assert!(d.accepts(&['a', 'b', 'a']));
        assert!(!d.accepts(&['a']));
        assert!(!d.accepts(&['a', 'b']));
        assert_eq!(d.words(2), BTreeSet::from([vec!['a', 'a'], vec!['b', 'b']]));
    }

    #[test]
    fn rejects_conflicts() {
        let mut d = even_as();
        assert!(d.add_transition(0, 'a', 0).is_err());
        assert!(d.add_transition(0, 'c', 0).is_err());
    }

    #[test]
    fn json_round_trip() {
        let d = even_as();
        let text = serde_json::to_string(&d.to_file()).unwrap();
        let back = Dfa::from_file(serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, d);
    }
}
