use std::collections::{BTreeMap, BTreeSet};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum StackSym<G> {
    Bottom,
    Sym(G),
}

impl<G> StackSym<G> {
    pub fn is_bottom(&self) -> bool {
        matches!(self, StackSym::Bottom)
    }
}

/// A stack word, top first. Well formed when it ends with the single bottom.
pub type Stack<G> = Vec<StackSym<G>>;

fn well_formed<G>(stack: &[StackSym<G>]) -> bool {
    stack.last().is_some_and(|s| s.is_bottom()) && stack.iter().filter(|s| s.is_bottom()).count() == 1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Acceptance<S: Ord, G: Ord> {
    /// Accept in any of these states, whatever the stack.
    States(BTreeSet<S>),
    /// Accept on these exact (state, stack) pairs.
    Configurations(BTreeSet<(S, Stack<G>)>),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Id<S, G> {
    pub state: S,
    pub stack: Stack<G>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepOutcome<S, G> {
    Next(Id<S, G>),
    Reject,
}

/// Deterministic pushdown automaton. `λ(input, state, top) = (state', push)`
/// replaces the top by `push` (first letter on top), `|push| <= 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dpda<I: Ord, S: Ord, G: Ord> {
    pub alphabet: BTreeSet<I>,
    pub transitions: BTreeMap<(I, S, StackSym<G>), (S, Stack<G>)>,
    pub initial_state: S,
    pub initial_stack: Stack<G>,
    pub acceptance: Acceptance<S, G>,
}

/// Accumulates transitions, rejecting conflicts and bottom-discipline
/// violations as they are added.
#[derive(Debug, Clone)]
pub struct DpdaBuilder<I: Ord, S: Ord, G: Ord> {
    alphabet: BTreeSet<I>,
    transitions: BTreeMap<(I, S, StackSym<G>), (S, Stack<G>)>,
}

impl<I, S, G> DpdaBuilder<I, S, G>
where
    I: Ord + Clone + std::fmt::Debug,
    S: Ord + Clone + std::fmt::Debug,
    G: Ord + Clone + std::fmt::Debug,
{
    pub fn new(alphabet: BTreeSet<I>) -> Self {
        DpdaBuilder {
            alphabet,
            transitions: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, input: I, state: S, top: StackSym<G>, next: S, push: Stack<G>) -> Result<()> {
        if !self.alphabet.contains(&input) {
            return Err(Error::AlphabetMismatch);
        }
        if push.len() > 2 {
            return Err(Error::Precondition(format!("push word {push:?} longer than 2")));
        }
        let bottoms = push.iter().filter(|s| s.is_bottom()).count();
        if top.is_bottom() {
            if bottoms != 1 || !push.last().is_some_and(|s| s.is_bottom()) {
                return Err(Error::BottomDiscipline(format!("on bottom, push {push:?} must end with the only bottom")));
            }
        } else if bottoms != 0 {
            return Err(Error::BottomDiscipline(format!("push {push:?} above the bottom contains a bottom")));
        }
        let key = (input, state, top);
        match self.transitions.get(&key) {
            Some(prev) if *prev != (next.clone(), push.clone()) => {
                Err(Error::Nondeterministic(format!("{key:?} has two different transitions")))
            }
            _ => {
                self.transitions.insert(key, (next, push));
                Ok(())
            }
        }
    }

    pub fn build(self, initial_state: S, initial_stack: Stack<G>, acceptance: Acceptance<S, G>) -> Result<Dpda<I, S, G>> {
        if !well_formed(&initial_stack) {
            return Err(Error::BottomDiscipline("initial stack must end with the only bottom".into()));
        }
        if let Acceptance::Configurations(f) = &acceptance {
            if f.iter().any(|(_, stack)| !well_formed(stack)) {
                return Err(Error::BottomDiscipline("accepting stack must end with the only bottom".into()));
            }
        }
        Ok(Dpda {
            alphabet: self.alphabet,
            transitions: self.transitions,
            initial_state,
            initial_stack,
            acceptance,
        })
    }
}

impl<I, S, G> Dpda<I, S, G>
where
    I: Ord + Clone,
    S: Ord + Clone,
    G: Ord + Clone,
{
    pub fn initial(&self) -> Id<S, G> {
        Id {
            state: self.initial_state.clone(),
            stack: self.initial_stack.clone(),
        }
    }

    pub fn step(&self, id: &Id<S, G>, input: &I) -> StepOutcome<S, G> {
        debug_assert!(well_formed(&id.stack), "bottom discipline broken along a run");
        let Some(top) = id.stack.first() else {
            return StepOutcome::Reject;
        };
        match self.transitions.get(&(input.clone(), id.state.clone(), top.clone())) {
            None => StepOutcome::Reject,
            Some((next, push)) => {
                let mut stack = push.clone();
                stack.extend_from_slice(&id.stack[1..]);
                StepOutcome::Next(Id {
                    state: next.clone(),
                    stack,
                })
            }
        }
    }

    pub fn run(&self, word: &[I]) -> Option<Id<S, G>> {
        let mut id = self.initial();
        for a in word {
            match self.step(&id, a) {
                StepOutcome::Next(next) => id = next,
                StepOutcome::Reject => return None,
            }
        }
        Some(id)
    }

    pub fn is_accepting(&self, id: &Id<S, G>) -> bool {
        match &self.acceptance {
            Acceptance::States(f) => f.contains(&id.state),
            Acceptance::Configurations(f) => f.contains(&(id.state.clone(), id.stack.clone())),
        }
    }

    pub fn accepts(&self, word: &[I]) -> bool {
        self.run(word).is_some_and(|id| self.is_accepting(&id))
    }

    pub fn states(&self) -> BTreeSet<S> {
        let mut out = BTreeSet::from([self.initial_state.clone()]);
        for ((_, s, _), (t, _)) in &self.transitions {
            out.insert(s.clone());
            out.insert(t.clone());
        }
        out
    }

    pub fn stack_alphabet(&self) -> BTreeSet<StackSym<G>> {
        let mut out: BTreeSet<StackSym<G>> = self.initial_stack.iter().cloned().collect();
        for ((_, _, top), (_, push)) in &self.transitions {
            out.insert(top.clone());
            out.extend(push.iter().cloned());
        }
        out
    }

    /// Non-accepting states whose every transition stays put: no run
    /// entering one can be accepted.
    pub fn sinks(&self) -> BTreeSet<S> {
        let accepting = |s: &S| match &self.acceptance {
            Acceptance::States(f) => f.contains(s),
            Acceptance::Configurations(f) => f.iter().any(|(q, _)| q == s),
        };
        let mut escapes = BTreeSet::new();
        for ((_, s, _), (t, _)) in &self.transitions {
            if s != t {
                escapes.insert(s.clone());
            }
        }
        self.states()
            .into_iter()
            .filter(|s| !accepting(s) && !escapes.contains(s))
            .collect()
    }

    /// Accepted words of length exactly `n`, by depth-first search.
    pub fn words(&self, n: usize) -> BTreeSet<Vec<I>> {
        let sinks = self.sinks();
        let mut out = BTreeSet::new();
        let mut word = Vec::new();
        self.collect(&self.initial(), n, &sinks, &mut word, &mut out);
        out
    }

    fn collect(&self, id: &Id<S, G>, left: usize, sinks: &BTreeSet<S>, word: &mut Vec<I>, out: &mut BTreeSet<Vec<I>>) {
        if sinks.contains(&id.state) {
            return;
        }
        if left == 0 {
            if self.is_accepting(id) {
                out.insert(word.clone());
            }
            return;
        }
        for a in &self.alphabet {
            if let StepOutcome::Next(next) = self.step(id, a) {
                word.push(a.clone());
                self.collect(&next, left - 1, sinks, word, out);
                word.pop();
            }
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TransitionEntry<I, S, G> {
    pub input: I,
    pub state: S,
    pub top: StackSym<G>,
    pub next: S,
    pub push: Stack<G>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(bound(serialize = "I: Serialize, S: Serialize + Ord, G: Serialize + Ord"))]
#[serde(bound(deserialize = "I: DeserializeOwned, S: DeserializeOwned + Ord, G: DeserializeOwned + Ord"))]
pub struct DpdaFile<I, S: Ord, G: Ord> {
    pub alphabet: Vec<I>,
    pub initial_state: S,
    pub initial_stack: Stack<G>,
    pub transitions: Vec<TransitionEntry<I, S, G>>,
    pub acceptance: Acceptance<S, G>,
}

impl<I, S, G> Dpda<I, S, G>
where
    I: Ord + Clone + std::fmt::Debug,
    S: Ord + Clone + std::fmt::Debug,
    G: Ord + Clone + std::fmt::Debug,
{
    pub fn to_file(&self) -> DpdaFile<I, S, G> {
        DpdaFile {
            alphabet: self.alphabet.iter().cloned().collect(),
            initial_state: self.initial_state.clone(),
            initial_stack: self.initial_stack.clone(),
            transitions: self
                .transitions
                .iter()
                .map(|((input, state, top), (next, push))| TransitionEntry {
                    input: input.clone(),
                    state: state.clone(),
                    top: top.clone(),
                    next: next.clone(),
                    push: push.clone(),
                })
                .collect(),
            acceptance: self.acceptance.clone(),
        }
    }

    pub fn from_file(file: DpdaFile<I, S, G>) -> Result<Self> {
        let mut b = DpdaBuilder::new(file.alphabet.into_iter().collect());
        for t in file.transitions {
            b.add(t.input, t.state, t.top, t.next, t.push)?;
        }
        b.build(file.initial_state, file.initial_stack, file.acceptance)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use StackSym::{Bottom, Sym};

    type Counter = Dpda<char, u8, char>;

    fn counter() -> Counter {
        let mut b = DpdaBuilder::new(BTreeSet::from(['a']));
        b.add('a', 0, Bottom, 0, vec![Sym('X'), Bottom]).unwrap();
        b.add('a', 0, Sym('X'), 0, vec![Sym('X'), Sym('X')]).unwrap();
        let f = BTreeSet::from([(0, vec![Sym('X'), Sym('X'), Bottom])]);
        b.build(0, vec![Bottom], Acceptance::Configurations(f)).unwrap()
    }

    #[test]
    fn step_semantics() {
        let mut b = DpdaBuilder::new(BTreeSet::from(['a', 'b']));
        b.add('a', 0u8, Bottom, 1, vec![Sym('X'), Bottom]).unwrap();
        b.add('b', 1, Sym('X'), 0, vec![]).unwrap();
        let d = b.build(0, vec![Bottom], Acceptance::States(BTreeSet::from([0]))).unwrap();
        let id = d.initial();
        let StepOutcome::Next(id) = d.step(&id, &'a') else { panic!() };
        assert_eq!(id, Id { state: 1, stack: vec![Sym('X'), Bottom] });
        let StepOutcome::Next(id) = d.step(&id, &'b') else { panic!() };
        assert_eq!(id, Id { state: 0, stack: vec![Bottom] });
        assert_eq!(d.step(&id, &'b'), StepOutcome::Reject);
    }

    #[test]
    fn bottom_discipline_at_construction() {
        let mut b: DpdaBuilder<char, u8, char> = DpdaBuilder::new(BTreeSet::from(['a']));
        assert!(matches!(b.add('a', 0, Bottom, 1, vec![Bottom, Sym('X')]), Err(Error::BottomDiscipline(_))));
        assert!(matches!(b.add('a', 0, Bottom, 1, vec![]), Err(Error::BottomDiscipline(_))));
        assert!(matches!(b.add('a', 0, Sym('X'), 1, vec![Bottom]), Err(Error::BottomDiscipline(_))));
        b.add('a', 0, Sym('X'), 1, vec![]).unwrap();
        assert!(matches!(b.add('a', 0, Sym('X'), 0, vec![]), Err(Error::Nondeterministic(_))));
        assert!(b.build(0, vec![Sym('X')], Acceptance::States(BTreeSet::new())).is_err());
    }

    #[test]
    fn counter_accepts_exactly_aa() {
        let d = counter();
        assert!(d.accepts(&['a', 'a']));
        for n in [0, 1, 3, 4] {
            assert!(!d.accepts(&vec!['a'; n]));
        }
        assert_eq!(d.words(2), BTreeSet::from([vec!['a', 'a']]));
    }

    #[test]
    fn empty_word_and_undefined_steps() {
        let mut b: DpdaBuilder<char, u8, char> = DpdaBuilder::new(BTreeSet::from(['a', 'b']));
        b.add('a', 0, Bottom, 0, vec![Bottom]).unwrap();
        let d = b.build(0, vec![Bottom], Acceptance::Configurations(BTreeSet::from([(0, vec![Bottom])]))).unwrap();
        assert!(d.accepts(&[]));
        assert!(d.accepts(&['a', 'a']));
        assert!(!d.accepts(&['a', 'b']));
    }

    #[test]
    fn json_round_trip() {
        let d = counter();
        let text = serde_json::to_string(&d.to_file()).unwrap();
        let back: Counter = Dpda::from_file(serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, d);
    }
}
