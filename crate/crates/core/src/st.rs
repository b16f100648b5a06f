//! Recognizers for the languages of `S_T` when zigzags are bounded: window
//! DFAs `C_{u,v}`, one-way-stack DPDAs `R_{u,v}` / `L_{u,v}`, and a
//! membership decider for the union of their concatenations.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::automata::{Acceptance, Dfa, Dpda, DpdaBuilder, StackSym};
use crate::error::{Error, Result};
use crate::machine::{State, Symbol, TuringMachine};
use crate::trace::{all_tapes, enumerate_lst, render_t, render_word, Budget, TraceSymbolT};

/// A window `word` over `[-r, r]`, a state and a head position in the window.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PartialConfiguration {
    pub word: Vec<Symbol>,
    pub state: State,
    pub pos: i64,
}

impl PartialConfiguration {
    pub fn new(word: Vec<Symbol>, state: State, pos: i64) -> Result<Self> {
        if word.len() % 2 == 0 {
            return Err(Error::Precondition(format!("window length {} is not odd", word.len())));
        }
        let r = (word.len() / 2) as i64;
        if pos.abs() > r {
            return Err(Error::Precondition(format!("position {pos} outside [-{r}, {r}]")));
        }
        Ok(PartialConfiguration { word, state, pos })
    }

    /// Parses `cells:state:pos`. Cells are comma separated, or one character
    /// each when there is no comma.
    pub fn parse(m: &TuringMachine, text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(':').collect();
        let [cells, state, pos] = parts[..] else {
            return Err(Error::Precondition(format!("expected cells:state:pos, got `{text}`")));
        };
        let word = if cells.contains(',') {
            cells.split(',').map(|c| m.symbol_by_name(c.trim())).collect::<Result<Vec<_>>>()?
        } else {
            cells.chars().map(|c| m.symbol_by_name(&c.to_string())).collect::<Result<Vec<_>>>()?
        };
        let pos = pos
            .trim()
            .parse()
            .map_err(|_| Error::Precondition(format!("bad position `{pos}`")))?;
        PartialConfiguration::new(word, m.state_by_name(state.trim())?, pos)
    }

    pub fn radius(&self) -> i64 {
        (self.word.len() / 2) as i64
    }

    pub fn get(&self, i: i64) -> Symbol {
        self.word[(i + self.radius()) as usize]
    }

    /// Position negated, window reversed.
    pub fn mirrored(&self) -> Self {
        PartialConfiguration {
            word: self.word.iter().rev().copied().collect(),
            state: self.state,
            pos: -self.pos,
        }
    }

    /// One machine step inside the window. The head must be strictly inside.
    fn step(&self, m: &TuringMachine) -> Self {
        let r = self.radius();
        debug_assert!(self.pos.abs() < r);
        let act = m.rule(self.get(self.pos), self.state);
        let mut word = self.word.clone();
        word[(self.pos + r) as usize] = act.write;
        PartialConfiguration {
            word,
            state: act.next,
            pos: self.pos + act.mv.delta(),
        }
    }

    pub fn render(&self, m: &TuringMachine) -> String {
        let cells: Vec<&str> = self.word.iter().map(|&s| m.symbol_name(s)).collect();
        format!("{}:{}:{}", cells.join(","), m.state_name(self.state), self.pos)
    }
}

pub fn st_alphabet(m: &TuringMachine) -> BTreeSet<TraceSymbolT> {
    m.symbols()
        .flat_map(|a| m.state_ids().map(move |q| TraceSymbolT::new(a, q)))
        .collect()
}

/// The window orbit of `u`: configurations until the head reaches the
/// window border or an earlier configuration recurs. Returns the visited
/// configurations and, for a periodic orbit, the index it loops back to.
pub(crate) fn window_orbit(m: &TuringMachine, u: &PartialConfiguration) -> (Vec<PartialConfiguration>, Option<usize>) {
    let r = u.radius();
    let mut seen: BTreeMap<PartialConfiguration, usize> = BTreeMap::new();
    let mut orbit = vec![u.clone()];
    seen.insert(u.clone(), 0);
    loop {
        let cur = orbit.last().expect("nonempty");
        if cur.pos.abs() >= r {
            return (orbit, None);
        }
        let next = cur.step(m);
        if let Some(&k) = seen.get(&next) {
            return (orbit, Some(k));
        }
        seen.insert(next.clone(), orbit.len());
        orbit.push(next);
    }
}

/// Window DFA over an arbitrary observation of the window configuration.
pub(crate) fn window_dfa<I: Ord + Clone>(
    m: &TuringMachine,
    u: &PartialConfiguration,
    alphabet: BTreeSet<I>,
    observe: impl Fn(&PartialConfiguration) -> I,
    accept: impl Fn(&PartialConfiguration) -> bool,
) -> Dfa<I> {
    let r = u.radius();
    let (orbit, back) = window_orbit(m, u);
    let mut d = Dfa::new(alphabet, orbit.len(), 0).expect("nonempty orbit");
    for (k, c) in orbit.iter().enumerate() {
        if accept(c) {
            d.accepting.insert(k);
        }
        if c.pos.abs() >= r {
            continue;
        }
        let to = if k + 1 < orbit.len() { k + 1 } else { back.expect("loop target") };
        d.add_transition(k, observe(c), to).expect("one successor per configuration");
    }
    d
}

/// `C_{u,v}`: traces from `[u]` to `[v]` with the head strictly inside the
/// window before the last step. `v = None` accepts every such prefix.
pub fn build_c(m: &TuringMachine, u: &PartialConfiguration, v: Option<&PartialConfiguration>) -> Result<Dfa<TraceSymbolT>> {
    if u.pos != 0 {
        return Err(Error::Precondition(format!("u must have its head at 0, not {}", u.pos)));
    }
    if let Some(v) = v {
        if v.radius() != u.radius() {
            return Err(Error::Precondition("u and v have different radii".into()));
        }
    }
    Ok(window_dfa(
        m,
        u,
        st_alphabet(m),
        |c| TraceSymbolT::new(c.get(c.pos), c.state),
        |c| v.map_or(true, |v| c == v),
    ))
}

/// Whether some `u'` with its head at 0 reaches `u` inside the window.
pub fn window_reaches(m: &TuringMachine, u: &PartialConfiguration) -> bool {
    let r = u.radius();
    all_tapes(m.alphabet_size(), u.word.len()).any(|word| {
        m.state_ids().any(|q| {
            let start = PartialConfiguration {
                word: word.clone(),
                state: q,
                pos: 0,
            };
            window_orbit(m, &start).0.iter().any(|c| c == u)
        }) && r > 0
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    Right,
    Left,
}

impl Side {
    pub fn sign(self) -> i64 {
        match self {
            Side::Right => 1,
            Side::Left => -1,
        }
    }
}

/// State of an excursion automaton: the known cells from the head rightwards
/// (oriented) and the head state.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ExcursionState {
    Live(Vec<Symbol>, State),
    Reject,
}

pub type ExcursionDpda = Dpda<TraceSymbolT, ExcursionState, Symbol>;

fn words_upto(alphabet: usize, n: usize) -> impl Iterator<Item = Vec<Symbol>> {
    (0..=n).flat_map(move |len| all_tapes(alphabet, len))
}

/// Transition of the excursion automaton. Cells at oriented positions
/// `0..depth` are on the stack (top = cell next to the head), so the stack
/// depth is the head position.
pub(crate) fn excursion_lambda(
    m: &TuringMachine,
    radius: usize,
    side: Side,
    input: TraceSymbolT,
    w: &[Symbol],
    q: State,
    top: StackSym<Symbol>,
) -> (ExcursionState, Vec<StackSym<Symbol>>) {
    let reject = (ExcursionState::Reject, vec![top]);
    let StackSym::Sym(beta) = top else {
        return reject;
    };
    if input.state != q || w.first().is_some_and(|&w0| w0 != input.symbol) {
        return reject;
    }
    let act = m.rule(input.symbol, q);
    let rest = w.get(1..).unwrap_or(&[]);
    if act.mv.delta() * side.sign() == 1 {
        (ExcursionState::Live(rest.to_vec(), act.next), vec![StackSym::Sym(act.write), top])
    } else {
        let mut nw = vec![beta, act.write];
        nw.extend_from_slice(rest);
        nw.truncate(radius);
        (ExcursionState::Live(nw, act.next), vec![])
    }
}

fn build_excursion(m: &TuringMachine, u: &PartialConfiguration, v: Option<&PartialConfiguration>, side: Side) -> Result<ExcursionDpda> {
    let n = u.radius();
    let s = side.sign();
    if n < 1 {
        return Err(Error::Precondition("radius must be at least 1".into()));
    }
    if u.pos != s * n {
        return Err(Error::Precondition(format!("u must have its head at {}, not {}", s * n, u.pos)));
    }
    if let Some(v) = v {
        if v.radius() != n {
            return Err(Error::Precondition("u and v have different radii".into()));
        }
        if (-n..=0).any(|k| u.get(s * k) != v.get(s * k)) {
            return Err(Error::Precondition("u and v disagree on the side the excursion never visits".into()));
        }
    }
    if !window_reaches(m, u) {
        return Err(Error::Precondition("no window phase from the center reaches u".into()));
    }

    let radius = n as usize;
    let alphabet = st_alphabet(m);
    let tops: Vec<StackSym<Symbol>> = std::iter::once(StackSym::Bottom).chain(m.symbols().map(StackSym::Sym)).collect();
    let mut b = DpdaBuilder::new(alphabet.clone());
    for w in words_upto(m.alphabet_size(), radius) {
        for q in m.state_ids() {
            for &input in &alphabet {
                for &top in &tops {
                    let (next, push) = excursion_lambda(m, radius, side, input, &w, q, top);
                    b.add(input, ExcursionState::Live(w.clone(), q), top, next, push)?;
                }
            }
        }
    }
    for &input in &alphabet {
        for &top in &tops {
            b.add(input, ExcursionState::Reject, top, ExcursionState::Reject, vec![top])?;
        }
    }

    let oriented = |c: &PartialConfiguration, k: i64| c.get(s * k);
    let initial_state = ExcursionState::Live(vec![oriented(u, n)], u.state);
    let initial_stack: Vec<StackSym<Symbol>> = (0..n)
        .rev()
        .map(|k| StackSym::Sym(oriented(u, k)))
        .chain(std::iter::once(StackSym::Bottom))
        .collect();

    let acceptance = match v {
        None => Acceptance::States(
            words_upto(m.alphabet_size(), radius)
                .flat_map(|w| m.state_ids().map(move |q| ExcursionState::Live(w.clone(), q)))
                .collect(),
        ),
        Some(v) => {
            let d = s * v.pos;
            let mut f = BTreeSet::new();
            if d >= 0 {
                let stack: Vec<StackSym<Symbol>> = (0..d)
                    .rev()
                    .map(|k| StackSym::Sym(oriented(v, k)))
                    .chain(std::iter::once(StackSym::Bottom))
                    .collect();
                // The state word must cover the window up to its edge when
                // it can; cells past the edge are unconstrained.
                let known: Vec<Symbol> = (d..=n).map(|k| oriented(v, k)).collect();
                let shortest = if d == 0 { radius } else { known.len() };
                for len in shortest..=radius {
                    for tail in all_tapes(m.alphabet_size(), len.saturating_sub(known.len())) {
                        let mut w: Vec<Symbol> = known.iter().copied().take(len).collect();
                        w.extend(tail);
                        f.insert((ExcursionState::Live(w, v.state), stack.clone()));
                    }
                }
            }
            Acceptance::Configurations(f)
        }
    };
    b.build(initial_state, initial_stack, acceptance)
}

/// `R_{u,v}`: traces of excursions to the right of cell 0 starting with the
/// head at `+radius`. `v = None` accepts every prefix of such an excursion.
pub fn build_r(m: &TuringMachine, u: &PartialConfiguration, v: Option<&PartialConfiguration>) -> Result<ExcursionDpda> {
    build_excursion(m, u, v, Side::Right)
}

/// Mirror of [`build_r`]: excursions to the left of cell 0.
pub fn build_l(m: &TuringMachine, u: &PartialConfiguration, v: Option<&PartialConfiguration>) -> Result<ExcursionDpda> {
    build_excursion(m, u, v, Side::Left)
}

/// `2^(|Ω|² |Γ|² + 1) + 3`.
pub fn zigzag_bound_from_dpda(states: u64, stack_alphabet: u64) -> BigUint {
    let exp = (states * states * stack_alphabet * stack_alphabet + 1) as usize;
    (BigUint::from(1u8) << exp) + BigUint::from(3u8)
}

/// The phase sequences of the union, `C` for window phases, `R` / `L` for
/// excursions.
pub const CASES: [&str; 9] = ["C", "CR", "CRC", "CRCL", "CRCLC", "CL", "CLC", "CLR", "CLRC"];

/// Membership decider for the union of phase concatenations at window
/// radius `width + 1`: exact when the machine makes no zigzag wider than
/// `width`.
#[derive(Debug, Clone)]
pub struct PhaseDecider {
    machine: TuringMachine,
    width: usize,
    radius: i64,
    alphabet: Vec<TraceSymbolT>,
}

#[derive(Debug, Clone)]
enum Mode {
    Window {
        cells: Vec<Option<Symbol>>,
        pos: i64,
    },
    Excursion {
        side: Side,
        /// Oriented cells `0..depth`, top last.
        stack: Vec<Option<Symbol>>,
        w: Vec<Option<Symbol>>,
        saved: Vec<Option<Symbol>>,
    },
    Blocked,
}

/// One deterministic run of the phase machine. Window cells that were not
/// read yet are unknown and get fixed by the first read; this stands for
/// running all initial window guesses side by side.
#[derive(Debug, Clone)]
pub struct PhaseRun {
    state: Option<State>,
    mode: Mode,
    phases: String,
}

impl PhaseRun {
    /// Phase letters entered so far, e.g. `"CRC"`.
    pub fn phases(&self) -> &str {
        &self.phases
    }
}

fn bind(slot: &mut Option<Symbol>, a: Symbol) -> bool {
    match slot {
        Some(s) => *s == a,
        None => {
            *slot = Some(a);
            true
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PhaseInfo {
    pub name: &'static str,
    pub automaton: &'static str,
    pub count: String,
    pub states_each: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct DeciderManifest {
    pub width: usize,
    pub radius: i64,
    pub cases: Vec<&'static str>,
    pub window_guesses: String,
    pub phases: Vec<PhaseInfo>,
    pub stack_alphabet: usize,
}

impl PhaseDecider {
    pub fn new(m: &TuringMachine, width: usize) -> Self {
        PhaseDecider {
            machine: m.clone(),
            width,
            radius: width as i64 + 1,
            alphabet: st_alphabet(m).into_iter().collect(),
        }
    }

    pub fn machine(&self) -> &TuringMachine {
        &self.machine
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn radius(&self) -> i64 {
        self.radius
    }

    pub fn start(&self) -> PhaseRun {
        PhaseRun {
            state: None,
            mode: Mode::Window {
                cells: vec![None; (2 * self.radius + 1) as usize],
                pos: 0,
            },
            phases: "C".to_string(),
        }
    }

    fn idx(&self, i: i64) -> usize {
        (i + self.radius) as usize
    }

    /// Feeds one letter; `false` means the run rejects.
    pub fn feed(&self, run: &mut PhaseRun, sym: TraceSymbolT) -> bool {
        let m = &self.machine;
        let r = self.radius;
        match run.state {
            Some(q) if q != sym.state => return false,
            _ => run.state = Some(sym.state),
        }
        let act = m.rule(sym.symbol, sym.state);
        run.state = Some(act.next);
        match &mut run.mode {
            Mode::Blocked => false,
            Mode::Window { cells, pos } => {
                let k = self.idx(*pos);
                if !bind(&mut cells[k], sym.symbol) {
                    return false;
                }
                cells[k] = Some(act.write);
                *pos += act.mv.delta();
                if pos.abs() == r {
                    let side = if *pos > 0 { Side::Right } else { Side::Left };
                    let letter = if side == Side::Right { 'R' } else { 'L' };
                    if run.phases.contains(letter) {
                        run.mode = Mode::Blocked;
                    } else {
                        let s = side.sign();
                        let stack = (0..r).map(|k| cells[self.idx(s * k)]).collect();
                        let w = vec![cells[self.idx(s * r)]];
                        run.mode = Mode::Excursion {
                            side,
                            stack,
                            w,
                            saved: cells.clone(),
                        };
                        run.phases.push(letter);
                    }
                }
                true
            }
            Mode::Excursion { side, stack, w, saved } => {
                if let Some(w0) = w.first_mut() {
                    if !bind(w0, sym.symbol) {
                        return false;
                    }
                }
                let s = side.sign();
                if act.mv.delta() * s == 1 {
                    if !w.is_empty() {
                        w.remove(0);
                    }
                    stack.push(Some(act.write));
                    return true;
                }
                let beta = stack.pop().expect("excursion keeps the head off cell 0");
                let mut nw = vec![beta, Some(act.write)];
                nw.extend_from_slice(w.get(1..).unwrap_or(&[]));
                nw.truncate(r as usize);
                if !stack.is_empty() {
                    *w = nw;
                    return true;
                }
                // Back at cell 0: the far side is as it was, the near side
                // is what the state word still knows.
                let mut cells = vec![None; saved.len()];
                for k in 1..=r {
                    cells[self.idx(-s * k)] = saved[self.idx(-s * k)];
                }
                for (k, c) in nw.iter().enumerate() {
                    cells[self.idx(s * k as i64)] = *c;
                }
                run.mode = Mode::Window { cells, pos: 0 };
                run.phases.push('C');
                true
            }
        }
    }

    pub fn accepts(&self, word: &[TraceSymbolT]) -> bool {
        let mut run = self.start();
        word.iter().all(|&a| self.feed(&mut run, a))
    }

    /// Every accepted word of length `n`. The language is prefix closed, so
    /// rejected prefixes are pruned.
    pub fn words(&self, n: usize) -> BTreeSet<Vec<TraceSymbolT>> {
        let mut out = BTreeSet::new();
        let mut word = Vec::with_capacity(n);
        self.collect(&self.start(), n, &mut word, &mut out);
        out
    }

    fn collect(&self, run: &PhaseRun, left: usize, word: &mut Vec<TraceSymbolT>, out: &mut BTreeSet<Vec<TraceSymbolT>>) {
        if left == 0 {
            out.insert(word.clone());
            return;
        }
        for &a in &self.alphabet {
            let mut next = run.clone();
            if self.feed(&mut next, a) {
                word.push(a);
                self.collect(&next, left - 1, word, out);
                word.pop();
            }
        }
    }

    pub fn manifest(&self) -> DeciderManifest {
        let a = self.machine.alphabet_size() as u64;
        let q = self.machine.state_count() as u64;
        let r = self.radius as u32;
        let windows = BigUint::from(a).pow(2 * r + 1) * BigUint::from(q);
        let words: BigUint = (0..=r).map(|k| BigUint::from(a).pow(k)).sum();
        let excursion_states = words * BigUint::from(q) + BigUint::from(1u8);
        let boundary = BigUint::from(a).pow(2 * r + 1) * BigUint::from(q);
        DeciderManifest {
            width: self.width,
            radius: self.radius,
            cases: CASES.to_vec(),
            window_guesses: windows.to_string(),
            phases: vec![
                PhaseInfo {
                    name: "C",
                    automaton: "window DFA",
                    count: (&windows * &boundary).to_string(),
                    states_each: format!("at most {}", BigUint::from(a).pow(2 * r + 1) * BigUint::from(q) * BigUint::from(2 * r + 1)),
                },
                PhaseInfo {
                    name: "R",
                    automaton: "one-way-stack DPDA",
                    count: (&boundary * &boundary).to_string(),
                    states_each: excursion_states.to_string(),
                },
                PhaseInfo {
                    name: "L",
                    automaton: "one-way-stack DPDA",
                    count: (&boundary * &boundary).to_string(),
                    states_each: excursion_states.to_string(),
                },
            ],
            stack_alphabet: self.machine.alphabet_size() + 1,
        }
    }
}

pub fn st_membership(decider: &PhaseDecider, word: &[TraceSymbolT]) -> bool {
    decider.accepts(word)
}

#[derive(Debug, Clone, Serialize)]
pub struct LengthComparison {
    pub length: usize,
    pub oracle_size: usize,
    pub recognizer_size: usize,
    pub missing: Vec<String>,
    pub extra: Vec<String>,
}

impl LengthComparison {
    pub fn new<S: Ord + Clone>(length: usize, oracle: &BTreeSet<Vec<S>>, recognizer: &BTreeSet<Vec<S>>, render: impl Fn(&[S]) -> String) -> Self {
        LengthComparison {
            length,
            oracle_size: oracle.len(),
            recognizer_size: recognizer.len(),
            missing: oracle.difference(recognizer).map(|w| render(w)).collect(),
            extra: recognizer.difference(oracle).map(|w| render(w)).collect(),
        }
    }

    pub fn equal(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EquivalenceReport {
    pub lengths: Vec<LengthComparison>,
}

impl EquivalenceReport {
    pub fn equal(&self) -> bool {
        self.lengths.iter().all(LengthComparison::equal)
    }

    pub fn first_difference(&self) -> Option<usize> {
        self.lengths.iter().find(|l| !l.equal()).map(|l| l.length)
    }

    pub fn summary(&self) -> String {
        match self.first_difference() {
            None => format!("equal at every length 0..={}", self.lengths.last().map_or(0, |l| l.length)),
            Some(n) => {
                let l = &self.lengths[n];
                format!("differ at length {n}: {} missing, {} extra", l.missing.len(), l.extra.len())
            }
        }
    }
}

/// Compares the decider with the exhaustive `L_n(S_T)` for `n <= n_max`.
pub fn st_equivalence_check(m: &TuringMachine, width: usize, n_max: usize, budget: Budget) -> Result<EquivalenceReport> {
    let decider = PhaseDecider::new(m, width);
    let mut lengths = Vec::new();
    for n in 0..=n_max {
        let oracle = enumerate_lst(m, n, budget)?;
        let rec = decider.words(n);
        lengths.push(LengthComparison::new(n, &oracle.words, &rec, |w| render_word(m, w, render_t)));
    }
    Ok(EquivalenceReport { lengths })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::{fixture, RuleEntry};
    use crate::trace::ArrayRun;

    fn pc(m: &TuringMachine, text: &str) -> PartialConfiguration {
        PartialConfiguration::parse(m, text).unwrap()
    }

    fn sym(m: &TuringMachine, a: &str, q: &str) -> TraceSymbolT {
        TraceSymbolT::new(m.symbol_by_name(a).unwrap(), m.state_by_name(q).unwrap())
    }

    #[test]
    fn window_dfa_examples() {
        let pp = fixture("PING-PONG").unwrap();
        let c = build_c(&pp, &pc(&pp, "aaa:q0:0"), Some(&pc(&pp, "aaa:q1:1"))).unwrap();
        assert_eq!(c.words(1), BTreeSet::from([vec![sym(&pp, "a", "q0")]]));
        for n in [0, 2, 3] {
            assert!(c.words(n).is_empty());
        }

        let never = build_c(&pp, &pc(&pp, "aaa:q0:0"), Some(&pc(&pp, "aaa:q0:-1"))).unwrap();
        assert!((0..6).all(|n| never.words(n).is_empty()));

        let u = pc(&pp, "aaaaa:q0:0");
        let periodic = build_c(&pp, &u, Some(&u)).unwrap();
        let (x, y) = (sym(&pp, "a", "q0"), sym(&pp, "a", "q1"));
        for k in 0..5 {
            assert_eq!(periodic.words(2 * k), BTreeSet::from([[x, y].repeat(k)]));
            assert!(periodic.words(2 * k + 1).is_empty());
        }
        assert_eq!(build_c(&pp, &u, None).unwrap().trim().states, 2);
        assert!(build_c(&pp, &pc(&pp, "aaa:q0:1"), None).is_err());
    }

    fn abc_machine(mv: i64) -> TuringMachine {
        let mut rules = Vec::new();
        for a in ["a", "b", "c"] {
            for q in ["q", "r"] {
                rules.push(RuleEntry {
                    read: a.into(),
                    state: q.into(),
                    write: "c".into(),
                    next: "r".into(),
                    mv,
                });
            }
        }
        TuringMachine::new(vec!["a".into(), "b".into(), "c".into()], vec!["q".into(), "r".into()], &rules).unwrap()
    }

    #[test]
    fn excursion_lambda_table() {
        let (a, b, c) = (Symbol(0), Symbol(1), Symbol(2));
        let (q, r) = (State(0), State(1));
        let input = TraceSymbolT::new(a, q);
        let beta = StackSym::Sym(b);

        let right = abc_machine(1);
        let got = excursion_lambda(&right, 3, Side::Right, input, &[a, b], q, beta);
        assert_eq!(got, (ExcursionState::Live(vec![b], r), vec![StackSym::Sym(c), beta]));

        let left = abc_machine(-1);
        let got = excursion_lambda(&left, 3, Side::Right, input, &[a, b], q, beta);
        assert_eq!(got, (ExcursionState::Live(vec![b, c, b], r), vec![]));

        for (w, p) in [(vec![b, b], q), (vec![a, b], r)] {
            let got = excursion_lambda(&right, 3, Side::Right, TraceSymbolT::new(a, p), &w, q, beta);
            assert_eq!(got.0, ExcursionState::Reject);
        }
        // Unknown cell: any symbol read in the right state is taken.
        let got = excursion_lambda(&right, 3, Side::Right, TraceSymbolT::new(b, q), &[], q, beta);
        assert_eq!(got.0, ExcursionState::Live(vec![], r));
    }

    /// Brute force: every `x` in `[u]` with free cells past the window, traces
    /// of length `len` whose head stays strictly on `side` before the end.
    fn excursion_oracle(m: &TuringMachine, u: &PartialConfiguration, len: usize, side: Side) -> BTreeSet<Vec<TraceSymbolT>> {
        let r = u.radius();
        let s = side.sign();
        let mut out = BTreeSet::new();
        for extra in all_tapes(m.alphabet_size(), len) {
            let mut window = u.word.clone();
            if s > 0 {
                window.extend(extra);
            } else {
                window.splice(0..0, extra.into_iter().rev());
            }
            let lo = if s > 0 { -r } else { -r - len as i64 };
            let mut run = ArrayRun::new(&window, lo, len as i64 + 1, Symbol(0), u.pos, u.state);
            let mut word = Vec::new();
            for _ in 0..len {
                if run.pos * s <= 0 {
                    break;
                }
                word.push(TraceSymbolT::new(run.get(run.pos), run.state));
                run.step(m);
            }
            if word.len() == len {
                out.insert(word);
            }
        }
        out
    }

    #[test]
    fn excursion_matches_oracle_open() {
        for name in ["PING-PONG", "LEFT", "NLEVEL(1)"] {
            for machine in [fixture(name).unwrap(), fixture(name).unwrap().reflected()] {
                for radius in 1..=2usize {
                    for word in all_tapes(machine.alphabet_size(), 2 * radius + 1) {
                        for q in machine.state_ids() {
                            let u = PartialConfiguration::new(word.clone(), q, radius as i64).unwrap();
                            let Ok(d) = build_r(&machine, &u, None) else {
                                assert!(!window_reaches(&machine, &u));
                                continue;
                            };
                            for len in 0..=5 {
                                assert_eq!(d.words(len), excursion_oracle(&machine, &u, len, Side::Right), "{name} {u:?} {len}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn excursion_targets() {
        let pp = fixture("PING-PONG").unwrap();
        let u = pc(&pp, "aaa:q1:1");
        let back = build_r(&pp, &u, Some(&pc(&pp, "aaa:q0:0"))).unwrap();
        assert_eq!(back.words(1), BTreeSet::from([vec![sym(&pp, "a", "q1")]]));
        assert!(back.words(0).is_empty() && back.words(2).is_empty());
        let stay = build_r(&pp, &u, Some(&u)).unwrap();
        assert_eq!(stay.words(0), BTreeSet::from([vec![]]));
        assert!(build_r(&pp, &pc(&pp, "aaa:q0:0"), None).is_err());
        assert!(build_r(&pp, &pc(&pp, "aaa:q0:1"), None).is_err(), "unreachable from the center");
        assert!(build_l(&pp, &u, None).is_err());
    }

    #[test]
    fn left_is_reflected_right() {
        let m = fixture("BOUNCE_SHIFT").unwrap();
        let refl = m.reflected();
        let mut built = 0;
        for word in all_tapes(m.alphabet_size(), 5) {
            for q in m.state_ids() {
                let u = PartialConfiguration::new(word.clone(), q, -2).unwrap();
                let (Ok(l), Ok(r)) = (build_l(&m, &u, None), build_r(&refl, &u.mirrored(), None)) else {
                    assert!(build_l(&m, &u, None).is_err() && build_r(&refl, &u.mirrored(), None).is_err());
                    continue;
                };
                built += 1;
                for len in 0..=8 {
                    assert_eq!(l.words(len), r.words(len));
                }
            }
        }
        assert!(built > 0);
    }

    #[test]
    fn decider_examples() {
        let pp = fixture("PING-PONG").unwrap();
        let d = PhaseDecider::new(&pp, 1);
        assert!(st_membership(&d, &[sym(&pp, "a", "q0"), sym(&pp, "a", "q1"), sym(&pp, "a", "q0")]));
        assert!(!st_membership(&d, &[sym(&pp, "a", "q0"), sym(&pp, "a", "q0")]));
        assert!(st_membership(&d, &[]));
        let mut run = d.start();
        for _ in 0..10 {
            assert!(d.feed(&mut run, sym(&pp, "a", "q0")));
            assert!(d.feed(&mut run, sym(&pp, "a", "q1")));
        }
        assert_eq!(run.phases(), "C");
    }

    #[test]
    fn decider_matches_oracle_when_bounded() {
        let pp = fixture("PING-PONG").unwrap();
        assert!(st_equivalence_check(&pp, 1, 6, Budget::default()).unwrap().equal());
        let left = fixture("LEFT").unwrap();
        assert!(st_equivalence_check(&left, 0, 5, Budget::default()).unwrap().equal());
    }

    #[test]
    fn bound_formula() {
        assert_eq!(zigzag_bound_from_dpda(1, 1), BigUint::from(7u32));
        assert_eq!(zigzag_bound_from_dpda(2, 2), BigUint::from(131_075u32));
        assert!(zigzag_bound_from_dpda(2, 2) > zigzag_bound_from_dpda(1, 1));
    }
}
