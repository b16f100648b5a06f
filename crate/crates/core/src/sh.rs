//! Recognizer for the language of `S_H` when zigzags are bounded: arrival
//! languages `B_u`, cell-0 observation DFAs `C̄_{u,v}`, unary projections of
//! the excursion languages, and the union of their concatenations.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::automata::{unary_fit, Dfa, Dpda, Nfa, StackSym, StepOutcome, UnaryEventuallyPeriodicSet};
use crate::error::{Error, Result};
use crate::machine::{State, Symbol, TuringMachine};
use crate::st::{
    excursion_lambda, window_dfa, window_orbit, EquivalenceReport, ExcursionState, LengthComparison, PartialConfiguration, Side,
};
use crate::tape::Cell;
use crate::trace::{all_tapes, apply, enumerate_lsh, render_h, render_word, with_cell, Budget, LanguageSample, LazyRun, TraceSymbolT};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    RBar,
    LBar,
    B,
    CBarConstant,
}

/// A language `{symbol^k : k in lengths}` over bare cells.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnaryPiece {
    pub symbol: Symbol,
    pub lengths: UnaryEventuallyPeriodicSet,
    /// The same observations fitted on twice the horizon.
    pub refit: UnaryEventuallyPeriodicSet,
    pub provenance: Provenance,
    pub label: String,
}

impl UnaryPiece {
    pub fn contains(&self, word: &[Cell]) -> bool {
        word.iter().all(|&c| c == Cell::Bare(self.symbol)) && self.lengths.contains(word.len())
    }

    pub fn is_stable(&self) -> bool {
        self.lengths == self.refit
    }
}

/// `obs` holds observations up to `2 * horizon`.
fn fit_piece(obs: &BTreeSet<usize>, horizon: usize, symbol: Symbol, provenance: Provenance, label: String) -> Result<UnaryPiece> {
    let low: BTreeSet<usize> = obs.range(..=horizon).copied().collect();
    let lengths = unary_fit(&low, horizon)?;
    let unstable = || Error::UnstableFit {
        piece: label.clone(),
        horizon: 2 * horizon,
    };
    let refit = unary_fit(obs, 2 * horizon).map_err(|_| unstable())?;
    if refit != lengths {
        return Err(unstable());
    }
    Ok(UnaryPiece {
        symbol,
        lengths,
        refit,
        provenance,
        label,
    })
}

/// Automata whose accepted-word lengths can be listed up to a bound.
pub trait AcceptedLengths {
    fn accepted_lengths(&self, limit: usize) -> BTreeSet<usize>;
}

impl<I: Ord + Clone> AcceptedLengths for Dfa<I> {
    fn accepted_lengths(&self, limit: usize) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        let mut level = BTreeSet::from([self.initial]);
        for k in 0..=limit {
            if level.iter().any(|s| self.accepting.contains(s)) {
                out.insert(k);
            }
            level = level
                .iter()
                .flat_map(|&s| self.alphabet.iter().filter_map(move |a| self.step(s, a)))
                .collect();
        }
        out
    }
}

impl<I: Ord + Clone, S: Ord + Clone, G: Ord + Clone> AcceptedLengths for Dpda<I, S, G> {
    fn accepted_lengths(&self, limit: usize) -> BTreeSet<usize> {
        let sinks = self.sinks();
        let mut out = BTreeSet::new();
        let mut level = BTreeSet::from([self.initial()]);
        for k in 0..=limit {
            if level.iter().any(|id| self.is_accepting(id)) {
                out.insert(k);
            }
            let mut next = BTreeSet::new();
            for id in &level {
                for a in &self.alphabet {
                    if let StepOutcome::Next(n) = self.step(id, a) {
                        if !sinks.contains(&n.state) {
                            next.insert(n);
                        }
                    }
                }
            }
            level = next;
        }
        out
    }
}

/// Lengths of the words of `piece`, explored to twice `l_max` and fitted.
pub fn project_unary(piece: &impl AcceptedLengths, symbol: Symbol, l_max: usize, provenance: Provenance) -> Result<UnaryPiece> {
    let obs = piece.accepted_lengths(2 * l_max);
    fit_piece(&obs, l_max, symbol, provenance, format!("{provenance:?}"))
}

pub fn sh_alphabet(m: &TuringMachine) -> BTreeSet<Cell> {
    m.symbols()
        .map(Cell::Bare)
        .chain(m.symbols().flat_map(|a| m.state_ids().map(move |q| Cell::Head(a, q))))
        .collect()
}

fn observe(c: &PartialConfiguration) -> Cell {
    if c.pos == 0 {
        Cell::Head(c.get(0), c.state)
    } else {
        Cell::Bare(c.get(0))
    }
}

/// `C̄_{u,v}`: cell-0 observations of a window phase from `[u]` to `[v]`.
pub fn build_cbar(m: &TuringMachine, u: &PartialConfiguration, v: Option<&PartialConfiguration>) -> Result<Dfa<Cell>> {
    if u.pos != 0 {
        return Err(Error::Precondition(format!("u must have its head at 0, not {}", u.pos)));
    }
    if v.is_some_and(|v| v.radius() != u.radius()) {
        return Err(Error::Precondition("u and v have different radii".into()));
    }
    Ok(window_dfa(m, u, sh_alphabet(m), observe, |c| v.map_or(true, |v| c == v)))
}

/// Every filling of the unknown cells.
fn completions(cells: &[Option<Symbol>], alphabet: usize) -> impl Iterator<Item = Vec<Symbol>> + '_ {
    let free: Vec<usize> = (0..cells.len()).filter(|&i| cells[i].is_none()).collect();
    all_tapes(alphabet, free.len()).map(move |fill| {
        let mut word: Vec<Symbol> = cells.iter().map(|c| c.unwrap_or(Symbol(0))).collect();
        for (&i, a) in free.iter().zip(fill) {
            word[i] = a;
        }
        word
    })
}

/// Window around cell 0, state and time of a first arrival at cell 0.
type Arrival = (Vec<Option<Symbol>>, State, usize);

struct ArrivalSearch<'a> {
    m: &'a TuringMachine,
    radius: i64,
    t_max: usize,
    budget: Budget,
    leaves: u128,
    out: BTreeSet<Arrival>,
}

impl ArrivalSearch<'_> {
    fn run(&mut self, run: LazyRun, t: usize) -> Result<()> {
        let far = run.pos.unsigned_abs() as usize > self.t_max - t;
        if run.pos == 0 || far {
            self.leaves += 1;
            self.budget.admit("build_B", self.leaves)?;
            if run.pos == 0 {
                let lo = (run.offset - self.radius) as usize;
                let window = run.cells[lo..=lo + 2 * self.radius as usize].to_vec();
                self.out.insert((window, run.state, t));
            }
            return Ok(());
        }
        let pos = run.pos;
        let m = self.m;
        with_cell(m, &run, pos, |mut r, s| {
            apply(m, &mut r, s);
            self.run(r, t + 1)
        })
    }
}

/// For every window `u` of the given radius with its head at 0, the times
/// `t <= t_max` at which some head reaches `[u]` without visiting cell 0
/// before. Time 0 is always included.
pub fn arrival_lengths(m: &TuringMachine, radius: i64, t_max: usize, budget: Budget) -> Result<BTreeMap<PartialConfiguration, BTreeSet<usize>>> {
    let mut search = ArrivalSearch {
        m,
        radius,
        t_max,
        budget,
        leaves: 0,
        out: BTreeSet::new(),
    };
    let reach = t_max as i64;
    for h in (-reach..=reach).filter(|&h| h != 0) {
        for q in m.state_ids() {
            search.run(LazyRun::new(radius + reach + 1, h, q), 0)?;
        }
    }
    let mut map = BTreeMap::new();
    for word in all_tapes(m.alphabet_size(), (2 * radius + 1) as usize) {
        for q in m.state_ids() {
            map.insert(PartialConfiguration { word: word.clone(), state: q, pos: 0 }, BTreeSet::from([0]));
        }
    }
    for (window, q, t) in &search.out {
        for word in completions(window, m.alphabet_size()) {
            if let Some(set) = map.get_mut(&PartialConfiguration { word, state: *q, pos: 0 }) {
                set.insert(*t);
            }
        }
    }
    Ok(map)
}

fn check_interval(lengths: &BTreeSet<usize>) -> Result<()> {
    match lengths.last() {
        Some(&max) if lengths.len() == max + 1 => Ok(()),
        _ => Err(Error::IntervalViolation(lengths.iter().copied().collect())),
    }
}

/// `B_u`: words `u_0^t` of arrival times at `[u]`.
pub fn build_b(m: &TuringMachine, u: &PartialConfiguration, t_max: usize, budget: Budget) -> Result<UnaryPiece> {
    if u.pos != 0 {
        return Err(Error::Precondition(format!("u must have its head at 0, not {}", u.pos)));
    }
    let map = arrival_lengths(m, u.radius(), 2 * t_max, budget)?;
    let obs = map.get(u).ok_or_else(|| Error::Precondition("u is not a window of the machine".into()))?;
    check_interval(obs)?;
    fit_piece(obs, t_max, u.get(0), Provenance::B, format!("B {}", u.render(m)))
}

/// Excursion lengths from a border configuration: lengths of all runs, and
/// for every window with its head back at 0 the lengths of the runs that
/// return there.
#[derive(Debug, Clone, Default)]
struct ExcursionLengths {
    open: BTreeSet<usize>,
    returns: BTreeMap<PartialConfiguration, BTreeSet<usize>>,
}

fn side_of(v: &PartialConfiguration) -> Side {
    if v.pos > 0 {
        Side::Right
    } else {
        Side::Left
    }
}

fn return_targets(m: &TuringMachine, v: &PartialConfiguration, w: &[Symbol], q: State) -> Vec<PartialConfiguration> {
    let n = v.radius();
    let s = side_of(v).sign();
    let mut cells = vec![None; (2 * n + 1) as usize];
    for k in -n..0 {
        cells[(s * k + n) as usize] = Some(v.get(s * k));
    }
    for (k, &a) in w.iter().enumerate() {
        cells[(s * k as i64 + n) as usize] = Some(a);
    }
    completions(&cells, m.alphabet_size())
        .map(|word| PartialConfiguration { word, state: q, pos: 0 })
        .collect()
}

/// Breadth-first search over the excursion automaton's instantaneous
/// descriptions. Stacks are top-first without the bottom marker.
fn excursion_lengths(m: &TuringMachine, v: &PartialConfiguration, limit: usize, budget: Budget) -> Result<ExcursionLengths> {
    let n = v.radius();
    let side = side_of(v);
    let s = side.sign();
    let start = (vec![v.get(s * n)], v.state, (0..n).rev().map(|k| v.get(s * k)).collect::<Vec<_>>());
    let mut level = BTreeSet::from([start]);
    let mut out = ExcursionLengths::default();
    let mut explored = 0u128;
    for k in 0..=limit {
        if level.is_empty() {
            break;
        }
        out.open.insert(k);
        let mut next = BTreeSet::new();
        for (w, q, stack) in &level {
            if stack.is_empty() {
                for u in return_targets(m, v, w, *q) {
                    out.returns.entry(u).or_default().insert(k);
                }
                continue;
            }
            if k == limit {
                continue;
            }
            let inputs: Vec<Symbol> = match w.first() {
                Some(&a) => vec![a],
                None => m.symbols().collect(),
            };
            for a in inputs {
                explored += 1;
                budget.admit("excursion projection", explored)?;
                let input = TraceSymbolT::new(a, *q);
                let (next_state, push) = excursion_lambda(m, n as usize, side, input, w, *q, StackSym::Sym(stack[0]));
                let ExcursionState::Live(nw, nq) = next_state else {
                    continue;
                };
                let mut ns: Vec<Symbol> = push
                    .iter()
                    .filter_map(|g| match g {
                        StackSym::Sym(x) => Some(*x),
                        StackSym::Bottom => None,
                    })
                    .collect();
                ns.extend_from_slice(&stack[1..]);
                next.insert((nw, nq, ns));
            }
        }
        level = next;
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ShParams {
    pub width: usize,
    pub l_max: usize,
    pub t_max: usize,
    pub budget: Budget,
}

impl ShParams {
    pub fn new(width: usize) -> Self {
        ShParams {
            width,
            l_max: 8,
            t_max: 8,
            budget: Budget::default(),
        }
    }

    pub fn radius(&self) -> i64 {
        self.width as i64 + 1
    }
}

/// Excursion sides used so far. At most one excursion per side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum History {
    Start,
    R,
    L,
    RL,
    LR,
}

impl History {
    fn after(self, side: Side) -> Option<History> {
        match (self, side) {
            (History::Start, Side::Right) => Some(History::R),
            (History::Start, Side::Left) => Some(History::L),
            (History::R, Side::Left) => Some(History::RL),
            (History::L, Side::Right) => Some(History::LR),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Node {
    /// A window phase starts here.
    Center(PartialConfiguration, History),
    /// An excursion starts here.
    Border(PartialConfiguration, History),
}

struct Assembly<'a> {
    m: &'a TuringMachine,
    params: ShParams,
    nfa: Nfa<Cell>,
    accept: usize,
    nodes: BTreeMap<Node, usize>,
    queue: Vec<Node>,
    pieces: BTreeMap<String, UnaryPiece>,
    excursions: BTreeMap<PartialConfiguration, ExcursionLengths>,
}

impl Assembly<'_> {
    fn node(&mut self, key: Node) -> usize {
        if let Some(&s) = self.nodes.get(&key) {
            return s;
        }
        let s = self.nfa.add_state();
        self.nodes.insert(key.clone(), s);
        self.queue.push(key);
        s
    }

    /// Adds a unary automaton for `piece` ending in `target` and returns its
    /// entry, or `None` for an empty piece.
    fn unary(&mut self, piece: UnaryPiece, target: usize) -> Option<usize> {
        let set = &piece.lengths;
        if set.is_empty() {
            self.pieces.insert(piece.label.clone(), piece);
            return None;
        }
        let size = set.preperiod + set.period;
        let first = self.nfa.edges.len();
        for _ in 0..size {
            self.nfa.add_state();
        }
        let a = Some(Cell::Bare(piece.symbol));
        for k in 0..size {
            let to = if k + 1 < size { k + 1 } else { set.preperiod };
            self.nfa.add_edge(first + k, a.clone(), first + to);
            if set.contains(k) {
                self.nfa.add_edge(first + k, None, target);
            }
        }
        self.pieces.insert(piece.label.clone(), piece);
        Some(first)
    }

    fn center(&mut self, entry: usize, u: &PartialConfiguration, h: History) {
        let r = u.radius();
        let (orbit, back) = window_orbit(self.m, u);
        let mut chain = vec![entry];
        for _ in 1..orbit.len() {
            chain.push(self.nfa.add_state());
        }
        for (k, c) in orbit.iter().enumerate() {
            self.nfa.add_edge(chain[k], None, self.accept);
            if c.pos.abs() >= r {
                if let Some(h2) = h.after(side_of(c)) {
                    let border = self.node(Node::Border(c.clone(), h2));
                    self.nfa.add_edge(chain[k], None, border);
                }
                continue;
            }
            let to = if k + 1 < orbit.len() { k + 1 } else { back.expect("loop target") };
            self.nfa.add_edge(chain[k], Some(observe(c)), chain[to]);
        }
    }

    fn border(&mut self, entry: usize, v: &PartialConfiguration, h: History) -> Result<()> {
        let l_max = self.params.l_max;
        if !self.excursions.contains_key(v) {
            let lengths = excursion_lengths(self.m, v, 2 * l_max, self.params.budget)?;
            self.excursions.insert(v.clone(), lengths);
        }
        let lengths = self.excursions[v].clone();
        let provenance = match side_of(v) {
            Side::Right => Provenance::RBar,
            Side::Left => Provenance::LBar,
        };
        let symbol = v.get(0);
        let name = v.render(self.m);
        let open = fit_piece(&lengths.open, l_max, symbol, provenance, format!("{provenance:?} {name} open"))?;
        if let Some(s) = self.unary(open, self.accept) {
            self.nfa.add_edge(entry, None, s);
        }
        for (u, ks) in &lengths.returns {
            let label = format!("{provenance:?} {name} -> {}", u.render(self.m));
            let piece = fit_piece(ks, l_max, symbol, provenance, label)?;
            let target = self.node(Node::Center(u.clone(), h));
            if let Some(s) = self.unary(piece, target) {
                self.nfa.add_edge(entry, None, s);
            }
        }
        Ok(())
    }
}

/// Finite-automaton recognizer of the `S_H` language built from windows of
/// radius `width + 1`.
#[derive(Debug, Clone)]
pub struct ShRecognizer {
    pub params: ShParams,
    pub dfa: Dfa<Cell>,
    pub pieces: Vec<UnaryPiece>,
    pub nfa_states: usize,
}

impl ShRecognizer {
    pub fn accepts(&self, word: &[Cell]) -> bool {
        self.dfa.accepts(word)
    }

    pub fn words(&self, n: usize) -> BTreeSet<Vec<Cell>> {
        self.dfa.words(n)
    }

    pub fn unstable_pieces(&self) -> Vec<&UnaryPiece> {
        self.pieces.iter().filter(|p| !p.is_stable()).collect()
    }
}

pub fn build_sh_recognizer(m: &TuringMachine, params: ShParams) -> Result<ShRecognizer> {
    let r = params.radius();
    let mut asm = Assembly {
        m,
        params,
        nfa: Nfa::new(sh_alphabet(m)),
        accept: 0,
        nodes: BTreeMap::new(),
        queue: Vec::new(),
        pieces: BTreeMap::new(),
        excursions: BTreeMap::new(),
    };
    let start = asm.nfa.add_state();
    asm.accept = asm.nfa.add_state();
    asm.nfa.initial.insert(start);
    asm.nfa.accepting.insert(asm.accept);

    for a in m.symbols() {
        let c = asm.nfa.add_state();
        asm.nfa.add_edge(start, None, c);
        asm.nfa.add_edge(c, Some(Cell::Bare(a)), c);
        asm.nfa.add_edge(c, None, asm.accept);
        let all = UnaryEventuallyPeriodicSet::new(0, 1, BTreeSet::new(), BTreeSet::from([0]))?;
        let label = format!("constant {}", m.symbol_name(a));
        asm.pieces.insert(
            label.clone(),
            UnaryPiece {
                symbol: a,
                lengths: all.clone(),
                refit: all,
                provenance: Provenance::CBarConstant,
                label,
            },
        );
    }

    for (u, obs) in arrival_lengths(m, r, 2 * params.t_max, params.budget)? {
        check_interval(&obs)?;
        let piece = fit_piece(&obs, params.t_max, u.get(0), Provenance::B, format!("B {}", u.render(m)))?;
        let target = asm.node(Node::Center(u, History::Start));
        if let Some(s) = asm.unary(piece, target) {
            asm.nfa.add_edge(start, None, s);
        }
    }

    while let Some(key) = asm.queue.pop() {
        let entry = asm.nodes[&key];
        match key {
            Node::Center(u, h) => asm.center(entry, &u, h),
            Node::Border(v, h) => asm.border(entry, &v, h)?,
        }
    }

    Ok(ShRecognizer {
        params,
        dfa: asm.nfa.determinize(),
        pieces: asm.pieces.into_values().collect(),
        nfa_states: asm.nfa.edges.len(),
    })
}

/// Compares the recognizer with the exact language for every length up to `n_max`.
pub fn sh_equivalence_check(m: &TuringMachine, params: ShParams, n_max: usize) -> Result<EquivalenceReport> {
    let rec = build_sh_recognizer(m, params)?;
    compare_sh(m, &rec, n_max, params.budget)
}

pub fn compare_sh(m: &TuringMachine, rec: &ShRecognizer, n_max: usize, budget: Budget) -> Result<EquivalenceReport> {
    let mut lengths = Vec::new();
    for n in 0..=n_max {
        let oracle = enumerate_lsh(m, n, budget)?;
        lengths.push(LengthComparison::new(n, &oracle.words, &rec.words(n), |w| render_word(m, w, render_h)));
    }
    Ok(EquivalenceReport { lengths })
}

/// Distinct residuals among prefixes of each length: for a prefix `p` of
/// length `k`, the set of length-`suffix` words `s` with `ps` a prefix of a
/// sample word. Bounded counts suggest a regular language.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegularityProbe {
    pub n: usize,
    pub suffix: usize,
    pub residual_counts: Vec<usize>,
    /// The count did not grow over the last step.
    pub plateau: bool,
}

pub fn regularity_probe<S: Ord + Clone>(sample: &LanguageSample<S>, suffix: usize) -> RegularityProbe {
    let n = sample.n;
    let mut counts = Vec::new();
    for k in 0..=n.saturating_sub(suffix) {
        let mut residuals: BTreeMap<&[S], BTreeSet<&[S]>> = BTreeMap::new();
        for w in &sample.words {
            residuals.entry(&w[..k]).or_default().insert(&w[k..k + suffix]);
        }
        let distinct: BTreeSet<&BTreeSet<&[S]>> = residuals.values().collect();
        counts.push(distinct.len());
    }
    let plateau = counts.len() >= 2 && counts[counts.len() - 1] <= counts[counts.len() - 2];
    RegularityProbe {
        n,
        suffix,
        residual_counts: counts,
        plateau,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::{fixture, RuleEntry};
    use crate::st::{build_l, build_r};
    use crate::trace::ArrayRun;

    fn pc(m: &TuringMachine, text: &str) -> PartialConfiguration {
        PartialConfiguration::parse(m, text).unwrap()
    }

    fn bare(m: &TuringMachine, a: &str) -> Cell {
        Cell::Bare(m.symbol_by_name(a).unwrap())
    }

    fn head(m: &TuringMachine, a: &str, q: &str) -> Cell {
        Cell::Head(m.symbol_by_name(a).unwrap(), m.state_by_name(q).unwrap())
    }

    /// Writes `b` and moves left in its only state.
    fn paint_left() -> TuringMachine {
        let e = |a: &str| RuleEntry {
            read: a.into(),
            state: "q".into(),
            write: "b".into(),
            next: "q".into(),
            mv: -1,
        };
        TuringMachine::new(vec!["a".into(), "b".into()], vec!["q".into()], &[e("a"), e("b")]).unwrap()
    }

    /// First arrival times by plain simulation over every tape of a finite window.
    fn arrival_oracle(m: &TuringMachine, radius: i64, t_max: usize) -> BTreeMap<PartialConfiguration, BTreeSet<usize>> {
        let reach = t_max as i64 + radius + 1;
        let mut out: BTreeMap<PartialConfiguration, BTreeSet<usize>> = BTreeMap::new();
        let window = (2 * reach + 1) as usize;
        for tape in all_tapes(m.alphabet_size(), window) {
            for h in -(t_max as i64)..=t_max as i64 {
                for q in m.state_ids() {
                    let mut run = ArrayRun::new(&tape, -reach, reach, Symbol(0), h, q);
                    for t in 0..=t_max {
                        if run.pos == 0 {
                            let word = (-radius..=radius).map(|i| run.get(i)).collect();
                            out.entry(PartialConfiguration { word, state: run.state, pos: 0 }).or_default().insert(t);
                            break;
                        }
                        run.step(m);
                    }
                }
            }
        }
        out
    }

    #[test]
    fn arrivals_match_simulation() {
        for (m, radius, t_max) in [
            (fixture("LEFT").unwrap(), 1, 3),
            (fixture("PING-PONG").unwrap(), 2, 4),
            (fixture("BOUNCE_SHIFT").unwrap(), 1, 3),
            (paint_left(), 1, 3),
        ] {
            let oracle = arrival_oracle(&m, radius, t_max);
            let got = arrival_lengths(&m, radius, t_max, Budget::default()).unwrap();
            for (u, ts) in &got {
                let want = oracle.get(u).cloned().unwrap_or_else(|| BTreeSet::from([0]));
                assert_eq!(ts, &want, "{}", u.render(&m));
            }
            assert!(oracle.keys().all(|u| got.contains_key(u)));
        }
    }

    #[test]
    fn b_examples() {
        let paint = paint_left();
        let eden = build_b(&paint, &pc(&paint, "aaa:q:0"), 8, Budget::default()).unwrap();
        assert_eq!(eden.lengths.members_upto(20), BTreeSet::from([0]));
        let painted = build_b(&paint, &pc(&paint, "aab:q:0"), 8, Budget::default()).unwrap();
        assert!(painted.lengths.is_everything());

        let left = fixture("LEFT").unwrap();
        let b = build_b(&left, &pc(&left, "aba:q:0"), 8, Budget::default()).unwrap();
        assert!(b.lengths.is_everything() && b.lengths.period == 1);

        let pp = fixture("PING-PONG").unwrap();
        for q in ["q0", "q1"] {
            let b = build_b(&pp, &pc(&pp, &format!("aaa:{q}:0")), 8, Budget::default()).unwrap();
            assert_eq!(b.lengths.members_upto(20), BTreeSet::from([0, 1]));
            assert!(b.is_stable());
        }
        assert!(build_b(&pp, &pc(&pp, "aaa:q0:1"), 8, Budget::default()).is_err());
    }

    #[test]
    fn cbar_examples() {
        let pp = fixture("PING-PONG").unwrap();
        let u = pc(&pp, "aaaaa:q0:0");
        let c = build_cbar(&pp, &u, Some(&u)).unwrap();
        assert_eq!(c.words(2), BTreeSet::from([vec![head(&pp, "a", "q0"), bare(&pp, "a")]]));
        assert!(c.words(1).is_empty());
        assert!(c.accepts(&[]));
        let never = build_cbar(&pp, &u, Some(&pc(&pp, "aaaaa:q1:0"))).unwrap();
        assert!(never.trim().accepting.is_empty());

        // Once the head leaves cell 0 for good only bare symbols are seen.
        let left = fixture("LEFT").unwrap();
        let c = build_cbar(&left, &pc(&left, "abaab:q:0"), None).unwrap();
        assert_eq!(c.words(2), BTreeSet::from([vec![head(&left, "a", "q"), bare(&left, "a")]]));
        assert!(c.words(3).is_empty());
    }

    #[test]
    fn projection_examples() {
        let mut one = Dfa::new(BTreeSet::from(['x']), 4, 0).unwrap();
        for k in 0..3 {
            one.add_transition(k, 'x', k + 1).unwrap();
        }
        one.accepting.insert(3);
        let p = project_unary(&one, Symbol(0), 8, Provenance::CBarConstant).unwrap();
        assert_eq!(p.lengths.members_upto(30), BTreeSet::from([3]));
        assert!(p.lengths.is_finite());

        let pp = fixture("PING-PONG").unwrap();
        let u = pc(&pp, "aaaaa:q0:0");
        let p = project_unary(&build_cbar(&pp, &u, Some(&u)).unwrap(), Symbol(0), 8, Provenance::CBarConstant).unwrap();
        assert_eq!((p.lengths.preperiod, p.lengths.period), (0, 2));
        assert_eq!(p.lengths.residues, BTreeSet::from([0]));

        let empty = build_cbar(&pp, &u, Some(&pc(&pp, "aaaaa:q1:0"))).unwrap();
        assert!(project_unary(&empty, Symbol(0), 8, Provenance::CBarConstant).unwrap().lengths.is_empty());
    }

    #[test]
    fn excursion_lengths_match_dpdas() {
        let m = fixture("BOUNCE_SHIFT").unwrap();
        for text in ["a,a,a,a,a:R:2", "a,b,a,a,b:R:2", "b,a,a,b,a:L:-2", "a,a,b,a,a:L:-2"] {
            let Ok(v) = PartialConfiguration::parse(&m, text) else {
                continue;
            };
            let build = if v.pos > 0 { build_r } else { build_l };
            let Ok(open) = build(&m, &v, None) else {
                continue;
            };
            let got = excursion_lengths(&m, &v, 10, Budget::default()).unwrap();
            assert_eq!(open.accepted_lengths(10), got.open, "{text}");
            for (u, ks) in &got.returns {
                let dpda = build(&m, &v, Some(u)).unwrap();
                assert_eq!(&dpda.accepted_lengths(10), ks, "{text} -> {}", u.render(&m));
            }
        }
    }

    #[test]
    fn recognizer_matches_oracle() {
        for (name, width) in [("PING-PONG", 1), ("LEFT", 0)] {
            let m = fixture(name).unwrap();
            let rec = build_sh_recognizer(&m, ShParams::new(width)).unwrap();
            assert!(rec.unstable_pieces().is_empty());
            let report = compare_sh(&m, &rec, 6, Budget::default()).unwrap();
            assert!(report.equal(), "{name}: {}", report.summary());
        }
    }

    #[test]
    fn constant_words_accepted() {
        for name in ["PING-PONG", "LEFT", "BOUNCE_SHIFT"] {
            let m = fixture(name).unwrap();
            let rec = build_sh_recognizer(&m, ShParams::new(0)).unwrap();
            for a in m.symbols() {
                assert!(rec.accepts(&[Cell::Bare(a); 6]));
            }
        }
    }

    #[test]
    fn probe_counts_residuals() {
        let m = fixture("PING-PONG").unwrap();
        let sample = enumerate_lsh(&m, 6, Budget::default()).unwrap();
        let probe = regularity_probe(&sample, 2);
        assert_eq!(probe.residual_counts.len(), 5);
        assert!(probe.plateau);
    }
}
