//! Trace words of `S_T` and `S_H`, and exact enumeration of their finite
//! languages. These enumerations are the ground truth every recognizer in
//! the crate is compared against.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::machine::{State, Symbol, TuringMachine};
use crate::tape::{step_th, step_tt, Cell, MarkedTape, TapeStatePair};

/// Letter of `S_T`: the symbol under the head and the head state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TraceSymbolT {
    pub symbol: Symbol,
    pub state: State,
}

impl TraceSymbolT {
    pub fn new(symbol: Symbol, state: State) -> Self {
        TraceSymbolT { symbol, state }
    }
}

/// Letter of `S_H`: the content of cell 0, head mark included.
pub type TraceSymbolH = Cell;

/// Cap on the number of simulated runs an enumeration may perform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Budget {
    pub max_simulations: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_simulations: 1 << 24,
        }
    }
}

impl Budget {
    pub fn new(max_simulations: u64) -> Self {
        Budget { max_simulations }
    }

    pub(crate) fn admit(&self, what: &'static str, needed: u128) -> Result<()> {
        if needed > self.max_simulations as u128 {
            Err(Error::BudgetExceeded {
                what,
                needed,
                budget: self.max_simulations,
            })
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Method {
    /// Every tape content on the stated window is simulated.
    Exhaustive,
    /// Cells are chosen only when the run first depends on them.
    Lazy,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenerationParams {
    pub window_radius: i64,
    pub head_range: (i64, i64),
    pub method: Method,
    pub simulations: u64,
}

/// The exact set `L_n` of a trace subshift.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LanguageSample<S: Ord> {
    pub n: usize,
    pub words: BTreeSet<Vec<S>>,
    pub params: GenerationParams,
}

impl<S: Ord> LanguageSample<S> {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &[S]) -> bool {
        self.words.contains(w)
    }
}

/// `τ_T`: the first `n` letters of the moving-tape trace.
pub fn trace_t(m: &TuringMachine, pair: &TapeStatePair, n: usize) -> Vec<TraceSymbolT> {
    let mut out = Vec::with_capacity(n);
    let mut cur = pair.clone();
    for t in 0..n {
        out.push(TraceSymbolT::new(cur.tape.get(0), cur.state));
        if t + 1 < n {
            cur = step_tt(m, &cur);
        }
    }
    out
}

/// `τ_H`: the first `n` observations of cell 0 under `T_H`.
pub fn trace_h(m: &TuringMachine, x: &MarkedTape, n: usize) -> Vec<TraceSymbolH> {
    let mut out = Vec::with_capacity(n);
    let mut cur = x.clone();
    for t in 0..n {
        out.push(cur.get(0));
        if t + 1 < n {
            cur = step_th(m, &cur);
        }
    }
    out
}

/// A run on a tape whose cells are fixed only when first needed.
#[derive(Clone)]
pub(crate) struct LazyRun {
    pub(crate) cells: Vec<Option<Symbol>>,
    pub(crate) offset: i64,
    pub(crate) pos: i64,
    pub(crate) state: State,
}

impl LazyRun {
    pub(crate) fn new(radius: i64, pos: i64, state: State) -> Self {
        LazyRun {
            cells: vec![None; (2 * radius + 1) as usize],
            offset: radius,
            pos,
            state,
        }
    }

    fn slot(&mut self, i: i64) -> &mut Option<Symbol> {
        &mut self.cells[(i + self.offset) as usize]
    }
}

/// Calls `f` once per way of fixing cell `i`, each time on a run where the
/// cell is known.
pub(crate) fn with_cell(m: &TuringMachine, run: &LazyRun, i: i64, mut f: impl FnMut(LazyRun, Symbol) -> Result<()>) -> Result<()> {
    let mut run = run.clone();
    match *run.slot(i) {
        Some(s) => f(run, s),
        None => {
            for s in m.symbols() {
                let mut branch = run.clone();
                *branch.slot(i) = Some(s);
                f(branch, s)?;
            }
            Ok(())
        }
    }
}

pub(crate) fn apply(m: &TuringMachine, run: &mut LazyRun, read: Symbol) {
    let act = m.rule(read, run.state);
    let pos = run.pos;
    *run.slot(pos) = Some(act.write);
    run.pos += act.mv.delta();
    run.state = act.next;
}

struct Collector<S> {
    words: BTreeSet<Vec<S>>,
    leaves: u64,
    budget: Budget,
    what: &'static str,
}

impl<S: Ord> Collector<S> {
    fn leaf(&mut self, word: Vec<S>) -> Result<()> {
        self.leaves += 1;
        self.budget.admit(self.what, self.leaves as u128)?;
        self.words.insert(word);
        Ok(())
    }
}

fn dfs_t(m: &TuringMachine, run: LazyRun, word: &mut Vec<TraceSymbolT>, n: usize, out: &mut Collector<TraceSymbolT>) -> Result<()> {
    if word.len() == n {
        return out.leaf(word.clone());
    }
    let pos = run.pos;
    with_cell(m, &run, pos, |mut r, s| {
        word.push(TraceSymbolT::new(s, r.state));
        apply(m, &mut r, s);
        let res = dfs_t(m, r, word, n, out);
        word.pop();
        res
    })
}

/// Exact `L_n(S_T)`. An `n`-letter trace reads only cells within distance
/// `n - 1` of the origin, so runs over all states and all such windows
/// suffice; cells are branched on lazily, which visits each distinct
/// behaviour once.
pub fn enumerate_lst(m: &TuringMachine, n: usize, budget: Budget) -> Result<LanguageSample<TraceSymbolT>> {
    if n == 0 {
        return Ok(LanguageSample {
            n,
            words: BTreeSet::from([Vec::new()]),
            params: GenerationParams {
                window_radius: 0,
                head_range: (0, 0),
                method: Method::Lazy,
                simulations: 0,
            },
        });
    }
    let radius = n as i64;
    let mut out = Collector {
        words: BTreeSet::new(),
        leaves: 0,
        budget,
        what: "enumerate_LST",
    };
    for q in m.state_ids() {
        dfs_t(m, LazyRun::new(radius, 0, q), &mut Vec::with_capacity(n), n, &mut out)?;
    }
    Ok(LanguageSample {
        n,
        words: out.words,
        params: GenerationParams {
            window_radius: n as i64 - 1,
            head_range: (0, 0),
            method: Method::Lazy,
            simulations: out.leaves,
        },
    })
}

fn dfs_h(m: &TuringMachine, run: LazyRun, word: &mut Vec<TraceSymbolH>, n: usize, out: &mut Collector<TraceSymbolH>) -> Result<()> {
    if word.len() == n {
        return out.leaf(word.clone());
    }
    with_cell(m, &run, 0, |r, s0| {
        let obs = if r.pos == 0 { Cell::Head(s0, r.state) } else { Cell::Bare(s0) };
        word.push(obs);
        let res = if word.len() == n {
            dfs_h(m, r, word, n, out)
        } else {
            let pos = r.pos;
            with_cell(m, &r, pos, |mut r2, s| {
                apply(m, &mut r2, s);
                dfs_h(m, r2, word, n, out)
            })
        };
        word.pop();
        res
    })
}

/// Exact `L_n(S_H)`: constant words (headless tapes, or heads too far away
/// to reach cell 0 in time) together with the traces of every head starting
/// within distance `n - 1` of cell 0.
pub fn enumerate_lsh(m: &TuringMachine, n: usize, budget: Budget) -> Result<LanguageSample<TraceSymbolH>> {
    if n == 0 {
        return Ok(LanguageSample {
            n,
            words: BTreeSet::from([Vec::new()]),
            params: GenerationParams {
                window_radius: 0,
                head_range: (0, 0),
                method: Method::Lazy,
                simulations: 0,
            },
        });
    }
    let reach = n as i64 - 1;
    let radius = 2 * n as i64;
    let mut out = Collector {
        words: BTreeSet::new(),
        leaves: 0,
        budget,
        what: "enumerate_LSH",
    };
    for s in m.symbols() {
        out.leaf(vec![Cell::Bare(s); n])?;
    }
    for h in -reach..=reach {
        for q in m.state_ids() {
            dfs_h(m, LazyRun::new(radius, h, q), &mut Vec::with_capacity(n), n, &mut out)?;
        }
    }
    Ok(LanguageSample {
        n,
        words: out.words,
        params: GenerationParams {
            window_radius: 2 * reach,
            head_range: (-reach, reach),
            method: Method::Lazy,
            simulations: out.leaves,
        },
    })
}

/// All words of `A^len` in lexicographic index order.
pub fn all_tapes(alphabet: usize, len: usize) -> impl Iterator<Item = Vec<Symbol>> {
    let total = (alphabet as u128).pow(len as u32);
    (0..total).map(move |mut k| {
        let mut v = vec![Symbol(0); len];
        for slot in v.iter_mut().rev() {
            *slot = Symbol((k % alphabet as u128) as u16);
            k /= alphabet as u128;
        }
        v
    })
}

/// Plain simulation on a finite array; cells outside the array read `pad`.
pub(crate) struct ArrayRun {
    pub cells: Vec<Symbol>,
    pub offset: i64,
    pub pos: i64,
    pub state: State,
    pub pad: Symbol,
}

impl ArrayRun {
    pub fn new(window: &[Symbol], lo: i64, reach: i64, pad: Symbol, pos: i64, state: State) -> Self {
        // array covers [lo - reach, lo + len + reach)
        let mut cells = vec![pad; window.len() + 2 * reach as usize];
        cells[reach as usize..reach as usize + window.len()].copy_from_slice(window);
        ArrayRun {
            cells,
            offset: reach - lo,
            pos,
            state,
            pad,
        }
    }

    #[inline]
    pub fn get(&self, i: i64) -> Symbol {
        let k = i + self.offset;
        if k < 0 || k >= self.cells.len() as i64 {
            self.pad
        } else {
            self.cells[k as usize]
        }
    }

    #[inline]
    pub fn step(&mut self, m: &TuringMachine) {
        let read = self.get(self.pos);
        let act = m.rule(read, self.state);
        let k = self.pos + self.offset;
        assert!(k >= 0 && (k as usize) < self.cells.len(), "run left its array");
        self.cells[k as usize] = act.write;
        self.pos += act.mv.delta();
        self.state = act.next;
    }
}

/// `L_n(S_T)` by brute force over every state and every tape content on
/// `[-radius, radius]`. Needs `radius >= n - 1` to be exact.
pub fn enumerate_lst_exhaustive(m: &TuringMachine, n: usize, radius: i64, budget: Budget) -> Result<LanguageSample<TraceSymbolT>> {
    let width = (2 * radius + 1) as usize;
    let needed = (m.alphabet_size() as u128).pow(width as u32) * m.state_count() as u128;
    budget.admit("enumerate_LST (exhaustive)", needed)?;
    let mut words = BTreeSet::new();
    for tape in all_tapes(m.alphabet_size(), width) {
        for q in m.state_ids() {
            let mut run = ArrayRun::new(&tape, -radius, n as i64 + 1, Symbol(0), 0, q);
            let mut w = Vec::with_capacity(n);
            for t in 0..n {
                w.push(TraceSymbolT::new(run.get(run.pos), run.state));
                if t + 1 < n {
                    run.step(m);
                }
            }
            words.insert(w);
        }
    }
    Ok(LanguageSample {
        n,
        words,
        params: GenerationParams {
            window_radius: radius,
            head_range: (0, 0),
            method: Method::Exhaustive,
            simulations: needed as u64,
        },
    })
}

/// `L_n(S_H)` by brute force over head positions in `[-(n-1), n-1]`, all
/// states and all tape contents on `[-radius, radius]`. Needs
/// `radius >= 2n - 2` to be exact.
pub fn enumerate_lsh_exhaustive(m: &TuringMachine, n: usize, radius: i64, budget: Budget) -> Result<LanguageSample<TraceSymbolH>> {
    let reach = n as i64 - 1;
    let width = (2 * radius + 1) as usize;
    let needed = (m.alphabet_size() as u128).pow(width as u32) * m.state_count() as u128 * (2 * reach + 1) as u128;
    budget.admit("enumerate_LSH (exhaustive)", needed)?;
    let mut words: BTreeSet<Vec<Cell>> = m.symbols().map(|s| vec![Cell::Bare(s); n]).collect();
    for tape in all_tapes(m.alphabet_size(), width) {
        for h in -reach..=reach {
            for q in m.state_ids() {
                let mut run = ArrayRun::new(&tape, -radius, n as i64 + 1, Symbol(0), h, q);
                let mut w = Vec::with_capacity(n);
                for t in 0..n {
                    let s0 = run.get(0);
                    w.push(if run.pos == 0 { Cell::Head(s0, run.state) } else { Cell::Bare(s0) });
                    if t + 1 < n {
                        run.step(m);
                    }
                }
                words.insert(w);
            }
        }
    }
    Ok(LanguageSample {
        n,
        words,
        params: GenerationParams {
            window_radius: radius,
            head_range: (-reach, reach),
            method: Method::Exhaustive,
            simulations: needed as u64,
        },
    })
}

pub fn render_t(m: &TuringMachine, s: &TraceSymbolT) -> String {
    format!("({},{})", m.symbol_name(s.symbol), m.state_name(s.state))
}

pub fn render_h(m: &TuringMachine, c: &TraceSymbolH) -> String {
    match *c {
        Cell::Bare(s) => m.symbol_name(s).to_string(),
        Cell::Head(s, q) => format!("({},{})", m.symbol_name(s), m.state_name(q)),
    }
}

/// Comma-separated rendering of a word.
pub fn render_word<S>(m: &TuringMachine, w: &[S], render: fn(&TuringMachine, &S) -> String) -> String {
    w.iter().map(|s| render(m, s)).collect::<Vec<_>>().join(",")
}

/// One word per line, in the sample's canonical order.
pub fn dump<S: Ord>(m: &TuringMachine, sample: &LanguageSample<S>, render: fn(&TuringMachine, &S) -> String) -> String {
    let mut out = String::new();
    for w in &sample.words {
        out.push_str(&render_word(m, w, render));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::fixture;
    use crate::tape::{mark, Configuration, Head, Tape};

    const A: Symbol = Symbol(0);
    const B: Symbol = Symbol(1);
    const Q0: State = State(0);
    const Q1: State = State(1);

    fn t(s: Symbol, q: State) -> TraceSymbolT {
        TraceSymbolT::new(s, q)
    }

    #[test]
    fn ping_pong_trace_t() {
        let m = fixture("PING_PONG").unwrap();
        let pair = TapeStatePair::new(Tape::uniform(A), Q0);
        assert_eq!(trace_t(&m, &pair, 4), vec![t(A, Q0), t(A, Q1), t(A, Q0), t(A, Q1)]);
        assert!(trace_t(&m, &pair, 0).is_empty());
    }

    #[test]
    fn left_trace_reads_leftwards() {
        let m = fixture("LEFT").unwrap();
        // x_{-2} = b, x_{-1} = a, x_0 = b
        let pair = TapeStatePair::new(Tape::new(-2, vec![B, A, B], vec![A], vec![A]).unwrap(), Q0);
        assert_eq!(trace_t(&m, &pair, 3), vec![t(B, Q0), t(A, Q0), t(B, Q0)]);
    }

    #[test]
    fn trace_h_examples() {
        let pp = fixture("PING_PONG").unwrap();
        let headless = mark(&Configuration::new(Tape::uniform(A), None));
        assert_eq!(trace_h(&pp, &headless, 5), vec![Cell::Bare(A); 5]);
        let x = mark(&Configuration::uniform(A, Q0, 0));
        assert_eq!(trace_h(&pp, &x, 3), vec![Cell::Head(A, Q0), Cell::Bare(A), Cell::Head(A, Q0)]);
        let left = fixture("LEFT").unwrap();
        let y = mark(&Configuration::with_window(0, vec![B], A, Some(Head { state: Q0, pos: 2 })));
        assert_eq!(
            trace_h(&left, &y, 4),
            vec![Cell::Bare(B), Cell::Bare(B), Cell::Head(B, Q0), Cell::Bare(B)]
        );
    }

    #[test]
    fn lst_examples() {
        let left = fixture("LEFT").unwrap();
        let l2 = enumerate_lst(&left, 2, Budget::default()).unwrap();
        assert_eq!(l2.len(), 4);
        let pp = fixture("PING_PONG").unwrap();
        let p3 = enumerate_lst(&pp, 3, Budget::default()).unwrap();
        let expected: BTreeSet<_> = [vec![t(A, Q0), t(A, Q1), t(A, Q0)], vec![t(A, Q1), t(A, Q0), t(A, Q1)]].into();
        assert_eq!(p3.words, expected);
        let bounce = fixture("BOUNCE_SHIFT").unwrap();
        assert_eq!(enumerate_lst(&bounce, 1, Budget::default()).unwrap().len(), 8);
    }

    #[test]
    fn lsh_examples() {
        let pp = fixture("PING_PONG").unwrap();
        assert_eq!(enumerate_lsh(&pp, 1, Budget::default()).unwrap().len(), 3);
        let p2 = enumerate_lsh(&pp, 2, Budget::default()).unwrap();
        let expected: BTreeSet<_> = [
            vec![Cell::Bare(A), Cell::Bare(A)],
            vec![Cell::Head(A, Q0), Cell::Bare(A)],
            vec![Cell::Head(A, Q1), Cell::Bare(A)],
            vec![Cell::Bare(A), Cell::Head(A, Q0)],
            vec![Cell::Bare(A), Cell::Head(A, Q1)],
        ]
        .into();
        assert_eq!(p2.words, expected);
        let left = fixture("LEFT").unwrap();
        let l3 = enumerate_lsh(&left, 3, Budget::default()).unwrap();
        assert!(l3.words.iter().all(|w| w[..2] != [Cell::Bare(A), Cell::Head(B, Q0)]));
        assert!(!l3.contains(&[Cell::Bare(A), Cell::Head(B, Q0), Cell::Head(A, Q0)]));
        assert!(l3.words.iter().all(|w| w.iter().filter(|c| matches!(c, Cell::Head(..))).count() <= 1));
    }

    #[test]
    fn lazy_matches_exhaustive() {
        for name in ["PING_PONG", "LEFT", "BOUNCE_SHIFT"] {
            let m = fixture(name).unwrap();
            for n in 1..=3 {
                let lazy = enumerate_lst(&m, n, Budget::default()).unwrap();
                let full = enumerate_lst_exhaustive(&m, n, n as i64 - 1, Budget::default()).unwrap();
                assert_eq!(lazy.words, full.words, "{name} S_T n={n}");
                let lazy = enumerate_lsh(&m, n, Budget::default()).unwrap();
                let full = enumerate_lsh_exhaustive(&m, n, 2 * n as i64 - 2, Budget::default()).unwrap();
                assert_eq!(lazy.words, full.words, "{name} S_H n={n}");
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let m = fixture("BOUNCE_SHIFT").unwrap();
        let err = enumerate_lst(&m, 6, Budget::new(10)).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
        assert!(enumerate_lsh_exhaustive(&m, 4, 6, Budget::new(1000)).is_err());
    }

    #[test]
    fn dump_format() {
        let m = fixture("PING_PONG").unwrap();
        let s = enumerate_lsh(&m, 2, Budget::default()).unwrap();
        let text = dump(&m, &s, render_h);
        assert_eq!(text.lines().count(), 5);
        assert!(text.lines().any(|l| l == "(a,q0),a"));
        assert!(text.lines().any(|l| l == "a,a"));
    }
}
