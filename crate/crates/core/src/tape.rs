//! Finite representation of bi-infinite tapes and the three step maps
//! `T`, `T_H` and `T_T`.
//!
//! A tape is a window `[lo, hi]` plus two periodic pads: the left pad is
//! repeated so that its last letter sits at `lo - 1`, the right pad so that
//! its first letter sits at `hi + 1`. This represents every spatially
//! eventually-periodic configuration exactly; the window grows on demand.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::machine::{State, Symbol, TuringMachine};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tape<C> {
    lo: i64,
    window: Vec<C>,
    left_pad: Vec<C>,
    right_pad: Vec<C>,
}

impl<C: Copy + PartialEq> Tape<C> {
    pub fn new(lo: i64, window: Vec<C>, left_pad: Vec<C>, right_pad: Vec<C>) -> Result<Self> {
        if window.is_empty() {
            return Err(Error::Empty("window"));
        }
        if left_pad.is_empty() || right_pad.is_empty() {
            return Err(Error::Empty("pad"));
        }
        Ok(Tape {
            lo,
            window,
            left_pad,
            right_pad,
        })
    }

    pub fn uniform(c: C) -> Self {
        Tape {
            lo: 0,
            window: vec![c],
            left_pad: vec![c],
            right_pad: vec![c],
        }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.window.len() as i64 - 1
    }

    pub fn window(&self) -> &[C] {
        &self.window
    }

    pub fn left_pad(&self) -> &[C] {
        &self.left_pad
    }

    pub fn right_pad(&self) -> &[C] {
        &self.right_pad
    }

    pub fn get(&self, i: i64) -> C {
        if i < self.lo {
            let len = self.left_pad.len() as i64;
            let k = (self.lo - i) % len;
            self.left_pad[((len - k) % len) as usize]
        } else if i > self.hi() {
            let len = self.right_pad.len() as i64;
            self.right_pad[((i - self.hi() - 1) % len) as usize]
        } else {
            self.window[(i - self.lo) as usize]
        }
    }

    /// Grows the window (by whole pad periods, keeping pads aligned) until it
    /// contains cell `i`.
    fn cover(&mut self, i: i64) {
        if i < self.lo {
            let len = self.left_pad.len() as i64;
            let periods = (self.lo - i + len - 1) / len;
            let mut grown = Vec::with_capacity((periods * len) as usize + self.window.len());
            for _ in 0..periods {
                grown.extend_from_slice(&self.left_pad);
            }
            grown.append(&mut self.window);
            self.window = grown;
            self.lo -= periods * len;
        } else if i > self.hi() {
            let len = self.right_pad.len() as i64;
            let periods = (i - self.hi() + len - 1) / len;
            for _ in 0..periods {
                let pad = self.right_pad.clone();
                self.window.extend_from_slice(&pad);
            }
        }
    }

    pub fn set(&mut self, i: i64, c: C) {
        self.cover(i);
        let lo = self.lo;
        self.window[(i - lo) as usize] = c;
    }

    pub fn cells(&self, lo: i64, hi: i64) -> Vec<C> {
        (lo..=hi).map(|i| self.get(i)).collect()
    }

    /// `σ^k`: cell `i` of the result is cell `i + k` of `self`.
    pub fn shifted(&self, k: i64) -> Self {
        Tape {
            lo: self.lo - k,
            ..self.clone()
        }
    }

    pub fn map<D: Copy + PartialEq>(&self, f: impl Fn(C) -> D) -> Tape<D> {
        Tape {
            lo: self.lo,
            window: self.window.iter().map(|&c| f(c)).collect(),
            left_pad: self.left_pad.iter().map(|&c| f(c)).collect(),
            right_pad: self.right_pad.iter().map(|&c| f(c)).collect(),
        }
    }

    pub fn agrees_on(&self, other: &Tape<C>, lo: i64, hi: i64) -> bool {
        (lo..=hi).all(|i| self.get(i) == other.get(i))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Head {
    pub state: State,
    pub pos: i64,
}

/// A point of `X = A^Z × Q × Z`, or a headless tape.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    pub tape: Tape<Symbol>,
    pub head: Option<Head>,
}

impl Configuration {
    pub fn new(tape: Tape<Symbol>, head: Option<Head>) -> Self {
        Configuration { tape, head }
    }

    /// Tape filled with `fill`, head at `pos` in `state`.
    pub fn uniform(fill: Symbol, state: State, pos: i64) -> Self {
        Configuration {
            tape: Tape::uniform(fill),
            head: Some(Head { state, pos }),
        }
    }

    /// Window over `[lo, lo + cells.len())`, both pads `pad`.
    pub fn with_window(lo: i64, cells: Vec<Symbol>, pad: Symbol, head: Option<Head>) -> Self {
        let tape = Tape::new(lo, cells, vec![pad], vec![pad]).expect("nonempty window");
        Configuration { tape, head }
    }

    pub fn get(&self, i: i64) -> Symbol {
        self.tape.get(i)
    }

    pub fn validate(&self, m: &TuringMachine) -> Result<()> {
        let n = m.alphabet_size() as u16;
        let tape = &self.tape;
        for s in tape.window.iter().chain(&tape.left_pad).chain(&tape.right_pad) {
            if s.0 >= n {
                return Err(Error::InvalidConfiguration(format!("symbol index {} out of range", s.0)));
            }
        }
        if let Some(h) = self.head {
            if h.state.0 as usize >= m.state_count() {
                return Err(Error::InvalidConfiguration(format!("state index {} out of range", h.state.0)));
            }
        }
        Ok(())
    }

    /// `σ^k` on `X`: tape shifted and head position decreased by `k`.
    pub fn shifted(&self, k: i64) -> Self {
        Configuration {
            tape: self.tape.shifted(k),
            head: self.head.map(|h| Head { pos: h.pos - k, ..h }),
        }
    }

    /// Same cells on `[lo, hi]` and same head.
    pub fn agrees_on(&self, other: &Configuration, lo: i64, hi: i64) -> bool {
        self.head == other.head && self.tape.agrees_on(&other.tape, lo, hi)
    }
}

/// One application of `T`. `None` for a headless configuration.
pub fn step_t(m: &TuringMachine, c: &Configuration) -> Option<Configuration> {
    let head = c.head?;
    let act = m.rule(c.tape.get(head.pos), head.state);
    let mut tape = c.tape.clone();
    tape.set(head.pos, act.write);
    Some(Configuration {
        tape,
        head: Some(Head {
            state: act.next,
            pos: head.pos + act.mv.delta(),
        }),
    })
}

impl Configuration {
    /// Applies `T` in place. Returns `false` (and does nothing) when headless.
    pub fn advance(&mut self, m: &TuringMachine) -> bool {
        let Some(head) = self.head else {
            return false;
        };
        let act = m.rule(self.tape.get(head.pos), head.state);
        self.tape.set(head.pos, act.write);
        self.head = Some(Head {
            state: act.next,
            pos: head.pos + act.mv.delta(),
        });
        true
    }
}

pub fn shift_config(c: &Configuration, k: i64) -> Configuration {
    c.shifted(k)
}

/// A cell of `X_H`: a bare symbol or a symbol carrying the head.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Cell {
    Bare(Symbol),
    Head(Symbol, State),
}

impl Cell {
    pub fn symbol(self) -> Symbol {
        match self {
            Cell::Bare(s) | Cell::Head(s, _) => s,
        }
    }
}

/// A point of `X_H`: a tape over `A ⊔ (A×Q)` with at most one marked cell.
/// Pads never carry the head.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MarkedTape {
    pub tape: Tape<Cell>,
}

impl MarkedTape {
    pub fn head(&self) -> Option<(i64, Symbol, State)> {
        self.tape
            .window
            .iter()
            .position(|c| matches!(c, Cell::Head(..)))
            .map(|k| match self.tape.window[k] {
                Cell::Head(s, q) => (self.tape.lo + k as i64, s, q),
                Cell::Bare(_) => unreachable!(),
            })
    }

    pub fn get(&self, i: i64) -> Cell {
        self.tape.get(i)
    }

    pub fn shifted(&self, k: i64) -> Self {
        MarkedTape {
            tape: self.tape.shifted(k),
        }
    }
}

/// `Φ`: writes the head onto the tape.
pub fn mark(c: &Configuration) -> MarkedTape {
    let mut tape = c.tape.map(Cell::Bare);
    if let Some(h) = c.head {
        tape.set(h.pos, Cell::Head(c.tape.get(h.pos), h.state));
    }
    MarkedTape { tape }
}

/// Inverse of [`mark`].
pub fn unmark(x: &MarkedTape) -> Configuration {
    let head = x.head().map(|(pos, _, state)| Head { state, pos });
    Configuration {
        tape: x.tape.map(Cell::symbol),
        head,
    }
}

/// One application of `T_H`, computed on the marked tape itself: the mark
/// is lifted, the written symbol left behind and the mark dropped on the
/// neighbour. Headless tapes are fixed points.
pub fn step_th(m: &TuringMachine, x: &MarkedTape) -> MarkedTape {
    let Some((i, b, q)) = x.head() else {
        return x.clone();
    };
    let act = m.rule(b, q);
    let mut tape = x.tape.clone();
    tape.set(i, Cell::Bare(act.write));
    let j = i + act.mv.delta();
    let below = tape.get(j).symbol();
    tape.set(j, Cell::Head(below, act.next));
    MarkedTape { tape }
}

/// A point of `X_T = A^Z × Q`: the head is always on cell 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TapeStatePair {
    pub tape: Tape<Symbol>,
    pub state: State,
}

impl TapeStatePair {
    pub fn new(tape: Tape<Symbol>, state: State) -> Self {
        TapeStatePair { tape, state }
    }

    pub fn as_configuration(&self) -> Configuration {
        Configuration {
            tape: self.tape.clone(),
            head: Some(Head {
                state: self.state,
                pos: 0,
            }),
        }
    }
}

/// `Ψ`: recentres the tape on the head. `None` when headless.
pub fn project(c: &Configuration) -> Option<TapeStatePair> {
    let h = c.head?;
    Some(TapeStatePair {
        tape: c.tape.shifted(h.pos),
        state: h.state,
    })
}

/// One application of `T_T`: rewrite cell 0, then shift by the move.
pub fn step_tt(m: &TuringMachine, x: &TapeStatePair) -> TapeStatePair {
    let act = m.rule(x.tape.get(0), x.state);
    let mut tape = x.tape.clone();
    tape.set(0, act.write);
    TapeStatePair {
        tape: tape.shifted(act.mv.delta()),
        state: act.next,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeadFile {
    pub state: String,
    pub pos: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigurationFile {
    pub lo: i64,
    pub window: Vec<String>,
    pub left_pad: Vec<String>,
    pub right_pad: Vec<String>,
    pub head: Option<HeadFile>,
}

impl ConfigurationFile {
    pub fn resolve(&self, m: &TuringMachine) -> Result<Configuration> {
        let syms = |v: &[String]| v.iter().map(|s| m.symbol_by_name(s)).collect::<Result<Vec<_>>>();
        let tape = Tape::new(self.lo, syms(&self.window)?, syms(&self.left_pad)?, syms(&self.right_pad)?)?;
        let head = match &self.head {
            Some(h) => Some(Head {
                state: m.state_by_name(&h.state)?,
                pos: h.pos,
            }),
            None => None,
        };
        Ok(Configuration { tape, head })
    }

    pub fn from_configuration(m: &TuringMachine, c: &Configuration) -> Self {
        let names = |v: &[Symbol]| v.iter().map(|&s| m.symbol_name(s).to_string()).collect();
        ConfigurationFile {
            lo: c.tape.lo(),
            window: names(c.tape.window()),
            left_pad: names(c.tape.left_pad()),
            right_pad: names(c.tape.right_pad()),
            head: c.head.map(|h| HeadFile {
                state: m.state_name(h.state).to_string(),
                pos: h.pos,
            }),
        }
    }
}

pub fn configuration_from_json(m: &TuringMachine, text: &str) -> Result<Configuration> {
    let file: ConfigurationFile = serde_json::from_str(text)?;
    file.resolve(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::fixture;

    const A: Symbol = Symbol(0);
    const B: Symbol = Symbol(1);

    #[test]
    fn pads_repeat_and_stay_aligned() {
        let mut t = Tape::new(0, vec![A], vec![A, B], vec![B, A, A]).unwrap();
        // ... a b a b [a] b a a b a a ...
        assert_eq!(t.cells(-4, 6), vec![A, B, A, B, A, B, A, A, B, A, A]);
        let before = t.cells(-10, 10);
        t.set(-5, A);
        t.set(7, A);
        let mut expected = before.clone();
        expected[5] = A;
        expected[17] = A;
        assert_eq!(t.cells(-10, 10), expected);
    }

    #[test]
    fn ping_pong_steps() {
        let m = fixture("PING_PONG").unwrap();
        let c0 = Configuration::uniform(A, State(0), 0);
        let c1 = step_t(&m, &c0).unwrap();
        assert_eq!(c1.head, Some(Head { state: State(1), pos: 1 }));
        assert!(c1.tape.agrees_on(&c0.tape, -5, 5));
        let c2 = step_t(&m, &c1).unwrap();
        assert_eq!(c2.head, Some(Head { state: State(0), pos: 0 }));
    }

    #[test]
    fn left_steps() {
        let m = fixture("LEFT").unwrap();
        // ... a b [a] b a ...
        let c = Configuration::with_window(-2, vec![A, B, A, B, A], A, Some(Head { state: State(0), pos: 0 }));
        let d = step_t(&m, &c).unwrap();
        assert_eq!(d.head.unwrap().pos, -1);
        assert!(d.tape.agrees_on(&c.tape, -6, 6));
        let far = Configuration::uniform(A, State(0), 5);
        assert_eq!(step_t(&m, &far).unwrap().head.unwrap().pos, 4);
    }

    #[test]
    fn headless_is_fixed_for_th() {
        let m = fixture("PING_PONG").unwrap();
        let x = mark(&Configuration::new(Tape::uniform(A), None));
        assert_eq!(step_th(&m, &x), x);
        assert!(step_t(&m, &unmark(&x)).is_none());
    }

    #[test]
    fn tt_shifts_tape_under_head() {
        let m = fixture("LEFT").unwrap();
        // x_{-1} = b, x_0 = a
        let pair = TapeStatePair::new(Tape::new(-1, vec![B, A], vec![A], vec![A]).unwrap(), State(0));
        let next = step_tt(&m, &pair);
        assert_eq!(next.tape.get(0), B);
        let pp = fixture("PING_PONG").unwrap();
        let p0 = TapeStatePair::new(Tape::uniform(A), State(0));
        let p1 = step_tt(&pp, &p0);
        assert_eq!(p1.state, State(1));
        assert!(p1.tape.agrees_on(&p0.tape, -3, 3));
    }

    #[test]
    fn shift_group_action() {
        let c = Configuration::with_window(-1, vec![A, B, B], A, Some(Head { state: State(0), pos: 1 }));
        assert_eq!(c.shifted(0), c);
        assert_eq!(c.shifted(1).shifted(-1), c);
        assert_eq!(c.shifted(1).get(0), c.get(1));
        assert_eq!(c.shifted(3).head.unwrap().pos, -2);
    }

    #[test]
    fn configuration_json() {
        let m = fixture("LEFT").unwrap();
        let text = r#"{"lo":-1,"window":["a","b","a"],"left_pad":["b"],"right_pad":["a","b"],"head":{"state":"q","pos":0}}"#;
        let c = configuration_from_json(&m, text).unwrap();
        assert_eq!(c.get(-5), B);
        assert_eq!(c.get(3), B);
        let back = ConfigurationFile::from_configuration(&m, &c);
        assert_eq!(back.resolve(&m).unwrap(), c);
        let headless = r#"{"lo":0,"window":["a"],"left_pad":["a"],"right_pad":["a"],"head":null}"#;
        assert!(configuration_from_json(&m, headless).unwrap().head.is_none());
        let bad = r#"{"lo":0,"window":["z"],"left_pad":["a"],"right_pad":["a"],"head":null}"#;
        assert!(configuration_from_json(&m, bad).is_err());
    }
}
