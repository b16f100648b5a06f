//! One-head machines `(A, Q, δ)` on a bi-infinite tape, their JSON form and
//! the named corpus of fixtures.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a tape symbol in the machine's alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Symbol(pub u16);

/// Index of a head state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct State(pub u16);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Move {
    Left,
    Right,
}

impl Move {
    pub fn delta(self) -> i64 {
        match self {
            Move::Left => -1,
            Move::Right => 1,
        }
    }

    pub fn from_delta(d: i64) -> Result<Move> {
        match d {
            -1 => Ok(Move::Left),
            1 => Ok(Move::Right),
            other => Err(Error::InvalidMove(other)),
        }
    }

    pub fn reversed(self) -> Move {
        match self {
            Move::Left => Move::Right,
            Move::Right => Move::Left,
        }
    }
}

/// Right-hand side of a rule: `δ(a, q) = (write, next, mv)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Action {
    pub write: Symbol,
    pub next: State,
    pub mv: Move,
}

/// A machine with a total rule table. Symbols and states are dense indices;
/// their display names are kept for I/O.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TuringMachine {
    alphabet: Vec<String>,
    states: Vec<String>,
    // indexed by symbol * |Q| + state
    table: Vec<Action>,
}

/// One rule entry as it appears in machine files.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleEntry {
    pub read: String,
    pub state: String,
    pub write: String,
    pub next: String,
    #[serde(rename = "move")]
    pub mv: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MachineFile {
    pub alphabet: Vec<String>,
    pub states: Vec<String>,
    pub rules: Vec<RuleEntry>,
}

impl TuringMachine {
    /// Validates and builds a machine. Every `(symbol, state)` pair must have
    /// exactly one entry.
    pub fn new(alphabet: Vec<String>, states: Vec<String>, rules: &[RuleEntry]) -> Result<Self> {
        if alphabet.is_empty() {
            return Err(Error::Empty("alphabet"));
        }
        if states.is_empty() {
            return Err(Error::Empty("state set"));
        }
        let sym_index: BTreeMap<&str, u16> = alphabet
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i as u16))
            .collect();
        let state_index: BTreeMap<&str, u16> = states
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i as u16))
            .collect();
        if sym_index.len() != alphabet.len() {
            return Err(Error::InvalidConfiguration("repeated alphabet symbol".into()));
        }
        if state_index.len() != states.len() {
            return Err(Error::InvalidConfiguration("repeated state name".into()));
        }
        let sym = |s: &str| {
            sym_index
                .get(s)
                .copied()
                .map(Symbol)
                .ok_or_else(|| Error::UnknownSymbol(s.to_string()))
        };
        let st = |s: &str| {
            state_index
                .get(s)
                .copied()
                .map(State)
                .ok_or_else(|| Error::UnknownState(s.to_string()))
        };

        let nq = states.len();
        let mut table: Vec<Option<Action>> = vec![None; alphabet.len() * nq];
        for r in rules {
            let a = sym(&r.read)?;
            let q = st(&r.state)?;
            let action = Action {
                write: sym(&r.write)?,
                next: st(&r.next)?,
                mv: Move::from_delta(r.mv)?,
            };
            let slot = &mut table[a.0 as usize * nq + q.0 as usize];
            if slot.is_some() {
                return Err(Error::DuplicateRule {
                    symbol: r.read.clone(),
                    state: r.state.clone(),
                });
            }
            *slot = Some(action);
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(i, a)| {
                a.ok_or_else(|| Error::IncompleteRule {
                    symbol: alphabet[i / nq].clone(),
                    state: states[i % nq].clone(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TuringMachine {
            alphabet,
            states,
            table,
        })
    }

    /// Builds a machine from a closure over dense indices. Used by fixtures.
    pub fn from_fn(
        alphabet: Vec<String>,
        states: Vec<String>,
        rule: impl Fn(Symbol, State) -> Action,
    ) -> Result<Self> {
        let mut rules = Vec::new();
        for a in 0..alphabet.len() {
            for q in 0..states.len() {
                let act = rule(Symbol(a as u16), State(q as u16));
                rules.push(RuleEntry {
                    read: alphabet[a].clone(),
                    state: states[q].clone(),
                    write: alphabet[act.write.0 as usize].clone(),
                    next: states[act.next.0 as usize].clone(),
                    mv: act.mv.delta(),
                });
            }
        }
        TuringMachine::new(alphabet, states, &rules)
    }

    pub fn from_file(file: &MachineFile) -> Result<Self> {
        TuringMachine::new(file.alphabet.clone(), file.states.clone(), &file.rules)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: MachineFile = serde_json::from_str(text)?;
        TuringMachine::from_file(&file)
    }

    pub fn to_file(&self) -> MachineFile {
        let mut rules = Vec::new();
        for a in self.symbols() {
            for q in self.state_ids() {
                let act = self.rule(a, q);
                rules.push(RuleEntry {
                    read: self.symbol_name(a).to_string(),
                    state: self.state_name(q).to_string(),
                    write: self.symbol_name(act.write).to_string(),
                    next: self.state_name(act.next).to_string(),
                    mv: act.mv.delta(),
                });
            }
        }
        MachineFile {
            alphabet: self.alphabet.clone(),
            states: self.states.clone(),
            rules,
        }
    }

    #[inline]
    pub fn rule(&self, a: Symbol, q: State) -> Action {
        self.table[a.0 as usize * self.states.len() + q.0 as usize]
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet.len()
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + Clone {
        (0..self.alphabet.len() as u16).map(Symbol)
    }

    pub fn state_ids(&self) -> impl Iterator<Item = State> + Clone {
        (0..self.states.len() as u16).map(State)
    }

    pub fn symbol_name(&self, a: Symbol) -> &str {
        &self.alphabet[a.0 as usize]
    }

    pub fn state_name(&self, q: State) -> &str {
        &self.states[q.0 as usize]
    }

    pub fn symbol_by_name(&self, name: &str) -> Result<Symbol> {
        self.alphabet
            .iter()
            .position(|s| s == name)
            .map(|i| Symbol(i as u16))
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    pub fn state_by_name(&self, name: &str) -> Result<State> {
        self.states
            .iter()
            .position(|s| s == name)
            .map(|i| State(i as u16))
            .ok_or_else(|| Error::UnknownState(name.to_string()))
    }

    /// The mirror machine: every move is reversed.
    pub fn reflected(&self) -> TuringMachine {
        TuringMachine {
            alphabet: self.alphabet.clone(),
            states: self.states.clone(),
            table: self
                .table
                .iter()
                .map(|a| Action {
                    mv: a.mv.reversed(),
                    ..*a
                })
                .collect(),
        }
    }
}

/// Named machines of the corpus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fixture {
    /// Two states bouncing between two adjacent cells on a unary tape.
    PingPong,
    /// One state moving left forever, rewriting what it reads.
    Left,
    /// The head rebounds between two `W` walls and shifts each wall one
    /// cell to the left when it hits it.
    BounceShift,
    /// `n` stacked tape levels shifted down while the head sweeps; rebounds
    /// on a wall in the lowest level.
    NLevel(usize),
}

impl Fixture {
    pub fn parse(name: &str) -> Result<Fixture> {
        let upper = name.trim().to_ascii_uppercase().replace('-', "_");
        match upper.as_str() {
            "PING_PONG" | "PINGPONG" => return Ok(Fixture::PingPong),
            "LEFT" => return Ok(Fixture::Left),
            "BOUNCE_SHIFT" | "BOUNCESHIFT" => return Ok(Fixture::BounceShift),
            _ => {}
        }
        if let Some(rest) = upper.strip_prefix("NLEVEL") {
            let digits = rest.trim_matches(|c| c == '(' || c == ')' || c == '_');
            if let Ok(n) = digits.parse::<usize>() {
                if (1..=6).contains(&n) {
                    return Ok(Fixture::NLevel(n));
                }
            }
        }
        Err(Error::UnknownFixture(name.to_string()))
    }

    pub fn name(&self) -> String {
        match self {
            Fixture::PingPong => "PING_PONG".into(),
            Fixture::Left => "LEFT".into(),
            Fixture::BounceShift => "BOUNCE_SHIFT".into(),
            Fixture::NLevel(n) => format!("NLEVEL({n})"),
        }
    }

    pub fn machine(&self) -> TuringMachine {
        match *self {
            Fixture::PingPong => ping_pong(),
            Fixture::Left => left(),
            Fixture::BounceShift => bounce_shift(),
            Fixture::NLevel(n) => n_level(n),
        }
    }
}

impl fmt::Display for Fixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Looks up a fixture by name, e.g. `LEFT` or `NLEVEL(2)`.
pub fn fixture(name: &str) -> Result<TuringMachine> {
    Fixture::parse(name).map(|f| f.machine())
}

fn names(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn ping_pong() -> TuringMachine {
    TuringMachine::from_fn(names(&["a"]), names(&["q0", "q1"]), |a, q| {
        if q.0 == 0 {
            Action { write: a, next: State(1), mv: Move::Right }
        } else {
            Action { write: a, next: State(0), mv: Move::Left }
        }
    })
    .expect("ping-pong table is total")
}

fn left() -> TuringMachine {
    TuringMachine::from_fn(names(&["a", "b"]), names(&["q"]), |a, q| Action {
        write: a,
        next: q,
        mv: Move::Left,
    })
    .expect("left table is total")
}

/// Symbols: `0` blank, `W` wall. States: `R` sweeping right, `L` sweeping
/// left, `P` re-placing the right wall, `Q` re-placing the left wall.
fn bounce_shift() -> TuringMachine {
    const BLANK: Symbol = Symbol(0);
    const WALL: Symbol = Symbol(1);
    const R: State = State(0);
    const L: State = State(1);
    const P: State = State(2);
    const Q: State = State(3);
    TuringMachine::from_fn(names(&["0", "W"]), names(&["R", "L", "P", "Q"]), |a, q| {
        match (q, a) {
            (R, WALL) => Action { write: BLANK, next: P, mv: Move::Left },
            (R, _) => Action { write: BLANK, next: R, mv: Move::Right },
            (P, _) => Action { write: WALL, next: L, mv: Move::Left },
            (L, WALL) => Action { write: BLANK, next: Q, mv: Move::Left },
            (L, _) => Action { write: BLANK, next: L, mv: Move::Left },
            _ => Action { write: WALL, next: R, mv: Move::Right },
        }
    })
    .expect("bounce-shift table is total")
}

/// Symbol `k` encodes levels as bits, level 0 (the lowest) in bit 0; a set
/// bit is a wall. Names list the levels bottom-up, e.g. `W0` for a wall on
/// level 0 only.
fn n_level(n: usize) -> TuringMachine {
    assert!((1..=6).contains(&n), "NLEVEL supports 1..=6 levels");
    let count = 1usize << n;
    let alphabet: Vec<String> = (0..count)
        .map(|k| {
            (0..n)
                .map(|lvl| if k >> lvl & 1 == 1 { 'W' } else { '0' })
                .collect()
        })
        .collect();
    TuringMachine::from_fn(alphabet, names(&["R", "L"]), |a, q| {
        let bits = a.0 as usize;
        let shifted = Symbol((bits >> 1) as u16);
        let wall = bits & 1 == 1;
        let forward = if q.0 == 0 { Move::Right } else { Move::Left };
        if wall {
            Action { write: shifted, next: State(1 - q.0), mv: forward.reversed() }
        } else {
            Action { write: shifted, next: q, mv: forward }
        }
    })
    .expect("n-level table is total")
}
