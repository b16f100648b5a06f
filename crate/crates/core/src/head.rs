//! Head-movement phenomena: cycles, zigzags, n-cycles, visit sets,
//! preperiodicity and window stability, plus the quantitative bounds.
//!
//! Every search is bounded by a horizon. "None" always means "none up to
//! the given horizon / radius", never an unconditional claim.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::machine::{State, Symbol, TuringMachine};
use crate::tape::{Cell, Configuration, ConfigurationFile, Head};
use crate::trace::{all_tapes, ArrayRun, Budget};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    RightCycle,
    LeftCycle,
    RightZigzag,
    LeftZigzag,
    NCycle,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleWitness {
    pub kind: WitnessKind,
    pub base: i64,
    pub width: i64,
    pub stamps: Vec<usize>,
    pub config: Configuration,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessFile {
    pub kind: WitnessKind,
    pub base: i64,
    pub width: i64,
    pub stamps: Vec<usize>,
    pub config: ConfigurationFile,
}

impl CycleWitness {
    pub fn to_file(&self, m: &TuringMachine) -> WitnessFile {
        WitnessFile {
            kind: self.kind,
            base: self.base,
            width: self.width,
            stamps: self.stamps.clone(),
            config: ConfigurationFile::from_configuration(m, &self.config),
        }
    }

    /// Re-simulates the stored configuration and checks the claimed
    /// positions at every stamp.
    pub fn replays(&self, m: &TuringMachine) -> bool {
        if self.stamps.windows(2).any(|w| w[0] >= w[1]) {
            return false;
        }
        let Some(&last) = self.stamps.last() else {
            return false;
        };
        let pos = positions(m, &self.config, last);
        if pos.len() <= last {
            return false;
        }
        let at = |k: usize| pos[self.stamps[k]];
        let i = self.base;
        match self.kind {
            WitnessKind::RightCycle | WitnessKind::RightZigzag => {
                self.stamps.len() == 3 && at(0) == i && at(2) == i && at(1) == i + self.width
            }
            WitnessKind::LeftCycle | WitnessKind::LeftZigzag => {
                self.stamps.len() == 3 && at(0) == i && at(2) == i && at(1) == i - self.width
            }
            WitnessKind::NCycle => {
                self.stamps.len() % 2 == 1
                    && (0..self.stamps.len()).all(|k| {
                        if k % 2 == 0 {
                            at(k) == i
                        } else {
                            (at(k) - i).abs() > self.width
                        }
                    })
            }
        }
    }
}

/// Head positions at times `0..=horizon`. Shorter when headless.
pub fn positions(m: &TuringMachine, c: &Configuration, horizon: usize) -> Vec<i64> {
    let mut c = c.clone();
    let mut out = Vec::with_capacity(horizon + 1);
    let Some(h) = c.head else {
        return out;
    };
    out.push(h.pos);
    for _ in 0..horizon {
        c.advance(m);
        out.push(c.head.expect("head persists").pos);
    }
    out
}

/// First and last visit times per cell, maintained online.
struct Visits {
    offset: i64,
    first: Vec<u32>,
    last: Vec<u32>,
}

const NEVER: u32 = u32::MAX;

impl Visits {
    fn new(center: i64, reach: usize) -> Self {
        let len = 2 * reach + 3;
        Visits {
            offset: reach as i64 + 1 - center,
            first: vec![NEVER; len],
            last: vec![NEVER; len],
        }
    }

    fn idx(&self, i: i64) -> Option<usize> {
        let k = i + self.offset;
        (k >= 0 && (k as usize) < self.first.len()).then_some(k as usize)
    }

    fn last(&self, i: i64) -> u32 {
        self.idx(i).map_or(NEVER, |k| self.last[k])
    }

    /// Records a visit of cell `i` at time `t` and reports an excursion of
    /// exactly `width` completed now, if any: `(kind_is_right, t0, t1)`.
    fn visit(&mut self, i: i64, t: u32, width: i64) -> Option<(bool, u32, u32)> {
        let k = self.idx(i).expect("visit inside reach");
        let f = self.first[k];
        let mut hit = None;
        if f != NEVER {
            let r = self.last(i + width);
            let l = self.last(i - width);
            if r != NEVER && r > f {
                hit = Some((true, f, r));
            } else if l != NEVER && l > f {
                hit = Some((false, f, l));
            }
        } else {
            self.first[k] = t;
        }
        self.last[k] = t;
        hit
    }

    fn reset(&mut self, lo: i64, hi: i64) {
        for i in lo..=hi {
            if let Some(k) = self.idx(i) {
                self.first[k] = NEVER;
                self.last[k] = NEVER;
            }
        }
    }
}

fn earliest_excursion(pos: &[i64], width: i64) -> Option<(bool, i64, [usize; 3])> {
    let start = *pos.first()?;
    let mut v = Visits::new(start, pos.len());
    for (t, &i) in pos.iter().enumerate() {
        if let Some((right, t0, t1)) = v.visit(i, t as u32, width) {
            return Some((right, i, [t0 as usize, t1 as usize, t]));
        }
    }
    None
}

/// The widest cycle of width in `1..=max_width` seen within `horizon`,
/// earliest completion among those of that width.
pub fn find_cycle(m: &TuringMachine, c: &Configuration, max_width: i64, horizon: usize) -> Option<CycleWitness> {
    let pos = positions(m, c, horizon);
    let top = max_width.min(horizon as i64 / 2);
    (1..=top).rev().find_map(|w| {
        earliest_excursion(&pos, w).map(|(right, base, stamps)| CycleWitness {
            kind: if right { WitnessKind::RightCycle } else { WitnessKind::LeftCycle },
            base,
            width: w,
            stamps: stamps.to_vec(),
            config: c.clone(),
        })
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZigzagSearch {
    pub min_width: i64,
    pub radius: i64,
    pub horizon: usize,
    /// Try every pad symbol instead of only the first one.
    pub sweep_pads: bool,
}

/// Sweeps every window of the given radius, every state and the head at 0
/// for a zigzag of width at least `min_width`. Minimal by completion time,
/// then window order, then state.
pub fn find_zigzag(m: &TuringMachine, search: ZigzagSearch, budget: Budget) -> Result<Option<CycleWitness>> {
    let ZigzagSearch {
        min_width,
        radius,
        horizon,
        sweep_pads,
    } = search;
    if min_width < 1 {
        return Err(Error::Precondition("min_width must be at least 1".into()));
    }
    let a = m.alphabet_size();
    let len = (2 * radius + 1) as usize;
    let pads: Vec<Symbol> = if sweep_pads { m.symbols().collect() } else { vec![Symbol(0)] };
    let needed = (a as u128).checked_pow(len as u32).unwrap_or(u128::MAX).saturating_mul((m.state_count() * pads.len()) as u128);
    budget.admit("find_zigzag", needed)?;

    let mut best: Option<(usize, CycleWitness)> = None;
    let mut visits = Visits::new(0, horizon);
    for pad in &pads {
        for window in all_tapes(a, len) {
            for q in m.state_ids() {
                let cap = best.as_ref().map_or(horizon, |(t, _)| t - 1);
                let mut run = ArrayRun::new(&window, -radius, horizon as i64 + 1, *pad, 0, q);
                let (mut lo, mut hi) = (0i64, 0i64);
                let mut found = None;
                for t in 0..=cap {
                    lo = lo.min(run.pos);
                    hi = hi.max(run.pos);
                    if let Some((right, t0, t1)) = visits.visit(run.pos, t as u32, min_width) {
                        found = Some((right, run.pos, [t0 as usize, t1 as usize, t]));
                        break;
                    }
                    if t < cap {
                        run.step(m);
                    }
                }
                visits.reset(lo, hi);
                if let Some((right, base, stamps)) = found {
                    let config = Configuration::with_window(-radius, window.clone(), *pad, Some(Head { state: q, pos: 0 }));
                    let witness = CycleWitness {
                        kind: if right { WitnessKind::RightZigzag } else { WitnessKind::LeftZigzag },
                        base,
                        width: min_width,
                        stamps: stamps.to_vec(),
                        config,
                    };
                    best = Some((stamps[2], witness));
                }
            }
        }
    }
    Ok(best.map(|(_, w)| w))
}

/// Greedy search for `n` returns to the start cell, each preceded by an
/// excursion outside the `width`-neighbourhood of that cell.
pub fn find_n_cycle(m: &TuringMachine, c: &Configuration, n: usize, width: i64, horizon: usize) -> Option<CycleWitness> {
    if n == 0 {
        return None;
    }
    let pos = positions(m, c, horizon);
    let base = *pos.first()?;
    let mut stamps = vec![0];
    let mut outside = false;
    for (t, &p) in pos.iter().enumerate().skip(1) {
        if !outside && (p - base).abs() > width {
            stamps.push(t);
            outside = true;
        } else if outside && p == base {
            stamps.push(t);
            outside = false;
            if stamps.len() == 2 * n + 1 {
                return Some(CycleWitness {
                    kind: WitnessKind::NCycle,
                    base,
                    width,
                    stamps,
                    config: c.clone(),
                });
            }
        }
    }
    None
}

/// Number of completed greedy n-cycles at the start cell within `horizon`.
pub fn n_cycle_count(pos: &[i64], width: i64) -> usize {
    let Some(&base) = pos.first() else {
        return 0;
    };
    let mut outside = false;
    let mut count = 0;
    for &p in &pos[1..] {
        if !outside && (p - base).abs() > width {
            outside = true;
        } else if outside && p == base {
            outside = false;
            count += 1;
        }
    }
    count
}

pub fn visit_times(m: &TuringMachine, c: &Configuration, cell: i64, horizon: usize) -> BTreeSet<usize> {
    positions(m, c, horizon)
        .into_iter()
        .enumerate()
        .filter(|&(_, p)| p == cell)
        .map(|(t, _)| t)
        .collect()
}

/// `2 n |A|^(2N+1)`.
pub fn visit_bound(n: u64, width: u32, alphabet_size: u64) -> BigUint {
    BigUint::from(2u32) * BigUint::from(n) * BigUint::from(alphabet_size).pow(2 * width + 1)
}

/// `|Q| |A|^(p+1) (p+1)^2`.
pub fn isolation_length_for(states: u64, alphabet_size: u64, p: u32) -> BigUint {
    BigUint::from(states) * BigUint::from(alphabet_size).pow(p + 1) * BigUint::from(p as u64 + 1).pow(2)
}

pub fn isolation_length(m: &TuringMachine, p: u32) -> BigUint {
    isolation_length_for(m.state_count() as u64, m.alphabet_size() as u64, p)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PreperiodicityCertificate {
    pub transient: usize,
    pub period: usize,
    pub state: State,
    pub position: i64,
    /// First cell of `contents`; the interval visited up to `transient + period`.
    pub interval_lo: i64,
    pub contents: Vec<Symbol>,
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn zobrist(i: i64, s: Symbol) -> u64 {
    splitmix((i as u64).wrapping_mul(0x1_0000_0001) ^ ((s.0 as u64) << 48))
}

fn state_at(m: &TuringMachine, c: &Configuration, t: usize) -> Configuration {
    let mut c = c.clone();
    for _ in 0..t {
        c.advance(m);
    }
    c
}

/// Looks for the first exact repeat of (tape, state, position) within
/// `step_budget` steps. Tapes are compared through an incremental hash and
/// every hash hit is confirmed exactly.
pub fn detect_preperiodicity(m: &TuringMachine, c: &Configuration, step_budget: usize) -> Option<PreperiodicityCertificate> {
    let start = c.head?;
    let mut cur = c.clone();
    let mut hash = 0u64;
    let mut seen: HashMap<(u64, i64, State), Vec<usize>> = HashMap::new();
    seen.entry((0, start.pos, start.state)).or_default().push(0);
    let (mut lo, mut hi) = (start.pos, start.pos);
    for t in 1..=step_budget {
        let h = cur.head.expect("head persists");
        let old = cur.get(h.pos);
        cur.advance(m);
        hash ^= zobrist(h.pos, old) ^ zobrist(h.pos, cur.get(h.pos));
        let now = cur.head.expect("head persists");
        lo = lo.min(now.pos);
        hi = hi.max(now.pos);
        let key = (hash, now.pos, now.state);
        if let Some(times) = seen.get(&key) {
            for &s in times {
                let earlier = state_at(m, c, s);
                if earlier.head == cur.head && earlier.tape.agrees_on(&cur.tape, lo, hi) {
                    return Some(PreperiodicityCertificate {
                        transient: s,
                        period: t - s,
                        state: now.state,
                        position: now.pos,
                        interval_lo: lo,
                        contents: cur.tape.cells(lo, hi),
                    });
                }
            }
        }
        seen.entry(key).or_default().push(t);
    }
    None
}

/// Whether every `y` agreeing with `config` (as a marked tape) on `[-m, m]`
/// keeps `T_H^t(y)` equal to `T_H^t(config)` on `[-k, k]` for `t <= horizon`.
/// Free cells range over `[-(horizon + k), horizon + k]`; cells farther out
/// cannot influence `[-k, k]` within the horizon.
pub fn check_window_stability(
    m: &TuringMachine,
    config: &Configuration,
    k: i64,
    radius_m: i64,
    horizon: usize,
    budget: Budget,
) -> Result<bool> {
    if radius_m < k || k < 0 {
        return Err(Error::Precondition("need 0 <= k <= m".into()));
    }
    let reach = horizon as i64 + k;
    let free: Vec<i64> = (-reach..=reach).filter(|i| i.abs() > radius_m).collect();
    let head_inside = config.head.filter(|h| h.pos.abs() <= radius_m);
    let head_options: Vec<Option<Head>> = match (head_inside, config.head) {
        (Some(h), _) => vec![Some(h)],
        _ => std::iter::once(None)
            .chain(free.iter().flat_map(|&p| m.state_ids().map(move |q| Some(Head { state: q, pos: p }))))
            .collect(),
    };
    let a = m.alphabet_size();
    let needed = (a as u128)
        .checked_pow(free.len() as u32)
        .unwrap_or(u128::MAX)
        .saturating_mul(head_options.len() as u128);
    budget.admit("check_window_stability", needed)?;

    let span = reach + horizon as i64 + 1;
    let run = |cells: &mut Vec<Symbol>, head: Option<Head>| -> Vec<Vec<Cell>> {
        let mut head = head;
        let mut out = Vec::with_capacity(horizon + 1);
        for t in 0..=horizon {
            out.push(
                (-k..=k)
                    .map(|i| {
                        let s = cells[(i + span) as usize];
                        match head {
                            Some(h) if h.pos == i => Cell::Head(s, h.state),
                            _ => Cell::Bare(s),
                        }
                    })
                    .collect(),
            );
            if t == horizon {
                break;
            }
            if let Some(h) = head {
                let idx = (h.pos + span) as usize;
                let act = m.rule(cells[idx], h.state);
                cells[idx] = act.write;
                head = Some(Head {
                    state: act.next,
                    pos: h.pos + act.mv.delta(),
                });
            }
        }
        out
    };

    let base: Vec<Symbol> = (-span..=span).map(|i| config.get(i)).collect();
    let reference = run(&mut base.clone(), config.head.filter(|h| h.pos.abs() <= span - 1));
    for head in &head_options {
        for fill in all_tapes(a, free.len()) {
            let mut cells = base.clone();
            for (&i, &s) in free.iter().zip(&fill) {
                cells[(i + span) as usize] = s;
            }
            if run(&mut cells, *head) != reference {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub radius: i64,
    pub horizon: usize,
    pub configurations: u64,
    pub max_cycle_width: Option<i64>,
    pub widest: Option<WitnessFile>,
    /// Width used for the n-cycle count.
    pub width: i64,
    pub max_n_cycles: usize,
    pub preperiodic: u64,
}

impl Classification {
    pub fn summary(&self) -> String {
        let scope = format!("(radius {}, horizon {})", self.radius, self.horizon);
        match self.max_cycle_width {
            None => format!("no cycles found {scope}"),
            Some(w) => format!("max cycle width {w}; no width-{} zigzag {scope}", w + 1),
        }
    }
}

/// Widest excursion `max(j - i)` over cells `i` revisited after reaching `j`.
fn widest_excursion(pos: &[i64]) -> Option<(bool, i64, i64, [usize; 3])> {
    let mut first: HashMap<i64, usize> = HashMap::new();
    let mut best: Option<(bool, i64, i64, [usize; 3])> = None;
    // For every return to a cell, scan back to its first visit. Quadratic in
    // the horizon, which is fine for the small horizons this is used with.
    for (t, &i) in pos.iter().enumerate() {
        match first.get(&i) {
            None => {
                first.insert(i, t);
            }
            Some(&f) => {
                let (mut up, mut down) = ((i, f), (i, f));
                for (s, &p) in pos.iter().enumerate().take(t).skip(f) {
                    if p > up.0 {
                        up = (p, s);
                    }
                    if p < down.0 {
                        down = (p, s);
                    }
                }
                let cand = if up.0 - i >= i - down.0 {
                    (true, i, up.0 - i, [f, up.1, t])
                } else {
                    (false, i, i - down.0, [f, down.1, t])
                };
                if cand.2 > 0 && best.map_or(true, |b| cand.2 > b.2) {
                    best = Some(cand);
                }
            }
        }
    }
    best
}

/// Sweeps windows of `radius` (pads `Symbol(0)`, head at 0, every state)
/// and reports the widest cycle, the largest greedy n-cycle count at width
/// `width` and how many runs were preperiodic within `horizon`.
pub fn classify(m: &TuringMachine, radius: i64, horizon: usize, width: i64, budget: Budget) -> Result<Classification> {
    let len = (2 * radius + 1) as usize;
    let a = m.alphabet_size();
    let needed = (a as u128).checked_pow(len as u32).unwrap_or(u128::MAX).saturating_mul(m.state_count() as u128);
    budget.admit("classify", needed)?;
    let mut out = Classification {
        radius,
        horizon,
        configurations: 0,
        max_cycle_width: None,
        widest: None,
        width,
        max_n_cycles: 0,
        preperiodic: 0,
    };
    for window in all_tapes(a, len) {
        for q in m.state_ids() {
            let c = Configuration::with_window(-radius, window.clone(), Symbol(0), Some(Head { state: q, pos: 0 }));
            let pos = positions(m, &c, horizon);
            out.configurations += 1;
            out.max_n_cycles = out.max_n_cycles.max(n_cycle_count(&pos, width));
            if let Some((right, base, w, stamps)) = widest_excursion(&pos) {
                if out.max_cycle_width.map_or(true, |b| w > b) {
                    out.max_cycle_width = Some(w);
                    let witness = CycleWitness {
                        kind: if right { WitnessKind::RightCycle } else { WitnessKind::LeftCycle },
                        base,
                        width: w,
                        stamps: stamps.to_vec(),
                        config: c.clone(),
                    };
                    out.widest = Some(witness.to_file(m));
                }
            }
            if detect_preperiodicity(m, &c, horizon).is_some() {
                out.preperiodic += 1;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::fixture;

    fn at(m: &TuringMachine, state: &str, pos: i64) -> Configuration {
        Configuration::uniform(Symbol(0), m.state_by_name(state).unwrap(), pos)
    }

    fn walls(m: &TuringMachine, d: i64) -> Configuration {
        let w = m.symbol_by_name("W").unwrap();
        let mut cells = vec![Symbol(0); (2 * d + 1) as usize];
        cells[0] = w;
        cells[(2 * d) as usize] = w;
        Configuration::with_window(-d, cells, Symbol(0), Some(Head { state: m.state_by_name("R").unwrap(), pos: 0 }))
    }

    #[test]
    fn cycle_examples() {
        let pp = fixture("PING-PONG").unwrap();
        let w = find_cycle(&pp, &at(&pp, "q0", 0), 5, 10).unwrap();
        assert_eq!((w.kind, w.base, w.width, w.stamps.clone()), (WitnessKind::RightCycle, 0, 1, vec![0, 1, 2]));
        assert!(w.replays(&pp));

        let left = fixture("LEFT").unwrap();
        assert!(find_cycle(&left, &at(&left, "q", 0), 100, 1000).is_none());

        let b = fixture("BOUNCE_SHIFT").unwrap();
        let w = find_cycle(&b, &walls(&b, 3), 50, 100).unwrap();
        assert!(w.width >= 3 && w.replays(&b), "{w:?}");
    }

    #[test]
    fn zigzag_examples() {
        let search = |min_width, radius, horizon| ZigzagSearch {
            min_width,
            radius,
            horizon,
            sweep_pads: false,
        };
        let left = fixture("LEFT").unwrap();
        assert!(find_zigzag(&left, search(2, 4, 200), Budget::default()).unwrap().is_none());
        let pp = fixture("PING-PONG").unwrap();
        assert!(find_zigzag(&pp, search(2, 4, 200), Budget::default()).unwrap().is_none());
        assert!(find_zigzag(&pp, search(1, 0, 10), Budget::default()).unwrap().is_some());
        let b = fixture("BOUNCE_SHIFT").unwrap();
        let w = find_zigzag(&b, search(4, 8, 400), Budget::default()).unwrap().unwrap();
        assert!(w.width == 4 && w.replays(&b));
        assert!(find_zigzag(&b, search(4, 8, 400), Budget::new(10)).is_err());
    }

    #[test]
    fn n_cycle_examples() {
        let pp = fixture("PING-PONG").unwrap();
        let w = find_n_cycle(&pp, &at(&pp, "q0", 0), 3, 0, 10).unwrap();
        assert_eq!(w.stamps, vec![0, 1, 2, 3, 4, 5, 6]);
        assert!(w.replays(&pp));
        assert!(find_n_cycle(&pp, &at(&pp, "q0", 0), 1, 1, 100).is_none());
        let left = fixture("LEFT").unwrap();
        assert!(find_n_cycle(&left, &at(&left, "q", 0), 1, 0, 1000).is_none());
    }

    #[test]
    fn visits_and_bounds() {
        let pp = fixture("PING-PONG").unwrap();
        assert_eq!(visit_times(&pp, &at(&pp, "q0", 0), 0, 9), BTreeSet::from([0, 2, 4, 6, 8]));
        let left = fixture("LEFT").unwrap();
        assert_eq!(visit_times(&left, &at(&left, "q", 0), 0, 100), BTreeSet::from([0]));
        assert!(visit_times(&left, &at(&left, "q", 0), 5, 100).is_empty());

        assert_eq!(visit_bound(1, 1, 2), BigUint::from(16u32));
        assert_eq!(visit_bound(2, 0, 3), BigUint::from(12u32));
        assert_eq!(visit_bound(1, 0, 1), BigUint::from(2u32));
        assert_eq!(isolation_length(&pp, 2), BigUint::from(18u32));
        assert_eq!(isolation_length_for(1, 2, 1), BigUint::from(16u32));
        assert_eq!(isolation_length_for(1, 1, 1), BigUint::from(4u32));
    }

    #[test]
    fn preperiodicity_examples() {
        let pp = fixture("PING-PONG").unwrap();
        let cert = detect_preperiodicity(&pp, &at(&pp, "q0", 0), 100).unwrap();
        assert_eq!((cert.transient, cert.period), (0, 2));
        let left = fixture("LEFT").unwrap();
        assert!(detect_preperiodicity(&left, &at(&left, "q", 0), 2000).is_none());
        let b = fixture("BOUNCE_SHIFT").unwrap();
        assert!(detect_preperiodicity(&b, &walls(&b, 3), 3000).is_none());
    }

    #[test]
    fn preperiodicity_is_minimal_against_brute_force() {
        let m = fixture("NLEVEL(2)").unwrap();
        for window in all_tapes(m.alphabet_size(), 5) {
            for q in m.state_ids() {
                let c = Configuration::with_window(-2, window.clone(), Symbol(0), Some(Head { state: q, pos: 0 }));
                let got = detect_preperiodicity(&m, &c, 60).map(|p| (p.transient, p.period));
                let states: Vec<Configuration> = (0..=60).map(|t| state_at(&m, &c, t)).collect();
                let brute = (1..=60usize).find_map(|t| {
                    (0..t)
                        .find(|&s| states[s].head == states[t].head && states[s].tape.agrees_on(&states[t].tape, -70, 70))
                        .map(|s| (s, t - s))
                });
                assert_eq!(got, brute);
            }
        }
    }

    #[test]
    fn window_stability_examples() {
        let pp = fixture("PING-PONG").unwrap();
        assert!(check_window_stability(&pp, &at(&pp, "q0", 0), 1, 1, 50, Budget::default()).unwrap());
        let left = fixture("LEFT").unwrap();
        let headless = Configuration::with_window(0, vec![Symbol(0)], Symbol(0), None);
        assert!(!check_window_stability(&left, &headless, 0, 1, 2, Budget::default()).unwrap());
        assert!(check_window_stability(&left, &headless, 0, 2, 2, Budget::default()).unwrap());
    }

    #[test]
    fn classify_fixtures() {
        let left = fixture("LEFT").unwrap();
        let c = classify(&left, 3, 100, 1, Budget::default()).unwrap();
        assert_eq!(c.max_cycle_width, None);
        assert!(c.summary().starts_with("no cycles found"));
        let pp = fixture("PING-PONG").unwrap();
        let c = classify(&pp, 3, 100, 0, Budget::default()).unwrap();
        assert_eq!(c.max_cycle_width, Some(1));
        assert_eq!(c.preperiodic, c.configurations);
        let b = fixture("BOUNCE_SHIFT").unwrap();
        let c = classify(&b, 4, 300, 1, Budget::default()).unwrap();
        assert!(c.max_cycle_width.unwrap() >= 5);
    }
}
