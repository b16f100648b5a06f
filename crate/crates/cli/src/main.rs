use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use zigzag_core::automata::{dfa_dot, dpda_dot, DpdaRender};
use zigzag_core::head::{classify, find_zigzag, ZigzagSearch};
use zigzag_core::sh::{build_cbar, build_sh_recognizer, compare_sh, ShParams};
use zigzag_core::st::{build_c, build_l, build_r, st_equivalence_check, EquivalenceReport, ExcursionState, PartialConfiguration, PhaseDecider};
use zigzag_core::tape::{configuration_from_json, mark, project};
use zigzag_core::trace::{dump, enumerate_lsh, enumerate_lst, render_h, render_t, render_word, Budget, TraceSymbolT};
use zigzag_core::{fixture, Cell, Configuration, Error, State, Symbol, TuringMachine};

#[derive(Parser)]
#[command(name = "zigzag", version, about = "Simulate and analyse Turing machines as symbolic dynamical systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct MachineArgs {
    /// Machine description in JSON.
    #[arg(long)]
    machine: Option<PathBuf>,
    /// Built-in machine: PING_PONG, LEFT, BOUNCE_SHIFT or NLEVEL(n).
    #[arg(long, default_value = "PING_PONG")]
    fixture: String,
    /// Cap on simulated runs for exhaustive searches.
    #[arg(long, default_value_t = Budget::default().max_simulations)]
    budget: u64,
    /// Write the JSON run report to this file.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum View {
    /// Moving head.
    T,
    /// Marked tape.
    Th,
    /// Moving tape, head fixed at 0.
    Tt,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    /// Membership decider for the tape-state trace language.
    St,
    /// Finite automaton for the cell-0 trace language.
    Sh,
    /// Window automaton from --u to --v.
    C,
    /// Cell-0 observation automaton from --u to --v.
    Cbar,
    /// Right excursion automaton from --u to --v.
    R,
    /// Left excursion automaton from --u to --v.
    L,
}

#[derive(Clone, Copy, ValueEnum)]
enum Language {
    St,
    Sh,
}

#[derive(Subcommand)]
enum Command {
    /// Step a configuration and print the tape, head and trace symbols.
    Simulate {
        #[command(flatten)]
        machine: MachineArgs,
        /// Configuration in JSON. Defaults to the blank tape with the first state at 0.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value_t = 10)]
        steps: usize,
        #[arg(long, value_enum, default_value = "t")]
        view: View,
    },
    /// Bounded search for cycles, zigzags, n-cycles and preperiodic windows.
    Classify {
        #[command(flatten)]
        machine: MachineArgs,
        /// Width for the n-cycle count.
        #[arg(long, default_value_t = 1)]
        width: i64,
        #[arg(long, default_value_t = 6)]
        radius: i64,
        #[arg(long, default_value_t = 500)]
        horizon: usize,
    },
    /// Construct a recognizer, export it and compare it with exhaustive enumeration.
    Build {
        #[arg(value_enum)]
        target: Target,
        #[command(flatten)]
        machine: MachineArgs,
        /// Zigzag width the recognizer assumes.
        #[arg(long, default_value_t = 1)]
        width: usize,
        /// Longest word length compared against enumeration.
        #[arg(long, default_value_t = 6)]
        nmax: usize,
        /// Window radius of the zigzag precheck.
        #[arg(long, default_value_t = 6)]
        radius: i64,
        /// Step horizon of the zigzag precheck.
        #[arg(long, default_value_t = 500)]
        horizon: usize,
        /// Length horizon for fitting excursion lengths.
        #[arg(long, default_value_t = 8)]
        lmax: usize,
        /// Time horizon for arrival lengths.
        #[arg(long, default_value_t = 8)]
        tmax: usize,
        /// Start window as cells:state:pos, e.g. `aaa:q0:0`.
        #[arg(long)]
        u: Option<String>,
        /// Target window; omit to accept every prefix.
        #[arg(long)]
        v: Option<String>,
        /// Write the automaton in Graphviz format.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Write the automaton in JSON.
        #[arg(long)]
        automaton: Option<PathBuf>,
    },
    /// Print every trace word of length n.
    Enumerate {
        #[arg(value_enum)]
        language: Language,
        #[command(flatten)]
        machine: MachineArgs,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Limit(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Limit(_) => 3,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } | Error::InsufficientHorizon { .. } | Error::UnstableFit { .. } | Error::IntervalViolation(_) => {
                Failure::Limit(e.to_string())
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

#[derive(Serialize)]
struct RunReport {
    command: String,
    parameters: BTreeMap<String, Value>,
    verdicts: Vec<String>,
    witnesses: Vec<Value>,
    #[serde(skip_serializing_if = "Value::is_null")]
    details: Value,
}

impl RunReport {
    fn new(command: &str) -> Self {
        RunReport {
            command: command.to_string(),
            parameters: BTreeMap::new(),
            verdicts: Vec::new(),
            witnesses: Vec::new(),
            details: Value::Null,
        }
    }

    fn param(&mut self, key: &str, value: impl Serialize) {
        self.parameters.insert(key.to_string(), json!(value));
    }
}

/// Prints to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn read(path: &Path) -> Outcome<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Outcome<()> {
    std::fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write_json(path: &Path, value: &impl Serialize) -> Outcome<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Input(e.to_string()))?;
    write(path, &(text + "\n"))
}

impl MachineArgs {
    fn load(&self) -> Outcome<(TuringMachine, String)> {
        match &self.machine {
            Some(path) => Ok((TuringMachine::from_json(&read(path)?)?, path.display().to_string())),
            None => Ok((fixture(&self.fixture)?, self.fixture.clone())),
        }
    }

    fn budget(&self) -> Budget {
        Budget::new(self.budget)
    }

    fn finish(&self, report: &RunReport) -> Outcome<()> {
        for v in &report.verdicts {
            emit(&format!("{v}\n"));
        }
        if let Some(path) = &self.json {
            write_json(path, report)?;
        }
        Ok(())
    }
}

fn simulate(args: &MachineArgs, config: Option<&Path>, steps: usize, view: View) -> Outcome<()> {
    let (m, name) = args.load()?;
    let start = match config {
        Some(path) => configuration_from_json(&m, &read(path)?)?,
        None => Configuration::uniform(Symbol(0), State(0), 0),
    };
    let mut frames = vec![start.clone()];
    for _ in 0..steps {
        let mut next = frames.last().expect("nonempty").clone();
        next.advance(&m);
        frames.push(next);
    }
    let heads: Vec<i64> = frames.iter().filter_map(|c| c.head.map(|h| h.pos)).collect();
    let lo = heads.iter().copied().chain([start.tape.lo(), 0]).min().unwrap_or(0) - 1;
    let hi = heads.iter().copied().chain([start.tape.hi(), 0]).max().unwrap_or(0) + 1;
    let span = (hi - lo).max(1);

    let mut report = RunReport::new("simulate");
    report.param("machine", &name);
    report.param("steps", steps);
    report.param("view", ["T", "TH", "TT"][view as usize]);
    let mut rows = Vec::new();
    let mut text = String::new();
    for (t, c) in frames.iter().enumerate() {
        let head = c.head;
        let (range, cells): (Vec<i64>, Vec<String>) = match view {
            View::T => {
                let range: Vec<i64> = (lo..=hi).collect();
                let cells = range
                    .iter()
                    .map(|&i| {
                        let a = m.symbol_name(c.get(i));
                        if head.is_some_and(|h| h.pos == i) {
                            format!("[{a}]")
                        } else {
                            a.to_string()
                        }
                    })
                    .collect();
                (range, cells)
            }
            View::Th => {
                let x = mark(c);
                let range: Vec<i64> = (lo..=hi).collect();
                let cells = range.iter().map(|&i| render_h(&m, &x.get(i))).collect();
                (range, cells)
            }
            View::Tt => {
                let range: Vec<i64> = (-span..=span).collect();
                let cells = match project(c) {
                    Some(p) => range
                        .iter()
                        .map(|&i| {
                            let a = m.symbol_name(p.tape.get(i));
                            if i == 0 {
                                format!("[{a}]")
                            } else {
                                a.to_string()
                            }
                        })
                        .collect(),
                    None => range.iter().map(|&i| m.symbol_name(c.get(i)).to_string()).collect(),
                };
                (range, cells)
            }
        };
        let trace_t = head.map(|h| render_t(&m, &TraceSymbolT::new(c.get(h.pos), h.state)));
        let trace_h = render_h(&m, &mark(c).get(0));
        let pos = head.map(|h| if matches!(view, View::Tt) { 0 } else { h.pos });
        let state = head.map(|h| m.state_name(h.state).to_string());
        writeln!(
            text,
            "{t:>4}  pos {:>4}  {:<6} | {} | T {} H {}",
            pos.map_or("-".into(), |p| p.to_string()),
            state.clone().unwrap_or_else(|| "-".into()),
            cells.join(" "),
            trace_t.clone().unwrap_or_else(|| "-".into()),
            trace_h
        )
        .unwrap();
        rows.push(json!({
            "t": t,
            "pos": pos,
            "state": state,
            "lo": range.first(),
            "cells": cells,
            "trace_t": trace_t,
            "trace_h": trace_h,
        }));
    }
    emit(&text);
    report.verdicts.push(format!("head positions: {}", heads.iter().map(i64::to_string).collect::<Vec<_>>().join(",")));
    report.details = Value::Array(rows);
    args.finish(&report)
}

fn classify_cmd(args: &MachineArgs, width: i64, radius: i64, horizon: usize) -> Outcome<()> {
    let (m, name) = args.load()?;
    let c = classify(&m, radius, horizon, width, args.budget())?;
    let mut report = RunReport::new("classify");
    report.param("machine", &name);
    report.param("width", width);
    report.param("radius", radius);
    report.param("horizon", horizon);
    report.verdicts.push(c.summary());
    if let Some(w) = c.max_cycle_width.filter(|&w| w >= 2) {
        report.verdicts.push(format!("zigzag width >= {w} witnessed"));
    }
    report.verdicts.push(format!(
        "most n-cycles at width {width}: {} (radius {radius}, horizon {horizon})",
        c.max_n_cycles
    ));
    report
        .verdicts
        .push(format!("preperiodic within horizon: {} of {} configurations", c.preperiodic, c.configurations));
    if let Some(w) = &c.widest {
        report.witnesses.push(json!(w));
    }
    report.details = json!(c);
    args.finish(&report)
}

fn equivalence_verdict(report: &EquivalenceReport, n_max: usize) -> String {
    match report.first_difference() {
        None => format!("EQUAL at all lengths 0..={n_max}"),
        Some(n) => format!("DIFFERS at length {n} ({})", report.summary()),
    }
}

/// Graph of the phase sequences a decider run may follow.
fn phase_dot(cases: &[&str], name: &str) -> String {
    let mut out = format!("digraph \"{name}\" {{\n  rankdir=LR;\n  start [shape=point];\n");
    let mut prefixes: Vec<&str> = cases.iter().flat_map(|c| (1..=c.len()).map(move |k| &c[..k])).collect();
    prefixes.sort();
    prefixes.dedup();
    for p in &prefixes {
        writeln!(out, "  \"{p}\" [shape=doublecircle];").unwrap();
        let parent = &p[..p.len() - 1];
        let from = if parent.is_empty() { "start".to_string() } else { format!("\"{parent}\"") };
        writeln!(out, "  {from} -> \"{p}\" [label=\"{}\"];", &p[p.len() - 1..]).unwrap();
    }
    out.push_str("}\n");
    out
}

fn zigzag_precheck(m: &TuringMachine, width: usize, radius: i64, horizon: usize, budget: Budget, report: &mut RunReport) {
    let search = ZigzagSearch {
        min_width: width as i64 + 1,
        radius,
        horizon,
        sweep_pads: false,
    };
    match find_zigzag(m, search, budget) {
        Ok(Some(w)) => {
            report.verdicts.push(format!(
                "warning: zigzag of width {} witnessed (radius {radius}, horizon {horizon}); building anyway",
                width + 1
            ));
            report.witnesses.push(json!(w.to_file(m)));
        }
        Ok(None) => report
            .verdicts
            .push(format!("no zigzag of width {} found (radius {radius}, horizon {horizon})", width + 1)),
        Err(e) => report.verdicts.push(format!("zigzag precheck skipped: {e}")),
    }
}

struct BuildArgs<'a> {
    target: Target,
    width: usize,
    nmax: usize,
    radius: i64,
    horizon: usize,
    lmax: usize,
    tmax: usize,
    u: Option<&'a str>,
    v: Option<&'a str>,
    dot: Option<&'a Path>,
    automaton: Option<&'a Path>,
}

fn window(m: &TuringMachine, text: Option<&str>, what: &str) -> Outcome<Option<PartialConfiguration>> {
    text.map(|t| PartialConfiguration::parse(m, t).map_err(|e| Failure::Input(format!("--{what}: {e}"))))
        .transpose()
}

fn build(args: &MachineArgs, b: BuildArgs) -> Outcome<()> {
    let (m, name) = args.load()?;
    let budget = args.budget();
    let mut report = RunReport::new("build");
    report.param("machine", &name);
    report.param("nmax", b.nmax);
    let u = window(&m, b.u, "u")?;
    let v = window(&m, b.v, "v")?;
    let need_u = || u.clone().ok_or_else(|| Failure::Input("this target needs --u".into()));
    let dot: String;
    let automaton: Value;
    match b.target {
        Target::St => {
            report.param("target", "st");
            report.param("width", b.width);
            zigzag_precheck(&m, b.width, b.radius, b.horizon, budget, &mut report);
            let decider = PhaseDecider::new(&m, b.width);
            let manifest = decider.manifest();
            dot = phase_dot(&manifest.cases, &name);
            automaton = json!(manifest);
            let eq = st_equivalence_check(&m, b.width, b.nmax, budget)?;
            report.verdicts.push(equivalence_verdict(&eq, b.nmax));
            report.details = json!(eq);
        }
        Target::Sh => {
            report.param("target", "sh");
            report.param("width", b.width);
            report.param("lmax", b.lmax);
            report.param("tmax", b.tmax);
            zigzag_precheck(&m, b.width, b.radius, b.horizon, budget, &mut report);
            let params = ShParams {
                width: b.width,
                l_max: b.lmax,
                t_max: b.tmax,
                budget,
            };
            let rec = build_sh_recognizer(&m, params)?;
            report
                .verdicts
                .push(format!("recognizer: {} states, {} unary pieces", rec.dfa.states, rec.pieces.len()));
            dot = dfa_dot(&rec.dfa, &name, |c: &Cell| render_h(&m, c));
            automaton = json!(rec.dfa.to_file());
            let eq = compare_sh(&m, &rec, b.nmax, budget)?;
            report.verdicts.push(equivalence_verdict(&eq, b.nmax));
            report.details = json!({ "equivalence": eq, "pieces": rec.pieces });
        }
        Target::C | Target::Cbar => {
            let u = need_u()?;
            report.param("u", u.render(&m));
            report.param("v", v.as_ref().map(|v| v.render(&m)));
            let counts: Vec<usize>;
            if matches!(b.target, Target::C) {
                report.param("target", "c");
                let d = build_c(&m, &u, v.as_ref())?;
                counts = (0..=b.nmax).map(|n| d.words(n).len()).collect();
                dot = dfa_dot(&d, "C", |s| render_t(&m, s));
                automaton = json!(d.to_file());
            } else {
                report.param("target", "cbar");
                let d = build_cbar(&m, &u, v.as_ref())?;
                counts = (0..=b.nmax).map(|n| d.words(n).len()).collect();
                dot = dfa_dot(&d, "Cbar", |c| render_h(&m, c));
                automaton = json!(d.to_file());
            }
            report.verdicts.push(format!("accepted words per length 0..={}: {counts:?}", b.nmax));
        }
        Target::R | Target::L => {
            let u = need_u()?;
            report.param("u", u.render(&m));
            report.param("v", v.as_ref().map(|v| v.render(&m)));
            let right = matches!(b.target, Target::R);
            report.param("target", if right { "r" } else { "l" });
            let d = if right { build_r(&m, &u, v.as_ref())? } else { build_l(&m, &u, v.as_ref())? };
            let words: Vec<usize> = (0..=b.nmax).map(|n| d.words(n).len()).collect();
            report.verdicts.push(format!(
                "{} states, {} transitions; accepted words per length 0..={}: {words:?}",
                d.states().len(),
                d.transitions.len(),
                b.nmax
            ));
            let state = |s: &ExcursionState| match s {
                ExcursionState::Live(w, q) => {
                    let cells: Vec<&str> = w.iter().map(|&a| m.symbol_name(a)).collect();
                    format!("{}/{}", cells.join(""), m.state_name(*q))
                }
                ExcursionState::Reject => "REJECT".to_string(),
            };
            let render = DpdaRender {
                input: &|s: &TraceSymbolT| render_t(&m, s),
                state: &state,
                stack: &|g: &Symbol| m.symbol_name(*g).to_string(),
            };
            dot = dpda_dot(&d, if right { "R" } else { "L" }, &render);
            automaton = json!(d.to_file());
        }
    }
    if let Some(path) = b.dot {
        write(path, &dot)?;
    }
    if let Some(path) = b.automaton {
        write_json(path, &automaton)?;
    }
    args.finish(&report)
}

fn enumerate(args: &MachineArgs, language: Language, n: usize) -> Outcome<()> {
    let (m, name) = args.load()?;
    let budget = args.budget();
    let mut report = RunReport::new("enumerate");
    report.param("machine", &name);
    report.param("n", n);
    let (words, params) = match language {
        Language::St => {
            report.param("language", "st");
            let s = enumerate_lst(&m, n, budget)?;
            emit(&dump(&m, &s, render_t));
            (s.words.iter().map(|w| render_word(&m, w, render_t)).collect::<Vec<_>>(), json!(s.params))
        }
        Language::Sh => {
            report.param("language", "sh");
            let s = enumerate_lsh(&m, n, budget)?;
            emit(&dump(&m, &s, render_h));
            (s.words.iter().map(|w| render_word(&m, w, render_h)).collect::<Vec<_>>(), json!(s.params))
        }
    };
    report.verdicts.push(format!("{} words of length {n}", words.len()));
    report.details = json!({ "generation": params, "words": words });
    args.finish(&report)
}

fn run(cli: Cli) -> Outcome<()> {
    match cli.command {
        Command::Simulate {
            machine,
            config,
            steps,
            view,
        } => simulate(&machine, config.as_deref(), steps, view),
        Command::Classify {
            machine,
            width,
            radius,
            horizon,
        } => classify_cmd(&machine, width, radius, horizon),
        Command::Build {
            target,
            machine,
            width,
            nmax,
            radius,
            horizon,
            lmax,
            tmax,
            u,
            v,
            dot,
            automaton,
        } => build(
            &machine,
            BuildArgs {
                target,
                width,
                nmax,
                radius,
                horizon,
                lmax,
                tmax,
                u: u.as_deref(),
                v: v.as_deref(),
                dot: dot.as_deref(),
                automaton: automaton.as_deref(),
            },
        ),
        Command::Enumerate { language, machine, n } => enumerate(&machine, language, n),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
