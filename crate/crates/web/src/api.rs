use serde::Serialize;
use serde_json::json;
use zigzag_core::head::classify as classify_windows;
use zigzag_core::sh::{sh_equivalence_check, ShParams};
use zigzag_core::st::{st_equivalence_check, EquivalenceReport};
use zigzag_core::trace::Budget;
use zigzag_core::{fixture, Configuration, State, Symbol, TuringMachine};

pub const FIXTURES: &[&str] = &["PING-PONG", "LEFT", "BOUNCE_SHIFT", "NLEVEL(1)", "NLEVEL(2)"];

/// Browser calls run on the main thread, so they get a smaller budget than the CLI.
const BUDGET: Budget = Budget { max_simulations: 1 << 20 };

const MAX_STEPS: usize = 2000;

pub type Outcome = Result<String, String>;

/// Reads a fixture name, or machine JSON when the text starts with `{`.
pub fn load(source: &str) -> Result<TuringMachine, String> {
    let source = source.trim();
    let m = if source.starts_with('{') { TuringMachine::from_json(source) } else { fixture(source) };
    m.map_err(|e| e.to_string())
}

fn to_json(value: &impl Serialize) -> Outcome {
    serde_json::to_string(value).map_err(|e| e.to_string())
}

#[derive(Debug, Serialize)]
struct Diagram {
    symbols: Vec<String>,
    lo: i64,
    hi: i64,
    /// One row per time step; cells are symbol indices over `lo..=hi`.
    rows: Vec<Vec<u16>>,
    positions: Vec<i64>,
    states: Vec<String>,
}

pub fn simulate(source: &str, state: &str, steps: usize) -> Outcome {
    let m = load(source)?;
    if steps > MAX_STEPS {
        return Err(format!("at most {MAX_STEPS} steps"));
    }
    let q = match state.trim() {
        "" => State(0),
        name => m.state_by_name(name).map_err(|e| e.to_string())?,
    };
    let mut c = Configuration::uniform(Symbol(0), q, 0);
    let mut frames = vec![c.clone()];
    for _ in 0..steps {
        c.advance(&m);
        frames.push(c.clone());
    }
    let positions: Vec<i64> = frames.iter().filter_map(|c| c.head.map(|h| h.pos)).collect();
    let lo = positions.iter().copied().min().unwrap_or(0) - 2;
    let hi = positions.iter().copied().max().unwrap_or(0) + 2;
    let diagram = Diagram {
        symbols: m.symbols().map(|a| m.symbol_name(a).to_string()).collect(),
        lo,
        hi,
        rows: frames.iter().map(|c| (lo..=hi).map(|i| c.get(i).0).collect()).collect(),
        states: frames.iter().filter_map(|c| c.head.map(|h| m.state_name(h.state).to_string())).collect(),
        positions,
    };
    to_json(&diagram)
}

pub fn classify(source: &str, radius: i64, horizon: usize, width: i64) -> Outcome {
    let m = load(source)?;
    let c = classify_windows(&m, radius, horizon, width, BUDGET).map_err(|e| e.to_string())?;
    to_json(&json!({ "summary": c.summary(), "classification": c }))
}

pub fn equivalence(source: &str, language: &str, width: usize, n_max: usize) -> Outcome {
    let m = load(source)?;
    let report: EquivalenceReport = match language {
        "st" => st_equivalence_check(&m, width, n_max, BUDGET),
        "sh" => sh_equivalence_check(&m, ShParams { budget: BUDGET, ..ShParams::new(width) }, n_max),
        other => return Err(format!("unknown language {other:?}; expected st or sh")),
    }
    .map_err(|e| e.to_string())?;
    let verdict = match report.first_difference() {
        None => format!("EQUAL at all lengths 0..={n_max}"),
        Some(n) => format!("DIFFERS at length {n}"),
    };
    to_json(&json!({ "verdict": verdict, "report": report }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    #[test]
    fn loads_fixtures_and_json() {
        assert!(load("LEFT").is_ok());
        assert!(load("NOPE").is_err());
        let text = serde_json::to_string(&fixture("LEFT").unwrap().to_file()).unwrap();
        assert_eq!(load(&text).unwrap().state_count(), 1);
    }

    #[test]
    fn diagram_shape() {
        let v: Value = serde_json::from_str(&simulate("PING-PONG", "q0", 4).unwrap()).unwrap();
        assert_eq!(v["rows"].as_array().unwrap().len(), 5);
        let width = (v["hi"].as_i64().unwrap() - v["lo"].as_i64().unwrap() + 1) as usize;
        assert_eq!(v["rows"][0].as_array().unwrap().len(), width);
        assert_eq!(v["positions"], json!([0, 1, 0, 1, 0]));
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(simulate("LEFT", "nope", 3).is_err());
        assert!(simulate("LEFT", "", 3).is_ok());
        assert!(simulate("LEFT", "q", MAX_STEPS + 1).is_err());
        assert!(equivalence("LEFT", "xx", 0, 3).is_err());
    }
}
