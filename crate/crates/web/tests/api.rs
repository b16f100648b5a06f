use serde_json::Value;
use zigzag_web::api;

fn parse(text: String) -> Value {
    serde_json::from_str(&text).unwrap()
}

#[test]
fn classify_reports_cycle_width() {
    let v = parse(api::classify("PING-PONG", 2, 100, 1).unwrap());
    assert_eq!(v["classification"]["max_cycle_width"], 1);
    let v = parse(api::classify("LEFT", 2, 100, 1).unwrap());
    assert!(v["summary"].as_str().unwrap().starts_with("no cycles found"));
}

#[test]
fn equivalence_checks_both_languages() {
    let v = parse(api::equivalence("PING-PONG", "st", 1, 6).unwrap());
    assert_eq!(v["verdict"], "EQUAL at all lengths 0..=6");
    let v = parse(api::equivalence("LEFT", "sh", 0, 5).unwrap());
    assert_eq!(v["verdict"], "EQUAL at all lengths 0..=5");
    assert_eq!(v["report"]["lengths"].as_array().unwrap().len(), 6);
}

#[test]
fn budget_errors_are_reported() {
    assert!(api::classify("NLEVEL(2)", 8, 100, 1).unwrap_err().contains("budget"));
}

#[test]
fn fixture_list_loads() {
    let names: Vec<String> = serde_json::from_str(&zigzag_web::fixtures()).unwrap();
    assert!(names.iter().all(|n| api::load(n).is_ok()));
}
