//! Serialize a covering map to JSON, read it back, and run the exact
//! verification battery on it; then corrupt one recorded constant and
//! watch the corresponding check fail.
//!
//! Run with: `cargo run --example verify_roundtrip`

use germcover::{build_closed, verify_covering, CoveringMap, Params, Sign};

const SEED: u64 = 1;

fn print_report(checks: &[germcover::CheckResult]) {
    for c in checks {
        println!(
            "  [{}] {:<18} {}",
            if c.pass { "pass" } else { "FAIL" },
            c.check,
            c.witness
        );
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let map = build_closed(&Params::a(2, 3, 1, 0), Sign::Plus)?;
    let text = serde_json::to_string_pretty(&map)?;
    println!("covering map as JSON:\n{text}\n");

    // Deserialization re-derives the invariants and rejects records
    // whose stored derived block disagrees with the parameters.
    let reloaded: CoveringMap = serde_json::from_str(&text)?;
    assert_eq!(reloaded, map);

    println!("verification of the reloaded map:");
    let report = verify_covering(&reloaded, SEED);
    print_report(&report.checks);
    assert!(report.pass());

    // Tamper with the recorded Jacobian constant. The file still
    // parses -- the constant is consistent JSON -- but the Jacobian
    // shape check now fails while everything else still passes.
    let mut doc: serde_json::Value = serde_json::from_str(&text)?;
    doc["mu"] = serde_json::json!(["271828"]);
    let tampered: CoveringMap = serde_json::from_value(doc)?;
    println!("\nverification after corrupting the Jacobian constant:");
    let report = verify_covering(&tampered, SEED);
    print_report(&report.checks);
    assert!(!report.pass());
    let failed: Vec<&str> = report
        .checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| c.check.as_str())
        .collect();
    assert_eq!(failed, ["jacobian_form"]);
    println!("\nexactly the Jacobian-shape check failed, as it should");
    Ok(())
}
