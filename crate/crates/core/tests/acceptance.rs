//! Full verification suite as a test target: one pass/fail line per
//! criterion, failing the test if any criterion fails.

use severi_core::verify::verify_all;

#[test]
fn acceptance_criteria() {
    let suite = verify_all(false);
    for item in &suite.items {
        let status = if item.skipped {
            "SKIP"
        } else if item.passed {
            "PASS"
        } else {
            "FAIL"
        };
        println!(
            "[{status}] criterion {:>2}: {} ({}) [{} ms] — {}",
            item.id, item.title, item.citation, item.elapsed_ms, item.detail
        );
    }
    assert!(
        suite.all_passed,
        "one or more acceptance criteria failed; see the lines above"
    );
}
