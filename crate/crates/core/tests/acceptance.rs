//! The acceptance matrix: one PASS/FAIL line per criterion.

use hypercover::cencli::{check_ids, verify_paper};

#[test]
fn acceptance_matrix() {
    let report = verify_paper();
    let ids: Vec<&str> = report.checks.iter().map(|c| c.id.as_str()).collect();
    assert_eq!(ids, check_ids(), "every criterion appears exactly once, in order");
    for c in &report.checks {
        let limit = c.limit_ms.map_or_else(String::new, |l| format!(" (limit {l} ms)"));
        println!("{} {}: {} [{} ms{limit}]", if c.pass { "PASS" } else { "FAIL" }, c.id, c.title, c.runtime_ms);
        if !c.pass {
            println!("    expected: {}\n    computed: {}", c.expected, c.computed);
        }
        if !c.note.is_empty() {
            println!("    note: {}", c.note);
        }
    }
    assert!(report.all_pass(), "{} of {} criteria failed", report.failed(), report.checks.len());
}

