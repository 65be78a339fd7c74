//! Fault injection and determinism of the verification pipeline.

use hypercover::cencli::{check_ids, fixtures, verify_paper, verify_paper_with, VerificationReport};

fn without_timing(r: &VerificationReport) -> String {
    r.to_record().emit().lines().filter(|l| !l.starts_with("runtime_ms ")).collect::<Vec<_>>().join("\n")
}

#[test]
fn tampered_fixture_fails_exactly_one_check() {
    let mut table = fixtures();
    let c290 = table.iter_mut().find(|f| f.label == "C290.4").unwrap();
    c290.genus = 291;
    let report = verify_paper_with(&table);
    let failed: Vec<&str> = report.checks.iter().filter(|c| !c.pass).map(|c| c.id.as_str()).collect();
    assert_eq!(failed, ["AC03"]);
    let ac03 = report.get("AC03").unwrap();
    assert!(ac03.expected.contains("genus 291"));
    assert!(ac03.computed.contains("genus 290"));
}

#[test]
fn missing_fixture_is_recorded_not_fatal() {
    let table: Vec<_> = fixtures().into_iter().filter(|f| f.label != "C17.1").collect();
    let report = verify_paper_with(&table);
    assert_eq!(report.checks.len(), check_ids().len());
    let failed: Vec<&str> = report.checks.iter().filter(|c| !c.pass).map(|c| c.id.as_str()).collect();
    assert_eq!(failed, ["AC09"]);
    assert!(report.get("AC09").unwrap().computed.starts_with("error (precondition)"));
}

#[test]
fn reports_are_deterministic_up_to_timing() {
    let a = verify_paper();
    let b = verify_paper();
    assert!(a.all_pass());
    assert_eq!(without_timing(&a), without_timing(&b));
    let text = a.to_record().emit();
    assert_eq!(VerificationReport::parse(&text).unwrap().to_record().emit(), text);
}
