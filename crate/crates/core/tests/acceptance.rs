//! One line per acceptance criterion, driven by the built-in manifest.
//! Every comparison is exact; the only tolerances are the per-claim time
//! caps recorded in the manifest (`max_ms`).

use keyvar::claims::{run_manifest, ClaimManifest, RunConfig, Status};

#[test]
fn acceptance_criteria() {
    let m = ClaimManifest::builtin("paper-core").unwrap();
    let report = run_manifest(&m, &RunConfig::from_manifest(&m).unwrap());
    let mut failed = Vec::new();
    for r in &report.claims {
        let verdict = match r.status {
            Status::Pass => "PASS",
            Status::ReportOnly => "REPORT",
            Status::Fail => "FAIL",
            Status::Limit => "LIMIT",
        };
        let computed = r.error.clone().unwrap_or_else(|| r.computed.to_string());
        println!("{} {verdict:<6} {:>7} ms  {computed}", r.id, r.elapsed_ms);
        if let Some(d) = &r.detail {
            println!("        detail {d}");
        }
        if matches!(r.status, Status::Fail | Status::Limit) {
            failed.push(r.id.clone());
        }
    }
    let s = report.summary;
    println!("{} pass / {} fail / {} limit ({} report-only)", s.pass, s.fail, s.limit, s.report_only);
    assert_eq!(report.claims.len(), 18);
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
