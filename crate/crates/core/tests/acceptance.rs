//! Acceptance gate: runs every verification suite at its full published
//! parameters and prints one line per criterion.

use loopmagnus_core::suites::{run_suite, SuiteConfig, SuiteReport};

fn report_line(criterion: usize, title: &str, report: &SuiteReport, ids: &[&str]) -> bool {
    let relevant: Vec<_> = report
        .checks
        .iter()
        .filter(|c| ids.is_empty() || ids.iter().any(|p| c.id.starts_with(p)))
        .collect();
    assert!(!relevant.is_empty(), "criterion {criterion} selects no checks");
    let ok = relevant
        .iter()
        .all(|c| c.status != loopmagnus_core::suites::CheckStatus::Fail);
    println!(
        "criterion {criterion:2}: {} — {title} ({} checks, suite `{}`, {} ms)",
        if ok { "pass" } else { "FAIL" },
        relevant.len(),
        report.suite,
        report.wall_time_ms
    );
    if !ok {
        for c in relevant {
            println!("    {} [{:?}] {}", c.id, c.status, c.detail);
        }
    }
    ok
}

#[test]
fn acceptance() {
    let cfg = SuiteConfig::default();
    let prop3 = run_suite("prop3", &cfg).unwrap();
    let prop4 = run_suite("prop4", &cfg).unwrap();
    let magnus = run_suite("magnus-soundness", &cfg).unwrap();
    let injectivity = run_suite("injectivity", &cfg).unwrap();
    let lemma_first = run_suite("lemma-first", &cfg).unwrap();
    let prop5 = run_suite("prop5", &cfg).unwrap();
    let lemma6 = run_suite("lemma6", &cfg).unwrap();
    let hc1 = run_suite("hc1", &cfg).unwrap();
    let hopf = run_suite("hopf-higman", &cfg).unwrap();

    let mut all = true;
    all &= report_line(
        1,
        "pair-loop embedding, basepoint and D4 witness",
        &prop3,
        &["prop3-loop-axioms", "prop3-embed", "prop3-d4-witness"],
    );
    all &= report_line(2, "pair-loop LMlt commutator structure", &prop3, &["prop3-weight"]);
    all &= report_line(3, "non-commutative pair loop and D3 witness", &prop4, &[]);
    all &= report_line(4, "Magnus soundness and group-likeness", &magnus, &[]);
    all &= report_line(5, "injectivity scan, both modes", &injectivity, &[]);
    all &= report_line(6, "iterated-commutator dimension bound", &lemma_first, &[]);
    all &= report_line(7, "gamma witness coefficients", &prop5, &[]);
    all &= report_line(8, "separating-symbol property suite", &lemma6, &[]);
    all &= report_line(9, "image-count inequality on closed sets", &hc1, &[]);
    all &= report_line(10, "Hopf layer identities and independence box", &hopf, &[]);
    assert!(all, "acceptance criteria failed");
}
