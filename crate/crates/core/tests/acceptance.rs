//! One line per acceptance criterion. Everything is exact except
//! `walk-sum`, whose tolerance is 1e-6 at T = 0.99 with walks of length
//! at most 60.

use knotwalk::verify::{verify, Goldens, CHECKS};

#[test]
fn acceptance() {
    let report = verify(&Goldens::default(), None).expect("every check runs");
    assert_eq!(report.checks.len(), CHECKS.len());
    for (k, c) in report.checks.iter().enumerate() {
        let status = if c.passed { "PASS" } else { "FAIL" };
        println!("[{:>2}] {status} {:<18} expected: {} | actual: {}", k + 1, c.id, c.expected, c.actual);
        for n in &c.notes {
            println!("                           note: {n}");
        }
    }
    let failed: Vec<&str> = report.checks.iter().filter(|c| !c.passed).map(|c| c.id.as_str()).collect();
    assert!(failed.is_empty(), "failed: {failed:?}");
}
