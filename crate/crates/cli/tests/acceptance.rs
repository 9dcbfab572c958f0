//! One PASS/FAIL line per acceptance criterion. Run with `--nocapture` to see them.

use std::process::Command;
use std::time::{Duration, Instant};

use fanomirror::selfcheck;

const SELFCHECK_LIMIT: Duration = Duration::from_secs(180);

#[test]
fn acceptance() {
    let mut failed = Vec::new();
    for id in selfcheck::criterion_ids() {
        let outcome = selfcheck::run_criterion(id).expect("known criterion");
        println!("{}", outcome.line());
        if !outcome.passed() {
            failed.push(id);
        }
    }

    let start = Instant::now();
    let output = Command::new(env!("CARGO_BIN_EXE_fanomirror"))
        .arg("selfcheck")
        .output()
        .expect("run the selfcheck binary");
    let elapsed = start.elapsed();
    let stdout = String::from_utf8_lossy(&output.stdout);
    let lines = stdout.lines().filter(|l| l.starts_with("PASS criterion")).count();
    let ok = output.status.success() && elapsed < SELFCHECK_LIMIT && lines == 10;
    println!(
        "{} criterion 11: selfcheck end to end [{:.3}s (limit {}s)] exit {:?}, {lines}/10 criteria passed",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        SELFCHECK_LIMIT.as_secs(),
        output.status.code(),
    );
    if !ok {
        failed.push(11);
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
