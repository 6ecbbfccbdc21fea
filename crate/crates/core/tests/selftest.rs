use mixmult_core::selftest::{run_selftest, SelftestConfig};

#[test]
fn full_selftest_passes() {
    let report = run_selftest(&SelftestConfig::default());
    for s in &report.suites {
        println!(
            "{:<28} passed {:>4} failed {:>3} skipped {:>3}",
            s.name, s.passed, s.failed, s.skipped
        );
        for f in &s.failures {
            println!("    {f}");
        }
    }
    assert!(report.ok());
}
