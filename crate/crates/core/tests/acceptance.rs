use std::io::Write;

use superchar::acceptance::run_all;

#[test]
fn acceptance_criteria() {
    let results = run_all();
    // Written to the raw handle so the lines show up without --nocapture.
    let mut err = std::io::stderr().lock();
    for r in &results {
        writeln!(err, "{r}").unwrap();
    }
    let failed: Vec<u8> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
