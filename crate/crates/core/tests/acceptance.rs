use superinv::acceptance::{run, CRITERIA};

#[test]
fn acceptance_criteria() {
    let mut failed = Vec::new();
    for id in CRITERIA {
        let outcome = run(id);
        println!("{}", outcome.line());
        if !outcome.passed {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
