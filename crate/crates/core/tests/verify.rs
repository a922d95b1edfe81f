use quatspec::io::to_json;
use quatspec::verify::{run_suite, suite_names};
use quatspec::Error;

#[test]
fn seeded_suites_are_reproducible() {
    for suite in ["chi-embedding", "finite-rank", "neumann"] {
        let a = to_json(&run_suite(suite, 3).unwrap()).unwrap();
        let b = to_json(&run_suite(suite, 3).unwrap()).unwrap();
        assert_eq!(a, b);
        assert!(run_suite(suite, 3).unwrap().passed(), "{a}");
    }
}

#[test]
fn axial_symmetry_has_500_cases() {
    let r = run_suite("axial-symmetry", 42).unwrap();
    assert_eq!(r.cases, 500);
    assert!(r.failures.is_empty());
}

#[test]
fn unknown_suites_are_input_errors() {
    assert!(matches!(run_suite("nosuchsuite", 0), Err(Error::Input(_))));
    assert!(suite_names().contains(&"index-laws"));
}
