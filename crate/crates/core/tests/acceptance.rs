//! One line per acceptance criterion. Run with `--nocapture` to see them.

use std::path::PathBuf;

use dirac_core::verify::{Suite, SuiteConfig};
use dirac_core::Engine;

/// Criteria that cannot pass with the shipped fixtures. Criterion 10 needs
/// per-character parameter and branching exports that are not part of the
/// repository.
const KNOWN_UNMET: &[u32] = &[10];

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

#[test]
fn acceptance_criteria() {
    let e = Engine::shared();
    let suite = Suite::new(e, SuiteConfig { fixtures: Some(fixtures()), ..SuiteConfig::default() });
    let mut failing = Vec::new();
    for id in 1..=13 {
        let r = suite.run(id);
        println!("{r}");
        if !r.passed() {
            failing.push(id);
        }
    }
    assert_eq!(failing, KNOWN_UNMET, "unexpected set of failing criteria");
}
