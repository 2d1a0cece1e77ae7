//! Shared fixtures for the benchmarks.

use algrest_core::forms::DiffForm;
use algrest_core::restriction::{Flavor, GradedBasis};
use algrest_core::scenario::shipped;

/// The graded basis of a shipped scenario.
pub fn basis(scenario: &str, flavor: Flavor) -> GradedBasis {
    shipped(scenario)
        .and_then(|sc| sc.basis(flavor, None))
        .expect("shipped scenario")
}

/// A closed representative of a named form's class, given explicitly or by coordinates.
pub fn form(scenario: &str, name: &str) -> DiffForm {
    let sc = shipped(scenario).expect("shipped scenario");
    let b = sc.basis(Flavor::Closed, None).expect("basis");
    b.form_of(&sc.class_of(&b, name).expect("named form"))
}
