//! The acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line (visible with `--nocapture`) and asserting the result. The same
//! checks back the `selftest` CLI subcommand.

use real_schubert::acceptance::{self, CriterionOutcome};

fn check(outcome: CriterionOutcome) {
    let tag = if outcome.passed { "PASS" } else { "FAIL" };
    println!("{tag}: {} ({})", outcome.name, outcome.detail);
    assert!(outcome.passed, "{}: {}", outcome.name, outcome.detail);
}

#[test]
fn criterion_1_closed_form_counts() {
    check(acceptance::closed_form_counts());
}

#[test]
fn criterion_2_permutation_invariance() {
    check(acceptance::permutation_invariance());
}

#[test]
fn criterion_3_net_tableau_bijection() {
    check(acceptance::net_tableau_bijection());
}

#[test]
fn criterion_4_polynomial_interpolation() {
    check(acceptance::polynomial_interpolation());
}

#[test]
fn criterion_5_separated_solution_counts() {
    check(acceptance::separated_solution_counts());
}

#[test]
fn criterion_6_critical_point_solution_counts() {
    check(acceptance::critical_point_solution_counts());
}

#[test]
fn criterion_7_separation_phenomenology() {
    check(acceptance::separation_phenomenology());
}

#[test]
fn criterion_8_cross_consistency() {
    check(acceptance::cross_consistency());
}
