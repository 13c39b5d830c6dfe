//! One test per acceptance criterion; each prints a PASS/FAIL line.

use freespec::acceptance::run;

fn check(id: u8) {
    let outcome = run(id, 0).expect("known criterion");
    println!("{}", outcome.line());
    assert!(outcome.passed, "{}", outcome.line());
}

#[test]
fn criterion_01_level4_free_extreme_point() {
    check(1);
}

#[test]
fn criterion_02_level6_free_extreme_point() {
    check(2);
}

#[test]
fn criterion_03_real_form_identity() {
    check(3);
}

#[test]
fn criterion_04_pauli_self_duality() {
    check(4);
}

#[test]
fn criterion_05_pauli_refutations() {
    check(5);
}

#[test]
fn criterion_06_spin_symmetry() {
    check(6);
}

#[test]
fn criterion_07_containment_chain() {
    check(7);
}

#[test]
fn criterion_08_extend_by_zero() {
    check(8);
}

#[test]
fn criterion_09_union_and_simplex_example() {
    check(9);
}

#[test]
fn criterion_10_matrix_ball_arveson_criterion() {
    check(10);
}

#[test]
fn criterion_11_projection_extension_dilation() {
    check(11);
}
