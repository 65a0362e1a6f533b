//! One test per acceptance criterion; each prints a PASS/FAIL line.
//!
//! The suite runs once per process and every test reads its own result.

use wreathk_cli::accept::suite;

fn check(id: u8) {
    let result = suite()
        .iter()
        .find(|r| r.id == id)
        .expect("criterion is part of the suite");
    println!("{result}");
    assert!(result.passed, "{result}");
}

#[test]
fn criterion_1_wreath_rank_identity() {
    check(1);
}

#[test]
fn criterion_2_cross_form_agreement() {
    check(2);
}

#[test]
fn criterion_3_burnside_proposition() {
    check(3);
}

#[test]
fn criterion_4_izumi_certificates() {
    check(4);
}

#[test]
fn criterion_5_orbit_machinery() {
    check(5);
}

#[test]
fn criterion_6_sl_completion() {
    check(6);
}

#[test]
fn criterion_7_localization_neutrality() {
    check(7);
}

#[test]
fn criterion_8_infinite_cyclic() {
    check(8);
}
