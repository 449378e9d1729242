//! End-to-end acceptance gate: the ten verification criteria, one test per
//! criterion, each printing its pass/fail line.

use std::io::Write;

use prmforge::verify::run_criterion;

fn run(index: usize) {
    let r = run_criterion(index);
    let line = format!(
        "{} [{:>2}] ({}) {}\n",
        if r.passed { "PASS" } else { "FAIL" },
        r.index,
        r.anchor,
        r.detail
    );
    // write to the raw stdout handle so the line survives libtest's capture
    std::io::stdout().lock().write_all(line.as_bytes()).unwrap();
    assert!(r.passed, "criterion {} failed: {}", r.index, r.detail);
}

#[test]
fn criterion_01_e_r_table_q4() {
    run(1);
}

#[test]
fn criterion_02_prm_weight_hierarchy() {
    run(2);
}

#[test]
fn criterion_03_dual_min_distance() {
    run(3);
}

#[test]
fn criterion_04_prm_parameters() {
    run(4);
}

#[test]
fn criterion_05_tbc_counterexample() {
    run(5);
}

#[test]
fn criterion_06_tbc_rank_up_to_3() {
    run(6);
}

#[test]
fn criterion_07_terminal_weights() {
    run(7);
}

#[test]
fn criterion_08_veronese_no_line() {
    run(8);
}

#[test]
fn criterion_09_property_suites() {
    run(9);
}

#[test]
fn criterion_10_affine_heijnen_pellikaan() {
    run(10);
}
