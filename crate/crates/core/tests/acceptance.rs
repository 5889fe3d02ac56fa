use pcr_core::acceptance::{run, AcceptanceOptions};

fn check(id: usize) {
    let r = run(id, &AcceptanceOptions::default());
    println!("{}", r.line());
    assert!(r.passed, "{}", r.line());
}

#[test]
fn criterion_1_ga_count() {
    check(1);
}

#[test]
fn criterion_2_ga_structure() {
    check(2);
}

#[test]
fn criterion_3_clam() {
    check(3);
}

#[test]
fn criterion_4_extension() {
    check(4);
}

#[test]
fn criterion_5_certificate_round_trip() {
    check(5);
}

#[test]
fn criterion_6_expansion() {
    check(6);
}

#[test]
fn criterion_7_oracle() {
    check(7);
}

#[test]
fn criterion_8_subdivision() {
    check(8);
}

#[test]
fn criterion_9_good_drawing() {
    check(9);
}
