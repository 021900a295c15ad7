//! End-to-end classifier flows: Jacobian recognition with exact value
//! recovery, twist detection, and the degenerate branches.

use jacgate::{calibrate, classify_periods, classify_tau, scale_periods, Verdict};
use num_bigint::BigInt;
use periods::{curve, periods, PrecisionMode};
use ternary::{discriminant, rat, rat_int, rat_pow, TernaryForm};
use theta::SiegelPoint;

fn fermat() -> TernaryForm {
    TernaryForm::new(
        4,
        [
            ((4, 0, 0), rat_int(1)),
            ((0, 4, 0), rat_int(1)),
            ((0, 0, 4), rat_int(1)),
        ],
    )
    .unwrap()
}

#[test]
fn quartic_classifies_as_jacobian_with_exact_value() {
    let form = fermat();
    let (c, _) = curve::from_quartic(&form).unwrap();
    let pm = periods(&c, PrecisionMode::High(212)).unwrap();
    let cal = calibrate::default_calibration();
    let r = classify_periods(&pm, 212, &cal).unwrap();
    assert_eq!(r.verdict, Verdict::Jacobian, "note: {}", r.note);
    assert_eq!(r.square_class, Some(BigInt::from(1)));
    // recognized = c0 * 2^28 * Disc^2 with Disc = 2^40
    let expect = rat_pow(&rat_int(2), 28) * rat_pow(&discriminant(&form).unwrap().value, 2);
    assert_eq!(r.value.unwrap().recognized, Some(expect));
}

#[test]
fn sqrt2_scaling_flips_to_twist_with_class_two() {
    let form = fermat();
    let (c, _) = curve::from_quartic(&form).unwrap();
    let pm = periods(&c, PrecisionMode::High(212)).unwrap();
    let cal = calibrate::default_calibration();
    let twisted = scale_periods(&pm, &rat_int(1), 2).unwrap();
    let r = classify_periods(&twisted, 212, &cal).unwrap();
    assert_eq!(r.verdict, Verdict::TwistOfJacobian, "note: {}", r.note);
    assert_eq!(r.twist_descriptor, Some(BigInt::from(2)));
    // twisting twice returns to the Jacobian verdict
    let back = scale_periods(&twisted, &rat(1, 2), 2).unwrap();
    let r2 = classify_periods(&back, 212, &cal).unwrap();
    assert_eq!(r2.verdict, Verdict::Jacobian);
}

#[test]
fn rational_scaling_preserves_the_verdict() {
    let form = fermat();
    let (c, _) = curve::from_quartic(&form).unwrap();
    let pm = periods(&c, PrecisionMode::High(448)).unwrap();
    let cal = calibrate::default_calibration();
    // lambda = 3/2: value scales by (3/2)^{-54}, still a square
    let scaled = scale_periods(&pm, &rat(3, 2), 1).unwrap();
    let r = classify_periods(&scaled, 448, &cal).unwrap();
    assert_eq!(r.verdict, Verdict::Jacobian, "note: {}", r.note);
    assert_eq!(r.square_class, Some(BigInt::from(1)));
}

#[test]
fn block_diagonal_tau_is_decomposable() {
    let t1 = SiegelPoint::i_identity(1, 212);
    let t2 = theta::siegel::tests_support::generic_tau(212);
    // build diag(tau_1, 2x2 block of the generic tau)
    let sub = mpnum::CMat::from_fn(2, 212, |i, j| t2.tau().at(i, j).clone());
    let t2b = SiegelPoint::new(sub).unwrap();
    let tau = SiegelPoint::block_diag(&t1, &t2b);
    let r = classify_tau(&tau, 212, 200.0).unwrap();
    assert_eq!(r.verdict, Verdict::Decomposable, "note: {}", r.note);
}

#[test]
fn hyperelliptic_curve_classifies_as_such() {
    let mut cs = vec![rat_int(0); 9];
    cs[0] = rat_int(-1);
    cs[8] = rat_int(1);
    let f = periods::UniPoly::new(cs);
    let c = curve::hyperelliptic_curve(&f).unwrap();
    let pm = periods(&c, PrecisionMode::High(212)).unwrap();
    let cal = calibrate::default_calibration();
    let r = classify_periods(&pm, 212, &cal).unwrap();
    assert_eq!(r.verdict, Verdict::HyperellipticJacobian, "note: {}", r.note);
}

#[test]
fn generic_tau_without_periods_is_indeterminate() {
    let tau = theta::siegel::tests_support::generic_tau(160);
    let r = classify_tau(&tau, 160, 120.0).unwrap();
    assert_eq!(r.verdict, Verdict::Indeterminate);
    assert!(r.note.contains("period"));
}
