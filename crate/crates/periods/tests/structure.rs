//! Structural and value-level oracles for the period pipeline.

use num_complex::Complex64;
use periods::period::PrecisionMode;
use periods::poly::UniPoly;
use periods::{curve, monodromy, periods};
use rug::ops::{CompleteRound, Pow};
use rug::Complex;
use ternary::{rat_int, TernaryForm};
use theta::{theta_constants_all, SiegelPoint, ThetaCharacteristic};

fn upoly(cs: &[i64]) -> UniPoly {
    UniPoly::new(cs.iter().map(|&c| rat_int(c)).collect())
}

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

/// j-invariant from a genus-1 tau through theta constants:
/// lambda = theta[1,0]^4 / theta[0,0]^4, j = 256 (1 - l + l^2)^3 / (l^2 (1-l)^2).
fn j_invariant(tau: &SiegelPoint, prec: u32) -> Complex {
    let table = theta_constants_all(tau, prec).unwrap();
    let th2 = table.value(&ThetaCharacteristic::new(vec![1], vec![0]));
    let th3 = table.value(&ThetaCharacteristic::new(vec![0], vec![0]));
    let l = (th2 / th3).complete((prec, prec)).pow(4u32);
    let one = Complex::with_val(prec, (1, 0));
    let num = (&one - &l).complete((prec, prec));
    let num = num + (&l * &l).complete((prec, prec));
    let num = num.pow(3u32) * 256u32;
    let den = (&l * &l).complete((prec, prec)) * (&one - &l).complete((prec, prec)).pow(2u32);
    num / den
}

#[test]
fn lemniscatic_curve_has_j_1728() {
    // y^2 = x^4 - 1 has CM by i, so j = 1728 whatever homology basis the
    // pipeline picked
    let c = curve::hyperelliptic_any(&upoly(&[-1, 0, 0, 0, 1])).unwrap();
    assert_eq!(c.genus, 1);
    let pm = periods(&c, PrecisionMode::Double).unwrap();
    assert!(pm.diagnostics.symmetry_residual < 1e-9);
    assert!(pm.diagnostics.min_eig_im_tau > 0.0);
    let tau = SiegelPoint::new(force_prec(&pm.tau, 160)).unwrap();
    let j = j_invariant(&tau, 160);
    let expect = Complex::with_val(160, (1728, 0));
    let diff = j - expect;
    assert!(
        mpnum::cabs(&diff).to_f64() < 1e-7,
        "j deviates by {:e}",
        mpnum::cabs(&diff).to_f64()
    );
}

fn force_prec(m: &mpnum::CMat, prec: u32) -> mpnum::CMat {
    mpnum::CMat::from_fn(m.n, prec, |i, j| {
        let mut c = m.at(i, j).clone();
        c.set_prec(prec);
        c
    })
}

#[test]
fn genus_two_curve_runs_clean() {
    // y^2 = x^6 - 1
    let c = curve::hyperelliptic_any(&upoly(&[-1, 0, 0, 0, 0, 0, 1])).unwrap();
    assert_eq!(c.genus, 2);
    let pm = periods(&c, PrecisionMode::Double).unwrap();
    assert_eq!(pm.g, 2);
    assert!(pm.diagnostics.symmetry_residual < 1e-9);
    assert!(pm.diagnostics.min_eig_im_tau > 0.0);
}

#[test]
fn fermat_quartic_structure() {
    let (c, _) = curve::from_quartic(&fermat()).unwrap();
    let mono = monodromy(&c).unwrap();
    assert_eq!(mono.branch.len(), 4);
    // each branch point is a full 4-cycle: deficiency 3 each
    assert_eq!(mono.deficiency, 12);
    assert!(mono.product_is_identity());
    assert!(mono.transitive());
    let pm = periods(&c, PrecisionMode::Double).unwrap();
    assert_eq!(pm.g, 3);
    assert!(pm.diagnostics.symmetry_residual < 1e-9, "residual {:e}", pm.diagnostics.symmetry_residual);
    assert!(pm.diagnostics.min_eig_im_tau > 0.0);
    assert_eq!(pm.diagnostics.rh_deficiency, pm.diagnostics.rh_expected);
}

#[test]
fn random_dense_quartic_structure() {
    // a fixed dense quartic with small coefficients, smooth
    let f = TernaryForm::new(
        4,
        [
            ((4, 0, 0), rat_int(1)),
            ((3, 1, 0), rat_int(-1)),
            ((2, 2, 0), rat_int(2)),
            ((1, 0, 3), rat_int(1)),
            ((0, 4, 0), rat_int(1)),
            ((0, 1, 3), rat_int(-2)),
            ((0, 0, 4), rat_int(3)),
            ((1, 1, 2), rat_int(1)),
        ],
    )
    .unwrap();
    assert!(!ternary::discriminant(&f).unwrap().value.eq(&ternary::rat_int(0)));
    let (c, _) = curve::from_quartic(&f).unwrap();
    let mono = monodromy(&c).unwrap();
    assert_eq!(mono.deficiency, 12);
    let pm = periods(&c, PrecisionMode::Double).unwrap();
    assert_eq!(pm.g, 3);
    assert!(pm.diagnostics.symmetry_residual < 1e-9, "residual {:e}", pm.diagnostics.symmetry_residual);
    assert!(pm.diagnostics.min_eig_im_tau > 0.0);
}

#[test]
fn hyperelliptic_x8_periods() {
    let mut cs = vec![0i64; 9];
    cs[0] = -1;
    cs[8] = 1;
    let c = curve::hyperelliptic_curve(&upoly(&cs)).unwrap();
    let pm = periods(&c, PrecisionMode::Double).unwrap();
    assert_eq!(pm.g, 3);
    assert!(pm.diagnostics.symmetry_residual < 1e-9);
    assert!(pm.diagnostics.min_eig_im_tau > 0.0);
    assert_eq!(pm.diagnostics.rh_deficiency, 8);
}

#[test]
fn base_fiber_matches_curve_equation() {
    let c = curve::hyperelliptic_any(&upoly(&[-1, 0, 0, 0, 1])).unwrap();
    let mono = monodromy(&c).unwrap();
    for y in &mono.base_fiber {
        let x = mono.base;
        let lhs = y * y;
        let rhs = x.powu(4) - Complex64::new(1.0, 0.0);
        assert!((lhs - rhs).norm() < 1e-9);
    }
}

#[test]
fn row_scaling_leaves_tau_unchanged() {
    let c = curve::hyperelliptic_any(&upoly(&[-1, 0, 0, 0, 1])).unwrap();
    let pm = periods(&c, PrecisionMode::Double).unwrap();
    let factor = Complex::with_val(pm.prec, (2.5, -1.0));
    let scaled = pm.scale_rows(&factor);
    let d = scaled.tau.sub(&pm.tau).max_abs().to_f64();
    assert!(d == 0.0);
    let det_ratio = scaled.det_omega2() / pm.det_omega2();
    let expect = factor; // g = 1
    let diff = det_ratio - expect;
    assert!(mpnum::cabs(&diff).to_f64() < 1e-12);
}
