//! The weight-18 modular value of a period matrix and Klein's ratio.

use crate::{lift_cmat, Error, Result};
use mpnum::cabs;
use periods::PeriodMatrix;
use rug::ops::Pow;
use rug::{Complex, Float};
use ternary::{discriminant, Rat, TernaryForm};
use theta::{chi_product_from_table, theta_constants_all, ModularFormValue, SiegelPoint};

/// v = (2 pi)^54 * P(tau) / det(Omega_2)^18 together with the theta data
/// that produced it.
#[derive(Clone, Debug)]
pub struct ModularValue {
    pub raw: Complex,
    /// |Im v| / |v|; small for inputs defined over the rationals.
    pub imag_residual: f64,
    pub recognized: Option<Rat>,
    pub prec: u32,
    /// Effective accuracy (bits) of the underlying period data; zero-test
    /// and recognition thresholds must not pretend to more.
    pub data_bits: f64,
    pub chi: ModularFormValue,
    pub sigma: ModularFormValue,
}

/// Effective data accuracy of a period matrix in bits: the stored precision
/// minus a safety margin for integration and theta amplification.
pub fn period_data_bits(pm: &PeriodMatrix) -> f64 {
    (pm.prec as f64 - 26.0).max(30.0)
}

pub fn siegel_point_of(pm: &PeriodMatrix, prec: u32) -> Result<SiegelPoint> {
    let tau = lift_cmat(&pm.tau, prec);
    let scale = tau.max_abs().max(&Float::with_val(prec, 1));
    let tol = scale * mpnum::float_exp2(prec, -(period_data_bits(pm)) + 8.0);
    SiegelPoint::with_symmetry_tolerance(tau, &tol).map_err(Error::Theta)
}

/// Compute v for a genus-3 period matrix.
pub fn modular_value(pm: &PeriodMatrix, prec: u32) -> Result<ModularValue> {
    if pm.g != 3 {
        return Err(Error::InvalidInput("the modular value needs genus 3".into()));
    }
    let data_bits = period_data_bits(pm).min(prec as f64);
    let sp = siegel_point_of(pm, prec)?;
    let table = theta_constants_all(&sp, prec)?;
    let chi = chi_product_from_table(&table)?;
    let sigma = theta::sigma140_from_table(&table)?;

    let det2 = lift_cmat(&pm.omega2, prec).det();
    let scale = lift_cmat(&pm.omega2, prec).max_abs();
    let floor = Float::with_val(prec, scale).pow(3u32)
        * mpnum::float_exp2(prec, -(data_bits) - 10.0);
    if cabs(&det2) < floor {
        return Err(Error::Indeterminate("det Omega_2 below conditioning threshold".into()));
    }
    let two_pi = mpnum::pi(prec) * 2u32;
    let v = two_pi.pow(54u32) * chi.value.clone() / det2.pow(18u32);
    let vn = cabs(&v).to_f64();
    let imag_residual = if vn > 0.0 {
        v.imag().clone().abs().to_f64() / vn
    } else {
        0.0
    };
    Ok(ModularValue {
        raw: v,
        imag_residual,
        recognized: None,
        prec,
        data_bits,
        chi,
        sigma,
    })
}

/// Klein ratio KR = (2 pi)^54 P(tau) / (2^28 det(Omega_2)^18 Disc(F)^2);
/// equal to the calibration constant c0 for every smooth quartic.
pub fn klein_check(form: &TernaryForm, pm: &PeriodMatrix, prec: u32) -> Result<Complex> {
    let disc = discriminant(form)?;
    if disc.value == Rat::from_integer(0.into()) {
        return Err(Error::InvalidInput("singular quartic".into()));
    }
    let v = modular_value(pm, prec)?;
    let disc2 = ternary::rat_pow(&disc.value, 2);
    let num = rug::Integer::from_str_radix(&disc2.numer().to_string(), 10).unwrap();
    let den = rug::Integer::from_str_radix(&disc2.denom().to_string(), 10).unwrap();
    let d2 = Float::with_val(prec, rug::Rational::from((num, den)));
    let kr = v.raw / d2 / Float::with_val(prec, 2).pow(crate::TWO_POW_28);
    Ok(kr)
}

/// Row scaling by lambda = r * sqrt(d): models a change of the differential
/// basis by lambda * identity (the weight-18 value scales by lambda^{-54}).
pub fn scale_periods(pm: &PeriodMatrix, r: &Rat, surd: u64) -> Result<PeriodMatrix> {
    if *r == Rat::from_integer(0.into()) || surd == 0 {
        return Err(Error::InvalidInput("scale factor must be nonzero".into()));
    }
    let prec = pm.prec;
    let num = rug::Integer::from_str_radix(&r.numer().to_string(), 10).unwrap();
    let den = rug::Integer::from_str_radix(&r.denom().to_string(), 10).unwrap();
    let mut f = Float::with_val(prec, rug::Rational::from((num, den)));
    f *= Float::with_val(prec, surd).sqrt();
    let factor = Complex::with_val(prec, (f, Float::new(prec)));
    Ok(pm.scale_rows(&factor))
}

#[cfg(test)]
mod tests {
    use super::*;
    use periods::{curve, periods, PrecisionMode};
    use ternary::rat_int;

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
    fn determinant_homogeneity_of_the_value() {
        let (c, _) = curve::from_quartic(&fermat()).unwrap();
        let pm = periods(&c, PrecisionMode::Double).unwrap();
        let v = modular_value(&pm, 160).unwrap();
        let scaled = scale_periods(&pm, &rat_int(2), 1).unwrap();
        let v2 = modular_value(&scaled, 160).unwrap();
        // v(2 Omega) = 2^{-54} v(Omega)
        let expect = v.raw.clone() / Float::with_val(160, 2).pow(54u32);
        let diff = v2.raw - expect;
        assert!(cabs(&diff).to_f64() < 1e-6 * cabs(&v.raw).to_f64());
    }

    #[test]
    fn fermat_klein_ratio_is_one() {
        let form = fermat();
        let (c, u) = curve::from_quartic(&form).unwrap();
        assert_eq!(u, ternary::GL3Matrix::identity());
        let pm = periods(&c, PrecisionMode::Double).unwrap();
        let kr = klein_check(&form, &pm, 212).unwrap();
        let one = Complex::with_val(212, (1, 0));
        let d = kr - one;
        assert!(cabs(&d).to_f64() < 1e-6, "KR off by {:e}", cabs(&d).to_f64());
    }
}
