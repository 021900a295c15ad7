//! The decision tree: decomposable / hyperelliptic Jacobian / Jacobian /
//! quadratic twist, with an explicit indeterminate verdict whenever a zero
//! test sits too close to its threshold.

use crate::calibrate::CalibrationConstant;
use crate::recognize::{rational_reconstruct, square_class};
use crate::value::{modular_value, period_data_bits, ModularValue};
use crate::{Error, Result};
use num_bigint::BigInt;
use periods::PeriodMatrix;
use rug::Float;
use ternary::Rat;
use theta::{chi_product_from_table, sigma140_from_table, theta_constants_all, SiegelPoint};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Decomposable,
    HyperellipticJacobian,
    Jacobian,
    TwistOfJacobian,
    Indeterminate,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::Decomposable => "Decomposable",
            Verdict::HyperellipticJacobian => "HyperellipticJacobian",
            Verdict::Jacobian => "Jacobian",
            Verdict::TwistOfJacobian => "TwistOfJacobian",
            Verdict::Indeterminate => "Indeterminate",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub struct ClassificationResult {
    pub verdict: Verdict,
    pub value: Option<ModularValue>,
    /// Squarefree representative of the value's class in Q*/(Q*)^2.
    pub square_class: Option<BigInt>,
    /// The d of the twisting character, reported as its square class.
    pub twist_descriptor: Option<BigInt>,
    /// Margins (bits) of the two vanishing decisions; near-zero magnitudes
    /// mean the verdict was within the indeterminate band.
    pub sigma_margin_bits: f64,
    pub chi_margin_bits: f64,
    pub note: String,
}

/// Verdicts whose margin is within one order of magnitude of the threshold
/// are refused.
const INDET_BAND_BITS: f64 = std::f64::consts::LOG2_10;

fn margins_of(
    tau: &SiegelPoint,
    prec: u32,
    data_bits: f64,
) -> Result<(theta::ModularFormValue, theta::ModularFormValue)> {
    let table = theta_constants_all(tau, prec)?;
    let mut chi = chi_product_from_table(&table)?;
    let mut sigma = sigma140_from_table(&table)?;
    // the zero thresholds may not assume more accuracy than the input has
    let eff = data_bits.min(prec as f64) as u32;
    chi.prec = eff;
    sigma.prec = eff;
    Ok((chi, sigma))
}

fn tree(
    chi: &theta::ModularFormValue,
    sigma: &theta::ModularFormValue,
) -> (Verdict, f64, f64, String) {
    let sm = sigma.zero_margin_bits();
    let cm = chi.zero_margin_bits();
    if sm.abs() < INDET_BAND_BITS {
        return (
            Verdict::Indeterminate,
            sm,
            cm,
            "Sigma_140 vanishing test within the indeterminate band".into(),
        );
    }
    if sm < 0.0 {
        // audit note: the even product should vanish as well on genuinely
        // decomposable points
        let note = format!("decomposable; chi margin {cm:.1} bits (audit)");
        return (Verdict::Decomposable, sm, cm, note);
    }
    if cm.abs() < INDET_BAND_BITS {
        return (
            Verdict::Indeterminate,
            sm,
            cm,
            "chi vanishing test within the indeterminate band".into(),
        );
    }
    if cm < 0.0 {
        return (Verdict::HyperellipticJacobian, sm, cm, String::new());
    }
    (Verdict::Jacobian, sm, cm, String::new()) // refined by the caller
}

/// Classification from a Siegel point alone: the rational branch cannot be
/// decided without periods, so chi != 0 yields Indeterminate.
pub fn classify_tau(tau: &SiegelPoint, prec: u32, data_bits: f64) -> Result<ClassificationResult> {
    let (chi, sigma) = margins_of(tau, prec, data_bits)?;
    let (verdict, sm, cm, note) = tree(&chi, &sigma);
    let (verdict, note) = match verdict {
        Verdict::Jacobian => (
            Verdict::Indeterminate,
            "chi != 0: deciding Jacobian vs twist needs a period matrix over Q".into(),
        ),
        v => (v, note),
    };
    Ok(ClassificationResult {
        verdict,
        value: None,
        square_class: None,
        twist_descriptor: None,
        sigma_margin_bits: sm,
        chi_margin_bits: cm,
        note,
    })
}

/// Full classification from a period matrix.
pub fn classify_periods(
    pm: &PeriodMatrix,
    prec: u32,
    cal: &CalibrationConstant,
) -> Result<ClassificationResult> {
    let data_bits = period_data_bits(pm).min(prec as f64);
    let v = modular_value(pm, prec)?;
    let (verdict, sm, cm, note) = tree(&v.chi, &v.sigma);
    // thresholds inside v.chi / v.sigma already use engine precision; redo
    // with the input accuracy
    let sp = crate::value::siegel_point_of(pm, prec)?;
    let (chi_eff, sigma_eff) = margins_of(&sp, prec, data_bits)?;
    let (verdict, sm, cm, note) = {
        let _ = (verdict, sm, cm, note);
        tree(&chi_eff, &sigma_eff)
    };
    if verdict != Verdict::Jacobian {
        return Ok(ClassificationResult {
            verdict,
            value: Some(v),
            square_class: None,
            twist_descriptor: None,
            sigma_margin_bits: sm,
            chi_margin_bits: cm,
            note,
        });
    }

    // rational branch: w = v / (c0 * 2^28)
    let mut v = v;
    if v.imag_residual > 1e-6 {
        return Ok(ClassificationResult {
            verdict: Verdict::Indeterminate,
            value: Some(v),
            square_class: None,
            twist_descriptor: None,
            sigma_margin_bits: sm,
            chi_margin_bits: cm,
            note: "the modular value is not real: input not defined over Q?".into(),
        });
    }
    let num = rug::Integer::from_str_radix(&cal.c0.numer().to_string(), 10).unwrap();
    let den = rug::Integer::from_str_radix(&cal.c0.denom().to_string(), 10).unwrap();
    let c0 = Float::with_val(prec, rug::Rational::from((num, den)));
    use rug::ops::Pow;
    let w = v.raw.real().clone() / c0 / Float::with_val(prec, 2).pow(crate::TWO_POW_28);
    let Some(q) = rational_reconstruct(&w, prec) else {
        return Ok(ClassificationResult {
            verdict: Verdict::Indeterminate,
            value: Some(v),
            square_class: None,
            twist_descriptor: None,
            sigma_margin_bits: sm,
            chi_margin_bits: cm,
            note: "no admissible rational reconstruction of the value".into(),
        });
    };
    if q == Rat::from_integer(0.into()) {
        return Ok(ClassificationResult {
            verdict: Verdict::Indeterminate,
            value: Some(v),
            square_class: None,
            twist_descriptor: None,
            sigma_margin_bits: sm,
            chi_margin_bits: cm,
            note: "recognized value is zero despite chi != 0".into(),
        });
    }
    // report the recognized rational of the raw value v = c0 * 2^28 * q;
    // the square class of v and of q agree (2^28 is an even power)
    let two28 = ternary::rat_pow(&ternary::rat_int(2), crate::TWO_POW_28);
    v.recognized = Some(&q * &cal.c0 * two28);
    match square_class(&q) {
        Ok(d) => {
            let is_square = d == BigInt::from(1);
            Ok(ClassificationResult {
                verdict: if is_square { Verdict::Jacobian } else { Verdict::TwistOfJacobian },
                value: Some(v),
                square_class: Some(d.clone()),
                twist_descriptor: if is_square { None } else { Some(d) },
                sigma_margin_bits: sm,
                chi_margin_bits: cm,
                note: String::new(),
            })
        }
        Err(Error::Indeterminate(msg)) => Ok(ClassificationResult {
            verdict: Verdict::Indeterminate,
            value: Some(v),
            square_class: None,
            twist_descriptor: None,
            sigma_margin_bits: sm,
            chi_margin_bits: cm,
            note: msg,
        }),
        Err(e) => Err(e),
    }
}

impl ClassificationResult {
    pub fn to_json(&self) -> serde_json::Value {
        let val = self.value.as_ref().map(|v| {
            serde_json::json!({
                "re": mpnum::float_to_dec(v.raw.real()),
                "im": mpnum::float_to_dec(v.raw.imag()),
                "imag_residual": v.imag_residual,
                "recognized": v.recognized.as_ref().map(ternary::rat_to_str),
                "precision": v.prec,
            })
        });
        serde_json::json!({
            "verdict": self.verdict.to_string(),
            "value": val,
            "square_class": self.square_class.as_ref().map(|d| d.to_string()),
            "twist_descriptor": self.twist_descriptor.as_ref().map(|d| d.to_string()),
            "sigma_margin_bits": self.sigma_margin_bits,
            "chi_margin_bits": self.chi_margin_bits,
            "note": self.note,
        })
    }
}
