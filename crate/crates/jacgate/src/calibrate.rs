//! Calibration of the constant c0 in v = c0 * 2^28 * Disc(F)^2 against the
//! Ciani family, whose discriminants are known in closed form.

use crate::value::klein_check;
use crate::{Error, Result};
use mpnum::cabs;
use num_traits::Zero;
use periods::{curve, periods, PrecisionMode};
use ternary::ciani::CianiMatrix;
use ternary::{rat_int, Rat};

/// The frozen calibration constant; expected (and verified) to be +1 for
/// this engine's conventions.
#[derive(Clone, Debug)]
pub struct CalibrationConstant {
    /// Snapped exact value (+1 or -1).
    pub c0: Rat,
    /// Largest deviation |KR - c0| over the calibration curves.
    pub spread: f64,
    /// The Ciani matrices used, as (a, b) integer six-tuples.
    pub provenance: Vec<[i64; 6]>,
}

/// Default constant determined against the Ciani family; `calibrate`
/// re-derives it.
pub fn default_calibration() -> CalibrationConstant {
    CalibrationConstant { c0: rat_int(1), spread: 0.0, provenance: vec![] }
}

impl CalibrationConstant {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "c0": ternary::rat_to_str(&self.c0),
            "spread": self.spread,
            "curves": self.provenance,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let c0 = v
            .get("c0")
            .and_then(|x| x.as_str())
            .ok_or_else(|| Error::InvalidInput("missing 'c0'".into()))?;
        let c0 = ternary::rat_from_str(c0)?;
        let spread = v.get("spread").and_then(|x| x.as_f64()).unwrap_or(0.0);
        Ok(CalibrationConstant { c0, spread, provenance: vec![] })
    }
}

/// Compute KR over the given Ciani curves and freeze c0. Fails loudly when
/// the ratios drift apart or do not sit at a unit rational: that means a
/// convention bug, not a tolerance issue.
pub fn calibrate(matrices: &[CianiMatrix], prec: u32) -> Result<CalibrationConstant> {
    if matrices.is_empty() {
        return Err(Error::InvalidInput("no calibration curves".into()));
    }
    let mut ratios = Vec::new();
    let mut provenance = Vec::new();
    for m in matrices {
        if m.discriminant().is_zero() {
            return Err(Error::InvalidInput("singular Ciani curve in calibration".into()));
        }
        let form = m.form();
        let (c, _) = curve::from_quartic(&form)?;
        let pm = periods(&c, PrecisionMode::Double)?;
        let kr = klein_check(&form, &pm, prec)?;
        ratios.push(kr);
        let to_i64 = |r: &Rat| -> i64 { r.numer().to_string().parse().unwrap_or(0) };
        provenance.push([
            to_i64(&m.a[0]),
            to_i64(&m.a[1]),
            to_i64(&m.a[2]),
            to_i64(&m.b[0]),
            to_i64(&m.b[1]),
            to_i64(&m.b[2]),
        ]);
    }
    // snap to the nearest unit rational
    let first = &ratios[0];
    let re = first.real().to_f64();
    let target: i64 = if re >= 0.0 { 1 } else { -1 };
    let c0 = rat_int(target);
    let mut spread = 0f64;
    for kr in &ratios {
        let dev = {
            let mut d = kr.clone();
            d -= target;
            cabs(&d).to_f64()
        };
        spread = spread.max(dev);
        let m = cabs(kr).to_f64();
        if (m - 1.0).abs() > 1e-4 {
            return Err(Error::Internal(format!("|KR| = {m} is not 1: convention bug")));
        }
    }
    if spread > 1e-4 {
        return Err(Error::Internal(format!(
            "calibration drift {spread:e} exceeds 1e-4"
        )));
    }
    Ok(CalibrationConstant { c0, spread, provenance })
}

/// The standard calibration family: the Fermat matrix and two generic
/// Ciani matrices.
pub fn standard_calibration_family() -> Vec<CianiMatrix> {
    vec![
        CianiMatrix::identity(),
        CianiMatrix::from_i64([2, 3, 5], [0, 0, 0]),
        CianiMatrix::from_i64([3, 2, 4], [1, 0, 1]),
    ]
}
