//! Discriminants of ternary forms and invariant weight bookkeeping.

use crate::form::TernaryForm;
use crate::macaulay::macaulay_resultant;
use crate::{rat_int, rat_pow, Error, Rat, Result};
use num_traits::Zero;

/// An exact invariant value together with its degree in the coefficients of
/// the form and its weight w, related by d * degree = 3 * weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantValue {
    pub value: Rat,
    pub degree: u32,
    pub weight: u32,
}

impl InvariantValue {
    pub fn new(value: Rat, form_degree: u32, degree: u32) -> Result<Self> {
        let weight = invariant_weight(form_degree, degree)?;
        Ok(InvariantValue { value, degree, weight })
    }
}

/// Weight w of an invariant of degree `degree` on forms of degree `d`,
/// from d * degree = 3 * w.
pub fn invariant_weight(d: u32, degree: u32) -> Result<u32> {
    let prod = d * degree;
    if prod % 3 != 0 {
        return Err(Error::InvalidInput(format!(
            "3 does not divide d * degree = {prod}"
        )));
    }
    Ok(prod / 3)
}

/// The basis-change weight w0 = C(d, 3) = d*g/3 of the classical
/// differential wedge.
pub fn weight_w0(d: u32) -> u32 {
    d * (d - 1) * (d - 2) / 6
}

/// Normalized discriminant of a ternary form of degree 2 <= d <= 6:
/// Disc F = d^{-(d-1)(d-2)-1} Res(q1, q2, q3), zero exactly when the plane
/// curve F = 0 is singular. Degree 3(d-1)^2 and weight d(d-1)^2 in the
/// coefficients of F.
pub fn discriminant(form: &TernaryForm) -> Result<InvariantValue> {
    let d = form.degree();
    if !(2..=6).contains(&d) {
        return Err(Error::InvalidInput(format!(
            "discriminant supported for 2 <= d <= 6, got {d}"
        )));
    }
    if form.is_zero() {
        return Err(Error::InvalidInput("discriminant of the zero form".into()));
    }
    let inv_degree = 3 * (d - 1) * (d - 1);
    // The two classical normalization exponents agree:
    // (d-1)(d-2)+1 = ((d-1)^3 + 1)/d for every d.
    let exp = (d - 1) * (d - 2) + 1;
    debug_assert_eq!(d * exp, (d - 1) * (d - 1) * (d - 1) + 1);

    let [q1, q2, q3] = form.partials();
    if q1.is_zero() || q2.is_zero() || q3.is_zero() {
        // a vanishing partial forces a common root, hence a singular curve
        return InvariantValue::new(Rat::zero(), d, inv_degree);
    }
    let res = macaulay_resultant(&q1, &q2, &q3)?;
    let scale = rat_pow(&rat_int(d as i64), exp);
    InvariantValue::new(res / scale, d, inv_degree)
}
