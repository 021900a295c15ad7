//! Multiprecision numeric helpers shared by the theta and period engines.
//!
//! Everything here is a thin layer over MPFR/MPC (via `rug`): dense complex
//! matrices of small dimension, Gauss-Legendre quadrature nodes at arbitrary
//! precision, and decimal-string conversions used by the JSON interfaces.

pub mod cmat;
pub mod legendre;

pub use cmat::CMat;

use rug::ops::CompleteRound;
use rug::{Complex, Float};

/// Working precision in bits.
pub type Prec = u32;

/// Default working precision (about 64 decimal digits).
pub const DEFAULT_PREC: Prec = 212;

pub fn pi(prec: Prec) -> Float {
    Float::with_val(prec, rug::float::Constant::Pi)
}

/// `2^log2` as a `Float`, exact in the exponent; used to materialize error
/// bounds computed in log space (f64 would underflow long before MPFR does).
pub fn float_exp2(prec: Prec, log2: f64) -> Float {
    Float::with_val(prec, log2).exp2()
}

/// |z|^2 as a real.
pub fn norm_sq(z: &Complex) -> Float {
    let p = z.prec().0;
    (z.real() * z.real()).complete(p) + (z.imag() * z.imag()).complete(p)
}

/// |z| as a real.
pub fn cabs(z: &Complex) -> Float {
    norm_sq(z).sqrt()
}

/// Approximate |z| as f64 (clamped to the f64 range); for step control and
/// conditioning decisions only, never for results.
pub fn cabs_f64(z: &Complex) -> f64 {
    cabs(z).to_f64()
}

pub fn complex_from_f64(prec: Prec, re: f64, im: f64) -> Complex {
    Complex::with_val(prec, (re, im))
}

/// Parse a decimal string into a `Float` at the given precision.
pub fn float_from_dec(prec: Prec, s: &str) -> Result<Float, String> {
    let incomplete = Float::parse(s.trim()).map_err(|e| format!("bad decimal '{s}': {e}"))?;
    Ok(Float::with_val(prec, incomplete))
}

/// Render a `Float` as a decimal string with enough digits to round-trip at
/// its own precision.
pub fn float_to_dec(x: &Float) -> String {
    // ceil(prec * log10(2)) + 2 guard digits
    let digits = (x.prec() as f64 * std::f64::consts::LOG10_2).ceil() as usize + 2;
    x.to_string_radix(10, Some(digits))
}

pub fn complex_to_dec_pair(z: &Complex) -> (String, String) {
    (float_to_dec(z.real()), float_to_dec(z.imag()))
}

pub fn complex_from_dec_pair(prec: Prec, re: &str, im: &str) -> Result<Complex, String> {
    let r = float_from_dec(prec, re)?;
    let i = float_from_dec(prec, im)?;
    Ok(Complex::with_val(prec, (r, i)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_round_trip() {
        let x = Float::with_val(212, 2).sqrt();
        let s = float_to_dec(&x);
        let y = float_from_dec(212, &s).unwrap();
        let diff = (&x - &y).complete(212).abs();
        assert!(diff < float_exp2(53, -200.0));
    }

    #[test]
    fn exp2_handles_tiny_exponents() {
        let e = float_exp2(53, -1000.0);
        assert!(e > 0);
        assert!(e < float_exp2(53, -999.0));
    }
}
