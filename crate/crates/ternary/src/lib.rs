//! Exact computer algebra for ternary forms over the rationals.
//!
//! The centerpiece is the normalized multivariate resultant of three ternary
//! forms (Macaulay matrix quotient) and the discriminant derived from it,
//! together with the GL3 action, invariant weight bookkeeping and the Ciani
//! family of quartics with its closed-form discriminant.

pub mod bareiss;
pub mod ciani;
pub mod disc;
pub mod form;
pub mod gl3;
pub mod macaulay;

pub use ciani::CianiMatrix;
pub use disc::{discriminant, invariant_weight, weight_w0, InvariantValue};
pub use form::TernaryForm;
pub use gl3::GL3Matrix;
pub use macaulay::macaulay_resultant;

use num_bigint::BigInt;
use num_rational::BigRational;

pub type Rat = BigRational;

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Parse "p/q" or "p" into an exact rational.
pub fn rat_from_str(s: &str) -> Result<Rat> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::InvalidInput(format!("bad integer '{t}'")))
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let num = parse_int(p)?;
            let den = parse_int(q)?;
            if den == BigInt::from(0) {
                return Err(Error::InvalidInput("zero denominator".into()));
            }
            Ok(Rat::new(num, den))
        }
        None => Ok(Rat::from_integer(parse_int(s)?)),
    }
}

/// Canonical "p/q" (or "p" for integers) rendering.
pub fn rat_to_str(r: &Rat) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_pow(r: &Rat, e: u32) -> Rat {
    let mut acc = Rat::from_integer(BigInt::from(1));
    let mut base = r.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        base = &base * &base;
        e >>= 1;
    }
    acc
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
