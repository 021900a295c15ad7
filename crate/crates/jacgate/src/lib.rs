//! The Jacobian recognition gate for principally polarized abelian
//! threefolds over the rationals.
//!
//! Given a period matrix (or just a Siegel point), the classifier walks the
//! trichotomy: Sigma_140 = 0 means decomposable; otherwise a vanishing even
//! theta product means hyperelliptic Jacobian; otherwise the weight-18 value
//! v = (2 pi)^54 P(tau) / det(Omega_2)^18 is recognized as a rational and
//! its square class decides Jacobian versus quadratic twist. The calibration
//! constant c0 ties v to the exact quartic discriminant through
//! v = c0 * 2^28 * Disc(F)^2 and is fixed by the Ciani family.

pub mod calibrate;
pub mod classify;
pub mod recognize;
pub mod value;

pub use calibrate::{calibrate, CalibrationConstant};
pub use classify::{classify_periods, classify_tau, ClassificationResult, Verdict};
pub use recognize::{rational_reconstruct, square_class};
pub use value::{klein_check, modular_value, scale_periods, ModularValue};

use mpnum::CMat;

pub const TWO_POW_28: u32 = 28;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Exact(#[from] ternary::Error),
    #[error(transparent)]
    Theta(#[from] theta::Error),
    #[error(transparent)]
    Periods(#[from] periods::Error),
    #[error("numerically indeterminate: {0}")]
    Indeterminate(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Process exit codes of the CLI.
pub mod exit_codes {
    pub const OK: i32 = 0;
    pub const INVALID_INPUT: i32 = 2;
    pub const INDETERMINATE: i32 = 3;
    pub const INCONSISTENT: i32 = 4;
}

/// Re-round a matrix to a new working precision.
pub fn lift_cmat(m: &CMat, prec: u32) -> CMat {
    CMat::from_fn(m.n, prec, |i, j| {
        let mut z = m.at(i, j).clone();
        z.set_prec(prec);
        z
    })
}
