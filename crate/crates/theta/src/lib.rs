//! Theta constants with half-integer characteristics at arbitrary precision,
//! for genus up to 4.
//!
//! The series convention is fixed once and for all as q^x = exp(i*pi*x):
//!
//!   theta[e1,e2](z, tau) = sum_{n in Z^g}
//!       exp(i*pi*( (n+e1/2)^t tau (n+e1/2) + 2 (n+e1/2).(z+e2/2) ))
//!
//! the unique convention with theta[(1,1)](0,tau) = 0 and the classical
//! g = 1 values. At z = 0 the substitution m = 2n + e1 turns all 2^{2g}
//! Thetanullwerte into class sums over a single lattice enumeration:
//!
//!   theta[e1,e2](0,tau) = sum_{m = e1 mod 2} exp(i*pi/4 m^t tau m) * i^{m.e2}
//!
//! so one pass over the ellipsoid m^t (Im tau) m <= T fills all 64 (g = 3)
//! accumulators, the i^{m.e2} factors being exact quarter-turn rotations.

pub mod characteristic;
pub mod forms;
pub mod siegel;
pub mod sum;

pub use characteristic::{enumerate_characteristics, ThetaCharacteristic};
pub use forms::{chi_product, chi_product_from_table, sigma140, sigma140_from_table, ModularFormValue};
pub use siegel::{SiegelPoint, SymplecticMatrix};
pub use sum::{theta_constants_all, theta_z, ThetaTable, ThetaValue};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("imaginary part not positive definite")]
    NotPositiveDefinite,
    #[error("matrix not symmetric to working precision (residual 2^{0:.1})")]
    NotSymmetric(f64),
    #[error("truncation radius exceeds the configured cap ({0} > {1})")]
    RadiusCap(f64, f64),
    #[error("near-singular cocycle factor c*tau + d")]
    IllConditioned,
}

pub type Result<T> = std::result::Result<T, Error>;

/// Hard cap on the truncation radius (in units of lattice steps); inputs
/// needing more than this are rejected as a resource error.
pub const RADIUS_CAP: f64 = 200.0;
