//! Numerical period matrices for smooth plane quartics and hyperelliptic
//! curves of genus up to 3.
//!
//! Pipeline: exact branch locus (resultants), complex root finding, loops
//! with deterministic detours, fiber tracking for the monodromy
//! representation, a combinatorial homology basis brought to symplectic
//! form over the integers, and Gauss-Legendre integration of the
//! holomorphic differentials along the same certified paths in double or
//! arbitrary precision.

pub mod cf;
pub mod curve;
pub mod homology;
pub mod integrate;
pub mod monodromy;
pub mod path;
pub mod period;
pub mod poly;
pub mod roots;
pub mod track;

pub use curve::{classical_differentials, from_quartic, hyperelliptic_curve, AffineCurve};
pub use monodromy::{branch_points, monodromy, MonodromyData};
pub use period::{periods, Diagnostics, PeriodMatrix, PrecisionMode};
pub use poly::UniPoly;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("curve is singular")]
    SingularCurve,
    #[error(transparent)]
    Exact(#[from] ternary::Error),
    #[error("root tracking stalled (step limit)")]
    TrackingStall,
    #[error("fiber permutation is ambiguous")]
    MonodromyAmbiguous,
    #[error("monodromy group is not transitive; curve reducible?")]
    MonodromyNotTransitive,
    #[error("boundary product of permutations is not the identity")]
    BoundaryRelation,
    #[error("Riemann-Hurwitz mismatch: deficiency {got}, expected {expected}")]
    RiemannHurwitz { got: usize, expected: usize },
    #[error("integration accuracy: tau residual {symmetry_residual:e}, quadrature residual {quadrature_residual:e}")]
    IntegrationAccuracy {
        symmetry_residual: f64,
        quadrature_residual: f64,
    },
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
