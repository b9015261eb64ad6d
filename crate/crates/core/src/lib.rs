//! Numerical radius and numerical index of absolute symmetric norms on `R²`.
//!
//! Everything is generic over the scalar type ([`Scalar`], implemented for
//! `f32` and `f64`); the aliases below fix it to `f64`.
//!
//! ```
//! use numidx::{index_report, numerical_radius, Isometry, Norm};
//!
//! let norm = Norm::lp(1.5)?;
//! let report = index_report(&norm)?;
//! assert!(report.exact);
//! let v4 = numerical_radius(&norm, &Isometry::Rotation.matrix());
//! assert!((report.lower_bound - v4).abs() < 1e-9);
//! # Ok::<(), numidx::Error>(())
//! ```

pub mod cli;
pub mod error;
pub mod index;
pub mod norm;
pub mod operator;
pub mod scalar;
pub mod search;
pub mod suites;

pub use error::{Error, Result};
pub use index::{
    brute_force_index, certified_index_lp, conjugate_exponent, contact_vector, index_report, lp_condition_check,
    minimax_simplex, minimax_simplex_oracle, mp_constant, radius_i4_maximizer, theorem2_bound,
};
pub use norm::{lp_duality_pair, validate, NormSpec};
pub use operator::{conjugate_by_isometry, numerical_radius, operator_norm, Isometry};
pub use scalar::Scalar;

pub type Vec2d = norm::Vec2<f64>;
pub type Norm = norm::NormDescriptor<f64>;
pub type Polygon = norm::PolygonNorm<f64>;
pub type Pair = norm::DualityPair<f64>;
pub type Operator = operator::Operator2x2<f64>;
pub type Coefficients = operator::IsometryCoefficients<f64>;
pub type Contact = index::ContactVector<f64>;
pub type Report = index::IndexReport<f64>;
pub type Estimate = index::IndexEstimate<f64>;
