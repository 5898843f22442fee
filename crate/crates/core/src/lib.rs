//! Pseudo-spectral simulation suite for the low Mach number limit of
//! compressible magnetohydrodynamics on the periodic torus.
//!
//! The crate integrates the ε-scaled compressible full and ideal MHD systems
//! and their incompressible limits, builds the asymptotic approximations
//! `(επ/2, w, B, επ/2)` and `(εΠ, v, J, εΠ)`, and measures the O(ε)
//! convergence observed when sweeping the Mach number.
//!
//! All numerics are generic over the scalar type through [`Real`]
//! (`f32` or `f64`); concrete `f64` aliases live at the crate root and are
//! what the CLI and the acceptance suite use.

pub mod asymptotics;
pub mod compressible;
pub mod error;
pub mod fields;
pub mod incompressible;
pub mod real;
pub mod scaling;
pub mod systems;
pub mod trajectory;

pub use error::Error;
pub use real::Real;

/// Crate-wide result type.
pub type Result<V> = std::result::Result<V, Error>;

pub type Grid64 = fields::Grid<f64>;
pub type ScalarField64 = fields::ScalarField<f64>;
pub type VectorField64 = fields::VectorField3<f64>;

pub type Grid32 = fields::Grid<f32>;
pub type ScalarField32 = fields::ScalarField<f32>;
pub type VectorField32 = fields::VectorField3<f32>;
