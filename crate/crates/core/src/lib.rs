//! The α-stable law in the continuous M0 parameterization.
//!
//! Characteristic function and cumulant derivatives, density and its
//! derivatives by Fourier inversion, score functions, Fisher information,
//! sampling and box-constrained maximum likelihood.

pub mod chf;
pub mod cli;
pub mod density;
pub mod error;
pub mod fisher;
pub(crate) mod linalg;
pub mod mle;
pub mod params;
pub(crate) mod quadrature;
pub mod sampler;
pub mod score;
pub mod special;

pub use error::{Result, StableError};
pub use params::{ParamIndex, ParamVec, StableParams, SymMatrix4};
