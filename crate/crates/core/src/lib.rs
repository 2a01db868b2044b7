//! Finite-dimensional density-operator toolkit: spin operators, mixtures,
//! bipartite states, Bell-type correlations, entropy, and open-system
//! (Lindblad) dynamics.

pub mod bell;
pub mod bipartite;
pub mod density;
pub mod eigen;
pub mod entropy;
pub mod error;
pub mod lindblad;
pub mod matrix;
pub mod random;
pub mod spin;

pub use density::{DensityOperator, ProperMixture};
pub use error::{Error, Result};
pub use matrix::CMatrix;
pub use spin::UnitVector3;
