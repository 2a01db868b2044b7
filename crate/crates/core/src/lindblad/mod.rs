//! Completely positive maps, the Lindblad generator, time integration and
//! exact spectral solutions.
//!
//! Kraus sets satisfy `Σ K†K = I` and the generator uses the `L†L`
//! anticommutator. With these orderings `Tr(ℒρ) = 0` holds for every jump
//! operator, normal or not.

mod generator;
mod spectrum;
mod superop;

pub use generator::{
    evolve_lindblad, evolve_lindblad_sampled, lindblad_apply, scaled, IntegrationDiagnostics,
    LindbladGenerator, Sample, Trajectory, MAX_TRACE_DRIFT, MIN_EIGENVALUE_FLOOR,
};
pub use spectrum::{lindblad_spectrum, LindbladSpectrum, SpectralMode};
pub use superop::{
    eigenmatrix_decompose, kraus_from_decomposition, superop_from_kraus,
    EigenmatrixDecomposition, KrausChannel, Superoperator, COMPLETENESS_TOL, CP_TOL,
};
