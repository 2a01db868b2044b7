use nalgebra::DMatrix;
use num_complex::Complex64;

use super::generator::LindbladGenerator;
use crate::error::{Error, Result};
use crate::matrix::CMatrix;

/// One eigenmode `ℒ q = λ q`; `e^{λt} q` solves the master equation exactly.
#[derive(Debug, Clone)]
pub struct SpectralMode {
    pub eigenvalue: Complex64,
    /// Normalized so that `Tr(q q†) = 1`.
    pub eigenmatrix: CMatrix,
}

/// Eigenmodes of a Lindblad generator, with the expansion needed to
/// reconstruct `ρ(t)` from any initial state.
#[derive(Debug, Clone)]
pub struct LindbladSpectrum {
    pub modes: Vec<SpectralMode>,
    dim: usize,
    vectors: DMatrix<Complex64>,
}

impl LindbladSpectrum {
    pub fn eigenvalues(&self) -> Vec<Complex64> {
        self.modes.iter().map(|m| m.eigenvalue).collect()
    }

    /// `ρ(t) = Σ_α c_α e^{λ_α t} q_α` with `c = V⁻¹ vec(ρ₀)`.
    pub fn reconstruct(&self, rho0: &CMatrix, t: f64) -> Result<CMatrix> {
        let n = self.dim;
        if rho0.shape() != (n, n) {
            return Err(Error::shape("spectral reconstruction", "initial state has wrong size"));
        }
        let rhs = DMatrix::from_row_slice(n * n, 1, rho0.as_slice());
        let coeffs = self
            .vectors
            .clone()
            .lu()
            .solve(&rhs)
            .ok_or_else(|| Error::NoConvergence("generator eigenvectors are singular".into()))?;
        let mut out = CMatrix::zeros(n, n);
        for (a, mode) in self.modes.iter().enumerate() {
            let w = coeffs[(a, 0)] * (mode.eigenvalue * t).exp();
            out += &mode.eigenmatrix.scale(w);
        }
        Ok(out)
    }
}

/// Eigen-decomposition of the `N² × N²` generator matrix.
///
/// Uses a complex Schur form `G = Q T Q†` and back-substitution on the
/// triangular factor. When two diagonal entries of `T` coincide and the
/// corresponding numerator is negligible the component is set to zero, which
/// keeps independent eigenvectors inside degenerate blocks.
pub fn lindblad_spectrum(g: &LindbladGenerator) -> Result<LindbladSpectrum> {
    let n = g.dim();
    let gm = g.matrix();
    let size = n * n;
    let a = DMatrix::from_row_slice(size, size, gm.as_slice());
    let scale = a.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1.0);
    let (q, t) = nalgebra::linalg::Schur::try_new(a, f64::EPSILON, 10_000)
        .ok_or_else(|| Error::NoConvergence("Schur iteration did not converge".into()))?
        .unpack();

    let tiny = 1e-12 * scale;
    let mut y = DMatrix::<Complex64>::zeros(size, size);
    for k in 0..size {
        let lam = t[(k, k)];
        y[(k, k)] = Complex64::new(1.0, 0.0);
        for j in (0..k).rev() {
            let mut num = Complex64::new(0.0, 0.0);
            for i in j + 1..=k {
                num -= t[(j, i)] * y[(i, k)];
            }
            let den = t[(j, j)] - lam;
            y[(j, k)] = if den.norm() > tiny {
                num / den
            } else if num.norm() <= 1e-10 * scale {
                Complex64::new(0.0, 0.0)
            } else {
                num / Complex64::new(tiny, 0.0)
            };
        }
    }
    let mut vectors = q * y;
    let mut modes = Vec::with_capacity(size);
    for k in 0..size {
        let norm = vectors.column(k).norm();
        vectors.column_mut(k).unscale_mut(norm);
        let col: Vec<Complex64> = vectors.column(k).iter().copied().collect();
        modes.push(SpectralMode {
            eigenvalue: t[(k, k)],
            eigenmatrix: CMatrix::from_vec(n, n, col)?,
        });
    }
    Ok(LindbladSpectrum {
        modes,
        dim: n,
        vectors,
    })
}
