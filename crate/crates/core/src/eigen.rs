//! Hermitian eigendecomposition by cyclic complex Jacobi rotations, and the
//! spectral function calculus built on it.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{CMatrix, ZERO};

/// Sweeps stop once the off-diagonal Frobenius norm drops below this value
/// (relative to the matrix scale when that exceeds one).
pub const JACOBI_TOL: f64 = 1e-13;
const MAX_SWEEPS: usize = 100;

/// Spectrum of a Hermitian matrix: eigenvalues ascending, eigenvectors as the
/// matching columns of `vectors`.
#[derive(Debug, Clone)]
pub struct HermitianEig {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl HermitianEig {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn vector(&self, k: usize) -> CMatrix {
        self.vectors.col(k)
    }

    /// Rank-one projector `|v_k⟩⟨v_k|`.
    pub fn projector(&self, k: usize) -> CMatrix {
        self.vector(k).projector()
    }

    pub fn min_value(&self) -> f64 {
        self.values.first().copied().unwrap_or(f64::NAN)
    }

    pub fn max_value(&self) -> f64 {
        self.values.last().copied().unwrap_or(f64::NAN)
    }

    /// Projector onto the eigenspace of all eigenvalues within `tol` of `value`.
    pub fn eigenspace_projector(&self, value: f64, tol: f64) -> CMatrix {
        let n = self.dim();
        let mut p = CMatrix::zeros(n, n);
        for (k, &v) in self.values.iter().enumerate() {
            if (v - value).abs() <= tol {
                p += &self.projector(k);
            }
        }
        p
    }

    /// `Σ f(a_ν) |v_ν⟩⟨v_ν|` for a complex-valued `f`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> Complex64) -> CMatrix {
        let n = self.dim();
        let v = &self.vectors;
        let fv: Vec<Complex64> = self.values.iter().map(|&x| f(x)).collect();
        CMatrix::from_fn(n, n, |i, j| {
            (0..n).map(|k| v[(i, k)] * fv[k] * v[(j, k)].conj()).sum()
        })
    }

    /// Rebuilds `Σ a_ν P_ν`.
    pub fn reconstruct(&self) -> CMatrix {
        self.map_spectrum(|x| Complex64::new(x, 0.0))
    }
}

/// Full spectrum of a Hermitian matrix.
pub fn hermitian_eig(a: &CMatrix) -> Result<HermitianEig> {
    a.require_hermitian()?;
    jacobi(a)
}

fn off_diagonal_norm(a: &CMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn jacobi(input: &CMatrix) -> Result<HermitianEig> {
    let n = input.rows();
    let mut a = input.hermitian_part();
    let mut v = CMatrix::identity(n);
    let scale = a.norm().max(1.0);
    let mut converged = n <= 1;

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) < JACOBI_TOL * scale {
            converged = true;
            break;
        }
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let g = a[(p, q)];
                let gabs = g.norm();
                if gabs < f64::MIN_POSITIVE {
                    continue;
                }
                let alpha = a[(p, p)].re;
                let beta = a[(q, q)].re;
                // Phase e^{-iφ} on column q makes the pivot real, then a real
                // plane rotation annihilates it.
                let phase = g.conj() / gabs;
                let theta = (beta - alpha) / (2.0 * gabs);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let cs = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * cs;
                // Unitary G restricted to the (p, q) plane.
                let g_pp = Complex64::new(cs, 0.0);
                let g_pq = Complex64::new(sn, 0.0);
                let g_qp = phase * (-sn);
                let g_qq = phase * cs;

                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * g_pp + akq * g_qp;
                    a[(k, q)] = akp * g_pq + akq * g_qq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = g_pp.conj() * apk + g_qp.conj() * aqk;
                    a[(q, k)] = g_pq.conj() * apk + g_qq.conj() * aqk;
                }
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);

                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * g_pp + vkq * g_qp;
                    v[(k, q)] = vkp * g_pq + vkq * g_qq;
                }
            }
        }
    }
    if !converged && off_diagonal_norm(&a) >= JACOBI_TOL * scale {
        return Err(Error::NoConvergence(format!(
            "Jacobi sweeps exhausted with off-diagonal norm {:e}",
            off_diagonal_norm(&a)
        )));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = CMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(HermitianEig { values, vectors })
}

/// `f(A) = Σ f(a_ν) P_ν` for Hermitian `A` and real `f`. Fails with a domain
/// error when `f` is not finite at some eigenvalue.
pub fn apply_matrix_function(a: &CMatrix, f: impl Fn(f64) -> f64) -> Result<CMatrix> {
    let eig = hermitian_eig(a)?;
    for &x in &eig.values {
        if !f(x).is_finite() {
            return Err(Error::Domain { eigenvalue: x });
        }
    }
    Ok(eig.map_spectrum(|x| Complex64::new(f(x), 0.0)))
}

/// Complex-valued spectral function, e.g. `exp(-i t x)` for propagators.
pub fn apply_complex_function(a: &CMatrix, f: impl Fn(f64) -> Complex64) -> Result<CMatrix> {
    let eig = hermitian_eig(a)?;
    for &x in &eig.values {
        let y = f(x);
        if !y.re.is_finite() || !y.im.is_finite() {
            return Err(Error::Domain { eigenvalue: x });
        }
    }
    Ok(eig.map_spectrum(f))
}

/// `e^{-iHt}`.
pub fn unitary_propagator(h: &CMatrix, t: f64) -> Result<CMatrix> {
    apply_complex_function(h, |x| Complex64::from_polar(1.0, -x * t))
}

/// Returns `ket` multiplied by the phase that makes its first component with
/// modulus above `1e-12` real and non-negative.
pub fn canonical_phase(ket: &CMatrix) -> CMatrix {
    match ket.as_slice().iter().find(|z| z.norm() > 1e-12) {
        Some(&z) => ket.scale(z.conj() / z.norm()),
        None => ket.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{c, r, I};
    use crate::random::Sampler;

    #[test]
    fn diagonal_input() {
        let eig = hermitian_eig(&CMatrix::real_diag(&[1.0, -1.0])).unwrap();
        assert_eq!(eig.values, vec![-1.0, 1.0]);
        assert!(eig.vector(0).approx_eq(&CMatrix::basis_ket(2, 1), 0.0));
        assert!(eig.vector(1).approx_eq(&CMatrix::basis_ket(2, 0), 0.0));
    }

    #[test]
    fn rejects_non_hermitian() {
        let a = CMatrix::from_real_rows(&[[0.0, 1.0], [0.0, 0.0]]);
        assert!(matches!(hermitian_eig(&a), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn complex_two_by_two() {
        let sy = CMatrix::from_rows(&[[ZERO, -I], [I, ZERO]]);
        let eig = hermitian_eig(&sy).unwrap();
        assert!((eig.values[0] + 1.0).abs() < 1e-14);
        assert!((eig.values[1] - 1.0).abs() < 1e-14);
        for k in 0..2 {
            let v = eig.vector(k);
            let lhs = &sy * &v;
            assert!(lhs.approx_eq(&v.scale_real(eig.values[k]), 1e-13));
        }
    }

    #[test]
    fn random_reconstruction_and_orthonormality() {
        let mut s = Sampler::new(7);
        for n in 2..=8 {
            for _ in 0..10 {
                let a = s.hermitian(n);
                let eig = hermitian_eig(&a).unwrap();
                assert!(eig.reconstruct().approx_eq(&a, 1e-10));
                let vhv = &eig.vectors.adjoint() * &eig.vectors;
                assert!(vhv.approx_eq(&CMatrix::identity(n), 1e-10));
                assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
                for k in 0..n {
                    let v = eig.vector(k);
                    assert!((&a * &v).approx_eq(&v.scale_real(eig.values[k]), 1e-10));
                }
            }
        }
    }

    #[test]
    fn degenerate_spectrum() {
        let a = CMatrix::from_rows(&[
            [r(1.0), ZERO, ZERO],
            [ZERO, r(0.5), c(0.0, 0.5)],
            [ZERO, c(0.0, -0.5), r(0.5)],
        ]);
        let eig = hermitian_eig(&a).unwrap();
        assert!(eig.values[0].abs() < 1e-14);
        assert!((eig.values[1] - 1.0).abs() < 1e-14);
        let p1 = eig.eigenspace_projector(1.0, 1e-9);
        assert!((&p1 * &p1).approx_eq(&p1, 1e-12));
        assert!((p1.trace().unwrap() - r(2.0)).norm() < 1e-12);
    }

    #[test]
    fn function_calculus() {
        let sz = CMatrix::real_diag(&[1.0, -1.0]);
        let e = apply_matrix_function(&sz, f64::exp).unwrap();
        let e1 = std::f64::consts::E;
        assert!(e.approx_eq(&CMatrix::real_diag(&[e1, 1.0 / e1]), 1e-14));

        let phi = CMatrix::column(&[c(0.6, 0.0), c(0.0, 0.8)]);
        let p = phi.projector();
        assert!(apply_matrix_function(&p, |x| x * x).unwrap().approx_eq(&p, 1e-12));

        let mut s = Sampler::new(11);
        for n in 2..=6 {
            let a = s.hermitian(n);
            let sq = apply_matrix_function(&a, |x| x * x).unwrap();
            assert!(sq.approx_eq(&(&a * &a), 1e-12));
            let ex = apply_matrix_function(&a, f64::exp).unwrap();
            assert!(ex.commutator(&a).max_abs() < 1e-10);
        }
    }

    #[test]
    fn log_of_singular_matrix_is_a_domain_error() {
        let p = CMatrix::real_diag(&[1.0, 0.0]);
        let err = apply_matrix_function(&p, f64::ln).unwrap_err();
        assert!(matches!(err, Error::Domain { .. }));
    }

    #[test]
    fn propagator_is_unitary() {
        let mut s = Sampler::new(3);
        let h = s.hermitian(4);
        let u = unitary_propagator(&h, 0.7).unwrap();
        assert!(u.is_unitary(1e-12));
    }
}
