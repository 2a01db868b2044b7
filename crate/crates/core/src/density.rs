//! Density operators, proper mixtures, Gram factors and the two evolution
//! laws (unitary and projective measurement).
//!
//! `ρ = ½(P_{x+} + P_{y+})` has upper-right entry `(1 − i)/4` under the
//! ket convention of [`crate::spin`]. Some printed versions of this matrix
//! show the transpose; the projector sum is treated as authoritative.

use crate::eigen::{hermitian_eig, unitary_propagator};
use crate::error::{Error, Result};
use crate::matrix::{check_orthonormal_basis, CMatrix, HERMITIAN_TOL};

/// Default tolerance for the trace and positivity checks.
pub const DENSITY_TOL: f64 = 1e-10;
/// Tolerance on mixture weights summing to one and on ket normalization.
pub const MIXTURE_TOL: f64 = 1e-12;
/// Purity above `1 − PURE_TOL` counts as a pure state.
pub const PURE_TOL: f64 = 1e-9;
/// Remixed rows with squared norm below this are dropped.
pub const ZERO_ROW_TOL: f64 = 1e-14;

/// A validated density matrix: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    matrix: CMatrix,
}

impl DensityOperator {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        Self::new_with_tolerance(matrix, DENSITY_TOL)
    }

    /// Validates with a caller-chosen tolerance for trace and positivity.
    pub fn new_with_tolerance(matrix: CMatrix, tol: f64) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::shape(
                "density",
                format!("{}x{} is not square", matrix.rows(), matrix.cols()),
            ));
        }
        if !matrix.is_finite() {
            return Err(Error::validation("density has non-finite entries"));
        }
        let dev = matrix.hermitian_deviation();
        if dev > HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation: dev });
        }
        let tr = matrix.trace()?;
        if (tr.re - 1.0).abs() > tol || tr.im.abs() > tol {
            return Err(Error::validation(format!("trace is {tr}, expected 1")));
        }
        let min = hermitian_eig(&matrix)?.min_value();
        if min < -tol {
            return Err(Error::validation(format!(
                "density has negative eigenvalue {min:e}"
            )));
        }
        Ok(DensityOperator { matrix })
    }

    /// Projector onto a normalized ket.
    pub fn pure(ket: &CMatrix) -> Result<Self> {
        if !ket.is_column() {
            return Err(Error::shape("pure", "expected a column ket"));
        }
        if (ket.norm_sqr() - 1.0).abs() > MIXTURE_TOL {
            return Err(Error::validation("ket is not normalized"));
        }
        Self::new(ket.projector())
    }

    /// `I/n`.
    pub fn maximally_mixed(n: usize) -> Self {
        DensityOperator {
            matrix: CMatrix::identity(n).scale_real(1.0 / n as f64),
        }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn purity(&self) -> f64 {
        purity(self)
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eig(&self.matrix)
            .expect("validated density is Hermitian")
            .values
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()[0]
    }
}

/// `Σ p_m |φ_m⟩⟨φ_m|` in proper form. Kets need not be orthogonal.
#[derive(Debug, Clone, PartialEq)]
pub struct ProperMixture {
    terms: Vec<(f64, CMatrix)>,
}

impl ProperMixture {
    pub fn new(terms: Vec<(f64, CMatrix)>) -> Result<Self> {
        let Some((_, first)) = terms.first() else {
            return Err(Error::validation("mixture has no terms"));
        };
        let dim = first.rows();
        let mut total = 0.0;
        for (i, (p, ket)) in terms.iter().enumerate() {
            if ket.shape() != (dim, 1) {
                return Err(Error::shape(
                    "mixture",
                    format!("term {i} is {}x{}, expected {dim}x1", ket.rows(), ket.cols()),
                ));
            }
            if !p.is_finite() || *p < 0.0 {
                return Err(Error::validation(format!("weight {i} is {p}")));
            }
            if (ket.norm_sqr() - 1.0).abs() > MIXTURE_TOL {
                return Err(Error::validation(format!("ket {i} is not normalized")));
            }
            total += p;
        }
        if (total - 1.0).abs() > MIXTURE_TOL {
            return Err(Error::validation(format!("weights sum to {total}")));
        }
        Ok(ProperMixture { terms })
    }

    pub fn terms(&self) -> &[(f64, CMatrix)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.terms[0].1.rows()
    }

    pub fn weights(&self) -> Vec<f64> {
        self.terms.iter().map(|(p, _)| *p).collect()
    }

    /// Applies `f` to every ket, keeping weights. Used for evolving a
    /// mixture term by term.
    pub fn map_kets(&self, f: impl Fn(&CMatrix) -> CMatrix) -> Result<Self> {
        Self::new(self.terms.iter().map(|(p, k)| (*p, f(k))).collect())
    }
}

pub fn mixture_to_density(m: &ProperMixture) -> Result<DensityOperator> {
    let n = m.dim();
    let mut rho = CMatrix::zeros(n, n);
    for (p, ket) in m.terms() {
        rho += &ket.projector().scale_real(*p);
    }
    DensityOperator::new(rho)
}

/// `Tr(ρ²)`.
pub fn purity(d: &DensityOperator) -> f64 {
    let m = d.matrix();
    // Tr(ρ²) = Σ |ρ_mn|² for Hermitian ρ.
    m.norm_sqr()
}

pub fn is_pure(d: &DensityOperator) -> bool {
    purity(d) > 1.0 - PURE_TOL
}

/// Weighted expansion coefficients of a mixture in an orthonormal basis.
///
/// Row `k` holds `√p_k ⟨χ_m|φ_k⟩` over `m`, so the row norms squared are the
/// weights and `ρ_mn = Σ_k coeff_km conj(coeff_kn)`.
#[derive(Debug, Clone)]
pub struct GramFactor {
    coeff: CMatrix,
    basis: Vec<CMatrix>,
}

impl GramFactor {
    pub fn coeff(&self) -> &CMatrix {
        &self.coeff
    }

    pub fn basis(&self) -> &[CMatrix] {
        &self.basis
    }

    pub fn weights(&self) -> Vec<f64> {
        (0..self.coeff.rows()).map(|k| self.row_norm_sqr(k)).collect()
    }

    fn row_norm_sqr(&self, k: usize) -> f64 {
        (0..self.coeff.cols()).map(|m| self.coeff[(k, m)].norm_sqr()).sum()
    }

    /// Density components `ρ_mn` in the factor's basis.
    pub fn density_in_basis(&self) -> CMatrix {
        let a = &self.coeff;
        let n = a.cols();
        CMatrix::from_fn(n, n, |m, k| {
            (0..a.rows()).map(|j| a[(j, m)] * a[(j, k)].conj()).sum()
        })
    }

    /// The product `â†â`. It equals the transpose of [`Self::density_in_basis`].
    pub fn adjoint_product(&self) -> CMatrix {
        &self.coeff.adjoint() * &self.coeff
    }

    /// The density in the standard basis: `Σ_mn ρ_mn |χ_m⟩⟨χ_n|`.
    pub fn density(&self) -> CMatrix {
        let comps = self.density_in_basis();
        let dim = self.basis[0].rows();
        let mut rho = CMatrix::zeros(dim, dim);
        for (m, chi_m) in self.basis.iter().enumerate() {
            for (n, chi_n) in self.basis.iter().enumerate() {
                rho += &chi_m.outer(chi_n).scale(comps[(m, n)]);
            }
        }
        rho
    }
}

pub fn gram_factor(m: &ProperMixture, basis: &[CMatrix]) -> Result<GramFactor> {
    check_orthonormal_basis(basis, m.dim(), 1e-10)?;
    let coeff = CMatrix::from_fn(m.len(), basis.len(), |k, j| {
        let (p, ket) = &m.terms()[k];
        basis[j].inner(ket) * p.sqrt()
    });
    Ok(GramFactor {
        coeff,
        basis: basis.to_vec(),
    })
}

/// New proper mixture of the same density from `b̂ = u·â`.
pub fn remix(g: &GramFactor, u: &CMatrix) -> Result<ProperMixture> {
    if u.shape() != (g.coeff.rows(), g.coeff.rows()) {
        return Err(Error::shape(
            "remix",
            format!(
                "unitary is {}x{}, mixture has {} terms",
                u.rows(),
                u.cols(),
                g.coeff.rows()
            ),
        ));
    }
    if !u.is_unitary(1e-10) {
        return Err(Error::validation("remix matrix is not unitary"));
    }
    let b = u * &g.coeff;
    let dim = g.basis[0].rows();
    let mut terms = Vec::new();
    for k in 0..b.rows() {
        let w: f64 = (0..b.cols()).map(|m| b[(k, m)].norm_sqr()).sum();
        if w < ZERO_ROW_TOL {
            continue;
        }
        let scale = 1.0 / w.sqrt();
        let mut ket = CMatrix::zeros(dim, 1);
        for (m, chi) in g.basis.iter().enumerate() {
            ket += &chi.scale(b[(k, m)] * scale);
        }
        terms.push((w, ket));
    }
    // Re-normalize against rounding so the mixture validates at 1e-12.
    let total: f64 = terms.iter().map(|(w, _)| w).sum();
    let terms = terms
        .into_iter()
        .map(|(w, k)| (w / total, k.normalized()))
        .collect();
    ProperMixture::new(terms)
}

fn check_dims(op: &'static str, d: &DensityOperator, m: &CMatrix) -> Result<()> {
    if m.shape() != (d.dim(), d.dim()) {
        return Err(Error::shape(
            op,
            format!("operator is {}x{}, density is {}x{}", m.rows(), m.cols(), d.dim(), d.dim()),
        ));
    }
    Ok(())
}

/// `Tr(ρK)` for Hermitian `K`.
pub fn expectation(d: &DensityOperator, obs: &CMatrix) -> Result<f64> {
    check_dims("expectation", d, obs)?;
    obs.require_hermitian()?;
    Ok(d.matrix().matmul(obs)?.trace()?.re)
}

/// `Σ p_m ⟨φ_m|K|φ_m⟩`.
pub fn mixture_expectation(m: &ProperMixture, obs: &CMatrix) -> Result<f64> {
    if obs.shape() != (m.dim(), m.dim()) {
        return Err(Error::shape("expectation", "observable does not match mixture"));
    }
    obs.require_hermitian()?;
    Ok(m.terms()
        .iter()
        .map(|(p, k)| p * k.inner(&(obs * k)).re)
        .sum())
}

/// `e^{−iHt} ρ e^{iHt}`.
pub fn evolve_unitary(d: &DensityOperator, h: &CMatrix, t: f64) -> Result<DensityOperator> {
    check_dims("evolve_unitary", d, h)?;
    let u = unitary_propagator(h, t)?;
    let out = &(&u * d.matrix()) * &u.adjoint();
    DensityOperator::new(out.hermitian_part())
}

/// Mixture evolved ket by ket under `e^{−iHt}`.
pub fn evolve_mixture(m: &ProperMixture, h: &CMatrix, t: f64) -> Result<ProperMixture> {
    let u = unitary_propagator(h, t)?;
    let out = m.terms().iter().map(|(p, k)| (*p, (&u * k).normalized())).collect();
    ProperMixture::new(out)
}

fn measurement_projectors(basis: &[CMatrix], dim: usize) -> Result<Vec<CMatrix>> {
    check_orthonormal_basis(basis, dim, 1e-10)?;
    Ok(basis.iter().map(CMatrix::projector).collect())
}

/// `Σ_m R_m ρ R_m` with `R_m = |χ_m⟩⟨χ_m|`.
pub fn measurement_channel(d: &DensityOperator, basis: &[CMatrix]) -> Result<DensityOperator> {
    let proj = measurement_projectors(basis, d.dim())?;
    let mut out = CMatrix::zeros(d.dim(), d.dim());
    for r in &proj {
        out += &(&(r * d.matrix()) * r);
    }
    DensityOperator::new(out.hermitian_part())
}

/// `Σ_m Tr(ρ R_m) R_m`, the probability form of the same channel.
pub fn measurement_channel_probabilities(
    d: &DensityOperator,
    basis: &[CMatrix],
) -> Result<DensityOperator> {
    let proj = measurement_projectors(basis, d.dim())?;
    let mut out = CMatrix::zeros(d.dim(), d.dim());
    for r in &proj {
        let p = d.matrix().matmul(r)?.trace()?.re;
        out += &r.scale_real(p);
    }
    DensityOperator::new(out)
}

/// Outcome probabilities `⟨χ_m|ρ|χ_m⟩`.
pub fn outcome_probabilities(d: &DensityOperator, basis: &[CMatrix]) -> Result<Vec<f64>> {
    check_orthonormal_basis(basis, d.dim(), 1e-10)?;
    Ok(basis
        .iter()
        .map(|chi| chi.inner(&(d.matrix() * chi)).re)
        .collect())
}

/// Components `⟨χ_m|ρ|χ_n⟩` of a density in an orthonormal basis.
pub fn components_in_basis(d: &DensityOperator, basis: &[CMatrix]) -> Result<CMatrix> {
    check_orthonormal_basis(basis, d.dim(), 1e-10)?;
    let n = basis.len();
    Ok(CMatrix::from_fn(n, n, |m, k| basis[m].inner(&(d.matrix() * &basis[k]))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{c, r, I, ONE, ZERO};
    use num_complex::Complex64;
    use crate::random::Sampler;
    use crate::spin::{pauli, Axis, SpinHalfBasis};
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn xy_mixture() -> ProperMixture {
        let b = SpinHalfBasis::new();
        ProperMixture::new(vec![(0.5, b.x_plus.clone()), (0.5, b.y_plus.clone())]).unwrap()
    }

    fn xy_projector_sum() -> CMatrix {
        let b = SpinHalfBasis::new();
        (&b.x_plus.projector() + &b.y_plus.projector()).scale_real(0.5)
    }

    #[test]
    fn rejects_invalid_densities() {
        let not_herm = CMatrix::from_rows(&[[r(0.5), ONE], [ZERO, r(0.5)]]);
        assert!(matches!(DensityOperator::new(not_herm), Err(Error::NotHermitian { .. })));
        assert!(DensityOperator::new(CMatrix::real_diag(&[0.7, 0.7])).is_err());
        assert!(DensityOperator::new(CMatrix::real_diag(&[1.2, -0.2])).is_err());
        assert!(DensityOperator::new(CMatrix::zeros(2, 3)).is_err());
        assert!(DensityOperator::new(CMatrix::real_diag(&[0.25, 0.75])).is_ok());
    }

    #[test]
    fn rejects_invalid_mixtures() {
        let z = CMatrix::basis_ket(2, 0);
        assert!(ProperMixture::new(vec![(0.5, z.clone())]).is_err());
        assert!(ProperMixture::new(vec![(1.0, z.scale_real(2.0))]).is_err());
        assert!(ProperMixture::new(vec![(1.5, z.clone()), (-0.5, z.clone())]).is_err());
        assert!(ProperMixture::new(vec![]).is_err());
    }

    #[test]
    fn xy_mixture_density() {
        let rho = mixture_to_density(&xy_mixture()).unwrap();
        let expected = CMatrix::from_rows(&[[r(0.5), c(0.25, -0.25)], [c(0.25, 0.25), r(0.5)]]);
        assert!(rho.matrix().approx_eq(&expected, 1e-15));
        assert!(rho.matrix().approx_eq(&xy_projector_sum(), 1e-15));
        assert!((rho.matrix()[(0, 1)].norm() - 2f64.sqrt() / 4.0).abs() < 1e-15);
    }

    #[test]
    fn single_pure_term() {
        let m = ProperMixture::new(vec![(1.0, CMatrix::basis_ket(2, 0))]).unwrap();
        let rho = mixture_to_density(&m).unwrap();
        assert_eq!(rho.matrix(), &CMatrix::real_diag(&[1.0, 0.0]));
        assert!(is_pure(&rho));
    }

    #[test]
    fn alternate_mixture_same_density() {
        let b = SpinHalfBasis::new();
        let chi1 = (&b.x_plus + &b.y_plus).scale_real(1.0 / 3f64.sqrt());
        let chi2 = &b.x_plus - &b.y_plus;
        let m = ProperMixture::new(vec![(0.75, chi1), (0.25, chi2)]).unwrap();
        let rho = mixture_to_density(&m).unwrap();
        assert!(rho.matrix().approx_eq(&xy_projector_sum(), 1e-15));
    }

    #[test]
    fn purity_values() {
        let p = DensityOperator::pure(&SpinHalfBasis::new().y_plus).unwrap();
        assert!((purity(&p) - 1.0).abs() < 1e-15);
        assert!((purity(&DensityOperator::maximally_mixed(2)) - 0.5).abs() < 1e-15);
        let d = DensityOperator::new(CMatrix::real_diag(&[0.75, 0.25])).unwrap();
        assert!((purity(&d) - 0.625).abs() < 1e-15);
        assert!(!is_pure(&d));
    }

    #[test]
    fn purity_matches_trace_of_square() {
        let mut s = Sampler::new(21);
        for n in 2..=5 {
            let d = s.density(n);
            let sq = (d.matrix() * d.matrix()).trace().unwrap().re;
            assert!((purity(&d) - sq).abs() < 1e-14);
            assert!(purity(&d) > 0.0 && purity(&d) <= 1.0);
        }
    }

    #[test]
    fn gram_factor_of_xy_mixture() {
        let b = SpinHalfBasis::new();
        let basis = b.basis(Axis::Z);
        let g = gram_factor(&xy_mixture(), &basis).unwrap();
        let h = FRAC_1_SQRT_2;
        // unscaled rows are the expansion coefficients; each weight is ½
        let unscaled = g.coeff().scale_real(2f64.sqrt());
        let expected = CMatrix::from_rows(&[[r(h), r(h)], [r(h), c(0.0, h)]]);
        assert!(unscaled.approx_eq(&expected, 1e-15));
        for w in g.weights() {
            assert!((w - 0.5).abs() < 1e-15);
        }
        assert!(g.density().approx_eq(&xy_projector_sum(), 1e-15));
        assert!(g.adjoint_product().approx_eq(&xy_projector_sum().transpose(), 1e-15));
    }

    #[test]
    fn gram_factor_of_pure_state() {
        let m = ProperMixture::new(vec![(1.0, CMatrix::basis_ket(2, 0))]).unwrap();
        let g = gram_factor(&m, &SpinHalfBasis::new().basis(Axis::Z)).unwrap();
        assert_eq!(g.coeff(), &CMatrix::from_real_rows(&[[1.0, 0.0]]));
    }

    #[test]
    fn gram_factor_rejects_bad_basis() {
        let bad = vec![CMatrix::basis_ket(2, 0), CMatrix::basis_ket(2, 0)];
        assert!(gram_factor(&xy_mixture(), &bad).is_err());
    }

    #[test]
    fn gram_factor_random_weights_and_reconstruction() {
        let mut s = Sampler::new(8);
        for n in 2..=5 {
            let m = s.mixture(n, 4);
            let basis = s.basis(n);
            let g = gram_factor(&m, &basis).unwrap();
            for (w, p) in g.weights().iter().zip(m.weights()) {
                assert!((w - p).abs() < 1e-12);
            }
            let rho = mixture_to_density(&m).unwrap();
            assert!(g.density().approx_eq(rho.matrix(), 1e-12));
            let comps = components_in_basis(&rho, &basis).unwrap();
            assert!(g.density_in_basis().approx_eq(&comps, 1e-12));
        }
    }

    #[test]
    fn remix_hadamard_example() {
        let b = SpinHalfBasis::new();
        let g = gram_factor(&xy_mixture(), &b.basis(Axis::Z)).unwrap();
        let h = FRAC_1_SQRT_2;
        let u = CMatrix::from_real_rows(&[[h, h], [h, -h]]);
        let m = remix(&g, &u).unwrap();
        let w = m.weights();
        assert!((w[0] - 0.75).abs() < 1e-12);
        assert!((w[1] - 0.25).abs() < 1e-12);

        let chi1 = (&b.x_plus + &b.y_plus).scale_real(1.0 / 3f64.sqrt());
        let chi2 = (&b.x_plus - &b.y_plus).normalized();
        // equal up to a global phase
        assert!(m.terms()[0].1.inner(&chi1).norm() > 1.0 - 1e-12);
        assert!(m.terms()[1].1.inner(&chi2).norm() > 1.0 - 1e-12);
        let explicit = CMatrix::column(&[r((2.0f64 / 3.0).sqrt()), c(1.0, 1.0) / 6f64.sqrt()]);
        assert!(m.terms()[0].1.approx_eq(&explicit, 1e-12));
        assert!(mixture_to_density(&m).unwrap().matrix().approx_eq(&xy_projector_sum(), 1e-12));
    }

    #[test]
    fn remix_identity_is_original() {
        let mut s = Sampler::new(2);
        let m = s.mixture(3, 3);
        let g = gram_factor(&m, &s.basis(3)).unwrap();
        let out = remix(&g, &CMatrix::identity(3)).unwrap();
        for ((p, k), (q, k2)) in m.terms().iter().zip(out.terms()) {
            assert!((p - q).abs() < 1e-12);
            assert!(k.inner(k2).norm() > 1.0 - 1e-12);
        }
    }

    #[test]
    fn remix_random_unitaries_preserve_density() {
        let mut s = Sampler::new(33);
        let m = s.mixture(3, 3);
        let g = gram_factor(&m, &s.basis(3)).unwrap();
        let rho = mixture_to_density(&m).unwrap();
        for _ in 0..50 {
            let u = s.unitary(3);
            let out = mixture_to_density(&remix(&g, &u).unwrap()).unwrap();
            assert!(out.matrix().approx_eq(rho.matrix(), 1e-11));
        }
    }

    #[test]
    fn remix_drops_zero_rows() {
        // two copies of one ket: a rotation can concentrate all weight in one row
        let z = CMatrix::basis_ket(2, 0);
        let m = ProperMixture::new(vec![(0.5, z.clone()), (0.5, z)]).unwrap();
        let g = gram_factor(&m, &SpinHalfBasis::new().basis(Axis::Z)).unwrap();
        let h = FRAC_1_SQRT_2;
        let out = remix(&g, &CMatrix::from_real_rows(&[[h, h], [h, -h]])).unwrap();
        assert_eq!(out.len(), 1);
        assert!((out.weights()[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn remix_rejects_non_unitary() {
        let g = gram_factor(&xy_mixture(), &SpinHalfBasis::new().basis(Axis::Z)).unwrap();
        assert!(remix(&g, &CMatrix::real_diag(&[1.0, 2.0])).is_err());
        assert!(remix(&g, &CMatrix::identity(3)).is_err());
    }

    #[test]
    fn expectation_examples() {
        let sz = pauli(Axis::Z);
        assert!(expectation(&DensityOperator::maximally_mixed(2), &sz).unwrap().abs() < 1e-15);
        let mut s = Sampler::new(4);
        let zp = DensityOperator::pure(&CMatrix::basis_ket(2, 0)).unwrap();
        for _ in 0..10 {
            let chi = s.ket(2);
            let v = expectation(&zp, &chi.projector()).unwrap();
            assert!((v - chi[(0, 0)].norm_sqr()).abs() < 1e-14);
        }
        assert!(matches!(
            expectation(&zp, &CMatrix::identity(3)),
            Err(Error::Shape { .. })
        ));
    }

    #[test]
    fn expectation_mixture_form_agrees() {
        let mut s = Sampler::new(99);
        for i in 0..100 {
            let n = 2 + i % 4;
            let m = s.mixture(n, 1 + i % 5);
            let k = s.hermitian(n);
            let d = mixture_to_density(&m).unwrap();
            let a = expectation(&d, &k).unwrap();
            let b = mixture_expectation(&m, &k).unwrap();
            assert!((a - b).abs() < 1e-11);
            let full = d.matrix().matmul(&k).unwrap().trace().unwrap();
            assert!(full.im.abs() < 1e-12);
        }
    }

    #[test]
    fn unitary_evolution_at_zero_time() {
        let mut s = Sampler::new(6);
        let d = s.density(3);
        let out = evolve_unitary(&d, &s.hermitian(3), 0.0).unwrap();
        assert!(out.matrix().approx_eq(d.matrix(), 1e-14));
    }

    #[test]
    fn larmor_rotation_of_x_plus() {
        let b = SpinHalfBasis::new();
        let d = DensityOperator::pure(&b.x_plus).unwrap();
        let sz = pauli(Axis::Z);
        // oracle: diag(e^{-it}, e^{it}) applied to |x+⟩
        for t in [PI / 4.0, PI / 2.0, 3.0 * PI / 4.0, 1.3] {
            let ket = CMatrix::column(&[
                Complex64::from_polar(FRAC_1_SQRT_2, -t),
                Complex64::from_polar(FRAC_1_SQRT_2, t),
            ]);
            let out = evolve_unitary(&d, &sz, t).unwrap();
            assert!(out.matrix().approx_eq(&ket.projector(), 1e-10));
        }
        let at = |t: f64| evolve_unitary(&d, &sz, t).unwrap().into_matrix();
        assert!(at(PI / 4.0).approx_eq(&b.y_plus.projector(), 1e-10));
        assert!(at(PI / 2.0).approx_eq(&b.x_minus.projector(), 1e-10));
        assert!(at(3.0 * PI / 4.0).approx_eq(&b.y_minus.projector(), 1e-10));
    }

    #[test]
    fn unitary_evolution_preserves_spectrum() {
        let mut s = Sampler::new(17);
        for n in 2..=5 {
            let d = s.density(n);
            let h = s.hermitian(n);
            let t = s.uniform_range(-3.0, 3.0);
            let out = evolve_unitary(&d, &h, t).unwrap();
            assert!((purity(&out) - purity(&d)).abs() < 1e-11);
            for (a, b) in out.eigenvalues().iter().zip(d.eigenvalues()) {
                assert!((a - b).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn measurement_fixed_point_and_born_rule() {
        let b = SpinHalfBasis::new();
        let zb = b.basis(Axis::Z);
        let diag = DensityOperator::new(CMatrix::real_diag(&[0.3, 0.7])).unwrap();
        assert!(measurement_channel(&diag, &zb).unwrap().matrix().approx_eq(diag.matrix(), 1e-15));
        let xp = DensityOperator::pure(&b.x_plus).unwrap();
        let out = measurement_channel(&xp, &zb).unwrap();
        assert!(out.matrix().approx_eq(&CMatrix::identity(2).scale_real(0.5), 1e-15));
    }

    #[test]
    fn measurement_rejects_incomplete_basis() {
        let d = DensityOperator::maximally_mixed(2);
        assert!(measurement_channel(&d, &[CMatrix::basis_ket(2, 0)]).is_err());
    }

    #[test]
    fn measurement_forms_agree_and_are_diagonal() {
        let mut s = Sampler::new(41);
        for n in 2..=5 {
            let d = s.density(n);
            let basis = s.basis(n);
            let a = measurement_channel(&d, &basis).unwrap();
            let b = measurement_channel_probabilities(&d, &basis).unwrap();
            assert!(a.matrix().approx_eq(b.matrix(), 1e-12));
            let comps = components_in_basis(&a, &basis).unwrap();
            let probs = outcome_probabilities(&d, &basis).unwrap();
            for m in 0..n {
                for k in 0..n {
                    let want = if m == k { probs[m] } else { 0.0 };
                    assert!((comps[(m, k)] - r(want)).norm() < 1e-12);
                }
            }
            assert!((a.matrix().trace().unwrap() - ONE).norm() < 1e-12);
            assert!(purity(&a) <= purity(&d) + 1e-12);
        }
    }

    #[test]
    fn measurement_of_pure_state_is_not_unitary() {
        let mut s = Sampler::new(13);
        for n in 2..=4 {
            let d = s.pure_density(n);
            let out = measurement_channel(&d, &s.basis(n)).unwrap();
            assert!(purity(&out) < 1.0 - 1e-6);
        }
    }

    #[test]
    fn evolution_depends_only_on_density() {
        let mut s = Sampler::new(55);
        let m = s.mixture(3, 3);
        let g = gram_factor(&m, &s.basis(3)).unwrap();
        let m2 = remix(&g, &s.unitary(3)).unwrap();
        let d1 = mixture_to_density(&m).unwrap();
        let d2 = mixture_to_density(&m2).unwrap();
        let h = s.hermitian(3);
        let basis = s.basis(3);

        let u1 = mixture_to_density(&evolve_mixture(&m, &h, 0.8).unwrap()).unwrap();
        let u2 = mixture_to_density(&evolve_mixture(&m2, &h, 0.8).unwrap()).unwrap();
        assert!(u1.matrix().approx_eq(u2.matrix(), 1e-11));
        assert!(u1.matrix().approx_eq(evolve_unitary(&d1, &h, 0.8).unwrap().matrix(), 1e-11));

        let a = measurement_channel(&d1, &basis).unwrap();
        let b = measurement_channel(&d2, &basis).unwrap();
        assert!(a.matrix().approx_eq(b.matrix(), 1e-11));
    }

    #[test]
    fn sigma_y_expectation_on_y_plus() {
        let d = DensityOperator::pure(&SpinHalfBasis::new().y_plus).unwrap();
        let v = expectation(&d, &CMatrix::from_rows(&[[ZERO, -I], [I, ZERO]])).unwrap();
        assert!((v - 1.0).abs() < 1e-15);
    }
}
