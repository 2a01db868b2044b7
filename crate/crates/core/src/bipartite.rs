//! Two-factor Hilbert spaces `H_a ⊗ H_b`.
//!
//! The product ket `|φ_m⟩|χ_n⟩` sits at flat index `m·dim_b + n`, matching the
//! block layout of [`CMatrix::kron`].

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::density::{DensityOperator, MIXTURE_TOL};
use crate::eigen::hermitian_eig;
use crate::error::{Error, Result};
use crate::matrix::{check_orthonormal_basis, r, CMatrix, ZERO};

/// Schmidt coefficients at or below this count as zero.
pub const SCHMIDT_RANK_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BipartiteSpace {
    dim_a: usize,
    dim_b: usize,
}

impl BipartiteSpace {
    pub fn new(dim_a: usize, dim_b: usize) -> Result<Self> {
        if dim_a == 0 || dim_b == 0 {
            return Err(Error::validation("factor dimensions must be at least 1"));
        }
        Ok(BipartiteSpace { dim_a, dim_b })
    }

    pub fn qubits() -> Self {
        BipartiteSpace { dim_a: 2, dim_b: 2 }
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn dim(&self) -> usize {
        self.dim_a * self.dim_b
    }

    /// Flat index of `(m, n)`.
    pub fn index(&self, m: usize, n: usize) -> usize {
        m * self.dim_b + n
    }

    fn require_square(&self, op: &'static str, x: &CMatrix) -> Result<()> {
        if x.shape() != (self.dim(), self.dim()) {
            return Err(Error::shape(
                op,
                format!(
                    "operator is {}x{}, space has dimension {}",
                    x.rows(),
                    x.cols(),
                    self.dim()
                ),
            ));
        }
        Ok(())
    }
}

/// A normalized ket on a bipartite space.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteKet {
    space: BipartiteSpace,
    amplitudes: CMatrix,
}

impl BipartiteKet {
    pub fn new(space: BipartiteSpace, amplitudes: CMatrix) -> Result<Self> {
        if amplitudes.shape() != (space.dim(), 1) {
            return Err(Error::shape(
                "bipartite ket",
                format!(
                    "amplitudes are {}x{}, expected {}x1",
                    amplitudes.rows(),
                    amplitudes.cols(),
                    space.dim()
                ),
            ));
        }
        if (amplitudes.norm_sqr() - 1.0).abs() > MIXTURE_TOL {
            return Err(Error::validation("bipartite ket is not normalized"));
        }
        Ok(BipartiteKet { space, amplitudes })
    }

    pub fn space(&self) -> BipartiteSpace {
        self.space
    }

    pub fn amplitudes(&self) -> &CMatrix {
        &self.amplitudes
    }

    /// `C_mn`, the amplitudes reshaped to `dim_a × dim_b`.
    pub fn coefficient_matrix(&self) -> CMatrix {
        let s = self.space;
        CMatrix::from_fn(s.dim_a, s.dim_b, |m, n| self.amplitudes[(s.index(m, n), 0)])
    }

    pub fn projector(&self) -> CMatrix {
        self.amplitudes.projector()
    }

    pub fn density(&self) -> DensityOperator {
        DensityOperator::new(self.projector()).expect("normalized ket gives a density")
    }
}

/// `|a⟩ ⊗ |b⟩`.
pub fn product_state(a_ket: &CMatrix, b_ket: &CMatrix) -> Result<BipartiteKet> {
    if !a_ket.is_column() || !b_ket.is_column() {
        return Err(Error::shape("product_state", "factors must be column kets"));
    }
    let space = BipartiteSpace::new(a_ket.rows(), b_ket.rows())?;
    BipartiteKet::new(space, a_ket.kron(b_ket))
}

/// `(|+−⟩ − |−+⟩)/√2`.
pub fn singlet() -> BipartiteKet {
    let h = FRAC_1_SQRT_2;
    BipartiteKet {
        space: BipartiteSpace::qubits(),
        amplitudes: CMatrix::real_column(&[0.0, h, -h, 0.0]),
    }
}

/// `ψ = Σ_k c_k |a_k⟩|b_k⟩` with only the coefficients above
/// [`SCHMIDT_RANK_TOL`] kept.
#[derive(Debug, Clone)]
pub struct SchmidtForm {
    pub coefficients: Vec<f64>,
    pub a_kets: Vec<CMatrix>,
    pub b_kets: Vec<CMatrix>,
}

impl SchmidtForm {
    pub fn rank(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_product(&self) -> bool {
        self.rank() == 1
    }

    pub fn reconstruct(&self) -> CMatrix {
        let dim = self.a_kets[0].rows() * self.b_kets[0].rows();
        let mut out = CMatrix::zeros(dim, 1);
        for ((c, a), b) in self.coefficients.iter().zip(&self.a_kets).zip(&self.b_kets) {
            out += &a.kron(b).scale_real(*c);
        }
        out
    }
}

/// Schmidt decomposition from the spectrum of `C†C`.
///
/// Each coefficient is recomputed as `‖C v_k‖`, which keeps vanishing
/// coefficients at rounding level instead of the square root of it.
pub fn schmidt(k: &BipartiteKet) -> SchmidtForm {
    let c = k.coefficient_matrix();
    let eig = hermitian_eig(&(&c.adjoint() * &c)).expect("C†C is Hermitian");
    let mut terms: Vec<(f64, CMatrix, CMatrix)> = (0..eig.dim())
        .map(|j| {
            let v = eig.vector(j);
            let cv = &c * &v;
            (cv.norm(), cv, v)
        })
        .filter(|(s, _, _)| *s > SCHMIDT_RANK_TOL)
        .collect();
    terms.sort_by(|x, y| y.0.total_cmp(&x.0));
    let mut form = SchmidtForm {
        coefficients: Vec::new(),
        a_kets: Vec::new(),
        b_kets: Vec::new(),
    };
    for (s, cv, v) in terms {
        form.coefficients.push(s);
        form.a_kets.push(cv.scale_real(1.0 / s));
        form.b_kets.push(v.conj());
    }
    form
}

/// `(Tr_b X)_{mk} = Σ_n X_{(m,n),(k,n)}`.
pub fn partial_trace_b(op: &CMatrix, space: BipartiteSpace) -> Result<CMatrix> {
    space.require_square("partial_trace_b", op)?;
    Ok(CMatrix::from_fn(space.dim_a, space.dim_a, |m, k| {
        (0..space.dim_b)
            .map(|n| op[(space.index(m, n), space.index(k, n))])
            .sum()
    }))
}

/// `(Tr_a X)_{nl} = Σ_m X_{(m,n),(m,l)}`.
pub fn partial_trace_a(op: &CMatrix, space: BipartiteSpace) -> Result<CMatrix> {
    space.require_square("partial_trace_a", op)?;
    Ok(CMatrix::from_fn(space.dim_b, space.dim_b, |n, l| {
        (0..space.dim_a)
            .map(|m| op[(space.index(m, n), space.index(m, l))])
            .sum()
    }))
}

/// Reduced density of `αΨ¹ + βΨ²` for product states `Ψ^i = Φ^i X^i`, in
/// closed form and directly.
#[derive(Debug, Clone)]
pub struct OverlapResidue {
    /// `|α|²P_{Φ¹} + |β|²P_{Φ²} + (αβ*⟨X²|X¹⟩|Φ¹⟩⟨Φ²| + h.c.)`.
    pub closed_form: CMatrix,
    /// `Tr_b |ψ⟩⟨ψ|`.
    pub direct: CMatrix,
    /// The bracketed interference term.
    pub cross_term: CMatrix,
    /// `⟨X²|X¹⟩`.
    pub b_overlap: Complex64,
    pub deviation: f64,
}

fn factor_product(psi: &BipartiteKet, label: &str) -> Result<(CMatrix, CMatrix)> {
    let form = schmidt(psi);
    if !form.is_product() {
        return Err(Error::validation(format!(
            "{label} has Schmidt rank {}, expected a product state",
            form.rank()
        )));
    }
    Ok((
        form.a_kets[0].scale_real(form.coefficients[0]),
        form.b_kets[0].clone(),
    ))
}

pub fn overlap_residue(
    alpha: Complex64,
    psi1: &BipartiteKet,
    beta: Complex64,
    psi2: &BipartiteKet,
) -> Result<OverlapResidue> {
    let space = psi1.space();
    if psi2.space() != space {
        return Err(Error::shape("overlap_residue", "components live in different spaces"));
    }
    let (phi1, x1) = factor_product(psi1, "first component")?;
    let (phi2, x2) = factor_product(psi2, "second component")?;
    let b_overlap = x2.inner(&x1);
    let half = phi1.outer(&phi2).scale(alpha * beta.conj() * b_overlap);
    let cross_term = &half + &half.adjoint();
    let closed_form = &(&phi1.projector().scale_real(alpha.norm_sqr())
        + &phi2.projector().scale_real(beta.norm_sqr()))
        + &cross_term;
    let psi = &psi1.amplitudes().scale(alpha) + &psi2.amplitudes().scale(beta);
    let direct = partial_trace_b(&psi.projector(), space)?;
    let deviation = closed_form.max_abs_diff(&direct);
    Ok(OverlapResidue {
        closed_form,
        direct,
        cross_term,
        b_overlap,
        deviation,
    })
}

fn factor_projectors(basis: Option<&[CMatrix]>, dim: usize) -> Result<Vec<CMatrix>> {
    match basis {
        Some(kets) => {
            check_orthonormal_basis(kets, dim, 1e-10)?;
            Ok(kets.iter().map(CMatrix::projector).collect())
        }
        None => Ok(vec![CMatrix::identity(dim)]),
    }
}

/// Projective measurement on either or both factors. A missing basis leaves
/// that factor untouched.
pub fn local_measurement(
    d: &DensityOperator,
    space: BipartiteSpace,
    basis_a: Option<&[CMatrix]>,
    basis_b: Option<&[CMatrix]>,
) -> Result<DensityOperator> {
    space.require_square("local_measurement", d.matrix())?;
    let ra = factor_projectors(basis_a, space.dim_a)?;
    let rb = factor_projectors(basis_b, space.dim_b)?;
    let mut out = CMatrix::zeros(space.dim(), space.dim());
    for pa in &ra {
        for pb in &rb {
            let r = pa.kron(pb);
            out += &(&(&r * d.matrix()) * &r);
        }
    }
    DensityOperator::new(out.hermitian_part())
}

/// `p_mn = Σ ρ_{(m'n'),(k'l')} A^m_{m'k'} B^n_{n'l'}` with
/// `A^m_{m'k'} = conj(φ_m[m']) φ_m[k']` and likewise for `B`.
pub fn joint_probabilities(
    d: &DensityOperator,
    space: BipartiteSpace,
    basis_a: &[CMatrix],
    basis_b: &[CMatrix],
) -> Result<Vec<Vec<f64>>> {
    space.require_square("joint_probabilities", d.matrix())?;
    check_orthonormal_basis(basis_a, space.dim_a, 1e-10)?;
    check_orthonormal_basis(basis_b, space.dim_b, 1e-10)?;
    let rho = d.matrix();
    let (da, db) = (space.dim_a, space.dim_b);
    let mut probs = vec![vec![0.0; db]; da];
    for (m, phi) in basis_a.iter().enumerate() {
        for (n, chi) in basis_b.iter().enumerate() {
            let mut p = ZERO;
            for mp in 0..da {
                for kp in 0..da {
                    let a = phi[(mp, 0)].conj() * phi[(kp, 0)];
                    for np in 0..db {
                        for lp in 0..db {
                            let b = chi[(np, 0)].conj() * chi[(lp, 0)];
                            p += rho[(space.index(mp, np), space.index(kp, lp))] * a * b;
                        }
                    }
                }
            }
            probs[m][n] = p.re;
        }
    }
    Ok(probs)
}

/// Post-measurement density `Σ_mn p_mn P_{φ_m} ⊗ P_{χ_n}` assembled from
/// [`joint_probabilities`].
pub fn double_contraction_density(
    d: &DensityOperator,
    space: BipartiteSpace,
    basis_a: &[CMatrix],
    basis_b: &[CMatrix],
) -> Result<CMatrix> {
    let p = joint_probabilities(d, space, basis_a, basis_b)?;
    let mut out = CMatrix::zeros(space.dim(), space.dim());
    for (m, phi) in basis_a.iter().enumerate() {
        for (n, chi) in basis_b.iter().enumerate() {
            out += &phi.projector().kron(&chi.projector()).scale(r(p[m][n]));
        }
    }
    Ok(out)
}

/// Reduced `b` density before and after a projective measurement on `a`.
pub fn no_signalling_check(
    d: &DensityOperator,
    space: BipartiteSpace,
    basis_a: &[CMatrix],
) -> Result<(CMatrix, CMatrix)> {
    let before = partial_trace_a(d.matrix(), space)?;
    let measured = local_measurement(d, space, Some(basis_a), None)?;
    let after = partial_trace_a(measured.matrix(), space)?;
    Ok((before, after))
}
