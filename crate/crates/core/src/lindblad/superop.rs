use num_complex::Complex64;

use crate::eigen::hermitian_eig;
use crate::error::{Error, Result};
use crate::matrix::{CMatrix, HERMITIAN_TOL, ONE, ZERO};

/// Tolerance on `Σ K†K = I`.
pub const COMPLETENESS_TOL: f64 = 1e-10;
/// Eigenvalues of the superoperator matrix above `−CP_TOL` count as
/// non-negative.
pub const CP_TOL: f64 = 1e-9;

/// Linear map `ρ'_mn = Σ_kl M_{mknl} ρ_kl` on `N × N` matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct Superoperator {
    dim: usize,
    coeffs: Vec<Complex64>,
}

impl Superoperator {
    pub fn from_fn(dim: usize, f: impl Fn(usize, usize, usize, usize) -> Complex64) -> Self {
        let mut coeffs = Vec::with_capacity(dim.pow(4));
        for m in 0..dim {
            for k in 0..dim {
                for n in 0..dim {
                    for l in 0..dim {
                        coeffs.push(f(m, k, n, l));
                    }
                }
            }
        }
        Superoperator { dim, coeffs }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |m, k, n, l| if m == k && n == l { ONE } else { ZERO })
    }

    /// `ρ ↦ ρᵀ`: positive but not completely positive.
    pub fn transpose_map(dim: usize) -> Self {
        Self::from_fn(dim, |m, k, n, l| if m == l && k == n { ONE } else { ZERO })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn idx(&self, m: usize, k: usize, n: usize, l: usize) -> usize {
        let d = self.dim;
        ((m * d + k) * d + n) * d + l
    }

    pub fn coeff(&self, m: usize, k: usize, n: usize, l: usize) -> Complex64 {
        self.coeffs[self.idx(m, k, n, l)]
    }

    pub fn apply(&self, rho: &CMatrix) -> Result<CMatrix> {
        let d = self.dim;
        if rho.shape() != (d, d) {
            return Err(Error::shape(
                "superoperator",
                format!("input is {}x{}, map acts on {d}x{d}", rho.rows(), rho.cols()),
            ));
        }
        Ok(CMatrix::from_fn(d, d, |m, n| {
            let mut s = ZERO;
            for k in 0..d {
                for l in 0..d {
                    s += self.coeff(m, k, n, l) * rho[(k, l)];
                }
            }
            s
        }))
    }

    /// `N² × N²` matrix with row `(m, k)` and column `(n, l)`.
    pub fn as_matrix(&self) -> CMatrix {
        let d = self.dim;
        CMatrix::from_fn(d * d, d * d, |i, j| {
            self.coeff(i / d, i % d, j / d, j % d)
        })
    }

    /// `max |M_{mknl} − conj(M_{nlmk})|`; zero for maps that send Hermitian
    /// matrices to Hermitian matrices.
    pub fn hermiticity_deviation(&self) -> f64 {
        self.as_matrix().hermitian_deviation()
    }

    pub fn is_hermiticity_preserving(&self) -> bool {
        self.hermiticity_deviation() <= HERMITIAN_TOL
    }

    /// `max_kl |Σ_m M_{mkml} − δ_kl|`; zero for trace-preserving maps.
    pub fn trace_deviation(&self) -> f64 {
        let d = self.dim;
        let mut worst: f64 = 0.0;
        for k in 0..d {
            for l in 0..d {
                let s: Complex64 = (0..d).map(|m| self.coeff(m, k, m, l)).sum();
                let want = if k == l { ONE } else { ZERO };
                worst = worst.max((s - want).norm());
            }
        }
        worst
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Superoperator) -> Result<Superoperator> {
        if other.dim != self.dim {
            return Err(Error::shape("superoperator composition", "dimension mismatch"));
        }
        let d = self.dim;
        Ok(Self::from_fn(d, |m, k, n, l| {
            let mut s = ZERO;
            for a in 0..d {
                for b in 0..d {
                    s += other.coeff(m, a, n, b) * self.coeff(a, k, b, l);
                }
            }
            s
        }))
    }
}

/// `ρ ↦ Σ K ρ K†` with `Σ K†K = I`.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    ops: Vec<CMatrix>,
}

impl KrausChannel {
    pub fn new(ops: Vec<CMatrix>) -> Result<Self> {
        Self::new_with_tolerance(ops, COMPLETENESS_TOL)
    }

    pub fn new_with_tolerance(ops: Vec<CMatrix>, tol: f64) -> Result<Self> {
        let Some(first) = ops.first() else {
            return Err(Error::validation("Kraus set is empty"));
        };
        let d = first.rows();
        let mut sum = CMatrix::zeros(d, d);
        for (i, k) in ops.iter().enumerate() {
            if k.shape() != (d, d) {
                return Err(Error::shape(
                    "kraus",
                    format!("operator {i} is {}x{}, expected {d}x{d}", k.rows(), k.cols()),
                ));
            }
            sum += &(&k.adjoint() * k);
        }
        let dev = sum.max_abs_diff(&CMatrix::identity(d));
        if dev > tol {
            return Err(Error::validation(format!(
                "Kraus operators are incomplete: max |ΣK†K − I| = {dev:e}"
            )));
        }
        Ok(KrausChannel { ops })
    }

    pub fn ops(&self) -> &[CMatrix] {
        &self.ops
    }

    pub fn dim(&self) -> usize {
        self.ops[0].rows()
    }

    pub fn apply(&self, rho: &CMatrix) -> Result<CMatrix> {
        let d = self.dim();
        if rho.shape() != (d, d) {
            return Err(Error::shape("kraus", "input does not match channel dimension"));
        }
        let mut out = CMatrix::zeros(d, d);
        for k in &self.ops {
            out += &(&(k * rho) * &k.adjoint());
        }
        Ok(out)
    }

    /// `other ∘ self`, with operators `B_j A_i`.
    pub fn then(&self, other: &KrausChannel) -> Result<KrausChannel> {
        if other.dim() != self.dim() {
            return Err(Error::shape("kraus composition", "dimension mismatch"));
        }
        let mut ops = Vec::with_capacity(self.ops.len() * other.ops.len());
        for b in &other.ops {
            for a in &self.ops {
                ops.push(b * a);
            }
        }
        KrausChannel::new_with_tolerance(ops, 1e-9)
    }
}

/// `M_{mknl} = Σ_j K^j_{mk} conj(K^j_{nl})`.
pub fn superop_from_kraus(c: &KrausChannel) -> Superoperator {
    Superoperator::from_fn(c.dim(), |m, k, n, l| {
        c.ops().iter().map(|op| op[(m, k)] * op[(n, l)].conj()).sum()
    })
}

/// `M = Σ λ_i E^i ⊗ conj(E^i)`, i.e. `ρ' = Σ λ_i E^i ρ E^{i†}`.
#[derive(Debug, Clone)]
pub struct EigenmatrixDecomposition {
    pub eigenvalues: Vec<f64>,
    /// Orthonormal under `Tr(E^k E^{l†}) = δ_kl`.
    pub eigenmatrices: Vec<CMatrix>,
    /// All eigenvalues are at least `−CP_TOL`.
    pub completely_positive: bool,
}

impl EigenmatrixDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenmatrices[0].rows()
    }

    pub fn apply(&self, rho: &CMatrix) -> CMatrix {
        let mut out = CMatrix::zeros(rho.rows(), rho.cols());
        for (lam, e) in self.eigenvalues.iter().zip(&self.eigenmatrices) {
            out += &(&(e * rho) * &e.adjoint()).scale_real(*lam);
        }
        out
    }

    pub fn eigenvalue_sum(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }

    /// `Σ λ_i E^{i†} E^i`; the identity for trace-preserving maps.
    pub fn completeness(&self) -> CMatrix {
        let d = self.dim();
        let mut out = CMatrix::zeros(d, d);
        for (lam, e) in self.eigenvalues.iter().zip(&self.eigenmatrices) {
            out += &(&e.adjoint() * e).scale_real(*lam);
        }
        out
    }
}

pub fn eigenmatrix_decompose(s: &Superoperator) -> Result<EigenmatrixDecomposition> {
    let dev = s.hermiticity_deviation();
    if dev > HERMITIAN_TOL {
        return Err(Error::validation(format!(
            "superoperator does not preserve Hermiticity (deviation {dev:e})"
        )));
    }
    let d = s.dim();
    let eig = hermitian_eig(&s.as_matrix())?;
    let eigenmatrices = (0..eig.dim())
        .map(|j| CMatrix::from_fn(d, d, |m, k| eig.vectors[(m * d + k, j)]))
        .collect();
    let completely_positive = eig.values.iter().all(|&l| l >= -CP_TOL);
    Ok(EigenmatrixDecomposition {
        eigenvalues: eig.values,
        eigenmatrices,
        completely_positive,
    })
}

/// `K^i = √λ_i E^i`, with eigenvalues in `[−CP_TOL, 0]` clamped to zero and
/// their terms dropped.
pub fn kraus_from_decomposition(e: &EigenmatrixDecomposition) -> Result<KrausChannel> {
    let mut ops = Vec::new();
    for (lam, m) in e.eigenvalues.iter().zip(&e.eigenmatrices) {
        if *lam < -CP_TOL {
            return Err(Error::NotCompletelyPositive { eigenvalue: *lam });
        }
        if *lam > 0.0 {
            ops.push(m.scale_real(lam.sqrt()));
        }
    }
    KrausChannel::new_with_tolerance(ops, 1e-9)
}
