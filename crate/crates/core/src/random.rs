//! Seeded generators for random states, observables, unitaries and channels.
//!
//! Everything draws from ChaCha8, so a given seed yields the same objects on
//! every platform.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::density::{DensityOperator, ProperMixture};
use crate::eigen::apply_matrix_function;
use crate::matrix::CMatrix;
use crate::spin::UnitVector3;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    pub fn uniform_range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }

    pub fn normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    pub fn complex_normal(&mut self) -> Complex64 {
        Complex64::new(self.normal(), self.normal())
    }

    /// Matrix with i.i.d. complex Gaussian entries.
    pub fn ginibre(&mut self, rows: usize, cols: usize) -> CMatrix {
        CMatrix::from_fn(rows, cols, |_, _| self.complex_normal())
    }

    pub fn ket(&mut self, n: usize) -> CMatrix {
        self.ginibre(n, 1).normalized()
    }

    pub fn hermitian(&mut self, n: usize) -> CMatrix {
        self.ginibre(n, n).hermitian_part()
    }

    /// Haar-distributed unitary via Gram-Schmidt on a Ginibre matrix.
    pub fn unitary(&mut self, n: usize) -> CMatrix {
        let g = self.ginibre(n, n);
        let mut cols: Vec<CMatrix> = Vec::with_capacity(n);
        for j in 0..n {
            let mut v = g.col(j);
            for q in &cols {
                let proj = q.inner(&v);
                v = &v - &q.scale(proj);
            }
            cols.push(v.normalized());
        }
        CMatrix::from_columns(&cols)
    }

    /// Full-rank random density `G G† / Tr(G G†)`.
    pub fn density(&mut self, n: usize) -> DensityOperator {
        let g = self.ginibre(n, n);
        let m = &g * &g.adjoint();
        let tr = m.trace().expect("square").re;
        DensityOperator::new(m.scale_real(1.0 / tr)).expect("Ginibre density is valid")
    }

    pub fn pure_density(&mut self, n: usize) -> DensityOperator {
        DensityOperator::new(self.ket(n).projector()).expect("projector is a density")
    }

    /// Mixture of `terms` random (non-orthogonal) kets with random weights.
    pub fn mixture(&mut self, n: usize, terms: usize) -> ProperMixture {
        let raw: Vec<f64> = (0..terms).map(|_| self.uniform_range(0.05, 1.0)).collect();
        let total: f64 = raw.iter().sum();
        let entries = raw
            .into_iter()
            .map(|w| (w / total, self.ket(n)))
            .collect();
        ProperMixture::new(entries).expect("random mixture is valid")
    }

    pub fn unit_vector(&mut self) -> UnitVector3 {
        loop {
            let (x, y, z) = (self.normal(), self.normal(), self.normal());
            let n = (x * x + y * y + z * z).sqrt();
            if n > 1e-6 {
                return UnitVector3::new(x / n, y / n, z / n).expect("normalized");
            }
        }
    }

    /// Random orthonormal basis of `C^n` (columns of a Haar unitary).
    pub fn basis(&mut self, n: usize) -> Vec<CMatrix> {
        let u = self.unitary(n);
        (0..n).map(|j| u.col(j)).collect()
    }

    /// `ops` random Kraus operators normalized so that `Σ K†K = I`.
    pub fn kraus_ops(&mut self, n: usize, ops: usize) -> Vec<CMatrix> {
        let raw: Vec<CMatrix> = (0..ops).map(|_| self.ginibre(n, n)).collect();
        let mut s = CMatrix::zeros(n, n);
        for k in &raw {
            s += &(&k.adjoint() * k);
        }
        let s_inv_sqrt = apply_matrix_function(&s, |x| 1.0 / x.sqrt())
            .expect("Σ K†K is positive definite");
        raw.iter().map(|k| k * &s_inv_sqrt).collect()
    }
}
