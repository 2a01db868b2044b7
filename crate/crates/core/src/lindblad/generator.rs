use num_complex::Complex64;

use crate::density::DensityOperator;
use crate::error::{Error, Result};
use crate::matrix::{CMatrix, I, ONE, ZERO};

/// `ℒρ = −i[H, ρ] + Σ_k (L_k ρ L_k† − ½{L_k† L_k, ρ})`.
#[derive(Debug, Clone)]
pub struct LindbladGenerator {
    hamiltonian: CMatrix,
    jump_ops: Vec<CMatrix>,
    /// Cached `Σ L†L`.
    decay: CMatrix,
}

impl LindbladGenerator {
    pub fn new(hamiltonian: CMatrix, jump_ops: Vec<CMatrix>) -> Result<Self> {
        if !hamiltonian.is_square() {
            return Err(Error::shape("generator", "Hamiltonian is not square"));
        }
        hamiltonian.require_hermitian()?;
        let n = hamiltonian.rows();
        let mut decay = CMatrix::zeros(n, n);
        for (i, l) in jump_ops.iter().enumerate() {
            if l.shape() != (n, n) {
                return Err(Error::shape(
                    "generator",
                    format!("jump operator {i} is {}x{}, expected {n}x{n}", l.rows(), l.cols()),
                ));
            }
            if !l.is_finite() {
                return Err(Error::validation(format!("jump operator {i} is not finite")));
            }
            decay += &(&l.adjoint() * l);
        }
        Ok(LindbladGenerator {
            hamiltonian,
            jump_ops,
            decay,
        })
    }

    /// Dissipation only.
    pub fn dissipative(dim: usize, jump_ops: Vec<CMatrix>) -> Result<Self> {
        Self::new(CMatrix::zeros(dim, dim), jump_ops)
    }

    pub fn dim(&self) -> usize {
        self.hamiltonian.rows()
    }

    pub fn hamiltonian(&self) -> &CMatrix {
        &self.hamiltonian
    }

    pub fn jump_ops(&self) -> &[CMatrix] {
        &self.jump_ops
    }

    /// `ℒρ` for any square matrix of matching size.
    pub fn apply(&self, rho: &CMatrix) -> Result<CMatrix> {
        let n = self.dim();
        if rho.shape() != (n, n) {
            return Err(Error::shape(
                "lindblad",
                format!("input is {}x{}, generator acts on {n}x{n}", rho.rows(), rho.cols()),
            ));
        }
        let mut out = self.hamiltonian.commutator(rho).scale(-I);
        for l in &self.jump_ops {
            out += &(&(l * rho) * &l.adjoint());
        }
        out = &out - &self.decay.anticommutator(rho).scale_real(0.5);
        Ok(out)
    }

    /// The generator as an `N² × N²` matrix acting on row-major `vec(ρ)`.
    pub fn matrix(&self) -> CMatrix {
        let n = self.dim();
        let mut g = CMatrix::zeros(n * n, n * n);
        for j in 0..n * n {
            let e = CMatrix::from_fn(n, n, |a, b| if a * n + b == j { ONE } else { ZERO });
            let col = self.apply(&e).expect("basis matrix has generator shape");
            for (i, z) in col.as_slice().iter().enumerate() {
                g[(i, j)] = *z;
            }
        }
        g
    }
}

/// `ℒρ` for a validated density.
pub fn lindblad_apply(g: &LindbladGenerator, d: &DensityOperator) -> Result<CMatrix> {
    g.apply(d.matrix())
}

/// Largest per-step trace drift tolerated before renormalization is
/// treated as a failure.
pub const MAX_TRACE_DRIFT: f64 = 1e-9;
/// Most negative eigenvalue tolerated in the integrated state.
pub const MIN_EIGENVALUE_FLOOR: f64 = -1e-6;

#[derive(Debug, Clone)]
pub struct Sample {
    pub t: f64,
    pub rho: DensityOperator,
}

/// Corrections applied while integrating.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct IntegrationDiagnostics {
    pub steps: usize,
    /// Largest `|Tr ρ − 1|` removed in one step.
    pub max_trace_drift: f64,
    /// Sum of all trace corrections.
    pub cumulative_trace_correction: f64,
    /// Largest `max |ρ − ρ†|` removed in one step.
    pub max_hermiticity_correction: f64,
    /// Smallest eigenvalue seen at any step.
    pub min_eigenvalue: f64,
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
    pub diagnostics: IntegrationDiagnostics,
}

impl Trajectory {
    pub fn last(&self) -> &Sample {
        self.samples.last().expect("trajectory has the initial sample")
    }
}

fn rk4_step(g: &LindbladGenerator, rho: &CMatrix, h: f64) -> Result<CMatrix> {
    let k1 = g.apply(rho)?;
    let k2 = g.apply(&(rho + &k1.scale_real(h / 2.0)))?;
    let k3 = g.apply(&(rho + &k2.scale_real(h / 2.0)))?;
    let k4 = g.apply(&(rho + &k3.scale_real(h)))?;
    let incr = &(&k1 + &k2.scale_real(2.0)) + &(&k3.scale_real(2.0) + &k4);
    Ok(rho + &incr.scale_real(h / 6.0))
}

/// Fixed-step RK4 from `0` to `t_end`, keeping every step.
pub fn evolve_lindblad(
    g: &LindbladGenerator,
    d0: &DensityOperator,
    t_end: f64,
    dt: f64,
) -> Result<Trajectory> {
    evolve_lindblad_sampled(g, d0, t_end, dt, 1)
}

/// Fixed-step RK4 keeping every `sample_every`-th step plus the endpoint.
///
/// Each step is Hermitized and renormalized to unit trace. A step fails if
/// the trace drifted by more than [`MAX_TRACE_DRIFT`], if an eigenvalue fell
/// below [`MIN_EIGENVALUE_FLOOR`], or if any entry stopped being finite.
pub fn evolve_lindblad_sampled(
    g: &LindbladGenerator,
    d0: &DensityOperator,
    t_end: f64,
    dt: f64,
    sample_every: usize,
) -> Result<Trajectory> {
    if !dt.is_finite() || dt <= 0.0 {
        return Err(Error::validation(format!("time step must be positive, got {dt}")));
    }
    if !t_end.is_finite() || t_end < 0.0 {
        return Err(Error::validation(format!("end time must be non-negative, got {t_end}")));
    }
    if sample_every == 0 {
        return Err(Error::validation("sample interval must be at least 1"));
    }
    if d0.dim() != g.dim() {
        return Err(Error::shape("evolve_lindblad", "density does not match generator"));
    }
    let steps = ((t_end / dt) - 1e-9).ceil().max(0.0) as usize;
    let mut diag = IntegrationDiagnostics {
        min_eigenvalue: d0.min_eigenvalue(),
        ..Default::default()
    };
    let mut samples = vec![Sample {
        t: 0.0,
        rho: d0.clone(),
    }];
    let mut rho = d0.matrix().clone();
    for step in 1..=steps {
        let t_prev = (step - 1) as f64 * dt;
        let t = if step == steps { t_end } else { step as f64 * dt };
        let next = rk4_step(g, &rho, t - t_prev)?;
        if !next.is_finite() {
            return Err(Error::Integration {
                time: t,
                invariant: "state became non-finite".into(),
            });
        }
        let herm = next.hermitian_part();
        diag.max_hermiticity_correction = diag.max_hermiticity_correction.max(next.max_abs_diff(&herm));
        let tr = herm.trace()?.re;
        let drift = (tr - 1.0).abs();
        if drift > MAX_TRACE_DRIFT {
            return Err(Error::Integration {
                time: t,
                invariant: format!("trace drifted by {drift:e} in one step"),
            });
        }
        diag.max_trace_drift = diag.max_trace_drift.max(drift);
        diag.cumulative_trace_correction += drift;
        rho = herm.scale_real(1.0 / tr);

        let min = crate::eigen::hermitian_eig(&rho)?.min_value();
        diag.min_eigenvalue = diag.min_eigenvalue.min(min);
        if min < MIN_EIGENVALUE_FLOOR {
            return Err(Error::Integration {
                time: t,
                invariant: format!("positivity lost (min eigenvalue {min:e})"),
            });
        }
        diag.steps = step;
        if step % sample_every == 0 || step == steps {
            let d = DensityOperator::new_with_tolerance(rho.clone(), -MIN_EIGENVALUE_FLOOR)?;
            samples.push(Sample { t, rho: d });
        }
    }
    Ok(Trajectory {
        samples,
        diagnostics: diag,
    })
}

/// Convenience for building `√γ A`.
pub fn scaled(op: &CMatrix, gamma: f64) -> CMatrix {
    op.scale(Complex64::new(gamma.sqrt(), 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::{evolve_unitary, measurement_channel};
    use crate::entropy::von_neumann_entropy;
    use crate::random::Sampler;
    use crate::spin::{pauli, Axis, SpinHalfBasis};

    fn random_generator(s: &mut Sampler, n: usize, jumps: usize, hermitian: bool) -> LindbladGenerator {
        let h = s.hermitian(n).scale_real(0.5);
        let ls = (0..jumps)
            .map(|_| {
                if hermitian {
                    s.hermitian(n).scale_real(0.4)
                } else {
                    s.ginibre(n, n).scale_real(0.4)
                }
            })
            .collect();
        LindbladGenerator::new(h, ls).unwrap()
    }

    #[test]
    fn rejects_bad_inputs() {
        let h = CMatrix::from_real_rows(&[[0.0, 1.0], [0.0, 0.0]]);
        assert!(LindbladGenerator::new(h, vec![]).is_err());
        assert!(LindbladGenerator::new(CMatrix::identity(2), vec![CMatrix::identity(3)]).is_err());
        let g = LindbladGenerator::new(CMatrix::identity(2), vec![]).unwrap();
        assert!(g.apply(&CMatrix::identity(3)).is_err());
    }

    #[test]
    fn hamiltonian_only_is_commutator_flow() {
        let mut s = Sampler::new(1);
        let h = s.hermitian(3);
        let g = LindbladGenerator::new(h.clone(), vec![]).unwrap();
        let d = s.density(3);
        let want = h.commutator(d.matrix()).scale(-I);
        assert!(lindblad_apply(&g, &d).unwrap().approx_eq(&want, 1e-14));
    }

    #[test]
    fn maximally_mixed_is_stationary_for_hermitian_jumps() {
        let mut s = Sampler::new(2);
        let ls = vec![s.hermitian(4), s.hermitian(4)];
        let g = LindbladGenerator::dissipative(4, ls).unwrap();
        let out = lindblad_apply(&g, &DensityOperator::maximally_mixed(4)).unwrap();
        assert!(out.max_abs() < 1e-14);
    }

    #[test]
    fn output_is_hermitian_and_traceless() {
        let mut s = Sampler::new(3);
        for i in 0..200 {
            let n = 2 + i % 4;
            let g = random_generator(&mut s, n, 1 + i % 3, false);
            let d = s.density(n);
            let out = lindblad_apply(&g, &d).unwrap();
            assert!(out.hermitian_deviation() < 1e-12);
            assert!(out.trace().unwrap().norm() < 1e-12);
        }
    }

    #[test]
    fn generator_matrix_matches_apply() {
        let mut s = Sampler::new(4);
        let g = random_generator(&mut s, 3, 2, false);
        let m = g.matrix();
        let d = s.density(3);
        let v = CMatrix::from_vec(9, 1, d.matrix().as_slice().to_vec()).unwrap();
        let out = &m * &v;
        let direct = g.apply(d.matrix()).unwrap();
        assert!(CMatrix::from_vec(3, 3, out.into_vec()).unwrap().approx_eq(&direct, 1e-13));
    }

    #[test]
    fn dephasing_closed_form() {
        let gamma = 1.0;
        let g = LindbladGenerator::dissipative(2, vec![scaled(&pauli(Axis::Z), gamma)]).unwrap();
        let d0 = DensityOperator::pure(&SpinHalfBasis::new().x_plus).unwrap();
        let traj = evolve_lindblad(&g, &d0, 2.0, 0.01).unwrap();
        assert_eq!(traj.samples.len(), 201);
        for s in &traj.samples {
            let want = 0.5 * (-2.0 * gamma * s.t).exp();
            assert!((s.rho.matrix()[(0, 1)].re - want).abs() < 1e-6);
            assert!(s.rho.matrix()[(0, 1)].im.abs() < 1e-12);
            assert!((s.rho.matrix()[(0, 0)].re - 0.5).abs() < 1e-12);
        }
        assert!((traj.last().t - 2.0).abs() < 1e-12);
    }

    #[test]
    fn fourth_order_convergence() {
        let g = LindbladGenerator::dissipative(2, vec![pauli(Axis::Z)]).unwrap();
        let d0 = DensityOperator::pure(&SpinHalfBasis::new().x_plus).unwrap();
        let exact = 0.5 * (-4.0f64).exp();
        let err = |dt: f64| {
            let traj = evolve_lindblad(&g, &d0, 2.0, dt).unwrap();
            (traj.last().rho.matrix()[(0, 1)].re - exact).abs()
        };
        let (coarse, fine) = (err(0.2), err(0.1));
        assert!(coarse / fine >= 8.0, "ratio {}", coarse / fine);
    }

    #[test]
    fn hamiltonian_only_matches_unitary_evolution() {
        let mut s = Sampler::new(5);
        let h = s.hermitian(3);
        let g = LindbladGenerator::new(h.clone(), vec![]).unwrap();
        let d0 = s.density(3);
        let traj = evolve_lindblad(&g, &d0, 1.0, 0.005).unwrap();
        let want = evolve_unitary(&d0, &h, 1.0).unwrap();
        assert!(traj.last().rho.matrix().approx_eq(want.matrix(), 1e-7));
    }

    #[test]
    fn entropy_non_decreasing_for_hermitian_jumps() {
        let mut s = Sampler::new(6);
        for i in 0..10 {
            let n = 2 + i % 3;
            let g = random_generator(&mut s, n, 2, true);
            let d0 = s.pure_density(n);
            let traj = evolve_lindblad(&g, &d0, 1.0, 0.01).unwrap();
            let ent: Vec<f64> = traj.samples.iter().map(|x| von_neumann_entropy(&x.rho).nats()).collect();
            for w in ent.windows(2) {
                assert!(w[1] - w[0] >= -1e-8);
            }
            for x in &traj.samples {
                assert!((x.rho.matrix().trace().unwrap().re - 1.0).abs() < 1e-8);
                assert!(x.rho.min_eigenvalue() > -1e-7);
            }
        }
    }

    #[test]
    fn strong_dephasing_reaches_measurement_fixed_point() {
        let mut s = Sampler::new(7);
        let basis = s.basis(3);
        let ls = basis.iter().map(|b| scaled(&b.projector(), 1.0)).collect();
        let g = LindbladGenerator::dissipative(3, ls).unwrap();
        let d0 = s.density(3);
        let traj = evolve_lindblad_sampled(&g, &d0, 20.0, 0.01, 100).unwrap();
        let want = measurement_channel(&d0, &basis).unwrap();
        assert!(traj.last().rho.matrix().approx_eq(want.matrix(), 1e-4));
    }

    #[test]
    fn sampling_interval_and_endpoint() {
        let g = LindbladGenerator::dissipative(2, vec![pauli(Axis::Z)]).unwrap();
        let d0 = DensityOperator::maximally_mixed(2);
        let traj = evolve_lindblad_sampled(&g, &d0, 1.05, 0.1, 5).unwrap();
        let ts: Vec<f64> = traj.samples.iter().map(|s| s.t).collect();
        assert_eq!(ts.len(), 4);
        assert!((ts[1] - 0.5).abs() < 1e-12 && (ts[2] - 1.0).abs() < 1e-12);
        assert!((ts[3] - 1.05).abs() < 1e-12);
        assert_eq!(traj.diagnostics.steps, 11);
    }

    #[test]
    fn unstable_step_is_reported() {
        let g = LindbladGenerator::dissipative(2, vec![scaled(&pauli(Axis::Z), 100.0)]).unwrap();
        let d0 = DensityOperator::pure(&SpinHalfBasis::new().x_plus).unwrap();
        let err = evolve_lindblad(&g, &d0, 1.0, 0.1).unwrap_err();
        assert!(matches!(err, Error::Integration { .. }), "{err}");
    }

    #[test]
    fn rejects_bad_step() {
        let g = LindbladGenerator::dissipative(2, vec![]).unwrap();
        let d0 = DensityOperator::maximally_mixed(2);
        assert!(evolve_lindblad(&g, &d0, 1.0, 0.0).is_err());
        assert!(evolve_lindblad(&g, &d0, -1.0, 0.1).is_err());
        assert_eq!(evolve_lindblad(&g, &d0, 0.0, 0.1).unwrap().samples.len(), 1);
    }
}
