//! Von Neumann entropy and its rate of change under Hamiltonian and
//! dissipative dynamics. All logarithms are natural.

use crate::density::DensityOperator;
use crate::eigen::{hermitian_eig, HermitianEig};
use crate::error::{Error, Result};
use crate::matrix::{CMatrix, HERMITIAN_TOL};

/// Eigenvalues at or below this contribute nothing to `S`, and are raised to
/// this floor before taking logarithms in rate formulas.
pub const EIGENVALUE_FLOOR: f64 = 1e-14;

/// Entropy in nats.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct EntropyValue {
    nats: f64,
}

impl EntropyValue {
    pub fn nats(&self) -> f64 {
        self.nats
    }

    pub fn bits(&self) -> f64 {
        self.nats / std::f64::consts::LN_2
    }
}

/// An entropy rate. `regularized` is set when some eigenvalue of `ρ` was
/// floored before taking its logarithm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyRate {
    pub value: f64,
    pub regularized: bool,
}

/// `−Σ p log p` over the spectrum of `ρ`.
pub fn von_neumann_entropy(d: &DensityOperator) -> EntropyValue {
    let nats = d
        .eigenvalues()
        .into_iter()
        .filter(|&p| p > EIGENVALUE_FLOOR)
        .map(|p| -p * p.ln())
        .sum::<f64>()
        .max(0.0);
    EntropyValue { nats }
}

fn floored_log(eig: &HermitianEig) -> (Vec<f64>, bool) {
    let mut regularized = false;
    let logs = eig
        .values
        .iter()
        .map(|&p| {
            if p < EIGENVALUE_FLOOR {
                regularized = true;
                EIGENVALUE_FLOOR.ln()
            } else {
                p.ln()
            }
        })
        .collect();
    (logs, regularized)
}

/// `log ρ` with eigenvalues floored at [`EIGENVALUE_FLOOR`].
pub fn log_density(d: &DensityOperator) -> (CMatrix, bool) {
    let eig = hermitian_eig(d.matrix()).expect("density is Hermitian");
    let (logs, regularized) = floored_log(&eig);
    let n = eig.dim();
    let v = &eig.vectors;
    let m = CMatrix::from_fn(n, n, |i, j| {
        (0..n).map(|k| v[(i, k)] * logs[k] * v[(j, k)].conj()).sum()
    });
    (m, regularized)
}

/// `dS/dt = i Tr(log ρ [H, ρ])` for `ρ̇ = −i[H, ρ]`.
pub fn entropy_rate_hamiltonian(d: &DensityOperator, h: &CMatrix) -> Result<EntropyRate> {
    check_operator("entropy_rate_hamiltonian", d, h)?;
    h.require_hermitian()?;
    let (log_rho, regularized) = log_density(d);
    let comm = h.commutator(d.matrix());
    let tr = log_rho.matmul(&comm)?.trace()?;
    Ok(EntropyRate {
        value: (tr * crate::matrix::I).re,
        regularized,
    })
}

/// `dS/dt = −Tr(log ρ · ρ̇)` for an arbitrary `ρ̇`.
pub fn entropy_rate_along(d: &DensityOperator, rho_dot: &CMatrix) -> Result<EntropyRate> {
    check_operator("entropy_rate_along", d, rho_dot)?;
    let (log_rho, regularized) = log_density(d);
    Ok(EntropyRate {
        value: -log_rho.matmul(rho_dot)?.trace()?.re,
        regularized,
    })
}

/// `|L_mn|²` summed over jump operators, in the eigenbasis of `ρ`.
fn transition_weights(eig: &HermitianEig, jump_ops: &[CMatrix]) -> CMatrix {
    let n = eig.dim();
    let v = &eig.vectors;
    let mut lambda = CMatrix::zeros(n, n);
    for l in jump_ops {
        let lp = &(&v.adjoint() * l) * v;
        lambda += &lp.map(|z| z.norm_sqr().into());
    }
    lambda
}

/// Entropy production `½ Σ Λ_mn (p_n − p_m)(log p_n − log p_m)` for Hermitian
/// jump operators. Every term is non-negative.
pub fn entropy_production(d: &DensityOperator, jump_ops: &[CMatrix]) -> Result<EntropyRate> {
    for l in jump_ops {
        check_operator("entropy_production", d, l)?;
        let dev = l.hermitian_deviation();
        if dev > HERMITIAN_TOL {
            return Err(Error::validation(format!(
                "jump operator is not Hermitian (deviation {dev:e})"
            )));
        }
    }
    let eig = hermitian_eig(d.matrix())?;
    let (logs, regularized) = floored_log(&eig);
    let p: Vec<f64> = eig.values.iter().map(|&x| x.max(0.0)).collect();
    let lambda = transition_weights(&eig, jump_ops);
    let n = eig.dim();
    let mut total = 0.0;
    for m in 0..n {
        for k in 0..n {
            total += lambda[(m, k)].re * (p[k] - p[m]) * (logs[k] - logs[m]);
        }
    }
    Ok(EntropyRate {
        value: 0.5 * total,
        regularized,
    })
}

/// Dissipative entropy rate for arbitrary jump operators,
/// `−Σ_m log p_m [Σ_q p_q |L_mq|² − p_m Σ_q |L_qm|²]`, evaluated in the
/// eigenbasis of `ρ`. Its sign is not fixed unless the `L` are Hermitian.
pub fn dissipative_entropy_rate(d: &DensityOperator, jump_ops: &[CMatrix]) -> Result<EntropyRate> {
    for l in jump_ops {
        check_operator("dissipative_entropy_rate", d, l)?;
    }
    let eig = hermitian_eig(d.matrix())?;
    let (logs, regularized) = floored_log(&eig);
    let p: Vec<f64> = eig.values.iter().map(|&x| x.max(0.0)).collect();
    let lambda = transition_weights(&eig, jump_ops);
    let n = eig.dim();
    let mut total = 0.0;
    for m in 0..n {
        let gain: f64 = (0..n).map(|q| p[q] * lambda[(m, q)].re).sum();
        let loss: f64 = (0..n).map(|q| lambda[(q, m)].re).sum::<f64>() * p[m];
        total -= logs[m] * (gain - loss);
    }
    Ok(EntropyRate {
        value: total,
        regularized,
    })
}

fn check_operator(op: &'static str, d: &DensityOperator, x: &CMatrix) -> Result<()> {
    if x.shape() != (d.dim(), d.dim()) {
        return Err(Error::shape(
            op,
            format!("operator is {}x{}, density is {}x{}", x.rows(), x.cols(), d.dim(), d.dim()),
        ));
    }
    Ok(())
}
