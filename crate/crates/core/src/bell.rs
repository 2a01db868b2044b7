//! Singlet correlations, Bell-type inequalities, the GHZ contradiction,
//! Monte Carlo outcome sampling and the no-cloning argument.

use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bipartite::{joint_probabilities, singlet, BipartiteSpace};
use crate::density::{expectation, DensityOperator};
use crate::eigen::hermitian_eig;
use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::spin::{pauli, sigma_n, sigma_n_eigenkets, Axis, UnitVector3};

/// Bound on `|⟨X⟩|` for local realistic models.
pub const CLASSICAL_CHSH_BOUND: f64 = 2.0;
/// Largest quantum value of `⟨X⟩`.
pub const TSIRELSON_BOUND: f64 = 2.0 * SQRT_2;

/// Detector orientations for the two observers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectorPair {
    pub a: UnitVector3,
    pub b: UnitVector3,
}

impl DetectorPair {
    pub fn new(a: UnitVector3, b: UnitVector3) -> Self {
        DetectorPair { a, b }
    }
}

/// One tabulated observation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EventRecord {
    pub a: UnitVector3,
    pub b: UnitVector3,
    pub outcome_a: i8,
    pub outcome_b: i8,
}

fn singlet_density() -> DensityOperator {
    singlet().density()
}

/// `(σ·a) ⊗ (σ·b)`.
pub fn correlation_operator(p: &DetectorPair) -> CMatrix {
    sigma_n(&p.a).kron(&sigma_n(&p.b))
}

/// `⟨(σ₁·a)(σ₂·b)⟩` in the singlet.
pub fn singlet_correlation(p: &DetectorPair) -> f64 {
    expectation(&singlet_density(), &correlation_operator(p)).expect("2-qubit operator")
}

/// `⟨S²⟩ − ⟨S⟩²` for `S = (σ₁·a)(σ₂·b)` in the singlet.
pub fn singlet_variance(p: &DetectorPair) -> f64 {
    let s = correlation_operator(p);
    let d = singlet_density();
    let mean = expectation(&d, &s).expect("2-qubit operator");
    let sq = expectation(&d, &(&s * &s)).expect("2-qubit operator");
    sq - mean * mean
}

/// `S = (σ₁·a) σ_{2z}`, the correlation operator with `b` along `ẑ`.
pub fn s_operator(a: &UnitVector3) -> CMatrix {
    sigma_n(a).kron(&pauli(Axis::Z))
}

/// Singlet weight in the `λ = −1` and `λ = +1` eigenspaces of [`s_operator`].
pub fn overlap_weights(a: &UnitVector3) -> (f64, f64) {
    let eig = hermitian_eig(&s_operator(a)).expect("S is Hermitian");
    let psi = singlet();
    let weight = |lambda: f64| {
        let p = eig.eigenspace_projector(lambda, 1e-9);
        psi.amplitudes().inner(&(&p * psi.amplitudes())).re
    };
    (weight(-1.0), weight(1.0))
}

/// Probability of finding spin up along `ẑ` on the first particle and up
/// along `b = (sin α, 0, cos α)` on the second, in the singlet.
pub fn joint_up_probability(alpha: f64) -> f64 {
    let b = UnitVector3::from_angles(alpha, 0.0);
    let (b_plus, _) = sigma_n_eigenkets(&b);
    let phi = CMatrix::basis_ket(2, 0).kron(&b_plus);
    phi.inner(singlet().amplitudes()).norm_sqr()
}

/// `⟨A₀B₀⟩ + ⟨A₁B₀⟩ + ⟨A₀B₁⟩ − ⟨A₁B₁⟩` in the singlet.
pub fn chsh_value(a0: &UnitVector3, a1: &UnitVector3, b0: &UnitVector3, b1: &UnitVector3) -> f64 {
    let e = |a: &UnitVector3, b: &UnitVector3| singlet_correlation(&DetectorPair::new(*a, *b));
    e(a0, b0) + e(a1, b0) + e(a0, b1) - e(a1, b1)
}

/// `a₀ = ẑ, a₁ = x̂, b₀ = −(x̂ + ẑ)/√2, b₁ = (x̂ − ẑ)/√2`, which attain the
/// Tsirelson bound.
pub fn optimal_chsh_settings() -> [UnitVector3; 4] {
    let h = FRAC_1_SQRT_2;
    [
        UnitVector3::Z,
        UnitVector3::X,
        UnitVector3::normalize(-h, 0.0, -h).expect("non-zero"),
        UnitVector3::normalize(h, 0.0, -h).expect("non-zero"),
    ]
}

#[derive(Debug, Clone)]
pub struct ChshReport {
    pub settings: [UnitVector3; 4],
    pub value: f64,
    pub classical_bound: f64,
    pub tsirelson_bound: f64,
}

impl ChshReport {
    pub fn violates_classical_bound(&self) -> bool {
        self.value.abs() > self.classical_bound
    }
}

pub fn chsh_demo() -> ChshReport {
    let settings = optimal_chsh_settings();
    let [a0, a1, b0, b1] = settings;
    ChshReport {
        settings,
        value: chsh_value(&a0, &a1, &b0, &b1),
        classical_bound: CLASSICAL_CHSH_BOUND,
        tsirelson_bound: TSIRELSON_BOUND,
    }
}

/// Joint outcome law `P(s_a, s_b)` of the singlet for the given detectors,
/// indexed `[0]` for `+1` and `[1]` for `−1`.
pub fn singlet_outcome_law(p: &DetectorPair) -> [[f64; 2]; 2] {
    let (ap, am) = sigma_n_eigenkets(&p.a);
    let (bp, bm) = sigma_n_eigenkets(&p.b);
    let probs = joint_probabilities(
        &singlet_density(),
        BipartiteSpace::qubits(),
        &[ap, am],
        &[bp, bm],
    )
    .expect("eigenkets form orthonormal bases");
    [
        [probs[0][0].max(0.0), probs[0][1].max(0.0)],
        [probs[1][0].max(0.0), probs[1][1].max(0.0)],
    ]
}

/// `n` independent singlet measurements drawn from ChaCha8 seeded with `seed`.
pub fn sample_events(p: &DetectorPair, n: usize, seed: u64) -> Result<Vec<EventRecord>> {
    if n == 0 {
        return Err(Error::validation("sample count must be at least 1"));
    }
    let law = singlet_outcome_law(p);
    let total: f64 = law.iter().flatten().sum();
    let cumulative = [
        law[0][0] / total,
        (law[0][0] + law[0][1]) / total,
        (law[0][0] + law[0][1] + law[1][0]) / total,
    ];
    let sign = |i: usize| if i == 0 { 1 } else { -1 };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let events = (0..n)
        .map(|_| {
            let u: f64 = rng.random();
            let cell = cumulative.iter().take_while(|&&c| u >= c).count();
            EventRecord {
                a: p.a,
                b: p.b,
                outcome_a: sign(cell / 2),
                outcome_b: sign(cell % 2),
            }
        })
        .collect();
    Ok(events)
}

/// Empirical statistics of a batch of events against the singlet prediction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EventSummary {
    pub n: usize,
    pub correlation: f64,
    pub analytic_correlation: f64,
    /// Binomial standard error of `correlation`.
    pub correlation_sigma: f64,
    pub marginal_a_plus: f64,
    pub marginal_b_plus: f64,
    /// Binomial standard error of a marginal frequency at `p = ½`.
    pub marginal_sigma: f64,
}

pub fn summarize_events(p: &DetectorPair, events: &[EventRecord]) -> EventSummary {
    let n = events.len();
    let nf = n as f64;
    let correlation = events
        .iter()
        .map(|e| f64::from(e.outcome_a * e.outcome_b))
        .sum::<f64>()
        / nf;
    let plus = |f: fn(&EventRecord) -> i8| events.iter().filter(|e| f(e) > 0).count() as f64 / nf;
    let analytic = -p.a.dot(&p.b);
    EventSummary {
        n,
        correlation,
        analytic_correlation: analytic,
        correlation_sigma: ((1.0 - analytic * analytic) / nf).sqrt(),
        marginal_a_plus: plus(|e| e.outcome_a),
        marginal_b_plus: plus(|e| e.outcome_b),
        marginal_sigma: (0.25 / nf).sqrt(),
    }
}

#[derive(Debug, Clone)]
pub struct GhzReport {
    pub state: CMatrix,
    pub norm: f64,
    /// `(label, ⟨ψ|S|ψ⟩, ‖Sψ − λψ‖)` for `S_xyy, S_yxy, S_yyx, S_xxx`.
    pub checks: Vec<(&'static str, f64, f64)>,
    /// Product of the four eigenvalues a realistic model would force to `+1`.
    pub classical_product: f64,
    pub quantum_xxx: f64,
}

/// `(|−−−⟩ − |+++⟩)/√2`.
pub fn ghz_state() -> CMatrix {
    let mut v = vec![0.0; 8];
    v[7] = FRAC_1_SQRT_2;
    v[0] = -FRAC_1_SQRT_2;
    CMatrix::real_column(&v)
}

pub fn ghz_check() -> GhzReport {
    let psi = ghz_state();
    let (x, y) = (pauli(Axis::X), pauli(Axis::Y));
    let ops: [(&'static str, [&CMatrix; 3]); 4] = [
        ("S_xyy", [&x, &y, &y]),
        ("S_yxy", [&y, &x, &y]),
        ("S_yyx", [&y, &y, &x]),
        ("S_xxx", [&x, &x, &x]),
    ];
    let checks: Vec<(&'static str, f64, f64)> = ops
        .iter()
        .map(|(label, [a, b, c])| {
            let s = a.kron(b).kron(c);
            let spsi = &s * &psi;
            let lambda = psi.inner(&spsi).re;
            let residual = (&spsi - &psi.scale_real(lambda)).norm();
            (*label, lambda, residual)
        })
        .collect();
    // Each x-value appears once and each y-value twice across S_xyy, S_yxy,
    // S_yyx, so realism forces a_x b_x c_x to equal their product.
    let classical_product = checks[..3].iter().map(|c| c.1).product();
    GhzReport {
        norm: psi.norm(),
        quantum_xxx: checks[3].1,
        state: psi,
        checks,
        classical_product,
    }
}

#[derive(Debug, Clone)]
pub struct CloningReport {
    /// The linear map with `|i⟩|u⟩ ↦ |i⟩|i⟩` on the basis.
    pub cloner: CMatrix,
    pub basis_fidelities: [f64; 2],
    pub output: CMatrix,
    pub target: CMatrix,
    pub fidelity: f64,
    /// Amplitudes of `|01⟩` and `|10⟩` in the output.
    pub cross_amplitudes: [f64; 2],
}

pub fn no_cloning_demo() -> CloningReport {
    let e = |k| CMatrix::basis_ket(2, k);
    let blank = e(0);
    let mut cloner = CMatrix::zeros(4, 4);
    for k in 0..2 {
        cloner += &e(k).kron(&e(k)).outer(&e(k).kron(&blank));
    }
    let basis_fidelities = [0, 1].map(|k| {
        let out = &cloner * &e(k).kron(&blank);
        e(k).kron(&e(k)).inner(&out).norm_sqr()
    });
    let x_plus = CMatrix::real_column(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2]);
    let output = &cloner * &x_plus.kron(&blank);
    let target = x_plus.kron(&x_plus);
    let fidelity = target.inner(&output).norm_sqr();
    CloningReport {
        cross_amplitudes: [output[(1, 0)].norm(), output[(2, 0)].norm()],
        cloner,
        basis_fidelities,
        output,
        target,
        fidelity,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilterReport {
    pub p_half_pi: f64,
    pub two_p_quarter_pi: f64,
}

impl FilterReport {
    /// Realism requires `P(π/2) ≤ 2P(π/4)`.
    pub fn violated(&self) -> bool {
        self.p_half_pi > self.two_p_quarter_pi
    }
}

/// `(P(α), 2P(α/2))`.
pub fn filter_pair(alpha: f64) -> (f64, f64) {
    (joint_up_probability(alpha), 2.0 * joint_up_probability(alpha / 2.0))
}

pub fn filter_inequality_demo() -> FilterReport {
    let (p_half_pi, two_p_quarter_pi) = filter_pair(std::f64::consts::FRAC_PI_2);
    FilterReport {
        p_half_pi,
        two_p_quarter_pi,
    }
}
