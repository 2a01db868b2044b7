//! Worked examples, each checked against the reference table.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use rholab::bell::{
    chsh_demo, filter_inequality_demo, ghz_check, no_cloning_demo, singlet_correlation,
    singlet_outcome_law, singlet_variance, DetectorPair,
};
use rholab::bipartite::{no_signalling_check, partial_trace_b, singlet, BipartiteSpace};
use rholab::density::{gram_factor, mixture_to_density, remix, DensityOperator, ProperMixture};
use rholab::entropy::von_neumann_entropy;
use rholab::matrix::CMatrix;
use rholab::random::Sampler;
use rholab::spin::{sigma_n_eigenkets, spin_one_set, Axis, SpinHalfBasis, UnitVector3};

use crate::report::Report;

pub const NAMES: [&str; 8] = [
    "nonunique", "chsh", "ghz", "filter", "singlet", "spin1", "nocloning", "nosignal",
];

/// Runs the named demo. `None` if the name is unknown.
pub fn run(name: &str) -> Option<Report> {
    let mut r = Report::new();
    match name {
        "nonunique" => nonunique(&mut r),
        "chsh" => chsh(&mut r),
        "ghz" => ghz(&mut r),
        "filter" => filter(&mut r),
        "singlet" => singlet_demo(&mut r),
        "spin1" => spin1(&mut r),
        "nocloning" => nocloning(&mut r),
        "nosignal" => nosignal(&mut r),
        _ => return None,
    }
    Some(r)
}

fn describe(m: &ProperMixture) -> String {
    m.terms()
        .iter()
        .map(|(w, k)| {
            let amps: Vec<String> = k
                .as_slice()
                .iter()
                .map(|z| format!("{:.6}{:+.6}i", z.re, z.im))
                .collect();
            format!("{w:.6} × |{}⟩", amps.join(", "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn nonunique(r: &mut Report) {
    let b = SpinHalfBasis::new();
    let first = ProperMixture::new(vec![(0.5, b.x_plus.clone()), (0.5, b.y_plus.clone())])
        .expect("unit kets");
    let chi1 = (&b.x_plus + &b.y_plus).scale_real(1.0 / 3f64.sqrt());
    let chi2 = &b.x_plus - &b.y_plus;
    let second = ProperMixture::new(vec![(0.75, chi1), (0.25, chi2)]).expect("unit kets");
    let d1 = mixture_to_density(&first).expect("valid mixture");
    let d2 = mixture_to_density(&second).expect("valid mixture");
    r.block("mixture 1:", describe(&first));
    r.block("mixture 2:", describe(&second));
    r.block("density of mixture 1:", d1.matrix());
    r.block("density of mixture 2:", d2.matrix());
    r.within(
        "max |ρ1 − ρ2|",
        d1.matrix().max_abs_diff(d2.matrix()),
        "nonunique.deviation",
    );
    let g = gram_factor(&first, &b.basis(Axis::Z)).expect("orthonormal basis");
    let h = FRAC_1_SQRT_2;
    let u = CMatrix::from_real_rows(&[[h, h], [h, -h]]);
    let remixed = remix(&g, &u).expect("unitary remix");
    r.block("remixed with u = [[1, 1], [1, −1]]/√2:", describe(&remixed));
    let w = remixed.weights();
    r.expect("weight 1", w[0], "nonunique.weight_0");
    r.expect("weight 2", w[1], "nonunique.weight_1");
}

fn chsh(r: &mut Report) {
    let rep = chsh_demo();
    for (name, v) in ["a0", "a1", "b0", "b1"].iter().zip(rep.settings) {
        let [x, y, z] = v.components();
        r.line(format!("{name} = ({x:+.6}, {y:+.6}, {z:+.6})"));
    }
    r.expect("⟨X⟩", rep.value, "chsh.value");
    r.expect("classical bound", rep.classical_bound, "chsh.classical_bound");
    r.flag(
        &format!("|⟨X⟩| = {:.6} exceeds the classical bound 2", rep.value.abs()),
        rep.violates_classical_bound(),
    );
}

fn ghz(r: &mut Report) {
    let rep = ghz_check();
    r.line(format!("|ψ⟩ = (|111⟩ − |000⟩)/√2, norm {:.12}", rep.norm));
    for (label, lambda, residual) in &rep.checks {
        let key = if *label == "S_xxx" { "ghz.xxx" } else { "ghz.plus" };
        r.expect(&format!("{label} eigenvalue"), *lambda, key);
        r.flag(&format!("{label} eigen-equation residual {residual:.1e}"), *residual < 1e-12);
    }
    r.line(format!(
        "product of the three mixed checks {:+.6}, S_xxx gives {:+.6}",
        rep.classical_product, rep.quantum_xxx
    ));
    r.flag(
        "realist assignment predicts +1 for S_xxx, quantum value is −1",
        (rep.classical_product - 1.0).abs() < 1e-12 && (rep.quantum_xxx + 1.0).abs() < 1e-12,
    );
}

fn filter(r: &mut Report) {
    let rep = filter_inequality_demo();
    r.line(format!(
        "P(π/2) = {:.3} vs 2P(π/4) = {:.3}",
        rep.p_half_pi, rep.two_p_quarter_pi
    ));
    r.expect("P(π/2)", rep.p_half_pi, "filter.p_half_pi");
    r.expect("2P(π/4)", rep.two_p_quarter_pi, "filter.two_p_quarter_pi");
    r.flag("realist inequality P(π/2) ≤ 2P(π/4) is violated", rep.violated());
}

fn singlet_demo(r: &mut Report) {
    let psi = singlet();
    r.block("singlet amplitudes (|++⟩, |+−⟩, |−+⟩, |−−⟩):", psi.amplitudes().transpose());
    let z = UnitVector3::Z;
    r.expect(
        "⟨(σ·ẑ)(σ·ẑ)⟩",
        singlet_correlation(&DetectorPair::new(z, z)),
        "singlet.aligned_correlation",
    );
    let mut worst: f64 = 0.0;
    r.line("angle      correlation   variance      P(++)        P(+−)");
    for k in 0..=8 {
        let theta = PI * k as f64 / 8.0;
        let p = DetectorPair::new(z, UnitVector3::from_angles(theta, 0.0));
        let ab = p.a.dot(&p.b);
        let (c, v) = (singlet_correlation(&p), singlet_variance(&p));
        worst = worst.max((c + ab).abs()).max((v - (1.0 - ab * ab)).abs());
        let law = singlet_outcome_law(&p);
        r.line(format!(
            "{theta:.6}  {c:+.9}  {v:.9}  {:.9}  {:.9}",
            law[0][0], law[0][1]
        ));
    }
    r.within("max deviation from −a·b and 1 − (a·b)²", worst, "singlet.law_deviation");
    let half = partial_trace_b(&psi.projector(), BipartiteSpace::qubits()).expect("4x4 projector");
    let reduced = DensityOperator::new(half).expect("reduced density");
    r.block("reduced density of a:", reduced.matrix());
    r.expect(
        "S(reduced) in nats",
        von_neumann_entropy(&reduced).nats(),
        "singlet.entropy_of_half",
    );
}

fn spin1(r: &mut Report) {
    let set = spin_one_set();
    for axis in Axis::ALL {
        r.block(&format!("S_{}:", axis_name(axis)), set.spin(axis));
    }
    let id = CMatrix::identity(3);
    let mut sq: f64 = 0.0;
    for axis in Axis::ALL {
        sq = sq.max(set.spin_sq(axis).max_abs_diff(&(&id - set.projector(axis, 0))));
    }
    r.within("max |S² − (I − P₀)|", sq, "spin1.deviation");
    let mut comm: f64 = 0.0;
    for a in &set.s_sq {
        for b in &set.s_sq {
            comm = comm.max(a.commutator(b).max_abs());
        }
    }
    r.within("max |[S_i², S_j²]|", comm, "spin1.deviation");
    let sum = &(&set.projector(Axis::X, 0).clone() + set.projector(Axis::Y, 0))
        + set.projector(Axis::Z, 0);
    r.within("max |P_x0 + P_y0 + P_z0 − I|", sum.max_abs_diff(&id), "spin1.deviation");
}

fn axis_name(a: Axis) -> &'static str {
    match a {
        Axis::X => "x",
        Axis::Y => "y",
        Axis::Z => "z",
    }
}

fn nocloning(r: &mut Report) {
    let rep = no_cloning_demo();
    r.block("U|x+, 0⟩ amplitudes:", rep.output.transpose());
    r.block("|x+, x+⟩ amplitudes:", rep.target.transpose());
    r.expect("fidelity on |z+⟩", rep.basis_fidelities[0], "nocloning.basis_fidelity");
    r.expect("fidelity on |z−⟩", rep.basis_fidelities[1], "nocloning.basis_fidelity");
    r.expect("fidelity on |x+⟩", rep.fidelity, "nocloning.fidelity");
    r.line(format!(
        "|01⟩ and |10⟩ amplitudes of the output: {:.6}, {:.6}",
        rep.cross_amplitudes[0], rep.cross_amplitudes[1]
    ));
}

fn nosignal(r: &mut Report) {
    let space = BipartiteSpace::qubits();
    let d = singlet().density();
    let mut worst: f64 = 0.0;
    for axis in Axis::ALL {
        let n = match axis {
            Axis::X => UnitVector3::X,
            Axis::Y => UnitVector3::Y,
            Axis::Z => UnitVector3::Z,
        };
        let (p, m) = sigma_n_eigenkets(&n);
        let (before, after) = no_signalling_check(&d, space, &[p, m]).expect("qubit basis");
        let dev = before.max_abs_diff(&after);
        worst = worst.max(dev);
        r.line(format!(
            "singlet, a measures σ_{}: change in b density {dev:.1e}",
            axis_name(axis)
        ));
    }
    let mut s = Sampler::new(42);
    let trials = 50;
    for i in 0..trials {
        let (da, db) = [(2, 2), (2, 3), (3, 2)][i % 3];
        let space = BipartiteSpace::new(da, db).expect("positive dimensions");
        let d = s.density(da * db);
        let (before, after) = no_signalling_check(&d, space, &s.basis(da)).expect("valid basis");
        worst = worst.max(before.max_abs_diff(&after));
    }
    r.line(format!("{trials} random states and a-side bases (seed 42)"));
    r.within("max change in the reduced b density", worst, "nosignal.deviation");
}
