use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rholab::bell::{sample_events, summarize_events, DetectorPair};
use rholab::density::purity;
use rholab::entropy::{dissipative_entropy_rate, von_neumann_entropy};
use rholab::lindblad::evolve_lindblad_sampled;
use rholab::spin::UnitVector3;
use rholab::Error;

use crate::scenario;

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_NUMERICAL: u8 = 3;

pub const TRAJECTORY_HEADER: &str = "t,trace_re,purity,entropy_nats,min_eigenvalue,entropy_production";
pub const EVENT_HEADER: &str = "a_x,a_y,a_z,b_x,b_y,b_z,outcome_a,outcome_b";

/// A failed command: the exit code and a message for standard error.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

/// Runs a scenario file and writes the trajectory table. Returns a one-line
/// summary.
pub fn evolve(scenario_path: &Path, out: &Path) -> Result<String, Failure> {
    let text = fs::read_to_string(scenario_path)
        .map_err(|e| Failure::input(format!("{}: {e}", scenario_path.display())))?;
    let sc = scenario::parse(&text)
        .map_err(|e| Failure::input(format!("{}: {e}", scenario_path.display())))?;
    let traj = evolve_lindblad_sampled(&sc.generator, &sc.initial, sc.t_end, sc.dt, sc.sample_every)
        .map_err(|e| match e {
            Error::Integration { .. } => Failure {
                code: EXIT_NUMERICAL,
                message: e.to_string(),
            },
            other => Failure::input(other.to_string()),
        })?;
    let mut csv = String::new();
    csv.push_str(TRAJECTORY_HEADER);
    csv.push('\n');
    for s in &traj.samples {
        let production = dissipative_entropy_rate(&s.rho, sc.generator.jump_ops())
            .map_err(|e| Failure {
                code: EXIT_NUMERICAL,
                message: format!("entropy rate at t = {}: {e}", s.t),
            })?
            .value;
        let trace = s.rho.matrix().trace().map(|z| z.re).unwrap_or(f64::NAN);
        let _ = writeln!(
            csv,
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            s.t,
            trace,
            purity(&s.rho),
            von_neumann_entropy(&s.rho).nats(),
            s.rho.min_eigenvalue(),
            production
        );
    }
    write_file(out, &csv)?;
    let d = &traj.diagnostics;
    Ok(format!(
        "{} steps, {} samples, max trace correction {:.1e}, min eigenvalue {:.3e}",
        d.steps,
        traj.samples.len(),
        d.max_trace_drift,
        d.min_eigenvalue
    ))
}

/// Parses `x,y,z`.
pub fn parse_vector(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected three comma-separated components, got {s:?}"));
    }
    let mut v = [0.0; 3];
    for (slot, p) in v.iter_mut().zip(&parts) {
        *slot = p.parse().map_err(|_| format!("{p:?} is not a number"))?;
    }
    Ok(v)
}

/// Samples singlet outcomes and writes the event table plus a summary row.
pub fn sample(a: [f64; 3], b: [f64; 3], n: usize, seed: u64, out: &Path) -> Result<String, Failure> {
    let unit = |name: &str, v: [f64; 3]| {
        UnitVector3::new(v[0], v[1], v[2]).map_err(|e| Failure::input(format!("--{name}: {e}")))
    };
    let pair = DetectorPair::new(unit("a", a)?, unit("b", b)?);
    let events = sample_events(&pair, n, seed).map_err(|e| Failure::input(format!("--n: {e}")))?;
    let sum = summarize_events(&pair, &events);
    let [ax, ay, az] = pair.a.components();
    let [bx, by, bz] = pair.b.components();
    let prefix = format!("{ax:.16e},{ay:.16e},{az:.16e},{bx:.16e},{by:.16e},{bz:.16e}");
    let mut csv = String::with_capacity(events.len() * (prefix.len() + 8));
    csv.push_str(EVENT_HEADER);
    csv.push('\n');
    for e in &events {
        let _ = writeln!(csv, "{prefix},{},{}", e.outcome_a, e.outcome_b);
    }
    let summary = format!(
        "n={},seed={seed},correlation={:.16e},analytic={:.16e},correlation_sigma={:.16e},\
         marginal_a_plus={:.16e},marginal_b_plus={:.16e},marginal_sigma={:.16e}",
        sum.n,
        sum.correlation,
        sum.analytic_correlation,
        sum.correlation_sigma,
        sum.marginal_a_plus,
        sum.marginal_b_plus,
        sum.marginal_sigma
    );
    let _ = writeln!(csv, "# summary,{summary}");
    write_file(out, &csv)?;
    Ok(summary)
}
