//! Scenario files for `evolve`.
//!
//! ```json
//! {
//!   "dim": 2,
//!   "rho0": [[[0.5, 0], [0.5, 0]], [[0.5, 0], [0.5, 0]]],
//!   "hamiltonian": [[[0, 0], [0, 0]], [[0, 0], [0, 0]]],
//!   "jump_ops": [[[[1, 0], [0, 0]], [[0, 0], [-1, 0]]]],
//!   "t_end": 2.0,
//!   "dt": 0.01,
//!   "sample_every": 10
//! }
//! ```
//!
//! Matrices are row-major nested arrays of `[re, im]` pairs.

use num_complex::Complex64;
use serde::Deserialize;

use rholab::density::DensityOperator;
use rholab::lindblad::LindbladGenerator;
use rholab::matrix::CMatrix;

type RawMatrix = Vec<Vec<[f64; 2]>>;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    dim: usize,
    rho0: RawMatrix,
    hamiltonian: RawMatrix,
    #[serde(default)]
    jump_ops: Vec<RawMatrix>,
    t_end: f64,
    dt: f64,
    #[serde(default = "default_sample_every")]
    sample_every: usize,
}

fn default_sample_every() -> usize {
    1
}

#[derive(Debug, Clone)]
pub struct Scenario {
    pub initial: DensityOperator,
    pub generator: LindbladGenerator,
    pub t_end: f64,
    pub dt: f64,
    pub sample_every: usize,
}

fn matrix(field: &str, raw: &RawMatrix, dim: usize) -> Result<CMatrix, String> {
    if raw.len() != dim {
        return Err(format!("{field}: expected {dim} rows, found {}", raw.len()));
    }
    let mut data = Vec::with_capacity(dim * dim);
    for (i, row) in raw.iter().enumerate() {
        if row.len() != dim {
            return Err(format!("{field}[{i}]: expected {dim} entries, found {}", row.len()));
        }
        for (j, [re, im]) in row.iter().enumerate() {
            if !re.is_finite() || !im.is_finite() {
                return Err(format!("{field}[{i}][{j}]: entry is not finite"));
            }
            data.push(Complex64::new(*re, *im));
        }
    }
    CMatrix::from_vec(dim, dim, data).map_err(|e| format!("{field}: {e}"))
}

pub fn parse(text: &str) -> Result<Scenario, String> {
    let raw: RawScenario = serde_json::from_str(text).map_err(|e| e.to_string())?;
    if raw.dim == 0 {
        return Err("dim: must be at least 1".into());
    }
    let rho0 = matrix("rho0", &raw.rho0, raw.dim)?;
    let h = matrix("hamiltonian", &raw.hamiltonian, raw.dim)?;
    let ls = raw
        .jump_ops
        .iter()
        .enumerate()
        .map(|(k, m)| matrix(&format!("jump_ops[{k}]"), m, raw.dim))
        .collect::<Result<Vec<_>, _>>()?;
    let initial = DensityOperator::new(rho0).map_err(|e| format!("rho0: {e}"))?;
    let generator = LindbladGenerator::new(h, ls).map_err(|e| format!("hamiltonian: {e}"))?;
    if !raw.t_end.is_finite() || raw.t_end < 0.0 {
        return Err(format!("t_end: must be a non-negative number, got {}", raw.t_end));
    }
    if !raw.dt.is_finite() || raw.dt <= 0.0 {
        return Err(format!("dt: must be positive, got {}", raw.dt));
    }
    if raw.sample_every == 0 {
        return Err("sample_every: must be at least 1".into());
    }
    Ok(Scenario {
        initial,
        generator,
        t_end: raw.t_end,
        dt: raw.dt,
        sample_every: raw.sample_every,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const GOOD: &str = r#"{
        "dim": 2,
        "rho0": [[[0.5, 0], [0.5, 0]], [[0.5, 0], [0.5, 0]]],
        "hamiltonian": [[[0, 0], [0, 0]], [[0, 0], [0, 0]]],
        "jump_ops": [[[[1, 0], [0, 0]], [[0, 0], [-1, 0]]]],
        "t_end": 1.0,
        "dt": 0.1,
        "sample_every": 2
    }"#;

    #[test]
    fn parses_the_documented_layout() {
        let s = parse(GOOD).unwrap();
        assert_eq!(s.generator.dim(), 2);
        assert_eq!(s.generator.jump_ops().len(), 1);
        assert_eq!(s.sample_every, 2);
    }

    #[test]
    fn reports_json_position() {
        let err = parse("{\n  \"dim\": 2,\n  \"rho0\": [1, 2\n}").unwrap_err();
        assert!(err.contains("line 3"), "{err}");
    }

    #[test]
    fn reports_field_path() {
        let bad = GOOD.replace("[[0, 0], [-1, 0]]]]", "[[0, 0]]]]");
        let err = parse(&bad).unwrap_err();
        assert!(err.starts_with("jump_ops[0][1]"), "{err}");
    }

    #[test]
    fn rejects_invalid_density() {
        let bad = GOOD.replacen("[[[0.5, 0], [0.5, 0]]", "[[[0.9, 0], [0.5, 0]]", 1);
        let err = parse(&bad).unwrap_err();
        assert!(err.starts_with("rho0"), "{err}");
    }

    #[test]
    fn rejects_unknown_fields_and_bad_step() {
        let extra = GOOD.replace("\"dim\": 2,", "\"dim\": 2, \"gamma\": 1,");
        assert!(parse(&extra).unwrap_err().contains("gamma"));
        let zero = GOOD.replace("\"dt\": 0.1", "\"dt\": 0");
        assert!(parse(&zero).unwrap_err().starts_with("dt"));
    }
}
