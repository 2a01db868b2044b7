//! Spin-1/2 and spin-1 operators and states.
//!
//! Two-level kets use the basis order `(|z+⟩, |z−⟩)`, i.e. `|z+⟩ = (1, 0)ᵀ`.
//! Spin-1 matrices use the basis order `(|z−⟩, |z0⟩, |z+⟩)` with the entries
//! pinned exactly as conventionally displayed for that ordering. Note that
//! with this ordering `S_z = diag(1, 0, −1)` sends the first basis ket to `+1`
//! times itself, so the `z±` labels on the basis kets and the eigenvalue signs
//! of `S_z` do not agree. The matrices are kept as given and the projectors
//! are labelled by eigenvalue.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::eigen::{canonical_phase, hermitian_eig};
use crate::error::{Error, Result};
use crate::matrix::{c, r, CMatrix, I, ONE, ZERO};

/// Tolerance on `|n|² − 1` for a direction to be accepted.
pub const UNIT_TOL: f64 = 1e-12;

/// A direction in three-dimensional space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitVector3 {
    x: f64,
    y: f64,
    z: f64,
}

impl UnitVector3 {
    pub const X: UnitVector3 = UnitVector3 { x: 1.0, y: 0.0, z: 0.0 };
    pub const Y: UnitVector3 = UnitVector3 { x: 0.0, y: 1.0, z: 0.0 };
    pub const Z: UnitVector3 = UnitVector3 { x: 0.0, y: 0.0, z: 1.0 };

    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let n2 = x * x + y * y + z * z;
        if !n2.is_finite() || (n2 - 1.0).abs() > UNIT_TOL {
            return Err(Error::validation(format!(
                "({x}, {y}, {z}) is not a unit vector (|n|² = {n2})"
            )));
        }
        Ok(UnitVector3 { x, y, z })
    }

    /// Rescales any non-zero vector to unit length.
    pub fn normalize(x: f64, y: f64, z: f64) -> Result<Self> {
        let n = (x * x + y * y + z * z).sqrt();
        if !n.is_finite() || n == 0.0 {
            return Err(Error::validation("cannot normalize a zero vector"));
        }
        Ok(UnitVector3 {
            x: x / n,
            y: y / n,
            z: z / n,
        })
    }

    /// Polar angle `theta` from +z, azimuth `phi` from +x.
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        UnitVector3 {
            x: theta.sin() * phi.cos(),
            y: theta.sin() * phi.sin(),
            z: theta.cos(),
        }
    }

    pub fn x(&self) -> f64 {
        self.x
    }
    pub fn y(&self) -> f64 {
        self.y
    }
    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn components(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    /// `n_x + i n_y`.
    pub fn perp(&self) -> Complex64 {
        c(self.x, self.y)
    }

    pub fn dot(&self, other: &UnitVector3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn neg(&self) -> UnitVector3 {
        UnitVector3 {
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
    }

    /// Applies a real 3×3 rotation (row-major).
    pub fn rotate(&self, rot: &[[f64; 3]; 3]) -> UnitVector3 {
        let v = self.components();
        let out: Vec<f64> = rot
            .iter()
            .map(|row| row.iter().zip(&v).map(|(a, b)| a * b).sum())
            .collect();
        UnitVector3 {
            x: out[0],
            y: out[1],
            z: out[2],
        }
    }
}

/// Rotation matrix for angle `theta` about `axis` (Rodrigues form).
pub fn rotation_about(axis: &UnitVector3, theta: f64) -> [[f64; 3]; 3] {
    let (c, s) = (theta.cos(), theta.sin());
    let t = 1.0 - c;
    let [x, y, z] = axis.components();
    [
        [c + x * x * t, x * y * t - z * s, x * z * t + y * s],
        [y * x * t + z * s, c + y * y * t, y * z * t - x * s],
        [z * x * t - y * s, z * y * t + x * s, c + z * z * t],
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];
}

/// Pauli matrix for an axis.
pub fn pauli(axis: Axis) -> CMatrix {
    match axis {
        Axis::X => CMatrix::from_rows(&[[ZERO, ONE], [ONE, ZERO]]),
        Axis::Y => CMatrix::from_rows(&[[ZERO, -I], [I, ZERO]]),
        Axis::Z => CMatrix::from_rows(&[[ONE, ZERO], [ZERO, -ONE]]),
    }
}

/// `σ·n = [[n_z, n_⊥*], [n_⊥, −n_z]]`.
pub fn sigma_n(n: &UnitVector3) -> CMatrix {
    let p = n.perp();
    CMatrix::from_rows(&[[r(n.z), p.conj()], [p, r(-n.z)]])
}

/// Checked variant of [`sigma_n`] taking raw components.
pub fn sigma_n_from(x: f64, y: f64, z: f64) -> Result<CMatrix> {
    Ok(sigma_n(&UnitVector3::new(x, y, z)?))
}

/// Eigenkets `(|s_n+⟩, |s_n−⟩)` of `σ·n`.
///
/// Built from half angles, `(cos θ/2, e^{iφ} sin θ/2)` and
/// `(sin θ/2, −e^{iφ} cos θ/2)`, so both poles are regular. Each ket is
/// returned with its first non-negligible component real and non-negative.
pub fn sigma_n_eigenkets(n: &UnitVector3) -> (CMatrix, CMatrix) {
    let cos_half = ((1.0 + n.z) / 2.0).max(0.0).sqrt();
    let sin_half = ((1.0 - n.z) / 2.0).max(0.0).sqrt();
    let p = n.perp();
    let phase = if p.norm() > 0.0 { p / p.norm() } else { ONE };
    let plus = CMatrix::column(&[r(cos_half), phase * sin_half]);
    let minus = CMatrix::column(&[r(sin_half), -phase * cos_half]);
    (canonical_phase(&plus), canonical_phase(&minus))
}

/// The six axis eigenkets of a spin-1/2 system.
#[derive(Debug, Clone)]
pub struct SpinHalfBasis {
    pub x_plus: CMatrix,
    pub x_minus: CMatrix,
    pub y_plus: CMatrix,
    pub y_minus: CMatrix,
    pub z_plus: CMatrix,
    pub z_minus: CMatrix,
}

impl SpinHalfBasis {
    pub fn new() -> Self {
        let h = FRAC_1_SQRT_2;
        SpinHalfBasis {
            x_plus: CMatrix::column(&[r(h), r(h)]),
            x_minus: CMatrix::column(&[r(h), r(-h)]),
            y_plus: CMatrix::column(&[r(h), c(0.0, h)]),
            y_minus: CMatrix::column(&[r(h), c(0.0, -h)]),
            z_plus: CMatrix::basis_ket(2, 0),
            z_minus: CMatrix::basis_ket(2, 1),
        }
    }

    pub fn pair(&self, axis: Axis) -> (&CMatrix, &CMatrix) {
        match axis {
            Axis::X => (&self.x_plus, &self.x_minus),
            Axis::Y => (&self.y_plus, &self.y_minus),
            Axis::Z => (&self.z_plus, &self.z_minus),
        }
    }

    /// The `{|ξ+⟩, |ξ−⟩}` basis for an axis.
    pub fn basis(&self, axis: Axis) -> Vec<CMatrix> {
        let (p, m) = self.pair(axis);
        vec![p.clone(), m.clone()]
    }
}

impl Default for SpinHalfBasis {
    fn default() -> Self {
        Self::new()
    }
}

/// Spin-1 operators, their squares, and the eigenprojectors of each `S_ξ`.
#[derive(Debug, Clone)]
pub struct SpinOneSet {
    /// `S_x, S_y, S_z`.
    pub s: [CMatrix; 3],
    /// `S_x², S_y², S_z²`.
    pub s_sq: [CMatrix; 3],
    /// `projectors[ξ][λ+1]` projects onto eigenvalue `λ ∈ {−1, 0, 1}` of `S_ξ`.
    pub projectors: [[CMatrix; 3]; 3],
}

impl SpinOneSet {
    pub fn axis_index(axis: Axis) -> usize {
        match axis {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }

    pub fn spin(&self, axis: Axis) -> &CMatrix {
        &self.s[Self::axis_index(axis)]
    }

    pub fn spin_sq(&self, axis: Axis) -> &CMatrix {
        &self.s_sq[Self::axis_index(axis)]
    }

    /// `P_{ξλ}` for `λ ∈ {−1, 0, 1}`.
    pub fn projector(&self, axis: Axis, lambda: i32) -> &CMatrix {
        assert!((-1..=1).contains(&lambda), "spin-1 eigenvalue must be -1, 0 or 1");
        &self.projectors[Self::axis_index(axis)][(lambda + 1) as usize]
    }
}

pub fn spin_one_set() -> SpinOneSet {
    let h = FRAC_1_SQRT_2;
    let sx = CMatrix::from_real_rows(&[[0.0, h, 0.0], [h, 0.0, h], [0.0, h, 0.0]]);
    let sy = CMatrix::from_real_rows(&[[0.0, -1.0, 0.0], [1.0, 0.0, -1.0], [0.0, 1.0, 0.0]])
        .scale(c(0.0, h));
    let sz = CMatrix::real_diag(&[1.0, 0.0, -1.0]);
    let s = [sx, sy, sz];
    let s_sq = [&s[0] * &s[0], &s[1] * &s[1], &s[2] * &s[2]];
    let projectors = [0, 1, 2].map(|i| {
        let eig = hermitian_eig(&s[i]).expect("spin matrices are Hermitian");
        [-1.0, 0.0, 1.0].map(|lambda| eig.eigenspace_projector(lambda, 1e-9))
    });
    SpinOneSet { s, s_sq, projectors }
}

/// A common eigenbasis of `S_x², S_y², S_z²`.
///
/// `S_x² + 2 S_y²` is non-degenerate on the joint eigenvectors, so its
/// eigenvectors are the simultaneous eigenkets.
pub fn simultaneous_eigenbasis() -> Vec<CMatrix> {
    let set = spin_one_set();
    let probe = &set.s_sq[0] + &set.s_sq[1].scale_real(2.0);
    let eig = hermitian_eig(&probe).expect("Hermitian");
    (0..3).map(|k| canonical_phase(&eig.vector(k))).collect()
}

/// Eigenvalue of `op` on `ket`, assuming `ket` is an eigenket.
pub fn eigenvalue_on(op: &CMatrix, ket: &CMatrix) -> f64 {
    ket.inner(&(op * ket)).re / ket.norm_sqr()
}
