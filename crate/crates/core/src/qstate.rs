//! Qubit states, quantum operations and fidelities.
//!
//! All types validate their invariants on construction, so the functions in
//! this module only fail where an outcome is physically undefined.

use crate::error::{Error, Result};
use crate::linalg::{dot3, norm3, Mat2, C64, I, ONE, ZERO};

/// Tolerance on the squared norm of a pure state.
pub const TOL_NORM: f64 = 1e-12;
/// Tolerance on hermiticity, positivity and trace of a density matrix.
pub const TOL_STATE: f64 = 1e-12;
/// Tolerance on the trace-non-increasing condition `ΣK†K ≤ I`.
pub const TOL_OPERATION: f64 = 1e-10;
/// Outcomes with probability below this are treated as never occurring.
pub const PROB_FLOOR: f64 = 1e-12;
/// Choi rank bound for qubit-to-qubit maps.
pub const MAX_KRAUS: usize = 4;

pub const SIGMA_X: Mat2 = Mat2::new(ZERO, ONE, ONE, ZERO);
pub const SIGMA_Y: Mat2 = Mat2::new(ZERO, C64::new(0.0, -1.0), I, ZERO);
pub const SIGMA_Z: Mat2 = Mat2::new(ONE, ZERO, ZERO, C64::new(-1.0, 0.0));

/// A normalized vector in C².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureQubit([C64; 2]);

impl PureQubit {
    pub fn new(a: C64, b: C64) -> Result<Self> {
        let n = a.norm_sqr() + b.norm_sqr();
        if !n.is_finite() || (n - 1.0).abs() > TOL_NORM {
            return Err(Error::NotNormalized(n));
        }
        Ok(PureQubit([a, b]))
    }

    /// Normalizes `(a, b)`; fails only on the zero vector.
    pub fn normalized(a: C64, b: C64) -> Result<Self> {
        let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::ZeroVector);
        }
        Ok(PureQubit([a / n, b / n]))
    }

    pub fn zero() -> Self {
        PureQubit([ONE, ZERO])
    }

    pub fn one() -> Self {
        PureQubit([ZERO, ONE])
    }

    /// The pure state whose Bloch vector points along `dir` (any nonzero
    /// length). The first amplitude is real and non-negative.
    pub fn from_direction(dir: [f64; 3]) -> Result<Self> {
        let n = norm3(dir);
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::ZeroVector);
        }
        let z = (dir[2] / n).clamp(-1.0, 1.0);
        let transverse = dir[0].hypot(dir[1]);
        let phase = if transverse > 0.0 {
            C64::new(dir[0] / transverse, dir[1] / transverse)
        } else {
            ONE
        };
        let a = ((1.0 + z) / 2.0).sqrt();
        let b = ((1.0 - z) / 2.0).sqrt();
        Ok(PureQubit([C64::new(a, 0.0), phase * b]))
    }

    pub fn amplitudes(&self) -> [C64; 2] {
        self.0
    }

    /// `⟨self|other⟩`
    pub fn inner(&self, other: &PureQubit) -> C64 {
        self.0[0].conj() * other.0[0] + self.0[1].conj() * other.0[1]
    }

    pub fn with_phase(&self, theta: f64) -> Self {
        let p = C64::from_polar(1.0, theta);
        PureQubit([self.0[0] * p, self.0[1] * p])
    }

    pub fn projector(&self) -> Mat2 {
        Mat2::outer(self.0, self.0)
    }

    pub fn density(&self) -> DensityMatrix {
        DensityMatrix(self.projector())
    }

    pub fn bloch(&self) -> BlochVector {
        let [a, b] = self.0;
        let ab = a.conj() * b;
        let r = [2.0 * ab.re, 2.0 * ab.im, a.norm_sqr() - b.norm_sqr()];
        let n = norm3(r);
        BlochVector(if n > 1.0 {
            [r[0] / n, r[1] / n, r[2] / n]
        } else {
            r
        })
    }
}

/// Modulus of the inner product of two pure states.
pub fn pure_overlap(a: &PureQubit, b: &PureQubit) -> f64 {
    a.inner(b).norm().min(1.0)
}

/// A 2×2 Hermitian, positive semidefinite, unit-trace matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix(Mat2);

impl DensityMatrix {
    pub fn new(m: Mat2) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::NotHermitian(f64::INFINITY));
        }
        let herm = m.hermiticity_error();
        if herm > TOL_STATE {
            return Err(Error::NotHermitian(herm));
        }
        let tr = m.trace().re;
        if (tr - 1.0).abs() > TOL_STATE {
            return Err(Error::InvalidTrace(tr));
        }
        let [lo, _] = m.hermitian_eigenvalues();
        if lo < -TOL_STATE {
            return Err(Error::NotPositive(lo));
        }
        Ok(DensityMatrix(m))
    }

    /// Normalizes a positive matrix `m / Tr m`, symmetrizing away rounding.
    pub fn from_unnormalized(m: &Mat2) -> Result<Self> {
        let tr = m.trace().re;
        if !(tr > 0.0) {
            return Err(Error::InvalidTrace(tr));
        }
        DensityMatrix::new(m.hermitian_part().scale(1.0 / tr))
    }

    pub fn maximally_mixed() -> Self {
        DensityMatrix(Mat2::diag(0.5, 0.5))
    }

    /// `diag(x, 1 − x)`
    pub fn diagonal(x: f64) -> Result<Self> {
        crate::error::check_unit("x", x)?;
        Ok(DensityMatrix(Mat2::diag(x, 1.0 - x)))
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    pub fn eigenvalues(&self) -> [f64; 2] {
        self.0.hermitian_eigenvalues()
    }

    /// `√ρ`, treating rounding-level eigenvalues as zero.
    pub fn sqrt(&self) -> Mat2 {
        self.0.hermitian_map(|v| snapped_sqrt(v, 1.0))
    }
}

/// Real 3-vector in the closed unit ball.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector([f64; 3]);

impl BlochVector {
    pub fn new(r: [f64; 3]) -> Result<Self> {
        let n = norm3(r);
        if !n.is_finite() || n > 1.0 + TOL_STATE {
            return Err(Error::OutsideBlochBall(n));
        }
        Ok(BlochVector(r))
    }

    pub fn origin() -> Self {
        BlochVector([0.0; 3])
    }

    pub fn components(&self) -> [f64; 3] {
        self.0
    }

    pub fn norm(&self) -> f64 {
        norm3(self.0)
    }

    pub fn dot(&self, other: &BlochVector) -> f64 {
        dot3(self.0, other.0)
    }
}

pub fn bloch_from_density(rho: &DensityMatrix) -> BlochVector {
    let m = rho.matrix();
    let off = (m.get(0, 1) + m.get(1, 0).conj()) * 0.5;
    let r = [2.0 * off.re, -2.0 * off.im, (m.get(0, 0) - m.get(1, 1)).re];
    let n = norm3(r);
    BlochVector(if n > 1.0 {
        [r[0] / n, r[1] / n, r[2] / n]
    } else {
        r
    })
}

/// `ρ = (I + r·σ)/2`
pub fn density_from_bloch(r: &BlochVector) -> DensityMatrix {
    let [x, y, z] = r.0;
    DensityMatrix(Mat2::from_pauli(0.5, [0.5 * x, 0.5 * y, 0.5 * z]))
}

/// Eigenvalues below this multiple of machine epsilon, relative to the
/// trace, are indistinguishable from zero.
const SPECTRAL_FLOOR: f64 = 64.0 * f64::EPSILON;

fn snapped_sqrt(v: f64, scale: f64) -> f64 {
    if v <= SPECTRAL_FLOOR * scale {
        0.0
    } else {
        v.sqrt()
    }
}

/// `F(ρ, σ) = Tr √(√ρ σ √ρ)`, computed by Hermitian eigendecomposition.
/// Eigenvalues at rounding level count as zero.
pub fn uhlmann_fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> f64 {
    let s = rho.sqrt();
    let inner = s * *sigma.matrix() * s;
    let [lo, hi] = inner.hermitian_eigenvalues();
    let scale = hi.abs().max(f64::MIN_POSITIVE);
    let f = snapped_sqrt(lo, scale) + snapped_sqrt(hi, scale);
    f.clamp(0.0, 1.0)
}

/// Closed-form qubit fidelity in Bloch coordinates.
pub fn bloch_fidelity(r1: &BlochVector, r2: &BlochVector) -> f64 {
    let m1 = (1.0 - r1.dot(r1)).max(0.0);
    let m2 = (1.0 - r2.dot(r2)).max(0.0);
    let arg = (1.0 + r1.dot(r2) + (m1 * m2).sqrt()).max(0.0);
    (arg / 2.0).sqrt().clamp(0.0, 1.0)
}

/// Fidelity of a density matrix with a pure state, `√⟨φ|ρ|φ⟩`.
pub fn pure_state_fidelity(phi: &PureQubit, rho: &DensityMatrix) -> f64 {
    let v = rho.matrix().apply(phi.amplitudes());
    let a = phi.amplitudes();
    let e = a[0].conj() * v[0] + a[1].conj() * v[1];
    e.re.max(0.0).sqrt().min(1.0)
}

/// Completely positive trace-non-increasing map in Kraus form.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumOperation {
    kraus: Vec<Mat2>,
}

impl QuantumOperation {
    pub fn new(kraus: Vec<Mat2>) -> Result<Self> {
        if kraus.is_empty() || kraus.len() > MAX_KRAUS {
            return Err(Error::KrausCount(kraus.len()));
        }
        let op = QuantumOperation { kraus };
        let top = op.effect_norm();
        if !top.is_finite() || top > 1.0 + TOL_OPERATION {
            return Err(Error::TraceIncreasing(top));
        }
        Ok(op)
    }

    /// Builds an operation from any number of Kraus operators, merging them
    /// into at most four via the Choi matrix when needed.
    pub fn from_kraus(kraus: Vec<Mat2>) -> Result<Self> {
        if kraus.len() > MAX_KRAUS {
            QuantumOperation::new(crate::choi::compress(&kraus))
        } else {
            QuantumOperation::new(kraus)
        }
    }

    pub fn single(k: Mat2) -> Result<Self> {
        QuantumOperation::new(vec![k])
    }

    pub fn identity() -> Self {
        QuantumOperation {
            kraus: vec![Mat2::IDENTITY],
        }
    }

    pub fn kraus(&self) -> &[Mat2] {
        &self.kraus
    }

    pub fn rank(&self) -> usize {
        self.kraus.len()
    }

    /// `ΣK†K`
    pub fn effect(&self) -> Mat2 {
        self.kraus
            .iter()
            .fold(Mat2::ZERO, |acc, k| acc + k.adjoint() * *k)
    }

    /// Largest eigenvalue of `ΣK†K`.
    pub fn effect_norm(&self) -> f64 {
        self.effect().hermitian_eigenvalues()[1]
    }

    pub fn apply(&self, rho: &DensityMatrix) -> Outcome {
        let output = self.apply_matrix(rho.matrix());
        Outcome {
            output,
            probability: output.trace().re,
        }
    }

    pub fn apply_pure(&self, psi: &PureQubit) -> Outcome {
        let mut output = Mat2::ZERO;
        for k in &self.kraus {
            let v = k.apply(psi.amplitudes());
            output = output + Mat2::outer(v, v);
        }
        Outcome {
            output,
            probability: output.trace().re,
        }
    }

    /// `ΣK m K†` on an arbitrary matrix.
    pub fn apply_matrix(&self, m: &Mat2) -> Mat2 {
        self.kraus
            .iter()
            .fold(Mat2::ZERO, |acc, k| acc + *k * *m * k.adjoint())
    }

    /// Kraus set conjugated by a unitary, `{U K U†}`.
    pub fn conjugated(&self, u: &Mat2) -> QuantumOperation {
        let ud = u.adjoint();
        QuantumOperation {
            kraus: self.kraus.iter().map(|k| *u * *k * ud).collect(),
        }
    }
}

/// Unnormalized result of applying an operation, with its probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Outcome {
    pub output: Mat2,
    pub probability: f64,
}

impl Outcome {
    pub fn occurred(&self) -> bool {
        self.probability >= PROB_FLOOR
    }

    /// The normalized output state, or [`Error::NegligibleProbability`].
    pub fn state(&self) -> Result<DensityMatrix> {
        if !self.occurred() {
            return Err(Error::NegligibleProbability(self.probability));
        }
        DensityMatrix::from_unnormalized(&self.output)
    }
}

pub fn apply_operation(op: &QuantumOperation, rho: &DensityMatrix) -> Outcome {
    op.apply(rho)
}
