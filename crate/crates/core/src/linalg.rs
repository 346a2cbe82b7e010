//! Fixed-size 2×2 complex matrices.
//!
//! Hermitian matrices are handled through their Pauli decomposition
//! `H = m·I + h·σ`, whose eigenvalues are `m ± |h|` with spectral projectors
//! `(I ± ĥ·σ)/2`. That gives closed-form eigendecompositions and matrix
//! functions without an iterative solver.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// A 2×2 complex matrix, row-major.
#[derive(Clone, Copy, PartialEq)]
pub struct Mat2(pub [[C64; 2]; 2]);

impl Mat2 {
    pub const ZERO: Mat2 = Mat2([[ZERO, ZERO], [ZERO, ZERO]]);
    pub const IDENTITY: Mat2 = Mat2([[ONE, ZERO], [ZERO, ONE]]);

    pub const fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub const fn diag(a: f64, d: f64) -> Self {
        Mat2([[C64::new(a, 0.0), ZERO], [ZERO, C64::new(d, 0.0)]])
    }

    /// Builds `c0 + c·σ` from real Pauli coefficients.
    pub fn from_pauli(c0: f64, c: [f64; 3]) -> Self {
        Mat2::new(
            C64::new(c0 + c[2], 0.0),
            C64::new(c[0], -c[1]),
            C64::new(c[0], c[1]),
            C64::new(c0 - c[2], 0.0),
        )
    }

    /// `|v⟩⟨w|`
    pub fn outer(v: [C64; 2], w: [C64; 2]) -> Self {
        Mat2([
            [v[0] * w[0].conj(), v[0] * w[1].conj()],
            [v[1] * w[0].conj(), v[1] * w[1].conj()],
        ])
    }

    /// Matrix with the given columns.
    pub fn from_columns(c0: [C64; 2], c1: [C64; 2]) -> Self {
        Mat2([[c0[0], c1[0]], [c0[1], c1[1]]])
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> C64 {
        self.0[r][c]
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Mat2([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    pub fn trace(&self) -> C64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn det(&self) -> C64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_c(&self, s: C64) -> Self {
        self.map(|z| z * s)
    }

    pub fn map(&self, f: impl Fn(C64) -> C64) -> Self {
        let m = &self.0;
        Mat2([[f(m[0][0]), f(m[0][1])], [f(m[1][0]), f(m[1][1])]])
    }

    pub fn apply(&self, v: [C64; 2]) -> [C64; 2] {
        let m = &self.0;
        [
            m[0][0] * v[0] + m[0][1] * v[1],
            m[1][0] * v[0] + m[1][1] * v[1],
        ]
    }

    pub fn inverse(&self) -> Option<Self> {
        let det = self.det();
        if det.norm() == 0.0 || !det.is_finite() {
            return None;
        }
        let m = &self.0;
        let inv = det.inv();
        Some(Mat2([
            [m[1][1] * inv, -m[0][1] * inv],
            [-m[1][0] * inv, m[0][0] * inv],
        ]))
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        let mut worst: f64 = 0.0;
        for r in 0..2 {
            for c in 0..2 {
                worst = worst.max((self.0[r][c] - other.0[r][c]).norm());
            }
        }
        worst
    }

    pub fn hermiticity_error(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    /// `(A + A†)/2`
    pub fn hermitian_part(&self) -> Self {
        (*self + self.adjoint()).scale(0.5)
    }

    /// Pauli coefficients `(m, h)` of the Hermitian part, `H = m·I + h·σ`.
    pub fn pauli_components(&self) -> (f64, [f64; 3]) {
        let m = &self.0;
        let off = (m[0][1] + m[1][0].conj()) * 0.5;
        let c0 = 0.5 * (m[0][0].re + m[1][1].re);
        (c0, [off.re, -off.im, 0.5 * (m[0][0].re - m[1][1].re)])
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn hermitian_eigenvalues(&self) -> [f64; 2] {
        let (c0, h) = self.pauli_components();
        let r = norm3(h);
        [c0 - r, c0 + r]
    }

    /// Applies a scalar function to the Hermitian part through its spectral
    /// decomposition.
    pub fn hermitian_map(&self, f: impl Fn(f64) -> f64) -> Self {
        let (c0, h) = self.pauli_components();
        let r = norm3(h);
        if r == 0.0 {
            let v = f(c0);
            return Mat2::diag(v, v);
        }
        let hi = f(c0 + r);
        let lo = f(c0 - r);
        let k = 0.5 * (hi - lo) / r;
        Mat2::from_pauli(0.5 * (hi + lo), [k * h[0], k * h[1], k * h[2]])
    }

    /// Singular values, descending.
    pub fn singular_values(&self) -> [f64; 2] {
        let [lo, hi] = (self.adjoint() * *self).hermitian_eigenvalues();
        [hi.max(0.0).sqrt(), lo.max(0.0).sqrt()]
    }

    pub fn frobenius_sq(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm_sqr()).sum()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|z| z.is_finite())
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &o.0);
        Mat2([
            [a[0][0] + b[0][0], a[0][1] + b[0][1]],
            [a[1][0] + b[1][0], a[1][1] + b[1][1]],
        ])
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        self + (-o)
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self.map(|z| -z)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &o.0);
        Mat2([
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ])
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Canonical fixture form: row-major, `re+imj` entries with 17 significant
/// digits, rows separated by `;`.
impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (r, row) in self.0.iter().enumerate() {
            if r > 0 {
                f.write_str("; ")?;
            }
            for (c, z) in row.iter().enumerate() {
                if c > 0 {
                    f.write_str(" ")?;
                }
                let sign = if z.im.is_sign_negative() { '-' } else { '+' };
                write!(f, "{:.16e}{}{:.16e}j", z.re, sign, z.im.abs())?;
            }
        }
        Ok(())
    }
}

pub(crate) fn norm3(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

pub(crate) fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn scale3(a: [f64; 3], s: f64) -> [f64; 3] {
    [a[0] * s, a[1] * s, a[2] * s]
}

pub(crate) fn add3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub(crate) fn sub3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}
