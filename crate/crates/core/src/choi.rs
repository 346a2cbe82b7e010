//! Choi-matrix utilities for qubit maps.

use nalgebra::{Matrix4, Vector4};

use crate::linalg::{Mat2, C64};

fn vectorize(k: &Mat2) -> Vector4<C64> {
    Vector4::new(k.get(0, 0), k.get(0, 1), k.get(1, 0), k.get(1, 1))
}

/// `Σ vec(K) vec(K)†` with row-major vectorization.
pub fn choi_matrix(kraus: &[Mat2]) -> Matrix4<C64> {
    kraus.iter().fold(Matrix4::zeros(), |acc, k| {
        let v = vectorize(k);
        acc + v * v.adjoint()
    })
}

/// Minimal Kraus set (at most four operators) for the same map.
pub fn compress(kraus: &[Mat2]) -> Vec<Mat2> {
    let choi = choi_matrix(kraus);
    let scale = choi.trace().re.max(f64::MIN_POSITIVE);
    let eig = choi.symmetric_eigen();
    let mut out: Vec<(f64, Mat2)> = eig
        .eigenvalues
        .iter()
        .zip(eig.eigenvectors.column_iter())
        .filter(|(l, _)| **l > 1e-15 * scale)
        .map(|(l, u)| {
            let s = l.sqrt();
            (*l, Mat2::new(u[0] * s, u[1] * s, u[2] * s, u[3] * s))
        })
        .collect();
    out.sort_by(|a, b| b.0.total_cmp(&a.0));
    if out.is_empty() {
        return vec![Mat2::ZERO];
    }
    out.into_iter().map(|(_, k)| k).collect()
}
