//! Complex adjoint representation of quaternionic matrices.
//!
//! With `q = z1 + z2·j` (`z1 = q0 + q1 i`, `z2 = q2 + q3 i`) a matrix
//! `A = A1 + A2·j` maps to `χ(A) = [[A1, A2], [-conj(A2), conj(A1)]]` and a
//! vector `φ = φ1 + φ2·j` maps to `[φ1; -conj(φ2)]`.

use faer::Mat;
pub use faer::c64;

use crate::error::{Error, Result};
use crate::hilbert::QVector;
use crate::matrix::QMatrix;
use crate::quaternion::Quaternion;

/// Relative singular-value cutoff for numerical rank.
pub const RANK_TOL: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct ComplexImage {
    pub mat: Mat<c64>,
}

impl ComplexImage {
    pub fn nrows(&self) -> usize {
        self.mat.nrows()
    }

    pub fn ncols(&self) -> usize {
        self.mat.ncols()
    }

    pub fn get(&self, i: usize, j: usize) -> c64 {
        self.mat[(i, j)]
    }

    pub fn matmul(&self, other: &ComplexImage) -> ComplexImage {
        ComplexImage { mat: &self.mat * &other.mat }
    }

    pub fn sub(&self, other: &ComplexImage) -> ComplexImage {
        ComplexImage { mat: &self.mat - &other.mat }
    }

    pub fn adjoint(&self) -> ComplexImage {
        ComplexImage { mat: self.mat.adjoint().to_owned() }
    }

    pub fn frobenius(&self) -> f64 {
        self.mat.norm_l2()
    }

    pub fn singular_values(&self) -> Result<Vec<f64>> {
        self.mat.singular_values().map_err(|e| Error::Numerical(format!("svd: {e:?}")))
    }

    pub fn eigenvalues(&self) -> Result<Vec<c64>> {
        self.mat.eigenvalues().map_err(|e| Error::Numerical(format!("eigenvalues: {e:?}")))
    }

    /// Number of singular values above `RANK_TOL * σ_max`.
    pub fn rank(&self) -> Result<usize> {
        Ok(count_above(&self.singular_values()?))
    }
}

pub(crate) fn split(q: Quaternion) -> (c64, c64) {
    (c64::new(q.q0, q.q1), c64::new(q.q2, q.q3))
}

pub(crate) fn join(z1: c64, z2: c64) -> Quaternion {
    Quaternion::new(z1.re, z1.im, z2.re, z2.im)
}

pub fn chi(a: &QMatrix) -> ComplexImage {
    let (m, n) = (a.rows(), a.cols());
    let mat = Mat::from_fn(2 * m, 2 * n, |r, c| {
        let (i, top) = if r < m { (r, true) } else { (r - m, false) };
        let (j, left) = if c < n { (c, true) } else { (c - n, false) };
        let (z1, z2) = split(a[(i, j)]);
        match (top, left) {
            (true, true) => z1,
            (true, false) => z2,
            (false, true) => -z2.conj(),
            (false, false) => z1.conj(),
        }
    });
    ComplexImage { mat }
}

/// `φ ↦ [φ1; -conj(φ2)]`.
pub fn chi_vector(phi: &QVector) -> Vec<c64> {
    let n = phi.len();
    let mut out = vec![c64::new(0.0, 0.0); 2 * n];
    for (k, &q) in phi.entries.iter().enumerate() {
        let (z1, z2) = split(q);
        out[k] = z1;
        out[n + k] = -z2.conj();
    }
    out
}

/// Inverse of [`chi_vector`]; `v` must have even length.
pub fn unchi_vector(v: &[c64]) -> QVector {
    let n = v.len() / 2;
    QVector::new((0..n).map(|k| join(v[k], -v[n + k].conj())).collect())
}

fn count_above(sv: &[f64]) -> usize {
    let smax = sv.first().copied().unwrap_or(0.0);
    if smax == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > RANK_TOL * smax).count()
}

/// Singular values of `χ(A)` (length `2·min(rows, cols)`, nonincreasing),
/// exploiting real or complex entries when possible.
pub fn chi_singular_values(a: &QMatrix) -> Result<Vec<f64>> {
    let sv = if a.is_real() {
        let m = Mat::<f64>::from_fn(a.rows(), a.cols(), |i, j| a[(i, j)].q0);
        m.singular_values()
    } else if a.is_complex() {
        let m = Mat::<c64>::from_fn(a.rows(), a.cols(), |i, j| split(a[(i, j)]).0);
        m.singular_values()
    } else {
        return chi(a).singular_values();
    }
    .map_err(|e| Error::Numerical(format!("svd: {e:?}")))?;
    Ok(sv.iter().flat_map(|&s| [s, s]).collect())
}

/// Quaternionic singular values: one per pair of `χ(A)`.
pub fn quaternion_singular_values(a: &QMatrix) -> Result<Vec<f64>> {
    Ok(chi_singular_values(a)?.into_iter().step_by(2).collect())
}

/// Quaternionic rank via the complex image; an odd complex rank is an error.
pub fn rank(a: &QMatrix) -> Result<usize> {
    let r = count_above(&chi_singular_values(a)?);
    if !r.is_multiple_of(2) {
        return Err(Error::RankAmbiguous(r));
    }
    Ok(r / 2)
}

/// Full SVD of `χ(A)`: singular values with left and right singular vectors
/// as columns.
pub(crate) fn chi_svd(a: &QMatrix) -> Result<(Vec<f64>, Mat<c64>, Mat<c64>)> {
    let img = chi(a);
    let svd = img.mat.svd().map_err(|e| Error::Numerical(format!("svd: {e:?}")))?;
    let s: Vec<f64> = svd.S().column_vector().iter().map(|z| z.re).collect();
    Ok((s, svd.U().to_owned(), svd.V().to_owned()))
}

pub(crate) fn column(m: &Mat<c64>, j: usize) -> Vec<c64> {
    (0..m.nrows()).map(|i| m[(i, j)]).collect()
}
