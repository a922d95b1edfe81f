//! Right-linear operators on `H^n` as quaternionic matrices.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::embedding::{self, column, unchi_vector};
use crate::error::{Error, Result};
use crate::hilbert::{gram_schmidt, inner_unchecked, HilbertBasis, QVector};
use crate::quaternion::Quaternion;

/// Dense quaternionic matrix, row-major. Acts on column vectors by
/// `(Aφ)_i = Σ_j A_ij φ_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Quaternion>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Quaternion::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Quaternion::ONE;
        }
        m
    }

    pub fn diag(entries: &[Quaternion]) -> Self {
        let mut m = QMatrix::zeros(entries.len(), entries.len());
        for (i, &q) in entries.iter().enumerate() {
            m[(i, i)] = q;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Quaternion) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        QMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Quaternion>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::Dimension { expected: c, got: row.len() });
            }
            data.extend(row);
        }
        Ok(QMatrix { rows: r, cols: c, data })
    }

    /// Matrix with columns `cols`, all of length `rows`.
    pub fn from_columns(rows: usize, cols: &[QVector]) -> Self {
        QMatrix::from_fn(rows, cols.len(), |i, j| cols[j][i])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn column(&self, j: usize) -> QVector {
        QVector::new((0..self.rows).map(|i| self[(i, j)]).collect())
    }

    pub fn entries(&self) -> &[Quaternion] {
        &self.data
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(|q| q.is_real())
    }

    /// All entries in `C_i = span{1, i}`.
    pub fn is_complex(&self) -> bool {
        self.data.iter().all(|q| q.q2 == 0.0 && q.q3 == 0.0)
    }

    pub fn scale(&self, r: f64) -> QMatrix {
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|q| q.scale(r)).collect() }
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|q| q.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|q| q.norm()).fold(0.0, f64::max)
    }

    pub fn matmul(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension { expected: self.cols, got: other.rows });
        }
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, other: &QMatrix, f: impl Fn(Quaternion, Quaternion) -> Quaternion) -> Result<QMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Dimension { expected: self.rows * self.cols, got: other.rows * other.cols });
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect();
        Ok(QMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn try_add(&self, other: &QMatrix) -> Result<QMatrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &QMatrix) -> Result<QMatrix> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn submatrix(&self, rows: usize, cols: usize) -> QMatrix {
        QMatrix::from_fn(rows.min(self.rows), cols.min(self.cols), |i, j| self[(i, j)])
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Quaternion;
    fn index(&self, (i, j): (usize, usize)) -> &Quaternion {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Quaternion {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &QMatrix {
    type Output = QMatrix;
    fn mul(self, o: &QMatrix) -> QMatrix {
        self.matmul(o).expect("matrix dimensions must agree")
    }
}

impl Add for &QMatrix {
    type Output = QMatrix;
    fn add(self, o: &QMatrix) -> QMatrix {
        self.try_add(o).expect("matrix dimensions must agree")
    }
}

impl Sub for &QMatrix {
    type Output = QMatrix;
    fn sub(self, o: &QMatrix) -> QMatrix {
        self.try_sub(o).expect("matrix dimensions must agree")
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixFile {
    n: usize,
    entries: Vec<Vec<Quaternion>>,
}

impl Serialize for QMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries = (0..self.rows).map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec()).collect();
        MatrixFile { n: self.rows, entries }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for QMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let f = MatrixFile::deserialize(d)?;
        if f.entries.len() != f.n || f.entries.iter().any(|r| r.len() != f.n) {
            return Err(D::Error::custom(format!("matrix must have {0} rows of {0} entries", f.n)));
        }
        QMatrix::from_rows(f.entries).map_err(D::Error::custom)
    }
}

pub fn apply(a: &QMatrix, phi: &QVector) -> Result<QVector> {
    if phi.len() != a.cols {
        return Err(Error::Dimension { expected: a.cols, got: phi.len() });
    }
    let mut out = QVector::zeros(a.rows);
    for i in 0..a.rows {
        let mut acc = Quaternion::ZERO;
        for j in 0..a.cols {
            acc += a[(i, j)] * phi[j];
        }
        out[i] = acc;
    }
    Ok(out)
}

/// Conjugate transpose.
pub fn adjoint(a: &QMatrix) -> QMatrix {
    QMatrix::from_fn(a.cols, a.rows, |i, j| a[(j, i)].conj())
}

/// Matrix of `φ ↦ qφ` for the left multiplication induced by `basis`:
/// `L[a,b] = Σ_k (φ_k)_a q conj((φ_k)_b)`.
pub fn left_mul_matrix(q: Quaternion, n: usize, basis: Option<&HilbertBasis>) -> Result<QMatrix> {
    let Some(basis) = basis else {
        return Ok(QMatrix::diag(&vec![q; n]));
    };
    if basis.dim() != n {
        return Err(Error::Dimension { expected: n, got: basis.dim() });
    }
    if !basis.is_complete() {
        return Err(Error::Basis(1.0));
    }
    let mut l = QMatrix::zeros(n, n);
    for u in basis.vectors() {
        for a in 0..n {
            let uq = u[a] * q;
            for b in 0..n {
                l[(a, b)] += uq * u[b].conj();
            }
        }
    }
    Ok(l)
}

/// `qA` (side = Left) or `Aq` (side = Right) with the basis-induced left
/// multiplication.
pub fn scalar_op(q: Quaternion, a: &QMatrix, side: Side, basis: Option<&HilbertBasis>) -> Result<QMatrix> {
    match side {
        Side::Left => left_mul_matrix(q, a.rows, basis)?.matmul(a),
        Side::Right => a.matmul(&left_mul_matrix(q, a.cols, basis)?),
    }
}

pub fn chi(a: &QMatrix) -> embedding::ComplexImage {
    embedding::chi(a)
}

/// Largest singular value.
pub fn op_norm(a: &QMatrix) -> Result<f64> {
    if a.rows == 0 || a.cols == 0 {
        return Ok(0.0);
    }
    Ok(embedding::chi_singular_values(a)?.first().copied().unwrap_or(0.0))
}

/// Smallest quaternionic singular value, `min_{|φ|=1} |Aφ|` for tall or
/// square `A`.
pub fn sigma_min(a: &QMatrix) -> Result<f64> {
    if a.cols > a.rows {
        return Ok(0.0);
    }
    Ok(embedding::chi_singular_values(a)?.last().copied().unwrap_or(0.0))
}

/// Numerical rank and an orthonormal kernel basis.
pub fn rank_kernel(a: &QMatrix) -> Result<(usize, Vec<QVector>)> {
    let n = a.cols;
    if n == 0 {
        return Ok((0, Vec::new()));
    }
    let (s, _, v) = embedding::chi_svd(a)?;
    let smax = s.first().copied().unwrap_or(0.0);
    let above = if smax == 0.0 { 0 } else { s.iter().filter(|&&x| x > embedding::RANK_TOL * smax).count() };
    if above % 2 != 0 {
        return Err(Error::RankAmbiguous(above));
    }
    let rank = above / 2;
    let kdim = n - rank;
    if kdim == 0 {
        return Ok((rank, Vec::new()));
    }
    let cand: Vec<QVector> = (above..2 * n).map(|j| unchi_vector(&column(&v, j))).collect();
    let basis = gram_schmidt(&cand)?.into_vectors();
    if basis.len() != kdim {
        return Err(Error::Numerical(format!(
            "kernel pairing produced {} vectors, expected {kdim}",
            basis.len()
        )));
    }
    Ok((rank, basis))
}

/// `Aφ = Σ u_i ⟨v_i|φ⟩` with orthonormal `u_i` spanning the range.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteRankDecomp {
    pub u: Vec<QVector>,
    pub v: Vec<QVector>,
}

impl FiniteRankDecomp {
    pub fn rank(&self) -> usize {
        self.u.len()
    }

    pub fn apply(&self, phi: &QVector, out_len: usize) -> QVector {
        let mut out = QVector::zeros(out_len);
        for (u, v) in self.u.iter().zip(&self.v) {
            out.axpy(u, inner_unchecked(v, phi));
        }
        out
    }

    pub fn apply_adjoint(&self, psi: &QVector, out_len: usize) -> QVector {
        let mut out = QVector::zeros(out_len);
        for (u, v) in self.u.iter().zip(&self.v) {
            out.axpy(v, inner_unchecked(u, psi));
        }
        out
    }

    pub fn to_matrix(&self, rows: usize, cols: usize) -> QMatrix {
        let mut m = QMatrix::zeros(rows, cols);
        for (u, v) in self.u.iter().zip(&self.v) {
            for i in 0..rows {
                for j in 0..cols {
                    m[(i, j)] += u[i] * v[j].conj();
                }
            }
        }
        m
    }
}

pub fn finite_rank_decomp(a: &QMatrix) -> Result<FiniteRankDecomp> {
    if a.rows == 0 || a.cols == 0 {
        return Ok(FiniteRankDecomp { u: Vec::new(), v: Vec::new() });
    }
    let (s, u, _) = embedding::chi_svd(a)?;
    let smax = s.first().copied().unwrap_or(0.0);
    if smax == 0.0 {
        return Ok(FiniteRankDecomp { u: Vec::new(), v: Vec::new() });
    }
    let above = s.iter().filter(|&&x| x > embedding::RANK_TOL * smax).count();
    if above % 2 != 0 {
        return Err(Error::RankAmbiguous(above));
    }
    let cand: Vec<QVector> = (0..above).map(|j| unchi_vector(&column(&u, j))).collect();
    let us = gram_schmidt(&cand)?.into_vectors();
    if us.len() != above / 2 {
        return Err(Error::Numerical(format!("range pairing produced {} vectors, expected {}", us.len(), above / 2)));
    }
    let ad = adjoint(a);
    let vs = us.iter().map(|x| apply(&ad, x)).collect::<Result<Vec<_>>>()?;
    Ok(FiniteRankDecomp { u: us, v: vs })
}

/// Neumann series term cap.
pub const NEUMANN_MAX_TERMS: usize = 10_000;

/// `(I - A)⁻¹ ≈ Σ_k A^k`, summed until the Frobenius norm of the newest term
/// drops below `tol`.
pub fn neumann_inverse(a: &QMatrix, tol: f64) -> Result<QMatrix> {
    if !a.is_square() {
        return Err(Error::Dimension { expected: a.rows, got: a.cols });
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Input(format!("tolerance must be positive, got {tol}")));
    }
    let norm = op_norm(a)?;
    if norm >= 1.0 {
        return Err(Error::NotContractive(norm));
    }
    let n = a.rows;
    let mut sum = QMatrix::identity(n);
    let mut term = QMatrix::identity(n);
    for _ in 0..NEUMANN_MAX_TERMS {
        term = term.matmul(a)?;
        let t = term.frobenius();
        if !t.is_finite() {
            return Err(Error::Numerical("Neumann series diverged".into()));
        }
        sum = &sum + &term;
        if t < tol {
            return Ok(sum);
        }
    }
    Err(Error::Numerical(format!("Neumann series not converged after {NEUMANN_MAX_TERMS} terms")))
}

#[cfg(test)]
mod tests {
    use super::*;

    const O: Quaternion = Quaternion::ONE;
    const Z: Quaternion = Quaternion::ZERO;
    const I: Quaternion = Quaternion::I;
    const J: Quaternion = Quaternion::J;
    const K: Quaternion = Quaternion::K;

    fn m(rows: Vec<Vec<Quaternion>>) -> QMatrix {
        QMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn apply_examples() {
        let a = QMatrix::diag(&[I, J]);
        assert_eq!(apply(&a, &QVector::new(vec![O, O])).unwrap(), QVector::new(vec![I, J]));
        assert_eq!(apply(&QMatrix::zeros(2, 2), &QVector::new(vec![I, K])).unwrap(), QVector::zeros(2));
        assert!(apply(&a, &QVector::zeros(3)).is_err());
    }

    #[test]
    fn adjoint_examples() {
        assert_eq!(adjoint(&m(vec![vec![I]])), m(vec![vec![-I]]));
        let a = m(vec![vec![O, I], vec![J, -K]]);
        assert_eq!(adjoint(&adjoint(&a)), a);
    }

    #[test]
    fn scalar_op_examples() {
        let a = m(vec![vec![O, I], vec![J, K]]);
        let r = Quaternion::real(2.5);
        assert_eq!(scalar_op(r, &a, Side::Left, None).unwrap(), a.scale(2.5));
        assert_eq!(scalar_op(r, &a, Side::Right, None).unwrap(), a.scale(2.5));
        let ji = scalar_op(J, &QMatrix::identity(2), Side::Left, None).unwrap();
        let phi = QVector::new(vec![I, O]);
        assert_eq!(apply(&ji, &phi).unwrap(), phi.lmul_std(J));
    }

    #[test]
    fn rank_kernel_examples() {
        let (r, k) = rank_kernel(&QMatrix::identity(3)).unwrap();
        assert_eq!((r, k.len()), (3, 0));

        let a = m(vec![vec![O, I], vec![J, -K]]);
        let (r, k) = rank_kernel(&a).unwrap();
        assert_eq!((r, k.len()), (1, 1));
        let res = apply(&a, &k[0]).unwrap();
        assert!(res.norm() < 1e-12);
        // the kernel is the right span of (-i, 1)/√2
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let expected = QVector::new(vec![-I * h, O * h]);
        let c = inner_unchecked(&expected, &k[0]);
        assert!((c.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn norms() {
        assert!((op_norm(&QMatrix::identity(4)).unwrap() - 1.0).abs() < 1e-14);
        assert!((op_norm(&QMatrix::diag(&[I, J * 2.0])).unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn finite_rank_examples() {
        let d = finite_rank_decomp(&QMatrix::identity(2)).unwrap();
        assert_eq!(d.rank(), 2);
        let d = finite_rank_decomp(&QMatrix::zeros(3, 3)).unwrap();
        assert_eq!(d.rank(), 0);
        let u = QVector::new(vec![Z, J]);
        let v = QVector::new(vec![Quaternion::new(1.0, 2.0, 0.0, 0.0), K]);
        let a = FiniteRankDecomp { u: vec![u.clone()], v: vec![v.clone()] }.to_matrix(2, 2);
        let d = finite_rank_decomp(&a).unwrap();
        assert_eq!(d.rank(), 1);
        let back = d.to_matrix(2, 2);
        assert!((&back - &a).max_abs() < 1e-12);
    }

    #[test]
    fn neumann_examples() {
        assert_eq!(neumann_inverse(&QMatrix::zeros(2, 2), 1e-12).unwrap(), QMatrix::identity(2));
        let b = neumann_inverse(&QMatrix::identity(2).scale(0.5), 1e-14).unwrap();
        assert!((&b - &QMatrix::identity(2).scale(2.0)).max_abs() < 1e-12);
        assert!(matches!(neumann_inverse(&QMatrix::identity(2), 1e-12), Err(Error::NotContractive(_))));
    }

    #[test]
    fn matrix_json() {
        let a = m(vec![vec![O, I], vec![J, K]]);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(serde_json::from_str::<QMatrix>(&s).unwrap(), a);
        assert!(serde_json::from_str::<QMatrix>(r#"{"n":2,"entries":[[[1,0,0,0]]]}"#).is_err());
    }
}
