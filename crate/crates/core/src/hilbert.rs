//! Vectors in the right quaternionic Hilbert space `H^n`.

use std::ops::{Add, Index, IndexMut, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quaternion::Quaternion;

/// Orthonormality tolerance for bases.
pub const BASIS_TOL: f64 = 1e-10;
/// Relative cutoff below which Gram-Schmidt drops a vector.
pub const DROP_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct QVector {
    pub entries: Vec<Quaternion>,
}

impl QVector {
    pub fn new(entries: Vec<Quaternion>) -> Self {
        QVector { entries }
    }

    pub fn zeros(n: usize) -> Self {
        QVector { entries: vec![Quaternion::ZERO; n] }
    }

    pub fn unit(n: usize, k: usize) -> Self {
        let mut v = QVector::zeros(n);
        v.entries[k] = Quaternion::ONE;
        v
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.entries.iter().map(|q| q.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Right scalar action `(φq)_k = φ_k q`.
    pub fn rmul(&self, q: Quaternion) -> QVector {
        QVector::new(self.entries.iter().map(|&x| x * q).collect())
    }

    /// Componentwise left product, i.e. left multiplication in the standard basis.
    pub fn lmul_std(&self, q: Quaternion) -> QVector {
        QVector::new(self.entries.iter().map(|&x| q * x).collect())
    }

    pub fn scale(&self, r: f64) -> QVector {
        QVector::new(self.entries.iter().map(|&x| x.scale(r)).collect())
    }

    /// `self + u·c`, in place.
    pub fn axpy(&mut self, u: &QVector, c: Quaternion) {
        for (x, &y) in self.entries.iter_mut().zip(&u.entries) {
            *x += y * c;
        }
    }

    fn check_len(&self, other: &QVector) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::Dimension { expected: self.len(), got: other.len() });
        }
        Ok(())
    }
}

impl Index<usize> for QVector {
    type Output = Quaternion;
    fn index(&self, i: usize) -> &Quaternion {
        &self.entries[i]
    }
}

impl IndexMut<usize> for QVector {
    fn index_mut(&mut self, i: usize) -> &mut Quaternion {
        &mut self.entries[i]
    }
}

impl Add for &QVector {
    type Output = QVector;
    fn add(self, o: &QVector) -> QVector {
        QVector::new(self.entries.iter().zip(&o.entries).map(|(&a, &b)| a + b).collect())
    }
}

impl Sub for &QVector {
    type Output = QVector;
    fn sub(self, o: &QVector) -> QVector {
        QVector::new(self.entries.iter().zip(&o.entries).map(|(&a, &b)| a - b).collect())
    }
}

impl Neg for &QVector {
    type Output = QVector;
    fn neg(self) -> QVector {
        QVector::new(self.entries.iter().map(|&a| -a).collect())
    }
}

#[derive(Serialize, Deserialize)]
struct VectorFile {
    n: usize,
    entries: Vec<Quaternion>,
}

impl Serialize for QVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        VectorFile { n: self.len(), entries: self.entries.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for QVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let f = VectorFile::deserialize(d)?;
        if f.entries.len() != f.n {
            return Err(serde::de::Error::custom(format!(
                "vector declares n = {} but has {} entries",
                f.n,
                f.entries.len()
            )));
        }
        Ok(QVector::new(f.entries))
    }
}

/// `⟨φ|ψ⟩ = Σ conj(φ_k) ψ_k`.
pub fn inner(phi: &QVector, psi: &QVector) -> Result<Quaternion> {
    phi.check_len(psi)?;
    Ok(inner_unchecked(phi, psi))
}

pub(crate) fn inner_unchecked(phi: &QVector, psi: &QVector) -> Quaternion {
    phi.entries
        .iter()
        .zip(&psi.entries)
        .fold(Quaternion::ZERO, |acc, (&a, &b)| acc + a.conj() * b)
}

/// An orthonormal family in `H^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct HilbertBasis {
    dim: usize,
    vectors: Vec<QVector>,
}

impl HilbertBasis {
    /// Validates orthonormality of `vectors` in `H^dim`.
    pub fn new(dim: usize, vectors: Vec<QVector>) -> Result<Self> {
        for v in &vectors {
            if v.len() != dim {
                return Err(Error::Dimension { expected: dim, got: v.len() });
            }
        }
        let dev = orthonormality_defect(&vectors);
        if dev > BASIS_TOL {
            return Err(Error::Basis(dev));
        }
        Ok(HilbertBasis { dim, vectors })
    }

    pub fn standard(n: usize) -> Self {
        HilbertBasis { dim: n, vectors: (0..n).map(|k| QVector::unit(n, k)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// True when the family is a basis of the whole space.
    pub fn is_complete(&self) -> bool {
        self.vectors.len() == self.dim
    }

    pub fn vectors(&self) -> &[QVector] {
        &self.vectors
    }

    pub fn into_vectors(self) -> Vec<QVector> {
        self.vectors
    }

    /// Coefficients `⟨φ_k|φ⟩`.
    pub fn coefficients(&self, phi: &QVector) -> Result<Vec<Quaternion>> {
        self.vectors.iter().map(|u| inner(u, phi)).collect()
    }
}

/// `max |⟨φ_k|φ_l⟩ - δ_kl|`.
pub fn orthonormality_defect(vs: &[QVector]) -> f64 {
    let mut dev: f64 = 0.0;
    for (a, u) in vs.iter().enumerate() {
        for (b, v) in vs.iter().enumerate().skip(a) {
            let mut g = inner_unchecked(u, v);
            if a == b {
                g -= Quaternion::ONE;
            }
            dev = dev.max(g.norm());
        }
    }
    dev
}

/// Left scalar multiplication induced by `basis`: `qφ = Σ φ_k q ⟨φ_k|φ⟩`.
///
/// `None` selects the standard basis, where the action is componentwise.
pub fn left_mul(q: Quaternion, phi: &QVector, basis: Option<&HilbertBasis>) -> Result<QVector> {
    let Some(basis) = basis else {
        return Ok(phi.lmul_std(q));
    };
    if basis.dim() != phi.len() {
        return Err(Error::Dimension { expected: basis.dim(), got: phi.len() });
    }
    if !basis.is_complete() {
        return Err(Error::Basis(1.0));
    }
    let mut out = QVector::zeros(phi.len());
    for u in basis.vectors() {
        out.axpy(u, q * inner_unchecked(u, phi));
    }
    Ok(out)
}

/// Orthonormal basis of the right span of `vs`.
///
/// Classical Gram-Schmidt with one re-orthogonalization pass; vectors whose
/// remainder falls below `DROP_TOL` times the largest input norm are dropped.
pub fn gram_schmidt(vs: &[QVector]) -> Result<HilbertBasis> {
    let Some(first) = vs.first() else {
        return Err(Error::EmptySpan);
    };
    let n = first.len();
    for v in vs {
        if v.len() != n {
            return Err(Error::Dimension { expected: n, got: v.len() });
        }
    }
    let max_norm = vs.iter().map(QVector::norm).fold(0.0, f64::max);
    if max_norm == 0.0 {
        return Err(Error::EmptySpan);
    }
    let mut basis: Vec<QVector> = Vec::new();
    for v in vs {
        let mut w = v.clone();
        for _ in 0..2 {
            let coeffs: Vec<Quaternion> = basis.iter().map(|u| inner_unchecked(u, &w)).collect();
            for (u, c) in basis.iter().zip(coeffs) {
                w.axpy(u, -c);
            }
        }
        let nw = w.norm();
        if nw >= DROP_TOL * max_norm {
            basis.push(w.scale(1.0 / nw));
        }
    }
    Ok(HilbertBasis { dim: n, vectors: basis })
}

/// Orthogonal projection onto the span of an orthonormal family.
pub fn project(basis_of_m: &[QVector], phi: &QVector) -> Result<QVector> {
    let basis = HilbertBasis::new(phi.len(), basis_of_m.to_vec())?;
    let mut out = QVector::zeros(phi.len());
    for u in basis.vectors() {
        out.axpy(u, inner_unchecked(u, phi));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(e: &[Quaternion]) -> QVector {
        QVector::new(e.to_vec())
    }

    const O: Quaternion = Quaternion::ONE;
    const Z: Quaternion = Quaternion::ZERO;
    const I: Quaternion = Quaternion::I;
    const J: Quaternion = Quaternion::J;
    const K: Quaternion = Quaternion::K;

    #[test]
    fn inner_examples() {
        assert_eq!(inner(&v(&[O, Z]), &v(&[I, Z])).unwrap(), I);
        let phi = v(&[O, J]);
        assert_eq!(inner(&phi, &phi).unwrap(), Quaternion::real(2.0));
        assert!(matches!(inner(&phi, &v(&[O])), Err(Error::Dimension { .. })));
    }

    #[test]
    fn left_mul_standard() {
        let phi = v(&[I, O]);
        assert_eq!(left_mul(J, &phi, None).unwrap(), v(&[-K, J]));
        let std = HilbertBasis::standard(2);
        assert_eq!(left_mul(J, &phi, Some(&std)).unwrap(), v(&[-K, J]));
    }

    #[test]
    fn left_mul_rejects_bad_basis() {
        let bad = vec![v(&[O, O]), v(&[O, Z])];
        assert!(matches!(HilbertBasis::new(2, bad), Err(Error::Basis(_))));
        let partial = HilbertBasis::new(2, vec![v(&[O, Z])]).unwrap();
        assert!(matches!(left_mul(J, &v(&[O, O]), Some(&partial)), Err(Error::Basis(_))));
    }

    #[test]
    fn gram_schmidt_examples() {
        let b = gram_schmidt(&[v(&[O, Z]), v(&[O, O])]).unwrap();
        assert_eq!(b.vectors(), &[v(&[O, Z]), v(&[Z, O])]);

        let b = gram_schmidt(&[v(&[O, I])]).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(b.vectors()[0][0].approx_eq(O * h));
        assert!(b.vectors()[0][1].approx_eq(I * h));

        let b = gram_schmidt(&[v(&[O, Z]), v(&[I, Z])]).unwrap();
        assert_eq!(b.len(), 1);

        assert_eq!(gram_schmidt(&[v(&[Z, Z])]), Err(Error::EmptySpan));
        assert_eq!(gram_schmidt(&[]), Err(Error::EmptySpan));
    }

    #[test]
    fn projection_examples() {
        let q = Quaternion::new(1.0, 2.0, 3.0, 4.0);
        let p = Quaternion::new(-1.0, 0.5, 0.0, 2.0);
        let m = [v(&[O, Z])];
        assert_eq!(project(&m, &v(&[q, p])).unwrap(), v(&[q, Z]));
        assert_eq!(project(&m, &v(&[q, Z])).unwrap(), v(&[q, Z]));
        assert!(matches!(project(&[v(&[O, O])], &v(&[q, p])), Err(Error::Basis(_))));
    }

    #[test]
    fn json_round_trip() {
        let phi = v(&[I, Quaternion::new(1.0, 2.0, 3.0, 4.0)]);
        let s = serde_json::to_string(&phi).unwrap();
        assert_eq!(serde_json::from_str::<QVector>(&s).unwrap(), phi);
        assert!(serde_json::from_str::<QVector>(r#"{"n":3,"entries":[[1,0,0,0]]}"#).is_err());
    }
}
