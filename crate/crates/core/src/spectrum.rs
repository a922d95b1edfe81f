//! Pseudo-resolvent, point S-spectrum and the approximate-point witness `μ`.

use serde::Serialize;

use crate::embedding::{self, chi};
use crate::error::{Error, Result};
use crate::matrix::{adjoint, op_norm, QMatrix};
use crate::quaternion::{Quaternion, SphereClass};

/// Relative merge distance for sphere representatives.
pub const SPHERE_MERGE_TOL: f64 = 1e-8;
/// Eigenvalues with imaginary part above `-CLAMP_TOL` count as real.
pub const CLAMP_TOL: f64 = 1e-10;

/// `R_q(A) = A² - 2Re(q)A + |q|²I`.
pub fn pseudo_resolvent(a: &QMatrix, q: Quaternion) -> Result<QMatrix> {
    if !a.is_square() {
        return Err(Error::Dimension { expected: a.rows(), got: a.cols() });
    }
    let n = a.rows();
    let a2 = a.matmul(a)?;
    let (t, s) = (2.0 * q.re(), q.norm_sqr());
    Ok(QMatrix::from_fn(n, n, |i, j| {
        let mut x = a2[(i, j)] - a[(i, j)].scale(t);
        if i == j {
            x.q0 += s;
        }
        x
    }))
}

/// `μ(A, q) = min_{|φ|=1} |R_q(A)φ|`.
pub fn mu(a: &QMatrix, q: Quaternion) -> Result<f64> {
    let r = pseudo_resolvent(a, q)?;
    Ok(embedding::chi_singular_values(&r)?.last().copied().unwrap_or(0.0))
}

/// Default point-spectrum threshold `1e-8 · max(1, ‖A‖)²`.
pub fn default_tol(a: &QMatrix) -> Result<f64> {
    let n = op_norm(a)?.max(1.0);
    Ok(1e-8 * n * n)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SphereMult {
    pub sphere: SphereClass,
    pub mult: usize,
}

/// Right-eigenvalue spheres from the eigenvalues of `χ(A)`.
pub fn point_spectrum(a: &QMatrix) -> Result<Vec<SphereMult>> {
    if !a.is_square() {
        return Err(Error::Dimension { expected: a.rows(), got: a.cols() });
    }
    if a.rows() == 0 {
        return Ok(Vec::new());
    }
    let eig = chi(a).eigenvalues()?;
    if eig.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Numerical("eigensolver returned non-finite values".into()));
    }
    let mut pts: Vec<SphereClass> = eig
        .iter()
        .map(|z| {
            let rad = if z.im.abs() < CLAMP_TOL { 0.0 } else { z.im.abs() };
            SphereClass::new(z.re, rad)
        })
        .collect();
    pts.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.rad.total_cmp(&y.rad)));
    Ok(cluster(&pts))
}

/// Single-linkage merge of sorted points; multiplicities halve the complex count.
fn cluster(pts: &[SphereClass]) -> Vec<SphereMult> {
    let mut groups: Vec<Vec<SphereClass>> = Vec::new();
    for &p in pts {
        let tol = SPHERE_MERGE_TOL * (1.0 + p.re.hypot(p.rad));
        match groups.iter_mut().find(|g| g.iter().any(|&m| m.distance(p) < tol)) {
            Some(g) => g.push(p),
            None => groups.push(vec![p]),
        }
    }
    let mut out: Vec<SphereMult> = groups
        .into_iter()
        .map(|g| {
            let k = g.len() as f64;
            let re = g.iter().map(|p| p.re).sum::<f64>() / k;
            let rad = g.iter().map(|p| p.rad).sum::<f64>() / k;
            SphereMult { sphere: SphereClass::new(re, rad), mult: g.len().div_ceil(2) }
        })
        .collect();
    out.sort_by(|x, y| x.sphere.re.total_cmp(&y.sphere.re).then(x.sphere.rad.total_cmp(&y.sphere.rad)));
    out
}

/// Spectral flags of a single point. `residual` and `continuous` are always
/// false in finite dimension but kept so the partition is explicit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub point: bool,
    pub approximate: bool,
    pub compression: bool,
    pub residual: bool,
    pub continuous: bool,
    pub resolvent: bool,
}

/// Kernel test with a threshold scaled by the size of `A² + |q|²`, so that a
/// pseudo-resolvent that is zero up to rounding counts as singular.
fn has_kernel(r: &QMatrix, scale: f64) -> Result<bool> {
    let s = embedding::chi_singular_values(r)?;
    Ok(s.last().is_some_and(|&m| m <= embedding::RANK_TOL * scale))
}

pub fn classify(a: &QMatrix, q: Quaternion, tol: f64) -> Result<Flags> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Input(format!("tolerance must be positive, got {tol}")));
    }
    let r = pseudo_resolvent(a, q)?;
    let m = embedding::chi_singular_values(&r)?.last().copied().unwrap_or(0.0);
    let rc = pseudo_resolvent(&adjoint(a), q.conj())?;
    let scale = op_norm(a)?.powi(2).max(q.norm_sqr()).max(1.0);
    Ok(Flags {
        point: has_kernel(&r, scale)?,
        approximate: m <= tol,
        compression: has_kernel(&rc, scale)?,
        residual: false,
        continuous: false,
        resolvent: m > tol,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SphereEntry {
    pub re: f64,
    pub rad: f64,
    pub mult: usize,
    pub mu: f64,
    pub flags: Flags,
}

#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub q: Quaternion,
    pub mu: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumReport {
    pub n: usize,
    pub norm: f64,
    pub tol_point: f64,
    pub spheres: Vec<SphereEntry>,
    pub resolvent_certificates: Vec<Certificate>,
}

/// Number of resolvent certificates sampled on the outer half circle.
pub const CERTIFICATES: usize = 5;

pub fn spectrum_report(a: &QMatrix, tol: Option<f64>) -> Result<SpectrumReport> {
    let norm = op_norm(a)?;
    let tol = match tol {
        Some(t) if t > 0.0 => t,
        Some(t) => return Err(Error::Input(format!("tolerance must be positive, got {t}"))),
        None => default_tol(a)?,
    };
    let spheres = point_spectrum(a)?
        .into_iter()
        .map(|s| {
            let q = s.sphere.representative();
            Ok(SphereEntry { re: s.sphere.re, rad: s.sphere.rad, mult: s.mult, mu: mu(a, q)?, flags: classify(a, q, tol)? })
        })
        .collect::<Result<Vec<_>>>()?;
    let radius = norm + 1.0;
    let resolvent_certificates = (0..CERTIFICATES)
        .map(|k| {
            let t = std::f64::consts::PI * k as f64 / (CERTIFICATES - 1) as f64;
            let q = Quaternion::new(radius * t.cos(), radius * t.sin(), 0.0, 0.0);
            Ok(Certificate { q, mu: mu(a, q)? })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SpectrumReport { n: a.rows(), norm, tol_point: tol, spheres, resolvent_certificates })
}

/// `μ` on a grid over the half-plane `{(re, rad) : rad ≥ 0}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Scan {
    pub re: Vec<f64>,
    pub rad: Vec<f64>,
    /// `mu[i][j]` at `(re[i], rad[j])`.
    pub mu: Vec<Vec<f64>>,
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect()
}

pub fn scan(a: &QMatrix, re_range: (f64, f64), rad_range: (f64, f64), grid: (usize, usize)) -> Result<Scan> {
    if grid.0 < 2 || grid.1 < 2 {
        return Err(Error::Input(format!("grid must be at least 2x2, got {}x{}", grid.0, grid.1)));
    }
    let finite = [re_range.0, re_range.1, rad_range.0, rad_range.1].iter().all(|x| x.is_finite());
    if !finite || re_range.0 >= re_range.1 || rad_range.0 < 0.0 || rad_range.0 >= rad_range.1 {
        return Err(Error::Input(format!("invalid scan range re {re_range:?}, rad {rad_range:?}")));
    }
    let re = linspace(re_range.0, re_range.1, grid.0);
    let rad = linspace(rad_range.0, rad_range.1, grid.1);
    let mu = re
        .iter()
        .map(|&x| rad.iter().map(|&y| mu(a, Quaternion::new(x, y, 0.0, 0.0))).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(Scan { re, rad, mu })
}

impl Scan {
    /// Cells with `μ ≤ tol`.
    pub fn zeros(&self, tol: f64) -> Vec<(f64, f64)> {
        let mut out = Vec::new();
        for (i, row) in self.mu.iter().enumerate() {
            for (j, &m) in row.iter().enumerate() {
                if m <= tol {
                    out.push((self.re[i], self.rad[j]));
                }
            }
        }
        out
    }
}
