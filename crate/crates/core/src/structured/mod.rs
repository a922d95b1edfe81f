//! Structured operators on `ℓ²(ℕ, ℍ)`: the algebra generated by the
//! unilateral shift `S`, its adjoint `S'`, eventually constant diagonals and
//! finite-rank patches.

mod env;
mod eval;
mod parser;

use std::fmt;
use std::sync::Arc;

pub use env::{DiagonalSpec, Env, PatchSpec, SparseVec};
pub use eval::{min_section, truncate, truncate_rect, Block};
pub use parser::parse_expr;

use crate::quaternion::Quaternion;

/// `diag(prefix[0], ..., prefix[m-1], limit, limit, ...)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagonal {
    pub name: Option<String>,
    pub prefix: Vec<Quaternion>,
    pub limit: Quaternion,
}

impl Diagonal {
    pub fn scalar(q: Quaternion) -> Self {
        Diagonal { name: None, prefix: Vec::new(), limit: q }
    }

    pub fn entry(&self, k: usize) -> Quaternion {
        self.prefix.get(k).copied().unwrap_or(self.limit)
    }

    pub fn is_scalar(&self) -> bool {
        self.prefix.is_empty()
    }

    fn sup_norm(&self) -> f64 {
        self.prefix.iter().map(|q| q.norm()).fold(self.limit.norm(), f64::max)
    }
}

/// `φ ↦ Σ u_i ⟨v_i|φ⟩` with finitely supported `u_i`, `v_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct Patch {
    pub name: Option<String>,
    pub pairs: Vec<(SparseVec, SparseVec)>,
}

impl Patch {
    fn bands(&self) -> (usize, usize) {
        let (mut lower, mut upper) = (0, 0);
        for (u, v) in &self.pairs {
            for &(r, _) in u.entries() {
                for &(c, _) in v.entries() {
                    lower = lower.max(r.saturating_sub(c));
                    upper = upper.max(c.saturating_sub(r));
                }
            }
        }
        (lower, upper)
    }

    fn extent(&self) -> usize {
        self.pairs.iter().map(|(u, v)| u.extent().max(v.extent())).max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Shift,
    AdjShift,
    Identity,
    Diagonal(Arc<Diagonal>),
    Patch(Arc<Patch>),
    Sum(Box<Expr>, Box<Expr>),
    Product(Box<Expr>, Box<Expr>),
    Power(Box<Expr>, u32),
}

#[allow(clippy::should_implement_trait)]
impl Expr {
    pub fn scalar(q: Quaternion) -> Expr {
        Expr::Diagonal(Arc::new(Diagonal::scalar(q)))
    }

    pub fn real(r: f64) -> Expr {
        Expr::scalar(Quaternion::real(r))
    }

    pub fn diagonal(d: Diagonal) -> Expr {
        Expr::Diagonal(Arc::new(d))
    }

    pub fn patch(p: Patch) -> Expr {
        Expr::Patch(Arc::new(p))
    }

    pub fn add(self, other: Expr) -> Expr {
        Expr::Sum(Box::new(self), Box::new(other))
    }

    /// `self - other`, stored as `self + (-1)·other`.
    pub fn sub(self, other: Expr) -> Expr {
        self.add(Expr::real(-1.0).mul(other))
    }

    pub fn mul(self, other: Expr) -> Expr {
        Expr::Product(Box::new(self), Box::new(other))
    }

    pub fn pow(self, n: u32) -> Expr {
        Expr::Power(Box::new(self), n)
    }

    /// `(lower, upper)` band widths.
    pub fn bands(&self) -> (usize, usize) {
        match self {
            Expr::Shift => (1, 0),
            Expr::AdjShift => (0, 1),
            Expr::Identity | Expr::Diagonal(_) => (0, 0),
            Expr::Patch(p) => p.bands(),
            Expr::Sum(a, b) => {
                let (x, y) = (a.bands(), b.bands());
                (x.0.max(y.0), x.1.max(y.1))
            }
            Expr::Product(a, b) => {
                let (x, y) = (a.bands(), b.bands());
                (x.0 + y.0, x.1 + y.1)
            }
            Expr::Power(a, n) => {
                let (l, u) = a.bands();
                (l * *n as usize, u * *n as usize)
            }
        }
    }

    /// Index `m` with `T[i+1, j+1] = T[i, j]` whenever `i, j >= m`.
    /// Conservative for products.
    pub fn stabilization(&self) -> usize {
        match self {
            Expr::Shift | Expr::AdjShift | Expr::Identity => 0,
            Expr::Diagonal(d) => d.prefix.len(),
            Expr::Patch(p) => p.extent(),
            Expr::Sum(a, b) => a.stabilization().max(b.stabilization()),
            Expr::Product(a, b) => a.stabilization().max(b.stabilization()) + b.bands().1,
            Expr::Power(a, n) => {
                let (m, u) = (a.stabilization(), a.bands().1);
                (1..*n as usize).fold(if *n == 0 { 0 } else { m }, |acc, k| m.max(acc) + u * k)
            }
        }
    }

    /// Upper bound on the operator norm.
    pub fn norm_bound(&self) -> f64 {
        match self {
            Expr::Shift | Expr::AdjShift | Expr::Identity => 1.0,
            Expr::Diagonal(d) => d.sup_norm(),
            Expr::Patch(p) => p.pairs.iter().map(|(u, v)| u.norm() * v.norm()).sum(),
            Expr::Sum(a, b) => a.norm_bound() + b.norm_bound(),
            Expr::Product(a, b) => a.norm_bound() * b.norm_bound(),
            Expr::Power(a, n) => a.norm_bound().powi(*n as i32),
        }
    }

    /// Compact by construction. Every structurally compact operator here is
    /// in fact of finite rank.
    pub fn is_compact(&self) -> bool {
        match self {
            Expr::Shift | Expr::AdjShift | Expr::Identity => false,
            Expr::Diagonal(d) => d.limit.is_zero(),
            Expr::Patch(_) => true,
            Expr::Sum(a, b) => a.is_compact() && b.is_compact(),
            Expr::Product(a, b) => a.is_compact() || b.is_compact(),
            Expr::Power(a, n) => *n > 0 && a.is_compact(),
        }
    }

    /// All matrix entries are real.
    pub fn is_real(&self) -> bool {
        match self {
            Expr::Shift | Expr::AdjShift | Expr::Identity => true,
            Expr::Diagonal(d) => d.limit.is_real() && d.prefix.iter().all(|q| q.is_real()),
            Expr::Patch(p) => p.pairs.iter().all(|(u, v)| u.is_real() && v.is_real()),
            Expr::Sum(a, b) | Expr::Product(a, b) => a.is_real() && b.is_real(),
            Expr::Power(a, _) => a.is_real(),
        }
    }

    /// Expression of the Hilbert adjoint.
    pub fn adjoint(&self) -> Expr {
        match self {
            Expr::Shift => Expr::AdjShift,
            Expr::AdjShift => Expr::Shift,
            Expr::Identity => Expr::Identity,
            Expr::Diagonal(d) => Expr::diagonal(Diagonal {
                name: d.name.as_ref().map(|n| format!("{n}'")),
                prefix: d.prefix.iter().map(|q| q.conj()).collect(),
                limit: d.limit.conj(),
            }),
            Expr::Patch(p) => Expr::patch(Patch {
                name: p.name.as_ref().map(|n| format!("{n}'")),
                pairs: p.pairs.iter().map(|(u, v)| (v.clone(), u.clone())).collect(),
            }),
            Expr::Sum(a, b) => a.adjoint().add(b.adjoint()),
            Expr::Product(a, b) => b.adjoint().mul(a.adjoint()),
            Expr::Power(a, n) => a.adjoint().pow(*n),
        }
    }

    /// Top-level summands.
    pub fn terms(&self) -> Vec<&Expr> {
        match self {
            Expr::Sum(a, b) => {
                let mut t = a.terms();
                t.extend(b.terms());
                t
            }
            e => vec![e],
        }
    }

    /// Sum of the given terms, or the zero operator when empty.
    pub fn sum_of(terms: impl IntoIterator<Item = Expr>) -> Expr {
        terms.into_iter().reduce(Expr::add).unwrap_or_else(|| Expr::real(0.0))
    }
}

fn fmt_real(x: f64) -> String {
    format!("{x}")
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Shift => write!(f, "S"),
            Expr::AdjShift => write!(f, "S'"),
            Expr::Identity => write!(f, "I"),
            Expr::Diagonal(d) => match (&d.name, d.is_scalar()) {
                (Some(n), _) => write!(f, "D({n})"),
                (None, true) if d.limit.is_real() && d.limit.q0 >= 0.0 => write!(f, "{}", fmt_real(d.limit.q0)),
                (None, true) => {
                    let q = d.limit;
                    write!(f, "q({},{},{},{})", fmt_real(q.q0), fmt_real(q.q1), fmt_real(q.q2), fmt_real(q.q3))
                }
                (None, false) => write!(f, "D(<{} entries>)", d.prefix.len()),
            },
            Expr::Patch(p) => match &p.name {
                Some(n) => write!(f, "F({n})"),
                None => write!(f, "F(<rank {}>)", p.pairs.len()),
            },
            Expr::Sum(a, b) => write!(f, "{a} + {b}"),
            Expr::Product(a, b) => {
                let wrap = |e: &Expr| matches!(e, Expr::Sum(..));
                if wrap(a) { write!(f, "({a})")? } else { write!(f, "{a}")? }
                write!(f, " * ")?;
                if wrap(b) { write!(f, "({b})") } else { write!(f, "{b}") }
            }
            Expr::Power(a, n) => match **a {
                Expr::Shift | Expr::AdjShift | Expr::Identity | Expr::Diagonal(_) | Expr::Patch(_) => write!(f, "{a}^{n}"),
                _ => write!(f, "({a})^{n}"),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bands_and_stabilization() {
        assert_eq!(Expr::Shift.pow(3).bands(), (3, 0));
        assert_eq!(Expr::Shift.mul(Expr::AdjShift).bands(), (1, 1));
        assert_eq!(Expr::Shift.mul(Expr::AdjShift).stabilization(), 1);
        assert_eq!(Expr::AdjShift.mul(Expr::Shift).stabilization(), 0);
        assert_eq!(Expr::AdjShift.pow(2).stabilization(), 1);
        assert_eq!(Expr::AdjShift.pow(2).stabilization(), Expr::AdjShift.mul(Expr::AdjShift).stabilization());
        assert_eq!(Expr::Shift.pow(2).mul(Expr::AdjShift.pow(2)).stabilization(), 3);
    }

    #[test]
    fn adjoint_reverses_products() {
        let e = Expr::Shift.mul(Expr::scalar(Quaternion::I));
        assert_eq!(e.adjoint(), Expr::scalar(-Quaternion::I).mul(Expr::AdjShift));
        assert_eq!(e.adjoint().adjoint(), e);
    }

    #[test]
    fn compactness_rules() {
        assert!(Expr::real(0.0).is_compact());
        assert!(!Expr::Identity.is_compact());
        assert!(!Expr::Shift.pow(0).is_compact());
        assert!(Expr::Shift.mul(Expr::real(0.0)).is_compact());
        assert!(!Expr::Shift.add(Expr::real(0.0)).is_compact());
    }
}
