//! Essential S-spectrum of structured operators, decided pointwise through
//! the Fredholm property of the pseudo-resolvent.

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fredholm::{fredholm_evidence, residual_check, Dim, Evidence, FredholmData, Status, DEFAULT_DELTA, RESIDUAL_TOL};
use crate::quaternion::{sphere_rep, Quaternion, SphereClass};
use crate::structured::Expr;

/// Relative floor on the smallest singular value of every section for the
/// invertibility certificate.
pub const INVERTIBILITY_FLOOR: f64 = 1e-4;

/// `R_q(T) = T² - 2Re(q)T + |q|²I`.
///
/// When the non-compact summands `T0` of `T` have real entries they commute
/// with complex scalars, and `R_q(T0) = (T0 - λ)(T0 - λ̄)` with
/// `λ = Re q + |Im q|·i`; the compact summands `K` then contribute the
/// compact remainder `T0K + KT0 + K² - 2Re(q)K`.
pub fn resolvent_expr(t: &Expr, q: Quaternion) -> Expr {
    let (compact, main): (Vec<&Expr>, Vec<&Expr>) = t.terms().into_iter().partition(|e| e.is_compact());
    if main.is_empty() || !main.iter().all(|e| e.is_real()) {
        return expanded(t, q);
    }
    let t0 = Expr::sum_of(main.into_iter().cloned());
    let lambda = Quaternion::new(q.re(), q.im_norm(), 0.0, 0.0);
    let factor = |l: Quaternion| t0.clone().add(Expr::scalar(-l));
    let mut r = factor(lambda).mul(factor(lambda.conj()));
    if !compact.is_empty() {
        let k = Expr::sum_of(compact.into_iter().cloned());
        r = r
            .add(t0.clone().mul(k.clone()))
            .add(k.clone().mul(t0))
            .add(k.clone().pow(2))
            .add(Expr::real(-2.0 * q.re()).mul(k));
    }
    r
}

fn expanded(t: &Expr, q: Quaternion) -> Expr {
    t.clone()
        .pow(2)
        .add(Expr::real(-2.0 * q.re()).mul(t.clone()))
        .add(Expr::real(q.norm_sqr()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Partition {
    Resolvent,
    Essential,
    SigmaK(i64),
}

impl Partition {
    pub fn name(self) -> &'static str {
        match self {
            Partition::Resolvent => "resolvent",
            Partition::Essential => "essential",
            Partition::SigmaK(_) => "sigma_k",
        }
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EssentialVerdict {
    pub q: Quaternion,
    pub sphere: SphereClass,
    pub verdict: Partition,
    pub k: Option<i64>,
    pub in_sigma_e: bool,
    pub left_only: bool,
    pub right_only: bool,
    pub method: String,
    pub fredholm: FredholmData,
}

/// Invertibility certificate for a Fredholm pseudo-resolvent: trivial
/// kernel and cokernel, sections bounded below, and vanishing parametrix
/// residuals when a structured parametrix exists.
fn invertible(r: &Expr, ev: &Evidence) -> Result<bool> {
    let d = &ev.data;
    if d.dim_ker != Dim::Exact(0) || d.dim_coker != Dim::Exact(0) || !d.stabilized {
        return Ok(false);
    }
    for side in [&ev.oracle.kernel, &ev.oracle.cokernel] {
        let floor = INVERTIBILITY_FLOOR * side.norm.max(1.0);
        if side.gaps.iter().any(|&g| g < floor) {
            return Ok(false);
        }
    }
    if let Some((p, _)) = &ev.symbolic.parametrix {
        let left = residual_check(&p.clone().mul(r.clone()))?;
        let right = residual_check(&r.clone().mul(p.clone()))?;
        if left.max_outside.max(right.max_outside) > RESIDUAL_TOL || left.rank + right.rank > 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_fredholm_at(t: &Expr, q: Quaternion) -> Result<EssentialVerdict> {
    let r = resolvent_expr(t, q);
    let ev = fredholm_evidence(&r, DEFAULT_DELTA)?;
    let status = ev.data.status;
    let verdict = if status != Status::Fredholm {
        Partition::Essential
    } else if invertible(&r, &ev)? {
        Partition::Resolvent
    } else {
        Partition::SigmaK(ev.data.index.unwrap_or(0))
    };
    let method = serde_json::to_value(ev.data.method)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default();
    Ok(EssentialVerdict {
        q,
        sphere: sphere_rep(q),
        verdict,
        k: match verdict {
            Partition::SigmaK(k) => Some(k),
            _ => None,
        },
        in_sigma_e: status != Status::Fredholm,
        left_only: status == Status::LeftSemiOnly,
        right_only: status == Status::RightSemiOnly,
        method,
        fredholm: ev.data,
    })
}

pub fn sigma_partition_at(t: &Expr, q: Quaternion) -> Result<Partition> {
    Ok(is_fredholm_at(t, q)?.verdict)
}

#[derive(Debug, Clone, Serialize)]
pub struct Comparison {
    pub samples: usize,
    pub agreements: usize,
    pub disagreements: Vec<Quaternion>,
}

/// Checks `σ_e(T) = σ_e(T + K)` at every sample for a compact `K`.
pub fn compare_essential(t: &Expr, k: &Expr, samples: &[Quaternion]) -> Result<Comparison> {
    if !k.is_compact() {
        return Err(Error::NonCompactPerturbation);
    }
    let tk = t.clone().add(k.clone());
    let mut disagreements = Vec::new();
    for &q in samples {
        if is_fredholm_at(t, q)?.in_sigma_e != is_fredholm_at(&tk, q)?.in_sigma_e {
            disagreements.push(q);
        }
    }
    Ok(Comparison { samples: samples.len(), agreements: samples.len() - disagreements.len(), disagreements })
}
