//! Fredholm data of structured operators: symbolic index calculus checked
//! against the truncation oracle, semi-Fredholm status and parametrices.

mod oracle;
mod symbolic;

use std::fmt;

use serde::{Serialize, Serializer};

pub use oracle::{kernel_dims_oracle, OracleReport, SideReport, DEFAULT_DELTA, GAP_RATIO, TIERS};
pub use symbolic::{analyze, index_symbolic, Analysis, SymbolicIndex};

use crate::embedding;
use crate::error::{Error, Result};
use crate::structured::{min_section, Block, Expr};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dim {
    Exact(usize),
    AtLeast(usize),
    Infinite,
}

impl Dim {
    pub fn exact(self) -> Option<usize> {
        match self {
            Dim::Exact(n) => Some(n),
            _ => None,
        }
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dim::Exact(n) => write!(f, "{n}"),
            Dim::AtLeast(n) => write!(f, ">={n}"),
            Dim::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Dim {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Dim::Exact(n) => s.serialize_u64(*n as u64),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    Fredholm,
    LeftSemiOnly,
    RightSemiOnly,
    Neither,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Symbolic,
    Oracle,
    BothAgree,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FredholmData {
    pub dim_ker: Dim,
    pub dim_coker: Dim,
    pub index: Option<i64>,
    pub status: Status,
    pub method: Method,
    pub stabilized: bool,
}

/// Fredholm data together with the evidence it was assembled from.
#[derive(Debug, Clone)]
pub struct Evidence {
    pub data: FredholmData,
    pub symbolic: Analysis,
    pub oracle: OracleReport,
}

fn side_dim(s: &SideReport) -> Dim {
    if s.stabilized {
        Dim::Exact(s.count)
    } else if s.growing() {
        Dim::Infinite
    } else {
        Dim::AtLeast(s.count)
    }
}

pub fn fredholm_data(expr: &Expr) -> Result<FredholmData> {
    Ok(fredholm_evidence(expr, DEFAULT_DELTA)?.data)
}

pub fn fredholm_evidence(expr: &Expr, delta: f64) -> Result<Evidence> {
    let symbolic = analyze(expr);
    let oracle = kernel_dims_oracle(expr, delta)?;
    let data = combine(expr, symbolic.index, &oracle)?;
    Ok(Evidence { data, symbolic, oracle })
}

fn conflict(expr: &Expr, what: String) -> Error {
    Error::Conflict(format!("{expr}: {what}"))
}

fn combine(expr: &Expr, sym: SymbolicIndex, o: &OracleReport) -> Result<FredholmData> {
    let (ks, cs) = (o.kernel.stabilized, o.cokernel.stabilized);
    let (k, c) = (o.dim_ker as i64, o.dim_coker as i64);
    match sym {
        SymbolicIndex::Index(ind) => {
            if o.closed_range() == Some(false) {
                return Err(conflict(expr, format!("symbolic index {ind} but the range is not closed")));
            }
            let (dim_ker, dim_coker, method) = match (ks, cs) {
                (true, true) if k - c != ind => {
                    return Err(conflict(expr, format!("symbolic index {ind}, oracle dims ({k}, {c})")));
                }
                (true, true) => (Dim::Exact(o.dim_ker), Dim::Exact(o.dim_coker), Method::BothAgree),
                (true, false) => {
                    let other = k - ind;
                    if other < c {
                        return Err(conflict(expr, format!("symbolic index {ind} forces dim coker {other} < {c}")));
                    }
                    (Dim::Exact(o.dim_ker), Dim::Exact(other as usize), Method::Symbolic)
                }
                (false, true) => {
                    let other = c + ind;
                    if other < k {
                        return Err(conflict(expr, format!("symbolic index {ind} forces dim ker {other} < {k}")));
                    }
                    (Dim::Exact(other as usize), Dim::Exact(o.dim_coker), Method::Symbolic)
                }
                (false, false) => (Dim::AtLeast(o.dim_ker), Dim::AtLeast(o.dim_coker), Method::Symbolic),
            };
            Ok(FredholmData { dim_ker, dim_coker, index: Some(ind), status: Status::Fredholm, method, stabilized: ks && cs })
        }
        SymbolicIndex::NotFredholm => {
            if ks && cs && o.closed_range() == Some(true) {
                return Err(conflict(expr, format!("symbolically not Fredholm, oracle certifies dims ({k}, {c})")));
            }
            let (dk, dc) = (side_dim(&o.kernel), side_dim(&o.cokernel));
            Ok(FredholmData {
                dim_ker: dk,
                dim_coker: dc,
                index: None,
                status: semi_status(dk, dc, o.closed_range()),
                method: Method::Symbolic,
                stabilized: ks && cs,
            })
        }
        SymbolicIndex::Undecidable => {
            let (dk, dc) = (side_dim(&o.kernel), side_dim(&o.cokernel));
            let closed = o.closed_range();
            let status = if ks && cs && closed == Some(true) { Status::Fredholm } else { semi_status(dk, dc, closed) };
            let index = (status == Status::Fredholm).then_some(k - c);
            Ok(FredholmData { dim_ker: dk, dim_coker: dc, index, status, method: Method::Oracle, stabilized: ks && cs })
        }
    }
}

fn semi_status(dk: Dim, dc: Dim, closed: Option<bool>) -> Status {
    if closed != Some(true) {
        return Status::Neither;
    }
    match (dk.exact(), dc.exact()) {
        (Some(_), Some(_)) => Status::Fredholm,
        (Some(_), None) => Status::LeftSemiOnly,
        (None, Some(_)) => Status::RightSemiOnly,
        (None, None) => Status::Neither,
    }
}

/// Fredholm with index zero.
pub fn is_weyl(expr: &Expr) -> Result<bool> {
    let d = fredholm_data(expr)?;
    Ok(d.status == Status::Fredholm && d.index == Some(0))
}

/// Support check of a residual `R = PT - I` (or `TP - I`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualCheck {
    /// Residual entries vanish outside `[0, block) x [0, block)`.
    pub block: usize,
    /// Section size that was inspected.
    pub size: usize,
    pub max_outside: f64,
    /// Rank of the in-block part.
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParametrixCertificate {
    pub left: ResidualCheck,
    pub right: ResidualCheck,
}

impl ParametrixCertificate {
    pub fn max_outside(&self) -> f64 {
        self.left.max_outside.max(self.right.max_outside)
    }
}

/// Margin beyond the stabilization index inspected by residual checks.
pub const RESIDUAL_MARGIN: usize = 8;
pub const RESIDUAL_TOL: f64 = 1e-8;

/// Inspects `prod - I` past its stabilization index. Beyond that index the
/// residual is constant along diagonals, so a finite window decides it.
pub fn residual_check(prod: &Expr) -> Result<ResidualCheck> {
    let r = prod.clone().sub(Expr::Identity);
    let block = r.stabilization();
    let size = min_section(&r) + RESIDUAL_MARGIN;
    let m = Block::eval(&r, size).to_matrix(size);
    let mut max_outside: f64 = 0.0;
    for i in 0..size {
        for j in 0..size {
            if i >= block || j >= block {
                max_outside = max_outside.max(m[(i, j)].norm());
            }
        }
    }
    // Residuals are measured against I, so rounding noise is judged on an
    // absolute scale rather than relative to the largest residual entry.
    let rank = if block == 0 {
        0
    } else {
        let sv = embedding::chi_singular_values(&m.submatrix(block, block))?;
        sv.iter().filter(|&&s| s > RESIDUAL_TOL).count() / 2
    };
    Ok(ResidualCheck { block, size, max_outside, rank })
}

pub fn parametrix(expr: &Expr) -> Result<(Expr, ParametrixCertificate)> {
    let ev = fredholm_evidence(expr, DEFAULT_DELTA)?;
    if ev.data.status != Status::Fredholm {
        return Err(Error::NotFredholm);
    }
    let Some((p, _)) = ev.symbolic.parametrix else {
        return Err(Error::UnsupportedShape);
    };
    let left = residual_check(&p.clone().mul(expr.clone()))?;
    let right = residual_check(&expr.clone().mul(p.clone()))?;
    let cert = ParametrixCertificate { left, right };
    if cert.max_outside() > RESIDUAL_TOL {
        return Err(Error::Conflict(format!(
            "{expr}: parametrix residual {:.3e} outside the certified block",
            cert.max_outside()
        )));
    }
    Ok((p, cert))
}
