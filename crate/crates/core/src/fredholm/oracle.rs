//! Kernel and cokernel dimensions from rectangular finite sections.
//!
//! The first `N` columns of `T` are taken in full, giving an `(N + p) x N`
//! matrix with `p` the lower band width. Singular values below `δ·‖T‖` are
//! counted at three sizes; the count is accepted only when all three agree.
//! If the first tier of sizes does not settle, a second, larger tier is tried.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::embedding::quaternion_singular_values;
use crate::error::Result;
use crate::structured::{truncate_rect, Expr};

pub const DEFAULT_DELTA: f64 = 1e-6;
pub const TIERS: [[usize; 3]; 2] = [[64, 128, 256], [256, 384, 512]];
/// A closed range keeps its smallest nonzero singular value from collapsing:
/// the gap at the largest size must be at least this fraction of the gap at
/// the smallest.
pub const GAP_RATIO: f64 = 0.5;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SideReport {
    pub sizes: Vec<usize>,
    pub counts: Vec<usize>,
    /// Smallest singular value not counted, per size.
    pub gaps: Vec<f64>,
    /// Largest singular value seen across the sizes.
    pub norm: f64,
    pub threshold: f64,
    pub count: usize,
    pub stabilized: bool,
    /// Only meaningful when stabilized.
    pub closed: bool,
}

impl SideReport {
    /// Counts grow strictly with the section size.
    pub fn growing(&self) -> bool {
        self.counts.windows(2).all(|w| w[1] > w[0])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    pub dim_ker: usize,
    pub dim_coker: usize,
    pub stabilized: bool,
    pub kernel: SideReport,
    pub cokernel: SideReport,
}

impl OracleReport {
    /// `Some(closed)` when at least one side settled.
    pub fn closed_range(&self) -> Option<bool> {
        match (self.kernel.stabilized, self.cokernel.stabilized) {
            (false, false) => None,
            (true, false) => Some(self.kernel.closed),
            (false, true) => Some(self.cokernel.closed),
            (true, true) => Some(self.kernel.closed && self.cokernel.closed),
        }
    }
}

fn side(expr: &Expr, delta: f64, extra: usize) -> Result<SideReport> {
    let mut cache: BTreeMap<usize, Vec<f64>> = BTreeMap::new();
    let mut last = None;
    for tier in TIERS {
        let sizes: Vec<usize> = tier.iter().map(|n| n + extra).collect();
        for &n in &sizes {
            if let std::collections::btree_map::Entry::Vacant(slot) = cache.entry(n) {
                slot.insert(quaternion_singular_values(&truncate_rect(expr, n)?)?);
            }
        }
        let svs: Vec<&Vec<f64>> = sizes.iter().map(|n| &cache[n]).collect();
        let norm = svs.iter().filter_map(|s| s.first().copied()).fold(0.0, f64::max);
        let threshold = delta * norm;
        let small = |x: f64| x < threshold || norm == 0.0;
        let counts: Vec<usize> = svs.iter().map(|s| s.iter().filter(|&&x| small(x)).count()).collect();
        let gaps: Vec<f64> = svs
            .iter()
            .map(|s| s.iter().copied().filter(|&x| !small(x)).fold(f64::INFINITY, f64::min))
            .collect();
        let stabilized = counts.iter().all(|&c| c == counts[0]);
        let closed = gaps[2] >= GAP_RATIO * gaps[0];
        let report = SideReport { count: counts[2], sizes, counts, gaps, norm, threshold, stabilized, closed };
        if stabilized {
            return Ok(report);
        }
        last = Some(report);
    }
    Ok(last.expect("at least one tier"))
}

pub fn kernel_dims_oracle(expr: &Expr, delta: f64) -> Result<OracleReport> {
    let extra = crate::structured::min_section(expr).saturating_sub(TIERS[0][0]);
    let kernel = side(expr, delta, extra)?;
    let cokernel = side(&expr.adjoint(), delta, extra)?;
    Ok(OracleReport {
        dim_ker: kernel.count,
        dim_coker: cokernel.count,
        stabilized: kernel.stabilized && cokernel.stabilized,
        kernel,
        cokernel,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structured::{parse_expr, Env};

    fn dims(text: &str, env: &Env) -> (usize, usize, bool) {
        let r = kernel_dims_oracle(&parse_expr(text, env).unwrap(), DEFAULT_DELTA).unwrap();
        (r.dim_ker, r.dim_coker, r.stabilized)
    }

    #[test]
    fn shift_examples() {
        let env = Env::default();
        assert_eq!(dims("S", &env), (0, 1, true));
        assert_eq!(dims("S^3", &env), (0, 3, true));
        assert_eq!(dims("S'", &env), (1, 0, true));
        assert_eq!(dims("S*S'", &env), (1, 1, true));
    }

    #[test]
    fn projection_complement() {
        let env = Env::from_json(
            r#"{"patches": {"e0": {"pairs": [{"u": {"support": [0], "values": [[-1,0,0,0]]},
                                              "v": {"support": [0], "values": [[1,0,0,0]]}}]}}}"#,
        )
        .unwrap();
        assert_eq!(dims("I + F(e0)", &env), (1, 1, true));
    }

    #[test]
    fn finite_rank_does_not_settle() {
        let env = Env::from_json(
            r#"{"patches": {"p": {"pairs": [{"u": {"support": [0], "values": [[1,0,0,0]]},
                                             "v": {"support": [0], "values": [[1,0,0,0]]}}]}}}"#,
        )
        .unwrap();
        let r = kernel_dims_oracle(&parse_expr("F(p)", &env).unwrap(), DEFAULT_DELTA).unwrap();
        assert!(!r.stabilized);
        assert!(r.kernel.growing());
    }

    #[test]
    fn decaying_kernel_needs_larger_sections() {
        // (S - 0.9)(S - 0.9): cokernel vectors decay like 0.9^k
        let r = kernel_dims_oracle(&parse_expr("(S - 0.9)^2", &Env::default()).unwrap(), DEFAULT_DELTA).unwrap();
        assert_eq!((r.dim_ker, r.dim_coker, r.stabilized), (0, 2, true));
        assert_eq!(r.cokernel.sizes, vec![256, 384, 512]);
        assert_eq!(r.closed_range(), Some(true));
    }

    #[test]
    fn unit_circle_is_not_closed() {
        let r = kernel_dims_oracle(&parse_expr("S - 1", &Env::default()).unwrap(), DEFAULT_DELTA).unwrap();
        assert_eq!(r.closed_range(), Some(false));
    }
}
