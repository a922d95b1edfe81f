//! Index rewriting rules over expression trees.

use std::sync::Arc;

use serde::Serialize;

use crate::structured::{Diagonal, Expr};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SymbolicIndex {
    Index(i64),
    NotFredholm,
    Undecidable,
}

/// Symbolic index with, when the rules produce one, a structured parametrix
/// `P` (`PT - I`, `TP - I` finite rank) and a bound on `‖P‖`.
#[derive(Debug, Clone, PartialEq)]
pub struct Analysis {
    pub index: SymbolicIndex,
    pub parametrix: Option<(Expr, f64)>,
}

impl Analysis {
    fn fredholm(k: i64, p: Expr, norm: f64) -> Self {
        Analysis { index: SymbolicIndex::Index(k), parametrix: Some((p, norm)) }
    }

    fn bare(index: SymbolicIndex) -> Self {
        Analysis { index, parametrix: None }
    }
}

pub fn index_symbolic(e: &Expr) -> SymbolicIndex {
    analyze(e).index
}

pub fn analyze(e: &Expr) -> Analysis {
    use SymbolicIndex::*;
    if e.is_compact() {
        return Analysis::bare(NotFredholm);
    }
    match e {
        Expr::Shift => Analysis::fredholm(-1, Expr::AdjShift, 1.0),
        Expr::AdjShift => Analysis::fredholm(1, Expr::Shift, 1.0),
        Expr::Identity => Analysis::fredholm(0, Expr::Identity, 1.0),
        Expr::Diagonal(d) => {
            let inv = |q: crate::quaternion::Quaternion| if q.is_zero() { q } else { q.inv().unwrap_or(q) };
            let p = Diagonal {
                name: d.name.as_ref().map(|n| format!("{n}^-1")),
                prefix: d.prefix.iter().map(|&q| inv(q)).collect(),
                limit: inv(d.limit),
            };
            let norm = p.prefix.iter().map(|q| q.norm()).fold(p.limit.norm(), f64::max);
            Analysis::fredholm(0, Expr::Diagonal(Arc::new(p)), norm)
        }
        Expr::Patch(_) => Analysis::bare(NotFredholm),
        Expr::Product(a, b) => {
            let (x, y) = (analyze(a), analyze(b));
            match (x.index, y.index) {
                (Index(i), Index(j)) => {
                    let parametrix = match (x.parametrix, y.parametrix) {
                        (Some((pa, na)), Some((pb, nb))) => Some((pb.mul(pa), na * nb)),
                        _ => None,
                    };
                    Analysis { index: Index(i + j), parametrix }
                }
                (Index(_), NotFredholm) | (NotFredholm, Index(_)) => Analysis::bare(NotFredholm),
                _ => Analysis::bare(Undecidable),
            }
        }
        Expr::Power(a, n) => {
            if *n == 0 {
                return Analysis::fredholm(0, Expr::Identity, 1.0);
            }
            let x = analyze(a);
            match x.index {
                Index(i) => Analysis {
                    index: Index(i * *n as i64),
                    parametrix: x.parametrix.map(|(p, norm)| (p.pow(*n), norm.powi(*n as i32))),
                },
                other => Analysis::bare(other),
            }
        }
        Expr::Sum(..) => analyze_sum(e),
    }
}

/// Slack on the small-norm test, so a remainder whose bound equals `1/‖P‖`
/// up to rounding is not certified.
pub const SMALL_NORM_MARGIN: f64 = 1e-9;

/// Compact perturbations keep the index (and any parametrix, since every
/// compact structured operator is of finite rank); a remainder whose norm
/// bound is below `1/‖P‖` keeps the index of the principal term.
fn analyze_sum(e: &Expr) -> Analysis {
    use SymbolicIndex::*;
    let main: Vec<&Expr> = e.terms().into_iter().filter(|t| !t.is_compact()).collect();
    match main.as_slice() {
        [] => Analysis::bare(NotFredholm),
        [t] => analyze(t),
        terms => {
            for (k, t) in terms.iter().enumerate() {
                let a = analyze(t);
                let (Index(i), Some((_, pnorm))) = (a.index, a.parametrix.as_ref()) else {
                    continue;
                };
                let rest: f64 = terms.iter().enumerate().filter(|(l, _)| *l != k).map(|(_, s)| s.norm_bound()).sum();
                if rest * pnorm < 1.0 - SMALL_NORM_MARGIN {
                    return Analysis::bare(Index(i));
                }
            }
            Analysis::bare(Undecidable)
        }
    }
}
