//! Exact finite sections of structured operators.
//!
//! Columns are stored as a start row plus a contiguous run of entries, so
//! banded products stay cheap even at large sizes.

use super::Expr;
use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::quaternion::Quaternion;

#[derive(Debug, Clone, PartialEq, Default)]
struct Col {
    start: usize,
    vals: Vec<Quaternion>,
}

impl Col {
    fn single(row: usize, q: Quaternion) -> Col {
        Col { start: row, vals: vec![q] }
    }

    fn end(&self) -> usize {
        self.start + self.vals.len()
    }

    fn get(&self, i: usize) -> Quaternion {
        if i >= self.start && i < self.end() {
            self.vals[i - self.start]
        } else {
            Quaternion::ZERO
        }
    }

    fn is_empty(&self) -> bool {
        self.vals.is_empty()
    }

    /// `self + other·c`.
    fn add_scaled(&mut self, other: &Col, c: Quaternion) {
        if other.is_empty() {
            return;
        }
        if self.is_empty() {
            *self = Col { start: other.start, vals: other.vals.iter().map(|&x| x * c).collect() };
            return;
        }
        let start = self.start.min(other.start);
        let end = self.end().max(other.end());
        if start < self.start || end > self.end() {
            let mut vals = vec![Quaternion::ZERO; end - start];
            vals[self.start - start..self.end() - start].copy_from_slice(&self.vals);
            *self = Col { start, vals };
        }
        for (k, &x) in other.vals.iter().enumerate() {
            self.vals[other.start + k - self.start] += x * c;
        }
    }
}

/// A `rows x cols` section holding complete columns of an operator.
#[derive(Debug, Clone, PartialEq)]
pub struct Block {
    rows: usize,
    cols: Vec<Col>,
}

impl Block {
    /// Columns `0..ncols` of `expr`, with exactly `ncols + lower` rows.
    pub fn eval(expr: &Expr, ncols: usize) -> Block {
        let rows = ncols + expr.bands().0;
        let cols = match expr {
            Expr::Shift => (0..ncols).map(|j| Col::single(j + 1, Quaternion::ONE)).collect(),
            Expr::AdjShift => (0..ncols)
                .map(|j| if j == 0 { Col::default() } else { Col::single(j - 1, Quaternion::ONE) })
                .collect(),
            Expr::Identity => (0..ncols).map(|j| Col::single(j, Quaternion::ONE)).collect(),
            Expr::Diagonal(d) => (0..ncols).map(|j| Col::single(j, d.entry(j))).collect(),
            Expr::Patch(p) => (0..ncols)
                .map(|j| {
                    let mut c = Col::default();
                    for (u, v) in &p.pairs {
                        let vj = v.get(j);
                        if vj.is_zero() {
                            continue;
                        }
                        for &(i, ui) in u.entries() {
                            c.add_scaled(&Col::single(i, ui), vj.conj());
                        }
                    }
                    c
                })
                .collect(),
            Expr::Sum(a, b) => {
                let (x, y) = (Block::eval(a, ncols), Block::eval(b, ncols));
                x.cols
                    .into_iter()
                    .zip(&y.cols)
                    .map(|(mut c, d)| {
                        c.add_scaled(d, Quaternion::ONE);
                        c
                    })
                    .collect()
            }
            Expr::Product(a, b) => {
                let right = Block::eval(b, ncols);
                let left = Block::eval(a, right.rows);
                return left.matmul(&right);
            }
            Expr::Power(a, n) => {
                let mut acc = Block::eval(&Expr::Identity, ncols);
                for _ in 0..*n {
                    let left = Block::eval(a, acc.rows);
                    acc = left.matmul(&acc);
                }
                return acc;
            }
        };
        Block { rows, cols }
    }

    fn matmul(&self, right: &Block) -> Block {
        let cols = right
            .cols
            .iter()
            .map(|c| {
                let mut out = Col::default();
                for (k, &x) in c.vals.iter().enumerate() {
                    if !x.is_zero() {
                        out.add_scaled(&self.cols[c.start + k], x);
                    }
                }
                out
            })
            .collect();
        Block { rows: self.rows, cols }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn get(&self, i: usize, j: usize) -> Quaternion {
        self.cols[j].get(i)
    }

    /// Dense `rows x cols` view, cropping or zero-padding rows.
    pub fn to_matrix(&self, rows: usize) -> QMatrix {
        let mut m = QMatrix::zeros(rows, self.cols.len());
        for (j, c) in self.cols.iter().enumerate() {
            for (k, &x) in c.vals.iter().enumerate() {
                let i = c.start + k;
                if i < rows {
                    m[(i, j)] = x;
                }
            }
        }
        m
    }
}

/// Smallest admissible section size.
pub fn min_section(expr: &Expr) -> usize {
    let (l, u) = expr.bands();
    expr.stabilization() + l + u
}

/// Entries `T_ij` for `i < rows`, `j < cols`.
pub fn truncate(expr: &Expr, rows: usize, cols: usize) -> Result<QMatrix> {
    let need = min_section(expr).max(1);
    if rows < need || cols < need {
        return Err(Error::Truncation { rows, cols, need });
    }
    Ok(Block::eval(expr, cols).to_matrix(rows))
}

/// The `(n + lower) x n` section holding the first `n` columns in full.
pub fn truncate_rect(expr: &Expr, n: usize) -> Result<QMatrix> {
    truncate(expr, n + expr.bands().0, n)
}
