//! Seeded random inputs. All generators draw from a caller-owned ChaCha8
//! stream so suites are reproducible across platforms.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::matrix::QMatrix;
use crate::quaternion::Quaternion;
use crate::structured::{Diagonal, Expr, Patch, SparseVec};

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Components uniform in `[-1, 1)`.
pub fn quaternion(rng: &mut Rng8) -> Quaternion {
    Quaternion::new(
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
    )
}

pub fn unit_quaternion(rng: &mut Rng8) -> Quaternion {
    loop {
        let q = quaternion(rng);
        let n = q.norm();
        if n > 0.1 {
            return q.scale(1.0 / n);
        }
    }
}

/// Unit imaginary quaternion.
pub fn imaginary_unit(rng: &mut Rng8) -> Quaternion {
    loop {
        let q = Quaternion::new(0.0, rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        let n = q.norm();
        if n > 0.1 {
            return q.scale(1.0 / n);
        }
    }
}

/// `re + rad·I` for a random unit imaginary `I`.
pub fn on_sphere(rng: &mut Rng8, re: f64, rad: f64) -> Quaternion {
    Quaternion::real(re) + imaginary_unit(rng) * rad
}

/// A random quaternion of modulus `r`.
pub fn with_modulus(rng: &mut Rng8, r: f64) -> Quaternion {
    unit_quaternion(rng) * r
}

pub fn matrix(rng: &mut Rng8, rows: usize, cols: usize) -> QMatrix {
    QMatrix::from_fn(rows, cols, |_, _| quaternion(rng))
}

/// `n x n` matrix of rank at most `r` as a product of random factors.
pub fn low_rank(rng: &mut Rng8, n: usize, r: usize) -> QMatrix {
    let b = matrix(rng, n, r);
    let c = matrix(rng, r, n);
    &b * &c
}

/// Square matrix that is singular with probability one half.
pub fn maybe_singular(rng: &mut Rng8, n: usize) -> QMatrix {
    if rng.random_bool(0.5) {
        let r = rng.random_range(0..n);
        low_rank(rng, n, r)
    } else {
        matrix(rng, n, n)
    }
}

pub fn sparse(rng: &mut Rng8, max_support: usize) -> SparseVec {
    let k = rng.random_range(1..=max_support);
    let mut idx: Vec<usize> = (0..max_support).collect();
    for i in 0..k {
        let j = rng.random_range(i..max_support);
        idx.swap(i, j);
    }
    let support = &idx[..k];
    let values: Vec<Quaternion> = (0..k).map(|_| quaternion(rng)).collect();
    SparseVec::new(support, &values).expect("distinct indices")
}

/// Finite-rank patch with `1..=max_rank` pairs supported in `0..max_support`.
pub fn patch(rng: &mut Rng8, max_rank: usize, max_support: usize) -> Expr {
    let r = rng.random_range(1..=max_rank);
    let pairs = (0..r).map(|_| (sparse(rng, max_support), sparse(rng, max_support))).collect();
    Expr::patch(Patch { name: None, pairs })
}

/// Diagonal with entries of modulus in `[lo, hi]` and a prefix of length
/// at most `max_prefix`.
pub fn diagonal(rng: &mut Rng8, max_prefix: usize, lo: f64, hi: f64) -> Diagonal {
    let m = rng.random_range(0..=max_prefix);
    let entry = |rng: &mut Rng8| {
        let r = rng.random_range(lo..=hi);
        with_modulus(rng, r)
    };
    let prefix = (0..m).map(|_| entry(rng)).collect();
    Diagonal { name: None, prefix, limit: entry(rng) }
}

pub fn invertible_diagonal(rng: &mut Rng8) -> Expr {
    Expr::diagonal(diagonal(rng, 8, 0.5, 2.0))
}

/// `D0 + D1·S + D2·S'` with norm bound at most 1.
pub fn banded(rng: &mut Rng8) -> Expr {
    let mut d = || Expr::diagonal(diagonal(rng, 8, 0.0, 1.0 / 3.0));
    let (d0, d1, d2) = (d(), d(), d());
    d0.add(d1.mul(Expr::Shift)).add(d2.mul(Expr::AdjShift))
}

/// Product of one to three atoms from `S`, `S'` and invertible diagonals.
pub fn product_form(rng: &mut Rng8) -> Expr {
    let k = rng.random_range(1..=3);
    let atom = |rng: &mut Rng8| match rng.random_range(0..3) {
        0 => Expr::Shift,
        1 => Expr::AdjShift,
        _ => invertible_diagonal(rng),
    };
    let first = atom(rng);
    (1..k).fold(first, |acc, _| acc.mul(atom(rng)))
}
