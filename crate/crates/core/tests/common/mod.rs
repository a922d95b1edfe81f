#![allow(dead_code)]

use proptest::prelude::*;
use quatspec::structured::{Diagonal, Expr, Patch, SparseVec};
use quatspec::{QMatrix, QVector, Quaternion};

pub fn quat() -> impl Strategy<Value = Quaternion> {
    [-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64].prop_map(Quaternion::from_array)
}

pub fn nonzero_quat() -> impl Strategy<Value = Quaternion> {
    quat().prop_filter("away from zero", |q| q.norm() > 0.1)
}

pub fn vector(n: usize) -> impl Strategy<Value = QVector> {
    prop::collection::vec(quat(), n).prop_map(QVector::new)
}

pub fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = QMatrix> {
    prop::collection::vec(quat(), rows * cols).prop_map(move |v| QMatrix::from_fn(rows, cols, |i, j| v[i * cols + j]))
}

pub fn square() -> impl Strategy<Value = QMatrix> {
    (1usize..=5).prop_flat_map(|n| matrix(n, n))
}

/// Hamilton product written out from the multiplication table.
pub fn hamilton(p: Quaternion, q: Quaternion) -> Quaternion {
    let [a1, b1, c1, d1] = p.to_array();
    let [a2, b2, c2, d2] = q.to_array();
    Quaternion::new(
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    )
}

pub fn qdist(p: Quaternion, q: Quaternion) -> f64 {
    let (a, b) = (p.to_array(), q.to_array());
    (0..4).map(|k| (a[k] - b[k]).powi(2)).sum::<f64>().sqrt()
}

/// Dense product with the textbook triple loop.
pub fn dense_mul(a: &QMatrix, b: &QMatrix) -> QMatrix {
    QMatrix::from_fn(a.rows(), b.cols(), |i, j| {
        (0..a.cols()).fold(Quaternion::ZERO, |acc, k| acc + hamilton(a[(i, k)], b[(k, j)]))
    })
}

pub fn max_diff(a: &QMatrix, b: &QMatrix) -> f64 {
    assert_eq!((a.rows(), a.cols()), (b.rows(), b.cols()));
    let mut m: f64 = 0.0;
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            m = m.max(qdist(a[(i, j)], b[(i, j)]));
        }
    }
    m
}

pub fn sparse(max_support: usize) -> impl Strategy<Value = SparseVec> {
    prop::collection::btree_map(0..max_support, nonzero_quat(), 1..=3).prop_map(|m| {
        let (s, v): (Vec<usize>, Vec<Quaternion>) = m.into_iter().unzip();
        SparseVec::new(&s, &v).unwrap()
    })
}

pub fn patch(max_rank: usize, max_support: usize) -> impl Strategy<Value = Expr> {
    prop::collection::vec((sparse(max_support), sparse(max_support)), 1..=max_rank)
        .prop_map(|pairs| Expr::patch(Patch { name: None, pairs }))
}

pub fn diagonal() -> impl Strategy<Value = Expr> {
    (prop::collection::vec(quat(), 0..5), quat())
        .prop_map(|(prefix, limit)| Expr::diagonal(Diagonal { name: None, prefix, limit }))
}

/// Diagonal with every entry of modulus in `[0.5, 2]`.
pub fn invertible_diagonal() -> impl Strategy<Value = Expr> {
    let entry = || (nonzero_quat(), 0.5..2.0f64).prop_map(|(q, r)| q * (r / q.norm()));
    (prop::collection::vec(entry(), 0..5), entry())
        .prop_map(|(prefix, limit)| Expr::diagonal(Diagonal { name: None, prefix, limit }))
}

pub fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        Just(Expr::Shift),
        Just(Expr::AdjShift),
        Just(Expr::Identity),
        quat().prop_map(Expr::scalar),
        diagonal(),
        patch(2, 6),
    ]
}

pub fn expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.add(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.mul(b)),
            (inner, 1u32..=3).prop_map(|(a, n)| a.pow(n)),
        ]
    })
}

/// Atoms of a product-form Fredholm operator, with their indices.
#[derive(Debug, Clone)]
pub enum Atom {
    S,
    Sp,
    D(Expr),
}

pub fn atom() -> impl Strategy<Value = Atom> {
    prop_oneof![Just(Atom::S), Just(Atom::Sp), invertible_diagonal().prop_map(Atom::D)]
}

pub fn product(atoms: &[Atom]) -> (Expr, i64) {
    let mut e = Expr::Identity;
    let mut ind = 0;
    for a in atoms {
        let (x, k) = match a {
            Atom::S => (Expr::Shift, -1),
            Atom::Sp => (Expr::AdjShift, 1),
            Atom::D(d) => (d.clone(), 0),
        };
        e = e.mul(x);
        ind += k;
    }
    (e, ind)
}
