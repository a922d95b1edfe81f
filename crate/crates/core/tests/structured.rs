mod common;

use common::{dense_mul, expr, hamilton, max_diff};
use proptest::prelude::*;
use quatspec::structured::{min_section, parse_expr, truncate, truncate_rect, Diagonal, Env, Expr};
use quatspec::{Error, QMatrix, Quaternion};

/// Dense `m x m` section of an expression, built atom by atom with the
/// textbook product. Exact in the top-left corner once `m` exceeds the
/// reach of every intermediate product.
fn dense(e: &Expr, m: usize) -> QMatrix {
    match e {
        Expr::Shift => QMatrix::from_fn(m, m, |i, j| if i == j + 1 { Quaternion::ONE } else { Quaternion::ZERO }),
        Expr::AdjShift => QMatrix::from_fn(m, m, |i, j| if j == i + 1 { Quaternion::ONE } else { Quaternion::ZERO }),
        Expr::Identity => QMatrix::identity(m),
        Expr::Diagonal(d) => QMatrix::from_fn(m, m, |i, j| if i == j { d.entry(i) } else { Quaternion::ZERO }),
        Expr::Patch(p) => QMatrix::from_fn(m, m, |i, j| {
            p.pairs.iter().fold(Quaternion::ZERO, |acc, (u, v)| acc + hamilton(u.get(i), v.get(j).conj()))
        }),
        Expr::Sum(a, b) => &dense(a, m) + &dense(b, m),
        Expr::Product(a, b) => dense_mul(&dense(a, m), &dense(b, m)),
        Expr::Power(a, n) => {
            let base = dense(a, m);
            (0..*n).fold(QMatrix::identity(m), |acc, _| dense_mul(&acc, &base))
        }
    }
}

fn depth_reach(e: &Expr) -> usize {
    let (l, u) = e.bands();
    l + u + min_section(e)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn truncation_matches_dense_sections(e in expr(), n in 1usize..12) {
        let rows = n.max(min_section(&e)).max(1);
        let cols = rows;
        let t = truncate(&e, rows, cols).unwrap();
        let m = rows + 2 * depth_reach(&e) + 8;
        let d = dense(&e, m).submatrix(rows, cols);
        prop_assert!(max_diff(&t, &d) < 1e-9 * (1.0 + d.frobenius()), "{}", e);
    }

    #[test]
    fn bands_bound_the_support(e in expr()) {
        let (l, u) = e.bands();
        let n = min_section(&e).max(1) + 6;
        let t = truncate(&e, n, n).unwrap();
        for i in 0..n {
            for j in 0..n {
                if i > j + l || j > i + u {
                    prop_assert!(t[(i, j)].is_zero(), "{} at ({}, {})", e, i, j);
                }
            }
        }
    }

    #[test]
    fn entries_are_toeplitz_past_the_stabilization_index(e in expr()) {
        let m = e.stabilization();
        let n = min_section(&e).max(1) + 8;
        let t = truncate(&e, n + 1, n + 1).unwrap();
        let scale = 1.0 + t.max_abs();
        for i in m..n {
            for j in m..n {
                let d = common::qdist(t[(i + 1, j + 1)], t[(i, j)]);
                prop_assert!(d <= 1e-10 * scale, "{}: m = {}, ({}, {})", e, m, i, j);
            }
        }
    }

    #[test]
    fn norm_bound_dominates_sections(e in expr()) {
        let n = min_section(&e).max(1) + 4;
        let t = truncate(&e, n, n).unwrap();
        let norm = quatspec::op_norm(&t).unwrap();
        prop_assert!(norm <= e.norm_bound() * (1.0 + 1e-12) + 1e-12, "{}: {} > {}", e, norm, e.norm_bound());
    }

    #[test]
    fn adjoint_transposes_sections(e in expr()) {
        let n = min_section(&e).max(min_section(&e.adjoint())).max(1) + 4;
        let t = truncate(&e, n, n).unwrap();
        let ta = truncate(&e.adjoint(), n, n).unwrap();
        prop_assert!(max_diff(&ta, &quatspec::adjoint(&t)) < 1e-10 * (1.0 + t.max_abs()));
        prop_assert_eq!(e.adjoint().adjoint().bands(), e.bands());
    }

    #[test]
    fn rectangular_sections_extend_square_ones(e in expr(), n in 1usize..10) {
        let need = min_section(&e).max(1);
        let n = n.max(need);
        let r = truncate_rect(&e, n).unwrap();
        prop_assert_eq!(r.cols(), n);
        prop_assert!(r.rows() >= n);
        let s = truncate(&e, n, n).unwrap();
        prop_assert!(max_diff(&r.submatrix(n, n), &s) == 0.0);
    }

    #[test]
    fn display_reparses(e in expr()) {
        let text = e.to_string();
        prop_assume!(!text.contains('<'));
        let back = parse_expr(&text, &Env::default()).unwrap();
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn compact_diagonal_truncations_converge(decay in 0.1..0.9f64, len in 5usize..30) {
        let prefix: Vec<Quaternion> = (0..len).map(|k| Quaternion::real(decay.powi(k as i32))).collect();
        let k = Diagonal { name: None, prefix: prefix.clone(), limit: Quaternion::ZERO };
        prop_assert!(Expr::diagonal(k.clone()).is_compact());
        let mut last = f64::INFINITY;
        for n in 0..=len {
            let kn = Diagonal { prefix: prefix[..n].to_vec(), ..k.clone() };
            let diff = Expr::diagonal(k.clone()).sub(Expr::diagonal(kn));
            let t = truncate(&diff, len + 4, len + 4).unwrap();
            let err = quatspec::op_norm(&t).unwrap();
            let sup = prefix.get(n).map_or(0.0, |q| q.norm());
            prop_assert!((err - sup).abs() < 1e-12);
            prop_assert!(err <= last);
            last = err;
        }
        prop_assert_eq!(last, 0.0);
    }
}

#[test]
fn parser_examples() {
    let env = Env::default();
    let e = parse_expr("S^3", &env).unwrap();
    assert_eq!(e.bands(), (3, 0));
    assert!(matches!(parse_expr("S + * I", &env), Err(Error::Syntax { offset: 4, .. })));
    assert!(matches!(parse_expr("D(x)", &env), Err(Error::UnknownName(_))));
    assert!(matches!(parse_expr("S'^", &env), Err(Error::Syntax { .. })));
    assert!(matches!(parse_expr("(S", &env), Err(Error::Syntax { .. })));
    assert!(parse_expr("q(1, -2, 0.5, 1e-3) * S' - 2 * I", &env).is_ok());
    let t = truncate(&parse_expr("S", &env).unwrap(), 3, 3).unwrap();
    assert_eq!(t[(1, 0)], Quaternion::ONE);
    assert_eq!(t[(2, 1)], Quaternion::ONE);
    assert!(t[(0, 1)].is_zero());
}

#[test]
fn environment_atoms() {
    let env = Env::from_json(
        r#"{"diagonals": {"d": {"prefix": [[0, 1, 0, 0]], "limit": [1, 0, 0, 0]}},
            "patches": {"p1": {"pairs": [{"u": {"support": [0], "values": [[1, 0, 0, 0]]},
                                          "v": {"support": [0], "values": [[1, 0, 0, 0]]}}]}}}"#,
    )
    .unwrap();
    let t = truncate(&parse_expr("D(d)", &env).unwrap(), 3, 3).unwrap();
    assert_eq!((t[(0, 0)], t[(1, 1)], t[(2, 2)]), (Quaternion::I, Quaternion::ONE, Quaternion::ONE));
    let e = parse_expr("S * (I + F(p1))", &env).unwrap();
    assert!(matches!(e, Expr::Product(..)));
    assert!(Env::from_json(r#"{"patches": {"p": {"pairs": [{"u": {"support": [0, 0], "values": [[1,0,0,0],[1,0,0,0]]}, "v": {"support": [0], "values": [[1,0,0,0]]}}]}}}"#).is_err());
    assert!(Env::from_json(r#"{"bogus": 1}"#).is_err());
}

#[test]
fn undersized_truncations_are_rejected() {
    let e = Expr::Shift.pow(3).mul(Expr::AdjShift);
    let need = min_section(&e);
    assert!(matches!(truncate(&e, need - 1, need - 1), Err(Error::Truncation { .. })));
}
