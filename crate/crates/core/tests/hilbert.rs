mod common;

use common::{hamilton, nonzero_quat, qdist, quat, vector};
use proptest::prelude::*;
use quatspec::hilbert::orthonormality_defect;
use quatspec::{gram_schmidt, inner, left_mul, project, HilbertBasis, QVector, Quaternion};

fn oracle_inner(a: &QVector, b: &QVector) -> Quaternion {
    (0..a.len()).fold(Quaternion::ZERO, |acc, k| acc + hamilton(a[k].conj(), b[k]))
}

fn vdist(a: &QVector, b: &QVector) -> f64 {
    (a - b).norm()
}

proptest! {
    #[test]
    fn inner_product_axioms(a in vector(4), b in vector(4), q in quat()) {
        let ab = inner(&a, &b).unwrap();
        prop_assert!(qdist(ab, oracle_inner(&a, &b)) < 1e-14);
        prop_assert!(qdist(ab.conj(), inner(&b, &a).unwrap()) < 1e-14);
        prop_assert!(qdist(inner(&a, &b.rmul(q)).unwrap(), ab * q) < 1e-13);
        prop_assert!(qdist(inner(&a.rmul(q), &b).unwrap(), q.conj() * ab) < 1e-13);
        let aa = inner(&a, &a).unwrap();
        prop_assert!(aa.im_norm() < 1e-14 && aa.q0 >= 0.0);
        prop_assert!((aa.q0.sqrt() - a.norm()).abs() < 1e-13);
    }

    #[test]
    fn cauchy_schwarz(a in vector(5), b in vector(5)) {
        prop_assert!(inner(&a, &b).unwrap().norm() <= a.norm() * b.norm() + 1e-13);
    }

    #[test]
    fn gram_schmidt_is_orthonormal_and_spans(vs in prop::collection::vec(vector(5), 1..5)) {
        prop_assume!(vs.iter().any(|v| v.norm() > 1e-3));
        let basis = gram_schmidt(&vs).unwrap();
        prop_assert!(orthonormality_defect(basis.vectors()) < 1e-10);
        prop_assert!(basis.len() <= vs.len());
        for v in &vs {
            let p = project(basis.vectors(), v).unwrap();
            prop_assert!(vdist(&p, v) < 1e-9 * (1.0 + v.norm()));
        }
    }

    #[test]
    fn dependent_vectors_are_dropped(a in vector(4), q in nonzero_quat()) {
        prop_assume!(a.norm() > 0.1);
        let basis = gram_schmidt(&[a.clone(), a.rmul(q)]).unwrap();
        prop_assert_eq!(basis.len(), 1);
    }

    #[test]
    fn left_multiplication_in_the_standard_basis(q in quat(), phi in vector(4)) {
        let got = left_mul(q, &phi, None).unwrap();
        let want = QVector::new(phi.entries.iter().map(|&x| hamilton(q, x)).collect());
        prop_assert!(vdist(&got, &want) < 1e-14);
    }

    #[test]
    fn left_multiplication_is_an_action(p in quat(), q in quat(), phi in vector(3), vs in prop::collection::vec(vector(3), 3)) {
        let basis = gram_schmidt(&vs);
        prop_assume!(basis.as_ref().is_ok_and(|b| b.is_complete()));
        let basis = basis.unwrap();
        let b = Some(&basis);
        let lhs = left_mul(p * q, &phi, b).unwrap();
        let rhs = left_mul(p, &left_mul(q, &phi, b).unwrap(), b).unwrap();
        prop_assert!(vdist(&lhs, &rhs) < 1e-12 * (1.0 + phi.norm()));
        // Left and right actions commute.
        let a = left_mul(p, &phi.rmul(q), b).unwrap();
        let c = left_mul(p, &phi, b).unwrap().rmul(q);
        prop_assert!(vdist(&a, &c) < 1e-12 * (1.0 + phi.norm()));
        // Real scalars act the same on both sides.
        let r = Quaternion::real(p.q0);
        prop_assert!(vdist(&left_mul(r, &phi, b).unwrap(), &phi.rmul(r)) < 1e-12 * (1.0 + phi.norm()));
        // Coefficients reconstruct the vector.
        let cs = basis.coefficients(&phi).unwrap();
        let mut back = QVector::zeros(3);
        for (u, c) in basis.vectors().iter().zip(cs) {
            back.axpy(u, c);
        }
        prop_assert!(vdist(&back, &phi) < 1e-12 * (1.0 + phi.norm()));
    }
}

#[test]
fn basis_validation() {
    let e0 = QVector::unit(2, 0);
    assert!(HilbertBasis::new(2, vec![e0.clone(), e0.clone()]).is_err());
    assert!(HilbertBasis::new(2, vec![e0.scale(2.0)]).is_err());
    assert!(gram_schmidt(&[QVector::zeros(3)]).is_err());
    assert!(gram_schmidt(&[]).is_err());
    assert!(inner(&QVector::zeros(2), &QVector::zeros(3)).is_err());
    let b = HilbertBasis::standard(3);
    assert!(b.is_complete());
}
