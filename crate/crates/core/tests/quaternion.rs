mod common;

use common::{hamilton, nonzero_quat, qdist, quat};
use proptest::prelude::*;
use quatspec::quaternion::SphereClass;
use quatspec::{conjugate_by, qinv, qmul, sphere_rep, Quaternion};

#[test]
fn unit_relations() {
    let (i, j, k) = (Quaternion::I, Quaternion::J, Quaternion::K);
    let m1 = Quaternion::real(-1.0);
    assert_eq!(i * i, m1);
    assert_eq!(j * j, m1);
    assert_eq!(k * k, m1);
    assert_eq!(i * j * k, m1);
    assert_eq!(i * j, k);
    assert_eq!(j * i, -k);
}

#[test]
fn zero_has_no_inverse() {
    assert!(qinv(Quaternion::ZERO).is_err());
    assert!(conjugate_by(Quaternion::I, Quaternion::ZERO).is_err());
}

proptest! {
    #[test]
    fn product_matches_table(p in quat(), q in quat()) {
        prop_assert!(qdist(qmul(p, q), hamilton(p, q)) < 1e-15);
        prop_assert_eq!(p * q, qmul(p, q));
    }

    #[test]
    fn associative(p in quat(), q in quat(), r in quat()) {
        prop_assert!(qdist((p * q) * r, p * (q * r)) < 1e-14);
    }

    #[test]
    fn norm_is_multiplicative(p in quat(), q in quat()) {
        prop_assert!(((p * q).norm() - p.norm() * q.norm()).abs() < 1e-14);
    }

    #[test]
    fn conjugation_reverses_products(p in quat(), q in quat()) {
        prop_assert!(qdist((p * q).conj(), q.conj() * p.conj()) < 1e-15);
        prop_assert!(qdist(p * p.conj(), Quaternion::real(p.norm_sqr())) < 1e-15);
    }

    #[test]
    fn inverse_both_sides(q in nonzero_quat()) {
        let inv = qinv(q).unwrap();
        prop_assert!(qdist(q * inv, Quaternion::ONE) < 1e-13);
        prop_assert!(qdist(inv * q, Quaternion::ONE) < 1e-13);
    }

    #[test]
    fn similarity_keeps_the_sphere(q in quat(), s in nonzero_quat()) {
        let p = conjugate_by(q, s).unwrap();
        prop_assert!((p.re() - q.re()).abs() < 1e-14);
        prop_assert!((p.im_norm() - q.im_norm()).abs() < 1e-13);
        let c = sphere_rep(q);
        prop_assert!(c.contains(p));
        prop_assert!(c.distance(sphere_rep(p)) < 1e-13);
    }

    #[test]
    fn representative_lies_on_its_sphere(re in -3.0..3.0f64, rad in 0.0..3.0f64) {
        let c = SphereClass::new(re, rad);
        let q = c.representative();
        prop_assert!(c.contains(q));
        prop_assert!(sphere_rep(q).distance(c) < 1e-15);
    }

    #[test]
    fn imaginary_units_square_to_minus_one(q in nonzero_quat()) {
        let u = Quaternion::new(0.0, q.q1, q.q2, q.q3);
        prop_assume!(u.norm() > 0.1);
        let u = u.scale(1.0 / u.norm());
        prop_assert!(qdist(u * u, Quaternion::real(-1.0)) < 1e-14);
    }
}
