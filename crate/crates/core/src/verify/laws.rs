//! Index and essential-spectrum law suites.

use rand::Rng;

use super::gen::{self, Rng8};
use super::Tally;
use crate::essential::{is_fredholm_at, Partition};
use crate::fredholm::{fredholm_data, fredholm_evidence, is_weyl, Dim, FredholmData, Status, SymbolicIndex, DEFAULT_DELTA};
use crate::quaternion::Quaternion;
use crate::structured::{truncate, Diagonal, Expr};

fn index_of(t: &mut Tally, e: &Expr) -> Option<i64> {
    let d = t.check_result(fredholm_data(e), || format!("{e}"))?;
    t.check(d.status == Status::Fredholm && d.index.is_some(), || format!("{e}: not Fredholm ({d:?})"));
    d.index
}

fn fixed_corpus() -> Vec<Expr> {
    let mut v = vec![Expr::Identity, Expr::Shift, Expr::AdjShift, Expr::Shift.mul(Expr::AdjShift), Expr::AdjShift.mul(Expr::Shift)];
    v.extend((2..=4).map(|k| Expr::Shift.pow(k)));
    v.extend((2..=3).map(|k| Expr::AdjShift.pow(k)));
    v
}

/// Decaying diagonal `2^-k` truncated after `m` entries, limit 0.
fn decaying(m: usize) -> Diagonal {
    let prefix = (0..m).map(|k| Quaternion::real(0.5f64.powi(k as i32))).collect();
    Diagonal { name: Some("K".into()), prefix, limit: Quaternion::ZERO }
}

pub fn index_laws(seed: u64) -> Tally {
    let mut rng = gen::rng(seed);
    let mut t = Tally::default();

    let mut corpus = fixed_corpus();
    corpus.extend((0..10).map(|_| gen::product_form(&mut rng)));
    for e in &corpus {
        t.case();
        let adj = e.adjoint();
        if let (Some(a), Some(b)) = (index_of(&mut t, e), index_of(&mut t, &adj)) {
            t.check(a == -b, || format!("ind({e}) = {a}, ind({adj}) = {b}"));
        }
    }

    for i in 0..100 {
        t.case();
        let (t1, t2) = (gen::product_form(&mut rng), gen::product_form(&mut rng));
        let prod = t1.clone().mul(t2.clone());
        let (s1, s2) = (crate::fredholm::index_symbolic(&t1), crate::fredholm::index_symbolic(&t2));
        let (SymbolicIndex::Index(a), SymbolicIndex::Index(b)) = (s1, s2) else {
            t.check(false, || format!("pair {i}: factors {t1}, {t2} lack a symbolic index"));
            continue;
        };
        if let Some(d) = t.check_result(fredholm_data(&prod), || format!("pair {i}: {prod}")) {
            t.check(d.index == Some(a + b) && d.stabilized, || format!("pair {i}: ind({prod}) = {:?}, expected {}", d.index, a + b));
        }
    }

    for i in 0..10 {
        t.case();
        let base = gen::product_form(&mut rng);
        let f = gen::patch(&mut rng, 3, 8);
        let pert = base.clone().add(f);
        if let (Some(a), Some(b)) = (index_of(&mut t, &base), index_of(&mut t, &pert)) {
            t.check(a == b, || format!("case {i}: ind(T) = {a}, ind(T + F) = {b}"));
        }
    }

    for i in 0..5 {
        t.case();
        let e = Expr::Shift.add(Expr::real(0.01).mul(gen::banded(&mut rng)));
        if let Some(k) = index_of(&mut t, &e) {
            t.check(k == -1, || format!("case {i}: ind(S + 0.01 B) = {k}"));
        }
    }

    let k = Expr::diagonal(decaying(30));
    t.case();
    let e = Expr::Identity.add(k.clone());
    if let Some(d) = t.check_result(fredholm_data(&e), || format!("{e}")) {
        let finite = d.dim_ker.exact().is_some() && d.dim_coker.exact().is_some();
        t.check(d.status == Status::Fredholm && finite, || format!("I + K: {d:?}"));
    }
    for _ in 0..10 {
        t.case();
        let r = rng.random_range(0.05..2.0);
        let q = gen::with_modulus(&mut rng, r);
        let e = Expr::scalar(q).sub(k.clone());
        if let Some(d) = t.check_result(fredholm_data(&e), || format!("qI - K at {q}")) {
            t.check(d.dim_ker.exact().is_some(), || format!("qI - K at {q}: dim ker = {}", d.dim_ker));
        }
    }

    t.case();
    let full = decaying(30);
    let mut last = f64::INFINITY;
    for n in [0, 5, 10, 20, 30] {
        let kn = Diagonal { prefix: full.prefix[..n].to_vec(), ..full.clone() };
        let diff = Expr::diagonal(full.clone()).sub(Expr::diagonal(kn));
        let Some(m) = t.check_result(truncate(&diff, 40, 40), || format!("K - K_{n}")) else { continue };
        let err = m.max_abs();
        let sup = full.prefix.get(n).map_or(0.0, |q| q.norm());
        t.check((err - sup).abs() <= 1e-15 && err <= last, || format!("‖K - K_{n}‖ = {err}, expected {sup}"));
        last = err;
    }
    t.check(last == 0.0, || format!("‖K - K_30‖ = {last}"));

    for e in &corpus {
        t.case();
        if let Some(ev) = t.check_result(fredholm_evidence(e, DEFAULT_DELTA), || format!("{e}")) {
            if let (true, SymbolicIndex::Index(k)) = (ev.oracle.stabilized, ev.symbolic.index) {
                let o = ev.oracle.dim_ker as i64 - ev.oracle.dim_coker as i64;
                t.check(o == k, || format!("{e}: oracle {o}, symbolic {k}"));
            }
        }
    }
    t
}

fn in_sigma_e(t: &mut Tally, e: &Expr, q: Quaternion) -> Option<(bool, Partition, FredholmData)> {
    let v = t.check_result(is_fredholm_at(e, q), || format!("R_q({e}) at {q}"))?;
    t.check(!(v.in_sigma_e && v.verdict == Partition::Resolvent), || format!("R_q({e}) at {q}: σ_e point reported as resolvent"));
    Some((v.in_sigma_e, v.verdict, v.fredholm))
}

fn sample_q(rng: &mut Rng8) -> Quaternion {
    let r = match rng.random_range(0..4) {
        0 => 1.0,
        1 => rng.random_range(0.0..0.8),
        _ => rng.random_range(1.2..2.0),
    };
    gen::with_modulus(rng, r)
}

pub fn essential_laws(seed: u64) -> Tally {
    let mut rng = gen::rng(seed);
    let mut t = Tally::default();

    let ops = vec![
        Expr::Shift,
        Expr::AdjShift,
        Expr::Shift.pow(2),
        Expr::Shift.add(gen::patch(&mut rng, 2, 6)),
        gen::invertible_diagonal(&mut rng),
    ];
    for e in &ops {
        let adj = e.adjoint();
        for _ in 0..4 {
            t.case();
            let q = sample_q(&mut rng);
            if let (Some(a), Some(b)) = (in_sigma_e(&mut t, e, q), in_sigma_e(&mut t, &adj, q.conj())) {
                t.check(a.0 == b.0, || format!("at {q}: {e} says {}, {adj} at q̄ says {}", a.0, b.0));
            }
            let s = gen::unit_quaternion(&mut rng);
            if let Ok(p) = crate::quaternion::conjugate_by(q, s) {
                if let (Some(a), Some(b)) = (in_sigma_e(&mut t, e, q), in_sigma_e(&mut t, e, p)) {
                    t.check(a.1 == b.1, || format!("{e}: verdict at {q} is {:?}, at {p} is {:?}", a.1, b.1));
                }
            }
        }
    }

    for i in 0..5 {
        let f = gen::patch(&mut rng, 3, 6);
        let e = Expr::Identity.add(f);
        t.case();
        if let Some(w) = t.check_result(is_weyl(&e), || format!("{e}")) {
            t.check(w, || format!("case {i}: {e} is not Weyl"));
        }
        for _ in 0..3 {
            t.case();
            let q = sample_q(&mut rng);
            if let Some((ess, _, _)) = in_sigma_e(&mut t, &e, q) {
                t.check(!ess, || format!("case {i}: {q} reported in σ_e({e})"));
            }
        }
    }

    for (r, want) in [(0.2, Partition::SigmaK(-2)), (0.6, Partition::SigmaK(-2)), (1.0, Partition::Essential), (1.3, Partition::Resolvent), (2.0, Partition::Resolvent)] {
        for _ in 0..3 {
            t.case();
            let q = gen::with_modulus(&mut rng, r);
            if let Some((_, v, d)) = in_sigma_e(&mut t, &Expr::Shift, q) {
                t.check(v == want, || format!("R_q(S) at {q}: {v:?}, expected {want:?}"));
                if r < 1.0 {
                    t.check(d.dim_ker == Dim::Exact(0), || format!("R_q(S) at {q}: kernel {}", d.dim_ker));
                }
            }
        }
    }
    t
}
