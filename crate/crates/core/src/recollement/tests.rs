use std::sync::Arc;

use super::*;
use crate::algebra::Session;
use crate::complexes::iso_test;
use crate::corpus;
use crate::field::Field;
use crate::tilting::complete;

fn sn2() -> Arc<Algebra> {
    Arc::new(corpus::sn2(Session::new(Field::prime(101).unwrap())))
}

fn nak3() -> Arc<Algebra> {
    Arc::new(corpus::nakayama3(Session::new(Field::prime(101).unwrap())))
}

#[test]
fn induction_and_restriction() {
    let a = sn2();
    let e = Idempotent::new(&a, &[0]).unwrap();
    let q = ProjComplex::regular(e.corner.clone());
    let p = induce_up(&q, &e).unwrap();
    assert_eq!(p, ProjComplex::stalk(a.clone(), 0, &[0]));
    assert_eq!(induce_up(&q.shift(1), &e).unwrap(), p.shift(1));
    assert_eq!(restrict(&p, &e).unwrap(), q);
    assert!(matches!(
        restrict(&ProjComplex::stalk(a.clone(), 0, &[1]), &e),
        Err(RecollementError::OutsideSubset(1))
    ));
    assert!(matches!(induce_up(&p, &e), Err(RecollementError::WrongAlgebra)));
}

#[test]
fn round_trip_over_two_vertex_corner() {
    let a = nak3();
    let e = Idempotent::new(&a, &[0, 1]).unwrap();
    let x = ProjComplex::build(a.clone(), -1, vec![vec![0], vec![1]], &[(-1, 0, 0, "a2 a3")]).unwrap();
    let q = restrict(&x, &e).unwrap();
    assert_eq!(q.algebra().dim(), 6);
    assert_eq!(induce_up(&q, &e).unwrap(), x);
    assert_eq!(restrict(&induce_up(&q, &e).unwrap(), &e).unwrap(), q);
}

#[test]
fn recollement_checks() {
    let a = sn2();
    let reg = ProjComplex::regular(a.clone());
    let all = Idempotent::new(&a, &[0, 1]).unwrap();
    let c = recollement_tilting_check(&reg, &all).unwrap();
    assert!(c.verdict);
    assert_eq!(c.p1_len, 2);
    assert_eq!(c.f_elem, *c.end.algebra().unit());

    let e1 = Idempotent::new(&a, &[0]).unwrap();
    let c = recollement_tilting_check(&reg, &e1).unwrap();
    assert!(c.verdict);
    assert_eq!(c.p1, ProjComplex::stalk(a.clone(), 0, &[0]));
    assert_eq!(c.restricted, ProjComplex::regular(e1.corner.clone()));
    assert_eq!(c.f_elem, *c.end.algebra().idem(0));

    let (_, theta) = complete(&ProjComplex::stalk(a.clone(), 0, &[0]), 1).unwrap();
    let c = recollement_tilting_check(&theta, &e1).unwrap();
    assert!(c.verdict);
    assert_eq!(c.p1, ProjComplex::stalk(a.clone(), -1, &[0]));
    assert_eq!(c.restricted, ProjComplex::regular(e1.corner.clone()).shift(1));
    assert!(c.f_idempotent);
}

#[test]
fn negative_control() {
    // a tilting complex with every summand meeting vertex 2
    let a = sn2();
    let e1 = Idempotent::new(&a, &[0]).unwrap();
    let x = ProjComplex::build(a.clone(), -1, vec![vec![1], vec![0]], &[(-1, 0, 0, "a")]).unwrap();
    let t = x.direct_sum(&ProjComplex::stalk(a.clone(), -1, &[1])).unwrap();
    assert!(crate::tilting::verify_tilting(&t, None).unwrap().verdict);
    let c = recollement_tilting_check(&t, &e1).unwrap();
    assert_eq!(c.p1_len, 0);
    assert!(!c.verdict);
}

#[test]
fn sn2_pipeline() {
    let a = sn2();
    let e = Idempotent::new(&a, &[0]).unwrap();
    let q = ProjComplex::regular(e.corner.clone());
    let out = pipeline(&e, &q, Some(1)).unwrap();
    let x = ProjComplex::build(a.clone(), -1, vec![vec![0], vec![1]], &[(-1, 0, 0, "b")]).unwrap();
    let expected = x.direct_sum(&ProjComplex::stalk(a.clone(), -1, &[0])).unwrap();
    assert!(iso_test(&minimal(&out.theta).unwrap(), &expected).unwrap());
    assert_eq!(out.end.algebra().dim(), 6);
    assert_eq!(out.comparison.dims, (1, 1));
    assert_eq!(out.comparison.level, ComparisonLevel::ExplicitIso);
    assert!(out.check.verdict);
}

#[test]
fn trivial_pipeline() {
    let a = sn2();
    let e = Idempotent::new(&a, &[0, 1]).unwrap();
    let q = ProjComplex::regular(e.corner.clone());
    let out = pipeline(&e, &q, Some(0)).unwrap();
    let reg = ProjComplex::regular(a.clone());
    assert!(iso_test(&out.theta, &reg.direct_sum(&reg).unwrap()).unwrap());
    assert_eq!(out.comparison.dims, (0, 0));
    assert_eq!(out.comparison.level, ComparisonLevel::ExplicitIso);
}

#[test]
fn nakayama_pipeline() {
    let a = nak3();
    let e = Idempotent::new(&a, &[0, 1]).unwrap();
    let x = ProjComplex::build(a.clone(), -1, vec![vec![0], vec![1]], &[(-1, 0, 0, "a2 a3")]).unwrap();
    let t = x.direct_sum(&ProjComplex::stalk(a.clone(), -1, &[0])).unwrap();
    let q = restrict(&t, &e).unwrap();
    let out = pipeline(&e, &q, None).unwrap();
    assert_eq!(out.n, 1);
    assert_eq!(out.comparison.dims.0, out.comparison.dims.1);
    assert!(out.comparison.level >= ComparisonLevel::FingerprintsMatch);
}

#[test]
fn mismatched_comparison() {
    let a = sn2();
    let b = end_algebra(&ProjComplex::regular(a.clone())).unwrap();
    let c = quotient_compare(&a, &[0], b.algebra(), &[]).unwrap();
    assert_eq!(c.level, ComparisonLevel::Mismatch);
    assert_eq!(c.dims, (1, 6));
}

#[test]
fn aea_and_ext() {
    let a = sn2();
    for (s, img) in [(vec![0, 1], 6), (vec![], 0), (vec![0], 5)] {
        let c = aea_cokernel_check(&a, &s).unwrap();
        assert!(c.ok);
        assert_eq!(c.image_dim, img);
    }
    let t = ext_vanishing_check(&a, &[0, 1], 3).unwrap();
    assert_eq!(t.dims, vec![0; 4]);
    let t = ext_vanishing_check(&a, &[0], 2).unwrap();
    assert_eq!(t.dims, vec![0, 0, 0]);
    assert_eq!(t.vanishing_up_to, 3);
}
