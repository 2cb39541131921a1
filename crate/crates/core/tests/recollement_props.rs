use std::sync::Arc;

use proptest::prelude::*;
use rand::Rng;
use quivtilt::algebra::{Algebra, ModuleRep, Session};
use quivtilt::complexes::{hom_dim, hom_window, ProjComplex};
use quivtilt::field::Field;
use quivtilt::recollement::{
    aea_cokernel_check, ext_vanishing_check, induce_up, pipeline, restrict, ComparisonLevel, Idempotent,
};
use quivtilt::tilting::{complete, is_partial_tilting};
use quivtilt::{corpus, sample};

fn algebra(which: usize) -> Arc<Algebra> {
    let s = Session::new(Field::prime(101).unwrap());
    match which {
        0 => Arc::new(corpus::sn2(s)),
        1 => Arc::new(corpus::nakayama3(s)),
        2 => Arc::new(corpus::symmetric_nakayama(s, 2, 5)),
        _ => Arc::new(corpus::radical_square_zero_cycle(s)),
    }
}

fn subset(a: &Algebra, bits: u8) -> Vec<usize> {
    let n = a.num_idems();
    let s: Vec<usize> = (0..n).filter(|i| bits >> i & 1 == 1).collect();
    if s.is_empty() { vec![bits as usize % n] } else { s }
}

/// A tilting complex over the corner: the completion of a random partial tilting complex.
fn corner_tilting(e: &Idempotent, seed: u64) -> ProjComplex {
    let mut rng = e.ambient.session().with_seed(seed).rng(21);
    for _ in 0..32 {
        let x = sample::random_complex(&e.corner, 0, rng.gen_range(1..=2), 2, &mut rng);
        if !x.is_zero() && is_partial_tilting(&x).unwrap().verdict {
            return complete(&x, 1).unwrap().1;
        }
    }
    ProjComplex::regular(e.corner.clone())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn restrict_inverts_induce(which in 0usize..4, bits in 1u8..8, seed in any::<u64>()) {
        let a = algebra(which);
        let e = Idempotent::new(&a, &subset(&a, bits)).unwrap();
        let mut rng = a.session().with_seed(seed).rng(20);
        let q = sample::random_complex(&e.corner, -1, 1 + (seed % 3) as usize, 2, &mut rng);
        let p = induce_up(&q, &e).unwrap();
        prop_assert_eq!(restrict(&p, &e).unwrap(), q);
    }

    #[test]
    fn induction_preserves_hom(which in 0usize..4, bits in 1u8..8, seed in any::<u64>()) {
        let a = algebra(which);
        let e = Idempotent::new(&a, &subset(&a, bits)).unwrap();
        let mut rng = a.session().with_seed(seed).rng(22);
        let q = sample::random_complex(&e.corner, 0, 1 + (seed % 2) as usize, 2, &mut rng);
        let r = sample::random_complex(&e.corner, -1, 1 + (seed / 2 % 2) as usize, 2, &mut rng);
        let (p, s) = (induce_up(&q, &e).unwrap(), induce_up(&r, &e).unwrap());
        for n in hom_window(&q, &r) {
            prop_assert_eq!(hom_dim(&q, &r, n).unwrap(), hom_dim(&p, &s, n).unwrap());
        }
    }

    #[test]
    fn pipeline_dimension_identity(which in 0usize..3, bits in 1u8..8, seed in any::<u64>()) {
        let a = algebra(which);
        let e = Idempotent::new(&a, &subset(&a, bits)).unwrap();
        let q = corner_tilting(&e, seed);
        let out = pipeline(&e, &q, None).unwrap();
        prop_assert_eq!(out.comparison.dims.0, out.comparison.dims.1);
        prop_assert!(out.comparison.level >= ComparisonLevel::FingerprintsMatch);
        prop_assert!(out.check.verdict);
    }
}

#[test]
fn aea_check_on_corpus() {
    for which in 0..4 {
        let a = algebra(which);
        let n = a.num_idems();
        for bits in 0..(1u32 << n) {
            let s: Vec<usize> = (0..n).filter(|i| bits >> i & 1 == 1).collect();
            assert!(aea_cokernel_check(&a, &s).unwrap().ok, "algebra {which}, subset {s:?}");
        }
    }
}

/// `Ext^0 = Hom_A(A/AeA, eA)` directly, and `Ext^{>0}` into projectives vanishes for self-injective algebras.
#[test]
fn ext_tables_against_direct_computation() {
    for which in 0..4 {
        let a = algebra(which);
        let n = a.num_idems();
        for bits in 1..(1u32 << n) {
            let s: Vec<usize> = (0..n).filter(|i| bits >> i & 1 == 1).collect();
            let t = ext_vanishing_check(&a, &s, 2).unwrap();
            let ideal = a.idempotent_ideal(&s).unwrap();
            let (m, _) = ModuleRep::regular(&a).quotient(&ideal);
            let ea = ModuleRep::projective_sum(&a, &s);
            let hom0 = if m.dim() == 0 { 0 } else { a.hom_module(&m, &ea).unwrap().len() };
            assert_eq!(t.dims[0], hom0, "algebra {which}, subset {s:?}");
            if which < 3 {
                assert!(t.dims[1..].iter().all(|&d| d == 0));
            }
        }
    }
    // k(1 ⇄ 2)/rad², e = e_1: S_2 embeds in e_1 A as the socle
    let a = algebra(3);
    let t = ext_vanishing_check(&a, &[0], 2).unwrap();
    assert_eq!(t.dims[0], 1);
    assert_eq!(t.vanishing_up_to, 0);
}

