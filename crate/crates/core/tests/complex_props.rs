use std::sync::Arc;

use proptest::prelude::*;
use quivtilt::algebra::{Algebra, Session};
use quivtilt::complexes::{cone, decompose, hom_dim, hom_window, homotopy_hom, iso_test, minimize, ChainMap, ProjComplex};
use quivtilt::field::Field;
use quivtilt::{corpus, sample};

fn algebra(which: usize) -> Arc<Algebra> {
    let s = Session::new(Field::prime(101).unwrap());
    if which == 0 { Arc::new(corpus::sn2(s)) } else { Arc::new(corpus::nakayama3(s)) }
}

fn pair(which: usize, seed: u64) -> (ProjComplex, ProjComplex) {
    let a = algebra(which);
    let mut rng = a.session().with_seed(seed).rng(3);
    let x = sample::random_complex(&a, 0, 1 + (seed % 3) as usize, 2, &mut rng);
    let y = sample::random_complex(&a, -1, 1 + (seed / 3 % 3) as usize, 2, &mut rng);
    (x, y)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn serre_duality_on_symmetric_algebras(which in 0usize..2, seed in any::<u64>()) {
        let (x, y) = pair(which, seed);
        for n in hom_window(&x, &y) {
            prop_assert_eq!(hom_dim(&x, &y, n).unwrap(), hom_dim(&y, &x, -n).unwrap());
        }
    }

    #[test]
    fn minimize_preserves_hom(which in 0usize..2, seed in any::<u64>()) {
        // pad with a contractible summand and a random isomorphic copy
        let (x, y) = pair(which, seed);
        let a = x.algebra_arc().clone();
        let mut rng = a.session().with_seed(seed).rng(5);
        let v = seed as usize % a.num_idems();
        let c = cone(&ChainMap::identity(&ProjComplex::stalk(a.clone(), 0, &[v]))).complex;
        let padded = sample::random_isomorphic_copy(&x.direct_sum(&c).unwrap(), &mut rng);
        let m = minimize(&padded).unwrap();
        prop_assert!(iso_test(&m.complex, &x).unwrap());
        for n in hom_window(&padded, &y) {
            prop_assert_eq!(hom_dim(&padded, &y, n).unwrap(), hom_dim(&m.complex, &y, n).unwrap());
        }
        let h = homotopy_hom(&padded, &padded, 0).unwrap();
        let round = m.to.then(&m.from).unwrap().sub(&ChainMap::identity(&padded)).unwrap();
        prop_assert!(h.is_null(&round));
        let h = homotopy_hom(&m.complex, &m.complex, 0).unwrap();
        let round = m.from.then(&m.to).unwrap().sub(&ChainMap::identity(&m.complex)).unwrap();
        prop_assert!(h.is_null(&round));
    }

    #[test]
    fn decomposition_is_invariant(which in 0usize..2, seed in any::<u64>()) {
        let (x, y) = pair(which, seed);
        let a = x.algebra_arc().clone();
        let mut rng = a.session().with_seed(seed).rng(9);
        let sum = x.direct_sum(&y).unwrap().direct_sum(&x).unwrap();
        let base = decompose(&sum).unwrap();
        let copy = sample::random_isomorphic_copy(&sum, &mut rng);
        let other = decompose(&copy).unwrap();
        prop_assert_eq!(base.multiplicities(), other.multiplicities());
        prop_assert!(iso_test(&sum, &copy).unwrap());
        let swapped = decompose(&y.direct_sum(&x).unwrap().direct_sum(&x).unwrap()).unwrap();
        prop_assert_eq!(base.multiplicities(), swapped.multiplicities());
    }
}
