use proptest::prelude::*;

use super::*;
use crate::corpus;

fn f101() -> Session {
    Session::new(Field::prime(101).unwrap())
}

fn rat() -> Session {
    Session::new(Field::Rational)
}

fn sn2() -> Algebra {
    corpus::sn2(f101())
}

#[test]
fn dimensions_of_small_presentations() {
    assert_eq!(corpus::dual_numbers(f101()).dim(), 2);
    assert_eq!(corpus::semisimple(f101(), 4).dim(), 4);
    let a = sn2();
    assert_eq!(a.dim(), 6);
    assert_eq!(a.labels(), ["e_1", "e_2", "a", "b", "ab", "ba"]);
    assert_eq!(corpus::nakayama3(rat()).dim(), 12);
}

#[test]
fn path_products() {
    let a = sn2();
    assert_eq!(a.multiply(&a.el("a"), &a.el("b")).unwrap(), a.el("ab"));
    assert!(linalg::is_zero_vec(&a.mul(&a.el("ab"), &a.el("ab"))));
    assert_eq!(a.mul(a.unit(), &a.el("ba")), a.el("ba"));
    assert!(a.multiply(&a.el("a"), &[Field::prime(101).unwrap().one()]).is_err());
}

#[test]
fn bad_presentations_are_rejected() {
    let s = f101();
    let mixed = QuiverPresentation::new(s, &["1", "2"], &[("a", "1", "2"), ("b", "2", "1")], &["a b + b a"], 3).unwrap();
    assert!(matches!(Algebra::from_quiver(&mixed), Err(AlgebraError::MixedEndpoints(_))));
    let short = QuiverPresentation::new(s, &["1"], &[("x", "1", "1")], &["x"], 3).unwrap();
    assert!(matches!(Algebra::from_quiver(&short), Err(AlgebraError::NonAdmissible(_))));
    assert!(QuiverPresentation::new(s, &["1"], &[("x", "1", "1")], &["x y"], 3).is_err());
}

#[test]
fn relations_with_coefficients() {
    // k<x,y>/(xy - yx, x², y²) has basis 1, x, y, xy
    let q = QuiverPresentation::new(rat(), &["1"], &[("x", "1", "1"), ("y", "1", "1")], &["x y - y x", "x x", "y y"], 3)
        .unwrap();
    let a = Algebra::from_quiver(&q).unwrap();
    assert_eq!(a.dim(), 4);
    assert_eq!(a.mul(&a.el("x"), &a.el("y")), a.mul(&a.el("y"), &a.el("x")));
}

#[test]
fn peirce_components() {
    let a = sn2();
    let lab = |v: Vec<usize>| v.into_iter().map(|b| a.labels()[b].clone()).collect::<Vec<_>>();
    assert_eq!(lab(a.peirce(0, 0).unwrap()), ["e_1", "ab"]);
    assert_eq!(lab(a.peirce(0, 1).unwrap()), ["a"]);
    assert!(a.peirce(2, 0).is_err());
    let k3 = corpus::semisimple(f101(), 3);
    assert!(k3.peirce(0, 2).unwrap().is_empty());
    for alg in [sn2(), corpus::nakayama3(f101())] {
        let total: usize =
            (0..alg.num_idems()).flat_map(|i| (0..alg.num_idems()).map(move |j| (i, j))).map(|(i, j)| alg.peirce(i, j).unwrap().len()).sum();
        assert_eq!(total, alg.dim());
    }
}

#[test]
fn radicals() {
    let a = sn2();
    assert_eq!(a.radical().unwrap().len(), 4);
    assert_eq!(corpus::dual_numbers(f101()).radical().unwrap().len(), 1);
    assert!(corpus::semisimple(f101(), 3).radical().unwrap().is_empty());
    // the trace form agrees with the arrow ideal when the characteristic is large
    for alg in [sn2(), corpus::nakayama3(f101()), corpus::dual_numbers(rat())] {
        let hint = linalg::span_basis(alg.field(), alg.dim(), &alg.radical().unwrap());
        let trace = linalg::span_basis(alg.field(), alg.dim(), &alg.radical_trace_form().unwrap());
        assert_eq!(hint, trace);
        let local = linalg::span_basis(alg.field(), alg.dim(), &alg.radical_from_local_corners().unwrap());
        assert_eq!(hint, local);
    }
    assert_eq!(a.radical_layers().unwrap(), vec![2, 2, 2]);
}

#[test]
fn small_characteristic_uses_local_corners() {
    // over F_2 the trace form degenerates, the corner method does not
    let a = corpus::nakayama3(Session::new(Field::prime(2).unwrap()));
    assert!(a.radical_trace_form().is_err());
    assert_eq!(a.radical_from_local_corners().unwrap().len(), 9);
}

#[test]
fn corners() {
    let a = sn2();
    let c = a.corner(&[0]).unwrap();
    assert_eq!(c.algebra.dim(), 2);
    assert_eq!(c.algebra.radical().unwrap().len(), 1);
    assert_eq!(a.corner(&[0, 1]).unwrap().algebra, a);
    assert!(matches!(a.corner(&[]), Err(AlgebraError::EmptySubset)));
    assert_eq!(corpus::semisimple(f101(), 3).corner(&[0]).unwrap().algebra.dim(), 1);
    let x = c.algebra.basis_elem(1);
    assert_eq!(c.embed(&x, &a), a.el("ab"));
    assert_eq!(c.restrict(&a.el("ab")), Some(x));
    assert_eq!(c.restrict(&a.el("a")), None);
}

#[test]
fn quotients_by_idempotent_ideals() {
    let a = sn2();
    let q = a.quotient_by_idempotent_ideal(&[0]).unwrap();
    assert_eq!(q.ideal.len(), 5);
    assert_eq!(q.algebra.dim(), 1);
    assert_eq!(a.quotient_by_idempotent_ideal(&[0, 1]).unwrap().algebra.dim(), 0);
    let k2 = corpus::semisimple(f101(), 2);
    assert_eq!(k2.quotient_by_idempotent_ideal(&[0]).unwrap().algebra.dim(), 1);
}

#[test]
fn quotient_dimension_two_ways() {
    // closure versus the span of products Ae·eA
    for alg in [sn2(), corpus::nakayama3(f101()), corpus::radical_square_zero_cycle(f101())] {
        let m = alg.num_idems();
        for mask in 1u32..(1 << m) {
            let s: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
            let e = alg.idempotent_sum(&s);
            let mut products = Vec::new();
            for x in 0..alg.dim() {
                let xe = alg.mul(&alg.basis_elem(x), &e);
                for y in 0..alg.dim() {
                    products.push(alg.mul(&xe, &alg.basis_elem(y)));
                }
            }
            let image = linalg::rank_of(alg.field(), alg.dim(), &products);
            let q = alg.quotient_by_idempotent_ideal(&s).unwrap();
            assert_eq!(q.algebra.dim(), alg.dim() - image);
        }
    }
}

#[test]
fn symmetrizing_forms() {
    let a = sn2();
    let form = a.symmetrizing_form().unwrap();
    let lambda = form.form().expect("SN2 is symmetric");
    assert!(a.is_symmetrizing(lambda));
    assert!(a.gram(lambda).is_invertible());
    let d = corpus::dual_numbers(f101());
    let lambda = d.symmetrizing_form().unwrap();
    let lambda = lambda.form().unwrap();
    assert!(!lambda.coeffs[1].is_zero());
    let socle_only = LinearForm { coeffs: vec![f101().field.zero(), f101().field.one()] };
    assert!(d.is_symmetrizing(&socle_only));
    let c = corpus::radical_square_zero_cycle(f101());
    assert!(!c.symmetrizing_form().unwrap().is_symmetric());
    assert!(corpus::nakayama3(rat()).symmetrizing_form().unwrap().is_symmetric());
}

#[test]
fn hand_checked_form_on_sn2() {
    let a = sn2();
    let f = a.field();
    let coeffs = a.labels().iter().map(|l| if l.len() == 2 && !l.starts_with("e_") { f.one() } else { f.zero() }).collect();
    let lambda = LinearForm { coeffs };
    assert!(a.is_symmetrizing(&lambda));
}

#[test]
fn primitive_idempotents_examples() {
    let k3 = corpus::semisimple(f101(), 3);
    assert_eq!(k3.primitive_idempotents().unwrap(), k3.idems().to_vec());
    let d = corpus::dual_numbers(f101());
    assert_eq!(d.primitive_idempotents().unwrap(), vec![d.unit().clone()]);
    let a = sn2();
    assert_eq!(a.primitive_idempotents().unwrap(), a.idems().to_vec());
}

#[test]
fn matrix_algebra_splits_full_matrix_ring() {
    // M_2(k) acting on k²: the identity splits into two rank-one idempotents
    let f = Field::Rational;
    let units: Vec<Mat> = (0..4)
        .map(|k| {
            let mut m = Mat::zeros(f, 2, 2);
            m.set(k / 2, k % 2, f.one());
            m
        })
        .collect();
    let alg = MatrixAlgebra::with_trace_radical(f, 2, &units).unwrap();
    assert_eq!(alg.radical_dim(), 0);
    let mut rng = Session::new(f).rng(0);
    let ids = alg.primitive_idempotents(vec![Mat::identity(f, 2)], &mut rng).unwrap();
    assert_eq!(ids.len(), 2);
    for e in &ids {
        assert_eq!(&e.mul(e).unwrap(), e);
        assert_eq!(e.rank(), 1);
    }
}

#[test]
fn module_homs() {
    let a = sn2();
    let p1 = ModuleRep::projective(&a, 0);
    let reg = ModuleRep::regular(&a);
    assert_eq!(a.hom_module(&p1, &reg).unwrap().len(), 3);
    let s1 = a.simple_module(0).unwrap();
    let s2 = a.simple_module(1).unwrap();
    assert_eq!(s1.dim(), 1);
    assert_eq!(a.hom_module(&s1, &s1).unwrap().len(), 1);
    assert!(a.hom_module(&s1, &s2).unwrap().is_empty());
    assert!(ModuleRep::new(&a, p1.dim(), (0..a.dim()).map(|b| p1.action(b).clone()).collect()).is_ok());
}

#[test]
fn tops_and_generators() {
    let a = sn2();
    let top = a.top_and_min_generators(&ModuleRep::projective(&a, 1)).unwrap();
    assert_eq!(top.top_dims, vec![0, 1]);
    assert_eq!(top.generators.len(), 1);
    let zero = ModuleRep::new(&a, 0, vec![Mat::zeros(a.field(), 0, 0); a.dim()]).unwrap();
    let top = a.top_and_min_generators(&zero).unwrap();
    assert!(top.generators.is_empty() && top.top_dims == vec![0, 0]);
}

#[test]
fn corner_acting_on_column() {
    // V = A e1 = span{e1, b, ab} as a right module over B0 = e1 A e1
    let a = sn2();
    let corner = a.corner(&[0]).unwrap();
    let b0 = &corner.algebra;
    let col: Vec<usize> = (0..a.dim()).filter(|&k| a.peirce_of(k).1 == 0).collect();
    let action = (0..b0.dim())
        .map(|t| {
            let y = corner.embed(&b0.basis_elem(t), &a);
            let mut m = Mat::zeros(a.field(), col.len(), col.len());
            for (c, &k) in col.iter().enumerate() {
                let prod = a.mul(&a.basis_elem(k), &y);
                for (r, &kk) in col.iter().enumerate() {
                    m.set(r, c, prod[kk].clone());
                }
            }
            m
        })
        .collect();
    let v = ModuleRep::new(b0, col.len(), action).unwrap();
    let top = b0.top_and_min_generators(&v).unwrap();
    assert_eq!(top.top_dims, vec![2]);
    assert_eq!(top.radical_part.len(), 1);
    let labels: Vec<&str> = col.iter().map(|&k| a.labels()[k].as_str()).collect();
    assert_eq!(labels, ["e_1", "b", "ab"]);
    let lifted: Vec<usize> = top.generators.iter().map(|(_, g)| g.iter().position(|s| !s.is_zero()).unwrap()).collect();
    assert_eq!(lifted, vec![0, 1]);
}

fn corpus_algebras() -> Vec<Algebra> {
    vec![
        sn2(),
        corpus::nakayama3(f101()),
        corpus::dual_numbers(rat()),
        corpus::radical_square_zero_cycle(f101()),
        corpus::symmetric_nakayama(f101(), 2, 5),
    ]
}

proptest! {
    #[test]
    fn associativity_on_random_elements(which in 0usize..5, seed in any::<u64>()) {
        use rand::Rng;
        let alg = &corpus_algebras()[which];
        let mut rng = alg.session().with_seed(seed).rng(1);
        let f = alg.field();
        let mut rnd = || (0..alg.dim()).map(|_| f.int(rng.gen_range(-5..=5))).collect::<Vec<_>>();
        let (x, y, z) = (rnd(), rnd(), rnd());
        prop_assert_eq!(alg.mul(&alg.mul(&x, &y), &z), alg.mul(&x, &alg.mul(&y, &z)));
    }

    #[test]
    fn radical_is_nilpotent_ideal(which in 0usize..5) {
        let alg = &corpus_algebras()[which];
        let rad = alg.radical().unwrap();
        let f = alg.field();
        for r in &rad {
            for b in 0..alg.dim() {
                let left = alg.mul(&alg.basis_elem(b), r);
                let right = alg.mul(r, &alg.basis_elem(b));
                let mut ech = Echelon::new(f, alg.dim());
                for v in &rad { ech.insert(v); }
                prop_assert!(ech.contains(&left) && ech.contains(&right));
            }
        }
        let mut power = rad.clone();
        for _ in 0..alg.dim() {
            power = linalg::span_basis(f, alg.dim(), &power.iter().flat_map(|p| rad.iter().map(|r| alg.mul(p, r))).collect::<Vec<_>>());
        }
        prop_assert!(power.is_empty());
    }
}

#[test]
fn path_expressions_round_trip() {
    let a = corpus::sn2(Session::new(Field::Rational));
    let q = a.quiver().unwrap();
    for expr in ["a b", "- 3/2 a b + e_1", "e_2 - b a", "2 a - 1/3 a b a"] {
        let x = q.parse_element(expr).unwrap();
        assert_eq!(q.parse_element(&q.format_element(&x)).unwrap(), x, "{expr}");
    }
}
