mod support;

use std::sync::Arc;

use quivtilt::algebra::{Algebra, Session};
use quivtilt::complexes::{hom_window, ProjComplex};
use quivtilt::field::Field;
use quivtilt::linalg::{self, Echelon};
use quivtilt::tilting::{complete, end_algebra, is_partial_tilting};
use quivtilt::corpus;
use support::oracle::oracle_hom;

fn sn2() -> Arc<Algebra> {
    Arc::new(corpus::sn2(Session::new(Field::prime(101).unwrap())))
}

fn x_prime(a: &Arc<Algebra>) -> ProjComplex {
    ProjComplex::build(a.clone(), -1, vec![vec![0], vec![1]], &[(-1, 0, 0, "b")]).unwrap()
}

#[test]
fn self_hom_tables_match_brute_force() {
    let a = sn2();
    let e1 = ProjComplex::stalk(a.clone(), 0, &[0]);
    let cases = [
        (x_prime(&a), true),
        (e1.direct_sum(&e1.shift(1)).unwrap(), false),
        (complete(&e1, 1).unwrap().1, true),
    ];
    for (x, expected) in cases {
        let cert = is_partial_tilting(&x).unwrap();
        for n in hom_window(&x, &x) {
            assert_eq!(cert.dim_at(n), oracle_hom(&x, &x, n).dim, "degree {n}");
        }
        assert_eq!(cert.verdict, expected);
    }
}

#[test]
fn end_algebra_of_first_completion() {
    let a = sn2();
    let e1 = ProjComplex::stalk(a.clone(), 0, &[0]);
    let (_, theta) = complete(&e1, 1).unwrap();
    let end = end_algebra(&theta).unwrap();
    let b = end.algebra();
    assert_eq!(b.dim(), oracle_hom(&theta, &theta, 0).dim);
    assert_eq!(b.dim(), 6);
    // Cartan matrix from brute-force Hom dimensions between the summands
    let ts = &end.summands.summands;
    let cartan: Vec<Vec<usize>> =
        (0..ts.len()).map(|k| (0..ts.len()).map(|l| oracle_hom(&ts[l], &ts[k], 0).dim).collect()).collect();
    assert_eq!(b.cartan(), cartan);
    assert_eq!(cartan, vec![vec![2, 1], vec![1, 2]]);

    // every structure constant agrees with composition modulo brute-force boundaries
    let alg = theta.algebra();
    let f = alg.field();
    let m = ts.len();
    for k in 0..m {
        for l in 0..m {
            for j in 0..m {
                let o = oracle_hom(&ts[j], &ts[k], 0);
                let mut bnd = Echelon::new(f, o.len());
                for v in &o.boundaries {
                    bnd.insert(v);
                }
                for (xi, x) in end.summands.block_indices(k, l).into_iter().zip(end.summands.block_basis(k, l)) {
                    for (yi, y) in end.summands.block_indices(l, j).into_iter().zip(end.summands.block_basis(l, j)) {
                        let direct = o.flatten(alg, &y.then(x).unwrap());
                        let prod = b.mul(&b.basis_elem(xi), &b.basis_elem(yi));
                        let via_table = o.flatten(alg, &end.summands.map_of(k, j, &prod));
                        assert!(bnd.contains(&linalg::vec_sub(&direct, &via_table)));
                    }
                }
            }
        }
    }
}
