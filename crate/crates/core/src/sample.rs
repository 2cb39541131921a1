//! Random complexes for property tests and sampling suites.

use std::sync::Arc;

use rand::Rng;

use crate::algebra::{Algebra, Elem};
use crate::complexes::{PMat, ProjComplex};
use crate::field::{Field, Scalar};
use crate::linalg::{self, Mat};

/// Uniform over F_p, small integers over Q.
pub fn random_scalar<R: Rng>(field: Field, rng: &mut R) -> Scalar {
    match field.characteristic() {
        0 => field.int(rng.gen_range(-3..=3)),
        p => field.int(rng.gen_range(0..p as i64)),
    }
}

fn nonzero_scalar<R: Rng>(field: Field, rng: &mut R) -> Scalar {
    loop {
        let s = random_scalar(field, rng);
        if !s.is_zero() {
            return s;
        }
    }
}

/// Basis indices of `e_r A e_c` lying in the radical (all but the idempotent).
fn radical_slot(alg: &Algebra, r: usize, c: usize) -> Vec<usize> {
    alg.peirce_indices(r, c).into_iter().filter(|&b| r != c || alg.basis_elem(b) != *alg.idem(r)).collect()
}

fn random_radical_entry<R: Rng>(alg: &Algebra, r: usize, c: usize, rng: &mut R) -> Elem {
    let mut x = alg.zero_elem();
    for b in radical_slot(alg, r, c) {
        x[b] = random_scalar(alg.field(), rng);
    }
    x
}

/// A random differential `X^{p+1} → X^{p+2}` with radical entries and `d∘prev = 0`.
fn random_next_differential<R: Rng>(alg: &Algebra, prev: &PMat, next_types: &[usize], rng: &mut R) -> PMat {
    let field = alg.field();
    let mid = prev.rows();
    let src = prev.cols();
    let unknowns: Vec<(usize, usize, usize)> = next_types
        .iter()
        .enumerate()
        .flat_map(|(r, &tr)| mid.iter().enumerate().flat_map(move |(c, &tc)| radical_slot(alg, tr, tc).into_iter().map(move |b| (r, c, b))))
        .collect();
    let mut out = PMat::zero(alg, next_types, mid);
    if unknowns.is_empty() {
        return out;
    }
    let len = next_types.len() * src.len() * alg.dim();
    let cols: Vec<Vec<Scalar>> = unknowns
        .iter()
        .map(|&(r, c, b)| {
            let mut v = linalg::zero_vec(field, len);
            let e = alg.basis_elem(b);
            for c0 in 0..src.len() {
                let p = alg.mul(&e, prev.get(c, c0));
                for (k, s) in p.into_iter().enumerate() {
                    v[(r * src.len() + c0) * alg.dim() + k] = s;
                }
            }
            v
        })
        .collect();
    let sols = if len == 0 {
        (0..unknowns.len()).map(|i| linalg::unit(field, unknowns.len(), i)).collect()
    } else {
        Mat::from_cols(field, len, &cols).nullspace()
    };
    let mut coeffs = linalg::zero_vec(field, unknowns.len());
    for s in &sols {
        linalg::axpy(&mut coeffs, &random_scalar(field, rng), s);
    }
    for (&(r, c, b), s) in unknowns.iter().zip(coeffs) {
        let mut x = out.get(r, c).clone();
        x[b] = s;
        out.set(r, c, x);
    }
    out
}

/// A random minimal complex in degrees `lo .. lo + width` with between 1 and
/// `max_summands` summands per degree.
pub fn random_complex<R: Rng>(alg: &Arc<Algebra>, lo: i32, width: usize, max_summands: usize, rng: &mut R) -> ProjComplex {
    let m = alg.num_idems();
    let terms: Vec<Vec<usize>> =
        (0..width).map(|_| (0..rng.gen_range(1..=max_summands)).map(|_| rng.gen_range(0..m)).collect()).collect();
    let mut diffs: Vec<PMat> = Vec::new();
    for k in 0..width.saturating_sub(1) {
        let d = if k == 0 {
            let mut d = PMat::zero(alg, &terms[1], &terms[0]);
            for (r, &tr) in terms[1].iter().enumerate() {
                for (c, &tc) in terms[0].iter().enumerate() {
                    d.set(r, c, random_radical_entry(alg, tr, tc, rng));
                }
            }
            d
        } else {
            random_next_differential(alg, &diffs[k - 1], &terms[k + 1], rng)
        };
        diffs.push(d);
    }
    ProjComplex::new(alg.clone(), lo, terms, diffs).expect("sampled complexes are valid")
}

/// A random automorphism of `⊕ e_t A`: invertible residue, arbitrary radical part.
pub fn random_automorphism<R: Rng>(alg: &Algebra, types: &[usize], rng: &mut R) -> PMat {
    let field = alg.field();
    let mut g = PMat::zero(alg, types, types);
    for (r, &tr) in types.iter().enumerate() {
        for (c, &tc) in types.iter().enumerate() {
            let mut x = random_radical_entry(alg, tr, tc, rng);
            if tr == tc && r <= c {
                let s = if r == c { nonzero_scalar(field, rng) } else { random_scalar(field, rng) };
                x = linalg::vec_add(&x, &linalg::vec_scale(alg.idem(tr), &s));
            }
            g.set(r, c, x);
        }
    }
    g
}

/// An isomorphic copy of `x`: `d'^p = g_{p+1} d^p g_p^{-1}` with random automorphisms
/// and a random reordering of the summands in each degree.
pub fn random_isomorphic_copy<R: Rng>(x: &ProjComplex, rng: &mut R) -> ProjComplex {
    let alg = x.algebra_arc().clone();
    let mut y = x.clone();
    for d in x.degrees() {
        let n = x.term(d).len();
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            perm.swap(i, rng.gen_range(0..=i));
        }
        y = y.permute(d, &perm);
    }
    let gs: Vec<PMat> = y.degrees().map(|d| random_automorphism(&alg, y.term(d), rng)).collect();
    let lo = y.lo();
    let terms: Vec<Vec<usize>> = y.degrees().map(|d| y.term(d).to_vec()).collect();
    let diffs = (lo..y.hi())
        .map(|d| {
            let k = (d - lo) as usize;
            let inv = gs[k].inverse(&alg).expect("automorphism");
            gs[k + 1].compose(&alg, &y.diff(d)).compose(&alg, &inv)
        })
        .collect();
    ProjComplex::new(alg, lo, terms, diffs).expect("conjugate of a complex")
}
