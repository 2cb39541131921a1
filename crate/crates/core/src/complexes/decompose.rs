//! Krull–Schmidt decomposition of minimal complexes.

use rand::Rng;

use super::hom::chain_maps;
use super::minimize::is_minimal;
use super::{combination, ChainMap, ComplexError, PMat, ProjComplex};
use crate::algebra::{AlgebraError, MatrixAlgebra};
use crate::field::Scalar;
use crate::linalg::Mat;

/// One isomorphism class of indecomposable summands.
#[derive(Clone, Debug)]
pub struct Summand {
    pub complex: ProjComplex,
    pub multiplicity: usize,
    /// For each copy, `X_i → X` and `X → X_i` with `p∘i = 1`.
    pub inclusions: Vec<ChainMap>,
    pub projections: Vec<ChainMap>,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub summands: Vec<Summand>,
}

impl Decomposition {
    /// Number of pairwise non-isomorphic indecomposable summands.
    pub fn num_types(&self) -> usize {
        self.summands.len()
    }

    pub fn total(&self) -> usize {
        self.summands.iter().map(|s| s.multiplicity).sum()
    }

    /// Multiplicities sorted, for order-independent comparisons.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m: Vec<usize> = self.summands.iter().map(|s| s.multiplicity).collect();
        m.sort_unstable();
        m
    }
}

/// Block-diagonal residue matrix of an endomorphism, one block per degree.
pub(crate) fn residue_of_endo(f: &ChainMap) -> Mat {
    let x = f.source();
    let alg = x.algebra();
    let n = x.num_summands();
    let mut m = Mat::zeros(alg.field(), n, n);
    let mut off = 0;
    for d in x.degrees() {
        let r = f.comp(d).residue(alg);
        for i in 0..r.rows() {
            for j in 0..r.cols() {
                m.set(off + i, off + j, r.get(i, j).clone());
            }
        }
        off += r.rows();
    }
    m
}

fn is_nilpotent(m: &Mat) -> bool {
    let mut p = m.clone();
    let mut k = 1;
    while k < m.rows().max(1) {
        p = p.mul(&p).unwrap();
        k *= 2;
    }
    p.is_zero()
}

fn newton_idempotent(x: &ChainMap) -> Result<ChainMap, ComplexError> {
    let field = x.source().algebra().field();
    let (three, two) = (field.int(3), field.int(2));
    let mut cur = x.clone();
    for _ in 0..64 {
        let sq = cur.then(&cur)?;
        if sq == cur {
            return Ok(cur);
        }
        let cube = sq.then(&cur)?;
        cur = sq.scale(&three).sub(&cube.scale(&two))?;
    }
    Err(AlgebraError::Undecided("idempotent lifting did not converge".into()).into())
}

/// Image of an idempotent chain map `e` as a complex with inclusion and projection.
fn split_idempotent(x: &ProjComplex, e: &ChainMap) -> (ProjComplex, ChainMap, ChainMap) {
    let alg = x.algebra_arc().clone();
    let mut iotas: Vec<PMat> = Vec::new();
    let mut pis: Vec<PMat> = Vec::new();
    let mut terms = Vec::new();
    for d in x.degrees() {
        let ep = e.comp(d);
        let res = ep.residue(&alg);
        let n = x.term(d).len();
        let all: Vec<usize> = (0..n).collect();
        let (_, cols) = res.rref();
        let sub_cols = Mat::from_cols(alg.field(), n, &cols.iter().map(|&j| res.col(j)).collect::<Vec<_>>());
        let (_, rows) = sub_cols.transpose().rref();
        let iota = ep.select(&all, &cols);
        let pi0 = PMat::identity(&alg, x.term(d)).select(&rows, &all);
        let inv = pi0.compose(&alg, &iota).inverse(&alg).expect("residue block is invertible");
        let pi = inv.compose(&alg, &pi0).compose(&alg, &ep);
        terms.push(cols.iter().map(|&j| x.term(d)[j]).collect::<Vec<usize>>());
        iotas.push(iota);
        pis.push(pi);
    }
    let lo = x.lo();
    let diffs = (0..terms.len().saturating_sub(1))
        .map(|k| pis[k + 1].compose(&alg, &x.diff(lo + k as i32)).compose(&alg, &iotas[k]))
        .collect();
    let s = ProjComplex::new_unchecked(alg.clone(), lo, terms.clone(), diffs);
    // the summand is trimmed; rebuild the maps on its own degree range
    let at = |d: i32| (d - lo) as usize;
    let inc = ChainMap::from_fn(&s, x, |d| iotas[at(d)].clone());
    let proj = ChainMap::from_fn(x, &s, |d| {
        if s.term(d).is_empty() {
            PMat::zero(&alg, &[], x.term(d))
        } else {
            pis[at(d)].clone()
        }
    });
    (s, inc, proj)
}

/// Lifts of the primitive idempotents of the strict endomorphism algebra.
fn primitive_endo_idempotents(x: &ProjComplex) -> Result<Vec<ChainMap>, ComplexError> {
    let alg = x.algebra();
    let field = alg.field();
    let n = x.num_summands();
    let ends = chain_maps(x, x)?;
    let images: Vec<Mat> = ends.iter().map(residue_of_endo).collect();
    let ma = MatrixAlgebra::with_trace_radical(field, n, &images)?;
    let mut rng = alg.session().rng(0xdec0);
    let eps = ma.primitive_idempotents(vec![Mat::identity(field, n)], &mut rng)?;
    if eps.len() == 1 {
        return Ok(vec![ChainMap::identity(x)]);
    }
    let system = Mat::from_cols(field, n * n, &images.iter().map(|m| m.entries().to_vec()).collect::<Vec<_>>());
    let mut lifted: Vec<ChainMap> = Vec::new();
    let id = ChainMap::identity(x);
    for (k, eps_k) in eps.iter().enumerate() {
        let mut u = id.clone();
        for e in &lifted {
            u = u.sub(e)?;
        }
        if k + 1 == eps.len() {
            lifted.push(u);
            break;
        }
        let coeffs = system
            .solve(eps_k.entries())
            .map_err(AlgebraError::from)?
            .into_option()
            .ok_or_else(|| AlgebraError::Undecided("idempotent has no preimage".into()))?;
        let y = combination(&ends, &coeffs);
        let z = u.then(&y)?.then(&u)?;
        lifted.push(newton_idempotent(&z)?);
    }
    Ok(lifted)
}

/// Sorted vertex types per degree: a necessary condition for isomorphism.
fn shape(x: &ProjComplex) -> Vec<(i32, Vec<usize>)> {
    x.degrees()
        .map(|d| {
            let mut t = x.term(d).to_vec();
            t.sort_unstable();
            (d, t)
        })
        .collect()
}

/// Exact isomorphism test for indecomposable minimal complexes: `X ≅ Y` iff
/// some composite `g∘f` of basis chain maps is not in the radical of `End(X)`.
pub(crate) fn indecomposables_isomorphic(x: &ProjComplex, y: &ProjComplex) -> Result<bool, ComplexError> {
    if shape(x) != shape(y) {
        return Ok(false);
    }
    if x.is_zero() {
        return Ok(true);
    }
    let fs = chain_maps(x, y)?;
    let gs = chain_maps(y, x)?;
    for f in &fs {
        for g in &gs {
            if !is_nilpotent(&residue_of_endo(&f.then(g)?)) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Splits a minimal complex into indecomposables grouped by isomorphism type.
pub fn decompose(x: &ProjComplex) -> Result<Decomposition, ComplexError> {
    if !is_minimal(x) {
        return Err(ComplexError::Shape("decompose needs a minimal complex".into()));
    }
    if x.is_zero() {
        return Ok(Decomposition { summands: vec![] });
    }
    let idems = primitive_endo_idempotents(x)?;
    let mut summands: Vec<Summand> = Vec::new();
    for e in &idems {
        let (s, inc, proj) = if idems.len() == 1 {
            (x.clone(), ChainMap::identity(x), ChainMap::identity(x))
        } else {
            split_idempotent(x, e)
        };
        let mut placed = false;
        for g in summands.iter_mut() {
            if indecomposables_isomorphic(&g.complex, &s)? {
                g.multiplicity += 1;
                g.inclusions.push(inc.clone());
                g.projections.push(proj.clone());
                placed = true;
                break;
            }
        }
        if !placed {
            summands.push(Summand { complex: s, multiplicity: 1, inclusions: vec![inc], projections: vec![proj] });
        }
    }
    Ok(Decomposition { summands })
}

fn degreewise_iso(f: &ChainMap) -> bool {
    let x = f.source();
    let alg = x.algebra();
    x.degrees().all(|d| {
        let c = f.comp(d);
        c.rows().len() == c.cols().len() && c.residue(alg).is_invertible()
    }) && f.target().num_summands() == x.num_summands()
}

/// Whether two minimal complexes are isomorphic.
///
/// Generic elements of the chain-map space are tried first; if none is a
/// degreewise isomorphism the answer is settled exactly by comparing
/// decompositions.
pub fn iso_test(x: &ProjComplex, y: &ProjComplex) -> Result<bool, ComplexError> {
    x.check_same(y)?;
    if shape(x) != shape(y) {
        return Ok(false);
    }
    if x.is_zero() {
        return Ok(true);
    }
    let fs = chain_maps(x, y)?;
    if fs.is_empty() {
        return Ok(false);
    }
    let field = x.algebra().field();
    let k = fs.len();
    let trials: Vec<Vec<Scalar>> = if field.characteristic() == 0 {
        (1..=16i64).map(|t| (0..k).map(|i| field.int(t.pow((i % 8) as u32) + i as i64)).collect()).collect()
    } else {
        let mut rng = x.algebra().session().rng(0x150);
        let p = field.characteristic() as i64;
        (0..64).map(|_| (0..k).map(|_| field.int(rng.gen_range(0..p))).collect()).collect()
    };
    for c in &trials {
        if degreewise_iso(&combination(&fs, c)) {
            return Ok(true);
        }
    }
    let (dx, dy) = (decompose(x)?, decompose(y)?);
    if dx.multiplicities() != dy.multiplicities() {
        return Ok(false);
    }
    let mut used = vec![false; dy.summands.len()];
    for s in &dx.summands {
        let mut found = false;
        for (j, t) in dy.summands.iter().enumerate() {
            if !used[j] && t.multiplicity == s.multiplicity && indecomposables_isomorphic(&s.complex, &t.complex)? {
                used[j] = true;
                found = true;
                break;
            }
        }
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `n(X)`: the number of indecomposable types in a minimal complex.
pub fn count_types(x: &ProjComplex) -> Result<usize, ComplexError> {
    Ok(decompose(x)?.num_types())
}
