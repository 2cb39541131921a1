//! Comparing `A/AeA` with `B/BfB`.

use crate::algebra::{Algebra, AlgebraError, Elem};
use crate::field::Scalar;
use crate::linalg::{self, Echelon, Mat};
use crate::sample::random_scalar;

/// Random extensions tried per idempotent bijection.
const TRIALS: usize = 24;
/// Idempotent bijections tried before giving up.
const BIJECTIONS: usize = 720;

/// Morita invariants of an algebra, computed on its basic version.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fingerprint {
    pub dim: usize,
    pub center_dim: usize,
    /// Cartan matrix of the basic version, minimal over vertex orderings.
    pub cartan: Vec<Vec<usize>>,
    pub radical_layers: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ComparisonLevel {
    Mismatch,
    DimensionsMatch,
    FingerprintsMatch,
    ExplicitIso,
}

impl ComparisonLevel {
    pub fn label(&self) -> &'static str {
        match self {
            ComparisonLevel::Mismatch => "mismatch",
            ComparisonLevel::DimensionsMatch => "dimensions-match",
            ComparisonLevel::FingerprintsMatch => "fingerprints-match",
            ComparisonLevel::ExplicitIso => "explicit-iso-found",
        }
    }
}

#[derive(Clone, Debug)]
pub struct QuotientComparison {
    pub left: Algebra,
    pub right: Algebra,
    pub dims: (usize, usize),
    pub fingerprints: Option<(Fingerprint, Fingerprint)>,
    /// Matrix of an algebra isomorphism `left → right`, checked on all basis pairs.
    pub iso: Option<Mat>,
    pub level: ComparisonLevel,
}

/// One vertex per isomorphism class of indecomposable projectives.
pub fn basic_vertices(alg: &Algebra) -> Result<Vec<usize>, AlgebraError> {
    let mut reps: Vec<usize> = Vec::new();
    for i in 0..alg.num_idems() {
        let mut found = false;
        for &j in &reps {
            if projectives_isomorphic(alg, i, j)? {
                found = true;
                break;
            }
        }
        if !found {
            reps.push(i);
        }
    }
    Ok(reps)
}

/// `e_i A ≅ e_j A` iff some `y x` with `x ∈ e_j A e_i`, `y ∈ e_i A e_j` is a unit of `e_i A e_i`.
fn projectives_isomorphic(alg: &Algebra, i: usize, j: usize) -> Result<bool, AlgebraError> {
    if i == j {
        return Ok(true);
    }
    alg.residue_characters()?;
    for x in alg.peirce(j, i)? {
        for y in alg.peirce(i, j)? {
            let yx = alg.mul(&alg.basis_elem(y), &alg.basis_elem(x));
            if !alg.residue(i, &yx).is_zero() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

fn canonical_cartan(c: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = c.len();
    let mut best: Option<Vec<Vec<usize>>> = None;
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 0, &mut |p| {
        let m: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| c[p[i]][p[j]]).collect()).collect();
        if best.as_ref().is_none_or(|b| m < *b) {
            best = Some(m);
        }
        true
    });
    best.unwrap_or_default()
}

/// Visits permutations in place until `f` returns false; returns whether it finished.
fn permutations(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if k == p.len() {
        return f(p);
    }
    for i in k..p.len() {
        p.swap(k, i);
        let go = permutations(p, k + 1, f);
        p.swap(k, i);
        if !go {
            return false;
        }
    }
    true
}

pub fn fingerprint(alg: &Algebra) -> Result<Fingerprint, AlgebraError> {
    if alg.dim() == 0 {
        return Ok(Fingerprint { dim: 0, center_dim: 0, cartan: Vec::new(), radical_layers: Vec::new() });
    }
    let basic = basic_vertices(alg)?;
    let b = if basic.len() == alg.num_idems() { alg.clone() } else { alg.corner(&basic)?.algebra };
    Ok(Fingerprint {
        dim: b.dim(),
        center_dim: alg.center_dim(),
        cartan: canonical_cartan(&b.cartan()),
        radical_layers: b.radical_layers()?,
    })
}

/// `φ(xy) = φ(x)φ(y)` on all basis pairs, unit and idempotents preserved up to the bijection, `φ` invertible.
pub fn is_isomorphism(x: &Algebra, y: &Algebra, phi: &Mat) -> bool {
    if phi.rows() != y.dim() || phi.cols() != x.dim() || !phi.is_invertible() {
        return false;
    }
    let ap = |v: &[Scalar]| phi.mul_vec(v).expect("shape");
    if ap(x.unit()) != *y.unit() {
        return false;
    }
    for a in 0..x.dim() {
        for b in 0..x.dim() {
            let (ea, eb) = (x.basis_elem(a), x.basis_elem(b));
            if ap(&x.mul(&ea, &eb)) != y.mul(&ap(&ea), &ap(&eb)) {
                return false;
            }
        }
    }
    true
}

/// Basis of `e_i J e_j` for `J` spanned by `vectors`.
fn block(alg: &Algebra, vectors: &[Elem], i: usize, j: usize) -> Vec<Elem> {
    let (ei, ej) = (alg.idem(i), alg.idem(j));
    let parts: Vec<Elem> = vectors.iter().map(|v| alg.mul(&alg.mul(ei, v), ej)).collect();
    linalg::span_basis(alg.field(), alg.dim(), &parts)
}

/// Peirce-homogeneous elements of `rad` spanning it modulo `rad²`.
fn arrow_generators(alg: &Algebra) -> Result<Vec<(usize, usize, Elem)>, AlgebraError> {
    let rad = alg.radical()?;
    let mut sq = Vec::new();
    for a in &rad {
        for b in &rad {
            sq.push(alg.mul(a, b));
        }
    }
    let mut ech = Echelon::new(alg.field(), alg.dim());
    for v in &sq {
        ech.insert(v);
    }
    let mut out = Vec::new();
    for i in 0..alg.num_idems() {
        for j in 0..alg.num_idems() {
            for v in block(alg, &rad, i, j) {
                if ech.insert(&v) {
                    out.push((i, j, v));
                }
            }
        }
    }
    Ok(out)
}

/// Searches for an isomorphism sending idempotents to idempotents.
pub fn find_isomorphism(x: &Algebra, y: &Algebra) -> Result<Option<Mat>, AlgebraError> {
    let field = x.field();
    if x.dim() != y.dim() || x.num_idems() != y.num_idems() {
        return Ok(None);
    }
    if x.dim() == 0 {
        return Ok(Some(Mat::zeros(field, 0, 0)));
    }
    let (cx, cy) = (x.cartan(), y.cartan());
    let gens = arrow_generators(x)?;
    let rad_y = y.radical()?;
    let mut rng = x.session().rng(0x9e37);
    let n = x.num_idems();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut tried = 0;
    let mut found = None;
    permutations(&mut perm, 0, &mut |s| {
        if (0..n).any(|i| (0..n).any(|j| cx[i][j] != cy[s[i]][s[j]])) {
            return true;
        }
        tried += 1;
        let targets: Vec<Vec<Elem>> = gens.iter().map(|(i, j, _)| block(y, &rad_y, s[*i], s[*j])).collect();
        for _ in 0..TRIALS {
            let images: Vec<Elem> = targets
                .iter()
                .map(|t| {
                    let mut v = y.zero_elem();
                    for b in t {
                        linalg::axpy(&mut v, &random_scalar(field, &mut rng), b);
                    }
                    v
                })
                .collect();
            if let Some(phi) = extend(x, y, s, &gens, &images) {
                found = Some(phi);
                return false;
            }
        }
        tried < BIJECTIONS
    });
    Ok(found)
}

/// Extends idempotents and arrow images multiplicatively; `None` when inconsistent.
fn extend(x: &Algebra, y: &Algebra, s: &[usize], gens: &[(usize, usize, Elem)], images: &[Elem]) -> Option<Mat> {
    let field = x.field();
    let mut pairs: Vec<(Elem, Elem)> = (0..x.num_idems()).map(|i| (x.idem(i).clone(), y.idem(s[i]).clone())).collect();
    let mut frontier: Vec<(Elem, Elem)> = gens.iter().map(|g| g.2.clone()).zip(images.iter().cloned()).collect();
    let depth = x.dim() + 1;
    for _ in 0..depth {
        if frontier.is_empty() {
            break;
        }
        pairs.extend(frontier.iter().cloned());
        let mut next = Vec::new();
        for (a, b) in &frontier {
            for (g, h) in gens.iter().map(|g| &g.2).zip(images) {
                let (p, q) = (x.mul(a, g), y.mul(b, h));
                if !linalg::is_zero_vec(&p) || !linalg::is_zero_vec(&q) {
                    next.push((p, q));
                }
            }
        }
        frontier = next;
    }
    if !frontier.is_empty() {
        return None;
    }
    let mut ech = Echelon::new(field, x.dim());
    let mut src = Vec::new();
    let mut dst = Vec::new();
    for (a, b) in &pairs {
        if ech.insert(a) {
            src.push(a.clone());
            dst.push(b.clone());
        }
    }
    if src.len() != x.dim() {
        return None;
    }
    let inv = Mat::from_cols(field, x.dim(), &src).inverse()?;
    let phi = Mat::from_cols(field, y.dim(), &dst).mul(&inv).ok()?;
    for (a, b) in &pairs {
        if phi.mul_vec(a).ok()? != *b {
            return None;
        }
    }
    is_isomorphism(x, y, &phi).then_some(phi)
}

/// Dimensions, then fingerprints, then an explicit isomorphism.
pub fn compare_algebras(left: Algebra, right: Algebra) -> Result<QuotientComparison, AlgebraError> {
    let dims = (left.dim(), right.dim());
    let mut out = QuotientComparison { left, right, dims, fingerprints: None, iso: None, level: ComparisonLevel::Mismatch };
    if dims.0 != dims.1 {
        return Ok(out);
    }
    out.level = ComparisonLevel::DimensionsMatch;
    let fl = fingerprint(&out.left)?;
    let fr = fingerprint(&out.right)?;
    let same = fl == fr;
    out.fingerprints = Some((fl, fr));
    if !same {
        return Ok(out);
    }
    out.level = ComparisonLevel::FingerprintsMatch;
    if let Some(phi) = find_isomorphism(&out.left, &out.right)? {
        out.iso = Some(phi);
        out.level = ComparisonLevel::ExplicitIso;
    }
    Ok(out)
}

/// Compares `A/AeA` with `B/BfB` for idempotent subsets `e` of `A` and `f` of `B`.
pub fn quotient_compare(a: &Algebra, e: &[usize], b: &Algebra, f: &[usize]) -> Result<QuotientComparison, AlgebraError> {
    let qa = a.quotient_by_idempotent_ideal(e)?.algebra;
    let qb = b.quotient_by_idempotent_ideal(f)?.algebra;
    compare_algebras(qa, qb)
}
