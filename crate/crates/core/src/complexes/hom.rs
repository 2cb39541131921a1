//! Hom complexes and Hom spaces in the homotopy category.

use std::collections::HashMap;

use super::{ChainMap, ComplexError, PMat, ProjComplex};
use crate::field::{Field, Scalar};
use crate::linalg::{self, Mat};

/// Coordinates for graded maps `X → Y` of degree `n`: one block per entry of
/// each component `X^p → Y^{p+n}`, on the Peirce basis of that entry.
#[derive(Clone, Debug)]
pub(crate) struct Layout {
    n: i32,
    blocks: Vec<Block>,
    lookup: HashMap<(i32, usize, usize), usize>,
    dim: usize,
}

#[derive(Clone, Debug)]
struct Block {
    p: i32,
    r: usize,
    c: usize,
    basis: Vec<usize>,
    offset: usize,
}

impl Layout {
    pub(crate) fn new(x: &ProjComplex, y: &ProjComplex, n: i32) -> Layout {
        let alg = x.algebra();
        let mut blocks = Vec::new();
        let mut lookup = HashMap::new();
        let mut dim = 0;
        if !x.is_zero() {
            for p in x.degrees() {
                for (r, &tr) in y.term(p + n).iter().enumerate() {
                    for (c, &tc) in x.term(p).iter().enumerate() {
                        let basis = alg.peirce_indices(tr, tc);
                        if basis.is_empty() {
                            continue;
                        }
                        lookup.insert((p, r, c), blocks.len());
                        let len = basis.len();
                        blocks.push(Block { p, r, c, basis, offset: dim });
                        dim += len;
                    }
                }
            }
        }
        Layout { n, blocks, lookup, dim }
    }

    pub(crate) fn dim(&self) -> usize {
        self.dim
    }

    pub(crate) fn encode(&self, field: Field, comp: impl Fn(i32) -> PMat) -> Vec<Scalar> {
        let mut v = linalg::zero_vec(field, self.dim);
        let mut cache: HashMap<i32, PMat> = HashMap::new();
        for b in &self.blocks {
            let m = cache.entry(b.p).or_insert_with(|| comp(b.p));
            let e = m.get(b.r, b.c);
            for (i, &k) in b.basis.iter().enumerate() {
                v[b.offset + i] = e[k].clone();
            }
        }
        v
    }

    pub(crate) fn decode(&self, x: &ProjComplex, y: &ProjComplex, v: &[Scalar]) -> Vec<PMat> {
        let alg = x.algebra();
        let mut comps: Vec<PMat> = x.degrees().map(|p| PMat::zero(alg, y.term(p + self.n), x.term(p))).collect();
        for b in &self.blocks {
            let mut e = alg.zero_elem();
            for (i, &k) in b.basis.iter().enumerate() {
                e[k] = v[b.offset + i].clone();
            }
            comps[(b.p - x.lo()) as usize].set(b.r, b.c, e);
        }
        comps
    }

    fn add_elem(&self, col: &mut [Scalar], key: (i32, usize, usize), e: &[Scalar], sign: &Scalar) {
        if linalg::is_zero_vec(e) {
            return;
        }
        let b = &self.blocks[*self.lookup.get(&key).expect("entry lies in its Peirce block")];
        for (i, &k) in b.basis.iter().enumerate() {
            if !e[k].is_zero() {
                col[b.offset + i] = &col[b.offset + i] + &(sign * &e[k]);
            }
        }
    }
}

/// Matrix of `D: Hom^n(X, Y) → Hom^{n+1}(X, Y)`, `D(f) = d_Y f - (-1)^n f d_X`.
pub(crate) fn hom_differential(x: &ProjComplex, y: &ProjComplex, src: &Layout, dst: &Layout) -> Mat {
    let alg = x.algebra();
    let f = alg.field();
    let n = src.n;
    let mut m = Mat::zeros(f, dst.dim, src.dim);
    let plus = f.one();
    let minus = if n % 2 == 0 { -f.one() } else { f.one() };
    let mut dy_cache: HashMap<i32, PMat> = HashMap::new();
    let mut dx_cache: HashMap<i32, PMat> = HashMap::new();
    for b in &src.blocks {
        let dy = dy_cache.entry(b.p + n).or_insert_with(|| y.diff(b.p + n)).clone();
        let dx = dx_cache.entry(b.p - 1).or_insert_with(|| x.diff(b.p - 1)).clone();
        for (i, &k) in b.basis.iter().enumerate() {
            let e = alg.basis_elem(k);
            let mut col = linalg::zero_vec(f, dst.dim);
            for r2 in 0..dy.rows().len() {
                let z = alg.mul(dy.get(r2, b.r), &e);
                dst.add_elem(&mut col, (b.p, r2, b.c), &z, &plus);
            }
            for c2 in 0..dx.cols().len() {
                let z = alg.mul(&e, dx.get(b.c, c2));
                dst.add_elem(&mut col, (b.p - 1, b.r, c2), &z, &minus);
            }
            for (row, s) in col.into_iter().enumerate() {
                if !s.is_zero() {
                    m.set(row, b.offset + i, s);
                }
            }
        }
    }
    m
}

/// `Hom^•_A(X, Y)` as a complex of vector spaces.
#[derive(Clone, Debug)]
pub struct HomComplex {
    lo: i32,
    dims: Vec<usize>,
    diffs: Vec<Mat>,
}

impl HomComplex {
    pub fn new(x: &ProjComplex, y: &ProjComplex) -> Result<HomComplex, ComplexError> {
        x.check_same(y)?;
        if x.is_zero() || y.is_zero() {
            return Ok(HomComplex { lo: 0, dims: vec![], diffs: vec![] });
        }
        let (lo, hi) = (y.lo() - x.hi(), y.hi() - x.lo());
        let layouts: Vec<Layout> = (lo..=hi + 1).map(|n| Layout::new(x, y, n)).collect();
        let dims = layouts[..layouts.len() - 1].iter().map(Layout::dim).collect();
        let diffs = layouts.windows(2).map(|w| hom_differential(x, y, &w[0], &w[1])).collect();
        Ok(HomComplex { lo, dims, diffs })
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn hi(&self) -> i32 {
        self.lo + self.dims.len() as i32 - 1
    }

    pub fn dim(&self, n: i32) -> usize {
        let k = n - self.lo;
        if k < 0 { 0 } else { self.dims.get(k as usize).copied().unwrap_or(0) }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// `D^n`, or `None` where both ends vanish.
    pub fn differential(&self, n: i32) -> Option<&Mat> {
        let k = n - self.lo;
        if k < 0 { None } else { self.diffs.get(k as usize) }
    }

    pub fn cohomology_dim(&self, n: i32) -> usize {
        let z = self.dim(n) - self.differential(n).map_or(0, Mat::rank);
        z - self.differential(n - 1).map_or(0, Mat::rank)
    }
}

/// `Hom_K(X, Y[n])` with representatives `X → Y[n]`.
#[derive(Clone, Debug)]
pub struct HomotopyHomSpace {
    source: ProjComplex,
    target: ProjComplex,
    degree: i32,
    layout: Layout,
    cycle_test: Mat,
    reps: Vec<ChainMap>,
    solver: Mat,
}

impl HomotopyHomSpace {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn source(&self) -> &ProjComplex {
        &self.source
    }

    /// The shifted target `Y[n]`.
    pub fn target(&self) -> &ProjComplex {
        &self.target
    }

    pub fn basis(&self) -> &[ChainMap] {
        &self.reps
    }

    /// Coordinates of the class of `f: X → Y[n]`; `None` if `f` is not a chain map.
    pub fn coords(&self, f: &ChainMap) -> Option<Vec<Scalar>> {
        let field = self.source.algebra().field();
        let v = self.layout.encode(field, |d| f.comp(d));
        if !linalg::is_zero_vec(&self.cycle_test.mul_vec(&v).expect("layout length")) {
            return None;
        }
        if self.layout.dim() == 0 {
            return Some(vec![]);
        }
        let c = self.solver.solve(&v).expect("layout length").into_option()?;
        Some(c[..self.reps.len()].to_vec())
    }

    /// Whether a chain map `X → Y[n]` is null-homotopic.
    pub fn is_null(&self, f: &ChainMap) -> bool {
        self.coords(f).is_some_and(|c| linalg::is_zero_vec(&c))
    }
}

/// `Hom_K(X, Y[n])`: chain maps modulo null-homotopic ones.
pub fn homotopy_hom(x: &ProjComplex, y: &ProjComplex, n: i32) -> Result<HomotopyHomSpace, ComplexError> {
    x.check_same(y)?;
    let alg = x.algebra();
    let f = alg.field();
    let yn = y.shift(n);
    let l0 = Layout::new(x, &yn, 0);
    let lm = Layout::new(x, &yn, -1);
    let l1 = Layout::new(x, &yn, 1);
    let cycle_test = hom_differential(x, &yn, &l0, &l1);
    let bound_map = hom_differential(x, &yn, &lm, &l0);
    let cycles = if l0.dim() == 0 {
        vec![]
    } else if l1.dim() == 0 {
        (0..l0.dim()).map(|i| linalg::unit(f, l0.dim(), i)).collect()
    } else {
        cycle_test.nullspace()
    };
    let boundaries = if lm.dim() == 0 || l0.dim() == 0 { vec![] } else { bound_map.image_basis() };
    let chosen = linalg::extend_basis(f, l0.dim(), &boundaries, &cycles);
    let rep_vecs: Vec<Vec<Scalar>> = chosen.iter().map(|&i| cycles[i].clone()).collect();
    let reps = rep_vecs
        .iter()
        .map(|v| ChainMap::new_unchecked(x.clone(), yn.clone(), l0.decode(x, &yn, v)))
        .collect();
    let mut cols = rep_vecs.clone();
    cols.extend(boundaries);
    let solver = Mat::from_cols(f, l0.dim(), &cols);
    Ok(HomotopyHomSpace { source: x.clone(), target: yn, degree: n, layout: l0, cycle_test, reps, solver })
}

/// Basis of all chain maps `X → Y` (no homotopy quotient).
pub fn chain_maps(x: &ProjComplex, y: &ProjComplex) -> Result<Vec<ChainMap>, ComplexError> {
    x.check_same(y)?;
    let f = x.algebra().field();
    let l0 = Layout::new(x, y, 0);
    let l1 = Layout::new(x, y, 1);
    if l0.dim() == 0 {
        return Ok(vec![]);
    }
    let cycles =
        if l1.dim() == 0 { (0..l0.dim()).map(|i| linalg::unit(f, l0.dim(), i)).collect() } else { hom_differential(x, y, &l0, &l1).nullspace() };
    Ok(cycles.iter().map(|v| ChainMap::new_unchecked(x.clone(), y.clone(), l0.decode(x, y, v))).collect())
}

/// `dim Hom_K(X, Y[n])`.
pub fn hom_dim(x: &ProjComplex, y: &ProjComplex, n: i32) -> Result<usize, ComplexError> {
    Ok(homotopy_hom(x, y, n)?.dim())
}

/// Degrees where `Hom_K(X, Y[n])` can be nonzero.
pub fn hom_window(x: &ProjComplex, y: &ProjComplex) -> std::ops::RangeInclusive<i32> {
    if x.is_zero() || y.is_zero() {
        #[allow(clippy::reversed_empty_ranges)]
        return 1..=0;
    }
    (y.lo() - x.hi())..=(y.hi() - x.lo())
}
