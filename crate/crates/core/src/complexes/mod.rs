//! Bounded complexes of indecomposable projectives and their homotopy category.
//!
//! Sign conventions, used everywhere:
//!
//! * `X[1]^d = X^{d+1}` with differential `-d_X`; a chain map shifts without signs,
//!   `f[k]^d = f^{d+k}`.
//! * The cone of `f: X → Y` has `C^d = X^{d+1} ⊕ Y^d` and differential
//!   `[[-d_X, 0], [f, d_Y]]`; the triangle maps are `(0, 1): Y → C` and
//!   `(1, 0): C → X[1]`.
//! * The Hom complex has `D(f) = d_Y f - (-1)^n f d_X` in degree `n`. A class in
//!   `Hom_K(X, Y[n])` is represented by a chain map `X → Y[n]`.

mod decompose;
mod hom;
mod minimize;
mod pmat;

use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError};
use crate::field::Scalar;
use crate::linalg::Mat;

pub use decompose::{count_types, decompose, iso_test, Decomposition, Summand};
pub use hom::{chain_maps, hom_dim, hom_window, homotopy_hom, HomComplex, HomotopyHomSpace};
pub use minimize::{is_minimal, minimal, minimize, Minimized};
pub use pmat::PMat;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("degree {degree}: entry ({row}, {col}) is outside its Peirce component")]
    Peirce { degree: i32, row: usize, col: usize },
    #[error("d∘d is nonzero from degree {degree}")]
    NotComplex { degree: i32 },
    #[error("map does not commute with the differentials in degree {degree}")]
    NotChainMap { degree: i32 },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("complexes live over different algebras")]
    AlgebraMismatch,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A bounded complex `⊕ e_i A` with differentials given by [`PMat`]s.
#[derive(Clone, Debug)]
pub struct ProjComplex {
    alg: Arc<Algebra>,
    lo: i32,
    terms: Vec<Vec<usize>>,
    diffs: Vec<PMat>,
}

impl PartialEq for ProjComplex {
    fn eq(&self, o: &ProjComplex) -> bool {
        (Arc::ptr_eq(&self.alg, &o.alg) || self.alg == o.alg)
            && self.lo == o.lo
            && self.terms == o.terms
            && self.diffs == o.diffs
    }
}

impl Eq for ProjComplex {}

impl ProjComplex {
    /// `terms[k]` sits in degree `lo + k`; `diffs[k]` maps degree `lo + k` to `lo + k + 1`.
    pub fn new(alg: Arc<Algebra>, lo: i32, terms: Vec<Vec<usize>>, diffs: Vec<PMat>) -> Result<ProjComplex, ComplexError> {
        if diffs.len() + 1 != terms.len().max(1) {
            return Err(ComplexError::Shape(format!("{} terms need {} differentials", terms.len(), terms.len().saturating_sub(1))));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.cols() != terms[k].as_slice() || d.rows() != terms[k + 1].as_slice() {
                return Err(ComplexError::Shape(format!("differential from degree {} has the wrong types", lo + k as i32)));
            }
        }
        if let Some(&t) = terms.iter().flatten().find(|&&t| t >= alg.num_idems()) {
            return Err(AlgebraError::IndexOutOfRange { index: t, bound: alg.num_idems() }.into());
        }
        let x = ProjComplex { alg, lo, terms, diffs };
        x.validate()?;
        Ok(x.trimmed())
    }

    pub(crate) fn new_unchecked(alg: Arc<Algebra>, lo: i32, terms: Vec<Vec<usize>>, diffs: Vec<PMat>) -> ProjComplex {
        debug_assert_eq!(diffs.len() + 1, terms.len().max(1));
        ProjComplex { alg, lo, terms, diffs }.trimmed()
    }

    /// Builds a complex from differential entries `(degree, row, col, path expression)`.
    ///
    /// ```
    /// use std::sync::Arc;
    /// use quivtilt::{algebra::Session, complexes::ProjComplex, corpus, field::Field};
    ///
    /// let a = Arc::new(corpus::sn2(Session::new(Field::prime(101).unwrap())));
    /// // e_1 A --b--> e_2 A in degrees -1, 0
    /// let x = ProjComplex::build(a, -1, vec![vec![0], vec![1]], &[(-1, 0, 0, "b")]).unwrap();
    /// assert_eq!(x.width(), 2);
    /// ```
    pub fn build(
        alg: Arc<Algebra>,
        lo: i32,
        terms: Vec<Vec<usize>>,
        entries: &[(i32, usize, usize, &str)],
    ) -> Result<ProjComplex, ComplexError> {
        let hi = lo + terms.len() as i32 - 1;
        let term = |d: i32| -> &[usize] { if d < lo || d > hi { &[] } else { &terms[(d - lo) as usize] } };
        let mut diffs: Vec<PMat> = (lo..hi).map(|d| PMat::zero(&alg, term(d + 1), term(d))).collect();
        for &(d, r, c, expr) in entries {
            if d < lo || d >= hi || r >= term(d + 1).len() || c >= term(d).len() {
                return Err(ComplexError::Shape(format!("entry ({r}, {c}) of the differential from degree {d} is out of range")));
            }
            diffs[(d - lo) as usize].set(r, c, alg.parse_element(expr)?);
        }
        ProjComplex::new(alg, lo, terms, diffs)
    }

    pub fn zero(alg: Arc<Algebra>) -> ProjComplex {
        ProjComplex { alg, lo: 0, terms: vec![], diffs: vec![] }
    }

    /// `⊕_{v ∈ vertices} e_v A` in a single degree.
    pub fn stalk(alg: Arc<Algebra>, degree: i32, vertices: &[usize]) -> ProjComplex {
        ProjComplex::new_unchecked(alg, degree, vec![vertices.to_vec()], vec![])
    }

    /// `A` as a stalk complex in degree 0.
    pub fn regular(alg: Arc<Algebra>) -> ProjComplex {
        let all: Vec<usize> = (0..alg.num_idems()).collect();
        ProjComplex::stalk(alg, 0, &all)
    }

    /// Checks the Peirce constraints and `d∘d = 0`.
    pub fn validate(&self) -> Result<(), ComplexError> {
        for (k, d) in self.diffs.iter().enumerate() {
            if let Some((row, col)) = d.peirce_violation(&self.alg) {
                return Err(ComplexError::Peirce { degree: self.lo + k as i32, row, col });
            }
        }
        for k in 1..self.diffs.len() {
            if !self.diffs[k].compose(&self.alg, &self.diffs[k - 1]).is_zero() {
                return Err(ComplexError::NotComplex { degree: self.lo + k as i32 - 1 });
            }
        }
        Ok(())
    }

    fn trimmed(mut self) -> ProjComplex {
        while self.terms.last().is_some_and(|t| t.is_empty()) {
            self.terms.pop();
            self.diffs.pop();
        }
        while self.terms.first().is_some_and(|t| t.is_empty()) {
            self.terms.remove(0);
            if !self.diffs.is_empty() {
                self.diffs.remove(0);
            }
            self.lo += 1;
        }
        if self.terms.is_empty() {
            self.lo = 0;
            self.diffs.clear();
        }
        self
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn algebra_arc(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest degree with a nonzero term (0 for the zero complex).
    pub fn lo(&self) -> i32 {
        self.lo
    }

    /// Highest degree with a nonzero term (`lo - 1` for the zero complex).
    pub fn hi(&self) -> i32 {
        self.lo + self.terms.len() as i32 - 1
    }

    /// Number of degrees from the lowest to the highest nonzero term.
    pub fn width(&self) -> usize {
        self.terms.len()
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        self.lo..=self.hi()
    }

    pub fn term(&self, d: i32) -> &[usize] {
        let k = d - self.lo;
        if k < 0 || k as usize >= self.terms.len() {
            &[]
        } else {
            &self.terms[k as usize]
        }
    }

    /// `d^d: X^d → X^{d+1}`.
    pub fn diff(&self, d: i32) -> PMat {
        let k = d - self.lo;
        if k >= 0 && (k as usize) < self.diffs.len() {
            self.diffs[k as usize].clone()
        } else {
            PMat::zero(&self.alg, self.term(d + 1), self.term(d))
        }
    }

    /// Total number of indecomposable summands over all degrees.
    pub fn num_summands(&self) -> usize {
        self.terms.iter().map(Vec::len).sum()
    }

    /// `X[n]`.
    pub fn shift(&self, n: i32) -> ProjComplex {
        let diffs = if n % 2 == 0 { self.diffs.clone() } else { self.diffs.iter().map(PMat::neg).collect() };
        let lo = if self.is_zero() { 0 } else { self.lo - n };
        ProjComplex { alg: self.alg.clone(), lo, terms: self.terms.clone(), diffs }
    }

    fn check_same(&self, o: &ProjComplex) -> Result<(), ComplexError> {
        if Arc::ptr_eq(&self.alg, &o.alg) || self.alg == o.alg {
            Ok(())
        } else {
            Err(ComplexError::AlgebraMismatch)
        }
    }

    fn span(&self, o: &ProjComplex) -> Option<(i32, i32)> {
        match (self.is_zero(), o.is_zero()) {
            (true, true) => None,
            (true, false) => Some((o.lo, o.hi())),
            (false, true) => Some((self.lo, self.hi())),
            (false, false) => Some((self.lo.min(o.lo), self.hi().max(o.hi()))),
        }
    }

    /// `X ⊕ Y`, with the summands of `X` first in every degree.
    pub fn direct_sum(&self, o: &ProjComplex) -> Result<ProjComplex, ComplexError> {
        self.check_same(o)?;
        let Some((lo, hi)) = self.span(o) else {
            return Ok(self.clone());
        };
        let terms: Vec<Vec<usize>> = (lo..=hi).map(|d| [self.term(d), o.term(d)].concat()).collect();
        let diffs = (lo..hi).map(|d| PMat::diag(&self.alg, &self.diff(d), &o.diff(d))).collect();
        Ok(ProjComplex::new_unchecked(self.alg.clone(), lo, terms, diffs))
    }

    /// Direct sum of a list (zero for an empty list).
    pub fn sum_all(alg: Arc<Algebra>, parts: &[ProjComplex]) -> Result<ProjComplex, ComplexError> {
        let mut acc = ProjComplex::zero(alg);
        for p in parts {
            acc = acc.direct_sum(p)?;
        }
        Ok(acc)
    }

    /// The k-linear map underlying `d^d`.
    pub fn linear_diff(&self, d: i32) -> Mat {
        self.diff(d).linear_map(&self.alg)
    }

    /// `dim H^d(X)` of the underlying complex of vector spaces.
    pub fn cohomology_dim(&self, d: i32) -> usize {
        let dim_term: usize = self.term(d).iter().map(|&t| self.alg.row_indices(t).len()).sum();
        if dim_term == 0 {
            return 0;
        }
        let out = self.linear_diff(d).rank();
        let inc = self.linear_diff(d - 1).rank();
        dim_term - out - inc
    }

    /// Degrees with nonzero cohomology.
    pub fn cohomology_support(&self) -> Vec<i32> {
        self.degrees().filter(|&d| self.cohomology_dim(d) > 0).collect()
    }

    /// Reorders the summands of one degree; `perm[new] = old`.
    pub fn permute(&self, d: i32, perm: &[usize]) -> ProjComplex {
        let k = (d - self.lo) as usize;
        let mut out = self.clone();
        if k >= self.terms.len() {
            return out;
        }
        let n = self.terms[k].len();
        assert_eq!(perm.len(), n, "permutation length");
        out.terms[k] = perm.iter().map(|&i| self.terms[k][i]).collect();
        let all_out: Vec<usize> = (0..self.term(d + 1).len()).collect();
        let all_in: Vec<usize> = (0..self.term(d - 1).len()).collect();
        if k < self.diffs.len() {
            out.diffs[k] = self.diffs[k].select(&all_out, perm);
        }
        if k > 0 {
            out.diffs[k - 1] = self.diffs[k - 1].select(perm, &all_in);
        }
        out
    }
}

/// Degreewise maps `source^d → target^d` commuting with the differentials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: ProjComplex,
    target: ProjComplex,
    comps: Vec<PMat>,
}

impl ChainMap {
    /// `comps[k]` is the component in degree `source.lo() + k`.
    pub fn new(source: ProjComplex, target: ProjComplex, comps: Vec<PMat>) -> Result<ChainMap, ComplexError> {
        source.check_same(&target)?;
        if comps.len() != source.width() {
            return Err(ComplexError::Shape("one component per source degree".into()));
        }
        for (k, c) in comps.iter().enumerate() {
            let d = source.lo + k as i32;
            if c.cols() != source.term(d) || c.rows() != target.term(d) {
                return Err(ComplexError::Shape(format!("component in degree {d} has the wrong types")));
            }
            if let Some((row, col)) = c.peirce_violation(&source.alg) {
                return Err(ComplexError::Peirce { degree: d, row, col });
            }
        }
        let f = ChainMap { source, target, comps };
        if let Some(d) = f.commutation_failure() {
            return Err(ComplexError::NotChainMap { degree: d });
        }
        Ok(f)
    }

    pub(crate) fn new_unchecked(source: ProjComplex, target: ProjComplex, comps: Vec<PMat>) -> ChainMap {
        debug_assert_eq!(comps.len(), source.width());
        ChainMap { source, target, comps }
    }

    /// Builds from a function giving the component in each source degree.
    pub fn from_fn(source: &ProjComplex, target: &ProjComplex, mut f: impl FnMut(i32) -> PMat) -> ChainMap {
        let comps = source.degrees().map(&mut f).collect();
        ChainMap::new_unchecked(source.clone(), target.clone(), comps)
    }

    pub fn zero(source: &ProjComplex, target: &ProjComplex) -> ChainMap {
        let alg = source.alg.clone();
        ChainMap::from_fn(source, target, |d| PMat::zero(&alg, target.term(d), source.term(d)))
    }

    pub fn identity(x: &ProjComplex) -> ChainMap {
        let alg = x.alg.clone();
        ChainMap::from_fn(x, x, |d| PMat::identity(&alg, x.term(d)))
    }

    pub fn source(&self) -> &ProjComplex {
        &self.source
    }

    pub fn target(&self) -> &ProjComplex {
        &self.target
    }

    /// Component in degree `d`.
    pub fn comp(&self, d: i32) -> PMat {
        let k = d - self.source.lo;
        if k >= 0 && (k as usize) < self.comps.len() {
            self.comps[k as usize].clone()
        } else {
            PMat::zero(&self.source.alg, self.target.term(d), self.source.term(d))
        }
    }

    fn commutation_failure(&self) -> Option<i32> {
        let alg = &self.source.alg;
        let lo = self.source.lo.min(self.target.lo) - 1;
        let hi = self.source.hi().max(self.target.hi()) + 1;
        (lo..=hi).find(|&d| {
            let left = self.target.diff(d).compose(alg, &self.comp(d));
            let right = self.comp(d + 1).compose(alg, &self.source.diff(d));
            left != right
        })
    }

    pub fn is_chain_map(&self) -> bool {
        self.commutation_failure().is_none()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(PMat::is_zero)
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &ChainMap) -> Result<ChainMap, ComplexError> {
        if self.target != g.source {
            return Err(ComplexError::Shape("target of the first map is not the source of the second".into()));
        }
        let alg = self.source.alg.clone();
        Ok(ChainMap::from_fn(&self.source, &g.target, |d| g.comp(d).compose(&alg, &self.comp(d))))
    }

    pub fn add(&self, o: &ChainMap) -> Result<ChainMap, ComplexError> {
        self.same_ends(o)?;
        Ok(ChainMap::from_fn(&self.source, &self.target, |d| self.comp(d).add(&o.comp(d))))
    }

    pub fn sub(&self, o: &ChainMap) -> Result<ChainMap, ComplexError> {
        self.same_ends(o)?;
        Ok(ChainMap::from_fn(&self.source, &self.target, |d| self.comp(d).sub(&o.comp(d))))
    }

    pub fn scale(&self, s: &Scalar) -> ChainMap {
        ChainMap::from_fn(&self.source, &self.target, |d| self.comp(d).scale(s))
    }

    fn same_ends(&self, o: &ChainMap) -> Result<(), ComplexError> {
        if self.source != o.source || self.target != o.target {
            return Err(ComplexError::Shape("maps have different endpoints".into()));
        }
        Ok(())
    }

    /// `f[k]: X[k] → Y[k]`.
    pub fn shift(&self, k: i32) -> ChainMap {
        let (s, t) = (self.source.shift(k), self.target.shift(k));
        ChainMap::from_fn(&s, &t, |d| self.comp(d + k))
    }

    /// Same components read as a map between other complexes with equal terms.
    pub fn retarget(&self, source: &ProjComplex, target: &ProjComplex) -> Result<ChainMap, ComplexError> {
        ChainMap::new(source.clone(), target.clone(), source.degrees().map(|d| self.comp(d)).collect())
    }
}

/// `[f_1 ... f_t]: Y_1 ⊕ ... ⊕ Y_t → Z`, with the sum built by [`ProjComplex::sum_all`].
pub fn from_sum(parts: &[ChainMap], target: &ProjComplex) -> Result<ChainMap, ComplexError> {
    let alg = target.alg.clone();
    let sources: Vec<ProjComplex> = parts.iter().map(|f| f.source.clone()).collect();
    for f in parts {
        if f.target != *target {
            return Err(ComplexError::Shape("maps out of a sum need a common target".into()));
        }
    }
    let sum = ProjComplex::sum_all(alg.clone(), &sources)?;
    Ok(ChainMap::from_fn(&sum, target, |d| {
        let mut acc = PMat::zero(&alg, target.term(d), &[]);
        for f in parts {
            let c = f.comp(d);
            let e = PMat::zero(&alg, &[], acc.cols());
            let g = PMat::zero(&alg, &[], c.cols());
            acc = PMat::blocks(&acc, &c, &e, &g);
        }
        acc
    }))
}

/// Injection of the `j`-th part into `sum_all(parts)`.
pub fn sum_injection(parts: &[ProjComplex], j: usize) -> Result<ChainMap, ComplexError> {
    let alg = parts[j].alg.clone();
    let sum = ProjComplex::sum_all(alg.clone(), parts)?;
    Ok(ChainMap::from_fn(&parts[j], &sum, |d| {
        let rows: Vec<usize> = sum.term(d).to_vec();
        let before: usize = parts[..j].iter().map(|p| p.term(d).len()).sum();
        let own = parts[j].term(d);
        let mut m = PMat::zero(&alg, &rows, own);
        for (i, &t) in own.iter().enumerate() {
            m.set(before + i, i, alg.idem(t).clone());
        }
        m
    }))
}

/// Projection of `sum_all(parts)` onto its `j`-th part.
pub fn sum_projection(parts: &[ProjComplex], j: usize) -> Result<ChainMap, ComplexError> {
    let alg = parts[j].alg.clone();
    let sum = ProjComplex::sum_all(alg.clone(), parts)?;
    Ok(ChainMap::from_fn(&sum, &parts[j], |d| {
        let cols: Vec<usize> = sum.term(d).to_vec();
        let before: usize = parts[..j].iter().map(|p| p.term(d).len()).sum();
        let own = parts[j].term(d);
        let mut m = PMat::zero(&alg, own, &cols);
        for (i, &t) in own.iter().enumerate() {
            m.set(i, before + i, alg.idem(t).clone());
        }
        m
    }))
}

/// `C(f)` with its triangle maps `Y → C(f) → X[1]`.
#[derive(Clone, Debug)]
pub struct Cone {
    pub complex: ProjComplex,
    pub inclusion: ChainMap,
    pub projection: ChainMap,
}

/// Mapping cone of `f: X → Y`.
pub fn cone(f: &ChainMap) -> Cone {
    let (x, y) = (&f.source, &f.target);
    let alg = x.alg.clone();
    let c = match (x.is_zero(), y.is_zero()) {
        (true, true) => ProjComplex::zero(alg.clone()),
        _ => {
            let lo = if x.is_zero() { y.lo } else if y.is_zero() { x.lo - 1 } else { (x.lo - 1).min(y.lo) };
            let hi = if x.is_zero() { y.hi() } else if y.is_zero() { x.hi() - 1 } else { (x.hi() - 1).max(y.hi()) };
            let terms: Vec<Vec<usize>> = (lo..=hi).map(|d| [x.term(d + 1), y.term(d)].concat()).collect();
            let diffs = (lo..hi)
                .map(|d| {
                    let z = PMat::zero(&alg, x.term(d + 2), y.term(d));
                    PMat::blocks(&x.diff(d + 1).neg(), &z, &f.comp(d + 1), &y.diff(d))
                })
                .collect();
            ProjComplex::new_unchecked(alg.clone(), lo, terms, diffs)
        }
    };
    let x1 = x.shift(1);
    let inclusion = ChainMap::from_fn(y, &c, |d| {
        let top = PMat::zero(&alg, x.term(d + 1), y.term(d));
        let bot = PMat::identity(&alg, y.term(d));
        stack(&alg, &top, &bot)
    });
    let projection = ChainMap::from_fn(&c, &x1, |d| {
        let left = PMat::identity(&alg, x.term(d + 1));
        let right = PMat::zero(&alg, x.term(d + 1), y.term(d));
        side(&alg, &left, &right)
    });
    Cone { complex: c, inclusion, projection }
}

fn stack(alg: &Algebra, top: &PMat, bot: &PMat) -> PMat {
    let e = PMat::zero(alg, top.rows(), &[]);
    let f = PMat::zero(alg, bot.rows(), &[]);
    PMat::blocks(top, &e, bot, &f)
}

fn side(alg: &Algebra, left: &PMat, right: &PMat) -> PMat {
    let e = PMat::zero(alg, &[], left.cols());
    let f = PMat::zero(alg, &[], right.cols());
    PMat::blocks(left, right, &e, &f)
}

/// Sum of scalar multiples of chain maps with common endpoints.
pub fn combination(maps: &[ChainMap], coeffs: &[Scalar]) -> ChainMap {
    let mut acc = ChainMap::zero(&maps[0].source, &maps[0].target);
    for (m, c) in maps.iter().zip(coeffs) {
        if !c.is_zero() {
            acc = acc.add(&m.scale(c)).expect("same endpoints");
        }
    }
    acc
}
