//! Finite-dimensional algebras given by structure constants.
//!
//! An [`Algebra`] always carries a complete set of orthogonal idempotents
//! `e_1, ..., e_m` summing to the unit, and its basis is adapted to them: every
//! basis vector lies in exactly one Peirce component `e_i A e_j`. With paths
//! composed left to right, `e_i A e_j` is spanned by the paths from `i` to `j`,
//! and it is also `Hom_A(e_j A, e_i A)` acting by left multiplication.

mod idempotents;
mod module;
mod quiver;
mod radical;
mod symmetric;

use std::sync::OnceLock;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::field::{Field, Scalar};
use crate::linalg::{self, Echelon, LinalgError, Mat};

pub use idempotents::{fitting_split, MatrixAlgebra};
pub use module::{ModuleRep, TopInfo};
pub use quiver::{Arrow, Path, QuiverData, QuiverPresentation, Relation};
pub use symmetric::{FormSearch, LinearForm};

/// Coordinates of an algebra element on the basis.
pub type Elem = Vec<Scalar>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("ideal is not admissible: {0}")]
    NonAdmissible(String),
    #[error("relation mixes endpoints: {0}")]
    MixedEndpoints(String),
    #[error("invalid presentation: {0}")]
    Presentation(String),
    #[error("structure constants are not associative on basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("invalid unit or idempotents: {0}")]
    BadIdempotents(String),
    #[error("basis element {0} does not lie in a single Peirce component")]
    NotPeirceAdapted(usize),
    #[error("index {index} out of range (at most {bound})")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("idempotent subset must be nonempty")]
    EmptySubset,
    #[error("radical needs characteristic 0 or above {dim}; got {p} without quiver provenance")]
    SmallCharacteristic { p: u32, dim: usize },
    #[error("semisimple quotient is not split: component of dimension {0} over its centre")]
    NonSplit(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("search did not reach a verdict: {0}")]
    Undecided(String),
}

/// Field plus the seed that drives randomized searches; fixed per session.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Session {
    pub field: Field,
    pub seed: u64,
}

impl Session {
    pub fn new(field: Field) -> Session {
        Session { field, seed: 0 }
    }

    pub fn with_seed(self, seed: u64) -> Session {
        Session { seed, ..self }
    }

    /// A reproducible generator for one named search.
    pub fn rng(&self, stream: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }
}

#[derive(Clone, Debug)]
pub struct Algebra {
    session: Session,
    labels: Vec<String>,
    vertex_labels: Vec<String>,
    table: Vec<Vec<Vec<(usize, Scalar)>>>,
    unit: Elem,
    idems: Vec<Elem>,
    peirce: Vec<(usize, usize)>,
    radical_hint: Option<Vec<Elem>>,
    quiver: Option<QuiverData>,
    radical_cache: OnceLock<Result<Vec<Elem>, AlgebraError>>,
    residue_cache: OnceLock<Result<Vec<Elem>, AlgebraError>>,
}

impl PartialEq for Algebra {
    fn eq(&self, o: &Algebra) -> bool {
        self.session.field == o.session.field
            && self.table == o.table
            && self.unit == o.unit
            && self.idems == o.idems
    }
}

impl Algebra {
    /// Builds and validates an algebra from sparse structure constants
    /// `table[a][b] = a·b`.
    pub fn from_structure(
        session: Session,
        labels: Vec<String>,
        vertex_labels: Vec<String>,
        table: Vec<Vec<Vec<(usize, Scalar)>>>,
        unit: Elem,
        idems: Vec<Elem>,
    ) -> Result<Algebra, AlgebraError> {
        let dim = labels.len();
        if table.len() != dim || table.iter().any(|r| r.len() != dim) || unit.len() != dim {
            return Err(AlgebraError::DimensionMismatch("structure table shape".into()));
        }
        if vertex_labels.len() != idems.len() {
            return Err(AlgebraError::DimensionMismatch("one label per idempotent".into()));
        }
        for s in table.iter().flatten().flatten().map(|(_, s)| s).chain(&unit).chain(idems.iter().flatten()) {
            if s.field() != session.field {
                return Err(LinalgError::FieldMismatch(session.field, s.field()).into());
            }
        }
        let mut alg = Algebra {
            session,
            labels,
            vertex_labels,
            table,
            unit,
            idems,
            peirce: Vec::new(),
            radical_hint: None,
            quiver: None,
            radical_cache: OnceLock::new(),
            residue_cache: OnceLock::new(),
        };
        alg.validate()?;
        Ok(alg)
    }

    fn validate(&mut self) -> Result<(), AlgebraError> {
        let n = self.dim();
        for a in 0..n {
            for b in 0..n {
                let ab = self.table[a][b].clone();
                for c in 0..n {
                    let left = self.mul_sparse(&ab, c, true);
                    let bc = self.table[b][c].clone();
                    let right = self.mul_sparse(&bc, a, false);
                    if left != right {
                        return Err(AlgebraError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        for b in 0..n {
            let e = linalg::unit(self.field(), n, b);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return Err(AlgebraError::BadIdempotents("unit does not act as identity".into()));
            }
        }
        let mut sum = linalg::zero_vec(self.field(), n);
        for (i, e) in self.idems.iter().enumerate() {
            sum = linalg::vec_add(&sum, e);
            for (j, f) in self.idems.iter().enumerate() {
                let p = self.mul(e, f);
                let want = if i == j { e.clone() } else { linalg::zero_vec(self.field(), n) };
                if p != want {
                    return Err(AlgebraError::BadIdempotents(format!("e{i}·e{j} is wrong")));
                }
            }
            if linalg::is_zero_vec(e) {
                return Err(AlgebraError::BadIdempotents(format!("e{i} is zero")));
            }
        }
        if sum != self.unit {
            return Err(AlgebraError::BadIdempotents("idempotents do not sum to the unit".into()));
        }
        self.peirce = (0..n)
            .map(|b| {
                let x = linalg::unit(self.field(), n, b);
                let i = self.idems.iter().position(|e| self.mul(e, &x) == x);
                let j = self.idems.iter().position(|e| self.mul(&x, e) == x);
                match (i, j) {
                    (Some(i), Some(j)) => Ok((i, j)),
                    _ => Err(AlgebraError::NotPeirceAdapted(b)),
                }
            })
            .collect::<Result<_, _>>()?;
        Ok(())
    }

    /// `(Σ v_k b_k) · b_c` if `left`, else `b_c · (Σ v_k b_k)`, kept sparse.
    fn mul_sparse(&self, v: &[(usize, Scalar)], c: usize, left: bool) -> Vec<Scalar> {
        let mut out = linalg::zero_vec(self.field(), self.dim());
        for (k, s) in v {
            let prod = if left { &self.table[*k][c] } else { &self.table[c][*k] };
            for (m, t) in prod {
                out[*m] = &out[*m] + &(s * t);
            }
        }
        out
    }

    /// The zero algebra (no idempotents).
    pub fn zero(session: Session) -> Algebra {
        Algebra {
            session,
            labels: vec![],
            vertex_labels: vec![],
            table: vec![],
            unit: vec![],
            idems: vec![],
            peirce: vec![],
            radical_hint: Some(vec![]),
            quiver: None,
            radical_cache: OnceLock::new(),
            residue_cache: OnceLock::new(),
        }
    }

    pub fn session(&self) -> Session {
        self.session
    }
    pub fn field(&self) -> Field {
        self.session.field
    }
    pub fn dim(&self) -> usize {
        self.labels.len()
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    pub fn vertex_labels(&self) -> &[String] {
        &self.vertex_labels
    }
    pub fn num_idems(&self) -> usize {
        self.idems.len()
    }
    pub fn idem(&self, i: usize) -> &Elem {
        &self.idems[i]
    }
    pub fn idems(&self) -> &[Elem] {
        &self.idems
    }
    pub fn unit(&self) -> &Elem {
        &self.unit
    }
    pub fn quiver(&self) -> Option<&QuiverData> {
        self.quiver.as_ref()
    }
    /// Peirce component `(i, j)` of basis element `b`.
    pub fn peirce_of(&self, b: usize) -> (usize, usize) {
        self.peirce[b]
    }
    pub fn structure(&self, a: usize, b: usize) -> &[(usize, Scalar)] {
        &self.table[a][b]
    }

    pub fn zero_elem(&self) -> Elem {
        linalg::zero_vec(self.field(), self.dim())
    }

    pub fn basis_elem(&self, b: usize) -> Elem {
        linalg::unit(self.field(), self.dim(), b)
    }

    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Result<Elem, AlgebraError> {
        if x.len() != self.dim() || y.len() != self.dim() {
            return Err(AlgebraError::DimensionMismatch(format!(
                "elements of length {} and {} in an algebra of dimension {}",
                x.len(),
                y.len(),
                self.dim()
            )));
        }
        Ok(self.mul(x, y))
    }

    /// Bilinear product; panics on length mismatch.
    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Elem {
        let mut out = self.zero_elem();
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let tab = &self.table[a][b];
                if tab.is_empty() {
                    continue;
                }
                let s = xa * yb;
                for (k, c) in tab {
                    out[*k] = &out[*k] + &(&s * c);
                }
            }
        }
        out
    }

    fn check_idem(&self, i: usize) -> Result<(), AlgebraError> {
        if i >= self.num_idems() {
            return Err(AlgebraError::IndexOutOfRange { index: i, bound: self.num_idems() });
        }
        Ok(())
    }

    /// Basis indices spanning `e_i A e_j`.
    pub fn peirce(&self, i: usize, j: usize) -> Result<Vec<usize>, AlgebraError> {
        self.check_idem(i)?;
        self.check_idem(j)?;
        Ok(self.peirce_indices(i, j))
    }

    pub(crate) fn peirce_indices(&self, i: usize, j: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&b| self.peirce[b] == (i, j)).collect()
    }

    /// Basis indices spanning the right ideal `e_i A`.
    pub fn row_indices(&self, i: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&b| self.peirce[b].0 == i).collect()
    }

    /// Sum of the distinguished idempotents listed in `subset`.
    pub fn idempotent_sum(&self, subset: &[usize]) -> Elem {
        let mut e = self.zero_elem();
        for &i in subset {
            e = linalg::vec_add(&e, &self.idems[i]);
        }
        e
    }

    /// Cartan matrix `c[i][j] = dim e_i A e_j`.
    pub fn cartan(&self) -> Vec<Vec<usize>> {
        let m = self.num_idems();
        let mut c = vec![vec![0; m]; m];
        for &(i, j) in &self.peirce {
            c[i][j] += 1;
        }
        c
    }

    fn check_subset(&self, subset: &[usize]) -> Result<Vec<usize>, AlgebraError> {
        let mut s = subset.to_vec();
        s.sort_unstable();
        s.dedup();
        for &i in &s {
            self.check_idem(i)?;
        }
        Ok(s)
    }

    /// The corner algebra `eAe` for `e` the sum of the idempotents in `subset`.
    pub fn corner(&self, subset: &[usize]) -> Result<Corner, AlgebraError> {
        let s = self.check_subset(subset)?;
        if s.is_empty() {
            return Err(AlgebraError::EmptySubset);
        }
        let embed: Vec<usize> =
            (0..self.dim()).filter(|&b| s.contains(&self.peirce[b].0) && s.contains(&self.peirce[b].1)).collect();
        let pos = |b: usize| embed.iter().position(|&x| x == b);
        let table = embed
            .iter()
            .map(|&a| {
                embed
                    .iter()
                    .map(|&b| {
                        self.table[a][b]
                            .iter()
                            .map(|(k, c)| (pos(*k).expect("corner is closed under products"), c.clone()))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let restrict = |x: &Elem| embed.iter().map(|&b| x[b].clone()).collect::<Elem>();
        let idems: Vec<Elem> = s.iter().map(|&i| restrict(&self.idems[i])).collect();
        let unit = restrict(&self.idempotent_sum(&s));
        let mut alg = Algebra::from_structure(
            self.session,
            embed.iter().map(|&b| self.labels[b].clone()).collect(),
            s.iter().map(|&i| self.vertex_labels[i].clone()).collect(),
            table,
            unit,
            idems,
        )?;
        alg.radical_hint = match self.radical_hint {
            Some(ref rad) => Some(rad.iter().map(restrict).filter(|v| !linalg::is_zero_vec(v)).collect()),
            None => None,
        };
        let (f, n) = (alg.field(), alg.dim());
        if let Some(rad) = alg.radical_hint.as_mut() {
            *rad = linalg::span_basis(f, n, rad);
        }
        Ok(Corner { algebra: alg, vertices: s, embedding: embed })
    }

    /// Basis of the two-sided ideal generated by the idempotents in `subset`,
    /// computed by closing under left and right multiplication.
    pub fn idempotent_ideal(&self, subset: &[usize]) -> Result<Vec<Elem>, AlgebraError> {
        let s = self.check_subset(subset)?;
        let mut ech = Echelon::new(self.field(), self.dim());
        let mut queue: Vec<Elem> = Vec::new();
        for &i in &s {
            if ech.insert(&self.idems[i]) {
                queue.push(self.idems[i].clone());
            }
        }
        while let Some(x) = queue.pop() {
            for b in 0..self.dim() {
                let e = self.basis_elem(b);
                for y in [self.mul(&x, &e), self.mul(&e, &x)] {
                    if ech.insert(&y) {
                        queue.push(y);
                    }
                }
            }
        }
        Ok(linalg::span_basis(self.field(), self.dim(), &ech.basis()))
    }

    /// `A/AeA` with the projection `A → A/AeA` as a matrix.
    pub fn quotient_by_idempotent_ideal(&self, subset: &[usize]) -> Result<Quotient, AlgebraError> {
        let s = self.check_subset(subset)?;
        let ideal = self.idempotent_ideal(&s)?;
        self.quotient_by_ideal(&ideal, &s)
    }

    /// Quotient by a Peirce-graded two-sided ideal; idempotents in `killed` go to zero.
    pub(crate) fn quotient_by_ideal(&self, ideal: &[Elem], killed: &[usize]) -> Result<Quotient, AlgebraError> {
        let field = self.field();
        let n = self.dim();
        let reps: Vec<usize> = {
            let units: Vec<Elem> = (0..n).map(|b| self.basis_elem(b)).collect();
            linalg::extend_basis(field, n, ideal, &units)
        };
        // coordinates modulo the ideal: solve [reps | ideal] c = x
        let mut cols: Vec<Elem> = reps.iter().map(|&b| self.basis_elem(b)).collect();
        cols.extend(ideal.iter().cloned());
        let sys = Mat::from_cols(field, n, &cols);
        let mut projection = Mat::zeros(field, reps.len(), n);
        for b in 0..n {
            let c = sys.solve(&self.basis_elem(b))?.into_option().expect("spanning system");
            for (r, s) in c.iter().take(reps.len()).enumerate() {
                projection.set(r, b, s.clone());
            }
        }
        let project = |x: &Elem| projection.mul_vec(x).expect("shape");
        let table = reps
            .iter()
            .map(|&a| {
                reps.iter()
                    .map(|&b| {
                        let p = project(&self.mul(&self.basis_elem(a), &self.basis_elem(b)));
                        p.into_iter().enumerate().filter(|(_, s)| !s.is_zero()).collect()
                    })
                    .collect()
            })
            .collect();
        let kept: Vec<usize> = (0..self.num_idems()).filter(|i| !killed.contains(i)).collect();
        let idems: Vec<Elem> = kept.iter().map(|&i| project(&self.idems[i])).collect();
        if let Some((k, _)) = idems.iter().enumerate().find(|(_, e)| linalg::is_zero_vec(e)) {
            return Err(AlgebraError::BadIdempotents(format!(
                "idempotent {} lies in the ideal",
                self.vertex_labels[kept[k]]
            )));
        }
        let mut q = if reps.is_empty() {
            Algebra::zero(self.session)
        } else {
            Algebra::from_structure(
                self.session,
                reps.iter().map(|&b| self.labels[b].clone()).collect(),
                kept.iter().map(|&i| self.vertex_labels[i].clone()).collect(),
                table,
                project(&self.unit),
                idems,
            )?
        };
        if let Some(rad) = &self.radical_hint {
            let imgs: Vec<Elem> = rad.iter().map(|x| project(x)).collect();
            q.radical_hint = Some(linalg::span_basis(field, q.dim(), &imgs));
        }
        Ok(Quotient { algebra: q, ideal: ideal.to_vec(), projection, kept_vertices: kept })
    }

    /// Dimension of the centre.
    pub fn center_dim(&self) -> usize {
        let n = self.dim();
        let mut rows = Vec::new();
        // x central iff x·b - b·x = 0 for all basis b; linear in x
        for b in 0..n {
            let e = self.basis_elem(b);
            let mut m = Mat::zeros(self.field(), n, n);
            for a in 0..n {
                let ea = self.basis_elem(a);
                let c = linalg::vec_sub(&self.mul(&ea, &e), &self.mul(&e, &ea));
                for (k, s) in c.into_iter().enumerate() {
                    m.set(k, a, s);
                }
            }
            for k in 0..n {
                rows.push(m.row(k));
            }
        }
        if rows.is_empty() {
            return n;
        }
        n - Mat::from_rows(self.field(), rows).expect("rect").rank()
    }

    /// Left multiplication by `x` as a matrix on the basis.
    pub fn left_mult_matrix(&self, x: &[Scalar]) -> Mat {
        let n = self.dim();
        let mut m = Mat::zeros(self.field(), n, n);
        for b in 0..n {
            let c = self.mul(x, &self.basis_elem(b));
            for (k, s) in c.into_iter().enumerate() {
                m.set(k, b, s);
            }
        }
        m
    }

    pub(crate) fn set_quiver(&mut self, q: QuiverData, radical: Vec<Elem>) {
        self.quiver = Some(q);
        self.radical_hint = Some(radical);
    }

    #[allow(dead_code)]
    pub(crate) fn set_radical_hint(&mut self, rad: Vec<Elem>) {
        self.radical_hint = Some(rad);
    }

    pub fn has_radical_hint(&self) -> bool {
        self.radical_hint.is_some()
    }

    /// Human-readable rendering of an element using basis labels.
    pub fn format_elem(&self, x: &[Scalar]) -> String {
        let terms: Vec<String> = x
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.is_zero())
            .map(|(b, s)| if s.is_one() { self.labels[b].clone() } else { format!("{s}*{}", self.labels[b]) })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

/// `eAe` together with its embedding into `A`.
#[derive(Clone, Debug)]
pub struct Corner {
    pub algebra: Algebra,
    /// Idempotent indices of `A` making up `e`, sorted; corner idempotent `k` is `vertices[k]`.
    pub vertices: Vec<usize>,
    /// Corner basis element `k` is basis element `embedding[k]` of `A`.
    pub embedding: Vec<usize>,
}

impl Corner {
    pub fn embed(&self, x: &[Scalar], ambient: &Algebra) -> Elem {
        let mut out = ambient.zero_elem();
        for (k, s) in x.iter().enumerate() {
            out[self.embedding[k]] = s.clone();
        }
        out
    }

    /// Restriction of an element of `A` lying in `eAe`; `None` otherwise.
    pub fn restrict(&self, x: &[Scalar]) -> Option<Elem> {
        let inside: Vec<bool> = (0..x.len()).map(|b| self.embedding.contains(&b)).collect();
        if x.iter().zip(&inside).any(|(s, &i)| !i && !s.is_zero()) {
            return None;
        }
        Some(self.embedding.iter().map(|&b| x[b].clone()).collect())
    }
}

/// `A/I` with the projection matrix (rows: quotient basis, columns: basis of `A`).
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: Algebra,
    pub ideal: Vec<Elem>,
    pub projection: Mat,
    pub kept_vertices: Vec<usize>,
}

#[cfg(test)]
pub(crate) mod tests;
