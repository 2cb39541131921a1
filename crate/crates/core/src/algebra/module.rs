//! Finite-dimensional right modules given by action matrices.

use super::{Algebra, AlgebraError};
use crate::field::{Field, Scalar};
use crate::linalg::{self, Echelon, Mat};

/// A right `A`-module: `action[b]` sends the coordinates of `v` to those of `v·b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleRep {
    field: Field,
    dim: usize,
    action: Vec<Mat>,
}

/// Top of a module split by simple type, with lifted minimal generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopInfo {
    /// `top_dims[i]` = multiplicity of the simple top of `e_i A` in `M / M·rad A`.
    pub top_dims: Vec<usize>,
    /// Generators `v` with `v = v·e_i`, grouped by vertex in increasing order.
    pub generators: Vec<(usize, Vec<Scalar>)>,
    /// Basis of `M·rad A`.
    pub radical_part: Vec<Vec<Scalar>>,
}

impl ModuleRep {
    pub fn new(alg: &Algebra, dim: usize, action: Vec<Mat>) -> Result<ModuleRep, AlgebraError> {
        if action.len() != alg.dim() || action.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(AlgebraError::DimensionMismatch("one dim×dim matrix per basis element".into()));
        }
        let m = ModuleRep { field: alg.field(), dim, action };
        let unit = m.matrix_of(alg.unit());
        if unit != Mat::identity(alg.field(), dim) {
            return Err(AlgebraError::DimensionMismatch("unit does not act as the identity".into()));
        }
        for a in 0..alg.dim() {
            for b in 0..alg.dim() {
                let ab = alg.mul(&alg.basis_elem(a), &alg.basis_elem(b));
                if m.matrix_of(&ab) != m.action[b].mul(&m.action[a]).unwrap() {
                    return Err(AlgebraError::DimensionMismatch(format!(
                        "action does not respect the product of basis elements {a} and {b}"
                    )));
                }
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn action(&self, b: usize) -> &Mat {
        &self.action[b]
    }

    /// Matrix of the action of an arbitrary element.
    pub fn matrix_of(&self, x: &[Scalar]) -> Mat {
        let mut m = Mat::zeros(self.field, self.dim, self.dim);
        for (b, s) in x.iter().enumerate() {
            if !s.is_zero() {
                m = m.add(&self.action[b].scale(s)).unwrap();
            }
        }
        m
    }

    /// `v · x`.
    pub fn act(&self, v: &[Scalar], x: &[Scalar]) -> Vec<Scalar> {
        self.matrix_of(x).mul_vec(v).unwrap()
    }

    /// The right ideal `e_i A`, on the basis elements in row `i`.
    pub fn projective(alg: &Algebra, i: usize) -> ModuleRep {
        let rows = alg.row_indices(i);
        let pos = |k: usize| rows.iter().position(|&r| r == k).expect("e_i A is a right ideal");
        let action = (0..alg.dim())
            .map(|b| {
                let mut m = Mat::zeros(alg.field(), rows.len(), rows.len());
                for (c, &r) in rows.iter().enumerate() {
                    for (k, s) in alg.structure(r, b) {
                        m.set(pos(*k), c, s.clone());
                    }
                }
                m
            })
            .collect();
        ModuleRep { field: alg.field(), dim: rows.len(), action }
    }

    /// `⊕ e_{v} A` over the listed vertices, in order.
    pub fn projective_sum(alg: &Algebra, vertices: &[usize]) -> ModuleRep {
        let parts: Vec<ModuleRep> = vertices.iter().map(|&i| ModuleRep::projective(alg, i)).collect();
        ModuleRep::direct_sum(alg, &parts)
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(alg: &Algebra, parts: &[ModuleRep]) -> ModuleRep {
        let dim: usize = parts.iter().map(|p| p.dim).sum();
        let action = (0..alg.dim())
            .map(|b| {
                let mut m = Mat::zeros(alg.field(), dim, dim);
                let mut off = 0;
                for p in parts {
                    for r in 0..p.dim {
                        for c in 0..p.dim {
                            m.set(off + r, off + c, p.action[b].get(r, c).clone());
                        }
                    }
                    off += p.dim;
                }
                m
            })
            .collect();
        ModuleRep { field: alg.field(), dim, action }
    }

    /// `A_A`.
    pub fn regular(alg: &Algebra) -> ModuleRep {
        let n = alg.dim();
        let action = (0..n)
            .map(|b| {
                let mut m = Mat::zeros(alg.field(), n, n);
                for r in 0..n {
                    for (k, s) in alg.structure(r, b) {
                        m.set(*k, r, s.clone());
                    }
                }
                m
            })
            .collect();
        ModuleRep { field: alg.field(), dim: n, action }
    }

    /// The submodule generated by `vectors`, as a basis.
    pub fn submodule(&self, vectors: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
        let mut ech = Echelon::new(self.field, self.dim);
        let mut queue: Vec<Vec<Scalar>> = Vec::new();
        for v in vectors {
            if ech.insert(v) {
                queue.push(v.clone());
            }
        }
        while let Some(v) = queue.pop() {
            for m in &self.action {
                let w = m.mul_vec(&v).unwrap();
                if ech.insert(&w) {
                    queue.push(w);
                }
            }
        }
        ech.basis()
    }

    /// The module structure on a submodule given by a basis (columns of the inclusion).
    pub fn restrict(&self, basis: &[Vec<Scalar>]) -> ModuleRep {
        let k = basis.len();
        let incl = Mat::from_cols(self.field, self.dim, basis);
        let action = self
            .action
            .iter()
            .map(|m| {
                let mut out = Mat::zeros(self.field, k, k);
                for (c, v) in basis.iter().enumerate() {
                    let w = m.mul_vec(v).unwrap();
                    let coords = incl.solve(&w).unwrap().into_option().expect("basis spans a submodule");
                    for (r, s) in coords.into_iter().enumerate() {
                        out.set(r, c, s);
                    }
                }
                out
            })
            .collect();
        ModuleRep { field: self.field, dim: k, action }
    }

    /// The quotient module by a submodule basis, with the projection matrix.
    pub fn quotient(&self, sub: &[Vec<Scalar>]) -> (ModuleRep, Mat) {
        let reps = linalg::quotient_basis(self.field, sub, self.dim).expect("lengths");
        let mut cols = reps.clone();
        cols.extend(sub.iter().cloned());
        let sys = Mat::from_cols(self.field, self.dim, &cols);
        let k = reps.len();
        let mut proj = Mat::zeros(self.field, k, self.dim);
        for j in 0..self.dim {
            let c = sys.solve(&linalg::unit(self.field, self.dim, j)).unwrap().into_option().unwrap();
            for r in 0..k {
                proj.set(r, j, c[r].clone());
            }
        }
        let action = self
            .action
            .iter()
            .map(|m| {
                let mut out = Mat::zeros(self.field, k, k);
                for (c, v) in reps.iter().enumerate() {
                    let w = proj.mul_vec(&m.mul_vec(v).unwrap()).unwrap();
                    for (r, s) in w.into_iter().enumerate() {
                        out.set(r, c, s);
                    }
                }
                out
            })
            .collect();
        (ModuleRep { field: self.field, dim: k, action }, proj)
    }
}

impl Algebra {
    /// Simple module `S_i = e_i A / e_i rad A`.
    pub fn simple_module(&self, i: usize) -> Result<ModuleRep, AlgebraError> {
        let p = ModuleRep::projective(self, i);
        let rows = self.row_indices(i);
        let rad = self.radical()?;
        let gens: Vec<Vec<Scalar>> = rad
            .iter()
            .flat_map(|r| {
                rows.iter()
                    .map(|&b| {
                        let prod = self.mul(&self.basis_elem(b), r);
                        rows.iter().map(|&k| prod[k].clone()).collect::<Vec<_>>()
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        let sub = linalg::span_basis(self.field(), rows.len(), &gens);
        Ok(p.quotient(&sub).0)
    }

    /// Basis of `Hom_A(M, N)`: matrices `φ` with `φ M_b = N_b φ` for every basis element.
    pub fn hom_module(&self, m: &ModuleRep, n: &ModuleRep) -> Result<Vec<Mat>, AlgebraError> {
        if m.action.len() != self.dim() || n.action.len() != self.dim() {
            return Err(AlgebraError::DimensionMismatch("modules over a different algebra".into()));
        }
        let (dm, dn) = (m.dim, n.dim);
        let unknowns = dm * dn;
        if unknowns == 0 {
            return Ok(vec![]);
        }
        // φ[r][c] at index r*dm + c
        let mut rows = Vec::new();
        for b in 0..self.dim() {
            let (mb, nb) = (&m.action[b], &n.action[b]);
            for r in 0..dn {
                for c in 0..dm {
                    let mut eq = linalg::zero_vec(self.field(), unknowns);
                    // (φ M_b)[r][c] = Σ_k φ[r][k] M_b[k][c]
                    for k in 0..dm {
                        let s = mb.get(k, c);
                        if !s.is_zero() {
                            eq[r * dm + k] = &eq[r * dm + k] + s;
                        }
                    }
                    // (N_b φ)[r][c] = Σ_k N_b[r][k] φ[k][c]
                    for k in 0..dn {
                        let s = nb.get(r, k);
                        if !s.is_zero() {
                            eq[k * dm + c] = &eq[k * dm + c] - s;
                        }
                    }
                    if !linalg::is_zero_vec(&eq) {
                        rows.push(eq);
                    }
                }
            }
        }
        let sols = if rows.is_empty() {
            (0..unknowns).map(|i| linalg::unit(self.field(), unknowns, i)).collect()
        } else {
            Mat::from_rows(self.field(), rows)?.nullspace()
        };
        Ok(sols
            .into_iter()
            .map(|v| Mat::from_rows(self.field(), v.chunks(dm).map(|r| r.to_vec()).collect()).unwrap())
            .collect())
    }

    /// `M / M·rad A` split by simple type, and lifts of a basis of the top to
    /// minimal generators of `M`. The distinguished idempotents must be
    /// primitive with split local corners.
    pub fn top_and_min_generators(&self, m: &ModuleRep) -> Result<TopInfo, AlgebraError> {
        let rad = self.radical()?;
        let mut gens = Vec::new();
        for r in &rad {
            let mr = m.matrix_of(r);
            for c in 0..m.dim {
                gens.push(mr.col(c));
            }
        }
        let radical_part = linalg::span_basis(m.field, m.dim, &gens);
        let mut ech = Echelon::new(m.field, m.dim);
        for v in &radical_part {
            ech.insert(v);
        }
        let mut top_dims = vec![0; self.num_idems()];
        let mut generators = Vec::new();
        for (i, e) in self.idems().iter().enumerate() {
            let me = m.matrix_of(e);
            for c in 0..m.dim {
                let v = me.col(c);
                if ech.insert(&v) {
                    top_dims[i] += 1;
                    generators.push((i, v));
                }
            }
        }
        debug_assert_eq!(ech.dim(), m.dim);
        Ok(TopInfo { top_dims, generators, radical_part })
    }
}

