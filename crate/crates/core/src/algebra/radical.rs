//! Jacobson radical and residue characters.

use super::{Algebra, AlgebraError, Elem};
use crate::field::Scalar;
use crate::linalg::{self, Mat};

impl Algebra {
    /// Basis of the Jacobson radical.
    ///
    /// Quiver algebras (and corners and quotients of them) use the arrow ideal.
    /// Otherwise the trace form `x ↦ (y ↦ tr L_{xy})` is used when the
    /// characteristic is 0 or exceeds the dimension; in small characteristic the
    /// radical is read off the local corners `e_i A e_i`.
    pub fn radical(&self) -> Result<Vec<Elem>, AlgebraError> {
        self.radical_cache
            .get_or_init(|| {
                if let Some(r) = &self.radical_hint {
                    return Ok(r.clone());
                }
                let p = self.field().characteristic();
                if p == 0 || p as usize > self.dim() {
                    self.radical_trace_form()
                } else {
                    self.radical_from_local_corners()
                }
            })
            .clone()
    }

    /// `{x : tr(L_{xy}) = 0 for all y}`.
    pub fn radical_trace_form(&self) -> Result<Vec<Elem>, AlgebraError> {
        let n = self.dim();
        let p = self.field().characteristic();
        if p != 0 && p as usize <= n {
            return Err(AlgebraError::SmallCharacteristic { p, dim: n });
        }
        let traces: Vec<Scalar> = (0..n)
            .map(|k| {
                let mut t = self.field().zero();
                for b in 0..n {
                    for (m, c) in self.structure(k, b) {
                        if *m == b {
                            t = &t + c;
                        }
                    }
                }
                t
            })
            .collect();
        let mut g = Mat::zeros(self.field(), n, n);
        for a in 0..n {
            for b in 0..n {
                let mut t = self.field().zero();
                for (k, c) in self.structure(a, b) {
                    t = &t + &(c * &traces[*k]);
                }
                g.set(b, a, t);
            }
        }
        Ok(g.nullspace())
    }

    /// Radical assembled from the residue characters of the local corners
    /// `e_i A e_i`: `x ∈ e_k A e_l` is radical iff `χ_k(x y) = 0` for all `y ∈ e_l A e_k`.
    pub fn radical_from_local_corners(&self) -> Result<Vec<Elem>, AlgebraError> {
        let m = self.num_idems();
        let chars: Vec<Elem> = (0..m).map(|k| self.local_character(k)).collect::<Result<_, _>>()?;
        let mut out = Vec::new();
        for k in 0..m {
            for l in 0..m {
                let xs = self.peirce_indices(k, l);
                if xs.is_empty() {
                    continue;
                }
                let ys = self.peirce_indices(l, k);
                let mut cond = Mat::zeros(self.field(), ys.len().max(1), xs.len());
                for (r, &y) in ys.iter().enumerate() {
                    for (c, &x) in xs.iter().enumerate() {
                        let prod = self.mul(&self.basis_elem(x), &self.basis_elem(y));
                        cond.set(r, c, dot(&chars[k], &prod));
                    }
                }
                for v in cond.nullspace() {
                    let mut e = self.zero_elem();
                    for (c, &x) in xs.iter().enumerate() {
                        e[x] = v[c].clone();
                    }
                    out.push(e);
                }
            }
        }
        Ok(out)
    }

    /// The algebra map `e_k A e_k → k` of a local corner, as a coefficient
    /// vector on the basis of `A` (zero off the corner).
    fn local_character(&self, k: usize) -> Result<Elem, AlgebraError> {
        let idx = self.peirce_indices(k, k);
        let d = idx.len();
        let mut chi = self.zero_elem();
        for &b in &idx {
            let mut lm = Mat::zeros(self.field(), d, d);
            for (c, &y) in idx.iter().enumerate() {
                let prod = self.mul(&self.basis_elem(b), &self.basis_elem(y));
                for (r, &z) in idx.iter().enumerate() {
                    lm.set(r, c, prod[z].clone());
                }
            }
            chi[b] = unique_eigenvalue(&lm).ok_or(AlgebraError::NonSplit(d))?;
        }
        Ok(chi)
    }

    /// Per idempotent `e_i`, the functional `χ_i` on `e_i A e_i` with
    /// `x - χ_i(x) e_i ∈ rad A`; returned as coefficient vectors.
    pub fn residue_characters(&self) -> Result<Vec<Elem>, AlgebraError> {
        self.residue_cache
            .get_or_init(|| {
                let rad = self.radical()?;
                let mut out = Vec::new();
                for i in 0..self.num_idems() {
                    let idx = self.peirce_indices(i, i);
                    let rad_ii: Vec<Elem> = rad
                        .iter()
                        .map(|r| {
                            let mut v = self.zero_elem();
                            for &b in &idx {
                                v[b] = r[b].clone();
                            }
                            v
                        })
                        .filter(|v| !linalg::is_zero_vec(v))
                        .collect();
                    let mut cols = vec![self.idem(i).clone()];
                    cols.extend(rad_ii);
                    let sys = Mat::from_cols(self.field(), self.dim(), &cols);
                    let mut chi = self.zero_elem();
                    for &b in &idx {
                        let c = sys
                            .solve(&self.basis_elem(b))?
                            .into_option()
                            .ok_or(AlgebraError::NonSplit(idx.len()))?;
                        chi[b] = c[0].clone();
                    }
                    out.push(chi);
                }
                Ok(out)
            })
            .clone()
    }

    /// `χ_i(x)` for `x ∈ e_i A e_i`.
    pub fn residue(&self, i: usize, x: &[Scalar]) -> Scalar {
        let chars = self.residue_characters().expect("residue characters need a computable radical");
        dot(&chars[i], x)
    }

    /// Dimensions of `rad^k / rad^{k+1}` for `k = 0, 1, ...` until zero.
    pub fn radical_layers(&self) -> Result<Vec<usize>, AlgebraError> {
        let n = self.dim();
        let rad = self.radical()?;
        let mut layers = vec![n - rad.len()];
        let mut cur = rad.clone();
        while !cur.is_empty() {
            let mut next = Vec::new();
            for x in &cur {
                for r in &rad {
                    next.push(self.mul(x, r));
                }
            }
            let next = linalg::span_basis(self.field(), n, &next);
            layers.push(cur.len() - next.len());
            if next.len() == cur.len() {
                return Err(AlgebraError::DimensionMismatch("radical is not nilpotent".into()));
            }
            cur = next;
        }
        Ok(layers)
    }
}

pub(crate) fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = a.first().map(|s| s.field().zero()).unwrap_or_else(|| b[0].field().zero());
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = &acc + &(x * y);
        }
    }
    acc
}

/// The only eigenvalue of a matrix with a single eigenvalue in the field.
pub(crate) fn unique_eigenvalue(m: &Mat) -> Option<Scalar> {
    let n = m.rows();
    let f = m.field();
    let nn = f.int(n as i64);
    if !nn.is_zero() {
        let mut t = f.zero();
        for i in 0..n {
            t = &t + m.get(i, i);
        }
        return Some(&t * &nn.inv().ok()?);
    }
    let roots = m.field_eigenvalues();
    (roots.len() == 1).then(|| roots[0].clone())
}
