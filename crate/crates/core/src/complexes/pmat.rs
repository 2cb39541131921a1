//! Matrices of algebra elements between sums of indecomposable projectives.

use crate::algebra::{Algebra, Elem};
use crate::field::Scalar;
use crate::linalg::{self, Mat};

/// A map `⊕_c e_{cols[c]} A → ⊕_r e_{rows[r]} A`; entry `(r, c)` lies in
/// `e_{rows[r]} A e_{cols[c]}` and acts by left multiplication.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PMat {
    rows: Vec<usize>,
    cols: Vec<usize>,
    entries: Vec<Elem>,
}

impl PMat {
    pub fn zero(alg: &Algebra, rows: &[usize], cols: &[usize]) -> PMat {
        PMat { rows: rows.to_vec(), cols: cols.to_vec(), entries: vec![alg.zero_elem(); rows.len() * cols.len()] }
    }

    pub fn identity(alg: &Algebra, types: &[usize]) -> PMat {
        let mut m = PMat::zero(alg, types, types);
        for (i, &t) in types.iter().enumerate() {
            m.set(i, i, alg.idem(t).clone());
        }
        m
    }

    /// Builds from row-major entries without Peirce checks.
    pub fn from_entries(rows: &[usize], cols: &[usize], entries: Vec<Elem>) -> PMat {
        assert_eq!(entries.len(), rows.len() * cols.len(), "entry count");
        PMat { rows: rows.to_vec(), cols: cols.to_vec(), entries }
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Elem {
        &self.entries[r * self.cols.len() + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Elem) {
        let n = self.cols.len();
        self.entries[r * n + c] = x;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| linalg::is_zero_vec(e))
    }

    /// First entry outside its Peirce component.
    pub fn peirce_violation(&self, alg: &Algebra) -> Option<(usize, usize)> {
        for (r, &tr) in self.rows.iter().enumerate() {
            for (c, &tc) in self.cols.iter().enumerate() {
                let x = self.get(r, c);
                if x.iter().enumerate().any(|(b, s)| !s.is_zero() && alg.peirce_of(b) != (tr, tc)) {
                    return Some((r, c));
                }
            }
        }
        None
    }

    /// `self ∘ other`.
    pub fn compose(&self, alg: &Algebra, other: &PMat) -> PMat {
        assert_eq!(self.cols, other.rows, "composable types");
        let mut out = PMat::zero(alg, &self.rows, &other.cols);
        for r in 0..self.rows.len() {
            for k in 0..self.cols.len() {
                let a = self.get(r, k);
                if linalg::is_zero_vec(a) {
                    continue;
                }
                for c in 0..other.cols.len() {
                    let b = other.get(k, c);
                    if linalg::is_zero_vec(b) {
                        continue;
                    }
                    let p = alg.mul(a, b);
                    let idx = r * other.cols.len() + c;
                    out.entries[idx] = linalg::vec_add(&out.entries[idx], &p);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &PMat) -> PMat {
        assert!(self.rows == other.rows && self.cols == other.cols, "same shape");
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| linalg::vec_add(a, b)).collect();
        PMat { rows: self.rows.clone(), cols: self.cols.clone(), entries }
    }

    pub fn sub(&self, other: &PMat) -> PMat {
        assert!(self.rows == other.rows && self.cols == other.cols, "same shape");
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| linalg::vec_sub(a, b)).collect();
        PMat { rows: self.rows.clone(), cols: self.cols.clone(), entries }
    }

    pub fn scale(&self, s: &Scalar) -> PMat {
        let entries = self.entries.iter().map(|a| linalg::vec_scale(a, s)).collect();
        PMat { rows: self.rows.clone(), cols: self.cols.clone(), entries }
    }

    pub fn neg(&self) -> PMat {
        let entries = self.entries.iter().map(|a| a.iter().map(|s| -s).collect()).collect();
        PMat { rows: self.rows.clone(), cols: self.cols.clone(), entries }
    }

    /// Residues `χ(x)` of same-type entries; other entries are radical and give 0.
    pub fn residue(&self, alg: &Algebra) -> Mat {
        let f = alg.field();
        let mut m = Mat::zeros(f, self.rows.len(), self.cols.len());
        for (r, &tr) in self.rows.iter().enumerate() {
            for (c, &tc) in self.cols.iter().enumerate() {
                if tr == tc {
                    m.set(r, c, alg.residue(tr, self.get(r, c)));
                }
            }
        }
        m
    }

    /// Sub-matrix on the given row and column positions.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> PMat {
        let rt: Vec<usize> = rows.iter().map(|&r| self.rows[r]).collect();
        let ct: Vec<usize> = cols.iter().map(|&c| self.cols[c]).collect();
        let entries = rows.iter().flat_map(|&r| cols.iter().map(move |&c| (r, c))).map(|(r, c)| self.get(r, c).clone()).collect();
        PMat { rows: rt, cols: ct, entries }
    }

    /// `[[a, b], [c, d]]` with `a` top-left.
    pub fn blocks(a: &PMat, b: &PMat, c: &PMat, d: &PMat) -> PMat {
        assert!(a.rows == b.rows && c.rows == d.rows && a.cols == c.cols && b.cols == d.cols, "block shapes");
        let rows: Vec<usize> = a.rows.iter().chain(&c.rows).copied().collect();
        let cols: Vec<usize> = a.cols.iter().chain(&b.cols).copied().collect();
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for (top, bot) in [(a, b), (c, d)] {
            for r in 0..top.rows.len() {
                for cc in 0..top.cols.len() {
                    entries.push(top.get(r, cc).clone());
                }
                for cc in 0..bot.cols.len() {
                    entries.push(bot.get(r, cc).clone());
                }
            }
        }
        PMat { rows, cols, entries }
    }

    /// Block diagonal sum.
    pub fn diag(alg: &Algebra, a: &PMat, b: &PMat) -> PMat {
        PMat::blocks(a, &PMat::zero(alg, &a.rows, &b.cols), &PMat::zero(alg, &b.rows, &a.cols), b)
    }

    /// Inverse, when the residue matrix is invertible.
    pub fn inverse(&self, alg: &Algebra) -> Option<PMat> {
        if self.rows.len() != self.cols.len() {
            return None;
        }
        let rinv = self.residue(alg).inverse()?;
        let mut lift = PMat::zero(alg, &self.cols, &self.rows);
        for (r, &tr) in self.cols.iter().enumerate() {
            for (c, &tc) in self.rows.iter().enumerate() {
                let s = rinv.get(r, c);
                if !s.is_zero() {
                    if tr != tc {
                        return None;
                    }
                    lift.set(r, c, linalg::vec_scale(alg.idem(tr), s));
                }
            }
        }
        // lift·self = 1 - n with n radical, hence nilpotent
        let id = PMat::identity(alg, &self.cols);
        let n = id.sub(&lift.compose(alg, self));
        let mut sum = id.clone();
        let mut power = n.clone();
        let mut steps = 0;
        while !power.is_zero() {
            sum = sum.add(&power);
            power = power.compose(alg, &n);
            steps += 1;
            if steps > alg.dim() + 1 {
                return None;
            }
        }
        Some(sum.compose(alg, &lift))
    }

    /// The k-linear map between the underlying vector spaces, on the bases
    /// `row_indices(t)` of each summand `e_t A`.
    pub fn linear_map(&self, alg: &Algebra) -> Mat {
        let row_sets: Vec<Vec<usize>> = self.rows.iter().map(|&t| alg.row_indices(t)).collect();
        let col_sets: Vec<Vec<usize>> = self.cols.iter().map(|&t| alg.row_indices(t)).collect();
        let nr: usize = row_sets.iter().map(Vec::len).sum();
        let nc: usize = col_sets.iter().map(Vec::len).sum();
        let mut m = Mat::zeros(alg.field(), nr, nc);
        let mut c_off = 0;
        for (c, cs) in col_sets.iter().enumerate() {
            for (j, &b) in cs.iter().enumerate() {
                let y = alg.basis_elem(b);
                let mut r_off = 0;
                for (r, rs) in row_sets.iter().enumerate() {
                    let x = self.get(r, c);
                    if !linalg::is_zero_vec(x) {
                        let p = alg.mul(x, &y);
                        for (i, &k) in rs.iter().enumerate() {
                            m.set(r_off + i, c_off + j, p[k].clone());
                        }
                    }
                    r_off += rs.len();
                }
            }
            c_off += cs.len();
        }
        m
    }
}
