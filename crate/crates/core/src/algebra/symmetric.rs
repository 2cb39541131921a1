//! Symmetrizing forms: `λ` with `λ(xy) = λ(yx)` and `(x, y) ↦ λ(xy)` nondegenerate.

use rand::Rng;

use super::{Algebra, AlgebraError};
use crate::field::{Field, Scalar};
use crate::linalg::{self, Mat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    pub coeffs: Vec<Scalar>,
}

impl LinearForm {
    pub fn eval(&self, x: &[Scalar]) -> Scalar {
        super::radical::dot(&self.coeffs, x)
    }
}

/// Result of the form search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormSearch {
    Symmetric(LinearForm),
    /// Certified: no form in the `solution_dim`-dimensional space of trace-like
    /// forms is nondegenerate.
    NotSymmetric { solution_dim: usize },
}

impl FormSearch {
    pub fn form(&self) -> Option<&LinearForm> {
        match self {
            FormSearch::Symmetric(l) => Some(l),
            FormSearch::NotSymmetric { .. } => None,
        }
    }

    pub fn is_symmetric(&self) -> bool {
        matches!(self, FormSearch::Symmetric(_))
    }
}

/// Largest evaluation grid used to certify that no nondegenerate form exists.
const GRID_LIMIT: u64 = 400_000;

impl Algebra {
    /// The space of forms vanishing on all commutators `xy - yx`.
    pub fn trace_forms(&self) -> Vec<LinearForm> {
        let n = self.dim();
        let mut rows = Vec::new();
        for a in 0..n {
            for b in (a + 1)..n {
                let (x, y) = (self.basis_elem(a), self.basis_elem(b));
                let c = linalg::vec_sub(&self.mul(&x, &y), &self.mul(&y, &x));
                if !linalg::is_zero_vec(&c) {
                    rows.push(c);
                }
            }
        }
        let forms = if rows.is_empty() {
            (0..n).map(|i| linalg::unit(self.field(), n, i)).collect()
        } else {
            Mat::from_rows(self.field(), rows).expect("rect").nullspace()
        };
        forms.into_iter().map(|coeffs| LinearForm { coeffs }).collect()
    }

    /// Gram matrix `G[a][b] = λ(b_a b_b)`.
    pub fn gram(&self, form: &LinearForm) -> Mat {
        let n = self.dim();
        let mut g = Mat::zeros(self.field(), n, n);
        for a in 0..n {
            for b in 0..n {
                let mut t = self.field().zero();
                for (k, c) in self.structure(a, b) {
                    t = &t + &(c * &form.coeffs[*k]);
                }
                g.set(a, b, t);
            }
        }
        g
    }

    /// Finds a symmetrizing form, or certifies that none exists.
    ///
    /// A generic element of the trace-form space is tried first (seeded random
    /// combinations); a negative answer is certified by evaluating the Gram
    /// determinant on a grid large enough to detect a nonzero polynomial.
    pub fn symmetrizing_form(&self) -> Result<FormSearch, AlgebraError> {
        let forms = self.trace_forms();
        let t = forms.len();
        let n = self.dim();
        if n == 0 {
            return Ok(FormSearch::Symmetric(LinearForm { coeffs: vec![] }));
        }
        if t == 0 {
            return Ok(FormSearch::NotSymmetric { solution_dim: 0 });
        }
        let field = self.field();
        let grams: Vec<Mat> = forms.iter().map(|f| self.gram(f)).collect();
        let combine = |c: &[Scalar]| -> (LinearForm, Mat) {
            let mut coeffs = linalg::zero_vec(field, n);
            let mut g = Mat::zeros(field, n, n);
            for ((f, gm), s) in forms.iter().zip(&grams).zip(c) {
                linalg::axpy(&mut coeffs, s, &f.coeffs);
                g = g.add(&gm.scale(s)).expect("shape");
            }
            (LinearForm { coeffs }, g)
        };
        let mut rng = self.session().rng(0x5e77);
        for trial in 0..64 {
            let c: Vec<Scalar> = if trial == 0 {
                vec![field.one(); t]
            } else {
                (0..t).map(|_| field.int(rng.gen_range(-1000..=1000))).collect()
            };
            let (form, g) = combine(&c);
            if g.is_invertible() {
                return Ok(FormSearch::Symmetric(form));
            }
        }
        // Certify: det(Σ c_k G_k) has degree ≤ n, so vanishing on S^t with |S| = n+1 means it is zero.
        let points = n as u64 + 1;
        if let Field::Prime(p) = field {
            if (p as u64) < points {
                return Err(AlgebraError::Undecided(format!(
                    "field too small to certify asymmetry of a {n}-dimensional algebra"
                )));
            }
        }
        let grid = points.checked_pow(t as u32).unwrap_or(u64::MAX);
        if grid > GRID_LIMIT {
            return Err(AlgebraError::Undecided(format!("certificate grid of {grid} points is too large")));
        }
        let mut idx = vec![0u64; t];
        loop {
            let c: Vec<Scalar> = idx.iter().map(|&i| field.int(i as i64)).collect();
            let (form, g) = combine(&c);
            if g.is_invertible() {
                return Ok(FormSearch::Symmetric(form));
            }
            let mut k = 0;
            loop {
                if k == t {
                    return Ok(FormSearch::NotSymmetric { solution_dim: t });
                }
                idx[k] += 1;
                if idx[k] < points {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }

    /// `λ(xy) = λ(yx)` on all basis pairs and the Gram matrix is invertible.
    pub fn is_symmetrizing(&self, form: &LinearForm) -> bool {
        let n = self.dim();
        for a in 0..n {
            for b in 0..n {
                let (x, y) = (self.basis_elem(a), self.basis_elem(b));
                if form.eval(&self.mul(&x, &y)) != form.eval(&self.mul(&y, &x)) {
                    return false;
                }
            }
        }
        self.gram(form).is_invertible()
    }
}

