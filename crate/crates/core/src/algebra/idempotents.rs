//! Complete sets of primitive orthogonal idempotents by Fitting splitting.

use rand::Rng;

use super::{Algebra, AlgebraError, Elem};
use crate::field::Field;
use crate::linalg::{self, Mat};

/// A subalgebra of `n × n` matrices containing the identity, with its radical.
#[derive(Clone, Debug)]
pub struct MatrixAlgebra {
    field: Field,
    n: usize,
    basis: Vec<Mat>,
    radical: Vec<Mat>,
}

fn flat(m: &Mat) -> Vec<crate::field::Scalar> {
    m.entries().to_vec()
}

fn unflat(field: Field, n: usize, v: &[crate::field::Scalar]) -> Mat {
    let rows = v.chunks(n).map(|r| r.to_vec()).collect();
    Mat::from_rows(field, rows).expect("square")
}

impl MatrixAlgebra {
    /// `spanning` must span a subalgebra containing the identity; `radical` its radical.
    pub fn new(field: Field, n: usize, spanning: &[Mat], radical: &[Mat]) -> MatrixAlgebra {
        let basis = linalg::span_basis(field, n * n, &spanning.iter().map(flat).collect::<Vec<_>>());
        let radical = linalg::span_basis(field, n * n, &radical.iter().map(flat).collect::<Vec<_>>());
        MatrixAlgebra {
            field,
            n,
            basis: basis.iter().map(|v| unflat(field, n, v)).collect(),
            radical: radical.iter().map(|v| unflat(field, n, v)).collect(),
        }
    }

    /// Radical via the trace form of the natural representation:
    /// `{x : tr(xy) = 0 for all y}`; needs characteristic 0 or above `n`.
    pub fn with_trace_radical(field: Field, n: usize, spanning: &[Mat]) -> Result<MatrixAlgebra, AlgebraError> {
        let p = field.characteristic();
        if p != 0 && p as usize <= n {
            return Err(AlgebraError::SmallCharacteristic { p, dim: n });
        }
        let alg = MatrixAlgebra::new(field, n, spanning, &[]);
        let k = alg.basis.len();
        let mut g = Mat::zeros(field, k.max(1), k);
        for (i, x) in alg.basis.iter().enumerate() {
            for (j, y) in alg.basis.iter().enumerate() {
                let xy = x.mul(y).expect("square");
                let mut t = field.zero();
                for d in 0..n {
                    t = &t + xy.get(d, d);
                }
                g.set(j, i, t);
            }
        }
        let radical: Vec<Mat> = g
            .nullspace()
            .iter()
            .map(|c| {
                let mut m = Mat::zeros(field, n, n);
                for (s, b) in c.iter().zip(&alg.basis) {
                    m = m.add(&b.scale(s)).expect("shape");
                }
                m
            })
            .collect();
        Ok(MatrixAlgebra { radical, ..alg })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn radical_dim(&self) -> usize {
        self.radical.len()
    }

    fn sandwich_dim(&self, u: &Mat, family: &[Mat]) -> usize {
        let v: Vec<_> = family.iter().map(|b| flat(&u.mul(b).unwrap().mul(u).unwrap())).collect();
        linalg::rank_of(self.field, self.n * self.n, &v)
    }

    /// `dim(uRu) - dim(u rad u)`: 1 exactly when `u` is primitive and its corner split.
    pub fn top_dim(&self, u: &Mat) -> usize {
        self.sandwich_dim(u, &self.basis) - self.sandwich_dim(u, &self.radical)
    }

    /// Splits `start` (orthogonal idempotents summing to the identity) into
    /// primitive orthogonal idempotents.
    pub fn primitive_idempotents<R: Rng>(&self, start: Vec<Mat>, rng: &mut R) -> Result<Vec<Mat>, AlgebraError> {
        let mut stack = start;
        stack.reverse();
        let mut done = Vec::new();
        while let Some(u) = stack.pop() {
            let top = self.top_dim(&u);
            if top <= 1 {
                done.push(u);
                continue;
            }
            let (e, f) = self.split(&u, rng).ok_or(AlgebraError::NonSplit(top))?;
            stack.push(f);
            stack.push(e);
        }
        Ok(done)
    }

    fn split<R: Rng>(&self, u: &Mat, rng: &mut R) -> Option<(Mat, Mat)> {
        let corner: Vec<Mat> = self.basis.iter().map(|b| u.mul(b).unwrap().mul(u).unwrap()).collect();
        let rank_u = u.rank();
        let try_one = |x: &Mat| -> Option<(Mat, Mat)> {
            for c in x.field_eigenvalues() {
                let y = x.add(&u.scale(&-&c)).unwrap();
                let z = power_at_least(&y, self.n);
                let r = z.rank();
                if r > 0 && r < rank_u {
                    let e = fitting_split(&z)?;
                    let f = u.add(&e.scale(&-&self.field.one())).unwrap();
                    return Some((e, f));
                }
            }
            None
        };
        for x in &corner {
            if let Some(s) = try_one(x) {
                return Some(s);
            }
        }
        for (i, x) in corner.iter().enumerate() {
            for y in corner.iter().skip(i) {
                if let Some(s) = try_one(&x.mul(y).unwrap()) {
                    return Some(s);
                }
            }
        }
        for _ in 0..64 {
            let mut x = Mat::zeros(self.field, self.n, self.n);
            for b in &corner {
                let c = self.field.int(rng.gen_range(-50..=50));
                x = x.add(&b.scale(&c)).unwrap();
            }
            if let Some(s) = try_one(&x) {
                return Some(s);
            }
        }
        None
    }
}

fn power_at_least(y: &Mat, n: usize) -> Mat {
    let mut z = y.clone();
    let mut e = 1;
    while e < n.max(1) {
        z = z.mul(&z).unwrap();
        e *= 2;
    }
    z
}

/// For `z` with `V = im z^∞ ⊕ ker z^∞` already reached (`z = y^N`, `N ≥ n`),
/// the projection onto `im z` along `ker z`, as a polynomial in `z`.
pub fn fitting_split(z: &Mat) -> Option<Mat> {
    let field = z.field();
    let n = z.rows();
    let mut powers = vec![z.clone()];
    for _ in 0..n {
        let next = powers.last().unwrap().mul(z).unwrap();
        powers.push(next);
    }
    // Σ_{k≥1} a_k z^{k+1} = z
    let cols: Vec<Vec<_>> = powers[1..].iter().map(flat).collect();
    let sys = Mat::from_cols(field, n * n, &cols);
    let a = sys.solve(&flat(z)).ok()?.into_option()?;
    let mut e = Mat::zeros(field, n, n);
    for (k, s) in a.iter().enumerate() {
        e = e.add(&powers[k].scale(s)).unwrap();
    }
    (e.mul(&e).unwrap() == e).then_some(e)
}

impl Algebra {
    /// A complete set of primitive orthogonal idempotents.
    ///
    /// The distinguished idempotents are refined by Fitting splitting inside
    /// the regular representation; those that are already primitive are kept.
    pub fn primitive_idempotents(&self) -> Result<Vec<Elem>, AlgebraError> {
        let n = self.dim();
        if n == 0 {
            return Ok(vec![]);
        }
        let field = self.field();
        let basis: Vec<Mat> = (0..n).map(|b| self.left_mult_matrix(&self.basis_elem(b))).collect();
        let rad: Vec<Mat> = self.radical()?.iter().map(|r| self.left_mult_matrix(r)).collect();
        let ma = MatrixAlgebra::new(field, n, &basis, &rad);
        let start: Vec<Mat> = self.idems().iter().map(|e| self.left_mult_matrix(e)).collect();
        let mut rng = self.session().rng(0x1de);
        let mats = ma.primitive_idempotents(start, &mut rng)?;
        Ok(mats.iter().map(|m| m.mul_vec(self.unit()).unwrap()).collect())
    }
}
