//! Dense exact linear algebra over a [`Field`].
//!
//! Vectors are plain `Vec<Scalar>`; matrices are row-major [`Mat`]s. All
//! routines are exact, so ranks and dimensions computed here are the true
//! integers the rest of the crate relies on.

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::field::{Field, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("{0} is not a supported prime")]
    NotPrime(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
}

/// Outcome of [`Mat::solve`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Consistent(Vec<Scalar>),
    Inconsistent,
}

impl Solution {
    pub fn into_option(self) -> Option<Vec<Scalar>> {
        match self {
            Solution::Consistent(x) => Some(x),
            Solution::Inconsistent => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Mat {
        Mat { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Mat, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(LinalgError::DimensionMismatch("ragged rows".into()));
            }
            for s in row {
                if s.field() != field {
                    return Err(LinalgError::FieldMismatch(field, s.field()));
                }
                data.push(s);
            }
        }
        Ok(Mat { field, rows: r, cols: c, data })
    }

    /// Matrix whose columns are the given vectors, each of length `len`.
    pub fn from_cols(field: Field, len: usize, cols: &[Vec<Scalar>]) -> Mat {
        let mut m = Mat::zeros(field, len, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), len, "column length");
            for (i, s) in c.iter().enumerate() {
                m.set(i, j, s.clone());
            }
        }
        m
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Mat {
        let v = rows.iter().map(|r| r.iter().map(|&x| field.int(x)).collect()).collect();
        Mat::from_rows(field, v).expect("rectangular literal")
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, s: Scalar) {
        self.data[i * self.cols + j] = s;
    }

    pub fn add_at(&mut self, i: usize, j: usize, s: &Scalar) {
        let k = i * self.cols + j;
        self.data[k] = &self.data[k] + s;
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &Mat) -> Result<Mat, LinalgError> {
        if self.field != o.field {
            return Err(LinalgError::FieldMismatch(self.field, o.field));
        }
        if self.cols != o.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = Mat::zeros(self.field, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        out.add_at(i, j, &(a * b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch(format!("{} columns, vector of {}", self.cols, v.len())));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc = &acc + &(a * x);
                    }
                }
                acc
            })
            .collect())
    }

    pub fn add(&self, o: &Mat) -> Result<Mat, LinalgError> {
        if (self.rows, self.cols) != (o.rows, o.cols) {
            return Err(LinalgError::DimensionMismatch("sum of differently shaped matrices".into()));
        }
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect();
        Ok(Mat { data, ..*self })
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        Mat { data: self.data.iter().map(|a| a * s).collect(), ..*self }
    }

    /// Reduced row echelon form together with the (strictly increasing) pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(p, r);
            let inv = self.get(r, c).inv().expect("nonzero pivot");
            for j in c..self.cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let pj = self.get(r, j);
                    if !pj.is_zero() {
                        let v = self.get(i, j) - &(&f * pj);
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self * x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(row, free);
            }
            basis.push(v);
        }
        basis
    }

    /// A particular solution of `self * x = b`, or [`Solution::Inconsistent`].
    pub fn solve(&self, b: &[Scalar]) -> Result<Solution, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::DimensionMismatch(format!("{} rows, right side of {}", self.rows, b.len())));
        }
        let mut aug = Mat::zeros(self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&self.cols) {
            return Ok(Solution::Inconsistent);
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = aug.get(row, self.cols).clone();
        }
        Ok(Solution::Consistent(x))
    }

    /// Linearly independent columns spanning the column space.
    pub fn image_basis(&self) -> Vec<Vec<Scalar>> {
        let (_, pivots) = self.rref();
        pivots.iter().map(|&c| self.col(c)).collect()
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Mat::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, self.field.one());
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || (n > 0 && pivots[n - 1] >= n) {
            return None;
        }
        let mut inv = Mat::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// Minimal polynomial of a square matrix, monic, lowest degree first.
    pub fn minimal_polynomial(&self) -> Vec<Scalar> {
        assert_eq!(self.rows, self.cols, "square matrix");
        let n = self.rows;
        let mut powers: Vec<Vec<Scalar>> = vec![Mat::identity(self.field, n).data];
        let mut cur = Mat::identity(self.field, n);
        loop {
            cur = cur.mul(self).expect("square");
            let target = cur.data.clone();
            let basis = Mat::from_cols(self.field, n * n, &powers);
            if let Solution::Consistent(c) = basis.solve(&target).expect("shape") {
                let mut poly: Vec<Scalar> = c.iter().map(|s| -s).collect();
                poly.push(self.field.one());
                return poly;
            }
            powers.push(target);
        }
    }

    /// Eigenvalues lying in the field itself (roots of the minimal polynomial).
    ///
    /// Prime fields up to 2^16 elements are searched exhaustively; over the
    /// rationals the rational-root test is used on coefficients of moderate size.
    pub fn field_eigenvalues(&self) -> Vec<Scalar> {
        let poly = self.minimal_polynomial();
        poly_roots(self.field, &poly)
    }
}

/// Evaluate a polynomial given lowest degree first.
pub fn poly_eval(poly: &[Scalar], x: &Scalar) -> Scalar {
    let mut acc = x.field().zero();
    for c in poly.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

/// Roots in the field of a nonzero polynomial (lowest degree first).
pub fn poly_roots(field: Field, poly: &[Scalar]) -> Vec<Scalar> {
    match field {
        Field::Prime(p) if p <= 1 << 16 => {
            field.elements().into_iter().flatten().filter(|c| poly_eval(poly, c).is_zero()).collect()
        }
        Field::Prime(_) => Vec::new(),
        Field::Rational => rational_roots(poly),
    }
}

fn rational_roots(poly: &[Scalar]) -> Vec<Scalar> {
    // clear denominators
    let mut lcm = BigInt::one();
    for c in poly {
        let (_, d) = c.as_ratio().expect("rational");
        lcm = lcm.lcm(&d);
    }
    let mut ints: Vec<BigInt> = poly
        .iter()
        .map(|c| {
            let (n, d) = c.as_ratio().expect("rational");
            n * (&lcm / d)
        })
        .collect();
    let mut roots = Vec::new();
    let mut zero_root = false;
    while ints.len() > 1 && ints[0].is_zero() {
        ints.remove(0);
        zero_root = true;
    }
    if zero_root {
        roots.push(Scalar::Rat(BigRational::zero()));
    }
    if ints.len() <= 1 {
        return roots;
    }
    let (Some(a0), Some(an)) = (ints[0].abs().to_u64(), ints.last().unwrap().abs().to_u64()) else {
        return roots;
    };
    if a0 > 1_000_000_000_000 || an > 1_000_000_000_000 {
        return roots;
    }
    let mut seen = std::collections::BTreeSet::new();
    for p in divisors(a0) {
        for q in divisors(an) {
            for sign in [1i64, -1] {
                let r = BigRational::new(BigInt::from(p) * sign, BigInt::from(q));
                if !seen.insert(r.clone()) {
                    continue;
                }
                let s = Scalar::Rat(r);
                if poly_eval(poly, &s).is_zero() {
                    roots.push(s);
                }
            }
        }
    }
    roots
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out
}

/// Rank of a family of vectors of common length `len`.
pub fn rank_of(field: Field, len: usize, vectors: &[Vec<Scalar>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Mat::from_rows(field, vectors.to_vec()).map(|m| m.rank()).unwrap_or_else(|_| {
        panic!("vectors must have length {len}");
    })
}

/// Reduced basis of the span of `vectors`.
pub fn span_basis(field: Field, len: usize, vectors: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Mat::from_rows(field, vectors.to_vec()).expect("common length");
    debug_assert_eq!(m.cols(), len);
    let (r, piv) = m.rref();
    (0..piv.len()).map(|i| r.row(i)).collect()
}

/// Indices of those `candidates` that extend `base` greedily to a larger
/// independent family. `base` is assumed independent.
pub fn extend_basis(field: Field, len: usize, base: &[Vec<Scalar>], candidates: &[Vec<Scalar>]) -> Vec<usize> {
    let mut echelon = Echelon::new(field, len);
    for b in base {
        echelon.insert(b);
    }
    candidates.iter().enumerate().filter(|(_, c)| echelon.insert(c)).map(|(i, _)| i).collect()
}

/// Coset representatives spanning a complement of `span(sub)` in `field^ambient`,
/// chosen among standard basis vectors.
pub fn quotient_basis(field: Field, sub: &[Vec<Scalar>], ambient: usize) -> Result<Vec<Vec<Scalar>>, LinalgError> {
    if let Some(v) = sub.iter().find(|v| v.len() != ambient) {
        return Err(LinalgError::DimensionMismatch(format!("vector of length {} in {}-space", v.len(), ambient)));
    }
    let units: Vec<Vec<Scalar>> = (0..ambient).map(|i| unit(field, ambient, i)).collect();
    let base = span_basis(field, ambient, sub);
    Ok(extend_basis(field, ambient, &base, &units).into_iter().map(|i| units[i].clone()).collect())
}

pub fn unit(field: Field, len: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); len];
    v[i] = field.one();
    v
}

pub fn zero_vec(field: Field, len: usize) -> Vec<Scalar> {
    vec![field.zero(); len]
}

pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Scalar], s: &Scalar) -> Vec<Scalar> {
    a.iter().map(|x| x * s).collect()
}

pub fn axpy(acc: &mut [Scalar], s: &Scalar, x: &[Scalar]) {
    if s.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(x) {
        if !b.is_zero() {
            *a = &*a + &(s * b);
        }
    }
}

pub fn is_zero_vec(a: &[Scalar]) -> bool {
    a.iter().all(Scalar::is_zero)
}

/// Incrementally maintained echelon basis; answers membership queries.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    len: usize,
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl Echelon {
    pub fn new(field: Field, len: usize) -> Echelon {
        Echelon { field, len, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut w = v.to_vec();
        for (p, row) in &self.rows {
            let f = w[*p].clone();
            if !f.is_zero() {
                axpy(&mut w, &-&f, row);
            }
        }
        w
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    /// Adds `v`; returns whether the span grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.len, "vector length");
        let w = self.reduce(v);
        let Some(p) = w.iter().position(|s| !s.is_zero()) else {
            return false;
        };
        let inv = w[p].inv().expect("nonzero");
        let w = vec_scale(&w, &inv);
        for (_, row) in self.rows.iter_mut() {
            let f = row[p].clone();
            if !f.is_zero() {
                axpy(row, &-&f, &w);
            }
        }
        self.rows.push((p, w));
        true
    }

    pub fn basis(&self) -> Vec<Vec<Scalar>> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }

    pub fn field(&self) -> Field {
        self.field
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn rref_identity_and_zero() {
        let id = Mat::identity(q(), 3);
        assert_eq!(id.rref(), (id.clone(), vec![0, 1, 2]));
        let z = Mat::zeros(q(), 2, 2);
        assert_eq!(z.rref(), (z.clone(), vec![]));
    }

    #[test]
    fn rref_rank_one() {
        let m = Mat::from_i64(q(), &[&[1, 2], &[2, 4]]);
        let (r, p) = m.rref();
        assert_eq!(r, Mat::from_i64(q(), &[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn nullspace_examples() {
        assert!(Mat::identity(q(), 3).nullspace().is_empty());
        assert_eq!(Mat::zeros(q(), 4, 4).nullspace().len(), 4);
        let ns = Mat::from_i64(q(), &[&[1, 2], &[2, 4]]).nullspace();
        assert_eq!(ns.len(), 1);
        // proportional to (2, -1)
        let v = &ns[0];
        assert_eq!(&v[0] * &q().int(-1), &v[1] * &q().int(2));
    }

    #[test]
    fn solve_examples() {
        let b = vec![q().int(3), q().int(-2)];
        assert_eq!(Mat::identity(q(), 2).solve(&b).unwrap(), Solution::Consistent(b.clone()));
        assert_eq!(Mat::zeros(q(), 2, 2).solve(&b).unwrap(), Solution::Inconsistent);
        let m = Mat::from_i64(q(), &[&[1, 1]]);
        let x = m.solve(&[q().int(3)]).unwrap().into_option().unwrap();
        assert_eq!(&x[0] + &x[1], q().int(3));
        assert!(m.solve(&b).is_err());
    }

    #[test]
    fn image_invertible_quotient() {
        assert!(Mat::zeros(q(), 3, 2).image_basis().is_empty());
        assert!(Mat::identity(q(), 3).is_invertible());
        assert!(!Mat::from_i64(q(), &[&[1, 2], &[2, 4]]).is_invertible());
        let sub = vec![vec![q().one(), q().zero()]];
        let reps = quotient_basis(q(), &sub, 2).unwrap();
        assert_eq!(reps.len(), 1);
        let mut e = Echelon::new(q(), 2);
        e.insert(&sub[0]);
        assert!(!e.contains(&reps[0]));
        assert!(quotient_basis(q(), &sub, 3).is_err());
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Mat::from_i64(Field::Prime(101), &[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Mat::identity(Field::Prime(101), 2));
    }

    #[test]
    fn eigenvalues() {
        let m = Mat::from_i64(q(), &[&[2, 0], &[0, -3]]);
        let mut ev: Vec<String> = m.field_eigenvalues().iter().map(|s| s.to_string()).collect();
        ev.sort();
        assert_eq!(ev, vec!["-3", "2"]);
        let rot = Mat::from_i64(q(), &[&[0, -1], &[1, 0]]);
        assert!(rot.field_eigenvalues().is_empty());
        let f = Field::Prime(5);
        // x^2 + 1 splits mod 5: roots 2, 3
        let rot5 = Mat::from_i64(f, &[&[0, -1], &[1, 0]]);
        assert_eq!(rot5.field_eigenvalues().len(), 2);
    }

    #[test]
    fn mismatched_fields() {
        let a = Mat::identity(q(), 2);
        let b = Mat::identity(Field::Prime(7), 2);
        assert!(matches!(a.mul(&b), Err(LinalgError::FieldMismatch(..))));
        assert!(Mat::from_rows(q(), vec![vec![Field::Prime(7).one()]]).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn mat(field: Field) -> impl Strategy<Value = Mat> {
            (1usize..6, 1usize..6).prop_flat_map(move |(r, c)| {
                proptest::collection::vec(-3i64..=3, r * c).prop_map(move |v| {
                    let rows = v.chunks(c).map(|row| row.iter().map(|&x| field.int(x)).collect()).collect();
                    Mat::from_rows(field, rows).unwrap()
                })
            })
        }

        fn both() -> impl Strategy<Value = Mat> {
            prop_oneof![mat(Field::Rational), mat(Field::prime(7).unwrap())]
        }

        proptest! {
            #[test]
            fn rank_nullity(m in both()) {
                prop_assert_eq!(m.rank() + m.nullspace().len(), m.cols());
                for v in m.nullspace() {
                    prop_assert!(is_zero_vec(&m.mul_vec(&v).unwrap()));
                }
            }

            #[test]
            fn rref_idempotent(m in both()) {
                let (r, p) = m.rref();
                prop_assert_eq!(r.rref(), (r.clone(), p.clone()));
                prop_assert!(p.windows(2).all(|w| w[0] < w[1]));
            }

            #[test]
            fn solve_reproduces_rhs(m in both(), seed in 0usize..1000) {
                let f = m.field();
                let x: Vec<Scalar> = (0..m.cols()).map(|i| f.int(((seed + 3 * i) % 5) as i64 - 2)).collect();
                let b = m.mul_vec(&x).unwrap();
                let y = m.solve(&b).unwrap().into_option().unwrap();
                prop_assert_eq!(m.mul_vec(&y).unwrap(), b);
            }

            #[test]
            fn quotient_basis_complements(m in both()) {
                let f = m.field();
                let sub = m.image_basis();
                let reps = quotient_basis(f, &sub, m.rows()).unwrap();
                let mut all = sub.clone();
                all.extend(reps.iter().cloned());
                prop_assert_eq!(rank_of(f, m.rows(), &all), m.rows());
                prop_assert_eq!(sub.len() + reps.len(), m.rows());
            }
        }
    }
}
