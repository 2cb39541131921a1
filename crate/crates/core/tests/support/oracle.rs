//! Brute-force Hom in the homotopy category, computed on underlying vector spaces.
//!
//! Each term `⊕ e_t A` becomes a right module by block-diagonal action, Hom
//! spaces between terms come from `hom_module`, differentials are expanded by
//! left multiplication here, and chain maps and null-homotopies are solved for
//! as k-linear systems. Nothing from the complexes module is used beyond
//! reading terms and differential entries.

#![allow(dead_code)]

use quivtilt::algebra::{Algebra, ModuleRep};
use quivtilt::complexes::{ChainMap, PMat, ProjComplex};
use quivtilt::field::Scalar;
use quivtilt::linalg::{self, Mat};

fn module_of(alg: &Algebra, types: &[usize]) -> ModuleRep {
    let parts: Vec<ModuleRep> = types.iter().map(|&t| ModuleRep::projective(alg, t)).collect();
    let n: usize = parts.iter().map(|p| p.dim()).sum();
    let action = (0..alg.dim())
        .map(|b| {
            let mut m = Mat::zeros(alg.field(), n, n);
            let mut off = 0;
            for p in &parts {
                let a = p.action(b);
                for i in 0..p.dim() {
                    for j in 0..p.dim() {
                        m.set(off + i, off + j, a.get(i, j).clone());
                    }
                }
                off += p.dim();
            }
            m
        })
        .collect();
    ModuleRep::new(alg, n, action).expect("direct sum of projectives")
}

/// Left multiplication by a matrix of algebra elements, on the bases of `e_t A`
/// given by the basis elements of row `t`.
pub fn expand(alg: &Algebra, m: &PMat) -> Mat {
    let rows: Vec<Vec<usize>> = m.rows().iter().map(|&t| (0..alg.dim()).filter(|&b| alg.peirce_of(b).0 == t).collect()).collect();
    let cols: Vec<Vec<usize>> = m.cols().iter().map(|&t| (0..alg.dim()).filter(|&b| alg.peirce_of(b).0 == t).collect()).collect();
    let nr: usize = rows.iter().map(Vec::len).sum();
    let nc: usize = cols.iter().map(Vec::len).sum();
    let mut out = Mat::zeros(alg.field(), nr, nc);
    let mut co = 0;
    for (c, cb) in cols.iter().enumerate() {
        for (j, &b) in cb.iter().enumerate() {
            let mut ro = 0;
            for (r, rb) in rows.iter().enumerate() {
                let x = m.get(r, c);
                let mut prod = alg.zero_elem();
                for (k, s) in x.iter().enumerate() {
                    if s.is_zero() {
                        continue;
                    }
                    for (t, c2) in alg.structure(k, b) {
                        prod[*t] = &prod[*t] + &(s * c2);
                    }
                }
                for (i, &bb) in rb.iter().enumerate() {
                    out.set(ro + i, co + j, prod[bb].clone());
                }
                ro += rb.len();
            }
        }
        co += cb.len();
    }
    out
}

fn dim_of(alg: &Algebra, types: &[usize]) -> usize {
    types.iter().map(|&t| (0..alg.dim()).filter(|&b| alg.peirce_of(b).0 == t).count()).sum()
}

fn flat(m: &Mat) -> Vec<Scalar> {
    m.entries().to_vec()
}

/// Result of the brute-force computation of `Hom_K(X, Y[n])`.
pub struct OracleHom {
    pub dim: usize,
    /// Flattened `(φ_p)_p` for a basis of cycles and of boundaries.
    pub cycles: Vec<Vec<Scalar>>,
    pub boundaries: Vec<Vec<Scalar>>,
    degrees: Vec<i32>,
    sizes: Vec<(usize, usize)>,
}

impl OracleHom {
    /// Flattens a chain map `X → Y[n]` the same way as the oracle's unknowns.
    pub fn flatten(&self, alg: &Algebra, f: &ChainMap) -> Vec<Scalar> {
        let mut v = Vec::new();
        for (&p, &(r, c)) in self.degrees.iter().zip(&self.sizes) {
            let m = expand(alg, &f.comp(p));
            assert_eq!((m.rows(), m.cols()), (r, c));
            v.extend(flat(&m));
        }
        v
    }

    pub fn len(&self) -> usize {
        self.sizes.iter().map(|(r, c)| r * c).sum()
    }
}

/// `Hom_K(X, Y[n])` by brute force.
pub fn oracle_hom(x: &ProjComplex, y: &ProjComplex, n: i32) -> OracleHom {
    let alg = x.algebra();
    let f = alg.field();
    let sign = if n % 2 == 0 { f.one() } else { -f.one() };
    if x.is_zero() || y.is_zero() {
        return OracleHom { dim: 0, cycles: vec![], boundaries: vec![], degrees: vec![], sizes: vec![] };
    }
    let degrees: Vec<i32> = x.degrees().collect();
    let xs: Vec<usize> = degrees.iter().map(|&p| dim_of(alg, x.term(p))).collect();
    let ys = |q: i32| dim_of(alg, y.term(q));
    let sizes: Vec<(usize, usize)> = degrees.iter().zip(&xs).map(|(&p, &c)| (ys(p + n), c)).collect();
    let total: usize = sizes.iter().map(|(r, c)| r * c).sum();
    let offsets: Vec<usize> = sizes.iter().scan(0, |acc, (r, c)| { let o = *acc; *acc += r * c; Some(o) }).collect();

    // A-linear maps X^p → Y^{p+k}, flattened into the global coordinates of degree k
    let homs = |k: i32| -> Vec<Vec<Vec<Scalar>>> {
        degrees
            .iter()
            .map(|&p| {
                let (mx, my) = (module_of(alg, x.term(p)), module_of(alg, y.term(p + k)));
                if mx.dim() == 0 || my.dim() == 0 {
                    return vec![];
                }
                alg.hom_module(&mx, &my).unwrap().iter().map(flat).collect()
            })
            .collect()
    };
    let dx = |p: i32| expand(alg, &x.diff(p));
    let dy = |q: i32| expand(alg, &y.diff(q)).scale(&sign);

    // chain maps: unknown coefficients on each Hom_A(X^p, Y^{p+n})
    let h0 = homs(n);
    let mut gens: Vec<Vec<Scalar>> = Vec::new();
    for (i, hs) in h0.iter().enumerate() {
        for h in hs {
            let mut v = linalg::zero_vec(f, total);
            v[offsets[i]..offsets[i] + h.len()].clone_from_slice(h);
            gens.push(v);
        }
    }
    let unflat = |v: &[Scalar], i: usize| -> Mat {
        let (r, c) = sizes[i];
        let rows = if r == 0 { vec![] } else { v[offsets[i]..offsets[i] + r * c].chunks(c.max(1)).map(|s| s.to_vec()).collect() };
        if r == 0 { Mat::zeros(f, 0, c) } else { Mat::from_rows(f, rows).unwrap() }
    };
    // commutation d_{Y[n]} φ_p - φ_{p+1} d_X^p for all p (including the ends)
    let defect = |v: &[Scalar]| -> Vec<Scalar> {
        let mut out = Vec::new();
        for (i, &p) in degrees.iter().enumerate() {
            let phi = unflat(v, i);
            let left = dy(p + n).mul(&phi).unwrap();
            let right = if i + 1 < degrees.len() {
                unflat(v, i + 1).mul(&dx(p)).unwrap()
            } else {
                Mat::zeros(f, left.rows(), left.cols())
            };
            out.extend(flat(&left.add(&right.scale(&-f.one())).unwrap()));
        }
        // component into the degree below the source range
        let p0 = degrees[0];
        let below = unflat(v, 0).mul(&dx(p0 - 1)).unwrap();
        out.extend(flat(&below));
        out
    };
    let cycles: Vec<Vec<Scalar>> = if gens.is_empty() {
        vec![]
    } else {
        let cols: Vec<Vec<Scalar>> = gens.iter().map(|g| defect(g)).collect();
        let m = Mat::from_cols(f, cols[0].len(), &cols);
        let null = if m.rows() == 0 { (0..gens.len()).map(|i| linalg::unit(f, gens.len(), i)).collect() } else { m.nullspace() };
        null.iter()
            .map(|c| {
                let mut v = linalg::zero_vec(f, total);
                for (s, g) in c.iter().zip(&gens) {
                    linalg::axpy(&mut v, s, g);
                }
                v
            })
            .collect()
    };
    // null-homotopies h_p: X^p → Y^{p+n-1}; boundary d_{Y[n]} h_p + h_{p+1} d_X^p
    let hm = homs(n - 1);
    let hsize: Vec<(usize, usize)> = degrees.iter().zip(&xs).map(|(&p, &c)| (ys(p + n - 1), c)).collect();
    let mut boundaries = Vec::new();
    for (i, hs) in hm.iter().enumerate() {
        let p = degrees[i];
        for h in hs {
            let (r, c) = hsize[i];
            let hmat = Mat::from_rows(f, h.chunks(c).map(|s| s.to_vec()).collect()).unwrap();
            assert_eq!(hmat.rows(), r);
            let mut v = linalg::zero_vec(f, total);
            // contributes d_{Y[n]}^{p+n-1} h to φ_p
            let a = dy(p + n - 1).mul(&hmat).unwrap();
            for (k, s) in flat(&a).into_iter().enumerate() {
                v[offsets[i] + k] = &v[offsets[i] + k] + &s;
            }
            // and h d_X^{p-1} to φ_{p-1}
            if i > 0 {
                let b = hmat.mul(&dx(p - 1)).unwrap();
                for (k, s) in flat(&b).into_iter().enumerate() {
                    v[offsets[i - 1] + k] = &v[offsets[i - 1] + k] + &s;
                }
            }
            boundaries.push(v);
        }
    }
    let boundaries = linalg::span_basis(f, total, &boundaries);
    let dim = cycles.len() - boundaries.len();
    OracleHom { dim, cycles, boundaries, degrees, sizes }
}
