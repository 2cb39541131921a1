//! Endomorphism algebras of complexes in the homotopy category.

use crate::algebra::{Algebra, Elem};
use crate::complexes::{decompose, homotopy_hom, minimize, ChainMap, HomotopyHomSpace, Minimized, ProjComplex};
use crate::field::Scalar;
use crate::linalg::{self, Mat};

use super::TiltingError;

/// Basis of `Hom_K(X_l, X_k)` (the Peirce block `(k, l)`), identity first on the diagonal.
#[derive(Clone, Debug)]
struct Block {
    space: HomotopyHomSpace,
    basis: Vec<ChainMap>,
    /// Coordinates in `space` → coordinates in `basis`.
    change: Mat,
    offset: usize,
}

impl Block {
    fn coords(&self, f: &ChainMap) -> Option<Vec<Scalar>> {
        let c = self.space.coords(f)?;
        if c.is_empty() {
            return Some(c);
        }
        Some(self.change.mul_vec(&c).expect("square change of basis"))
    }
}

/// `End_K(X_1 ⊕ ... ⊕ X_m)` for indecomposable, pairwise distinct or repeated summands.
#[derive(Clone, Debug)]
pub struct SummandAlgebra {
    pub algebra: Algebra,
    pub summands: Vec<ProjComplex>,
    blocks: Vec<Vec<Block>>,
}

impl SummandAlgebra {
    pub fn new(summands: Vec<ProjComplex>) -> Result<SummandAlgebra, TiltingError> {
        let alg = summands.first().ok_or_else(|| TiltingError::Degenerate("no summands".into()))?.algebra();
        let field = alg.field();
        let m = summands.len();
        let mut blocks: Vec<Vec<Block>> = Vec::with_capacity(m);
        let mut labels = Vec::new();
        let mut offset = 0;
        for k in 0..m {
            let mut row = Vec::with_capacity(m);
            for l in 0..m {
                let space = homotopy_hom(&summands[l], &summands[k], 0)?;
                let mut basis: Vec<ChainMap> = Vec::new();
                if k == l {
                    basis.push(ChainMap::identity(&summands[k]));
                }
                let mut ech = linalg::Echelon::new(field, space.dim());
                for b in &basis {
                    ech.insert(&space.coords(b).expect("identity is a chain map"));
                }
                for r in space.basis() {
                    if ech.insert(&space.coords(r).expect("representative")) {
                        basis.push(r.clone());
                    }
                }
                let old: Vec<Vec<Scalar>> = basis.iter().map(|b| space.coords(b).unwrap()).collect();
                let change = if old.is_empty() {
                    Mat::zeros(field, 0, 0)
                } else {
                    Mat::from_cols(field, space.dim(), &old).inverse().expect("basis of the Hom space")
                };
                for i in 0..basis.len() {
                    labels.push(if k == l && i == 0 { format!("1_{}", k + 1) } else { format!("h{}_{}_{}", k + 1, l + 1, i) });
                }
                let len = basis.len();
                row.push(Block { space, basis, change, offset });
                offset += len;
            }
            blocks.push(row);
        }
        let dim = offset;
        let mut table = vec![vec![Vec::new(); dim]; dim];
        for k in 0..m {
            for l in 0..m {
                for (i, x) in blocks[k][l].basis.iter().enumerate() {
                    for j in 0..m {
                        let target = &blocks[k][j];
                        for (i2, y) in blocks[l][j].basis.iter().enumerate() {
                            let prod = y.then(x)?;
                            let c = target.coords(&prod).expect("composite of chain maps");
                            table[blocks[k][l].offset + i][blocks[l][j].offset + i2] =
                                c.into_iter().enumerate().filter(|(_, s)| !s.is_zero()).map(|(t, s)| (target.offset + t, s)).collect();
                        }
                    }
                }
            }
        }
        let idems: Vec<Elem> = (0..m).map(|k| linalg::unit(field, dim, blocks[k][k].offset)).collect();
        let unit = idems.iter().fold(linalg::zero_vec(field, dim), |acc, e| linalg::vec_add(&acc, e));
        let vertex_labels = (1..=m).map(|k| format!("T{k}")).collect();
        let algebra = Algebra::from_structure(alg.session(), labels, vertex_labels, table, unit, idems)?;
        Ok(SummandAlgebra { algebra, summands, blocks })
    }

    /// Basis maps `X_l → X_k` of the Peirce block `(k, l)`.
    pub fn block_basis(&self, k: usize, l: usize) -> &[ChainMap] {
        &self.blocks[k][l].basis
    }

    /// Indices in `B` of the basis of the Peirce block `(k, l)`.
    pub fn block_indices(&self, k: usize, l: usize) -> Vec<usize> {
        let b = &self.blocks[k][l];
        (b.offset..b.offset + b.basis.len()).collect()
    }

    /// The algebra element of a map `X_l → X_k`.
    pub fn element(&self, k: usize, l: usize, f: &ChainMap) -> Option<Elem> {
        let b = &self.blocks[k][l];
        let c = b.coords(f)?;
        let mut x = self.algebra.zero_elem();
        for (i, s) in c.into_iter().enumerate() {
            x[b.offset + i] = s;
        }
        Some(x)
    }

    /// The map `X_l → X_k` of the `(k, l)` component of an element.
    pub fn map_of(&self, k: usize, l: usize, x: &[Scalar]) -> ChainMap {
        let b = &self.blocks[k][l];
        let mut acc = ChainMap::zero(&self.summands[l], &self.summands[k]);
        for (i, m) in b.basis.iter().enumerate() {
            let s = &x[b.offset + i];
            if !s.is_zero() {
                acc = acc.add(&m.scale(s)).expect("same endpoints");
            }
        }
        acc
    }
}

/// `End_K(Θ)` with idempotents the projections onto indecomposable summands.
#[derive(Clone, Debug)]
pub struct EndAlgebra {
    pub summands: SummandAlgebra,
    pub minimized: Minimized,
    /// Inclusion and projection of each summand in the minimized complex.
    pub inclusions: Vec<ChainMap>,
    pub projections: Vec<ChainMap>,
}

impl EndAlgebra {
    pub fn algebra(&self) -> &Algebra {
        &self.summands.algebra
    }

    /// Element of `B` given by an endomorphism of the minimized complex.
    pub fn element_of(&self, f: &ChainMap) -> Result<Elem, TiltingError> {
        let m = self.inclusions.len();
        let mut x = self.algebra().zero_elem();
        for k in 0..m {
            for l in 0..m {
                let g = self.inclusions[l].then(f)?.then(&self.projections[k])?;
                let e = self.summands.element(k, l, &g).ok_or_else(|| TiltingError::Degenerate("not a chain map".into()))?;
                x = linalg::vec_add(&x, &e);
            }
        }
        Ok(x)
    }
}

/// `B = End_K(Θ)` with basis from homotopy classes between indecomposable summands.
pub fn end_algebra(theta: &ProjComplex) -> Result<EndAlgebra, TiltingError> {
    let minimized = minimize(theta)?;
    let dec = decompose(&minimized.complex)?;
    let mut summands = Vec::new();
    let mut inclusions = Vec::new();
    let mut projections = Vec::new();
    for s in &dec.summands {
        for (i, p) in s.inclusions.iter().zip(&s.projections) {
            summands.push(s.complex.clone());
            inclusions.push(i.clone());
            projections.push(p.clone());
        }
    }
    if summands.is_empty() {
        return Err(TiltingError::Degenerate("endomorphism algebra of a contractible complex".into()));
    }
    let summands = SummandAlgebra::new(summands)?;
    Ok(EndAlgebra { summands, minimized, inclusions, projections })
}
