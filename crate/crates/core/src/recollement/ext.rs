//! `H^0(Δ_A(e)) ≅ A/AeA` and `Ext^i_A(A/AeA, eA)`.

use crate::algebra::{Algebra, AlgebraError, ModuleRep};
use crate::field::Scalar;
use crate::linalg::{self, Echelon, Mat};

/// Image of `Ae ⊗ eA → A` against the ideal `AeA`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AeaCheck {
    pub image_dim: usize,
    pub ideal_dim: usize,
    pub quotient_dim: usize,
    pub ok: bool,
}

/// Compares the span of products `x y` (`x ∈ Ae`, `y ∈ eA`) with the closure-computed `AeA`.
pub fn aea_cokernel_check(alg: &Algebra, subset: &[usize]) -> Result<AeaCheck, AlgebraError> {
    let field = alg.field();
    let n = alg.dim();
    let ideal = alg.idempotent_ideal(subset)?;
    let left: Vec<usize> = (0..n).filter(|&b| subset.contains(&alg.peirce_of(b).1)).collect();
    let right: Vec<usize> = (0..n).filter(|&b| subset.contains(&alg.peirce_of(b).0)).collect();
    let mut img = Echelon::new(field, n);
    for &x in &left {
        for &y in &right {
            img.insert(&alg.mul(&alg.basis_elem(x), &alg.basis_elem(y)));
        }
    }
    let mut both = Echelon::new(field, n);
    for v in img.basis().iter().chain(&ideal) {
        both.insert(v);
    }
    let ok = both.dim() == img.dim() && img.dim() == ideal.len();
    Ok(AeaCheck { image_dim: img.dim(), ideal_dim: ideal.len(), quotient_dim: n - ideal.len(), ok })
}

/// One step `P_k → P_{k−1}` of a minimal projective resolution.
#[derive(Clone, Debug)]
pub struct ResolutionStep {
    pub vertices: Vec<usize>,
    pub module: ModuleRep,
    /// The map `P_k → P_{k−1}` (for `k = 0`, onto the resolved module).
    pub map: Mat,
}

/// Minimal projective resolution `P_len → ... → P_0 → M`.
pub fn minimal_resolution(alg: &Algebra, m: &ModuleRep, len: usize) -> Result<Vec<ResolutionStep>, AlgebraError> {
    let field = alg.field();
    let mut steps = Vec::new();
    // current module with its inclusion into the previous projective
    let mut cur = m.clone();
    let mut incl = Mat::identity(field, m.dim());
    for _ in 0..=len {
        let top = alg.top_and_min_generators(&cur)?;
        let vertices: Vec<usize> = top.generators.iter().map(|(i, _)| *i).collect();
        let p = ModuleRep::projective_sum(alg, &vertices);
        let mut cols = Vec::with_capacity(p.dim());
        for (i, g) in &top.generators {
            for b in alg.row_indices(*i) {
                cols.push(cur.act(g, &alg.basis_elem(b)));
            }
        }
        let onto = Mat::from_cols(field, cur.dim(), &cols);
        let map = if cur.dim() == 0 { Mat::zeros(field, incl.rows(), p.dim()) } else { incl.mul(&onto)? };
        let kernel = if p.dim() == 0 { Vec::new() } else { onto.nullspace() };
        steps.push(ResolutionStep { vertices, module: p.clone(), map });
        cur = p.restrict(&kernel);
        incl = Mat::from_cols(field, p.dim(), &kernel);
    }
    Ok(steps)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtTable {
    /// `dims[i] = dim Ext^i_A(A/AeA, eA)` for `0 ≤ i ≤ n`.
    pub dims: Vec<usize>,
    /// Largest `m ≤ n + 1` with `Ext^i = 0` for all `i < m`.
    pub vanishing_up_to: usize,
}

fn flatten(m: &Mat) -> Vec<Scalar> {
    m.entries().to_vec()
}

/// `Ext^i_A(A/AeA, eA)` for `0 ≤ i ≤ n` from a minimal projective resolution.
pub fn ext_vanishing_check(alg: &Algebra, subset: &[usize], n: usize) -> Result<ExtTable, AlgebraError> {
    let field = alg.field();
    let ideal = alg.idempotent_ideal(subset)?;
    let (quot, _) = ModuleRep::regular(alg).quotient(&ideal);
    let mut ea: Vec<usize> = subset.to_vec();
    ea.sort_unstable();
    ea.dedup();
    let target = ModuleRep::projective_sum(alg, &ea);
    let res = minimal_resolution(alg, &quot, n + 1)?;
    let homs: Vec<Vec<Mat>> = res
        .iter()
        .map(|s| if s.module.dim() == 0 || target.dim() == 0 { Ok(Vec::new()) } else { alg.hom_module(&s.module, &target) })
        .collect::<Result<_, _>>()?;
    // rank of Hom(P_k, N) → Hom(P_{k+1}, N), φ ↦ φ ∂_{k+1}
    let rank = |k: usize| -> usize {
        let d = &res[k + 1].map;
        let imgs: Vec<Vec<Scalar>> = homs[k].iter().map(|phi| flatten(&phi.mul(d).expect("shape"))).collect();
        let len = target.dim() * res[k + 1].module.dim();
        if len == 0 { 0 } else { linalg::rank_of(field, len, &imgs) }
    };
    let mut dims = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let out = rank(i);
        let inc = if i == 0 { 0 } else { rank(i - 1) };
        dims.push(homs[i].len() - out - inc);
    }
    let vanishing_up_to = dims.iter().position(|&d| d != 0).unwrap_or(n + 1);
    Ok(ExtTable { dims, vanishing_up_to })
}
