//! The completion iteration `Θ_n = Δ_n ⊕ P[n+s−r]`.

use std::sync::Arc;

use crate::algebra::{Algebra, ModuleRep};
use crate::complexes::{cone, decompose, from_sum, homotopy_hom, minimize, ChainMap, HomotopyHomSpace, ProjComplex};
use crate::field::Scalar;
use crate::linalg::{self, Mat};

use super::endalg::SummandAlgebra;
use super::TiltingError;

/// One step `P_n[−m] → Δ_{n−1} → Δ_n →`.
#[derive(Clone, Debug)]
pub struct Stage {
    pub n: usize,
    /// `m = r − n + 1`, the degree of `V_n = Hom_K(P, Δ_{n−1}[m])`.
    pub degree: i32,
    pub v_dim: usize,
    /// Multiplicity of each summand type of `P` in the cover `P_n`.
    pub top_dims: Vec<usize>,
    /// Summand type of each summand of `P_n`, in order.
    pub cover_types: Vec<usize>,
    pub cover: ProjComplex,
    /// `g_n : P_n[−m] → Δ_{n−1}`.
    pub g: ChainMap,
    /// Minimized cone of `g_n`.
    pub delta: ProjComplex,
    /// `Δ_{n−1} → Δ_n`.
    pub h: ChainMap,
}

/// Everything computed while completing `P`.
#[derive(Clone, Debug)]
pub struct CompletionTrace {
    /// Top degree `s` of the minimized input.
    pub s: i32,
    /// Length of the normalized complex minus one.
    pub r: usize,
    /// Minimized `P` shifted to top degree 0.
    pub p: ProjComplex,
    /// Indecomposable summand types of `P` with their multiplicities.
    pub types: Vec<ProjComplex>,
    pub multiplicities: Vec<usize>,
    /// `End_K` of the basic version of `P`.
    pub b0: SummandAlgebra,
    pub delta0: ProjComplex,
    pub stages: Vec<Stage>,
}

impl CompletionTrace {
    /// Normalizes `P` and sets `Δ_0 = A`.
    pub fn start(p: &ProjComplex) -> Result<CompletionTrace, TiltingError> {
        let m = minimize(p)?.complex;
        if m.is_zero() {
            return Err(TiltingError::Contractible);
        }
        let s = m.hi();
        let p = m.shift(s);
        let r = p.width() - 1;
        let dec = decompose(&p)?;
        let types: Vec<ProjComplex> = dec.summands.iter().map(|x| x.complex.clone()).collect();
        let multiplicities = dec.summands.iter().map(|x| x.multiplicity).collect();
        let b0 = SummandAlgebra::new(types.clone())?;
        let delta0 = ProjComplex::regular(p.algebra_arc().clone());
        Ok(CompletionTrace { s, r, p, types, multiplicities, b0, delta0, stages: Vec::new() })
    }

    pub fn algebra(&self) -> &Algebra {
        self.p.algebra()
    }

    /// Number of stages computed.
    pub fn len(&self) -> usize {
        self.stages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stages.is_empty()
    }

    /// `Δ_n` for `n ≤ len()`.
    pub fn delta(&self, n: usize) -> &ProjComplex {
        if n == 0 {
            &self.delta0
        } else {
            &self.stages[n - 1].delta
        }
    }

    /// The shifted copy of `P` in `Θ_n`.
    pub fn p_part(&self, n: usize) -> ProjComplex {
        self.p.shift(n as i32 - self.r as i32)
    }

    /// `Θ_n = Δ_n ⊕ P[n+s−r]`.
    pub fn theta(&self, n: usize) -> ProjComplex {
        self.delta(n).direct_sum(&self.p_part(n)).expect("same algebra")
    }

    /// Runs stages until `n` have been computed.
    pub fn extend_to(&mut self, n: usize) -> Result<(), TiltingError> {
        while self.stages.len() < n {
            delta_step(self)?;
        }
        Ok(())
    }
}

/// `V = ⊕_k Hom_K(X_k, Δ[m])` as a right module over `End_K(⊕ X_k)`.
struct HomModule {
    spaces: Vec<HomotopyHomSpace>,
    offsets: Vec<usize>,
    module: ModuleRep,
}

impl HomModule {
    fn new(b0: &SummandAlgebra, delta: &ProjComplex, m: i32) -> Result<HomModule, TiltingError> {
        let field = b0.algebra.field();
        let spaces: Vec<HomotopyHomSpace> =
            b0.summands.iter().map(|x| homotopy_hom(x, delta, m)).collect::<Result<_, _>>()?;
        let mut offsets = Vec::with_capacity(spaces.len());
        let mut dim = 0;
        for s in &spaces {
            offsets.push(dim);
            dim += s.dim();
        }
        let k = spaces.len();
        let mut action = vec![Mat::zeros(field, dim, dim); b0.algebra.dim()];
        for src in 0..k {
            for tgt in 0..k {
                // b : X_tgt → X_src sends W_src to W_tgt by v ↦ v∘b.
                let basis = b0.block_basis(src, tgt);
                let idx = b0.block_indices(src, tgt);
                for (b, &bi) in basis.iter().zip(&idx) {
                    for (j, v) in spaces[src].basis().iter().enumerate() {
                        let w = b.then(v)?;
                        let c = spaces[tgt].coords(&w).ok_or_else(|| TiltingError::Invariant("composite is not a chain map".into()))?;
                        for (i, x) in c.into_iter().enumerate() {
                            action[bi].set(offsets[tgt] + i, offsets[src] + j, x);
                        }
                    }
                }
            }
        }
        let module = ModuleRep::new(&b0.algebra, dim, action)?;
        Ok(HomModule { spaces, offsets, module })
    }

    /// The map `X_k → Δ[m]` with the given coordinates in `V`.
    fn map_of(&self, k: usize, v: &[Scalar]) -> ChainMap {
        let s = &self.spaces[k];
        let start = self.offsets[k];
        let mut acc = ChainMap::zero(s.source(), s.target());
        for (j, b) in s.basis().iter().enumerate() {
            let c = &v[start + j];
            if !c.is_zero() {
                acc = acc.add(&b.scale(c)).expect("same endpoints");
            }
        }
        acc
    }
}

/// Checks that `⊕_j e_{k_j} B0 → V, b ↦ gen_j·b` is onto with kernel in the radical.
fn check_cover(b0: &SummandAlgebra, v: &ModuleRep, gens: &[(usize, Vec<Scalar>)]) -> Result<(), TiltingError> {
    let alg = &b0.algebra;
    let field = alg.field();
    let mut cols = Vec::new();
    let mut owners = Vec::new();
    for (j, (k, g)) in gens.iter().enumerate() {
        for b in alg.row_indices(*k) {
            cols.push(v.act(g, &alg.basis_elem(b)));
            owners.push((j, b));
        }
    }
    let f = Mat::from_cols(field, v.dim(), &cols);
    if f.rank() != v.dim() {
        return Err(TiltingError::Invariant("generators do not span V".into()));
    }
    for z in f.nullspace() {
        for (j, (k, _)) in gens.iter().enumerate() {
            let mut part = alg.zero_elem();
            for (c, &(owner, b)) in owners.iter().enumerate() {
                if owner == j {
                    part[b] = z[c].clone();
                }
            }
            if !alg.residue(*k, &part).is_zero() {
                return Err(TiltingError::Invariant("cover is not minimal".into()));
            }
        }
    }
    Ok(())
}

/// Computes the next stage of the completion.
pub fn delta_step(trace: &mut CompletionTrace) -> Result<(), TiltingError> {
    let n = trace.stages.len() + 1;
    let m = trace.r as i32 - n as i32 + 1;
    let prev = trace.delta(n - 1).clone();
    let alg: Arc<Algebra> = trace.p.algebra_arc().clone();
    let hm = HomModule::new(&trace.b0, &prev, m)?;
    let stage = if hm.module.dim() == 0 {
        let zero = ProjComplex::zero(alg.clone());
        Stage {
            n,
            degree: m,
            v_dim: 0,
            top_dims: vec![0; trace.types.len()],
            cover_types: Vec::new(),
            g: ChainMap::zero(&zero, &prev),
            cover: zero,
            h: ChainMap::identity(&prev),
            delta: prev,
        }
    } else {
        let top = trace.b0.algebra.top_and_min_generators(&hm.module)?;
        check_cover(&trace.b0, &hm.module, &top.generators)?;
        let maps: Vec<ChainMap> = top.generators.iter().map(|(k, v)| hm.map_of(*k, v)).collect();
        let cover_types: Vec<usize> = top.generators.iter().map(|(k, _)| *k).collect();
        let target = prev.shift(m);
        let g_prime = from_sum(&maps, &target)?;
        let cover = g_prime.source().clone();
        let g = g_prime.shift(-m).retarget(&cover.shift(-m), &prev)?;
        let c = cone(&g);
        let red = minimize(&c.complex)?;
        let h = c.inclusion.then(&red.to)?;
        if !homotopy_hom(g.source(), &red.complex, 0)?.is_null(&g.then(&h)?) {
            return Err(TiltingError::Invariant(format!("stage {n}: composite of triangle maps is not null-homotopic")));
        }
        Stage {
            n,
            degree: m,
            v_dim: hm.module.dim(),
            top_dims: top.top_dims,
            cover_types,
            cover,
            g,
            delta: red.complex,
            h,
        }
    };
    trace.stages.push(stage);
    Ok(())
}

/// Runs `n` stages from `Δ_0 = A` and returns the trace with `Θ_n`.
pub fn complete(p: &ProjComplex, n: usize) -> Result<(CompletionTrace, ProjComplex), TiltingError> {
    let mut trace = CompletionTrace::start(p)?;
    trace.extend_to(n)?;
    let theta = trace.theta(n);
    Ok((trace, theta))
}

/// The map `H^d(X) → H^d(Y)` induced by `f` is an isomorphism.
pub fn induces_cohomology_iso(f: &ChainMap, d: i32) -> bool {
    let (x, y) = (f.source(), f.target());
    if x.cohomology_dim(d) != y.cohomology_dim(d) {
        return false;
    }
    if y.cohomology_dim(d) == 0 {
        return true;
    }
    let alg = x.algebra();
    let field = alg.field();
    let zx = x.linear_diff(d).nullspace();
    let fz: Vec<Vec<Scalar>> = if zx.is_empty() {
        Vec::new()
    } else {
        let fd = f.comp(d).linear_map(alg);
        zx.iter().map(|z| fd.mul_vec(z).expect("shape")).collect()
    };
    let by = y.linear_diff(d - 1).image_basis();
    let zy = y.linear_diff(d).nullspace();
    let len = zy.first().map_or(0, Vec::len);
    let mut all = by;
    all.extend(fz);
    linalg::rank_of(field, len, &all) == zy.len()
}
