//! Partial tilting complexes and their completion to tilting complexes.
//!
//! Complexes are normalized to top degree 0 before completion, so `s = 0`
//! internally and `r + 1` is the number of nonzero degrees of the minimized
//! input. The shift of `P` inside `Θ_n` is the same either way.

mod completion;
mod endalg;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::complexes::{decompose, homotopy_hom, hom_window, iso_test, minimal, ComplexError, ProjComplex};
use crate::field::Field;
use crate::linalg;

pub use completion::{complete, delta_step, induces_cohomology_iso, CompletionTrace, Stage};
pub use endalg::{end_algebra, EndAlgebra, SummandAlgebra};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TiltingError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("the complex is contractible")]
    Contractible,
    #[error("the complex is not partial tilting")]
    NotPartialTilting,
    #[error("the algebra admits no symmetrizing form")]
    NotSymmetric,
    #[error("length {0} exceeds 2")]
    TooLong(usize),
    #[error("{0}")]
    Degenerate(String),
    #[error("internal check failed: {0}")]
    Invariant(String),
}

impl From<AlgebraError> for TiltingError {
    fn from(e: AlgebraError) -> TiltingError {
        TiltingError::Complex(e.into())
    }
}

/// `dim Hom_K(X, X[n])` over the window where it can be nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialTiltingCert {
    pub complex: ProjComplex,
    pub table: Vec<(i32, usize)>,
    pub verdict: bool,
}

impl PartialTiltingCert {
    pub fn dim_at(&self, n: i32) -> usize {
        self.table.iter().find(|(m, _)| *m == n).map_or(0, |(_, d)| *d)
    }
}

/// Self-extension table of `X`.
pub fn is_partial_tilting(x: &ProjComplex) -> Result<PartialTiltingCert, TiltingError> {
    let table: Vec<(i32, usize)> =
        hom_window(x, x).map(|n| Ok((n, homotopy_hom(x, x, n)?.dim()))).collect::<Result<_, ComplexError>>()?;
    let verdict = table.iter().all(|&(n, d)| n == 0 || d == 0);
    Ok(PartialTiltingCert { complex: x.clone(), table, verdict })
}

/// `l(X)`: span of the cohomology, 0 for acyclic complexes.
pub fn complex_length(x: &ProjComplex) -> Result<usize, TiltingError> {
    let m = minimal(x)?;
    let supp = m.cohomology_support();
    Ok(match (supp.first(), supp.last()) {
        (Some(a), Some(b)) => (b - a + 1) as usize,
        _ => 0,
    })
}

/// `n(X)`: number of indecomposable types in `minimize(X)`.
pub fn count_indec_types(x: &ProjComplex) -> Result<usize, TiltingError> {
    Ok(decompose(&minimal(x)?)?.num_types())
}

/// Why `Θ` generates `K^b(proj A)`, or why it cannot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generation {
    /// Triangles `P_n[−m] → Δ_{n−1} → Δ_n` from `Δ_0 = A` with `Δ_n` and `P` summands of `Θ`.
    Ladder { stages: usize },
    /// Every `e_i A` is a shifted summand of `Θ`.
    Projectives,
    /// A tilting completion of `Θ` has only shifted summands of `Θ` as summands.
    Completion { stages: usize },
    /// The summand classes do not span `K_0`.
    Obstruction { class_rank: usize },
    /// Necessary conditions only.
    Heuristic { types_match: bool, class_rank: usize },
}

impl Generation {
    pub fn is_witness(&self) -> bool {
        matches!(self, Generation::Ladder { .. } | Generation::Projectives | Generation::Completion { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Generation::Ladder { .. } => "witness: completion ladder",
            Generation::Projectives => "witness: contains all projectives",
            Generation::Completion { .. } => "witness: completion summands",
            Generation::Obstruction { .. } => "obstruction: Grothendieck classes",
            Generation::Heuristic { .. } => "heuristic",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TiltingReport {
    pub vanishing: PartialTiltingCert,
    pub generation: Generation,
    pub types: usize,
    pub algebra_types: usize,
    pub verdict: bool,
}

/// Class of `X` in `K_0(K^b(proj A)) = Z^{n(A)}`.
pub fn grothendieck_class(x: &ProjComplex) -> Vec<i64> {
    let mut v = vec![0i64; x.algebra().num_idems()];
    for d in x.degrees() {
        let sign = if d.rem_euclid(2) == 0 { 1 } else { -1 };
        for &t in x.term(d) {
            v[t] += sign;
        }
    }
    v
}

fn class_rank(summands: &[ProjComplex]) -> usize {
    let n = summands.first().map_or(0, |s| s.algebra().num_idems());
    let field = Field::Rational;
    let vecs: Vec<Vec<_>> =
        summands.iter().map(|s| grothendieck_class(s).into_iter().map(|c| field.int(c)).collect()).collect();
    linalg::rank_of(field, n, &vecs)
}

/// Some shift of `x` is isomorphic to one of `ys`.
fn is_shift_of_any(x: &ProjComplex, ys: &[ProjComplex]) -> Result<bool, TiltingError> {
    for y in ys {
        if y.width() != x.width() || y.num_summands() != x.num_summands() {
            continue;
        }
        let y0 = y.shift(y.lo() - x.lo());
        if iso_test(x, &y0)? {
            return Ok(true);
        }
    }
    Ok(false)
}

fn summand_types(x: &ProjComplex) -> Result<Vec<ProjComplex>, TiltingError> {
    Ok(decompose(&minimal(x)?)?.summands.into_iter().map(|s| s.complex).collect())
}

fn trace_matches(theta: &ProjComplex, trace: &CompletionTrace) -> Result<Option<usize>, TiltingError> {
    for n in 0..=trace.len() {
        if iso_test(&minimal(theta)?, &minimal(&trace.theta(n))?)? {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// Self-Hom vanishing plus a generation witness.
pub fn verify_tilting(theta: &ProjComplex, trace: Option<&CompletionTrace>) -> Result<TiltingReport, TiltingError> {
    let vanishing = is_partial_tilting(theta)?;
    let alg = theta.algebra();
    let algebra_types = alg.num_idems();
    let types = summand_types(theta)?;
    let n_types = types.len();
    let generation = generation(theta, &types, &vanishing, trace)?;
    let verdict = vanishing.verdict && generation.is_witness();
    Ok(TiltingReport { vanishing, generation, types: n_types, algebra_types, verdict })
}

fn generation(
    theta: &ProjComplex,
    types: &[ProjComplex],
    vanishing: &PartialTiltingCert,
    trace: Option<&CompletionTrace>,
) -> Result<Generation, TiltingError> {
    let alg = theta.algebra();
    if let Some(t) = trace {
        if let Some(n) = trace_matches(theta, t)? {
            return Ok(Generation::Ladder { stages: n });
        }
    }
    let arc = theta.algebra_arc().clone();
    let projectives: Vec<ProjComplex> = (0..alg.num_idems()).map(|i| ProjComplex::stalk(arc.clone(), 0, &[i])).collect();
    let mut all = true;
    for p in &projectives {
        if !is_shift_of_any(p, types)? {
            all = false;
            break;
        }
    }
    if all {
        return Ok(Generation::Projectives);
    }
    let rank = class_rank(types);
    if rank < alg.num_idems() {
        return Ok(Generation::Obstruction { class_rank: rank });
    }
    if vanishing.verdict && alg.symmetrizing_form()?.is_symmetric() {
        let stages = (theta.width().max(1) - 1).max(1);
        let (t, completed) = complete(theta, stages)?;
        let inner = verify_tilting(&completed, Some(&t))?;
        if inner.verdict {
            let mut covered = true;
            for x in summand_types(&completed)? {
                if !is_shift_of_any(&x, types)? {
                    covered = false;
                    break;
                }
            }
            if covered {
                return Ok(Generation::Completion { stages });
            }
        }
    }
    Ok(Generation::Heuristic { types_match: types.len() == alg.num_idems(), class_rank: rank })
}

fn require_symmetric(p: &ProjComplex) -> Result<(), TiltingError> {
    if p.algebra().symmetrizing_form()?.is_symmetric() {
        Ok(())
    } else {
        Err(TiltingError::NotSymmetric)
    }
}

/// `Θ_r` is tilting iff `H^i(Δ_r) = 0` for all `i > 0`, over a symmetric algebra.
pub fn tilting_criterion_symmetric(p: &ProjComplex) -> Result<bool, TiltingError> {
    require_symmetric(p)?;
    if !is_partial_tilting(p)?.verdict {
        return Err(TiltingError::NotPartialTilting);
    }
    let mut trace = CompletionTrace::start(p)?;
    let r = trace.r;
    trace.extend_to(r)?;
    let delta = trace.delta(r);
    Ok(delta.degrees().filter(|&d| d > 0).all(|d| delta.cohomology_dim(d) == 0))
}

/// `Θ_1` of a partial tilting complex of length at most 2 over a symmetric algebra.
pub fn bongartz_extend_length2(p: &ProjComplex) -> Result<(CompletionTrace, ProjComplex), TiltingError> {
    require_symmetric(p)?;
    if !is_partial_tilting(p)?.verdict {
        return Err(TiltingError::NotPartialTilting);
    }
    let len = minimal(p)?.width();
    if len > 2 {
        return Err(TiltingError::TooLong(len));
    }
    let (trace, theta) = complete(p, 1)?;
    let report = verify_tilting(&theta, Some(&trace))?;
    if !report.verdict {
        return Err(TiltingError::Invariant("completion of a length-2 partial tilting complex is not tilting".into()));
    }
    Ok((trace, theta))
}

/// `H^{r−n+i}(Δ_n) → H^{r−n+i}(Δ_{n+j})` is an isomorphism for all `i > 0` and computed `j`.
pub fn check_stability(trace: &CompletionTrace) -> Result<bool, TiltingError> {
    let r = trace.r as i32;
    for n in 0..=trace.len() {
        let mut map = crate::complexes::ChainMap::identity(trace.delta(n));
        for j in n..trace.len() {
            map = map.then(&trace.stages[j].h)?;
            let (x, y) = (map.source(), map.target());
            let top = x.hi().max(y.hi());
            for d in (r - n as i32 + 1)..=top {
                if !induces_cohomology_iso(&map, d) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// For `n ≥ r`: `Hom_K(P, Δ_n[i]) = 0` whenever `i ≠ r − n`.
pub fn check_vanishing(trace: &CompletionTrace) -> Result<bool, TiltingError> {
    let r = trace.r;
    for n in r..=trace.len() {
        let delta = trace.delta(n);
        for i in hom_window(&trace.p, delta) {
            if i != r as i32 - n as i32 && homotopy_hom(&trace.p, delta, i)?.dim() != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
