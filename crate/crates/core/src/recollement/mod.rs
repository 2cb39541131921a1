//! Induction and restriction along an idempotent, recollement tilting
//! complexes and the comparison of `A/AeA` with `B/BfB`.

mod ext;
mod quotient;
#[cfg(test)]
mod tests;

use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, Corner, Elem};
use crate::complexes::{
    decompose, homotopy_hom, iso_test, minimal, sum_injection, sum_projection, ChainMap, ComplexError, PMat, ProjComplex,
};
use crate::tilting::{self, end_algebra, CompletionTrace, EndAlgebra, TiltingError, TiltingReport};

pub use ext::{aea_cokernel_check, ext_vanishing_check, minimal_resolution, AeaCheck, ExtTable, ResolutionStep};
pub use quotient::{
    basic_vertices, compare_algebras, find_isomorphism, fingerprint, is_isomorphism, quotient_compare, ComparisonLevel,
    Fingerprint, QuotientComparison,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RecollementError {
    #[error(transparent)]
    Tilting(#[from] TiltingError),
    #[error("vertex {0} is outside the idempotent subset")]
    OutsideSubset(usize),
    #[error("complex lives over a different algebra than the corner")]
    WrongAlgebra,
    #[error("{stage}: {reason}")]
    Pipeline { stage: &'static str, reason: String },
}

impl From<ComplexError> for RecollementError {
    fn from(e: ComplexError) -> RecollementError {
        RecollementError::Tilting(e.into())
    }
}

impl From<AlgebraError> for RecollementError {
    fn from(e: AlgebraError) -> RecollementError {
        RecollementError::Tilting(e.into())
    }
}

/// `eAe ⊂ A` for `e` a sum of distinguished idempotents.
#[derive(Clone, Debug)]
pub struct Idempotent {
    pub ambient: Arc<Algebra>,
    pub corner: Arc<Algebra>,
    embedding: Corner,
}

impl Idempotent {
    pub fn new(ambient: &Arc<Algebra>, subset: &[usize]) -> Result<Idempotent, RecollementError> {
        let embedding = ambient.corner(subset)?;
        let corner = Arc::new(embedding.algebra.clone());
        Ok(Idempotent { ambient: ambient.clone(), corner, embedding })
    }

    /// Vertices of `A` making up `e`, sorted.
    pub fn vertices(&self) -> &[usize] {
        &self.embedding.vertices
    }

    fn corner_vertex(&self, v: usize) -> Result<usize, RecollementError> {
        self.vertices().iter().position(|&x| x == v).ok_or(RecollementError::OutsideSubset(v))
    }
}

/// `j_!`: rereads `e_i(eAe)` as `e_i A` and corner entries as elements of `A`.
pub fn induce_up(q: &ProjComplex, e: &Idempotent) -> Result<ProjComplex, RecollementError> {
    if q.algebra() != &*e.corner {
        return Err(RecollementError::WrongAlgebra);
    }
    let a = &e.ambient;
    let map = |t: &[usize]| t.iter().map(|&k| e.vertices()[k]).collect::<Vec<_>>();
    let terms: Vec<Vec<usize>> = q.degrees().map(|d| map(q.term(d))).collect();
    let diffs: Vec<PMat> = q
        .degrees()
        .take(terms.len().saturating_sub(1))
        .map(|d| {
            let m = q.diff(d);
            let entries = (0..m.rows().len())
                .flat_map(|r| (0..m.cols().len()).map(move |c| (r, c)))
                .map(|(r, c)| e.embedding.embed(m.get(r, c), a))
                .collect();
            PMat::from_entries(&map(q.term(d + 1)), &map(q.term(d)), entries)
        })
        .collect();
    if q.is_zero() {
        return Ok(ProjComplex::zero(a.clone()));
    }
    Ok(ProjComplex::new(a.clone(), q.lo(), terms, diffs)?)
}

/// `j^*` on complexes in `K^b(add eA)`; the input is minimized first.
pub fn restrict(x: &ProjComplex, e: &Idempotent) -> Result<ProjComplex, RecollementError> {
    if x.algebra() != &*e.ambient {
        return Err(RecollementError::WrongAlgebra);
    }
    let m = minimal(x)?;
    restrict_exact(&m, e)
}

fn restrict_exact(m: &ProjComplex, e: &Idempotent) -> Result<ProjComplex, RecollementError> {
    if m.is_zero() {
        return Ok(ProjComplex::zero(e.corner.clone()));
    }
    let map = |t: &[usize]| t.iter().map(|&v| e.corner_vertex(v)).collect::<Result<Vec<_>, _>>();
    let terms: Vec<Vec<usize>> = m.degrees().map(|d| map(m.term(d))).collect::<Result<_, _>>()?;
    let mut diffs = Vec::new();
    for d in m.degrees().take(terms.len().saturating_sub(1)) {
        let p = m.diff(d);
        let mut entries = Vec::with_capacity(p.rows().len() * p.cols().len());
        for r in 0..p.rows().len() {
            for c in 0..p.cols().len() {
                entries.push(e.embedding.restrict(p.get(r, c)).ok_or_else(|| {
                    RecollementError::Pipeline { stage: "restrict", reason: "entry outside eAe".into() }
                })?);
            }
        }
        diffs.push(PMat::from_entries(&map(m.term(d + 1))?, &map(m.term(d))?, entries));
    }
    Ok(ProjComplex::new(e.corner.clone(), m.lo(), terms, diffs)?)
}

/// `P = P_1 ⊕ P_2` with `P_1` the sum of all summands in `K^b(add eA)`.
#[derive(Clone, Debug)]
pub struct RecollementCheck {
    /// The minimized complex rewritten as a strict direct sum, `P_1` summands first.
    pub split: ProjComplex,
    pub parts: Vec<ProjComplex>,
    /// Number of leading parts forming `P_1`.
    pub p1_len: usize,
    pub p1: ProjComplex,
    pub p2: ProjComplex,
    /// Every term of `P_1` lies in `add eA`.
    pub membership: bool,
    pub restricted: ProjComplex,
    pub restricted_report: Option<TiltingReport>,
    /// Strict projection onto `P_1` along `P_2`.
    pub f: ChainMap,
    pub f_idempotent: bool,
    pub end: EndAlgebra,
    /// `f` as an element of `End_K(P)`.
    pub f_elem: Elem,
    pub verdict: bool,
}

pub fn recollement_tilting_check(p: &ProjComplex, e: &Idempotent) -> Result<RecollementCheck, RecollementError> {
    let a = p.algebra_arc().clone();
    let m = minimal(p)?;
    let dec = decompose(&m)?;
    let mut first = Vec::new();
    let mut rest = Vec::new();
    for s in &dec.summands {
        let inside = s.complex.degrees().all(|d| s.complex.term(d).iter().all(|v| e.vertices().contains(v)));
        for _ in 0..s.multiplicity {
            if inside { first.push(s.complex.clone()) } else { rest.push(s.complex.clone()) }
        }
    }
    let p1_len = first.len();
    let p1 = ProjComplex::sum_all(a.clone(), &first)?;
    let p2 = ProjComplex::sum_all(a.clone(), &rest)?;
    let mut parts = first;
    parts.extend(rest);
    let split = ProjComplex::sum_all(a.clone(), &parts)?;
    let mut f = ChainMap::zero(&split, &split);
    for j in 0..p1_len {
        let pr = sum_projection(&parts, j)?;
        let inj = sum_injection(&parts, j)?;
        f = f.add(&pr.then(&inj)?)?;
    }
    let ff = f.then(&f)?;
    let f_idempotent = (split.lo()..=split.hi()).all(|d| ff.comp(d) == f.comp(d));
    let membership = p1.degrees().all(|d| p1.term(d).iter().all(|v| e.vertices().contains(v)));
    let restricted = restrict_exact(&p1, e)?;
    let restricted_report = if restricted.is_zero() {
        None
    } else {
        Some(tilting::verify_tilting(&restricted, None)?)
    };
    let end = end_algebra(&split)?;
    let moved = end.minimized.from.then(&f)?.then(&end.minimized.to)?;
    let f_elem = end.element_of(&moved)?;
    let b = end.algebra();
    let verdict = membership
        && f_idempotent
        && b.mul(&f_elem, &f_elem) == f_elem
        && restricted_report.as_ref().is_some_and(|r| r.verdict);
    Ok(RecollementCheck {
        split,
        parts,
        p1_len,
        p1,
        p2,
        membership,
        restricted,
        restricted_report,
        f,
        f_idempotent,
        end,
        f_elem,
        verdict,
    })
}

/// Output of the completion pipeline for an idempotent.
#[derive(Clone, Debug)]
pub struct PipelineResult {
    pub p: ProjComplex,
    pub trace: CompletionTrace,
    pub n: usize,
    pub theta: ProjComplex,
    pub report: TiltingReport,
    pub end: EndAlgebra,
    /// Idempotents of `B` belonging to the summand `P[n+s−r]`.
    pub f: Vec<usize>,
    pub check: RecollementCheck,
    pub comparison: QuotientComparison,
}

fn fail(stage: &'static str, reason: impl Into<String>) -> RecollementError {
    RecollementError::Pipeline { stage, reason: reason.into() }
}

/// Induces `Q` up, completes it to `Θ_n`, and compares `A/AeA` with `B/BfB`.
pub fn pipeline(e: &Idempotent, q: &ProjComplex, n: Option<usize>) -> Result<PipelineResult, RecollementError> {
    let a = e.ambient.clone();
    if !a.symmetrizing_form()?.is_symmetric() {
        return Err(fail("input", "algebra is not symmetric"));
    }
    let q_report = tilting::verify_tilting(q, None)?;
    if !q_report.verdict {
        return Err(fail("input", "Q is not a tilting complex over eAe"));
    }
    let p = induce_up(q, e)?;
    for k in crate::complexes::hom_window(q, q) {
        if homotopy_hom(q, q, k)?.dim() != homotopy_hom(&p, &p, k)?.dim() {
            return Err(fail("induction", format!("Hom in degree {k} changed")));
        }
    }
    if !tilting::is_partial_tilting(&p)?.verdict {
        return Err(fail("induction", "induced complex is not partial tilting"));
    }
    let mut trace = CompletionTrace::start(&p)?;
    let n = n.unwrap_or(trace.r);
    if n < trace.r {
        return Err(fail("input", format!("n = {n} is below r = {}", trace.r)));
    }
    trace.extend_to(n)?;
    let theta = trace.theta(n);
    let report = tilting::verify_tilting(&theta, Some(&trace))?;
    if !report.verdict {
        return Err(fail("completion", "Θ_n is not tilting"));
    }
    let types: Vec<ProjComplex> = decompose(&minimal(&theta)?)?.summands.into_iter().map(|s| s.complex).collect();
    let basic = ProjComplex::sum_all(a.clone(), &types)?;
    let end = end_algebra(&basic)?;
    let p_types: Vec<ProjComplex> =
        decompose(&minimal(&trace.p_part(n))?)?.summands.into_iter().map(|s| s.complex).collect();
    let mut f = Vec::new();
    for (k, t) in end.summands.summands.iter().enumerate() {
        for u in &p_types {
            if iso_test(t, u)? {
                f.push(k);
                break;
            }
        }
    }
    let check = recollement_tilting_check(&theta, e)?;
    let comparison = quotient_compare(&a, e.vertices(), end.algebra(), &f)?;
    if comparison.level == ComparisonLevel::Mismatch {
        return Err(fail("comparison", format!("dim A/AeA = {} but dim B/BfB = {}", comparison.dims.0, comparison.dims.1)));
    }
    Ok(PipelineResult { p, trace, n, theta, report, end, f, check, comparison })
}
