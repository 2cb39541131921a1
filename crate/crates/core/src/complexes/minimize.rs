//! Reduction to minimal complexes by Gaussian elimination.

use super::{ChainMap, ComplexError, PMat, ProjComplex};

/// A minimal complex `M` with homotopy equivalences `to: X → M` and `from: M → X`.
#[derive(Clone, Debug)]
pub struct Minimized {
    pub complex: ProjComplex,
    pub to: ChainMap,
    pub from: ChainMap,
}

/// Differential entry `(degree, row, col)` with equal vertex types and a unit residue.
fn find_unit(x: &ProjComplex) -> Option<(i32, usize, usize)> {
    let alg = x.algebra();
    for p in x.degrees() {
        let d = x.diff(p);
        for (r, &tr) in d.rows().iter().enumerate() {
            for (c, &tc) in d.cols().iter().enumerate() {
                if tr == tc && !alg.residue(tr, d.get(r, c)).is_zero() {
                    return Some((p, r, c));
                }
            }
        }
    }
    None
}

struct Step {
    complex: ProjComplex,
    iota: ChainMap,
    pi: ChainMap,
}

/// Splits off the contractible summand `e_t A --x--> e_t A` at `(p, r, c)`.
fn eliminate(x: &ProjComplex, p: i32, r: usize, c: usize, with_maps: bool) -> Step {
    let alg = x.algebra_arc().clone();
    let d = x.diff(p);
    let all_rows: Vec<usize> = (0..d.rows().len()).collect();
    let b_idx: Vec<usize> = (0..d.cols().len()).filter(|&i| i != c).collect();
    let d_idx: Vec<usize> = all_rows.iter().copied().filter(|&i| i != r).collect();
    let piv = d.select(&[r], &[c]);
    let xinv = piv.inverse(&alg).expect("unit residue gives an invertible entry");
    let beta = d.select(&[r], &b_idx);
    let gamma = d.select(&d_idx, &[c]);
    let delta = d.select(&d_idx, &b_idx);
    let xinv_beta = xinv.compose(&alg, &beta);
    let gamma_xinv = gamma.compose(&alg, &xinv);
    let new_dp = delta.sub(&gamma.compose(&alg, &xinv_beta));

    let (lo, hi) = (x.lo(), x.hi());
    let mut terms = Vec::new();
    let mut diffs = Vec::new();
    for q in lo..=hi {
        let t = x.term(q);
        terms.push(if q == p {
            b_idx.iter().map(|&i| t[i]).collect()
        } else if q == p + 1 {
            d_idx.iter().map(|&i| t[i]).collect()
        } else {
            t.to_vec()
        });
    }
    for q in lo..hi {
        let dq = x.diff(q);
        let all_c: Vec<usize> = (0..dq.cols().len()).collect();
        let all_r: Vec<usize> = (0..dq.rows().len()).collect();
        diffs.push(if q == p {
            new_dp.clone()
        } else if q == p - 1 {
            dq.select(&b_idx, &all_c)
        } else if q == p + 1 {
            dq.select(&all_r, &d_idx)
        } else {
            dq
        });
    }
    let m = ProjComplex::new_unchecked(alg.clone(), lo, terms, diffs);
    if !with_maps {
        return Step { iota: ChainMap::zero(&m, &m), pi: ChainMap::zero(&m, &m), complex: m };
    }
    let iota = ChainMap::from_fn(&m, x, |q| {
        let id = PMat::identity(&alg, x.term(q));
        let rows: Vec<usize> = (0..x.term(q).len()).collect();
        if q == p {
            let mut e = id.select(&rows, &b_idx);
            for j in 0..b_idx.len() {
                let v = xinv_beta.get(0, j).iter().map(|s| -s).collect();
                e.set(c, j, v);
            }
            e
        } else if q == p + 1 {
            id.select(&rows, &d_idx)
        } else {
            id
        }
    });
    let pi = ChainMap::from_fn(x, &m, |q| {
        let id = PMat::identity(&alg, x.term(q));
        let cols: Vec<usize> = (0..x.term(q).len()).collect();
        if q == p {
            id.select(&b_idx, &cols)
        } else if q == p + 1 {
            let mut e = id.select(&d_idx, &cols);
            for i in 0..d_idx.len() {
                let v = gamma_xinv.get(i, 0).iter().map(|s| -s).collect();
                e.set(i, r, v);
            }
            e
        } else {
            id
        }
    });
    Step { complex: m, iota, pi }
}

/// Removes contractible summands until every differential entry is radical.
pub fn minimize(x: &ProjComplex) -> Result<Minimized, ComplexError> {
    x.algebra().residue_characters()?;
    let mut cur = x.clone();
    let mut to = ChainMap::identity(x);
    let mut from = ChainMap::identity(x);
    while let Some((p, r, c)) = find_unit(&cur) {
        let step = eliminate(&cur, p, r, c, true);
        to = to.then(&step.pi)?;
        from = step.iota.then(&from)?;
        cur = step.complex;
    }
    Ok(Minimized { complex: cur, to, from })
}

/// The minimal complex alone.
pub fn minimal(x: &ProjComplex) -> Result<ProjComplex, ComplexError> {
    x.algebra().residue_characters()?;
    let mut cur = x.clone();
    while let Some((p, r, c)) = find_unit(&cur) {
        cur = eliminate(&cur, p, r, c, false).complex;
    }
    Ok(cur)
}

/// Whether every differential entry is radical.
pub fn is_minimal(x: &ProjComplex) -> bool {
    find_unit(x).is_none()
}
