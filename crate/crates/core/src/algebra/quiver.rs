//! Path algebras of quivers modulo admissible ideals.

use std::collections::HashMap;

use super::{Algebra, AlgebraError, Elem, Session};
use crate::field::{Field, Scalar};
use crate::linalg::{self, Mat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

/// A path read left to right: first `arrows[0]`, then `arrows[1]`, ...
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub start: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Path {
        Path { start: v, arrows: vec![] }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn end(&self, arrows: &[Arrow]) -> usize {
        self.arrows.last().map_or(self.start, |&a| arrows[a].target)
    }
}

/// A linear combination of parallel paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(Scalar, Path)>,
}

#[derive(Clone, Debug)]
pub struct QuiverPresentation {
    pub session: Session,
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Relation>,
    /// Every path of at least this length is zero.
    pub bound: usize,
}

/// What an [`Algebra`] remembers of its quiver presentation.
#[derive(Clone, Debug)]
pub struct QuiverData {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub bound: usize,
    /// The path each basis element stands for.
    pub basis_paths: Vec<Path>,
    lookup: HashMap<Path, usize>,
    normal_forms: Vec<Elem>,
    field: Field,
}

impl QuiverData {
    /// The image of a path in the algebra; `None` if the arrows do not compose.
    pub fn element_of_path(&self, p: &Path) -> Option<Elem> {
        if p.start >= self.vertices.len() || !composable(&self.arrows, p) {
            return None;
        }
        if p.len() >= self.bound {
            return Some(linalg::zero_vec(self.field, self.basis_paths.len()));
        }
        Some(self.normal_forms[self.lookup[p]].clone())
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn path_label(&self, p: &Path) -> String {
        if p.is_empty() {
            format!("e_{}", self.vertices[p.start])
        } else {
            p.arrows.iter().map(|&a| self.arrows[a].label.as_str()).collect::<Vec<_>>().join(" ")
        }
    }

    /// Parses a path expression such as `a b - 2 c d + e_1`.
    pub fn parse_element(&self, expr: &str) -> Result<Elem, String> {
        let terms = parse_combination(expr, self.field, &self.vertices, &self.arrows)?;
        let mut out = linalg::zero_vec(self.field, self.basis_paths.len());
        for (c, p) in terms {
            let e = self.element_of_path(&p).ok_or_else(|| format!("arrows do not compose in `{expr}`"))?;
            linalg::axpy(&mut out, &c, &e);
        }
        Ok(out)
    }

    /// Inverse of [`QuiverData::parse_element`] on basis coordinates.
    pub fn format_element(&self, x: &[Scalar]) -> String {
        let mut out = String::new();
        for (b, s) in x.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
            let negative = s.as_ratio().is_some_and(|(n, _)| n < num::BigInt::from(0));
            let s = if negative { -s } else { s.clone() };
            match (out.is_empty(), negative) {
                (true, true) => out.push_str("- "),
                (false, true) => out.push_str(" - "),
                (false, false) => out.push_str(" + "),
                (true, false) => {}
            }
            if !s.is_one() {
                out.push_str(&s.to_string());
                out.push(' ');
            }
            out.push_str(&self.path_label(&self.basis_paths[b]));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

fn composable(arrows: &[Arrow], p: &Path) -> bool {
    let mut at = p.start;
    for &a in &p.arrows {
        if a >= arrows.len() || arrows[a].source != at {
            return false;
        }
        at = arrows[a].target;
    }
    true
}

/// Parses `coef? path (('+'|'-') coef? path)*`; a path is whitespace-separated
/// arrow labels or a single `e_<vertex>`.
pub(crate) fn parse_combination(
    expr: &str,
    field: Field,
    vertices: &[String],
    arrows: &[Arrow],
) -> Result<Vec<(Scalar, Path)>, String> {
    let mut terms = Vec::new();
    let mut sign = field.one();
    let mut coef: Option<Scalar> = None;
    let mut labels: Vec<&str> = Vec::new();
    let mut pending_op = false;
    let spaced = expr.replace('+', " + ").replace('-', " - ").replace('*', " ");
    let finish = |sign: &Scalar, coef: &mut Option<Scalar>, labels: &mut Vec<&str>| -> Result<(Scalar, Path), String> {
        let path = path_of_labels(labels, vertices, arrows).map_err(|e| format!("{e} in `{expr}`"))?;
        let c = coef.take().unwrap_or_else(|| field.one());
        labels.clear();
        Ok((sign * &c, path))
    };
    for tok in spaced.split_whitespace() {
        match tok {
            "+" | "-" => {
                if !labels.is_empty() {
                    terms.push(finish(&sign, &mut coef, &mut labels)?);
                } else if coef.is_some() || pending_op || !terms.is_empty() {
                    return Err(format!("malformed path expression `{expr}`"));
                }
                sign = if tok == "-" { -&field.one() } else { field.one() };
                pending_op = true;
            }
            _ => {
                if labels.is_empty() && coef.is_none() {
                    if let Some(c) = parse_scalar(tok, field)? {
                        coef = Some(c);
                        continue;
                    }
                }
                labels.push(tok);
                pending_op = false;
            }
        }
    }
    if !labels.is_empty() {
        terms.push(finish(&sign, &mut coef, &mut labels)?);
    } else if coef.is_some() || pending_op || terms.is_empty() {
        return Err(format!("malformed path expression `{expr}`"));
    }
    Ok(terms)
}

fn parse_scalar(tok: &str, field: Field) -> Result<Option<Scalar>, String> {
    let (n, d) = match tok.split_once('/') {
        Some((n, d)) => (n, d),
        None => (tok, "1"),
    };
    let (Ok(n), Ok(d)) = (n.parse::<i64>(), d.parse::<i64>()) else {
        return Ok(None);
    };
    field.ratio(n, d).map(Some).map_err(|_| format!("coefficient `{tok}` has zero denominator in {field}"))
}

fn path_of_labels(labels: &[&str], vertices: &[String], arrows: &[Arrow]) -> Result<Path, String> {
    if let [single] = labels {
        if let Some(v) = single.strip_prefix("e_") {
            let idx = vertices.iter().position(|x| x == v).ok_or_else(|| format!("unknown vertex `{v}`"))?;
            return Ok(Path::trivial(idx));
        }
    }
    let idx: Vec<usize> = labels
        .iter()
        .map(|l| arrows.iter().position(|a| a.label == *l).ok_or_else(|| format!("unknown arrow `{l}`")))
        .collect::<Result<_, _>>()?;
    let p = Path { start: arrows[idx[0]].source, arrows: idx };
    if !composable(arrows, &p) {
        return Err(format!("arrows `{}` do not compose", labels.join(" ")));
    }
    Ok(p)
}

impl QuiverPresentation {
    /// Convenience constructor from labels; relations are path expressions.
    pub fn new(
        session: Session,
        vertices: &[&str],
        arrows: &[(&str, &str, &str)],
        relations: &[&str],
        bound: usize,
    ) -> Result<QuiverPresentation, AlgebraError> {
        let vertices: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        let find = |v: &str| {
            vertices.iter().position(|x| x == v).ok_or_else(|| AlgebraError::Presentation(format!("unknown vertex `{v}`")))
        };
        let arrows = arrows
            .iter()
            .map(|(l, s, t)| Ok(Arrow { label: l.to_string(), source: find(s)?, target: find(t)? }))
            .collect::<Result<Vec<_>, AlgebraError>>()?;
        let relations = relations
            .iter()
            .map(|r| {
                parse_combination(r, session.field, &vertices, &arrows)
                    .map(|terms| Relation { terms })
                    .map_err(AlgebraError::Presentation)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(QuiverPresentation { session, vertices, arrows, relations, bound })
    }

    fn check(&self) -> Result<(), AlgebraError> {
        if self.vertices.is_empty() {
            return Err(AlgebraError::Presentation("no vertices".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for v in &self.vertices {
            if !seen.insert(v) {
                return Err(AlgebraError::Presentation(format!("duplicate vertex `{v}`")));
            }
        }
        for a in &self.arrows {
            if a.source >= self.vertices.len() || a.target >= self.vertices.len() {
                return Err(AlgebraError::Presentation(format!("arrow `{}` has an unknown endpoint", a.label)));
            }
            if !seen.insert(&a.label) || a.label.starts_with("e_") {
                return Err(AlgebraError::Presentation(format!("bad or duplicate arrow label `{}`", a.label)));
            }
        }
        if self.bound < 2 && !self.arrows.is_empty() {
            return Err(AlgebraError::NonAdmissible("nilpotency bound below 2 kills arrows".into()));
        }
        for r in &self.relations {
            let show = || {
                r.terms.iter().map(|(c, p)| format!("{c}·{:?}", p.arrows)).collect::<Vec<_>>().join(" + ")
            };
            let Some((_, first)) = r.terms.first() else {
                return Err(AlgebraError::NonAdmissible("empty relation".into()));
            };
            let ends = (first.start, first.end(&self.arrows));
            for (c, p) in &r.terms {
                if !composable(&self.arrows, p) {
                    return Err(AlgebraError::Presentation(format!("non-composable path in relation {}", show())));
                }
                if (p.start, p.end(&self.arrows)) != ends {
                    return Err(AlgebraError::MixedEndpoints(show()));
                }
                if p.len() < 2 && !c.is_zero() {
                    return Err(AlgebraError::NonAdmissible(format!(
                        "relation {} has a term of length {} (not in the square of the arrow ideal)",
                        show(),
                        p.len()
                    )));
                }
                if c.field() != self.session.field {
                    return Err(crate::linalg::LinalgError::FieldMismatch(self.session.field, c.field()).into());
                }
            }
        }
        Ok(())
    }
}

/// Builds `kQ / I`: the basis is the set of standard paths (those not
/// eliminated as leading terms of ideal elements), with shorter paths preferred.
pub fn algebra_from_quiver(q: &QuiverPresentation) -> Result<Algebra, AlgebraError> {
    q.check()?;
    let field = q.session.field;
    // all paths of length < bound, by length then arrow sequence
    let mut paths: Vec<Path> = (0..q.vertices.len()).map(Path::trivial).collect();
    let mut frontier = paths.clone();
    for _ in 1..q.bound.max(1) {
        let mut next = Vec::new();
        for p in &frontier {
            let end = p.end(&q.arrows);
            for (ai, a) in q.arrows.iter().enumerate() {
                if a.source == end {
                    let mut ar = p.arrows.clone();
                    ar.push(ai);
                    next.push(Path { start: p.start, arrows: ar });
                }
            }
        }
        next.sort();
        paths.extend(next.iter().cloned());
        frontier = next;
    }
    if paths.len() > 20_000 {
        return Err(AlgebraError::Presentation(format!("{} paths below the bound; too large", paths.len())));
    }
    let lookup: HashMap<Path, usize> = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let np = paths.len();

    // ideal: p · r · q for all composable p, q
    let concat = |a: &Path, b: &[usize], c: &Path| -> Option<Path> {
        let mut ar = a.arrows.clone();
        ar.extend_from_slice(b);
        ar.extend_from_slice(&c.arrows);
        (ar.len() < q.bound).then_some(Path { start: a.start, arrows: ar })
    };
    let mut gens: Vec<Vec<Scalar>> = Vec::new();
    for r in &q.relations {
        let (s, t) = (r.terms[0].1.start, r.terms[0].1.end(&q.arrows));
        for left in paths.iter().filter(|p| p.end(&q.arrows) == s) {
            for right in paths.iter().filter(|p| p.start == t) {
                let mut v = linalg::zero_vec(field, np);
                for (c, p) in &r.terms {
                    if let Some(w) = concat(left, &p.arrows, right) {
                        let k = lookup[&w];
                        v[k] = &v[k] + c;
                    }
                }
                if !linalg::is_zero_vec(&v) {
                    gens.push(v);
                }
            }
        }
    }
    // Column order: longest paths first, so that pivots are leading terms.
    let order: Vec<usize> = (0..np).rev().collect();
    let mut pivot_row: HashMap<usize, Vec<Scalar>> = HashMap::new();
    if !gens.is_empty() {
        let permuted: Vec<Vec<Scalar>> = gens.iter().map(|g| order.iter().map(|&k| g[k].clone()).collect()).collect();
        let m = Mat::from_rows(field, permuted)?;
        let (r, piv) = m.rref();
        for (row, &pc) in piv.iter().enumerate() {
            let vals: Vec<Scalar> = {
                let mut v = linalg::zero_vec(field, np);
                for (c, &k) in order.iter().enumerate() {
                    v[k] = r.get(row, c).clone();
                }
                v
            };
            pivot_row.insert(order[pc], vals);
        }
    }
    let basis: Vec<usize> = (0..np).filter(|k| !pivot_row.contains_key(k)).collect();
    let pos: HashMap<usize, usize> = basis.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let dim = basis.len();
    let normal_forms: Vec<Elem> = (0..np)
        .map(|k| {
            let mut v = linalg::zero_vec(field, dim);
            match pivot_row.get(&k) {
                None => v[pos[&k]] = field.one(),
                Some(row) => {
                    for (j, s) in row.iter().enumerate() {
                        if j != k && !s.is_zero() {
                            v[pos[&j]] = -s;
                        }
                    }
                }
            }
            v
        })
        .collect();
    for (i, p) in paths.iter().enumerate().take(q.vertices.len()) {
        if pivot_row.contains_key(&i) {
            return Err(AlgebraError::NonAdmissible(format!("vertex {} vanishes", q.vertices[p.start])));
        }
    }
    let basis_paths: Vec<Path> = basis.iter().map(|&k| paths[k].clone()).collect();
    let table: Vec<Vec<Vec<(usize, Scalar)>>> = basis_paths
        .iter()
        .map(|a| {
            basis_paths
                .iter()
                .map(|b| {
                    if a.end(&q.arrows) != b.start {
                        return vec![];
                    }
                    let mut ar = a.arrows.clone();
                    ar.extend_from_slice(&b.arrows);
                    if ar.len() >= q.bound {
                        return vec![];
                    }
                    let w = Path { start: a.start, arrows: ar };
                    normal_forms[lookup[&w]]
                        .iter()
                        .enumerate()
                        .filter(|(_, s)| !s.is_zero())
                        .map(|(k, s)| (k, s.clone()))
                        .collect()
                })
                .collect()
        })
        .collect();
    let labels: Vec<String> = basis_paths
        .iter()
        .map(|p| {
            if p.is_empty() {
                format!("e_{}", q.vertices[p.start])
            } else {
                p.arrows.iter().map(|&a| q.arrows[a].label.as_str()).collect::<Vec<_>>().join("")
            }
        })
        .collect();
    let idems: Vec<Elem> = (0..q.vertices.len()).map(|v| normal_forms[v].clone()).collect();
    let mut unit = linalg::zero_vec(field, dim);
    for e in &idems {
        unit = linalg::vec_add(&unit, e);
    }
    let mut alg = Algebra::from_structure(q.session, labels, q.vertices.clone(), table, unit, idems)?;
    let radical: Vec<Elem> =
        (0..dim).filter(|&b| !basis_paths[b].is_empty()).map(|b| linalg::unit(field, dim, b)).collect();
    let data = QuiverData {
        vertices: q.vertices.clone(),
        arrows: q.arrows.clone(),
        bound: q.bound,
        basis_paths,
        lookup,
        normal_forms,
        field,
    };
    alg.set_quiver(data, radical);
    Ok(alg)
}

impl Algebra {
    pub fn from_quiver(q: &QuiverPresentation) -> Result<Algebra, AlgebraError> {
        algebra_from_quiver(q)
    }

    /// Element named by a path expression; only for quiver algebras.
    pub fn parse_element(&self, expr: &str) -> Result<Elem, AlgebraError> {
        let q = self.quiver().ok_or_else(|| AlgebraError::Presentation("algebra has no quiver".into()))?;
        q.parse_element(expr).map_err(AlgebraError::Presentation)
    }

    /// Index of the basis element with this label.
    pub fn basis_index(&self, label: &str) -> Option<usize> {
        self.labels().iter().position(|l| l == label)
    }

    /// Basis element by label; panics if absent. Handy in tests and docs.
    pub fn el(&self, label: &str) -> Elem {
        let b = self.basis_index(label).unwrap_or_else(|| panic!("no basis element `{label}`"));
        self.basis_elem(b)
    }
}
