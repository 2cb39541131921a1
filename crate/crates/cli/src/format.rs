//! Line-oriented algebra and complex files.
//!
//! Algebra files:
//!
//! ```text
//! field 101
//! vertices 1 2
//! arrow a 1 2
//! arrow b 2 1
//! relation a b a
//! relation b a b
//! bound 3
//! ```
//!
//! Complex files list terms by degree and nonzero differential entries
//! `diff <degree> <row> <col> <path expression>`, rows and columns counted from 1:
//!
//! ```text
//! term -1 1
//! term 0 2
//! diff -1 1 1 b
//! ```

use std::fmt;
use std::sync::Arc;

use quivtilt::algebra::{Algebra, QuiverPresentation, Session};
use quivtilt::complexes::ProjComplex;
use quivtilt::field::Field;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub file: String,
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}: {}", self.file, self.message)
        } else {
            write!(f, "{}:{}: {}", self.file, self.line, self.message)
        }
    }
}

impl std::error::Error for ParseError {}

fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        if l.is_empty() {
            return None;
        }
        let (head, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
        let mut toks = vec![head];
        toks.extend(rest.split_whitespace());
        Some((i + 1, toks, rest.trim()))
    })
}

pub fn parse_field(s: &str) -> Result<Field, String> {
    match s {
        "rational" | "Q" => Ok(Field::Rational),
        p => {
            let p: u32 = p.parse().map_err(|_| format!("field must be a prime or `rational`, got `{p}`"))?;
            Field::prime(p).map_err(|e| e.to_string())
        }
    }
}

/// An algebra file; `field` overrides the file's own field line.
pub fn parse_algebra(file: &str, text: &str, field: Option<Field>, seed: u64) -> Result<Algebra, ParseError> {
    let err = |line: usize, message: String| ParseError { file: file.to_string(), line, message };
    let mut file_field = None;
    let mut vertices: Vec<String> = Vec::new();
    let mut arrows: Vec<(String, String, String)> = Vec::new();
    let mut relations: Vec<(usize, String)> = Vec::new();
    let mut bound = None;
    for (n, toks, rest) in lines(text) {
        match toks[0] {
            "field" if toks.len() == 2 => file_field = Some(parse_field(toks[1]).map_err(|m| err(n, m))?),
            "vertices" if toks.len() > 1 => vertices.extend(toks[1..].iter().map(|s| s.to_string())),
            "vertex" if toks.len() == 2 => vertices.push(toks[1].to_string()),
            "arrow" if toks.len() == 4 => arrows.push((toks[1].into(), toks[2].into(), toks[3].into())),
            "relation" if toks.len() > 1 => relations.push((n, rest.to_string())),
            "bound" if toks.len() == 2 => {
                bound = Some(toks[1].parse::<usize>().map_err(|_| err(n, format!("bad bound `{}`", toks[1])))?)
            }
            k => return Err(err(n, format!("unrecognized line starting with `{k}`"))),
        }
    }
    let field = field.or(file_field).ok_or_else(|| err(0, "no field given".into()))?;
    let bound = bound.ok_or_else(|| err(0, "no nilpotency bound given".into()))?;
    let session = Session::new(field).with_seed(seed);
    let vs: Vec<&str> = vertices.iter().map(String::as_str).collect();
    let ars: Vec<(&str, &str, &str)> = arrows.iter().map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str())).collect();
    // parse relations one at a time so errors carry their line
    for (n, r) in &relations {
        QuiverPresentation::new(session, &vs, &ars, &[r.as_str()], bound).map_err(|e| err(*n, e.to_string()))?;
    }
    let rels: Vec<&str> = relations.iter().map(|(_, r)| r.as_str()).collect();
    let q = QuiverPresentation::new(session, &vs, &ars, &rels, bound).map_err(|e| err(0, e.to_string()))?;
    Algebra::from_quiver(&q).map_err(|e| err(0, e.to_string()))
}

/// Vertex labels to indices.
pub fn parse_vertices(alg: &Algebra, labels: &[&str]) -> Result<Vec<usize>, String> {
    labels
        .iter()
        .map(|l| alg.vertex_labels().iter().position(|v| v == l).ok_or_else(|| format!("unknown vertex `{l}`")))
        .collect()
}

pub fn parse_complex(file: &str, text: &str, alg: &Arc<Algebra>) -> Result<ProjComplex, ParseError> {
    let err = |line: usize, message: String| ParseError { file: file.to_string(), line, message };
    let mut terms: Vec<(i32, Vec<usize>)> = Vec::new();
    let mut entries: Vec<(usize, i32, usize, usize, String)> = Vec::new();
    for (n, toks, _) in lines(text) {
        let deg = |s: &str| s.parse::<i32>().map_err(|_| err(n, format!("bad degree `{s}`")));
        match toks[0] {
            "term" if toks.len() >= 2 => {
                let d = deg(toks[1])?;
                if terms.iter().any(|(e, _)| *e == d) {
                    return Err(err(n, format!("degree {d} listed twice")));
                }
                terms.push((d, parse_vertices(alg, &toks[2..]).map_err(|m| err(n, m))?));
            }
            // informational: names the algebra file the complex was written against
            "algebra" => {}
            "diff" if toks.len() >= 5 => {
                let d = deg(toks[1])?;
                let idx = |s: &str| match s.parse::<usize>() {
                    Ok(k) if k >= 1 => Ok(k - 1),
                    _ => Err(err(n, format!("bad index `{s}` (rows and columns start at 1)"))),
                };
                entries.push((n, d, idx(toks[2])?, idx(toks[3])?, toks[4..].join(" ")));
            }
            k => return Err(err(n, format!("unrecognized line starting with `{k}`"))),
        }
    }
    if terms.is_empty() {
        return Ok(ProjComplex::zero(alg.clone()));
    }
    let lo = terms.iter().map(|t| t.0).min().unwrap();
    let hi = terms.iter().map(|t| t.0).max().unwrap();
    let mut dense = vec![Vec::new(); (hi - lo + 1) as usize];
    for (d, t) in terms {
        dense[(d - lo) as usize] = t;
    }
    for (n, d, r, c, expr) in &entries {
        // checked line by line so errors carry a position
        if *d < lo || *d >= hi || *r >= dense[(d + 1 - lo) as usize].len() || *c >= dense[(d - lo) as usize].len() {
            return Err(err(*n, format!("entry ({}, {}) of the differential from degree {d} is out of range", r + 1, c + 1)));
        }
        alg.parse_element(expr).map_err(|e| err(*n, e.to_string()))?;
    }
    let list: Vec<(i32, usize, usize, &str)> = entries.iter().map(|(_, d, r, c, e)| (*d, *r, *c, e.as_str())).collect();
    ProjComplex::build(alg.clone(), lo, dense, &list).map_err(|e| err(0, e.to_string()))
}

/// Inverse of [`parse_complex`] for complexes over quiver algebras.
pub fn write_complex(x: &ProjComplex) -> String {
    let alg = x.algebra();
    let q = alg.quiver().expect("complexes are written over quiver algebras");
    let mut out = String::new();
    for d in x.degrees() {
        let vs: Vec<&str> = x.term(d).iter().map(|&v| alg.vertex_labels()[v].as_str()).collect();
        out.push_str(&format!("term {d}{}{}\n", if vs.is_empty() { "" } else { " " }, vs.join(" ")));
    }
    for d in x.degrees() {
        let m = x.diff(d);
        for r in 0..m.rows().len() {
            for c in 0..m.cols().len() {
                let e = m.get(r, c);
                if e.iter().any(|s| !s.is_zero()) {
                    out.push_str(&format!("diff {d} {} {} {}\n", r + 1, c + 1, q.format_element(e)));
                }
            }
        }
    }
    out
}
