//! The `quivtilt` command line: file formats, commands and JSON reports.

pub mod format;

use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use quivtilt::algebra::Algebra;
use quivtilt::complexes::{hom_window, homotopy_hom, ProjComplex};
use quivtilt::field::Field;
use quivtilt::recollement::{self, ComparisonLevel, Idempotent, QuotientComparison};
use quivtilt::tilting::{self, CompletionTrace, PartialTiltingCert, TiltingError, TiltingReport};

pub use format::{parse_algebra, parse_complex, parse_field, write_complex, ParseError};

#[derive(Parser, Debug, Clone)]
#[command(name = "quivtilt", version, about = "Tilting complexes over finite-dimensional quiver algebras")]
pub struct Cli {
    /// Field override: a prime or `rational`.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Seed for randomized searches.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest completion stage accepted.
    #[arg(long, global = true, default_value_t = 8)]
    pub max_stage: usize,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    /// Include wall-clock timings (makes reports non-reproducible).
    #[arg(long, global = true)]
    pub timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Self-extension table of a complex.
    Check { algebra: PathBuf, complex: PathBuf },
    /// Completion `Θ_n` of a partial tilting complex.
    Complete {
        algebra: PathBuf,
        complex: PathBuf,
        #[arg(allow_negative_numbers = true)]
        n: i64,
        /// Write `Θ_n` as a complex file.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Also evaluate the cohomological criterion (symmetric algebras only).
        #[arg(long)]
        criterion: bool,
    },
    /// Induce a tilting complex over `eAe`, complete it and compare `A/AeA` with `B/BfB`.
    Pipeline {
        algebra: PathBuf,
        /// Corner complex, written with the vertices and paths of the ambient algebra.
        complex: PathBuf,
        /// Vertices making up `e`, separated by commas.
        #[arg(long)]
        idempotent: String,
        #[arg(long, allow_negative_numbers = true)]
        n: Option<i64>,
    },
    /// Search for a symmetrizing form.
    Symcheck { algebra: PathBuf },
    /// `dim Hom_K(X, Y[n])` over the support window.
    Homtable { algebra: PathBuf, x: PathBuf, y: PathBuf },
    /// Compare `A/AeA` with `B/BfB` for `B = End(Θ)` and `f` the summands supported at `e`.
    Quotcompare {
        algebra: PathBuf,
        theta: PathBuf,
        #[arg(long)]
        idempotent: String,
    },
    /// `Ext^i_A(A/AeA, eA)` for `0 ≤ i ≤ n`.
    Extcheck {
        algebra: PathBuf,
        #[arg(long)]
        idempotent: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Parse(ParseError),
    Io(String),
    Engine(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage: {m}"),
            CliError::Parse(e) => write!(f, "parse error: {e}"),
            CliError::Io(m) => write!(f, "io: {m}"),
            CliError::Engine(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> CliError {
        CliError::Parse(e)
    }
}

fn engine(e: impl std::fmt::Display) -> CliError {
    CliError::Engine(e.to_string())
}

/// Result of one command.
#[derive(Debug, Clone)]
pub struct Output {
    pub report: Value,
    pub verdict: bool,
    /// Extra files to write.
    pub files: Vec<(PathBuf, String)>,
}

impl Output {
    pub fn exit_code(&self) -> i32 {
        if self.verdict { 0 } else { 1 }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

struct Ctx {
    field: Option<Field>,
    seed: u64,
    used: std::cell::Cell<Option<Field>>,
}

impl Ctx {
    fn algebra(&self, path: &Path) -> Result<Arc<Algebra>, CliError> {
        let text = read(path)?;
        let a = parse_algebra(&path.display().to_string(), &text, self.field, self.seed)?;
        self.used.set(Some(a.field()));
        Ok(Arc::new(a))
    }

    fn complex(&self, path: &Path, alg: &Arc<Algebra>) -> Result<ProjComplex, CliError> {
        let text = read(path)?;
        Ok(parse_complex(&path.display().to_string(), &text, alg)?)
    }
}

fn subset(alg: &Algebra, spec: &str) -> Result<Vec<usize>, CliError> {
    let labels: Vec<&str> = spec.split([',', ' ']).filter(|s| !s.is_empty()).collect();
    if labels.is_empty() {
        return Err(CliError::Usage("the idempotent subset is empty".into()));
    }
    let mut s = format::parse_vertices(alg, &labels).map_err(CliError::Usage)?;
    s.sort_unstable();
    s.dedup();
    Ok(s)
}

fn stage_count(n: i64, max: usize) -> Result<usize, CliError> {
    if n < 0 {
        return Err(CliError::Usage(format!("stage count must be nonnegative, got {n}")));
    }
    if n as usize > max {
        return Err(CliError::Usage(format!("stage count {n} exceeds --max-stage {max}")));
    }
    Ok(n as usize)
}

fn vertex_names(alg: &Algebra, vs: &[usize]) -> Vec<String> {
    vs.iter().map(|&v| alg.vertex_labels()[v].clone()).collect()
}

fn terms_json(x: &ProjComplex) -> Value {
    let alg = x.algebra();
    Value::Array(x.degrees().map(|d| json!({ "degree": d, "vertices": vertex_names(alg, x.term(d)) })).collect())
}

fn table_json(cert: &PartialTiltingCert) -> Value {
    Value::Array(cert.table.iter().map(|(n, d)| json!({ "n": n, "dim": d })).collect())
}

fn generation_json(g: &tilting::Generation) -> Value {
    use tilting::Generation::*;
    let detail = match g {
        Ladder { stages } => json!({ "stages": stages }),
        Projectives => json!({}),
        Completion { stages } => json!({ "stages": stages }),
        Obstruction { class_rank } => json!({ "class_rank": class_rank }),
        Heuristic { types_match, class_rank } => json!({ "types_match": types_match, "class_rank": class_rank }),
    };
    json!({ "kind": g.label(), "witness": g.is_witness(), "detail": detail })
}

fn report_json(r: &TiltingReport) -> Value {
    json!({
        "tilting": r.verdict,
        "vanishing": r.vanishing.verdict,
        "vanishing_table": table_json(&r.vanishing),
        "generation": generation_json(&r.generation),
        "indecomposable_types": r.types,
        "algebra_types": r.algebra_types,
    })
}

fn trace_json(t: &CompletionTrace) -> Value {
    let alg = t.algebra();
    let stages: Vec<Value> = t
        .stages
        .iter()
        .map(|s| {
            json!({
                "stage": s.n,
                "hom_degree": s.degree,
                "v_dim": s.v_dim,
                "top_dims": s.top_dims,
                "cover_summands": s.cover_types,
                "delta_terms": terms_json(&s.delta),
            })
        })
        .collect();
    json!({
        "top_degree": t.s,
        "r": t.r,
        "normalized_terms": terms_json(&t.p),
        "summand_types": t.types.len(),
        "multiplicities": t.multiplicities,
        "end_dim": t.b0.algebra.dim(),
        "stages": stages,
        "vertices": alg.vertex_labels(),
    })
}

fn comparison_json(c: &QuotientComparison) -> Value {
    let fp = c.fingerprints.as_ref().map(|(l, r)| {
        let one = |f: &recollement::Fingerprint| {
            json!({ "dim": f.dim, "center_dim": f.center_dim, "cartan": f.cartan, "radical_layers": f.radical_layers })
        };
        json!({ "left": one(l), "right": one(r) })
    });
    json!({
        "dims": [c.dims.0, c.dims.1],
        "level": c.level.label(),
        "fingerprints": fp,
        "explicit_iso": c.iso.is_some(),
    })
}

fn tilting_err(e: TiltingError) -> CliError {
    engine(e)
}

/// Runs one command.
pub fn execute(cli: &Cli) -> Result<Output, CliError> {
    let start = Instant::now();
    let field = cli.field.as_deref().map(parse_field).transpose().map_err(CliError::Usage)?;
    let ctx = Ctx { field, seed: cli.seed, used: Default::default() };
    let mut files = Vec::new();
    let (verb, body, verdict) = match &cli.command {
        Command::Check { algebra, complex } => {
            let a = ctx.algebra(algebra)?;
            let x = ctx.complex(complex, &a)?;
            let cert = tilting::is_partial_tilting(&x).map_err(tilting_err)?;
            let body = json!({
                "partial_tilting": cert.verdict,
                "vanishing_table": table_json(&cert),
                "length": tilting::complex_length(&x).map_err(tilting_err)?,
                "indecomposable_types": tilting::count_indec_types(&x).map_err(tilting_err)?,
            });
            ("check", body, cert.verdict)
        }
        Command::Complete { algebra, complex, n, output, criterion } => {
            let n = stage_count(*n, cli.max_stage)?;
            let a = ctx.algebra(algebra)?;
            let p = ctx.complex(complex, &a)?;
            if !tilting::is_partial_tilting(&p).map_err(tilting_err)?.verdict {
                return Err(engine("input complex is not partial tilting"));
            }
            let crit = if *criterion { Some(tilting::tilting_criterion_symmetric(&p).map_err(tilting_err)?) } else { None };
            let (trace, theta) = tilting::complete(&p, n).map_err(tilting_err)?;
            let report = tilting::verify_tilting(&theta, Some(&trace)).map_err(tilting_err)?;
            let text = write_complex(&theta);
            if let Some(path) = output {
                files.push((path.clone(), text.clone()));
            }
            let body = json!({
                "n": n,
                "trace": trace_json(&trace),
                "theta": text,
                "theta_terms": terms_json(&theta),
                "report": report_json(&report),
                "criterion": crit,
                "stability": tilting::check_stability(&trace).map_err(tilting_err)?,
                "vanishing_lemma": tilting::check_vanishing(&trace).map_err(tilting_err)?,
            });
            ("complete", body, report.verdict)
        }
        Command::Pipeline { algebra, complex, idempotent, n } => {
            let a = ctx.algebra(algebra)?;
            let s = subset(&a, idempotent)?;
            let n = n.map(|k| stage_count(k, cli.max_stage)).transpose()?;
            let e = Idempotent::new(&a, &s).map_err(engine)?;
            let x = ctx.complex(complex, &a)?;
            let q = recollement::restrict(&x, &e).map_err(|err| match err {
                recollement::RecollementError::OutsideSubset(v) => CliError::Usage(format!(
                    "the corner complex uses vertex {} outside the idempotent subset",
                    a.vertex_labels()[v]
                )),
                other => engine(other),
            })?;
            let out = recollement::pipeline(&e, &q, n).map_err(engine)?;
            let check = &out.check;
            let ok = out.report.verdict && check.verdict && out.comparison.level >= ComparisonLevel::FingerprintsMatch;
            let body = json!({
                "idempotent": vertex_names(&a, &s),
                "n": out.n,
                "trace": trace_json(&out.trace),
                "theta": write_complex(&out.theta),
                "report": report_json(&out.report),
                "end_dim": out.end.algebra().dim(),
                "f": out.f,
                "recollement": {
                    "p1_summands": check.p1_len,
                    "p1_terms": terms_json(&check.p1),
                    "membership": check.membership,
                    "restricted_tilting": check.restricted_report.as_ref().map(|r| r.verdict),
                    "f_idempotent": check.f_idempotent,
                    "verdict": check.verdict,
                },
                "comparison": comparison_json(&out.comparison),
                "verdict": ok,
            });
            ("pipeline", body, ok)
        }
        Command::Symcheck { algebra } => {
            let a = ctx.algebra(algebra)?;
            let search = a.symmetrizing_form().map_err(engine)?;
            let body = match &search {
                quivtilt::algebra::FormSearch::Symmetric(form) => {
                    let coeffs: Vec<Value> = form
                        .coeffs
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(b, c)| json!({ "basis": a.labels()[b], "value": c.to_string() }))
                        .collect();
                    json!({ "symmetric": true, "form": coeffs })
                }
                quivtilt::algebra::FormSearch::NotSymmetric { solution_dim } => {
                    json!({ "symmetric": false, "trace_form_dim": solution_dim })
                }
            };
            ("symcheck", body, search.is_symmetric())
        }
        Command::Homtable { algebra, x, y } => {
            let a = ctx.algebra(algebra)?;
            let (x, y) = (ctx.complex(x, &a)?, ctx.complex(y, &a)?);
            let mut rows = Vec::new();
            for n in hom_window(&x, &y) {
                rows.push(json!({ "n": n, "dim": homotopy_hom(&x, &y, n).map_err(engine)?.dim() }));
            }
            ("homtable", json!({ "table": rows }), true)
        }
        Command::Quotcompare { algebra, theta, idempotent } => {
            let a = ctx.algebra(algebra)?;
            let s = subset(&a, idempotent)?;
            let e = Idempotent::new(&a, &s).map_err(engine)?;
            let t = ctx.complex(theta, &a)?;
            let check = recollement::recollement_tilting_check(&t, &e).map_err(engine)?;
            let end = tilting::end_algebra(&check.split).map_err(tilting_err)?;
            // end_algebra re-decomposes the split complex, so the summands supported at e are located again
            let f = locate(&end, &check.parts[..check.p1_len]).map_err(engine)?;
            let c = recollement::quotient_compare(&a, &s, end.algebra(), &f).map_err(engine)?;
            let ok = c.level >= ComparisonLevel::FingerprintsMatch;
            ("quotcompare", json!({ "idempotent": vertex_names(&a, &s), "f": f, "comparison": comparison_json(&c) }), ok)
        }
        Command::Extcheck { algebra, idempotent, n } => {
            let a = ctx.algebra(algebra)?;
            let s = subset(&a, idempotent)?;
            let t = recollement::ext_vanishing_check(&a, &s, *n).map_err(engine)?;
            let aea = recollement::aea_cokernel_check(&a, &s).map_err(engine)?;
            let ok = t.vanishing_up_to >= *n;
            let body = json!({
                "idempotent": vertex_names(&a, &s),
                "ext_dims": t.dims,
                "vanishing_up_to": t.vanishing_up_to,
                "aea": { "image_dim": aea.image_dim, "ideal_dim": aea.ideal_dim, "quotient_dim": aea.quotient_dim, "ok": aea.ok },
            });
            ("extcheck", body, ok)
        }
    };
    let mut report = json!({
        "schema": 1,
        "command": verb,
        "field": ctx.used.get().map(|f| f.to_string()),
        "seed": cli.seed,
        "verdict": verdict,
        "result": body,
    });
    if cli.timings {
        report["timings_ms"] = json!(start.elapsed().as_millis() as u64);
    }
    Ok(Output { report, verdict, files })
}

/// Indices of the summands of `end` isomorphic to one of `parts`, each used once.
fn locate(end: &tilting::EndAlgebra, parts: &[ProjComplex]) -> Result<Vec<usize>, quivtilt::complexes::ComplexError> {
    let mut used = vec![false; end.summands.summands.len()];
    let mut out = Vec::new();
    for p in parts {
        for (k, t) in end.summands.summands.iter().enumerate() {
            if !used[k] && quivtilt::complexes::iso_test(t, p)? {
                used[k] = true;
                out.push(k);
                break;
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Serialized report: pretty JSON with a trailing newline.
pub fn render(report: &Value) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("JSON values serialize");
    s.push('\n');
    s
}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod book_cli {}
