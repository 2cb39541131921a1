//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

#[path = "../../core/tests/support/oracle.rs"]
mod oracle;

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::Instant;

use rand::Rng;

use quivtilt::algebra::{Algebra, Session};
use quivtilt::complexes::{decompose, hom_window, homotopy_hom, minimal, ProjComplex};
use quivtilt::field::Field;
use quivtilt::recollement::{
    aea_cokernel_check, ext_vanishing_check, pipeline, recollement_tilting_check, restrict, ComparisonLevel, Idempotent,
};
use quivtilt::tilting::{
    check_stability, check_vanishing, complete, complex_length, count_indec_types, is_partial_tilting,
    tilting_criterion_symmetric, verify_tilting, TiltingError,
};
use quivtilt::{corpus, linalg, sample};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond { Ok(()) } else { Err(msg()) }
}

fn sn2() -> Arc<Algebra> {
    Arc::new(corpus::sn2(Session::new(Field::prime(101).unwrap())))
}

fn nak3() -> Arc<Algebra> {
    Arc::new(corpus::nakayama3(Session::new(Field::prime(101).unwrap())))
}

fn corpus_pair() -> Vec<Arc<Algebra>> {
    vec![sn2(), nak3()]
}

/// Partial tilting complexes drawn from a seeded stream; `keep` filters further.
fn sample_partial_tilting(
    a: &Arc<Algebra>,
    seed: u64,
    count: usize,
    max_width: usize,
    keep: impl Fn(&ProjComplex) -> bool,
) -> Vec<ProjComplex> {
    let mut rng = a.session().with_seed(seed).rng(3);
    let mut out = Vec::new();
    let mut tries = 0;
    while out.len() < count && tries < 4000 {
        tries += 1;
        let w = 1 + rng.gen_range(0..max_width);
        let x = minimal(&sample::random_complex(a, 0, w, 2, &mut rng)).unwrap();
        if !x.is_zero() && is_partial_tilting(&x).unwrap().verdict && keep(&x) {
            out.push(x);
        }
    }
    out
}

/// Subsets of summands of a completion, for partial tilting complexes of length 3.
fn summand_subsets(p: &ProjComplex, seed: u64) -> Vec<ProjComplex> {
    let a = p.algebra_arc().clone();
    let (_, theta) = complete(p, 2).unwrap();
    let types = decompose(&minimal(&theta).unwrap()).unwrap();
    let mut rng = a.session().with_seed(seed).rng(5);
    let mut out = Vec::new();
    for _ in 0..3 {
        let parts: Vec<ProjComplex> =
            types.summands.iter().filter(|_| rng.gen_bool(0.5)).map(|s| s.complex.clone()).collect();
        if !parts.is_empty() {
            out.push(ProjComplex::sum_all(a.clone(), &parts).unwrap());
        }
    }
    out
}

fn duality() -> Outcome {
    let mut pairs = 0;
    let mut values = 0;
    for (i, a) in corpus_pair().iter().enumerate() {
        let mut rng = a.session().with_seed(100 + i as u64).rng(0);
        for k in 0..30 {
            let x = sample::random_complex(a, 0, 1 + k % 3, 2, &mut rng);
            let y = sample::random_complex(a, -1, 1 + k / 3 % 3, 2, &mut rng);
            let lo = *hom_window(&x, &y).start().min(&-*hom_window(&y, &x).end());
            let hi = *hom_window(&x, &y).end().max(&-*hom_window(&y, &x).start());
            for n in lo..=hi {
                let l = homotopy_hom(&x, &y, n).map_err(|e| e.to_string())?.dim();
                let r = homotopy_hom(&y, &x, -n).map_err(|e| e.to_string())?.dim();
                ensure(l == r, || format!("pair {k}, n = {n}: {l} vs {r}"))?;
                values += 1;
            }
            pairs += 1;
        }
    }
    ensure(pairs >= 50, || format!("only {pairs} pairs"))?;
    Ok(format!("{pairs} pairs, {values} degrees"))
}

fn oracle_equivalence() -> Outcome {
    let mut count = 0;
    for (i, a) in corpus_pair().iter().enumerate() {
        let f = a.field();
        let mut rng = a.session().with_seed(200 + i as u64).rng(0);
        for k in 0..25 {
            let x = sample::random_complex(a, 0, 1 + k % 3, 2, &mut rng);
            let y = sample::random_complex(a, -1, 1 + k / 3 % 3, 2, &mut rng);
            for n in hom_window(&x, &y) {
                let space = homotopy_hom(&x, &y, n).map_err(|e| e.to_string())?;
                let o = oracle::oracle_hom(&x, &y, n);
                ensure(space.dim() == o.dim, || format!("dimension {} vs oracle {}", space.dim(), o.dim))?;
                let reps: Vec<_> = space.basis().iter().map(|m| o.flatten(a, m)).collect();
                let mut cycles = linalg::Echelon::new(f, o.len());
                for c in &o.cycles {
                    cycles.insert(c);
                }
                ensure(reps.iter().all(|r| cycles.contains(r)), || "representative is not a chain map".into())?;
                let mut all = o.boundaries.clone();
                all.extend(reps);
                ensure(linalg::rank_of(f, o.len(), &all) == o.cycles.len(), || "span differs from oracle".into())?;
                count += 1;
            }
        }
    }
    ensure(count >= 100, || format!("only {count} instances"))?;
    Ok(format!("{count} instances"))
}

fn length_two(a: &Arc<Algebra>, seed: u64) -> Vec<ProjComplex> {
    sample_partial_tilting(a, seed, 12, 2, |x| complex_length(x).unwrap() == 2)
}

fn bongartz() -> Outcome {
    let mut count = 0;
    for (i, a) in corpus_pair().iter().enumerate() {
        for p in length_two(a, 300 + i as u64) {
            let (trace, theta) = complete(&p, 1).map_err(|e| e.to_string())?;
            let report = verify_tilting(&theta, Some(&trace)).map_err(|e| e.to_string())?;
            ensure(report.verdict && report.generation.is_witness(), || {
                format!("Θ_1 not certified: {}", report.generation.label())
            })?;
            count += 1;
        }
    }
    ensure(count >= 20, || format!("only {count} instances"))?;
    Ok(format!("{count} length-2 complexes"))
}

fn type_count() -> Outcome {
    let (mut count, mut tilting) = (0, 0);
    for (i, a) in corpus_pair().iter().enumerate() {
        let mut cases = length_two(a, 400 + i as u64);
        let completed: Vec<ProjComplex> = cases
            .iter()
            .map(|p| complete(p, 1).unwrap().1)
            .filter(|t| complex_length(t).unwrap() == 2)
            .collect();
        cases.extend(completed);
        for p in cases {
            let verdict = verify_tilting(&p, None).map_err(|e| e.to_string())?.verdict;
            let full = count_indec_types(&p).map_err(|e| e.to_string())? == a.num_idems();
            ensure(verdict == full, || format!("verdict {verdict} but n(P) = n(A) is {full}"))?;
            count += 1;
            tilting += verdict as usize;
        }
    }
    ensure(count >= 20 && tilting > 0 && tilting < count, || format!("{count} cases, {tilting} tilting"))?;
    Ok(format!("{count} cases, {tilting} tilting"))
}

fn criterion_equivalence() -> Outcome {
    let mut count = 0;
    let mut negatives = 0;
    let mut lengths = [0usize; 4];
    for (i, a) in corpus_pair().iter().enumerate() {
        let mut cases = sample_partial_tilting(a, 500 + i as u64, 10, 3, |_| true);
        let seeds: Vec<ProjComplex> = cases.iter().take(3).cloned().collect();
        for (k, p) in seeds.iter().enumerate() {
            cases.extend(summand_subsets(p, k as u64));
        }
        for p in cases {
            let len = complex_length(&p).map_err(|e| e.to_string())?;
            if !(1..=3).contains(&len) {
                continue;
            }
            let crit = tilting_criterion_symmetric(&p).map_err(|e| e.to_string())?;
            let r = complete(&p, 0).map_err(|e| e.to_string())?.0.r;
            for n in [r, r + 1] {
                let (trace, theta) = complete(&p, n).map_err(|e| e.to_string())?;
                let v = verify_tilting(&theta, Some(&trace)).map_err(|e| e.to_string())?.verdict;
                ensure(v == crit, || format!("criterion {crit} but Θ_{n} tilting is {v} (length {len})"))?;
            }
            lengths[len] += 1;
            negatives += !crit as usize;
            count += 1;
        }
    }
    ensure(count >= 20, || format!("only {count} instances"))?;
    ensure(lengths[1..].iter().all(|&c| c > 0), || format!("length coverage {:?}", &lengths[1..]))?;
    Ok(format!("{count} complexes (lengths 1/2/3: {:?}), {negatives} with criterion false", &lengths[1..]))
}

fn stability() -> Outcome {
    let mut traces = 0;
    let mut stages = 0;
    for (i, a) in corpus_pair().iter().enumerate() {
        for p in sample_partial_tilting(a, 600 + i as u64, 8, 3, |_| true) {
            let r = complete(&p, 0).map_err(|e| e.to_string())?.0.r;
            let (trace, _) = complete(&p, r + 2).map_err(|e| e.to_string())?;
            ensure(check_vanishing(&trace).map_err(|e| e.to_string())?, || "vanishing lemma fails".into())?;
            ensure(check_stability(&trace).map_err(|e| e.to_string())?, || "stabilization fails".into())?;
            traces += 1;
            stages += trace.len();
        }
    }
    ensure(traces > 0, || "no traces".into())?;
    Ok(format!("{traces} traces, {stages} stages"))
}

fn recollement_pipeline() -> Outcome {
    let a = sn2();
    let e = Idempotent::new(&a, &[0]).map_err(|e| e.to_string())?;
    let first = pipeline(&e, &ProjComplex::regular(e.corner.clone()), Some(1)).map_err(|e| e.to_string())?;

    let b = nak3();
    let e2 = Idempotent::new(&b, &[0, 1]).map_err(|e| e.to_string())?;
    let x = ProjComplex::build(b.clone(), -1, vec![vec![0], vec![1]], &[(-1, 0, 0, "a2 a3")]).unwrap();
    let t = x.direct_sum(&ProjComplex::stalk(b.clone(), -1, &[0])).unwrap();
    let q = restrict(&t, &e2).map_err(|e| e.to_string())?;
    let second = pipeline(&e2, &q, None).map_err(|e| e.to_string())?;

    let mut levels = Vec::new();
    for (name, out) in [("SN2", &first), ("Nakayama3", &second)] {
        ensure(out.report.verdict && out.report.generation.is_witness(), || format!("{name}: Θ not certified tilting"))?;
        ensure(out.check.verdict, || format!("{name}: not recollement tilting"))?;
        ensure(out.comparison.level >= ComparisonLevel::FingerprintsMatch, || format!("{name}: quotients differ"))?;
        ensure(out.comparison.dims.0 == out.comparison.dims.1, || format!("{name}: dims {:?}", out.comparison.dims))?;
        levels.push(format!("{name} n={} dims {:?} {}", out.n, out.comparison.dims, out.comparison.level.label()));
    }
    Ok(levels.join("; "))
}

fn aea_exhaustive() -> Outcome {
    let mut count = 0;
    for a in corpus_pair() {
        let n = a.num_idems();
        for mask in 0u32..(1 << n) {
            let s: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let c = aea_cokernel_check(&a, &s).map_err(|e| e.to_string())?;
            ensure(c.ok, || format!("subset {s:?}: image {} ideal {}", c.image_dim, c.ideal_dim))?;
            count += 1;
        }
    }
    Ok(format!("{count} (algebra, subset) pairs"))
}

fn degenerate_inputs() -> Outcome {
    let a = sn2();
    let x = ProjComplex::build(a.clone(), 0, vec![vec![0], vec![0]], &[(0, 0, 0, "e_1")]).unwrap();
    ensure(matches!(complete(&x, 1), Err(TiltingError::Contractible)), || "contractible input accepted".into())?;
    ensure(Idempotent::new(&a, &[]).is_err(), || "empty corner accepted".into())?;
    let zero = aea_cokernel_check(&a, &[]).map_err(|e| e.to_string())?;
    ensure(zero.ok && zero.image_dim == 0, || format!("e = 0: image {}", zero.image_dim))?;
    let one = aea_cokernel_check(&a, &[0, 1]).map_err(|e| e.to_string())?;
    ensure(one.ok && one.image_dim == a.dim() && one.quotient_dim == 0, || format!("e = 1: image {}", one.image_dim))?;
    let ext = ext_vanishing_check(&a, &[0, 1], 3).map_err(|e| e.to_string())?;
    ensure(ext.dims.iter().all(|&d| d == 0), || format!("e = 1: Ext {:?}", ext.dims))?;
    let cli = cli_run(&["pipeline", "sn2.alg", "sn2_e1.cpx", "--idempotent", "", "--n", "1"], None)?;
    ensure(cli.0 == Some(2), || format!("empty subset exit code {:?}", cli.0))?;

    let e = Idempotent::new(&a, &[0, 1]).map_err(|e| e.to_string())?;
    let out = pipeline(&e, &ProjComplex::regular(e.corner.clone()), Some(0)).map_err(|e| e.to_string())?;
    ensure(out.comparison.dims == (0, 0) && out.check.verdict, || "e = 1 not trivial".into())?;

    let e1 = Idempotent::new(&a, &[0]).map_err(|e| e.to_string())?;
    let y = ProjComplex::build(a.clone(), -1, vec![vec![1], vec![0]], &[(-1, 0, 0, "a")]).unwrap();
    let t = y.direct_sum(&ProjComplex::stalk(a.clone(), -1, &[1])).unwrap();
    ensure(verify_tilting(&t, None).map_err(|e| e.to_string())?.verdict, || "control is not tilting".into())?;
    let c = recollement_tilting_check(&t, &e1).map_err(|e| e.to_string())?;
    ensure(!c.verdict, || "negative control accepted".into())?;
    Ok("contractible, e = 0, e = 1, negative control".into())
}

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.display().to_string()
}

fn cli_run(args: &[&str], report: Option<&PathBuf>) -> Result<(Option<i32>, Vec<u8>), String> {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_quivtilt"));
    for a in args {
        cmd.arg(if a.ends_with(".alg") || a.ends_with(".cpx") { data(a) } else { a.to_string() });
    }
    if let Some(p) = report {
        cmd.arg("--report").arg(p);
    }
    let out = cmd.output().map_err(|e| e.to_string())?;
    let bytes = match report {
        Some(p) => std::fs::read(p).map_err(|e| e.to_string())?,
        None => out.stdout,
    };
    Ok((out.status.code(), bytes))
}

fn determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("quivtilt-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let runs: [&[&str]; 4] = [
        &["complete", "sn2.alg", "sn2_e1.cpx", "2", "--seed", "5"],
        &["pipeline", "sn2.alg", "sn2_e1.cpx", "--idempotent", "1", "--n", "1", "--seed", "5"],
        &["pipeline", "nakayama3.alg", "nakayama3_corner.cpx", "--idempotent", "1,2", "--seed", "9"],
        &["symcheck", "nakayama3.alg", "--seed", "3"],
    ];
    let mut bytes = 0;
    for (k, args) in runs.iter().enumerate() {
        let p1 = dir.join(format!("r{k}a.json"));
        let p2 = dir.join(format!("r{k}b.json"));
        let (c1, a) = cli_run(args, Some(&p1))?;
        let (c2, b) = cli_run(args, Some(&p2))?;
        ensure(c1 == Some(0) && c2 == Some(0), || format!("{}: exit codes {c1:?} {c2:?}", args[0]))?;
        ensure(a == b, || format!("{}: reports differ", args[0]))?;
        bytes += a.len();
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(format!("{} commands, {bytes} report bytes identical", runs.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("Hom duality", duality),
        ("oracle equivalence", oracle_equivalence),
        ("length-2 completion", bongartz),
        ("length-2 type count", type_count),
        ("symmetric criterion", criterion_equivalence),
        ("vanishing and stability", stability),
        ("recollement pipeline", recollement_pipeline),
        ("AeA cokernel", aea_exhaustive),
        ("degenerate inputs", degenerate_inputs),
        ("CLI determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let res = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match res {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail} ({secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
