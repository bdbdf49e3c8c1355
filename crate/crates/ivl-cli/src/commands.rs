//! Subcommand implementations.

use crate::expr;
use anyhow::{anyhow, bail, Context, Result};
use ivl::newton::{
    barycentric_weights, chebyshev_nodes, newton_solve, IntervalPolynomial, LebesgueProblem,
    NewtonError,
};
use ivl::textio::{self, Accuracy, Format};
use ivl::{ElemFn, Endpoint, Interval, Precision, Round};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::HashMap;
use std::io::Write;
use std::time::Instant;

/// Machine-readable benchmark record.
#[derive(Serialize)]
pub struct BenchReport {
    pub name: String,
    pub params: serde_json::Value,
    pub seconds: f64,
    pub ops: u64,
    pub checksum_lo_hex: String,
    pub checksum_hi_hex: String,
}

impl BenchReport {
    fn new(name: &str, params: serde_json::Value, seconds: f64, ops: u64, checksum: &Interval) -> Self {
        let (lo, hi) = match checksum.bounds() {
            Some((a, b)) => (textio::endpoint_to_hex(a), textio::endpoint_to_hex(b)),
            None => ("empty".into(), "empty".into()),
        };
        BenchReport {
            name: name.into(),
            params,
            seconds,
            ops,
            checksum_lo_hex: lo,
            checksum_hi_hex: hi,
        }
    }

    fn print_text(&self, f: &Format) {
        let _ = f;
        println!(
            "{}: {:.3} s for {} ops; checksum [{},{}]",
            self.name, self.seconds, self.ops, self.checksum_lo_hex, self.checksum_hi_hex
        );
    }
}

pub fn parse_bindings(
    binds: &[String],
    prec: Precision,
) -> Result<HashMap<String, Interval>> {
    let mut env = HashMap::new();
    for b in binds {
        let (name, lit) = b
            .split_once('=')
            .ok_or_else(|| anyhow!("binding {b:?} must look like name=[lo,hi]"))?;
        let (iv, acc) = textio::try_parse(lit.trim(), prec);
        if acc == Accuracy::Invalid {
            bail!("binding {name}: {lit:?} is not an interval literal");
        }
        env.insert(name.trim().to_string(), iv);
    }
    Ok(env)
}

pub fn cmd_eval(
    expression: &str,
    binds: &[String],
    prec: Precision,
    f: &Format,
) -> Result<()> {
    let env = parse_bindings(binds, prec)?;
    let ast = expr::parse(expression, prec).map_err(|e| anyhow!("parse error: {e}"))?;
    let v = expr::eval(&ast, &env).map_err(|e| anyhow!("evaluation error: {e}"))?;
    println!("{}", textio::format_interval(&v, f));
    Ok(())
}

pub fn cmd_iterate(
    expression: &str,
    binds: &[String],
    var: &str,
    iterations: u64,
    prec: Precision,
    f: &Format,
) -> Result<()> {
    let mut env = parse_bindings(binds, prec)?;
    if !env.contains_key(var) {
        bail!("iteration variable {var:?} is not bound");
    }
    let ast = expr::parse(expression, prec).map_err(|e| anyhow!("parse error: {e}"))?;
    let mut out = std::io::stdout().lock();
    for _ in 0..iterations {
        let v = expr::eval(&ast, &env).map_err(|e| anyhow!("evaluation error: {e}"))?;
        writeln!(out, "{}", textio::format_interval(&v, f))?;
        env.insert(var.to_string(), v);
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_bench_lebesgue(
    nodes_n: usize,
    points: u64,
    seed: u64,
    prec: Precision,
    json: bool,
    f: &Format,
) -> Result<()> {
    if nodes_n < 2 {
        bail!("need at least two nodes");
    }
    if points < 1 {
        bail!("need at least one evaluation point");
    }
    let setup_start = Instant::now();
    let nodes = chebyshev_nodes(nodes_n, prec);
    let weights = barycentric_weights(nodes_n, prec);
    let base = LebesgueProblem::new(nodes.clone(), weights, Interval::entire(prec));
    let setup_seconds = setup_start.elapsed().as_secs_f64();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checksum = Interval::empty(prec);
    let eval_start = Instant::now();
    for _ in 0..points {
        // Deterministic non-node points in (-1, 1).
        let t = loop {
            let raw: f64 = rng.gen_range(-1.0..1.0);
            let (e, _) = Endpoint::F64(raw).convert(prec, Round::Down);
            if nodes.iter().all(|n| n.cmp_value(&e) != std::cmp::Ordering::Equal) {
                break e;
            }
        };
        let v = base.eval_at(&Interval::point(t).expect("finite sample"));
        checksum = checksum.hull(&v);
    }
    let seconds = eval_start.elapsed().as_secs_f64();
    let report = BenchReport::new(
        "bench-lebesgue",
        serde_json::json!({
            "nodes": nodes_n,
            "points": points,
            "seed": seed,
            "endpoint": prec.to_string(),
            "setup_seconds": setup_seconds,
        }),
        seconds,
        points,
        &checksum,
    );
    if json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        println!(
            "setup: {:.3} s ({} nodes at {})",
            setup_seconds, nodes_n, prec
        );
        report.print_text(f);
    }
    Ok(())
}

/// The functions the timing harness accepts.
pub const BENCH_FUNCTIONS: [ElemFn; 8] = [
    ElemFn::Sin,
    ElemFn::Cos,
    ElemFn::Tan,
    ElemFn::Asin,
    ElemFn::Acos,
    ElemFn::Atan,
    ElemFn::Exp,
    ElemFn::Log,
];

/// Seeded random operand for one function, clipped to its domain.
/// Endpoints are uniform: the base in a documented per-function range,
/// the width in [0, 1).
fn bench_operand(f: ElemFn, rng: &mut ChaCha8Rng) -> Interval {
    let (lo_min, lo_max): (f64, f64) = match f {
        ElemFn::Asin | ElemFn::Acos => (-1.0, 1.0),
        ElemFn::Log => (1e-6, 20.0),
        _ => (-10.0, 10.0),
    };
    let lo = rng.gen_range(lo_min..lo_max);
    let wid = rng.gen_range(0.0..1.0);
    let hi = (lo + wid).min(match f {
        ElemFn::Asin | ElemFn::Acos => 1.0,
        ElemFn::Log => 20.0,
        _ => f64::INFINITY,
    });
    Interval::from_f64s(lo, hi.max(lo)).expect("clipped operand")
}

pub fn cmd_bench_elem(
    functions: &[ElemFn],
    evals: u64,
    seed: u64,
    prec: Precision,
    json: bool,
    f: &Format,
) -> Result<()> {
    if evals < 1 {
        bail!("need at least one evaluation");
    }
    let mut reports = Vec::new();
    for (idx, func) in functions.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (idx as u64) << 32);
        let mut checksum = Interval::empty(prec);
        let start = Instant::now();
        for _ in 0..evals {
            let x = bench_operand(*func, &mut rng).promote(prec);
            let v = func.apply(&x);
            checksum = checksum.hull(&v);
        }
        let seconds = start.elapsed().as_secs_f64();
        reports.push(BenchReport::new(
            &format!("bench-elem/{}", func.name()),
            serde_json::json!({
                "evals": evals,
                "seed": seed,
                "endpoint": prec.to_string(),
            }),
            seconds,
            evals,
            &checksum,
        ));
    }
    if json {
        println!("{}", serde_json::to_string_pretty(&reports)?);
    } else {
        for r in &reports {
            r.print_text(f);
        }
    }
    Ok(())
}

pub enum SolveOutcome {
    Done,
    Budget,
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_solve(
    coeffs: Option<&str>,
    coeffs_file: Option<&str>,
    random_degree: Option<usize>,
    domain: &str,
    tol: f64,
    max_boxes: usize,
    seed: u64,
    prec: Precision,
    f: &Format,
) -> Result<SolveOutcome> {
    let coeff_list: Vec<Interval> = if let Some(d) = random_degree {
        // Coefficients uniform in [-1, 1], constant term first.
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..=d)
            .map(|_| Interval::from(rng.gen_range(-1.0f64..1.0)).promote(prec))
            .collect()
    } else {
        let text = match (coeffs, coeffs_file) {
            (Some(t), None) => t.to_string(),
            (None, Some(path)) => {
                std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?
            }
            _ => bail!("provide exactly one of --coeffs, --coeffs-file, --random-degree"),
        };
        let mut list = Vec::new();
        for tok in text.split([' ', '\t', '\n', ',']).filter(|t| !t.is_empty()) {
            let (iv, acc) = textio::try_parse(&format!("[{tok}]"), prec);
            if acc == Accuracy::Invalid {
                bail!("bad coefficient {tok:?}");
            }
            list.push(iv);
        }
        if list.is_empty() {
            bail!("no coefficients given");
        }
        list
    };
    let (dom, acc) = textio::try_parse(domain, prec);
    if acc == Accuracy::Invalid {
        bail!("bad domain {domain:?}");
    }
    let poly = IntervalPolynomial::new(coeff_list);
    match newton_solve(&poly, &dom, tol, max_boxes) {
        Ok(roots) => {
            for r in &roots {
                println!(
                    "{} {}",
                    textio::format_interval(&r.interval, f),
                    if r.unique { "unique" } else { "candidate" }
                );
            }
            Ok(SolveOutcome::Done)
        }
        Err(NewtonError::ResourceLimit { max_boxes }) => {
            eprintln!("error: box budget of {max_boxes} exhausted");
            Ok(SolveOutcome::Budget)
        }
        Err(e) => Err(anyhow!(e)),
    }
}

pub fn cmd_fmt(input: &str, output: &str, prec: Precision, f: &Format) -> Result<()> {
    let data: Box<dyn std::io::BufRead> = if input == "-" {
        Box::new(std::io::BufReader::new(std::io::stdin()))
    } else {
        Box::new(std::io::BufReader::new(
            std::fs::File::open(input).with_context(|| format!("opening {input}"))?,
        ))
    };
    let (intervals, _) = textio::read_sequence(data, prec)?;
    let count = intervals.len();
    if output == "-" {
        let mut out = std::io::stdout().lock();
        textio::write_sequence(&intervals, &mut out, f)?;
    } else {
        let mut out = std::fs::File::create(output).with_context(|| format!("creating {output}"))?;
        textio::write_sequence(&intervals, &mut out, f)?;
    }
    eprintln!("{count} intervals");
    Ok(())
}
