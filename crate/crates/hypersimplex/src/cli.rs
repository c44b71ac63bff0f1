//! Subcommands of the `hypersimplex` binary.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 resource
//! or cap error.

use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hypersimplex_core::sampler::{default_steps, sample_stream, tv_evolution, DEFAULT_EPSILON};
use hypersimplex_core::spectral::verify_spectrum;
use hypersimplex_core::structure::{recursive_decomposition, DecompositionTree};
use hypersimplex_core::{
    cheeger_bounds, clique_number, closed_form_spectrum, complement_params, degree, diameter,
    edge_count, vertex_count, Error, GraphParams, Regime, StepRule, Vertex, WalkConfig,
};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::format::{
    format_sample, parse_samples, to_json, OutputFormat, SampleStyle, SpectrumReport, TvRow,
};
use crate::stats::{uniformity_test, UniformityError};
use crate::verify::{run_suite, ClosedForms};

#[derive(Debug, Parser)]
#[command(
    name = "hypersimplex",
    version,
    about = "Hypersimplex graph G(d,k): structure, spectrum, sampling and verification"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,

    /// Write the report to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Vertex count, degree, edges, diameter and clique number.
    Stats(GraphArgs),
    /// Random k-subsets from the random walk.
    Sample(SampleArgs),
    /// Chi-square test of sampled subsets against the uniform distribution.
    Uniformity(UniformityArgs),
    /// Adjacency spectrum and Cheeger bounds.
    Spectrum(SpectrumArgs),
    /// Recursive split into G(d-1,k-1) and G(d-1,k).
    Decompose(DecomposeArgs),
    /// Exact total-variation distance to uniform after t walk steps.
    WalkDiag(WalkDiagArgs),
    /// Check every closed form against brute force.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, Args)]
pub struct GraphArgs {
    /// Number of coordinates.
    #[arg(long)]
    pub d: u32,
    /// Number of ones per vertex.
    #[arg(long)]
    pub k: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum RuleArg {
    #[default]
    RejectionPair,
    DirectSwap,
}

impl From<RuleArg> for StepRule {
    fn from(r: RuleArg) -> Self {
        match r {
            RuleArg::RejectionPair => StepRule::RejectionPair,
            RuleArg::DirectSwap => StepRule::DirectSwap,
        }
    }
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Number of subsets.
    #[arg(long, default_value_t = 1)]
    pub n: u64,
    /// Walk length per subset; defaults to ceil(ln(C(d,k)/0.01) / spectral gap).
    #[arg(long)]
    pub steps: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Stay put with probability 1/2 before every step.
    #[arg(long)]
    pub lazy: bool,
    #[arg(long, value_enum, default_value_t)]
    pub rule: RuleArg,
    /// Start vertex as a 0/1 string (default: first k coordinates set).
    #[arg(long)]
    pub start: Option<String>,
    /// Line form of each subset.
    #[arg(long, value_enum, default_value_t)]
    pub style: SampleStyle,
}

#[derive(Debug, Args)]
pub struct UniformityArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Sample file as written by `sample` (default: stdin).
    #[arg(long, value_name = "FILE")]
    pub input: Option<PathBuf>,
    #[arg(long, default_value_t = 0.001)]
    pub significance: f64,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Also eigensolve the explicit adjacency matrix and compare.
    #[arg(long)]
    pub verify: bool,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long, default_value_t = 1)]
    pub depth: u32,
}

#[derive(Debug, Args)]
pub struct WalkDiagArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Last step to report.
    #[arg(long, default_value_t = 20)]
    pub max_t: u32,
    #[arg(long)]
    pub lazy: bool,
    /// Start vertex as a 0/1 string (default: first k coordinates set).
    #[arg(long)]
    pub start: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Fault {
    /// Degree formula returns k(d-k) + 1.
    DegreePlusOne,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 9)]
    pub d_max: u32,
    /// Corrupt a closed form to test the harness itself.
    #[arg(long, value_enum, hide = true)]
    pub inject_fault: Option<Fault>,
}

#[derive(Debug, Error)]
pub enum Failure {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Resource(String),
    #[error("{0}")]
    Io(#[from] io::Error),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Resource(_) | Failure::Io(_) => 3,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SizeCap { .. } | Error::Overflow(_) | Error::PathologicalRng(_) => {
                Failure::Resource(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

/// Report text plus exit status; `stderr` lines are printed after the body.
struct Outcome {
    body: String,
    code: u8,
    stderr: Vec<String>,
}

impl Outcome {
    fn ok(body: String) -> Self {
        Outcome {
            body,
            code: 0,
            stderr: Vec::new(),
        }
    }
}

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let fmt = cli.format;
    let result = match cli.command {
        Command::Stats(a) => params(a).and_then(|p| cmd_stats(p, fmt)),
        Command::Sample(a) => cmd_sample(&a, fmt),
        Command::Uniformity(a) => cmd_uniformity(&a, fmt),
        Command::Spectrum(a) => cmd_spectrum(&a, fmt),
        Command::Decompose(a) => cmd_decompose(&a, fmt),
        Command::WalkDiag(a) => cmd_walk_diag(&a, fmt),
        Command::Verify(a) => cmd_verify(&a, fmt),
    };
    let outcome = match result {
        Ok(o) => o,
        Err(f) => {
            let _ = writeln!(err, "error: {f}");
            return f.exit_code();
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &outcome.body),
        None => out.write_all(outcome.body.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: {e}");
        return 3;
    }
    for line in &outcome.stderr {
        let _ = writeln!(err, "{line}");
    }
    outcome.code
}

fn params(a: GraphArgs) -> Result<GraphParams, Failure> {
    Ok(GraphParams::new(a.d, a.k)?)
}

fn start_vertex(p: GraphParams, start: Option<&str>) -> Result<Option<Vertex>, Failure> {
    start
        .map(|s| Vertex::parse_in(p, s))
        .transpose()
        .map_err(Failure::from)
}

fn csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut s = header.join(",");
    s.push('\n');
    for row in rows {
        s.push_str(&row.join(","));
        s.push('\n');
    }
    s
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map_or_else(String::new, |v| v.to_string())
}

#[derive(Serialize)]
struct StatsReport {
    d: u32,
    k: u32,
    vertices: u64,
    degree: u64,
    edges: Option<u64>,
    diameter: Option<u32>,
    clique_number: u32,
    regime: &'static str,
    isomorphic_to: Option<String>,
    notes: Vec<String>,
}

fn cmd_stats(p: GraphParams, fmt: OutputFormat) -> Result<Outcome, Failure> {
    let mut notes = Vec::new();
    let edges = match edge_count(p) {
        Ok(e) => Some(e),
        Err(e) => {
            notes.push(format!("edge count: {e}"));
            None
        }
    };
    let (regime, isomorphic_to) = match p.regime() {
        Regime::Restricted => ("k <= d/2", None),
        Regime::Complemented => {
            let (q, _) = complement_params(p);
            notes.push(format!(
                "{p} is isomorphic to {q} by complementing coordinates; \
                 distance and diameter formulas apply to {q}"
            ));
            ("k > d/2", Some(q.to_string()))
        }
    };
    let report = StatsReport {
        d: p.d(),
        k: p.k(),
        vertices: vertex_count(p)?,
        degree: degree(p),
        edges,
        diameter: diameter(p).ok(),
        clique_number: clique_number(p),
        regime,
        isomorphic_to,
        notes,
    };
    let body = match fmt {
        OutputFormat::Json => to_json(&report),
        OutputFormat::Csv => csv(
            &[
                "d",
                "k",
                "vertices",
                "degree",
                "edges",
                "diameter",
                "clique_number",
                "regime",
            ],
            [vec![
                report.d.to_string(),
                report.k.to_string(),
                report.vertices.to_string(),
                report.degree.to_string(),
                opt(report.edges),
                opt(report.diameter),
                report.clique_number.to_string(),
                report.regime.to_string(),
            ]],
        ),
        OutputFormat::Text => {
            let mut s = format!("{p}\n");
            let _ = writeln!(s, "vertices       {}", report.vertices);
            let _ = writeln!(s, "degree         {}", report.degree);
            match report.edges {
                Some(e) => {
                    let _ = writeln!(s, "edges          {e}");
                }
                None => s.push_str("edges          overflows u64\n"),
            }
            match (&report.diameter, &report.isomorphic_to) {
                (Some(dm), _) => {
                    let _ = writeln!(s, "diameter       {dm}");
                }
                (None, Some(q)) => {
                    let _ = writeln!(s, "diameter       n/a for k > d/2 ({p} ≅ {q})");
                }
                (None, None) => {}
            }
            let _ = writeln!(s, "clique number  {}", report.clique_number);
            let _ = writeln!(s, "regime         {}", report.regime);
            for n in &report.notes {
                let _ = writeln!(s, "note: {n}");
            }
            s
        }
    };
    Ok(Outcome::ok(body))
}

#[derive(Serialize)]
struct SampleReport {
    d: u32,
    k: u32,
    n: u64,
    steps: u64,
    steps_source: &'static str,
    seed: u64,
    rule: &'static str,
    lazy: bool,
    samples: Vec<String>,
}

fn cmd_sample(a: &SampleArgs, fmt: OutputFormat) -> Result<Outcome, Failure> {
    let p = params(a.graph)?;
    let start = start_vertex(p, a.start.as_deref())?;
    let (steps, steps_source) = match a.steps {
        Some(s) => (s, "flag"),
        None => (
            default_steps(p, a.lazy, DEFAULT_EPSILON)?,
            "default heuristic",
        ),
    };
    let config = WalkConfig::new(p, a.seed, steps)
        .lazy(a.lazy)
        .rule(a.rule.into());
    let samples: Vec<Vertex> = (0..a.n)
        .into_par_iter()
        .map(|i| sample_stream(&config, start, i))
        .collect::<Result<_, _>>()?;
    let rule = match a.rule {
        RuleArg::RejectionPair => "rejection-pair",
        RuleArg::DirectSwap => "direct-swap",
    };
    let body = match fmt {
        OutputFormat::Json => to_json(&SampleReport {
            d: p.d(),
            k: p.k(),
            n: a.n,
            steps,
            steps_source,
            seed: a.seed,
            rule,
            lazy: a.lazy,
            samples: samples.iter().map(|&v| format_sample(v, a.style)).collect(),
        }),
        OutputFormat::Csv => {
            let mut header = vec!["sample".to_string()];
            header.extend((1..=p.k()).map(|i| format!("e{i}")));
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            csv(
                &header,
                samples.iter().enumerate().map(|(i, v)| {
                    std::iter::once(i.to_string())
                        .chain(v.subset().iter().map(u32::to_string))
                        .collect()
                }),
            )
        }
        OutputFormat::Text => {
            let mut s = format!(
                "# {p} n={} steps={steps} ({}) seed={} rule={rule} lazy={}\n",
                a.n,
                if a.steps.is_some() {
                    "from --steps".to_string()
                } else {
                    format!("default: ceil(ln(C(d,k)/{DEFAULT_EPSILON})/spectral gap)")
                },
                a.seed,
                a.lazy
            );
            for v in &samples {
                s.push_str(&format_sample(*v, a.style));
                s.push('\n');
            }
            s
        }
    };
    Ok(Outcome::ok(body))
}

fn cmd_uniformity(a: &UniformityArgs, fmt: OutputFormat) -> Result<Outcome, Failure> {
    let p = params(a.graph)?;
    let text = match &a.input {
        Some(path) => std::fs::read_to_string(path)?,
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    let samples =
        parse_samples(p, &text).map_err(|(line, e)| Failure::Usage(format!("line {line}: {e}")))?;
    let report = uniformity_test(p, &samples, a.significance).map_err(|e| match e {
        UniformityError::Graph(g) => Failure::from(g),
        undersampled => Failure::Usage(undersampled.to_string()),
    })?;
    let body = match fmt {
        OutputFormat::Json => to_json(&report),
        OutputFormat::Csv => csv(
            &["d", "k", "samples", "cells", "statistic", "dof", "p_value", "significance", "pass"],
            [vec![
                report.d.to_string(),
                report.k.to_string(),
                report.samples.to_string(),
                report.cells.to_string(),
                report.statistic.to_string(),
                report.degrees_of_freedom.to_string(),
                report.p_value.to_string(),
                report.significance.to_string(),
                report.pass.to_string(),
            ]],
        ),
        OutputFormat::Text => format!(
            "{p}: {} samples over {} cells\nchi-square {:.4} on {} dof, p = {:.6}\n{} at significance {}\n",
            report.samples,
            report.cells,
            report.statistic,
            report.degrees_of_freedom,
            report.p_value,
            if report.pass { "pass" } else { "FAIL" },
            report.significance
        ),
    };
    Ok(Outcome {
        body,
        code: if report.pass { 0 } else { 1 },
        stderr: Vec::new(),
    })
}

fn cmd_spectrum(a: &SpectrumArgs, fmt: OutputFormat) -> Result<Outcome, Failure> {
    let p = params(a.graph)?;
    let mut stderr = Vec::new();
    // Isomorphic graphs share a spectrum.
    let q = match p.regime() {
        Regime::Restricted => p,
        Regime::Complemented => {
            let q = complement_params(p).0;
            stderr.push(format!(
                "note: {p} is isomorphic to {q}; spectrum computed for {q}"
            ));
            q
        }
    };
    let spectrum = closed_form_spectrum(q)?;
    let bounds = cheeger_bounds(q)?;
    let mut report = SpectrumReport::new(p, &spectrum, &bounds);
    let mut code = 0;
    let mut verdict = None;
    if a.verify {
        match verify_spectrum(q, a.tol) {
            Ok(v) => {
                verdict = Some(format!(
                    "verification: pass, max deviation {:.3e} < {:e}",
                    v.max_deviation, a.tol
                ));
                report.verification = Some(v);
            }
            Err(e) => {
                code = match e {
                    Error::SpectrumMismatch { .. } => 1,
                    _ => Failure::from(e.clone()).exit_code(),
                };
                verdict = Some(format!("verification: FAIL ({e})"));
                stderr.push(format!("error: {e}"));
            }
        }
    }
    let body = match fmt {
        OutputFormat::Json => to_json(&report),
        OutputFormat::Csv => csv(
            &["j", "eigenvalue", "multiplicity"],
            report.entries.iter().map(|e| {
                vec![
                    e.j.to_string(),
                    e.eigenvalue.to_string(),
                    e.multiplicity.to_string(),
                ]
            }),
        ),
        OutputFormat::Text => {
            let mut s = format!("{p}\n  j  eigenvalue  multiplicity\n");
            for e in &report.entries {
                let _ = writeln!(
                    s,
                    "{:>3}  {:>10}  {:>12}",
                    e.j, e.eigenvalue, e.multiplicity
                );
            }
            let _ = writeln!(
                s,
                "edge expansion bounds [{}, {:.6}] (r - lambda_1 = {})",
                report.lower, report.upper, report.gap
            );
            if let Some(v) = &verdict {
                s.push_str(v);
                s.push('\n');
            }
            s
        }
    };
    Ok(Outcome { body, code, stderr })
}

fn tree_text(node: &DecompositionTree, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    let name = format!("G({},{})", node.d, node.k);
    match (&node.pivot, node.children.as_slice()) {
        (Some(pivot), [ones, zeros]) => {
            let links = node.linking_edge_count.unwrap_or(0);
            let _ =
                writeln!(
                out,
                "{pad}{name}: {} vertices, {} edges; pivot {pivot} -> parts {}/{}, links {links}; \
                 identity {} = {} + {} + {links} {}",
                node.vertex_count,
                node.edge_count,
                ones.vertex_count,
                zeros.vertex_count,
                node.edge_count,
                ones.edge_count,
                zeros.edge_count,
                if node.identity_holds { "ok" } else { "VIOLATED" },
            );
            tree_text(ones, indent + 1, out);
            tree_text(zeros, indent + 1, out);
        }
        _ => {
            let kind = if node.k == 0 || node.k == node.d {
                "single vertex".to_string()
            } else if node.k == 1 {
                format!("K_{}", node.d)
            } else {
                "depth exhausted".to_string()
            };
            let _ = writeln!(
                out,
                "{pad}{name}: leaf ({kind}), {} vertices, {} edges",
                node.vertex_count, node.edge_count
            );
        }
    }
}

fn tree_rows(node: &DecompositionTree, path: String, depth: usize, rows: &mut Vec<Vec<String>>) {
    rows.push(vec![
        path.clone(),
        depth.to_string(),
        node.d.to_string(),
        node.k.to_string(),
        node.vertex_count.to_string(),
        node.edge_count.to_string(),
        opt(node.pivot),
        opt(node.linking_edge_count),
        node.identity_holds.to_string(),
    ]);
    for (child, tag) in node.children.iter().zip(["1", "0"]) {
        tree_rows(child, format!("{path}{tag}"), depth + 1, rows);
    }
}

fn cmd_decompose(a: &DecomposeArgs, fmt: OutputFormat) -> Result<Outcome, Failure> {
    let p = params(a.graph)?;
    let tree = recursive_decomposition(p, a.depth)?;
    let body = match fmt {
        OutputFormat::Json => to_json(&tree),
        OutputFormat::Csv => {
            let mut rows = Vec::new();
            tree_rows(&tree, "r".into(), 0, &mut rows);
            csv(
                &[
                    "node",
                    "depth",
                    "d",
                    "k",
                    "vertices",
                    "edges",
                    "pivot",
                    "linking_edges",
                    "identity_holds",
                ],
                rows,
            )
        }
        OutputFormat::Text => {
            let mut s = String::new();
            tree_text(&tree, 0, &mut s);
            s
        }
    };
    let ok = tree.all_identities_hold();
    Ok(Outcome {
        body,
        code: if ok { 0 } else { 1 },
        stderr: if ok {
            Vec::new()
        } else {
            vec!["error: edge-count identity violated".into()]
        },
    })
}

#[derive(Serialize)]
struct WalkDiagReport {
    d: u32,
    k: u32,
    start: String,
    lazy: bool,
    slow_mode_warning: bool,
    rows: Vec<TvRow>,
}

fn cmd_walk_diag(a: &WalkDiagArgs, fmt: OutputFormat) -> Result<Outcome, Failure> {
    let p = params(a.graph)?;
    let start = start_vertex(p, a.start.as_deref())?.unwrap_or_else(|| Vertex::canonical(p));
    let evo = tv_evolution(p, start, a.max_t, a.lazy)?;
    let rows: Vec<TvRow> = evo
        .tv
        .iter()
        .zip(0..)
        .map(|(&tv, t)| TvRow { t, tv })
        .collect();
    let mut stderr = Vec::new();
    if evo.slow_mode_warning {
        stderr.push(
            "warning: |lambda_min| >= lambda_1, so the negative end of the spectrum sets the \
             non-lazy convergence rate; consider --lazy"
                .to_string(),
        );
    }
    let body = match fmt {
        OutputFormat::Json => to_json(&WalkDiagReport {
            d: p.d(),
            k: p.k(),
            start: start.to_string(),
            lazy: a.lazy,
            slow_mode_warning: evo.slow_mode_warning,
            rows,
        }),
        OutputFormat::Csv => csv(
            &["t", "tv"],
            rows.iter().map(|r| vec![r.t.to_string(), r.tv.to_string()]),
        ),
        OutputFormat::Text => {
            let mut s = format!("# {p} start={start} lazy={}\n   t  tv\n", a.lazy);
            for r in &rows {
                let _ = writeln!(s, "{:>4}  {:.6e}", r.t, r.tv);
            }
            s
        }
    };
    Ok(Outcome {
        body,
        code: 0,
        stderr,
    })
}

fn cmd_verify(a: &VerifyArgs, fmt: OutputFormat) -> Result<Outcome, Failure> {
    let forms = match a.inject_fault {
        None => ClosedForms::default(),
        Some(Fault::DegreePlusOne) => ClosedForms::with_faulty_degree(),
    };
    let report = run_suite(a.d_max, &forms);
    let body = match fmt {
        OutputFormat::Json => to_json(&report),
        OutputFormat::Csv => csv(
            &["check", "d", "k", "expected", "actual", "pass"],
            report.records.iter().map(|r| {
                let quote =
                    |v: &serde_json::Value| format!("\"{}\"", v.to_string().replace('"', "\"\""));
                vec![
                    r.check.to_string(),
                    r.d.to_string(),
                    r.k.to_string(),
                    quote(&r.expected),
                    quote(&r.actual),
                    r.pass.to_string(),
                ]
            }),
        ),
        OutputFormat::Text => {
            let mut s = format!("verification suite, d <= {}\n", a.d_max);
            let _ = writeln!(s, "{:<22} {:>6} {:>6}", "check", "pass", "fail");
            for c in &report.summary {
                let _ = writeln!(s, "{:<22} {:>6} {:>6}", c.check, c.passed, c.failed);
            }
            let _ = writeln!(
                s,
                "total: {} passed, {} failed -> {}",
                report.passed,
                report.failed,
                if report.all_pass() { "PASS" } else { "FAIL" }
            );
            s
        }
    };
    let stderr = report
        .first_failure()
        .map(|r| vec![serde_json::to_string(r).expect("record serializes")])
        .unwrap_or_default();
    Ok(Outcome {
        body,
        code: if report.all_pass() { 0 } else { 1 },
        stderr,
    })
}
