//! Command-line front end for the operator-identity pipeline.
//!
//! Exit status: 0 when every check passes, 1 on a mismatch, 2 on a usage or
//! input error, 3 when a resource budget runs out.

mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{anyhow, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use opident::classify::{
    case_matrix, generic_matrix, reproduce_theorem, run_case, verify_point, CaseBudget, CaseSpec, CoefficientVector,
    KnownIdentityCatalog,
};
use opident::exactalg::MultiPoly;
use opident::groebner::{buchberger, Budget, GroebnerBasis, GroebnerError};
use opident::opcompose::{name_arguments, raw_paths, CompositionPath, ConsequenceMaps};
use opident::opmonoms::{parse_monomial, Basis};
use opident::polymat::{consequence_columns, minors_stream, partial_smith, MatrixError, MinorOptions};

use input::{read_element, ElementInput, UsageError};
use report::Emitter;

#[derive(Parser)]
#[command(name = "opident", version, about = "Classify operator identities of degree 2 and multiplicity 3")]
struct Cli {
    #[command(flatten)]
    config: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Serialize)]
struct RunConfig {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Write the report to a file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Seed for random probes.
    #[arg(long, default_value_t = 1, global = true)]
    seed: u64,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Largest number of critical pairs Buchberger may process.
    #[arg(long, default_value_t = 5_000_000, global = true)]
    max_pairs: u64,
    /// Largest intermediate Gröbner basis.
    #[arg(long, default_value_t = 20_000, global = true)]
    max_basis: usize,
    /// Wall-clock limit per Gröbner basis, in seconds.
    #[arg(long, default_value_t = 300, global = true)]
    timeout_secs: u64,
    /// Largest number of distinct minors kept in memory.
    #[arg(long, default_value_t = 400_000, global = true)]
    max_generators: usize,
    /// Suppress progress messages on stderr.
    #[arg(long, short, global = true)]
    quiet: bool,
}

impl RunConfig {
    fn budget(&self) -> Budget {
        Budget {
            max_pairs: Some(self.max_pairs),
            max_basis: Some(self.max_basis),
            wall_clock: Some(Duration::from_secs(self.timeout_secs)),
        }
    }

    fn minor_options(&self) -> MinorOptions {
        MinorOptions { max_generators: Some(self.max_generators) }
    }

    fn log(&self, msg: &str) {
        if !self.quiet {
            eprintln!("[opident] {msg}");
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Clone, Serialize)]
#[serde(rename_all = "lowercase", tag = "name")]
enum Command {
    /// List the basis of operator monomials of degree p and multiplicity q.
    Enumerate { p: usize, q: usize },
    /// Apply compositions to a monomial: one path, or all paths when omitted.
    Compose {
        monomial: String,
        /// A path such as "o1B,o2L" or "(∘1B, ∘2L)".
        #[arg(long)]
        path: Option<String>,
    },
    /// List the distinct consequences of an operator polynomial.
    Consequences {
        /// "generic", ten comma-separated coefficients, or a polynomial.
        #[arg(default_value = "generic")]
        element: String,
        /// Read the polynomial from a file, one term or coefficient list per line.
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Write the matrix of consequences as sparse triples.
    Matrix {
        #[arg(default_value = "generic")]
        element: String,
        #[arg(long)]
        file: Option<PathBuf>,
        /// Substitute the pinned values of a case into the general matrix.
        #[arg(long)]
        case: Option<usize>,
    },
    /// Partial Smith form of a case matrix.
    Smith {
        case: usize,
        /// Also print the residual block.
        #[arg(long)]
        residual: bool,
    },
    /// Statistics and generators of a determinantal ideal of a case residual.
    Minors {
        case: usize,
        r: usize,
        /// Print every distinct monic generator.
        #[arg(long)]
        generators: bool,
    },
    /// Reduced Gröbner basis of a determinantal ideal or of polynomials in a file.
    Groebner {
        #[arg(long, requires = "r")]
        case: Option<usize>,
        #[arg(long, requires = "case")]
        r: Option<usize>,
        /// One polynomial per line.
        #[arg(long, conflicts_with = "case")]
        input: Option<PathBuf>,
    },
    /// Run the full analysis of one case.
    Case {
        k: usize,
        /// Largest minor size to study.
        #[arg(long, default_value_t = 4)]
        max_rank: usize,
        /// Skip the {0, ±1, ±i} grid scan of the zero sets.
        #[arg(long)]
        no_grid: bool,
    },
    /// Rank of the matrix of consequences at a coefficient vector.
    Verify {
        /// Ten comma-separated coefficients or an identity in x, y.
        point: String,
        /// Fail with status 1 unless the rank equals this value.
        #[arg(long)]
        expect: Option<usize>,
    },
    /// Check the complete rank classification.
    Theorem {
        /// Random points for the generic-rank probe.
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

enum Status {
    Pass,
    Mismatch,
    Budget,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.config.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(Status::Pass) => ExitCode::SUCCESS,
        Ok(Status::Mismatch) => ExitCode::from(1),
        Ok(Status::Budget) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn case_spec(k: usize) -> Result<CaseSpec> {
    CaseSpec::new(k).map_err(|e| UsageError(e.to_string()).into())
}

fn run(cli: &Cli) -> Result<Status> {
    let cfg = &cli.config;
    let out = Emitter::new(cfg.format == Format::Json, cfg.output.clone(), json!({ "config": cfg, "command": cli.command }));
    let started = Instant::now();
    match &cli.command {
        Command::Enumerate { p, q } => {
            let basis = Basis::new(*p, *q).map_err(|e| UsageError(e.to_string()))?;
            let rows: Vec<_> = basis
                .monomials()
                .iter()
                .enumerate()
                .map(|(i, m)| json!({ "rank": i + 1, "monomial": m.to_string(), "dyck": m.to_dyck().to_string() }))
                .collect();
            let text: String = basis
                .monomials()
                .iter()
                .enumerate()
                .map(|(i, m)| format!("{:>4}  {:<24} {}\n", i + 1, m.to_string(), m.to_dyck()))
                .collect();
            out.emit(&json!({ "p": p, "q": q, "count": basis.len(), "monomials": rows }), &text)?;
        }
        Command::Compose { monomial, path } => {
            let m = parse_monomial(monomial).map_err(|e| UsageError(e.to_string()))?;
            let paths: Vec<CompositionPath> = match path {
                Some(p) => vec![p.parse().map_err(|e: opident::opmonoms::MonomialError| UsageError(e.to_string()))?],
                None => raw_paths(m.degree()),
            };
            let mut rows = Vec::new();
            let mut text = String::new();
            for p in paths {
                let image = p.apply(&m).map_err(|e| UsageError(e.to_string()))?;
                text.push_str(&format!("{p:<14} {image}\n"));
                rows.push(json!({ "path": p.to_string(), "image": image.to_string() }));
            }
            out.emit(&json!({ "monomial": m.to_string(), "results": rows }), &text)?;
        }
        Command::Consequences { element, file } => {
            let (value, text) = match read_element(element, file.as_deref())? {
                ElementInput::Generic => consequences_listing(&generic_matrix_element())?,
                ElementInput::Numeric(e) => consequences_listing(&e)?,
            };
            out.emit(&value, &text)?;
        }
        Command::Matrix { element, file, case } => {
            let (value, text) = if let Some(k) = case {
                let m = case_matrix(case_spec(*k)?);
                (matrix_json(&m, &generic_matrix().paths), m.to_sparse_text(&k.to_string()))
            } else {
                match read_element(element, file.as_deref())? {
                    ElementInput::Generic => {
                        let g = generic_matrix();
                        (matrix_json(&g.matrix, &g.paths), g.matrix.to_sparse_text("generic"))
                    }
                    ElementInput::Numeric(e) => {
                        let (m, paths) = consequence_columns(&e)?;
                        (matrix_json(&m, &paths), m.to_sparse_text("input"))
                    }
                }
            };
            out.emit(&value, &text)?;
        }
        Command::Smith { case, residual } => {
            let s = partial_smith(&case_matrix(case_spec(*case)?))?;
            let c = s.residual_nonzero();
            let value = json!({
                "case": case,
                "identity_block": s.identity_size,
                "residual": s.residual_shape(),
                "residual_nonzero_rows": c.rows(),
                "operations": s.op_log.len(),
                "replay_ok": s.replay_matches(),
                "block_diagonal": s.is_block_diagonal(),
                "residual_matrix": residual.then(|| c.to_sparse_text(&case.to_string())),
            });
            let shape = s.residual_shape();
            let mut text = format!(
                "case {case}: identity block {}, residual {}x{} ({} zero rows), {} operations, replay {}\n",
                s.identity_size,
                shape.rows,
                shape.cols,
                shape.zero_rows,
                s.op_log.len(),
                if s.replay_matches() { "ok" } else { "FAILED" }
            );
            if *residual {
                text.push_str(&c.to_sparse_text(&case.to_string()));
            }
            out.emit(&value, &text)?;
        }
        Command::Minors { case, r, generators } => {
            let c = partial_smith(&case_matrix(case_spec(*case)?))?.residual_nonzero();
            cfg.log(&format!("case {case}: streaming {r}-minors of a {}x{} residual", c.rows(), c.cols()));
            let g = match minors_stream(&c, *r, cfg.minor_options()) {
                Ok(g) => g,
                Err(MatrixError::MemoryCap { cap, partial }) => {
                    cfg.log(&format!("generator cap {cap} exceeded"));
                    out.emit(&json!({ "status": "generator cap exceeded", "stats": partial }), &partial.to_text())?;
                    return Ok(Status::Budget);
                }
                Err(MatrixError::MinorSize { r, max }) => {
                    return Err(UsageError(format!("minor size {r} outside 1..={max}")).into())
                }
                Err(e) => return Err(e.into()),
            };
            let mut shown = g.clone();
            if !generators {
                shown.generators.clear();
            }
            let gens: Vec<String> = shown.generators.iter().map(|p| p.to_string()).collect();
            out.emit(&json!({ "stats": g, "generators": gens }), &shown.to_text())?;
        }
        Command::Groebner { case, r, input } => {
            let gens: Vec<MultiPoly> = match (case, r, input) {
                (Some(k), Some(r), None) => {
                    let c = partial_smith(&case_matrix(case_spec(*k)?))?.residual_nonzero();
                    minors_stream(&c, *r, cfg.minor_options())
                        .map_err(|e| match e {
                            MatrixError::MinorSize { .. } => anyhow!(UsageError(e.to_string())),
                            other => anyhow!(other),
                        })?
                        .generators
                }
                (None, None, Some(path)) => input::read_polynomials(path)?,
                _ => return Err(UsageError("give either --case and --r, or --input".into()).into()),
            };
            cfg.log(&format!("Buchberger on {} generators", gens.len()));
            match buchberger(&gens, cfg.budget()) {
                Ok(gb) => out.emit(&groebner_json(&gb), &gb.to_text())?,
                Err(GroebnerError::BudgetExhausted { kind, stats }) => {
                    out.emit(&json!({ "status": format!("{kind} exhausted"), "stats": stats }), &format!("{kind} exhausted\n"))?;
                    return Ok(Status::Budget);
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::Case { k, max_rank, no_grid } => {
            let spec = case_spec(*k)?;
            if !(1..=4).contains(max_rank) {
                return Err(UsageError("--max-rank must be in 1..=4".into()).into());
            }
            let budget = CaseBudget {
                max_rank: *max_rank,
                minors: cfg.minor_options(),
                groebner: cfg.budget(),
                grid_scan: !no_grid,
            };
            cfg.log(&format!("case {k}: partial Smith form, minors and Gröbner bases up to r={max_rank}"));
            let rep = run_case(spec, &budget)?;
            cfg.log(&format!("case {k}: done in {:.1?}", started.elapsed()));
            out.emit(&serde_json::to_value(&rep)?, &report::case_text(&rep))?;
            if rep.budget_exhausted {
                return Ok(Status::Budget);
            }
            if !rep.passed() {
                return Ok(Status::Mismatch);
            }
        }
        Command::Verify { point, expect } => {
            let v: CoefficientVector = point.parse().map_err(|e: opident::classify::ClassifyError| UsageError(e.to_string()))?;
            let rank = verify_point(&v);
            let value = json!({ "vector": v, "equation": v.render_equation(), "rank": rank, "expected": expect });
            out.emit(&value, &format!("{rank}\n"))?;
            if expect.is_some_and(|e| e != rank) {
                eprintln!("rank {rank} differs from expected {}", expect.unwrap_or_default());
                return Ok(Status::Mismatch);
            }
        }
        Command::Theorem { trials } => {
            cfg.log(&format!("checking 14 identities, {trials} random points and the full-rank cases"));
            let rep = reproduce_theorem(&KnownIdentityCatalog::standard(), *trials, cfg.seed)?;
            out.emit(&serde_json::to_value(&rep)?, &report::theorem_text(&rep))?;
            if !rep.passed() {
                return Ok(Status::Mismatch);
            }
        }
    }
    Ok(Status::Pass)
}

fn generic_matrix_element() -> opident::opcompose::OperatorElement<MultiPoly> {
    opident::opcompose::OperatorElement::general(2, 3).expect("M(2,3)")
}

fn consequences_listing<C>(e: &opident::opcompose::OperatorElement<C>) -> Result<(serde_json::Value, String)>
where
    C: opident::exactalg::Ring + std::fmt::Display,
{
    let maps = ConsequenceMaps::new(e.degree(), e.multiplicity())?;
    let raw = maps.raw(e).len();
    let distinct = maps.distinct(e);
    let mut rows = Vec::new();
    let mut text = format!(
        "{} distinct consequences of {} raw paths, in M({}, {})\n",
        distinct.len(),
        raw,
        maps.target.degree(),
        maps.target.multiplicity()
    );
    for c in &distinct {
        let body = c.element.render(&maps.target);
        text.push_str(&format!("{:<14} {}\n", c.path.to_string(), name_arguments(&body)));
        rows.push(json!({ "path": c.path.to_string(), "element": body }));
    }
    Ok((json!({ "raw_paths": raw, "distinct": rows }), text))
}

fn matrix_json<T>(m: &opident::polymat::Matrix<T>, paths: &[CompositionPath]) -> serde_json::Value
where
    T: opident::exactalg::Ring + std::fmt::Display,
{
    let mut entries = Vec::new();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let e = m.get(i, j);
            if !e.is_zero() {
                entries.push(json!([i + 1, j + 1, e.to_string()]));
            }
        }
    }
    json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "zero_rows": m.zero_rows(),
        "paths": paths.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "entries": entries,
    })
}

fn groebner_json(gb: &GroebnerBasis) -> serde_json::Value {
    json!({
        "variables": "a1..a10",
        "order": "grevlex a1<a2<...<a10",
        "size": gb.len(),
        "polys": gb.polys().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "stats": gb.stats,
    })
}
