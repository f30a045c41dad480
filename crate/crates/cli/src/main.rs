mod cache;

use std::io::{self, BufWriter, Write};
use std::num::NonZeroUsize;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use csm_core::algebra::text::latex_poly;
use csm_core::flag::bruhat_covers;
use csm_core::render;
use csm_core::verify::{self, AxiomReport, RestrictionMatrix};
use csm_core::weight::{self, e_lambda, weight_function};
use csm_core::{IndexTuple, Method, Polynomial, Shape, TableFilling, DEFAULT_TERM_BUDGET};
use serde_json::{json, Value};

use crate::cache::Cache;

#[derive(Parser, Debug)]
#[command(
    name = "csm",
    version,
    about = "Equivariant CSM classes of Schubert cells in partial flag manifolds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Directory for cached restrictions.
    #[arg(long, global = true, env = "CSM_CACHE_DIR")]
    cache_dir: Option<PathBuf>,

    /// Worker threads; defaults to the available cores.
    #[arg(long, global = true, env = "CSM_JOBS")]
    jobs: Option<NonZeroUsize>,

    /// Largest number of symmetrization terms a shape may need.
    #[arg(long, global = true, default_value_t = DEFAULT_TERM_BUDGET,
          value_parser = clap::value_parser!(u64).range(1..))]
    term_budget: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the fixed points with cell dimensions and cover relations.
    Enumerate {
        #[arg(long)]
        lambda: Shape,
    },
    /// Print the weight function W_I and e_λ.
    Weight {
        #[arg(long)]
        lambda: Shape,
        #[arg(long)]
        index: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Sym)]
        method: MethodArg,
        /// Also print every filled table and its term.
        #[arg(long)]
        show_tables: bool,
    },
    /// Restrict the class of the cell I to one or all fixed points.
    Restrict {
        #[arg(long)]
        lambda: Shape,
        #[arg(long)]
        index: String,
        #[arg(long, required_unless_present = "all", conflicts_with = "all")]
        at: Option<String>,
        #[arg(long)]
        all: bool,
    },
    /// Check the axioms and identities; exits nonzero if any check fails.
    Verify {
        #[arg(long)]
        lambda: Shape,
        /// Only the checks whose first index is this tuple.
        #[arg(long, conflicts_with = "all")]
        index: Option<String>,
        /// Every check for the shape (the default).
        #[arg(long)]
        all: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Sym,
    Tables,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Sym => Method::Sym,
            MethodArg::Tables => Method::Tables,
        }
    }
}

/// Restrictions through the optional cache. Cache trouble is reported and the
/// value recomputed.
struct Engine {
    cache: Option<Cache>,
    budget: u64,
}

impl Engine {
    fn restriction(
        &self,
        shape: &Shape,
        i: &IndexTuple,
        j: &IndexTuple,
    ) -> csm_core::Result<Polynomial> {
        if let Some(cache) = &self.cache {
            match cache.get(shape, i, j) {
                Ok(Some(p)) => return Ok(p),
                Ok(None) => {}
                Err(e) => eprintln!("warning: {e:#}; recomputing"),
            }
        }
        let p = weight::restriction(i, j, self.budget)?;
        if let Some(cache) = &self.cache {
            if let Err(e) = cache.put(shape, i, j, &p) {
                eprintln!("warning: {e:#}");
            }
        }
        Ok(p)
    }
}

fn poly_json(p: &Polynomial) -> Value {
    serde_json::from_str(&p.to_json()).expect("polynomial JSON is valid")
}

fn emit_line(out: &mut impl Write, v: &Value) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string(v)?)?;
    Ok(())
}

fn enumerate(out: &mut impl Write, shape: &Shape, format: Format) -> Result<()> {
    let tuples = shape.index_tuples();
    let covers = bruhat_covers(&tuples);
    let names =
        |ix: &[usize]| -> Vec<String> { ix.iter().map(|&k| tuples[k].to_string()).collect() };
    if format == Format::Latex {
        writeln!(
            out,
            "\\begin{{tabular}}{{|l|c|}}\n\\hline\n$I$ & $\\dim \\Omega_I$ \\\\\n\\hline"
        )?;
    }
    for (t, (below, above)) in tuples.iter().zip(&covers) {
        match format {
            Format::Text => writeln!(
                out,
                "{t}\tdim={}\tcovers=[{}]\tcovered_by=[{}]",
                t.cell_dimension(),
                names(below).join(" "),
                names(above).join(" ")
            )?,
            Format::Json => emit_line(
                out,
                &json!({
                    "shape": shape.to_string(),
                    "index": t.to_string(),
                    "dim": t.cell_dimension(),
                    "covers": names(below),
                    "covered_by": names(above),
                }),
            )?,
            Format::Latex => writeln!(
                out,
                "${}$ & {} \\\\",
                render::tuple_latex(t),
                t.cell_dimension()
            )?,
        }
    }
    if format == Format::Latex {
        writeln!(out, "\\hline\n\\end{{tabular}}")?;
    }
    Ok(())
}

fn sigma_one_based(f: &TableFilling) -> Vec<Vec<usize>> {
    f.perms()
        .iter()
        .map(|p| p.iter().map(|x| x + 1).collect())
        .collect()
}

fn weight_cmd(
    out: &mut impl Write,
    shape: &Shape,
    i: &IndexTuple,
    method: Method,
    show_tables: bool,
    format: Format,
    budget: u64,
) -> Result<()> {
    let w = weight_function(i, method, budget)?;
    let e = e_lambda(shape);
    let fillings: Vec<TableFilling> = if show_tables {
        TableFilling::all(i).collect()
    } else {
        Vec::new()
    };
    match format {
        Format::Text => {
            writeln!(out, "W = {w}")?;
            writeln!(out, "e = {e}")?;
            for (n, f) in fillings.iter().enumerate() {
                writeln!(out, "\nfilling {} sigma={:?}", n + 1, sigma_one_based(f))?;
                write!(out, "{}", render::table_ascii(f))?;
                writeln!(out, "term = {}", render::term_text(f))?;
            }
        }
        Format::Json => {
            let mut record = json!({
                "shape": shape.to_string(),
                "I": i.to_string(),
                "W": poly_json(&w),
                "e_lambda": poly_json(&e),
            });
            if show_tables {
                record["fillings"] = fillings
                    .iter()
                    .map(|f| {
                        json!({
                            "sigma": sigma_one_based(f),
                            "table": render::table_ascii(f),
                            "term": render::term_text(f),
                        })
                    })
                    .collect();
            }
            emit_line(out, &record)?;
        }
        Format::Latex => {
            writeln!(out, "{}", render::weight_latex(i, &w))?;
            writeln!(out, "{}", render::e_lambda_latex(shape, &e))?;
            for f in &fillings {
                writeln!(out, "\n{}", render::table_latex(f))?;
                writeln!(out, "{}", render::term_latex(f))?;
            }
        }
    }
    Ok(())
}

fn restriction_record(
    out: &mut impl Write,
    format: Format,
    shape: &Shape,
    i: &IndexTuple,
    j: &IndexTuple,
    p: &Polynomial,
    keyed: bool,
) -> Result<()> {
    match format {
        Format::Text if keyed => writeln!(out, "{j}\t{p}")?,
        Format::Text => writeln!(out, "{p}")?,
        Format::Json => emit_line(
            out,
            &json!({
                "shape": shape.to_string(),
                "I": i.to_string(),
                "J": j.to_string(),
                "restriction": poly_json(p),
            }),
        )?,
        Format::Latex => writeln!(
            out,
            "\\kappa_{{{}}}|_{{x_{{{}}}}} = {}",
            render::tuple_latex(i),
            render::tuple_latex(j),
            latex_poly(p)
        )?,
    }
    Ok(())
}

fn verify_cmd(
    out: &mut impl Write,
    engine: &Engine,
    shape: &Shape,
    index: Option<&IndexTuple>,
    format: Format,
) -> Result<bool> {
    if format == Format::Latex {
        bail!("verify reports are available as text or json only");
    }
    let reports: Vec<AxiomReport> = match index {
        None => RestrictionMatrix::compute_with(shape, engine.budget, |i, j| {
            engine.restriction(shape, i, j)
        })?
        .verify(),
        Some(i) => {
            use rayon::prelude::*;
            weight::check_budget(shape, engine.budget)?;
            let tuples = shape.index_tuples();
            let row = tuples
                .par_iter()
                .map(|j| engine.restriction(shape, i, j))
                .collect::<csm_core::Result<Vec<_>>>()?;
            let diag = &row[tuples
                .iter()
                .position(|t| t == i)
                .expect("tuple belongs to shape")];
            let mut reports = vec![verify::diagonal(i, diag), verify::euler_top(i, diag)];
            for (j, value) in tuples.iter().zip(&row) {
                reports.push(verify::divisibility(i, j, value));
                if i != j {
                    reports.push(verify::degree(i, j, value)?);
                }
                reports.push(verify::vanishing(i, j, value));
            }
            reports
        }
    };
    let mut failed = 0;
    for r in &reports {
        if !r.passed() {
            failed += 1;
        }
        match format {
            Format::Json => writeln!(out, "{}", r.to_json_line())?,
            _ => writeln!(out, "{r}")?,
        }
    }
    eprintln!("{} checks, {} failed", reports.len(), failed);
    Ok(failed == 0)
}

fn run(cli: Cli) -> Result<bool> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.get())
            .build_global()
            .context("starting worker pool")?;
    }
    let cache = match &cli.cache_dir {
        Some(dir) => match Cache::open(dir) {
            Ok(c) => Some(c),
            Err(e) => {
                eprintln!("warning: {e:#}; continuing without a cache");
                None
            }
        },
        None => None,
    };
    let engine = Engine {
        cache,
        budget: cli.term_budget,
    };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let ok = match &cli.command {
        Command::Enumerate { lambda } => {
            enumerate(&mut out, lambda, cli.format)?;
            true
        }
        Command::Weight {
            lambda,
            index,
            method,
            show_tables,
        } => {
            let i = IndexTuple::parse_for(index, lambda)?;
            weight_cmd(
                &mut out,
                lambda,
                &i,
                (*method).into(),
                *show_tables,
                cli.format,
                cli.term_budget,
            )?;
            true
        }
        Command::Restrict {
            lambda,
            index,
            at,
            all,
        } => {
            let i = IndexTuple::parse_for(index, lambda)?;
            weight::check_budget(lambda, cli.term_budget)?;
            if *all {
                use rayon::prelude::*;
                let tuples = lambda.index_tuples();
                let values = tuples
                    .par_iter()
                    .map(|j| engine.restriction(lambda, &i, j))
                    .collect::<csm_core::Result<Vec<_>>>()?;
                for (j, p) in tuples.iter().zip(&values) {
                    restriction_record(&mut out, cli.format, lambda, &i, j, p, true)?;
                }
            } else {
                let j = IndexTuple::parse_for(at.as_deref().expect("clap requires --at"), lambda)?;
                let p = engine.restriction(lambda, &i, &j)?;
                restriction_record(&mut out, cli.format, lambda, &i, &j, &p, false)?;
            }
            true
        }
        Command::Verify { lambda, index, .. } => {
            let i = index
                .as_deref()
                .map(|s| IndexTuple::parse_for(s, lambda))
                .transpose()?;
            verify_cmd(&mut out, &engine, lambda, i.as_ref(), cli.format)?
        }
    };
    out.flush()?;
    Ok(ok)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if let Some(csm_core::Error::BudgetExceeded { .. }) =
                e.downcast_ref::<csm_core::Error>()
            {
                eprintln!("hint: refused without attempting; raise --term-budget to force it");
            }
            ExitCode::from(2)
        }
    }
}
