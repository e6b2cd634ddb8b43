mod cache;

use bhl_core::coxeter::{CartanType, CoxeterError, CoxeterGroup, Element, DEFAULT_MAX_ORDER};
use bhl_core::hecke::Hecke;
use bhl_core::rpoly::RTable;
use bhl_core::sigma::{ClassificationReport, SigmaEngine, SigmaError, DEFAULT_CLASSIFY_MAX_ORDER};
use bhl_core::suites::{run_suite, SuiteOptions, UnknownSuite, Verification, SUITE_NAMES};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "bhl", version, about = "Weyl group combinatorics, Θ, r-polynomials and σ(u,v,w)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct TypeArg {
    /// Cartan type such as A2, B3, C2, D4 or G2
    #[arg(long = "type", short = 't')]
    cartan_type: CartanType,
}

#[derive(Subcommand)]
enum Command {
    /// Order and length histogram of the Weyl group
    Group {
        #[command(flatten)]
        ty: TypeArg,
        /// Also list rank, longest element and positive roots
        #[arg(long)]
        info: bool,
    },
    /// Mixed meet u(u⁻¹ ↓ U_w)
    Meet {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(short)]
        u: String,
        #[arg(short)]
        w: String,
    },
    /// v_min(u, w) = U_{w⁻¹} ↓ u
    Vmin {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(short)]
        u: String,
        #[arg(short)]
        w: String,
    },
    /// Θ(x, y, w)
    Theta {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(short)]
        x: String,
        #[arg(short)]
        y: String,
        #[arg(short)]
        w: String,
    },
    /// r_{u,v}
    Rpoly {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(short)]
        u: String,
        #[arg(short)]
        v: String,
        /// Print the bar involution q ↦ q⁻¹ of r_{u,v}
        #[arg(long)]
        bar: bool,
    },
    /// σ(u, v, w)
    Sigma {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(short)]
        u: String,
        #[arg(short)]
        v: String,
        #[arg(short)]
        w: String,
        #[arg(long, value_enum, default_value_t = TextFormat::Text)]
        format: TextFormat,
    },
    /// Classify every triple (u, v, w) with v ≥ v_min(u, w)
    Classify {
        #[command(flatten)]
        ty: TypeArg,
        /// Worker threads (default: all cores)
        #[arg(long)]
        jobs: Option<usize>,
        /// Directory holding cached r-polynomial tables
        #[arg(long, env = "BHL_CACHE_DIR")]
        cache: Option<PathBuf>,
        /// Write the report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
    },
    /// Run verification suites; exits 1 if any check fails
    Verify {
        #[command(flatten)]
        ty: TypeArg,
        /// Suite name, or "all"
        #[arg(long, value_parser = suite_name)]
        suite: String,
        /// Worker threads (default: all cores)
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TextFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Csv,
}

fn suite_name(s: &str) -> Result<String, String> {
    if s == "all" || SUITE_NAMES.contains(&s) {
        Ok(s.to_string())
    } else {
        Err(UnknownSuite(s.to_string()).to_string())
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
    #[error(transparent)]
    Sigma(#[from] SigmaError),
    #[error(transparent)]
    Suite(#[from] UnknownSuite),
    #[error("BHL_MAX_ORDER must be a positive integer, got {0:?}")]
    MaxOrder(String),
    #[error("cannot build worker pool: {0}")]
    Pool(String),
    #[error("{0}")]
    Io(#[from] io::Error),
    #[error("{0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Json(#[from] serde_json::Error),
}

/// `BHL_MAX_ORDER`, if set, replaces both the group-size and the
/// classification caps.
fn max_order_override() -> Result<Option<usize>, CliError> {
    match std::env::var("BHL_MAX_ORDER") {
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::MaxOrder(s)),
        },
        Err(_) => Ok(None),
    }
}

fn build_group(ty: &TypeArg) -> Result<CoxeterGroup, CliError> {
    let cap = max_order_override()?.unwrap_or(DEFAULT_MAX_ORDER);
    Ok(CoxeterGroup::with_max_order(ty.cartan_type, cap)?)
}

fn pool(jobs: Option<usize>) -> Result<rayon::ThreadPool, CliError> {
    let n = jobs
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
        .max(1);
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .map_err(|e| CliError::Pool(e.to_string()))
}

/// r-table from the cache directory when it holds a matching one; a fresh
/// table is written back.
fn rtable(group: &CoxeterGroup, cache_dir: Option<&PathBuf>) -> RTable {
    let Some(dir) = cache_dir else {
        return RTable::build(group);
    };
    let path = cache::path_for(dir, group);
    match cache::load(&path, group) {
        Ok(t) => return t,
        Err(cache::Miss::Absent) => {}
        Err(e) => eprintln!("bhl: ignoring cache {}: {e}", path.display()),
    }
    let table = RTable::build(group);
    if let Err(e) = cache::store(&path, group, &table) {
        eprintln!("bhl: could not write cache {}: {e}", path.display());
    }
    table
}

#[derive(Serialize)]
struct JsonReport<'a> {
    #[serde(rename = "type")]
    cartan_type: String,
    total: usize,
    nonzero: usize,
    gk: usize,
    exceptions: Vec<Triple<'a>>,
}

#[derive(Serialize)]
struct Triple<'a> {
    u: &'a str,
    v: &'a str,
    w: &'a str,
}

#[derive(Serialize)]
struct CsvRow<'a> {
    #[serde(rename = "type")]
    cartan_type: &'a str,
    u: &'a str,
    v: &'a str,
    w: &'a str,
    is_gk: bool,
    sigma0: &'a str,
}

fn render_report(report: &ClassificationReport, format: ReportFormat) -> Result<Vec<u8>, CliError> {
    let ty = report.cartan_type.to_string();
    match format {
        ReportFormat::Json => {
            let json = JsonReport {
                cartan_type: ty,
                total: report.total_triples,
                nonzero: report.nonzero_count,
                gk: report.gk_count,
                exceptions: report
                    .exceptions
                    .iter()
                    .map(|t| Triple {
                        u: &t.u,
                        v: &t.v,
                        w: &t.w,
                    })
                    .collect(),
            };
            let mut out = serde_json::to_vec_pretty(&json)?;
            out.push(b'\n');
            Ok(out)
        }
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in &report.rows {
                w.serialize(CsvRow {
                    cartan_type: &ty,
                    u: &r.u,
                    v: &r.v,
                    w: &r.w,
                    is_gk: r.is_gk,
                    sigma0: &r.sigma0,
                })?;
            }
            w.into_inner().map_err(|e| CliError::Io(e.into_error()))
        }
    }
}

#[derive(Serialize)]
struct SigmaJson {
    #[serde(rename = "type")]
    cartan_type: String,
    u: String,
    v: String,
    w: String,
    v_min: String,
    sigma: String,
    is_gk: Option<bool>,
}

fn print_verification(out: &mut impl Write, suite: &str, v: &Verification) -> io::Result<()> {
    let status = if v.passed() { "PASS" } else { "FAIL" };
    writeln!(out, "{status} {suite}: {} ({} checked, {} failed)", v.name, v.checked, v.failed)?;
    for msg in &v.failures {
        writeln!(out, "    {msg}")?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Group { ty, info } => {
            let g = build_group(&ty)?;
            writeln!(out, "type: {}", g.cartan_type())?;
            writeln!(out, "order: {}", g.order())?;
            let hist: Vec<String> = g.length_histogram().iter().map(|c| c.to_string()).collect();
            writeln!(out, "lengths: {}", hist.join(" "))?;
            if info {
                writeln!(out, "rank: {}", g.rank())?;
                writeln!(out, "longest: {}", g.format_element(g.longest()))?;
                writeln!(out, "positive roots:")?;
                for (k, root) in g.root_system().positive_roots().iter().enumerate() {
                    let coords: Vec<String> = root.coords().iter().map(|c| c.to_string()).collect();
                    writeln!(out, "  ({})  {}  reflection {}", coords.join(","), root, g.format_element(g.reflection(k)))?;
                }
            }
        }
        Command::Meet { ty, u, w } => {
            let g = build_group(&ty)?;
            let (u, w) = (g.parse_element(&u)?, g.parse_element(&w)?);
            let d = bhl_core::demazure::Demazure::new(&g);
            writeln!(out, "{}", g.format_element(d.mixed_meet(u, w)))?;
        }
        Command::Vmin { ty, u, w } => {
            let g = build_group(&ty)?;
            let (u, w) = (g.parse_element(&u)?, g.parse_element(&w)?);
            let d = bhl_core::demazure::Demazure::new(&g);
            writeln!(out, "{}", g.format_element(d.v_min(u, w)))?;
        }
        Command::Theta { ty, x, y, w } => {
            let g = build_group(&ty)?;
            let [x, y, w] = parse3(&g, [&x, &y, &w])?;
            writeln!(out, "{}", Hecke::new(&g).theta(x, y, w))?;
        }
        Command::Rpoly { ty, u, v, bar } => {
            let g = build_group(&ty)?;
            let (u, v) = (g.parse_element(&u)?, g.parse_element(&v)?);
            let table = rtable(&g, None);
            let r = table.get(u, v);
            if bar {
                writeln!(out, "{}", r.bar())?;
            } else {
                writeln!(out, "{r}")?;
            }
        }
        Command::Sigma { ty, u, v, w, format } => {
            let g = build_group(&ty)?;
            let [u, v, w] = parse3(&g, [&u, &v, &w])?;
            let engine = SigmaEngine::new(&g);
            let sigma = engine.sigma(u, v, w);
            match format {
                TextFormat::Text => writeln!(out, "σ = {sigma}")?,
                TextFormat::Json => {
                    let is_gk = match engine.is_gk(u, v, w) {
                        Ok(b) => Some(b),
                        Err(SigmaError::BelowVMin { .. }) => None,
                        Err(e) => return Err(e.into()),
                    };
                    let json = SigmaJson {
                        cartan_type: g.cartan_type().to_string(),
                        u: g.format_element(u),
                        v: g.format_element(v),
                        w: g.format_element(w),
                        v_min: g.format_element(engine.v_min(u, w)),
                        sigma: sigma.to_string(),
                        is_gk,
                    };
                    serde_json::to_writer_pretty(&mut out, &json)?;
                    writeln!(out)?;
                }
            }
        }
        Command::Classify {
            ty,
            jobs,
            cache,
            out: out_path,
            format,
        } => {
            let g = build_group(&ty)?;
            let cap = max_order_override()?.unwrap_or(DEFAULT_CLASSIFY_MAX_ORDER);
            if g.order() > cap {
                return Err(SigmaError::CapExceeded { order: g.order(), cap }.into());
            }
            let pool = pool(jobs)?;
            let report = pool.install(|| {
                let engine = SigmaEngine::with_rtable(&g, rtable(&g, cache.as_ref()));
                engine.classify(pool.current_num_threads(), cap)
            })?;
            let bytes = render_report(&report, format)?;
            match out_path {
                Some(p) => std::fs::write(p, bytes)?,
                None => out.write_all(&bytes)?,
            }
        }
        Command::Verify { ty, suite, jobs } => {
            let g = build_group(&ty)?;
            let cache_dir = std::env::var_os("BHL_CACHE_DIR").map(PathBuf::from);
            let pool = pool(jobs)?;
            let names: Vec<&str> = if suite == "all" { SUITE_NAMES.to_vec() } else { vec![suite.as_str()] };
            let opts = SuiteOptions::default();
            let results = pool.install(|| {
                let engine = SigmaEngine::with_rtable(&g, rtable(&g, cache_dir.as_ref()));
                names
                    .par_iter()
                    .map(|&n| run_suite(&engine, n, &opts).map(|r| (n, r)))
                    .collect::<Result<Vec<_>, _>>()
            })?;
            let mut ok = true;
            for (name, checks) in &results {
                for v in checks {
                    ok &= v.passed();
                    print_verification(&mut out, name, v)?;
                }
            }
            if !ok {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn parse3(g: &CoxeterGroup, words: [&str; 3]) -> Result<[Element; 3], CliError> {
    Ok([g.parse_element(words[0])?, g.parse_element(words[1])?, g.parse_element(words[2])?])
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("bhl: {e}");
            ExitCode::from(2)
        }
    }
}
