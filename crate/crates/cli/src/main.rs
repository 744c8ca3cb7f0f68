//! Command-line surface: builds the codes, runs the weight-distribution
//! engines against each other, extracts and verifies the designs, and
//! reproduces the closed-form tables as a report.
//!
//! Exit codes: 0 success / all checks OK; 1 usage or parameter error;
//! 2 a verification check found a mismatch; 3 internal inconsistency.

#![allow(clippy::manual_is_multiple_of)]

mod config;
mod report;

use clap::{Args, Parser, Subcommand, ValueEnum};
use config::{Format, RunConfig};
use cyclic_designs::{
    closed_form_code_wd, closed_form_dual_wd, design_to_json, enumerate_wd_sharded,
    extract_weight4_blocks, macwilliams, macwilliams_count, verify_design, write_block_file, Error,
    LinearCode, PairCoverage, WeightDistribution,
};
use num_traits::Zero;
use serde_json::json;
use std::fmt;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "cyclic-designs",
    version,
    about = "Extended cyclic codes, their exact weight distributions, and the 2-designs they support"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    /// Config file with key=value lines; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Largest code dimension enumerated exhaustively.
    #[arg(long)]
    guard: Option<usize>,
    /// Shard count for parallel enumeration (0 = automatic).
    #[arg(long)]
    shards: Option<usize>,
    /// Output format.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Directory for generated files.
    #[arg(long)]
    output_dir: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    /// Exhaustive enumeration.
    Enum,
    /// Enumerate the small side, transform to the other.
    Macwilliams,
    /// Closed-form tables.
    Closed,
    /// Every feasible engine, cross-validated.
    All,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build the cyclic code, its extension, and the dual; print parameters.
    Code {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        e: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Weight distributions by the chosen engine(s).
    Wdist {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        e: u32,
        #[arg(long, value_enum, default_value = "all")]
        method: MethodArg,
        #[command(flatten)]
        common: Common,
    },
    /// Extract the weight-4 blocks, verify pair coverage, write a block file.
    Steiner {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        e: u32,
        /// Block file destination (default: <output_dir>/steiner_m<m>_e<e>).
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Reproduce the closed-form tables and design parameters, with
    /// empirical columns where enumeration is feasible.
    Report {
        /// Comma-separated list of extension degrees.
        #[arg(long, value_delimiter = ',', required = true)]
        m: Vec<u32>,
        /// "all" or a comma-separated list of e values applied to each m.
        #[arg(long, default_value = "all")]
        e: String,
        /// Seed for the randomized spot checks.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
}

pub enum CliError {
    Lib(Error),
    Io(std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib(e) if e.is_internal() => 3,
            _ => 1,
        }
    }
}

fn main() {
    // Die quietly on a closed pipe (e.g. piping into `head`).
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            std::process::exit(code);
        }
    };
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(err.exit_code());
        }
    }
}

fn resolve(common: &Common) -> Result<RunConfig, CliError> {
    let mut cfg = match &common.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(g) = common.guard {
        cfg.guard = g;
    }
    if let Some(s) = common.shards {
        cfg.shards = s;
    }
    if let Some(f) = common.format {
        cfg.format = match f {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
        };
    }
    if let Some(dir) = &common.output_dir {
        cfg.output_dir = Some(dir.clone());
    }
    Ok(cfg)
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.cmd {
        Cmd::Code { m, e, common } => cmd_code(m, e, &resolve(&common)?),
        Cmd::Wdist {
            m,
            e,
            method,
            common,
        } => cmd_wdist(m, e, method, &resolve(&common)?),
        Cmd::Steiner { m, e, out, common } => cmd_steiner(m, e, out, &resolve(&common)?),
        Cmd::Report { m, e, seed, common } => report::cmd_report(&m, &e, seed, &resolve(&common)?),
    }
}

pub(crate) fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Builds the cyclic/extended/dual triple.
fn build_triple(
    m: u32,
    e: u32,
    cfg: &RunConfig,
) -> Result<(LinearCode, LinearCode, LinearCode), Error> {
    let ctx = cfg.field_ctx(m)?;
    let cyclic = LinearCode::build_cyclic(&ctx, e)?;
    let ext = cyclic.extend(&ctx)?;
    let dual = ext.dual();
    Ok((cyclic, ext, dual))
}

/// Minimum distances of the extended code and its dual, from whichever
/// engine is feasible: closed forms for m >= 4, enumeration otherwise.
fn distances(
    m: u32,
    e: u32,
    ext: &LinearCode,
    dual: &LinearCode,
    cfg: &RunConfig,
) -> Result<(usize, usize, &'static str), Error> {
    if m >= 4 {
        let (case, dual_wd) = closed_form_dual_wd(m, e)?;
        let d_dual = dual_wd.min_distance()?;
        for k in 1..=ext.length() {
            if !macwilliams_count(&dual_wd, case.dual_dimension, k)?.is_zero() {
                return Ok((k, d_dual, "closed form"));
            }
        }
        Err(Error::Inconsistency(
            "no nonzero code weight found".to_string(),
        ))
    } else {
        let ext_wd = enumerate_wd_sharded(ext, cfg.guard63(), cfg.shards)?;
        let dual_wd = enumerate_wd_sharded(dual, cfg.guard63(), cfg.shards)?;
        Ok((
            ext_wd.min_distance().unwrap_or(0),
            dual_wd.min_distance().unwrap_or(0),
            "enumeration",
        ))
    }
}

fn cmd_code(m: u32, e: u32, cfg: &RunConfig) -> Result<i32, CliError> {
    let (cyclic, ext, dual) = build_triple(m, e, cfg)?;
    let (d_ext, d_dual, route) = distances(m, e, &ext, &dual, cfg)?;
    match cfg.format {
        Format::Text => {
            println!(
                "cyclic   [{}, {}]  g_E = 0x{}",
                cyclic.length(),
                cyclic.dimension(),
                cyclic.cyclic_generator().hex()
            );
            println!(
                "extended [{}, {}, {}]",
                ext.length(),
                ext.dimension(),
                d_ext
            );
            println!(
                "dual     [{}, {}, {}]",
                dual.length(),
                dual.dimension(),
                d_dual
            );
            println!("minimum distances via {route}");
        }
        Format::Json => {
            let mut ext_desc = ext.descriptor_json();
            ext_desc["min_distance"] = json!(d_ext);
            let mut dual_desc = dual.descriptor_json();
            dual_desc["min_distance"] = json!(d_dual);
            let out = json!({
                "cyclic": cyclic.descriptor_json(),
                "extended": ext_desc,
                "dual": dual_desc,
                "distance_route": route,
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&out).expect("valid json")
            );
        }
    }
    Ok(0)
}

/// Total as "2^k" when the sum is a power of two, else decimal.
fn total_str(wd: &WeightDistribution) -> String {
    let t = wd.total();
    if t.count_ones() == 1 {
        format!("2^{}", t.bits() - 1)
    } else {
        t.to_string()
    }
}

/// Prints an aligned table of route columns over the union of weights.
fn print_route_table(title: &str, routes: &[(String, WeightDistribution)], max_weight: usize) {
    println!("{title}");
    let mut weights: Vec<usize> = routes
        .iter()
        .flat_map(|(_, wd)| wd.counts().keys().copied())
        .filter(|&w| w <= max_weight)
        .collect();
    weights.sort_unstable();
    weights.dedup();
    let mut widths: Vec<usize> = routes.iter().map(|(n, _)| n.len().max(8)).collect();
    for (i, (_, wd)) in routes.iter().enumerate() {
        for &w in &weights {
            widths[i] = widths[i].max(wd.count(w).to_string().len());
        }
    }
    print!("  {:>8}", "weight");
    for ((name, _), w) in routes.iter().zip(&widths) {
        print!("  {name:>w$}");
    }
    println!();
    for &wt in &weights {
        print!("  {wt:>8}");
        for ((_, wd), w) in routes.iter().zip(&widths) {
            print!("  {:>w$}", wd.count(wt).to_string());
        }
        println!();
    }
    let capped = routes.iter().any(|(_, wd)| wd.length() > max_weight);
    print!("  {:>8}", if capped { "sum" } else { "total" });
    for ((_, wd), w) in routes.iter().zip(&widths) {
        print!("  {:>w$}", total_str(wd));
    }
    println!();
}

fn routes_agree(routes: &[(String, WeightDistribution)], max_weight: usize) -> bool {
    routes.windows(2).all(|pair| {
        (0..=max_weight.min(pair[0].1.length())).all(|k| pair[0].1.count(k) == pair[1].1.count(k))
    })
}

fn routes_json(routes: &[(String, WeightDistribution)]) -> serde_json::Value {
    let mut map = serde_json::Map::new();
    for (name, wd) in routes {
        map.insert(name.clone(), wd.to_json());
    }
    serde_json::Value::Object(map)
}

fn cmd_wdist(m: u32, e: u32, method: MethodArg, cfg: &RunConfig) -> Result<i32, CliError> {
    let (_, ext, dual) = build_triple(m, e, cfg)?;
    let guard = cfg.guard63();
    let can_enum_ext = ext.dimension() <= guard;
    let can_enum_dual = dual.dimension() <= guard;
    let v = ext.length();
    // Transform-only routes on the code side are compared over a bounded
    // weight range; fully enumerated routes are compared everywhere.
    let code_cap = v.min(64);

    let mut dual_routes: Vec<(String, WeightDistribution)> = Vec::new();
    let mut code_routes: Vec<(String, WeightDistribution)> = Vec::new();

    let want = |which: MethodArg| method == MethodArg::All || method == which;

    if want(MethodArg::Closed) && m >= 4 {
        let (case, wd) = closed_form_dual_wd(m, e)?;
        dual_routes.push((format!("closed({})", case.tag.as_str()), wd));
        if m % 4 == 0 && gcd(m, e) == 2 {
            let mut counts = std::collections::BTreeMap::new();
            for k in 0..=code_cap {
                let c = closed_form_code_wd(m, e, k)?;
                if !c.is_zero() {
                    counts.insert(k, c);
                }
            }
            code_routes.push((
                format!("closed(k<={code_cap})"),
                WeightDistribution::new(v, counts)?,
            ));
        }
    }
    if want(MethodArg::Enum) {
        if can_enum_dual {
            dual_routes.push((
                "enum".to_string(),
                enumerate_wd_sharded(&dual, guard, cfg.shards)?,
            ));
        }
        if can_enum_ext {
            code_routes.push((
                "enum".to_string(),
                enumerate_wd_sharded(&ext, guard, cfg.shards)?,
            ));
        }
        if method == MethodArg::Enum && !can_enum_dual && !can_enum_ext {
            return Err(Error::GuardExceeded {
                dim: dual.dimension().min(ext.dimension()),
                guard,
            }
            .into());
        }
    }
    if want(MethodArg::Macwilliams) {
        if can_enum_dual {
            let dual_enum = enumerate_wd_sharded(&dual, guard, cfg.shards)?;
            code_routes.push((
                "macwilliams(dual enum)".to_string(),
                macwilliams(&dual_enum, dual.dimension())?,
            ));
        }
        if can_enum_ext {
            let ext_enum = enumerate_wd_sharded(&ext, guard, cfg.shards)?;
            dual_routes.push((
                "macwilliams(code enum)".to_string(),
                macwilliams(&ext_enum, ext.dimension())?,
            ));
        }
        if method == MethodArg::Macwilliams && !can_enum_dual && !can_enum_ext {
            return Err(Error::GuardExceeded {
                dim: dual.dimension().min(ext.dimension()),
                guard,
            }
            .into());
        }
    }

    if dual_routes.is_empty() && code_routes.is_empty() {
        return Err(Error::HypothesisNotMet(format!(
            "no feasible weight-distribution engine for m={m}, e={e} with this method and guard"
        ))
        .into());
    }

    let dual_ok = routes_agree(&dual_routes, v);
    let code_ok = routes_agree(&code_routes, code_cap);

    match cfg.format {
        Format::Text => {
            if !dual_routes.is_empty() {
                print_route_table(
                    &format!("dual [{}, {}] weight distribution", v, dual.dimension()),
                    &dual_routes,
                    v,
                );
                if dual_routes.len() > 1 {
                    println!(
                        "  routes agree: {}",
                        if dual_ok { "yes" } else { "MISMATCH" }
                    );
                }
            }
            if !code_routes.is_empty() {
                print_route_table(
                    &format!(
                        "code [{}, {}] weight distribution (weights <= {code_cap} shown)",
                        v,
                        ext.dimension()
                    ),
                    &code_routes,
                    code_cap,
                );
                if code_routes.len() > 1 {
                    println!(
                        "  routes agree: {}",
                        if code_ok { "yes" } else { "MISMATCH" }
                    );
                }
            }
        }
        Format::Json => {
            let out = json!({
                "m": m,
                "e": e,
                "dual": { "routes": routes_json(&dual_routes), "agree": dual_ok },
                "code": {
                    "routes": routes_json(&code_routes),
                    "agree": code_ok,
                    "compared_up_to_weight": code_cap,
                },
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&out).expect("valid json")
            );
        }
    }
    Ok(if dual_ok && code_ok { 0 } else { 2 })
}

fn cmd_steiner(m: u32, e: u32, out: Option<PathBuf>, cfg: &RunConfig) -> Result<i32, CliError> {
    let ctx = cfg.field_ctx(m)?;
    let design = extract_weight4_blocks(&ctx, e)?;
    let coverage = verify_design(&design)?;
    let dest = out.or_else(|| {
        cfg.output_dir.as_ref().map(|dir| {
            let suffix = match cfg.format {
                Format::Text => "txt",
                Format::Json => "json",
            };
            dir.join(format!("steiner_m{m}_e{e}.{suffix}"))
        })
    });
    if let Some(path) = &dest {
        if let Some(parent) = path.parent() {
            if !parent.as_os_str().is_empty() {
                std::fs::create_dir_all(parent)?;
            }
        }
        let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
        match cfg.format {
            Format::Text => write_block_file(&design, m, e, &mut file)?,
            Format::Json => {
                use std::io::Write;
                serde_json::to_writer_pretty(&mut file, &design_to_json(&design, m, e))
                    .map_err(std::io::Error::other)?;
                writeln!(&mut file)?;
            }
        }
    }
    match &coverage {
        PairCoverage::Uniform(lambda) => {
            println!(
                "b={} blocks on v={} points, every pair covered {lambda} time(s)",
                design.block_count(),
                design.v()
            );
            if *lambda == 1 {
                println!("Steiner system S(2, 4, {}) verified", design.v());
            } else {
                println!("NOT a Steiner system: lambda = {lambda}");
            }
        }
        PairCoverage::Irregular { expected, sample } => {
            println!("pair coverage is NOT uniform (reference count {expected}); offending pairs:");
            for (p, q, c) in sample {
                println!("  ({p:#x}, {q:#x}) covered {c} time(s)");
            }
        }
    }
    if let Some(path) = dest {
        println!("blocks written to {}", path.display());
    }
    Ok(match coverage {
        PairCoverage::Uniform(1) => 0,
        _ => 2,
    })
}
