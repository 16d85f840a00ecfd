use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use freebessel::classical::{
    bessel_law, bessel_log_fourier, default_p_max, fourier_tail_bound, power_pushforward,
};
use freebessel::freelaws::{
    default_route, density_grid, existence_probe, in_defined_region, moment, moments_via_partitions,
    moments_via_series, probe_sweep, ProbeReport, DEFAULT_PROBE_ORDER,
};
use freebessel::matrixlab::{
    bessel_word_moment, dw_model_mc_traces, glm_exact, hns_character_mc, product_model_mc_multi,
    weingarten_finite_n, DSpec, MCReport,
};
use freebessel::partitions::{
    enumerate_balanced, enumerate_nc_s, fuss_catalan, nc_s_block_histogram, star_moment, ColoredWord,
    DEFAULT_ENUMERATION_BOUND,
};
use freebessel::scalar::{integer, parse_rational, Rational};
use freebessel::Scalar;

#[derive(Parser, Debug)]
#[command(name = "freebessel", version, about = "Free and classical Bessel laws")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the payload here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Moments m_1..m_k of π_st from every applicable route.
    Moments(MomentsArgs),
    /// Density of π_st on a grid over its support.
    Density(DensityArgs),
    /// Noncrossing partition counts and lists.
    Partitions(PartitionsArgs),
    /// Monte Carlo for the random-matrix and character models.
    Mc(McArgs),
    /// Exact E tr((DW)^K) as a Laurent polynomial in the dimension.
    Glm(GlmArgs),
    /// The classical Bessel law as an atomic measure on Z[w].
    Classical(ClassicalArgs),
    /// Finite-n Weingarten integral of a colored word.
    Weingarten(WeingartenArgs),
    /// Hankel positivity probe at a point or over a grid.
    Probe(ProbeArgs),
}

#[derive(Args, Debug, Serialize)]
struct MomentsArgs {
    /// s as a rational ("1/2") or decimal ("0.5").
    #[arg(long)]
    s: String,
    #[arg(long)]
    t: String,
    /// Highest moment.
    #[arg(long, default_value_t = 6)]
    k: usize,
    /// Compute inside the critical rectangle (0,1)×(1,∞).
    #[arg(long)]
    force: bool,
}

#[derive(Args, Debug, Serialize)]
struct DensityArgs {
    #[arg(long)]
    s: u32,
    #[arg(long)]
    t: String,
    #[arg(long = "grid-points", default_value_t = 200)]
    grid_points: usize,
}

#[derive(Args, Debug, Serialize)]
struct PartitionsArgs {
    #[arg(long, default_value_t = 1)]
    s: usize,
    /// Size parameter: partitions of s·k points.
    #[arg(long)]
    k: Option<usize>,
    /// Colored word such as "UUŪŪ" (or "UUuu"); lists its balanced partitions.
    #[arg(long)]
    word: Option<String>,
    /// Also evaluate Σ t^{blocks} at this t.
    #[arg(long)]
    t: Option<String>,
    /// Print every partition.
    #[arg(long)]
    list: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Model {
    Product,
    Dw,
    Hns,
}

#[derive(Args, Debug, Serialize)]
struct McArgs {
    #[arg(long, value_enum)]
    model: Model,
    #[arg(long, default_value_t = 1)]
    s: usize,
    /// Moment index; several may be given.
    #[arg(long, num_args = 1.., default_values_t = vec![1])]
    k: Vec<usize>,
    /// DW model only: raw exponents m of tr((DW)^m), overriding k.
    #[arg(long, num_args = 1..)]
    m: Option<Vec<usize>>,
    #[arg(long, default_value_t = 64)]
    dim: usize,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Hns model only.
    #[arg(long, default_value = "1")]
    t: String,
    /// Hns model only.
    #[arg(long, default_value = "UŪ")]
    word: String,
}

#[derive(Args, Debug, Serialize)]
struct GlmArgs {
    #[arg(long = "K")]
    k: usize,
    /// Roots-of-unity block size; 1 means D = I.
    #[arg(long, default_value_t = 1)]
    s: usize,
    /// Also evaluate at this matrix dimension.
    #[arg(long)]
    dim: Option<u64>,
}

#[derive(Args, Debug, Serialize)]
struct ClassicalArgs {
    #[arg(long)]
    s: u32,
    #[arg(long)]
    t: String,
    /// Truncation; defaults to ceil(10 + 5t).
    #[arg(long = "p-max")]
    p_max: Option<u32>,
    /// Push forward by x ↦ x^s, giving p_st instead of p̃_st.
    #[arg(long)]
    powered: bool,
    /// Fourier check points "re,im"; repeatable.
    #[arg(long = "z", allow_hyphen_values = true)]
    z: Vec<String>,
}

#[derive(Args, Debug, Serialize)]
struct WeingartenArgs {
    #[arg(long)]
    s: usize,
    #[arg(long)]
    word: String,
    #[arg(long)]
    n: u64,
    #[arg(long, default_value = "1")]
    t: String,
}

#[derive(Args, Debug, Serialize)]
struct ProbeArgs {
    #[arg(long)]
    s: Option<String>,
    #[arg(long)]
    t: Option<String>,
    /// "start:end:count", inclusive of both ends.
    #[arg(long = "s-grid")]
    s_grid: Option<String>,
    #[arg(long = "t-grid")]
    t_grid: Option<String>,
    #[arg(long, default_value_t = DEFAULT_PROBE_ORDER)]
    order: usize,
}

enum CliError {
    Usage(String),
    Numeric(String),
    Region(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Numeric(_) => 2,
            CliError::Region(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Numeric(m) | CliError::Region(m) => m,
        }
    }
}

impl From<freebessel::Error> for CliError {
    fn from(e: freebessel::Error) -> Self {
        match e {
            freebessel::Error::InvalidParameter(_)
            | freebessel::Error::Parse(_)
            | freebessel::Error::BoundExceeded { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// What a command produced: the JSON results and, where supported, a CSV
/// rendering.
struct Output {
    results: Value,
    csv: Option<String>,
}

#[derive(Serialize)]
struct RunReport<'a> {
    command: &'a str,
    config: Value,
    results: Value,
    wall_time: f64,
    version: &'static str,
}

fn rational(name: &str, text: &str) -> CliResult<Rational> {
    parse_rational(text).ok_or_else(|| CliError::Usage(format!("--{name}: cannot read {text:?} as a number")))
}

fn positive(name: &str, text: &str) -> CliResult<Rational> {
    let r = rational(name, text)?;
    if r <= integer(0) {
        return Err(CliError::Usage(format!("--{name} must be positive")));
    }
    Ok(r)
}

fn word(text: &str) -> CliResult<ColoredWord> {
    text.parse().map_err(|e: freebessel::Error| CliError::Usage(e.to_string()))
}

fn grid(name: &str, spec: &str) -> CliResult<Vec<Rational>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || CliError::Usage(format!("--{name} expects start:end:count, got {spec:?}"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let a = rational(name, parts[0])?;
    let b = rational(name, parts[1])?;
    let n: i64 = parts[2].parse().map_err(|_| bad())?;
    if n < 1 {
        return Err(bad());
    }
    if n == 1 {
        return Ok(vec![a]);
    }
    Ok((0..n).map(|i| a.clone() + (b.clone() - a.clone()) * integer(i) / integer(n - 1)).collect())
}

fn cmd_moments(args: &MomentsArgs) -> CliResult<Output> {
    let s = positive("s", &args.s)?;
    let t = positive("t", &args.t)?;
    if args.k == 0 {
        return Err(CliError::Usage("--k must be at least 1".into()));
    }
    if !in_defined_region(s.to_f64(), t.to_f64()) && !args.force {
        return Err(CliError::Region(format!(
            "(s, t) = ({s}, {t}) lies in the critical rectangle (0,1)×(1,∞) where π_st need not exist; pass --force to compute the formal moments"
        )));
    }
    let series = match default_route(&s, &t) {
        Some(route) => Some((route, moments_via_series(&s, &t, args.k, route)?)),
        None => None,
    };
    let s_int = (s.is_integer() && s <= integer(64)).then(|| s.to_f64() as usize);
    let partitions = match s_int {
        Some(si) if si * args.k <= DEFAULT_ENUMERATION_BOUND => Some(moments_via_partitions(si, &t, args.k)?),
        _ => None,
    };
    let mut rows = Vec::new();
    let mut csv = String::from("k,closed_form,series,partitions,agree\n");
    let mut all_agree = true;
    for k in 1..=args.k {
        let closed = moment(&s, &t, k);
        let via_series = series.as_ref().map(|(_, m)| m.get(k));
        let via_parts = partitions.as_ref().map(|m| m.get(k));
        let agree = via_series.iter().chain(via_parts.iter()).all(|v| *v == closed);
        all_agree &= agree;
        let enc = |v: &Option<Rational>| v.as_ref().map(|x| x.encode());
        csv.push_str(&format!(
            "{k},{},{},{},{agree}\n",
            closed.encode(),
            enc(&via_series).unwrap_or_default(),
            enc(&via_parts).unwrap_or_default()
        ));
        rows.push(json!({
            "k": k,
            "closed_form": closed.encode(),
            "closed_form_float": closed.to_f64(),
            "series": enc(&via_series),
            "partitions": enc(&via_parts),
            "agree": agree,
        }));
    }
    Ok(Output {
        results: json!({
            "s": s.encode(),
            "t": t.encode(),
            "in_defined_region": in_defined_region(s.to_f64(), t.to_f64()),
            "series_route": series.map(|(r, _)| r),
            "moments": rows,
            "all_routes_agree": all_agree,
        }),
        csv: Some(csv),
    })
}

fn cmd_density(args: &DensityArgs) -> CliResult<Output> {
    let t = positive("t", &args.t)?.to_f64();
    if args.s == 0 {
        return Err(CliError::Usage("--s must be a positive integer".into()));
    }
    let g = density_grid(args.s, t, args.grid_points)?;
    Ok(Output { results: g.to_json(), csv: Some(g.to_csv()) })
}

fn cmd_partitions(args: &PartitionsArgs) -> CliResult<Output> {
    let t = args.t.as_deref().map(|x| rational("t", x)).transpose()?;
    let (parts, mut results) = match (&args.word, args.k) {
        (Some(w), _) => {
            let w = word(w)?;
            let parts = enumerate_balanced(args.s, &w)?;
            let mut r = json!({ "s": args.s, "word": w.to_string(), "count": parts.len() });
            if let Some(t) = &t {
                r["star_moment"] = json!(star_moment(args.s, t, &w)?.encode());
            }
            (parts, r)
        }
        (None, Some(k)) => {
            let parts = enumerate_nc_s(args.s, k)?;
            let hist = nc_s_block_histogram(args.s, k, DEFAULT_ENUMERATION_BOUND)?;
            let mut r = json!({
                "s": args.s,
                "k": k,
                "count": parts.len(),
                "fuss_catalan": fuss_catalan(&integer(args.s as i64), k).encode(),
                "blocks_histogram": hist,
            });
            if let Some(t) = &t {
                r["moment"] = json!(moment(&integer(args.s as i64), t, k).encode());
            }
            (parts, r)
        }
        (None, None) => return Err(CliError::Usage("give --k or --word".into())),
    };
    if args.list {
        results["partitions"] = json!(parts.iter().map(|p| p.to_string()).collect::<Vec<_>>());
    }
    Ok(Output { results, csv: None })
}

fn cmd_mc(args: &McArgs) -> CliResult<Output> {
    let reports: Vec<(MCReport, Option<f64>)> = match args.model {
        Model::Product => {
            let reps = product_model_mc_multi(args.s, args.dim, &args.k, args.trials, args.seed)?;
            reps.into_iter()
                .zip(&args.k)
                .map(|(r, &k)| (r, Some(fuss_catalan(&(args.s as f64), k))))
                .collect()
        }
        Model::Dw => {
            let exps: Vec<usize> = match &args.m {
                Some(m) => m.clone(),
                None => args.k.iter().map(|k| args.s * k).collect(),
            };
            let reps = dw_model_mc_traces(args.s, args.dim, &exps, args.trials, args.seed)?;
            reps.into_iter()
                .zip(&exps)
                .map(|(r, &m)| {
                    let limit = if m % args.s == 0 { fuss_catalan(&(args.s as f64), m / args.s) } else { 0.0 };
                    (r, Some(limit))
                })
                .collect()
        }
        Model::Hns => {
            let t = positive("t", &args.t)?.to_f64();
            let w = word(&args.word)?;
            let r = hns_character_mc(args.s, args.dim, t, args.trials, args.seed, &w)?;
            let limit = bessel_word_moment(args.s, t, &w, default_p_max(t).max(40))?.re;
            vec![(r, Some(limit))]
        }
    };
    let results: Vec<Value> = reports
        .into_iter()
        .map(|(r, limit)| {
            let mut v = serde_json::to_value(&r).expect("report serializes");
            v["limit"] = json!(limit);
            v
        })
        .collect();
    Ok(Output { results: json!({ "model": args.model, "reports": results }), csv: None })
}

fn cmd_glm(args: &GlmArgs) -> CliResult<Output> {
    let d = if args.s == 1 { DSpec::Identity } else { DSpec::RootsOfUnity(args.s) };
    let p = glm_exact(args.k, d)?;
    let mut results = json!({
        "K": args.k,
        "s": args.s,
        "d": d,
        "variable": if args.s == 1 { "N" } else { "sN" },
        "polynomial": p,
        "constant_term": p.coefficient(0).encode(),
    });
    if let Some(dim) = args.dim {
        results["value_at_dim"] = json!(p.evaluate_exact(&integer(dim as i64)).encode());
    }
    Ok(Output { results, csv: None })
}

fn parse_complex(text: &str) -> CliResult<Complex64> {
    let bad = || CliError::Usage(format!("--z expects re,im; got {text:?}"));
    let (re, im) = text.split_once(',').ok_or_else(bad)?;
    Ok(Complex64::new(re.trim().parse().map_err(|_| bad())?, im.trim().parse().map_err(|_| bad())?))
}

fn cmd_classical(args: &ClassicalArgs) -> CliResult<Output> {
    let t = positive("t", &args.t)?.to_f64();
    let p_max = args.p_max.unwrap_or_else(|| default_p_max(t));
    let law = bessel_law(args.s, t, p_max)?;
    let mut fourier = Vec::new();
    for z in &args.z {
        let z = parse_complex(z)?;
        let got = law.fourier(z);
        let want = bessel_log_fourier(args.s, t, z).exp();
        fourier.push(json!({
            "z": [z.re, z.im],
            "truncated": [got.re, got.im],
            "exact": [want.re, want.im],
            "bound": fourier_tail_bound(args.s, t, p_max, z.norm()),
        }));
    }
    let measure = if args.powered { power_pushforward(&law, args.s) } else { law };
    Ok(Output {
        results: json!({
            "s": args.s,
            "t": t,
            "p_max": p_max,
            "powered": args.powered,
            "measure": measure.to_json(),
            "fourier": fourier,
        }),
        csv: None,
    })
}

fn cmd_weingarten(args: &WeingartenArgs) -> CliResult<Output> {
    let t = positive("t", &args.t)?;
    let w = word(&args.word)?;
    let r = weingarten_finite_n(args.s, &w, args.n, t.to_f64())?;
    let limit = star_moment(args.s, &t, &w)?;
    Ok(Output {
        results: json!({
            "s": args.s,
            "word": w.to_string(),
            "n": args.n,
            "t": t.encode(),
            "result": r,
            "limit": limit.encode(),
        }),
        csv: None,
    })
}

fn probe_csv(reports: &[ProbeReport]) -> String {
    let mut out = String::from("s,t,pass,failed_matrix,failed_minor\n");
    for r in reports {
        let matrix = r.failed_matrix.map(|m| serde_json::to_value(m).expect("enum")).map(|v| v.as_str().unwrap_or("").to_string());
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.s.encode(),
            r.t.encode(),
            r.pass,
            matrix.unwrap_or_default(),
            r.failed_minor.map(|j| j.to_string()).unwrap_or_default()
        ));
    }
    out
}

fn cmd_probe(args: &ProbeArgs) -> CliResult<Output> {
    let s_values = match (&args.s, &args.s_grid) {
        (Some(s), None) => vec![positive("s", s)?],
        (None, Some(g)) => grid("s-grid", g)?,
        _ => return Err(CliError::Usage("give exactly one of --s and --s-grid".into())),
    };
    let t_values = match (&args.t, &args.t_grid) {
        (Some(t), None) => vec![positive("t", t)?],
        (None, Some(g)) => grid("t-grid", g)?,
        _ => return Err(CliError::Usage("give exactly one of --t and --t-grid".into())),
    };
    if s_values.iter().chain(&t_values).any(|x| *x <= integer(0)) {
        return Err(CliError::Usage("grid values must be positive".into()));
    }
    let reports = if s_values.len() * t_values.len() == 1 {
        vec![existence_probe(&s_values[0], &t_values[0], args.order)]
    } else {
        probe_sweep(&s_values, &t_values, args.order)
    };
    let csv = probe_csv(&reports);
    Ok(Output {
        results: json!({
            "order": args.order,
            "cells": reports.len(),
            "failures": reports.iter().filter(|r| !r.pass).count(),
            "reports": reports,
        }),
        csv: Some(csv),
    })
}

fn configure_threads() {
    if let Some(n) = std::env::var("FREEBESSEL_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if n > 0 {
            // Fails only if a pool already exists, which cannot happen this early.
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn run(cli: &Cli) -> CliResult<String> {
    let start = Instant::now();
    let (name, config, output) = match &cli.command {
        Command::Moments(a) => ("moments", to_value(a), cmd_moments(a)?),
        Command::Density(a) => ("density", to_value(a), cmd_density(a)?),
        Command::Partitions(a) => ("partitions", to_value(a), cmd_partitions(a)?),
        Command::Mc(a) => ("mc", to_value(a), cmd_mc(a)?),
        Command::Glm(a) => ("glm", to_value(a), cmd_glm(a)?),
        Command::Classical(a) => ("classical", to_value(a), cmd_classical(a)?),
        Command::Weingarten(a) => ("weingarten", to_value(a), cmd_weingarten(a)?),
        Command::Probe(a) => ("probe", to_value(a), cmd_probe(a)?),
    };
    match cli.format {
        Format::Csv => output
            .csv
            .ok_or_else(|| CliError::Usage(format!("{name} has no CSV output; use --format json"))),
        Format::Json => {
            let mut config = config;
            config["format"] = json!(cli.format);
            let report = RunReport {
                command: name,
                config,
                results: output.results,
                wall_time: start.elapsed().as_secs_f64(),
                version: env!("CARGO_PKG_VERSION"),
            };
            let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
            text.push('\n');
            Ok(text)
        }
    }
}

fn to_value<T: Serialize>(args: &T) -> Value {
    serde_json::to_value(args).expect("arguments serialize")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    configure_threads();
    let payload = match run(&cli) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {}", e.message());
            return ExitCode::from(e.code());
        }
    };
    let written = match &cli.out {
        Some(path) => fs::write(path, payload.as_bytes()).map(|_| eprintln!("wrote {}", path.display())),
        None => std::io::stdout().write_all(payload.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
