//! Argument parsing and command execution.

use std::path::PathBuf;
use std::sync::Arc;

use bincurve_core::algebra::{Field, FieldCtx, PrimeField, Rationals, Rng};
use bincurve_core::brill_noether::{
    abel_sample, clifford_index, fit_exponent, BnQuery, DimEstimate, ScanOptions, DEFAULT_WITNESS_CAP,
};
use bincurve_core::bundle::{BundleTorus, LineBundle, Multidegree};
use bincurve_core::cohomology::{base_locus, h0, h1};
use bincurve_core::curve::{random_curve, BinaryCurve, CurvePoint};
use bincurve_core::json::{bundle_to_json, parse_bundle, parse_curve, strata_json, AnyCurve};
use bincurve_core::picard::{picard_type, PicardType};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cache::{self, Cache};
use crate::report::{Report, RunConfig};
use crate::scan::cached_scan;
use crate::suites::{run_suite, sample_curve, Suite, SuiteParams};

#[derive(Debug, Parser)]
#[command(name = "bincurve", version, about = "Line bundles and Brill-Noether loci on binary curves")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Print a curve as JSON.
    Curve,
    /// h0, h1 and base locus of a bundle.
    H0,
    /// Strata of the compactified Picard scheme in degree --d.
    Strata,
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
    /// Clifford index by exhaustive scan.
    Clifford,
    /// Count W^r_md over F_p.
    Bn,
    /// Sample the Abel map in multidegree --md.
    Abel,
    /// Fit the dimension of W^r_md from counts at several primes.
    EstimateDim,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Curve => "curve",
            Command::H0 => "h0",
            Command::Strata => "strata",
            Command::Verify { .. } => "verify",
            Command::Clifford => "clifford",
            Command::Bn => "bn",
            Command::Abel => "abel",
            Command::EstimateDim => "estimate-dim",
        }
    }
}

fn parse_md(s: &str) -> Result<Multidegree, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [a, b] => Ok(Multidegree::new(
            a.parse().map_err(|e| format!("bad d1 {a:?}: {e}"))?,
            b.parse().map_err(|e| format!("bad d2 {b:?}: {e}"))?,
        )),
        _ => Err(format!("expected d1,d2, got {s:?}")),
    }
}

/// Options shared by every command. Everything except the thread count and
/// the output and cache plumbing is copied into reports.
#[derive(Debug, Clone, Args, Serialize)]
pub struct Opts {
    /// Curve JSON file.
    #[arg(long, global = true, conflicts_with = "random_genus")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curve: Option<PathBuf>,
    /// Sample a random curve of this genus instead.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub random_genus: Option<i64>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Prime for random curves and suites.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    /// `Q` for random curves over the rationals.
    #[arg(long, global = true, conflicts_with = "p")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    #[arg(long, global = true, value_parser = parse_md, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub md: Option<Multidegree>,
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    /// Total degree, for `strata`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<i64>,
    /// Genera for suites, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<Vec<i64>>,
    #[arg(long, global = true, value_delimiter = ',')]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub primes: Option<Vec<u64>>,
    /// Curves per cell in suites.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curves: Option<usize>,
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    /// Bundle JSON file, for `h0`.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bundle: Option<PathBuf>,
    /// Use the dualizing sheaf, for `h0`.
    #[arg(long, global = true)]
    pub canonical: bool,
    /// Use the trivial bundle, for `h0`.
    #[arg(long, global = true)]
    pub trivial: bool,
    /// Accepted for symmetry; grid suites always scan every class.
    #[arg(long, global = true)]
    pub exhaustive: bool,
    #[arg(long, global = true, default_value_t = 1)]
    #[serde(skip)]
    pub jobs: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_WITNESS_CAP)]
    pub witness_cap: usize,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    #[serde(skip)]
    pub no_cache: bool,
    /// Recompute cached scans and flag disagreements.
    #[arg(long, global = true)]
    pub audit: bool,
}

/// A command that could not run: bad arguments or input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<bincurve_core::Error> for UsageError {
    fn from(e: bincurve_core::Error) -> Self {
        UsageError(e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

/// Rendered report plus verdict; `pass == false` maps to exit code 1.
#[derive(Debug, Clone)]
pub struct Output {
    pub text: String,
    pub pass: bool,
}

pub fn run(cli: &Cli) -> Result<Output, UsageError> {
    let opts = &cli.opts;
    if opts.jobs == 0 {
        return Err(usage("--jobs must be at least 1"));
    }
    match &cli.command {
        Command::Curve => {
            let curve = load_curve(opts)?;
            Ok(Output { text: format!("{}\n", curve.to_json()), pass: true })
        }
        Command::Verify { suite } => verify(cli, *suite),
        cmd => {
            let curve = load_curve(opts)?;
            let config = RunConfig::new(cmd.name(), None, opts.clone(), Some(&curve.to_json()));
            let (statements, result, pass): (&[&str], Value, Option<bool>) = match cmd {
                Command::H0 => (&["h1 = h0 - d + g - 1"], cmd_h0(&curve, opts)?, None),
                Command::Strata => (&["compactified picard: stratification by normalized node sets"], cmd_strata(&curve, opts)?, None),
                Command::Clifford => (&["clifford index over F_p, minimized over balanced classes"], cmd_clifford(&curve)?, None),
                Command::Bn => {
                    let (v, ok) = cmd_bn(&curve, opts)?;
                    (&["W^r_md = {L : h0(L) >= r + 1}"], v, ok)
                }
                Command::Abel => (&["abel map: O(D) for effective D of multidegree md"], cmd_abel(&curve, opts)?, None),
                Command::EstimateDim => {
                    let (v, ok) = cmd_estimate(&curve, opts)?;
                    (&["dimension of W^r_md from the growth of #W^r_md(F_p)"], v, ok)
                }
                Command::Curve | Command::Verify { .. } => unreachable!(),
            };
            let report = Report::new(&config, statements, pass, result);
            Ok(Output { text: report.render(), pass: pass.unwrap_or(true) })
        }
    }
}

fn verify(cli: &Cli, suite: Suite) -> Result<Output, UsageError> {
    let opts = &cli.opts;
    let mut params = SuiteParams::new(opts.seed);
    params.genera = opts.g.clone();
    params.primes = opts.primes.clone().or_else(|| opts.p.map(|p| vec![p]));
    params.r = opts.r;
    params.curves = opts.curves;
    params.trials = opts.trials;
    params.jobs = opts.jobs;
    params.witness_cap = opts.witness_cap;
    let outcome = run_suite(suite, &params)?;
    let config = RunConfig::new("verify", Some(suite), opts.clone(), None);
    let report = Report::new(&config, suite.statements(), Some(outcome.pass), outcome.details);
    Ok(Output { text: report.render(), pass: outcome.pass })
}

fn load_curve(opts: &Opts) -> Result<AnyCurve, UsageError> {
    match (&opts.curve, opts.random_genus) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            let curve = parse_curve(&text)?;
            if let Some(p) = opts.p {
                if curve.field() != (FieldCtx::PrimeField { p }) {
                    return Err(usage(format!("--p {p} does not match the curve's field")));
                }
            }
            Ok(curve)
        }
        (None, Some(g)) => {
            let mut rng = Rng::new(opts.seed);
            match (opts.field.as_deref(), opts.p) {
                (Some("Q" | "q"), _) => Ok(AnyCurve::Q(random_curve(g, &Rationals, &mut rng)?)),
                (Some(other), _) => Err(usage(format!("unknown field {other:?}; use --p P or --field Q"))),
                (None, Some(p)) => Ok(AnyCurve::Fp(sample_curve(g, &PrimeField::new(p)?, &mut rng)?)),
                (None, None) => Err(usage("--random-genus needs --p P or --field Q")),
            }
        }
        (None, None) => Err(usage("needs --curve FILE or --random-genus G")),
    }
}

fn fp_curve(curve: &AnyCurve) -> Result<Arc<BinaryCurve<PrimeField>>, UsageError> {
    match curve {
        AnyCurve::Fp(x) => Ok(Arc::new(x.clone())),
        AnyCurve::Q(_) => Err(usage("this command needs a curve over F_p")),
    }
}

fn need_md(opts: &Opts) -> Result<Multidegree, UsageError> {
    opts.md.ok_or_else(|| usage("needs --md d1,d2"))
}

fn point_value<F: Field>(f: &F, pt: &CurvePoint<F::Elem>) -> Value {
    let (a, b) = pt.point.rep(f);
    json!({ "component": pt.component.to_string(), "point": [f.format_elem(&a), f.format_elem(&b)] })
}

fn h0_report<F: Field>(x: Arc<BinaryCurve<F>>, opts: &Opts) -> Result<Value, UsageError> {
    let chosen = [opts.bundle.is_some(), opts.canonical, opts.trivial].iter().filter(|&&b| b).count();
    if chosen != 1 {
        return Err(usage("h0 needs exactly one of --bundle FILE, --canonical, --trivial"));
    }
    let l = if let Some(path) = &opts.bundle {
        let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        parse_bundle(x, &text)?
    } else if opts.canonical {
        LineBundle::canonical(x)?
    } else {
        LineBundle::trivial(x)
    };
    let h = h0(&l);
    let base = if h == 0 {
        Value::Null
    } else {
        let b = base_locus(&l)?;
        let f = l.field();
        json!({
            "components": b.components.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "smooth": b.smooth.iter().map(|pt| point_value(f, pt)).collect::<Vec<_>>(),
            "nodes": b.nodes,
        })
    };
    let bundle: Value = serde_json::from_str(&bundle_to_json(&l)).expect("bundle JSON");
    Ok(json!({
        "bundle": bundle,
        "g": l.curve().genus(),
        "degree": l.degree(),
        "h0": h,
        "h1": h1(&l),
        "base_locus": base,
    }))
}

fn cmd_h0(curve: &AnyCurve, opts: &Opts) -> Result<Value, UsageError> {
    match curve {
        AnyCurve::Fp(x) => h0_report(Arc::new(x.clone()), opts),
        AnyCurve::Q(x) => h0_report(Arc::new(x.clone()), opts),
    }
}

fn cmd_strata(curve: &AnyCurve, opts: &Opts) -> Result<Value, UsageError> {
    let d = opts.d.ok_or_else(|| usage("strata needs --d D"))?;
    let g = curve.genus();
    let strata = match curve {
        AnyCurve::Fp(x) => strata_json(x, d)?,
        AnyCurve::Q(x) => strata_json(x, d)?,
    };
    let kind = match picard_type(d, g) {
        PicardType::Neron => "N",
        PicardType::Degeneration => "D",
    };
    Ok(json!({ "d": d, "g": g, "type": kind, "count": strata.len(), "strata": strata }))
}

fn cmd_clifford(curve: &AnyCurve) -> Result<Value, UsageError> {
    let x = fp_curve(curve)?;
    Ok(json!(clifford_index(&x)))
}

fn open_cache(opts: &Opts) -> Result<Option<Cache>, UsageError> {
    if opts.no_cache {
        return Ok(None);
    }
    let dir = cache::default_dir();
    Cache::open(&dir).map(Some).map_err(|e| usage(format!("cache at {}: {e}", dir.display())))
}

fn scan_opts(opts: &Opts) -> ScanOptions {
    ScanOptions { jobs: opts.jobs, witness_cap: opts.witness_cap }
}

fn cmd_bn(curve: &AnyCurve, opts: &Opts) -> Result<(Value, Option<bool>), UsageError> {
    let x = fp_curve(curve)?;
    let q = BnQuery::new(need_md(opts)?, opts.r.ok_or_else(|| usage("bn needs --r R"))?);
    let mut cache = open_cache(opts)?;
    let res = cached_scan(&x, q, scan_opts(opts), cache.as_mut(), opts.audit)?;
    let total = BundleTorus::new(x.clone(), q.md).count();
    let mut v = json!({
        "p": x.field().p(),
        "g": x.genus(),
        "query": q,
        "total": total,
        "count": res.count,
        "witnesses": res.witnesses,
        "witness_cap": opts.witness_cap,
    });
    let pass = res.audit.as_ref().map(|a| {
        v["audit"] = json!(a);
        !a.mismatch
    });
    Ok((v, pass))
}

fn cmd_abel(curve: &AnyCurve, opts: &Opts) -> Result<Value, UsageError> {
    let x = fp_curve(curve)?;
    let md = need_md(opts)?;
    let mut rng = Rng::new(opts.seed ^ 0xabe1);
    Ok(json!(abel_sample(&x, md, &mut rng, opts.trials.unwrap_or(100))?))
}

fn cmd_estimate(curve: &AnyCurve, opts: &Opts) -> Result<(Value, Option<bool>), UsageError> {
    let AnyCurve::Q(x) = curve else {
        return Err(usage("estimate-dim needs a curve over Q"));
    };
    let q = BnQuery::new(need_md(opts)?, opts.r.ok_or_else(|| usage("estimate-dim needs --r R"))?);
    let primes = opts.primes.clone().ok_or_else(|| usage("estimate-dim needs --primes p1,p2,..."))?;
    if primes.len() < 2 {
        return Err(usage("estimate-dim needs at least two primes"));
    }
    let mut cache = open_cache(opts)?;
    let mut counts = Vec::new();
    let mut audits = Vec::new();
    for &p in &primes {
        let y = Arc::new(x.reduce_mod(&PrimeField::new(p)?)?);
        let res = cached_scan(&y, q, scan_opts(opts), cache.as_mut(), opts.audit)?;
        counts.push(res.count);
        audits.extend(res.audit);
    }
    let estimate = fit_exponent(&primes, &counts);
    let est = DimEstimate { query: q, primes, counts, estimate };
    let mut v = json!({ "estimate": est, "dimension": est.dimension() });
    let pass = opts.audit.then(|| {
        v["audit"] = json!(audits);
        audits.iter().all(|a| !a.mismatch)
    });
    Ok((v, pass))
}
