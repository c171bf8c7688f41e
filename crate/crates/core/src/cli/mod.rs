//! Command-line front end.
//!
//! Exit codes: `0` success (or "unrelated" for `causal`), `10` related,
//! `2` bad input or violated hypothesis, `3` crossing limit exceeded,
//! `1` internal failure or a failing `verify` run.

pub mod cache;
pub mod verify;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::causality::{require_sky_pair, verdict_from, Method, Verdict};
use crate::cube::{build_akh_complex, build_kh_complex, DEFAULT_CROSSING_LIMIT, MAX_CROSSINGS};
use crate::error::{Error, Result};
use crate::invariants::{akh, kh, GradedDims};
use crate::linkdiag::{
    augment_with_meridian, braid_closure, parse_braid, parse_pd, AnnularDiagram, PlanarDiagram,
};
use crate::skies::{
    classify_metric, parse_event_pair, skies_to_braid, Event, SkyBraid, Tolerances, DEFAULT_DELTA,
    DEFAULT_EPSILON,
};

pub use cache::{Cache, CACHE_DIR_ENV};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;
pub const EXIT_RELATED: i32 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RouteChoice {
    Akh,
    Kh,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub crossing_limit: usize,
    pub epsilon: f64,
    pub delta: f64,
    pub route: RouteChoice,
    pub output: OutputFormat,
    pub cache_dir: Option<PathBuf>,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            crossing_limit: DEFAULT_CROSSING_LIMIT,
            epsilon: DEFAULT_EPSILON,
            delta: DEFAULT_DELTA,
            route: RouteChoice::Akh,
            output: OutputFormat::Json,
            cache_dir: None,
            seed: 7,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if !(1..=MAX_CROSSINGS).contains(&self.crossing_limit) {
            return Err(Error::parse(
                self.crossing_limit.to_string(),
                format!("crossing limit must be between 1 and {MAX_CROSSINGS}"),
            ));
        }
        for (name, v) in [("epsilon", self.epsilon), ("delta", self.delta)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::parse(v.to_string(), format!("{name} must be positive")));
            }
        }
        Ok(())
    }

    pub fn tolerances(&self) -> Tolerances {
        Tolerances {
            epsilon: self.epsilon,
            delta: self.delta,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "khcausal", version, about = "Causal relation of events via Khovanov homology of their skies")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Refuse diagrams with more crossings than this.
    #[arg(long, global = true, default_value_t = DEFAULT_CROSSING_LIMIT)]
    pub crossing_limit: usize,
    /// Null-separation tolerance, relative to |Δt| + |Δp|.
    #[arg(long, global = true, default_value_t = DEFAULT_EPSILON)]
    pub epsilon: f64,
    /// Genericity threshold for the sky projection.
    #[arg(long, global = true, default_value_t = DEFAULT_DELTA)]
    pub delta: f64,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub output: OutputFormat,
    /// Result cache directory; falls back to $KHCAUSAL_CACHE_DIR.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Ignore any configured cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
}

#[derive(Debug, Args)]
pub struct BraidArgs {
    /// Braid word, e.g. "1 -2 1"; σ_i is `i`, its inverse `-i`.
    #[arg(long, allow_hyphen_values = true)]
    pub braid: Option<String>,
    #[arg(long, default_value_t = 2)]
    pub strands: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Khovanov homology of a planar diagram or closed braid.
    Kh {
        /// PD code, e.g. "X(1,3,2,4) X(3,1,4,2)".
        #[arg(long, conflicts_with = "braid")]
        pd: Option<String>,
        #[command(flatten)]
        braid: BraidArgs,
        /// Print the chain complex to stderr.
        #[arg(long)]
        dump_complex: bool,
    },
    /// Annular Khovanov homology of a closed braid.
    Akh {
        #[command(flatten)]
        braid: BraidArgs,
        #[arg(long)]
        dump_complex: bool,
    },
    /// Decide whether two events (or a sky-pair braid) are causally related.
    Causal {
        /// Two events "px,py,t;qx,qy,s".
        #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["braid", "batch"])]
        events: Option<String>,
        #[command(flatten)]
        braid: BraidArgs,
        /// File with one event pair per line; prints one JSON verdict per line.
        #[arg(long, conflicts_with = "braid")]
        batch: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = RouteChoice::Akh)]
        route: RouteChoice,
    },
    /// Run the self-check suites.
    Verify {
        /// all, models, euler, integrity, invariance or oracle.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 12)]
        max_crossings: usize,
        #[arg(long, default_value_t = 200)]
        pairs: usize,
        #[arg(long, default_value_t = 50)]
        braids: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. }
        | Error::Diagram(_)
        | Error::Move(_)
        | Error::Hypothesis(_)
        | Error::Degenerate(_)
        | Error::NonGeneric { .. }
        | Error::UnknownModel(_) => EXIT_INPUT,
        Error::CrossingLimit { .. } => EXIT_LIMIT,
        Error::Dimension(_) | Error::Integrity(_) | Error::Cache(_) => EXIT_FAILURE,
    }
}

/// Computes invariants through the optional on-disk cache.
#[derive(Debug, Clone)]
pub struct Engine {
    pub config: RunConfig,
    cache: Option<Cache>,
}

impl Engine {
    pub fn new(config: RunConfig) -> Self {
        let cache = config.cache_dir.clone().map(Cache::new);
        Engine { config, cache }
    }

    fn cached(
        &self,
        kind: &str,
        hash: String,
        compute: impl FnOnce() -> Result<GradedDims>,
    ) -> Result<GradedDims> {
        if let Some(hit) = self.cache.as_ref().and_then(|c| c.get(kind, &hash)) {
            return Ok(hit);
        }
        let g = compute()?;
        if let Some(c) = &self.cache {
            c.put(kind, &g)?;
        }
        Ok(g)
    }

    pub fn kh(&self, d: &PlanarDiagram) -> Result<GradedDims> {
        let hash = d.forget_axis().content_hash();
        self.cached("kh", hash, || kh(d, self.config.crossing_limit))
    }

    pub fn akh(&self, d: &AnnularDiagram) -> Result<GradedDims> {
        let hash = d.planarize().content_hash();
        self.cached("akh", hash, || akh(d, self.config.crossing_limit))
    }

    pub fn decide(&self, d: &AnnularDiagram, method: Method) -> Result<Verdict> {
        require_sky_pair(d)?;
        let computed = match method {
            Method::Akh => self.akh(d)?,
            Method::Kh => self.kh(&augment_with_meridian(d))?,
        };
        Ok(verdict_from(method, computed))
    }

    /// Verdict JSON for the configured route; `both` cross-checks the two.
    pub fn decide_routed(&self, d: &AnnularDiagram, route: RouteChoice) -> Result<(bool, Value)> {
        let one = |m| -> Result<(bool, Value)> {
            let v = self.decide(d, m)?;
            Ok((v.related, serde_json::to_value(&v).expect("verdict serializes")))
        };
        match route {
            RouteChoice::Akh => one(Method::Akh),
            RouteChoice::Kh => one(Method::Kh),
            RouteChoice::Both => {
                let (ra, mut va) = one(Method::Akh)?;
                let (rk, vk) = one(Method::Kh)?;
                if ra != rk {
                    return Err(Error::Integrity(format!(
                        "routes disagree on {}: akh related={ra}, kh related={rk}",
                        d.presentation()
                    )));
                }
                va["cross_check"] = vk;
                Ok((ra, va))
            }
        }
    }

    pub fn decide_events(&self, x: &Event, y: &Event, route: RouteChoice) -> Result<(bool, Value)> {
        let oracle = classify_metric(x, y, self.config.epsilon)?;
        let (related, mut v, braid) = match skies_to_braid(x, y, [1.0, 0.0], self.config.tolerances())? {
            SkyBraid::IntersectionDetected { theta } => {
                let v = Verdict::sky_intersection(theta);
                (true, serde_json::to_value(&v).expect("verdict serializes"), Value::Null)
            }
            SkyBraid::Braid { word, .. } => {
                let (r, v) = self.decide_routed(&braid_closure(&word), route)?;
                (r, v, Value::String(word.to_text()))
            }
        };
        v["oracle"] = serde_json::to_value(oracle).expect("report serializes");
        v["braid"] = braid;
        Ok((related, v))
    }
}

fn braid_input(b: &BraidArgs) -> Result<AnnularDiagram> {
    let text = b
        .braid
        .as_deref()
        .ok_or_else(|| Error::parse("", "expected --braid (or --pd for kh)"))?;
    Ok(braid_closure(&parse_braid(text, b.strands)?))
}

fn render_dims(g: &GradedDims, fmt: OutputFormat) -> String {
    match fmt {
        OutputFormat::Json => g.to_json(),
        OutputFormat::Text => g.to_string(),
    }
}

fn render_verdict(related: bool, v: &Value, fmt: OutputFormat) -> String {
    match fmt {
        OutputFormat::Json => v.to_string(),
        OutputFormat::Text => {
            let word = if related { "related" } else { "unrelated" };
            let route = v["route"].as_str().unwrap_or("?");
            match v["model"].as_str() {
                Some(m) if m != "none" => format!("{word} (route {route}, model {m})"),
                _ => format!("{word} (route {route})"),
            }
        }
    }
}

fn read_batch(path: &PathBuf) -> Result<Vec<(usize, String)>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::parse(path.display().to_string(), e.to_string()))?;
    Ok(text
        .lines()
        .enumerate()
        .map(|(n, l)| (n + 1, l.trim().to_string()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect())
}

fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let g = cli.global;
    let cache_dir = if g.no_cache {
        None
    } else {
        g.cache_dir
            .or_else(|| std::env::var_os(CACHE_DIR_ENV).filter(|v| !v.is_empty()).map(PathBuf::from))
    };
    let mut config = RunConfig {
        crossing_limit: g.crossing_limit,
        epsilon: g.epsilon,
        delta: g.delta,
        output: g.output,
        cache_dir,
        ..RunConfig::default()
    };
    let fmt = config.output;
    let io = |e: std::io::Error| Error::Cache(format!("writing output: {e}"));

    match cli.command {
        Command::Kh {
            pd,
            braid,
            dump_complex,
        } => {
            config.validate()?;
            let engine = Engine::new(config);
            let d = match pd {
                Some(text) => parse_pd(&text)?,
                None => braid_input(&braid)?.planarize(),
            };
            if dump_complex {
                let c = build_kh_complex(&d, engine.config.crossing_limit)?;
                write!(err, "{}", c.dump()).map_err(io)?;
            }
            writeln!(out, "{}", render_dims(&engine.kh(&d)?, fmt)).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Akh {
            braid,
            dump_complex,
        } => {
            config.validate()?;
            let engine = Engine::new(config);
            let d = braid_input(&braid)?;
            if dump_complex {
                let c = build_akh_complex(&d, engine.config.crossing_limit)?;
                write!(err, "{}", c.dump()).map_err(io)?;
            }
            writeln!(out, "{}", render_dims(&engine.akh(&d)?, fmt)).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Causal {
            events,
            braid,
            batch,
            route,
        } => {
            config.route = route;
            config.validate()?;
            let engine = Engine::new(config);
            if let Some(path) = batch {
                let lines = read_batch(&path)?;
                let results: Vec<std::result::Result<Value, String>> = lines
                    .par_iter()
                    .map(|(n, line)| {
                        parse_event_pair(line)
                            .and_then(|(x, y)| engine.decide_events(&x, &y, route))
                            .map(|(_, v)| v)
                            .map_err(|e| format!("line {n}: {e}"))
                    })
                    .collect();
                let mut code = EXIT_OK;
                for (r, (n, _)) in results.iter().zip(&lines) {
                    match r {
                        Ok(v) => match fmt {
                            OutputFormat::Json => writeln!(out, "{v}"),
                            OutputFormat::Text => {
                                let related = v["related"].as_bool().unwrap_or(false);
                                writeln!(out, "{n}: {}", render_verdict(related, v, fmt))
                            }
                        }
                        .map_err(io)?,
                        Err(msg) => {
                            writeln!(err, "error: {msg}").map_err(io)?;
                            match fmt {
                                OutputFormat::Json => writeln!(out, "{}", json!({ "line": n, "error": msg })),
                                OutputFormat::Text => writeln!(out, "{n}: error"),
                            }
                            .map_err(io)?;
                            code = EXIT_INPUT;
                        }
                    }
                }
                return Ok(code);
            }
            let (related, v) = match events {
                Some(text) => {
                    let (x, y) = parse_event_pair(&text)?;
                    engine.decide_events(&x, &y, route)?
                }
                None => engine.decide_routed(&braid_input(&braid)?, route)?,
            };
            writeln!(out, "{}", render_verdict(related, &v, fmt)).map_err(io)?;
            Ok(if related { EXIT_RELATED } else { EXIT_OK })
        }
        Command::Verify {
            suite,
            max_crossings,
            pairs,
            braids,
            seed,
        } => {
            config.seed = seed;
            config.validate()?;
            let suites = if suite == "all" {
                verify::Suite::ALL.to_vec()
            } else {
                suite
                    .split(',')
                    .map(|s| {
                        verify::Suite::from_name(s.trim()).ok_or_else(|| {
                            Error::parse(
                                s,
                                "suite must be all, models, euler, integrity, invariance or oracle",
                            )
                        })
                    })
                    .collect::<Result<_>>()?
            };
            let opts = verify::VerifyOptions {
                suites,
                max_crossings,
                pairs,
                braids,
                seed,
                tolerances: config.tolerances(),
                crossing_limit: config.crossing_limit,
            };
            let report = verify::run(&opts);
            match fmt {
                OutputFormat::Json => {
                    writeln!(out, "{}", serde_json::to_string(&report).expect("report serializes"))
                }
                OutputFormat::Text => {
                    let mut s = String::new();
                    for r in &report.suites {
                        let status = if r.passed { "PASS" } else { "FAIL" };
                        s.push_str(&format!("{status} {} ({} checks)\n", r.name, r.checks));
                        for f in &r.failures {
                            s.push_str(&format!("  {f}\n"));
                        }
                    }
                    write!(out, "{s}")
                }
            }
            .map_err(io)?;
            Ok(if report.passed { EXIT_OK } else { EXIT_FAILURE })
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match execute(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn run() -> i32 {
    run_with(std::env::args_os(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
