//! `truchet`: render tilings, trace curves, collapse and renormalize
//! sequences, evaluate the limit approximants and run Monte Carlo checks.

mod config;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::json;

use truchet::cocycle::{gamma_sequence, l11_partial_series, nu_on_sequence, s_k, Scalar};
use truchet::dynamics::{trace, Normal, State};
use truchet::mc::{self, sample_normal, MeasureSpec};
use truchet::render::{render, Highlight, RenderOptions, Viewport};
use truchet::renorm::{collapse, repeated_renormalize, RenormConfig};
use truchet::seq::{derive_seed, parse_over, sample_markov, MarkovParams, Sequence, Symbol};

#[derive(Parser)]
#[command(name = "truchet", version, about, args_override_self = true)]
struct Cli {
    /// Read flag values from a `key = value` file; command-line flags win.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Write the output here instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw a window of the tiling as SVG.
    Render(RenderArgs),
    /// Follow the curve through square (0,0) and report it as JSON.
    Trace(TraceArgs),
    /// Collapse ω and print the collapsed sequence and insertion counts.
    Collapse(CollapseArgs),
    /// Renormalize repeatedly and report each level as JSON.
    Renorm(RenormArgs),
    /// CSV of the limit approximants: k, ν(O_k), L(1,1) partial, γ_k, s_k.
    Limit(LimitArgs),
    /// Run a Monte Carlo experiment and print its JSON report.
    Mc(McArgs),
}

const SUBCOMMANDS: [&str; 6] = ["render", "trace", "collapse", "renorm", "limit", "mc"];

/// Where ω, ω′ and the normal come from: literals such as `−+^+−` written
/// over a constant background, or Markov samples from a seed.
#[derive(Args, Clone)]
struct SourceArgs {
    /// Literal for ω, caret before index 0.
    #[arg(long, allow_hyphen_values = true)]
    omega: Option<String>,
    /// Literal for ω′.
    #[arg(long = "omega-prime", allow_hyphen_values = true)]
    omega_prime: Option<String>,
    /// Symbol outside the literals.
    #[arg(long, default_value = "+", allow_hyphen_values = true)]
    background: String,
    /// Persistence of the Markov measure for ω.
    #[arg(long)]
    p: Option<f64>,
    /// Persistence for ω′; defaults to p.
    #[arg(long)]
    q: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Inward normal at the start: right, left, up, down or "(x,y)". Drawn
    /// from the seed when omitted, else up.
    #[arg(long)]
    v: Option<Normal>,
}

#[derive(Args)]
struct RenderArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[arg(long, default_value_t = 16)]
    width: u32,
    #[arg(long, default_value_t = 16)]
    height: u32,
    /// Leftmost column; centered on 0 by default.
    #[arg(long, allow_hyphen_values = true)]
    x0: Option<i64>,
    /// Bottom row; centered on 0 by default.
    #[arg(long, allow_hyphen_values = true)]
    y0: Option<i64>,
    /// Highlight the curve through square (0,0).
    #[arg(long)]
    highlight: bool,
    /// Steps to follow the highlighted curve.
    #[arg(long, default_value_t = 10_000)]
    budget: u64,
    /// Shade rows and columns removed by collapsing.
    #[arg(long)]
    shade: bool,
    /// Draw dividing lines: −+ solid, +− dashed.
    #[arg(long = "dividing-lines")]
    dividing_lines: bool,
}

#[derive(Args)]
struct TraceArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[arg(long, default_value_t = 10_000)]
    budget: u64,
    /// Include the list of visited squares.
    #[arg(long)]
    path: bool,
}

#[derive(Args)]
struct CollapseArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Kept indices must be found within this distance.
    #[arg(long, default_value_t = 256)]
    horizon: u64,
    /// Print the collapsed sequence on −radius..=radius.
    #[arg(long, default_value_t = 8)]
    radius: i64,
}

#[derive(Args)]
struct RenormArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[arg(long, default_value_t = 5)]
    depth: usize,
    #[arg(long, default_value_t = 4096)]
    horizon: u64,
    #[arg(long = "horizon-cap", default_value_t = 65_536)]
    horizon_cap: u64,
    #[arg(long, default_value_t = 100_000)]
    budget: u64,
    /// Trace each level for the period of its curve.
    #[arg(long)]
    periods: bool,
}

#[derive(Args)]
struct LimitArgs {
    /// Start at p = m/(m+1); an integer, decimal or fraction like 3/2.
    #[arg(long, default_value = "1")]
    m: String,
    /// Start at q = n/(n+1).
    #[arg(long, default_value = "1")]
    n: String,
    #[arg(long, default_value_t = 100)]
    kmax: usize,
    /// Evaluate in exact rational arithmetic before printing.
    #[arg(long)]
    exact: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Experiment {
    /// Fraction of curves closing within each budget.
    Closed,
    /// Collapsible fraction and cylinder law of the collapsed sequence.
    Transport,
    /// Mean insertion counts by collapsed word.
    Insertion,
    /// Step-class frequencies.
    Steps,
    /// Return times to the renormalizable set.
    Returns,
    /// Joint law of step class and four-square loops.
    P4,
    /// Fraction renormalizable k times against ν(O_k).
    Depth,
}

#[derive(Clone, Copy, ValueEnum)]
enum Measure {
    Markov,
    Bernoulli,
}

#[derive(Args)]
struct McArgs {
    #[arg(long, value_enum)]
    experiment: Experiment,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    /// Defaults to p.
    #[arg(long)]
    q: Option<f64>,
    /// Measure for the closed experiment.
    #[arg(long, value_enum, default_value = "markov")]
    measure: Measure,
    /// Probability of + under the Bernoulli measure for ω.
    #[arg(long, default_value_t = 0.5)]
    r: f64,
    /// Same for ω′; defaults to r.
    #[arg(long = "r-prime")]
    r_prime: Option<f64>,
    #[arg(long, default_value_t = 10_000)]
    samples: u64,
    #[arg(long)]
    seed: u64,
    /// Step budget; the closed experiment accepts a comma-separated list.
    #[arg(long, value_delimiter = ',', default_value = "10000")]
    budget: Vec<u64>,
    /// Levels for the depth experiment.
    #[arg(long, default_value_t = 5)]
    depth: usize,
}

enum Failure {
    Usage(String),
    Domain(String),
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn domain(e: impl std::fmt::Display) -> Failure {
    Failure::Domain(e.to_string())
}

fn markov_params(name: &str, p: f64) -> Result<MarkovParams, Failure> {
    MarkovParams::new(p).map_err(|e| usage(format!("--{name}: {e}")))
}

impl SourceArgs {
    fn background(&self) -> Result<Symbol, Failure> {
        let mut chars = self.background.chars();
        match (chars.next().and_then(Symbol::from_char), chars.next()) {
            (Some(s), None) => Ok(s),
            _ => Err(usage(format!("--background must be + or -, got {:?}", self.background))),
        }
    }

    fn component(&self, literal: &Option<String>, p: Option<f64>, index: u64, name: &str) -> Result<Sequence, Failure> {
        if let Some(text) = literal {
            return parse_over(text, Sequence::constant(self.background()?))
                .map_err(|e| usage(e.to_string()));
        }
        let Some(p) = p else {
            return Err(usage(format!("give --{name} or a persistence with --seed")));
        };
        let seed = self
            .seed
            .ok_or_else(|| usage("--seed is required for sampled sequences"))?;
        let flag = if index == 0 { "p" } else { "q" };
        Ok(sample_markov(markov_params(flag, p)?, derive_seed(seed, index)))
    }

    fn omega(&self) -> Result<Sequence, Failure> {
        self.component(&self.omega, self.p, 0, "omega")
    }

    fn omega_prime(&self) -> Result<Sequence, Failure> {
        self.component(&self.omega_prime, self.q.or(self.p), 1, "omega-prime")
    }

    fn normal(&self) -> Normal {
        self.v
            .or_else(|| self.seed.map(sample_normal))
            .unwrap_or(Normal::Up)
    }

    fn state(&self) -> Result<State, Failure> {
        Ok(State::new(self.omega()?, self.omega_prime()?, self.normal()))
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn run_render(a: &RenderArgs) -> Result<String, Failure> {
    let state = a.source.state()?;
    let mut viewport = Viewport::centered(a.width, a.height);
    viewport.x0 = a.x0.unwrap_or(viewport.x0);
    viewport.y0 = a.y0.unwrap_or(viewport.y0);
    let options = RenderOptions {
        viewport,
        highlight: a.highlight.then_some(Highlight {
            v: state.v,
            budget: a.budget,
        }),
        shade_collapsed: a.shade,
        dividing_lines: a.dividing_lines,
    };
    render(&state.omega, &state.omega_prime, &options)
        .map(|r| r.svg)
        .map_err(domain)
}

fn run_trace(a: &TraceArgs) -> Result<String, Failure> {
    let state = a.source.state()?;
    let result = trace(&state, a.budget).map_err(domain)?;
    Ok(if a.path {
        to_json(&result)
    } else {
        to_json(&result.record())
    })
}

fn run_collapse(a: &CollapseArgs) -> Result<String, Failure> {
    let omega = a.source.omega()?;
    let w = collapse(&omega, a.horizon).map_err(domain)?;
    let r = a.radius.max(0);
    let base = w.kept_index(-r)..=w.kept_index(r);
    let counts: Vec<u64> = (-r..r).map(|i| w.count(i)).collect();
    let kept: Vec<(i64, i64)> = (-r..=r).map(|i| (i, w.kept_index(i))).collect();
    Ok(to_json(&json!({
        "input": omega.literal(*base.start(), *base.end()),
        "collapsed": w.eta().literal(-r, r),
        "kept": kept,
        "counts_from": -r,
        "counts": counts,
    })))
}

fn run_renorm(a: &RenormArgs) -> Result<String, Failure> {
    let state = a.source.state()?;
    let config = RenormConfig {
        depth: a.depth,
        horizon: a.horizon,
        horizon_cap: a.horizon_cap,
        budget: a.budget,
        measure_period: a.periods,
    };
    let result = repeated_renormalize(&state, &config);
    Ok(to_json(&json!({
        "config": config,
        "depth_reached": result.depth_reached(),
        "levels": result.levels,
    })))
}

fn parse_rational(name: &str, text: &str) -> Result<BigRational, Failure> {
    let bad = || usage(format!("--{name}: expected a positive number, got {text:?}"));
    let value = if let Some((n, d)) = text.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        BigRational::new(n.into(), d.into())
    } else {
        let x: f64 = text.trim().parse().map_err(|_| bad())?;
        BigRational::from_float(x).ok_or_else(bad)?
    };
    if value > BigRational::from_integer(0.into()) {
        Ok(value)
    } else {
        Err(bad())
    }
}

fn limit_rows<T: Scalar + ToPrimitive>(m: &T, n: &T, kmax: usize) -> String {
    let nu = nu_on_sequence(m, n, kmax);
    let l11 = l11_partial_series::<T>(kmax);
    let gamma = gamma_sequence::<T>(kmax);
    let f = |x: &T| x.to_f64().unwrap_or(f64::NAN);
    let mut out = String::from("k,nu_on,l11_partial,gamma,s_k\n");
    for k in 0..=kmax {
        let l = if k == 0 { String::new() } else { f(&l11[k - 1]).to_string() };
        writeln!(
            out,
            "{k},{},{l},{},{}",
            f(&nu[k]),
            f(&gamma[k]),
            f(&s_k::<T>(k as u64))
        )
        .unwrap();
    }
    out
}

fn run_limit(a: &LimitArgs) -> Result<String, Failure> {
    let m = parse_rational("m", &a.m)?;
    let n = parse_rational("n", &a.n)?;
    Ok(if a.exact {
        limit_rows(&m, &n, a.kmax)
    } else {
        limit_rows(&m.to_f64().unwrap(), &n.to_f64().unwrap(), a.kmax)
    })
}

fn run_mc(a: &McArgs) -> Result<String, Failure> {
    let q = a.q.unwrap_or(a.p);
    let budget = *a.budget.last().expect("default budget");
    let bad = |e: truchet::seq::SeqError| usage(e.to_string());
    let report = match a.experiment {
        Experiment::Closed => {
            let spec = match a.measure {
                Measure::Markov => MeasureSpec::markov(a.p, q),
                Measure::Bernoulli => MeasureSpec::bernoulli(a.r, a.r_prime.unwrap_or(a.r)),
            }
            .map_err(bad)?;
            mc::closed_fraction_report(&spec, &a.budget, a.samples, a.seed)
        }
        Experiment::Transport => mc::transport(a.p, a.samples, a.seed).map_err(bad)?,
        Experiment::Insertion => mc::insertion(a.p, a.samples, a.seed).map_err(bad)?,
        Experiment::Steps => mc::step_measures_report(a.p, q, a.samples, a.seed).map_err(bad)?,
        Experiment::Returns => mc::return_times(a.p, q, a.samples, a.seed, budget).map_err(bad)?,
        Experiment::P4 => mc::p4_joint(a.p, q, a.samples, a.seed).map_err(bad)?,
        Experiment::Depth => {
            let config = RenormConfig {
                depth: a.depth,
                budget,
                ..RenormConfig::default()
            };
            mc::renorm_depth(a.p, q, &config, a.samples, a.seed).map_err(bad)?
        }
    };
    Ok(to_json(&report))
}

fn run(cli: &Cli) -> Result<String, Failure> {
    match &cli.command {
        Command::Render(a) => run_render(a),
        Command::Trace(a) => run_trace(a),
        Command::Collapse(a) => run_collapse(a),
        Command::Renorm(a) => run_renorm(a),
        Command::Limit(a) => run_limit(a),
        Command::Mc(a) => run_mc(a),
    }
}

fn main() -> ExitCode {
    let args: Vec<OsString> = std::env::args_os().collect();
    let args = match config::expand(args, &SUBCOMMANDS) {
        Ok(a) => a,
        Err(e) => {
            let _ = Cli::command().error(clap::error::ErrorKind::Io, e).print();
            return ExitCode::from(2);
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let output = match run(&cli) {
        Ok(s) => s,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    let written = match &cli.out {
        Some(path) => fs::write(path, output),
        None => io::stdout().lock().write_all(output.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
