//! Command-line front end. Every subcommand maps its outcome onto a fixed
//! set of exit codes; see [`exit`].

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use crate::config::{parse_override, RunConfig};
use crate::error::{Error, Result};
use crate::exact::counterexample::{build_sequences, find_feasible_start, CounterexampleSpec};
use crate::exact::{BackwardData, Side};
use crate::pvar::{fmt17, tv_s_exact, SampledSignal};
use crate::solver::{solve, Grid, Initial};
use crate::verify::{parse_suites, run_suite, Verdict};

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const CONFIG: i32 = 2;
    pub const NUMERICAL: i32 = 3;
    pub const INCONCLUSIVE: i32 = 4;
    pub const FAILED: i32 = 5;
}

/// Flux bound used for the counter-example pair.
const CX_DOMAIN_BOUND: f64 = 1000.0;

#[derive(Debug, Parser)]
#[command(name = "interflux", version, about = "Conservation laws with a flux interface at x = 0")]
pub struct Cli {
    /// Flat key=value configuration file.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, value_name = "DIR", default_value = "out")]
    pub out: PathBuf,
    /// Seed for every random draw; overrides `seed` from the config.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads for independent runs.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Override a config key; may be repeated.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    pub overrides: Vec<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the Godunov scheme; writes snapshot_NNN.csv and traces.csv.
    Solve,
    /// Fractional total variation of a two-column `x,value` CSV.
    Tvs {
        input: PathBuf,
        /// Comma-separated exponents in (0, 1]; defaults to `s_values`.
        #[arg(long = "s", value_delimiter = ',')]
        s: Vec<f64>,
    },
    /// Build the explicit blow-up profile; writes profile, initial data and jump series.
    Counterexample(CxArgs),
    /// Sample the exact solution of the counter-example construction at `eval.t`.
    ExactEval(CxArgs),
    /// Run a verification suite (smoothing, blowup, traces, outside, interface, holder or all).
    Verify { suite: String },
}

#[derive(Debug, Args)]
pub struct CxArgs {
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub eps: Option<f64>,
    /// Number of jumps.
    #[arg(long)]
    pub n: Option<usize>,
    /// First index; searched for when omitted and `cx.i0=auto`.
    #[arg(long)]
    pub i0: Option<usize>,
}

impl CxArgs {
    fn overrides(&self) -> Vec<(String, String)> {
        let mut v = Vec::new();
        let mut push = |k: &str, val: Option<String>| {
            if let Some(val) = val {
                v.push((k.to_string(), val));
            }
        };
        push("cx.p", self.p.map(|x| x.to_string()));
        push("cx.eps", self.eps.map(|x| x.to_string()));
        push("cx.n", self.n.map(|x| x.to_string()));
        push("cx.i0", self.i0.map(|x| x.to_string()));
        v
    }
}

/// Failure carrying the exit code it maps to.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn config(e: impl std::fmt::Display) -> Self {
        Failure { code: exit::CONFIG, message: e.to_string() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) | Error::Io(_) | Error::Parameter { .. } => exit::CONFIG,
            _ => exit::NUMERICAL,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Error::from(e).into()
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { exit::CONFIG } else { exit::OK };
        }
    };
    run(&cli)
}

pub fn run(cli: &Cli) -> i32 {
    match dispatch(cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn load_config(cli: &Cli, extra: Vec<(String, String)>) -> std::result::Result<RunConfig, Failure> {
    let text = match &cli.config {
        Some(path) => Some(
            std::fs::read_to_string(path)
                .map_err(|e| Failure::config(format!("cannot read {}: {e}", path.display())))?,
        ),
        None => None,
    };
    let mut overrides = cli
        .overrides
        .iter()
        .map(|s| parse_override(s))
        .collect::<Result<Vec<_>>>()?;
    overrides.extend(extra);
    if let Some(seed) = cli.seed {
        overrides.push(("seed".to_string(), seed.to_string()));
    }
    Ok(RunConfig::load(text.as_deref(), &overrides)?)
}

fn dispatch(cli: &Cli) -> std::result::Result<i32, Failure> {
    if cli.jobs == 0 {
        return Err(Failure::config("`--jobs` must be at least 1"));
    }
    match &cli.command {
        Command::Solve => cmd_solve(cli, &load_config(cli, Vec::new())?),
        Command::Tvs { input, s } => cmd_tvs(&load_config(cli, Vec::new())?, input, s),
        Command::Counterexample(a) => cmd_counterexample(cli, &load_config(cli, a.overrides())?),
        Command::ExactEval(a) => cmd_exact_eval(cli, &load_config(cli, a.overrides())?),
        Command::Verify { suite } => {
            let suites = parse_suites(suite).map_err(Failure::config)?;
            cmd_verify(cli, &load_config(cli, Vec::new())?, &suites)
        }
    }
}

fn create(dir: &Path, name: &str) -> Result<BufWriter<File>> {
    std::fs::create_dir_all(dir)?;
    Ok(BufWriter::new(File::create(dir.join(name))?))
}

fn write_config(cli: &Cli, cfg: &RunConfig) -> Result<()> {
    let mut w = create(&cli.out, "run.kv")?;
    w.write_all(cfg.to_kv().as_bytes())?;
    w.flush()?;
    Ok(())
}

fn cmd_solve(cli: &Cli, cfg: &RunConfig) -> std::result::Result<i32, Failure> {
    let u0 = cfg.initial.build(cfg.seed)?;
    let sup = u0.sup_norm();
    let pair = cfg.pair(if sup > 0.0 { sup } else { 1.0 })?;
    let grid = Grid::new(cfg.half_width, cfg.n_cells)?;
    let sol = solve(&pair, &Initial::Piecewise(&u0), &grid, cfg.t_final, cfg.cfl, &cfg.snapshot_times)?;
    for k in 0..sol.times.len() {
        let mut w = create(&cli.out, &format!("snapshot_{k:03}.csv"))?;
        sol.write_snapshot_csv(&pair, k, &mut w)?;
        w.flush()?;
    }
    let mut w = create(&cli.out, "traces.csv")?;
    sol.write_traces_csv(&pair, &mut w)?;
    w.flush()?;
    write_config(cli, cfg)?;
    println!(
        "solved to T={} in {} steps; {} snapshots in {}",
        sol.t_final,
        sol.steps,
        sol.times.len(),
        cli.out.display()
    );
    Ok(exit::OK)
}

fn cmd_tvs(cfg: &RunConfig, input: &Path, s_list: &[f64]) -> std::result::Result<i32, Failure> {
    let file = File::open(input).map_err(|e| Failure::config(format!("cannot open {}: {e}", input.display())))?;
    let signal = SampledSignal::read_csv(BufReader::new(file))?;
    let s_values = if s_list.is_empty() { &cfg.s_values } else { s_list };
    let mut rows = vec!["s,tv_s,subdivision_size".to_string()];
    for &s in s_values {
        let r = tv_s_exact(&signal, s)?;
        rows.push(format!("{},{},{}", fmt17(s), fmt17(r.value), r.subdivision.len()));
    }
    println!("{}", rows.join("\n"));
    Ok(exit::OK)
}

fn counterexample_spec(cfg: &RunConfig) -> Result<CounterexampleSpec> {
    let c = &cfg.counterexample;
    match c.i0 {
        Some(i0) => build_sequences(c.p, c.eps, i0, c.n_terms, c.seed_gap),
        None => find_feasible_start(c.p, c.eps, c.n_terms, c.seed_gap, 10),
    }
}

fn cmd_counterexample(cli: &Cli, cfg: &RunConfig) -> std::result::Result<i32, Failure> {
    let spec = counterexample_spec(cfg)?;
    let bd = BackwardData::from_counterexample(&spec, cfg.counterexample.sub_intervals, CX_DOMAIN_BOUND)?;
    let t = bd.t_final;
    let x_max = spec.x(spec.i0)?;

    let mut w = create(&cli.out, "profile.csv")?;
    let n = cfg.counterexample.samples.max(2);
    let xs: Vec<f64> = (0..n).map(|j| 1.25 * x_max * j as f64 / (n - 1) as f64).collect();
    bd.write_dense_csv(&xs, t, &mut w)?;
    w.flush()?;

    let mut w = create(&cli.out, "initial.csv")?;
    let u0 = bd.initial_data();
    writeln!(w, "# piecewise-constant initial data; value holds on [x_left, x_right)")?;
    writeln!(w, "x_left,x_right,value")?;
    for (j, v) in u0.values.iter().enumerate() {
        let lo = if j == 0 { f64::NEG_INFINITY } else { u0.breaks[j - 1] };
        let hi = u0.breaks.get(j).copied().unwrap_or(f64::INFINITY);
        writeln!(w, "{},{},{}", fmt17(lo), fmt17(hi), fmt17(*v))?;
    }
    w.flush()?;

    let s_crit = spec.params.critical_s();
    let partial = spec.jump_series(s_crit, spec.i_end())?;
    let mut w = create(&cli.out, "jumps.csv")?;
    writeln!(w, "# s_crit={} i0={} N={}", fmt17(s_crit), spec.i0, spec.n_terms)?;
    writeln!(w, "i,x,u_left,u_right,jump,partial_sum")?;
    for (j, sum) in partial.iter().enumerate() {
        let i = spec.i0 + j;
        let x = spec.x(i)?;
        let l = bd.eval(x, t, Side::Left)?;
        let r = bd.eval(x, t, Side::Right)?;
        writeln!(w, "{i},{},{},{},{},{}", fmt17(x), fmt17(l), fmt17(r), fmt17(l - r), fmt17(*sum))
            ?;
    }
    w.flush()?;
    write_config(cli, cfg)?;
    println!(
        "counter-example p={} eps={} i0={} N={}: S_N = {} at s = {}",
        spec.params.p,
        spec.params.eps,
        spec.i0,
        spec.n_terms,
        partial.last().copied().unwrap_or(0.0),
        s_crit
    );
    Ok(exit::OK)
}

fn cmd_exact_eval(cli: &Cli, cfg: &RunConfig) -> std::result::Result<i32, Failure> {
    let spec = counterexample_spec(cfg)?;
    let bd = BackwardData::from_counterexample(&spec, cfg.counterexample.sub_intervals, CX_DOMAIN_BOUND)?;
    let x_max = 1.25 * spec.x(spec.i0)?;
    let x_min = 1.05 * bd.initial_breakpoints()[0];
    let n = cfg.eval_points.max(2);
    let xs: Vec<f64> = (0..n).map(|j| x_min + (x_max - x_min) * j as f64 / (n - 1) as f64).collect();
    let t = cfg.eval_t * bd.t_final;
    let mut w = create(&cli.out, "exact.csv")?;
    bd.write_dense_csv(&xs, t, &mut w)?;
    w.flush()?;
    write_config(cli, cfg)?;
    println!("exact solution at t={t} on [{x_min}, {x_max}] ({n} points)");
    Ok(exit::OK)
}

fn cmd_verify(cli: &Cli, cfg: &RunConfig, suites: &[crate::verify::Suite]) -> std::result::Result<i32, Failure> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build()
        .map_err(|e| Failure::config(format!("cannot start {} workers: {e}", cli.jobs)))?;
    let scfg = cfg.suite_config();
    let results: Vec<Result<Vec<_>>> = pool.install(|| suites.par_iter().map(|&s| run_suite(s, &scfg)).collect());
    let mut reports = Vec::new();
    for r in results {
        reports.extend(r?);
    }
    let mut code = exit::OK;
    for r in &reports {
        r.write_to_dir(&cli.out)?;
        println!("{r}");
        code = code.max(match r.verdict() {
            Verdict::Pass => exit::OK,
            Verdict::Inconclusive => exit::INCONCLUSIVE,
            Verdict::Fail => exit::FAILED,
        });
    }
    write_config(cli, cfg)?;
    Ok(code)
}
