//! Command-line front end: `solve`, `bench` and `oracle`.
//!
//! Exit status is 0 on success, 1 on usage errors and 2 on data errors
//! (unreadable or malformed files, missing baselines, oracle refusals).

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bench::{self, ReportFormat};
use crate::error::{Error, Result};
use crate::ga::{self, GaConfig};
use crate::instance::Instance;
use crate::oracle;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "qapga", version, about = "Genetic algorithm for the quadratic assignment problem")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve one QAPLIB instance and print the best assignment found.
    Solve {
        instance: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        ga: GaArgs,
    },
    /// Run the GA over a directory of instances and report gaps to best-known values.
    Bench {
        /// Directory holding `<name>.dat` files.
        #[arg(long)]
        dir: PathBuf,
        /// CSV with header `name,best_known,source`.
        #[arg(long)]
        baselines: PathBuf,
        /// Comma-separated instance names; defaults to every `.dat` file in `--dir`.
        #[arg(long, value_delimiter = ',')]
        instances: Vec<String>,
        /// Seeds as a list and/or inclusive ranges, e.g. `1..10` or `1,4,9..12`.
        #[arg(long, default_value = "1..10", value_parser = parse_seeds)]
        seeds: SeedList,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        ga: GaArgs,
    },
    /// Exhaustively solve a small instance.
    Oracle {
        instance: PathBuf,
        #[arg(long, default_value_t = oracle::DEFAULT_LIMIT)]
        limit: usize,
    },
}

/// GA overrides. Anything left unset keeps the `GaConfig` default (or the
/// value from `--config`).
#[derive(Debug, Args)]
struct GaArgs {
    /// `key = value` config file applied before the flags below.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    pop: Option<usize>,
    #[arg(long)]
    generations: Option<u64>,
    #[arg(long, value_parser = parse_rate)]
    cx_rate: Option<f64>,
    #[arg(long, value_parser = parse_rate)]
    mut_rate: Option<f64>,
    #[arg(long)]
    elitism: Option<usize>,
    #[arg(long)]
    target: Option<i64>,
    #[arg(long, value_parser = parse_seconds)]
    time_limit_s: Option<Duration>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for ReportFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => ReportFormat::Csv,
            FormatArg::Json => ReportFormat::Json,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedList(pub Vec<u64>);

/// Parses `1..10` (inclusive), `3,5,8`, or a mix such as `1..3,9`.
pub fn parse_seeds(s: &str) -> std::result::Result<SeedList, String> {
    let mut seeds = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some((lo, hi)) = part.split_once("..") {
            let lo: u64 = lo.trim().parse().map_err(|_| format!("bad seed range `{part}`"))?;
            let hi: u64 = hi.trim().parse().map_err(|_| format!("bad seed range `{part}`"))?;
            if lo > hi {
                return Err(format!("empty seed range `{part}`"));
            }
            seeds.extend(lo..=hi);
        } else {
            seeds.push(part.parse().map_err(|_| format!("bad seed `{part}`"))?);
        }
    }
    if seeds.is_empty() {
        return Err("seed list is empty".into());
    }
    Ok(SeedList(seeds))
}

fn parse_rate(s: &str) -> std::result::Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if (0.0..=1.0).contains(&v) {
        Ok(v)
    } else {
        Err(format!("rate {v} is outside [0, 1]"))
    }
}

fn parse_seconds(s: &str) -> std::result::Result<Duration, String> {
    let v: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    Duration::try_from_secs_f64(v).map_err(|e| e.to_string())
}

enum Failure {
    Usage(String),
    Data(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Data(e)
    }
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

impl GaArgs {
    fn to_config(&self) -> std::result::Result<GaConfig, Failure> {
        let mut cfg = GaConfig::default();
        if let Some(path) = &self.config {
            cfg.apply_kv_str(&read_text(path)?)?;
        }
        if let Some(v) = self.pop {
            cfg.population_size = v;
        }
        if let Some(v) = self.generations {
            cfg.max_generations = v;
        }
        if let Some(v) = self.cx_rate {
            cfg.crossover_rate = v;
        }
        if let Some(v) = self.mut_rate {
            cfg.mutation_rate = v;
        }
        if let Some(v) = self.elitism {
            cfg.elitism_count = v;
        }
        if let Some(v) = self.target {
            cfg.target_cost = Some(v);
        }
        if let Some(v) = self.time_limit_s {
            cfg.time_limit = Some(v);
        }
        cfg.validate().map_err(|e| Failure::Usage(e.to_string()))?;
        Ok(cfg)
    }
}

fn list_instances(dir: &Path, names: &[String]) -> Result<Vec<Instance>> {
    let paths: Vec<PathBuf> = if names.is_empty() {
        let entries = fs::read_dir(dir).map_err(|source| Error::Io {
            path: dir.to_path_buf(),
            source,
        })?;
        let mut paths = Vec::new();
        for entry in entries {
            let path = entry
                .map_err(|source| Error::Io {
                    path: dir.to_path_buf(),
                    source,
                })?
                .path();
            if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("dat")) {
                paths.push(path);
            }
        }
        paths.sort();
        paths
    } else {
        names.iter().map(|n| dir.join(format!("{n}.dat"))).collect()
    };
    paths.iter().map(Instance::load).collect()
}

fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> std::result::Result<(), Failure> {
    let io = |e: std::io::Error| {
        Failure::Data(Error::Io {
            path: PathBuf::from("<stdout>"),
            source: e,
        })
    };
    match cli.command {
        Command::Solve { instance, seed, ga } => {
            let mut cfg = ga.to_config()?;
            if let Some(seed) = seed {
                cfg.rng_seed = seed;
            }
            let inst = Instance::load(&instance)?;
            let res = ga::run(&inst, &cfg)?;
            writeln!(out, "instance: {}", inst.name()).map_err(io)?;
            writeln!(out, "n: {}", inst.size()).map_err(io)?;
            writeln!(out, "cost: {}", res.best.cost()).map_err(io)?;
            writeln!(out, "permutation: {}", res.best.perm()).map_err(io)?;
            writeln!(out, "generations: {}", res.generations_run).map_err(io)?;
            writeln!(out, "evaluations: {}", res.evaluations).map_err(io)?;
            writeln!(out, "time_s: {:.3}", res.wall_time.as_secs_f64()).map_err(io)?;
        }
        Command::Bench {
            dir,
            baselines,
            instances,
            seeds,
            jobs,
            format,
            out: out_path,
            ga,
        } => {
            let cfg = ga.to_config()?;
            if jobs == 0 {
                return Err(Failure::Usage("--jobs must be at least 1".into()));
            }
            let baselines = bench::load_baselines(&read_text(&baselines)?)?;
            let instances = list_instances(&dir, &instances)?;
            if instances.is_empty() {
                return Err(Failure::Data(Error::InvalidInstance(format!(
                    "no .dat files in {}",
                    dir.display()
                ))));
            }
            let rows = bench::run_suite(&instances, &baselines, &cfg, &seeds.0, jobs)?;
            let report = bench::emit_report(&rows, format.into());
            match out_path {
                Some(path) => {
                    fs::write(&path, &report).map_err(|source| Error::Io {
                        path: path.clone(),
                        source,
                    })?;
                    writeln!(err, "wrote {} rows to {}", rows.len(), path.display()).map_err(io)?;
                }
                None => out.write_all(report.as_bytes()).map_err(io)?,
            }
        }
        Command::Oracle { instance, limit } => {
            let inst = Instance::load(&instance)?;
            let res = oracle::exhaustive_optimum(&inst, limit)?;
            writeln!(out, "instance: {}", inst.name()).map_err(io)?;
            writeln!(out, "n: {}", inst.size()).map_err(io)?;
            writeln!(out, "optimum: {}", res.optimum).map_err(io)?;
            writeln!(out, "argmin: {}", res.argmin).map_err(io)?;
            writeln!(out, "explored: {}", res.explored).map_err(io)?;
        }
    }
    Ok(())
}

/// Runs the CLI on `argv` (including the program name) and returns the exit status.
pub fn main<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli, out, err) {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Data(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_DATA
        }
    }
}
