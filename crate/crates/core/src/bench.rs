//! Benchmark harness: runs the GA over QAPLIB instances for several seeds and
//! reports the relative gap to best-known values.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ga::{self, GaConfig};
use crate::instance::{Cost, Instance};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaselineRecord {
    pub instance_name: String,
    pub best_known: Cost,
    pub source: String,
}

#[derive(Debug, Deserialize)]
struct BaselineCsvRow {
    name: String,
    best_known: String,
    source: String,
}

/// Parses a baselines CSV with header `name,best_known,source`.
pub fn load_baselines(text: &str) -> Result<Vec<BaselineRecord>> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| Error::Baseline(e.to_string()))?
        .clone();
    if headers.iter().collect::<Vec<_>>() != ["name", "best_known", "source"] {
        return Err(Error::Baseline(format!(
            "expected header `name,best_known,source`, found `{}`",
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut seen = HashMap::new();
    let mut records = Vec::new();
    for (idx, row) in reader.deserialize::<BaselineCsvRow>().enumerate() {
        let line = idx + 2;
        let row = row.map_err(|e| Error::Baseline(format!("row {line}: {e}")))?;
        if row.name.is_empty() {
            return Err(Error::Baseline(format!("row {line}: empty instance name")));
        }
        let value: i64 = row.best_known.parse().map_err(|_| {
            Error::Baseline(format!("row {line}: best_known `{}` is not an integer", row.best_known))
        })?;
        if value <= 0 {
            return Err(Error::Baseline(format!(
                "row {line}: best_known for `{}` must be positive, found {value}",
                row.name
            )));
        }
        if let Some(prev) = seen.insert(row.name.to_lowercase(), line) {
            return Err(Error::Baseline(format!(
                "duplicate instance `{}` (rows {prev} and {line})",
                row.name
            )));
        }
        records.push(BaselineRecord {
            instance_name: row.name,
            best_known: Cost::new(value)?,
            source: row.source,
        });
    }
    Ok(records)
}

pub fn find_baseline<'a>(baselines: &'a [BaselineRecord], name: &str) -> Option<&'a BaselineRecord> {
    baselines
        .iter()
        .find(|b| b.instance_name.eq_ignore_ascii_case(name))
}

/// Relative excess `(found - known) / known`, kept as an exact ratio.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gap {
    excess: i64,
    best_known: i64,
}

impl Gap {
    pub fn excess(self) -> i64 {
        self.excess
    }

    pub fn is_zero(self) -> bool {
        self.excess == 0
    }

    pub fn as_f64(self) -> f64 {
        self.excess as f64 / self.best_known as f64
    }

    /// The value as it appears in reports, rounded to 6 decimals.
    pub fn rounded(self) -> f64 {
        round_to(self.as_f64(), 6)
    }
}

impl fmt::Display for Gap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.6}", self.as_f64())
    }
}

pub fn compute_gap(best_found: Cost, best_known: Cost) -> Result<Gap> {
    if best_known.get() <= 0 {
        return Err(Error::NonPositiveBestKnown(best_known.get()));
    }
    Ok(Gap {
        excess: best_found.get() - best_known.get(),
        best_known: best_known.get(),
    })
}

fn round_to(x: f64, decimals: i32) -> f64 {
    let scale = 10f64.powi(decimals);
    (x * scale).round() / scale
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeedRun {
    pub seed: u64,
    pub best_cost: Cost,
    pub generations: u64,
    pub evaluations: u64,
    /// Time spent in [`ga::run`] only.
    pub wall_time: Duration,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub instance_name: String,
    pub seeds_run: usize,
    pub best_found: Cost,
    pub best_known: Cost,
    pub gap: Gap,
    /// Generations run by the first seed that reached `best_found`.
    pub generations: u64,
    pub per_seed: Vec<SeedRun>,
    pub total_time: Duration,
}

impl BenchRow {
    pub fn max_seed_time(&self) -> Duration {
        self.per_seed.iter().map(|s| s.wall_time).max().unwrap_or_default()
    }
}

/// Runs every (instance, seed) pair and aggregates best-of-seeds per instance.
///
/// `jobs > 1` spreads the runs over worker threads; rows come back in input
/// order and, timings aside, do not depend on `jobs`.
pub fn run_suite(
    instances: &[Instance],
    baselines: &[BaselineRecord],
    cfg: &GaConfig,
    seeds: &[u64],
    jobs: usize,
) -> Result<Vec<BenchRow>> {
    if seeds.is_empty() {
        return Err(Error::InvalidConfig("seed list is empty".into()));
    }
    cfg.validate()?;
    let known: Vec<Cost> = instances
        .iter()
        .map(|inst| {
            find_baseline(baselines, inst.name())
                .map(|b| b.best_known)
                .ok_or_else(|| Error::MissingBaseline(inst.name().to_string()))
        })
        .collect::<Result<_>>()?;

    let tasks: Vec<(usize, usize)> = (0..instances.len())
        .flat_map(|i| (0..seeds.len()).map(move |s| (i, s)))
        .collect();
    let results: Mutex<Vec<Option<Result<SeedRun>>>> =
        Mutex::new((0..tasks.len()).map(|_| None).collect());
    let next = AtomicUsize::new(0);

    let work = || loop {
        let t = next.fetch_add(1, Ordering::Relaxed);
        let Some(&(inst_idx, seed_idx)) = tasks.get(t) else {
            break;
        };
        let seed = seeds[seed_idx];
        let run_cfg = GaConfig { rng_seed: seed, ..cfg.clone() };
        let outcome = ga::run(&instances[inst_idx], &run_cfg).map(|res| SeedRun {
            seed,
            best_cost: res.best.cost(),
            generations: res.generations_run,
            evaluations: res.evaluations,
            wall_time: res.wall_time,
        });
        results.lock().expect("results lock")[t] = Some(outcome);
    };
    let jobs = jobs.clamp(1, tasks.len().max(1));
    if jobs == 1 {
        work();
    } else {
        std::thread::scope(|scope| {
            for _ in 0..jobs {
                scope.spawn(work);
            }
        });
    }

    let mut runs = results
        .into_inner()
        .expect("results lock")
        .into_iter()
        .map(|r| r.expect("every task ran"));
    let mut rows = Vec::with_capacity(instances.len());
    for (inst, best_known) in instances.iter().zip(known) {
        let per_seed = runs.by_ref().take(seeds.len()).collect::<Result<Vec<_>>>()?;
        let best_run = per_seed
            .iter()
            .min_by_key(|r| r.best_cost)
            .expect("seeds are non-empty");
        rows.push(BenchRow {
            instance_name: inst.name().to_string(),
            seeds_run: per_seed.len(),
            best_found: best_run.best_cost,
            best_known,
            gap: compute_gap(best_run.best_cost, best_known)?,
            generations: best_run.generations,
            total_time: per_seed.iter().map(|r| r.wall_time).sum(),
            per_seed,
        });
    }
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            _ => Err(Error::Report(format!("unknown format `{s}` (expected csv or json)"))),
        }
    }
}

/// One report line. `gap` and `total_time_s` hold the rounded values that
/// are printed, so emitting and parsing a row is lossless.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub instance: String,
    pub seeds: usize,
    pub best_found: i64,
    pub best_known: i64,
    pub gap: f64,
    pub generations: u64,
    pub total_time_s: f64,
}

impl From<&BenchRow> for ReportRow {
    fn from(row: &BenchRow) -> Self {
        ReportRow {
            instance: row.instance_name.clone(),
            seeds: row.seeds_run,
            best_found: row.best_found.get(),
            best_known: row.best_known.get(),
            gap: row.gap.rounded(),
            generations: row.generations,
            total_time_s: round_to(row.total_time.as_secs_f64(), 3),
        }
    }
}

pub const REPORT_HEADER: [&str; 7] = [
    "instance",
    "seeds",
    "best_found",
    "best_known",
    "gap",
    "generations",
    "total_time_s",
];

pub fn emit_report(rows: &[BenchRow], format: ReportFormat) -> String {
    let rows: Vec<ReportRow> = rows.iter().map(ReportRow::from).collect();
    emit_report_rows(&rows, format)
}

pub fn emit_report_rows(rows: &[ReportRow], format: ReportFormat) -> String {
    match format {
        ReportFormat::Csv => {
            let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
            w.write_record(REPORT_HEADER).expect("write to memory");
            for r in rows {
                w.write_record([
                    r.instance.clone(),
                    r.seeds.to_string(),
                    r.best_found.to_string(),
                    r.best_known.to_string(),
                    format!("{:.6}", r.gap),
                    r.generations.to_string(),
                    format!("{:.3}", r.total_time_s),
                ])
                .expect("write to memory");
            }
            String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf-8 output")
        }
        ReportFormat::Json => {
            let body: Vec<String> = rows
                .iter()
                .map(|r| {
                    format!(
                        "  {{\"instance\": {}, \"seeds\": {}, \"best_found\": {}, \"best_known\": {}, \"gap\": {:.6}, \"generations\": {}, \"total_time_s\": {:.3}}}",
                        serde_json::to_string(&r.instance).expect("string serializes"),
                        r.seeds,
                        r.best_found,
                        r.best_known,
                        r.gap,
                        r.generations,
                        r.total_time_s
                    )
                })
                .collect();
            if body.is_empty() {
                "[]\n".to_string()
            } else {
                format!("[\n{}\n]\n", body.join(",\n"))
            }
        }
    }
}

pub fn parse_report(text: &str, format: ReportFormat) -> Result<Vec<ReportRow>> {
    match format {
        ReportFormat::Csv => {
            let mut reader = csv::Reader::from_reader(text.as_bytes());
            let headers = reader.headers().map_err(|e| Error::Report(e.to_string()))?;
            if headers.iter().ne(REPORT_HEADER) {
                return Err(Error::Report("unexpected CSV header".into()));
            }
            reader
                .deserialize()
                .map(|r| r.map_err(|e| Error::Report(e.to_string())))
                .collect()
        }
        ReportFormat::Json => serde_json::from_str(text).map_err(|e| Error::Report(e.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cost(v: i64) -> Cost {
        Cost::new(v).unwrap()
    }

    #[test]
    fn single_baseline() {
        let b = load_baselines("name,best_known,source\nnug12,578,QAPLIB").unwrap();
        assert_eq!(
            b,
            vec![BaselineRecord {
                instance_name: "nug12".into(),
                best_known: cost(578),
                source: "QAPLIB".into()
            }]
        );
    }

    #[test]
    fn empty_baselines() {
        assert!(load_baselines("name,best_known,source\n").unwrap().is_empty());
    }

    #[test]
    fn baseline_errors() {
        let dup = load_baselines("name,best_known,source\nnug12,578,a\nNUG12,578,b\n").unwrap_err();
        assert!(dup.to_string().contains("NUG12"), "{dup}");
        assert!(load_baselines("name,best_known,source\nx,0,a\n").is_err());
        assert!(load_baselines("name,best_known,source\nx,-5,a\n").is_err());
        assert!(load_baselines("name,best_known,source\nx,abc,a\n").is_err());
        assert!(load_baselines("name,best_known,source\nx,5\n").is_err());
        assert!(load_baselines("name,value,source\nx,5,a\n").is_err());
    }

    #[test]
    fn baseline_lookup_ignores_case() {
        let b = load_baselines("name,best_known,source\nNug12,578,QAPLIB\n").unwrap();
        assert!(find_baseline(&b, "nug12").is_some());
        assert!(find_baseline(&b, "nug14").is_none());
    }

    #[test]
    fn gap_values() {
        let g = compute_gap(cost(578), cost(578)).unwrap();
        assert!(g.is_zero());
        assert_eq!(g.to_string(), "0.000000");
        // 22 / 578 = 0.0380622...
        let g = compute_gap(cost(600), cost(578)).unwrap();
        assert_eq!(g.to_string(), "0.038062");
        assert_eq!(g.rounded(), 0.038062);
        assert!(matches!(
            compute_gap(cost(578), Cost::ZERO),
            Err(Error::NonPositiveBestKnown(0))
        ));
    }

    #[test]
    fn csv_report_shape() {
        let rows = vec![ReportRow {
            instance: "nug12".into(),
            seeds: 10,
            best_found: 578,
            best_known: 578,
            gap: 0.0,
            generations: 812,
            total_time_s: 1.25,
        }];
        let text = emit_report_rows(&rows, ReportFormat::Csv);
        assert_eq!(
            text,
            "instance,seeds,best_found,best_known,gap,generations,total_time_s\nnug12,10,578,578,0.000000,812,1.250\n"
        );
        assert_eq!(parse_report(&text, ReportFormat::Csv).unwrap(), rows);
        let json = emit_report_rows(&rows, ReportFormat::Json);
        assert_eq!(parse_report(&json, ReportFormat::Json).unwrap(), rows);
    }

    #[test]
    fn format_names() {
        assert_eq!("csv".parse::<ReportFormat>().unwrap(), ReportFormat::Csv);
        assert_eq!("json".parse::<ReportFormat>().unwrap(), ReportFormat::Json);
        assert!("xml".parse::<ReportFormat>().is_err());
    }
}
