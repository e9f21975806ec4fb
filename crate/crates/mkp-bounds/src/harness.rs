//! Benchmark harness: per-instance bound reports, suite runs with CSV rows
//! and a Markdown summary, a CPLEX-LP exporter with the optional bound cut,
//! and bundled fixture instances.
//!
//! The suite dispatches instances to a worker pool but buffers results and
//! emits them in config order, so output is deterministic regardless of
//! scheduling; timing columns are the one exception.

use std::io::{self, Write};
use std::path::Path;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::gen::{self, Correlation, Family, GenSpec, Sigma};
use crate::instance::{BoundReport, MkpInstance, MkpItem};
use crate::kernels::KernelError;
use crate::oracle::{self, OracleLimits};
use crate::relax::{self, RelaxError, SequenceParams};
use crate::{decimal_string, Rat, Weight};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("config error at line {line}: {message}")]
    Config { line: usize, message: String },
    #[error("thread pool: {0}")]
    Threads(String),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Gen(#[from] gen::GenError),
    #[error(transparent)]
    Relax(#[from] RelaxError),
}

/// Which of the three bounds a run computes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundsSelection {
    pub seq: bool,
    pub surr: bool,
    pub lp: bool,
}

impl Default for BoundsSelection {
    fn default() -> Self {
        Self {
            seq: true,
            surr: true,
            lp: true,
        }
    }
}

/// How (and whether) the optimum column is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OptMode {
    Off,
    BruteForce,
    BranchAndBound,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    /// Tighten capacities before computing anything (default on).
    pub tighten: bool,
    pub params: SequenceParams,
    pub bounds: BoundsSelection,
    pub opt: OptMode,
    pub limits: OracleLimits,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            tighten: true,
            params: SequenceParams::default(),
            bounds: BoundsSelection::default(),
            opt: OptMode::Off,
            limits: OracleLimits::default(),
        }
    }
}

/// Runs the configured bounds and optimum on one instance, with wall-clock
/// timings. Per-bound failures land in the report notes, never abort a run.
pub fn run_instance(instance: &MkpInstance, config: &RunConfig) -> BoundReport {
    let mut report = BoundReport::default();
    let tightened;
    let work: &MkpInstance = if config.tighten {
        let t = relax::tighten_capacities(instance);
        if !t.untightened.is_empty() {
            report
                .notes
                .push(format!("tightening skipped for knapsacks {:?}", t.untightened));
        }
        tightened = t.instance;
        &tightened
    } else {
        instance
    };

    if config.bounds.seq {
        let started = Instant::now();
        match relax::sequential_bound(work, &config.params) {
            Ok(bound) => {
                report.t_seq = Some(started.elapsed());
                report.z_seq = Some(bound.value);
            }
            Err(err) => {
                report.t_seq = Some(started.elapsed());
                report.notes.push(format!("sequential bound failed: {err}"));
            }
        }
    }
    if config.bounds.surr {
        let started = Instant::now();
        match relax::surrogate_bound(work) {
            Ok(value) => {
                report.z_surr = Some(value);
                report.surr_exact = true;
            }
            Err(RelaxError::Kernel(KernelError::ResourceLimit { upper_bound, .. })) => {
                report.z_surr = Some(upper_bound);
                report.surr_exact = false;
                report
                    .notes
                    .push("surrogate bound from truncated search".into());
            }
            Err(err) => report.notes.push(format!("surrogate bound failed: {err}")),
        }
        report.t_surr = Some(started.elapsed());
    }
    if config.bounds.lp {
        let started = Instant::now();
        match relax::lp_bound(work) {
            Ok(value) => {
                report.t_lp = Some(started.elapsed());
                report.z_lp = Some(value);
            }
            Err(err) => {
                report.t_lp = Some(started.elapsed());
                report.notes.push(format!("lp bound failed: {err}"));
            }
        }
    }
    match config.opt {
        OptMode::Off => {}
        OptMode::BruteForce => match oracle::brute_force_mkp(work, &config.limits) {
            Ok(solution) => {
                report.opt = Some(solution.value);
                report.opt_exact = true;
            }
            Err(err) => report.notes.push(format!("optimum skipped: {err}")),
        },
        OptMode::BranchAndBound => {
            let outcome = oracle::bnb_mkp(work, &config.limits);
            if outcome.exact {
                report.opt = Some(outcome.lower);
                report.opt_exact = true;
            } else {
                report.notes.push(format!(
                    "optimum unknown: bounds [{}, {}]",
                    outcome.lower, outcome.upper
                ));
            }
        }
    }
    report.compute_gaps();
    report
}

/// One generator setting, replicated over consecutive seeds.
#[derive(Debug, Clone)]
pub struct SuiteGroup {
    /// Template spec; its seed is the first of the run.
    pub base: GenSpec,
    pub replications: usize,
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub groups: Vec<SuiteGroup>,
    pub run: RunConfig,
    /// Worker threads; 0 uses the library default. `MKPB_THREADS` overrides.
    pub threads: usize,
}

/// Stable CSV schema, version 1.
pub const CSV_HEADER: &str = "family,corr,n,m,R_or_sigma,seed,z_seq,t_seq_ms,z_surr,t_surr_ms,z_lp,t_lp_ms,opt,exact_opt,gap_se,gap_su,gap_lp,g_se_lp,g_su_lp";

#[derive(Debug, Clone)]
pub struct SuiteRow {
    pub spec: GenSpec,
    pub report: Option<BoundReport>,
}

fn fmt_ms(duration: &Option<Duration>) -> String {
    duration
        .map(|d| format!("{:.3}", d.as_secs_f64() * 1e3))
        .unwrap_or_default()
}

fn fmt_dec(value: &Option<Rat>, places: u32) -> String {
    value
        .as_ref()
        .map(|v| decimal_string(v, places))
        .unwrap_or_default()
}

impl SuiteRow {
    pub fn csv_line(&self) -> String {
        let spec = &self.spec;
        let meta = format!(
            "{},{},{},{},{},{}",
            spec.family.as_str(),
            spec.correlation.as_str(),
            spec.n,
            spec.m,
            spec.r_or_sigma(),
            spec.seed
        );
        match &self.report {
            None => format!("{meta},,,,,,,,,,,,,"),
            Some(r) => format!(
                "{meta},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                fmt_dec(&r.z_seq, 6),
                fmt_ms(&r.t_seq),
                r.z_surr.map(|v| v.to_string()).unwrap_or_default(),
                fmt_ms(&r.t_surr),
                fmt_dec(&r.z_lp, 6),
                fmt_ms(&r.t_lp),
                r.opt.map(|v| v.to_string()).unwrap_or_default(),
                r.opt_exact,
                fmt_dec(&r.gap_se, 6),
                fmt_dec(&r.gap_su, 6),
                fmt_dec(&r.gap_lp, 6),
                fmt_dec(&r.g_se_lp, 6),
                fmt_dec(&r.g_su_lp, 6),
            ),
        }
    }
}

/// `MKPB_THREADS` beats the configured thread count.
pub fn effective_threads(configured: usize) -> usize {
    std::env::var("MKPB_THREADS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(configured)
}

/// Runs every group, writes one CSV row per instance in config order, then a
/// Markdown table of per-group averages. Returns the rows for callers that
/// post-process.
pub fn run_suite(
    config: &SuiteConfig,
    csv: &mut dyn Write,
    table: &mut dyn Write,
) -> Result<Vec<SuiteRow>, HarnessError> {
    let mut jobs: Vec<(usize, GenSpec)> = Vec::new();
    for (g, group) in config.groups.iter().enumerate() {
        for rep in 0..group.replications {
            let mut spec = group.base.clone();
            spec.seed = group.base.seed + rep as u64;
            jobs.push((g, spec));
        }
    }

    let execute = || -> Vec<SuiteRow> {
        jobs.par_iter()
            .map(|(_, spec)| {
                let report = gen::generate(spec)
                    .ok()
                    .map(|inst| run_instance(&inst, &config.run));
                SuiteRow {
                    spec: spec.clone(),
                    report,
                }
            })
            .collect()
    };
    let threads = effective_threads(config.threads);
    let rows: Vec<SuiteRow> = if threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| HarnessError::Threads(e.to_string()))?
            .install(execute)
    } else {
        execute()
    };

    writeln!(csv, "{CSV_HEADER}")?;
    for row in &rows {
        writeln!(csv, "{}", row.csv_line())?;
    }

    write_summary_table(config, &jobs, &rows, table)?;
    Ok(rows)
}

fn mean_rat(values: &[Rat]) -> Option<Rat> {
    if values.is_empty() {
        return None;
    }
    let total: Rat = values.iter().cloned().sum();
    Some(total / crate::rat(values.len() as u64))
}

fn mean_cell<F>(rows: &[&SuiteRow], extract: F) -> String
where
    F: Fn(&BoundReport) -> Option<Rat>,
{
    let values: Vec<Rat> = rows
        .iter()
        .filter_map(|r| r.report.as_ref().and_then(&extract))
        .collect();
    // Averages mirror the result tables: shown only when every row has one.
    if values.len() == rows.len() {
        mean_rat(&values)
            .map(|m| decimal_string(&m, 2))
            .unwrap_or_else(|| "-".into())
    } else {
        "-".into()
    }
}

fn mean_time(rows: &[&SuiteRow], extract: fn(&BoundReport) -> Option<Duration>) -> String {
    let values: Vec<f64> = rows
        .iter()
        .filter_map(|r| r.report.as_ref().and_then(extract))
        .map(|d| d.as_secs_f64() * 1e3)
        .collect();
    if values.is_empty() {
        "-".into()
    } else {
        format!("{:.3}", values.iter().sum::<f64>() / values.len() as f64)
    }
}

fn write_summary_table(
    config: &SuiteConfig,
    jobs: &[(usize, GenSpec)],
    rows: &[SuiteRow],
    out: &mut dyn Write,
) -> Result<(), HarnessError> {
    writeln!(
        out,
        "| m | n | n/m | corr | R/sigma | z_seq | t_seq_ms | z_surr | t_surr_ms | z_lp | t_lp_ms | opt | gap_se | gap_su | gap_lp | g_se_lp | g_su_lp |"
    )?;
    writeln!(
        out,
        "|---|---|-----|------|---------|-------|----------|--------|-----------|------|---------|-----|--------|--------|--------|---------|---------|"
    )?;
    for (g, group) in config.groups.iter().enumerate() {
        let members: Vec<&SuiteRow> = jobs
            .iter()
            .zip(rows)
            .filter(|((job_group, _), _)| *job_group == g)
            .map(|(_, row)| row)
            .collect();
        if members.is_empty() {
            continue;
        }
        let spec = &group.base;
        let ratio = spec.n as f64 / spec.m as f64;
        writeln!(
            out,
            "| {} | {} | {:.2} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |",
            spec.m,
            spec.n,
            ratio,
            spec.correlation.as_str(),
            spec.r_or_sigma(),
            mean_cell(&members, |r| r.z_seq.clone()),
            mean_time(&members, |r| r.t_seq),
            mean_cell(&members, |r| r.z_surr.map(crate::rat)),
            mean_time(&members, |r| r.t_surr),
            mean_cell(&members, |r| r.z_lp.clone()),
            mean_time(&members, |r| r.t_lp),
            mean_cell(&members, |r| r.opt.filter(|_| r.opt_exact).map(crate::rat)),
            mean_cell(&members, |r| r.gap_se.clone()),
            mean_cell(&members, |r| r.gap_su.clone()),
            mean_cell(&members, |r| r.gap_lp.clone()),
            mean_cell(&members, |r| r.g_se_lp.clone()),
            mean_cell(&members, |r| r.g_su_lp.clone()),
        )?;
    }
    Ok(())
}

/// Parses the flat key-value suite configuration; see the repository README
/// for the format.
pub fn parse_suite_config(text: &str) -> Result<SuiteConfig, HarnessError> {
    let mut run = RunConfig::default();
    let mut threads = 0usize;
    let mut default_reps = 10usize;
    let mut default_seed = 1u64;
    let mut q_max = 10u64;
    let mut l_max = 5usize;
    let mut it_max = 10usize;
    let mut groups: Vec<(usize, String)> = Vec::new();

    let err = |line: usize, message: String| HarnessError::Config { line, message };

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| err(line_no, format!("expected key = value, got {line:?}")))?;
        let key = key.trim();
        let value = value.trim();
        match key {
            "tighten" => {
                run.tighten = parse_bool(value)
                    .ok_or_else(|| err(line_no, format!("bad tighten value {value:?}")))?
            }
            "threads" => {
                threads = value
                    .parse()
                    .map_err(|_| err(line_no, format!("bad threads value {value:?}")))?
            }
            "bounds" => {
                let mut selection = BoundsSelection {
                    seq: false,
                    surr: false,
                    lp: false,
                };
                for token in value.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                    match token {
                        "seq" => selection.seq = true,
                        "surr" => selection.surr = true,
                        "lp" => selection.lp = true,
                        other => return Err(err(line_no, format!("unknown bound {other:?}"))),
                    }
                }
                run.bounds = selection;
            }
            "opt" => {
                run.opt = match value {
                    "none" => OptMode::Off,
                    "brute" => OptMode::BruteForce,
                    "bnb" => OptMode::BranchAndBound,
                    other => return Err(err(line_no, format!("unknown opt mode {other:?}"))),
                }
            }
            "opt_max_items" => {
                run.limits.max_items = value
                    .parse()
                    .map_err(|_| err(line_no, format!("bad opt_max_items {value:?}")))?
            }
            "opt_nodes" => {
                run.limits.node_budget = value
                    .parse()
                    .map_err(|_| err(line_no, format!("bad opt_nodes {value:?}")))?
            }
            "opt_time_ms" => {
                let ms: u64 = value
                    .parse()
                    .map_err(|_| err(line_no, format!("bad opt_time_ms {value:?}")))?;
                run.limits.time_budget = Duration::from_millis(ms);
            }
            "q_max" => {
                q_max = value
                    .parse()
                    .map_err(|_| err(line_no, format!("bad q_max {value:?}")))?
            }
            "l_max" => {
                l_max = value
                    .parse()
                    .map_err(|_| err(line_no, format!("bad l_max {value:?}")))?
            }
            "it_max" => {
                it_max = value
                    .parse()
                    .map_err(|_| err(line_no, format!("bad it_max {value:?}")))?
            }
            "replications" => {
                default_reps = value
                    .parse()
                    .map_err(|_| err(line_no, format!("bad replications {value:?}")))?
            }
            "seed" => {
                default_seed = value
                    .parse()
                    .map_err(|_| err(line_no, format!("bad seed {value:?}")))?
            }
            "group" => groups.push((line_no, value.to_string())),
            other => return Err(err(line_no, format!("unknown key {other:?}"))),
        }
    }

    run.params = SequenceParams::new(q_max, l_max, it_max)?;

    let mut parsed_groups = Vec::with_capacity(groups.len());
    for (line_no, text) in groups {
        parsed_groups.push(parse_group(&text, default_reps, default_seed).map_err(
            |message| HarnessError::Config { line: line_no, message },
        )?);
    }
    if parsed_groups.is_empty() {
        // Header-only output is still meaningful; an empty suite is allowed.
    }
    Ok(SuiteConfig {
        groups: parsed_groups,
        run,
        threads,
    })
}

fn parse_bool(value: &str) -> Option<bool> {
    match value {
        "on" | "true" | "yes" | "1" => Some(true),
        "off" | "false" | "no" | "0" => Some(false),
        _ => None,
    }
}

/// `family corr n=.. m=.. [R=..] [sigma=..] [reps=..] [seed=..]`
fn parse_group(text: &str, default_reps: usize, default_seed: u64) -> Result<SuiteGroup, String> {
    let mut tokens = text.split_whitespace();
    let family = tokens
        .next()
        .and_then(Family::parse)
        .ok_or_else(|| format!("group must start with a family, got {text:?}"))?;
    let correlation = tokens
        .next()
        .and_then(Correlation::parse)
        .ok_or_else(|| "group needs a correlation class after the family".to_string())?;
    let mut n = None;
    let mut m = None;
    let mut range = None;
    let mut sigma = None;
    let mut reps = default_reps;
    let mut seed = default_seed;
    for token in tokens {
        let (key, value) = token
            .split_once('=')
            .ok_or_else(|| format!("expected key=value in group, got {token:?}"))?;
        match key {
            "n" => n = Some(value.parse().map_err(|_| format!("bad n {value:?}"))?),
            "m" => m = Some(value.parse().map_err(|_| format!("bad m {value:?}"))?),
            "R" => range = Some(value.parse().map_err(|_| format!("bad R {value:?}"))?),
            "sigma" => {
                sigma =
                    Some(Sigma::parse(value).ok_or_else(|| format!("bad sigma {value:?}"))?)
            }
            "reps" => reps = value.parse().map_err(|_| format!("bad reps {value:?}"))?,
            "seed" => seed = value.parse().map_err(|_| format!("bad seed {value:?}"))?,
            other => return Err(format!("unknown group key {other:?}")),
        }
    }
    let n = n.ok_or("group needs n=")?;
    let m = m.ok_or("group needs m=")?;
    let base = match family {
        Family::Pisinger => GenSpec::pisinger(
            correlation,
            n,
            m,
            range.ok_or("pisinger group needs R=")?,
            seed,
        ),
        Family::Small => GenSpec::small(
            correlation,
            n,
            m,
            sigma.ok_or("small group needs sigma=")?,
            seed,
        ),
    }
    .map_err(|e| e.to_string())?;
    Ok(SuiteGroup {
        base,
        replications: reps,
    })
}

/// Writes the assignment model in CPLEX-LP text format, optionally with the
/// profit cut `sum p_j x_ij <= floor(bound)` appended as its last row.
pub fn export_lp(
    instance: &MkpInstance,
    cut: Option<&Rat>,
    out: &mut dyn Write,
) -> io::Result<()> {
    let n = instance.n();
    let m = instance.m();
    writeln!(out, "\\ {}", instance.name().unwrap_or("mkp"))?;
    writeln!(out, "Maximize")?;
    let profit_terms = |out: &mut dyn Write, head: &str| -> io::Result<()> {
        let terms: Vec<String> = (1..=m)
            .flat_map(|i| {
                let items = instance.items();
                (1..=n).map(move |j| format!("{} x_{}_{}", items[j - 1].profit, i, j))
            })
            .collect();
        write_terms(out, head, &terms, "")
    };
    profit_terms(out, " obj:")?;
    writeln!(out, "Subject To")?;
    for (i, &cap) in instance.capacities().iter().enumerate() {
        let terms: Vec<String> = (1..=n)
            .map(|j| format!("{} x_{}_{}", instance.items()[j - 1].weight, i + 1, j))
            .collect();
        write_terms(out, &format!(" cap_{}:", i + 1), &terms, &format!(" <= {cap}"))?;
    }
    for j in 1..=n {
        let terms: Vec<String> = (1..=m).map(|i| format!("x_{i}_{j}")).collect();
        write_terms(out, &format!(" item_{j}:"), &terms, " <= 1")?;
    }
    if let Some(bound) = cut {
        let rhs = bound.floor().to_integer();
        let terms: Vec<String> = (1..=m)
            .flat_map(|i| {
                let items = instance.items();
                (1..=n).map(move |j| format!("{} x_{}_{}", items[j - 1].profit, i, j))
            })
            .collect();
        write_terms(out, " seq_cut:", &terms, &format!(" <= {rhs}"))?;
    }
    writeln!(out, "Binaries")?;
    let vars: Vec<String> = (1..=m)
        .flat_map(|i| (1..=n).map(move |j| format!("x_{i}_{j}")))
        .collect();
    let mut line = String::new();
    for var in vars {
        if line.len() + var.len() + 1 > 76 {
            writeln!(out, "{line}")?;
            line = String::new();
        }
        line.push(' ');
        line.push_str(&var);
    }
    if !line.is_empty() {
        writeln!(out, "{line}")?;
    }
    writeln!(out, "End")
}

/// Computes nothing itself: writes the model for `instance` with the given
/// sequential bound as a cut, to a file.
pub fn export_lp_with_cut(
    instance: &MkpInstance,
    z_seq: &Rat,
    path: impl AsRef<Path>,
) -> Result<(), HarnessError> {
    let mut file = std::fs::File::create(path)?;
    export_lp(instance, Some(z_seq), &mut file)?;
    Ok(())
}

fn write_terms(out: &mut dyn Write, head: &str, terms: &[String], tail: &str) -> io::Result<()> {
    let mut line = head.to_string();
    for (k, term) in terms.iter().enumerate() {
        let piece = if k == 0 {
            format!(" {term}")
        } else {
            format!(" + {term}")
        };
        if line.len() + piece.len() > 76 && !line.is_empty() {
            writeln!(out, "{line}")?;
            line = format!("   {}", piece.trim_start());
        } else {
            line.push_str(&piece);
        }
    }
    line.push_str(tail);
    writeln!(out, "{line}")
}

/// The five-item, two-knapsack worked example used across the tests.
pub fn fixture_example_5x2() -> MkpInstance {
    let profits = [99u64, 70, 74, 47, 64];
    let weights = [33u64, 35, 37, 47, 64];
    let items = profits
        .iter()
        .zip(&weights)
        .map(|(&p, &w)| MkpItem::new(p, w))
        .collect();
    MkpInstance::validate(items, vec![47, 64], Some("example_5x2".into()))
        .expect("fixture is valid")
}

/// The bundled 36-item, 30-knapsack benchmark fixture.
pub fn fixture_inst1() -> MkpInstance {
    const W: [Weight; 36] = [
        33, 35, 37, 47, 64, 30, 35, 36, 39, 39, 40, 41, 33, 35, 37, 47, 64, 33, 35, 37, 47, 64,
        30, 35, 36, 39, 39, 40, 41, 33, 35, 37, 47, 64, 47, 64,
    ];
    const P: [u64; 36] = [
        99, 70, 74, 47, 64, 50, 50, 39, 39, 39, 38, 37, 99, 70, 74, 47, 64, 99, 70, 74, 47, 64,
        50, 50, 39, 39, 39, 38, 37, 99, 70, 74, 47, 64, 100, 50,
    ];
    const C: [Weight; 30] = [
        47, 64, 40, 64, 47, 64, 40, 64, 47, 64, 40, 64, 40, 64, 40, 64, 40, 64, 47, 64, 40, 39,
        39, 37, 39, 39, 37, 39, 39, 37,
    ];
    let items = P
        .iter()
        .zip(&W)
        .map(|(&p, &w)| MkpItem::new(p, w))
        .collect();
    MkpInstance::validate(items, C.to_vec(), Some("inst1".into())).expect("fixture is valid")
}

/// `k` copies of every item and every knapsack. `replicate(x, 1)` is `x`.
pub fn replicate(instance: &MkpInstance, k: usize) -> MkpInstance {
    assert!(k >= 1);
    if k == 1 {
        return instance.clone();
    }
    let mut items = Vec::with_capacity(instance.n() * k);
    let mut capacities = Vec::with_capacity(instance.m() * k);
    for _ in 0..k {
        items.extend_from_slice(instance.items());
        capacities.extend_from_slice(instance.capacities());
    }
    let name = instance.name().map(|n| format!("{n}_x{k}"));
    MkpInstance::validate(items, capacities, name).expect("replication preserves validity")
}

/// Three copies of the base fixture.
pub fn fixture_inst2() -> MkpInstance {
    replicate(&fixture_inst1(), 3).renamed(Some("inst2".into()))
}

/// Six copies of the base fixture.
pub fn fixture_inst3() -> MkpInstance {
    replicate(&fixture_inst1(), 6).renamed(Some("inst3".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn fixture_shapes() {
        let one = fixture_inst1();
        assert_eq!((one.n(), one.m()), (36, 30));
        let two = fixture_inst2();
        assert_eq!((two.n(), two.m()), (108, 90));
        let three = fixture_inst3();
        assert_eq!((three.n(), three.m()), (216, 180));
        assert_eq!(replicate(&one, 1), one);
        assert_eq!(two.total_weight(), 3 * one.total_weight());
    }

    #[test]
    fn run_instance_example_values() {
        let mut config = RunConfig::default();
        config.opt = OptMode::BruteForce;
        let report = run_instance(&fixture_example_5x2(), &config);
        assert_eq!(report.opt, Some(173));
        assert!(report.opt_exact);
        assert_eq!(report.z_surr, Some(243));
        assert!(report.surr_exact);
        assert_eq!(report.z_lp, Some(rat(249)));
        let z_seq = report.z_seq.clone().unwrap();
        assert!(z_seq <= rat(216));
        assert!(report.gap_se.is_some());
        assert!(report.g_se_lp.is_some());
    }

    #[test]
    fn lp_export_minimal_model() {
        let inst = MkpInstance::validate(
            vec![MkpItem::new(5, 4)],
            vec![9],
            Some("tiny".into()),
        )
        .unwrap();
        let mut buf = Vec::new();
        export_lp(&inst, Some(&rat(5)), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let expected = "\\ tiny\n\
                        Maximize\n\
                        \u{20}obj: 5 x_1_1\n\
                        Subject To\n\
                        \u{20}cap_1: 4 x_1_1 <= 9\n\
                        \u{20}item_1: x_1_1 <= 1\n\
                        \u{20}seq_cut: 5 x_1_1 <= 5\n\
                        Binaries\n\
                        \u{20}x_1_1\n\
                        End\n";
        assert_eq!(text, expected);
    }

    #[test]
    fn lp_cut_floors_rational_bounds() {
        let inst = fixture_example_5x2();
        let mut buf = Vec::new();
        export_lp(&inst, Some(&crate::rat_frac(203_331, 100)), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("<= 2033"));
        let mut buf = Vec::new();
        export_lp(&inst, Some(&rat(216)), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("<= 216"));
        assert!(text.contains("cap_2:"));
        assert!(text.contains("item_5:"));
    }

    #[test]
    fn config_parsing() {
        let text = "\
# demo
tighten = on
threads = 2
bounds = seq,surr,lp
opt = bnb
opt_nodes = 1000
q_max = 10
l_max = 5
it_max = 4
replications = 3
seed = 7
group = pisinger unc n=12 m=4 R=100
group = small str n=10 m=5 sigma=0.5 reps=2 seed=42
";
        let config = parse_suite_config(text).unwrap();
        assert_eq!(config.threads, 2);
        assert_eq!(config.run.opt, OptMode::BranchAndBound);
        assert_eq!(config.run.limits.node_budget, 1000);
        assert_eq!(config.run.params.it_max(), 4);
        assert_eq!(config.groups.len(), 2);
        assert_eq!(config.groups[0].replications, 3);
        assert_eq!(config.groups[0].base.seed, 7);
        assert_eq!(config.groups[1].replications, 2);
        assert_eq!(config.groups[1].base.seed, 42);
        assert_eq!(config.groups[1].base.sigma, Some(Sigma::Half));
    }

    #[test]
    fn config_rejects_unknown_keys() {
        assert!(matches!(
            parse_suite_config("bogus = 1"),
            Err(HarnessError::Config { line: 1, .. })
        ));
        assert!(parse_suite_config("group = small ss n=4 m=2 sigma=0.5").is_err());
    }

    #[test]
    fn suite_smoke_and_row_counts() {
        let text = "\
replications = 2
seed = 3
opt = brute
opt_max_items = 12
group = pisinger unc n=8 m=2 R=100
group = pisinger str n=6 m=2 R=100
";
        let config = parse_suite_config(text).unwrap();
        let mut csv = Vec::new();
        let mut table = Vec::new();
        let rows = run_suite(&config, &mut csv, &mut table).unwrap();
        assert_eq!(rows.len(), 4);
        let csv = String::from_utf8(csv).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 5);
        assert_eq!(lines[0], CSV_HEADER);
        for row in &rows {
            let report = row.report.as_ref().unwrap();
            // Bounds dominate the exact optimum on every run.
            let opt = rat(report.opt.unwrap());
            assert!(report.z_seq.clone().unwrap() >= opt);
            assert!(rat(report.z_surr.unwrap()) >= opt);
            assert!(report.z_lp.clone().unwrap() >= opt);
        }
        let table = String::from_utf8(table).unwrap();
        assert_eq!(table.lines().count(), 4); // header, separator, two groups
    }

    #[test]
    fn empty_config_yields_header_only() {
        let config = parse_suite_config("").unwrap();
        let mut csv = Vec::new();
        let mut table = Vec::new();
        let rows = run_suite(&config, &mut csv, &mut table).unwrap();
        assert!(rows.is_empty());
        assert_eq!(String::from_utf8(csv).unwrap(), format!("{CSV_HEADER}\n"));
    }
}
