use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use mkp_bounds::gen::{Correlation, GenSpec, Sigma};
use mkp_bounds::harness::{self, BoundsSelection, OptMode, RunConfig, CSV_HEADER};
use mkp_bounds::instance::{BoundReport, MkpInstance};
use mkp_bounds::oracle::{self, OracleLimits};
use mkp_bounds::relax::{self, SequenceParams};
use mkp_bounds::{decimal_string, Rat};

#[derive(Parser)]
#[command(
    name = "mkpb",
    version,
    about = "Upper bounds for the 0-1 multiple knapsack problem"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate seeded benchmark instances
    Gen(GenArgs),
    /// Compute bounds and gaps for one instance file
    Bound(BoundArgs),
    /// Run a benchmark suite described by a config file
    Suite(SuiteArgs),
    /// Compute an exact optimum by brute force or branch-and-bound
    Oracle(OracleArgs),
    /// Export the assignment model as a CPLEX-LP file with the bound cut
    ExportLp(ExportLpArgs),
    /// Write the bundled fixture instances
    Fixtures(FixturesArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Pisinger,
    Small,
}

#[derive(Clone, Copy, ValueEnum)]
enum CorrArg {
    Unc,
    Wea,
    Str,
    Ss,
}

impl From<CorrArg> for Correlation {
    fn from(c: CorrArg) -> Self {
        match c {
            CorrArg::Unc => Correlation::Uncorrelated,
            CorrArg::Wea => Correlation::Weakly,
            CorrArg::Str => Correlation::Strongly,
            CorrArg::Ss => Correlation::SubsetSum,
        }
    }
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long, value_enum)]
    corr: CorrArg,
    #[arg(short)]
    n: usize,
    #[arg(short)]
    m: usize,
    /// Weight/profit range R (pisinger family)
    #[arg(short = 'R', long)]
    range: Option<u64>,
    /// Capacity fraction: 0.25, 0.5 or 0.75 (small family)
    #[arg(long)]
    sigma: Option<String>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// How many instances to emit, at consecutive seeds
    #[arg(long, default_value_t = 1)]
    count: u64,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Args)]
struct SequenceArgs {
    #[arg(long, default_value_t = 10)]
    q_max: u64,
    #[arg(long, default_value_t = 5)]
    l_max: usize,
    #[arg(long, default_value_t = 10)]
    it_max: usize,
}

impl SequenceArgs {
    fn params(&self) -> Result<SequenceParams> {
        Ok(SequenceParams::new(self.q_max, self.l_max, self.it_max)?)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OptArg {
    None,
    Brute,
    Bnb,
}

#[derive(Args)]
struct BoundArgs {
    instance: PathBuf,
    /// Emit a CSV row instead of JSON
    #[arg(long)]
    csv: bool,
    #[arg(long)]
    no_tighten: bool,
    #[arg(long, value_enum, default_value = "none")]
    opt: OptArg,
    #[arg(long, default_value_t = 12)]
    opt_max_items: usize,
    #[arg(long, default_value_t = 10_000_000)]
    opt_nodes: u64,
    #[arg(long, default_value_t = 10_000)]
    opt_time_ms: u64,
    #[command(flatten)]
    sequence: SequenceArgs,
}

#[derive(Args)]
struct SuiteArgs {
    config: PathBuf,
    /// CSV output path (stdout when omitted)
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Summary table output path (stdout when omitted)
    #[arg(long)]
    table: Option<PathBuf>,
    /// Worker threads; MKPB_THREADS overrides
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleMethod {
    Brute,
    Bnb,
}

#[derive(Args)]
struct OracleArgs {
    instance: PathBuf,
    #[arg(long, value_enum)]
    method: OracleMethod,
    #[arg(long, default_value_t = 12)]
    max_items: usize,
    #[arg(long, default_value_t = 10_000_000)]
    node_budget: u64,
    #[arg(long, default_value_t = 10_000)]
    time_budget_ms: u64,
}

#[derive(Args)]
struct ExportLpArgs {
    instance: PathBuf,
    /// Output path; defaults to the instance path with extension .lp
    #[arg(long)]
    out: Option<PathBuf>,
    /// Skip the sequential-bound cut row
    #[arg(long)]
    no_cut: bool,
    #[arg(long)]
    no_tighten: bool,
    #[command(flatten)]
    sequence: SequenceArgs,
}

#[derive(Args)]
struct FixturesArgs {
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Gen(args) => run_gen(args),
        Command::Bound(args) => run_bound(args),
        Command::Suite(args) => run_suite(args),
        Command::Oracle(args) => run_oracle(args),
        Command::ExportLp(args) => run_export_lp(args),
        Command::Fixtures(args) => run_fixtures(args),
    }
}

fn run_gen(args: GenArgs) -> Result<()> {
    fs::create_dir_all(&args.out_dir)?;
    for k in 0..args.count {
        let seed = args.seed + k;
        let spec = match args.family {
            FamilyArg::Pisinger => {
                let range = args
                    .range
                    .context("the pisinger family needs -R <range>")?;
                GenSpec::pisinger(args.corr.into(), args.n, args.m, range, seed)?
            }
            FamilyArg::Small => {
                let sigma = args
                    .sigma
                    .as_deref()
                    .and_then(Sigma::parse)
                    .context("the small family needs --sigma 0.25|0.5|0.75")?;
                GenSpec::small(args.corr.into(), args.n, args.m, sigma, seed)?
            }
        };
        let instance = mkp_bounds::gen::generate(&spec)?;
        let path = args.out_dir.join(spec.file_name());
        instance.save(&path)?;
        println!("{}", path.display());
    }
    Ok(())
}

fn load_instance(path: &Path) -> Result<MkpInstance> {
    MkpInstance::load(path).with_context(|| format!("reading {}", path.display()))
}

fn report_json(instance: &MkpInstance, report: &BoundReport, tightened: bool) -> serde_json::Value {
    fn dec(v: &Option<Rat>) -> serde_json::Value {
        v.as_ref()
            .map(|r| json!(decimal_string(r, 6)))
            .unwrap_or(serde_json::Value::Null)
    }
    fn exact(v: &Option<Rat>) -> serde_json::Value {
        v.as_ref()
            .map(|r| json!(r.to_string()))
            .unwrap_or(serde_json::Value::Null)
    }
    fn ms(v: &Option<std::time::Duration>) -> serde_json::Value {
        v.map(|d| json!(format!("{:.3}", d.as_secs_f64() * 1e3)))
            .unwrap_or(serde_json::Value::Null)
    }
    json!({
        "name": instance.name(),
        "n": instance.n(),
        "m": instance.m(),
        "tightened": tightened,
        "z_seq": dec(&report.z_seq),
        "z_seq_exact": exact(&report.z_seq),
        "t_seq_ms": ms(&report.t_seq),
        "z_surr": report.z_surr,
        "surr_exact": report.surr_exact,
        "t_surr_ms": ms(&report.t_surr),
        "z_lp": dec(&report.z_lp),
        "z_lp_exact": exact(&report.z_lp),
        "t_lp_ms": ms(&report.t_lp),
        "opt": report.opt,
        "exact_opt": report.opt_exact,
        "gap_se": dec(&report.gap_se),
        "gap_su": dec(&report.gap_su),
        "gap_lp": dec(&report.gap_lp),
        "g_se_lp": dec(&report.g_se_lp),
        "g_su_lp": dec(&report.g_su_lp),
        "notes": report.notes,
    })
}

fn report_csv_row(instance: &MkpInstance, report: &BoundReport) -> String {
    fn dec(v: &Option<Rat>) -> String {
        v.as_ref().map(|r| decimal_string(r, 6)).unwrap_or_default()
    }
    fn ms(v: &Option<std::time::Duration>) -> String {
        v.map(|d| format!("{:.3}", d.as_secs_f64() * 1e3))
            .unwrap_or_default()
    }
    format!(
        ",,{},{},,,{},{},{},{},{},{},{},{},{},{},{},{},{}",
        instance.n(),
        instance.m(),
        dec(&report.z_seq),
        ms(&report.t_seq),
        report.z_surr.map(|v| v.to_string()).unwrap_or_default(),
        ms(&report.t_surr),
        dec(&report.z_lp),
        ms(&report.t_lp),
        report.opt.map(|v| v.to_string()).unwrap_or_default(),
        report.opt_exact,
        dec(&report.gap_se),
        dec(&report.gap_su),
        dec(&report.gap_lp),
        dec(&report.g_se_lp),
        dec(&report.g_su_lp),
    )
}

fn run_bound(args: BoundArgs) -> Result<()> {
    let instance = load_instance(&args.instance)?;
    let config = RunConfig {
        tighten: !args.no_tighten,
        params: args.sequence.params()?,
        bounds: BoundsSelection::default(),
        opt: match args.opt {
            OptArg::None => OptMode::Off,
            OptArg::Brute => OptMode::BruteForce,
            OptArg::Bnb => OptMode::BranchAndBound,
        },
        limits: OracleLimits {
            max_items: args.opt_max_items,
            node_budget: args.opt_nodes,
            time_budget: std::time::Duration::from_millis(args.opt_time_ms),
        },
    };
    let report = harness::run_instance(&instance, &config);
    if args.csv {
        println!("{CSV_HEADER}");
        println!("{}", report_csv_row(&instance, &report));
    } else {
        let value = report_json(&instance, &report, config.tighten);
        println!("{}", serde_json::to_string_pretty(&value)?);
    }
    Ok(())
}

fn run_suite(args: SuiteArgs) -> Result<()> {
    let text = fs::read_to_string(&args.config)
        .with_context(|| format!("reading {}", args.config.display()))?;
    let mut config = harness::parse_suite_config(&text)?;
    if let Some(threads) = args.threads {
        config.threads = threads;
    }
    let mut csv_buf = Vec::new();
    let mut table_buf = Vec::new();
    harness::run_suite(&config, &mut csv_buf, &mut table_buf)?;
    match &args.csv {
        Some(path) => fs::write(path, &csv_buf)?,
        None => io::stdout().write_all(&csv_buf)?,
    }
    match &args.table {
        Some(path) => fs::write(path, &table_buf)?,
        None => io::stdout().write_all(&table_buf)?,
    }
    Ok(())
}

fn run_oracle(args: OracleArgs) -> Result<()> {
    let instance = load_instance(&args.instance)?;
    let limits = OracleLimits {
        max_items: args.max_items,
        node_budget: args.node_budget,
        time_budget: std::time::Duration::from_millis(args.time_budget_ms),
    };
    let value = match args.method {
        OracleMethod::Brute => {
            let solution = oracle::brute_force_mkp(&instance, &limits)?;
            json!({
                "method": "brute",
                "value": solution.value,
                "exact": true,
                "assignment": solution.assignment,
            })
        }
        OracleMethod::Bnb => {
            let outcome = oracle::bnb_mkp(&instance, &limits);
            json!({
                "method": "bnb",
                "value": outcome.lower,
                "exact": outcome.exact,
                "lower": outcome.lower,
                "upper": outcome.upper,
                "nodes": outcome.nodes,
            })
        }
    };
    println!("{}", serde_json::to_string_pretty(&value)?);
    Ok(())
}

fn run_export_lp(args: ExportLpArgs) -> Result<()> {
    let instance = load_instance(&args.instance)?;
    let out = args
        .out
        .unwrap_or_else(|| args.instance.with_extension("lp"));
    let cut = if args.no_cut {
        None
    } else {
        let base = if args.no_tighten {
            instance.clone()
        } else {
            relax::tighten_capacities(&instance).instance
        };
        let bound = relax::sequential_bound(&base, &args.sequence.params()?)?;
        Some(bound.value)
    };
    let mut file = fs::File::create(&out)?;
    harness::export_lp(&instance, cut.as_ref(), &mut file)?;
    println!("{}", out.display());
    Ok(())
}

fn run_fixtures(args: FixturesArgs) -> Result<()> {
    fs::create_dir_all(&args.out_dir)?;
    let fixtures = [
        harness::fixture_example_5x2(),
        harness::fixture_inst1(),
        harness::fixture_inst2(),
        harness::fixture_inst3(),
    ];
    for instance in fixtures {
        let name = instance.name().context("fixtures are named")?;
        let path = args.out_dir.join(format!("{name}.mkp"));
        instance.save(&path)?;
        println!("{}", path.display());
    }
    Ok(())
}
