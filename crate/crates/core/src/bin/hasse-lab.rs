use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use hasse_lab::arith::int::decimal;
use hasse_lab::density::{self, DEFAULT_CUTOFF};
use hasse_lab::invariants::{discriminant, invariants, jacobian};
use hasse_lab::lab::{self, ExperimentConfig, ReportFormat, ResumeCheck, Summary};
use hasse_lab::ledger;
use hasse_lab::local::{locally_soluble_with, p_adic_soluble, real_soluble, LocalOptions, Place};
use hasse_lab::models::{is_generic, Interval};
use hasse_lab::rational_points::{classify_with, search_point_with, ClassifyOptions, HasseClass, SearchOptions};
use hasse_lab::{Error, GenusOneModel, ModelKind, Result};

macro_rules! say {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        if writeln!(std::io::stdout(), $($t)*).is_err() {
            std::process::exit(0);
        }
    }};
}

/// Local solubility, rational points and sampling experiments for genus-one models.
///
/// Models are written `n;c1,...,cm`, e.g. `3;3,0,0,0,0,0,4,0,0,5` for 3x³ + 4y³ + 5z³.
#[derive(Parser)]
#[command(name = "hasse-lab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Box-sampling campaigns.
    Experiment {
        #[command(subcommand)]
        action: ExperimentAction,
    },
    /// Invariants A, B, the discriminant, the Jacobian and genericity.
    Invariants { model: GenusOneModel },
    /// Solubility over the reals and at every bad prime (or one place).
    Local {
        model: GenusOneModel,
        /// `real` or a prime.
        #[arg(long)]
        place: Option<Place>,
    },
    /// Bounded search for a rational point.
    Search {
        model: GenusOneModel,
        #[arg(long, default_value_t = 1000)]
        search_height: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Degenerate, locally insoluble, soluble, failure candidate or undecided.
    Classify {
        model: GenusOneModel,
        #[arg(long, default_value_t = lab::DEFAULT_SEARCH_HEIGHT)]
        search_height: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Euler product for ternary cubics, or a Monte Carlo local density with `--p`.
    Density {
        #[arg(long, default_value_t = DEFAULT_CUTOFF)]
        cutoff: u64,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, default_value_t = 6)]
        k: u32,
        #[arg(long, default_value = "3", value_parser = parse_kind)]
        kind: ModelKind,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Exact constants, rank inequalities and curve counts.
    Ledger {
        /// Print every tabulated value.
        #[arg(long)]
        all: bool,
        /// Check the rank inequalities for r up to this bound.
        #[arg(long)]
        inequalities: Option<u32>,
        /// Count (A, B) with max(|A|³, B²) < X.
        #[arg(long)]
        curve_count: Option<BigInt>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum ExperimentAction {
    /// Start a campaign (overwrites `--out`).
    Run(RunArgs),
    /// Continue an interrupted campaign; given flags must match the file header.
    Resume(ResumeArgs),
    /// Summarize a campaign file without classifying anything.
    Report {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value = "json")]
        format: ReportFormat,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, value_parser = parse_kind)]
    kind: ModelKind,
    #[arg(long)]
    t: u64,
    #[arg(long)]
    samples: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = lab::DEFAULT_SEARCH_HEIGHT)]
    search_height: u64,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// One `lo:hi` for every coefficient, or a comma-separated list of m intervals.
    #[arg(long = "box")]
    bx: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "json")]
    format: ReportFormat,
}

#[derive(Args)]
struct ResumeArgs {
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_parser = parse_kind)]
    kind: Option<ModelKind>,
    #[arg(long)]
    t: Option<u64>,
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    search_height: Option<u64>,
    #[arg(long = "box")]
    bx: Option<String>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long, default_value = "json")]
    format: ReportFormat,
}

fn parse_kind(s: &str) -> std::result::Result<ModelKind, String> {
    let n: u32 = s.parse().map_err(|_| format!("kind must be 2, 3 or 4, got {s:?}"))?;
    ModelKind::from_degree(n).map_err(|e| e.to_string())
}

fn parse_box(s: &str, kind: ModelKind) -> Result<Vec<Interval>> {
    let ivs = s.split(',').map(str::parse).collect::<Result<Vec<Interval>>>()?;
    match ivs.len() {
        1 => Ok(vec![ivs[0].clone(); kind.m()]),
        m if m == kind.m() => Ok(ivs),
        m => Err(Error::Invalid(format!("box has {m} intervals, kind {kind} needs 1 or {}", kind.m()))),
    }
}

fn finish_summary(summary: &Summary, format: ReportFormat) -> ExitCode {
    say!("{}", summary.render(format).trim_end());
    if summary.is_contaminated() {
        eprintln!("{} undecided samples", summary.count(lab::ClassTag::Undecided));
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    }
}

fn experiment(action: ExperimentAction) -> Result<ExitCode> {
    match action {
        ExperimentAction::Run(a) => {
            let mut config = ExperimentConfig::new(a.kind, a.t, a.samples, a.seed)
                .with_height(a.search_height)
                .with_workers(a.workers);
            if let Some(b) = &a.bx {
                config.bx = parse_box(b, a.kind)?;
            }
            let report = lab::run(&config, a.out.as_deref())?;
            eprintln!("{} samples in {} ms on {} workers", report.runtime.new_samples, report.runtime.wall_ms, a.workers);
            Ok(finish_summary(&report.summary, a.format))
        }
        ExperimentAction::Resume(a) => {
            let bx = match (&a.bx, a.kind) {
                (Some(b), Some(k)) => Some(parse_box(b, k)?),
                (Some(_), None) => return Err(Error::Invalid("--box on resume needs --kind".into())),
                _ => None,
            };
            let check = ResumeCheck {
                kind: a.kind,
                t: a.t,
                samples: a.samples,
                seed: a.seed,
                search_height: a.search_height,
                bx,
            };
            let report = lab::resume(&a.out, a.workers, &check)?;
            eprintln!("{} new samples in {} ms", report.runtime.new_samples, report.runtime.wall_ms);
            Ok(finish_summary(&report.summary, a.format))
        }
        ExperimentAction::Report { out, format } => Ok(finish_summary(&lab::summarize(&out)?, format)),
    }
}

fn show_invariants(model: &GenusOneModel) -> Result<()> {
    let inv = invariants(model);
    let delta = discriminant(model);
    say!("model: {model}");
    say!("A = {}", inv.a);
    say!("B = {}", inv.b);
    say!("discriminant = {delta}");
    if delta.is_zero() {
        say!("degenerate");
        return Ok(());
    }
    let j = jacobian(model)?;
    say!("jacobian: y^2 = x^3 + {}x + {} (lambda = {})", j.curve.a, j.curve.b, j.lambda);
    say!("generic: {}", is_generic(model)?);
    Ok(())
}

fn show_local(model: &GenusOneModel, place: Option<Place>) -> Result<ExitCode> {
    match place {
        Some(Place::Real) => say!("real: {}", if real_soluble(model)? { "soluble" } else { "insoluble" }),
        Some(Place::Finite(p)) => say!("{p}: {}", p_adic_soluble(model, &p)?),
        None => {
            let report = locally_soluble_with(model, &LocalOptions::default())?;
            for (place, verdict) in report.places() {
                say!("{place}: {verdict}");
            }
            if let Some(c) = &report.cofactor {
                say!("unfactored cofactor: {c}");
            }
            say!("overall: {:?}", report.overall);
            if matches!(report.overall, hasse_lab::local::Overall::Undecided(_)) {
                return Ok(ExitCode::from(2));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn show_density(cutoff: u64, p: Option<u64>, k: u32, kind: ModelKind, samples: usize, seed: u64, workers: usize) -> Result<()> {
    if let Some(p) = p {
        let mc = density::mc_local_density_with(kind, p, k, samples, seed, workers)?;
        say!("{}", serde_json::to_string_pretty(&mc)?);
        if kind == ModelKind::TernaryCubic {
            let f = density::local_factor_ternary_cubic(p)?;
            say!("exact factor at {p}: {} = {}", f.value, decimal(&f.value, 10));
            if let Some(z) = mc.z_score(f.value.to_f64().unwrap_or(f64::NAN)) {
                say!("z = {z:.3}");
            }
        }
        return Ok(());
    }
    let rho = density::euler_product(cutoff)?;
    say!("euler product, p <= {cutoff}: {}", rho.display(10));
    say!("width: {}", decimal(&rho.width(), 12));
    let fail = density::conjectured_failure_proportion_with(cutoff)?;
    say!("conjectured failure proportion: {}", fail.display(10));
    let r = density::remark1_bounds();
    say!("zeta(2) = {:.12}, zeta(3) = {:.12}", r.zeta2, r.zeta3);
    say!("bounds: {:.7}, {:.7}", r.first, r.second);
    Ok(())
}

fn show_ledger(all: bool, inequalities: Option<u32>, curve_count: Option<BigInt>, json: bool) -> Result<()> {
    let all = all || (inequalities.is_none() && curve_count.is_none());
    if all {
        let values = ledger::all_values();
        if json {
            say!("{}", serde_json::to_string_pretty(&values)?);
        } else {
            for v in &values {
                say!("{:<42} {:>8} = {}  {}", v.label, v.value.to_string(), v.decimal(6), v.anchor);
            }
        }
    }
    if let Some(r) = inequalities {
        say!("rank inequalities hold for r <= {r}: {}", ledger::verify_rank_inequalities(r));
        let mut names: Vec<String> = Vec::new();
        for c in ledger::rank_inequalities(1) {
            if !names.contains(&c.name) {
                names.push(c.name);
            }
        }
        for name in names {
            say!("  {name}: equality at r = {:?}", ledger::equality_cases(&name, r));
        }
    }
    if let Some(x) = curve_count {
        say!("curve_count({x}) = {}", ledger::curve_count(&x)?);
    }
    Ok(())
}

fn dispatch(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Experiment { action } => experiment(action),
        Command::Invariants { model } => show_invariants(&model).map(|_| ExitCode::SUCCESS),
        Command::Local { model, place } => show_local(&model, place),
        Command::Search { model, search_height, workers } => {
            match search_point_with(&model, search_height, &SearchOptions { threads: workers }) {
                Some(p) => say!("{p}"),
                None => say!("no point of height <= {search_height}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Classify { model, search_height, workers } => {
            let opts = ClassifyOptions { search: SearchOptions { threads: workers }, ..Default::default() };
            let class = classify_with(&model, search_height, &opts);
            say!("{}: {class}", class.label());
            Ok(if matches!(class, HasseClass::Undecided(_)) { ExitCode::from(2) } else { ExitCode::SUCCESS })
        }
        Command::Density { cutoff, p, k, kind, samples, seed, workers } => {
            show_density(cutoff, p, k, kind, samples, seed, workers).map(|_| ExitCode::SUCCESS)
        }
        Command::Ledger { all, inequalities, curve_count, json } => {
            show_ledger(all, inequalities, curve_count, json).map(|_| ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
