use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use concave_core::exact::{
    big_ln, enumerate_concave_bounded, ln_vn_asymptotic, CountTable, DEFAULT_ENUMERATION_BOUND,
};
use concave_core::limits::{
    build_profile, fit_constants, limit_curve, points_to_csv, temperley_x, CurvePoint,
    FittingConstants, Profile, Series,
};
use concave_core::sampler::{
    frequencies_to_partitions, run_batch, BoltzmannParams, BoltzmannSampler, RejectionBudget,
    SampleRecord, UniformSampler,
};
use concave_core::stats::{summarize, summarize_frequencies, GoFReport, StatSummary};
use concave_core::{ConcaveComposition, Error, Result};

use concave_lab::config::{parse_y_grid, ExperimentConfig, Format, DEFAULT_Y_GRID};
use concave_lab::experiments::{self as ex, ShapeSample};
use concave_lab::manifest::{RunManifest, EXIT_INVALID, EXIT_OK};

/// Exact counts, random sampling and limit-law checks for concave
/// compositions.
#[derive(Parser)]
#[command(name = "concave-lab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct Common {
    /// Flat TOML file of settings; flags override it
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    n: Option<u64>,
    #[arg(long, global = true)]
    n_max: Option<usize>,
    #[arg(short = 'm', long, global = true)]
    samples: Option<u64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    tail_eps: Option<f64>,
    #[arg(long, global = true)]
    threshold: Option<f64>,
    #[arg(long, global = true)]
    trials: Option<u64>,
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    /// Write data here instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Write the run manifest here instead of standard error
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Report failed tests without a non-zero exit
    #[arg(long, global = true)]
    warn_only: bool,
    /// Heights as `a:b:step` or a comma list
    #[arg(long, global = true)]
    y_grid: Option<String>,
}

impl Common {
    fn flags(&self) -> ExperimentConfig {
        ExperimentConfig {
            n: self.n,
            n_max: self.n_max,
            samples: self.samples,
            seed: self.seed,
            tail_eps: self.tail_eps,
            threshold: self.threshold,
            trials: self.trials,
            out: self.out.clone(),
            manifest: self.manifest.clone(),
            format: self.format,
            workers: self.workers,
            warn_only: self.warn_only.then_some(true),
            y_grid: self.y_grid.clone(),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Exact p(n), p₂(n) and V(n)
    Count {
        /// Print V(n) divided by its asymptotic estimate
        #[arg(long)]
        check_asymptotic: bool,
        #[command(flatten)]
        common: Common,
    },
    /// List every concave composition of n
    Enumerate {
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BOUND)]
        bound: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Draw pairs of partitions
    Sample {
        /// Exactly uniform pairs of total size n (rejection)
        #[arg(
            long,
            conflicts_with = "boltzmann",
            required_unless_present = "boltzmann"
        )]
        uniform: bool,
        /// Boltzmann pairs at q_n
        #[arg(long)]
        boltzmann: bool,
        /// Emit shape statistics instead of the parts
        #[arg(long)]
        stats: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Run a goodness-of-fit experiment
    Verify {
        #[arg(value_enum)]
        law: Law,
        #[command(flatten)]
        common: Common,
    },
    /// Profiles and limit curves
    Shape {
        /// A written composition, e.g. 3,1,0,2
        #[arg(long, conflicts_with = "partition_mode")]
        from_parts: Option<String>,
        /// Single partitions against Temperley's curve
        #[arg(long)]
        partition_mode: bool,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Law {
    Perimeter,
    JointPerimeter,
    Tilt,
    Length,
    LocalLimit,
    Weights,
    Pochhammer,
}

impl Law {
    fn name(self) -> &'static str {
        match self {
            Law::Perimeter => "perimeter",
            Law::JointPerimeter => "joint-perimeter",
            Law::Tilt => "tilt",
            Law::Length => "length",
            Law::LocalLimit => "local-limit",
            Law::Weights => "weights",
            Law::Pochhammer => "pochhammer",
        }
    }
}

/// What a command produced: data for the output file, lines for the
/// terminal and reports for the manifest.
#[derive(Default)]
struct Outcome {
    data: Option<String>,
    console: String,
    reports: Vec<GoFReport>,
}

impl Outcome {
    fn data(data: String) -> Self {
        Self {
            data: Some(data),
            ..Self::default()
        }
    }
}

fn ensure_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn write_file(path: &PathBuf, text: String) -> Result<()> {
    std::fs::write(path, ensure_newline(text))
        .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display())))
}

fn need_n(cfg: &ExperimentConfig, default: Option<u64>) -> Result<u64> {
    cfg.n
        .or(default)
        .ok_or_else(|| Error::InvalidInput("--n is required".into()))
}

fn budget_from_env() -> Result<RejectionBudget> {
    let mut budget = RejectionBudget::default();
    if let Ok(spec) = std::env::var("CONCAVE_LAB_BUDGET") {
        let bad = || {
            Error::InvalidInput(format!(
                "CONCAVE_LAB_BUDGET={spec:?}: expected MAX_N[:TRIALS]"
            ))
        };
        let (max_n, trials) = match spec.split_once(':') {
            Some((a, b)) => (a, Some(b)),
            None => (spec.as_str(), None),
        };
        budget.max_n = max_n.trim().parse().map_err(|_| bad())?;
        if let Some(t) = trials {
            budget.max_trials = Some(t.trim().parse().map_err(|_| bad())?);
        }
    }
    Ok(budget)
}

fn table_csv(t: &CountTable) -> String {
    let mut out = String::from("n,p,p2,v\n");
    for n in 0..=t.n_max {
        let col = |c: &[concave_core::exact::BigCount]| {
            c.get(n).map(|v| v.0.to_string()).unwrap_or_default()
        };
        let _ = writeln!(out, "{n},{},{},{}", col(&t.p), col(&t.p2), col(&t.v));
    }
    out
}

fn cmd_count(cfg: &ExperimentConfig, check_asymptotic: bool) -> Result<Outcome> {
    let n_max = match (cfg.n_max, cfg.n) {
        (Some(m), _) => m,
        (None, Some(n)) => n as usize,
        (None, None) => return Err(Error::InvalidInput("--n or --n-max is required".into())),
    };
    if let Some(n) = cfg.n {
        if n as usize > n_max {
            return Err(Error::InvalidInput(format!(
                "n = {n} exceeds n_max = {n_max}"
            )));
        }
    }
    let table = CountTable::full(n_max)?;
    let mut out = Outcome::default();
    if let Some(n) = cfg.n {
        let v = table.v(n as usize);
        let _ = writeln!(out.console, "V({n}) = {v}");
        if check_asymptotic {
            let ratio = (big_ln(v) - ln_vn_asymptotic(n)).exp();
            let _ = writeln!(out.console, "V({n}) / asymptotic = {ratio}");
            out.reports.push(GoFReport::new(
                "asymptotic-ratio",
                (ratio - 1.0).abs(),
                1,
                cfg.threshold.unwrap_or(0.15),
            ));
        }
    }
    if cfg.n.is_none() || cfg.out.is_some() {
        out.data = Some(match cfg.format {
            Some(Format::Csv) => table_csv(&table),
            _ => serde_json::to_string(&table).expect("table serializes"),
        });
    }
    Ok(out)
}

fn cmd_enumerate(cfg: &ExperimentConfig, bound: u64) -> Result<Outcome> {
    let n = need_n(cfg, None)?;
    let list = enumerate_concave_bounded(n, bound)?;
    let mut data = String::new();
    for c in &list {
        match cfg.format {
            Some(Format::Json) => data.push_str(&serde_json::to_string(c).expect("serializes")),
            Some(Format::Csv) => data.push_str(
                &c.to_sequence()
                    .iter()
                    .map(u64::to_string)
                    .collect::<Vec<_>>()
                    .join(","),
            ),
            None => data.push_str(&c.to_string()),
        }
        data.push('\n');
    }
    let mut out = Outcome::data(data);
    let _ = writeln!(out.console, "{} concave compositions of {n}", list.len());
    Ok(out)
}

#[derive(serde::Serialize)]
struct IndexedSummary {
    index: u64,
    trials: u64,
    #[serde(flatten)]
    summary: StatSummary,
}

const SUMMARY_CSV_HEADER: &str = "index,trials,len_minus,len_plus,length,tilt,largest_part,half_perimeter,size_minus,size_plus,center";

fn summary_csv_row(s: &IndexedSummary) -> String {
    let t = &s.summary;
    format!(
        "{},{},{},{},{},{},{},{},{},{},{}",
        s.index,
        s.trials,
        t.len_minus,
        t.len_plus,
        t.length,
        t.tilt,
        t.largest_part,
        t.half_perimeter,
        t.size_minus,
        t.size_plus,
        t.center
    )
}

fn cmd_sample(cfg: &ExperimentConfig, uniform: bool, stats: bool) -> Result<Outcome> {
    let n = need_n(cfg, None)?;
    let m = cfg.samples.unwrap_or(1);
    let (seed, workers, eps) = (cfg.seed(), cfg.workers(), cfg.tail_eps());
    enum Drawn {
        Summary(StatSummary, u64),
        Record(SampleRecord),
    }
    let drawn: Vec<Result<Drawn>> = if uniform {
        let sampler = UniformSampler::new(n, eps, &budget_from_env()?)?;
        run_batch(seed, m, workers, |_, rng| {
            let (f, trials) = sampler.sample_frequencies(rng)?;
            Ok(if stats {
                Drawn::Summary(summarize_frequencies(&f), trials)
            } else {
                let (minus, plus) = frequencies_to_partitions(&f);
                Drawn::Record(SampleRecord {
                    n,
                    trials,
                    minus,
                    plus,
                })
            })
        })
    } else {
        let sampler = BoltzmannSampler::new(BoltzmannParams::new(n, eps)?);
        run_batch(seed, m, workers, |_, rng| {
            let f = sampler.sample(rng);
            Ok(if stats {
                Drawn::Summary(summarize_frequencies(&f), 1)
            } else {
                let (minus, plus) = frequencies_to_partitions(&f);
                Drawn::Record(SampleRecord {
                    n,
                    trials: 1,
                    minus,
                    plus,
                })
            })
        })
    };
    let csv = cfg.format == Some(Format::Csv);
    let mut data = String::new();
    if csv && stats {
        data.push_str(SUMMARY_CSV_HEADER);
        data.push('\n');
    }
    if csv && !stats {
        return Err(Error::InvalidInput("CSV output needs --stats".into()));
    }
    for (index, d) in drawn.into_iter().enumerate() {
        let line = match d? {
            Drawn::Summary(summary, trials) => {
                let s = IndexedSummary {
                    index: index as u64,
                    trials,
                    summary,
                };
                if csv {
                    summary_csv_row(&s)
                } else {
                    serde_json::to_string(&s).expect("serializes")
                }
            }
            Drawn::Record(r) => serde_json::to_string(&r).expect("serializes"),
        };
        data.push_str(&line);
        data.push('\n');
    }
    Ok(Outcome::data(data))
}

fn report_lines(reports: &[GoFReport]) -> String {
    let mut s = String::new();
    for r in reports {
        let verdict = if r.pass { "PASS" } else { "FAIL" };
        let _ = writeln!(
            s,
            "{}: statistic = {} threshold = {} n = {} {verdict}",
            r.test, r.statistic, r.threshold, r.n_samples
        );
    }
    s
}

fn reports_data(reports: &[GoFReport], format: Option<Format>) -> Option<String> {
    match format {
        Some(Format::Json) => Some(serde_json::to_string(reports).expect("serializes")),
        Some(Format::Csv) => {
            let mut s = String::from("test,statistic,n,threshold,pass\n");
            for r in reports {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{}",
                    r.test, r.statistic, r.n_samples, r.threshold, r.pass
                );
            }
            Some(s)
        }
        None => None,
    }
}

fn cmd_verify(cfg: &ExperimentConfig, law: Law) -> Result<Outcome> {
    let (seed, workers, eps) = (cfg.seed(), cfg.workers(), cfg.tail_eps());
    let mut out = Outcome::default();
    match law {
        Law::Perimeter | Law::JointPerimeter | Law::Tilt | Law::Length => {
            let n = need_n(cfg, Some(1_000_000))?;
            let m = cfg.samples.unwrap_or(10_000);
            let thr = cfg.threshold.unwrap_or(0.05);
            let s = ex::boltzmann_summaries(n, m, seed, workers, eps)?;
            out.reports.push(match law {
                Law::Perimeter => ex::perimeter_report(&s, n, thr)?,
                Law::JointPerimeter => ex::joint_perimeter_report(&s, n, thr)?,
                Law::Tilt => ex::tilt_report(&s, n, thr)?,
                _ => ex::length_report(&s, n, thr)?,
            });
        }
        Law::LocalLimit => {
            let n = need_n(cfg, Some(500))?;
            let l = ex::local_limit(n, cfg.samples, seed, workers, eps)?;
            let c = &mut out.console;
            let _ = writeln!(c, "Q(N = {n}) = {}", l.exact);
            let _ = writeln!(
                c,
                "(48 n^3)^(-1/4) = {}  ratio = {}",
                l.candidate_48, l.ratio_48
            );
            let _ = writeln!(
                c,
                "(96 n^3)^(-1/4) = {}  ratio = {}",
                l.candidate_96, l.ratio_96
            );
            if let (Some((hits, m)), Some(z)) = (l.monte_carlo, l.mc_z_score()) {
                let _ = writeln!(
                    c,
                    "Monte Carlo: {hits}/{m} = {}  |z| = {z}",
                    hits as f64 / m as f64
                );
            }
            out.reports = l.reports(cfg.threshold.unwrap_or(0.15));
        }
        Law::Weights => {
            let n = need_n(cfg, Some(2000))?;
            let (w, reports) = ex::weights_reports(n, cfg.threshold.unwrap_or(0.15))?;
            if cfg.out.is_some() {
                out.data = Some(w.to_csv());
            }
            out.reports = reports;
        }
        Law::Pochhammer => {
            let trials = cfg.trials.or(cfg.samples).unwrap_or(1000);
            let (check, reports) =
                ex::pochhammer_reports(trials, seed, cfg.threshold.unwrap_or(5.0));
            let _ = writeln!(
                out.console,
                "largest log gaps: inequality 1 = {}, inequality 2 = {}",
                check.max_gap_one, check.max_gap_two
            );
            out.reports = reports;
        }
    }
    out.console.push_str(&report_lines(&out.reports));
    if out.data.is_none() {
        out.data = reports_data(&out.reports, cfg.format);
    }
    Ok(out)
}

fn parse_parts(spec: &str) -> Result<Vec<u64>> {
    spec.split(',')
        .map(|s| {
            s.trim()
                .parse::<u64>()
                .map_err(|_| Error::InvalidInput(format!("bad part {s:?} in --from-parts")))
        })
        .collect()
}

fn shape_points(
    cfg: &ExperimentConfig,
    profile: Vec<CurvePoint>,
    overlay: Vec<CurvePoint>,
) -> String {
    let mut points = profile;
    points.extend(overlay);
    match cfg.format {
        Some(Format::Json) => serde_json::to_string(&points).expect("serializes"),
        _ => points_to_csv(&points),
    }
}

fn median_profile(samples: &[ShapeSample], y_grid: &[f64]) -> Vec<CurvePoint> {
    let column = |pick: &dyn Fn(&ShapeSample) -> f64| {
        ex::median(&samples.iter().map(pick).collect::<Vec<_>>())
    };
    let mut pts = Vec::new();
    for (i, &y) in y_grid.iter().enumerate().rev() {
        pts.push(CurvePoint {
            x: column(&|s| s.boundary_minus[i]),
            y,
            series: Series::Profile,
        });
    }
    for (i, &y) in y_grid.iter().enumerate() {
        pts.push(CurvePoint {
            x: column(&|s| s.boundary_plus[i]),
            y,
            series: Series::Profile,
        });
    }
    pts
}

fn temperley_overlay(y_grid: &[f64]) -> Vec<CurvePoint> {
    y_grid
        .iter()
        .map(|&y| CurvePoint {
            x: temperley_x(y),
            y,
            series: Series::LimitPlus,
        })
        .collect()
}

fn cmd_shape(
    cfg: &ExperimentConfig,
    from_parts: Option<&str>,
    partition_mode: bool,
) -> Result<Outcome> {
    let y_grid = parse_y_grid(cfg.y_grid.as_deref().unwrap_or(DEFAULT_Y_GRID))?;
    if let Some(spec) = from_parts {
        let comp = ConcaveComposition::from_sequence(&parse_parts(spec)?)?;
        if let Some(n) = cfg.n {
            if n != comp.total() {
                return Err(Error::InvalidInput(format!(
                    "--n {n} does not match the composition total {}",
                    comp.total()
                )));
            }
        }
        if comp.total() == 0 {
            return Err(Error::InvalidInput("composition has total 0".into()));
        }
        let fc = fit_constants(&summarize(&comp), comp.total());
        let overlay = limit_curve(comp.total(), &fc, &y_grid)?;
        let mut out = Outcome::data(shape_points(cfg, build_profile(&comp).points(), overlay));
        let s = ex::shape_sample(&comp, &y_grid)?;
        let _ = writeln!(out.console, "sup deviation = {}", s.deviation);
        return Ok(out);
    }
    let n = need_n(cfg, None)?;
    let m = cfg.samples.unwrap_or(1);
    let (seed, workers, eps) = (cfg.seed(), cfg.workers(), cfg.tail_eps());
    let samples = if partition_mode {
        ex::partition_shape_samples(n, m, seed, workers, eps, &y_grid)?
    } else {
        ex::shape_samples(n, m, seed, workers, eps, &y_grid)?
    };
    let deviations: Vec<f64> = samples.iter().map(|s| s.deviation).collect();
    let med = ex::median(&deviations);
    let profile = if m == 1 {
        // a single draw is re-drawn from the same stream to get its exact steps
        let mut rng = concave_core::sampler::RngSeed::new(seed, 0).rng();
        if partition_mode {
            let sampler = BoltzmannSampler::new(concave_core::sampler::partition_params(n, eps)?);
            Profile::from_partition(&sampler.sample_one_side(&mut rng)).points()
        } else {
            let sampler = BoltzmannSampler::new(BoltzmannParams::new(n, eps)?);
            let (minus, plus) = frequencies_to_partitions(&sampler.sample(&mut rng));
            build_profile(&ConcaveComposition::from_pair(minus, plus)).points()
        }
    } else {
        median_profile(&samples, &y_grid)
    };
    let overlay = if partition_mode {
        temperley_overlay(&y_grid)
    } else {
        let a_minus = ex::median(&samples.iter().map(|s| s.a_minus).collect::<Vec<_>>());
        let a_plus = ex::median(&samples.iter().map(|s| s.a_plus).collect::<Vec<_>>());
        limit_curve(
            n,
            &FittingConstants::from_normalized(a_minus, a_plus),
            &y_grid,
        )?
    };
    let mut out = Outcome::data(shape_points(cfg, profile, overlay));
    out.reports.push(GoFReport::new(
        "shape-deviation",
        med,
        m,
        cfg.threshold.unwrap_or(0.1),
    ));
    out.console.push_str(&report_lines(&out.reports));
    Ok(out)
}

fn run(command: &Command, cfg: &ExperimentConfig) -> Result<Outcome> {
    cfg.validate()?;
    match command {
        Command::Count {
            check_asymptotic, ..
        } => cmd_count(cfg, *check_asymptotic),
        Command::Enumerate { bound, .. } => cmd_enumerate(cfg, *bound),
        Command::Sample { uniform, stats, .. } => cmd_sample(cfg, *uniform, *stats),
        Command::Verify { law, .. } => cmd_verify(cfg, *law),
        Command::Shape {
            from_parts,
            partition_mode,
            ..
        } => cmd_shape(cfg, from_parts.as_deref(), *partition_mode),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                EXIT_INVALID as u8
            } else {
                EXIT_OK as u8
            });
        }
    };
    let start = Instant::now();
    let (name, common) = match &cli.command {
        Command::Count { common, .. } => ("count".to_string(), common),
        Command::Enumerate { common, .. } => ("enumerate".to_string(), common),
        Command::Sample { common, .. } => ("sample".to_string(), common),
        Command::Verify { law, common } => (format!("verify {}", law.name()), common),
        Command::Shape { common, .. } => ("shape".to_string(), common),
    };
    let loaded = match &common.config {
        Some(path) => ExperimentConfig::load(path).map(|file| common.flags().over(file)),
        None => Ok(common.flags()),
    };
    let cfg = loaded.clone().unwrap_or_else(|_| common.flags());
    let mut manifest = RunManifest::new(name, cfg.clone());
    let result = loaded.and_then(|cfg| {
        let outcome = run(&cli.command, &cfg)?;
        if let (Some(data), Some(path)) = (&outcome.data, &cfg.out) {
            write_file(path, data.clone())?;
        }
        Ok(outcome)
    });
    match result {
        Ok(outcome) => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            // human-readable lines move to stderr when stdout carries data
            match (outcome.data, &cfg.out) {
                (Some(data), None) => {
                    eprint!("{}", outcome.console);
                    let _ = lock.write_all(ensure_newline(data).as_bytes());
                }
                _ => {
                    let _ = lock.write_all(outcome.console.as_bytes());
                }
            }
            manifest.reports = outcome.reports;
            manifest.conclude(cfg.warn_only.unwrap_or(false));
        }
        Err(e) => {
            eprintln!("error: {e}");
            manifest.fail(&e);
        }
    }
    manifest.wall_clock_seconds = start.elapsed().as_secs_f64();
    let json = manifest.to_json();
    match &cfg.manifest {
        Some(path) => {
            if let Err(e) = write_file(path, json) {
                eprintln!("error: {e}");
            }
        }
        None => eprintln!("{json}"),
    }
    ExitCode::from(manifest.exit_status as u8)
}
