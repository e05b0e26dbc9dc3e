//! Command-line benchmark harness for the roadmap planning library.
//!
//! Subcommands cover the full experiment pipeline: generate scenario files,
//! run a planner over a densification schedule and record traces, simulate
//! schedules analytically, bin solution edge lengths, and sweep whole
//! benchmark suites in parallel.

use std::error::Error;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use roadmap_core::belief::{BeliefModel, R_PHI_MAX};
use roadmap_core::densify::{
    run_densification, simulate_effort_quality, DensifyConfig, DensifyRun, PlannerKind, Strategy,
};
use roadmap_core::geom;
use roadmap_core::roadmap::Roadmap;
use roadmap_core::search::{lazy_sp, pomp};
use roadmap_core::trace::AnytimeTrace;
use roadmap_core::world::{generate_scenario, Scenario, ScenarioParams};

type CliResult<T> = Result<T, Box<dyn Error>>;

#[derive(Parser)]
#[command(
    name = "roadmap-bench",
    about = "Benchmark harness for anytime roadmap densification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a scenario file of random axis-aligned box obstacles.
    GenScenario(GenScenarioArgs),
    /// Run a planner over a densification schedule on a scenario.
    Plan(PlanArgs),
    /// Tabulate analytic effort/quality curves for all strategies.
    Simulate(SimulateArgs),
    /// Bin the edge lengths of recorded solution paths.
    Histogram(HistogramArgs),
    /// Run a suite of planning runs and aggregate the results.
    BenchSuite(BenchSuiteArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum PresetName {
    #[value(name = "easy-2d")]
    Easy2d,
    #[value(name = "hard-2d")]
    Hard2d,
    #[value(name = "easy-4d")]
    Easy4d,
    #[value(name = "hard-4d")]
    Hard4d,
}

impl PresetName {
    /// (dimension, coverage target, check resolution)
    fn params(self) -> (usize, f64, f64) {
        match self {
            PresetName::Easy2d => (2, 0.2, 0.02),
            PresetName::Hard2d => (2, 0.4, 0.02),
            PresetName::Easy4d => (4, 0.2, 0.05),
            PresetName::Hard4d => (4, 0.4, 0.05),
        }
    }
}

#[derive(Args)]
struct GenScenarioArgs {
    /// Named preset supplying dimension, coverage, and resolution.
    #[arg(long, conflicts_with_all = ["d", "xi"])]
    preset: Option<PresetName>,
    /// Configuration space dimension.
    #[arg(long)]
    d: Option<usize>,
    /// Target fraction of space covered by obstacles.
    #[arg(long)]
    xi: Option<f64>,
    /// Collision check resolution stored in the scenario.
    #[arg(long)]
    resolution: Option<f64>,
    /// Start configuration, comma separated. Defaults to 0.05 on each axis.
    #[arg(long, value_delimiter = ',')]
    start: Option<Vec<f64>>,
    /// Goal configuration, comma separated. Defaults to 0.95 on each axis.
    #[arg(long, value_delimiter = ',')]
    goal: Option<Vec<f64>>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output scenario file.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Vertex,
    Edge,
    Hybrid,
    /// Single batch at the target size, no densification.
    None,
}

#[derive(Clone, Copy, ValueEnum)]
enum PlannerArg {
    Pomp,
    Lazysp,
}

#[derive(Args)]
struct PlanArgs {
    /// Scenario file produced by gen-scenario.
    #[arg(long)]
    scenario: PathBuf,
    #[arg(long, value_enum)]
    strategy: StrategyArg,
    #[arg(long, value_enum)]
    planner: PlannerArg,
    /// Target roadmap size.
    #[arg(long)]
    n_max: usize,
    /// Blend step for the pareto planner's alpha ladder.
    #[arg(long, default_value_t = 0.2)]
    d_alpha: f64,
    /// Connection radius for --strategy none. Defaults to the space diameter.
    #[arg(long)]
    radius: Option<f64>,
    /// Disable informed pruning between batches.
    #[arg(long)]
    no_prune: bool,
    /// Skip the reference-optimum baseline run.
    #[arg(long)]
    no_oracle: bool,
    /// Also write the roadmap samples next to the summary.
    #[arg(long)]
    dump_roadmap: bool,
    /// Directory for trace.csv, summary.json, and optional roadmap.json.
    #[arg(long)]
    out_dir: PathBuf,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    n_max: usize,
    #[arg(long)]
    d: usize,
    /// Narrowest passage the roadmap must resolve.
    #[arg(long)]
    delta_star: f64,
    /// Output CSV file.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct HistogramArgs {
    /// summary.json from a plan run.
    #[arg(long)]
    summary: PathBuf,
    /// roadmap.json from the same run (needs --dump-roadmap).
    #[arg(long)]
    roadmap: PathBuf,
    #[arg(long, default_value_t = 20)]
    bins: usize,
    /// Output CSV file.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct BenchSuiteArgs {
    /// Suite configuration JSON.
    #[arg(long)]
    config: PathBuf,
    /// Output report JSON.
    #[arg(long)]
    out: PathBuf,
    /// Worker threads; defaults to ROADMAP_BENCH_THREADS or the CPU count.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Serialize)]
struct SolutionRecord {
    batch: usize,
    alpha: f64,
    checks: u64,
    length: f64,
    path: Vec<u32>,
}

#[derive(Serialize)]
struct BatchRecord {
    batch: usize,
    n: usize,
    r: f64,
    active: usize,
    new_pairs: u64,
    checks: u64,
    best_length: Option<f64>,
}

#[derive(Serialize)]
struct PlanSummary {
    scenario: String,
    strategy: String,
    planner: String,
    n_max: usize,
    d_alpha: f64,
    pruned: bool,
    infeasible: bool,
    total_checks: u64,
    wall_s: f64,
    best_length: Option<f64>,
    solutions: Vec<SolutionRecord>,
    batches: Vec<BatchRecord>,
    /// Length of the best path on the final complete roadmap, found by an
    /// exact baseline on a separate collision counter.
    oracle_length: Option<f64>,
    oracle_checks: Option<u64>,
}

#[derive(Serialize)]
struct RoadmapDump {
    d: usize,
    samples: Vec<Vec<f64>>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::GenScenario(args) => cmd_gen_scenario(args),
        Command::Plan(args) => cmd_plan(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Histogram(args) => cmd_histogram(args),
        Command::BenchSuite(args) => cmd_bench_suite(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::FAILURE
        }
    }
}

fn corner(d: usize, value: f64) -> Vec<f64> {
    vec![value; d]
}

fn cmd_gen_scenario(args: GenScenarioArgs) -> CliResult<()> {
    let (d, xi, preset_res) = match (args.preset, args.d, args.xi) {
        (Some(p), _, _) => p.params(),
        (None, Some(d), Some(xi)) => (d, xi, if d <= 2 { 0.02 } else { 0.05 }),
        _ => return Err("pass either --preset or both --d and --xi".into()),
    };
    let params = ScenarioParams {
        d,
        start: args.start.unwrap_or_else(|| corner(d, 0.05)),
        goal: args.goal.unwrap_or_else(|| corner(d, 0.95)),
        xi_obs: xi,
        seed: args.seed,
        resolution: args.resolution.unwrap_or(preset_res),
    };
    let scenario = generate_scenario(&params)?;
    scenario.save(&args.out)?;
    println!(
        "wrote {} ({} obstacles, realized coverage {:.3})",
        args.out.display(),
        scenario.obstacles.len(),
        scenario.xi_obs_realized
    );
    Ok(())
}

/// Runs a single-batch plan at a fixed shape, reported in the same form as
/// a densification run.
fn run_single_shot(
    scenario: &Scenario,
    planner: PlannerArg,
    n_max: usize,
    d_alpha: f64,
    radius: f64,
) -> CliResult<DensifyRun> {
    let world = scenario.world();
    let mut belief = BeliefModel::with_defaults(scenario.d);
    belief.set_r_phi(radius.min(R_PHI_MAX));
    let mut rm = Roadmap::new(
        scenario.start.clone(),
        scenario.goal.clone(),
        n_max,
        radius,
        scenario.resolution,
    )?;
    let result = match planner {
        PlannerArg::Pomp => pomp(&mut rm, &world, &mut belief, d_alpha, None)?,
        PlannerArg::Lazysp => lazy_sp(&mut rm, &world, &mut belief, None)?,
    };
    let mut trace = AnytimeTrace::new();
    let mut solutions = Vec::new();
    let mut best = None;
    for s in result.solutions {
        best = Some(s.length);
        trace.solution(s.checks, s.length, 0, s.alpha);
        solutions.push(roadmap_core::densify::AnytimeSolution {
            path: s.path,
            length: s.length,
            checks: s.checks,
            batch: 0,
            alpha: s.alpha,
        });
    }
    if result.infeasible {
        trace.infeasible(world.checks(), 0);
    }
    trace.batch_done(world.checks(), best, 0);
    let batches = vec![roadmap_core::densify::BatchReport {
        batch: 0,
        n: n_max,
        r: radius,
        active: rm.active_count(),
        new_pairs: 0,
        checks: world.checks(),
        best_length: best,
    }];
    Ok(DensifyRun {
        solutions,
        trace,
        batches,
        infeasible: result.infeasible,
        total_checks: world.checks(),
        roadmap: rm,
    })
}

/// Best length on the final complete roadmap, computed by the plain lazy
/// planner against a fresh world whose check counter is independent of the
/// measured run.
fn oracle_baseline(scenario: &Scenario, n_max: usize) -> CliResult<(Option<f64>, u64)> {
    let run = run_densification(
        scenario,
        &DensifyConfig {
            strategy: Strategy::Edge,
            planner: PlannerKind::LazySp,
            n_max,
            prune: true,
        },
    )?;
    Ok((run.best().map(|s| s.length), run.total_checks))
}

fn cmd_plan(args: PlanArgs) -> CliResult<()> {
    let scenario = Scenario::load(&args.scenario)?;
    fs::create_dir_all(&args.out_dir)?;

    let started = Instant::now();
    let run = match args.strategy {
        StrategyArg::None => {
            let radius = args
                .radius
                .unwrap_or_else(|| geom::cube_diameter(scenario.d));
            run_single_shot(&scenario, args.planner, args.n_max, args.d_alpha, radius)?
        }
        _ => {
            let strategy = match args.strategy {
                StrategyArg::Vertex => Strategy::Vertex,
                StrategyArg::Edge => Strategy::Edge,
                StrategyArg::Hybrid => Strategy::Hybrid,
                StrategyArg::None => unreachable!(),
            };
            let planner = match args.planner {
                PlannerArg::Pomp => PlannerKind::Pomp {
                    d_alpha: args.d_alpha,
                },
                PlannerArg::Lazysp => PlannerKind::LazySp,
            };
            run_densification(
                &scenario,
                &DensifyConfig {
                    strategy,
                    planner,
                    n_max: args.n_max,
                    prune: !args.no_prune,
                },
            )?
        }
    };
    let wall_s = started.elapsed().as_secs_f64();

    let (oracle_length, oracle_checks) = if args.no_oracle {
        (None, None)
    } else {
        let (len, checks) = oracle_baseline(&scenario, args.n_max)?;
        (len, Some(checks))
    };

    run.trace
        .write_csv(fs::File::create(args.out_dir.join("trace.csv"))?)?;

    if args.dump_roadmap {
        let dump = RoadmapDump {
            d: scenario.d,
            samples: (0..run.roadmap.len() as u32)
                .map(|v| run.roadmap.sample(v).to_vec())
                .collect(),
        };
        write_json(&args.out_dir.join("roadmap.json"), &dump)?;
    }

    let strategy_name = match args.strategy {
        StrategyArg::Vertex => "vertex",
        StrategyArg::Edge => "edge",
        StrategyArg::Hybrid => "hybrid",
        StrategyArg::None => "none",
    };
    let summary = PlanSummary {
        scenario: args.scenario.display().to_string(),
        strategy: strategy_name.to_string(),
        planner: match args.planner {
            PlannerArg::Pomp => "pomp".to_string(),
            PlannerArg::Lazysp => "lazysp".to_string(),
        },
        n_max: args.n_max,
        d_alpha: args.d_alpha,
        pruned: !args.no_prune,
        infeasible: run.infeasible,
        total_checks: run.total_checks,
        wall_s,
        best_length: run.best().map(|s| s.length),
        solutions: run
            .solutions
            .iter()
            .map(|s| SolutionRecord {
                batch: s.batch,
                alpha: s.alpha,
                checks: s.checks,
                length: s.length,
                path: s.path.clone(),
            })
            .collect(),
        batches: run
            .batches
            .iter()
            .map(|b| BatchRecord {
                batch: b.batch,
                n: b.n,
                r: b.r,
                active: b.active,
                new_pairs: b.new_pairs,
                checks: b.checks,
                best_length: b.best_length,
            })
            .collect(),
        oracle_length,
        oracle_checks,
    };
    write_json(&args.out_dir.join("summary.json"), &summary)?;

    match summary.best_length {
        Some(len) => println!(
            "best length {len:.6} after {} checks ({} solutions)",
            summary.total_checks,
            summary.solutions.len()
        ),
        None => println!(
            "no solution ({}) after {} checks",
            if summary.infeasible {
                "infeasible"
            } else {
                "exhausted"
            },
            summary.total_checks
        ),
    }
    Ok(())
}

fn cmd_simulate(args: SimulateArgs) -> CliResult<()> {
    let mut csv = String::from("strategy,batch,n,r,cum_edges,bound\n");
    for strategy in Strategy::all() {
        let points = simulate_effort_quality(strategy, args.n_max, args.d, args.delta_star)?;
        for p in points {
            let bound = if p.bound.is_finite() {
                p.bound.to_string()
            } else {
                "inf".to_string()
            };
            csv.push_str(&format!(
                "{},{},{},{},{},{}\n",
                strategy.as_str(),
                p.batch,
                p.n,
                p.r,
                p.cum_work,
                bound
            ));
        }
    }
    fs::write(&args.out, csv)?;
    println!("wrote {}", args.out.display());
    Ok(())
}

#[derive(Deserialize)]
struct SummaryForHistogram {
    solutions: Vec<SolutionForHistogram>,
}

#[derive(Deserialize)]
struct SolutionForHistogram {
    path: Vec<u32>,
}

#[derive(Deserialize)]
struct RoadmapForHistogram {
    d: usize,
    samples: Vec<Vec<f64>>,
}

fn cmd_histogram(args: HistogramArgs) -> CliResult<()> {
    if args.bins == 0 {
        return Err("--bins must be positive".into());
    }
    let summary: SummaryForHistogram = serde_json::from_str(&fs::read_to_string(&args.summary)?)?;
    let rm: RoadmapForHistogram = serde_json::from_str(&fs::read_to_string(&args.roadmap)?)?;
    let full = geom::cube_diameter(rm.d);
    let width = full / args.bins as f64;

    let mut csv = String::from("solution_index,bin_index,bin_lo,bin_hi,count\n");
    for (si, solution) in summary.solutions.iter().enumerate() {
        let mut counts = vec![0u64; args.bins];
        for w in solution.path.windows(2) {
            let a = &rm.samples[w[0] as usize];
            let b = &rm.samples[w[1] as usize];
            let len = geom::dist(a, b);
            let bin = ((len / width) as usize).min(args.bins - 1);
            counts[bin] += 1;
        }
        for (bi, count) in counts.iter().enumerate() {
            csv.push_str(&format!(
                "{},{},{},{},{}\n",
                si,
                bi,
                bi as f64 * width,
                (bi + 1) as f64 * width,
                count
            ));
        }
    }
    fs::write(&args.out, csv)?;
    println!("wrote {}", args.out.display());
    Ok(())
}

#[derive(Deserialize)]
struct SuiteConfig {
    n_max: usize,
    #[serde(default = "default_d_alpha")]
    d_alpha: f64,
    scenarios: Vec<SuiteScenario>,
    strategies: Vec<String>,
    planners: Vec<String>,
}

fn default_d_alpha() -> f64 {
    0.2
}

#[derive(Deserialize)]
struct SuiteScenario {
    preset: Option<String>,
    d: Option<usize>,
    xi: Option<f64>,
    resolution: Option<f64>,
    seed: u64,
}

#[derive(Serialize)]
struct SuiteRunRecord {
    scenario_index: usize,
    seed: u64,
    strategy: String,
    planner: String,
    outcome: SuiteOutcome,
}

#[derive(Serialize)]
#[serde(tag = "kind")]
enum SuiteOutcome {
    Solved {
        first_solution_checks: u64,
        best_length: f64,
        total_checks: u64,
        wall_s: f64,
    },
    Infeasible {
        total_checks: u64,
        wall_s: f64,
    },
    Error {
        message: String,
    },
}

#[derive(Serialize)]
struct SuiteGroupStats {
    strategy: String,
    planner: String,
    solved: usize,
    failed: usize,
    median_first_solution_checks: Option<f64>,
    quartiles_first_solution_checks: Option<(f64, f64)>,
    median_best_length: Option<f64>,
}

#[derive(Serialize)]
struct SuiteReport {
    n_max: usize,
    d_alpha: f64,
    runs: Vec<SuiteRunRecord>,
    groups: Vec<SuiteGroupStats>,
}

/// Median and quartiles by linear interpolation over the sorted sample.
fn percentile(sorted: &[f64], q: f64) -> f64 {
    if sorted.len() == 1 {
        return sorted[0];
    }
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    let frac = pos - lo as f64;
    sorted[lo] + (sorted[hi] - sorted[lo]) * frac
}

fn suite_scenario(spec: &SuiteScenario) -> CliResult<Scenario> {
    let (d, xi, res) = match (&spec.preset, spec.d, spec.xi) {
        (Some(name), _, _) => {
            let preset = match name.as_str() {
                "easy-2d" => PresetName::Easy2d,
                "hard-2d" => PresetName::Hard2d,
                "easy-4d" => PresetName::Easy4d,
                "hard-4d" => PresetName::Hard4d,
                other => return Err(format!("unknown preset {other:?}").into()),
            };
            preset.params()
        }
        (None, Some(d), Some(xi)) => (d, xi, if d <= 2 { 0.02 } else { 0.05 }),
        _ => return Err("scenario needs a preset or both d and xi".into()),
    };
    Ok(generate_scenario(&ScenarioParams {
        d,
        start: corner(d, 0.05),
        goal: corner(d, 0.95),
        xi_obs: xi,
        seed: spec.seed,
        resolution: spec.resolution.unwrap_or(res),
    })?)
}

fn cmd_bench_suite(args: BenchSuiteArgs) -> CliResult<()> {
    let config: SuiteConfig = serde_json::from_str(&fs::read_to_string(&args.config)?)?;
    let threads = args
        .threads
        .or_else(|| {
            std::env::var("ROADMAP_BENCH_THREADS")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
        .max(1);

    let mut jobs: Vec<(usize, u64, String, String)> = Vec::new();
    for (si, spec) in config.scenarios.iter().enumerate() {
        for strategy in &config.strategies {
            for planner in &config.planners {
                jobs.push((si, spec.seed, strategy.clone(), planner.clone()));
            }
        }
    }

    let scenarios: Vec<Result<Scenario, String>> = config
        .scenarios
        .iter()
        .map(|spec| suite_scenario(spec).map_err(|e| e.to_string()))
        .collect();

    let next = std::sync::atomic::AtomicUsize::new(0);
    let outcome_cells: Vec<std::sync::Mutex<Option<SuiteOutcome>>> =
        (0..jobs.len()).map(|_| std::sync::Mutex::new(None)).collect();

    std::thread::scope(|scope| {
        for _ in 0..threads.min(jobs.len().max(1)) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if i >= jobs.len() {
                    break;
                }
                let (si, _, ref strategy, ref planner) = jobs[i];
                let outcome = run_suite_job(&scenarios[si], strategy, planner, &config);
                *outcome_cells[i].lock().unwrap() = Some(outcome);
            });
        }
    });

    let mut runs = Vec::with_capacity(jobs.len());
    for (i, (si, seed, strategy, planner)) in jobs.into_iter().enumerate() {
        let outcome = outcome_cells[i]
            .lock()
            .unwrap()
            .take()
            .unwrap_or(SuiteOutcome::Error {
                message: "worker produced no outcome".to_string(),
            });
        runs.push(SuiteRunRecord {
            scenario_index: si,
            seed,
            strategy,
            planner,
            outcome,
        });
    }

    let mut groups = Vec::new();
    for strategy in &config.strategies {
        for planner in &config.planners {
            let mut first_checks: Vec<f64> = Vec::new();
            let mut lengths: Vec<f64> = Vec::new();
            let mut failed = 0usize;
            for run in runs
                .iter()
                .filter(|r| &r.strategy == strategy && &r.planner == planner)
            {
                match &run.outcome {
                    SuiteOutcome::Solved {
                        first_solution_checks,
                        best_length,
                        ..
                    } => {
                        first_checks.push(*first_solution_checks as f64);
                        lengths.push(*best_length);
                    }
                    _ => failed += 1,
                }
            }
            first_checks.sort_by(f64::total_cmp);
            lengths.sort_by(f64::total_cmp);
            groups.push(SuiteGroupStats {
                strategy: strategy.clone(),
                planner: planner.clone(),
                solved: first_checks.len(),
                failed,
                median_first_solution_checks: (!first_checks.is_empty())
                    .then(|| percentile(&first_checks, 0.5)),
                quartiles_first_solution_checks: (!first_checks.is_empty()).then(|| {
                    (
                        percentile(&first_checks, 0.25),
                        percentile(&first_checks, 0.75),
                    )
                }),
                median_best_length: (!lengths.is_empty()).then(|| percentile(&lengths, 0.5)),
            });
        }
    }

    let report = SuiteReport {
        n_max: config.n_max,
        d_alpha: config.d_alpha,
        runs,
        groups,
    };
    write_json(&args.out, &report)?;
    println!("wrote {}", args.out.display());
    Ok(())
}

fn run_suite_job(
    scenario: &Result<Scenario, String>,
    strategy: &str,
    planner: &str,
    config: &SuiteConfig,
) -> SuiteOutcome {
    let scenario = match scenario {
        Ok(s) => s,
        Err(e) => {
            return SuiteOutcome::Error {
                message: format!("scenario generation failed: {e}"),
            }
        }
    };
    let strategy = match strategy.parse::<Strategy>() {
        Ok(s) => s,
        Err(e) => return SuiteOutcome::Error { message: e },
    };
    let planner = match planner {
        "pomp" => PlannerKind::Pomp {
            d_alpha: config.d_alpha,
        },
        "lazysp" => PlannerKind::LazySp,
        other => {
            return SuiteOutcome::Error {
                message: format!("unknown planner {other:?}"),
            }
        }
    };
    let started = Instant::now();
    match run_densification(
        scenario,
        &DensifyConfig {
            strategy,
            planner,
            n_max: config.n_max,
            prune: true,
        },
    ) {
        Ok(run) => {
            let wall_s = started.elapsed().as_secs_f64();
            match run.solutions.first() {
                Some(first) => SuiteOutcome::Solved {
                    first_solution_checks: first.checks,
                    best_length: run.best().unwrap().length,
                    total_checks: run.total_checks,
                    wall_s,
                },
                None => SuiteOutcome::Infeasible {
                    total_checks: run.total_checks,
                    wall_s,
                },
            }
        }
        Err(e) => SuiteOutcome::Error {
            message: e.to_string(),
        },
    }
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> CliResult<()> {
    fs::write(path, serde_json::to_string_pretty(value)? + "\n")?;
    Ok(())
}
