//! Batched densification: growing a roadmap toward a target size while
//! planning anytime.
//!
//! A strategy turns a target vertex count into a schedule of (vertex count,
//! connection radius) batches: vertex batching doubles the vertex count at
//! full radius, edge batching fixes the vertex count and doubles the
//! per-batch edge volume by growing the radius geometrically, and hybrid
//! batching grows vertices first at a shrinking radius, then hands over to
//! edge batching. The driver runs the planner on every batch, carries the
//! incumbent, evidence, and edge cache forward, and prunes vertices that
//! cannot improve the incumbent.
//!
//! The module also contains an analytic simulator for the same schedules:
//! cumulative considered-edge work against the worst-case path-quality bound,
//! with starvation rules for batches whose sampling is too sparse to certify
//! any bound.

use std::str::FromStr;

use crate::belief::{BeliefModel, R_PHI_MAX};
use crate::error::{Error, Result};
use crate::geom::{self, Config};
use crate::halton::{dispersion_bound, primes, suboptimality_factor};
use crate::roadmap::Roadmap;
use crate::search::{lazy_sp, pomp, PlannerRun};
use crate::trace::AnytimeTrace;
use crate::world::Scenario;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Vertex,
    Edge,
    Hybrid,
}

impl Strategy {
    pub fn as_str(&self) -> &'static str {
        match self {
            Strategy::Vertex => "vertex",
            Strategy::Edge => "edge",
            Strategy::Hybrid => "hybrid",
        }
    }

    pub fn all() -> [Strategy; 3] {
        [Strategy::Vertex, Strategy::Edge, Strategy::Hybrid]
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "vertex" => Ok(Strategy::Vertex),
            "edge" => Ok(Strategy::Edge),
            "hybrid" => Ok(Strategy::Hybrid),
            other => Err(format!("unknown strategy {other:?}")),
        }
    }
}

/// Which planner the densification driver runs on each batch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PlannerKind {
    Pomp { d_alpha: f64 },
    LazySp,
}

/// One densification batch: vertex count and connection radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BatchSpec {
    pub n: usize,
    pub r: f64,
}

/// Initial vertex count for the strategies that grow the vertex set.
const FIRST_BATCH_N: usize = 100;

/// Builds the batch schedule for a strategy targeting `n_max` vertices in
/// `d` dimensions.
///
/// Edge batching starts at radius `3 * n_max^(-1/d)` and multiplies it by
/// `2^(1/d)` per batch, so each batch doubles the covered pair volume.
/// Radii at or beyond `sqrt(d) / 2^(1/d)` are merged directly into the final
/// full-radius batch: a separate batch there would add less than a doubling
/// of work. Hybrid batching runs its vertex-doubling phase at radius
/// `3 * n^(-1/d)`, which shrinks as `n` grows, then continues the edge
/// ladder from where that phase ends.
pub fn make_schedule(strategy: Strategy, n_max: usize, d: usize) -> Result<Vec<BatchSpec>> {
    if n_max < 2 {
        return Err(Error::ScheduleTooSmall(n_max));
    }
    let full = geom::cube_diameter(d);
    let growth = 2f64.powf(1.0 / d as f64);
    let cutoff = full / growth;
    let start_r = |n: usize| (3.0 * (n as f64).powf(-1.0 / d as f64)).min(full);

    let mut out = Vec::new();
    match strategy {
        Strategy::Vertex => {
            let mut n = FIRST_BATCH_N.min(n_max);
            loop {
                out.push(BatchSpec { n, r: full });
                if n == n_max {
                    break;
                }
                n = (n * 2).min(n_max);
            }
        }
        Strategy::Edge => {
            // Each rung is computed directly as r0 * 2^(k/d) rather than by
            // repeated multiplication, so rungs that land exactly on
            // thresholds like 2 * dispersion do not drift past them.
            let r0 = start_r(n_max);
            for k in 0.. {
                let r = r0 * 2f64.powf(k as f64 / d as f64);
                if r >= cutoff {
                    break;
                }
                out.push(BatchSpec { n: n_max, r });
            }
            out.push(BatchSpec { n: n_max, r: full });
        }
        Strategy::Hybrid => {
            let mut n = FIRST_BATCH_N.min(n_max);
            loop {
                out.push(BatchSpec { n, r: start_r(n) });
                if n == n_max {
                    break;
                }
                n = (n * 2).min(n_max);
            }
            let r0 = out.last().unwrap().r;
            for k in 1.. {
                let r = r0 * 2f64.powf(k as f64 / d as f64);
                if r >= cutoff {
                    break;
                }
                out.push(BatchSpec { n: n_max, r });
            }
            out.push(BatchSpec { n: n_max, r: full });
        }
    }
    Ok(out)
}

/// Smallest vertex count whose worst-case dispersion can resolve passages of
/// width `delta_star`: `(2 * p_d / delta_star)^d`.
pub fn n_min(delta_star: f64, d: usize) -> f64 {
    let p_d = *primes(d).last().expect("d >= 1") as f64;
    (2.0 * p_d / delta_star).powi(d as i32)
}

/// Smallest connection radius with a certified path-quality bound at vertex
/// count `n`: twice the worst-case dispersion.
pub fn r_min(n: usize, d: usize) -> f64 {
    2.0 * dispersion_bound(n, d)
}

/// Prolate spheroid defined by the two query endpoints and a cost budget:
/// exactly the configurations that some path of length at most `c_best`
/// passes through.
#[derive(Debug, Clone)]
pub struct InformedSet {
    pub start: Config,
    pub goal: Config,
    pub c_best: f64,
}

impl InformedSet {
    pub fn c_min(&self) -> f64 {
        geom::dist(&self.start, &self.goal)
    }

    pub fn contains(&self, q: &[f64]) -> bool {
        geom::dist(&self.start, q) + geom::dist(q, &self.goal) <= self.c_best
    }

    pub fn volume(&self, d: usize) -> f64 {
        ellipsoid_volume(self.c_best, self.c_min(), d)
    }
}

/// Volume of the prolate spheroid with transverse diameter `c` and focal
/// distance `c_min`: `c * (c^2 - c_min^2)^((d-1)/2) * V_d / 2^d` where `V_d`
/// is the unit-ball volume.
pub fn ellipsoid_volume(c: f64, c_min: f64, d: usize) -> f64 {
    c * (c * c - c_min * c_min).powf((d as f64 - 1.0) / 2.0) * geom::unit_ball_volume(d)
        / 2f64.powi(d as i32)
}

/// Densification driver configuration.
#[derive(Debug, Clone, Copy)]
pub struct DensifyConfig {
    pub strategy: Strategy,
    pub planner: PlannerKind,
    pub n_max: usize,
    /// When false, vertices are never pruned; the planner output is
    /// identical either way, only work changes.
    pub prune: bool,
}

/// A feasible path adopted at some point of a densification run.
#[derive(Debug, Clone)]
pub struct AnytimeSolution {
    pub path: Vec<u32>,
    pub length: f64,
    pub checks: u64,
    pub batch: usize,
    pub alpha: f64,
}

/// Per-batch accounting.
#[derive(Debug, Clone)]
pub struct BatchReport {
    pub batch: usize,
    pub n: usize,
    pub r: f64,
    /// Active vertices when the batch's planner ran.
    pub active: usize,
    /// Vertex pairs that became connectable for the first time this batch.
    pub new_pairs: u64,
    /// World checks at the end of the batch.
    pub checks: u64,
    pub best_length: Option<f64>,
}

#[derive(Debug)]
pub struct DensifyRun {
    pub solutions: Vec<AnytimeSolution>,
    pub trace: AnytimeTrace,
    pub batches: Vec<BatchReport>,
    /// True when even the final full-radius graph admits no feasible path.
    pub infeasible: bool,
    pub total_checks: u64,
    /// Final roadmap state, including the edge evaluation cache.
    pub roadmap: Roadmap,
}

impl DensifyRun {
    pub fn best(&self) -> Option<&AnytimeSolution> {
        self.solutions.last()
    }
}

/// Counts vertex pairs that are connectable in the current graph but never
/// were before.
///
/// Active sets only shrink once a vertex exists, so a pair was considered
/// earlier exactly when its separation fits inside some prior radius dating
/// from after both endpoints joined. `births[v]` is the batch that added
/// vertex `v` and `radii_before` lists the radii of all earlier batches.
/// Radii are not monotone (the hybrid vertex phase shrinks them), hence the
/// suffix maximum rather than just the previous batch's radius.
fn count_new_pairs(rm: &Roadmap, births: &[usize], radii_before: &[f64]) -> u64 {
    let now = radii_before.len();
    let full = geom::cube_diameter(rm.dim());
    if now > 0 && rm.is_complete() && radii_before.iter().all(|&r| r >= full) {
        // Always complete: exactly the pairs touching this batch's vertices.
        let active = rm.active_vertices();
        let total = active.len() as u64;
        let old = active
            .iter()
            .filter(|&&v| births[v as usize] < now)
            .count() as u64;
        return total * (total - 1) / 2 - old * (old - 1) / 2;
    }
    // max_since[b]: largest radius of batches b..now.
    let mut max_since = vec![f64::NEG_INFINITY; now + 1];
    for b in (0..now).rev() {
        max_since[b] = radii_before[b].max(max_since[b + 1]);
    }
    let mut count = 0u64;
    rm.for_each_edge(|u, v, len| {
        let born = births[u as usize].max(births[v as usize]);
        if born == now || len > max_since[born] {
            count += 1;
        }
    });
    count
}

/// Runs the full anytime pipeline on a scenario: schedule the batches, grow
/// the roadmap, plan on every batch with the incumbent carried forward, and
/// record solutions and per-batch accounting.
///
/// Evidence, edge evaluations, and measure memos persist across batches, so
/// no edge is ever collision-checked twice in a run. The run is infeasible
/// only if the final batch proves its graph disconnected.
pub fn run_densification(scenario: &Scenario, config: &DensifyConfig) -> Result<DensifyRun> {
    let schedule = make_schedule(config.strategy, config.n_max, scenario.d)?;
    let world = scenario.world();
    let mut belief = BeliefModel::with_defaults(scenario.d);
    let mut rm = Roadmap::new(
        scenario.start.clone(),
        scenario.goal.clone(),
        schedule[0].n,
        schedule[0].r,
        scenario.resolution,
    )?;

    let mut run_trace = AnytimeTrace::new();
    let mut solutions: Vec<AnytimeSolution> = Vec::new();
    let mut batches: Vec<BatchReport> = Vec::new();
    let mut best: Option<f64> = None;
    let mut infeasible = false;
    let mut births: Vec<usize> = Vec::new();
    let mut radii: Vec<f64> = Vec::new();

    for (i, batch) in schedule.iter().enumerate() {
        if i > 0 {
            rm.set_shape(batch.n, batch.r);
        }
        births.resize(rm.len(), i);
        if config.prune {
            if let Some(c_best) = best {
                rm.prune_outside(c_best);
            }
        }
        belief.set_r_phi(batch.r.min(R_PHI_MAX));
        let new_pairs = count_new_pairs(&rm, &births, &radii);

        let result: PlannerRun = match config.planner {
            PlannerKind::Pomp { d_alpha } => pomp(&mut rm, &world, &mut belief, d_alpha, best)?,
            PlannerKind::LazySp => lazy_sp(&mut rm, &world, &mut belief, best)?,
        };
        for s in result.solutions {
            best = Some(s.length);
            run_trace.solution(s.checks, s.length, i, s.alpha);
            solutions.push(AnytimeSolution {
                path: s.path,
                length: s.length,
                checks: s.checks,
                batch: i,
                alpha: s.alpha,
            });
        }
        if result.infeasible && i + 1 == schedule.len() {
            infeasible = true;
            run_trace.infeasible(world.checks(), i);
        }
        run_trace.batch_done(world.checks(), best, i);
        batches.push(BatchReport {
            batch: i,
            n: batch.n,
            r: batch.r,
            active: rm.active_count(),
            new_pairs,
            checks: world.checks(),
            best_length: best,
        });
        radii.push(batch.r);
    }

    Ok(DensifyRun {
        solutions,
        trace: run_trace,
        batches,
        infeasible,
        total_checks: world.checks(),
        roadmap: rm,
    })
}

/// One schedule point of the analytic effort/quality simulation.
#[derive(Debug, Clone, Copy)]
pub struct SimPoint {
    pub batch: usize,
    pub n: usize,
    pub r: f64,
    /// Cumulative distinct connectable pairs after this batch.
    pub cum_work: f64,
    /// Certified path-quality factor, infinite when the batch is starved.
    pub bound: f64,
}

/// Expected distinct connectable pairs of an `(n, r)` graph on well-spread
/// samples: all pairs, scaled by the fraction of the diameter ball the
/// radius covers.
pub fn pair_coverage_work(n: usize, r: f64, d: usize) -> f64 {
    let pairs = n as f64 * (n as f64 - 1.0) / 2.0;
    pairs * (r / geom::cube_diameter(d)).powi(d as i32).min(1.0)
}

/// Simulates a schedule analytically: cumulative pair work and the
/// worst-case quality bound per batch.
///
/// A batch is starved, carrying an infinite bound, when its vertex count
/// cannot resolve passages of width `delta_star` or its radius does not
/// exceed twice the worst-case dispersion.
pub fn simulate_effort_quality(
    strategy: Strategy,
    n_max: usize,
    d: usize,
    delta_star: f64,
) -> Result<Vec<SimPoint>> {
    let schedule = make_schedule(strategy, n_max, d)?;
    let too_sparse = n_min(delta_star, d);
    let mut cum = 0.0;
    let mut prev = 0.0;
    Ok(schedule
        .iter()
        .enumerate()
        .map(|(i, b)| {
            let work = pair_coverage_work(b.n, b.r, d);
            cum += (work - prev).max(0.0);
            prev = work;
            let bound = if (b.n as f64) <= too_sparse || b.r <= r_min(b.n, d) {
                f64::INFINITY
            } else {
                suboptimality_factor(dispersion_bound(b.n, d), b.r)
                    .unwrap_or(f64::INFINITY)
            };
            SimPoint {
                batch: i,
                n: b.n,
                r: b.r,
                cum_work: cum,
                bound,
            }
        })
        .collect())
}

/// Least cumulative work at which the curve certifies a bound of `level` or
/// better, if it ever does.
pub fn work_to_reach(points: &[SimPoint], level: f64) -> Option<f64> {
    points
        .iter()
        .filter(|p| p.bound <= level)
        .map(|p| p.cum_work)
        .fold(None, |acc: Option<f64>, w| Some(acc.map_or(w, |a| a.min(w))))
}

/// Work at the first batch with any certified bound.
pub fn first_finite_work(points: &[SimPoint]) -> Option<f64> {
    points.iter().find(|p| p.bound.is_finite()).map(|p| p.cum_work)
}

/// Quality levels at which two curves can be compared: every certified bound
/// value of either curve, restricted to the band both curves reach.
pub fn common_quality_levels(a: &[SimPoint], b: &[SimPoint]) -> Vec<f64> {
    let finite = |pts: &[SimPoint]| -> Vec<f64> {
        pts.iter().map(|p| p.bound).filter(|b| b.is_finite()).collect()
    };
    let fa = finite(a);
    let fb = finite(b);
    if fa.is_empty() || fb.is_empty() {
        return Vec::new();
    }
    let min_max = |v: &[f64]| {
        (
            v.iter().cloned().fold(f64::INFINITY, f64::min),
            v.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
        )
    };
    let (lo_a, hi_a) = min_max(&fa);
    let (lo_b, hi_b) = min_max(&fb);
    let lo = lo_a.max(lo_b);
    let hi = hi_a.min(hi_b);
    let mut levels: Vec<f64> = fa
        .into_iter()
        .chain(fb)
        .filter(|&x| x >= lo && x <= hi)
        .collect();
    levels.sort_by(f64::total_cmp);
    levels.dedup();
    levels
}

/// Whether curve `a` reaches every commonly reachable quality level with no
/// more work than curve `b`. Vacuously true when the curves share no level.
pub fn weakly_dominates(a: &[SimPoint], b: &[SimPoint]) -> bool {
    common_quality_levels(a, b).into_iter().all(|level| {
        match (work_to_reach(a, level), work_to_reach(b, level)) {
            (Some(wa), Some(wb)) => wa <= wb,
            _ => false,
        }
    })
}
