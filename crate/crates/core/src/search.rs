//! Lazy anytime search over a roadmap guided by the collision belief.
//!
//! The optimistic searcher runs A* over all non-blocked edges under a weight
//! that blends edge length with the belief's obstruction measure. The
//! anytime planner sweeps the blend parameter alpha from 0 (pure belief)
//! to 1 (pure length): at each alpha it proposes the optimistic path,
//! validates it edge by edge, feeds the outcomes back into the belief, and
//! either adopts it as the new incumbent or advances alpha when no proposal
//! can beat the incumbent at that blend. Every adopted solution is strictly
//! shorter than the one before, and the sweep ends at pure length, where
//! failure to connect proves infeasibility.

use crate::belief::BeliefModel;
use crate::error::{Error, Result};
use crate::geom;
use crate::roadmap::{EdgeStatus, Roadmap, GOAL, START};
use crate::world::World;

/// How an edge's length and obstruction measure combine into a search weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightPolicy {
    /// `alpha * length + (1 - alpha) * measure`.
    Blended { alpha: f64 },
    /// `length + beta * (1 - exp(-measure))`: length plus a penalty
    /// proportional to the believed probability the edge is obstructed.
    ExpectedLength { beta: f64 },
}

impl WeightPolicy {
    /// Factor applied to straight-line distance in an admissible heuristic.
    fn heuristic_scale(&self) -> f64 {
        match self {
            WeightPolicy::Blended { alpha } => *alpha,
            WeightPolicy::ExpectedLength { .. } => 1.0,
        }
    }

    pub fn weight(&self, length: f64, measure: f64) -> f64 {
        match self {
            WeightPolicy::Blended { alpha } => alpha * length + (1.0 - alpha) * measure,
            WeightPolicy::ExpectedLength { beta } => length + beta * (1.0 - (-measure).exp()),
        }
    }

    /// Whether the measure term has zero coefficient, making measure reads
    /// unnecessary.
    fn ignores_measure(&self) -> bool {
        match self {
            WeightPolicy::Blended { alpha } => *alpha == 1.0,
            WeightPolicy::ExpectedLength { beta } => *beta == 0.0,
        }
    }
}

/// Penalty weight that makes the expected-length policy agree with the
/// blended policy at obstruction-survival probability `rho`:
/// `(1 - alpha) / alpha * (-ln rho) / (1 - rho)`.
pub fn matching_beta(alpha: f64, rho: f64) -> f64 {
    (1.0 - alpha) / alpha * (-rho.ln()) / (1.0 - rho)
}

/// The alpha ladder for [`pomp`]: multiples of `d_alpha` from 0, capped so
/// the final rung is exactly 1.
pub fn alpha_grid(d_alpha: f64) -> Result<Vec<f64>> {
    if !(d_alpha > 0.0 && d_alpha <= 1.0) {
        return Err(Error::BadAlphaStep(d_alpha));
    }
    let mut grid = vec![0.0];
    let mut k = 1u32;
    loop {
        let a = k as f64 * d_alpha;
        if a >= 1.0 - 1e-9 {
            break;
        }
        grid.push(a);
        k += 1;
    }
    grid.push(1.0);
    Ok(grid)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub path: Vec<u32>,
    /// Total blended weight of the path.
    pub cost: f64,
    /// Total Euclidean length of the path.
    pub length: f64,
}

#[derive(PartialEq)]
struct Node {
    f: f64,
    h: f64,
    v: u32,
}

impl Eq for Node {}

impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Node {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.f
            .total_cmp(&other.f)
            .then_with(|| self.h.total_cmp(&other.h))
            .then_with(|| self.v.cmp(&other.v))
    }
}

/// Weighted A* over every active non-blocked edge. Evaluated-free edges
/// carry zero measure; unknown edges carry their belief measure. Ties break
/// on heuristic then vertex index, so equal-cost searches are reproducible.
pub fn optimistic_search(
    rm: &mut Roadmap,
    belief: &BeliefModel,
    policy: WeightPolicy,
) -> Option<SearchResult> {
    bounded_search(rm, belief, policy, None)
}

/// [`optimistic_search`] that additionally discards any node whose best
/// possible cost reaches `bound`, returning only paths with cost strictly
/// below it.
fn bounded_search(
    rm: &mut Roadmap,
    belief: &BeliefModel,
    policy: WeightPolicy,
    bound: Option<f64>,
) -> Option<SearchResult> {
    let n = rm.len();
    let goal_pos = rm.sample(GOAL).to_vec();
    let scale = policy.heuristic_scale();
    let h = |rm: &Roadmap, v: u32| scale * geom::dist(rm.sample(v), &goal_pos);

    let mut g = vec![f64::INFINITY; n];
    let mut parent = vec![u32::MAX; n];
    let mut closed = vec![false; n];
    let mut heap = std::collections::BinaryHeap::new();

    let h0 = h(rm, START);
    if bound.map_or(true, |b| h0 < b) {
        g[START as usize] = 0.0;
        heap.push(std::cmp::Reverse(Node {
            f: h0,
            h: h0,
            v: START,
        }));
    }

    while let Some(std::cmp::Reverse(node)) = heap.pop() {
        let u = node.v;
        if closed[u as usize] {
            continue;
        }
        closed[u as usize] = true;
        if u == GOAL {
            let mut path = vec![GOAL];
            while *path.last().unwrap() != START {
                path.push(parent[*path.last().unwrap() as usize]);
            }
            path.reverse();
            let length = path.windows(2).map(|w| rm.edge_length(w[0], w[1])).sum();
            return Some(SearchResult {
                path,
                cost: g[GOAL as usize],
                length,
            });
        }
        for v in rm.neighbors(u) {
            if closed[v as usize] {
                continue;
            }
            let status = rm.edge_status(u, v);
            if status == EdgeStatus::Blocked {
                continue;
            }
            let length = rm.edge_length(u, v);
            // Measures are non-negative, so the measure-free cost lower
            // bounds the real one; settle both rejections before paying for
            // the measure.
            let base = g[u as usize] + policy.weight(length, 0.0);
            if base >= g[v as usize] {
                continue;
            }
            let hv = h(rm, v);
            if bound.map_or(false, |b| base + hv >= b) {
                continue;
            }
            let measure = if status == EdgeStatus::Free || policy.ignores_measure() {
                0.0
            } else {
                rm.edge_measure(belief, u, v)
            };
            let tentative = g[u as usize] + policy.weight(length, measure);
            if tentative < g[v as usize] {
                let f = tentative + hv;
                if bound.map_or(true, |b| f < b) {
                    g[v as usize] = tentative;
                    parent[v as usize] = u;
                    heap.push(std::cmp::Reverse(Node { f, h: hv, v }));
                }
            }
        }
    }
    None
}

/// Outcome of validating a proposed path edge by edge.
#[derive(Debug, Clone, PartialEq)]
pub enum PathEval {
    Feasible,
    Blocked { u: u32, v: u32 },
}

/// Validates a path front to back, evaluating unknown edges against the
/// world and stopping at the first blocked edge.
pub fn lazy_eval_path(
    rm: &mut Roadmap,
    world: &World,
    belief: &mut BeliefModel,
    path: &[u32],
) -> Result<PathEval> {
    for w in path.windows(2) {
        let (u, v) = (w[0], w[1]);
        let status = match rm.edge_status(u, v) {
            EdgeStatus::Unknown => rm.evaluate_edge(world, belief, u, v)?,
            known => known,
        };
        if status == EdgeStatus::Blocked {
            return Ok(PathEval::Blocked { u, v });
        }
    }
    Ok(PathEval::Feasible)
}

/// A feasible path adopted during a planner run.
#[derive(Debug, Clone)]
pub struct FoundSolution {
    pub path: Vec<u32>,
    pub length: f64,
    /// World check counter when the path was proven feasible.
    pub checks: u64,
    /// Blend parameter the path was proposed at.
    pub alpha: f64,
}

/// Result of one planner invocation on a fixed roadmap shape.
#[derive(Debug, Clone, Default)]
pub struct PlannerRun {
    /// Adopted solutions in discovery order; lengths strictly decrease.
    pub solutions: Vec<FoundSolution>,
    /// True when the roadmap was proven to admit no feasible path at all.
    pub infeasible: bool,
    /// Optimistic searches performed.
    pub searches: u64,
}

/// Anytime planner sweeping the length/measure blend from belief-driven to
/// length-driven.
///
/// At each rung of the alpha ladder the optimistic path is proposed. A
/// proposal is validated only if its blended cost beats the incumbent's
/// (an incumbent carries zero measure, so its cost at blend `a` is
/// `a * length`); otherwise alpha advances. A blocked validation updates the
/// belief and re-proposes at the same rung. `incumbent` seeds the cost to
/// beat, so planning continues from earlier batches instead of rediscovering
/// known solutions.
pub fn pomp(
    rm: &mut Roadmap,
    world: &World,
    belief: &mut BeliefModel,
    d_alpha: f64,
    incumbent: Option<f64>,
) -> Result<PlannerRun> {
    let grid = alpha_grid(d_alpha)?;
    let mut run = PlannerRun::default();
    let mut current: Option<(Vec<u32>, f64)> = None;
    let mut idx = 0;
    while idx < grid.len() {
        let alpha = grid[idx];
        let best_len = match (incumbent, &current) {
            (Some(inc), Some((_, cur))) => Some(inc.min(*cur)),
            (Some(inc), None) => Some(inc),
            (None, Some((_, cur))) => Some(*cur),
            (None, None) => None,
        };
        if alpha == 0.0 && best_len.is_some() {
            // Any path has non-negative cost at alpha 0, so nothing can beat
            // an incumbent; the rung only matters before the first solution.
            idx += 1;
            continue;
        }
        let bound = best_len.map(|l| alpha * l);
        run.searches += 1;
        let proposal = bounded_search(rm, belief, WeightPolicy::Blended { alpha }, bound);
        let Some(found) = proposal else {
            if alpha == 1.0 && best_len.is_none() {
                run.infeasible = true;
            }
            idx += 1;
            continue;
        };
        if let Some((cur_path, _)) = &current {
            if *cur_path == found.path {
                idx += 1;
                continue;
            }
        }
        if let Some(b) = bound {
            if found.cost >= b {
                idx += 1;
                continue;
            }
        }
        match lazy_eval_path(rm, world, belief, &found.path)? {
            PathEval::Blocked { .. } => {
                // Evidence changed; propose again at the same rung.
            }
            PathEval::Feasible => {
                run.solutions.push(FoundSolution {
                    path: found.path.clone(),
                    length: found.length,
                    checks: world.checks(),
                    alpha,
                });
                current = Some((found.path, found.length));
            }
        }
    }
    Ok(run)
}

/// Length-only lazy baseline: propose the shortest non-blocked path,
/// validate it, and repeat until a proposal survives. The first surviving
/// proposal is the length-optimal feasible path on the roadmap, because
/// proposals never get shorter as blocked edges are removed.
pub fn lazy_sp(
    rm: &mut Roadmap,
    world: &World,
    belief: &mut BeliefModel,
    incumbent: Option<f64>,
) -> Result<PlannerRun> {
    let mut run = PlannerRun::default();
    loop {
        run.searches += 1;
        let proposal = bounded_search(
            rm,
            belief,
            WeightPolicy::Blended { alpha: 1.0 },
            incumbent,
        );
        let Some(found) = proposal else {
            if incumbent.is_none() {
                run.infeasible = true;
            }
            return Ok(run);
        };
        match lazy_eval_path(rm, world, belief, &found.path)? {
            PathEval::Blocked { .. } => continue,
            PathEval::Feasible => {
                run.solutions.push(FoundSolution {
                    path: found.path,
                    length: found.length,
                    checks: world.checks(),
                    alpha: 1.0,
                });
                return Ok(run);
            }
        }
    }
}
