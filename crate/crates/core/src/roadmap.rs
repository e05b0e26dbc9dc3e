//! Roadmap graphs over deterministic samples with lazily evaluated edges.
//!
//! Vertices are the query endpoints followed by a prefix of the Halton
//! sequence; edges are implicit, connecting any two unpruned vertices within
//! the current connection radius. No adjacency is stored: neighbourhoods come
//! from a grid query, or from the full vertex list once the radius reaches
//! the cube diameter and the graph is complete.
//!
//! Edge evaluations are cached by unordered vertex pair, so growing the
//! vertex set or changing the radius between batches never repeats a
//! collision check, and the total number of configuration tests recorded in
//! the cache always matches the world's counter. Obstruction measures are
//! memoized per edge against the belief version that last influenced its
//! endpoints and recomputed only when read.

use std::collections::HashMap;

use crate::belief::BeliefModel;
use crate::error::Result;
use crate::geom::{self, Config};
use crate::halton::HaltonSeq;
use crate::spatial::PointGrid;
use crate::world::World;

/// Unordered vertex pair identifying an edge; the smaller index comes first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeKey {
    a: u32,
    b: u32,
}

impl EdgeKey {
    pub fn new(u: u32, v: u32) -> Self {
        assert_ne!(u, v, "self-loops are not edges");
        if u < v {
            Self { a: u, b: v }
        } else {
            Self { a: v, b: u }
        }
    }

    pub fn endpoints(&self) -> (u32, u32) {
        (self.a, self.b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeStatus {
    Unknown,
    Free,
    Blocked,
}

#[derive(Debug, Clone)]
pub struct EdgeData {
    pub status: EdgeStatus,
    /// Configurations tested when this edge was evaluated.
    pub tested: u64,
    /// Memoized obstruction measure and the belief version it was read at.
    measure_memo: Option<(f64, u32)>,
}

impl Default for EdgeData {
    fn default() -> Self {
        Self {
            status: EdgeStatus::Unknown,
            tested: 0,
            measure_memo: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Roadmap {
    d: usize,
    resolution: f64,
    r: f64,
    complete: bool,
    samples: Vec<Config>,
    active: Vec<bool>,
    active_count: usize,
    grid: PointGrid,
    cache: HashMap<EdgeKey, EdgeData>,
    halton: HaltonSeq,
    next_halton: u64,
}

pub const START: u32 = 0;
pub const GOAL: u32 = 1;

fn grid_cell(r: f64) -> f64 {
    r.clamp(0.02, 0.25)
}

impl Roadmap {
    /// Builds a roadmap whose first two vertices are `start` and `goal`,
    /// filled to `n` vertices with Halton points, connected at radius `r`.
    pub fn new(start: Config, goal: Config, n: usize, r: f64, resolution: f64) -> Result<Self> {
        let d = start.len();
        geom::validate_config(&start, d)?;
        geom::validate_config(&goal, d)?;
        assert!(n >= 2, "a roadmap needs at least the two query vertices");
        assert!(resolution > 0.0);
        let mut rm = Self {
            d,
            resolution,
            r,
            complete: false,
            samples: vec![start, goal],
            active: vec![true, true],
            active_count: 2,
            grid: PointGrid::new(d, grid_cell(r)),
            cache: HashMap::new(),
            halton: HaltonSeq::new(d)?,
            next_halton: 1,
        };
        rm.set_shape(n, r);
        Ok(rm)
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn resolution(&self) -> f64 {
        self.resolution
    }

    pub fn radius(&self) -> f64 {
        self.r
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn active_count(&self) -> usize {
        self.active_count
    }

    pub fn is_active(&self, v: u32) -> bool {
        self.active[v as usize]
    }

    pub fn sample(&self, v: u32) -> &[f64] {
        &self.samples[v as usize]
    }

    pub fn edge_length(&self, u: u32, v: u32) -> f64 {
        geom::dist(&self.samples[u as usize], &self.samples[v as usize])
    }

    /// Extends the vertex set to `n` Halton points and sets the connection
    /// radius. Newly added vertices are active; existing activity flags, the
    /// edge cache, and all evaluation results are preserved.
    pub fn set_shape(&mut self, n: usize, r: f64) {
        assert!(n >= self.samples.len(), "the vertex set never shrinks");
        while self.samples.len() < n {
            let p = self
                .halton
                .point(self.next_halton)
                .expect("halton index starts at 1");
            self.next_halton += 1;
            self.samples.push(p);
            self.active.push(true);
            self.active_count += 1;
        }
        self.r = r;
        self.complete = r >= geom::cube_diameter(self.d);
        self.rebuild_grid();
    }

    fn rebuild_grid(&mut self) {
        let mut grid = PointGrid::new(self.d, grid_cell(self.r));
        for (i, p) in self.samples.iter().enumerate() {
            if self.active[i] {
                grid.insert(i as u32, p);
            }
        }
        self.grid = grid;
    }

    /// Deactivates every vertex that cannot lie on a path shorter than
    /// `c_best`, judged by the sum of its straight-line distances to the two
    /// query vertices. The query vertices are always kept.
    pub fn prune_outside(&mut self, c_best: f64) {
        let start = self.samples[START as usize].clone();
        let goal = self.samples[GOAL as usize].clone();
        let mut changed = false;
        for v in 2..self.samples.len() {
            if !self.active[v] {
                continue;
            }
            let q = &self.samples[v];
            if geom::dist(&start, q) + geom::dist(q, &goal) > c_best {
                self.active[v] = false;
                self.active_count -= 1;
                changed = true;
            }
        }
        if changed {
            self.rebuild_grid();
        }
    }

    /// Active vertices in ascending order.
    pub fn active_vertices(&self) -> Vec<u32> {
        (0..self.samples.len() as u32)
            .filter(|&v| self.active[v as usize])
            .collect()
    }

    /// Active vertices adjacent to `u`: all others within the connection
    /// radius, in ascending order.
    pub fn neighbors(&self, u: u32) -> Vec<u32> {
        if self.complete {
            return (0..self.samples.len() as u32)
                .filter(|&v| v != u && self.active[v as usize])
                .collect();
        }
        self.grid
            .radius_query(&self.samples, &self.samples[u as usize], self.r)
            .into_iter()
            .filter(|&v| v != u)
            .collect()
    }

    /// Visits every edge of the current graph once, `u < v` with `u`
    /// ascending then `v` ascending.
    pub fn for_each_edge(&self, mut f: impl FnMut(u32, u32, f64)) {
        if self.complete {
            let verts = self.active_vertices();
            for (i, &u) in verts.iter().enumerate() {
                for &v in &verts[i + 1..] {
                    f(u, v, self.edge_length(u, v));
                }
            }
            return;
        }
        for u in 0..self.samples.len() as u32 {
            if !self.active[u as usize] {
                continue;
            }
            for v in self
                .grid
                .radius_query(&self.samples, &self.samples[u as usize], self.r)
            {
                if v > u {
                    f(u, v, self.edge_length(u, v));
                }
            }
        }
    }

    /// Active vertices within `radius` of configuration `q`.
    pub fn vertices_near(&self, q: &[f64], radius: f64) -> Vec<u32> {
        self.grid.radius_query(&self.samples, q, radius)
    }

    pub fn edge_status(&self, u: u32, v: u32) -> EdgeStatus {
        self.cache
            .get(&EdgeKey::new(u, v))
            .map(|e| e.status)
            .unwrap_or(EdgeStatus::Unknown)
    }

    pub fn edge_data(&self, u: u32, v: u32) -> Option<&EdgeData> {
        self.cache.get(&EdgeKey::new(u, v))
    }

    /// Total configurations tested across all cached edge evaluations.
    pub fn total_tested(&self) -> u64 {
        self.cache.values().map(|e| e.tested).sum()
    }

    pub fn evaluated_edge_count(&self) -> usize {
        self.cache
            .values()
            .filter(|e| e.status != EdgeStatus::Unknown)
            .count()
    }

    /// Every cached edge record with its key, sorted by key. Records whose
    /// status is `Unknown` were touched only for measure reads and carry no
    /// detector work.
    pub fn edge_records(&self) -> Vec<(EdgeKey, &EdgeData)> {
        let mut out: Vec<(EdgeKey, &EdgeData)> =
            self.cache.iter().map(|(k, e)| (*k, e)).collect();
        out.sort_unstable_by_key(|(k, _)| k.endpoints());
        out
    }

    /// Evaluates the edge against the world unless its status is already
    /// known; an edge is never collision-checked twice. New observations are
    /// inserted into the belief model, and every active vertex within the
    /// edge's influence radius is stamped so the next measure read of its
    /// incident edges sees the new evidence.
    pub fn evaluate_edge(
        &mut self,
        world: &World,
        belief: &mut BeliefModel,
        u: u32,
        v: u32,
    ) -> Result<EdgeStatus> {
        let key = EdgeKey::new(u, v);
        if let Some(data) = self.cache.get(&key) {
            if data.status != EdgeStatus::Unknown {
                return Ok(data.status);
            }
        }
        let (free, observations) = world.check_edge_observed(
            &self.samples[u as usize],
            &self.samples[v as usize],
            self.resolution,
        );
        let status = if free {
            EdgeStatus::Free
        } else {
            EdgeStatus::Blocked
        };
        let entry = self.cache.entry(key).or_default();
        entry.status = status;
        entry.tested = observations.len() as u64;
        if belief.insert_observations(&observations)?.is_some() {
            let len = self.edge_length(u, v);
            let r_hat = belief.affected_radius(len);
            let mut affected = self
                .grid
                .radius_query(&self.samples, &self.samples[u as usize], r_hat);
            affected.extend(
                self.grid
                    .radius_query(&self.samples, &self.samples[v as usize], r_hat),
            );
            affected.sort_unstable();
            affected.dedup();
            belief.ensure_vertices(self.samples.len());
            belief.stamp_affected(&affected);
        }
        Ok(status)
    }

    /// Obstruction measure of the edge under the evidence that last
    /// influenced its endpoints. Untouched edges collapse to the closed-form
    /// prior measure; otherwise the value is memoized per belief version, so
    /// repeated reads between evidence arrivals cost one lookup.
    pub fn edge_measure(&mut self, belief: &BeliefModel, u: u32, v: u32) -> f64 {
        let read_version = belief.last_affected(u).max(belief.last_affected(v));
        let len = self.edge_length(u, v);
        if read_version == 0 {
            return belief.default_edge_measure(len, self.resolution);
        }
        let key = EdgeKey::new(u, v);
        if let Some((value, version)) = self.cache.get(&key).and_then(|e| e.measure_memo) {
            if version == read_version {
                return value;
            }
        }
        let value = belief.edge_measure_at(
            &self.samples[u as usize],
            &self.samples[v as usize],
            self.resolution,
            read_version,
        );
        self.cache.entry(key).or_default().measure_memo = Some((value, read_version));
        value
    }

    /// Exhaustively evaluates the current graph against `world` and returns a
    /// length-optimal free path from start to goal, if one exists. Intended
    /// as ground truth for validating the lazy planners; it shares nothing
    /// with the edge cache or the belief model.
    pub fn shortest_path_oracle(&self, world: &World) -> Option<(Vec<u32>, f64)> {
        let n = self.samples.len();
        let mut adj: Vec<Vec<(u32, f64)>> = vec![Vec::new(); n];
        self.for_each_edge(|u, v, len| {
            if world.check_edge(
                &self.samples[u as usize],
                &self.samples[v as usize],
                self.resolution,
            ) {
                adj[u as usize].push((v, len));
                adj[v as usize].push((u, len));
            }
        });

        #[derive(PartialEq)]
        struct Entry(f64, u32);
        impl Eq for Entry {}
        impl PartialOrd for Entry {
            fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
                Some(self.cmp(other))
            }
        }
        impl Ord for Entry {
            fn cmp(&self, other: &Self) -> std::cmp::Ordering {
                self.0
                    .total_cmp(&other.0)
                    .then_with(|| self.1.cmp(&other.1))
            }
        }

        let mut dist = vec![f64::INFINITY; n];
        let mut prev = vec![u32::MAX; n];
        let mut heap = std::collections::BinaryHeap::new();
        dist[START as usize] = 0.0;
        heap.push(std::cmp::Reverse(Entry(0.0, START)));
        while let Some(std::cmp::Reverse(Entry(du, u))) = heap.pop() {
            if du > dist[u as usize] {
                continue;
            }
            if u == GOAL {
                break;
            }
            for &(v, len) in &adj[u as usize] {
                let alt = du + len;
                if alt < dist[v as usize] {
                    dist[v as usize] = alt;
                    prev[v as usize] = u;
                    heap.push(std::cmp::Reverse(Entry(alt, v)));
                }
            }
        }
        if !dist[GOAL as usize].is_finite() {
            return None;
        }
        let mut path = vec![GOAL];
        while *path.last().unwrap() != START {
            path.push(prev[*path.last().unwrap() as usize]);
        }
        path.reverse();
        Some((path, dist[GOAL as usize]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::world::{generate_scenario, Obstacle, ScenarioParams};

    fn simple_roadmap(n: usize, r: f64) -> Roadmap {
        Roadmap::new(vec![0.05, 0.05], vec![0.95, 0.95], n, r, 0.05).unwrap()
    }

    #[test]
    fn query_vertices_come_first_then_halton_points() {
        let rm = simple_roadmap(6, 0.5);
        assert_eq!(rm.sample(START), &[0.05, 0.05]);
        assert_eq!(rm.sample(GOAL), &[0.95, 0.95]);
        assert!((rm.sample(2)[0] - 0.5).abs() < 1e-15);
        assert!((rm.sample(2)[1] - 1.0 / 3.0).abs() < 1e-15);
        assert!((rm.sample(3)[0] - 0.25).abs() < 1e-15);
        assert!((rm.sample(3)[1] - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn growing_preserves_existing_samples() {
        let mut rm = simple_roadmap(10, 0.3);
        let before: Vec<_> = (0..10).map(|v| rm.sample(v).to_vec()).collect();
        rm.set_shape(20, 0.4);
        for (v, p) in before.iter().enumerate() {
            assert_eq!(rm.sample(v as u32), &p[..]);
        }
        assert_eq!(rm.len(), 20);
    }

    #[test]
    fn neighbors_match_brute_force() {
        let rm = simple_roadmap(80, 0.25);
        for u in 0..rm.len() as u32 {
            let brute: Vec<u32> = (0..rm.len() as u32)
                .filter(|&v| v != u && rm.edge_length(u, v) <= 0.25)
                .collect();
            assert_eq!(rm.neighbors(u), brute, "vertex {u}");
        }
    }

    #[test]
    fn diameter_radius_gives_a_complete_graph() {
        let rm = simple_roadmap(40, std::f64::consts::SQRT_2);
        assert!(rm.is_complete());
        for u in 0..40 {
            assert_eq!(rm.neighbors(u).len(), 39);
        }
        let mut edges = 0;
        rm.for_each_edge(|_, _, _| edges += 1);
        assert_eq!(edges, 40 * 39 / 2);
    }

    #[test]
    fn edge_iteration_matches_neighbor_counts() {
        let rm = simple_roadmap(120, 0.2);
        let mut pair_count = 0usize;
        rm.for_each_edge(|u, v, len| {
            assert!(u < v);
            assert!(len <= 0.2);
            pair_count += 1;
        });
        let degree_sum: usize = (0..rm.len() as u32).map(|u| rm.neighbors(u).len()).sum();
        assert_eq!(pair_count * 2, degree_sum);
    }

    #[test]
    fn pruning_removes_exactly_the_long_detours() {
        let mut rm = simple_roadmap(100, 0.3);
        let c_best = 1.5;
        let expect_active: Vec<u32> = (0..rm.len() as u32)
            .filter(|&v| {
                v < 2
                    || rm.edge_length(START, v) + rm.edge_length(v, GOAL) <= c_best
            })
            .collect();
        rm.prune_outside(c_best);
        assert_eq!(rm.active_vertices(), expect_active);
        assert!(rm.is_active(START) && rm.is_active(GOAL));
        // Neighbour queries no longer return pruned vertices.
        for u in rm.active_vertices() {
            for v in rm.neighbors(u) {
                assert!(rm.is_active(v));
            }
        }
    }

    #[test]
    fn edges_are_never_checked_twice() {
        let world = World::new(2, vec![]);
        let mut belief = BeliefModel::with_defaults(2);
        let mut rm = simple_roadmap(10, 1.5);
        let s1 = rm.evaluate_edge(&world, &mut belief, 2, 3).unwrap();
        let after_first = world.checks();
        assert!(after_first > 0);
        let s2 = rm.evaluate_edge(&world, &mut belief, 2, 3).unwrap();
        let s3 = rm.evaluate_edge(&world, &mut belief, 3, 2).unwrap();
        assert_eq!(world.checks(), after_first);
        assert_eq!(s1, s2);
        assert_eq!(s1, s3);
        assert_eq!(rm.total_tested(), after_first);
    }

    #[test]
    fn evaluation_records_status_and_evidence() {
        let world = World::new(
            2,
            vec![Obstacle {
                lo: vec![0.45, 0.0],
                hi: vec![0.55, 1.0],
            }],
        );
        let mut belief = BeliefModel::with_defaults(2);
        let mut rm = simple_roadmap(8, 1.5);
        let status = rm.evaluate_edge(&world, &mut belief, START, GOAL).unwrap();
        assert_eq!(status, EdgeStatus::Blocked);
        assert_eq!(rm.edge_status(GOAL, START), EdgeStatus::Blocked);
        assert!(belief.evidence_len() > 0);
    }

    #[test]
    fn measure_reads_match_eager_recomputation() {
        // Oracle: after every evaluation, recompute every edge whose
        // endpoints fall inside the influence region and store it; untouched
        // edges keep their previous value. Lazy reads must agree.
        let scenario = generate_scenario(&ScenarioParams {
            d: 2,
            start: vec![0.05, 0.05],
            goal: vec![0.95, 0.95],
            xi_obs: 0.3,
            seed: 21,
            resolution: 0.05,
        })
        .unwrap();
        let world = scenario.world();
        let mut belief = BeliefModel::with_defaults(2);
        belief.set_r_phi(0.25);
        let mut rm = Roadmap::new(
            scenario.start.clone(),
            scenario.goal.clone(),
            18,
            std::f64::consts::SQRT_2,
            0.05,
        )
        .unwrap();

        let mut edges: Vec<(u32, u32)> = Vec::new();
        rm.for_each_edge(|u, v, _| edges.push((u, v)));
        let mut eager: HashMap<(u32, u32), f64> = edges
            .iter()
            .map(|&(u, v)| {
                (
                    (u, v),
                    belief.default_edge_measure(rm.edge_length(u, v), rm.resolution()),
                )
            })
            .collect();

        let to_eval = [(START, 5u32), (5u32, GOAL), (2u32, 9u32), (START, GOAL)];
        for &(a, b) in &to_eval {
            let len = rm.edge_length(a, b);
            rm.evaluate_edge(&world, &mut belief, a, b).unwrap();
            let r_hat = belief.affected_radius(len);
            let version = belief.current_version();
            for &(u, v) in &edges {
                let near = |w: u32| {
                    rm.edge_length(w, a).min(rm.edge_length(w, b)) <= r_hat
                        || w == a
                        || w == b
                };
                if near(u) || near(v) {
                    eager.insert(
                        (u, v),
                        belief.edge_measure_at(rm.sample(u), rm.sample(v), rm.resolution(), version),
                    );
                }
            }
        }
        for &(u, v) in &edges {
            let lazy = rm.edge_measure(&belief, u, v);
            let want = eager[&(u, v)];
            assert!(
                (lazy - want).abs() < 1e-12,
                "edge ({u},{v}): lazy {lazy} eager {want}"
            );
        }
    }

    #[test]
    fn far_edges_keep_the_prior_measure_after_evaluation() {
        let world = World::new(2, vec![]);
        let mut belief = BeliefModel::with_defaults(2);
        belief.set_r_phi(0.1);
        let mut rm = simple_roadmap(60, 0.35);
        // Find two short edges far apart.
        let mut short_edges: Vec<(u32, u32, f64)> = Vec::new();
        rm.for_each_edge(|u, v, len| {
            if len < 0.2 {
                short_edges.push((u, v, len));
            }
        });
        let &(a, b, _) = short_edges.first().unwrap();
        let far = short_edges
            .iter()
            .find(|&&(u, v, _)| {
                rm.edge_length(u, a) > 0.8
                    && rm.edge_length(u, b) > 0.8
                    && rm.edge_length(v, a) > 0.8
                    && rm.edge_length(v, b) > 0.8
            })
            .copied();
        let (fu, fv, flen) = far.expect("some edge far from the first one");
        let before = rm.edge_measure(&belief, fu, fv);
        assert_eq!(before, belief.default_edge_measure(flen, rm.resolution()));
        let prior_near = rm.edge_measure(&belief, a, b);
        rm.evaluate_edge(&world, &mut belief, a, b).unwrap();
        // The far edge still reads the prior; the evaluated edge does not.
        assert_eq!(rm.edge_measure(&belief, fu, fv), before);
        assert_ne!(rm.edge_measure(&belief, a, b), prior_near);
    }

    #[test]
    fn oracle_finds_the_straight_line_in_an_empty_world() {
        let world = World::new(2, vec![]);
        let rm = simple_roadmap(30, 1.5);
        let (path, len) = rm.shortest_path_oracle(&world).unwrap();
        assert_eq!(path, vec![START, GOAL]);
        assert!((len - rm.edge_length(START, GOAL)).abs() < 1e-12);
    }

    #[test]
    fn oracle_detours_around_a_wall() {
        // A wall with a gap near the top forces a longer path.
        let world = World::new(
            2,
            vec![Obstacle {
                lo: vec![0.48, 0.0],
                hi: vec![0.52, 0.85],
            }],
        );
        let rm = simple_roadmap(200, 0.4);
        let direct = rm.edge_length(START, GOAL);
        let (path, len) = rm.shortest_path_oracle(&world).unwrap();
        assert!(len > direct);
        assert!(path.len() > 2);
        // Every edge of the returned path is genuinely free.
        for w in path.windows(2) {
            assert!(world.check_edge(rm.sample(w[0]), rm.sample(w[1]), rm.resolution()));
        }
    }

    #[test]
    fn oracle_reports_disconnection() {
        // A full-height wall separates start from goal. It is thicker than
        // the check resolution, so no crossing edge can straddle it
        // undetected.
        let world = World::new(
            2,
            vec![Obstacle {
                lo: vec![0.45, -0.1],
                hi: vec![0.55, 1.1],
            }],
        );
        let rm = simple_roadmap(50, 0.5);
        assert!(rm.shortest_path_oracle(&world).is_none());
    }
}
