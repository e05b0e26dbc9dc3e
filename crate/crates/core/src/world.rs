//! Axis-aligned box worlds, collision checking, and scenario generation.
//!
//! A [`World`] is a set of closed boxes inside the unit hypercube together
//! with a counter of every configuration test performed against it, which is
//! the cost unit the planners are measured in. Edges are validated by sampling
//! configurations along the segment at a fixed resolution, testing interior
//! midpoints before endpoints so a blocking obstacle near the middle of an
//! edge is found after very few checks.
//!
//! [`generate_scenario`] builds reproducible random worlds with a target
//! fraction of the cube covered by obstacles, estimated with a fixed probe
//! set so the recorded coverage is deterministic per seed.

use std::sync::atomic::{AtomicU64, Ordering};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{self, Config};

/// Closed axis-aligned box; configurations on the boundary collide.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Obstacle {
    pub lo: Config,
    pub hi: Config,
}

impl Obstacle {
    pub fn contains(&self, q: &[f64]) -> bool {
        self.lo
            .iter()
            .zip(self.hi.iter().zip(q))
            .all(|(lo, (hi, x))| *lo <= *x && *x <= *hi)
    }
}

/// Obstacle set with a built-in count of configuration tests.
#[derive(Debug)]
pub struct World {
    d: usize,
    obstacles: Vec<Obstacle>,
    checks: AtomicU64,
}

impl Clone for World {
    fn clone(&self) -> Self {
        Self {
            d: self.d,
            obstacles: self.obstacles.clone(),
            checks: AtomicU64::new(self.checks()),
        }
    }
}

/// Number of sampling intervals for a segment of length `len` validated at
/// `resolution`: `ceil(len / resolution)`, and 0 for a degenerate segment.
pub fn interval_count(len: f64, resolution: f64) -> usize {
    assert!(resolution > 0.0);
    (len / resolution).ceil() as usize
}

/// Order in which the `m + 1` sample indices of an edge are tested: repeated
/// interval bisection, breadth first, with the two endpoints last. For `m = 4`
/// the order is `2, 1, 3, 0, 4`.
pub fn bisection_order(m: usize) -> Vec<usize> {
    if m == 0 {
        return vec![0];
    }
    let mut order = Vec::with_capacity(m + 1);
    let mut queue = std::collections::VecDeque::new();
    queue.push_back((0usize, m));
    while let Some((lo, hi)) = queue.pop_front() {
        let mid = (lo + hi) / 2;
        if mid == lo || mid == hi {
            continue;
        }
        order.push(mid);
        queue.push_back((lo, mid));
        queue.push_back((mid, hi));
    }
    order.push(0);
    order.push(m);
    order
}

impl World {
    pub fn new(d: usize, obstacles: Vec<Obstacle>) -> Self {
        Self {
            d,
            obstacles,
            checks: AtomicU64::new(0),
        }
    }

    pub fn empty(d: usize) -> Self {
        Self::new(d, Vec::new())
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn obstacles(&self) -> &[Obstacle] {
        &self.obstacles
    }

    /// Tests one configuration, incrementing the check counter.
    pub fn is_config_free(&self, q: &[f64]) -> bool {
        self.checks.fetch_add(1, Ordering::Relaxed);
        !self.obstacles.iter().any(|o| o.contains(q))
    }

    /// Validates the straight segment from `u` to `v` by testing
    /// `ceil(len / resolution) + 1` evenly spaced configurations in bisection
    /// order, stopping at the first collision. Returns `true` when every
    /// tested configuration is free.
    pub fn check_edge(&self, u: &[f64], v: &[f64], resolution: f64) -> bool {
        self.check_edge_observed(u, v, resolution).0
    }

    /// Like [`check_edge`](Self::check_edge) but also returns every tested
    /// configuration with its outcome, in test order, so callers can feed the
    /// observations into a collision-belief model.
    pub fn check_edge_observed(
        &self,
        u: &[f64],
        v: &[f64],
        resolution: f64,
    ) -> (bool, Vec<(Config, bool)>) {
        let m = interval_count(geom::dist(u, v), resolution);
        let mut observed = Vec::with_capacity(m + 1);
        if m == 0 {
            let free = self.is_config_free(u);
            observed.push((u.to_vec(), free));
            return (free, observed);
        }
        for k in bisection_order(m) {
            let q = geom::lerp(u, v, k as f64 / m as f64);
            let free = self.is_config_free(&q);
            observed.push((q, free));
            if !free {
                return (false, observed);
            }
        }
        (true, observed)
    }

    /// Total configurations tested since construction or the last reset.
    pub fn checks(&self) -> u64 {
        self.checks.load(Ordering::Relaxed)
    }

    pub fn reset_checks(&self) {
        self.checks.store(0, Ordering::Relaxed);
    }
}

/// Inputs for [`generate_scenario`].
#[derive(Debug, Clone)]
pub struct ScenarioParams {
    pub d: usize,
    pub start: Config,
    pub goal: Config,
    /// Target fraction of the cube covered by obstacles. Zero or negative
    /// yields an empty world.
    pub xi_obs: f64,
    pub seed: u64,
    /// Edge validation resolution carried along with the scenario.
    pub resolution: f64,
}

/// A reproducible planning problem: world, query, and generation record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub d: usize,
    pub start: Config,
    pub goal: Config,
    pub xi_obs_target: f64,
    pub xi_obs_realized: f64,
    pub seed: u64,
    pub resolution: f64,
    pub obstacles: Vec<Obstacle>,
}

impl Scenario {
    /// Fresh world with a zeroed check counter.
    pub fn world(&self) -> World {
        World::new(self.d, self.obstacles.clone())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn save(&self, path: &std::path::Path) -> Result<()> {
        std::fs::write(path, self.to_json()? + "\n")?;
        Ok(())
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

const COVERAGE_PROBES: usize = 100_000;
const PROBE_SEED_SALT: u64 = 0x9E37_79B9_7F4A_7C15;
const MAX_PLACEMENT_TRIES: usize = 100;
/// Accepted overshoot of estimated coverage past the target.
const COVERAGE_SLACK: f64 = 0.05;

/// Places random boxes until the estimated covered fraction reaches
/// `xi_obs`, rejecting candidates that swallow the start or goal or push the
/// estimate past `xi_obs + 0.05`.
///
/// Coverage is estimated over a fixed set of 100 000 probe points drawn from
/// a seed derived from `params.seed`, and the fraction of probes covered by
/// the accepted boxes is recorded as `xi_obs_realized`. Targets of 0.9 and
/// above are rejected because placement cannot reliably terminate while
/// keeping the query free.
pub fn generate_scenario(params: &ScenarioParams) -> Result<Scenario> {
    let d = params.d;
    if d == 0 {
        return Err(Error::BadDimension(d));
    }
    geom::validate_config(&params.start, d)?;
    geom::validate_config(&params.goal, d)?;
    if params.xi_obs >= 0.9 {
        return Err(Error::CoverageTooHigh(params.xi_obs));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut probe_rng = ChaCha8Rng::seed_from_u64(params.seed ^ PROBE_SEED_SALT);
    let probes: Vec<Config> = (0..COVERAGE_PROBES)
        .map(|_| (0..d).map(|_| probe_rng.gen_range(0.0..=1.0)).collect())
        .collect();
    let mut covered = vec![false; COVERAGE_PROBES];
    let mut covered_count = 0usize;

    let max_half_width = (0.5 * params.xi_obs.max(0.0).powf(1.0 / d as f64)).max(0.01);
    let mut obstacles: Vec<Obstacle> = Vec::new();

    while (covered_count as f64) < params.xi_obs * COVERAGE_PROBES as f64 {
        let mut placed = false;
        for _ in 0..MAX_PLACEMENT_TRIES {
            let center: Config = (0..d).map(|_| rng.gen_range(0.0..=1.0)).collect();
            let half: Vec<f64> = (0..d)
                .map(|_| {
                    if max_half_width > 0.01 {
                        rng.gen_range(0.01..=max_half_width)
                    } else {
                        0.01
                    }
                })
                .collect();
            let candidate = Obstacle {
                lo: center
                    .iter()
                    .zip(&half)
                    .map(|(c, h)| (c - h).max(0.0))
                    .collect(),
                hi: center
                    .iter()
                    .zip(&half)
                    .map(|(c, h)| (c + h).min(1.0))
                    .collect(),
            };
            if candidate.contains(&params.start) || candidate.contains(&params.goal) {
                continue;
            }
            let newly: Vec<usize> = probes
                .iter()
                .enumerate()
                .filter(|&(i, p)| !covered[i] && candidate.contains(p))
                .map(|(i, _)| i)
                .collect();
            let after = (covered_count + newly.len()) as f64 / COVERAGE_PROBES as f64;
            if after > params.xi_obs + COVERAGE_SLACK {
                continue;
            }
            for i in newly {
                covered[i] = true;
                covered_count += 1;
            }
            obstacles.push(candidate);
            placed = true;
            break;
        }
        if !placed {
            return Err(Error::ObstaclePlacement {
                index: obstacles.len(),
                attempts: MAX_PLACEMENT_TRIES,
            });
        }
    }

    Ok(Scenario {
        d,
        start: params.start.clone(),
        goal: params.goal.clone(),
        xi_obs_target: params.xi_obs,
        xi_obs_realized: covered_count as f64 / COVERAGE_PROBES as f64,
        seed: params.seed,
        resolution: params.resolution,
        obstacles,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn box2(lo: [f64; 2], hi: [f64; 2]) -> Obstacle {
        Obstacle {
            lo: lo.to_vec(),
            hi: hi.to_vec(),
        }
    }

    fn params(xi: f64, seed: u64) -> ScenarioParams {
        ScenarioParams {
            d: 2,
            start: vec![0.05, 0.05],
            goal: vec![0.95, 0.95],
            xi_obs: xi,
            seed,
            resolution: 0.01,
        }
    }

    #[test]
    fn obstacle_boundary_collides() {
        let o = box2([0.2, 0.2], [0.4, 0.4]);
        assert!(o.contains(&[0.2, 0.3]));
        assert!(o.contains(&[0.4, 0.4]));
        assert!(o.contains(&[0.3, 0.3]));
        assert!(!o.contains(&[0.19999, 0.3]));
    }

    #[test]
    fn config_checks_are_counted() {
        let w = World::new(2, vec![box2([0.4, 0.4], [0.6, 0.6])]);
        assert!(w.is_config_free(&[0.1, 0.1]));
        assert!(!w.is_config_free(&[0.5, 0.5]));
        assert_eq!(w.checks(), 2);
        w.reset_checks();
        assert_eq!(w.checks(), 0);
    }

    #[test]
    fn bisection_order_is_a_permutation_with_endpoints_last() {
        for m in 1..40 {
            let order = bisection_order(m);
            assert_eq!(order.len(), m + 1);
            let mut sorted = order.clone();
            sorted.sort_unstable();
            assert_eq!(sorted, (0..=m).collect::<Vec<_>>());
            assert_eq!(order[m - 1], 0, "m={}", m);
            assert_eq!(order[m], m);
            if m >= 2 {
                assert_eq!(order[0], m / 2);
            }
        }
        assert_eq!(bisection_order(4), vec![2, 1, 3, 0, 4]);
        assert_eq!(bisection_order(0), vec![0]);
    }

    #[test]
    fn free_edge_tests_every_sample() {
        let w = World::empty(2);
        assert!(w.check_edge(&[0.0, 0.0], &[1.0, 0.0], 0.13));
        // ceil(1.0 / 0.13) + 1 = 9 configurations.
        assert_eq!(w.checks(), 9);
    }

    #[test]
    fn degenerate_edge_is_one_check() {
        let w = World::empty(3);
        assert!(w.check_edge(&[0.3; 3], &[0.3; 3], 0.1));
        assert_eq!(w.checks(), 1);
    }

    #[test]
    fn midpoint_obstacle_exits_after_one_check() {
        let w = World::new(2, vec![box2([0.45, -0.1], [0.55, 1.1])]);
        assert!(!w.check_edge(&[0.0, 0.5], &[1.0, 0.5], 0.1));
        assert_eq!(w.checks(), 1);
    }

    #[test]
    fn blocked_endpoints_are_tested_last() {
        // Only the left endpoint collides: every other sample is tested first.
        let w = World::new(2, vec![box2([0.0, 0.0], [0.01, 0.01])]);
        assert!(!w.check_edge(&[0.0, 0.0], &[1.0, 0.0], 0.25));
        // m = 4: order 2, 1, 3, 0 -> collision on the 4th test.
        assert_eq!(w.checks(), 4);
        // Only the right endpoint collides: all five samples are tested.
        let w = World::new(2, vec![box2([0.99, 0.0], [1.0, 0.01])]);
        assert!(!w.check_edge(&[0.0, 0.0], &[1.0, 0.0], 0.25));
        assert_eq!(w.checks(), 5);
    }

    #[test]
    fn edge_status_matches_linear_sweep_oracle() {
        use rand::Rng;
        use rand::SeedableRng;
        let scenario = generate_scenario(&params(0.3, 17)).unwrap();
        let w = scenario.world();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for _ in 0..200 {
            let u: Config = (0..2).map(|_| rng.gen_range(0.0..=1.0)).collect();
            let v: Config = (0..2).map(|_| rng.gen_range(0.0..=1.0)).collect();
            let m = interval_count(geom::dist(&u, &v), 0.05);
            let oracle_free = (0..=m).all(|k| {
                let q = geom::lerp(&u, &v, if m == 0 { 0.0 } else { k as f64 / m as f64 });
                !w.obstacles().iter().any(|o| o.contains(&q))
            });
            assert_eq!(w.check_edge(&u, &v, 0.05), oracle_free);
            assert_eq!(w.check_edge(&v, &u, 0.05), oracle_free);
        }
    }

    #[test]
    fn observed_check_reports_each_tested_config() {
        let w = World::new(2, vec![box2([0.45, -0.1], [0.55, 1.1])]);
        let (free, obs) = w.check_edge_observed(&[0.0, 0.5], &[1.0, 0.5], 0.25);
        assert!(!free);
        // m = 4, first bisection sample is the blocked midpoint.
        assert_eq!(obs.len(), 1);
        assert_eq!(obs[0], (vec![0.5, 0.5], false));

        let w = World::empty(2);
        let (free, obs) = w.check_edge_observed(&[0.0, 0.0], &[1.0, 0.0], 0.25);
        assert!(free);
        assert_eq!(obs.len(), 5);
        assert!(obs.iter().all(|(_, f)| *f));
        assert_eq!(obs.len() as u64, w.checks());
    }

    #[test]
    fn scenario_generation_is_deterministic() {
        let a = generate_scenario(&params(0.4, 5)).unwrap();
        let b = generate_scenario(&params(0.4, 5)).unwrap();
        let c = generate_scenario(&params(0.4, 6)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_eq!(a.to_json().unwrap(), b.to_json().unwrap());
    }

    #[test]
    fn scenario_round_trips_through_json() {
        let a = generate_scenario(&params(0.35, 11)).unwrap();
        let back = Scenario::from_json(&a.to_json().unwrap()).unwrap();
        assert_eq!(a, back);
        assert_eq!(a.to_json().unwrap(), back.to_json().unwrap());
    }

    #[test]
    fn realized_coverage_lands_in_the_accepted_band() {
        for seed in 0..8 {
            for &xi in &[0.2, 0.4, 0.6, 0.75] {
                let s = generate_scenario(&params(xi, seed)).unwrap();
                assert!(
                    s.xi_obs_realized >= xi && s.xi_obs_realized <= xi + COVERAGE_SLACK + 1e-12,
                    "seed {} xi {}: realized {}",
                    seed,
                    xi,
                    s.xi_obs_realized
                );
            }
        }
    }

    #[test]
    fn query_endpoints_stay_free() {
        for seed in 0..10 {
            let s = generate_scenario(&params(0.75, seed)).unwrap();
            let w = s.world();
            assert!(w.is_config_free(&s.start));
            assert!(w.is_config_free(&s.goal));
        }
    }

    #[test]
    fn zero_target_gives_empty_world() {
        let s = generate_scenario(&params(0.0, 3)).unwrap();
        assert!(s.obstacles.is_empty());
        assert_eq!(s.xi_obs_realized, 0.0);
    }

    #[test]
    fn excessive_target_is_rejected() {
        assert!(matches!(
            generate_scenario(&params(0.9, 1)),
            Err(Error::CoverageTooHigh(_))
        ));
    }
}
