//! Collision-belief model over configuration space.
//!
//! Every configuration tested during edge validation becomes a piece of
//! evidence: its location and whether it was free. The probability that an
//! untested configuration is free is estimated from its nearest evidence
//! points, inverse-distance weighted and blended with a fixed prior, and an
//! edge accumulates the negative log of that probability over its embedded
//! configurations as an obstruction measure.
//!
//! Evidence is append-only and versioned. Each insertion gets a version
//! number, and every roadmap vertex records the last version whose evidence
//! landed within the influence radius of one of its incident edges. Edge
//! measures are recomputed only when read and only against the evidence
//! visible at the reading version, then memoized, so evaluations never pay
//! for measure updates on edges the search is not going to look at. Reads are
//! indistinguishable from recomputing every influenced edge eagerly after
//! each insertion.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::geom::{self, Config};
use crate::spatial::PointGrid;
use crate::world::interval_count;

/// Largest influence radius used for evidence lookups. Evidence farther than
/// this from a configuration carries negligible inverse-distance weight, and
/// capping the radius keeps the set of edges influenced by one evaluation
/// local to it.
pub const R_PHI_MAX: f64 = 0.3;

const BELIEF_GRID_CELL: f64 = 0.15;

#[derive(Debug, Clone)]
pub struct BeliefParams {
    /// Evidence points consulted per query.
    pub k: usize,
    /// Prior probability that a configuration is obstructed.
    pub lambda: f64,
    /// Weight of the prior relative to the inverse-distance evidence weights.
    pub w_lambda: f64,
    /// Floor on evidence distance when forming inverse-distance weights.
    pub eps: f64,
}

impl Default for BeliefParams {
    fn default() -> Self {
        Self {
            k: 15,
            lambda: 0.5,
            w_lambda: 0.25,
            eps: 1e-9,
        }
    }
}

/// Influence radius of an edge of length `len` when evidence reaches
/// configurations within `r_phi`: a ball of this radius around each endpoint
/// covers every configuration within `r_phi` of the segment.
pub fn affected_radius(len: f64, r_phi: f64) -> f64 {
    (len * len / 4.0 + r_phi * r_phi).sqrt()
}

/// Result of inserting the observations from one edge evaluation.
#[derive(Debug, Clone)]
pub struct AppliedEvidence {
    /// Version assigned to the inserted evidence.
    pub version: u32,
    /// Number of observations that were new rather than repeats.
    pub inserted: usize,
}

#[derive(Debug, Clone)]
pub struct BeliefModel {
    d: usize,
    params: BeliefParams,
    configs: Vec<Config>,
    free: Vec<bool>,
    versions: Vec<u32>,
    grid: PointGrid,
    dedup: HashMap<Vec<u64>, u32>,
    version: u32,
    r_phi: f64,
    /// Influence radius in effect when each version was created.
    r_phi_history: Vec<f64>,
    /// Per roadmap vertex: last version whose evidence could change the
    /// measure of an edge incident to it.
    lav: Vec<u32>,
}

impl BeliefModel {
    pub fn new(d: usize, params: BeliefParams, r_phi: f64) -> Self {
        Self {
            d,
            params,
            configs: Vec::new(),
            free: Vec::new(),
            versions: Vec::new(),
            grid: PointGrid::new(d, BELIEF_GRID_CELL),
            dedup: HashMap::new(),
            version: 0,
            r_phi,
            r_phi_history: vec![r_phi],
            lav: Vec::new(),
        }
    }

    pub fn with_defaults(d: usize) -> Self {
        Self::new(d, BeliefParams::default(), R_PHI_MAX)
    }

    pub fn params(&self) -> &BeliefParams {
        &self.params
    }

    pub fn r_phi(&self) -> f64 {
        self.r_phi
    }

    /// Sets the influence radius used for future evidence versions. Existing
    /// memoized measures are unaffected: each version keeps the radius it was
    /// created under.
    pub fn set_r_phi(&mut self, r_phi: f64) {
        assert!(r_phi > 0.0 && r_phi.is_finite());
        self.r_phi = r_phi;
    }

    pub fn current_version(&self) -> u32 {
        self.version
    }

    pub fn evidence_len(&self) -> usize {
        self.configs.len()
    }

    pub fn evidence(&self, i: usize) -> (&[f64], bool) {
        (&self.configs[i], self.free[i])
    }

    /// Grows the per-vertex version stamps to cover `n` roadmap vertices.
    pub fn ensure_vertices(&mut self, n: usize) {
        if self.lav.len() < n {
            self.lav.resize(n, 0);
        }
    }

    /// Last version whose evidence influenced edges incident to `vertex`.
    pub fn last_affected(&self, vertex: u32) -> u32 {
        self.lav.get(vertex as usize).copied().unwrap_or(0)
    }

    /// Marks `vertices` as influenced by the current version.
    pub fn stamp_affected(&mut self, vertices: &[u32]) {
        for &v in vertices {
            self.ensure_vertices(v as usize + 1);
            self.lav[v as usize] = self.version;
        }
    }

    pub fn affected_radius(&self, len: f64) -> f64 {
        affected_radius(len, self.r_phi)
    }

    /// Inserts the observations of one edge evaluation as a new evidence
    /// version. Observations whose configuration was already recorded are
    /// skipped; if a repeat disagrees with the stored outcome the model is
    /// inconsistent and an error is returned. Returns `None` when every
    /// observation was a repeat, in which case no version is created and no
    /// measure can change.
    pub fn insert_observations(
        &mut self,
        observations: &[(Config, bool)],
    ) -> Result<Option<AppliedEvidence>> {
        // Validate the whole batch before touching the model so a rejected
        // batch leaves it unchanged.
        let mut batch: Vec<(Vec<u64>, usize)> = Vec::new();
        let mut batch_seen: HashMap<Vec<u64>, bool> = HashMap::new();
        for (i, (q, free)) in observations.iter().enumerate() {
            debug_assert_eq!(q.len(), self.d);
            let key: Vec<u64> = q.iter().map(|x| x.to_bits()).collect();
            if let Some(&existing) = self.dedup.get(&key) {
                if self.free[existing as usize] != *free {
                    return Err(Error::ContradictoryEvidence(q.clone()));
                }
                continue;
            }
            match batch_seen.get(&key) {
                Some(&earlier_free) => {
                    if earlier_free != *free {
                        return Err(Error::ContradictoryEvidence(q.clone()));
                    }
                }
                None => {
                    batch_seen.insert(key.clone(), *free);
                    batch.push((key, i));
                }
            }
        }
        if batch.is_empty() {
            return Ok(None);
        }
        self.version += 1;
        self.r_phi_history.push(self.r_phi);
        let inserted = batch.len();
        for (key, i) in batch {
            let slot = self.configs.len() as u32;
            let (q, free) = &observations[i];
            self.dedup.insert(key, slot);
            self.configs.push(q.clone());
            self.free.push(*free);
            self.versions.push(self.version);
            self.grid.insert(slot, q);
        }
        Ok(Some(AppliedEvidence {
            version: self.version,
            inserted,
        }))
    }

    /// Probability that configuration `q` is free, given the evidence visible
    /// at `version` and the influence radius that version was created under.
    pub fn prob_free_at(&self, q: &[f64], version: u32) -> f64 {
        let r = self.r_phi_history[version as usize];
        let neighbours = self.grid.knn_within(&self.configs, q, self.params.k, r, |i| {
            self.versions[i as usize] <= version
        });
        let mut num = self.params.w_lambda * self.params.lambda;
        let mut den = self.params.w_lambda;
        for (dist, idx) in neighbours {
            let w = 1.0 / dist.max(self.params.eps);
            if !self.free[idx as usize] {
                num += w;
            }
            den += w;
        }
        1.0 - num / den
    }

    /// Probability that `q` is free under all evidence inserted so far.
    pub fn prob_free(&self, q: &[f64]) -> f64 {
        self.prob_free_at(q, self.version)
    }

    /// Obstruction measure of the segment from `u` to `v` at `version`: the
    /// sum of `-ln(prob_free)` over its `ceil(len / resolution) + 1` embedded
    /// configurations.
    pub fn edge_measure_at(&self, u: &[f64], v: &[f64], resolution: f64, version: u32) -> f64 {
        let m = interval_count(geom::dist(u, v), resolution);
        let mut total = 0.0;
        for k in 0..=m {
            let t = if m == 0 { 0.0 } else { k as f64 / m as f64 };
            let q = geom::lerp(u, v, t);
            let rho = self.prob_free_at(&q, version).max(f64::MIN_POSITIVE);
            total += -rho.ln();
        }
        total
    }

    /// Obstruction measure of an untouched edge: every embedded configuration
    /// sits at the prior, so the sum collapses to a closed form.
    pub fn default_edge_measure(&self, len: f64, resolution: f64) -> f64 {
        let configs = interval_count(len, resolution) + 1;
        configs as f64 * -(1.0 - self.params.lambda).ln()
    }
}
