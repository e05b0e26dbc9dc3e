//! Uniform-grid spatial index over points in the unit hypercube.
//!
//! Buckets point indices by grid cell so radius and k-nearest queries only
//! touch cells overlapping the query ball. Coordinates live in the caller's
//! point array and are passed to each query, so the same index can serve any
//! dense collection without copying. Query results are ordered
//! deterministically: radius queries sort by index, nearest-neighbour queries
//! by distance with index as tie-break.

use std::collections::HashMap;

use crate::geom::{dist_sq, Config};

#[derive(Debug, Clone)]
pub struct PointGrid {
    d: usize,
    cell: f64,
    per_axis: u64,
    cells: HashMap<u64, Vec<u32>>,
}

impl PointGrid {
    /// `cell` is the edge length of a grid cell; queries with radius close to
    /// `cell` touch at most 3 cells per axis.
    pub fn new(d: usize, cell: f64) -> Self {
        assert!(d >= 1);
        assert!(cell > 0.0 && cell.is_finite());
        let per_axis = (1.0 / cell).ceil().max(1.0) as u64;
        Self {
            d,
            cell,
            per_axis,
            cells: HashMap::new(),
        }
    }

    fn axis_cell(&self, x: f64) -> u64 {
        ((x / self.cell) as u64).min(self.per_axis - 1)
    }

    fn pack(&self, axis_cells: &[u64]) -> u64 {
        let mut key = 0u64;
        for &c in axis_cells {
            key = key * self.per_axis + c;
        }
        key
    }

    pub fn insert(&mut self, idx: u32, p: &[f64]) {
        debug_assert_eq!(p.len(), self.d);
        let axis_cells: Vec<u64> = p.iter().map(|&x| self.axis_cell(x)).collect();
        let key = self.pack(&axis_cells);
        self.cells.entry(key).or_default().push(idx);
    }

    /// Runs `visit` on every stored index whose cell overlaps the ball of
    /// radius `r` around `center`. Indices may repeat across calls only if
    /// they were inserted twice.
    fn for_candidates(&self, center: &[f64], r: f64, mut visit: impl FnMut(u32)) {
        debug_assert_eq!(center.len(), self.d);
        let mut lo = vec![0u64; self.d];
        let mut hi = vec![0u64; self.d];
        for a in 0..self.d {
            lo[a] = self.axis_cell((center[a] - r).max(0.0));
            hi[a] = self.axis_cell((center[a] + r).min(1.0));
        }
        let mut cursor = lo.clone();
        loop {
            if let Some(bucket) = self.cells.get(&self.pack(&cursor)) {
                for &idx in bucket {
                    visit(idx);
                }
            }
            // Odometer increment over the per-axis cell ranges.
            let mut axis = self.d;
            loop {
                if axis == 0 {
                    return;
                }
                axis -= 1;
                if cursor[axis] < hi[axis] {
                    cursor[axis] += 1;
                    break;
                }
                cursor[axis] = lo[axis];
            }
        }
    }

    /// Indices of points within distance `r` of `center`, ascending by index.
    pub fn radius_query(&self, points: &[Config], center: &[f64], r: f64) -> Vec<u32> {
        let r_sq = r * r;
        let mut out = Vec::new();
        self.for_candidates(center, r, |idx| {
            if dist_sq(&points[idx as usize], center) <= r_sq {
                out.push(idx);
            }
        });
        out.sort_unstable();
        out
    }

    /// Up to `k` nearest stored points within distance `r` of `center`,
    /// restricted to indices accepted by `keep`. Sorted by distance, then
    /// index, so equidistant points resolve the same way on every run.
    pub fn knn_within(
        &self,
        points: &[Config],
        center: &[f64],
        k: usize,
        r: f64,
        mut keep: impl FnMut(u32) -> bool,
    ) -> Vec<(f64, u32)> {
        let r_sq = r * r;
        let mut found: Vec<(f64, u32)> = Vec::new();
        self.for_candidates(center, r, |idx| {
            if !keep(idx) {
                return;
            }
            let sq = dist_sq(&points[idx as usize], center);
            if sq <= r_sq {
                found.push((sq, idx));
            }
        });
        if found.len() > k {
            found.select_nth_unstable_by(k, |a, b| {
                a.partial_cmp(b).expect("finite distances")
            });
            found.truncate(k);
        }
        found.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite distances"));
        for entry in &mut found {
            entry.0 = entry.0.sqrt();
        }
        found
    }

    pub fn len(&self) -> usize {
        self.cells.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_points(n: usize, d: usize, seed: u64) -> Vec<Config> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n)
            .map(|_| (0..d).map(|_| rng.gen_range(0.0..=1.0)).collect())
            .collect()
    }

    fn brute_radius(points: &[Config], center: &[f64], r: f64) -> Vec<u32> {
        let mut out: Vec<u32> = points
            .iter()
            .enumerate()
            .filter(|(_, p)| crate::geom::dist(p, center) <= r)
            .map(|(i, _)| i as u32)
            .collect();
        out.sort_unstable();
        out
    }

    fn brute_knn(points: &[Config], center: &[f64], k: usize, r: f64) -> Vec<(f64, u32)> {
        let mut all: Vec<(f64, u32)> = points
            .iter()
            .enumerate()
            .map(|(i, p)| (crate::geom::dist(p, center), i as u32))
            .filter(|&(dist, _)| dist <= r)
            .collect();
        all.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
        all.truncate(k);
        all
    }

    #[test]
    fn radius_query_matches_brute_force() {
        for d in 1..=4 {
            let points = random_points(300, d, 11 + d as u64);
            let mut grid = PointGrid::new(d, 0.15);
            for (i, p) in points.iter().enumerate() {
                grid.insert(i as u32, p);
            }
            let centers = random_points(20, d, 99 + d as u64);
            for (ci, c) in centers.iter().enumerate() {
                for &r in &[0.05, 0.15, 0.4, 2.5] {
                    assert_eq!(
                        grid.radius_query(&points, c, r),
                        brute_radius(&points, c, r),
                        "d={} center {} r={}",
                        d,
                        ci,
                        r
                    );
                }
            }
        }
    }

    #[test]
    fn knn_matches_brute_force() {
        let d = 3;
        let points = random_points(400, d, 5);
        let mut grid = PointGrid::new(d, 0.2);
        for (i, p) in points.iter().enumerate() {
            grid.insert(i as u32, p);
        }
        for c in &random_points(25, d, 6) {
            for &(k, r) in &[(1usize, 0.3), (5, 0.3), (15, 0.2), (50, 1.0)] {
                let got = grid.knn_within(&points, c, k, r, |_| true);
                let want = brute_knn(&points, c, k, r);
                assert_eq!(got.len(), want.len());
                for (g, w) in got.iter().zip(&want) {
                    assert_eq!(g.1, w.1);
                    assert!((g.0 - w.0).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn filter_excludes_indices() {
        let points = vec![vec![0.1, 0.1], vec![0.12, 0.1], vec![0.5, 0.5]];
        let mut grid = PointGrid::new(2, 0.25);
        for (i, p) in points.iter().enumerate() {
            grid.insert(i as u32, p);
        }
        let got = grid.knn_within(&points, &[0.1, 0.1], 10, 1.0, |i| i != 1);
        let ids: Vec<u32> = got.iter().map(|&(_, i)| i).collect();
        assert_eq!(ids, vec![0, 2]);
    }

    #[test]
    fn boundary_points_are_reachable() {
        let points = vec![vec![0.0, 0.0], vec![1.0, 1.0], vec![1.0, 0.0]];
        let mut grid = PointGrid::new(2, 0.3);
        for (i, p) in points.iter().enumerate() {
            grid.insert(i as u32, p);
        }
        assert_eq!(grid.radius_query(&points, &[0.0, 0.0], 0.01), vec![0]);
        assert_eq!(grid.radius_query(&points, &[1.0, 1.0], 0.01), vec![1]);
        assert_eq!(grid.radius_query(&points, &[0.5, 0.5], 2.0), vec![0, 1, 2]);
    }

    #[test]
    fn equidistant_ties_resolve_by_index() {
        let points = vec![vec![0.4, 0.5], vec![0.6, 0.5], vec![0.5, 0.5]];
        let mut grid = PointGrid::new(2, 0.5);
        for (i, p) in points.iter().enumerate() {
            grid.insert(i as u32, p);
        }
        let got = grid.knn_within(&points, &[0.5, 0.5], 2, 1.0, |_| true);
        assert_eq!(got[0].1, 2);
        assert_eq!(got[1].1, 0);
    }
}
