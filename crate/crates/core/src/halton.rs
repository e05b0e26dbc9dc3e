//! Deterministic low-discrepancy sampling of the unit hypercube.
//!
//! Points come from the Halton sequence: coordinate `j` of point `i` is the
//! radical inverse of `i` in the `j`-th prime base. Indices start at 1 so the
//! origin is never emitted. The module also provides a worst-case bound on the
//! dispersion of an `n`-point prefix, a brute-force grid estimate of the
//! dispersion actually achieved, and the path-quality factor implied by a
//! given dispersion and connection radius.

use crate::error::{Error, Result};
use crate::geom::Config;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Reverses the base-`b` digits of `index` across the radix point.
///
/// `radical_inverse(2, 6)` reverses `110` into `0.011` = `0.375`.
pub fn radical_inverse(base: u64, index: u64) -> f64 {
    let b = base as f64;
    let mut inv = 1.0 / b;
    let mut value = 0.0;
    let mut i = index;
    while i > 0 {
        value += (i % base) as f64 * inv;
        inv /= b;
        i /= base;
    }
    value
}

/// First `count` prime numbers, smallest first.
pub fn primes(count: usize) -> Vec<u64> {
    let mut found: Vec<u64> = Vec::with_capacity(count);
    let mut candidate: u64 = 2;
    while found.len() < count {
        if found.iter().all(|p| candidate % p != 0) {
            found.push(candidate);
        }
        candidate += 1;
    }
    found
}

/// Generator for the `d`-dimensional Halton sequence.
#[derive(Debug, Clone)]
pub struct HaltonSeq {
    d: usize,
    bases: Vec<u64>,
}

impl HaltonSeq {
    pub fn new(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::BadDimension(d));
        }
        Ok(Self {
            d,
            bases: primes(d),
        })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    /// Point at 1-based `index`. Index 0 maps every coordinate to the origin,
    /// which is not part of the sequence, so it is rejected.
    pub fn point(&self, index: u64) -> Result<Config> {
        if index == 0 {
            return Err(Error::HaltonIndexZero);
        }
        Ok(self
            .bases
            .iter()
            .map(|&b| radical_inverse(b, index))
            .collect())
    }

    /// First `n` points, indices 1 through `n`.
    pub fn prefix(&self, n: usize) -> Vec<Config> {
        (1..=n as u64)
            .map(|i| self.point(i).expect("index >= 1"))
            .collect()
    }

    /// First `n` points shifted by a random per-dimension offset modulo 1.
    ///
    /// The shift is drawn once from a counter-based RNG seeded with `seed`, so
    /// the same seed always yields the same point set. Shifting preserves the
    /// low-discrepancy structure while decorrelating repeated runs.
    pub fn prefix_shifted(&self, n: usize, seed: u64) -> Vec<Config> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shift: Vec<f64> = (0..self.d).map(|_| rng.gen_range(0.0..1.0)).collect();
        (1..=n as u64)
            .map(|i| {
                let p = self.point(i).expect("index >= 1");
                p.iter()
                    .zip(&shift)
                    .map(|(x, s)| {
                        let v = (x + s).fract();
                        if v >= 1.0 {
                            0.0
                        } else {
                            v
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

/// Worst-case dispersion of the first `n` Halton points in `d` dimensions:
/// `p_d * n^(-1/d)` where `p_d` is the `d`-th prime (the largest base used).
pub fn dispersion_bound(n: usize, d: usize) -> f64 {
    let p_d = *primes(d).last().expect("d >= 1") as f64;
    p_d * (n as f64).powf(-1.0 / d as f64)
}

/// Length inflation factor guaranteed when a roadmap with sample dispersion
/// `dispersion` is connected at radius `r`: `1 + 2D / (r - 2D)`.
///
/// The factor is only meaningful when `r` exceeds twice the dispersion;
/// otherwise the roadmap may fail to trace arbitrary paths and an error is
/// returned.
pub fn suboptimality_factor(dispersion: f64, r: f64) -> Result<f64> {
    let two_d = 2.0 * dispersion;
    if r <= two_d {
        return Err(Error::RadiusBelowDispersion { r, two_d });
    }
    Ok(1.0 + two_d / (r - two_d))
}

/// Grid field of squared distances to the nearest inserted point.
///
/// Supports incremental insertion so a sweep over growing prefixes reuses all
/// prior work: adding a point relaxes every grid node once, and measuring is a
/// scan for the maximum. Grid nodes include the cube boundary, where the
/// largest empty ball is often anchored.
pub struct DispersionField {
    d: usize,
    per_axis: usize,
    min_sq: Vec<f64>,
}

impl DispersionField {
    /// `per_axis` grid nodes along each axis, spaced `1/(per_axis-1)` apart.
    /// Only dimensions 1 through 3 are tractable for a dense grid.
    pub fn new(d: usize, per_axis: usize) -> Result<Self> {
        if d == 0 || d > 3 {
            return Err(Error::DispersionDimension(d));
        }
        assert!(per_axis >= 2, "need at least two grid nodes per axis");
        Ok(Self {
            d,
            per_axis,
            min_sq: vec![f64::INFINITY; per_axis.pow(d as u32)],
        })
    }

    fn node(&self, i: usize) -> f64 {
        i as f64 / (self.per_axis - 1) as f64
    }

    /// Relaxes every grid node against `p`.
    pub fn add_point(&mut self, p: &[f64]) {
        assert_eq!(p.len(), self.d);
        let m = self.per_axis;
        let axis_sq = |axis: usize| -> Vec<f64> {
            (0..m)
                .map(|i| {
                    let t = self.node(i) - p[axis];
                    t * t
                })
                .collect()
        };
        match self.d {
            1 => {
                let dx = axis_sq(0);
                for (cell, &sq) in self.min_sq.iter_mut().zip(&dx) {
                    if sq < *cell {
                        *cell = sq;
                    }
                }
            }
            2 => {
                let dx = axis_sq(0);
                let dy = axis_sq(1);
                for (ix, &sx) in dx.iter().enumerate() {
                    let row = &mut self.min_sq[ix * m..(ix + 1) * m];
                    for (cell, &sy) in row.iter_mut().zip(&dy) {
                        let sq = sx + sy;
                        if sq < *cell {
                            *cell = sq;
                        }
                    }
                }
            }
            3 => {
                let dx = axis_sq(0);
                let dy = axis_sq(1);
                let dz = axis_sq(2);
                for (ix, &sx) in dx.iter().enumerate() {
                    for (iy, &sy) in dy.iter().enumerate() {
                        let base = (ix * m + iy) * m;
                        let row = &mut self.min_sq[base..base + m];
                        for (cell, &sz) in row.iter_mut().zip(&dz) {
                            let sq = sx + sy + sz;
                            if sq < *cell {
                                *cell = sq;
                            }
                        }
                    }
                }
            }
            _ => unreachable!(),
        }
    }

    /// Largest distance from any grid node to its nearest inserted point.
    pub fn measure(&self) -> f64 {
        self.min_sq
            .iter()
            .fold(0.0_f64, |acc, &sq| acc.max(sq))
            .sqrt()
    }
}

/// Grid estimate of the dispersion of `points` in `[0, 1]^d`.
///
/// Evaluates the distance to the nearest point at `per_axis^d` grid nodes and
/// returns the maximum, a lower bound on the true dispersion that converges as
/// the grid refines. Dimensions above 3 are rejected.
pub fn measure_dispersion(points: &[Config], d: usize, per_axis: usize) -> Result<f64> {
    let mut field = DispersionField::new(d, per_axis)?;
    for p in points {
        field.add_point(p);
    }
    Ok(field.measure())
}
