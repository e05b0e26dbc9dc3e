//! Configurations in the unit hypercube and Euclidean geometry helpers.

use crate::error::{Error, Result};

/// A point in the unit hypercube `[0, 1]^d`, one coordinate per dimension.
pub type Config = Vec<f64>;

/// Euclidean distance between two configurations of equal dimension.
pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    dist_sq(a, b).sqrt()
}

/// Squared Euclidean distance; avoids the square root in inner loops.
pub fn dist_sq(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let t = x - y;
            t * t
        })
        .sum()
}

/// Point at parameter `t` in `[0, 1]` along the segment from `a` to `b`.
pub fn lerp(a: &[f64], b: &[f64], t: f64) -> Config {
    a.iter().zip(b).map(|(x, y)| x + (y - x) * t).collect()
}

/// Distance from point `q` to the segment `ab`.
pub fn dist_to_segment(q: &[f64], a: &[f64], b: &[f64]) -> f64 {
    let len_sq = dist_sq(a, b);
    if len_sq == 0.0 {
        return dist(q, a);
    }
    let t: f64 = q
        .iter()
        .zip(a.iter().zip(b))
        .map(|(qi, (ai, bi))| (qi - ai) * (bi - ai))
        .sum::<f64>()
        / len_sq;
    let t = t.clamp(0.0, 1.0);
    dist(q, &lerp(a, b, t))
}

/// Diameter of the unit hypercube, `sqrt(d)`.
pub fn cube_diameter(d: usize) -> f64 {
    (d as f64).sqrt()
}

/// Checks that `q` has dimension `d` and every coordinate lies in `[0, 1]`.
pub fn validate_config(q: &[f64], d: usize) -> Result<()> {
    if q.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: q.len(),
        });
    }
    for (axis, &value) in q.iter().enumerate() {
        if !(0.0..=1.0).contains(&value) || value.is_nan() {
            return Err(Error::OutOfUnitCube { axis, value });
        }
    }
    Ok(())
}

/// Total length of a polyline through `path` indices over `samples`.
pub fn path_length(samples: &[Config], path: &[usize]) -> f64 {
    path.windows(2)
        .map(|w| dist(&samples[w[0]], &samples[w[1]]))
        .sum()
}

/// Volume of the d-dimensional unit ball.
///
/// Uses the recurrence `V_d = 2*pi/d * V_{d-2}` with `V_0 = 1`, `V_1 = 2`.
pub fn unit_ball_volume(d: usize) -> f64 {
    match d {
        0 => 1.0,
        1 => 2.0,
        _ => 2.0 * std::f64::consts::PI / d as f64 * unit_ball_volume(d - 2),
    }
}
