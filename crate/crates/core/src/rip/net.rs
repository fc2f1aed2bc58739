//! Greedy `μ`-separated sets on the real unit sphere.
//!
//! Candidates are drawn uniformly from the sphere and admitted when farther
//! than `μ` from every admitted point. Construction stops after
//! `10^4 · max(1, |net|)` consecutive rejections; at that point the net is
//! flagged maximal. The flag is probabilistic: an uncovered region smaller
//! than roughly one part in the budget can survive. A complex `m`-sphere is
//! the real `2m`-sphere, so callers wanting it pass `2m`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::rng::{Role, SplitMix64};
use crate::sampling::dense_unit;

pub const NET_DIMENSION_CAP: usize = 8;

const BUDGET_PER_POINT: u64 = 10_000;

#[derive(Debug, Clone, PartialEq)]
pub struct SeparatedNet {
    pub m: usize,
    pub mu: f64,
    pub points: Vec<Vec<f64>>,
    pub maximal: bool,
}

fn dist_sq(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

impl SeparatedNet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `(1 + 2/μ)^{2m}`.
    pub fn cardinality_bound(&self) -> f64 {
        (1.0 + 2.0 / self.mu).powf(2.0 * self.m as f64)
    }

    pub fn min_pairwise_distance(&self) -> f64 {
        let mut best = f64::INFINITY;
        for (i, a) in self.points.iter().enumerate() {
            for b in &self.points[i + 1..] {
                best = best.min(dist_sq(a, b));
            }
        }
        best.sqrt()
    }

    /// Distance from `v` to its nearest net point.
    pub fn distance_to(&self, v: &[f64]) -> f64 {
        self.points
            .iter()
            .map(|p| dist_sq(p, v))
            .fold(f64::INFINITY, f64::min)
            .sqrt()
    }

    /// Fraction of `probes` uniform unit vectors within `μ` of the net.
    pub fn coverage(&self, probes: usize, seed: u64) -> f64 {
        let index = Grid::build(self);
        let hits = crate::par::map_indices(probes, |t| {
            let mut rng = SplitMix64::stream(seed, t as u64, Role::Trial);
            let v: Vec<f64> = dense_unit(&mut rng, self.m);
            index.any_within(&self.points, &v, self.mu)
        });
        hits.iter().filter(|h| **h).count() as f64 / probes as f64
    }
}

/// Uniform grid of cell width `μ` over `[-1, 1]^m`, used once the net is
/// large enough that a linear scan dominates.
struct Grid {
    m: usize,
    mu: f64,
    base: i64,
    cells: HashMap<u64, Vec<usize>>,
}

impl Grid {
    fn new(m: usize, mu: f64) -> Self {
        Self {
            m,
            mu,
            base: (2.0 / mu).ceil() as i64 + 1,
            cells: HashMap::new(),
        }
    }

    fn build(net: &SeparatedNet) -> Self {
        let mut g = Grid::new(net.m, net.mu);
        for (i, p) in net.points.iter().enumerate() {
            g.insert(p, i);
        }
        g
    }

    fn coords(&self, v: &[f64]) -> Vec<i64> {
        v.iter()
            .map(|x| (((x + 1.0) / self.mu).floor() as i64).clamp(0, self.base - 1))
            .collect()
    }

    fn key(&self, c: &[i64]) -> u64 {
        c.iter().fold(0u64, |acc, &x| acc * self.base as u64 + x as u64)
    }

    fn insert(&mut self, v: &[f64], i: usize) {
        let key = self.key(&self.coords(v));
        self.cells.entry(key).or_default().push(i);
    }

    fn any_within(&self, points: &[Vec<f64>], v: &[f64], r: f64) -> bool {
        let r2 = r * r;
        if points.len() < 3usize.pow(self.m as u32) {
            return points.iter().any(|p| dist_sq(p, v) <= r2);
        }
        let center = self.coords(v);
        let mut offset = vec![-1i64; self.m];
        loop {
            let cell: Vec<i64> = center.iter().zip(&offset).map(|(c, o)| c + o).collect();
            if cell.iter().all(|&c| (0..self.base).contains(&c)) {
                if let Some(members) = self.cells.get(&self.key(&cell)) {
                    if members.iter().any(|&i| dist_sq(&points[i], v) <= r2) {
                        return true;
                    }
                }
            }
            let mut d = 0;
            loop {
                if d == self.m {
                    return false;
                }
                offset[d] += 1;
                if offset[d] <= 1 {
                    break;
                }
                offset[d] = -1;
                d += 1;
            }
        }
    }
}

pub fn build_separated_net(m: usize, mu: f64, seed: u64) -> Result<SeparatedNet> {
    if m == 0 || m > NET_DIMENSION_CAP {
        return Err(Error::SizeGuard {
            size: m,
            cap: NET_DIMENSION_CAP,
        });
    }
    if !(mu > 0.0 && mu < 2.0) {
        return Err(Error::InvalidParameter(format!("mu = {mu} must lie in (0, 2)")));
    }
    let mut rng = SplitMix64::stream(seed, 0, Role::Trial);
    let mut points: Vec<Vec<f64>> = Vec::new();
    let mut grid = Grid::new(m, mu);
    let mut rejections = 0u64;
    loop {
        let budget = BUDGET_PER_POINT * points.len().max(1) as u64;
        if rejections >= budget {
            break;
        }
        let v: Vec<f64> = dense_unit(&mut rng, m);
        // Strict separation: admit only when every distance exceeds μ.
        if grid.any_within(&points, &v, mu) {
            rejections += 1;
        } else {
            grid.insert(&v, points.len());
            points.push(v);
            rejections = 0;
        }
    }
    if points.is_empty() {
        return Err(Error::BudgetExhaustedBeforeAnyPoint);
    }
    Ok(SeparatedNet {
        m,
        mu,
        points,
        maximal: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_dimensional_sphere_is_two_points() {
        let net = build_separated_net(1, 0.1, 0).unwrap();
        let mut pts: Vec<f64> = net.points.iter().map(|p| p[0]).collect();
        pts.sort_by(f64::total_cmp);
        assert_eq!(pts, vec![-1.0, 1.0]);
        assert!(net.maximal);
    }

    #[test]
    fn near_diameter_separation_allows_at_most_two() {
        for m in 1..=4 {
            let net = build_separated_net(m, 1.999, m as u64).unwrap();
            assert!(net.len() <= 2, "m = {m}: {}", net.len());
        }
    }

    #[test]
    fn circle_net_is_valid_and_covers() {
        let net = build_separated_net(2, 0.3, 4).unwrap();
        assert!(net.min_pairwise_distance() > 0.3);
        assert!((net.len() as f64) <= net.cardinality_bound());
        assert_eq!(net.coverage(10_000, 9), 1.0);
        for p in &net.points {
            let r: f64 = p.iter().map(|x| x * x).sum();
            assert!((r - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn grid_agrees_with_linear_scan() {
        let net = build_separated_net(3, 0.4, 2).unwrap();
        let grid = Grid::build(&net);
        let mut rng = SplitMix64::new(17);
        for _ in 0..2000 {
            let v: Vec<f64> = dense_unit(&mut rng, 3);
            for r in [0.2, 0.4, 0.6] {
                let scan = net.points.iter().any(|p| dist_sq(p, &v) <= r * r);
                // The grid only searches adjacent cells, so it is exact for r ≤ μ.
                if r <= net.mu {
                    assert_eq!(grid.any_within(&net.points, &v, r), scan);
                }
            }
        }
    }

    #[test]
    fn parameter_guards() {
        assert!(build_separated_net(9, 0.5, 0).is_err());
        assert!(build_separated_net(0, 0.5, 0).is_err());
        assert!(build_separated_net(2, 2.0, 0).is_err());
        assert!(build_separated_net(2, 0.0, 0).is_err());
    }
}
