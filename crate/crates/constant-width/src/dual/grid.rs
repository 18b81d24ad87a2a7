use crate::error::{Error, Result};
use crate::geom::PointCloud;

/// Default ceiling on the number of grid points.
pub const DEFAULT_GRID_BUDGET: usize = 10_000_000;

/// An axis-aligned lattice used to discretize duals and completions.
///
/// Coordinates are integer multiples of the step `h`, so clouds whose points
/// sit on the lattice are represented without rounding drift.
#[derive(Debug, Clone)]
pub struct GridDomain {
    h: f64,
    lo_index: Vec<i64>,
    steps: Vec<usize>, // number of points per axis
}

impl GridDomain {
    /// A grid with step `h` whose box strictly contains `cloud` inflated by
    /// `r` along every axis.
    pub fn from_cloud(cloud: &PointCloud, r: f64, h: f64) -> Result<Self> {
        Self::from_cloud_with_budget(cloud, r, h, DEFAULT_GRID_BUDGET)
    }

    pub fn from_cloud_with_budget(
        cloud: &PointCloud,
        r: f64,
        h: f64,
        budget: usize,
    ) -> Result<Self> {
        if h.is_nan() || h <= 0.0 {
            return Err(Error::Config(format!("grid step must be positive, got {h}")));
        }
        let dim = cloud.dim();
        let mut lo_index = Vec::with_capacity(dim);
        let mut steps = Vec::with_capacity(dim);
        let mut total: usize = 1;
        for d in 0..dim {
            let (mut mn, mut mx) = (f64::INFINITY, f64::NEG_INFINITY);
            for p in cloud.points() {
                mn = mn.min(p[d]);
                mx = mx.max(p[d]);
            }
            let lo = ((mn - r) / h).floor() as i64 - 1;
            let hi = ((mx + r) / h).ceil() as i64 + 1;
            let n = (hi - lo + 1) as usize;
            lo_index.push(lo);
            steps.push(n);
            total = total.saturating_mul(n);
            if total > budget {
                return Err(Error::Resource(format!(
                    "grid would need more than {budget} points (step {h} too fine for the box)"
                )));
            }
        }
        Ok(Self { h, lo_index, steps })
    }

    /// A grid step such that the box around `cloud` inflated by `r` spans at
    /// most `max_steps` lattice steps on its widest axis.
    pub fn default_step(cloud: &PointCloud, r: f64, max_steps: usize) -> f64 {
        let dim = cloud.dim();
        let mut widest = 0.0f64;
        for d in 0..dim {
            let (mut mn, mut mx) = (f64::INFINITY, f64::NEG_INFINITY);
            for p in cloud.points() {
                mn = mn.min(p[d]);
                mx = mx.max(p[d]);
            }
            widest = widest.max(mx - mn + 2.0 * r);
        }
        widest / max_steps as f64
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn dim(&self) -> usize {
        self.steps.len()
    }

    pub fn len(&self) -> usize {
        self.steps.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Quantization bound `h * sqrt(n)`: any point of the box is within this
    /// of a lattice point.
    pub fn quantization_bound(&self) -> f64 {
        self.h * (self.dim() as f64).sqrt()
    }

    pub fn point(&self, flat: usize) -> Vec<f64> {
        let mut rem = flat;
        let dim = self.dim();
        let mut p = vec![0.0; dim];
        for d in (0..dim).rev() {
            let k = rem % self.steps[d];
            rem /= self.steps[d];
            p[d] = (self.lo_index[d] + k as i64) as f64 * self.h;
        }
        p
    }

    /// Materializes all lattice points.
    pub fn points(&self) -> Vec<Vec<f64>> {
        (0..self.len()).map(|i| self.point(i)).collect()
    }
}
