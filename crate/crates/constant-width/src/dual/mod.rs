//! The r-dual operator, diametrical maximality, greedy completion on grids,
//! the antipodal relation and constant-diameter tests.
//!
//! Continuous sets are represented by samples; every tolerance that involves
//! a grid adds the quantization bound `h * sqrt(n)`.

pub mod grid;

pub use grid::{GridDomain, DEFAULT_GRID_BUDGET};

use crate::error::{Error, Result};
use crate::geom::norm::lex_less;
use crate::geom::{Direction, DirectionSet, Norm, PointCloud};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

fn slack(r: f64) -> f64 {
    1e-12 * (1.0 + r.abs())
}

/// All grid points whose distance to every point of `c` is at most `r`:
/// the discretized intersection of the closed r-balls around `c`.
pub fn r_dual(c: &PointCloud, r: f64, grid: &GridDomain) -> Result<PointCloud> {
    if r.is_nan() || r <= 0.0 {
        return Err(Error::Precondition(format!("radius must be positive, got {r}")));
    }
    if grid.dim() != c.dim() {
        return Err(Error::Domain("grid/cloud dimension mismatch".into()));
    }
    let diam = c.diameter();
    if diam > r + grid.h() {
        return Err(Error::Precondition(format!(
            "cloud diameter {diam} exceeds r + h = {}",
            r + grid.h()
        )));
    }
    let points = dual_points(c, r, grid);
    if points.is_empty() {
        // a nonempty dual exists whenever diam(c) <= r, so the lattice missed it
        return Err(Error::Config(format!(
            "empty dual at step {}: grid too coarse, decrease h",
            grid.h()
        )));
    }
    PointCloud::new(points, c.norm())
}

fn dual_points(c: &PointCloud, r: f64, grid: &GridDomain) -> Vec<Vec<f64>> {
    let eps = slack(r);
    let keep = |i: usize| {
        let y = grid.point(i);
        let norm = c.norm();
        for p in c.points() {
            if norm.distance(p, &y) > r + eps {
                return None;
            }
        }
        Some(y)
    };
    #[cfg(feature = "parallel")]
    {
        (0..grid.len()).into_par_iter().filter_map(keep).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..grid.len()).filter_map(keep).collect()
    }
}

/// Outcome of the maximality test `C = C*_r`.
#[derive(Debug, Clone)]
pub struct MaximalityCheck {
    pub maximal: bool,
    /// Hausdorff distance between the cloud and its discretized dual.
    pub hausdorff: f64,
    /// `tol` plus the grid quantization bound.
    pub tolerance: f64,
    /// On failure, a dual point far from the cloud.
    pub witness: Option<Vec<f64>>,
}

/// Tests diametrical maximality by comparing `c` against its r-dual.
pub fn is_r_maximal(c: &PointCloud, r: f64, grid: &GridDomain, tol: f64) -> Result<MaximalityCheck> {
    let dual = r_dual(c, r, grid)?;
    let hausdorff = c.hausdorff_distance(&dual)?;
    let tolerance = tol + grid.quantization_bound();
    let maximal = hausdorff <= tolerance;
    let witness = if maximal {
        None
    } else {
        Some(farthest_from(&dual, c))
    };
    Ok(MaximalityCheck {
        maximal,
        hausdorff,
        tolerance,
        witness,
    })
}

fn farthest_from(candidates: &PointCloud, c: &PointCloud) -> Vec<f64> {
    let pts = candidates.points();
    let score = |i: usize| (c.d_minus(&pts[i]), i);
    let pick = |a: (f64, usize), b: (f64, usize)| {
        if b.0 > a.0 || (b.0 == a.0 && lex_less(&pts[b.1], &pts[a.1])) {
            b
        } else {
            a
        }
    };
    #[cfg(feature = "parallel")]
    let best = (0..pts.len())
        .into_par_iter()
        .map(score)
        .reduce(|| score(0), pick);
    #[cfg(not(feature = "parallel"))]
    let best = (0..pts.len()).map(score).fold(score(0), pick);
    pts[best.1].clone()
}

/// Greedy diametrical completion on a grid.
///
/// Repeatedly adjoins the dual grid point farthest from the current set
/// (lexicographic tie-break) until every admissible point is within
/// `h * sqrt(n)` of the set. The result contains `c`, has diameter at most
/// `r` up to rounding, and its dual is covered by the result within grid
/// tolerance. Completions are generally non-unique; this one is
/// grid-resolution dependent but deterministic.
pub fn complete_to_maximal(c: &PointCloud, r: f64, grid: &GridDomain) -> Result<PointCloud> {
    let diam = c.diameter();
    if diam > r + slack(r) {
        return Err(Error::Precondition(format!(
            "cloud diameter {diam} exceeds r = {r}; completion undefined"
        )));
    }
    let eps = slack(r);
    let stop = grid.quantization_bound();
    let norm = c.norm();

    // alive = dual of the growing set, with cached distance to the set
    let mut alive: Vec<(Vec<f64>, f64)> = {
        let base = dual_points(c, r, grid);
        let dmin = |y: &Vec<f64>| c.d_minus(y);
        #[cfg(feature = "parallel")]
        {
            base.into_par_iter().map(|y| (dmin(&y), y)).map(|(d, y)| (y, d)).collect()
        }
        #[cfg(not(feature = "parallel"))]
        {
            base.into_iter().map(|y| { let d = dmin(&y); (y, d) }).collect()
        }
    };
    let mut result = c.clone();

    loop {
        if alive.is_empty() {
            break;
        }
        let pick = |a: (f64, usize), b: (f64, usize)| {
            if b.0 > a.0 || (b.0 == a.0 && lex_less(&alive[b.1].0, &alive[a.1].0)) {
                b
            } else {
                a
            }
        };
        let score = |i: usize| (alive[i].1, i);
        #[cfg(feature = "parallel")]
        let (best_d, best_i) = (0..alive.len())
            .into_par_iter()
            .map(score)
            .reduce(|| score(0), pick);
        #[cfg(not(feature = "parallel"))]
        let (best_d, best_i) = (0..alive.len()).map(score).fold(score(0), pick);

        if best_d <= stop {
            break;
        }
        let y = alive[best_i].0.clone();
        let update = |(p, d): (Vec<f64>, f64)| {
            let dy = norm.distance(&p, &y);
            if dy > r + eps {
                None
            } else {
                Some((p, d.min(dy)))
            }
        };
        #[cfg(feature = "parallel")]
        {
            alive = alive.into_par_iter().filter_map(update).collect();
        }
        #[cfg(not(feature = "parallel"))]
        {
            alive = alive.into_iter().filter_map(update).collect();
        }
        result.push(y)?;
    }
    Ok(result)
}

/// Exact maximal box for the maximum norm: in `l-infinity` the r-maximal sets
/// are precisely the closed balls of radius `r/2`, so completion reduces to
/// choosing an axis box of side `r` containing the per-axis interval hull.
/// The box is centered on the hull; axes whose span equals `r` are forced.
pub fn complete_linf_exact(c: &PointCloud, r: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    if c.norm() != Norm::LInfinity {
        return Err(Error::Domain("exact completion requires the l-infinity norm".into()));
    }
    let dim = c.dim();
    let mut lo = Vec::with_capacity(dim);
    let mut hi = Vec::with_capacity(dim);
    for d in 0..dim {
        let (mut mn, mut mx) = (f64::INFINITY, f64::NEG_INFINITY);
        for p in c.points() {
            mn = mn.min(p[d]);
            mx = mx.max(p[d]);
        }
        if mx - mn > r + slack(r) {
            return Err(Error::Precondition(format!(
                "axis {d} spans {} which exceeds r = {r}",
                mx - mn
            )));
        }
        let center = 0.5 * (mn + mx);
        lo.push(center - 0.5 * r);
        hi.push(center + 0.5 * r);
    }
    Ok((lo, hi))
}

/// Index pairs of cloud points at distance `r` within `tol`, listed
/// symmetrically.
#[derive(Debug, Clone)]
pub struct AntipodalRelation {
    pub pairs: Vec<(usize, usize)>,
    pub tolerance: f64,
}

impl AntipodalRelation {
    /// Partners of point `i`.
    pub fn partners(&self, i: usize) -> Vec<usize> {
        self.pairs
            .iter()
            .filter(|(a, _)| *a == i)
            .map(|(_, b)| *b)
            .collect()
    }
}

/// All pairs within `tol` of distance `r`.
pub fn antipodal_relation(c: &PointCloud, r: f64, tol: f64) -> AntipodalRelation {
    let m = c.len();
    let row = |i: usize| {
        let mut out = Vec::new();
        for j in 0..m {
            if j != i && (c.norm().distance(&c.points()[i], &c.points()[j]) - r).abs() <= tol {
                out.push((i, j));
            }
        }
        out
    };
    #[cfg(feature = "parallel")]
    let pairs: Vec<(usize, usize)> = (0..m).into_par_iter().flat_map_iter(row).collect();
    #[cfg(not(feature = "parallel"))]
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(row).collect();
    AntipodalRelation {
        pairs,
        tolerance: tol,
    }
}

/// Result of the antipodal-condition test on a boundary sample.
#[derive(Debug, Clone)]
pub struct AntipodalCondition {
    pub holds: bool,
    /// Indices of boundary points with no partner at distance `r` within tol.
    pub violations: Vec<usize>,
}

/// Checks that every boundary point has a partner at distance within `tol`
/// of `r`.
pub fn check_antipodal_condition(boundary: &PointCloud, r: f64, tol: f64) -> AntipodalCondition {
    let m = boundary.len();
    let lonely = |i: usize| {
        let pi = &boundary.points()[i];
        let has = boundary
            .points()
            .iter()
            .enumerate()
            .any(|(j, pj)| j != i && (boundary.norm().distance(pi, pj) - r).abs() <= tol);
        if has {
            None
        } else {
            Some(i)
        }
    };
    #[cfg(feature = "parallel")]
    let violations: Vec<usize> = (0..m).into_par_iter().filter_map(lonely).collect();
    #[cfg(not(feature = "parallel"))]
    let violations: Vec<usize> = (0..m).filter_map(lonely).collect();
    AntipodalCondition {
        holds: violations.is_empty(),
        violations,
    }
}

/// Width of the cloud in direction `u`: `support(u) + support(-u)`.
pub fn omega_diameter(c: &PointCloud, u: &Direction) -> f64 {
    c.support(u).0 + c.support(&u.negated()).0
}

/// Outcome of the constant-diameter scan.
#[derive(Debug, Clone)]
pub struct ConstantDiameterCheck {
    pub constant: bool,
    pub worst_direction: Direction,
    pub worst_deviation: f64,
}

/// Checks `|omega_diameter(c, u) - r| <= tol` over an antipode-closed
/// direction set, reporting the argmax deviation.
pub fn is_constant_diameter(
    c: &PointCloud,
    r: f64,
    directions: &DirectionSet,
    tol: f64,
) -> ConstantDiameterCheck {
    // omega-diameter is even in u, so the half set suffices
    let dirs = directions.directions();
    let half = directions.half();
    let dev = |i: usize| (omega_diameter(c, &dirs[i]) - r).abs();
    let pick = |a: (f64, usize), b: (f64, usize)| {
        if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
            b
        } else {
            a
        }
    };
    let first = (dev(0), 0usize);
    #[cfg(feature = "parallel")]
    let worst = (0..half)
        .into_par_iter()
        .map(|i| (dev(i), i))
        .reduce(|| first, pick);
    #[cfg(not(feature = "parallel"))]
    let worst = (0..half).map(|i| (dev(i), i)).fold(first, pick);
    ConstantDiameterCheck {
        constant: worst.0 <= tol,
        worst_direction: dirs[worst.1].clone(),
        worst_deviation: worst.0,
    }
}
