use crate::error::{Error, Result};
use crate::geom::{Direction, DirectionSet};
use crate::median::seed::OddSeedFunction;
use std::sync::Arc;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How gradient values of a surface are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Analytic,
    FiniteDifference,
}

/// The median surface of a seed: the even, degree-0 homogeneous gradient map
/// `u -> H(u)`. For a body of width `r` built on it, `H(u)` is the midpoint
/// of the antipodal chord in direction `u`.
#[derive(Debug, Clone)]
pub struct MedianSurface {
    seed: Arc<OddSeedFunction>,
}

impl MedianSurface {
    pub fn new(seed: Arc<OddSeedFunction>) -> Self {
        Self { seed }
    }

    pub fn seed(&self) -> &Arc<OddSeedFunction> {
        &self.seed
    }

    pub fn eval(&self, u: &Direction) -> Result<Vec<f64>> {
        self.seed.gradient(u)
    }

    pub fn provenance(&self) -> Provenance {
        if self.seed.is_symbolic() {
            Provenance::Analytic
        } else {
            Provenance::FiniteDifference
        }
    }
}

/// A sampled critical width: twice the largest Hessian eigenvalue magnitude
/// over the direction set.
#[derive(Debug, Clone)]
pub struct RStar {
    pub value: f64,
    /// Direction attaining the extremal eigenvalue.
    pub worst_direction: Direction,
    pub sample_count: usize,
}

/// `r* = 2 max_u max |eigenvalue(hessian(g, u))|` over the samples.
///
/// Monotone nondecreasing under sample refinement, and exactly homogeneous:
/// `r_star(lambda g) = lambda r_star(g)` on the same samples.
pub fn r_star(seed: &OddSeedFunction, samples: &DirectionSet) -> Result<RStar> {
    let dirs = samples.directions();
    let eval = |i: usize| -> Result<(f64, usize)> {
        let ev = seed.hessian(&dirs[i])?.eigenvalues();
        let m = ev.iter().fold(0.0f64, |m, e| m.max(e.abs()));
        Ok((m, i))
    };
    let pick = |a: (f64, usize), b: (f64, usize)| {
        if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
            b
        } else {
            a
        }
    };
    #[cfg(feature = "parallel")]
    let worst = (0..dirs.len())
        .into_par_iter()
        .map(eval)
        .try_reduce(|| (0.0, usize::MAX), |a, b| Ok(pick(a, b)))?;
    #[cfg(not(feature = "parallel"))]
    let worst = {
        let mut acc = (0.0, usize::MAX);
        for i in 0..dirs.len() {
            acc = pick(acc, eval(i)?);
        }
        acc
    };
    let idx = if worst.1 == usize::MAX { 0 } else { worst.1 };
    Ok(RStar {
        value: 2.0 * worst.0,
        worst_direction: dirs[idx].clone(),
        sample_count: dirs.len(),
    })
}

/// Refines the sampling until the critical width moves by less than
/// `rel_tol` relative, or the sample cap is hit. Reports the final sampling.
pub fn r_star_refined(
    seed: &OddSeedFunction,
    initial_count: usize,
    rel_tol: f64,
    cap: usize,
) -> Result<RStar> {
    let scheme = match seed.dim() {
        2 => crate::geom::SphereScheme::UniformAngle2D,
        3 => crate::geom::SphereScheme::SubdividedIcosahedron,
        d => {
            return Err(Error::Config(format!(
                "no refinement scheme for dimension {d}"
            )))
        }
    };
    let mut count = initial_count.max(16);
    if count % 2 == 1 {
        count += 1;
    }
    let mut prev: Option<RStar> = None;
    loop {
        let samples = crate::geom::sample_sphere(seed.dim(), count, scheme)?;
        let current = r_star(seed, &samples)?;
        if let Some(p) = &prev {
            let scale = current.value.abs().max(1e-30);
            if (current.value - p.value).abs() <= rel_tol * scale {
                return Ok(current);
            }
        }
        if samples.len().saturating_mul(2) > cap {
            return Ok(current);
        }
        count = samples.len() * 2;
        prev = Some(current);
    }
}

/// Worst residual of the sampled median inequality
/// `u . (H(v) - H(u)) <= (r/4) |u - v|^2`.
#[derive(Debug, Clone)]
pub struct MedianInequalityReport {
    pub worst_residual: f64,
    pub worst_pair: (Direction, Direction),
    /// Nonstrict inequality holds on every sampled pair.
    pub satisfied: bool,
    /// Residual < -delta |u - v|^2 on every sampled pair with u != v.
    pub strictly_satisfied: bool,
}

/// Evaluates the inequality on explicit direction pairs.
pub fn check_median_inequality(
    surface: &MedianSurface,
    r: f64,
    pairs: &[(Direction, Direction)],
    delta: f64,
) -> Result<MedianInequalityReport> {
    if pairs.is_empty() {
        return Err(Error::Domain("no pairs to check".into()));
    }
    let mut worst = f64::NEG_INFINITY;
    let mut worst_pair = pairs[0].clone();
    let mut strict = true;
    for (u, v) in pairs {
        let hu = surface.eval(u)?;
        let hv = surface.eval(v)?;
        let (res, gap2) = residual(u, v, &hu, &hv, r);
        if res > worst {
            worst = res;
            worst_pair = (u.clone(), v.clone());
        }
        if gap2 > 0.0 && res >= -delta * gap2 {
            strict = false;
        }
    }
    Ok(MedianInequalityReport {
        worst_residual: worst,
        worst_pair,
        satisfied: worst <= 0.0,
        strictly_satisfied: strict,
    })
}

/// Evaluates the inequality on every ordered pair of a direction set, with
/// gradient values computed once per direction.
pub fn check_median_inequality_on_set(
    surface: &MedianSurface,
    r: f64,
    set: &DirectionSet,
    delta: f64,
) -> Result<MedianInequalityReport> {
    let dirs = set.directions();
    let n = dirs.len();
    let grads: Vec<Vec<f64>> = {
        #[cfg(feature = "parallel")]
        {
            (0..n)
                .into_par_iter()
                .map(|i| surface.eval(&dirs[i]))
                .collect::<Result<_>>()?
        }
        #[cfg(not(feature = "parallel"))]
        {
            (0..n)
                .map(|i| surface.eval(&dirs[i]))
                .collect::<Result<_>>()?
        }
    };
    // (residual, strict_ok, i, j); max residual with deterministic tie-break
    let row = |i: usize| {
        let mut best = (f64::NEG_INFINITY, usize::MAX, usize::MAX);
        let mut strict = true;
        for j in 0..n {
            if i == j {
                continue;
            }
            let (res, gap2) = residual(&dirs[i], &dirs[j], &grads[i], &grads[j], r);
            if res > best.0 {
                best = (res, i, j);
            }
            if gap2 > 0.0 && res >= -delta * gap2 {
                strict = false;
            }
        }
        (best, strict)
    };
    let merge = |a: ((f64, usize, usize), bool), b: ((f64, usize, usize), bool)| {
        let best = if b.0 .0 > a.0 .0 || (b.0 .0 == a.0 .0 && (b.0 .1, b.0 .2) < (a.0 .1, a.0 .2))
        {
            b.0
        } else {
            a.0
        };
        (best, a.1 && b.1)
    };
    let id = ((f64::NEG_INFINITY, usize::MAX, usize::MAX), true);
    #[cfg(feature = "parallel")]
    let (best, strict) = (0..n).into_par_iter().map(row).reduce(|| id, merge);
    #[cfg(not(feature = "parallel"))]
    let (best, strict) = (0..n).map(row).fold(id, merge);

    let (i, j) = (best.1.min(n - 1), best.2.min(n - 1));
    Ok(MedianInequalityReport {
        worst_residual: best.0,
        worst_pair: (dirs[i].clone(), dirs[j].clone()),
        satisfied: best.0 <= 0.0,
        strictly_satisfied: strict,
    })
}

fn residual(u: &Direction, v: &Direction, hu: &[f64], hv: &[f64], r: f64) -> (f64, f64) {
    let gap2: f64 = u
        .coords()
        .iter()
        .zip(v.coords())
        .map(|(a, b)| (a - b) * (a - b))
        .sum();
    let lhs: f64 = u
        .coords()
        .iter()
        .zip(hv.iter().zip(hu))
        .map(|(ui, (hvi, hui))| ui * (hvi - hui))
        .sum();
    (lhs - 0.25 * r * gap2, gap2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{sample_sphere, SphereScheme};

    #[test]
    fn r_star_of_zero_seed_is_zero() {
        let g = OddSeedFunction::symbolic(2, vec![]).unwrap();
        let s = sample_sphere(2, 64, SphereScheme::UniformAngle2D).unwrap();
        assert_eq!(r_star(&g, &s).unwrap().value, 0.0);
    }

    #[test]
    fn r_star_of_cos3theta_is_one() {
        // nonzero planar eigenvalue is a + a'' = -(1/2) cos(3 theta) at
        // eps = 1/16, maximized in magnitude at 1/2, so r* = 1
        let g = OddSeedFunction::cos3theta(1.0 / 16.0);
        let s = sample_sphere(2, 4096, SphereScheme::UniformAngle2D).unwrap();
        let rs = r_star(&g, &s).unwrap();
        assert!((rs.value - 1.0).abs() < 1e-3, "r* = {}", rs.value);
    }

    #[test]
    fn r_star_scales_exactly() {
        let g = OddSeedFunction::xyz(0.4);
        let s = sample_sphere(3, 642, SphereScheme::SubdividedIcosahedron).unwrap();
        let base = r_star(&g, &s).unwrap().value;
        let scaled = r_star(&g.scaled(0.37), &s).unwrap().value;
        assert!((scaled - 0.37 * base).abs() < 1e-14 * (1.0 + base));
    }

    #[test]
    fn refinement_converges_for_cos3theta() {
        let g = OddSeedFunction::cos3theta(1.0 / 16.0);
        let rs = r_star_refined(&g, 256, 1e-4, 65536).unwrap();
        assert!((rs.value - 1.0).abs() < 1e-4, "r* = {}", rs.value);
    }

    #[test]
    fn zero_surface_satisfies_strictly() {
        let g = Arc::new(OddSeedFunction::symbolic(2, vec![]).unwrap());
        let surface = MedianSurface::new(g);
        let s = sample_sphere(2, 64, SphereScheme::UniformAngle2D).unwrap();
        let rep = check_median_inequality_on_set(&surface, 1.0, &s, 0.0).unwrap();
        assert!(rep.satisfied);
        assert!(rep.strictly_satisfied);
        // worst residual is -(r/4) min |u - v|^2 < 0
        assert!(rep.worst_residual < 0.0);
    }

    #[test]
    fn inequality_sharp_around_r_star() {
        let g = Arc::new(OddSeedFunction::cos3theta(1.0 / 16.0));
        let surface = MedianSurface::new(g);
        let s = sample_sphere(2, 1024, SphereScheme::UniformAngle2D).unwrap();
        let above = check_median_inequality_on_set(&surface, 1.05, &s, 0.0).unwrap();
        assert!(above.satisfied, "worst {}", above.worst_residual);
        let below = check_median_inequality_on_set(&surface, 0.8, &s, 0.0).unwrap();
        assert!(!below.satisfied, "worst {}", below.worst_residual);
        assert!(below.worst_residual > 0.0);
    }
}
