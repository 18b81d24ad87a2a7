use crate::error::{Error, Result};
use crate::geom::{Direction, DirectionSet, Norm, PointCloud};
use crate::median::seed::OddSeedFunction;
use crate::median::surface::{r_star, MedianSurface};
use std::sync::Arc;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// A body of constant width `r` given by its boundary map
/// `G(u) = H(u) + (r/2) u` over an antipode-closed direction sample.
///
/// The antipodal chord identity `G(u) - G(-u) = r u` holds by construction,
/// which is one half of constant width; the other half (the cloud diameter
/// not exceeding `r`) is what the verification suite measures.
#[derive(Debug, Clone)]
pub struct ConstantWidthBody {
    r: f64,
    seed: Arc<OddSeedFunction>,
    lambda: f64,
    samples: DirectionSet,
    boundary: Vec<Vec<f64>>,
}

impl ConstantWidthBody {
    pub fn width(&self) -> f64 {
        self.r
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn dim(&self) -> usize {
        self.samples.dim()
    }

    pub fn seed(&self) -> &Arc<OddSeedFunction> {
        &self.seed
    }

    pub fn samples(&self) -> &DirectionSet {
        &self.samples
    }

    /// Boundary points aligned index-by-index with `samples()`.
    pub fn boundary_points(&self) -> &[Vec<f64>] {
        &self.boundary
    }

    pub fn boundary_cloud(&self) -> PointCloud {
        PointCloud::new(self.boundary.clone(), Norm::Euclidean).expect("nonempty boundary")
    }

    /// Boundary point for an arbitrary direction.
    pub fn eval(&self, u: &Direction) -> Result<Vec<f64>> {
        let h = self.seed.scaled(self.lambda).gradient(u)?;
        Ok(h.iter()
            .zip(u.coords())
            .map(|(hi, ui)| hi + 0.5 * self.r * ui)
            .collect())
    }

    /// Midpoint of the antipodal chord in direction `u`.
    pub fn median_point(&self, u: &Direction) -> Result<Vec<f64>> {
        self.seed.scaled(self.lambda).gradient(u)
    }

    /// A filled sample: points along every antipodal chord
    /// `t G(u) + (1 - t) G(-u)`.
    pub fn solid_cloud(&self, chord_steps: usize) -> PointCloud {
        let steps = chord_steps.max(1);
        let mut pts = Vec::with_capacity(self.samples.half() * (steps + 1));
        for (i, j) in self.samples.antipodal_pairs() {
            let a = &self.boundary[i];
            let b = &self.boundary[j];
            for s in 0..=steps {
                let t = s as f64 / steps as f64;
                pts.push(
                    a.iter()
                        .zip(b)
                        .map(|(x, y)| t * x + (1.0 - t) * y)
                        .collect(),
                );
            }
        }
        PointCloud::new(pts, Norm::Euclidean).expect("nonempty")
    }

    /// Largest violation of the chord identity `G(u) - G(-u) = r u` over the
    /// sampled directions.
    pub fn chord_residual(&self) -> f64 {
        let dirs = self.samples.directions();
        self.samples
            .antipodal_pairs()
            .map(|(i, j)| {
                let u = &dirs[i];
                let a = &self.boundary[i];
                let b = &self.boundary[j];
                a.iter()
                    .zip(b)
                    .zip(u.coords())
                    .map(|((x, y), ui)| (x - y - self.r * ui).powi(2))
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0, f64::max)
    }
}

/// Builds the body for `r` at least the sampled critical width.
///
/// Below that threshold the construction does not produce a convex body, so
/// the call fails and names the violating direction; use
/// [`build_body_override`] to inspect the degenerate geometry anyway.
pub fn build_body(
    seed: &Arc<OddSeedFunction>,
    r: f64,
    samples: &DirectionSet,
) -> Result<ConstantWidthBody> {
    let rs = r_star(seed, samples)?;
    if r < rs.value {
        return Err(Error::Precondition(format!(
            "r = {r} is below the sampled critical width {}; extremal eigenvalue at {:?}",
            rs.value,
            rs.worst_direction.coords()
        )));
    }
    assemble(seed, 1.0, r, samples)
}

/// Builds the boundary map without the critical-width gate. The output is
/// diagnostic geometry; no constant-width claim attaches to it.
pub fn build_body_override(
    seed: &Arc<OddSeedFunction>,
    r: f64,
    samples: &DirectionSet,
) -> Result<ConstantWidthBody> {
    assemble(seed, 1.0, r, samples)
}

fn assemble(
    seed: &Arc<OddSeedFunction>,
    lambda: f64,
    r: f64,
    samples: &DirectionSet,
) -> Result<ConstantWidthBody> {
    if r.is_nan() || r <= 0.0 {
        return Err(Error::Precondition(format!("width must be positive, got {r}")));
    }
    if samples.dim() != seed.dim() {
        return Err(Error::Domain("sample/seed dimension mismatch".into()));
    }
    let scaled = seed.scaled(lambda);
    let dirs = samples.directions();
    let point = |i: usize| -> Result<Vec<f64>> {
        let h = scaled.gradient(&dirs[i])?;
        Ok(h.iter()
            .zip(dirs[i].coords())
            .map(|(hi, ui)| hi + 0.5 * r * ui)
            .collect())
    };
    #[cfg(feature = "parallel")]
    let boundary: Vec<Vec<f64>> = (0..dirs.len())
        .into_par_iter()
        .map(point)
        .collect::<Result<_>>()?;
    #[cfg(not(feature = "parallel"))]
    let boundary: Vec<Vec<f64>> = (0..dirs.len()).map(point).collect::<Result<_>>()?;
    Ok(ConstantWidthBody {
        r,
        seed: Arc::clone(seed),
        lambda,
        samples: samples.clone(),
        boundary,
    })
}

/// The homotopy `lambda -> body(lambda g)`: a continuous family joining the
/// `r/2` ball (`lambda = 0`) to the full body (`lambda = 1`).
pub fn family(
    seed: &Arc<OddSeedFunction>,
    r: f64,
    lambdas: &[f64],
    samples: &DirectionSet,
) -> Result<Vec<ConstantWidthBody>> {
    if lambdas.is_empty() {
        return Err(Error::Domain("empty lambda list".into()));
    }
    if lambdas.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Precondition("lambdas must be sorted ascending".into()));
    }
    if lambdas.iter().any(|&l| !(0.0..=1.0).contains(&l)) {
        return Err(Error::Precondition("lambdas must lie in [0, 1]".into()));
    }
    let rs = r_star(seed, samples)?;
    if r < rs.value {
        return Err(Error::Precondition(format!(
            "r = {r} is below the sampled critical width {}",
            rs.value
        )));
    }
    lambdas
        .iter()
        .map(|&l| assemble(seed, l, r, samples))
        .collect()
}

/// The median surface of a body's seed, scaled consistently with the body.
pub fn surface_of(body: &ConstantWidthBody) -> MedianSurface {
    MedianSurface::new(Arc::new(body.seed.scaled(body.lambda)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{sample_sphere, SphereScheme};

    fn dirs2(n: usize) -> DirectionSet {
        sample_sphere(2, n, SphereScheme::UniformAngle2D).unwrap()
    }

    #[test]
    fn zero_seed_gives_the_ball() {
        let g = Arc::new(OddSeedFunction::symbolic(2, vec![]).unwrap());
        let s = dirs2(64);
        let body = build_body(&g, 2.0, &s).unwrap();
        for p in body.boundary_points() {
            let len = (p[0] * p[0] + p[1] * p[1]).sqrt();
            assert!((len - 1.0).abs() < 1e-12);
        }
        assert!(body.chord_residual() < 1e-12);
    }

    #[test]
    fn cos3theta_body_at_critical_width() {
        let g = Arc::new(OddSeedFunction::cos3theta(1.0 / 16.0));
        let s = dirs2(2048);
        let body = build_body(&g, 1.0, &s).unwrap();
        assert!(body.chord_residual() < 1e-9);
        // width 1 in all sampled directions: omega-diameter scan oracle
        let cloud = body.boundary_cloud();
        for (i, _) in s.antipodal_pairs().take(256) {
            let w = crate::dual::omega_diameter(&cloud, &s.directions()[i]);
            assert!((w - 1.0).abs() < 1e-9, "direction {i}: width {w}");
        }
    }

    #[test]
    fn below_critical_width_is_rejected_with_direction() {
        let g = Arc::new(OddSeedFunction::cos3theta(1.0 / 16.0));
        let s = dirs2(512);
        let err = build_body(&g, 0.8, &s).unwrap_err();
        let msg = format!("{err}");
        assert!(msg.contains("critical width"), "{msg}");
        assert!(build_body_override(&g, 0.8, &s).is_ok());
    }

    #[test]
    fn xyz_body_is_constant_diameter() {
        let g = Arc::new(OddSeedFunction::xyz(0.25));
        let s = sample_sphere(3, 642, SphereScheme::SubdividedIcosahedron).unwrap();
        let rs = r_star(&g, &s).unwrap();
        let body = build_body(&g, 1.1 * rs.value, &s).unwrap();
        let cloud = body.boundary_cloud();
        let d = cloud.diameter();
        assert!(d <= body.width() + 1e-9, "diameter {d} vs width {}", body.width());
        let check = crate::dual::is_constant_diameter(&cloud, body.width(), &s, 1e-6);
        assert!(check.constant, "deviation {}", check.worst_deviation);
    }

    #[test]
    fn family_starts_at_the_ball_and_ends_at_the_body() {
        let g = Arc::new(OddSeedFunction::cos3theta(1.0 / 16.0));
        let s = dirs2(256);
        let fam = family(&g, 1.0, &[0.0, 0.5, 1.0], &s).unwrap();
        for p in fam[0].boundary_points() {
            let len = (p[0] * p[0] + p[1] * p[1]).sqrt();
            assert!((len - 0.5).abs() < 1e-12);
        }
        let full = build_body(&g, 1.0, &s).unwrap();
        for (a, b) in fam[2].boundary_points().iter().zip(full.boundary_points()) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn family_validates_lambdas() {
        let g = Arc::new(OddSeedFunction::cos3theta(1.0 / 16.0));
        let s = dirs2(64);
        assert!(family(&g, 1.0, &[0.5, 0.2], &s).is_err());
        assert!(family(&g, 1.0, &[0.0, 1.5], &s).is_err());
    }

    #[test]
    fn consecutive_family_distance_bounded_by_gradient_magnitude() {
        let g = Arc::new(OddSeedFunction::cos3theta(1.0 / 16.0));
        let s = dirs2(512);
        let lambdas: Vec<f64> = (0..=10).map(|k| k as f64 / 10.0).collect();
        let fam = family(&g, 1.0, &lambdas, &s).unwrap();
        let max_h = s
            .directions()
            .iter()
            .map(|u| {
                let h = g.gradient(u).unwrap();
                (h[0] * h[0] + h[1] * h[1]).sqrt()
            })
            .fold(0.0f64, f64::max);
        for w in fam.windows(2) {
            let d = w[0]
                .boundary_cloud()
                .hausdorff_distance(&w[1].boundary_cloud())
                .unwrap();
            assert!(d <= 0.1 * max_h + 1e-9, "step distance {d}");
        }
    }
}
