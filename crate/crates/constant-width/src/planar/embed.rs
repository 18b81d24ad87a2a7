use crate::error::{Error, Result};
use crate::planar::curve::{curve_from_beta, PlanarCurve};
use crate::planar::profile::{mirror_extend_beta, simpson_with_breaks, BetaProfile, HalfProfile};
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

/// A plane curve piece parametrized by the angle of its unit normal, given
/// through its radius-of-curvature function `rho(t)` on `[0, theta_star]`.
#[derive(Clone)]
pub struct ArcPiece {
    pub theta_star: f64,
    rho: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl fmt::Debug for ArcPiece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ArcPiece")
            .field("theta_star", &self.theta_star)
            .finish_non_exhaustive()
    }
}

impl ArcPiece {
    pub fn new(theta_star: f64, rho: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            theta_star,
            rho: Arc::new(rho),
        }
    }

    /// A circular arc of the given radius spanning `theta_star`.
    pub fn circular(radius: f64, theta_star: f64) -> Self {
        Self::new(theta_star, move |_| radius)
    }

    /// Piecewise-linear radius data over sample pairs `(t, rho)`.
    pub fn from_samples(samples: Vec<(f64, f64)>) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::Config("need at least two (t, rho) samples".into()));
        }
        if samples.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::Config("sample parameters must increase".into()));
        }
        if samples[0].0 != 0.0 {
            return Err(Error::Config("samples must start at t = 0".into()));
        }
        let theta_star = samples.last().unwrap().0;
        let rho = move |t: f64| {
            let i = samples
                .windows(2)
                .position(|w| t <= w[1].0)
                .unwrap_or(samples.len() - 2);
            let (t0, r0) = samples[i];
            let (t1, r1) = samples[i + 1];
            r0 + (r1 - r0) * (t - t0) / (t1 - t0)
        };
        Ok(Self::new(theta_star, rho))
    }

    pub fn rho(&self, t: f64) -> f64 {
        (self.rho)(t)
    }

    /// The piece itself as points `P(t) = \int_0^t rho(u) (-sin u, cos u) du`,
    /// starting at the origin.
    pub fn points(&self, n: usize) -> Vec<[f64; 2]> {
        let m = n.max(64);
        let f = |u: f64| {
            let s = self.rho(u);
            [-s * u.sin(), s * u.cos()]
        };
        let mut pts = vec![[0.0, 0.0]];
        let mut x = 0.0;
        let mut y = 0.0;
        for i in 0..m {
            let a = self.theta_star * i as f64 / m as f64;
            let b = self.theta_star * (i + 1) as f64 / m as f64;
            let fa = f(a);
            let fm = f(0.5 * (a + b));
            let fb = f(b);
            let h6 = (b - a) / 6.0;
            x += h6 * (fa[0] + 4.0 * fm[0] + fb[0]);
            y += h6 * (fa[1] + 4.0 * fm[1] + fb[1]);
            pts.push([x, y]);
        }
        pts
    }
}

/// An embedding of a curve piece into the boundary of a constant-width body.
#[derive(Debug)]
pub struct EmbeddedArc {
    pub profile: BetaProfile,
    pub curve: PlanarCurve,
    /// The constant filler value used on `(theta_star, pi/2]`.
    pub filler: f64,
}

/// Embeds a curvature-bounded piece into the boundary of a body of width `r`.
///
/// The piece determines `beta = 2 rho / r - 1` on `[0, theta_star]`; the
/// remaining freedom on `(theta_star, pi/2]` is a single constant fixed in
/// closed form by the vanishing weighted-integral condition, and the mirror
/// extension does the rest. The `pi/3` cap on the normal-angle span is sharp:
/// the weighted measure of `[0, pi/3]` is exactly half, which is what keeps
/// the filler constant within `[-1, 1]`.
pub fn embed_arc(piece: &ArcPiece, r: f64, steps: usize) -> Result<EmbeddedArc> {
    if r.is_nan() || r <= 0.0 {
        return Err(Error::Precondition(format!("width must be positive, got {r}")));
    }
    let ts = piece.theta_star;
    if ts.is_nan() || ts <= 0.0 {
        return Err(Error::Precondition("the piece must span a positive angle".into()));
    }
    if ts > PI / 3.0 + 1e-12 {
        return Err(Error::Precondition(format!(
            "normal-angle span {ts} exceeds pi/3; longer pieces need not embed"
        )));
    }
    // admissibility of the curvature radii: 0 <= rho <= r
    let scan = 2048;
    for i in 0..=scan {
        let t = ts * i as f64 / scan as f64;
        let rho = piece.rho(t);
        if !(-1e-9..=r + 1e-9).contains(&rho) {
            return Err(Error::Precondition(format!(
                "radius of curvature {rho} at t = {t} is outside [0, {r}]"
            )));
        }
    }

    let rho = Arc::clone(&piece.rho);
    let beta_on_piece = move |t: f64| (2.0 * rho(t) / r - 1.0).clamp(-1.0, 1.0);

    // weighted integral of beta over the piece, d mu = sin t dt
    let weighted = {
        let f = |t: f64| beta_on_piece(t) * t.sin();
        simpson_with_breaks(&f, 0.0, ts, &[], 4096)
    };
    // mu((theta_star, pi/2]) = cos(theta_star) >= 1/2 >= mu([0, theta_star])
    let filler = -weighted / ts.cos();
    debug_assert!(filler.abs() <= 1.0 + 1e-9);
    let filler = filler.clamp(-1.0, 1.0);

    let half = HalfProfile::callback(
        move |t: f64| if t <= ts { beta_on_piece(t) } else { filler },
        vec![ts],
    );
    let profile = mirror_extend_beta(&half, 1e-7)?;
    let curve = curve_from_beta(&profile, r, steps)?;
    Ok(EmbeddedArc {
        profile,
        curve,
        filler,
    })
}

/// Distance from a point to a polyline, by segment projection.
pub fn min_distance_to_polyline(p: [f64; 2], poly: &[[f64; 2]]) -> f64 {
    let mut best = f64::INFINITY;
    for w in poly.windows(2) {
        let (a, b) = (w[0], w[1]);
        let dx = b[0] - a[0];
        let dy = b[1] - a[1];
        let len2 = dx * dx + dy * dy;
        let t = if len2 == 0.0 {
            0.0
        } else {
            ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / len2
        }
        .clamp(0.0, 1.0);
        let qx = a[0] + t * dx;
        let qy = a[1] + t * dy;
        best = best.min(((p[0] - qx).powi(2) + (p[1] - qy).powi(2)).sqrt());
    }
    best
}

/// Largest distance from the reconstructed piece to the embedded boundary:
/// the congruent-copy containment residual.
pub fn containment_residual(piece: &ArcPiece, embedded: &EmbeddedArc, samples: usize) -> f64 {
    let poly = embedded.curve.points();
    piece
        .points(samples)
        .into_iter()
        .map(|p| min_distance_to_polyline(p, poly))
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::curve::barbier_perimeter;

    #[test]
    fn circle_piece_completes_to_the_circle() {
        // an r/2 arc has beta = 0, the filler is 0, the body is the disc
        let piece = ArcPiece::circular(0.5, PI / 4.0);
        let out = embed_arc(&piece, 1.0, 4096).unwrap();
        assert!(out.filler.abs() < 1e-12);
        let p = barbier_perimeter(&out.curve).unwrap();
        assert!((p - PI).abs() < 1e-5);
        // circle of radius 1/2 about R(0) - (r/2) U(0) = (-1/2, 0)
        let c = [-0.5, 0.0];
        for q in out.curve.points() {
            let d = ((q[0] - c[0]).powi(2) + (q[1] - c[1]).powi(2)).sqrt();
            assert!((d - 0.5).abs() < 1e-9);
        }
    }

    #[test]
    fn full_radius_arc_gives_reuleaux_triangle() {
        let piece = ArcPiece::circular(1.0, PI / 3.0);
        let out = embed_arc(&piece, 1.0, 4096).unwrap();
        assert!((out.filler + 1.0).abs() < 1e-9, "filler {}", out.filler);
        // compare with the polygon profile curve
        let tri = crate::planar::profile::reuleaux_beta(1).unwrap();
        let tri_curve = curve_from_beta(&tri, 1.0, 4096).unwrap();
        let d = out
            .curve
            .sample_cloud()
            .hausdorff_distance(&tri_curve.sample_cloud())
            .unwrap();
        assert!(d < 1e-4, "distance to Reuleaux triangle {d}");
    }

    #[test]
    fn piece_is_contained_in_the_output_boundary() {
        let piece = ArcPiece::new(PI / 3.0, |t| 0.5 * (1.0 + (3.0 * t).sin()));
        let out = embed_arc(&piece, 1.0, 8192).unwrap();
        let poly = out.curve.points();
        for p in piece.points(512) {
            let d = min_distance_to_polyline(p, poly);
            assert!(d < 1e-6, "piece point {p:?} is {d} from the boundary");
        }
    }

    #[test]
    fn too_long_pieces_are_rejected() {
        let piece = ArcPiece::circular(1.0, PI / 3.0 + 0.01);
        assert!(matches!(
            embed_arc(&piece, 1.0, 512),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn out_of_range_curvature_is_rejected() {
        let piece = ArcPiece::circular(1.2, PI / 4.0);
        assert!(embed_arc(&piece, 1.0, 512).is_err());
        let negative = ArcPiece::new(PI / 4.0, |_| -0.1);
        assert!(embed_arc(&negative, 1.0, 512).is_err());
    }
}
