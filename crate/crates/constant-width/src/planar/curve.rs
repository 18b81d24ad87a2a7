use crate::error::{Error, Result};
use crate::geom::{Norm, PointCloud};
use crate::planar::profile::BetaProfile;
use std::f64::consts::PI;

/// A sampled boundary curve `R(t)` of a planar constant-width body, with
/// `R(0) = (0, 0)` and `t` the normal angle over `[0, 2 pi]`.
///
/// The parameter grid is built as a half grid over `[0, pi)` followed by its
/// shift by `pi`, so the antipode of sample `i` is sample `i + half` with no
/// interpolation. A final sample at `2 pi` records the closure residual.
#[derive(Debug, Clone)]
pub struct PlanarCurve {
    ts: Vec<f64>,
    pts: Vec<[f64; 2]>,
    speeds: Vec<f64>,
    half: usize,
    r: f64,
    closure_tol: f64,
}

impl PlanarCurve {
    pub fn ts(&self) -> &[f64] {
        &self.ts
    }

    pub fn points(&self) -> &[[f64; 2]] {
        &self.pts
    }

    pub fn speeds(&self) -> &[f64] {
        &self.speeds
    }

    /// Number of samples in `[0, pi)`; sample `i + half` is the antipode of
    /// sample `i` for `i < half`.
    pub fn half(&self) -> usize {
        self.half
    }

    pub fn antipode_index(&self, i: usize) -> usize {
        if i < self.half {
            i + self.half
        } else {
            i - self.half
        }
    }

    pub fn width(&self) -> f64 {
        self.r
    }

    pub fn closure_tolerance(&self) -> f64 {
        self.closure_tol
    }

    /// `|R(2 pi) - R(0)|`, zero for admissible profiles up to quadrature.
    pub fn closure_residual(&self) -> f64 {
        let p = self.pts.last().unwrap();
        (p[0] * p[0] + p[1] * p[1]).sqrt()
    }

    pub fn is_closed(&self) -> bool {
        self.closure_residual() <= self.closure_tol
    }

    /// Boundary samples as a Euclidean cloud (the duplicate closing point is
    /// dropped).
    pub fn sample_cloud(&self) -> PointCloud {
        let pts: Vec<Vec<f64>> = self.pts[..self.pts.len() - 1]
            .iter()
            .map(|p| p.to_vec())
            .collect();
        PointCloud::new(pts, Norm::Euclidean).expect("nonempty")
    }

    /// A filled sample of the body: points along every antipodal chord.
    pub fn solid_cloud(&self, chord_steps: usize) -> PointCloud {
        let steps = chord_steps.max(1);
        let mut pts = Vec::with_capacity(self.half * (steps + 1));
        for i in 0..self.half {
            let a = self.pts[i];
            let b = self.pts[i + self.half];
            for s in 0..=steps {
                let t = s as f64 / steps as f64;
                pts.push(vec![
                    t * a[0] + (1.0 - t) * b[0],
                    t * a[1] + (1.0 - t) * b[1],
                ]);
            }
        }
        PointCloud::new(pts, Norm::Euclidean).expect("nonempty")
    }

    /// Largest deviation of an antipodal chord length from the width.
    pub fn chord_residual(&self) -> f64 {
        (0..self.half)
            .map(|i| {
                let a = self.pts[i];
                let b = self.pts[i + self.half];
                (((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt() - self.r).abs()
            })
            .fold(0.0, f64::max)
    }

    /// Representative points of the zero-speed parameter intervals: the
    /// vertices of polygonal profiles. Consecutive zero-speed samples are
    /// clustered and each cluster reports its first point.
    pub fn stationary_points(&self, speed_tol: f64) -> Vec<[f64; 2]> {
        let n = self.pts.len() - 1;
        let mut out: Vec<[f64; 2]> = Vec::new();
        let mut in_run = false;
        for i in 0..n {
            if self.speeds[i] <= speed_tol {
                if !in_run {
                    out.push(self.pts[i]);
                    in_run = true;
                }
            } else {
                in_run = false;
            }
        }
        // a run wrapping past 2 pi was already counted at its start
        if out.len() > 1 && self.speeds[0] <= speed_tol && self.speeds[n - 1] <= speed_tol {
            out.pop();
        }
        out
    }
}

/// Integrates the boundary curve of an admissible profile:
/// `R(t) = \int_0^t (r/2)(1 + beta(u)) (-sin u, cos u) du`.
///
/// Panel and trig-polynomial profiles use exact antiderivatives; callbacks
/// use composite Simpson with panels aligned to the declared breakpoints.
pub fn curve_from_beta(beta: &BetaProfile, r: f64, steps: usize) -> Result<PlanarCurve> {
    beta.validate(closure_integral_tolerance(beta, steps))?;
    curve_from_beta_unchecked(beta, r, steps)
}

/// The same integration without admissibility validation. Diagnostic only:
/// the output of a non-admissible profile does not close and bounds nothing.
pub fn curve_from_beta_unchecked(beta: &BetaProfile, r: f64, steps: usize) -> Result<PlanarCurve> {
    if r.is_nan() || r <= 0.0 {
        return Err(Error::Precondition(format!("width must be positive, got {r}")));
    }
    let m = steps.max(64).div_ceil(2);

    // half grid over [0, pi): uniform points plus the profile's breakpoints
    let mut half_ts: Vec<f64> = (0..m).map(|i| PI * i as f64 / m as f64).collect();
    half_ts.extend(beta.breaks().iter().copied().filter(|b| *b > 0.0 && *b < PI));
    half_ts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    half_ts.dedup();
    let half = half_ts.len();

    let mut ts = Vec::with_capacity(2 * half + 1);
    ts.extend_from_slice(&half_ts);
    ts.extend(half_ts.iter().map(|t| t + PI));
    ts.push(2.0 * PI);

    let speeds: Vec<f64> = ts.iter().map(|&t| 0.5 * r * (1.0 + beta.eval(t))).collect();
    if speeds.iter().any(|s| !s.is_finite()) {
        return Err(Error::Evaluation("profile produced a non-finite speed".into()));
    }

    let pts = match beta {
        BetaProfile::TrigPolynomial { harmonics } => ts
            .iter()
            .map(|&t| trig_position(harmonics, r, t))
            .collect(),
        BetaProfile::PiecewiseConstant { .. } => integrate_panels(beta, r, &ts),
        BetaProfile::Callback { .. } => integrate_simpson(beta, r, &ts),
    };

    let closure_tol = match beta {
        BetaProfile::Callback { .. } => 10.0 * r / (steps as f64 * steps as f64),
        _ => 1e-9 * r,
    };
    Ok(PlanarCurve {
        ts,
        pts,
        speeds,
        half,
        r,
        closure_tol,
    })
}

fn closure_integral_tolerance(beta: &BetaProfile, steps: usize) -> f64 {
    match beta {
        // quadrature-based validation needs headroom on rough callbacks
        BetaProfile::Callback { .. } => (10.0 / (steps as f64)).max(1e-7),
        _ => 1e-8,
    }
}

/// Exact position for trig-polynomial profiles.
///
/// The part from the constant 1 integrates to `(cos t - 1, sin t)`; each odd
/// harmonic k >= 3 contributes products of sines and cosines reduced to
/// frequencies k - 1 and k + 1.
fn trig_position(harmonics: &[crate::planar::profile::Harmonic], r: f64, t: f64) -> [f64; 2] {
    let mut x = t.cos() - 1.0;
    let mut y = t.sin();
    for h in harmonics {
        let k = h.k as f64;
        if h.k == 1 {
            // not admissible; integrate anyway for diagnostics
            x += h.cos_coeff * (-0.25) * (1.0 - (2.0 * t).cos())
                + h.sin_coeff * (-(0.5 * t - 0.25 * (2.0 * t).sin()));
            y += h.cos_coeff * (0.5 * t + 0.25 * (2.0 * t).sin())
                + h.sin_coeff * 0.25 * (1.0 - (2.0 * t).cos());
            continue;
        }
        x -= h.cos_coeff * int_cos_sin(k, t) + h.sin_coeff * int_sin_sin(k, t);
        y += h.cos_coeff * int_cos_cos(k, t) + h.sin_coeff * int_sin_cos(k, t);
    }
    [0.5 * r * x, 0.5 * r * y]
}

// Closed-form primitives from 0 to t for odd k >= 3, by product-to-sum.

/// `int_0^t cos(ku) sin(u) du`
pub(crate) fn int_cos_sin(k: f64, t: f64) -> f64 {
    let (km, kp) = (k - 1.0, k + 1.0);
    0.5 * ((1.0 - (kp * t).cos()) / kp - (1.0 - (km * t).cos()) / km)
}

/// `int_0^t sin(ku) sin(u) du`
pub(crate) fn int_sin_sin(k: f64, t: f64) -> f64 {
    let (km, kp) = (k - 1.0, k + 1.0);
    0.5 * ((km * t).sin() / km - (kp * t).sin() / kp)
}

/// `int_0^t cos(ku) cos(u) du`
pub(crate) fn int_cos_cos(k: f64, t: f64) -> f64 {
    let (km, kp) = (k - 1.0, k + 1.0);
    0.5 * ((km * t).sin() / km + (kp * t).sin() / kp)
}

/// `int_0^t sin(ku) cos(u) du`
pub(crate) fn int_sin_cos(k: f64, t: f64) -> f64 {
    let (km, kp) = (k - 1.0, k + 1.0);
    0.5 * ((1.0 - (kp * t).cos()) / kp + (1.0 - (km * t).cos()) / km)
}

/// Exact cumulative integration for panel profiles: within one panel the
/// integrand is `(r/2)(1 + c)(-sin u, cos u)` with constant `c`.
fn integrate_panels(beta: &BetaProfile, r: f64, ts: &[f64]) -> Vec<[f64; 2]> {
    let mut pts = Vec::with_capacity(ts.len());
    let mut x = 0.0;
    let mut y = 0.0;
    pts.push([0.0, 0.0]);
    for w in ts.windows(2) {
        let (a, b) = (w[0], w[1]);
        let c = beta.eval(0.5 * (a + b));
        let f = 0.5 * r * (1.0 + c);
        x += f * (b.cos() - a.cos());
        y += f * (b.sin() - a.sin());
        pts.push([x, y]);
    }
    pts
}

/// Composite Simpson between consecutive samples; the sample grid already
/// contains every declared breakpoint, and endpoint evaluations are nudged
/// inward so jumps at breakpoints read the correct side.
fn integrate_simpson(beta: &BetaProfile, r: f64, ts: &[f64]) -> Vec<[f64; 2]> {
    let f = |u: f64| {
        let s = 0.5 * r * (1.0 + beta.eval(u));
        [-s * u.sin(), s * u.cos()]
    };
    let mut pts = Vec::with_capacity(ts.len());
    let mut x = 0.0;
    let mut y = 0.0;
    pts.push([0.0, 0.0]);
    for w in ts.windows(2) {
        let (a, b) = (w[0], w[1]);
        let nudge = 1e-9 * (b - a);
        let fa = f(a + nudge);
        let fm = f(0.5 * (a + b));
        let fb = f(b - nudge);
        let h6 = (b - a) / 6.0;
        x += h6 * (fa[0] + 4.0 * fm[0] + fb[0]);
        y += h6 * (fa[1] + 4.0 * fm[1] + fb[1]);
        pts.push([x, y]);
    }
    pts
}

/// Arc length of a closed curve by chord summation.
pub fn barbier_perimeter(curve: &PlanarCurve) -> Result<f64> {
    if !curve.is_closed() {
        return Err(Error::Precondition(format!(
            "curve is open: closure residual {} exceeds {}",
            curve.closure_residual(),
            curve.closure_tolerance()
        )));
    }
    let mut sum = 0.0;
    for w in curve.pts.windows(2) {
        sum += ((w[1][0] - w[0][0]).powi(2) + (w[1][1] - w[0][1]).powi(2)).sqrt();
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::profile::{reuleaux_beta, BetaProfile, Harmonic};

    #[test]
    fn circle_profile_gives_circle() {
        let curve = curve_from_beta(&BetaProfile::circle(), 2.0, 512).unwrap();
        // all points at distance r/2 from the common center (-r/2 offset of R(0))
        let c = [-1.0, 0.0];
        for p in curve.points() {
            let d = ((p[0] - c[0]).powi(2) + (p[1] - c[1]).powi(2)).sqrt();
            assert!((d - 1.0).abs() < 1e-9, "point {p:?}");
        }
        assert!(curve.closure_residual() < 1e-12);
    }

    #[test]
    fn reuleaux_triangle_arcs_and_vertices() {
        let beta = reuleaux_beta(1).unwrap();
        let r = 1.0;
        let curve = curve_from_beta(&beta, r, 1200).unwrap();
        assert!(curve.is_closed());
        // three stationary vertices
        let verts = curve.stationary_points(1e-12);
        assert_eq!(verts.len(), 3);
        // vertices are pairwise at distance r
        for i in 0..3 {
            for j in (i + 1)..3 {
                let d = ((verts[i][0] - verts[j][0]).powi(2)
                    + (verts[i][1] - verts[j][1]).powi(2))
                .sqrt();
                assert!((d - r).abs() < 1e-12, "vertex gap {d}");
            }
        }
        // on beta = +1 panels the point moves on a circle of radius r about
        // the fixed center R(t) - r U(t)
        let mut centers: Vec<[f64; 2]> = Vec::new();
        for (i, &t) in curve.ts().iter().enumerate() {
            if t < PI / 3.0 - 1e-9 {
                let p = curve.points()[i];
                centers.push([p[0] - r * t.cos(), p[1] - r * t.sin()]);
            }
        }
        for c in &centers {
            assert!((c[0] - centers[0][0]).abs() < 1e-10);
            assert!((c[1] - centers[0][1]).abs() < 1e-10);
        }
    }

    #[test]
    fn antipodal_chords_have_length_r() {
        let beta = BetaProfile::trig_polynomial(vec![Harmonic {
            k: 3,
            cos_coeff: -1.0,
            sin_coeff: 0.0,
        }])
        .unwrap();
        let curve = curve_from_beta(&beta, 1.0, 4096).unwrap();
        assert!(curve.chord_residual() < 1e-8);
    }

    #[test]
    fn barbier_circle_and_cos3() {
        let curve = curve_from_beta(&BetaProfile::circle(), 1.0, 8192).unwrap();
        let p = barbier_perimeter(&curve).unwrap();
        assert!((p - PI).abs() < 1e-6, "perimeter {p}");

        let beta = BetaProfile::trig_polynomial(vec![Harmonic {
            k: 3,
            cos_coeff: -1.0,
            sin_coeff: 0.0,
        }])
        .unwrap();
        let curve = curve_from_beta(&beta, 1.0, 8192).unwrap();
        let p = barbier_perimeter(&curve).unwrap();
        assert!((p - PI).abs() < 1e-6, "perimeter {p}");
    }

    #[test]
    fn open_curve_is_an_error() {
        // injected closure violation: k = 1 harmonic
        let bad = BetaProfile::trig_polynomial(vec![Harmonic {
            k: 1,
            cos_coeff: 0.3,
            sin_coeff: 0.0,
        }])
        .unwrap();
        assert!(curve_from_beta(&bad, 1.0, 512).is_err());
        let curve = curve_from_beta_unchecked(&bad, 1.0, 512).unwrap();
        assert!(barbier_perimeter(&curve).is_err());
    }

    #[test]
    fn closure_residual_scales_linearly_with_violation() {
        // adding delta cos(t) to an admissible profile opens the curve
        // proportionally to delta
        let mut residuals = Vec::new();
        for &delta in &[1e-3, 2e-3, 4e-3] {
            let bad = BetaProfile::trig_polynomial(vec![
                Harmonic {
                    k: 3,
                    cos_coeff: -0.5,
                    sin_coeff: 0.0,
                },
                Harmonic {
                    k: 1,
                    cos_coeff: delta,
                    sin_coeff: 0.0,
                },
            ])
            .unwrap();
            let curve = curve_from_beta_unchecked(&bad, 1.0, 512).unwrap();
            residuals.push(curve.closure_residual());
        }
        let ratio10 = residuals[1] / residuals[0];
        let ratio21 = residuals[2] / residuals[1];
        assert!((ratio10 - 2.0).abs() < 1e-6, "ratio {ratio10}");
        assert!((ratio21 - 2.0).abs() < 1e-6);
    }

    #[test]
    fn speed_bounds_consecutive_chords() {
        let beta = reuleaux_beta(2).unwrap();
        let curve = curve_from_beta(&beta, 1.0, 2048).unwrap();
        for i in 0..curve.points().len() - 1 {
            let a = curve.points()[i];
            let b = curve.points()[i + 1];
            let chord = ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt();
            let dt = curve.ts()[i + 1] - curve.ts()[i];
            let bound = curve.speeds()[i].max(curve.speeds()[i + 1]) * dt * (1.0 + 1e-9) + 1e-12;
            assert!(chord <= bound, "chord {chord} > bound {bound} at {i}");
        }
    }

    #[test]
    fn simpson_path_matches_exact_path() {
        let exact = BetaProfile::trig_polynomial(vec![Harmonic {
            k: 5,
            cos_coeff: 0.4,
            sin_coeff: 0.3,
        }])
        .unwrap();
        let cb = BetaProfile::callback(
            |t: f64| 0.4 * (5.0 * t).cos() + 0.3 * (5.0 * t).sin(),
            vec![],
        );
        let a = curve_from_beta(&exact, 1.0, 2048).unwrap();
        let b = curve_from_beta(&cb, 1.0, 2048).unwrap();
        let d = a
            .sample_cloud()
            .hausdorff_distance(&b.sample_cloud())
            .unwrap();
        assert!(d < 1e-9, "paths differ by {d}");
    }
}
