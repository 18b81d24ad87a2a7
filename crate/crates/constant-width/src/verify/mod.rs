//! Cross-cutting invariant checks producing report entries: constant width,
//! convexity, r-convexity and homotopy continuity. All verdicts are sampled
//! and numerical; every entry carries its residual and tolerance.

pub mod hull;
pub mod report;

pub use hull::{convex_hull_2d, convex_hull_3d, signed_distance_to_hull_2d, Hull3d};
pub use report::{sha256_hex, CheckEntry, Provenance, VerificationReport, REPORT_SCHEMA_VERSION};

use crate::dual::omega_diameter;
use crate::geom::{DirectionSet, PointCloud};
use crate::median::ConstantWidthBody;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Two-sided constant-width check on a boundary sample: (A) the width in
/// every sampled direction is `r` within `tol`, and (B) the cloud diameter
/// does not exceed `r + tol`. Both must hold.
pub fn verify_constant_width(
    boundary: &PointCloud,
    r: f64,
    directions: &DirectionSet,
    tol: f64,
) -> CheckEntry {
    let dirs = directions.directions();
    let half = directions.half();
    let dev = |i: usize| ((omega_diameter(boundary, &dirs[i]) - r).abs(), i);
    let pick = |a: (f64, usize), b: (f64, usize)| {
        if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
            b
        } else {
            a
        }
    };
    #[cfg(feature = "parallel")]
    let (worst_dev, worst_i) = (0..half)
        .into_par_iter()
        .map(dev)
        .reduce(|| (0.0, 0), pick);
    #[cfg(not(feature = "parallel"))]
    let (worst_dev, worst_i) = (0..half).map(dev).fold((0.0, 0), pick);

    let diameter = boundary.diameter();
    let excess = (diameter - r).max(0.0);
    let residual = worst_dev.max(excess);
    CheckEntry::new("constant-width", residual, tol).with_witness(serde_json::json!({
        "worst_direction": dirs[worst_i].coords(),
        "width_deviation": worst_dev,
        "diameter": diameter,
    }))
}

/// Checks that every point of a boundary sample lies within `tol` of the
/// boundary of its own convex hull: no point may sit strictly inside (the
/// sample would not be a convex boundary) and none may protrude.
pub fn verify_convexity(boundary: &PointCloud, tol: f64) -> CheckEntry {
    match boundary.dim() {
        2 => match convex_hull_2d(boundary.points()) {
            Ok(hullidx) => {
                let dist = |p: &Vec<f64>| signed_distance_to_hull_2d(boundary.points(), &hullidx, p).abs();
                #[cfg(feature = "parallel")]
                let (worst, worst_p) = boundary
                    .points()
                    .par_iter()
                    .map(|p| (dist(p), p))
                    .reduce(
                        || (0.0, &boundary.points()[0]),
                        |a, b| if b.0 > a.0 { b } else { a },
                    );
                #[cfg(not(feature = "parallel"))]
                let (worst, worst_p) = boundary
                    .points()
                    .iter()
                    .map(|p| (dist(p), p))
                    .fold((0.0, &boundary.points()[0]), |a, b| if b.0 > a.0 { b } else { a });
                CheckEntry::new("convexity", worst, tol)
                    .with_witness(serde_json::json!({"farthest_point": worst_p}))
            }
            Err(e) => CheckEntry::failed(
                "convexity",
                serde_json::json!({"degenerate": true, "detail": e.to_string()}),
            ),
        },
        3 => match convex_hull_3d(boundary.points()) {
            Ok(hull) => {
                let dist = |p: &Vec<f64>| hull.signed_distance(p).abs();
                #[cfg(feature = "parallel")]
                let (worst, worst_p) = boundary
                    .points()
                    .par_iter()
                    .map(|p| (dist(p), p))
                    .reduce(
                        || (0.0, &boundary.points()[0]),
                        |a, b| if b.0 > a.0 { b } else { a },
                    );
                #[cfg(not(feature = "parallel"))]
                let (worst, worst_p) = boundary
                    .points()
                    .iter()
                    .map(|p| (dist(p), p))
                    .fold((0.0, &boundary.points()[0]), |a, b| if b.0 > a.0 { b } else { a });
                CheckEntry::new("convexity", worst, tol)
                    .with_witness(serde_json::json!({"farthest_point": worst_p}))
            }
            Err(e) => CheckEntry::failed(
                "convexity",
                serde_json::json!({"degenerate": true, "detail": e.to_string()}),
            ),
        },
        d => CheckEntry::failed(
            "convexity",
            serde_json::json!({"unsupported_dimension": d}),
        ),
    }
}

/// Samples boundary point pairs closer than `r` and checks that the minor
/// radius-`r` arcs between them (both candidate centers) stay inside the
/// hull within `tol`.
///
/// In 3D the arcs are restricted to planes through the pair and the cloud
/// centroid; the witness records that restriction.
pub fn verify_r_convexity(
    boundary: &PointCloud,
    r: f64,
    pair_budget: usize,
    tol: f64,
    rng_seed: u64,
) -> CheckEntry {
    let pts = boundary.points();
    let n = pts.len();
    let dim = boundary.dim();
    if n < 4 || !(2..=3).contains(&dim) {
        return CheckEntry::failed(
            "r-convexity",
            serde_json::json!({"unsupported": "need a planar or spatial cloud with >= 4 points"}),
        );
    }

    enum HullKind {
        Flat(Vec<usize>),
        Solid(Box<Hull3d>),
    }
    let hull = match dim {
        2 => match convex_hull_2d(pts) {
            Ok(h) => HullKind::Flat(h),
            Err(e) => {
                return CheckEntry::failed(
                    "r-convexity",
                    serde_json::json!({"degenerate": true, "detail": e.to_string()}),
                )
            }
        },
        _ => match convex_hull_3d(pts) {
            Ok(h) => HullKind::Solid(Box::new(h)),
            Err(e) => {
                return CheckEntry::failed(
                    "r-convexity",
                    serde_json::json!({"degenerate": true, "detail": e.to_string()}),
                )
            }
        },
    };
    let signed = |p: &[f64]| match &hull {
        HullKind::Flat(h) => signed_distance_to_hull_2d(pts, h, p),
        HullKind::Solid(h) => h.signed_distance(p),
    };

    let centroid: Vec<f64> = (0..dim)
        .map(|d| pts.iter().map(|p| p[d]).sum::<f64>() / n as f64)
        .collect();

    // deterministic pair sampling
    let mut state = rng_seed ^ 0x6A09E667F3BCC909;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(pair_budget);
    let mut attempts = 0usize;
    while pairs.len() < pair_budget && attempts < pair_budget * 20 {
        attempts += 1;
        let i = (next() % n as u64) as usize;
        let j = (next() % n as u64) as usize;
        if i == j {
            continue;
        }
        let d = boundary.norm().distance(&pts[i], &pts[j]);
        if d > 1e-9 && d < r {
            pairs.push((i, j));
        }
    }

    let arc_samples = 32;
    let check_pair = |&(i, j): &(usize, usize)| -> (f64, (usize, usize)) {
        let a = &pts[i];
        let b = &pts[j];
        let d = boundary.norm().distance(a, b);
        let mid: Vec<f64> = (0..dim).map(|k| 0.5 * (a[k] + b[k])).collect();
        // plane frame: e1 along the chord, e2 perpendicular (toward centroid
        // plane in 3D)
        let e1: Vec<f64> = (0..dim).map(|k| (b[k] - a[k]) / d).collect();
        let mut e2: Vec<f64> = match dim {
            2 => vec![-e1[1], e1[0]],
            _ => {
                let v: Vec<f64> = (0..dim).map(|k| centroid[k] - mid[k]).collect();
                let proj: f64 = v.iter().zip(&e1).map(|(x, y)| x * y).sum();
                (0..dim).map(|k| v[k] - proj * e1[k]).collect()
            }
        };
        let e2n = e2.iter().map(|x| x * x).sum::<f64>().sqrt();
        if e2n < 1e-12 {
            return (0.0, (i, j));
        }
        for x in e2.iter_mut() {
            *x /= e2n;
        }
        let h = (r * r - 0.25 * d * d).sqrt();
        let mut worst = 0.0f64;
        for side in [1.0, -1.0] {
            // center on one side; the minor arc bulges to the other side
            let center: Vec<f64> = (0..dim).map(|k| mid[k] + side * h * e2[k]).collect();
            let half_angle = (0.5 * d / r).asin();
            // angle of the chord endpoints seen from the center
            let base: Vec<f64> = (0..dim).map(|k| mid[k] - center[k]).collect();
            let base_n = base.iter().map(|x| x * x).sum::<f64>().sqrt();
            let u2: Vec<f64> = (0..dim).map(|k| base[k] / base_n).collect();
            for s in 0..=arc_samples {
                let phi = -half_angle + 2.0 * half_angle * s as f64 / arc_samples as f64;
                let p: Vec<f64> = (0..dim)
                    .map(|k| center[k] + r * (phi.cos() * u2[k] + phi.sin() * e1[k]))
                    .collect();
                worst = worst.max(signed(&p));
            }
        }
        (worst, (i, j))
    };

    #[cfg(feature = "parallel")]
    let (worst, pair) = pairs
        .par_iter()
        .map(check_pair)
        .reduce(|| (0.0, (0, 0)), |a, b| if b.0 > a.0 { b } else { a });
    #[cfg(not(feature = "parallel"))]
    let (worst, pair) = pairs
        .iter()
        .map(check_pair)
        .fold((0.0, (0, 0)), |a, b| if b.0 > a.0 { b } else { a });

    // in 3D only arcs in centroid planes are scanned; report the coverage
    let total_pairs = n * (n - 1) / 2;
    CheckEntry::new("r-convexity", worst, tol).with_witness(serde_json::json!({
        "pairs_checked": pairs.len(),
        "pair_coverage": pairs.len() as f64 / total_pairs.max(1) as f64,
        "worst_pair": [pair.0, pair.1],
        "planes_restricted": dim == 3,
    }))
}

/// Checks Hausdorff continuity of a homotopy family: consecutive distances
/// bounded by `L * delta_lambda + margin` with `L` the largest median-surface
/// magnitude over the shared samples.
pub fn verify_family_continuity(
    bodies: &[ConstantWidthBody],
    lambdas: &[f64],
    margin: f64,
) -> CheckEntry {
    if bodies.len() != lambdas.len() || bodies.len() < 2 {
        return CheckEntry::failed(
            "family-continuity",
            serde_json::json!({"reason": "need matching bodies and lambdas, at least two"}),
        );
    }
    let seed = bodies[0].seed();
    let samples = bodies[0].samples();
    let l = samples
        .directions()
        .iter()
        .map(|u| {
            seed.gradient(u)
                .map(|h| h.iter().map(|x| x * x).sum::<f64>().sqrt())
                .unwrap_or(f64::INFINITY)
        })
        .fold(0.0f64, f64::max);

    let mut residual = f64::NEG_INFINITY;
    let mut distances = Vec::with_capacity(bodies.len() - 1);
    for i in 0..bodies.len() - 1 {
        let d = bodies[i]
            .boundary_cloud()
            .hausdorff_distance(&bodies[i + 1].boundary_cloud())
            .unwrap_or(f64::INFINITY);
        let bound = l * (lambdas[i + 1] - lambdas[i]) + margin;
        distances.push(d);
        residual = residual.max(d - bound);
    }
    CheckEntry::new("family-continuity", residual.max(0.0), margin.max(1e-300))
        .with_witness(serde_json::json!({
            "median_surface_bound": l,
            "consecutive_distances": distances,
        }))
}
