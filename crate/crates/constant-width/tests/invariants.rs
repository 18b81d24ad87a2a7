//! Cross-module property tests: set-distance inequalities, dual monotonicity,
//! the maximality / constant-diameter equivalence, homotopy continuity and
//! profile Fourier structure.

use constant_width::dual::{
    is_constant_diameter, is_r_maximal, omega_diameter, r_dual, GridDomain,
};
use constant_width::geom::{sample_sphere, Direction, Norm, PointCloud, SphereScheme, SymMatrix};
use constant_width::median::{build_body, family, r_star, OddSeedFunction};
use constant_width::planar::{curve_from_beta, reuleaux_beta, BetaProfile, Harmonic};
use constant_width::verify::{verify_constant_width, verify_family_continuity};
use proptest::prelude::*;
use std::sync::Arc;

fn cloud(points: Vec<Vec<f64>>) -> PointCloud {
    PointCloud::new(points, Norm::Euclidean).unwrap()
}

fn point2() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, 2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // d_minus shrinks and d_plus grows under set inclusion
    #[test]
    fn distance_monotonicity_under_inclusion(
        base in prop::collection::vec(point2(), 1..12),
        extra in prop::collection::vec(point2(), 1..12),
        x in point2(),
    ) {
        let c = cloud(base.clone());
        let mut all = base;
        all.extend(extra);
        let d = cloud(all);
        prop_assert!(d.d_minus(&x) <= c.d_minus(&x) + 1e-12);
        prop_assert!(c.d_plus(&x) <= d.d_plus(&x) + 1e-12);
        prop_assert!(c.d_minus(&x) <= c.d_plus(&x) + 1e-12);
    }

    // |d_plus(C, x) - d_plus(D, y)| <= hausdorff(C, D) + |x - y|
    #[test]
    fn lipschitz_bound_for_d_plus(
        a in prop::collection::vec(point2(), 1..10),
        b in prop::collection::vec(point2(), 1..10),
        x in point2(),
        y in point2(),
    ) {
        let c = cloud(a);
        let d = cloud(b);
        let h = c.hausdorff_distance(&d).unwrap();
        let gap = Norm::Euclidean.distance(&x, &y);
        let lhs = (c.d_plus(&x) - d.d_plus(&y)).abs();
        prop_assert!(lhs <= h + gap + 1e-12);
        let lhs_minus = (c.d_minus(&x) - d.d_minus(&y)).abs();
        prop_assert!(lhs_minus <= h + gap + 1e-12);
    }

    // support in u plus support in -u is the width in direction u
    #[test]
    fn support_pair_is_omega_diameter(
        pts in prop::collection::vec(point2(), 1..16),
        angle in 0.0f64..std::f64::consts::TAU,
    ) {
        let c = cloud(pts);
        let u = Direction::from_angle(angle);
        let w = c.support(&u).0 + c.support(&u.negated()).0;
        prop_assert!((w - omega_diameter(&c, &u)).abs() < 1e-12);
    }

    // jacobi reassembly and trace identity on random symmetric matrices
    #[test]
    fn eigensolver_reassembles(entries in prop::collection::vec(-5.0f64..5.0, 16)) {
        let rows: Vec<Vec<f64>> = (0..4).map(|i| entries[4 * i..4 * i + 4].to_vec()).collect();
        let m = SymMatrix::from_rows(&rows);
        let (vals, vecs) = m.eigen_decomposition();
        prop_assert!((m.trace() - vals.iter().sum::<f64>()).abs() < 1e-10);
        for i in 0..4 {
            for j in 0..4 {
                let s: f64 = (0..4).map(|k| vecs[k][i] * vals[k] * vecs[k][j]).sum();
                prop_assert!((s - m.get(i, j)).abs() < 1e-10);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    // C in D implies dual(D) in dual(C), on a shared grid
    #[test]
    fn dual_is_antitone(
        base in prop::collection::vec(point2(), 2..6),
        extra in prop::collection::vec(point2(), 1..4),
    ) {
        let scale = 0.3; // keep diameters safely below r = 1
        let shrink = |pts: &[Vec<f64>]| {
            pts.iter()
                .map(|p| p.iter().map(|v| v * scale).collect())
                .collect::<Vec<Vec<f64>>>()
        };
        let small = cloud(shrink(&base));
        let mut all = shrink(&base);
        all.extend(shrink(&extra));
        let big = cloud(all);
        let grid = GridDomain::from_cloud(&big, 1.0, 0.08).unwrap();
        let dual_small = r_dual(&small, 1.0, &grid).unwrap();
        let dual_big = r_dual(&big, 1.0, &grid).unwrap();
        // same lattice, so membership is exact point equality
        for p in dual_big.points() {
            prop_assert!(dual_small.points().contains(p));
        }
    }

    // C is contained in its dual exactly when C is r-bounded (grid slack)
    #[test]
    fn self_containment_iff_bounded(
        pts in prop::collection::vec(point2(), 2..8),
        r in 0.7f64..2.5,
    ) {
        let c = cloud(pts);
        let h = 0.05;
        let grid = GridDomain::from_cloud(&c, r, h).unwrap();
        if c.diameter() > r + h {
            // precondition fails loudly rather than returning a wrong dual
            prop_assert!(r_dual(&c, r, &grid).is_err());
        } else {
            let dual = r_dual(&c, r, &grid).unwrap();
            for p in c.points() {
                prop_assert!(dual.d_minus(p) <= grid.quantization_bound() + 1e-12);
            }
        }
    }

    // augmenting a cloud with midpoints leaves its dual unchanged
    #[test]
    fn dual_ignores_convex_combinations(pts in prop::collection::vec(point2(), 2..6)) {
        let scaled: Vec<Vec<f64>> = pts
            .iter()
            .map(|p| p.iter().map(|v| v * 0.3).collect())
            .collect();
        let c = cloud(scaled.clone());
        let mut augmented = scaled.clone();
        for i in 0..scaled.len() {
            for j in (i + 1)..scaled.len() {
                augmented.push(
                    scaled[i]
                        .iter()
                        .zip(&scaled[j])
                        .map(|(a, b)| 0.5 * (a + b))
                        .collect(),
                );
            }
        }
        let aug = cloud(augmented);
        let grid = GridDomain::from_cloud(&c, 1.0, 0.08).unwrap();
        let d1 = r_dual(&c, 1.0, &grid).unwrap();
        let d2 = r_dual(&aug, 1.0, &grid).unwrap();
        prop_assert_eq!(d1.points(), d2.points());
    }
}

/// Dense filled disc sample of radius `rad`.
fn disc_cloud(rad: f64, n: usize) -> PointCloud {
    let mut pts = Vec::new();
    for i in 0..=n {
        for j in 0..=n {
            let x = -rad + 2.0 * rad * i as f64 / n as f64;
            let y = -rad + 2.0 * rad * j as f64 / n as f64;
            if x * x + y * y <= rad * rad {
                pts.push(vec![x, y]);
            }
        }
    }
    cloud(pts)
}

/// Filled Reuleaux-triangle sample via antipodal chords.
fn reuleaux_solid(r: f64) -> PointCloud {
    let curve = curve_from_beta(&reuleaux_beta(1).unwrap(), r, 600).unwrap();
    curve.solid_cloud(60)
}

// is_r_maximal and is_constant_diameter agree on positive and negative
// fixtures, in both directions
#[test]
fn maximality_equals_constant_diameter_on_fixtures() {
    let dirs = sample_sphere(2, 256, SphereScheme::UniformAngle2D).unwrap();
    let h = 0.02;

    struct Fixture {
        name: &'static str,
        cloud: PointCloud,
        r: f64,
        expect: bool,
    }
    let fixtures = vec![
        Fixture {
            name: "filled disc",
            cloud: disc_cloud(0.5, 70),
            r: 1.0,
            expect: true,
        },
        Fixture {
            name: "filled reuleaux triangle",
            cloud: reuleaux_solid(1.0),
            r: 1.0,
            expect: true,
        },
        Fixture {
            name: "two points",
            cloud: cloud(vec![vec![0.0, 0.0], vec![1.0, 0.0]]),
            r: 1.0,
            expect: false,
        },
        Fixture {
            name: "square corners",
            cloud: cloud(vec![
                vec![0.0, 0.0],
                vec![1.0, 0.0],
                vec![1.0, 1.0],
                vec![0.0, 1.0],
            ]),
            r: 2.0f64.sqrt(),
            expect: false,
        },
    ];
    for f in fixtures {
        let grid = GridDomain::from_cloud(&f.cloud, f.r, h).unwrap();
        let max_tol = 0.04; // solid samples are ~0.017-dense; grid adds h sqrt(2)
        let maximal = is_r_maximal(&f.cloud, f.r, &grid, max_tol).unwrap();
        let constant = is_constant_diameter(&f.cloud, f.r, &dirs, max_tol);
        assert_eq!(
            maximal.maximal, f.expect,
            "{}: maximality {} (hausdorff {})",
            f.name, maximal.maximal, maximal.hausdorff
        );
        assert_eq!(
            constant.constant, f.expect,
            "{}: constant diameter {} (deviation {})",
            f.name, constant.constant, constant.worst_deviation
        );
    }
}

// every family member, including the limit, has constant diameter
#[test]
fn family_members_and_limit_have_constant_diameter() {
    let seed = Arc::new(OddSeedFunction::cos3theta(1.0 / 16.0));
    let dirs = sample_sphere(2, 1024, SphereScheme::UniformAngle2D).unwrap();
    let lambdas = [0.0, 0.25, 0.5, 0.75, 1.0];
    let bodies = family(&seed, 1.0, &lambdas, &dirs).unwrap();
    for (body, l) in bodies.iter().zip(&lambdas) {
        let check = is_constant_diameter(&body.boundary_cloud(), 1.0, &dirs, 1e-9);
        assert!(check.constant, "lambda {l}: deviation {}", check.worst_deviation);
    }
}

// refinement of the homotopy grid halves the largest consecutive distance;
// the direction sampling must be dense enough that cloud Hausdorff distances
// do not bottom out at the sample spacing
#[test]
fn family_refinement_halves_consecutive_distances() {
    let seed = Arc::new(OddSeedFunction::cos3theta(1.0 / 16.0));
    let dirs = sample_sphere(2, 16384, SphereScheme::UniformAngle2D).unwrap();
    let max_step = |lambdas: &[f64]| {
        let bodies = family(&seed, 1.0, lambdas, &dirs).unwrap();
        bodies
            .windows(2)
            .map(|w| {
                w[0].boundary_cloud()
                    .hausdorff_distance(&w[1].boundary_cloud())
                    .unwrap()
            })
            .fold(0.0f64, f64::max)
    };
    let coarse: Vec<f64> = (0..=10).map(|i| i as f64 / 10.0).collect();
    let fine: Vec<f64> = (0..=20).map(|i| i as f64 / 20.0).collect();
    let (dc, df) = (max_step(&coarse), max_step(&fine));
    assert!(
        (df - 0.5 * dc).abs() <= 0.1 * 0.5 * dc,
        "coarse {dc}, fine {df}"
    );
}

// metric consistency of the family distances
#[test]
fn family_distances_satisfy_triangle_inequality() {
    let seed = Arc::new(OddSeedFunction::cos3theta(1.0 / 16.0));
    let dirs = sample_sphere(2, 512, SphereScheme::UniformAngle2D).unwrap();
    let bodies = family(&seed, 1.0, &[0.0, 0.5, 1.0], &dirs).unwrap();
    let d = |a: usize, b: usize| {
        bodies[a]
            .boundary_cloud()
            .hausdorff_distance(&bodies[b].boundary_cloud())
            .unwrap()
    };
    assert!(d(0, 2) <= d(0, 1) + d(1, 2) + 1e-9);
    let entry = verify_family_continuity(&bodies, &[0.0, 0.5, 1.0], 1e-9);
    assert!(entry.passed, "{}", entry.residual);
}

// median surface is even; Hessian spectra at u and -u are negatives
#[test]
fn median_surface_symmetries() {
    let seeds = [
        OddSeedFunction::cos3theta(1.0 / 16.0),
        OddSeedFunction::xyz(0.3),
        OddSeedFunction::random_odd_cubic(0.15, 23),
    ];
    for seed in &seeds {
        let dirs = match seed.dim() {
            2 => sample_sphere(2, 64, SphereScheme::UniformAngle2D).unwrap(),
            _ => sample_sphere(3, 162, SphereScheme::SubdividedIcosahedron).unwrap(),
        };
        for u in dirs.directions().iter().take(60) {
            let h_pos = seed.gradient(u).unwrap();
            let h_neg = seed.gradient(&u.negated()).unwrap();
            for (a, b) in h_pos.iter().zip(&h_neg) {
                assert!((a - b).abs() < 1e-9, "gradient must be even");
            }
            let ev_pos = seed.hessian(u).unwrap().eigenvalues();
            let mut ev_neg = seed.hessian(&u.negated()).unwrap().eigenvalues();
            ev_neg.reverse();
            for (a, b) in ev_pos.iter().zip(&ev_neg) {
                assert!((a + b).abs() < 1e-8, "spectra at antipodes mirror");
            }
        }
    }
}

// the tangent map of the median surface lands in the tangent plane
#[test]
fn median_surface_tangency() {
    let seed = OddSeedFunction::xyz(0.3);
    let eps = 1e-6;
    let dirs = sample_sphere(3, 42, SphereScheme::SubdividedIcosahedron).unwrap();
    for u in dirs.directions() {
        // any v orthogonal to u
        let c = u.coords();
        let raw = if c[0].abs() < 0.9 {
            [1.0, 0.0, 0.0]
        } else {
            [0.0, 1.0, 0.0]
        };
        let dot: f64 = c.iter().zip(&raw).map(|(a, b)| a * b).sum();
        let v: Vec<f64> = (0..3).map(|i| raw[i] - dot * c[i]).collect();
        let vn = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        let v: Vec<f64> = v.iter().map(|x| x / vn).collect();

        let h0 = seed.gradient(u).unwrap();
        let shifted: Vec<f64> = (0..3).map(|i| c[i] + eps * v[i]).collect();
        let h1 = seed.gradient_at(&shifted).unwrap();
        let deriv_along_u: f64 = (0..3).map(|i| c[i] * (h1[i] - h0[i]) / eps).sum();
        assert!(deriv_along_u.abs() < 1e-5, "tangency residual {deriv_along_u}");
    }
}

// rotating the seed rotates the body pointwise
#[test]
fn rotation_equivariance_of_bodies() {
    // a fixed rotation built from an axis-angle pair
    let axis = {
        let v = [0.36f64, -0.48, 0.8];
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        [v[0] / n, v[1] / n, v[2] / n]
    };
    let angle = 0.83f64;
    let (s, c) = angle.sin_cos();
    let mut o = vec![vec![0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let eps = |i: usize, j: usize, k: usize| match (i, j, k) {
                (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
                (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
                _ => 0.0,
            };
            let skew: f64 = (0..3).map(|k| eps(i, j, k) * axis[k]).sum();
            let kron = if i == j { 1.0 } else { 0.0 };
            o[i][j] = c * kron - s * skew + (1.0 - c) * axis[i] * axis[j];
        }
    }

    let base = Arc::new(OddSeedFunction::xyz(0.25));
    // g composed with the inverse rotation, as a black-box seed
    let o_inv: Vec<Vec<f64>> = (0..3).map(|i| (0..3).map(|j| o[j][i]).collect()).collect();
    let inner = OddSeedFunction::xyz(0.25);
    let rotated_seed = Arc::new(
        OddSeedFunction::callback(3, move |x: &[f64]| {
            let y: Vec<f64> = (0..3)
                .map(|i| (0..3).map(|j| o_inv[i][j] * x[j]).sum())
                .collect();
            inner.eval(&y)
        })
        .unwrap(),
    );

    let dirs = sample_sphere(3, 162, SphereScheme::SubdividedIcosahedron).unwrap();
    let rotated_dirs = dirs.rotated(&o);
    let r = 1.2 * r_star(&base, &dirs).unwrap().value;
    let body = build_body(&base, r, &dirs).unwrap();
    let rotated_body = build_body(&rotated_seed, r, &rotated_dirs).unwrap();
    for (p, q) in body.boundary_points().iter().zip(rotated_body.boundary_points()) {
        // q should equal O p
        for i in 0..3 {
            let rp: f64 = (0..3).map(|j| o[i][j] * p[j]).sum();
            assert!((rp - q[i]).abs() < 1e-8, "{rp} vs {}", q[i]);
        }
    }
}

// random admissible profiles in odd harmonics: Barbier perimeter, constant
// width of the sampled curve, and the Fourier structure up to harmonic 25
#[test]
fn random_trig_profiles_close_and_have_width_r() {
    let mut state = 0x2545F4914F6CDD1Du64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
    };
    let dirs = sample_sphere(2, 512, SphereScheme::UniformAngle2D).unwrap();
    for _case in 0..12 {
        let mut harmonics = vec![];
        for k in [3u32, 5, 7, 9] {
            harmonics.push(Harmonic {
                k,
                cos_coeff: next(),
                sin_coeff: next(),
            });
        }
        // scale to an admissible amplitude
        let raw = BetaProfile::trig_polynomial(harmonics.clone()).unwrap();
        let (sup, _) = raw.sup_abs();
        let scale = 0.95 / sup.max(1e-9);
        for h in harmonics.iter_mut() {
            h.cos_coeff *= scale;
            h.sin_coeff *= scale;
        }
        let beta = BetaProfile::trig_polynomial(harmonics).unwrap();
        let curve = curve_from_beta(&beta, 1.0, 4096).unwrap();
        let perimeter = constant_width::planar::barbier_perimeter(&curve).unwrap();
        assert!(
            (perimeter - std::f64::consts::PI).abs() < 1e-6,
            "perimeter {perimeter}"
        );
        let entry = verify_constant_width(&curve.sample_cloud(), 1.0, &dirs, 2e-6);
        assert!(entry.passed, "width residual {}", entry.residual);

        // Fourier scan: even harmonics and the first harmonic vanish
        for k in 1..=25usize {
            if k % 2 == 1 && k > 1 {
                continue;
            }
            let n = 16384;
            let mut cos_sum = 0.0;
            let mut sin_sum = 0.0;
            for i in 0..n {
                let t = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
                let b = beta.eval(t);
                cos_sum += b * (k as f64 * t).cos();
                sin_sum += b * (k as f64 * t).sin();
            }
            let scale = 2.0 / n as f64;
            assert!(
                (cos_sum * scale).abs() < 1e-9 && (sin_sum * scale).abs() < 1e-9,
                "harmonic {k} leaks: {} / {}",
                cos_sum * scale,
                sin_sum * scale
            );
        }
    }
}

// below the critical width the boundary map produces non-convex geometry,
// and the override path exposes exactly that
#[test]
fn override_body_below_critical_width_is_not_convex() {
    let seed = Arc::new(OddSeedFunction::cos3theta(1.0 / 16.0));
    let dirs = sample_sphere(2, 1024, SphereScheme::UniformAngle2D).unwrap();
    // sampled critical width is 1; half of it breaks convexity
    let body = constant_width::median::build_body_override(&seed, 0.5, &dirs).unwrap();
    let entry = constant_width::verify::verify_convexity(&body.boundary_cloud(), 1e-6);
    assert!(!entry.passed, "residual {}", entry.residual);

    // at a valid width the sampled boundary map is injective
    let good = build_body(&seed, 1.05, &dirs).unwrap();
    let pts = good.boundary_points();
    let mut min_gap = f64::INFINITY;
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            let d = Norm::Euclidean.distance(&pts[i], &pts[j]);
            min_gap = min_gap.min(d);
        }
    }
    assert!(min_gap > 0.0, "boundary samples collide");
}

// the parallel reductions agree bit-for-bit with the plain loops
#[test]
fn parallel_results_match_sequential_kernels() {
    let mut state = 0xFEEDFACEu64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64
    };
    let a = cloud((0..700).map(|_| vec![next(), next()]).collect());
    let b = cloud((0..650).map(|_| vec![next(), next()]).collect());
    assert_eq!(a.diameter(), constant_width::kernels::diameter_seq(&a));
    let par = a.hausdorff_distance(&b).unwrap();
    let seq = constant_width::kernels::directed_sup_inf_seq(&a, &b)
        .max(constant_width::kernels::directed_sup_inf_seq(&b, &a));
    assert_eq!(par, seq);
}

// every boundary point of a Reuleaux pentagon sample has an antipodal partner
#[test]
fn pentagon_satisfies_the_antipodal_condition() {
    let curve = curve_from_beta(&reuleaux_beta(2).unwrap(), 1.0, 2048).unwrap();
    let check =
        constant_width::dual::check_antipodal_condition(&curve.sample_cloud(), 1.0, 1e-8);
    assert!(check.holds, "{} violations", check.violations.len());
}

// reuleaux profiles have the same vanishing harmonics
#[test]
fn reuleaux_profile_fourier_structure() {
    for k_poly in 1..=3u32 {
        let beta = reuleaux_beta(k_poly).unwrap();
        let n = 32768;
        for k in [1usize, 2, 4, 6, 8, 10] {
            let mut cos_sum = 0.0;
            let mut sin_sum = 0.0;
            for i in 0..n {
                let t = 2.0 * std::f64::consts::PI * (i as f64 + 0.5) / n as f64;
                let b = beta.eval(t);
                cos_sum += b * (k as f64 * t).cos();
                sin_sum += b * (k as f64 * t).sin();
            }
            let scale = 2.0 / n as f64;
            assert!(
                (cos_sum * scale).abs() < 1e-3 && (sin_sum * scale).abs() < 1e-3,
                "polygon {k_poly} harmonic {k}: {} / {}",
                cos_sum * scale,
                sin_sum * scale
            );
        }
    }
}
