/// Planar rigid motions used to compare curves up to congruence.
#[derive(Debug, Clone, Copy)]
pub struct RigidTransform2 {
    /// Rotation matrix entries [[c, -s], [s, c]] times optional reflection.
    pub m: [[f64; 2]; 2],
    pub t: [f64; 2],
}

impl RigidTransform2 {
    pub fn identity() -> Self {
        Self {
            m: [[1.0, 0.0], [0.0, 1.0]],
            t: [0.0, 0.0],
        }
    }

    pub fn apply(&self, p: &[f64]) -> [f64; 2] {
        [
            self.m[0][0] * p[0] + self.m[0][1] * p[1] + self.t[0],
            self.m[1][0] * p[0] + self.m[1][1] * p[1] + self.t[1],
        ]
    }
}

/// Least-squares rigid alignment of matched planar point pairs (Kabsch).
///
/// Returns the motion mapping `source` onto `target`. With
/// `allow_reflection`, the better of the proper and improper fits is chosen.
pub fn rigid_align_2d(
    source: &[Vec<f64>],
    target: &[Vec<f64>],
    allow_reflection: bool,
) -> RigidTransform2 {
    assert_eq!(source.len(), target.len());
    assert!(!source.is_empty());
    let n = source.len() as f64;
    let cen = |pts: &[Vec<f64>]| {
        let mut c = [0.0, 0.0];
        for p in pts {
            c[0] += p[0];
            c[1] += p[1];
        }
        [c[0] / n, c[1] / n]
    };
    let cs = cen(source);
    let ct = cen(target);

    let fit = |reflect: bool| -> (RigidTransform2, f64) {
        // optimal rotation angle from the cross/dot correlation sums
        let mut sc = 0.0; // sum of dot products
        let mut ss = 0.0; // sum of cross products
        for (s, t) in source.iter().zip(target) {
            let sx = s[0] - cs[0];
            let sy = if reflect { -(s[1] - cs[1]) } else { s[1] - cs[1] };
            let tx = t[0] - ct[0];
            let ty = t[1] - ct[1];
            sc += sx * tx + sy * ty;
            ss += sx * ty - sy * tx;
        }
        let theta = ss.atan2(sc);
        let (sn, cn) = theta.sin_cos();
        let refl = if reflect { -1.0 } else { 1.0 };
        let m = [[cn, -sn * refl], [sn, cn * refl]];
        let t = [
            ct[0] - (m[0][0] * cs[0] + m[0][1] * cs[1]),
            ct[1] - (m[1][0] * cs[0] + m[1][1] * cs[1]),
        ];
        let tr = RigidTransform2 { m, t };
        let rss: f64 = source
            .iter()
            .zip(target)
            .map(|(s, t)| {
                let q = tr.apply(s);
                (q[0] - t[0]).powi(2) + (q[1] - t[1]).powi(2)
            })
            .sum();
        (tr, rss)
    };

    let (direct, rss_direct) = fit(false);
    if !allow_reflection {
        return direct;
    }
    let (mirrored, rss_mirrored) = fit(true);
    if rss_mirrored < rss_direct {
        mirrored
    } else {
        direct
    }
}
