use crate::error::{Error, Result};

/// Monotone-chain convex hull in the plane. Returns hull vertex indices in
/// counterclockwise order; collinear interior points are dropped.
pub fn convex_hull_2d(points: &[Vec<f64>]) -> Result<Vec<usize>> {
    if points.len() < 3 {
        return Err(Error::Domain("need at least three points".into()));
    }
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by(|&a, &b| {
        points[a]
            .partial_cmp(&points[b])
            .expect("finite coordinates")
    });
    idx.dedup_by(|&mut a, &mut b| points[a] == points[b]);

    let cross = |o: usize, a: usize, b: usize| {
        (points[a][0] - points[o][0]) * (points[b][1] - points[o][1])
            - (points[a][1] - points[o][1]) * (points[b][0] - points[o][0])
    };
    let mut lower: Vec<usize> = Vec::new();
    for &i in &idx {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], i) <= 0.0 {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in idx.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], i) <= 0.0 {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 3 {
        return Err(Error::Domain("degenerate: points are collinear".into()));
    }
    Ok(lower)
}

/// Signed distance from `p` to the boundary of the hull polygon: negative
/// inside, positive outside.
pub fn signed_distance_to_hull_2d(points: &[Vec<f64>], hull: &[usize], p: &[f64]) -> f64 {
    let n = hull.len();
    let mut boundary = f64::INFINITY;
    let mut inside = true;
    for i in 0..n {
        let a = &points[hull[i]];
        let b = &points[hull[(i + 1) % n]];
        boundary = boundary.min(distance_to_segment_2d(p, a, b));
        let cross = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]);
        if cross < 0.0 {
            inside = false;
        }
    }
    if inside {
        -boundary
    } else {
        boundary
    }
}

fn distance_to_segment_2d(p: &[f64], a: &[f64], b: &[f64]) -> f64 {
    let dx = b[0] - a[0];
    let dy = b[1] - a[1];
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 {
        0.0
    } else {
        (((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / len2).clamp(0.0, 1.0)
    };
    let qx = a[0] + t * dx;
    let qy = a[1] + t * dy;
    ((p[0] - qx).powi(2) + (p[1] - qy).powi(2)).sqrt()
}

/// A 3D convex hull as oriented triangles (outward normals).
#[derive(Debug, Clone)]
pub struct Hull3d {
    pub faces: Vec<[usize; 3]>,
    /// Point data the face indices refer to.
    pub points: Vec<[f64; 3]>,
}

/// Incremental convex hull in three dimensions.
pub fn convex_hull_3d(input: &[Vec<f64>]) -> Result<Hull3d> {
    let points: Vec<[f64; 3]> = input.iter().map(|p| [p[0], p[1], p[2]]).collect();
    let n = points.len();
    if n < 4 {
        return Err(Error::Domain("need at least four points".into()));
    }
    let scale = {
        let mut lo = [f64::INFINITY; 3];
        let mut hi = [f64::NEG_INFINITY; 3];
        for p in &points {
            for d in 0..3 {
                lo[d] = lo[d].min(p[d]);
                hi[d] = hi[d].max(p[d]);
            }
        }
        (0..3).map(|d| hi[d] - lo[d]).fold(0.0f64, f64::max)
    };
    let eps = 1e-12 * (scale + 1.0);

    // initial simplex: spread points
    let sub = |a: [f64; 3], b: [f64; 3]| [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
    let cross = |a: [f64; 3], b: [f64; 3]| {
        [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ]
    };
    let dot = |a: [f64; 3], b: [f64; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    let norm = |a: [f64; 3]| dot(a, a).sqrt();

    let i0 = 0;
    let i1 = (0..n)
        .max_by(|&a, &b| {
            norm(sub(points[a], points[i0]))
                .partial_cmp(&norm(sub(points[b], points[i0])))
                .unwrap()
        })
        .unwrap();
    if norm(sub(points[i1], points[i0])) < eps {
        return Err(Error::Domain("degenerate: all points coincide".into()));
    }
    let line = sub(points[i1], points[i0]);
    let i2 = (0..n)
        .max_by(|&a, &b| {
            norm(cross(line, sub(points[a], points[i0])))
                .partial_cmp(&norm(cross(line, sub(points[b], points[i0]))))
                .unwrap()
        })
        .unwrap();
    if norm(cross(line, sub(points[i2], points[i0]))) < eps {
        return Err(Error::Domain("degenerate: points are collinear".into()));
    }
    let plane_n = cross(line, sub(points[i2], points[i0]));
    let i3 = (0..n)
        .max_by(|&a, &b| {
            dot(plane_n, sub(points[a], points[i0]))
                .abs()
                .partial_cmp(&dot(plane_n, sub(points[b], points[i0])).abs())
                .unwrap()
        })
        .unwrap();
    if dot(plane_n, sub(points[i3], points[i0])).abs() < eps {
        return Err(Error::Domain("degenerate: points are coplanar".into()));
    }

    let interior = [
        (points[i0][0] + points[i1][0] + points[i2][0] + points[i3][0]) / 4.0,
        (points[i0][1] + points[i1][1] + points[i2][1] + points[i3][1]) / 4.0,
        (points[i0][2] + points[i1][2] + points[i2][2] + points[i3][2]) / 4.0,
    ];
    let orient = |f: [usize; 3]| -> [usize; 3] {
        let nrm = cross(
            sub(points[f[1]], points[f[0]]),
            sub(points[f[2]], points[f[0]]),
        );
        if dot(nrm, sub(interior, points[f[0]])) > 0.0 {
            [f[0], f[2], f[1]]
        } else {
            f
        }
    };
    let mut faces: Vec<[usize; 3]> = vec![
        orient([i0, i1, i2]),
        orient([i0, i1, i3]),
        orient([i0, i2, i3]),
        orient([i1, i2, i3]),
    ];

    let face_dist = |f: &[usize; 3], p: [f64; 3]| {
        let nrm = cross(
            sub(points[f[1]], points[f[0]]),
            sub(points[f[2]], points[f[0]]),
        );
        let len = norm(nrm);
        dot(nrm, sub(p, points[f[0]])) / len.max(1e-300)
    };

    let mut order: Vec<usize> = (0..n).collect();
    order.retain(|&i| i != i0 && i != i1 && i != i2 && i != i3);
    for &pi in &order {
        let p = points[pi];
        let visible: Vec<usize> = (0..faces.len())
            .filter(|&fi| face_dist(&faces[fi], p) > eps)
            .collect();
        if visible.is_empty() {
            continue;
        }
        // horizon: directed edges of visible faces that appear only once
        let mut edge_count: std::collections::HashMap<(usize, usize), i32> =
            std::collections::HashMap::new();
        for &fi in &visible {
            let f = faces[fi];
            for e in [(f[0], f[1]), (f[1], f[2]), (f[2], f[0])] {
                *edge_count.entry((e.0.min(e.1), e.0.max(e.1))).or_insert(0) += 1;
            }
        }
        let mut horizon: Vec<(usize, usize)> = Vec::new();
        for &fi in &visible {
            let f = faces[fi];
            for e in [(f[0], f[1]), (f[1], f[2]), (f[2], f[0])] {
                if edge_count[&(e.0.min(e.1), e.0.max(e.1))] == 1 {
                    horizon.push(e);
                }
            }
        }
        let visible_set: std::collections::HashSet<usize> = visible.iter().copied().collect();
        let mut next: Vec<[usize; 3]> = faces
            .iter()
            .enumerate()
            .filter(|(i, _)| !visible_set.contains(i))
            .map(|(_, f)| *f)
            .collect();
        for (a, b) in horizon {
            next.push([a, b, pi]);
        }
        faces = next;
    }
    Ok(Hull3d { faces, points })
}

impl Hull3d {
    /// Signed distance to the hull boundary: negative inside.
    pub fn signed_distance(&self, p: &[f64]) -> f64 {
        let q = [p[0], p[1], p[2]];
        let mut boundary = f64::INFINITY;
        let mut inside = true;
        for f in &self.faces {
            let (a, b, c) = (
                self.points[f[0]],
                self.points[f[1]],
                self.points[f[2]],
            );
            boundary = boundary.min(distance_to_triangle_3d(q, a, b, c));
            let u = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
            let v = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
            let nrm = [
                u[1] * v[2] - u[2] * v[1],
                u[2] * v[0] - u[0] * v[2],
                u[0] * v[1] - u[1] * v[0],
            ];
            let side = nrm[0] * (q[0] - a[0]) + nrm[1] * (q[1] - a[1]) + nrm[2] * (q[2] - a[2]);
            if side > 0.0 {
                inside = false;
            }
        }
        if inside {
            -boundary
        } else {
            boundary
        }
    }
}

fn distance_to_triangle_3d(p: [f64; 3], a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> f64 {
    // project onto the triangle plane, then clamp to the triangle
    let ab = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
    let ac = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
    let ap = [p[0] - a[0], p[1] - a[1], p[2] - a[2]];
    let d1 = ab[0] * ap[0] + ab[1] * ap[1] + ab[2] * ap[2];
    let d2 = ac[0] * ap[0] + ac[1] * ap[1] + ac[2] * ap[2];
    let dist = |q: [f64; 3]| {
        ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2) + (p[2] - q[2]).powi(2)).sqrt()
    };
    if d1 <= 0.0 && d2 <= 0.0 {
        return dist(a);
    }
    let bp = [p[0] - b[0], p[1] - b[1], p[2] - b[2]];
    let d3 = ab[0] * bp[0] + ab[1] * bp[1] + ab[2] * bp[2];
    let d4 = ac[0] * bp[0] + ac[1] * bp[1] + ac[2] * bp[2];
    if d3 >= 0.0 && d4 <= d3 {
        return dist(b);
    }
    let vc = d1 * d4 - d3 * d2;
    if vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0 {
        let v = d1 / (d1 - d3);
        return dist([a[0] + v * ab[0], a[1] + v * ab[1], a[2] + v * ab[2]]);
    }
    let cp = [p[0] - c[0], p[1] - c[1], p[2] - c[2]];
    let d5 = ab[0] * cp[0] + ab[1] * cp[1] + ab[2] * cp[2];
    let d6 = ac[0] * cp[0] + ac[1] * cp[1] + ac[2] * cp[2];
    if d6 >= 0.0 && d5 <= d6 {
        return dist(c);
    }
    let vb = d5 * d2 - d1 * d6;
    if vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0 {
        let w = d2 / (d2 - d6);
        return dist([a[0] + w * ac[0], a[1] + w * ac[1], a[2] + w * ac[2]]);
    }
    let va = d3 * d6 - d5 * d4;
    if va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0 {
        let w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
        return dist([
            b[0] + w * (c[0] - b[0]),
            b[1] + w * (c[1] - b[1]),
            b[2] + w * (c[2] - b[2]),
        ]);
    }
    let denom = 1.0 / (va + vb + vc);
    let v = vb * denom;
    let w = vc * denom;
    dist([
        a[0] + ab[0] * v + ac[0] * w,
        a[1] + ab[1] * v + ac[1] * w,
        a[2] + ab[2] * v + ac[2] * w,
    ])
}
