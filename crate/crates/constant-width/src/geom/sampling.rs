use crate::error::{Error, Result};
use crate::geom::direction::Direction;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Sphere sampling schemes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SphereScheme {
    /// Equally spaced angles on the circle (dimension 2 only).
    UniformAngle2D,
    /// Golden-angle spiral on the upper half sphere, mirrored (dimension 3).
    FibonacciLattice,
    /// Vertices of a subdivided icosahedron (dimension 3); carries a triangulation.
    SubdividedIcosahedron,
}

/// An antipode-closed set of unit directions.
///
/// Directions are stored as a half set followed by its exact negation, so the
/// antipode of index `i` is always present and width checks pair `u` with `-u`
/// without interpolation.
#[derive(Debug, Clone)]
pub struct DirectionSet {
    dirs: Vec<Direction>,
    half: usize,
    faces: Option<Vec<[usize; 3]>>,
}

impl DirectionSet {
    /// Builds the closure `half ++ -half`. Exact by IEEE negation.
    pub fn from_half(half_dirs: Vec<Direction>) -> Result<Self> {
        if half_dirs.is_empty() {
            return Err(Error::Domain("direction set must be nonempty".into()));
        }
        let dim = half_dirs[0].dim();
        if half_dirs.iter().any(|d| d.dim() != dim) {
            return Err(Error::Domain("inconsistent direction dimensions".into()));
        }
        let half = half_dirs.len();
        let mut dirs = half_dirs;
        for i in 0..half {
            dirs.push(dirs[i].negated());
        }
        Ok(Self { dirs, half, faces: None })
    }

    pub fn directions(&self) -> &[Direction] {
        &self.dirs
    }

    pub fn len(&self) -> usize {
        self.dirs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dirs.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dirs[0].dim()
    }

    pub fn half(&self) -> usize {
        self.half
    }

    /// Index of `-u` for direction index `i`.
    pub fn antipode_index(&self, i: usize) -> usize {
        (i + self.half) % self.dirs.len()
    }

    /// The `(i, antipode(i))` pairs, each unordered pair listed once.
    pub fn antipodal_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.half).map(|i| (i, i + self.half))
    }

    /// Triangulation over the directions, present for the icosahedral scheme.
    pub fn faces(&self) -> Option<&[[usize; 3]]> {
        self.faces.as_deref()
    }

    /// Applies an orthogonal matrix (rows) to every direction.
    pub fn rotated(&self, o: &[Vec<f64>]) -> Self {
        let dirs = self
            .dirs
            .iter()
            .map(|u| {
                let c: Vec<f64> = o.iter().map(|row| u.dot(row)).collect();
                Direction::from_unit_unchecked(c)
            })
            .collect();
        Self {
            dirs,
            half: self.half,
            faces: self.faces.clone(),
        }
    }
}

/// Samples `count` unit directions in dimension `dim`.
///
/// Every scheme returns an antipode-closed set. The uniform-angle and
/// Fibonacci schemes return exactly `count` directions and therefore require
/// `count` even (an antipode-closed set has even cardinality); the icosahedral
/// scheme returns the nearest achievable vertex count `10 * 4^level + 2`.
pub fn sample_sphere(dim: usize, count: usize, scheme: SphereScheme) -> Result<DirectionSet> {
    if dim < 2 {
        return Err(Error::Config(format!("dimension must be >= 2, got {dim}")));
    }
    match scheme {
        SphereScheme::UniformAngle2D => {
            if dim != 2 {
                return Err(Error::Config(
                    "uniform-angle sampling is planar only".into(),
                ));
            }
            if count < 2 || !count.is_multiple_of(2) {
                return Err(Error::Config(format!(
                    "antipode-closed sets have even cardinality; got count {count}"
                )));
            }
            let half = count / 2;
            let dirs = (0..half)
                .map(|k| Direction::from_angle(2.0 * std::f64::consts::PI * k as f64 / count as f64))
                .collect();
            DirectionSet::from_half(dirs)
        }
        SphereScheme::FibonacciLattice => {
            if dim != 3 {
                return Err(Error::Config(
                    "Fibonacci lattice sampling is for dimension 3".into(),
                ));
            }
            if count < 2 || !count.is_multiple_of(2) {
                return Err(Error::Config(format!(
                    "antipode-closed sets have even cardinality; got count {count}"
                )));
            }
            Ok(fibonacci_hemisphere(count / 2))
        }
        SphereScheme::SubdividedIcosahedron => {
            if dim != 3 {
                return Err(Error::Config(
                    "icosahedral sampling is for dimension 3".into(),
                ));
            }
            let level = nearest_icosphere_level(count);
            subdivided_icosahedron(level)
        }
    }
}

/// Vertex count of the level-`level` subdivided icosahedron.
pub fn icosphere_vertex_count(level: u32) -> usize {
    10 * 4usize.pow(level) + 2
}

fn nearest_icosphere_level(count: usize) -> u32 {
    (0..=8u32)
        .min_by_key(|&l| icosphere_vertex_count(l).abs_diff(count))
        .unwrap()
}

/// Golden-angle spiral on the open upper half sphere, unioned with its negation.
///
/// The band offset keeps points away from both the pole and the equator seam,
/// which preserves the lattice's minimum spacing after symmetrization.
fn fibonacci_hemisphere(m: usize) -> DirectionSet {
    const OFFSET: f64 = 3.0;
    let golden_angle = std::f64::consts::PI * (3.0 - 5.0f64.sqrt());
    let half: Vec<Direction> = (0..m)
        .map(|k| {
            let z = (k as f64 + 0.5 + OFFSET) / (m as f64 + 2.0 * OFFSET);
            let rho = (1.0 - z * z).sqrt();
            let phi = golden_angle * k as f64;
            Direction::from_unit_unchecked(vec![rho * phi.cos(), rho * phi.sin(), z])
        })
        .collect();
    DirectionSet::from_half(half).expect("nonempty half set")
}

/// Subdivided icosahedron sampling at a given level, with triangulation.
pub fn subdivided_icosahedron(level: u32) -> Result<DirectionSet> {
    let (verts, faces) = icosphere_mesh(level)?;

    // canonical representative of each antipodal pair: first nonzero coordinate
    // positive; adding 0.0 folds -0.0 into +0.0 so bit keys match
    let canonical = |v: &[f64; 3]| -> ([f64; 3], bool) {
        for &c in v.iter() {
            if c > 0.0 {
                return ([v[0] + 0.0, v[1] + 0.0, v[2] + 0.0], false);
            }
            if c < 0.0 {
                return ([-v[0] + 0.0, -v[1] + 0.0, -v[2] + 0.0], true);
            }
        }
        (*v, false)
    };

    let mut reps: Vec<[f64; 3]> = Vec::new();
    let mut rep_index: HashMap<[u64; 3], usize> = HashMap::new();
    let key = |v: &[f64; 3]| [v[0].to_bits(), v[1].to_bits(), v[2].to_bits()];

    // vertex -> (rep id, negated flag)
    let tagged: Vec<(usize, bool)> = verts
        .iter()
        .map(|v| {
            let (rep, flipped) = canonical(v);
            let id = *rep_index.entry(key(&rep)).or_insert_with(|| {
                reps.push(rep);
                reps.len() - 1
            });
            (id, flipped)
        })
        .collect();

    let half = reps.len();
    debug_assert_eq!(2 * half, verts.len(), "icosphere is centrally symmetric");

    let mut order: Vec<usize> = (0..half).collect();
    order.sort_by(|&i, &j| reps[i].partial_cmp(&reps[j]).unwrap());
    let mut rank = vec![0usize; half];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r;
    }

    let half_dirs: Vec<Direction> = order
        .iter()
        .map(|&i| Direction::from_unit_unchecked(reps[i].to_vec()))
        .collect();
    let mut set = DirectionSet::from_half(half_dirs)?;

    let remap = |vi: usize| -> usize {
        let (id, flipped) = tagged[vi];
        if flipped {
            rank[id] + half
        } else {
            rank[id]
        }
    };
    set.faces = Some(faces.iter().map(|f| [remap(f[0]), remap(f[1]), remap(f[2])]).collect());
    Ok(set)
}

/// Unit icosphere mesh: vertices and outward counterclockwise triangles.
#[allow(clippy::type_complexity)]
pub fn icosphere_mesh(level: u32) -> Result<(Vec<[f64; 3]>, Vec<[usize; 3]>)> {
    if level > 8 {
        return Err(Error::Resource(format!(
            "icosphere level {level} exceeds the supported maximum of 8"
        )));
    }
    let t = (1.0 + 5.0f64.sqrt()) / 2.0;
    let raw: [[f64; 3]; 12] = [
        [-1.0, t, 0.0],
        [1.0, t, 0.0],
        [-1.0, -t, 0.0],
        [1.0, -t, 0.0],
        [0.0, -1.0, t],
        [0.0, 1.0, t],
        [0.0, -1.0, -t],
        [0.0, 1.0, -t],
        [t, 0.0, -1.0],
        [t, 0.0, 1.0],
        [-t, 0.0, -1.0],
        [-t, 0.0, 1.0],
    ];
    let normalize = |v: [f64; 3]| {
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        [v[0] / n, v[1] / n, v[2] / n]
    };
    let mut verts: Vec<[f64; 3]> = raw.iter().map(|&v| normalize(v)).collect();
    let mut faces: Vec<[usize; 3]> = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];

    for _ in 0..level {
        let mut midpoint: HashMap<(usize, usize), usize> = HashMap::new();
        let mut next_faces = Vec::with_capacity(faces.len() * 4);
        for f in &faces {
            let mut mid = [0usize; 3];
            for e in 0..3 {
                let (a, b) = (f[e], f[(e + 1) % 3]);
                let k = (a.min(b), a.max(b));
                mid[e] = *midpoint.entry(k).or_insert_with(|| {
                    let va = verts[a];
                    let vb = verts[b];
                    let m = normalize([va[0] + vb[0], va[1] + vb[1], va[2] + vb[2]]);
                    verts.push(m);
                    verts.len() - 1
                });
            }
            next_faces.push([f[0], mid[0], mid[2]]);
            next_faces.push([f[1], mid[1], mid[0]]);
            next_faces.push([f[2], mid[2], mid[1]]);
            next_faces.push([mid[0], mid[1], mid[2]]);
        }
        faces = next_faces;
    }

    // orient all faces counterclockwise seen from outside
    for f in &mut faces {
        let (a, b, c) = (verts[f[0]], verts[f[1]], verts[f[2]]);
        let det = a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
            + a[2] * (b[0] * c[1] - b[1] * c[0]);
        if det < 0.0 {
            f.swap(1, 2);
        }
    }
    Ok((verts, faces))
}
