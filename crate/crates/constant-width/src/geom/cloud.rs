use crate::error::{Error, Result};
use crate::geom::direction::Direction;
use crate::geom::norm::{dot, lex_less, Norm};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// A finite, nonempty set of points in `R^n` under a chosen norm.
///
/// Finite clouds are their own closure, so diameter, duals and Hausdorff
/// distances are computed exactly by scanning.
#[derive(Debug, Clone)]
pub struct PointCloud {
    points: Vec<Vec<f64>>,
    norm: Norm,
    dim: usize,
}

impl PointCloud {
    pub fn new(points: Vec<Vec<f64>>, norm: Norm) -> Result<Self> {
        let dim = match points.first() {
            Some(p) => p.len(),
            None => return Err(Error::Domain("point cloud must be nonempty".into())),
        };
        if dim == 0 {
            return Err(Error::Domain("points must have dimension >= 1".into()));
        }
        if points.iter().any(|p| p.len() != dim) {
            return Err(Error::Domain("inconsistent point dimensions".into()));
        }
        Ok(Self { points, norm, dim })
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn norm(&self) -> Norm {
        self.norm
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn push(&mut self, p: Vec<f64>) -> Result<()> {
        if p.len() != self.dim {
            return Err(Error::Domain("point dimension mismatch".into()));
        }
        self.points.push(p);
        Ok(())
    }

    /// Max distance from `x` to the cloud.
    pub fn d_plus(&self, x: &[f64]) -> f64 {
        self.points
            .iter()
            .fold(0.0, |m, p| m.max(self.norm.distance(p, x)))
    }

    /// Min distance from `x` to the cloud.
    pub fn d_minus(&self, x: &[f64]) -> f64 {
        self.points
            .iter()
            .fold(f64::INFINITY, |m, p| m.min(self.norm.distance(p, x)))
    }

    /// Exact pairwise-scan diameter.
    pub fn diameter(&self) -> f64 {
        #[cfg(feature = "parallel")]
        {
            diameter_par(&self.points, self.norm)
        }
        #[cfg(not(feature = "parallel"))]
        {
            diameter_seq(&self.points, self.norm)
        }
    }

    /// Support value and maximizer of `x -> u . x` over the cloud.
    ///
    /// Ties are broken by the lexicographically smallest maximizer so results
    /// are independent of point order and of parallel partitioning.
    pub fn support(&self, u: &Direction) -> (f64, &[f64]) {
        assert_eq!(u.dim(), self.dim, "direction dimension mismatch");
        let score = |i: usize| (dot(u.coords(), &self.points[i]), i);
        let pick = |a: (f64, usize), b: (f64, usize)| {
            if b.0 > a.0 || (b.0 == a.0 && lex_less(&self.points[b.1], &self.points[a.1])) {
                b
            } else {
                a
            }
        };
        #[cfg(feature = "parallel")]
        let best = (0..self.points.len())
            .into_par_iter()
            .map(score)
            .reduce(|| score(0), pick);
        #[cfg(not(feature = "parallel"))]
        let best = (0..self.points.len()).map(score).fold(score(0), pick);
        (best.0, self.points[best.1].as_slice())
    }

    /// Hausdorff distance between two clouds over the shared norm.
    pub fn hausdorff_distance(&self, other: &PointCloud) -> Result<f64> {
        if self.dim != other.dim {
            return Err(Error::Domain("dimension mismatch".into()));
        }
        if self.norm != other.norm {
            return Err(Error::Domain("norm mismatch".into()));
        }
        let ab = directed_sup_inf(&self.points, &other.points, self.norm);
        let ba = directed_sup_inf(&other.points, &self.points, self.norm);
        Ok(ab.max(ba))
    }
}

pub(crate) fn diameter_seq(points: &[Vec<f64>], norm: Norm) -> f64 {
    let mut best = 0.0f64;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            best = best.max(norm.distance(p, q));
        }
    }
    best
}

#[cfg(feature = "parallel")]
fn diameter_par(points: &[Vec<f64>], norm: Norm) -> f64 {
    points
        .par_iter()
        .enumerate()
        .map(|(i, p)| {
            points[i + 1..]
                .iter()
                .fold(0.0f64, |m, q| m.max(norm.distance(p, q)))
        })
        .reduce(|| 0.0, f64::max)
}

/// `sup_{a in A} inf_{b in B} |a - b|`, the one-sided Hausdorff distance.
pub(crate) fn directed_sup_inf(a: &[Vec<f64>], b: &[Vec<f64>], norm: Norm) -> f64 {
    // Brute force is exact but O(|A||B|); a uniform-grid index gives the same
    // values for big Euclidean clouds in low dimension.
    let dim = b[0].len();
    if norm == Norm::Euclidean && dim <= 3 && a.len().saturating_mul(b.len()) > 4_000_000 {
        let index = GridIndex::build(b);
        let query = |p: &Vec<f64>| index.nearest_distance(p);
        #[cfg(feature = "parallel")]
        return a.par_iter().map(query).reduce(|| 0.0, f64::max);
        #[cfg(not(feature = "parallel"))]
        return a.iter().map(query).fold(0.0, f64::max);
    }
    let inf = |p: &Vec<f64>| {
        b.iter()
            .fold(f64::INFINITY, |m, q| m.min(norm.distance(p, q)))
    };
    #[cfg(feature = "parallel")]
    return a.par_iter().map(inf).reduce(|| 0.0, f64::max);
    #[cfg(not(feature = "parallel"))]
    a.iter().map(inf).fold(0.0, f64::max)
}

/// Uniform-bucket nearest-neighbor index for Euclidean clouds in dimension <= 3.
struct GridIndex<'a> {
    points: &'a [Vec<f64>],
    lo: Vec<f64>,
    cell: f64,
    shape: Vec<usize>,
    buckets: Vec<Vec<u32>>,
    dim: usize,
}

impl<'a> GridIndex<'a> {
    fn build(points: &'a [Vec<f64>]) -> Self {
        let dim = points[0].len();
        let mut lo = vec![f64::INFINITY; dim];
        let mut hi = vec![f64::NEG_INFINITY; dim];
        for p in points {
            for d in 0..dim {
                lo[d] = lo[d].min(p[d]);
                hi[d] = hi[d].max(p[d]);
            }
        }
        let extent = (0..dim).map(|d| hi[d] - lo[d]).fold(0.0f64, f64::max);
        // aim for a few points per bucket
        let target = (points.len() as f64).powf(1.0 / dim as f64).ceil() as usize;
        let cells = target.clamp(1, 512);
        let cell = (extent / cells as f64).max(1e-12);
        let shape: Vec<usize> = (0..dim)
            .map(|d| (((hi[d] - lo[d]) / cell).floor() as usize + 1).max(1))
            .collect();
        let total: usize = shape.iter().product();
        let mut buckets = vec![Vec::new(); total];
        for (i, p) in points.iter().enumerate() {
            let idx = Self::flat(&shape, &Self::key(&lo, cell, &shape, p));
            buckets[idx].push(i as u32);
        }
        Self {
            points,
            lo,
            cell,
            shape,
            buckets,
            dim,
        }
    }

    fn key(lo: &[f64], cell: f64, shape: &[usize], p: &[f64]) -> Vec<isize> {
        (0..p.len())
            .map(|d| (((p[d] - lo[d]) / cell).floor() as isize).clamp(0, shape[d] as isize - 1))
            .collect()
    }

    fn flat(shape: &[usize], key: &[isize]) -> usize {
        let mut idx = 0usize;
        for (d, k) in key.iter().enumerate() {
            idx = idx * shape[d] + *k as usize;
        }
        idx
    }

    /// Exact nearest-neighbor distance via expanding ring search.
    fn nearest_distance(&self, p: &[f64]) -> f64 {
        let key = Self::key(&self.lo, self.cell, &self.shape, p);
        let mut best = f64::INFINITY;
        let max_ring = *self.shape.iter().max().unwrap() as isize;
        for ring in 0..=max_ring {
            // once the ring's closest possible point is farther than best, stop
            if ring > 0 && best.is_finite() && (ring - 1) as f64 * self.cell > best {
                break;
            }
            self.scan_ring(&key, ring, p, &mut best);
        }
        best
    }

    fn scan_ring(&self, key: &[isize], ring: isize, p: &[f64], best: &mut f64) {
        let mut offs = vec![0isize; self.dim];
        self.scan_ring_rec(key, ring, 0, &mut offs, p, best);
    }

    fn scan_ring_rec(
        &self,
        key: &[isize],
        ring: isize,
        d: usize,
        offs: &mut Vec<isize>,
        p: &[f64],
        best: &mut f64,
    ) {
        if d == self.dim {
            if offs.iter().map(|o| o.abs()).max().unwrap_or(0) != ring {
                return;
            }
            let mut cell_key = vec![0isize; self.dim];
            for i in 0..self.dim {
                let k = key[i] + offs[i];
                if k < 0 || k >= self.shape[i] as isize {
                    return;
                }
                cell_key[i] = k;
            }
            for &i in &self.buckets[Self::flat(&self.shape, &cell_key)] {
                let q = &self.points[i as usize];
                let d2: f64 = p.iter().zip(q).map(|(x, y)| (x - y) * (x - y)).sum();
                *best = best.min(d2.sqrt());
            }
            return;
        }
        for o in -ring..=ring {
            offs[d] = o;
            self.scan_ring_rec(key, ring, d + 1, offs, p, best);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cloud(pts: &[&[f64]], norm: Norm) -> PointCloud {
        PointCloud::new(pts.iter().map(|p| p.to_vec()).collect(), norm).unwrap()
    }

    #[test]
    fn diameter_examples() {
        let single = cloud(&[&[1.0, 2.0]], Norm::Euclidean);
        assert_eq!(single.diameter(), 0.0);
        let c = cloud(&[&[0.0, 0.0], &[3.0, 4.0]], Norm::Euclidean);
        assert!((c.diameter() - 5.0).abs() < 1e-15);
        let c = cloud(&[&[0.0, 0.0], &[1.0, 2.0]], Norm::LInfinity);
        assert_eq!(c.diameter(), 2.0);
    }

    #[test]
    fn empty_cloud_rejected() {
        assert!(PointCloud::new(vec![], Norm::Euclidean).is_err());
    }

    #[test]
    fn d_plus_d_minus_midpoint() {
        let c = cloud(&[&[0.0, 0.0], &[2.0, 0.0]], Norm::Euclidean);
        assert!((c.d_plus(&[1.0, 0.0]) - 1.0).abs() < 1e-15);
        assert!((c.d_minus(&[1.0, 0.0]) - 1.0).abs() < 1e-15);
        let single = cloud(&[&[0.5, 0.5]], Norm::Euclidean);
        assert_eq!(single.d_plus(&[0.5, 0.5]), 0.0);
        assert_eq!(single.d_minus(&[0.5, 0.5]), 0.0);
    }

    #[test]
    fn d_on_circle_sample() {
        let pts: Vec<Vec<f64>> = (0..100)
            .map(|k| {
                let t = 2.0 * std::f64::consts::PI * k as f64 / 100.0;
                vec![t.cos(), t.sin()]
            })
            .collect();
        let c = PointCloud::new(pts, Norm::Euclidean).unwrap();
        assert!((c.d_plus(&[0.0, 0.0]) - 1.0).abs() < 1e-12);
        assert!((c.d_minus(&[0.0, 0.0]) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn hausdorff_examples() {
        let a = cloud(&[&[0.0, 0.0], &[1.0, 1.0]], Norm::Euclidean);
        assert_eq!(a.hausdorff_distance(&a).unwrap(), 0.0);

        let p = cloud(&[&[0.0, 0.0]], Norm::Euclidean);
        let q = cloud(&[&[1.0, 0.0]], Norm::Euclidean);
        assert!((p.hausdorff_distance(&q).unwrap() - 1.0).abs() < 1e-15);

        // unit square corners vs its center
        let sq = cloud(
            &[&[0.0, 0.0], &[1.0, 0.0], &[1.0, 1.0], &[0.0, 1.0]],
            Norm::Euclidean,
        );
        let center = cloud(&[&[0.5, 0.5]], Norm::Euclidean);
        let d = sq.hausdorff_distance(&center).unwrap();
        assert!((d - 0.5 * 2.0f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn hausdorff_rejects_mismatch() {
        let a = cloud(&[&[0.0, 0.0]], Norm::Euclidean);
        let b = cloud(&[&[0.0, 0.0]], Norm::LInfinity);
        assert!(a.hausdorff_distance(&b).is_err());
        let c = cloud(&[&[0.0, 0.0, 0.0]], Norm::Euclidean);
        assert!(a.hausdorff_distance(&c).is_err());
    }

    #[test]
    fn support_tie_break_is_lexicographic() {
        let c = cloud(
            &[&[1.0, 1.0], &[1.0, -1.0], &[-1.0, 1.0], &[-1.0, -1.0]],
            Norm::Euclidean,
        );
        let (v, p) = c.support(&Direction::new(vec![1.0, 0.0]).unwrap());
        assert!((v - 1.0).abs() < 1e-15);
        assert_eq!(p, &[1.0, -1.0]);
    }

    #[test]
    fn support_collinear() {
        let c = cloud(&[&[0.0, 0.0], &[3.0, 4.0]], Norm::Euclidean);
        let (v, p) = c.support(&Direction::new(vec![0.6, 0.8]).unwrap());
        assert!((v - 5.0).abs() < 1e-12);
        assert_eq!(p, &[3.0, 4.0]);
    }

    #[test]
    fn support_pentagon_vertex() {
        let pts: Vec<Vec<f64>> = (0..5)
            .map(|k| {
                let t = 2.0 * std::f64::consts::PI * k as f64 / 5.0;
                vec![t.cos(), t.sin()]
            })
            .collect();
        // brute-force oracle: toward vertex 2 the maximizer is vertex 2
        let u = Direction::new(pts[2].clone()).unwrap();
        let expect = pts[2].clone();
        let c = PointCloud::new(pts, Norm::Euclidean).unwrap();
        let (_, p) = c.support(&u);
        assert_eq!(p, expect.as_slice());
    }

    #[test]
    fn grid_index_matches_bruteforce() {
        // deterministic pseudo-random points
        let mut state = 0x12345678u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        let a: Vec<Vec<f64>> = (0..400).map(|_| vec![next(), next()]).collect();
        let b: Vec<Vec<f64>> = (0..500).map(|_| vec![next() * 2.0, next()]).collect();
        let brute = {
            let inf = |p: &Vec<f64>| {
                b.iter()
                    .fold(f64::INFINITY, |m, q| m.min(Norm::Euclidean.distance(p, q)))
            };
            a.iter().map(inf).fold(0.0f64, f64::max)
        };
        let index = GridIndex::build(&b);
        let fast = a
            .iter()
            .map(|p| index.nearest_distance(p))
            .fold(0.0f64, f64::max);
        assert!((brute - fast).abs() < 1e-12);
    }
}
