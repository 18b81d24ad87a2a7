use crate::error::{Error, Result};
use crate::geom::{Direction, SymMatrix};
use std::fmt;
use std::sync::Arc;

/// One symbolic term `coefficient * x^exponents / rho^(deg - 1)`, an odd
/// homogeneous function of degree 1 when the total degree is odd.
#[derive(Debug, Clone, PartialEq)]
pub struct MonomialTerm {
    pub coefficient: f64,
    pub exponents: Vec<u32>,
}

impl MonomialTerm {
    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }
}

/// Finite-difference step sizes for callback seeds. Central differences with
/// one Richardson extrapolation level.
#[derive(Debug, Clone, Copy)]
pub struct FdSteps {
    pub gradient: f64,
    pub hessian: f64,
}

impl Default for FdSteps {
    fn default() -> Self {
        Self {
            gradient: 1e-5,
            hessian: 1e-4,
        }
    }
}

type SphereFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

enum Repr {
    /// Exact differentiation.
    Symbolic(Vec<MonomialTerm>),
    /// Black box on the sphere, extended by `g(x) = |x| g(x/|x|)`.
    Callback(SphereFn),
}

impl fmt::Debug for Repr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Repr::Symbolic(terms) => f.debug_tuple("Symbolic").field(terms).finish(),
            Repr::Callback(_) => f.write_str("Callback(..)"),
        }
    }
}

/// An odd function on `R^n \ 0`, homogeneous of degree 1. The gradient is the
/// median surface of the bodies built from it.
#[derive(Debug)]
pub struct OddSeedFunction {
    repr: Repr,
    dim: usize,
    fd: FdSteps,
}

impl OddSeedFunction {
    /// A seed from symbolic terms. Every term must have odd total degree;
    /// even-degree terms would break oddness and are rejected.
    pub fn symbolic(dim: usize, terms: Vec<MonomialTerm>) -> Result<Self> {
        if dim < 2 {
            return Err(Error::Config("seeds need dimension >= 2".into()));
        }
        for t in &terms {
            if t.exponents.len() != dim {
                return Err(Error::Config(format!(
                    "term exponents {:?} do not match dimension {dim}",
                    t.exponents
                )));
            }
            if t.degree() % 2 == 0 {
                return Err(Error::Config(format!(
                    "term of even degree {} is not odd-symmetric",
                    t.degree()
                )));
            }
            if !t.coefficient.is_finite() {
                return Err(Error::Config("non-finite coefficient".into()));
            }
        }
        Ok(Self {
            repr: Repr::Symbolic(terms),
            dim,
            fd: FdSteps::default(),
        })
    }

    /// A black-box seed. Oddness is validated on a fixed direction sample;
    /// violations are rejected.
    pub fn callback(
        dim: usize,
        f: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        let seed = Self {
            repr: Repr::Callback(Arc::new(f)),
            dim,
            fd: FdSteps::default(),
        };
        seed.check_oddness()?;
        Ok(seed)
    }

    /// A black-box seed with the odd part `(g(x) - g(-x)) / 2` taken
    /// explicitly instead of rejecting asymmetric input.
    pub fn callback_symmetrized(
        dim: usize,
        f: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        let inner = Arc::new(f);
        let odd = move |x: &[f64]| {
            let neg: Vec<f64> = x.iter().map(|v| -v).collect();
            0.5 * (inner(x) - inner(&neg))
        };
        Ok(Self {
            repr: Repr::Callback(Arc::new(odd)),
            dim,
            fd: FdSteps::default(),
        })
    }

    /// Planar seed `eps * (x^3 - 3 x y^2) / rho^2`, which is
    /// `rho * eps * cos(3 theta)` in polar coordinates.
    pub fn cos3theta(eps: f64) -> Self {
        Self::symbolic(
            2,
            vec![
                MonomialTerm {
                    coefficient: eps,
                    exponents: vec![3, 0],
                },
                MonomialTerm {
                    coefficient: -3.0 * eps,
                    exponents: vec![1, 2],
                },
            ],
        )
        .expect("valid builtin")
    }

    /// Spatial seed `eps * x y z / rho^2`.
    pub fn xyz(eps: f64) -> Self {
        Self::symbolic(
            3,
            vec![MonomialTerm {
                coefficient: eps,
                exponents: vec![1, 1, 1],
            }],
        )
        .expect("valid builtin")
    }

    /// The trivial linear seed `a . x`: its gradient is the constant `a`, so
    /// adding it to another seed translates the body without changing widths.
    pub fn linear(a: &[f64]) -> Result<Self> {
        let dim = a.len();
        let terms = a
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                let mut exponents = vec![0; dim];
                exponents[i] = 1;
                MonomialTerm {
                    coefficient: c,
                    exponents,
                }
            })
            .collect();
        Self::symbolic(dim, terms)
    }

    /// A reproducible random odd cubic in three variables: coefficients in
    /// `[-scale, scale]` over the ten degree-3 monomials.
    pub fn random_odd_cubic(scale: f64, rng_seed: u64) -> Self {
        let mut state = rng_seed.wrapping_mul(2862933555777941757).wrapping_add(3037000493);
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
        };
        let cubics: [[u32; 3]; 10] = [
            [3, 0, 0],
            [0, 3, 0],
            [0, 0, 3],
            [2, 1, 0],
            [2, 0, 1],
            [1, 2, 0],
            [0, 2, 1],
            [1, 0, 2],
            [0, 1, 2],
            [1, 1, 1],
        ];
        let terms = cubics
            .iter()
            .map(|e| MonomialTerm {
                coefficient: scale * next(),
                exponents: e.to_vec(),
            })
            .collect();
        Self::symbolic(3, terms).expect("valid builtin")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn fd_steps(&self) -> FdSteps {
        self.fd
    }

    pub fn set_fd_steps(&mut self, fd: FdSteps) {
        self.fd = fd;
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(self.repr, Repr::Symbolic(_))
    }

    /// The seed scaled by `lambda`; exact for symbolic terms.
    pub fn scaled(&self, lambda: f64) -> Self {
        let repr = match &self.repr {
            Repr::Symbolic(terms) => Repr::Symbolic(
                terms
                    .iter()
                    .map(|t| MonomialTerm {
                        coefficient: lambda * t.coefficient,
                        exponents: t.exponents.clone(),
                    })
                    .collect(),
            ),
            Repr::Callback(f) => {
                let f = Arc::clone(f);
                Repr::Callback(Arc::new(move |x: &[f64]| lambda * f(x)))
            }
        };
        Self {
            repr,
            dim: self.dim,
            fd: self.fd,
        }
    }

    /// Evaluates `g` anywhere off the origin.
    pub fn eval(&self, x: &[f64]) -> f64 {
        match &self.repr {
            Repr::Symbolic(terms) => {
                let rho = norm(x);
                terms
                    .iter()
                    .map(|t| {
                        t.coefficient
                            * mono(x, &t.exponents)
                            * rho.powi(1 - t.degree() as i32)
                    })
                    .sum()
            }
            Repr::Callback(f) => {
                let rho = norm(x);
                let u: Vec<f64> = x.iter().map(|v| v / rho).collect();
                rho * f(&u)
            }
        }
    }

    /// Gradient of `g` at a unit direction: the median surface value `H(u)`.
    /// Analytic for symbolic seeds, Richardson-extrapolated central
    /// differences for callbacks. Homogeneous of degree 0 along the ray.
    pub fn gradient(&self, u: &Direction) -> Result<Vec<f64>> {
        self.gradient_at(u.coords())
    }

    pub fn gradient_at(&self, x: &[f64]) -> Result<Vec<f64>> {
        let g = match &self.repr {
            Repr::Symbolic(terms) => symbolic_gradient(terms, x),
            Repr::Callback(_) => {
                let h = self.fd.gradient;
                let coarse = self.fd_gradient(x, h);
                let fine = self.fd_gradient(x, 0.5 * h);
                fine.iter()
                    .zip(&coarse)
                    .map(|(f, c)| (4.0 * f - c) / 3.0)
                    .collect()
            }
        };
        if g.iter().any(|v| !v.is_finite()) {
            return Err(Error::Evaluation("gradient is not finite".into()));
        }
        Ok(g)
    }

    fn fd_gradient(&self, x: &[f64], h: f64) -> Vec<f64> {
        (0..self.dim)
            .map(|j| {
                let mut xp = x.to_vec();
                let mut xm = x.to_vec();
                xp[j] += h;
                xm[j] -= h;
                (self.eval(&xp) - self.eval(&xm)) / (2.0 * h)
            })
            .collect()
    }

    /// Hessian of `g` at a unit direction, symmetrized. The direction itself
    /// is a null eigenvector because the gradient is homogeneous of degree 0.
    pub fn hessian(&self, u: &Direction) -> Result<SymMatrix> {
        let x = u.coords();
        let m = match &self.repr {
            Repr::Symbolic(terms) => symbolic_hessian(terms, x),
            Repr::Callback(_) => {
                let h = self.fd.hessian;
                let coarse = self.fd_hessian(x, h);
                let fine = self.fd_hessian(x, 0.5 * h);
                let n = self.dim;
                let rows: Vec<Vec<f64>> = (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| (4.0 * fine[i][j] - coarse[i][j]) / 3.0)
                            .collect()
                    })
                    .collect();
                SymMatrix::from_rows(&rows)
            }
        };
        for i in 0..self.dim {
            for j in 0..self.dim {
                if !m.get(i, j).is_finite() {
                    return Err(Error::Evaluation("hessian is not finite".into()));
                }
            }
        }
        Ok(m)
    }

    fn fd_hessian(&self, x: &[f64], h: f64) -> Vec<Vec<f64>> {
        let n = self.dim;
        let f0 = self.eval(x);
        let mut m = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in i..n {
                let v = if i == j {
                    let mut xp = x.to_vec();
                    let mut xm = x.to_vec();
                    xp[i] += h;
                    xm[i] -= h;
                    (self.eval(&xp) - 2.0 * f0 + self.eval(&xm)) / (h * h)
                } else {
                    let mut pp = x.to_vec();
                    let mut pm = x.to_vec();
                    let mut mp = x.to_vec();
                    let mut mm = x.to_vec();
                    pp[i] += h;
                    pp[j] += h;
                    pm[i] += h;
                    pm[j] -= h;
                    mp[i] -= h;
                    mp[j] += h;
                    mm[i] -= h;
                    mm[j] -= h;
                    (self.eval(&pp) - self.eval(&pm) - self.eval(&mp) + self.eval(&mm))
                        / (4.0 * h * h)
                };
                m[i][j] = v;
                m[j][i] = v;
            }
        }
        m
    }

    /// Validates oddness and the degree-1 Euler identity `g(u) = u . H(u)` on
    /// a direction sample.
    pub fn validate(&self, samples: &[Direction]) -> Result<()> {
        for u in samples {
            let gu = self.eval(u.coords());
            let gneg = self.eval(u.negated().coords());
            if (gu + gneg).abs() > 1e-10 * (1.0 + gu.abs()) {
                return Err(Error::Admissibility(format!(
                    "seed is not odd at {:?}: g(u) = {gu}, g(-u) = {gneg}",
                    u.coords()
                )));
            }
            let h = self.gradient(u)?;
            let euler: f64 = u.coords().iter().zip(&h).map(|(a, b)| a * b).sum();
            if (gu - euler).abs() > 1e-8 * (1.0 + gu.abs()) {
                return Err(Error::Admissibility(format!(
                    "degree-1 identity fails at {:?}: g = {gu}, u.H = {euler}",
                    u.coords()
                )));
            }
        }
        Ok(())
    }

    fn check_oddness(&self) -> Result<()> {
        let dirs = validation_directions(self.dim);
        for u in &dirs {
            let gu = self.eval(u.coords());
            let neg: Vec<f64> = u.coords().iter().map(|v| -v).collect();
            let gneg = self.eval(&neg);
            if !gu.is_finite() || !gneg.is_finite() {
                return Err(Error::Evaluation("callback returned a non-finite value".into()));
            }
            if (gu + gneg).abs() > 1e-10 * (1.0 + gu.abs()) {
                return Err(Error::Admissibility(
                    "callback is not odd; use the symmetrizing constructor if intended".into(),
                ));
            }
        }
        Ok(())
    }
}

fn validation_directions(dim: usize) -> Vec<Direction> {
    let mut dirs = Vec::new();
    match dim {
        2 => {
            for k in 0..32 {
                dirs.push(Direction::from_angle(
                    2.0 * std::f64::consts::PI * k as f64 / 32.0 + 0.05,
                ));
            }
        }
        _ => {
            // deterministic low-discrepancy-ish sample
            let mut state = 0x9E3779B97F4A7C15u64;
            for _ in 0..64 {
                let mut c = Vec::with_capacity(dim);
                for _ in 0..dim {
                    state ^= state << 13;
                    state ^= state >> 7;
                    state ^= state << 17;
                    c.push((state >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0);
                }
                if let Ok(d) = Direction::new(c) {
                    dirs.push(d);
                }
            }
        }
    }
    dirs
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn mono(x: &[f64], ex: &[u32]) -> f64 {
    ex.iter()
        .zip(x)
        .map(|(&e, &xi)| xi.powi(e as i32))
        .product()
}

/// d/dx_j of the monomial: drops one power in slot j.
fn mono_d(x: &[f64], ex: &[u32], j: usize) -> f64 {
    if ex[j] == 0 {
        return 0.0;
    }
    let mut v = ex[j] as f64;
    for (i, (&e, &xi)) in ex.iter().zip(x).enumerate() {
        let p = if i == j { e - 1 } else { e };
        v *= xi.powi(p as i32);
    }
    v
}

fn mono_dd(x: &[f64], ex: &[u32], j: usize, l: usize) -> f64 {
    if j == l {
        if ex[j] < 2 {
            return 0.0;
        }
        let mut v = (ex[j] * (ex[j] - 1)) as f64;
        for (i, (&e, &xi)) in ex.iter().zip(x).enumerate() {
            let p = if i == j { e - 2 } else { e };
            v *= xi.powi(p as i32);
        }
        v
    } else {
        if ex[j] == 0 || ex[l] == 0 {
            return 0.0;
        }
        let mut v = (ex[j] * ex[l]) as f64;
        for (i, (&e, &xi)) in ex.iter().zip(x).enumerate() {
            let p = if i == j || i == l { e - 1 } else { e };
            v *= xi.powi(p as i32);
        }
        v
    }
}

fn symbolic_gradient(terms: &[MonomialTerm], x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let rho = norm(x);
    let mut g = vec![0.0; n];
    for t in terms {
        let k = t.degree() as i32;
        let m = mono(x, &t.exponents);
        let r1k = rho.powi(1 - k);
        let r1k2 = rho.powi(-1 - k);
        for (j, gj) in g.iter_mut().enumerate() {
            *gj += t.coefficient
                * (mono_d(x, &t.exponents, j) * r1k + (1 - k) as f64 * m * x[j] * r1k2);
        }
    }
    g
}

fn symbolic_hessian(terms: &[MonomialTerm], x: &[f64]) -> SymMatrix {
    let n = x.len();
    let rho = norm(x);
    let mut rows = vec![vec![0.0; n]; n];
    for t in terms {
        let k = t.degree() as i32;
        let c = t.coefficient;
        let m = mono(x, &t.exponents);
        let r1k = rho.powi(1 - k);
        let rm1k = rho.powi(-1 - k);
        let rm3k = rho.powi(-3 - k);
        let a = (1 - k) as f64;
        let b = a * (-1 - k) as f64;
        for j in 0..n {
            let mj = mono_d(x, &t.exponents, j);
            for l in j..n {
                let ml = mono_d(x, &t.exponents, l);
                let delta = if j == l { 1.0 } else { 0.0 };
                let v = c
                    * (mono_dd(x, &t.exponents, j, l) * r1k
                        + a * (mj * x[l] + ml * x[j] + m * delta) * rm1k
                        + b * m * x[j] * x[l] * rm3k);
                rows[j][l] += v;
                if l != j {
                    rows[l][j] += v;
                }
            }
        }
    }
    SymMatrix::from_rows(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(coords: &[f64]) -> Direction {
        Direction::new(coords.to_vec()).unwrap()
    }

    #[test]
    fn zero_seed_has_zero_gradient() {
        let g = OddSeedFunction::symbolic(2, vec![]).unwrap();
        let h = g.gradient(&unit(&[0.6, 0.8])).unwrap();
        assert_eq!(h, vec![0.0, 0.0]);
        assert_eq!(g.hessian(&unit(&[0.6, 0.8])).unwrap(), SymMatrix::zero(2));
    }

    #[test]
    fn even_degree_terms_rejected() {
        let t = MonomialTerm {
            coefficient: 1.0,
            exponents: vec![1, 1],
        };
        assert!(OddSeedFunction::symbolic(2, vec![t]).is_err());
    }

    #[test]
    fn cos3theta_polar_form() {
        // g(rho, theta) = rho * eps * cos(3 theta)
        let eps = 1.0 / 16.0;
        let g = OddSeedFunction::cos3theta(eps);
        for k in 0..24 {
            let th = 0.21 + k as f64 * 0.26;
            let u = Direction::from_angle(th);
            let want = eps * (3.0 * th).cos();
            assert!((g.eval(u.coords()) - want).abs() < 1e-12);
        }
    }

    #[test]
    fn planar_gradient_matches_polar_formula() {
        // H = (-a' sin + a cos, a' cos + a sin) with a = eps cos(3 theta)
        let eps = 1.0 / 16.0;
        let g = OddSeedFunction::cos3theta(eps);
        for k in 0..24 {
            let th = 0.1 + k as f64 * 0.26;
            let a = eps * (3.0 * th).cos();
            let ap = -3.0 * eps * (3.0 * th).sin();
            let want = [
                -ap * th.sin() + a * th.cos(),
                ap * th.cos() + a * th.sin(),
            ];
            let h = g.gradient(&Direction::from_angle(th)).unwrap();
            assert!((h[0] - want[0]).abs() < 1e-12, "theta {th}");
            assert!((h[1] - want[1]).abs() < 1e-12);
        }
    }

    #[test]
    fn linear_seed_gradient_is_constant() {
        let g = OddSeedFunction::linear(&[0.3, -0.7, 0.2]).unwrap();
        for c in [[1.0, 0.0, 0.0], [0.0, 0.6, 0.8], [-0.5, 0.5, 0.7]] {
            let h = g.gradient(&unit(&c)).unwrap();
            assert!((h[0] - 0.3).abs() < 1e-12);
            assert!((h[1] + 0.7).abs() < 1e-12);
            assert!((h[2] - 0.2).abs() < 1e-12);
        }
    }

    #[test]
    fn planar_hessian_eigenvalues_are_zero_and_a_plus_a2() {
        // nonzero eigenvalue at rho = 1 equals a + a'' = eps (1 - 9) cos(3 theta)
        let eps = 1.0 / 16.0;
        let g = OddSeedFunction::cos3theta(eps);
        for k in 0..16 {
            let th = 0.05 + k as f64 * 0.39;
            let want = eps * (1.0 - 9.0) * (3.0 * th).cos();
            let ev = g.hessian(&Direction::from_angle(th)).unwrap().eigenvalues();
            let mut pair = vec![ev[0], ev[1]];
            pair.sort_by(|a, b| a.abs().partial_cmp(&b.abs()).unwrap());
            assert!(pair[0].abs() < 1e-10, "null eigenvalue, got {pair:?}");
            assert!((pair[1] - want).abs() < 1e-10, "theta {th}: {pair:?} vs {want}");
        }
    }

    #[test]
    fn xyz_hessian_matches_hand_differentiation_at_e1() {
        // g = eps xyz / rho^2; at u = (1,0,0): d2g/dydz = eps, rest of the
        // block zero, and row/column x vanish by homogeneity.
        let eps = 0.35;
        let g = OddSeedFunction::xyz(eps);
        let m = g.hessian(&unit(&[1.0, 0.0, 0.0])).unwrap();
        for i in 0..3 {
            assert!(m.get(0, i).abs() < 1e-12);
        }
        assert!(m.get(1, 1).abs() < 1e-12);
        assert!(m.get(2, 2).abs() < 1e-12);
        assert!((m.get(1, 2) - eps).abs() < 1e-12);
        let ev = g.hessian(&unit(&[1.0, 0.0, 0.0])).unwrap().eigenvalues();
        assert!((ev[0] + eps).abs() < 1e-10);
        assert!(ev[1].abs() < 1e-10);
        assert!((ev[2] - eps).abs() < 1e-10);
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let seeds = [
            OddSeedFunction::cos3theta(1.0 / 16.0),
            OddSeedFunction::random_odd_cubic(0.2, 11),
        ];
        for g in &seeds {
            let dirs = validation_directions(g.dim());
            for u in dirs.iter().take(40) {
                let analytic = g.gradient(u).unwrap();
                let h = 1e-5;
                for j in 0..g.dim() {
                    let mut xp = u.coords().to_vec();
                    let mut xm = u.coords().to_vec();
                    xp[j] += h;
                    xm[j] -= h;
                    let fd = (g.eval(&xp) - g.eval(&xm)) / (2.0 * h);
                    assert!(
                        (analytic[j] - fd).abs() <= 1e-6 * (1.0 + analytic[j].abs()),
                        "component {j}: {} vs {fd}",
                        analytic[j]
                    );
                }
            }
        }
    }

    #[test]
    fn callback_seed_rejects_non_odd() {
        let result = OddSeedFunction::callback(2, |x| x[0] * x[0]);
        assert!(result.is_err());
        let sym = OddSeedFunction::callback_symmetrized(2, |x| x[0] * x[0] + x[1]).unwrap();
        // the odd part of x^2 + y is y
        let u = unit(&[0.6, 0.8]);
        assert!((sym.eval(u.coords()) - 0.8).abs() < 1e-12);
    }

    #[test]
    fn non_finite_callback_is_an_evaluation_error() {
        let result = OddSeedFunction::callback(2, |x| 1.0 / (x[0] - x[0]));
        assert!(matches!(result, Err(Error::Evaluation(_))));
        let partial = OddSeedFunction::callback_symmetrized(3, |x| x[2] / x[0]).unwrap();
        // gradient at a pole propagates as an evaluation error
        let at_pole = partial.gradient(&unit(&[0.0, 1.0, 0.0]));
        assert!(at_pole.is_err());
    }

    #[test]
    fn callback_gradient_close_to_analytic() {
        let exact = OddSeedFunction::cos3theta(1.0 / 16.0);
        let inner = OddSeedFunction::cos3theta(1.0 / 16.0);
        let cb = OddSeedFunction::callback(2, move |x: &[f64]| inner.eval(x)).unwrap();
        for k in 0..12 {
            let u = Direction::from_angle(0.2 + 0.5 * k as f64);
            let a = exact.gradient(&u).unwrap();
            let f = cb.gradient(&u).unwrap();
            for j in 0..2 {
                assert!((a[j] - f[j]).abs() < 1e-9, "{} vs {}", a[j], f[j]);
            }
            let ha = exact.hessian(&u).unwrap();
            let hf = cb.hessian(&u).unwrap();
            for i in 0..2 {
                for j in 0..2 {
                    assert!((ha.get(i, j) - hf.get(i, j)).abs() < 1e-6);
                }
            }
        }
    }

    #[test]
    fn euler_identity_validation() {
        let g = OddSeedFunction::random_odd_cubic(0.3, 5);
        let dirs = validation_directions(3);
        g.validate(&dirs).unwrap();
    }
}
