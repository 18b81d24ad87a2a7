use crate::error::{Error, Result};
use crate::planar::profile::{simpson_with_breaks, BetaProfile, Harmonic};
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

type AngularFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A pi-anti-periodic angular function `a(theta)`, the polar coefficient of a
/// planar seed `g = rho a(theta)`.
#[derive(Clone)]
pub enum AngularFunction {
    /// Odd-harmonic trig polynomial; differentiated exactly.
    TrigPoly { harmonics: Vec<Harmonic> },
    /// Black box; second derivatives by Richardson-extrapolated central
    /// differences with step 1e-4.
    Callback { f: AngularFn },
}

impl fmt::Debug for AngularFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AngularFunction::TrigPoly { harmonics } => f
                .debug_struct("TrigPoly")
                .field("harmonics", harmonics)
                .finish(),
            AngularFunction::Callback { .. } => f.write_str("Callback(..)"),
        }
    }
}

impl AngularFunction {
    pub fn trig(harmonics: Vec<Harmonic>) -> Result<Self> {
        if harmonics.iter().any(|h| h.k % 2 == 0) {
            return Err(Error::Config("even harmonics are not anti-periodic".into()));
        }
        Ok(Self::TrigPoly { harmonics })
    }

    pub fn callback(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self::Callback { f: Arc::new(f) }
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self {
            Self::TrigPoly { harmonics } => harmonics
                .iter()
                .map(|h| {
                    let kt = h.k as f64 * t;
                    h.cos_coeff * kt.cos() + h.sin_coeff * kt.sin()
                })
                .sum(),
            Self::Callback { f } => f(t),
        }
    }

    pub fn second_derivative(&self, t: f64) -> f64 {
        match self {
            Self::TrigPoly { harmonics } => harmonics
                .iter()
                .map(|h| {
                    let k2 = -((h.k as f64) * (h.k as f64));
                    let kt = h.k as f64 * t;
                    k2 * (h.cos_coeff * kt.cos() + h.sin_coeff * kt.sin())
                })
                .sum(),
            Self::Callback { f } => {
                let d2 = |h: f64| (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h);
                let coarse = d2(1e-4);
                let fine = d2(5e-5);
                (4.0 * fine - coarse) / 3.0
            }
        }
    }

    /// Checks `a(t + pi) = -a(t)` on a sample.
    pub fn check_anti_periodic(&self, tol: f64) -> Result<()> {
        for i in 0..64 {
            let t = PI * i as f64 / 64.0;
            let sum = self.eval(t + PI) + self.eval(t);
            if sum.abs() > tol * (1.0 + self.eval(t).abs()) {
                return Err(Error::Admissibility(format!(
                    "a is not pi-anti-periodic at t = {t}: a(t) + a(t + pi) = {sum}"
                )));
            }
        }
        Ok(())
    }
}

/// The profile `beta = (2/r)(a + a'')` of a planar seed coefficient.
///
/// For trig input the harmonic `k` maps to coefficient `(2/r)(1 - k^2)`, so
/// first harmonics vanish: they only translate the body.
pub fn beta_from_a(a: &AngularFunction, r: f64) -> Result<BetaProfile> {
    if r.is_nan() || r <= 0.0 {
        return Err(Error::Precondition(format!("width must be positive, got {r}")));
    }
    a.check_anti_periodic(1e-8)?;
    let profile = match a {
        AngularFunction::TrigPoly { harmonics } => {
            let mapped: Vec<Harmonic> = harmonics
                .iter()
                .filter(|h| h.k != 1)
                .map(|h| {
                    let s = 2.0 / r * (1.0 - (h.k as f64) * (h.k as f64));
                    Harmonic {
                        k: h.k,
                        cos_coeff: s * h.cos_coeff,
                        sin_coeff: s * h.sin_coeff,
                    }
                })
                .collect();
            BetaProfile::trig_polynomial(mapped)?
        }
        AngularFunction::Callback { .. } => {
            let a = a.clone();
            let r_copy = r;
            BetaProfile::callback(
                move |t: f64| 2.0 / r_copy * (a.eval(t) + a.second_derivative(t)),
                vec![],
            )
        }
    };
    // quadrature-backed coefficients carry finite-difference noise in a''
    let slack = match a {
        AngularFunction::TrigPoly { .. } => 1e-9,
        AngularFunction::Callback { .. } => 1e-6,
    };
    let (sup, at) = profile.sup_abs();
    if sup > 1.0 + slack {
        return Err(Error::Admissibility(format!(
            "|beta({at})| = {sup} exceeds 1; the smallest admissible width for this \
             coefficient is r = {}",
            r * sup
        )));
    }
    Ok(profile)
}

/// Solves `(r/2) beta = a + a''` by variation of parameters:
/// `a(theta) = \int_0^theta (r/2) beta(s) [cos s sin theta - sin s cos theta] ds`.
///
/// The particular solution has `a(0) = a(pi) = 0` and is pi-anti-periodic;
/// the omitted homogeneous part `C1 cos + C2 sin` only translates the body.
/// Panel and trig profiles integrate in closed form; callbacks use composite
/// Simpson with at least `quadrature_n` panels.
pub fn a_from_beta(beta: &BetaProfile, r: f64, quadrature_n: usize) -> Result<AngularFunction> {
    beta.validate(1e-7)?;
    if r.is_nan() || r <= 0.0 {
        return Err(Error::Precondition(format!("width must be positive, got {r}")));
    }
    let pq = pq_integrals(beta, r, quadrature_n.max(2048));
    let f = move |theta: f64| {
        let (p, q) = pq(theta);
        theta.sin() * p - theta.cos() * q
    };
    let a = AngularFunction::callback(f);
    a.check_anti_periodic(1e-6)?;
    Ok(a)
}

/// Builds `theta -> (P, Q)` with `P = int_0^theta (r/2) beta cos` and
/// `Q = int_0^theta (r/2) beta sin`, valid on `[0, 2 pi]`.
fn pq_integrals(beta: &BetaProfile, r: f64, n: usize) -> Box<dyn Fn(f64) -> (f64, f64) + Send + Sync> {
    use crate::planar::curve::{int_cos_cos, int_cos_sin, int_sin_cos, int_sin_sin};
    match beta {
        BetaProfile::PiecewiseConstant { edges, values } => {
            // extend the partition anti-periodically over [0, 2 pi]
            let mut ext_edges: Vec<f64> = edges.clone();
            let mut ext_values: Vec<f64> = values.clone();
            ext_edges.extend(edges[1..].iter().map(|e| e + PI));
            ext_values.extend(values.iter().map(|v| -v));
            Box::new(move |theta: f64| {
                let th = theta.clamp(0.0, 2.0 * PI);
                let mut p = 0.0;
                let mut q = 0.0;
                for i in 0..ext_values.len() {
                    let (a, b) = (ext_edges[i], ext_edges[i + 1].min(th));
                    if b <= a {
                        break;
                    }
                    let c = 0.5 * r * ext_values[i];
                    p += c * (b.sin() - a.sin());
                    q += c * (a.cos() - b.cos());
                }
                (p, q)
            })
        }
        BetaProfile::TrigPolynomial { harmonics } => {
            let hs = harmonics.clone();
            Box::new(move |theta: f64| {
                let mut p = 0.0;
                let mut q = 0.0;
                for h in &hs {
                    if h.k == 1 {
                        continue; // never reached: validation rejects k = 1
                    }
                    let k = h.k as f64;
                    p += 0.5
                        * r
                        * (h.cos_coeff * int_cos_cos(k, theta)
                            + h.sin_coeff * int_sin_cos(k, theta));
                    q += 0.5
                        * r
                        * (h.cos_coeff * int_cos_sin(k, theta)
                            + h.sin_coeff * int_sin_sin(k, theta));
                }
                (p, q)
            })
        }
        BetaProfile::Callback { .. } => {
            let beta = beta.clone();
            let breaks: Vec<f64> = beta
                .breaks()
                .iter()
                .flat_map(|&b| [b, b + PI])
                .collect();
            Box::new(move |theta: f64| {
                let cospart = |s: f64| 0.5 * r * beta.eval(s) * s.cos();
                let sinpart = |s: f64| 0.5 * r * beta.eval(s) * s.sin();
                let within: Vec<f64> = breaks
                    .iter()
                    .copied()
                    .filter(|&b| b > 0.0 && b < theta)
                    .collect();
                (
                    simpson_with_breaks(&cospart, 0.0, theta, &within, n),
                    simpson_with_breaks(&sinpart, 0.0, theta, &within, n),
                )
            })
        }
    }
}
