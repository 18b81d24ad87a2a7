use crate::error::{Error, Result};
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

/// One odd harmonic `cos_coeff * cos(k t) + sin_coeff * sin(k t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Harmonic {
    pub k: u32,
    pub cos_coeff: f64,
    pub sin_coeff: f64,
}

type ProfileFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A planar curvature-radius profile: the radius of curvature of the curve
/// built from it is `(r/2)(1 + beta(t))` at normal angle `t`.
///
/// The profile is defined on `[0, pi)` and extended to the line by
/// anti-periodicity `beta(t + pi) = -beta(t)`. Admissibility additionally
/// requires `|beta| <= 1` and a vanishing closure integral.
#[derive(Clone)]
pub enum BetaProfile {
    /// Constant on each panel `[edges[i], edges[i+1])`. Exact antiderivatives,
    /// no quadrature error anywhere downstream.
    PiecewiseConstant { edges: Vec<f64>, values: Vec<f64> },
    /// Trigonometric polynomial in odd harmonics; closed-form integrals.
    TrigPolynomial { harmonics: Vec<Harmonic> },
    /// Black box on `[0, pi)` with declared smoothness breakpoints.
    Callback { f: ProfileFn, breaks: Vec<f64> },
}

impl fmt::Debug for BetaProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BetaProfile::PiecewiseConstant { edges, values } => f
                .debug_struct("PiecewiseConstant")
                .field("edges", edges)
                .field("values", values)
                .finish(),
            BetaProfile::TrigPolynomial { harmonics } => f
                .debug_struct("TrigPolynomial")
                .field("harmonics", harmonics)
                .finish(),
            BetaProfile::Callback { breaks, .. } => f
                .debug_struct("Callback")
                .field("breaks", breaks)
                .finish_non_exhaustive(),
        }
    }
}

impl BetaProfile {
    /// A piecewise-constant profile on the partition
    /// `0 = edges[0] < ... < edges[m] = pi`.
    pub fn piecewise_constant(edges: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if edges.len() != values.len() + 1 {
            return Err(Error::Config("need one more edge than panel values".into()));
        }
        if edges.first() != Some(&0.0) || (edges.last().copied().unwrap_or(0.0) - PI).abs() > 1e-12
        {
            return Err(Error::Config("partition must span [0, pi]".into()));
        }
        if edges.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config("edges must be strictly increasing".into()));
        }
        Ok(Self::PiecewiseConstant { edges, values })
    }

    /// A trig-polynomial profile. Only odd harmonics are anti-periodic, so
    /// even `k` is rejected here; the `k = 1` closure obstruction is caught by
    /// [`BetaProfile::validate`].
    pub fn trig_polynomial(harmonics: Vec<Harmonic>) -> Result<Self> {
        if harmonics.iter().any(|h| h.k % 2 == 0) {
            return Err(Error::Config(
                "even harmonics are pi-periodic, not anti-periodic".into(),
            ));
        }
        Ok(Self::TrigPolynomial { harmonics })
    }

    /// A black-box profile with its smoothness breakpoints in `[0, pi)`.
    pub fn callback(
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        mut breaks: Vec<f64>,
    ) -> Self {
        breaks.retain(|b| (0.0..PI).contains(b));
        breaks.sort_by(|a, b| a.partial_cmp(b).unwrap());
        breaks.dedup();
        Self::Callback {
            f: Arc::new(f),
            breaks,
        }
    }

    /// The constant zero profile (a circle of radius `r/2`).
    pub fn circle() -> Self {
        Self::TrigPolynomial { harmonics: vec![] }
    }

    /// Evaluates the anti-periodic extension at any `t`.
    pub fn eval(&self, t: f64) -> f64 {
        if let Self::TrigPolynomial { harmonics } = self {
            // odd harmonics are globally anti-periodic; no folding needed
            return harmonics
                .iter()
                .map(|h| {
                    let kt = h.k as f64 * t;
                    h.cos_coeff * kt.cos() + h.sin_coeff * kt.sin()
                })
                .sum();
        }
        let (base, sign) = fold(t);
        sign * self.eval_base(base)
    }

    /// Evaluation on the fundamental interval `[0, pi)`.
    fn eval_base(&self, t: f64) -> f64 {
        match self {
            Self::PiecewiseConstant { edges, values } => {
                let i = match edges.binary_search_by(|e| e.partial_cmp(&t).unwrap()) {
                    Ok(i) => i.min(values.len() - 1),
                    Err(i) => i.saturating_sub(1).min(values.len() - 1),
                };
                values[i]
            }
            Self::TrigPolynomial { .. } => unreachable!("handled in eval"),
            Self::Callback { f, .. } => f(t),
        }
    }

    /// Largest `|beta|` over the fundamental interval (exact for panels,
    /// sampled on a fine grid otherwise), with its location.
    pub fn sup_abs(&self) -> (f64, f64) {
        match self {
            Self::PiecewiseConstant { edges, values } => values
                .iter()
                .zip(edges.iter())
                .map(|(v, e)| (v.abs(), *e))
                .fold((0.0, 0.0), |a, b| if b.0 > a.0 { b } else { a }),
            _ => {
                let n = 8192;
                (0..n)
                    .map(|i| {
                        let t = PI * i as f64 / n as f64;
                        (self.eval(t).abs(), t)
                    })
                    .fold((0.0, 0.0), |a, b| if b.0 > a.0 { b } else { a })
            }
        }
    }

    /// The closure integral over `[0, pi]` of `beta(u) (-sin u, cos u)`.
    /// Exact for panel and trig profiles; panel-aligned Simpson otherwise.
    pub fn closure_integral(&self) -> [f64; 2] {
        match self {
            Self::PiecewiseConstant { edges, values } => {
                let mut x = 0.0;
                let mut y = 0.0;
                for (i, c) in values.iter().enumerate() {
                    let (p, q) = (edges[i], edges[i + 1]);
                    x += c * (q.cos() - p.cos());
                    y += c * (q.sin() - p.sin());
                }
                [x, y]
            }
            Self::TrigPolynomial { harmonics } => {
                // only the k = 1 component survives against (-sin, cos)
                let mut x = 0.0;
                let mut y = 0.0;
                for h in harmonics {
                    if h.k == 1 {
                        x -= 0.5 * PI * h.sin_coeff;
                        y += 0.5 * PI * h.cos_coeff;
                    }
                }
                [x, y]
            }
            Self::Callback { .. } => {
                let fx = |u: f64| -self.eval(u) * u.sin();
                let fy = |u: f64| self.eval(u) * u.cos();
                [
                    simpson_with_breaks(&fx, 0.0, PI, self.breaks(), 4096),
                    simpson_with_breaks(&fy, 0.0, PI, self.breaks(), 4096),
                ]
            }
        }
    }

    /// Smoothness breakpoints inside `[0, pi)`.
    pub fn breaks(&self) -> &[f64] {
        match self {
            Self::PiecewiseConstant { edges, .. } => &edges[..edges.len() - 1],
            Self::TrigPolynomial { .. } => &[],
            Self::Callback { breaks, .. } => breaks,
        }
    }

    /// Checks the admissibility conditions: `|beta| <= 1` everywhere and a
    /// closure integral below `tol` (anti-periodicity holds by construction).
    pub fn validate(&self, tol: f64) -> Result<()> {
        let (sup, at) = self.sup_abs();
        if sup > 1.0 + 1e-9 {
            return Err(Error::Admissibility(format!(
                "|beta({at})| = {sup} exceeds 1"
            )));
        }
        let [x, y] = self.closure_integral();
        let miss = (x * x + y * y).sqrt();
        if miss > tol {
            return Err(Error::Admissibility(format!(
                "closure integral ({x}, {y}) has magnitude {miss} > {tol}"
            )));
        }
        Ok(())
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Self::PiecewiseConstant { .. } => "piecewise-constant",
            Self::TrigPolynomial { .. } => "trig-polynomial",
            Self::Callback { .. } => "callback",
        }
    }
}

/// Folds `t` into `[0, pi)` tracking the anti-periodic sign.
fn fold(t: f64) -> (f64, f64) {
    let mut base = t.rem_euclid(2.0 * PI);
    let mut sign = 1.0;
    if base >= PI {
        base -= PI;
        sign = -1.0;
    }
    // guard against rem_euclid landing exactly on pi from below rounding
    if base >= PI {
        base = 0.0;
        sign = -sign;
    }
    (base, sign)
}

/// Composite Simpson on `[lo, hi]` with panel boundaries at the listed breaks.
pub(crate) fn simpson_with_breaks(
    f: &dyn Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    breaks: &[f64],
    n: usize,
) -> f64 {
    let mut edges: Vec<f64> = vec![lo];
    for &b in breaks {
        if b > lo && b < hi {
            edges.push(b);
        }
    }
    edges.push(hi);
    edges.sort_by(|a, b| a.partial_cmp(b).unwrap());
    edges.dedup();
    let total = hi - lo;
    let mut sum = 0.0;
    for w in edges.windows(2) {
        let (a, b) = (w[0], w[1]);
        // subdivide proportionally; Simpson needs an even panel count
        let mut m = (((b - a) / total * n as f64).ceil() as usize).max(2);
        m += m % 2;
        let h = (b - a) / m as f64;
        // endpoints are nudged inside the piece so that evaluations at a
        // breakpoint take the value from the correct side of the jump
        let nudge = 1e-9 * h;
        let mut piece = f(a + nudge) + f(b - nudge);
        for i in 1..m {
            let x = a + i as f64 * h;
            piece += if i % 2 == 1 { 4.0 * f(x) } else { 2.0 * f(x) };
        }
        sum += piece * h / 3.0;
    }
    sum
}

/// The profile of the regular Reuleaux polygon with `2k + 1` vertices:
/// alternating `+1 / -1` on `2k + 1` equal panels.
pub fn reuleaux_beta(k: u32) -> Result<BetaProfile> {
    if k < 1 {
        return Err(Error::Config("need k >= 1".into()));
    }
    let m = 2 * k as usize + 1;
    let edges: Vec<f64> = (0..=m).map(|i| PI * i as f64 / m as f64).collect();
    let values: Vec<f64> = (0..m).map(|i| if i % 2 == 0 { 1.0 } else { -1.0 }).collect();
    BetaProfile::piecewise_constant(edges, values)
}

/// A profile on `[0, pi/2]` to be mirror-extended.
#[derive(Clone)]
pub enum HalfProfile {
    PiecewiseConstant { edges: Vec<f64>, values: Vec<f64> },
    Callback { f: ProfileFn, breaks: Vec<f64> },
}

impl HalfProfile {
    pub fn piecewise_constant(edges: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if edges.len() != values.len() + 1 {
            return Err(Error::Config("need one more edge than panel values".into()));
        }
        if edges.first() != Some(&0.0)
            || (edges.last().copied().unwrap_or(0.0) - 0.5 * PI).abs() > 1e-12
        {
            return Err(Error::Config("partition must span [0, pi/2]".into()));
        }
        if edges.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config("edges must be strictly increasing".into()));
        }
        Ok(Self::PiecewiseConstant { edges, values })
    }

    pub fn callback(f: impl Fn(f64) -> f64 + Send + Sync + 'static, breaks: Vec<f64>) -> Self {
        Self::Callback {
            f: Arc::new(f),
            breaks,
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self {
            Self::PiecewiseConstant { edges, values } => {
                let i = match edges.binary_search_by(|e| e.partial_cmp(&t).unwrap()) {
                    Ok(i) => i.min(values.len() - 1),
                    Err(i) => i.saturating_sub(1).min(values.len() - 1),
                };
                values[i]
            }
            Self::Callback { f, .. } => f(t),
        }
    }

    /// `\int_0^{pi/2} beta(t) sin t dt`, the weighted-measure integral that a
    /// mirror extension must kill. Exact for panels.
    pub fn mu_integral(&self) -> f64 {
        match self {
            Self::PiecewiseConstant { edges, values } => values
                .iter()
                .enumerate()
                .map(|(i, c)| c * (edges[i].cos() - edges[i + 1].cos()))
                .sum(),
            Self::Callback { f, breaks } => {
                let g = |t: f64| f(t) * t.sin();
                simpson_with_breaks(&g, 0.0, 0.5 * PI, breaks, 4096)
            }
        }
    }

    pub fn sup_abs(&self) -> f64 {
        match self {
            Self::PiecewiseConstant { values, .. } => {
                values.iter().fold(0.0, |m, v| m.max(v.abs()))
            }
            Self::Callback { f, .. } => (0..4097)
                .map(|i| f(0.5 * PI * i as f64 / 4096.0).abs())
                .fold(0.0, f64::max),
        }
    }
}

/// Extends a half profile by the mirror rule `beta(pi - t) = beta(t)` and
/// anti-periodicity. Mirror symmetry kills the cosine closure component; the
/// weighted integral precondition kills the sine component, so the result is
/// admissible whenever `|beta| <= 1`.
pub fn mirror_extend_beta(half: &HalfProfile, mu_tol: f64) -> Result<BetaProfile> {
    let mu = half.mu_integral();
    if mu.abs() > mu_tol {
        return Err(Error::Admissibility(format!(
            "weighted half-profile integral is {mu}, not 0"
        )));
    }
    if half.sup_abs() > 1.0 + 1e-9 {
        return Err(Error::Admissibility("|beta| exceeds 1 on the half interval".into()));
    }
    match half {
        HalfProfile::PiecewiseConstant { edges, values } => {
            let mut full_edges = edges.clone();
            let mut full_values = values.clone();
            for i in (0..values.len()).rev() {
                full_edges.push(PI - edges[i]);
                full_values.push(values[i]);
            }
            BetaProfile::piecewise_constant(full_edges, full_values)
        }
        HalfProfile::Callback { f, breaks } => {
            let f = Arc::clone(f);
            let mut full_breaks: Vec<f64> = breaks.clone();
            full_breaks.extend(breaks.iter().map(|b| PI - b));
            full_breaks.push(0.5 * PI);
            let eval = move |t: f64| {
                if t <= 0.5 * PI {
                    f(t)
                } else {
                    f(PI - t)
                }
            };
            Ok(BetaProfile::callback(eval, full_breaks))
        }
    }
}

/// Stage-`stage` fat-Cantor profile: `beta = +1` on a union of `2^stage`
/// intervals of total weighted measure exactly 1/2 and `-1` elsewhere,
/// mirror-extended. The intervals are built in the measure coordinate
/// `s = 1 - cos t`, where the construction removes the middle `4^-n` fraction
/// at stage `n` and the stage is trimmed to measure exactly 1/2.
pub fn cantor_profile(stage: u32) -> Result<BetaProfile> {
    if stage > 12 {
        return Err(Error::Resource("cantor stage too deep".into()));
    }
    // intervals in s-space within [0, 1]
    let mut intervals = vec![(0.0f64, 1.0f64)];
    for n in 1..=stage {
        let gap = 0.25f64.powi(n as i32);
        let mut next = Vec::with_capacity(intervals.len() * 2);
        for (a, b) in intervals {
            let mid = 0.5 * (a + b);
            next.push((a, mid - 0.5 * gap));
            next.push((mid + 0.5 * gap, b));
        }
        intervals = next;
    }
    let measure: f64 = intervals.iter().map(|(a, b)| b - a).sum();
    // trim each interval's right end so the total is exactly 1/2
    let trim = (measure - 0.5) / intervals.len() as f64;
    for iv in intervals.iter_mut() {
        iv.1 -= trim;
    }

    // map to t-space and assemble alternating panels on [0, pi/2]
    let to_t = |s: f64| (1.0 - s).clamp(-1.0, 1.0).acos();
    let mut edges = vec![0.0];
    let mut values = Vec::new();
    for (a, b) in &intervals {
        let (ta, tb) = (to_t(*a), to_t(*b));
        if ta > edges.last().copied().unwrap() + 1e-15 {
            values.push(-1.0);
            edges.push(ta);
        }
        values.push(1.0);
        edges.push(tb);
    }
    let half_pi = 0.5 * PI;
    if half_pi > edges.last().copied().unwrap() + 1e-15 {
        values.push(-1.0);
        edges.push(half_pi);
    } else {
        *edges.last_mut().unwrap() = half_pi;
    }
    let half = HalfProfile::piecewise_constant(edges, values)?;
    mirror_extend_beta(&half, 1e-12)
}
