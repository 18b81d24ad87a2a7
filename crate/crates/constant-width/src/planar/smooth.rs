use crate::error::{Error, Result};
use crate::planar::profile::{simpson_with_breaks, BetaProfile};
use std::f64::consts::PI;
use std::sync::Arc;

/// Mollifies an admissible profile with a triangular kernel of half-width
/// `pi / 2^stage`, then restores the closure condition by projecting out the
/// first-harmonic component, clipping to `[-1, 1]` and iterating the
/// projection to a fixed point (tolerance 1e-9, at most 20 rounds).
///
/// The curves of the smoothed stages converge uniformly to the curve of the
/// input as the stage grows.
pub fn smooth_beta_sequence(beta: &BetaProfile, stage: u32) -> Result<BetaProfile> {
    if stage == 0 || stage > 24 {
        return Err(Error::Config("stage must be in 1..=24".into()));
    }
    let w = PI / 2f64.powi(stage as i32);
    let base: Arc<dyn Fn(f64) -> f64 + Send + Sync> = mollify(beta, w);

    // kink locations of the mollified profile, for panel-aligned quadrature
    let mut breaks: Vec<f64> = Vec::new();
    for &b in beta.breaks() {
        for cand in [b - w, b + w] {
            let folded = cand.rem_euclid(PI);
            breaks.push(folded);
        }
    }

    // anti-periodic convolution leaves first harmonics invariant, so the
    // projection is usually a no-op; the loop handles clipped profiles
    let mut gamma_c = 0.0;
    let mut gamma_s = 0.0;
    let mut converged = false;
    let mut residual = f64::INFINITY;
    for _ in 0..20 {
        let f = |t: f64| (base(t) - gamma_c * t.cos() - gamma_s * t.sin()).clamp(-1.0, 1.0);
        let fc = |t: f64| f(t) * t.cos();
        let fs = |t: f64| f(t) * t.sin();
        let c = 2.0 / PI * simpson_with_breaks(&fc, 0.0, PI, &breaks, 4096);
        let s = 2.0 / PI * simpson_with_breaks(&fs, 0.0, PI, &breaks, 4096);
        residual = c.abs().max(s.abs());
        if residual < 1e-9 {
            converged = true;
            break;
        }
        gamma_c += c;
        gamma_s += s;
    }
    if !converged {
        return Err(Error::Evaluation(format!(
            "first-harmonic re-projection did not converge; residual {residual}"
        )));
    }

    let profile = BetaProfile::callback(
        move |t: f64| (base(t) - gamma_c * t.cos() - gamma_s * t.sin()).clamp(-1.0, 1.0),
        breaks,
    );
    Ok(profile)
}

/// Triangular-kernel convolution of the anti-periodic extension.
fn mollify(beta: &BetaProfile, w: f64) -> Arc<dyn Fn(f64) -> f64 + Send + Sync> {
    match beta {
        BetaProfile::PiecewiseConstant { .. } => {
            // exact: integrate the kernel CDF against the panel structure
            let beta = beta.clone();
            Arc::new(move |t: f64| convolve_panels_exact(&beta, t, w))
        }
        _ => {
            let beta = beta.clone();
            let profile_breaks: Vec<f64> = beta.breaks().to_vec();
            Arc::new(move |t: f64| {
                // Simpson over the kernel support, panels aligned to the
                // kernel kink and to any profile jumps inside the window
                let f = |s: f64| kernel(s, w) * beta.eval(t - s);
                let mut sbreaks = vec![0.0];
                for &b in &profile_breaks {
                    // jumps of the extension live at b + j pi
                    let mut e = b + PI * ((t - w - b) / PI).ceil();
                    while e <= t + w {
                        sbreaks.push(t - e);
                        e += PI;
                    }
                }
                simpson_with_breaks(&f, -w, w, &sbreaks, 128)
            })
        }
    }
}

fn kernel(s: f64, w: f64) -> f64 {
    let a = 1.0 - s.abs() / w;
    if a > 0.0 {
        a / w
    } else {
        0.0
    }
}

/// Kernel CDF `S(x) = int_{-inf}^x K`, piecewise quadratic.
fn kernel_cdf(x: f64, w: f64) -> f64 {
    if x <= -w {
        0.0
    } else if x <= 0.0 {
        let u = x + w;
        u * u / (2.0 * w * w)
    } else if x <= w {
        1.0 - (w - x) * (w - x) / (2.0 * w * w)
    } else {
        1.0
    }
}

/// Exact triangular-kernel convolution of a panel profile:
/// each extended panel `[p, q)` with value `c` contributes
/// `c (S(t - p) - S(t - q))`.
fn convolve_panels_exact(beta: &BetaProfile, t: f64, w: f64) -> f64 {
    let BetaProfile::PiecewiseConstant { edges, values } = beta else {
        unreachable!("panel convolution on a non-panel profile")
    };
    // cover [t - w, t + w] with anti-periodic copies of the partition
    let lo = t - w;
    let hi = t + w;
    let first_copy = ((lo) / PI).floor() as i64;
    let last_copy = ((hi) / PI).floor() as i64;
    let mut acc = 0.0;
    for copy in first_copy..=last_copy {
        let offset = copy as f64 * PI;
        let sign = if copy.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        for i in 0..values.len() {
            let p = edges[i] + offset;
            let q = edges[i + 1] + offset;
            if q < lo || p > hi {
                continue;
            }
            acc += sign * values[i] * (kernel_cdf(t - p, w) - kernel_cdf(t - q, w));
        }
    }
    acc
}
