//! Adaptive Gauss–Legendre quadrature with a step-doubling error estimate.

use std::sync::OnceLock;

use crate::error::{Error, Result};

const ORDER: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureOptions {
    /// Absolute error target.
    pub abs_tol: f64,
    /// Relative error target; the effective target is the smaller of the two.
    pub rel_tol: f64,
    /// Maximum number of panel splits.
    pub max_subdivisions: usize,
    /// Integrate in `u` with `t = anchor ± u²` (removes the square-root
    /// singularity at the flattening endpoint).
    pub substitute_endpoint: bool,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        Self { abs_tol: 1e-8, rel_tol: 1e-8, max_subdivisions: 500, substitute_endpoint: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error_estimate: f64,
    pub panels: usize,
}

/// Legendre nodes and weights on [-1, 1] by Newton iteration on `P_n`.
pub fn gauss_legendre_rule(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre_rule(ORDER))
}

fn panel<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> f64 {
    let (nodes, weights) = rule();
    let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
    nodes.iter().zip(weights).map(|(x, w)| w * f(mid + half * x)).sum::<f64>() * half
}

/// Integrates `f` over `[a, b]`, splitting panels until each one agrees with
/// its two halves to within its share of the tolerance.
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, opts: &QuadratureOptions) -> Result<Integral> {
    if a == b {
        return Ok(Integral { value: 0.0, error_estimate: 0.0, panels: 0 });
    }
    let width = (b - a).abs();
    let coarse = panel(&mut f, a, b);
    let mut stack = vec![(a, b, coarse)];
    let mut value = 0.0;
    let mut magnitude = 0.0;
    let mut error = 0.0;
    let mut splits = 0;
    let mut panels = 0;
    let mut scale = coarse.abs();
    while let Some((lo, hi, whole)) = stack.pop() {
        let mid = 0.5 * (lo + hi);
        let left = panel(&mut f, lo, mid);
        let right = panel(&mut f, mid, hi);
        let fine = left + right;
        let diff = (fine - whole).abs();
        scale = scale.max(fine.abs());
        let target = opts.abs_tol.min(opts.rel_tol * scale);
        let share = target * (hi - lo).abs() / width;
        if diff <= share || splits >= opts.max_subdivisions {
            value += fine;
            magnitude += left.abs() + right.abs();
            error += diff;
            panels += 2;
        } else {
            splits += 1;
            stack.push((mid, hi, right));
            stack.push((lo, mid, left));
        }
    }
    // relative to the integral of |f|: cancellation cannot be resolved further
    let target = opts.abs_tol.min(opts.rel_tol * magnitude);
    if !value.is_finite() || error > target {
        return Err(Error::QuadratureFailure { tolerance: target, estimate: error });
    }
    Ok(Integral { value, error_estimate: error, panels })
}
