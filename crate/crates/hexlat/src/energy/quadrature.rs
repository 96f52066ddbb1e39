//! Composite Gauss–Legendre quadrature with panel doubling.

use crate::error::{Error, Result};
use std::f64::consts::PI;
use std::sync::OnceLock;

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..(n + 1) / 2 {
            // Tricomi initial guess, then Newton on P_n
            let mut t = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, t);
                dp = d;
                let dt = p / d;
                t -= dt;
                if dt.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, t);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - t * t) * dp * dp);
            nodes[i] = -t;
            nodes[n - 1 - i] = t;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    /// Shared 64-point rule.
    pub fn g64() -> &'static GaussLegendre {
        static RULE: OnceLock<GaussLegendre> = OnceLock::new();
        RULE.get_or_init(|| GaussLegendre::new(64))
    }

    /// Shared 16-point rule.
    pub fn g16() -> &'static GaussLegendre {
        static RULE: OnceLock<GaussLegendre> = OnceLock::new();
        RULE.get_or_init(|| GaussLegendre::new(16))
    }

    pub fn integrate<F>(&self, a: f64, b: f64, panels: usize, f: &mut F) -> Result<f64>
    where
        F: FnMut(f64) -> Result<f64>,
    {
        let h = (b - a) / panels as f64;
        let mut total = 0.0;
        for p in 0..panels {
            let lo = a + h * p as f64;
            let mid = lo + 0.5 * h;
            let mut s = 0.0;
            for (t, w) in self.nodes.iter().zip(&self.weights) {
                s += w * f(mid + 0.5 * h * t)?;
            }
            total += 0.5 * h * s;
        }
        Ok(total)
    }
}

fn legendre(n: usize, t: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = t;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * t * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (t * p1 - p0) / (t * t - 1.0);
    (p1, d)
}

const MAX_PANELS: usize = 1 << 12;

/// Integrates `f` over `[a, b]`, doubling the panel count until two
/// successive estimates agree to `rel_tol` or to `abs_tol`.
pub fn integrate_adaptive<F>(rule: &GaussLegendre, a: f64, b: f64, rel_tol: f64, abs_tol: f64, mut f: F) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut panels = 1;
    let mut prev = rule.integrate(a, b, panels, &mut f)?;
    while panels < MAX_PANELS {
        panels *= 2;
        let cur = rule.integrate(a, b, panels, &mut f)?;
        if !cur.is_finite() {
            return Err(Error::QuadratureDivergence { x_max: b });
        }
        if (cur - prev).abs() <= (rel_tol * cur.abs()).max(abs_tol) {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::QuadratureDivergence { x_max: b })
}
