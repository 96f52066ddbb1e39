use super::{linspace, Comparison, LemmaReport, VerifyConfig};
use crate::error::Result;
use crate::special_functions::{
    envelope_large_x, envelope_small_x, jacobi_theta_partial, mu, nu, SeriesConfig, ThetaArg,
};
use std::f64::consts::PI;

fn ty(x: f64, y: f64, cfg: &SeriesConfig) -> Result<f64> {
    jacobi_theta_partial(ThetaArg { x, y }, 0, 1, cfg)
}

fn txy(x: f64, y: f64, cfg: &SeriesConfig) -> Result<f64> {
    jacobi_theta_partial(ThetaArg { x, y }, 1, 1, cfg)
}

// Y avoids the zeros of sin(2πY) at 0 and 1/2.
fn y_grid() -> Vec<f64> {
    linspace(0.005, 0.495, 99)
}

/// Largest value of `lhs(X, Y, k) / rhs(X, k)` over the grids.
fn worst_ratio<L, R>(xs: &[f64], ks: &[i64], lhs: L, rhs: R) -> Result<(f64, (f64, f64, i64))>
where
    L: Fn(f64, f64, i64) -> Result<f64>,
    R: Fn(f64, i64) -> Result<f64>,
{
    let mut worst = (f64::NEG_INFINITY, (0.0, 0.0, 0));
    for &x in xs {
        for &k in ks {
            let r = rhs(x, k)?;
            for y in y_grid() {
                let v = lhs(x, y, k)?.abs() / r;
                if v > worst.0 {
                    worst = (v, (x, y, k));
                }
            }
        }
    }
    Ok(worst)
}

fn note(p: (f64, f64, i64)) -> String {
    format!("largest ratio at X = {:.4}, Y = {:.4}, k = {}", p.0, p.1, p.2)
}

/// `Σ(n−Y)³g / Σ(n−Y)g` with `g = e^{-π(n−Y)²/X}`.
pub fn cubic_moment_ratio(x: f64, y: f64) -> f64 {
    let (mut num, mut den) = (0.0, 0.0);
    for n in -30..=30 {
        let u = n as f64 - y;
        let g = (-PI * u * u / x).exp();
        num += u.powi(3) * g;
        den += u * g;
    }
    num / den
}

/// `(1/sin 2πY) d/dY (sin 2nπY / sin 2πY)`.
pub fn sine_quotient_derivative(n: i64, y: f64) -> f64 {
    let nf = n as f64;
    let (s, c) = (2.0 * PI * y).sin_cos();
    let (sn, cn) = (2.0 * PI * nf * y).sin_cos();
    2.0 * PI * (nf * cn * s - sn * c) / s.powi(3)
}

/// `1 − (1/36) Σ' n²m²|n²−m²|(n²−1)e^{-π(m²+n²−5)X}`, the sum excluding
/// `n, m ∈ {1, 2}`.
pub fn monotonicity_kernel(x: f64) -> f64 {
    let mut s = 0.0;
    for n in 1..=40i64 {
        for m in 1..=40i64 {
            if n <= 2 && m <= 2 {
                continue;
            }
            let (nf, mf) = (n as f64, m as f64);
            s += nf * nf * mf * mf * (nf * nf - mf * mf).abs() * (nf * nf - 1.0) * (-PI * (mf * mf + nf * nf - 5.0) * x).exp();
        }
    }
    1.0 - s / 36.0
}

pub fn verify_theta_bounds(cfg: &VerifyConfig) -> Result<Vec<LemmaReport>> {
    let s = &cfg.series;
    let mut out = Vec::new();
    let ks = [2, 3, 4, 5];

    let xs = linspace(0.2001, 3.0, 40);
    let (v, p) = worst_ratio(
        &xs,
        &ks,
        |x, y, k| Ok(ty(x, k as f64 * y, s)? / ty(x, y, s)?),
        |x, k| {
            let m = mu(x, s)?;
            Ok(k as f64 * (1.0 + m) / (1.0 - m))
        },
    )?;
    out.push(LemmaReport::new("theta_y_quotient_large_x", 1.0, v, Comparison::Le, 1e-12, "X in (1/5, 3], k in 2..5, 99 Y-values").with_note(note(p)));

    let xs = linspace(0.05, PI / (PI + 2.0) - 1e-4, 40);
    let (v, p) = worst_ratio(&xs, &ks, |x, y, k| Ok(ty(x, k as f64 * y, s)? / ty(x, y, s)?), |x, k| {
        Ok(k as f64 / PI * (PI / (4.0 * x)).exp())
    })?;
    out.push(LemmaReport::new("theta_y_quotient_small_x", 1.0, v, Comparison::Le, 1e-12, "X in [0.05, pi/(pi+2)), k in 2..5").with_note(note(p)));

    let xs = linspace(0.3, 3.0, 40);
    let (v, p) = worst_ratio(&xs, &ks, |x, y, k| Ok(txy(x, k as f64 * y, s)? / txy(x, y, s)?), |x, k| {
        let n = nu(x, s)?;
        Ok(k as f64 * (1.0 + n) / (1.0 - n))
    })?;
    out.push(LemmaReport::new("theta_xy_quotient", 1.0, v, Comparison::Le, 1e-12, "X in [0.3, 3], k in 2..5").with_note(note(p)));

    let xs = linspace(0.2001, 3.0, 40);
    let (v, p) = worst_ratio(&xs, &ks, |x, y, k| Ok(txy(x, k as f64 * y, s)? / ty(x, y, s)?), |x, k| {
        Ok(k as f64 * PI * (1.0 + nu(x, s)?) / (1.0 - mu(x, s)?))
    })?;
    out.push(LemmaReport::new("theta_xy_over_theta_y", 1.0, v, Comparison::Le, 1e-12, "X in (1/5, 3], k in 2..5").with_note(note(p)));

    let (v, p) = worst_ratio(&xs, &[1], |x, y, _| Ok(txy(x, y, s)? / ty(x, y, s)?), |x, _| {
        Ok(PI * (1.0 + nu(x, s)?) / (1.0 + mu(x, s)?))
    })?;
    out.push(LemmaReport::new("theta_xy_over_theta_y_k1", 1.0, v, Comparison::Le, 1e-9, "X in (1/5, 3], k = 1").with_note(note(p)));

    let xs = linspace(0.05, 0.5, 40);
    let (v, p) = worst_ratio(&xs, &[1], |x, y, _| Ok(txy(x, y, s)? / ty(x, y, s)?), |x, _| {
        Ok(1.5 / x * (1.0 + PI / (6.0 * x)))
    })?;
    out.push(LemmaReport::new("theta_xy_over_theta_y_small_x", 1.0, v, Comparison::Le, 1e-12, "X in [0.05, 1/2]").with_note(note(p)));

    let (v, p) = worst_ratio(&xs, &ks, |x, y, k| Ok(txy(x, k as f64 * y, s)? / ty(x, y, s)?), |x, k| {
        Ok(1.5 * k as f64 / PI / x * (1.0 + PI / (6.0 * x)) * (PI / (4.0 * x)).exp())
    })?;
    out.push(LemmaReport::new("theta_xy_over_theta_y_small_x_k", 1.0, v, Comparison::Le, 1e-12, "X in [0.05, 1/2], k in 2..5").with_note(note(p)));

    let mut worst: f64 = 0.0;
    for x in linspace(0.01, 0.5, 50) {
        for y in y_grid() {
            worst = worst.max(cubic_moment_ratio(x, y).abs());
        }
    }
    out.push(LemmaReport::new("cubic_moment_quotient", 0.25, worst, Comparison::Le, 1e-12, "X in [0.01, 1/2] x 99 Y-values"));

    let mut worst: f64 = 0.0;
    for n in 2..=6 {
        let c = 2.0 * PI / 3.0 * ((n - 1) * n * (n + 1)) as f64;
        for y in linspace(0.001, 0.499, 499) {
            worst = worst.max(sine_quotient_derivative(n, y).abs() / c);
        }
    }
    out.push(LemmaReport::new("sine_quotient_derivative", 1.0, worst, Comparison::Le, 1e-9, "n in 2..6, 499 Y-values in (0, 1/2)"));

    let low = linspace(0.21, 3.0, 200).into_iter().map(monotonicity_kernel).fold(f64::INFINITY, f64::min);
    out.push(LemmaReport::new("quotient_monotonicity_kernel", 0.0, low, Comparison::Ge, 0.0, "X in [0.21, 3], 200 points"));

    let xs = linspace(0.5, 5.0, 451);
    let mut rise = f64::NEG_INFINITY;
    let mut prev = None;
    for &x in &xs {
        let r = (1.0 + nu(x, s)?) / (1.0 + mu(x, s)?);
        if let Some(p) = prev {
            rise = rise.max(r - p);
        }
        prev = Some(r);
    }
    out.push(LemmaReport::new("nu_mu_ratio_decreasing", 0.0, rise, Comparison::Le, 1e-14, "X in [1/2, 5], 451 points; largest forward difference"));

    // slack of −ϑ_Y/sin 2πY inside the envelope, relative to its value
    let env_check = |xs: Vec<f64>, large: bool| -> Result<f64> {
        let mut worst = f64::INFINITY;
        for x in xs {
            let e = if large { envelope_large_x(x, s)? } else { envelope_small_x(x)? };
            for y in y_grid() {
                let v = -ty(x, y, s)? / (2.0 * PI * y).sin();
                worst = worst.min((v - e.lower).min(e.upper - v) / v);
            }
        }
        Ok(worst)
    };
    out.push(LemmaReport::new(
        "theta_y_envelope_large_x",
        0.0,
        env_check(linspace(0.2001, 3.0, 40), true)?,
        Comparison::Ge,
        1e-12,
        "X in (1/5, 3] x 99 Y-values; relative slack",
    ));
    out.push(LemmaReport::new(
        "theta_y_envelope_small_x",
        0.0,
        env_check(linspace(0.05, PI / (PI + 2.0) - 1e-4, 40), false)?,
        Comparison::Ge,
        1e-12,
        "X in [0.05, pi/(pi+2)) x 99 Y-values; relative slack",
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sine_quotient_derivative_by_difference() {
        let (n, y, h) = (4, 0.13, 1e-6);
        let f = |t: f64| (2.0 * PI * n as f64 * t).sin() / (2.0 * PI * t).sin();
        let fd = (f(y + h) - f(y - h)) / (2.0 * h) / (2.0 * PI * y).sin();
        assert!((sine_quotient_derivative(n, y) - fd).abs() < 1e-6 * fd.abs());
    }

    #[test]
    fn cubic_moment_small_x() {
        // n = 0 dominates: u³/u = Y²
        assert!((cubic_moment_ratio(0.02, 0.3) - 0.09).abs() < 1e-9);
    }

    #[test]
    fn kernel_positive_at_half() {
        assert!(monotonicity_kernel(0.5) > 0.9);
    }
}
