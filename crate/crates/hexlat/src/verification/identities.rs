use super::sums::GammaSums;
use super::{Comparison, LemmaReport, VerifyConfig};
use crate::energy::{
    dx_w, dx_w_double_sum, dy_w, theta_difference_integral, theta_lattice, w_b, w_b_via_theta_derivative, w_integral,
    B_CRITICAL,
};
use crate::error::Result;
use crate::lattice_domain::{hexagonal_point, UpperHalfPoint};
use crate::special_functions::SeriesConfig;

fn z(x: f64, y: f64) -> UpperHalfPoint {
    UpperHalfPoint { x, y }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

// absolute near zero, relative elsewhere
fn mixed(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

const SAMPLES: [(f64, f64); 5] = [(0.1, 2.3), (0.5, 0.8660254037844386), (0.0, 1.0), (0.3, 1.4), (0.45, 3.1)];

/// `(∂_yy + (2/y)∂_y) W_{1/(2π)}(α; 1/2 + iy)`, the second derivative by a
/// central difference of the analytic `∂_y W`.
fn laplacian_w_fd(a: f64, y: f64, h: f64, cfg: &SeriesConfig) -> Result<f64> {
    let d = |yy: f64| dy_w(a, z(0.5, yy), cfg);
    Ok((d(y + h)? - d(y - h)?) / (2.0 * h) + 2.0 / y * d(y)?)
}

pub fn verify_identities(cfg: &VerifyConfig) -> Result<Vec<LemmaReport>> {
    let s = &cfg.series;
    let mut out = Vec::new();

    let mut worst: f64 = 0.0;
    for a in [0.1, 0.5, 1.0, 2.0, 3.0, 10.0] {
        for &(x, y) in &SAMPLES {
            let t = theta_lattice(a, z(x, y), s)?;
            worst = worst.max(rel(theta_lattice(1.0 / a, z(x, y), s)?, a * t));
        }
    }
    out.push(LemmaReport::new(
        "duality",
        0.0,
        worst,
        Comparison::Approx,
        1e-10,
        "alpha in {0.1, 0.5, 1, 2, 3, 10} x 5 sample points; relative error",
    ));

    let mut worst: f64 = 0.0;
    for &(x, y) in SAMPLES.iter().chain(&[(0.2, 1.02), (0.05, 7.5)]) {
        worst = worst.max(w_b(1.0, B_CRITICAL, z(x, y), s)?.abs());
    }
    out.push(LemmaReport::new(
        "vanishing_w",
        0.0,
        worst,
        Comparison::Approx,
        1e-10,
        "alpha = 1, 7 sample points; absolute value",
    ));

    let mut worst: f64 = 0.0;
    for a in [0.7, 1.0, 2.5] {
        for b in [0.0, B_CRITICAL, 0.4] {
            for &(x, y) in &SAMPLES[..3] {
                worst = worst.max(mixed(w_b_via_theta_derivative(a, b, z(x, y), s)?, w_b(a, b, z(x, y), s)?));
            }
        }
    }
    out.push(LemmaReport::new(
        "w_via_theta_derivative",
        0.0,
        worst,
        Comparison::Approx,
        1e-6,
        "alpha in {0.7, 1, 2.5} x b in {0, 1/(2 pi), 0.4} x 3 points; alpha-difference step 1e-5 alpha; error relative to max(|W|, 1)",
    ));

    let mut worst: f64 = 0.0;
    for a in [1.05, 1.5, 3.0] {
        for &(x, y) in &[(0.1, 1.2), (0.3, 0.99), (0.45, 2.0)] {
            let d = dx_w(a, z(x, y), s)?;
            worst = worst.max(rel(dx_w_double_sum(a, z(x, y), 40)?, d));
        }
    }
    out.push(LemmaReport::new(
        "dx_w_double_sum",
        0.0,
        worst,
        Comparison::Approx,
        1e-9,
        "alpha in {1.05, 1.5, 3} x 3 points; n, m <= 40",
    ));

    let mut worst: f64 = 0.0;
    for &(x, y) in &SAMPLES {
        worst = worst.max(dx_w(1.0, z(x, y), s)?.abs());
    }
    out.push(LemmaReport::new(
        "dx_w_vanishes_at_one",
        0.0,
        worst,
        Comparison::Approx,
        1e-10,
        "alpha = 1, 5 sample points",
    ));

    let mut worst: f64 = 0.0;
    for a in [0.5, 1.0, 2.0, 5.0] {
        worst = worst.max(dy_w(a, hexagonal_point(), s)?.abs());
    }
    out.push(LemmaReport::new(
        "dy_w_vanishes_at_hexagonal",
        0.0,
        worst,
        Comparison::Approx,
        1e-10,
        "alpha in {0.5, 1, 2, 5}",
    ));

    let mut printed: f64 = 0.0;
    let mut weighted: f64 = 0.0;
    for (a, big_a) in [(1.0f64, 2.0f64), (1.3, 3.0)] {
        for p in [hexagonal_point(), z(0.1, 1.4), z(0.0, 1.0)] {
            let lhs = theta_lattice(a, p, s)? - big_a.sqrt() * theta_lattice(big_a * a, p, s)?;
            printed = printed.max(rel(w_integral(a, big_a, p, s)?, lhs));
            weighted = weighted.max(rel(theta_difference_integral(a, big_a, p, s)?, lhs));
        }
    }
    let grid = "(alpha, a) in {(1, 2), (1.3, 3)} x {hexagonal, 0.1 + 1.4i, i}";
    out.push(
        LemmaReport::new("integral_identity", 0.0, printed, Comparison::Approx, 1e-8, grid)
            .with_note("pi times the unweighted integral of W; differentiating sqrt(t) theta(t alpha) gives the weight pi alpha sqrt(t)"),
    );
    out.push(
        LemmaReport::new("integral_identity_weighted", 0.0, weighted, Comparison::Approx, 1e-8, grid)
            .with_note("pi alpha times the integral of sqrt(t) W"),
    );

    let gamma_pts = [(1.5, 1.2), (1.3, 1.0), (2.0, 0.9)];
    let grid = "(alpha, y) in {(1.5, 1.2), (1.3, 1.0), (2.0, 0.9)} on x = 1/2";
    let h = 1e-4;
    let mut th: f64 = 0.0;
    let mut lw: f64 = 0.0;
    let mut mixed: f64 = 0.0;
    for (a, y) in gamma_pts {
        let g = GammaSums::new(a, y);
        let t = |yy: f64| theta_lattice(a, z(0.5, yy), s);
        let fd = (t(y + h)? - 2.0 * t(y)? + t(y - h)?) / (h * h) + 2.0 / y * (t(y + h)? - t(y - h)?) / (2.0 * h);
        th = th.max(rel(fd, g.laplacian_theta(a, y)));
        lw = lw.max(rel(laplacian_w_fd(a, y, 1e-5, s)?, g.laplacian_w(a, y)));
        let da = (laplacian_w_fd(a + h, y, 1e-5, s)? - laplacian_w_fd(a - h, y, 1e-5, s)?) / (2.0 * h);
        mixed = mixed.max(rel(da, g.laplacian_w_alpha(a, y)));
    }
    out.push(LemmaReport::new("theta_laplacian_identity", 0.0, th, Comparison::Approx, 1e-5, grid).with_note("double sum vs central differences, step 1e-4"));
    out.push(LemmaReport::new("w_laplacian_identity", 0.0, lw, Comparison::Approx, 1e-5, grid).with_note("double sum vs difference of the analytic y-derivative, step 1e-5"));
    out.push(LemmaReport::new("w_mixed_identity", 0.0, mixed, Comparison::Approx, 1e-5, grid).with_note("alpha-difference step 1e-4 of the previous"));

    let mut worst: f64 = 0.0;
    for a in [0.8, 1.3, 3.0] {
        for &(x, y) in &[(0.1, 1.2), (0.3, 0.99), (0.45, 2.0)] {
            let p = z(x, y);
            let h = 1e-5;
            let fx = (w_b(a, B_CRITICAL, z(x + h, y), s)? - w_b(a, B_CRITICAL, z(x - h, y), s)?) / (2.0 * h);
            let fy = (w_b(a, B_CRITICAL, z(x, y + h), s)? - w_b(a, B_CRITICAL, z(x, y - h), s)?) / (2.0 * h);
            let (dx, dy) = (dx_w(a, p, s)?, dy_w(a, p, s)?);
            if dx.abs() > 1e-8 {
                worst = worst.max(rel(fx, dx));
            }
            if dy.abs() > 1e-8 {
                worst = worst.max(rel(fy, dy));
            }
        }
    }
    out.push(LemmaReport::new(
        "derivative_finite_difference",
        0.0,
        worst,
        Comparison::Approx,
        1e-6,
        "alpha in {0.8, 1.3, 3} x 3 points; step 1e-5, where |derivative| > 1e-8",
    ));

    Ok(out)
}
