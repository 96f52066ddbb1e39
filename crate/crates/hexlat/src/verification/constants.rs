use super::sums::series;
use super::{half_ulp, linspace, Comparison, LemmaReport, VerifyConfig};
use crate::energy::dy_w;
use crate::error::Result;
use crate::lattice_domain::UpperHalfPoint;
use crate::special_functions::{mu, nu, SeriesConfig};
use std::f64::consts::PI;

/// `∂_yyα W_{1/(2π)}(α; 1/2 + iy)`: central differences of the analytic
/// `∂_y W` in `y`, then in `α`, both with step `h`.
pub fn mixed_third_derivative(alpha: f64, y: f64, h: f64, cfg: &SeriesConfig) -> Result<f64> {
    let dyy = |a: f64| -> Result<f64> {
        let p = dy_w(a, UpperHalfPoint { x: 0.5, y: y + h }, cfg)?;
        let m = dy_w(a, UpperHalfPoint { x: 0.5, y: y - h }, cfg)?;
        Ok((p - m) / (2.0 * h))
    };
    Ok((dyy(alpha + h)? - dyy(alpha - h)?) / (2.0 * h))
}

/// `(π/x − 3/2 − (πx − 3/2)x²e^{-π(x−1/x)}) / (x² − 1)`.
pub fn lb_quotient(x: f64) -> f64 {
    (PI / x - 1.5 - (PI * x - 1.5) * x * x * (-PI * (x - 1.0 / x)).exp()) / (x * x - 1.0)
}

/// `(c/α − 3/2 − α²(cα − 3/2)e^{-c(α−1/α)}) / (α² − 1)` with `c = 2√3π`.
pub fn bn_quotient(a: f64) -> f64 {
    let c = 2.0 * 3f64.sqrt() * PI;
    (c / a - 1.5 - a * a * (c * a - 1.5) * (-c * (a - 1.0 / a)).exp()) / (a * a - 1.0)
}

/// `4aπ Σ n⁴e^{-aπn²} / (1 − 4aπ Σ n²e^{-aπn²})`.
pub fn quartic_quotient(a: f64) -> f64 {
    let s4 = series(1, |n| n.powi(4) * (-a * PI * n * n).exp());
    let s2 = series(1, |n| n * n * (-a * PI * n * n).exp());
    4.0 * a * PI * s4 / (1.0 - 4.0 * a * PI * s2)
}

fn bisect<F: Fn(f64) -> Result<f64>>(mut lo: f64, mut hi: f64, f: F) -> Result<f64> {
    let flo = f(lo)?;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (f(mid)? > 0.0) == (flo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

pub fn verify_constants(cfg: &VerifyConfig) -> Result<Vec<LemmaReport>> {
    let s = &cfg.series;
    let mut out = Vec::new();

    let y0 = 3f64.sqrt() / 2.0;
    let hhh = mixed_third_derivative(1.0, y0, 1e-4, s)?;
    out.push(
        LemmaReport::new("HHH", 1.127521373, hhh, Comparison::Approx, 1e-5, "alpha = 1, y = sqrt(3)/2, x = 1/2")
            .with_note("nested central differences, step 1e-4, of the analytic y-derivative"),
    );

    let closed = PI * PI - 3.5 * PI + 1.5;
    let near = lb_quotient(1.0 + 1e-6);
    out.push(
        LemmaReport::new("lb_limit_closed_form", 0.374030114, closed, Comparison::Approx, 1e-9, "closed form")
            .with_note(format!("quotient at x = 1 + 1e-6 is {near:.9}")),
    );

    let lim = 0.5 * (bn_quotient(1.0 + 1e-6) + bn_quotient(1.0 - 1e-6));
    out.push(LemmaReport::new(
        "bn_limit",
        81.84546604,
        lim,
        Comparison::Approx,
        1e-3,
        "mean of alpha = 1 +- 1e-6",
    ));

    let grid = linspace(1.0 + 1e-4, 7.0, 60_001);
    let (floor, at) = grid
        .iter()
        .map(|&a| (bn_quotient(a), a))
        .fold((f64::INFINITY, 0.0), |m, p| if p.0 < m.0 { p } else { m });
    out.push(
        LemmaReport::new(
            "bn_floor_constant",
            0.00113927433,
            floor,
            Comparison::Ge,
            half_ulp(11, -3),
            "alpha in [1, 7], 60001 points",
        )
        .with_note(format!("minimum at alpha = {at:.6}")),
    );

    let g = series(2, |n| n.powi(6) * (-3f64.sqrt() * PI * n).exp());
    out.push(LemmaReport::new(
        "sixth_moment_tail",
        1.27e-3,
        g,
        Comparison::Le,
        half_ulp(2, -3),
        "direct summation",
    ));

    let (m, n) = (mu(0.5, s)?, nu(0.5, s)?);
    out.push(LemmaReport::new(
        "ratio_nu_over_1_minus_mu",
        1.186694067,
        (1.0 + n) / (1.0 - m),
        Comparison::Approx,
        1e-8,
        "X = 1/2",
    ));
    out.push(
        LemmaReport::new(
            "ratio_mu_over_1_minus_mu",
            1.074612508,
            (1.0 + m) / (1.0 - m),
            Comparison::Approx,
            1e-8,
            "X = 1/2",
        )
        .with_note("printed with nu in the numerator; the value matches (1+mu)/(1-mu)"),
    );
    out.push(LemmaReport::new(
        "ratio_nu_over_1_plus_mu",
        1.104299511,
        (1.0 + n) / (1.0 + m),
        Comparison::Approx,
        1e-8,
        "X = 1/2",
    ));

    let root = bisect(0.25, 0.35, |x| Ok(1.0 - nu(x, s)?))?;
    out.push(LemmaReport::new(
        "nu_unit_crossing",
        0.2989938127,
        root,
        Comparison::Approx,
        1e-9,
        "bisection on [0.25, 0.35]",
    ));

    let worst = linspace(2.0, 20.0, 1801).into_iter().map(quartic_quotient).fold(0.0, f64::max);
    out.push(LemmaReport::new(
        "quartic_quotient_tail",
        0.05,
        worst,
        Comparison::Le,
        0.0,
        "a in [2, 20], 1801 points",
    ));

    let b1 = 1.21 * (1.0 - 2.169e-3) - 1.105 - 6.75e-4;
    out.push(
        LemmaReport::new(
            "horizontal_case_b1_margin",
            0.1017005100,
            b1,
            Comparison::Approx,
            1e-9,
            "printed ceilings at alpha = 1.1",
        )
        .with_note("the proposition assumes alpha >= 1.1 while its case split starts at 1.2; the margin is evaluated at 1.1"),
    );

    let (sig3, sig4) = super::error_terms::sigma34();
    let b2 = 3.0 * PI * (1.0 - sig3) - (PI + 3.0) - sig4;
    out.push(LemmaReport::new(
        "horizontal_case_b2_margin",
        0.0,
        b2,
        Comparison::Ge,
        0.0,
        "computed sigma3, sigma4",
    ));

    Ok(out)
}
