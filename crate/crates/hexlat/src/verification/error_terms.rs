use super::sums::{b_const, series};
use super::{half_ulp, linspace, BoundTerm, Comparison, LemmaReport, VerifyConfig};
use crate::error::Result;
use crate::special_functions::{jacobi_theta_partial, mu, nu, SeriesConfig, ThetaArg};
use std::f64::consts::PI;

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// `(σ₁, σ₂)` at `α = 1.1`, `y = √3/2`.
pub fn sigma12(cfg: &SeriesConfig) -> Result<(f64, f64)> {
    let (m, n) = (mu(0.5, cfg)?, nu(0.5, cfg)?);
    let c = 1.1 * PI * SQRT3 / 2.0;
    let s4 = series(2, |k| k.powi(4) * (-c * (k * k - 1.0)).exp());
    let s2 = series(2, |k| k * k * (-c * (k * k - 1.0)).exp());
    Ok(((1.0 + m) / (1.0 - m) * s4, (1.0 + n) / (1.0 - m) * s2))
}

/// `(σ₃, σ₄)` at `α = √3`, `y = √3/2`.
pub fn sigma34() -> (f64, f64) {
    let e = |n: f64| (-SQRT3 * PI * ((n * n - 1.0) * SQRT3 / 2.0 - 1.0 / (2.0 * SQRT3))).exp();
    let s4 = series(2, |n| n.powi(4) * e(n));
    let s2 = series(2, |n| n * n * e(n));
    (s4 / PI, 3.0 / PI * (1.0 + PI / 3.0) * s2)
}

/// `[ε_c1, ε_c2, ε_c3, ε_c4]` at `(α, y)`.
pub fn eps_c(alpha: f64, y: f64) -> [f64; 4] {
    let s = series(1, |k| (-PI * k * k * y / alpha).exp());
    let r = (1.0 + s) / (1.0 - s);
    let ay = alpha * y;
    let t0 = series(2, |n| (-PI * ay * (n * n - 1.0)).exp());
    let t2 = series(2, |n| n * n * (-PI * ay * (n * n - 1.0)).exp());
    let t4 = series(2, |n| n.powi(4) * (-PI * ay * (n * n - 1.0)).exp());
    let x = y / alpha;
    let k2 = series(1, |k| k * k * (-PI * (k * k - 1.0) * x).exp());
    let k4 = series(1, |k| k.powi(4) * (-PI * (k * k - 1.0) * x).exp());
    let g = (-3.0 * PI * x).exp();
    [r * t2, k2 / (1.0 - 4.0 * g) * t0, r * t4, k4 / (1.0 - 16.0 * g) * t0]
}

/// Majorant `4y⁴e^{-πα(4y−1/y)} + 16y⁴e^{-4παy}` of `ε_d1`.
pub fn eps_d1_majorant(alpha: f64, y: f64) -> f64 {
    4.0 * y.powi(4) * (-PI * alpha * (4.0 * y - 1.0 / y)).exp() + 16.0 * y.powi(4) * (-4.0 * PI * alpha * y).exp()
}

/// Majorant `16e^{-3παy}(1 + e^{-3πα/(4y)})` of `ε_d2`.
pub fn eps_d2_majorant(alpha: f64, y: f64) -> f64 {
    16.0 * (-3.0 * PI * alpha * y).exp() * (1.0 + (-3.0 * PI * alpha / (4.0 * y)).exp())
}

/// Normalised tail `d(α;y)` of the third-kind double sum.
pub fn d_tail(alpha: f64, y: f64) -> f64 {
    let ep = |p: f64| (-PI * alpha * y * (p * p - 4.0)).exp();
    let eq = |q: f64| (-PI * alpha / (4.0 * y) * (q * q - 4.0)).exp();
    let p4 = series(2, |p| (p / 2.0).powi(4) * ep(p));
    let p0 = series(2, ep);
    let q0 = series(2, eq);
    let q4 = series(2, |q| (q / 2.0).powi(4) * eq(q));
    p4 * q0 + p0 * q4 / (16.0 * y.powi(4))
}

/// `Σ_{k≥1} b_k` for the row `m`.
pub fn b_row_sum(alpha0: f64, y: f64, m: i64) -> f64 {
    let mf = m as f64;
    series(1, |k| {
        ((mf + k) / mf).powi(4) * (mf + k).powi(2) * alpha0 * PI * y * (-((2.0 * mf + k) * k) * PI * y * alpha0).exp()
    })
}

/// `C(α,x,y) = (2/π)α^{-5/2}y^{3/2}(−ϑ_Y(y/α;x))e^{-2πy}`.
pub fn c_const(alpha: f64, x: f64, y: f64, cfg: &SeriesConfig) -> Result<f64> {
    let ty = jacobi_theta_partial(ThetaArg { x: y / alpha, y: x }, 0, 1, cfg)?;
    Ok(2.0 / PI * alpha.powf(-2.5) * y.powf(1.5) * (-ty) * (-2.0 * PI * y).exp())
}

fn rc_points(n: usize) -> Vec<(f64, f64)> {
    let mut v = Vec::new();
    for a in linspace(1.2, 6.0, n) {
        for y in linspace(5.0 * a / 6.0, 8.0f64.max(5.0 * a / 6.0), n) {
            v.push((a, y));
        }
    }
    v
}

fn rd_points(n: usize) -> Vec<(f64, f64)> {
    let mut v = Vec::new();
    for a in linspace(1.2, 6.0, n) {
        for y in linspace(SQRT3 / 2.0, 5.0 * a / 6.0, n) {
            v.push((a, y));
        }
    }
    v
}

fn ra_points(n: usize) -> Vec<(f64, f64)> {
    let mut v = Vec::new();
    for a in linspace(1.0, 1.2, n) {
        for y in linspace(SQRT3 / 2.0, 1.0, n) {
            v.push((a, y));
        }
    }
    v
}

fn argmax<F: Fn(f64, f64) -> f64>(pts: &[(f64, f64)], f: F) -> (f64, (f64, f64)) {
    pts.iter()
        .map(|&(a, y)| (f(a, y), (a, y)))
        .fold((f64::NEG_INFINITY, (0.0, 0.0)), |m, p| if p.0 > m.0 { p } else { m })
}

/// Error terms at their extremal parameters.
pub fn bound_terms(cfg: &VerifyConfig) -> Result<Vec<BoundTerm>> {
    let (s1, s2) = sigma12(&cfg.series)?;
    let (s3, s4) = sigma34();
    let c = eps_c(1.2, 1.0);
    let y0 = SQRT3 / 2.0;
    let term = |name: &str, formula: &str, value: f64| BoundTerm {
        name: name.to_string(),
        formula_id: formula.to_string(),
        value,
    };
    Ok(vec![
        term("sigma1", "tail n^4 with theta ratio at alpha = 1.1, y = sqrt(3)/2", s1),
        term("sigma2", "tail n^2 with theta ratio at alpha = 1.1, y = sqrt(3)/2", s2),
        term("sigma3", "small-X tail n^4 at alpha = sqrt(3), y = sqrt(3)/2", s3),
        term("sigma4", "small-X tail n^2 at alpha = sqrt(3), y = sqrt(3)/2", s4),
        term("eps_c1", "R_c corner alpha = 1.2, y = 1", c[0]),
        term("eps_c2", "R_c corner alpha = 1.2, y = 1", c[1]),
        term("eps_c3", "R_c corner alpha = 1.2, y = 1", c[2]),
        term("eps_c4", "R_c corner alpha = 1.2, y = 1", c[3]),
        term("eps_d1", "majorant at alpha = 1.2, y = sqrt(3)/2", eps_d1_majorant(1.2, y0)),
        term("eps_d2", "majorant at alpha = 1.2, y = sqrt(3)/2", eps_d2_majorant(1.2, y0)),
        term("B", "alpha0 = 1, y = sqrt(3)/2", b_const(1.0, y0)),
        term("d", "alpha = 1.2, y = sqrt(3)/2", d_tail(1.2, y0)),
        term("d2", "alpha = 1, y = sqrt(3)/2", d_tail(1.0, y0)),
        term("C_const", "alpha = 1, x = 1/4, y = sqrt(3)/2", c_const(1.0, 0.25, y0, &cfg.series)?),
    ])
}

pub fn verify_error_terms(cfg: &VerifyConfig) -> Result<Vec<LemmaReport>> {
    let s = &cfg.series;
    let mut out = Vec::new();
    let (s1, s2) = sigma12(s)?;
    let (s3, s4) = sigma34();
    let at11 = "alpha = 1.1, y = sqrt(3)/2";
    let at3 = "alpha = sqrt(3), y = sqrt(3)/2";
    out.push(LemmaReport::new("sigma1", 2.169e-3, s1, Comparison::Le, half_ulp(3, -3), at11));
    out.push(LemmaReport::new("sigma2", 6.75e-4, s2, Comparison::Le, half_ulp(2, -4), at11));
    out.push(
        LemmaReport::new("sigma3", 1.777e-6, s3, Comparison::Le, half_ulp(3, -6), at3)
            .with_note("the computed value is 1.777e-5 to four digits; the printed exponent looks off by one"),
    );
    out.push(LemmaReport::new("sigma4", 2.727e-5, s4, Comparison::Le, half_ulp(3, -5), at3));

    let rc = rc_points(cfg.grid);
    let grid_c = format!("R_c {0}x{0} grid, alpha <= 6, y <= 8", cfg.grid);
    let ceilings = [(5.68e-4, 2, -4), (1.23e-5, 2, -5), (2.27e-3, 2, -3), (1.24e-5, 2, -5)];
    for (i, &(ceil, d, e)) in ceilings.iter().enumerate() {
        let (v, at) = argmax(&rc, |a, y| eps_c(a, y)[i]);
        out.push(
            LemmaReport::new(&format!("eps_c{}", i + 1), ceil, v, Comparison::Le, half_ulp(d, e), grid_c.clone())
                .with_note(format!("maximum at alpha = {:.4}, y = {:.4}", at.0, at.1)),
        );
    }

    let rd = rd_points(cfg.grid);
    let grid_d = format!("R_d {0}x{0} grid, alpha <= 6", cfg.grid);
    let (v, at) = argmax(&rd, eps_d1_majorant);
    out.push(
        LemmaReport::new("eps_d1", 3.92e-4, v, Comparison::Le, half_ulp(2, -4), grid_d.clone()).with_note(format!(
            "majorant formula, maximum at alpha = {:.4}, y = {:.4}; the true remainder is reported with the third-kind double sum",
            at.0, at.1
        )),
    );
    let (v, at) = argmax(&rd, eps_d2_majorant);
    out.push(
        LemmaReport::new("eps_d2", 9.27e-4, v, Comparison::Le, half_ulp(2, -4), grid_d.clone()).with_note(format!(
            "majorant formula, maximum at alpha = {:.4}, y = {:.4}; the true remainder is reported with the fourth-kind double sum",
            at.0, at.1
        )),
    );

    // Σ b_k against its geometric majorant, rows m = 1..4, α₀ over (1/1.1, 1.1)
    let mut worst: f64 = 0.0;
    let mut mono: f64 = f64::NEG_INFINITY;
    for y in linspace(SQRT3 / 2.0, 8.0, cfg.grid) {
        let a0s = linspace(1.0 / 1.2, 1.2, cfg.grid);
        for &a0 in &a0s {
            let b = b_const(a0, y);
            for m in 1..=4 {
                worst = worst.max(b_row_sum(a0, y, m) / b);
            }
        }
        for w in a0s.windows(2) {
            mono = mono.max(b_const(w[1], y) - b_const(w[0], y));
        }
    }
    out.push(
        LemmaReport::new(
            "B_geometric_tail",
            1.0,
            worst,
            Comparison::Le,
            1e-14,
            format!("y in [sqrt(3)/2, 8] x alpha0 in [1/1.2, 1.2], {0}x{0}, rows m <= 4", cfg.grid),
        )
        .with_note(format!("largest row sum over B; B(alpha0 = 1, y = sqrt(3)/2) = {:.6e}", b_const(1.0, SQRT3 / 2.0))),
    );
    out.push(
        LemmaReport::new(
            "B_monotone_in_alpha0",
            0.0,
            mono,
            Comparison::Le,
            0.0,
            "largest forward difference in alpha0 on the same grid",
        )
        .with_note("B decreases in alpha0, so alpha0 = 1/alpha gives the largest B"),
    );

    let (v, at) = argmax(&rd, d_tail);
    out.push(
        LemmaReport::new("d_bound", 2.0, v, Comparison::Le, 0.0, grid_d)
            .with_note(format!("maximum at alpha = {:.4}, y = {:.4}", at.0, at.1)),
    );
    let ra = ra_points(cfg.grid);
    let (v, at) = argmax(&ra, d_tail);
    out.push(
        LemmaReport::new("d2_bound", 2.0, v, Comparison::Le, 0.0, format!("R_a {0}x{0} grid", cfg.grid)).with_note(format!(
            "printed with the same expression as d; maximum at alpha = {:.4}, y = {:.4}",
            at.0, at.1
        )),
    );

    let mut cmin = f64::INFINITY;
    for a in linspace(1.0, 6.0, 21) {
        for y in linspace(SQRT3 / 2.0, 8.0, 21) {
            for x in linspace(0.0125, 0.4875, 20) {
                if x * x + y * y >= 1.0 {
                    cmin = cmin.min(c_const(a, x, y, s)?);
                }
            }
        }
    }
    out.push(LemmaReport::new(
        "C_positive",
        0.0,
        cmin,
        Comparison::Ge,
        0.0,
        "alpha in [1, 6], y in [sqrt(3)/2, 8], x in (0, 1/2), |z| >= 1; 21x21x20",
    ));

    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_values() {
        let (s1, s2) = sigma12(&SeriesConfig::default()).unwrap();
        assert!(s1 > 0.0 && s1 < 2.2e-3);
        assert!(s2 > 0.0 && s2 < 7e-4);
        let (s3, s4) = sigma34();
        assert!(s3 > 1.7e-5 && s3 < 1.8e-5);
        assert!(s4 > 0.0);
    }

    #[test]
    fn eps_d_majorants_at_corner() {
        let y = SQRT3 / 2.0;
        assert!((eps_d1_majorant(1.2, y) - 3.9166e-4).abs() < 1e-7);
        assert!((eps_d2_majorant(1.2, y) - 9.2619e-4).abs() < 1e-7);
    }

    #[test]
    fn b_row_sum_below_b() {
        let y = SQRT3 / 2.0;
        assert!(b_row_sum(1.0, y, 1) <= b_const(1.0, y));
    }

    #[test]
    fn all_terms_nonnegative() {
        for t in bound_terms(&VerifyConfig::default()).unwrap() {
            assert!(t.value >= 0.0, "{}", t.name);
        }
    }
}
