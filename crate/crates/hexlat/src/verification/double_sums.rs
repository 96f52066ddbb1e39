use super::regions::{l_d_with, R_A, R_D};
use super::sums::{b_const, GammaSums};
use super::{linspace, Comparison, LemmaReport, Region, VerifyConfig};
use crate::energy::a_nm;
use crate::error::Result;
use rayon::prelude::*;
use std::f64::consts::PI;

const SQRT3: f64 = 1.732_050_807_568_877_2;

fn e1(a: f64, y: f64) -> f64 {
    (-PI * a * (y + 0.25 / y)).exp()
}

/// Extremum of `f` over the points, with the maximising or minimising point.
fn extremum<F>(pts: &[(f64, f64)], max: bool, f: F) -> (f64, (f64, f64))
where
    F: Fn(f64, f64) -> f64 + Sync,
{
    let sign = if max { -1.0 } else { 1.0 };
    let (v, at) = pts
        .par_iter()
        .map(|&(a, y)| (sign * f(a, y), (a, y)))
        .reduce(|| (f64::INFINITY, (f64::NAN, f64::NAN)), |p, q| if q.0 < p.0 { q } else { p });
    (sign * v, at)
}

fn at(p: (f64, f64)) -> String {
    format!("extremum at alpha = {:.4}, y = {:.4}", p.0, p.1)
}

/// Signed double sums `(Σ(−1)^{mn} n⁴(…), Σ(−1)^{mn} n²(…))` over `n, m ≥ 1`.
pub fn signed_sums(a: f64, y: f64) -> (f64, f64) {
    let mut s4 = 0.0;
    let mut s2 = 0.0;
    for n in 1..=30i64 {
        for m in 1..=30i64 {
            let sign = if (m * n) % 2 == 0 { 1.0 } else { -1.0 };
            let (nf, mf) = (n as f64, m as f64);
            let p = (-PI * y * (mf * mf * a + nf * nf / a)).exp();
            let q = (-PI * y * (nf * nf * a + mf * mf / a)).exp();
            s4 += sign * nf.powi(4) * (p - a.powi(4) * q);
            s2 += sign * nf * nf * (a * a * q - p);
        }
    }
    (s4, s2)
}

/// Bracket of `B_n(α;y)` after the factor `n²e^{-πn²y/α}`.
pub fn bn_bracket(a: f64, y: f64, n: i64) -> f64 {
    let t = y * (n * n) as f64;
    PI / a * t - 1.5 - a * a * (a * PI * t - 1.5) * (-PI * t * (a - 1.0 / a)).exp()
}

/// Largest `|Σ_{n>m} A_{n,m} sin(2πmnx)| / (B A_{m,m} |sin(2πm²x)|)` over `x`,
/// with `B` at `α₀ = 1/α`. `transpose` swaps the roles of `n` and `m`.
pub fn off_diagonal_ratio(a: f64, y: f64, m: i64, transpose: bool, xs: &[f64]) -> f64 {
    let b = b_const(1.0 / a, y);
    let diag = a_nm(a, y, m, m);
    xs.iter()
        .filter(|&&x| x * x + y * y >= 1.0)
        .map(|&x| {
            let mut s = 0.0;
            for n in m + 1..=m + 40 {
                let v = if transpose { a_nm(a, y, m, n) } else { a_nm(a, y, n, m) };
                s += v * (2.0 * PI * (m * n) as f64 * x).sin();
            }
            s.abs() / (b * diag * (2.0 * PI * (m * m) as f64 * x).sin().abs())
        })
        .fold(0.0, f64::max)
}

fn points(r: &Region, cfg: &VerifyConfig, n: usize) -> Vec<(f64, f64)> {
    let mut p = r.grid(n);
    p.extend(r.random(cfg.random_points / 4, cfg.seed ^ 0x5eed));
    p
}

pub fn verify_double_sum_bounds(cfg: &VerifyConfig) -> Result<Vec<LemmaReport>> {
    let n = 40.min(cfg.grid);
    let rd = points(&R_D, cfg, n);
    let ra = points(&R_A, cfg, n);
    let gd = R_D.describe(n, cfg.random_points / 4);
    let ga = R_A.describe(n, cfg.random_points / 4);
    let sums = |a: f64, y: f64| GammaSums::new(a, y);
    let mut out = Vec::new();

    let (v, p) = extremum(&rd, false, |a, y| {
        let bound = 2.0 / y.powi(5) * (-PI * a / y).exp() + 4.0 * (1.0 - 0.25 / (y * y)).powi(2) * (y + 0.25 / y) * e1(a, y);
        sums(a, y).s1 / bound
    });
    out.push(LemmaReport::new("double_sum_first_kind", 1.0, v, Comparison::Ge, 1e-12, gd.clone()).with_note(format!("sum / lower bound; {}", at(p))));

    let (v, p) = extremum(&rd, false, |a, y| sums(a, y).s2 / (4.0 * e1(a, y)));
    out.push(LemmaReport::new("double_sum_second_kind", 1.0, v, Comparison::Ge, 1e-12, gd.clone()).with_note(format!("sum / lower bound; {}", at(p))));

    let (v, p) = extremum(&rd, true, |a, y| {
        let m3 = 2.0 / y.powi(4) * (-PI * a / y).exp();
        (sums(a, y).s3 - m3 - 4.0 * (1.0 - 0.25 / (y * y)).powi(2) * e1(a, y)) / m3
    });
    out.push(
        LemmaReport::new("double_sum_third_kind", 3.92e-4, v, Comparison::Le, 5e-7, gd.clone())
            .with_note(format!("exact relative remainder eps_d1; {}", at(p))),
    );

    let (v, p) = extremum(&rd, true, |a, y| sums(a, y).s4 / (4.0 * (y + 0.25 / y) * e1(a, y)) - 1.0);
    out.push(
        LemmaReport::new("double_sum_fourth_kind", 9.27e-4, v, Comparison::Le, 5e-7, gd.clone())
            .with_note(format!("exact relative remainder eps_d2; {}", at(p))),
    );

    let (v, p) = extremum(&ra, false, |a, y| {
        let w = y + 0.25 / y;
        sums(a, y).s5 / (4.0 * w * w * e1(a, y))
    });
    out.push(LemmaReport::new("double_sum_ra_lower", 1.0, v, Comparison::Ge, 1e-12, ga.clone()).with_note(format!("sum / lower bound; {}", at(p))));

    let (v, p) = extremum(&ra, true, |a, y| {
        let w = y + 0.25 / y;
        let bound = 2.0 / y.powi(6) * (-PI * a / y).exp()
            + 4.0 * (1.0 - 0.25 / (y * y)).powi(2) * w * w * e1(a, y)
            + 3.0 * 256.0 * (-4.0 * PI * a * y).exp();
        sums(a, y).s6 / bound
    });
    out.push(LemmaReport::new("double_sum_ra_upper", 1.0, v, Comparison::Le, 1e-12, ga).with_note(format!("sum / upper bound; {}", at(p))));

    let (v, p) = extremum(&rd, false, |a, y| {
        let lhs = sums(a, y).laplacian_w(a, y);
        let bound = PI * a * y.powi(-4) * (-PI * a / y).exp() * l_d_with(a, y, 4.0 * PI * a);
        (lhs - bound) / lhs
    });
    out.push(
        LemmaReport::new("laplacian_w_lower_bound", 0.0, v, Comparison::Ge, 1e-12, gd)
            .with_note(format!("(lhs - bound) / lhs with the eps_d majorants; {}", at(p))),
    );

    let bn_region = Region {
        name: "alpha in (1, 7], y >= sqrt(3)/2",
        alpha: (1.001, 7.0),
        y: |_| (SQRT3 / 2.0, 8.0),
    };
    let pts = points(&bn_region, cfg, cfg.grid);
    let (v, p) = extremum(&pts, false, |a, y| {
        (2..=8).map(|n| bn_bracket(a, y, n) / (a * a - 1.0)).fold(f64::INFINITY, f64::min)
    });
    out.push(
        LemmaReport::new("bn_positive", 0.0, v, Comparison::Ge, 0.0, bn_region.describe(cfg.grid, cfg.random_points / 4))
            .with_note(format!("bracket / (alpha^2 - 1), n = 2..8; {}", at(p))),
    );

    let r48 = Region {
        name: "alpha in (1, 1.2], y >= sqrt(3)/2",
        alpha: (1.001, 1.2),
        y: |_| (SQRT3 / 2.0, 6.0),
    };
    let pts = points(&r48, cfg, cfg.grid);
    let g48 = r48.describe(cfg.grid, cfg.random_points / 4);
    let (v, p) = extremum(&pts, false, |a, y| {
        let b = b_const(1.0 / a, y);
        signed_sums(a, y).0 / ((1.0 - b) * (a.powi(4) - 1.0) * (-PI * y * (a + 1.0 / a)).exp())
    });
    out.push(LemmaReport::new("signed_sum_quartic", 1.0, v, Comparison::Ge, 1e-12, g48.clone()).with_note(format!("sum / lower bound; {}", at(p))));
    let (v, p) = extremum(&pts, false, |a, y| {
        let b = b_const(1.0 / a, y);
        signed_sums(a, y).1 / ((1.0 + b) * (a * a - 1.0) * (-PI * y * (a + 1.0 / a)).exp())
    });
    out.push(LemmaReport::new("signed_sum_quadratic", -1.0, v, Comparison::Ge, 1e-12, g48).with_note(format!("sum / |lower bound|; {}", at(p))));

    let r310 = Region {
        name: "alpha in (1, 1.1], y >= sqrt(3)/2",
        alpha: (1.005, 1.1),
        y: |_| (SQRT3 / 2.0, 4.0),
    };
    let xs = linspace(0.0125, 0.4875, 39);
    let pts = r310.grid(16);
    let g310 = format!("{}; 39 x-values in (0, 1/2) with |z| >= 1", r310.describe(16, 0));
    for transpose in [false, true] {
        for m in 1..=4 {
            let (v, p) = extremum(&pts, true, |a, y| off_diagonal_ratio(a, y, m, transpose, &xs));
            let id = if transpose {
                format!("a_head_over_diagonal_n{m}")
            } else {
                format!("a_tail_over_diagonal_m{m}")
            };
            out.push(
                LemmaReport::new(&id, 1.0, v, Comparison::Le, 0.0, g310.clone())
                    .with_note(format!("off-diagonal sum / (B x diagonal term), alpha0 = 1/alpha; {}", at(p))),
            );
        }
    }
    Ok(out)
}
