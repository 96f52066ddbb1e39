use super::error_terms::{eps_d1_majorant, eps_d2_majorant};
use super::sums::b_const;
use super::{floor_reports, linspace, Comparison, LemmaReport, Region, VerifyConfig};
use crate::energy::{a_nm, dx_w, dy_w};
use crate::error::Result;
use crate::lattice_domain::UpperHalfPoint;
use rayon::prelude::*;
use std::f64::consts::PI;

const SQRT3: f64 = 1.732_050_807_568_877_2;
const Y_MAX: f64 = 8.0;
const ALPHA_MAX: f64 = 6.0;

pub(crate) const R_A: Region = Region {
    name: "R_a",
    alpha: (1.0, 1.2),
    y: |_| (SQRT3 / 2.0, 1.0),
};

// The quotient by α² − 1 is undefined at α = 1 itself.
pub(crate) const R_B: Region = Region {
    name: "R_b",
    alpha: (1.001, 1.2),
    y: |_| (1.0, 6.0),
};

pub(crate) const R_C: Region = Region {
    name: "R_c",
    alpha: (1.2, ALPHA_MAX),
    y: |a| (5.0 * a / 6.0, Y_MAX.max(5.0 * a / 6.0)),
};

pub(crate) const R_D: Region = Region {
    name: "R_d",
    alpha: (1.2, ALPHA_MAX),
    y: |a| (SQRT3 / 2.0, 5.0 * a / 6.0),
};

const R_D_CASE_B: Region = Region {
    name: "R_d case b",
    alpha: (1.2, 1.2),
    y: |_| (SQRT3 / 2.0, 1.0),
};

/// `L_b(α;y)` with `B` taken at `α₀ = 1/α`.
pub fn l_b(a: f64, y: f64) -> f64 {
    let b = b_const(1.0 / a, y);
    PI * y / a - 1.5 - (PI * y * a - 1.5) * a * a * (-PI * y * (a - 1.0 / a)).exp()
        + (3.0 * PI * (1.0 - b) - 2.0 * (1.0 + b) * (a * a + 1.0) / a * y) * (a * a - 1.0) * (-PI * y * a).exp()
}

/// Left side of the `R_c` inequality with the printed `ε_c3`, `ε_c4`.
pub fn r_c_expression(a: f64, y: f64) -> f64 {
    PI * y / a
        - 1.5
        - (1.0 + 2.27e-3) * y * a.powi(3) * (-PI * y * (a - 1.0 / a)).exp()
        - 2.0 * (1.0 + 1.24e-5) * PI * y / a * (-a * PI * y).exp()
}

/// `L_d(α;y)` with the `ε_d` majorants evaluated at `(α, y)`; `coeff`
/// replaces `4πα` in the third term.
pub fn l_d_with(a: f64, y: f64, coeff: f64) -> f64 {
    let e1 = eps_d1_majorant(a, y);
    let e2 = eps_d2_majorant(a, y);
    let e = (-PI * a * (y - 0.75 / y)).exp();
    let w = y + 0.25 / y;
    2.0 * PI * a / y - 5.0 * (1.0 + e1) + coeff * (y * y - 0.25).powi(2) * w * e - 8.0 * (1.0 + e2) * y.powi(3) * w * e
}

pub fn l_d(a: f64, y: f64) -> f64 {
    l_d_with(a, y, 4.0 * PI * a)
}

pub fn l_a(a: f64, y: f64) -> f64 {
    let u = (y * y - 0.25).powi(2);
    let w = y + 0.25 / y;
    let h = 18.0 * PI * a * u * w + 8.0 * PI * a * y.powi(3) * w * w
        - 10.0 * u
        - 20.0 * y.powi(3) * w
        - 4.0 * PI * PI * a * a * u * w * w;
    9.0 * PI * a / y - 5.0 - 2.0 * PI * PI * a * a / (y * y) + h * (-PI * a * (y - 0.75 / y)).exp()
}

/// `Σ_{n,m≥1} A_{n,m}(α;y) sin(2πmnx)`.
pub fn a_sine_sum(a: f64, x: f64, y: f64) -> f64 {
    let mut s = 0.0;
    for n in 1..=40 {
        for m in 1..=40 {
            s += a_nm(a, y, n, m) * (2.0 * PI * (m * n) as f64 * x).sin();
        }
    }
    s
}

fn x_grid() -> Vec<f64> {
    linspace(0.0125, 0.4875, 20)
}

/// Worst ratio of the sine sum to `(α² − 1) sin(2πx)` over the `x` grid
/// with `|z| ≥ 1`.
fn a_sine_ratio(a: f64, y: f64) -> f64 {
    x_grid()
        .into_iter()
        .filter(|x| x * x + y * y >= 1.0)
        .map(|x| a_sine_sum(a, x, y) / ((a * a - 1.0) * (2.0 * PI * x).sin()))
        .fold(f64::INFINITY, f64::min)
}

const R_SINE: Region = Region {
    name: "horizontal, alpha in (1, 1.1]",
    alpha: (1.002, 1.1),
    y: |_| (SQRT3 / 2.0, 3.0),
};

fn domain_grid(n: usize, y_max: f64) -> Vec<UpperHalfPoint> {
    let mut v = Vec::new();
    for x in linspace(0.5 / (n as f64 + 1.0), 0.5 - 0.5 / (n as f64 + 1.0), n) {
        let lo = (1.0 - x * x).sqrt().max(SQRT3 / 2.0);
        for y in linspace(lo + 1e-3, y_max, n) {
            v.push(UpperHalfPoint { x, y });
        }
    }
    v
}

pub fn verify_region_inequalities(cfg: &VerifyConfig) -> Result<Vec<LemmaReport>> {
    let mut out = Vec::new();
    out.extend(
        floor_reports("lb_floor", &R_B, 0.316, 1e-9, cfg, |a, y| l_b(a, y) / (a * a - 1.0))
            .into_iter()
            .map(|r| r.with_note_prefix("L_b / (alpha^2 - 1), alpha0 = 1/alpha")),
    );
    out.extend(floor_reports("rc_floor", &R_C, 0.5, 1e-9, cfg, r_c_expression));
    out.extend(floor_reports("ld_positive", &R_D, 0.0, 0.0, cfg, l_d));
    out.extend(
        floor_reports("ld_case_b_floor", &R_D_CASE_B, 7.0, 0.5, cfg, |a, y| l_d_with(a, y, 4.8))
            .into_iter()
            .map(|r| r.with_note_prefix("coefficient 4.8 as printed")),
    );
    out.extend(floor_reports("la_floor", &R_A, 0.5, 1e-9, cfg, l_a));

    let sine_cfg = VerifyConfig {
        grid: cfg.grid.min(21),
        random_points: cfg.random_points.min(200),
        ..cfg.clone()
    };
    out.extend(
        floor_reports("a_sum_sine_floor", &R_SINE, 0.5, 1e-9, &sine_cfg, a_sine_ratio)
            .into_iter()
            .map(|r| r.with_note_prefix("sine sum / ((alpha^2 - 1) sin 2 pi x), 20 x-values")),
    );
    let pts = R_SINE.grid(sine_cfg.grid);
    let pos = pts
        .par_iter()
        .map(|&(a, y)| {
            x_grid()
                .into_iter()
                .filter(|x| x * x + y * y >= 1.0)
                .map(|x| a_sine_sum(a, x, y))
                .fold(f64::INFINITY, f64::min)
        })
        .reduce(|| f64::INFINITY, f64::min);
    out.push(LemmaReport::new(
        "a_sum_sine_positive",
        0.0,
        pos,
        Comparison::Ge,
        0.0,
        R_SINE.describe(sine_cfg.grid, 0),
    ));

    let s = &cfg.series;
    let grid = domain_grid(20, 5.0);
    let mut worst = f64::NEG_INFINITY;
    for a in [1.05, 1.2, 2.0, 5.0] {
        let m = grid
            .par_iter()
            .map(|&z| dx_w(a, z, s))
            .collect::<Result<Vec<f64>>>()?
            .into_iter()
            .fold(f64::NEG_INFINITY, f64::max);
        worst = worst.max(m);
    }
    out.push(LemmaReport::new(
        "dx_w_negative",
        0.0,
        worst,
        Comparison::Le,
        0.0,
        "alpha in {1.05, 1.2, 2, 5}; 20x20 grid of the fundamental domain, y <= 5",
    ));

    let mut low = f64::INFINITY;
    for a in [1.1, 1.5, 3.0] {
        for y in linspace(SQRT3 / 2.0, 6.0, 100) {
            low = low.min(dy_w(a, UpperHalfPoint { x: 0.5, y }, s)?);
        }
    }
    out.push(LemmaReport::new(
        "dy_w_nonnegative",
        0.0,
        low,
        Comparison::Ge,
        1e-12,
        "alpha in {1.1, 1.5, 3}; 100 points on x = 1/2, y in [sqrt(3)/2, 6]",
    ));

    // ratio of each expression to its floor on the truncation edges
    let edge_min = |pts: Vec<(f64, f64)>, f: &dyn Fn(f64, f64) -> f64| pts.into_iter().map(|(a, y)| f(a, y)).fold(f64::INFINITY, f64::min);
    let rc = edge_min(
        linspace(5.0, Y_MAX, 50)
            .into_iter()
            .map(|y| (ALPHA_MAX, y))
            .chain(linspace(1.2, ALPHA_MAX, 50).into_iter().map(|a| (a, Y_MAX)))
            .collect(),
        &|a, y| r_c_expression(a, y) / 0.5,
    );
    let lb = edge_min(linspace(1.001, 1.2, 50).into_iter().map(|a| (a, 6.0)).collect(), &|a, y| {
        l_b(a, y) / (a * a - 1.0) / 0.316
    });
    let ld = edge_min(linspace(SQRT3 / 2.0, 5.0, 50).into_iter().map(|y| (ALPHA_MAX, y)).collect(), &l_d);
    out.push(
        LemmaReport::new(
            "region_slack_at_truncation",
            10.0,
            rc.min(lb),
            Comparison::Ge,
            0.0,
            "edges alpha = 6 and y = 8 (R_c), y = 6 (R_b), alpha = 6 (R_d)",
        )
        .with_note(format!(
            "smallest expression / floor on the edges: R_c {rc:.4}, R_b {lb:.4}; L_d on alpha = 6 is at least {ld:.4}"
        )),
    );
    Ok(out)
}

impl LemmaReport {
    fn with_note_prefix(mut self, prefix: &str) -> Self {
        self.note = Some(match self.note.take() {
            Some(n) => format!("{prefix}; {n}"),
            None => prefix.to_string(),
        });
        self
    }
}
