//! Numerical reproduction of the bounds, constants and identities behind the
//! hexagonal-minimizer results.
//!
//! Every check produces a [`LemmaReport`]. Region inequalities are evaluated
//! on a uniform grid plus seeded uniform-random points, and each grid minimum
//! is recomputed on a grid twice as fine. This is floating-point evidence,
//! not a proof.

mod constants;
mod double_sums;
mod error_terms;
mod identities;
mod regions;
mod sums;
mod theta_bounds;

pub use constants::verify_constants;
pub use double_sums::verify_double_sum_bounds;
pub use error_terms::{bound_terms, verify_error_terms};
pub use identities::verify_identities;
pub use regions::verify_region_inequalities;
pub use sums::{b_const, GammaSums};
pub use theta_bounds::verify_theta_bounds;

use crate::error::{Error, Result};
use crate::special_functions::SeriesConfig;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// `computed ≤ claimed + tolerance`
    Le,
    /// `computed ≥ claimed − tolerance`
    Ge,
    /// `|computed − claimed| ≤ tolerance`
    Approx,
}

impl Comparison {
    pub fn symbol(self) -> &'static str {
        match self {
            Comparison::Le => "<=",
            Comparison::Ge => ">=",
            Comparison::Approx => "~=",
        }
    }

    pub fn holds(self, computed: f64, claimed: f64, tolerance: f64) -> bool {
        match self {
            Comparison::Le => computed <= claimed + tolerance,
            Comparison::Ge => computed >= claimed - tolerance,
            Comparison::Approx => (computed - claimed).abs() <= tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub lemma_id: String,
    pub claimed: f64,
    pub computed: f64,
    pub comparison: Comparison,
    pub tolerance: f64,
    pub grid: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl LemmaReport {
    pub fn new(id: &str, claimed: f64, computed: f64, comparison: Comparison, tolerance: f64, grid: impl Into<String>) -> Self {
        LemmaReport {
            lemma_id: id.to_string(),
            claimed,
            computed,
            comparison,
            tolerance,
            grid: grid.into(),
            pass: comparison.holds(computed, claimed, tolerance),
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// Half a unit in the last printed digit of a constant such as `2.727e-5`.
pub fn half_ulp(mantissa_digits: i32, exponent: i32) -> f64 {
    0.5 * 10f64.powi(exponent - mantissa_digits)
}

/// A named nonnegative error term with its value at the extremal parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundTerm {
    pub name: String,
    pub formula_id: String,
    pub value: f64,
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub seed: u64,
    pub series: SeriesConfig,
    /// Uniform-random points added to every region grid.
    pub random_points: usize,
    /// Points per axis of the base grid; the refined grid doubles this.
    pub grid: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: DEFAULT_SEED,
            series: SeriesConfig::default(),
            random_points: 1000,
            grid: 61,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Group {
    Constants,
    ErrorTerms,
    Regions,
    DoubleSums,
    Identities,
    ThetaBounds,
}

impl Group {
    pub const ALL: [Group; 6] = [
        Group::Constants,
        Group::ErrorTerms,
        Group::Regions,
        Group::DoubleSums,
        Group::Identities,
        Group::ThetaBounds,
    ];

    pub fn run(self, cfg: &VerifyConfig) -> Result<Vec<LemmaReport>> {
        match self {
            Group::Constants => verify_constants(cfg),
            Group::ErrorTerms => verify_error_terms(cfg),
            Group::Regions => verify_region_inequalities(cfg),
            Group::DoubleSums => verify_double_sum_bounds(cfg),
            Group::Identities => verify_identities(cfg),
            Group::ThetaBounds => verify_theta_bounds(cfg),
        }
    }
}

/// Every report id in suite order, with the group producing it.
pub const MANIFEST: &[(&str, Group)] = &[
    ("HHH", Group::Constants),
    ("lb_limit_closed_form", Group::Constants),
    ("bn_limit", Group::Constants),
    ("bn_floor_constant", Group::Constants),
    ("sixth_moment_tail", Group::Constants),
    ("ratio_nu_over_1_minus_mu", Group::Constants),
    ("ratio_mu_over_1_minus_mu", Group::Constants),
    ("ratio_nu_over_1_plus_mu", Group::Constants),
    ("nu_unit_crossing", Group::Constants),
    ("quartic_quotient_tail", Group::Constants),
    ("horizontal_case_b1_margin", Group::Constants),
    ("horizontal_case_b2_margin", Group::Constants),
    ("sigma1", Group::ErrorTerms),
    ("sigma2", Group::ErrorTerms),
    ("sigma3", Group::ErrorTerms),
    ("sigma4", Group::ErrorTerms),
    ("eps_c1", Group::ErrorTerms),
    ("eps_c2", Group::ErrorTerms),
    ("eps_c3", Group::ErrorTerms),
    ("eps_c4", Group::ErrorTerms),
    ("eps_d1", Group::ErrorTerms),
    ("eps_d2", Group::ErrorTerms),
    ("B_geometric_tail", Group::ErrorTerms),
    ("B_monotone_in_alpha0", Group::ErrorTerms),
    ("d_bound", Group::ErrorTerms),
    ("d2_bound", Group::ErrorTerms),
    ("C_positive", Group::ErrorTerms),
    ("lb_floor", Group::Regions),
    ("lb_floor_refine", Group::Regions),
    ("rc_floor", Group::Regions),
    ("rc_floor_refine", Group::Regions),
    ("ld_positive", Group::Regions),
    ("ld_positive_refine", Group::Regions),
    ("ld_case_b_floor", Group::Regions),
    ("ld_case_b_floor_refine", Group::Regions),
    ("la_floor", Group::Regions),
    ("la_floor_refine", Group::Regions),
    ("a_sum_sine_floor", Group::Regions),
    ("a_sum_sine_floor_refine", Group::Regions),
    ("a_sum_sine_positive", Group::Regions),
    ("dx_w_negative", Group::Regions),
    ("dy_w_nonnegative", Group::Regions),
    ("region_slack_at_truncation", Group::Regions),
    ("double_sum_first_kind", Group::DoubleSums),
    ("double_sum_second_kind", Group::DoubleSums),
    ("double_sum_third_kind", Group::DoubleSums),
    ("double_sum_fourth_kind", Group::DoubleSums),
    ("double_sum_ra_lower", Group::DoubleSums),
    ("double_sum_ra_upper", Group::DoubleSums),
    ("laplacian_w_lower_bound", Group::DoubleSums),
    ("bn_positive", Group::DoubleSums),
    ("signed_sum_quartic", Group::DoubleSums),
    ("signed_sum_quadratic", Group::DoubleSums),
    ("a_tail_over_diagonal_m1", Group::DoubleSums),
    ("a_tail_over_diagonal_m2", Group::DoubleSums),
    ("a_tail_over_diagonal_m3", Group::DoubleSums),
    ("a_tail_over_diagonal_m4", Group::DoubleSums),
    ("a_head_over_diagonal_n1", Group::DoubleSums),
    ("a_head_over_diagonal_n2", Group::DoubleSums),
    ("a_head_over_diagonal_n3", Group::DoubleSums),
    ("a_head_over_diagonal_n4", Group::DoubleSums),
    ("duality", Group::Identities),
    ("vanishing_w", Group::Identities),
    ("w_via_theta_derivative", Group::Identities),
    ("dx_w_double_sum", Group::Identities),
    ("dx_w_vanishes_at_one", Group::Identities),
    ("dy_w_vanishes_at_hexagonal", Group::Identities),
    ("integral_identity", Group::Identities),
    ("integral_identity_weighted", Group::Identities),
    ("theta_laplacian_identity", Group::Identities),
    ("w_laplacian_identity", Group::Identities),
    ("w_mixed_identity", Group::Identities),
    ("derivative_finite_difference", Group::Identities),
    ("theta_y_quotient_large_x", Group::ThetaBounds),
    ("theta_y_quotient_small_x", Group::ThetaBounds),
    ("theta_xy_quotient", Group::ThetaBounds),
    ("theta_xy_over_theta_y", Group::ThetaBounds),
    ("theta_xy_over_theta_y_k1", Group::ThetaBounds),
    ("theta_xy_over_theta_y_small_x", Group::ThetaBounds),
    ("theta_xy_over_theta_y_small_x_k", Group::ThetaBounds),
    ("cubic_moment_quotient", Group::ThetaBounds),
    ("sine_quotient_derivative", Group::ThetaBounds),
    ("quotient_monotonicity_kernel", Group::ThetaBounds),
    ("nu_mu_ratio_decreasing", Group::ThetaBounds),
    ("theta_y_envelope_large_x", Group::ThetaBounds),
    ("theta_y_envelope_small_x", Group::ThetaBounds),
];

pub fn coverage_manifest() -> Vec<&'static str> {
    MANIFEST.iter().map(|(id, _)| *id).collect()
}

/// All report groups, run concurrently, in manifest order.
pub fn verify_all(cfg: &VerifyConfig) -> Result<Vec<LemmaReport>> {
    run_groups(&Group::ALL, cfg)
}

fn run_groups(groups: &[Group], cfg: &VerifyConfig) -> Result<Vec<LemmaReport>> {
    use rayon::prelude::*;
    let out: Vec<Result<Vec<LemmaReport>>> = groups.par_iter().map(|g| g.run(cfg)).collect();
    let mut all = Vec::new();
    for r in out {
        all.extend(r?);
    }
    Ok(all)
}

/// Runs only the groups needed for `ids` and returns their reports in the
/// order requested.
pub fn verify_only(ids: &[String], cfg: &VerifyConfig) -> Result<Vec<LemmaReport>> {
    let mut groups = Vec::new();
    for id in ids {
        let g = MANIFEST
            .iter()
            .find(|(m, _)| m == id)
            .map(|(_, g)| *g)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown lemma id {id}")))?;
        if !groups.contains(&g) {
            groups.push(g);
        }
    }
    let all = run_groups(&groups, cfg)?;
    Ok(ids
        .iter()
        .filter_map(|id| all.iter().find(|r| &r.lemma_id == id).cloned())
        .collect())
}

pub(crate) fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![a];
    }
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}

/// Rectangle in `α` with a `y`-interval depending on `α`.
#[derive(Clone, Copy)]
pub(crate) struct Region {
    pub name: &'static str,
    pub alpha: (f64, f64),
    pub y: fn(f64) -> (f64, f64),
}

impl Region {
    pub fn describe(&self, n: usize, random: usize) -> String {
        let (ylo, yhi) = (self.y)(self.alpha.0);
        let (ylo2, yhi2) = (self.y)(self.alpha.1);
        format!(
            "{}: alpha in [{}, {}], y from [{:.4}, {:.4}] to [{:.4}, {:.4}]; {n}x{n} grid + {random} random",
            self.name, self.alpha.0, self.alpha.1, ylo, yhi, ylo2, yhi2
        )
    }

    pub fn grid(&self, n: usize) -> Vec<(f64, f64)> {
        let mut pts = Vec::with_capacity(n * n);
        for a in linspace(self.alpha.0, self.alpha.1, n) {
            let (lo, hi) = (self.y)(a);
            for y in linspace(lo, hi, n) {
                pts.push((a, y));
            }
        }
        pts
    }

    pub fn random(&self, count: usize, seed: u64) -> Vec<(f64, f64)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count)
            .map(|_| {
                let a = rng.gen_range(self.alpha.0..=self.alpha.1);
                let (lo, hi) = (self.y)(a);
                (a, rng.gen_range(lo..=hi))
            })
            .collect()
    }
}

/// Minimum of `f` over a point set.
pub(crate) fn min_over<F>(pts: &[(f64, f64)], f: F) -> (f64, (f64, f64))
where
    F: Fn(f64, f64) -> f64 + Sync,
{
    use rayon::prelude::*;
    pts.par_iter()
        .map(|&(a, y)| (f(a, y), (a, y)))
        .reduce(
            || (f64::INFINITY, (f64::NAN, f64::NAN)),
            |p, q| if q.0 < p.0 || p.0.is_nan() { q } else { p },
        )
}

/// Floor check of `f` over `region`: one report on the base grid plus random
/// points, one on the relative change of the minimum under 2× refinement.
pub(crate) fn floor_reports<F>(
    id: &str,
    region: &Region,
    claimed: f64,
    tolerance: f64,
    cfg: &VerifyConfig,
    f: F,
) -> Vec<LemmaReport>
where
    F: Fn(f64, f64) -> f64 + Sync,
{
    let mut pts = region.grid(cfg.grid);
    pts.extend(region.random(cfg.random_points, cfg.seed));
    let (m, at) = min_over(&pts, &f);
    let (m2, _) = min_over(&region.grid(2 * cfg.grid - 1), &f);
    let change = ((m2 - m) / m).abs();
    vec![
        LemmaReport::new(
            id,
            claimed,
            m,
            Comparison::Ge,
            tolerance,
            region.describe(cfg.grid, cfg.random_points),
        )
        .with_note(format!("minimum at alpha = {:.6}, y = {:.6}", at.0, at.1)),
        LemmaReport::new(
            &format!("{id}_refine"),
            0.1,
            change,
            Comparison::Le,
            0.0,
            format!("{} vs {} points per axis", cfg.grid, 2 * cfg.grid - 1),
        )
        .with_note(format!("refined minimum {m2:.10}")),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comparisons() {
        assert!(Comparison::Le.holds(1.0, 1.0, 0.0));
        assert!(!Comparison::Le.holds(1.1, 1.0, 0.05));
        assert!(Comparison::Ge.holds(0.96, 1.0, 0.05));
        assert!(Comparison::Approx.holds(1.0 + 1e-10, 1.0, 1e-9));
        assert!(!Comparison::Approx.holds(f64::NAN, 1.0, 1e-9));
    }

    #[test]
    fn half_ulp_of_printed_constant() {
        // 2.727e-5 carries three digits after the point
        assert!((half_ulp(3, -5) - 5e-9).abs() < 1e-24);
    }

    #[test]
    fn manifest_ids_unique() {
        let ids = coverage_manifest();
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), ids.len());
    }

    #[test]
    fn region_sampling() {
        let r = Region {
            name: "t",
            alpha: (1.0, 2.0),
            y: |a| (a, 2.0 * a),
        };
        let g = r.grid(3);
        assert_eq!(g.len(), 9);
        assert_eq!(g[8], (2.0, 4.0));
        let p = r.random(50, 1);
        assert!(p.iter().all(|&(a, y)| (1.0..=2.0).contains(&a) && y >= a && y <= 2.0 * a));
        assert_eq!(p, r.random(50, 1));
    }

    #[test]
    fn unknown_id_rejected() {
        assert!(verify_only(&["NOPE".to_string()], &VerifyConfig::default()).is_err());
    }
}
