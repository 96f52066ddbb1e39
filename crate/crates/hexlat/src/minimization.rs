//! Minimizers of lattice energies over the shape space.
//!
//! For the `W_b` and theta-difference problems the search is reduced to the
//! vertical line `Γ = {1/2 + iy : y ≥ √3/2}`, then refined over the closed
//! fundamental domain. Nonexistence is decided from the sign of the leading
//! coefficient as `y → ∞` and corroborated by a descending witness along `Γ`.

use crate::energy::{energy, theta_difference, w_b, PotentialSpec, B_CRITICAL};
use crate::error::{Error, Result};
use crate::lattice_domain::{hexagonal_point, reduce_to_fundamental, UpperHalfPoint};
use crate::special_functions::SeriesConfig;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

const SQRT3_2: f64 = 0.866_025_403_784_438_6;
/// Margin around a critical coupling inside which a point counts as on the boundary.
pub const BOUNDARY_MARGIN: f64 = 1e-12;
pub const GAMMA_Y_MAX: f64 = 50.0;
pub const PROBE_Y: f64 = 64.0;
pub const GOLDEN_TOL: f64 = 1e-10;
pub const SIMPLEX_TOL: f64 = 1e-9;
const HEX_RADIUS: f64 = 1e-5;
const TIE_TOL: f64 = 1e-14;
const WITNESS_K: i32 = 12;
const WITNESS_K_MAX: i32 = 40;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum MinimizeOutcome {
    Minimizer {
        z_star: UpperHalfPoint,
        value: f64,
        distance_to_hex: f64,
        /// Set when the parameters lie outside the range where hexagonal
        /// optimality is a theorem, e.g. `α < 1`.
        advisory: bool,
    },
    NoMinimizer {
        witness_y: Vec<f64>,
        witness_values: Vec<f64>,
        asymptotic_slope_sign: i8,
        advisory: bool,
    },
}

impl MinimizeOutcome {
    pub fn is_hexagonal(&self) -> bool {
        matches!(self, MinimizeOutcome::Minimizer { distance_to_hex, .. } if *distance_to_hex < HEX_RADIUS)
    }

    pub fn classification(&self) -> Classification {
        match self {
            MinimizeOutcome::NoMinimizer { .. } => Classification::NoMinimizer,
            _ if self.is_hexagonal() => Classification::Hexagonal,
            _ => Classification::OtherMinimizer,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Hexagonal,
    NoMinimizer,
    /// A minimizer was found away from `e^{iπ/3}`.
    OtherMinimizer,
}

impl Classification {
    pub fn label(self) -> &'static str {
        match self {
            Classification::Hexagonal => "hexagonal",
            Classification::NoMinimizer => "no_minimizer",
            Classification::OtherMinimizer => "other_minimizer",
        }
    }
}

fn gamma(y: f64) -> UpperHalfPoint {
    UpperHalfPoint { x: 0.5, y }
}

/// Golden-section search on `[lo, hi]`; ties move the bracket left.
pub fn golden_section<F>(lo: f64, hi: f64, tol: f64, mut f: F) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    while b - a > tol {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d)?;
        }
    }
    let (mut x, mut fx) = if fc <= fd { (c, fc) } else { (d, fd) };
    let f_lo = f(lo)?;
    if f_lo <= fx {
        x = lo;
        fx = f_lo;
    }
    Ok((x, fx))
}

/// Nelder–Mead on the plane. Stops when the simplex diameter drops below `tol`.
pub fn nelder_mead<F>(start: [f64; 2], step: f64, tol: f64, max_iter: usize, mut f: F) -> Result<([f64; 2], f64)>
where
    F: FnMut([f64; 2]) -> Result<f64>,
{
    let mut pts = [start, [start[0] + step, start[1]], [start[0], start[1] + step]];
    let mut vals = [f(pts[0])?, f(pts[1])?, f(pts[2])?];
    let lerp = |a: [f64; 2], b: [f64; 2], t: f64| [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])];
    for _ in 0..max_iter {
        let mut idx = [0, 1, 2];
        idx.sort_by(|&i, &j| vals[i].total_cmp(&vals[j]));
        pts = [pts[idx[0]], pts[idx[1]], pts[idx[2]]];
        vals = [vals[idx[0]], vals[idx[1]], vals[idx[2]]];
        let diam = (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .map(|(i, j)| (pts[i][0] - pts[j][0]).hypot(pts[i][1] - pts[j][1]))
            .fold(0.0, f64::max);
        if diam < tol {
            break;
        }
        let centroid = lerp(pts[0], pts[1], 0.5);
        let refl = lerp(centroid, pts[2], -1.0);
        let fr = f(refl)?;
        if fr < vals[0] {
            let exp = lerp(centroid, pts[2], -2.0);
            let fe = f(exp)?;
            if fe < fr {
                pts[2] = exp;
                vals[2] = fe;
            } else {
                pts[2] = refl;
                vals[2] = fr;
            }
        } else if fr < vals[1] {
            pts[2] = refl;
            vals[2] = fr;
        } else {
            let (cp, cv) = if fr < vals[2] {
                let c = lerp(centroid, refl, 0.5);
                (c, f(c)?)
            } else {
                let c = lerp(centroid, pts[2], 0.5);
                (c, f(c)?)
            };
            if cv < vals[2].min(fr) {
                pts[2] = cp;
                vals[2] = cv;
            } else {
                for i in 1..3 {
                    pts[i] = lerp(pts[0], pts[i], 0.5);
                    vals[i] = f(pts[i])?;
                }
            }
        }
    }
    let best = (0..3).min_by(|&i, &j| vals[i].total_cmp(&vals[j])).unwrap_or(0);
    Ok((pts[best], vals[best]))
}

/// Evaluates `f` at the image of `(x, y)` in the fundamental domain.
fn on_domain<F>(f: &F, p: [f64; 2]) -> Result<f64>
where
    F: Fn(UpperHalfPoint) -> Result<f64>,
{
    if !(p[1] > 0.0) || !p[0].is_finite() || p[0].abs() > 1e3 {
        return Ok(f64::INFINITY);
    }
    let (z, _) = reduce_to_fundamental(UpperHalfPoint { x: p[0], y: p[1] })?;
    f(z)
}

/// Minimum of `f` along `Γ` for `y ∈ [√3/2, GAMMA_Y_MAX]`.
pub fn minimize_on_gamma<F>(f: &F) -> Result<(f64, f64)>
where
    F: Fn(UpperHalfPoint) -> Result<f64>,
{
    golden_section(SQRT3_2, GAMMA_Y_MAX, GOLDEN_TOL, |y| f(gamma(y)))
}

/// Two-dimensional refinement from `start`; the result is reduced to the
/// closed fundamental domain.
pub fn refine_in_domain<F>(f: &F, start: UpperHalfPoint) -> Result<(UpperHalfPoint, f64)>
where
    F: Fn(UpperHalfPoint) -> Result<f64>,
{
    let (p, v) = nelder_mead([start.x, start.y], 0.05, SIMPLEX_TOL, 4000, |p| on_domain(f, p))?;
    let (z, _) = reduce_to_fundamental(UpperHalfPoint { x: p[0], y: p[1] })?;
    Ok((z, v))
}

fn located(z: UpperHalfPoint, value: f64, advisory: bool) -> MinimizeOutcome {
    let z = snap_to_domain(z);
    MinimizeOutcome::Minimizer {
        z_star: z,
        value,
        distance_to_hex: z.distance(&hexagonal_point()),
        advisory,
    }
}

// Rounding in the reduction can leave the point a hair outside the closure.
fn snap_to_domain(z: UpperHalfPoint) -> UpperHalfPoint {
    let x = z.x.clamp(0.0, 0.5);
    let r = (x * x + z.y * z.y).sqrt();
    if r < 1.0 && r > 1.0 - 1e-12 {
        UpperHalfPoint { x, y: (1.0 - x * x).sqrt() }
    } else {
        UpperHalfPoint { x, y: z.y }
    }
}

fn gamma_then_plane<F>(f: &F, advisory: bool) -> Result<MinimizeOutcome>
where
    F: Fn(UpperHalfPoint) -> Result<f64>,
{
    let (y, v) = minimize_on_gamma(f)?;
    let (z2, v2) = refine_in_domain(f, gamma(y))?;
    let (z, v) = if v2 < v - 1e-13 { (z2, v2) } else { (gamma(y), v) };
    // A flat energy, e.g. W at b = 1/(2π) and α = 1, ties everywhere.
    let hex = hexagonal_point();
    let v_hex = f(hex)?;
    if z.distance(&hex) >= HEX_RADIUS && v_hex <= v + TIE_TOL * v.abs().max(1.0) {
        return Ok(located(hex, v_hex, advisory));
    }
    Ok(located(z, v, advisory))
}

/// Longest strictly decreasing tail of `f` sampled at `y = √3/2 · 2^k`, grown
/// until its last value is below `reference`.
pub fn descent_witness<F>(f: &F, reference: f64) -> Result<(Vec<f64>, Vec<f64>)>
where
    F: Fn(UpperHalfPoint) -> Result<f64>,
{
    let mut ys = Vec::new();
    let mut vs = Vec::new();
    for k in 0..=WITNESS_K_MAX {
        let y = SQRT3_2 * 2f64.powi(k);
        ys.push(y);
        vs.push(f(gamma(y))?);
        if k >= WITNESS_K && vs[vs.len() - 1] < reference && vs.len() >= 2 && vs[vs.len() - 2] > vs[vs.len() - 1] {
            break;
        }
    }
    let mut start = vs.len() - 1;
    while start > 0 && vs[start - 1] > vs[start] {
        start -= 1;
    }
    Ok((ys[start..].to_vec(), vs[start..].to_vec()))
}

fn no_minimizer<F>(f: &F, sign: i8, advisory: bool) -> Result<MinimizeOutcome>
where
    F: Fn(UpperHalfPoint) -> Result<f64>,
{
    let hex = f(hexagonal_point())?;
    let (witness_y, witness_values) = descent_witness(f, hex)?;
    Ok(MinimizeOutcome::NoMinimizer {
        witness_y,
        witness_values,
        asymptotic_slope_sign: sign,
        advisory,
    })
}

fn sign_of(lead: f64) -> i8 {
    if lead < -BOUNDARY_MARGIN {
        -1
    } else {
        1
    }
}

/// Minimizes `W_b(α; ·)` over the upper half-plane.
pub fn minimize_w(alpha: f64, b: f64, cfg: &SeriesConfig) -> Result<MinimizeOutcome> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::NonPositiveAlpha(alpha));
    }
    if !b.is_finite() {
        return Err(Error::InvalidParameter(format!("b must be finite, got {b}")));
    }
    let advisory = alpha < 1.0;
    let f = |z: UpperHalfPoint| w_b(alpha, b, z, cfg);
    // W_b ≈ α^{-3/2} √y (1/(2π) − b) for large y on Γ.
    let lead = B_CRITICAL - b;
    if sign_of(lead) < 0 {
        return no_minimizer(&f, -1, advisory);
    }
    gamma_then_plane(&f, advisory)
}

/// Minimizes `θ(α; ·) − b θ(aα; ·)` over the upper half-plane.
pub fn minimize_theta_difference(alpha: f64, a: f64, b: f64, cfg: &SeriesConfig) -> Result<MinimizeOutcome> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::NonPositiveAlpha(alpha));
    }
    if !(a > 1.0) || !a.is_finite() {
        return Err(Error::InvalidParameter(format!("a must exceed 1, got {a}")));
    }
    if !b.is_finite() {
        return Err(Error::InvalidParameter(format!("b must be finite, got {b}")));
    }
    let advisory = alpha < 1.0;
    let f = |z: UpperHalfPoint| theta_difference(alpha, a, b, z, cfg);
    // θ(α) − bθ(aα) ≈ √(y/(aα)) (√a − b) for large y.
    let lead = a.sqrt() - b;
    if sign_of(lead) < 0 {
        return no_minimizer(&f, -1, advisory);
    }
    gamma_then_plane(&f, advisory)
}

const GRID: usize = 40;
const GRID_Y_MAX: f64 = 8.0;

/// Grid search over `{0 ≤ x ≤ 1/2, √3/2 ≤ y ≤ 8}` followed by simplex
/// refinement. Declares divergence when the energy at `1/2 + 64i` undercuts
/// the best grid value by more than `1e-8`.
pub fn minimize_generic(p: &PotentialSpec, cfg: &SeriesConfig) -> Result<MinimizeOutcome> {
    p.validate()?;
    let advisory = p.alpha() < 1.0;
    let f = |z: UpperHalfPoint| energy(p, z, cfg);
    let cells: Vec<(usize, usize)> = (0..GRID).flat_map(|j| (0..GRID).map(move |i| (j, i))).collect();
    let vals: Vec<Result<(f64, UpperHalfPoint)>> = cells
        .par_iter()
        .map(|&(j, i)| {
            let x = 0.5 * i as f64 / (GRID - 1) as f64;
            let y = SQRT3_2 + (GRID_Y_MAX - SQRT3_2) * j as f64 / (GRID - 1) as f64;
            let z = UpperHalfPoint { x, y };
            Ok((f(z)?, z))
        })
        .collect();
    // Cells are ordered by y, then x, so the first strict minimum wins ties.
    let mut best: Option<(f64, UpperHalfPoint)> = None;
    for v in vals {
        let (e, z) = v?;
        if best.map_or(true, |(b, _)| e < b) {
            best = Some((e, z));
        }
    }
    let (best_val, best_z) = best.ok_or_else(|| Error::InvalidParameter("empty grid".into()))?;
    let probe = f(gamma(PROBE_Y))?;
    if probe < best_val - 1e-8 {
        let mut ys: Vec<f64> = (0..=6).map(|k| SQRT3_2 * 2f64.powi(k)).collect();
        ys.push(PROBE_Y);
        let mut vs = Vec::with_capacity(ys.len());
        for &y in &ys {
            vs.push(f(gamma(y))?);
        }
        let mut start = vs.len() - 1;
        while start > 0 && vs[start - 1] > vs[start] {
            start -= 1;
        }
        return Ok(MinimizeOutcome::NoMinimizer {
            witness_y: ys[start..].to_vec(),
            witness_values: vs[start..].to_vec(),
            asymptotic_slope_sign: -1,
            advisory,
        });
    }
    let (z, v) = refine_in_domain(&f, best_z)?;
    if v <= best_val {
        Ok(located(z, v, advisory))
    } else {
        Ok(located(best_z, best_val, advisory))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "problem", rename_all = "snake_case")]
pub enum PhaseProblem {
    W,
    ThetaDiff { a: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseCell {
    pub alpha: f64,
    pub b: f64,
    pub classification: Classification,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseBoundary {
    pub alpha: f64,
    /// Largest `b` classified hexagonal, if any.
    pub last_hexagonal_b: Option<f64>,
    /// Smallest `b` above it classified as having no minimizer.
    pub first_no_minimizer_b: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseTable {
    pub problem: PhaseProblem,
    pub cells: Vec<PhaseCell>,
    pub boundaries: Vec<PhaseBoundary>,
}

impl PhaseTable {
    /// Whether every `α` row puts its boundary between the same pair of `b` values.
    pub fn boundary_is_constant(&self) -> bool {
        self.boundaries
            .windows(2)
            .all(|w| w[0].last_hexagonal_b == w[1].last_hexagonal_b && w[0].first_no_minimizer_b == w[1].first_no_minimizer_b)
    }
}

/// Classifies every `(α, b)` pair; cells run in parallel.
pub fn phase_scan(alpha_grid: &[f64], b_grid: &[f64], problem: PhaseProblem, cfg: &SeriesConfig) -> Result<PhaseTable> {
    if alpha_grid.is_empty() || b_grid.is_empty() {
        return Err(Error::InvalidParameter("phase scan grids must be nonempty".into()));
    }
    let mut bs = b_grid.to_vec();
    bs.sort_by(f64::total_cmp);
    let pairs: Vec<(f64, f64)> = alpha_grid.iter().flat_map(|&a| bs.iter().map(move |&b| (a, b))).collect();
    let cells = pairs
        .par_iter()
        .map(|&(alpha, b)| {
            let out = match problem {
                PhaseProblem::W => minimize_w(alpha, b, cfg)?,
                PhaseProblem::ThetaDiff { a } => minimize_theta_difference(alpha, a, b, cfg)?,
            };
            Ok(PhaseCell {
                alpha,
                b,
                classification: out.classification(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let boundaries = alpha_grid
        .iter()
        .map(|&alpha| {
            let row: Vec<&PhaseCell> = cells.iter().filter(|c| c.alpha == alpha).collect();
            let last_hex = row
                .iter()
                .filter(|c| c.classification == Classification::Hexagonal)
                .map(|c| c.b)
                .fold(None, |m: Option<f64>, b| Some(m.map_or(b, |m| m.max(b))));
            let first_no = row
                .iter()
                .filter(|c| c.classification == Classification::NoMinimizer && last_hex.map_or(true, |h| c.b > h))
                .map(|c| c.b)
                .fold(None, |m: Option<f64>, b| Some(m.map_or(b, |m| m.min(b))));
            PhaseBoundary {
                alpha,
                last_hexagonal_b: last_hex,
                first_no_minimizer_b: first_no,
            }
        })
        .collect();
    Ok(PhaseTable { problem, cells, boundaries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::energy::Weight;
    use crate::energy::Family;

    fn cfg() -> SeriesConfig {
        SeriesConfig::default()
    }

    #[test]
    fn golden_quadratic() {
        let (x, v) = golden_section(0.0, 3.0, 1e-10, |x| Ok((x - 1.3) * (x - 1.3))).unwrap();
        assert!((x - 1.3).abs() < 1e-8 && v < 1e-15);
        // minimum at the left end is returned exactly
        let (x, _) = golden_section(1.0, 2.0, 1e-10, |x| Ok(x)).unwrap();
        assert_eq!(x, 1.0);
    }

    #[test]
    fn nelder_mead_rosenbrock() {
        let (p, _) = nelder_mead([-1.0, 1.0], 0.1, 1e-10, 10_000, |p| {
            Ok((1.0 - p[0]).powi(2) + 100.0 * (p[1] - p[0] * p[0]).powi(2))
        })
        .unwrap();
        assert!((p[0] - 1.0).abs() < 1e-6 && (p[1] - 1.0).abs() < 1e-6, "{p:?}");
    }

    #[test]
    fn montgomery_case() {
        let out = minimize_w(1.0, 0.0, &cfg()).unwrap();
        match out {
            MinimizeOutcome::Minimizer { distance_to_hex, advisory, .. } => {
                assert!(distance_to_hex < 1e-6, "{distance_to_hex}");
                assert!(!advisory);
            }
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn critical_coupling_is_hexagonal() {
        assert!(minimize_w(2.0, B_CRITICAL, &cfg()).unwrap().is_hexagonal());
    }

    #[test]
    fn above_critical_has_no_minimizer() {
        let out = minimize_w(1.0, 0.2, &cfg()).unwrap();
        let MinimizeOutcome::NoMinimizer { witness_y, witness_values, asymptotic_slope_sign, .. } = out else {
            panic!("expected no minimizer")
        };
        assert_eq!(asymptotic_slope_sign, -1);
        assert!(witness_values.len() >= 2);
        assert!(witness_y.windows(2).all(|w| w[0] < w[1]));
        assert!(witness_values.windows(2).all(|w| w[0] > w[1]));
        let hex = w_b(1.0, 0.2, hexagonal_point(), &cfg()).unwrap();
        assert!(*witness_values.last().unwrap() < hex);
    }

    #[test]
    fn theta_difference_cases() {
        assert!(minimize_theta_difference(1.0, 2.0, 2f64.sqrt(), &cfg()).unwrap().is_hexagonal());
        assert!(minimize_theta_difference(1.0, 2.0, 0.0, &cfg()).unwrap().is_hexagonal());
        let out = minimize_theta_difference(1.0, 3.0, 1.8, &cfg()).unwrap();
        assert_eq!(out.classification(), Classification::NoMinimizer);
        assert!(minimize_theta_difference(1.0, 1.0, 0.5, &cfg()).is_err());
    }

    #[test]
    fn generic_families() {
        let g = minimize_generic(&PotentialSpec::Gaussian { alpha: 1.0 }, &cfg()).unwrap();
        let MinimizeOutcome::Minimizer { value, distance_to_hex, .. } = g else { panic!() };
        assert!(distance_to_hex < 1e-5, "{distance_to_hex}");
        let th = crate::energy::theta_lattice(1.0, hexagonal_point(), &cfg()).unwrap() - 1.0;
        assert!((value - th).abs() < 1e-12);
        let d = minimize_generic(&PotentialSpec::GaussianDiff { alpha: 1.0, a: 2.0, b: 1.0 }, &cfg()).unwrap();
        assert!(d.is_hexagonal(), "{d:?}");
        let y = minimize_generic(&PotentialSpec::YukawaDiff { alpha: 1.0, a: 4.0, b: 0.5 }, &cfg()).unwrap();
        assert!(y.is_hexagonal(), "{y:?}");
    }

    #[test]
    fn generic_detects_divergence() {
        let p = PotentialSpec::PolyGaussian { alpha: 1.0, b: 0.3 };
        let out = minimize_generic(&p, &cfg()).unwrap();
        assert_eq!(out.classification(), Classification::NoMinimizer);
    }

    #[test]
    fn generic_laplace() {
        let p = PotentialSpec::LaplaceWeighted {
            alpha: 1.0,
            a: 2.0,
            b: 0.0,
            weight: Weight::Constant { c: 1.0 },
            family: Family::F,
        };
        assert!(minimize_generic(&p, &cfg()).unwrap().is_hexagonal());
    }

    #[test]
    fn phase_scan_w() {
        let t = phase_scan(&[1.0, 2.0, 4.0], &[0.10, 0.15, 0.159, 0.17], PhaseProblem::W, &cfg()).unwrap();
        assert!(t.boundary_is_constant());
        assert_eq!(t.boundaries[0].last_hexagonal_b, Some(0.159));
        assert_eq!(t.boundaries[0].first_no_minimizer_b, Some(0.17));
    }

    #[test]
    fn phase_scan_theta() {
        let t = phase_scan(&[1.0], &[1.40, 1.4142, 1.45], PhaseProblem::ThetaDiff { a: 2.0 }, &cfg()).unwrap();
        assert_eq!(t.boundaries[0].last_hexagonal_b, Some(1.4142));
        assert_eq!(t.boundaries[0].first_no_minimizer_b, Some(1.45));
        assert!(phase_scan(&[], &[0.1], PhaseProblem::W, &cfg()).is_err());
    }

    #[test]
    fn advisory_below_one() {
        match minimize_w(0.8, 0.0, &cfg()).unwrap() {
            MinimizeOutcome::Minimizer { advisory, .. } => assert!(advisory),
            MinimizeOutcome::NoMinimizer { .. } => panic!(),
        }
    }
}
