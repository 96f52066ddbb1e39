//! Potential families and the energy per particle `E_f(L) = Σ_{P≠0} f(|P|²)`.
//!
//! Every potential is a function of `r = |P|²`.

use super::quadrature::{integrate_adaptive, GaussLegendre};
use super::{check_alpha, theta_lattice, w_b};
use crate::error::{Error, Result};
use crate::lattice_domain::{lattice_norms, UpperHalfPoint};
use crate::special_functions::SeriesConfig;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Which Laplace-transformed family of potentials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `∫_1^∞ (e^{-παxr} − b e^{-πaαxr}) P(x) dx`
    F,
    /// `∫_1^∞ (rx − b/α) e^{-παxr} P(x) dx`
    G,
}

/// Nonnegative weight `P(x)` on `[1, ∞)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Weight {
    Constant { c: f64 },
    Exponential { coef: f64, k: f64 },
    Power { coef: f64, p: f64 },
    Polynomial { coeffs: Vec<f64> },
}

impl Weight {
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Weight::Constant { c } => *c,
            Weight::Exponential { coef, k } => coef * (k * x).exp(),
            Weight::Power { coef, p } => coef * x.powf(*p),
            Weight::Polynomial { coeffs } => coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c),
        }
    }

    /// Rejects weights that are negative at any of a few hundred sample points.
    pub fn validate(&self) -> Result<()> {
        for i in 0..=400 {
            let x = 1.0 + (i as f64 / 40.0).exp_m1();
            let v = self.eval(x);
            if !(v >= 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "weight is negative or undefined at x = {x}"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum PotentialSpec {
    Gaussian { alpha: f64 },
    GaussianDiff { alpha: f64, a: f64, b: f64 },
    PolyGaussian { alpha: f64, b: f64 },
    YukawaDiff { alpha: f64, a: f64, b: f64 },
    LaplaceWeighted { alpha: f64, a: f64, b: f64, weight: Weight, family: Family },
}

impl PotentialSpec {
    pub fn alpha(&self) -> f64 {
        match self {
            PotentialSpec::Gaussian { alpha }
            | PotentialSpec::GaussianDiff { alpha, .. }
            | PotentialSpec::PolyGaussian { alpha, .. }
            | PotentialSpec::YukawaDiff { alpha, .. }
            | PotentialSpec::LaplaceWeighted { alpha, .. } => *alpha,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_alpha(self.alpha())?;
        match self {
            PotentialSpec::GaussianDiff { a, .. } | PotentialSpec::YukawaDiff { a, .. } => check_a(*a),
            PotentialSpec::LaplaceWeighted { a, weight, .. } => {
                check_a(*a)?;
                weight.validate()
            }
            _ => Ok(()),
        }
    }

    /// `f(r)` at `r = |P|²`; `None` for the Laplace family, which has no
    /// pointwise closed form here.
    pub fn eval(&self, r: f64) -> Option<f64> {
        Some(match *self {
            PotentialSpec::Gaussian { alpha } => (-PI * alpha * r).exp(),
            PotentialSpec::GaussianDiff { alpha, a, b } => (-PI * alpha * r).exp() - b * (-PI * a * alpha * r).exp(),
            PotentialSpec::PolyGaussian { alpha, b } => (r - b / alpha) * (-PI * alpha * r).exp(),
            PotentialSpec::YukawaDiff { alpha, a, b } => {
                ((-PI * alpha * r).exp() - b * (-PI * a * alpha * r).exp()) / r
            }
            PotentialSpec::LaplaceWeighted { .. } => return None,
        })
    }

    /// Nonincreasing majorant `M(ρ) ≥ sup_{|P| ≥ ρ} |f(|P|²)|`.
    fn majorant(&self, rho: f64) -> f64 {
        let r = rho * rho;
        match *self {
            PotentialSpec::Gaussian { alpha } => (-PI * alpha * r).exp(),
            PotentialSpec::GaussianDiff { alpha, b, .. } => (1.0 + b.abs()) * (-PI * alpha * r).exp(),
            PotentialSpec::PolyGaussian { alpha, b } => {
                let c = b.abs() / alpha;
                let r = r.max(1.0 / (PI * alpha) - c);
                (r + c) * (-PI * alpha * r).exp()
            }
            PotentialSpec::YukawaDiff { alpha, b, .. } => (1.0 + b.abs()) * (-PI * alpha * r).exp() / r,
            PotentialSpec::LaplaceWeighted { .. } => f64::INFINITY,
        }
    }
}

fn check_a(a: f64) -> Result<()> {
    if !(a > 1.0) || !a.is_finite() {
        return Err(Error::InvalidParameter(format!("a must exceed 1, got {a}")));
    }
    Ok(())
}

/// Direct summation of `E_f(L)` over `0 < |P| ≤ cutoff_radius`, with a check
/// that the tail beyond the cutoff is below `1e-12` of the sum.
pub fn lattice_energy(p: &PotentialSpec, z: UpperHalfPoint, cutoff_radius: f64) -> Result<f64> {
    p.validate()?;
    if matches!(p, PotentialSpec::LaplaceWeighted { .. }) {
        return Err(Error::InvalidParameter(
            "weighted Laplace potentials are evaluated by laplace_energy".into(),
        ));
    }
    let pts = lattice_norms(z, cutoff_radius)?;
    let mut terms: Vec<f64> = pts
        .iter()
        .filter(|v| v.m != 0 || v.n != 0)
        .filter_map(|v| p.eval(v.norm2))
        .collect();
    terms.sort_by(|a, b| a.abs().total_cmp(&b.abs()));
    let sum: f64 = terms.iter().sum();

    // Points in the shell ρ ≤ |P| < ρ+1 lie in cells inside the annulus
    // widened by the cell diameter, so their count is at most its area.
    let [v1, v2] = z.basis();
    let d = ((v1[0] + v2[0]).hypot(v1[1] + v2[1])).max((v1[0] - v2[0]).hypot(v1[1] - v2[1]));
    let mut tail = 0.0;
    let mut rho = cutoff_radius;
    loop {
        let outer = rho + 1.0 + d;
        let inner = (rho - d).max(0.0);
        let count = PI * (outer * outer - inner * inner);
        let t = count * p.majorant(rho);
        tail += t;
        if t <= 1e-30 * tail.max(f64::MIN_POSITIVE) || t == 0.0 {
            break;
        }
        rho += 1.0;
        if rho > cutoff_radius + 1e4 {
            break;
        }
    }
    if !(tail <= 1e-12 * sum.abs()) {
        return Err(Error::TailTooLarge {
            tail,
            sum,
            cutoff: cutoff_radius,
        });
    }
    Ok(sum)
}

const LAPLACE_X_MAX: f64 = 1e4;

/// Energy of a weighted Laplace potential, by exchanging the lattice sum with
/// the `x`-integral and integrating the closed-form inner energies over the
/// panels `[1,2], [2,4], ...` until a panel adds less than `1e-10` of the total.
pub fn laplace_energy(p: &PotentialSpec, z: UpperHalfPoint, cfg: &SeriesConfig) -> Result<f64> {
    let PotentialSpec::LaplaceWeighted { alpha, a, b, weight, family } = p else {
        return Err(Error::InvalidParameter("laplace_energy needs a LaplaceWeighted potential".into()));
    };
    p.validate()?;
    let (alpha, a, b) = (*alpha, *a, *b);
    let inner = |x: f64| -> Result<f64> {
        let w = weight.eval(x);
        if w == 0.0 {
            return Ok(0.0);
        }
        let e = match family {
            Family::F => {
                let t1 = theta_lattice(alpha * x, z, cfg)? - 1.0;
                let t2 = theta_lattice(a * alpha * x, z, cfg)? - 1.0;
                t1 - b * t2
            }
            Family::G => x * w_b(alpha * x, b, z, cfg)? + b / alpha,
        };
        Ok(w * e)
    };
    let mut total: f64 = 0.0;
    let mut lo = 1.0;
    loop {
        let hi = 2.0 * lo;
        let part = integrate_adaptive(GaussLegendre::g16(), lo, hi, 1e-12, 1e-14 * total.abs(), inner)?;
        total += part;
        if part.abs() <= 1e-10 * total.abs() || (part == 0.0 && total == 0.0) {
            return Ok(total);
        }
        if hi >= LAPLACE_X_MAX {
            return Err(Error::QuadratureDivergence { x_max: hi });
        }
        lo = hi;
    }
}

/// Radius beyond which `|f| < 1e-20` relative to its size at the shortest vectors.
fn auto_cutoff(p: &PotentialSpec) -> f64 {
    let alpha = p.alpha();
    (48.0 / (PI * alpha)).sqrt().max(3.0)
}

/// `E_f(L)` by the fastest accurate route for each family.
pub fn energy(p: &PotentialSpec, z: UpperHalfPoint, cfg: &SeriesConfig) -> Result<f64> {
    p.validate()?;
    match *p {
        PotentialSpec::Gaussian { alpha } => Ok(theta_lattice(alpha, z, cfg)? - 1.0),
        PotentialSpec::GaussianDiff { alpha, a, b } => {
            Ok(theta_lattice(alpha, z, cfg)? - 1.0 - b * (theta_lattice(a * alpha, z, cfg)? - 1.0))
        }
        PotentialSpec::PolyGaussian { alpha, b } => Ok(w_b(alpha, b, z, cfg)? + b / alpha),
        PotentialSpec::YukawaDiff { .. } => lattice_energy(p, z, auto_cutoff(p)),
        PotentialSpec::LaplaceWeighted { .. } => laplace_energy(p, z, cfg),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::energy::w_b;
    use crate::lattice_domain::hexagonal_point;

    fn cfg() -> SeriesConfig {
        SeriesConfig::default()
    }

    fn pt(x: f64, y: f64) -> UpperHalfPoint {
        UpperHalfPoint::new(x, y).unwrap()
    }

    #[test]
    fn gaussian_matches_theta() {
        let z = pt(0.0, 1.0);
        let e = lattice_energy(&PotentialSpec::Gaussian { alpha: 1.0 }, z, 8.0).unwrap();
        let t = theta_lattice(1.0, z, &cfg()).unwrap() - 1.0;
        assert!((e - t).abs() < 1e-12 * t);
    }

    #[test]
    fn poly_gaussian_matches_w() {
        let z = pt(0.3, 1.4);
        let p = PotentialSpec::PolyGaussian { alpha: 1.5, b: 0.1 };
        let e = lattice_energy(&p, z, 8.0).unwrap();
        let w = w_b(1.5, 0.1, z, &cfg()).unwrap() + 0.1 / 1.5;
        assert!((e - w).abs() < 1e-12 * w.abs());
    }

    #[test]
    fn yukawa_prefers_hexagonal() {
        let p = PotentialSpec::YukawaDiff { alpha: 1.0, a: 2.0, b: 0.5 };
        let h = lattice_energy(&p, hexagonal_point(), 8.0).unwrap();
        let s = lattice_energy(&p, pt(0.0, 1.0), 8.0).unwrap();
        assert!(h < s);
    }

    #[test]
    fn tail_too_large_at_short_cutoff() {
        let p = PotentialSpec::Gaussian { alpha: 1.0 };
        assert!(matches!(
            lattice_energy(&p, pt(0.0, 1.0), 1.5),
            Err(Error::TailTooLarge { .. })
        ));
    }

    #[test]
    fn laplace_unit_weight_is_yukawa() {
        let z = pt(0.2, 1.1);
        let p = PotentialSpec::LaplaceWeighted {
            alpha: 1.0,
            a: 2.0,
            b: 0.5,
            weight: Weight::Constant { c: 1.0 },
            family: Family::F,
        };
        let l = laplace_energy(&p, z, &cfg()).unwrap();
        // ∫_1^∞ e^{-πxr} dx = e^{-πr}/(πr); the second term picks up 1/a
        let y = lattice_energy(&PotentialSpec::YukawaDiff { alpha: 1.0, a: 2.0, b: 0.25 }, z, 8.0).unwrap();
        assert!((l - y / PI).abs() < 1e-8 * l.abs(), "{l} {}", y / PI);
    }

    #[test]
    fn laplace_exponential_weight_positive() {
        let p = PotentialSpec::LaplaceWeighted {
            alpha: 1.0,
            a: 2.0,
            b: 0.0,
            weight: Weight::Exponential { coef: 1.0, k: -1.0 },
            family: Family::F,
        };
        let v = laplace_energy(&p, hexagonal_point(), &cfg()).unwrap();
        assert!(v.is_finite() && v > 0.0);
    }

    #[test]
    fn laplace_prefers_hexagonal() {
        let p = PotentialSpec::LaplaceWeighted {
            alpha: 1.0,
            a: 2.0,
            b: 0.0,
            weight: Weight::Constant { c: 1.0 },
            family: Family::F,
        };
        let h = laplace_energy(&p, hexagonal_point(), &cfg()).unwrap();
        let s = laplace_energy(&p, pt(0.0, 1.0), &cfg()).unwrap();
        assert!(h < s);
    }

    #[test]
    fn laplace_g_family_matches_direct_sum() {
        let z = pt(0.1, 1.2);
        let (alpha, b) = (1.2, 0.1);
        let p = PotentialSpec::LaplaceWeighted {
            alpha,
            a: 2.0,
            b,
            weight: Weight::Constant { c: 1.0 },
            family: Family::G,
        };
        let l = laplace_energy(&p, z, &cfg()).unwrap();
        // ∫_1^∞ (rx − b/α) e^{-παxr} dx = e^{-παr}(1/(πα) + 1/(πα)² /r − b/(πα² r))
        let c = PI * alpha;
        let direct: f64 = lattice_norms(z, 8.0)
            .unwrap()
            .iter()
            .filter(|v| v.m != 0 || v.n != 0)
            .map(|v| {
                let r = v.norm2;
                (-c * r).exp() * (1.0 / c + 1.0 / (c * c * r) - b / (alpha * c * r))
            })
            .sum();
        assert!((l - direct).abs() < 1e-8 * direct.abs(), "{l} {direct}");
    }

    #[test]
    fn rejects_negative_weight() {
        let p = PotentialSpec::LaplaceWeighted {
            alpha: 1.0,
            a: 2.0,
            b: 0.0,
            weight: Weight::Polynomial { coeffs: vec![1.0, -1.0] },
            family: Family::F,
        };
        assert!(laplace_energy(&p, hexagonal_point(), &cfg()).is_err());
    }

    #[test]
    fn divergent_weight() {
        let p = PotentialSpec::LaplaceWeighted {
            alpha: 1.0,
            a: 2.0,
            b: 0.0,
            weight: Weight::Exponential { coef: 1.0, k: 4.0 },
            family: Family::F,
        };
        assert!(matches!(
            laplace_energy(&p, hexagonal_point(), &cfg()),
            Err(Error::QuadratureDivergence { .. })
        ));
    }

    #[test]
    fn spec_roundtrip_json() {
        let p = PotentialSpec::LaplaceWeighted {
            alpha: 1.0,
            a: 2.0,
            b: 0.5,
            weight: Weight::Power { coef: 1.0, p: 2.0 },
            family: Family::G,
        };
        let s = serde_json::to_string(&p).unwrap();
        let q: PotentialSpec = serde_json::from_str(&s).unwrap();
        assert_eq!(p, q);
    }
}
