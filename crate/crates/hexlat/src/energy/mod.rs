//! Lattice theta function `θ(α;z)`, the polynomial-Gaussian energy `W_b(α;z)`
//! and their derivatives, computed through one-dimensional theta expansions.
//!
//! Every sum below runs over `n ∈ Z` with the summand even in `n`, so it is
//! evaluated as the `n = 0` column plus twice the `n ≥ 1` columns. The column
//! for `n` carries the weight `e^{-απyn²}` and a theta factor at
//! `(X, Y) = (y/α, nx)`.

pub mod potential;
pub mod quadrature;

pub use potential::{energy, laplace_energy, lattice_energy, Family, PotentialSpec, Weight};

use crate::error::{Error, Result};
use crate::lattice_domain::UpperHalfPoint;
use crate::special_functions::{sum_with_guards, theta_eval, Partial, Representation, SeriesConfig, ThetaArg};
use quadrature::{integrate_adaptive, GaussLegendre};
use std::f64::consts::PI;

/// The critical coupling `1/(2π)`.
pub const B_CRITICAL: f64 = 1.0 / (2.0 * PI);

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::NonPositiveAlpha(alpha));
    }
    Ok(())
}

fn theta1(p: Partial, x: f64, y: f64, cfg: &SeriesConfig) -> Result<f64> {
    theta_eval(ThetaArg { x, y }, p, Representation::Auto, cfg)
}

/// `½(1 − 2πb) X^{-1} ϑ(X;Y) + ϑ_X(X;Y)` summed as one series, which avoids
/// the cancellation between the two pieces when `X` is small.
fn w_column(x: f64, y: f64, b: f64, cfg: &SeriesConfig) -> Result<f64> {
    if x < cfg.poisson_switch() {
        let y = y - y.round();
        let bx = b * x;
        let s = sum_with_guards(0, 0.0, cfg, |j| {
            let ns: &[i64] = if j == 0 { &[0] } else { &[j, -j] };
            let mut t = 0.0;
            let mut m = 0.0;
            for &n in ns {
                let u = n as f64 - y;
                let g = (-PI * u * u / x).exp();
                t += (u * u - bx) * g;
                m += (u * u + bx.abs()) * g;
            }
            (t, m)
        })?;
        Ok(PI * x.powf(-2.5) * s)
    } else {
        let v = theta1(Partial::Value, x, y, cfg)?;
        let vx = theta1(Partial::X, x, y, cfg)?;
        Ok(0.5 * (1.0 - 2.0 * PI * b) / x * v + vx)
    }
}

/// Sums `col(n)` for `n ∈ Z` given that it is even in `n` and decays like
/// `e^{-απyn²}` times a polynomial of degree `power`.
fn even_sum<F>(alpha: f64, y: f64, power: i32, cfg: &SeriesConfig, mut col: F) -> Result<f64>
where
    F: FnMut(i64) -> Result<f64>,
{
    let c0 = col(0)?;
    let scale0 = c0.abs();
    let mut err = None;
    let mut col1 = None;
    let rest = sum_with_guards(1, scale0, cfg, |n| {
        let nf = n as f64;
        let v = match col(n) {
            Ok(v) => v,
            Err(e) => {
                err = Some(e);
                0.0
            }
        };
        let c1 = *col1.get_or_insert(v.abs().max(scale0));
        let bound = v.abs() + (-alpha * PI * y * nf * nf).exp() * nf.powi(power) * c1;
        (v, bound)
    })?;
    if let Some(e) = err {
        return Err(e);
    }
    Ok(c0 + 2.0 * rest)
}

/// `θ(α;z) = Σ_{P∈L} e^{-πα|P|²}`, origin included.
pub fn theta_lattice(alpha: f64, z: UpperHalfPoint, cfg: &SeriesConfig) -> Result<f64> {
    check_alpha(alpha)?;
    let big_x = z.y / alpha;
    let s = even_sum(alpha, z.y, 0, cfg, |n| {
        let nf = n as f64;
        let e = (-alpha * PI * z.y * nf * nf).exp();
        Ok(e * theta1(Partial::Value, big_x, nf * z.x, cfg)?)
    })?;
    Ok(big_x.sqrt() * s)
}

/// `W_b(α;z) = Σ_{P∈L} (|P|² − b/α) e^{-πα|P|²}`, origin included.
pub fn w_b(alpha: f64, b: f64, z: UpperHalfPoint, cfg: &SeriesConfig) -> Result<f64> {
    check_alpha(alpha)?;
    let big_x = z.y / alpha;
    let s = even_sum(alpha, z.y, 2, cfg, |n| {
        let nf = n as f64;
        let e = (-alpha * PI * z.y * nf * nf).exp();
        if e == 0.0 {
            return Ok(0.0);
        }
        let g = w_column(big_x, nf * z.x, b, cfg)?;
        let t = if n == 0 {
            0.0
        } else {
            PI * alpha * alpha * nf * nf * theta1(Partial::Value, big_x, nf * z.x, cfg)?
        };
        Ok(e * (g + t))
    })?;
    Ok(alpha.powf(-2.5) * z.y.powf(1.5) / PI * s)
}

/// `-(1/π) ∂_α θ − (b/α) θ` with a central difference of step `1e-5 α`.
pub fn w_b_via_theta_derivative(alpha: f64, b: f64, z: UpperHalfPoint, cfg: &SeriesConfig) -> Result<f64> {
    check_alpha(alpha)?;
    let h = 1e-5 * alpha;
    let d = (theta_lattice(alpha + h, z, cfg)? - theta_lattice(alpha - h, z, cfg)?) / (2.0 * h);
    Ok(-d / PI - b / alpha * theta_lattice(alpha, z, cfg)?)
}

/// `∂_x W_{1/(2π)}(α;z)` from the `ϑ_Y`, `ϑ_XY` expansion.
pub fn dx_w(alpha: f64, z: UpperHalfPoint, cfg: &SeriesConfig) -> Result<f64> {
    check_alpha(alpha)?;
    let big_x = z.y / alpha;
    let s = even_sum(alpha, z.y, 3, cfg, |n| {
        if n == 0 {
            return Ok(0.0);
        }
        let nf = n as f64;
        let e = (-alpha * PI * z.y * nf * nf).exp();
        if e == 0.0 {
            return Ok(0.0);
        }
        let ty = theta1(Partial::Y, big_x, nf * z.x, cfg)?;
        let txy = theta1(Partial::XY, big_x, nf * z.x, cfg)?;
        Ok(e * nf * (PI * alpha * alpha * nf * nf * ty + txy))
    })?;
    Ok(alpha.powf(-2.5) * z.y.powf(1.5) / PI * s)
}

/// `A_{n,m}(α;y) = n³m (α² e^{-πy(αn² + m²/α)} − e^{-πy(αm² + n²/α)})`.
pub fn a_nm(alpha: f64, y: f64, n: i64, m: i64) -> f64 {
    let (nf, mf) = (n as f64, m as f64);
    nf.powi(3)
        * mf
        * (alpha * alpha * (-PI * y * (alpha * nf * nf + mf * mf / alpha)).exp()
            - (-PI * y * (alpha * mf * mf + nf * nf / alpha)).exp())
}

/// `∂_x W_{1/(2π)}(α;z)` from the double sine series
/// `−8π α^{-5/2} y^{3/2} Σ_{n,m≥1} A_{n,m} sin(2πmnx)`, truncated at `n, m ≤ n_max`.
pub fn dx_w_double_sum(alpha: f64, z: UpperHalfPoint, n_max: i64) -> Result<f64> {
    check_alpha(alpha)?;
    let mut s = 0.0;
    for n in 1..=n_max {
        for m in 1..=n_max {
            s += a_nm(alpha, z.y, n, m) * (2.0 * PI * (m * n) as f64 * z.x).sin();
        }
    }
    Ok(-8.0 * PI * alpha.powf(-2.5) * z.y.powf(1.5) * s)
}

/// `∂_y W_{1/(2π)}(α;z)` at fixed `x`.
pub fn dy_w(alpha: f64, z: UpperHalfPoint, cfg: &SeriesConfig) -> Result<f64> {
    check_alpha(alpha)?;
    let big_x = z.y / alpha;
    let a2 = alpha * alpha;
    let mut f = 0.0;
    let mut g = 0.0;
    // F is the W_{1/(2π)} bracket, G its y-derivative.
    let both = even_sum(alpha, z.y, 4, cfg, |n| {
        let nf = n as f64;
        let e = (-alpha * PI * z.y * nf * nf).exp();
        if e == 0.0 {
            return Ok(0.0);
        }
        let yy = nf * z.x;
        let v = theta1(Partial::Value, big_x, yy, cfg)?;
        let vx = theta1(Partial::X, big_x, yy, cfg)?;
        let vxx = theta1(Partial::XX, big_x, yy, cfg)?;
        let w = if n == 0 { 1.0 } else { 2.0 };
        let fi = e * (PI * a2 * nf * nf * v + vx);
        let gi = e * (-PI * PI * a2 * alpha * nf.powi(4) * v + vxx / alpha);
        f += w * fi;
        g += w * gi;
        Ok(fi.abs() + gi.abs())
    });
    both?;
    Ok(alpha.powf(-2.5) / PI * (1.5 * z.y.sqrt() * f + z.y.powf(1.5) * g))
}

fn check_a(a: f64) -> Result<()> {
    if !(a > 1.0) || !a.is_finite() {
        return Err(Error::InvalidParameter(format!("a must exceed 1, got {a}")));
    }
    Ok(())
}

/// `θ(α;z) − b θ(aα;z)`.
pub fn theta_difference(alpha: f64, a: f64, b: f64, z: UpperHalfPoint, cfg: &SeriesConfig) -> Result<f64> {
    check_alpha(alpha)?;
    check_a(a)?;
    Ok(theta_lattice(alpha, z, cfg)? - b * theta_lattice(a * alpha, z, cfg)?)
}

/// `π ∫_1^a W_{1/(2π)}(tα;z) dt` by composite 64-point Gauss–Legendre.
pub fn w_integral(alpha: f64, a: f64, z: UpperHalfPoint, cfg: &SeriesConfig) -> Result<f64> {
    check_alpha(alpha)?;
    check_a(a)?;
    let v = integrate_adaptive(GaussLegendre::g64(), 1.0, a, 1e-13, 0.0, |t| w_b(t * alpha, B_CRITICAL, z, cfg))?;
    Ok(PI * v)
}

/// `θ(α;z) − √a θ(aα;z)` as `πα ∫_1^a √t W_{1/(2π)}(tα;z) dt`, which follows
/// from `∂_t(√t θ(tα;z)) = −πα√t W_{1/(2π)}(tα;z)`.
pub fn theta_difference_integral(alpha: f64, a: f64, z: UpperHalfPoint, cfg: &SeriesConfig) -> Result<f64> {
    check_alpha(alpha)?;
    check_a(a)?;
    let v = integrate_adaptive(GaussLegendre::g64(), 1.0, a, 1e-13, 0.0, |t| {
        Ok(t.sqrt() * w_b(t * alpha, B_CRITICAL, z, cfg)?)
    })?;
    Ok(PI * alpha * v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice_domain::{hexagonal_point, lattice_norms};

    fn cfg() -> SeriesConfig {
        SeriesConfig::default()
    }

    fn pt(x: f64, y: f64) -> UpperHalfPoint {
        UpperHalfPoint::new(x, y).unwrap()
    }

    fn brute<F: Fn(f64) -> f64>(z: UpperHalfPoint, f: F) -> f64 {
        let mut v: Vec<f64> = lattice_norms(z, 8.0).unwrap().iter().map(|p| f(p.norm2)).collect();
        v.sort_by(|a, b| a.abs().partial_cmp(&b.abs()).unwrap());
        v.iter().sum()
    }

    #[test]
    fn theta_invariant_under_shift() {
        let a = theta_lattice(1.3, pt(0.2, 1.1), &cfg()).unwrap();
        let b = theta_lattice(1.3, pt(1.2, 1.1), &cfg()).unwrap();
        assert!((a - b).abs() < 1e-14 * a);
    }

    #[test]
    fn theta_duality_at_hex() {
        let h = hexagonal_point();
        let a = theta_lattice(0.5, h, &cfg()).unwrap();
        let b = theta_lattice(2.0, h, &cfg()).unwrap();
        assert!((a - 2.0 * b).abs() < 1e-12 * a);
    }

    #[test]
    fn theta_square_brute() {
        let z = pt(0.0, 1.0);
        let v = theta_lattice(1.0, z, &cfg()).unwrap();
        let b = brute(z, |r| (-PI * r).exp());
        assert!((v - b).abs() < 1e-12 * b);
    }

    #[test]
    fn w_vanishes_at_unit_alpha() {
        let v = w_b(1.0, B_CRITICAL, pt(0.3, 1.2), &cfg()).unwrap();
        assert!(v.abs() < 1e-10);
        let d = w_b_via_theta_derivative(1.0, B_CRITICAL, pt(0.3, 1.2), &cfg()).unwrap();
        assert!(d.abs() < 1e-8);
    }

    #[test]
    fn w_shift_in_b() {
        let z = pt(0.4, 1.3);
        let (a, b, b0) = (1.5, 0.05, B_CRITICAL);
        let lhs = w_b(a, b, z, &cfg()).unwrap();
        let rhs = w_b(a, b0, z, &cfg()).unwrap() + (b0 - b) / a * theta_lattice(a, z, &cfg()).unwrap();
        assert!((lhs - rhs).abs() < 1e-12 * lhs.abs().max(1.0));
    }

    #[test]
    fn w0_hex_brute() {
        let h = hexagonal_point();
        let v = w_b(2.0, 0.0, h, &cfg()).unwrap();
        let b = brute(h, |r| r * (-2.0 * PI * r).exp());
        assert!(v > 0.0);
        assert!((v - b).abs() < 1e-12 * b, "{v} {b}");
    }

    #[test]
    fn w_large_alpha_brute() {
        let z = pt(0.31, 1.07);
        for &alpha in &[3.0, 6.0, 10.0] {
            let v = w_b(alpha, 0.0, z, &cfg()).unwrap();
            let b = brute(z, |r| r * (-alpha * PI * r).exp());
            assert!((v - b).abs() < 1e-11 * b, "{alpha} {v} {b}");
        }
    }

    #[test]
    fn w_two_routes() {
        let z = pt(0.4, 1.3);
        let a = w_b(1.7, 0.1, z, &cfg()).unwrap();
        let b = w_b_via_theta_derivative(1.7, 0.1, z, &cfg()).unwrap();
        assert!((a - b).abs() < 1e-6 * a.abs());
        let w0 = w_b_via_theta_derivative(1.7, 0.0, z, &cfg()).unwrap();
        assert!(w0 > 0.0);
    }

    #[test]
    fn dx_w_cases() {
        assert!(dx_w(1.0, pt(0.3, 1.0), &cfg()).unwrap().abs() < 1e-10);
        let z = pt(0.25, 1.0);
        let v = dx_w(1.5, z, &cfg()).unwrap();
        assert!(v < 0.0);
        let d = dx_w_double_sum(1.5, z, 12).unwrap();
        assert!((v - d).abs() < 1e-10 * v.abs(), "{v} {d}");
        let h = 1e-6;
        let fd = (w_b(1.5, B_CRITICAL, pt(0.25 + h, 1.0), &cfg()).unwrap()
            - w_b(1.5, B_CRITICAL, pt(0.25 - h, 1.0), &cfg()).unwrap())
            / (2.0 * h);
        assert!((v - fd).abs() < 1e-6 * v.abs());
    }

    #[test]
    fn dy_w_cases() {
        let h3 = hexagonal_point();
        assert!(dy_w(1.7, h3, &cfg()).unwrap().abs() < 1e-9);
        let z = pt(0.5, 1.5);
        let v = dy_w(1.3, z, &cfg()).unwrap();
        assert!(v >= 0.0);
        let h = 1e-6;
        let fd = (w_b(1.3, B_CRITICAL, pt(0.5, 1.5 + h), &cfg()).unwrap()
            - w_b(1.3, B_CRITICAL, pt(0.5, 1.5 - h), &cfg()).unwrap())
            / (2.0 * h);
        assert!((v - fd).abs() < 1e-6 * v.abs(), "{v} {fd}");
    }

    #[test]
    fn theta_difference_cases() {
        let z = pt(0.0, 1.0);
        let t = theta_lattice(1.0, z, &cfg()).unwrap();
        assert_eq!(theta_difference(1.0, 2.0, 0.0, z, &cfg()).unwrap(), t);
        let v = theta_difference(1.0, 2.0, 1.0, z, &cfg()).unwrap();
        let b = brute(z, |r| (-PI * r).exp() - (-2.0 * PI * r).exp());
        assert!((v - b).abs() < 1e-12 * b);
        assert!(theta_difference(1.0, 1.0, 0.5, z, &cfg()).is_err());
    }

    #[test]
    fn integral_identity_hex() {
        let h = hexagonal_point();
        let lhs = theta_difference(1.0, 2.0, 2f64.sqrt(), h, &cfg()).unwrap();
        let rhs = theta_difference_integral(1.0, 2.0, h, &cfg()).unwrap();
        assert!((lhs - rhs).abs() < 1e-8 * lhs.abs(), "{lhs} {rhs}");
        let z = UpperHalfPoint::new(0.1, 1.4).unwrap();
        let lhs = theta_difference(1.3, 3.0, 3f64.sqrt(), z, &cfg()).unwrap();
        let rhs = theta_difference_integral(1.3, 3.0, z, &cfg()).unwrap();
        assert!((lhs - rhs).abs() < 1e-8 * lhs.abs(), "{lhs} {rhs}");
    }

    #[test]
    fn rejects_bad_alpha() {
        assert_eq!(theta_lattice(0.0, pt(0.0, 1.0), &cfg()), Err(Error::NonPositiveAlpha(0.0)));
        assert!(w_b(-1.0, 0.0, pt(0.0, 1.0), &cfg()).is_err());
        assert!(dy_w(-1.0, pt(0.0, 1.0), &cfg()).is_err());
    }
}
