//! One-dimensional Jacobi theta function `ϑ(X;Y) = Σ e^{-πn²X} e^{2πinY}`,
//! its first and mixed partials, and the auxiliary tail sums `μ`, `ν`.
//!
//! Two representations are available. The defining cosine series converges
//! like `e^{-πn²X}` and the Poisson-transformed series like `e^{-πn²/X}`, so
//! the default switch sits at the self-dual point `X = 1`.

use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Truncation controls shared by every series and quadrature in the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesConfig {
    rel_tol: f64,
    max_terms: usize,
    poisson_switch: f64,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        SeriesConfig {
            rel_tol: 1e-14,
            max_terms: 256,
            poisson_switch: 1.0,
        }
    }
}

impl SeriesConfig {
    pub fn new(rel_tol: f64, max_terms: usize, poisson_switch: f64) -> Result<Self> {
        if !(rel_tol > 0.0 && rel_tol < 1e-6) {
            return Err(Error::InvalidConfig(format!(
                "rel_tol must lie in (0, 1e-6), got {rel_tol}"
            )));
        }
        if max_terms < 8 {
            return Err(Error::InvalidConfig(format!(
                "max_terms must be at least 8, got {max_terms}"
            )));
        }
        if !(poisson_switch > 0.0) || !poisson_switch.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "poisson_switch must be positive, got {poisson_switch}"
            )));
        }
        Ok(SeriesConfig {
            rel_tol,
            max_terms,
            poisson_switch,
        })
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }

    pub fn poisson_switch(&self) -> f64 {
        self.poisson_switch
    }
}

/// Argument pair `(X, Y)` of `ϑ`. `X` is the Gaussian width, `Y` the phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaArg {
    pub x: f64,
    pub y: f64,
}

impl ThetaArg {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !(x > 0.0) || !x.is_finite() {
            return Err(Error::NonPositiveX(x));
        }
        Ok(ThetaArg { x, y })
    }
}

/// The partial derivatives of `ϑ` that appear in the lattice expansions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Partial {
    Value,
    X,
    Y,
    XY,
    XX,
}

impl Partial {
    pub fn from_orders(x_order: u8, y_order: u8) -> Result<Self> {
        match (x_order, y_order) {
            (0, 0) => Ok(Partial::Value),
            (1, 0) => Ok(Partial::X),
            (0, 1) => Ok(Partial::Y),
            (1, 1) => Ok(Partial::XY),
            (2, 0) => Ok(Partial::XX),
            _ => Err(Error::UnsupportedOrder { x_order, y_order }),
        }
    }
}

/// Which series to sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representation {
    /// Direct series for `X >= poisson_switch`, Poisson form below.
    Auto,
    Direct,
    Poisson,
}

/// Sums `term(k)` for k = start, start+1, ... Each call returns the term and a
/// nonnegative majorant of its magnitude. Stops two guard terms after the
/// majorant first drops below `rel_tol` times the accumulated majorants.
pub(crate) fn sum_with_guards<F>(start: i64, base_scale: f64, cfg: &SeriesConfig, mut term: F) -> Result<f64>
where
    F: FnMut(i64) -> (f64, f64),
{
    let mut acc = 0.0;
    let mut scale = base_scale.abs();
    let mut guards: Option<u8> = None;
    for i in 0..cfg.max_terms {
        let k = start + i as i64;
        let (t, bound) = term(k);
        acc += t;
        scale += bound;
        match guards.as_mut() {
            Some(g) => {
                *g -= 1;
                if *g == 0 {
                    return Ok(acc);
                }
            }
            None => {
                if bound <= cfg.rel_tol * scale {
                    guards = Some(2);
                }
            }
        }
    }
    Err(Error::TruncationFailure {
        max_terms: cfg.max_terms,
    })
}

/// Reduces `y` to the representative in `[-1/2, 1/2]`.
fn reduce_phase(y: f64) -> f64 {
    y - y.round()
}

fn direct(x: f64, y: f64, p: Partial, cfg: &SeriesConfig) -> Result<f64> {
    let y = reduce_phase(y);
    let w = 2.0 * PI * y;
    let (base, power, prefactor, use_sin) = match p {
        Partial::Value => (1.0, 0, 2.0, false),
        Partial::X => (0.0, 2, -2.0 * PI, false),
        Partial::Y => (0.0, 1, -4.0 * PI, true),
        Partial::XY => (0.0, 3, 4.0 * PI * PI, true),
        Partial::XX => (0.0, 4, 2.0 * PI * PI, false),
    };
    let tail = sum_with_guards(1, base / prefactor, cfg, |n| {
        let nf = n as f64;
        let mag = nf.powi(power) * (-PI * nf * nf * x).exp();
        let trig = if use_sin { (nf * w).sin() } else { (nf * w).cos() };
        (mag * trig, mag)
    })?;
    Ok(base + prefactor * tail)
}

fn poisson(x: f64, y: f64, p: Partial, cfg: &SeriesConfig) -> Result<f64> {
    let y = reduce_phase(y);
    // Majorant polynomials use absolute coefficients so they never vanish early.
    let poly = |u: f64| -> (f64, f64) {
        let u2 = u * u;
        match p {
            Partial::Value => (1.0, 1.0),
            Partial::X => (PI * u2 - 0.5 * x, PI * u2 + 0.5 * x),
            Partial::Y => (u, u.abs()),
            Partial::XY => {
                let v = -3.0 * x * u + 2.0 * PI * u2 * u;
                (v, 3.0 * x * u.abs() + 2.0 * PI * u2 * u.abs())
            }
            Partial::XX => {
                let v = PI * PI * u2 * u2 - 3.0 * PI * x * u2 + 0.75 * x * x;
                (v, PI * PI * u2 * u2 + 3.0 * PI * x * u2 + 0.75 * x * x)
            }
        }
    };
    let sum = sum_with_guards(0, 0.0, cfg, |j| {
        let mut t = 0.0;
        let mut b = 0.0;
        let ns: &[i64] = if j == 0 { &[0] } else { &[j, -j] };
        for &n in ns {
            let u = n as f64 - y;
            let g = (-PI * u * u / x).exp();
            let (v, m) = poly(u);
            t += v * g;
            b += m * g;
        }
        (t, b)
    })?;
    let pref = match p {
        Partial::Value => x.powf(-0.5),
        Partial::X => x.powf(-2.5),
        Partial::Y => 2.0 * PI * x.powf(-1.5),
        Partial::XY => PI * x.powf(-3.5),
        Partial::XX => x.powf(-4.5),
    };
    Ok(pref * sum)
}

/// Evaluates `ϑ` or one of its partials with an explicit representation.
pub fn theta_eval(arg: ThetaArg, p: Partial, repr: Representation, cfg: &SeriesConfig) -> Result<f64> {
    if !(arg.x > 0.0) || !arg.x.is_finite() {
        return Err(Error::NonPositiveX(arg.x));
    }
    let use_poisson = match repr {
        Representation::Auto => arg.x < cfg.poisson_switch,
        Representation::Direct => false,
        Representation::Poisson => true,
    };
    if use_poisson {
        poisson(arg.x, arg.y, p, cfg)
    } else {
        direct(arg.x, arg.y, p, cfg)
    }
}

/// `ϑ(X;Y)`.
pub fn jacobi_theta(arg: ThetaArg, cfg: &SeriesConfig) -> Result<f64> {
    theta_eval(arg, Partial::Value, Representation::Auto, cfg)
}

/// `∂_X^{x_order} ∂_Y^{y_order} ϑ(X;Y)` for the orders (1,0), (0,1), (1,1), (2,0).
pub fn jacobi_theta_partial(arg: ThetaArg, x_order: u8, y_order: u8, cfg: &SeriesConfig) -> Result<f64> {
    let p = match (x_order, y_order) {
        (0, 0) => return Err(Error::UnsupportedOrder { x_order, y_order }),
        _ => Partial::from_orders(x_order, y_order)?,
    };
    theta_eval(arg, p, Representation::Auto, cfg)
}

fn tail_power_sum(x: f64, power: i32, cfg: &SeriesConfig) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::NonPositiveX(x));
    }
    // n^p e^{-π(n²-1)X} peaks near n² = p / (2πX); only stop past the peak.
    let peak = (power as f64 / (2.0 * PI * x)).sqrt();
    let first = (peak.ceil() as i64).max(2);
    let head: f64 = (2..first)
        .map(|n| {
            let nf = n as f64;
            nf.powi(power) * (-PI * (nf * nf - 1.0) * x).exp()
        })
        .sum();
    let tail = sum_with_guards(first, head, cfg, |n| {
        let nf = n as f64;
        let t = nf.powi(power) * (-PI * (nf * nf - 1.0) * x).exp();
        (t, t)
    })?;
    Ok(head + tail)
}

/// `μ(X) = Σ_{n≥2} n² e^{-π(n²-1)X}`.
pub fn mu(x: f64, cfg: &SeriesConfig) -> Result<f64> {
    tail_power_sum(x, 2, cfg)
}

/// `ν(X) = Σ_{n≥2} n⁴ e^{-π(n²-1)X}`.
pub fn nu(x: f64, cfg: &SeriesConfig) -> Result<f64> {
    tail_power_sum(x, 4, cfg)
}

/// Lower and upper envelopes for `-ϑ_Y(X;Y) / sin(2πY)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Envelope {
    pub lower: f64,
    pub upper: f64,
}

/// Envelope valid for `X > 1/5`.
pub fn envelope_large_x(x: f64, cfg: &SeriesConfig) -> Result<Envelope> {
    let m = mu(x, cfg)?;
    let c = 4.0 * PI * (-PI * x).exp();
    Ok(Envelope {
        lower: c * (1.0 - m),
        upper: c * (1.0 + m),
    })
}

/// Envelope valid for `X < π/(π+2)`.
pub fn envelope_small_x(x: f64) -> Result<Envelope> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::NonPositiveX(x));
    }
    let s = x.powf(-1.5);
    Ok(Envelope {
        lower: PI * (-PI / (4.0 * x)).exp() * s,
        upper: s,
    })
}

/// Envelope pair for `-ϑ_Y / sin(2πY)`; on the overlap of the two validity
/// ranges the larger lower and the smaller upper bound are returned.
pub fn theta_envelope(x: f64, cfg: &SeriesConfig) -> Result<Envelope> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::NonPositiveX(x));
    }
    let large = x > 0.2;
    let small = x < PI / (PI + 2.0);
    match (large, small) {
        (true, true) => {
            let a = envelope_large_x(x, cfg)?;
            let b = envelope_small_x(x)?;
            Ok(Envelope {
                lower: a.lower.max(b.lower),
                upper: a.upper.min(b.upper),
            })
        }
        (true, false) => envelope_large_x(x, cfg),
        _ => envelope_small_x(x),
    }
}
