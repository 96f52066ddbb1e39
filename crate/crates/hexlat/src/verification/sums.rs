use std::f64::consts::PI;

/// `Σ_{n≥start} f(n)` for a summand that eventually decays; stops once the
/// terms are decreasing and below `1e-18` of the running total.
pub(crate) fn series<F: Fn(f64) -> f64>(start: i64, f: F) -> f64 {
    let mut acc = 0.0;
    let mut prev = f64::INFINITY;
    for n in start..start + 10_000 {
        let t = f(n as f64);
        acc += t;
        let mag = t.abs();
        if mag <= prev && (mag <= 1e-18 * acc.abs() || mag == 0.0) && n > start + 1 {
            break;
        }
        prev = mag;
    }
    acc
}

/// `2⁶α₀πy e^{-3πyα₀} / (1 − 2⁶e^{-5πyα₀})`.
pub fn b_const(alpha0: f64, y: f64) -> f64 {
    64.0 * alpha0 * PI * y * (-3.0 * PI * y * alpha0).exp() / (1.0 - 64.0 * (-5.0 * PI * y * alpha0).exp())
}

/// Six Gaussian double sums over `n, m ∈ Z` on the line `x = 1/2`, with
/// `q = m + n/2`, `Q = yn² + q²/y`, `P = (n² − q²/y²)²` and weight `e^{-παQ}`.
#[derive(Debug, Clone, Copy)]
pub struct GammaSums {
    /// `Σ P Q e`
    pub s1: f64,
    /// `Σ n² e`
    pub s2: f64,
    /// `Σ P e`
    pub s3: f64,
    /// `Σ n² Q e`
    pub s4: f64,
    /// `Σ n² Q² e`
    pub s5: f64,
    /// `Σ P Q² e`
    pub s6: f64,
    /// Truncation `|n|, |m| ≤ k`.
    pub k: i64,
    /// Largest relative contribution of the outermost square ring.
    pub ring: f64,
}

impl GammaSums {
    fn box_sum(alpha: f64, y: f64, k: i64) -> ([f64; 6], [f64; 6]) {
        let mut all = [0.0; 6];
        let mut ring = [0.0; 6];
        for n in -k..=k {
            for m in -k..=k {
                let nf = n as f64;
                let q = m as f64 + 0.5 * nf;
                let big_q = y * nf * nf + q * q / y;
                let e = (-PI * alpha * big_q).exp();
                let d = nf * nf - q * q / (y * y);
                let p = d * d;
                let t = [
                    p * big_q * e,
                    nf * nf * e,
                    p * e,
                    nf * nf * big_q * e,
                    nf * nf * big_q * big_q * e,
                    p * big_q * big_q * e,
                ];
                let outer = n.abs() == k || m.abs() == k;
                for i in 0..6 {
                    all[i] += t[i];
                    if outer {
                        ring[i] += t[i];
                    }
                }
            }
        }
        (all, ring)
    }

    /// Sums with `k` starting at 12 and doubling until the outermost ring
    /// contributes less than `1e-13` of every sum.
    pub fn new(alpha: f64, y: f64) -> Self {
        let mut k = 12;
        loop {
            let (s, r) = Self::box_sum(alpha, y, k);
            let ring = (0..6).map(|i| if s[i] == 0.0 { 0.0 } else { (r[i] / s[i]).abs() }).fold(0.0, f64::max);
            if ring < 1e-13 || k >= 384 {
                return GammaSums {
                    s1: s[0],
                    s2: s[1],
                    s3: s[2],
                    s4: s[3],
                    s5: s[4],
                    s6: s[5],
                    k,
                    ring,
                };
            }
            k *= 2;
        }
    }

    /// `(∂_yy + (2/y)∂_y) W_{1/(2π)}(α; 1/2 + iy)` from the sums.
    pub fn laplacian_w(&self, alpha: f64, y: f64) -> f64 {
        (PI * alpha).powi(2) * self.s1 + 3.0 / y * self.s2 - 2.5 * PI * alpha * self.s3 - 2.0 * PI * alpha / y * self.s4
    }

    /// `∂_α` of [`GammaSums::laplacian_w`].
    pub fn laplacian_w_alpha(&self, alpha: f64, y: f64) -> f64 {
        4.5 * PI * PI * alpha * self.s1 + 2.0 * PI * PI * alpha / y * self.s5
            - 2.5 * PI * self.s3
            - 5.0 * PI / y * self.s4
            - PI.powi(3) * alpha * alpha * self.s6
    }

    /// `(∂_yy + (2/y)∂_y) θ(α; 1/2 + iy)` from the sums.
    pub fn laplacian_theta(&self, alpha: f64, y: f64) -> f64 {
        (PI * alpha).powi(2) * self.s3 - 2.0 * PI * alpha / y * self.s2
    }
}
