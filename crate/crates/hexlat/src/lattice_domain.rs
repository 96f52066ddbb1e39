//! Shape space of unit-density planar lattices.
//!
//! A point `z = x + iy` of the upper half-plane stands for the lattice
//! `L = y^{-1/2} (Z ⊕ zZ)`. The energies in this crate are invariant under the
//! group generated by `τ ↦ -1/τ`, `τ ↦ τ + 1` and `τ ↦ -τ̄`, whose fundamental
//! domain is `{ |z| > 1, 0 < x < 1/2 }`.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UpperHalfPoint {
    pub x: f64,
    pub y: f64,
}

impl UpperHalfPoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !(y > 0.0) || !y.is_finite() {
            return Err(Error::NonPositiveY(y));
        }
        if !x.is_finite() {
            return Err(Error::InvalidParameter(format!("x must be finite, got {x}")));
        }
        Ok(UpperHalfPoint { x, y })
    }

    pub fn norm_sqr(&self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    pub fn distance(&self, other: &UpperHalfPoint) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    /// Whether the point lies in the closed fundamental domain, up to `tol`.
    pub fn in_closed_domain(&self, tol: f64) -> bool {
        self.norm_sqr().sqrt() >= 1.0 - tol && self.x >= -tol && self.x <= 0.5 + tol
    }

    /// Basis vectors `(1, 0)/√y` and `(x, y)/√y` of the lattice.
    pub fn basis(&self) -> [[f64; 2]; 2] {
        let s = self.y.sqrt();
        [[1.0 / s, 0.0], [self.x / s, s]]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Generator {
    /// τ ↦ -1/τ
    Invert,
    /// τ ↦ τ + 1
    ShiftPlus,
    /// τ ↦ τ - 1
    ShiftMinus,
    /// τ ↦ -τ̄
    Reflect,
}

impl Generator {
    pub const ALL: [Generator; 4] = [
        Generator::Invert,
        Generator::ShiftPlus,
        Generator::ShiftMinus,
        Generator::Reflect,
    ];

    pub fn apply(self, z: UpperHalfPoint) -> UpperHalfPoint {
        match self {
            Generator::Invert => {
                let r = z.norm_sqr();
                UpperHalfPoint {
                    x: -z.x / r,
                    y: z.y / r,
                }
            }
            Generator::ShiftPlus => UpperHalfPoint { x: z.x + 1.0, y: z.y },
            Generator::ShiftMinus => UpperHalfPoint { x: z.x - 1.0, y: z.y },
            Generator::Reflect => UpperHalfPoint { x: -z.x, y: z.y },
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Generator::Invert => "S",
            Generator::ShiftPlus => "T",
            Generator::ShiftMinus => "T'",
            Generator::Reflect => "R",
        }
    }
}

pub const MAX_WORD_LEN: usize = 100;

/// Sequence of generators, applied left to right.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupWord(Vec<Generator>);

impl GroupWord {
    pub fn new(gens: Vec<Generator>) -> Result<Self> {
        if gens.len() > MAX_WORD_LEN {
            return Err(Error::InvalidParameter(format!(
                "group word longer than {MAX_WORD_LEN}"
            )));
        }
        Ok(GroupWord(gens))
    }

    pub fn generators(&self) -> &[Generator] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn push(&mut self, g: Generator, iterations: usize) -> Result<()> {
        if self.0.len() >= MAX_WORD_LEN {
            return Err(Error::ReductionDivergence { iterations });
        }
        self.0.push(g);
        Ok(())
    }

    /// Space-separated generator symbols, `-` for the empty word.
    pub fn display(&self) -> String {
        if self.0.is_empty() {
            return "-".to_string();
        }
        self.0.iter().map(|g| g.symbol()).collect::<Vec<_>>().join(" ")
    }
}

pub fn apply_word(w: &GroupWord, z: UpperHalfPoint) -> UpperHalfPoint {
    w.0.iter().fold(z, |acc, g| g.apply(acc))
}

const MAX_REDUCTION_STEPS: usize = 100;

/// Maps `z` into the closed fundamental domain. Returns the image and the word
/// carrying `z` to it.
pub fn reduce_to_fundamental(z: UpperHalfPoint) -> Result<(UpperHalfPoint, GroupWord)> {
    let mut w = GroupWord::default();
    let mut p = z;
    for it in 0..MAX_REDUCTION_STEPS {
        let mut changed = false;
        if p.x > 0.5 || p.x < -0.5 {
            let k = p.x.round();
            let g = if k > 0.0 { Generator::ShiftMinus } else { Generator::ShiftPlus };
            for _ in 0..(k.abs() as usize) {
                w.push(g, it)?;
                p = g.apply(p);
            }
            changed = true;
        }
        if p.norm_sqr() < 1.0 {
            w.push(Generator::Invert, it)?;
            p = Generator::Invert.apply(p);
            changed = true;
        }
        if p.x < 0.0 {
            w.push(Generator::Reflect, it)?;
            p = Generator::Reflect.apply(p);
            changed = true;
        }
        if !changed {
            return Ok((p, w));
        }
    }
    Err(Error::ReductionDivergence {
        iterations: MAX_REDUCTION_STEPS,
    })
}

/// `e^{iπ/3}`, the shape of the hexagonal lattice.
pub fn hexagonal_point() -> UpperHalfPoint {
    UpperHalfPoint {
        x: 0.5,
        y: 3f64.sqrt() / 2.0,
    }
}

/// One lattice point `P = (n + m z)/√y` with its squared length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeVector {
    pub norm2: f64,
    pub m: i64,
    pub n: i64,
}

pub const MAX_ENUMERATION: u64 = 100_000_000;

/// All lattice points with `|mz + n|²/y ≤ radius²`, origin included.
pub fn lattice_norms(z: UpperHalfPoint, radius: f64) -> Result<Vec<LatticeVector>> {
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(Error::InvalidParameter(format!("radius must be positive, got {radius}")));
    }
    let r2 = radius * radius;
    // |mz+n|² ≥ m²y², so |m| ≤ radius/√y; for fixed m, (n+mx)² ≤ r²y − m²y².
    let m_max = (radius / z.y.sqrt()).floor() as i64;
    let rows = (2 * m_max + 1) as f64;
    let cols = 2.0 * radius * z.y.sqrt() + 2.0;
    let estimate = rows * cols;
    if estimate > MAX_ENUMERATION as f64 {
        return Err(Error::RadiusTooLarge {
            count: estimate as u64,
        });
    }
    let mut out = Vec::with_capacity(estimate as usize);
    for m in -m_max..=m_max {
        let mf = m as f64;
        let room = r2 * z.y - mf * mf * z.y * z.y;
        if room < 0.0 {
            continue;
        }
        let s = room.sqrt();
        let c = -mf * z.x;
        let lo = (c - s).ceil() as i64 - 1;
        let hi = (c + s).floor() as i64 + 1;
        for n in lo..=hi {
            let u = n as f64 + mf * z.x;
            let norm2 = (u * u + mf * mf * z.y * z.y) / z.y;
            if norm2 <= r2 {
                out.push(LatticeVector { norm2, m, n });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: f64, y: f64) -> UpperHalfPoint {
        UpperHalfPoint::new(x, y).unwrap()
    }

    #[test]
    fn shift_and_invert() {
        let w = GroupWord::new(vec![Generator::ShiftPlus]).unwrap();
        let p = apply_word(&w, pt(0.2, 1.0));
        assert!((p.x - 1.2).abs() < 1e-15 && p.y == 1.0);
        let s = GroupWord::new(vec![Generator::Invert]).unwrap();
        assert_eq!(apply_word(&s, pt(0.0, 1.0)), pt(-0.0, 1.0));
        // -1/(0.5 + 0.5i) = -(0.5 - 0.5i)/0.5 = -1 + i
        let q = apply_word(&s, pt(0.5, 0.5));
        assert!((q.x + 1.0).abs() < 1e-15 && (q.y - 1.0).abs() < 1e-15);
    }

    #[test]
    fn reduce_examples() {
        let (p, w) = reduce_to_fundamental(pt(0.25, 2.0)).unwrap();
        assert_eq!(p, pt(0.25, 2.0));
        assert!(w.is_empty());
        let (p, w) = reduce_to_fundamental(pt(5.0, 1.0)).unwrap();
        assert_eq!(p, pt(0.0, 1.0));
        assert_eq!(w.generators(), &[Generator::ShiftMinus; 5]);
        let (p, w) = reduce_to_fundamental(pt(-0.3, 0.4)).unwrap();
        assert!((p.x - 0.2).abs() < 1e-14 && (p.y - 1.6).abs() < 1e-14);
        assert_eq!(apply_word(&w, pt(-0.3, 0.4)), p);
    }

    #[test]
    fn long_translation_diverges() {
        assert!(matches!(
            reduce_to_fundamental(pt(1e4, 1.0)),
            Err(Error::ReductionDivergence { .. })
        ));
    }

    #[test]
    fn hexagonal() {
        let h = hexagonal_point();
        assert_eq!(h.x, 0.5);
        assert!((h.y - 0.8660254037844386).abs() < 1e-15);
        assert!(h.in_closed_domain(1e-12));
    }

    #[test]
    fn shortest_vectors() {
        let v = lattice_norms(hexagonal_point(), 1.1).unwrap();
        let nz: Vec<_> = v.iter().filter(|p| p.m != 0 || p.n != 0).collect();
        let min = nz.iter().map(|p| p.norm2).fold(f64::INFINITY, f64::min);
        assert!((min - 2.0 / 3f64.sqrt()).abs() < 1e-14);
        assert_eq!(nz.iter().filter(|p| (p.norm2 - min).abs() < 1e-12).count(), 6);

        let v = lattice_norms(pt(0.0, 1.0), 1.1).unwrap();
        let nz: Vec<_> = v.iter().filter(|p| p.m != 0 || p.n != 0).collect();
        assert_eq!(nz.iter().filter(|p| (p.norm2 - 1.0).abs() < 1e-14).count(), 4);
        assert_eq!(nz.len(), 4);
        assert_eq!(v.len(), 5);
    }

    #[test]
    fn enumeration_cap() {
        assert!(matches!(
            lattice_norms(pt(0.0, 1.0), 1e5),
            Err(Error::RadiusTooLarge { .. })
        ));
        assert!(lattice_norms(pt(0.0, 1.0), -1.0).is_err());
        assert_eq!(UpperHalfPoint::new(0.0, 0.0), Err(Error::NonPositiveY(0.0)));
    }
}
