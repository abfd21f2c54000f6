//! One-dimensional cut-and-project sets.
//!
//! A lattice point `(a, b) ∈ ℤ²` projects to `a + bβ′` on the physical line
//! and to `a + bβ` on the internal line. For a half-open window `Ω`,
//!
//! ```text
//! Σ(Ω) = { a + bβ′ : a + bβ ∈ Ω }.
//! ```
//!
//! Points are stored as coordinate pairs and enumerated by the irrational
//! coordinate `b`, so that the `b`-values of `Σ[0, β^i)` can be compared
//! directly with mismatch positions.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::qunit::{Family, QuadraticUnit, ZBeta};

/// Half-open interval `[lo, hi)` with endpoints in `ℤ[β]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    lo: ZBeta,
    hi: ZBeta,
}

impl Window {
    pub fn new(lo: ZBeta, hi: ZBeta) -> Result<Self> {
        if hi.try_cmp(&lo)? == Ordering::Less {
            return Err(Error::InvertedWindow);
        }
        Ok(Window { lo, hi })
    }

    /// `[0, 1)`.
    pub fn unit_interval(unit: QuadraticUnit) -> Self {
        Window { lo: unit.zero(), hi: unit.one() }
    }

    pub fn lo(&self) -> &ZBeta {
        &self.lo
    }

    pub fn hi(&self) -> &ZBeta {
        &self.hi
    }

    pub fn unit(&self) -> QuadraticUnit {
        self.lo.unit()
    }

    pub fn is_empty(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &ZBeta) -> Result<bool> {
        Ok(x.try_cmp(&self.lo)? != Ordering::Less && x.try_cmp(&self.hi)? == Ordering::Less)
    }

    /// `Ω + t`.
    pub fn shift(&self, t: &BigInt) -> Window {
        let t = self.unit().int(t.clone());
        Window {
            lo: self.lo.try_add(&t).expect("same unit"),
            hi: self.hi.try_add(&t).expect("same unit"),
        }
    }

    /// `βΩ`; order is kept because `β > 0`.
    pub fn scale_by_beta(&self) -> Window {
        let beta = self.unit().beta();
        Window {
            lo: self.lo.try_mul(&beta).expect("same unit"),
            hi: self.hi.try_mul(&beta).expect("same unit"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint {
    pub a: BigInt,
    pub b: BigInt,
}

impl LatticePoint {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        LatticePoint { a: a.into(), b: b.into() }
    }

    /// Internal-space image `a + bβ`.
    pub fn star(&self, unit: QuadraticUnit) -> ZBeta {
        ZBeta::new(unit, self.a.clone(), self.b.clone())
    }
}

fn check_range(lo: i64, hi: i64) -> Result<()> {
    if lo > hi {
        Err(Error::InvalidRange)
    } else {
        Ok(())
    }
}

/// Points of `Σ(Ω)` with `b ∈ [b_lo, b_hi]`, ordered by `(b, a)`.
///
/// For fixed `b` the admissible `a` are `⌈lo − bβ⌉ ≤ a < ⌈hi − bβ⌉`.
pub fn sigma_points(w: &Window, b_lo: i64, b_hi: i64) -> Result<Vec<LatticePoint>> {
    check_range(b_lo, b_hi)?;
    let unit = w.unit();
    let mut out = Vec::new();
    if w.is_empty() {
        return Ok(out);
    }
    for b in b_lo..=b_hi {
        let shift = ZBeta::new(unit, 0, b);
        let first = w.lo.try_sub(&shift)?.ceil();
        let end = w.hi.try_sub(&shift)?.ceil();
        let mut a = first;
        while a < end {
            out.push(LatticePoint { a: a.clone(), b: b.into() });
            a += BigInt::one();
        }
    }
    Ok(out)
}

/// `Σ[0, 1)` via `a = −⌊bβ⌋`.
pub fn unit_interval_points(unit: QuadraticUnit, b_lo: i64, b_hi: i64) -> Result<Vec<LatticePoint>> {
    check_range(b_lo, b_hi)?;
    Ok((b_lo..=b_hi).map(|b| LatticePoint { a: -unit.floor_mul_i64(b), b: b.into() }).collect())
}

/// `(a, b) ↦ (a + t, b)`, i.e. `Σ(Ω) + t = Σ(Ω + t)`.
pub fn translate(points: &[LatticePoint], t: &BigInt) -> Vec<LatticePoint> {
    points.iter().map(|p| LatticePoint { a: &p.a + t, b: p.b.clone() }).collect()
}

/// Multiplication by `β′` in the basis `(1, β′)`.
///
/// `β′` obeys the same equation as `β`, so
/// plus family: `(a, b) ↦ (b, a − mb)`; minus family: `(a, b) ↦ (−b, a + mb)`.
pub fn scale_by_conjugate(unit: QuadraticUnit, points: &[LatticePoint]) -> Vec<LatticePoint> {
    let m = unit.m();
    points
        .iter()
        .map(|p| match unit.family() {
            Family::Plus => LatticePoint { a: p.b.clone(), b: &p.a - &p.b * m },
            Family::Minus => LatticePoint { a: -p.b.clone(), b: &p.a + &p.b * m },
        })
        .collect()
}

/// Multiplication by `1/β′`: `m + β′` (plus family) or `m − β′` (minus family).
pub fn unscale_by_conjugate(unit: QuadraticUnit, points: &[LatticePoint]) -> Vec<LatticePoint> {
    let m = unit.m();
    points
        .iter()
        .map(|p| {
            let a = &p.a * m + &p.b;
            match unit.family() {
                Family::Plus => LatticePoint { a, b: p.a.clone() },
                Family::Minus => LatticePoint { a, b: -p.a.clone() },
            }
        })
        .collect()
}
