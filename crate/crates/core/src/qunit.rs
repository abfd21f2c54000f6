//! The quadratic unit `β` and the ring `ℤ[β]`.
//!
//! Every element is kept in the integral basis `(1, β)`. To decide signs and
//! floors exactly we move to the radical form `2(a + bβ) = A + c√D`:
//!
//! * `β² + mβ = 1`:  `β = (−m + √D)/2`, `D = m² + 4`, so `A = 2a − bm`, `c = b`;
//! * `β² − mβ = −1`: `β = (m − √D)/2`, `D = m² − 4`, so `A = 2a + bm`, `c = −b`.
//!
//! `D` is never a perfect square, so `c√D` is irrational whenever `c ≠ 0`.

use core::cmp::Ordering;
use core::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `β² + mβ = 1`, `m ≥ 1`; the conjugate satisfies `β′ < −1`.
    Plus,
    /// `β² − mβ = −1`, `m ≥ 3`; the conjugate satisfies `β′ > 1`.
    Minus,
}

impl Family {
    pub fn min_m(self) -> u64 {
        match self {
            Family::Plus => 1,
            Family::Minus => 3,
        }
    }

    /// Short tag used on the command line: `a` for [`Family::Plus`], `b` for [`Family::Minus`].
    pub fn tag(self) -> &'static str {
        match self {
            Family::Plus => "a",
            Family::Minus => "b",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadraticUnit {
    family: Family,
    m: u64,
    disc: u128,
}

impl QuadraticUnit {
    pub fn new(family: Family, m: u64) -> Result<Self> {
        if m < family.min_m() {
            return Err(Error::Domain { family, m });
        }
        let m2 = u128::from(m) * u128::from(m);
        let disc = match family {
            Family::Plus => m2 + 4,
            Family::Minus => m2 - 4,
        };
        // m² ± 4 is a square only for the excluded m = 2 in the minus family.
        let r = disc.isqrt();
        if r * r == disc {
            return Err(Error::Domain { family, m });
        }
        let unit = QuadraticUnit { family, m, disc };
        debug_assert_eq!(unit.conjugate_norm(), match family {
            Family::Plus => -1,
            Family::Minus => 1,
        });
        Ok(unit)
    }

    pub fn golden() -> Self {
        QuadraticUnit { family: Family::Plus, m: 1, disc: 5 }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn discriminant(&self) -> u128 {
        self.disc
    }

    /// `ββ′`, read off from `m² − D = 4ββ′`.
    pub fn conjugate_norm(&self) -> i64 {
        let m2 = u128::from(self.m) * u128::from(self.m);
        match self.family {
            Family::Plus => -(((self.disc - m2) / 4) as i64),
            Family::Minus => ((m2 - self.disc) / 4) as i64,
        }
    }

    /// Floating approximation of `β`, for display and plotting only.
    pub fn approx_beta(&self) -> f64 {
        let m = self.m as f64;
        // ⌊√D·2^64⌋ from the integer square root; core has no float sqrt.
        let scaled = (num_bigint::BigUint::from(self.disc) << 128u32).sqrt();
        let root = scaled.to_f64().unwrap_or(f64::INFINITY) / 18_446_744_073_709_551_616.0;
        match self.family {
            // (√D − m)/2 = 2/(√D + m), the stable form.
            Family::Plus => 2.0 / (root + m),
            Family::Minus => 2.0 / (m + root),
        }
    }

    /// `β` as an element of `ℤ[β]`.
    pub fn beta(&self) -> ZBeta {
        ZBeta::new(*self, 0, 1)
    }

    pub fn zero(&self) -> ZBeta {
        ZBeta::new(*self, 0, 0)
    }

    pub fn one(&self) -> ZBeta {
        ZBeta::new(*self, 1, 0)
    }

    pub fn int(&self, n: impl Into<BigInt>) -> ZBeta {
        ZBeta::new(*self, n, 0)
    }

    /// Exact `⌊jβ⌋`.
    pub fn floor_mul(&self, j: &BigInt) -> BigInt {
        if let Some(small) = j.to_i64() {
            if let Some(f) = self.floor_mul_small(small) {
                return BigInt::from(f);
            }
        }
        let (a, c) = self.radical_form(&BigInt::zero(), j);
        floor_half(&(a + self.floor_sqrt_mul(&c)))
    }

    /// `floor_mul` for machine-sized arguments; stays in 128-bit arithmetic
    /// whenever `j²D` fits.
    pub fn floor_mul_i64(&self, j: i64) -> BigInt {
        match self.floor_mul_small(j) {
            Some(f) => BigInt::from(f),
            None => self.floor_mul(&BigInt::from(j)),
        }
    }

    fn floor_mul_small(&self, j: i64) -> Option<i128> {
        let jm = i128::from(j).checked_mul(i128::from(self.m))?;
        let (a, c) = match self.family {
            Family::Plus => (-jm, i128::from(j)),
            Family::Minus => (jm, -i128::from(j)),
        };
        let sq = c.unsigned_abs().checked_mul(c.unsigned_abs())?.checked_mul(self.disc)?;
        let root = i128::try_from(sq.isqrt()).ok()?;
        let fl = match c.cmp(&0) {
            Ordering::Less => -root - 1,
            _ => root,
        };
        Some(a.checked_add(fl)?.div_euclid(2))
    }

    /// `⌊c√D⌋`, exact because `c√D` is irrational for `c ≠ 0`.
    fn floor_sqrt_mul(&self, c: &BigInt) -> BigInt {
        let sq = c.magnitude() * c.magnitude() * self.disc;
        let root = BigInt::from(sq.sqrt());
        if c.is_negative() {
            -root - 1
        } else {
            root
        }
    }

    /// `(A, c)` with `2(a + bβ) = A + c√D`.
    fn radical_form(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        let bm = b * self.m;
        match self.family {
            Family::Plus => ((a << 1u32) - bm, b.clone()),
            Family::Minus => ((a << 1u32) + bm, -b),
        }
    }

    /// Sign of `A + c√D`.
    fn radical_sign(&self, a: &BigInt, c: &BigInt) -> Ordering {
        if c.is_zero() {
            return sign_to_ordering(a.sign());
        }
        if a.is_zero() || a.sign() == c.sign() {
            return sign_to_ordering(c.sign());
        }
        // Opposite signs: compare A² with c²D, never equal since D is not a square.
        let a2 = a.magnitude() * a.magnitude();
        let c2d = c.magnitude() * c.magnitude() * self.disc;
        if a.is_positive() {
            a2.cmp(&c2d)
        } else {
            c2d.cmp(&a2)
        }
    }
}

fn sign_to_ordering(s: Sign) -> Ordering {
    match s {
        Sign::Minus => Ordering::Less,
        Sign::NoSign => Ordering::Equal,
        Sign::Plus => Ordering::Greater,
    }
}

fn floor_half(x: &BigInt) -> BigInt {
    x.div_floor(&BigInt::from(2))
}

impl fmt::Display for QuadraticUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Plus => write!(f, "β² + {}β = 1", self.m),
            Family::Minus => write!(f, "β² − {}β = −1", self.m),
        }
    }
}

/// An element `a + bβ` of `ℤ[β]`, tagged with its unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZBeta {
    a: BigInt,
    b: BigInt,
    unit: QuadraticUnit,
}

impl ZBeta {
    pub fn new(unit: QuadraticUnit, a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        ZBeta { a: a.into(), b: b.into(), unit }
    }

    /// Rational part.
    pub fn a(&self) -> &BigInt {
        &self.a
    }

    /// Irrational part.
    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn unit(&self) -> QuadraticUnit {
        self.unit
    }

    pub fn into_parts(self) -> (BigInt, BigInt) {
        (self.a, self.b)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Exact sign of the real number `a + bβ`: `-1`, `0` or `1`.
    pub fn sign(&self) -> i8 {
        let (a, c) = self.unit.radical_form(&self.a, &self.b);
        match self.unit.radical_sign(&a, &c) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    fn check_unit(&self, other: &ZBeta) -> Result<()> {
        if self.unit == other.unit {
            Ok(())
        } else {
            Err(Error::UnitMismatch)
        }
    }

    pub fn try_add(&self, other: &ZBeta) -> Result<ZBeta> {
        self.check_unit(other)?;
        Ok(ZBeta { a: &self.a + &other.a, b: &self.b + &other.b, unit: self.unit })
    }

    pub fn try_sub(&self, other: &ZBeta) -> Result<ZBeta> {
        self.check_unit(other)?;
        Ok(ZBeta { a: &self.a - &other.a, b: &self.b - &other.b, unit: self.unit })
    }

    /// Product, reducing `β²` through the defining equation.
    pub fn try_mul(&self, other: &ZBeta) -> Result<ZBeta> {
        self.check_unit(other)?;
        let aa = &self.a * &other.a;
        let bb = &self.b * &other.b;
        let cross = &self.a * &other.b + &other.a * &self.b;
        let mbb = &bb * self.unit.m;
        let (a, b) = match self.unit.family {
            // β² = 1 − mβ
            Family::Plus => (aa + bb, cross - mbb),
            // β² = mβ − 1
            Family::Minus => (aa - bb, cross + mbb),
        };
        Ok(ZBeta { a, b, unit: self.unit })
    }

    /// Integer multiple `n·x`.
    pub fn scale(&self, n: &BigInt) -> ZBeta {
        ZBeta { a: &self.a * n, b: &self.b * n, unit: self.unit }
    }

    pub fn try_cmp(&self, other: &ZBeta) -> Result<Ordering> {
        Ok(match self.try_sub(other)?.sign() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        })
    }

    /// `⌊a + bβ⌋ = a + ⌊bβ⌋`.
    pub fn floor(&self) -> BigInt {
        &self.a + self.unit.floor_mul(&self.b)
    }

    /// `⌈x⌉ = −⌊−x⌋`.
    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    pub fn approx(&self) -> f64 {
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * self.unit.approx_beta()
    }

    /// `β^k` by repeated multiplication.
    pub fn pow(&self, k: u32) -> ZBeta {
        let mut acc = self.unit.one();
        for _ in 0..k {
            acc = acc.try_mul(self).expect("same unit");
        }
        acc
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }
}

impl core::ops::Neg for &ZBeta {
    type Output = ZBeta;

    fn neg(self) -> ZBeta {
        ZBeta { a: -&self.a, b: -&self.b, unit: self.unit }
    }
}

impl core::ops::Neg for ZBeta {
    type Output = ZBeta;

    fn neg(self) -> ZBeta {
        -&self
    }
}

impl fmt::Display for ZBeta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}*beta", self.a, self.b)
    }
}
