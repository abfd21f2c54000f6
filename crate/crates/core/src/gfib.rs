//! Generalized Fibonacci numbers attached to a quadratic unit.
//!
//! `G_0 = 0`, `G_1 = 1` and `G_{n+2} = m·G_{n+1} + G_n` for the plus family,
//! `G_{n+2} = m·G_{n+1} − G_n` for the minus family. The table links the
//! powers of `β` to integer coordinates in `ℤ[β]`.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::qunit::{Family, QuadraticUnit, ZBeta};

/// Default table length used by callers that do not care.
pub const DEFAULT_LEN: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GFib {
    unit: QuadraticUnit,
    values: Vec<BigInt>,
}

impl GFib {
    /// Table `G_0..=G_n`. `n` must be at least 1.
    pub fn build(unit: QuadraticUnit, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroIndex);
        }
        let mut values = Vec::with_capacity(n + 1);
        values.push(BigInt::zero());
        values.push(BigInt::one());
        for k in 2..=n {
            let step = &values[k - 1] * unit.m();
            let next = match unit.family() {
                Family::Plus => step + &values[k - 2],
                Family::Minus => step - &values[k - 2],
            };
            values.push(next);
        }
        Ok(GFib { unit, values })
    }

    pub fn with_default_len(unit: QuadraticUnit) -> Self {
        Self::build(unit, DEFAULT_LEN).expect("nonzero length")
    }

    pub fn unit(&self) -> QuadraticUnit {
        self.unit
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    /// Largest stored index.
    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, i: usize) -> Result<&BigInt> {
        self.values.get(i).ok_or(Error::Index { index: i, len: self.values.len() })
    }

    /// Checks that a shift index `i ≥ 1` has `G_{i+1}` available.
    pub(crate) fn check_shift(&self, i: usize) -> Result<()> {
        if i == 0 {
            return Err(Error::ZeroIndex);
        }
        self.get(i + 1).map(|_| ())
    }

    /// `β^i` from the closed form:
    /// `(−1)^{i+1}β^i = G_iβ − G_{i−1}` (plus family), `β^i = G_iβ − G_{i−1}` (minus family).
    pub fn beta_pow(&self, i: usize) -> Result<ZBeta> {
        if i == 0 {
            return Err(Error::ZeroIndex);
        }
        let gi = self.get(i)?.clone();
        let gprev = self.get(i - 1)?.clone();
        Ok(match (self.unit.family(), i.is_multiple_of(2)) {
            (Family::Plus, true) => ZBeta::new(self.unit, gprev, -gi),
            (Family::Plus, false) | (Family::Minus, _) => ZBeta::new(self.unit, -gprev, gi),
        })
    }

    /// `β^{−i}`: `G_{i+1} + G_iβ` (plus family), `G_{i+1} − G_iβ` (minus family).
    pub fn beta_inv_pow(&self, i: usize) -> Result<ZBeta> {
        if i == 0 {
            return Err(Error::ZeroIndex);
        }
        let gnext = self.get(i + 1)?.clone();
        let gi = self.get(i)?.clone();
        Ok(match self.unit.family() {
            Family::Plus => ZBeta::new(self.unit, gnext, gi),
            Family::Minus => ZBeta::new(self.unit, gnext, -gi),
        })
    }

    /// Compares the closed form of `β^i` against `i`-fold multiplication of `β`.
    pub fn verify_power_identity(&self, i: usize) -> Result<bool> {
        let closed = self.beta_pow(i)?;
        let exp = u32::try_from(i).map_err(|_| Error::Index { index: i, len: self.values.len() })?;
        Ok(closed == self.unit.beta().pow(exp))
    }
}
