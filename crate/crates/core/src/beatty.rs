//! Self-matching of the graph `j ↦ ⌊jβ⌋` under the shift `(G_i, G_{i−1})`.
//!
//! For `i ≥ 1` the discrepancy
//!
//! ```text
//! ε_i(j) = ⌊β(j + G_i)⌋ − ⌊βj⌋ − G_{i−1}
//! ```
//!
//! takes values in `{0, (−1)^{i+1}}` (plus family) or `{0, 1}` (minus family).
//! It is nonzero exactly when the fractional part `{jβ}` falls in a window of
//! length `β^i` at one edge of `[0, 1)`, and those `j` form the sets
//!
//! ```text
//! U_i = { k·G_{i+1} + ⌊kβ⌋·G_i : k ≠ 0 } ∪ { ((−1)^i − 1)/2 · G_i }   (plus)
//! V_i = { k·G_{i+1} − (⌊kβ⌋ + 1)·G_i : k ∈ ℤ }                        (minus)
//! ```
//!
//! Everything here is exact; [`ScanSummary::target`] is the only float and is
//! there for display.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::gfib::GFib;
use crate::qunit::{Family, QuadraticUnit, ZBeta};

/// Set-builder index of a mismatch.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum KIndex {
    K(BigInt),
    /// The extra element `−G_i` of `U_i` for odd `i` (plus family).
    Special,
}

impl fmt::Display for KIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KIndex::K(k) => write!(f, "{k}"),
            KIndex::Special => f.write_str("special"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MismatchRecord {
    pub j: BigInt,
    pub k: KIndex,
    pub epsilon: i8,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanSummary {
    pub i: usize,
    /// Half-width: the window is `[−n, n]`.
    pub n: u64,
    pub mismatch_count: u64,
    /// `β^i`, for display.
    pub target: f64,
}

impl ScanSummary {
    pub fn window_size(&self) -> u64 {
        2 * self.n + 1
    }

    /// The exact frequency as an unreduced `(count, 2n + 1)` pair.
    pub fn frequency(&self) -> (u64, u64) {
        (self.mismatch_count, self.window_size())
    }

    pub fn frequency_approx(&self) -> f64 {
        self.mismatch_count as f64 / self.window_size() as f64
    }
}

/// The nonzero value `ε_i` takes for this family and index.
pub fn mismatch_sign(family: Family, i: usize) -> i8 {
    match family {
        Family::Plus if i.is_multiple_of(2) => -1,
        _ => 1,
    }
}

/// `ε_i(j)`, straight from the floors.
pub fn epsilon(g: &GFib, i: usize, j: &BigInt) -> Result<i8> {
    g.check_shift(i)?;
    let u = g.unit();
    let gi = g.get(i)?;
    let gprev = g.get(i - 1)?;
    let e = u.floor_mul(&(j + gi)) - u.floor_mul(j) - gprev;
    // |G_iβ − G_{i−1}| = β^i < 1 keeps ε within one of zero.
    Ok(e.to_i8().expect("discrepancy is bounded by one"))
}

/// Fractional-part criterion for `ε_i(j) ≠ 0`, prepared once per `(unit, i)`.
///
/// With `{jβ} = jβ − ⌊jβ⌋`:
/// plus family, even `i`: `{jβ} ∈ [0, β^i)`;
/// plus family, odd `i`, and the minus family: `{jβ} ∈ [1 − β^i, 1)`.
#[derive(Debug, Clone)]
pub struct MismatchTest {
    unit: QuadraticUnit,
    below: bool,
    threshold: ZBeta,
}

impl MismatchTest {
    pub fn new(g: &GFib, i: usize) -> Result<Self> {
        g.check_shift(i)?;
        let unit = g.unit();
        let pow = g.beta_pow(i)?;
        let below = unit.family() == Family::Plus && i.is_multiple_of(2);
        let threshold = if below { pow } else { unit.one().try_sub(&pow)? };
        Ok(MismatchTest { unit, below, threshold })
    }

    pub fn is_mismatch(&self, j: &BigInt) -> bool {
        let frac = ZBeta::new(self.unit, -self.unit.floor_mul(j), j.clone());
        self.test_frac(&frac)
    }

    pub fn is_mismatch_i64(&self, j: i64) -> bool {
        let frac = ZBeta::new(self.unit, -self.unit.floor_mul_i64(j), j);
        self.test_frac(&frac)
    }

    fn test_frac(&self, frac: &ZBeta) -> bool {
        let s = frac.try_sub(&self.threshold).expect("same unit").sign();
        if self.below {
            s < 0
        } else {
            s >= 0
        }
    }

    /// Number of mismatches in `[j_lo, j_hi]`.
    pub fn count(&self, j_lo: i64, j_hi: i64) -> u64 {
        if j_lo > j_hi {
            return 0;
        }
        (j_lo..=j_hi).filter(|&j| self.is_mismatch_i64(j)).count() as u64
    }
}

/// Decides `ε_i(j) ≠ 0` from the fractional part of `jβ`, without computing `ε`.
pub fn is_mismatch(g: &GFib, i: usize, j: &BigInt) -> Result<bool> {
    Ok(MismatchTest::new(g, i)?.is_mismatch(j))
}

/// Maps a set-builder index to its position `j`.
pub fn set_builder(g: &GFib, i: usize, k: &KIndex) -> Result<BigInt> {
    g.check_shift(i)?;
    let u = g.unit();
    let gi = g.get(i)?;
    let gnext = g.get(i + 1)?;
    Ok(match (u.family(), k) {
        (Family::Plus, KIndex::K(k)) => k * gnext + u.floor_mul(k) * gi,
        (Family::Plus, KIndex::Special) => -gi.clone(),
        (Family::Minus, KIndex::K(k)) => k * gnext - (u.floor_mul(k) + 1) * gi,
        (Family::Minus, KIndex::Special) => return Err(Error::NotAMismatch),
    })
}

/// The closed-form mismatch positions for `k ∈ [k_lo, k_hi]`, sorted by `j`.
pub fn mismatch_set(g: &GFib, i: usize, k_lo: i64, k_hi: i64) -> Result<Vec<MismatchRecord>> {
    g.check_shift(i)?;
    if k_lo > k_hi {
        return Err(Error::InvalidRange);
    }
    let family = g.unit().family();
    let epsilon = mismatch_sign(family, i);
    let mut out = Vec::with_capacity((k_hi - k_lo + 1) as usize);
    for k in k_lo..=k_hi {
        let k = if k == 0 && family == Family::Plus && i % 2 == 1 {
            KIndex::Special
        } else {
            KIndex::K(k.into())
        };
        let j = set_builder(g, i, &k)?;
        out.push(MismatchRecord { j, k, epsilon });
    }
    out.sort_by(|x, y| x.j.cmp(&y.j));
    Ok(out)
}

/// Inverts the set-builder: `k = ⌈j·β^i⌉`, or [`KIndex::Special`] for `−G_i`
/// (plus family, odd `i`).
pub fn recover_k(g: &GFib, i: usize, j: &BigInt) -> Result<KIndex> {
    if !is_mismatch(g, i, j)? {
        return Err(Error::NotAMismatch);
    }
    let u = g.unit();
    if u.family() == Family::Plus && i % 2 == 1 && *j == -g.get(i)?.clone() {
        return Ok(KIndex::Special);
    }
    let k = KIndex::K(g.beta_pow(i)?.scale(j).ceil());
    assert_eq!(&set_builder(g, i, &k)?, j, "set-builder inverse");
    Ok(k)
}

/// `K = ⌈(n + G_i)·β^i⌉ + 2`: `k ∈ [−K, K]` covers every mismatch in `[−n, n]`.
pub fn k_window(g: &GFib, i: usize, n: u64) -> Result<i64> {
    g.check_shift(i)?;
    let reach = g.get(i)? + n;
    let k: BigInt = g.beta_pow(i)?.scale(&reach).ceil() + 2;
    Ok(k.to_i64().expect("k window fits in i64"))
}

/// Counts mismatches over `[−n, n]`.
pub fn frequency_scan(g: &GFib, i: usize, n: u64) -> Result<ScanSummary> {
    let test = MismatchTest::new(g, i)?;
    let half = i64::try_from(n).map_err(|_| Error::InvalidRange)?;
    Ok(ScanSummary {
        i,
        n,
        mismatch_count: test.count(-half, half),
        target: beta_pow_approx(g.unit(), i),
    })
}

pub fn beta_pow_approx(u: QuadraticUnit, i: usize) -> f64 {
    let mut p = 1.0;
    for _ in 0..i {
        p *= u.approx_beta();
    }
    p
}

/// Every `j ∈ [j_lo, j_hi]` with `ε_i(j) ≠ 0`, computed from floors alone.
pub fn brute_force_mismatches(g: &GFib, i: usize, j_lo: i64, j_hi: i64) -> Result<Vec<(BigInt, i8)>> {
    g.check_shift(i)?;
    if j_lo > j_hi {
        return Err(Error::InvalidRange);
    }
    let u = g.unit();
    let gi = g.get(i)?;
    let gprev = g.get(i - 1)?;
    let mut out = Vec::new();
    for j in j_lo..=j_hi {
        let jb = BigInt::from(j);
        let e = u.floor_mul(&(&jb + gi)) - u.floor_mul_i64(j) - gprev;
        if !e.is_zero() {
            out.push((jb, e.to_i8().expect("discrepancy is bounded by one")));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn golden() -> GFib {
        GFib::build(QuadraticUnit::golden(), 20).unwrap()
    }

    fn minus3() -> GFib {
        GFib::build(QuadraticUnit::new(Family::Minus, 3).unwrap(), 20).unwrap()
    }

    fn js(records: &[MismatchRecord]) -> Vec<i64> {
        records.iter().map(|r| r.j.to_i64().unwrap()).collect()
    }

    #[test]
    fn epsilon_examples() {
        assert_eq!(epsilon(&golden(), 2, &0.into()).unwrap(), -1);
        assert_eq!(epsilon(&golden(), 2, &1.into()).unwrap(), 0);
        assert_eq!(epsilon(&golden(), 1, &(-1).into()).unwrap(), 1);
        assert_eq!(epsilon(&minus3(), 1, &2.into()).unwrap(), 1);
        assert_eq!(epsilon(&golden(), 0, &2.into()), Err(Error::ZeroIndex));
        assert_eq!(epsilon(&golden(), 20, &2.into()), Err(Error::Index { index: 21, len: 21 }));
    }

    #[test]
    fn is_mismatch_examples() {
        assert!(is_mismatch(&golden(), 2, &2.into()).unwrap());
        assert!(!is_mismatch(&golden(), 2, &1.into()).unwrap());
        assert!(is_mismatch(&minus3(), 1, &(-1).into()).unwrap());
        for i in [1, 3, 5, 7] {
            assert!(!is_mismatch(&golden(), i, &0.into()).unwrap());
        }
    }

    #[test]
    fn mismatch_set_examples() {
        assert_eq!(js(&mismatch_set(&golden(), 2, 0, 2).unwrap()), vec![0, 2, 5]);
        let odd = mismatch_set(&golden(), 1, -1, 3).unwrap();
        assert_eq!(js(&odd), vec![-2, -1, 1, 3, 4]);
        assert_eq!(odd[1].k, KIndex::Special);
        assert!(odd.iter().all(|r| r.epsilon == 1));
        assert_eq!(js(&mismatch_set(&minus3(), 1, 0, 3).unwrap()), vec![-1, 2, 5, 7]);
        assert!(mismatch_set(&golden(), 2, 0, 2).unwrap().iter().all(|r| r.epsilon == -1));
        assert_eq!(mismatch_set(&golden(), 2, 3, 2), Err(Error::InvalidRange));
    }

    #[test]
    fn recover_k_examples() {
        assert_eq!(recover_k(&golden(), 2, &5.into()).unwrap(), KIndex::K(2.into()));
        assert_eq!(recover_k(&golden(), 2, &0.into()).unwrap(), KIndex::K(0.into()));
        assert_eq!(recover_k(&minus3(), 1, &7.into()).unwrap(), KIndex::K(3.into()));
        assert_eq!(recover_k(&golden(), 2, &1.into()), Err(Error::NotAMismatch));
        assert_eq!(recover_k(&golden(), 3, &(-2).into()).unwrap(), KIndex::Special);
    }

    #[test]
    fn brute_force_examples() {
        let expect = |v: &[(i64, i8)]| v.iter().map(|&(j, e)| (BigInt::from(j), e)).collect::<Vec<_>>();
        assert_eq!(
            brute_force_mismatches(&golden(), 2, 0, 6).unwrap(),
            expect(&[(0, -1), (2, -1), (5, -1)])
        );
        assert_eq!(
            brute_force_mismatches(&minus3(), 1, -2, 8).unwrap(),
            expect(&[(-1, 1), (2, 1), (5, 1), (7, 1)])
        );
        assert!(brute_force_mismatches(&golden(), 2, 3, 4).unwrap().is_empty());
    }

    #[test]
    fn single_point_window() {
        for g in [golden(), minus3()] {
            for i in 1..8 {
                let s = frequency_scan(&g, i, 0).unwrap();
                assert_eq!(s.window_size(), 1);
                assert!(s.mismatch_count <= 1);
            }
        }
        let s = frequency_scan(&golden(), 2, 1).unwrap();
        assert_eq!(s.frequency().1, 3);
    }

    #[test]
    fn k_window_values() {
        // (10 + 1)·τ² ≈ 4.2 → 5 + 2
        assert_eq!(k_window(&golden(), 2, 10).unwrap(), 7);
    }

    #[test]
    fn large_j_round_trip() {
        let g = GFib::build(QuadraticUnit::golden(), 80).unwrap();
        let recs = mismatch_set(&g, 70, 1_000_000_000_000, 1_000_000_000_005).unwrap();
        for r in &recs {
            assert_eq!(epsilon(&g, 70, &r.j).unwrap(), -1);
            assert_eq!(recover_k(&g, 70, &r.j).unwrap(), r.k);
            assert!(!is_mismatch(&g, 70, &(&r.j + 1)).unwrap());
        }
    }
}
