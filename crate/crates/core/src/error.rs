use core::fmt;

use crate::qunit::Family;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// `m` is outside the range admitted by the family.
    Domain { family: Family, m: u64 },
    /// Two ring elements (or windows) built over different units were combined.
    UnitMismatch,
    /// Shift and power indices start at 1.
    ZeroIndex,
    /// The Fibonacci table does not reach the requested index.
    Index { index: usize, len: usize },
    /// `recover_k` was asked about a position that is not a mismatch.
    NotAMismatch,
    /// A range whose lower bound exceeds its upper bound.
    InvalidRange,
    /// A window whose upper endpoint lies below its lower endpoint.
    InvertedWindow,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { family, m } => {
                write!(f, "m = {m} is not admissible for family {family} (requires m >= {})", family.min_m())
            }
            Error::UnitMismatch => f.write_str("operands belong to different quadratic units"),
            Error::ZeroIndex => f.write_str("index must be at least 1"),
            Error::Index { index, len } => {
                write!(f, "index {index} out of range for Fibonacci table of length {len}")
            }
            Error::NotAMismatch => f.write_str("position is not a mismatch"),
            Error::InvalidRange => f.write_str("range lower bound exceeds upper bound"),
            Error::InvertedWindow => f.write_str("window upper endpoint is below its lower endpoint"),
        }
    }
}

impl core::error::Error for Error {}
