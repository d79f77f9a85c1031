use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Pow};

use crate::error::{Error, Result};
use crate::rational::ExactRational;

/// Expansion base `m >= 2`.
///
/// Wraps the base as a validated newtype so powers `m^e` (with signed `e`)
/// are always formed exactly, never through floating point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Base(u32);

impl Base {
    pub fn new(m: u32) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidBase(m));
        }
        Ok(Self(m))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn big(self) -> BigInt {
        BigInt::from(self.0)
    }

    /// `m^k` for nonnegative `k`.
    pub fn big_pow(self, k: u64) -> BigInt {
        Pow::pow(self.big(), k)
    }

    /// `m^e` as an exact rational, `e` of either sign.
    pub fn pow(self, e: i64) -> ExactRational {
        if e >= 0 {
            ExactRational::from(self.big_pow(e as u64))
        } else {
            ExactRational::new(BigInt::one(), self.big_pow(e.unsigned_abs()))
        }
    }

    /// `m - 1`, the right endpoint of the remainder map's range.
    pub fn range_end(self) -> ExactRational {
        ExactRational::from(BigInt::from(self.0 - 1))
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
