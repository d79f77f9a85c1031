use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};

use crate::base::Base;
use crate::error::{Error, Result};

/// Arbitrary precision rational, kept normalized (lowest terms, positive
/// denominator) by the underlying representation.
pub type ExactRational = num_rational::BigRational;

/// Builds the normalized rational `p/q`, rejecting `q = 0`.
pub fn make_rational<P, Q>(p: P, q: Q) -> Result<ExactRational>
where
    BigInt: From<P> + From<Q>,
{
    let q = BigInt::from(q);
    if q.sign() == Sign::NoSign {
        return Err(Error::ZeroDenominator);
    }
    Ok(ExactRational::new(BigInt::from(p), q))
}

/// Compares `x` against `m^e` exactly by integer cross multiplication.
///
/// No logarithms or floating point are involved, so the result is reliable
/// for operands of any size. Nonpositive `x` always compares `Less` since
/// every power of the base is positive.
pub fn cmp_power(x: &ExactRational, base: Base, e: i64) -> Ordering {
    if x.numer().sign() != Sign::Plus {
        return Ordering::Less;
    }
    if e >= 0 {
        x.numer().cmp(&(x.denom() * base.big_pow(e as u64)))
    } else {
        (x.numer() * base.big_pow(e.unsigned_abs())).cmp(x.denom())
    }
}

/// Fibonacci numbers under the indexing `F_0 = F_1 = 1`.
pub fn fibonacci(n: u64) -> BigInt {
    let mut prev = BigInt::from(1);
    let mut cur = BigInt::from(1);
    for _ in 0..n {
        let next = &prev + &cur;
        prev = cur;
        cur = next;
    }
    prev
}
