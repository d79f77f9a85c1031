use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::base::Base;
use crate::error::{Error, Result};
use crate::rational::{cmp_power, ExactRational};

/// Outcome of comparing an interval against a reference point: resolved
/// only when the entire enclosure lies on one side of it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntervalOrdering {
    Less,
    Equal,
    Greater,
    Unknown,
}

/// Closed interval `[lo, hi]` with exact rational endpoints and a precision
/// budget in bits.
///
/// Arithmetic computes exact endpoint bounds first, then rounds outward to
/// the dyadic grid with `precision` significant bits, so the result always
/// contains the true image while endpoint bit growth stays bounded.
/// Degenerate intervals (`lo == hi`) are kept exact and never rounded:
/// point inputs stay points through any chain of operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrecisionInterval {
    lo: ExactRational,
    hi: ExactRational,
    precision: u32,
}

impl PrecisionInterval {
    /// Interval from explicit endpoints, which must satisfy `lo <= hi`.
    pub fn new(lo: ExactRational, hi: ExactRational, precision: u32) -> Result<Self> {
        if lo > hi {
            return Err(Error::EmptyInterval { lo, hi });
        }
        Ok(Self {
            lo,
            hi,
            precision: precision.max(1),
        })
    }

    /// Exact point interval `[x, x]`.
    pub fn degenerate(value: ExactRational, precision: u32) -> Self {
        Self {
            lo: value.clone(),
            hi: value,
            precision: precision.max(1),
        }
    }

    pub fn lo(&self) -> &ExactRational {
        &self.lo
    }

    pub fn hi(&self) -> &ExactRational {
        &self.hi
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn width(&self) -> ExactRational {
        &self.hi - &self.lo
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &ExactRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Wraps exact endpoint bounds, rounding outward unless they coincide.
    pub(crate) fn enclose(lo: ExactRational, hi: ExactRational, precision: u32) -> Self {
        debug_assert!(lo <= hi);
        let precision = precision.max(1);
        if lo == hi {
            return Self { lo, hi, precision };
        }
        Self {
            lo: round_dyadic(&lo, precision, RoundDir::Down),
            hi: round_dyadic(&hi, precision, RoundDir::Up),
            precision,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::enclose(
            &self.lo + &other.lo,
            &self.hi + &other.hi,
            self.precision.min(other.precision),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::enclose(
            &self.lo - &other.hi,
            &self.hi - &other.lo,
            self.precision.min(other.precision),
        )
    }

    pub fn neg(&self) -> Self {
        Self {
            lo: -&self.hi,
            hi: -&self.lo,
            precision: self.precision,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        Self::enclose(lo, hi, self.precision.min(other.precision))
    }

    /// Reciprocal; fails when the interval encloses zero.
    pub fn recip(&self) -> Result<Self> {
        if !self.lo.is_positive() && !self.hi.is_negative() {
            return Err(Error::IntervalContainsZero);
        }
        Ok(Self::enclose(
            self.hi.recip(),
            self.lo.recip(),
            self.precision,
        ))
    }

    /// Scales by an exact constant.
    pub fn scale(&self, c: &ExactRational) -> Self {
        if c.is_zero() {
            return Self::degenerate(ExactRational::zero(), self.precision);
        }
        let (lo, hi) = if c.is_positive() {
            (c * &self.lo, c * &self.hi)
        } else {
            (c * &self.hi, c * &self.lo)
        };
        Self::enclose(lo, hi, self.precision)
    }

    /// Translates by an exact constant.
    pub fn offset(&self, c: &ExactRational) -> Self {
        Self::enclose(&self.lo + c, &self.hi + c, self.precision)
    }

    /// Interval of absolute values of the members.
    pub fn abs(&self) -> Self {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            self.neg()
        } else {
            let hi = (-&self.lo).max(self.hi.clone());
            Self {
                lo: ExactRational::zero(),
                hi,
                precision: self.precision,
            }
        }
    }

    /// Intersection with `[lo_min, hi_max]`, `None` when disjoint.
    /// Endpoints are clamped exactly, without rounding.
    pub fn intersect(&self, lo_min: &ExactRational, hi_max: &ExactRational) -> Option<Self> {
        let lo = (&self.lo).max(lo_min).clone();
        let hi = (&self.hi).min(hi_max).clone();
        if lo > hi {
            return None;
        }
        Some(Self {
            lo,
            hi,
            precision: self.precision,
        })
    }

    /// Compares every member against `m^e` at once. `Equal` is only
    /// returned for a degenerate interval sitting exactly on the power.
    pub fn certain_cmp_power(&self, base: Base, e: i64) -> IntervalOrdering {
        let lo_cmp = cmp_power(&self.lo, base, e);
        let hi_cmp = cmp_power(&self.hi, base, e);
        if hi_cmp == Ordering::Less {
            IntervalOrdering::Less
        } else if lo_cmp == Ordering::Greater {
            IntervalOrdering::Greater
        } else if lo_cmp == Ordering::Equal && hi_cmp == Ordering::Equal {
            IntervalOrdering::Equal
        } else {
            IntervalOrdering::Unknown
        }
    }
}

impl fmt::Display for PrecisionInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_degenerate() {
            write!(f, "[{}]", self.lo)
        } else {
            write!(f, "[{}, {}]@{}bit", self.lo, self.hi, self.precision)
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum RoundDir {
    Down,
    Up,
}

/// Largest `e` with `2^e <= num/den`, for positive `num`, `den`.
fn ilog2_floor(num: &BigInt, den: &BigInt) -> i64 {
    debug_assert!(num.is_positive() && den.is_positive());
    let guess = num.bits() as i64 - den.bits() as i64;
    let holds = if guess >= 0 {
        (den << guess as u64) <= *num
    } else {
        *den <= (num << (-guess) as u64)
    };
    if holds {
        guess
    } else {
        guess - 1
    }
}

/// `k / 2^(-shift)` for negative shift, `k * 2^shift` otherwise.
fn dyadic(k: BigInt, shift: i64) -> ExactRational {
    if shift >= 0 {
        ExactRational::from(k << shift as u64)
    } else {
        ExactRational::new(k, BigInt::one() << (-shift) as u64)
    }
}

/// `floor(x / 2^shift)` computed exactly.
fn shifted_floor(x: &ExactRational, shift: i64) -> BigInt {
    if shift >= 0 {
        x.numer().div_floor(&(x.denom() << shift as u64))
    } else {
        (x.numer() << (-shift) as u64).div_floor(x.denom())
    }
}

/// `ceil(x / 2^shift)` computed exactly.
fn shifted_ceil(x: &ExactRational, shift: i64) -> BigInt {
    if shift >= 0 {
        x.numer().div_ceil(&(x.denom() << shift as u64))
    } else {
        (x.numer() << (-shift) as u64).div_ceil(x.denom())
    }
}

/// Rounds `x` to the dyadic grid with `precision` significant bits of the
/// magnitude of `x`, in the requested direction. The result differs from
/// `x` by less than `2^(1-precision) * |x|` and rounding is exact (a
/// no-op) whenever `x` already sits on the grid.
fn round_dyadic(x: &ExactRational, precision: u32, dir: RoundDir) -> ExactRational {
    if x.is_zero() {
        return ExactRational::zero();
    }
    let mag = x.numer().abs();
    let e = ilog2_floor(&mag, x.denom());
    let shift = e - precision as i64 + 1;
    let k = match dir {
        RoundDir::Down => shifted_floor(x, shift),
        RoundDir::Up => shifted_ceil(x, shift),
    };
    dyadic(k, shift)
}

/// Certified enclosure of `sqrt(n)` with width `2^(1-precision)`, which is
/// at most `2^(1-precision) * sqrt(n)`. Perfect squares yield a degenerate
/// interval.
pub fn interval_from_sqrt(n: u64, precision: u32) -> PrecisionInterval {
    let precision = precision.max(1);
    let k = (precision - 1) as u64;
    let shifted = BigInt::from(n) << (2 * k);
    let root = shifted.sqrt();
    if &root * &root == shifted {
        PrecisionInterval::degenerate(dyadic(root, -(k as i64)), precision)
    } else {
        PrecisionInterval {
            lo: dyadic(root.clone(), -(k as i64)),
            hi: dyadic(root + 1, -(k as i64)),
            precision,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::make_rational;

    fn r(p: i64, q: i64) -> ExactRational {
        make_rational(p, q).unwrap()
    }

    #[test]
    fn rounding_moves_in_the_requested_direction() {
        let x = r(1, 3);
        let down = round_dyadic(&x, 8, RoundDir::Down);
        let up = round_dyadic(&x, 8, RoundDir::Up);
        assert!(down < x && x < up);
        // grid spacing at 8 bits around 1/3 is 2^(-9)
        assert_eq!(&up - &down, r(1, 512));
    }

    #[test]
    fn rounding_is_exact_on_grid_points() {
        let x = r(3, 8);
        assert_eq!(round_dyadic(&x, 8, RoundDir::Down), x);
        assert_eq!(round_dyadic(&x, 8, RoundDir::Up), x);
        let y = r(-5, 4);
        assert_eq!(round_dyadic(&y, 4, RoundDir::Down), y);
        assert_eq!(round_dyadic(&y, 4, RoundDir::Up), y);
    }

    #[test]
    fn rounding_handles_negative_values() {
        let x = r(-1, 3);
        let down = round_dyadic(&x, 8, RoundDir::Down);
        let up = round_dyadic(&x, 8, RoundDir::Up);
        assert!(down < x && x < up);
        assert_eq!(&up - &down, r(1, 512));
    }

    #[test]
    fn ilog2_floor_examples() {
        assert_eq!(ilog2_floor(&BigInt::from(1), &BigInt::from(1)), 0);
        assert_eq!(ilog2_floor(&BigInt::from(1), &BigInt::from(3)), -2);
        assert_eq!(ilog2_floor(&BigInt::from(8), &BigInt::from(1)), 3);
        assert_eq!(ilog2_floor(&BigInt::from(7), &BigInt::from(1)), 2);
        assert_eq!(ilog2_floor(&BigInt::from(9), &BigInt::from(8)), 0);
    }

    #[test]
    fn degenerate_intervals_stay_exact_through_arithmetic() {
        let a = PrecisionInterval::degenerate(r(1, 3), 4);
        let b = PrecisionInterval::degenerate(r(1, 7), 4);
        let sum = a.add(&b);
        assert!(sum.is_degenerate());
        assert_eq!(sum.lo(), &r(10, 21));
        let prod = a.mul(&b);
        assert_eq!(prod.lo(), &r(1, 21));
        let inv = a.recip().unwrap();
        assert_eq!(inv.lo(), &r(3, 1));
    }

    #[test]
    fn arithmetic_contains_the_exact_image() {
        let a = PrecisionInterval::new(r(1, 3), r(1, 2), 6).unwrap();
        let b = PrecisionInterval::new(r(1, 5), r(1, 4), 6).unwrap();
        let sum = a.add(&b);
        assert!(sum.contains(&(r(1, 3) + r(1, 5))));
        assert!(sum.contains(&(r(1, 2) + r(1, 4))));
        let prod = a.mul(&b);
        assert!(prod.contains(&(r(1, 3) * r(1, 5))));
        assert!(prod.contains(&(r(1, 2) * r(1, 4))));
        let inv = a.recip().unwrap();
        assert!(inv.contains(&r(2, 1)) && inv.contains(&r(3, 1)));
    }

    #[test]
    fn recip_rejects_zero_straddling_intervals() {
        let a = PrecisionInterval::new(r(-1, 2), r(1, 2), 8).unwrap();
        assert!(matches!(a.recip(), Err(Error::IntervalContainsZero)));
        let b = PrecisionInterval::new(r(-3, 2), r(-1, 2), 8).unwrap();
        let inv = b.recip().unwrap();
        assert!(inv.contains(&r(-2, 3)) && inv.contains(&r(-2, 1)));
    }

    #[test]
    fn certain_cmp_power_resolves_only_separated_intervals() {
        let m = Base::new(2).unwrap();
        let below = PrecisionInterval::new(r(1, 5), r(2, 5), 8).unwrap();
        assert_eq!(below.certain_cmp_power(m, -1), IntervalOrdering::Less);
        let above = PrecisionInterval::new(r(3, 5), r(4, 5), 8).unwrap();
        assert_eq!(above.certain_cmp_power(m, -1), IntervalOrdering::Greater);
        let straddle = PrecisionInterval::new(r(2, 5), r(3, 5), 8).unwrap();
        assert_eq!(straddle.certain_cmp_power(m, -1), IntervalOrdering::Unknown);
        let point = PrecisionInterval::degenerate(r(1, 2), 8);
        assert_eq!(point.certain_cmp_power(m, -1), IntervalOrdering::Equal);
    }

    #[test]
    fn sqrt_interval_brackets_the_root() {
        for n in [2u64, 3, 5, 7, 10, 1023] {
            for p in [8u32, 16, 64, 128] {
                let iv = interval_from_sqrt(n, p);
                let n_rat = ExactRational::from(BigInt::from(n));
                // lo^2 <= n <= hi^2, checked in exact arithmetic
                assert!(
                    iv.lo() * iv.lo() <= n_rat,
                    "lo too big for sqrt({n}) at {p} bits"
                );
                assert!(
                    n_rat <= iv.hi() * iv.hi(),
                    "hi too small for sqrt({n}) at {p} bits"
                );
                assert!(!iv.lo().is_negative());
                // width exactly 2^(1-p)
                assert_eq!(iv.width(), dyadic(BigInt::one(), 1 - p as i64));
            }
        }
    }

    #[test]
    fn sqrt_interval_is_degenerate_on_perfect_squares() {
        for (n, root) in [(0u64, 0i64), (1, 1), (4, 2), (9, 3), (144, 12)] {
            let iv = interval_from_sqrt(n, 32);
            assert!(iv.is_degenerate());
            assert_eq!(iv.lo(), &r(root, 1));
        }
    }

    #[test]
    fn intersect_clamps_exactly() {
        let a = PrecisionInterval::new(r(-1, 2), r(3, 2), 8).unwrap();
        let clipped = a.intersect(&r(0, 1), &r(1, 1)).unwrap();
        assert_eq!(clipped.lo(), &r(0, 1));
        assert_eq!(clipped.hi(), &r(1, 1));
        assert!(a.intersect(&r(2, 1), &r(3, 1)).is_none());
    }

    #[test]
    fn abs_covers_sign_cases() {
        let neg = PrecisionInterval::new(r(-3, 2), r(-1, 2), 8).unwrap();
        assert_eq!(neg.abs().lo(), &r(1, 2));
        assert_eq!(neg.abs().hi(), &r(3, 2));
        let straddle = PrecisionInterval::new(r(-1, 4), r(1, 2), 8).unwrap();
        assert_eq!(straddle.abs().lo(), &r(0, 1));
        assert_eq!(straddle.abs().hi(), &r(1, 2));
    }
}
