use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::base::Base;
use crate::error::{Error, Result};
use crate::interval::{IntervalOrdering, PrecisionInterval};
use crate::rational::{cmp_power, ExactRational};

/// A single expansion digit, an integer `>= -1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Digit(i64);

impl Digit {
    pub fn new(value: i64) -> Result<Self> {
        if value < -1 {
            return Err(Error::InvalidDigit(value));
        }
        Ok(Self(value))
    }

    pub fn value(self) -> i64 {
        self.0
    }

    pub fn is_negative(self) -> bool {
        self.0 < 0
    }
}

impl fmt::Display for Digit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Number handed to the expansion routines: either an exact rational or a
/// certified interval enclosure of an irrational.
#[derive(Debug, Clone)]
pub enum NumberInput {
    Exact(ExactRational),
    Approx(PrecisionInterval),
}

/// Remainder state at the point an expansion stopped.
#[derive(Debug, Clone)]
pub enum Remainder {
    Exact(ExactRational),
    Approx(PrecisionInterval),
}

/// Result of running the digit map on an input.
///
/// `terminated` means the remainder reached exactly zero, so the digit
/// list is the complete expansion. Otherwise the expansion stopped at the
/// digit cap (or, for interval inputs, is reported through
/// `Error::PrecisionExhausted`) and `remainder` holds the state needed to
/// resume.
#[derive(Debug, Clone)]
pub struct Expansion {
    base: Base,
    digits: Vec<Digit>,
    terminated: bool,
    remainder: Option<Remainder>,
}

impl Expansion {
    pub(crate) fn new(
        base: Base,
        digits: Vec<Digit>,
        terminated: bool,
        remainder: Option<Remainder>,
    ) -> Self {
        Self {
            base,
            digits,
            terminated,
            remainder,
        }
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn digits(&self) -> &[Digit] {
        &self.digits
    }

    pub fn digit_values(&self) -> Vec<i64> {
        self.digits.iter().map(|d| d.value()).collect()
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn terminated(&self) -> bool {
        self.terminated
    }

    pub fn remainder(&self) -> Option<&Remainder> {
        self.remainder.as_ref()
    }

    /// The remainder as an exact rational, when one is held.
    pub fn exact_remainder(&self) -> Option<&ExactRational> {
        match &self.remainder {
            Some(Remainder::Exact(r)) => Some(r),
            _ => None,
        }
    }
}

/// First digit of `x`: the unique `b >= -1` with
/// `m^-(b+1) < x <= m^-b`. Accepts `0 < x <= m`; the digit is `-1`
/// exactly on `(1, m]`.
pub fn digit_b1(x: &ExactRational, base: Base) -> Result<Digit> {
    if x.is_zero() {
        return Err(Error::InfiniteDigit);
    }
    if x.is_negative() || cmp_power(x, base, 1) == Ordering::Greater {
        return Err(Error::OutOfDomain {
            value: x.clone(),
            base: base.get(),
        });
    }
    // Initial guess from bit lengths, then exact correction. The guess is
    // within a couple of steps of the answer, so the loops are short.
    let lg = x.denom().bits() as i64 - x.numer().bits() as i64;
    let mut b = (lg as f64 / (base.get() as f64).log2()).floor() as i64 - 1;
    while cmp_power(x, base, -b) == Ordering::Greater {
        b -= 1;
    }
    while cmp_power(x, base, -(b + 1)) != Ordering::Greater {
        b += 1;
    }
    debug_assert!(cmp_power(x, base, -b) != Ordering::Greater);
    Digit::new(b)
}

/// One step of the remainder map: returns the digit `b` of `x` together
/// with `m^-b / x - 1`, which lies in `[0, m-1)`.
pub fn tau_step(x: &ExactRational, base: Base) -> Result<(Digit, ExactRational)> {
    let digit = digit_b1(x, base)?;
    let next = base.pow(-digit.value()) / x - ExactRational::one();
    debug_assert!(!next.is_negative());
    debug_assert!(next < base.range_end());
    Ok((digit, next))
}

/// `n`-fold iterate of the remainder map. Zero is a fixed point, so
/// iterating past a terminating expansion stays at zero.
pub fn tau_iterate(x: &ExactRational, base: Base, n: usize) -> Result<ExactRational> {
    let mut r = x.clone();
    for _ in 0..n {
        if r.is_zero() {
            break;
        }
        r = tau_step(&r, base)?.1;
    }
    Ok(r)
}

/// Runs the digit map on `input`, producing at most `max_digits` digits.
///
/// Exact inputs stop either at termination (remainder exactly zero) or at
/// the cap. Interval inputs additionally stop with
/// `Error::PrecisionExhausted` when the enclosure can no longer certify a
/// unique next digit; the partial expansion is carried in the error.
pub fn expand(input: &NumberInput, base: Base, max_digits: usize) -> Result<Expansion> {
    match input {
        NumberInput::Exact(x) => expand_exact(x, base, max_digits),
        NumberInput::Approx(iv) => expand_interval(iv, base, max_digits),
    }
}

fn expand_exact(x: &ExactRational, base: Base, max_digits: usize) -> Result<Expansion> {
    if x.is_negative() || cmp_power(x, base, 1) == Ordering::Greater {
        return Err(Error::OutOfDomain {
            value: x.clone(),
            base: base.get(),
        });
    }
    let mut digits = Vec::new();
    let mut r = x.clone();
    while !r.is_zero() && digits.len() < max_digits {
        let (d, next) = tau_step(&r, base)?;
        digits.push(d);
        r = next;
    }
    let terminated = r.is_zero();
    Ok(Expansion::new(
        base,
        digits,
        terminated,
        Some(Remainder::Exact(r)),
    ))
}

fn expand_interval(iv: &PrecisionInterval, base: Base, max_digits: usize) -> Result<Expansion> {
    if iv.lo().is_negative() || cmp_power(iv.hi(), base, 1) == Ordering::Greater {
        return Err(Error::OutOfDomain {
            value: iv.hi().clone(),
            base: base.get(),
        });
    }
    let mut digits = Vec::new();
    let mut r = iv.clone();
    loop {
        if r.is_degenerate() && r.lo().is_zero() {
            return Ok(Expansion::new(
                base,
                digits,
                true,
                Some(Remainder::Exact(ExactRational::zero())),
            ));
        }
        if digits.len() >= max_digits {
            return Ok(Expansion::new(
                base,
                digits,
                false,
                Some(Remainder::Approx(r)),
            ));
        }
        match certified_digit(&r, base) {
            Some(d) => {
                r = tau_interval(&r, base, d);
                digits.push(d);
            }
            None => {
                let partial = Expansion::new(base, digits, false, Some(Remainder::Approx(r)));
                return Err(Error::PrecisionExhausted {
                    partial: Box::new(partial),
                });
            }
        }
    }
}

/// Digit shared by every member of `r`, if the enclosure is tight enough
/// to prove there is one.
///
/// The candidate comes from the upper endpoint, which carries the smallest
/// digit of any member. Certification then needs the strict lower bracket
/// `r > m^-(b+1)` for the whole interval, and the closed upper bracket
/// `r <= m^-b`, which holds automatically for points below `hi` once `hi`
/// itself satisfies it.
fn certified_digit(r: &PrecisionInterval, base: Base) -> Option<Digit> {
    if !r.lo().is_positive() {
        return None;
    }
    let cand = digit_b1(r.hi(), base).ok()?;
    let b = cand.value();
    let upper_ok = match r.certain_cmp_power(base, -b) {
        IntervalOrdering::Less | IntervalOrdering::Equal => true,
        // closed right endpoint: hi landing exactly on m^-b still belongs
        IntervalOrdering::Unknown | IntervalOrdering::Greater => {
            cmp_power(r.hi(), base, -b) != Ordering::Greater
        }
    };
    let lower_ok = r.certain_cmp_power(base, -(b + 1)) == IntervalOrdering::Greater;
    (upper_ok && lower_ok).then_some(cand)
}

/// Long-run behaviour of the exact remainder orbit of a rational input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitClass {
    /// The remainder reaches exactly zero; the expansion is finite with
    /// this many digits.
    Terminates { digits: usize },
    /// The remainder orbit revisits a value, so the expansion is provably
    /// infinite. `transient` steps precede the cycle of length `period`.
    EventuallyPeriodic { transient: usize, period: usize },
    /// Neither zero nor a repeat was found within the probe budget;
    /// `steps` is how far the probe got.
    Undecided { steps: usize },
}

/// Decides whether the expansion of an exact rational terminates by
/// running Brent's cycle-finding algorithm on the remainder orbit.
///
/// A rational expansion is infinite exactly when its remainder orbit
/// repeats a value. Rationals in bases 2 and 3 terminate quickly in
/// practice, but from base 5 on most orbits either settle into a cycle or
/// grow without bound. The probe gives up after `step_cap` steps, or as
/// soon as the remainder's numerator and denominator together exceed
/// `size_cap_bits` bits; steadily growing orbits cross any fixed size
/// threshold early, which keeps the probe cheap on exactly the inputs
/// that would otherwise burn the whole step budget.
pub fn classify_orbit(
    x: &ExactRational,
    base: Base,
    step_cap: usize,
    size_cap_bits: u64,
) -> Result<OrbitClass> {
    if x.is_negative() || cmp_power(x, base, 1) == Ordering::Greater {
        return Err(Error::OutOfDomain {
            value: x.clone(),
            base: base.get(),
        });
    }
    if x.is_zero() {
        return Ok(OrbitClass::Terminates { digits: 0 });
    }
    let too_big = |r: &ExactRational| r.numer().bits() + r.denom().bits() > size_cap_bits;
    // Brent's search: the tortoise waits at power-of-two step counts while
    // the hare advances; a match fixes the exact cycle length.
    let mut power = 1usize;
    let mut lambda = 1usize;
    let mut tortoise = x.clone();
    let mut hare = tau_step(x, base)?.1;
    let mut steps = 1usize;
    while hare != tortoise {
        if hare.is_zero() {
            return Ok(OrbitClass::Terminates { digits: steps });
        }
        if steps >= step_cap || too_big(&hare) {
            return Ok(OrbitClass::Undecided { steps });
        }
        if power == lambda {
            tortoise = hare.clone();
            power *= 2;
            lambda = 0;
        }
        hare = tau_step(&hare, base)?.1;
        steps += 1;
        lambda += 1;
    }
    // With the period known, two cursors kept `lambda` apart meet at the
    // first point on the cycle.
    let mut front = x.clone();
    for _ in 0..lambda {
        front = tau_step(&front, base)?.1;
    }
    let mut back = x.clone();
    let mut transient = 0usize;
    while back != front {
        back = tau_step(&back, base)?.1;
        front = tau_step(&front, base)?.1;
        transient += 1;
    }
    Ok(OrbitClass::EventuallyPeriodic {
        transient,
        period: lambda,
    })
}

/// Image of `r` under the remainder map for an already certified digit.
/// The map is decreasing, so the endpoints swap; the image is clipped to
/// the range `[0, m-1]` of the map, which is sound because the true image
/// lies there.
fn tau_interval(r: &PrecisionInterval, base: Base, digit: Digit) -> PrecisionInterval {
    let c = base.pow(-digit.value());
    let one = ExactRational::one();
    let lo = &c / r.hi() - &one;
    let hi = &c / r.lo() - &one;
    let image = PrecisionInterval::enclose(lo, hi, r.precision());
    match image.intersect(&ExactRational::zero(), &base.range_end()) {
        Some(clipped) => clipped,
        None => image,
    }
}
