use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::base::Base;
use crate::error::{Error, Result};
use crate::expansion::tau_step;
use crate::rational::{make_rational, ExactRational};

/// Regular continued fraction expansion `[0; a_1, a_2, ...]` of a
/// rational in `(0, 1)`.
#[derive(Debug, Clone)]
pub struct RcfExpansion {
    pub quotients: Vec<BigInt>,
    pub terminated: bool,
}

/// The classical remainder map `x -> 1/x - floor(1/x)`, with zero fixed.
pub fn gauss_map(x: &ExactRational) -> ExactRational {
    if x.is_zero() {
        return ExactRational::zero();
    }
    let inv = x.recip();
    &inv - inv.floor()
}

/// Euclid-style partial quotients of `x` in `(0, 1)`, at most `max` of
/// them. Every quotient is a positive integer; rationals terminate.
pub fn rcf_expand(x: &ExactRational, max: usize) -> Result<RcfExpansion> {
    if !x.is_positive() || x >= &ExactRational::one() {
        return Err(Error::RcfDomain { value: x.clone() });
    }
    let mut quotients = Vec::new();
    let mut r = x.clone();
    while !r.is_zero() && quotients.len() < max {
        let inv = r.recip();
        let a = inv.floor();
        r = inv - &a;
        quotients.push(a.to_integer());
    }
    Ok(RcfExpansion {
        quotients,
        terminated: r.is_zero(),
    })
}

/// Value of `[0; a_1, ..., a_k]` as an exact rational; the empty list
/// denotes zero.
pub fn rcf_eval(quotients: &[BigInt]) -> ExactRational {
    let mut acc = ExactRational::zero();
    for a in quotients.iter().rev() {
        acc = (ExactRational::from(a.clone()) + acc).recip();
    }
    acc
}

/// Deterministic uniform sample in `(0, 1)`: draw one 64-bit word from
/// a ChaCha8 stream selected by `index` and map it to `(2u + 1)/2^65`.
/// Per-sample streams make the result independent of batching or worker
/// count, and the odd numerator keeps samples strictly inside `(0, 1)`.
pub fn seeded_unit_sample(seed: u64, index: u64) -> ExactRational {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let u = rng.next_u64();
    ExactRational::new(BigInt::from(u) * 2 + 1, BigInt::one() << 65)
}

/// One grid point of the empirical remainder-distribution check: the
/// count of samples whose `n`-fold Gauss iterate lies at or below `z`,
/// against the limiting reference value `log2(z + 1)`.
#[derive(Debug, Clone)]
pub struct GaussKuzminRow {
    pub z: ExactRational,
    pub count: u64,
    pub samples: u64,
    pub reference: f64,
}

impl GaussKuzminRow {
    pub fn empirical(&self) -> f64 {
        if self.samples == 0 {
            return 0.0;
        }
        self.count as f64 / self.samples as f64
    }

    pub fn deviation(&self) -> f64 {
        (self.empirical() - self.reference).abs()
    }
}

/// The default grid `z = 1/10, ..., 9/10`.
pub fn default_z_grid() -> Vec<ExactRational> {
    (1..=9)
        .map(|k| make_rational(k, 10).expect("nonzero denominator"))
        .collect()
}

/// Draws `samples` uniform points in `(0, 1)`, applies the Gauss map
/// `iterations` times exactly, and tallies the fraction at or below
/// each grid point. Deterministic for a fixed seed.
pub fn gauss_kuzmin_empirical(
    samples: u64,
    iterations: u32,
    z_grid: &[ExactRational],
    seed: u64,
) -> Vec<GaussKuzminRow> {
    let mut counts = vec![0u64; z_grid.len()];
    for index in 0..samples {
        let mut x = seeded_unit_sample(seed, index);
        for _ in 0..iterations {
            x = gauss_map(&x);
        }
        for (slot, z) in counts.iter_mut().zip(z_grid) {
            if &x <= z {
                *slot += 1;
            }
        }
    }
    z_grid
        .iter()
        .zip(counts)
        .map(|(z, count)| GaussKuzminRow {
            z: z.clone(),
            count,
            samples,
            reference: (z.to_f64().unwrap_or(f64::NAN) + 1.0).log2(),
        })
        .collect()
}

/// One histogram bin: a digit value, or `None` for the overflow bucket
/// that collects digits above the cap.
#[derive(Debug, Clone)]
pub struct HistogramBin {
    pub digit: Option<i64>,
    pub count: u64,
}

impl HistogramBin {
    pub fn label(&self) -> String {
        match self.digit {
            Some(d) => d.to_string(),
            None => "overflow".to_string(),
        }
    }
}

/// Exploratory digit-frequency histogram for the base-m remainder map.
/// No reference distribution is asserted; the output is raw counts with
/// exact count/total frequencies.
#[derive(Debug, Clone)]
pub struct HistogramResult {
    pub base: u32,
    pub samples: u64,
    pub depth: u32,
    pub seed: u64,
    pub digit_cap: i64,
    /// Digits observed in total; samples that terminate early contribute
    /// fewer than `depth` digits.
    pub total_digits: u64,
    /// Bins for digit values `-1 ..= digit_cap`, then the overflow bin.
    pub bins: Vec<HistogramBin>,
}

impl HistogramResult {
    /// Exact relative frequency of one bin; frequencies over all bins
    /// sum to one whenever any digit was observed.
    pub fn frequency(&self, bin: usize) -> ExactRational {
        if self.total_digits == 0 {
            return ExactRational::zero();
        }
        make_rational(self.bins[bin].count, self.total_digits).expect("total is nonzero")
    }
}

/// Expands `samples` uniform points of `(0, m-1)` to `depth` digits each
/// in exact arithmetic and tallies the digit values. Deterministic for a
/// fixed seed; digits above `digit_cap` land in the overflow bin.
pub fn mcf_digit_histogram(
    base: Base,
    samples: u64,
    depth: u32,
    seed: u64,
    digit_cap: i64,
) -> HistogramResult {
    let digit_cap = digit_cap.max(0);
    let mut counts = vec![0u64; (digit_cap + 2) as usize + 1];
    let overflow = counts.len() - 1;
    let scale = ExactRational::from(BigInt::from(base.get() - 1));
    let mut total = 0u64;
    for index in 0..samples {
        let mut x = seeded_unit_sample(seed, index) * &scale;
        for _ in 0..depth {
            if x.is_zero() {
                break;
            }
            let (d, next) = tau_step(&x, base).expect("remainder stays inside [0, m-1]");
            let v = d.value();
            let slot = if v > digit_cap {
                overflow
            } else {
                (v + 1) as usize
            };
            counts[slot] += 1;
            total += 1;
            x = next;
        }
    }
    let bins = counts
        .iter()
        .enumerate()
        .map(|(i, &count)| HistogramBin {
            digit: if i == overflow {
                None
            } else {
                Some(i as i64 - 1)
            },
            count,
        })
        .collect();
    HistogramResult {
        base: base.get(),
        samples,
        depth,
        seed,
        digit_cap,
        total_digits: total,
        bins,
    }
}
