use num_traits::{One, Zero};

use crate::base::Base;
use crate::error::{Error, Result};
use crate::expansion::{tau_iterate, Digit, Expansion};
use crate::rational::ExactRational;

/// One row of a convergent table: the pair `(p_n, q_n)` and their ratio.
///
/// `p` and `q` are exact rationals rather than integers because a digit of
/// `-1` contributes the weight `m^-1` to the recurrence. The pair is kept
/// exactly as produced by the recurrence, not reduced, since the
/// determinant and error formulas refer to these unreduced values.
#[derive(Debug, Clone)]
pub struct ConvergentRow {
    pub index: usize,
    pub p: ExactRational,
    pub q: ExactRational,
    pub value: ExactRational,
}

/// Convergents of a digit sequence under the two-term recurrence
/// `p_n = m^(b_n) p_(n-1) + m^(b_(n-1)) p_(n-2)` (and likewise for `q`),
/// seeded with `p_0 = 0, q_0 = 1, p_1 = 1, q_1 = m^(b_1)`.
#[derive(Debug, Clone)]
pub struct ConvergentTable {
    base: Base,
    digits: Vec<Digit>,
    rows: Vec<ConvergentRow>,
}

impl ConvergentTable {
    /// Builds rows `0..=up_to`. The whole digit slice is retained, so
    /// digit-dependent quantities up to `digits.len()` stay available even
    /// when fewer rows are materialized.
    pub fn build(digits: &[Digit], base: Base, up_to: usize) -> Result<Self> {
        if digits.is_empty() {
            return Err(Error::EmptyDigits);
        }
        if up_to > digits.len() {
            return Err(Error::DepthOutOfRange {
                requested: up_to,
                available: digits.len(),
            });
        }
        let mut rows = Vec::with_capacity(up_to + 1);
        rows.push(ConvergentRow {
            index: 0,
            p: ExactRational::zero(),
            q: ExactRational::one(),
            value: ExactRational::zero(),
        });
        if up_to >= 1 {
            let q1 = base.pow(digits[0].value());
            let value = q1.recip();
            rows.push(ConvergentRow {
                index: 1,
                p: ExactRational::one(),
                q: q1,
                value,
            });
        }
        for n in 2..=up_to {
            let w_cur = base.pow(digits[n - 1].value());
            let w_prev = base.pow(digits[n - 2].value());
            let p = &w_cur * &rows[n - 1].p + &w_prev * &rows[n - 2].p;
            let q = &w_cur * &rows[n - 1].q + &w_prev * &rows[n - 2].q;
            let value = &p / &q;
            rows.push(ConvergentRow {
                index: n,
                p,
                q,
                value,
            });
        }
        Ok(Self {
            base,
            digits: digits.to_vec(),
            rows,
        })
    }

    /// Builds every row the digit sequence supports.
    pub fn build_full(digits: &[Digit], base: Base) -> Result<Self> {
        Self::build(digits, base, digits.len())
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn digits(&self) -> &[Digit] {
        &self.digits
    }

    /// Index of the deepest materialized row.
    pub fn depth(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn rows(&self) -> &[ConvergentRow] {
        &self.rows
    }

    pub fn row(&self, n: usize) -> Result<&ConvergentRow> {
        self.rows.get(n).ok_or(Error::DepthOutOfRange {
            requested: n,
            available: self.depth(),
        })
    }

    /// The digit `b_n`, one-based.
    pub fn digit(&self, n: usize) -> Result<Digit> {
        if n == 0 || n > self.digits.len() {
            return Err(Error::DepthOutOfRange {
                requested: n,
                available: self.digits.len(),
            });
        }
        Ok(self.digits[n - 1])
    }

    /// `b_1 + ... + b_n`.
    pub fn digit_sum(&self, n: usize) -> Result<i64> {
        if n > self.digits.len() {
            return Err(Error::DepthOutOfRange {
                requested: n,
                available: self.digits.len(),
            });
        }
        Ok(self.digits[..n].iter().map(|d| d.value()).sum())
    }

    /// `m^(b_1 + ... + b_n)`.
    pub fn power_sum(&self, n: usize) -> Result<ExactRational> {
        Ok(self.base.pow(self.digit_sum(n)?))
    }

    /// `p_n q_(n+1) - p_(n+1) q_n`, computed from the stored rows.
    pub fn determinant(&self, n: usize) -> Result<ExactRational> {
        let cur = self.row(n)?;
        let next = self.row(n + 1)?;
        Ok(&cur.p * &next.q - &next.p * &cur.q)
    }

    /// The closed form the determinant must equal:
    /// `(-1)^(n+1) m^(b_1 + ... + b_n)`.
    pub fn determinant_expected(&self, n: usize) -> Result<ExactRational> {
        let mag = self.power_sum(n)?;
        Ok(if (n + 1) % 2 == 0 { mag } else { -mag })
    }

    /// Evaluates the linear fractional form
    /// `(p_n + t m^(b_n) p_(n-1)) / (q_n + t m^(b_n) q_(n-1))`
    /// that splices a tail value `t >= 0` onto the first `n` digits.
    pub fn moebius_with_tail(&self, n: usize, t: &ExactRational) -> Result<ExactRational> {
        if n == 0 {
            return Err(Error::DepthOutOfRange {
                requested: n,
                available: self.depth(),
            });
        }
        let cur = self.row(n)?;
        let prev = self.row(n - 1)?;
        let tw = t * &self.base.pow(self.digit(n)?.value());
        let num = &cur.p + &(&tw * &prev.p);
        let den = &cur.q + &(&tw * &prev.q);
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(num / den)
    }
}

/// Value of the finite fraction with the given digits, evaluated bottom
/// up: `m^(-b_1) / (1 + m^(-b_2) / (1 + ...))`. The empty sequence
/// denotes zero.
pub fn eval_finite(digits: &[Digit], base: Base) -> ExactRational {
    let mut acc = ExactRational::zero();
    for d in digits.iter().rev() {
        acc = base.pow(-d.value()) / (ExactRational::one() + acc);
    }
    acc
}

/// Exact value represented by an expansion that carries an exact
/// remainder: the digits with the remainder spliced on as the tail.
pub fn reconstruct_value(expansion: &Expansion) -> Result<ExactRational> {
    let tail = expansion
        .exact_remainder()
        .ok_or(Error::RemainderUnavailable)?;
    if expansion.is_empty() {
        return Ok(tail.clone());
    }
    if tail.is_zero() {
        return Ok(eval_finite(expansion.digits(), expansion.base()));
    }
    let n = expansion.len();
    let table = ConvergentTable::build_full(expansion.digits(), expansion.base())?;
    table.moebius_with_tail(n, tail)
}

/// Checks that splicing the `n`-fold remainder iterate of `x` onto the
/// first `n` digits reproduces `x` exactly. The iterate is recomputed
/// from `x` here, independently of how the expansion was produced.
pub fn reconstruct_check(x: &ExactRational, expansion: &Expansion, n: usize) -> Result<bool> {
    if n == 0 || n > expansion.len() {
        return Err(Error::DepthOutOfRange {
            requested: n,
            available: expansion.len(),
        });
    }
    let t = tau_iterate(x, expansion.base(), n)?;
    let table = ConvergentTable::build(&expansion.digits()[..n], expansion.base(), n)?;
    Ok(&table.moebius_with_tail(n, &t)? == x)
}
