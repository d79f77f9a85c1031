use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::base::Base;
use crate::convergents::{reconstruct_value, ConvergentTable};
use crate::error::{Error, Result};
use crate::expansion::{expand, tau_iterate, tau_step, Expansion, NumberInput};
use crate::rational::{fibonacci, ExactRational};

/// Two-sided enclosure of the approximation error at one depth.
///
/// `lower_loose` carries the factor `(m-1)^(n+1)` in its denominator,
/// `lower_tight` the factor `(m-1)^1`; both are valid lower bounds and
/// `lower_loose <= lower_tight` always. `upper_tight` is
/// `m^sum / (q_n q_(n+1))` and `upper_coarse` is
/// `1 / max(F_n, m^sum)`, where `sum = b_1 + ... + b_n`. The coarse
/// upper bound is only guaranteed when all digits so far are nonnegative.
#[derive(Debug, Clone)]
pub struct ErrorBounds {
    pub lower_loose: ExactRational,
    pub lower_tight: ExactRational,
    pub upper_tight: ExactRational,
    pub upper_coarse: ExactRational,
}

/// Error and bound data for one depth of a convergent table.
///
/// `bounds` is `None` at depths where the expansion has already
/// terminated: the error there is exactly zero and the two-sided bounds
/// do not apply.
#[derive(Debug, Clone)]
pub struct BoundsRow {
    pub depth: usize,
    pub error: ExactRational,
    pub bounds: Option<ErrorBounds>,
    /// `m^(b_1 + ... + b_n)`, an unconditional floor for `q_n`.
    pub power_floor: ExactRational,
    /// `F_n`, a floor for `q_n` when all digits are nonnegative.
    pub fib_floor: BigInt,
    pub power_floor_holds: bool,
    pub fib_floor_holds: bool,
}

/// Exact approximation error `x - p_n/q_n`, computed two independent
/// ways: by direct subtraction, and through the closed form
/// `(-1)^n t m^(b_1+...+b_n) / (q_n (q_n + t m^(b_n) q_(n-1)))` with
/// `t` the `n`-fold remainder iterate of `x`. The two must agree
/// exactly; a mismatch reports an internal inconsistency.
pub fn error_exact(
    x: &ExactRational,
    expansion: &Expansion,
    table: &ConvergentTable,
    n: usize,
) -> Result<ExactRational> {
    if n == 0 {
        return Err(Error::DepthOutOfRange {
            requested: 0,
            available: table.depth(),
        });
    }
    let row = table.row(n)?;
    let prev = table.row(n - 1)?;
    let direct = x - &row.value;
    let t = if expansion.terminated() && n >= expansion.len() {
        ExactRational::zero()
    } else {
        tau_iterate(x, table.base(), n)?
    };
    let w = table.base().pow(table.digit(n)?.value());
    let m_sum = table.power_sum(n)?;
    let den = &row.q * &(&row.q + &(&t * &w * &prev.q));
    let signed_t = if n % 2 == 0 { t } else { -t };
    let closed = signed_t * m_sum / den;
    if closed != direct {
        return Err(Error::Inconsistency(format!(
            "error computations disagree at depth {n}: direct {direct}, closed {closed}"
        )));
    }
    Ok(direct)
}

/// Error and bounds at depth `n` for an expansion with an exact
/// remainder. The table must hold rows through `n` (and `n + 1` when
/// the expansion continues past `n`).
///
/// Recomputes the remainder iterate from scratch, so a full-depth sweep
/// through this entry point is quadratic; use [`bounds_sweep`] for that.
pub fn error_bounds(table: &ConvergentTable, expansion: &Expansion, n: usize) -> Result<BoundsRow> {
    let x = reconstruct_value(expansion)?;
    let t = if expansion.terminated() && n >= expansion.len() {
        ExactRational::zero()
    } else {
        tau_iterate(&x, table.base(), n)?
    };
    bounds_row_at(&x, table, expansion, n, &t)
}

/// Error and bound rows for every depth of `expansion`, walking the
/// remainder orbit of `x` once. Covers depths `1..=len` when the
/// expansion terminated and `1..len` otherwise (the final depth of a
/// truncated expansion has no next digit to price its bounds).
///
/// `expansion` must be the expansion of `x`; the built-in closed-form
/// cross-check fails with `Error::Inconsistency` if it is not.
pub fn bounds_sweep(
    x: &ExactRational,
    expansion: &Expansion,
    table: &ConvergentTable,
) -> Result<Vec<BoundsRow>> {
    let k = expansion.len();
    let top = if expansion.terminated() {
        k
    } else {
        k.saturating_sub(1)
    };
    let mut rows = Vec::with_capacity(top);
    let mut t = x.clone();
    for n in 1..=top {
        t = tau_step(&t, table.base())?.1;
        rows.push(bounds_row_at(x, table, expansion, n, &t)?);
    }
    Ok(rows)
}

/// Shared core for one depth: `t` must be the `n`-fold remainder
/// iterate of `x`. The error is computed both by direct subtraction and
/// through the closed form; a mismatch reports an inconsistency.
fn bounds_row_at(
    x: &ExactRational,
    table: &ConvergentTable,
    expansion: &Expansion,
    n: usize,
    t: &ExactRational,
) -> Result<BoundsRow> {
    let row = table.row(n)?;
    let prev = table.row(n - 1)?;
    let error = x - &row.value;
    let power_floor = table.power_sum(n)?;
    let w = table.base().pow(table.digit(n)?.value());
    let den = &row.q * &(&row.q + &(t * &w * &prev.q));
    let signed_t = if n % 2 == 0 { t.clone() } else { -t.clone() };
    let closed = signed_t * &power_floor / den;
    if closed != error {
        return Err(Error::Inconsistency(format!(
            "error computations disagree at depth {n}: direct {error}, closed {closed}"
        )));
    }
    let fib_floor = fibonacci(n as u64);
    let fib_floor_rat = ExactRational::from(fib_floor.clone());
    let power_floor_holds = row.q >= power_floor;
    let fib_floor_holds = row.q >= fib_floor_rat;
    let k = expansion.len();
    let bounds = if n < k {
        let next = table.row(n + 1)?;
        let w_next = table.base().pow(table.digit(n + 1)?.value());
        let m_minus_1 = BigInt::from(table.base().get() - 1);
        let linear = ExactRational::from(m_minus_1.clone());
        let powered = ExactRational::from(m_minus_1.pow((n + 1) as u32));
        let lower_tight = &power_floor / (&row.q * &(&next.q + &(&linear * &w_next * &row.q)));
        let lower_loose = &power_floor / (&row.q * &(&next.q + &(&powered * &w_next * &row.q)));
        let upper_tight = &power_floor / (&row.q * &next.q);
        let upper_coarse = power_floor.clone().max(fib_floor_rat).recip();
        Some(ErrorBounds {
            lower_loose,
            lower_tight,
            upper_tight,
            upper_coarse,
        })
    } else if expansion.terminated() {
        None
    } else {
        return Err(Error::DepthOutOfRange {
            requested: n + 1,
            available: k,
        });
    };
    Ok(BoundsRow {
        depth: n,
        error,
        bounds,
        power_floor,
        fib_floor,
        power_floor_holds,
        fib_floor_holds,
    })
}

/// Exact floor checks on `q_n`: whether `q_n >= m^(b_1+...+b_n)` and
/// whether `q_n >= F_n`. The power floor is expected to hold always;
/// the Fibonacci floor only when all digits through `n` are nonnegative
/// (and `n >= 2`; small depths hold trivially for nonnegative digits).
pub fn q_floors(table: &ConvergentTable, n: usize) -> Result<(bool, bool)> {
    let row = table.row(n)?;
    let power_ok = row.q >= table.power_sum(n)?;
    let fib_ok = row.q >= ExactRational::from(fibonacci(n as u64));
    Ok((power_ok, fib_ok))
}

/// One depth of the convergence diagnostics: a certified enclosure
/// `[abs_error_lo, abs_error_hi]` of `|x - p_n/q_n|` and, when the next
/// convergent exists, the ceiling `1/q_(n+1)` the error must respect.
#[derive(Debug, Clone)]
pub struct DiagnosticsRow {
    pub depth: usize,
    pub abs_error_lo: ExactRational,
    pub abs_error_hi: ExactRational,
    pub ceiling: Option<ExactRational>,
    /// Whether the certified enclosure proves `|error| <= ceiling`.
    pub ceiling_holds: Option<bool>,
}

/// Per-depth certified error enclosures for `input`, up to `depth`
/// digits. Expands one digit past `depth` so every requested row can
/// carry its `1/q_(n+1)` ceiling. For interval inputs the enclosure can
/// be tightened arbitrarily by raising the input precision.
pub fn convergence_diagnostics(
    input: &NumberInput,
    base: Base,
    depth: usize,
) -> Result<Vec<DiagnosticsRow>> {
    if depth == 0 {
        return Ok(Vec::new());
    }
    let expansion = expand(input, base, depth + 1)?;
    let k = expansion.len();
    if k == 0 {
        return Ok(Vec::new());
    }
    let table = ConvergentTable::build_full(expansion.digits(), base)?;
    let mut rows = Vec::new();
    for n in 1..=depth.min(k) {
        let value = &table.row(n)?.value;
        let (abs_error_lo, abs_error_hi) = match input {
            NumberInput::Exact(x) => {
                let e = (x - value).abs();
                (e.clone(), e)
            }
            NumberInput::Approx(iv) => {
                let err = iv.offset(&-value.clone()).abs();
                (err.lo().clone(), err.hi().clone())
            }
        };
        let (ceiling, ceiling_holds) = if n < k {
            let c = table.row(n + 1)?.q.recip();
            let holds = abs_error_hi <= c;
            (Some(c), Some(holds))
        } else {
            (None, None)
        };
        rows.push(DiagnosticsRow {
            depth: n,
            abs_error_lo,
            abs_error_hi,
            ceiling,
            ceiling_holds,
        });
    }
    Ok(rows)
}
