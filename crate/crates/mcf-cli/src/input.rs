//! Parsing of command-line number values.
//!
//! Accepted forms: integer literals, fractions `p/q`, decimal literals
//! (read exactly, so `0.3` is `3/10`), and `sqrt(n)`, which needs an
//! explicit `--precision` and produces a certified interval enclosure.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use mcf::{cmp_power, interval_from_sqrt, Base, ExactRational, NumberInput};

/// Parses `text` and checks it against the expansion domain `[0, m]`.
pub fn parse_number(text: &str, base: Base, precision: Option<u32>) -> Result<NumberInput, String> {
    let s = text.trim();
    if let Some(arg) = s.strip_prefix("sqrt(").and_then(|r| r.strip_suffix(')')) {
        let n: u64 = arg
            .trim()
            .parse()
            .map_err(|_| format!("invalid sqrt argument '{}'", arg.trim()))?;
        let precision = precision.ok_or("sqrt input requires --precision")?;
        let iv = interval_from_sqrt(n, precision);
        if cmp_power(iv.hi(), base, 1) == Ordering::Greater {
            return Err(format!(
                "sqrt({n}) exceeds the expansion domain [0, {}] for base {}",
                base.get(),
                base.get()
            ));
        }
        return Ok(NumberInput::Approx(iv));
    }
    let value = parse_rational(s)?;
    if value.is_negative() || cmp_power(&value, base, 1) == Ordering::Greater {
        return Err(format!(
            "value {value} is outside the expansion domain [0, {}] for base {}",
            base.get(),
            base.get()
        ));
    }
    Ok(NumberInput::Exact(value))
}

/// Parses an exact rational: integer, `p/q`, or decimal literal.
pub fn parse_rational(s: &str) -> Result<ExactRational, String> {
    if s.is_empty() {
        return Err("empty number".to_string());
    }
    if let Some((p, q)) = s.split_once('/') {
        let num = parse_int(p.trim())?;
        let den = parse_int(q.trim())?;
        if den.is_zero() {
            return Err(format!("zero denominator in '{s}'"));
        }
        return Ok(ExactRational::new(num, den));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let (sign, int_digits) = match int_part.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, int_part.strip_prefix('+').unwrap_or(int_part)),
        };
        if !frac_part.chars().all(|c| c.is_ascii_digit()) || frac_part.is_empty() {
            return Err(format!("invalid decimal literal '{s}'"));
        }
        let whole = if int_digits.is_empty() {
            BigInt::zero()
        } else {
            parse_int(int_digits)?
        };
        let frac = parse_int(frac_part)?;
        let scale = BigInt::from(10).pow(frac_part.len() as u32);
        let value = ExactRational::new(whole * &scale + frac, scale);
        return Ok(if sign < 0 { -value } else { value });
    }
    Ok(ExactRational::from(parse_int(s)?))
}

fn parse_int(s: &str) -> Result<BigInt, String> {
    s.parse().map_err(|_| format!("invalid integer '{s}'"))
}
