//! Implementations behind each CLI subcommand.
//!
//! Every command parses its value, runs the library, prints one rendered
//! report to stdout, and maps failures onto the exit-code contract:
//! 2 for input errors, 3 when interval precision runs out (after the
//! certified partial output has been printed), 4 when an audit or
//! verification finds a violated identity.

use mcf::{
    audit, bounds_sweep, default_z_grid, error_bounds, expand, gauss_kuzmin_empirical, grid_inputs,
    mcf_digit_histogram, rcf_expand, Base, ConvergentTable, DiagnosticsRow, Error, Expansion,
    GridConfig, NumberInput, PrecisionInterval,
};

use crate::input::{parse_number, parse_rational};
use crate::render::{self};
use crate::{AuditArgs, BoundsArgs, GaussArgs, McfDigitsArgs, RcfArgs, ValueArgs, VerifyArgs};

/// A command failure: `message` goes to stderr, `code` becomes the exit
/// status.
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    fn precision(message: impl Into<String>) -> Self {
        Self {
            code: 3,
            message: message.into(),
        }
    }

    fn violation(message: impl Into<String>) -> Self {
        Self {
            code: 4,
            message: message.into(),
        }
    }
}

fn base_of(raw: u32) -> Result<Base, Failure> {
    Base::new(raw).map_err(|e| Failure::input(e.to_string()))
}

fn lib_err(err: Error) -> Failure {
    Failure::input(err.to_string())
}

/// Expands `args.value`, turning precision exhaustion into a partial
/// expansion plus a deferred failure so callers can print what was
/// certified before exiting with code 3.
fn expand_value(args: &ValueArgs) -> Result<(Base, Expansion, Option<Failure>), Failure> {
    let base = base_of(args.base)?;
    let spec = parse_number(&args.value, base, args.precision).map_err(Failure::input)?;
    let (e, deferred) = expand_spec(&spec, base, args.max_digits)?;
    Ok((base, e, deferred))
}

fn expand_spec(
    spec: &NumberInput,
    base: Base,
    max_digits: usize,
) -> Result<(Expansion, Option<Failure>), Failure> {
    match expand(spec, base, max_digits) {
        Ok(e) => Ok((e, None)),
        Err(Error::PrecisionExhausted { partial }) => {
            let deferred = Failure::precision(format!(
                "precision exhausted after {} certified digits; raise --precision",
                partial.len()
            ));
            Ok((*partial, Some(deferred)))
        }
        Err(other) => Err(lib_err(other)),
    }
}

fn finish(deferred: Option<Failure>) -> Result<(), Failure> {
    match deferred {
        None => Ok(()),
        Some(failure) => Err(failure),
    }
}

pub fn expand_cmd(args: &ValueArgs) -> Result<(), Failure> {
    let (_, e, deferred) = expand_value(args)?;
    print!("{}", render::render_expansion(&e, args.format));
    finish(deferred)
}

pub fn convergents_cmd(args: &ValueArgs) -> Result<(), Failure> {
    let (base, e, deferred) = expand_value(args)?;
    let table = ConvergentTable::build_full(e.digits(), base).map_err(lib_err)?;
    print!("{}", render::render_convergents(&e, &table, args.format));
    finish(deferred)
}

pub fn bounds_cmd(args: &BoundsArgs) -> Result<(), Failure> {
    let v = &args.value;
    let base = base_of(v.base)?;
    let spec = parse_number(&v.value, base, v.precision).map_err(Failure::input)?;
    let (e, deferred) = expand_spec(&spec, base, v.max_digits)?;
    let table = ConvergentTable::build_full(e.digits(), base).map_err(lib_err)?;
    match &spec {
        NumberInput::Exact(x) => {
            let rows = match args.n {
                Some(n) => vec![error_bounds(&table, &e, n).map_err(lib_err)?],
                None => bounds_sweep(x, &e, &table).map_err(lib_err)?,
            };
            print!("{}", render::render_bounds_exact(&e, &rows, v.format));
            finish(deferred)
        }
        NumberInput::Approx(iv) => {
            let depths: Vec<usize> = match args.n {
                Some(n) => {
                    if n == 0 || n > e.len() {
                        return Err(Failure::input(format!(
                            "depth {n} is outside the {} certified digits",
                            e.len()
                        )));
                    }
                    vec![n]
                }
                None => (1..=e.len()).collect(),
            };
            let rows = certified_rows(iv, &e, &table, &depths);
            print!("{}", render::render_bounds_certified(&e, &rows, v.format));
            finish(deferred)
        }
    }
}

/// Certified error enclosures for an interval input: per depth, the
/// interval `|x - p_n/q_n|` over all `x` in the input enclosure, and the
/// `1/q_(n+1)` ceiling wherever the next convergent is available.
fn certified_rows(
    iv: &PrecisionInterval,
    e: &Expansion,
    table: &ConvergentTable,
    depths: &[usize],
) -> Vec<DiagnosticsRow> {
    depths
        .iter()
        .map(|&n| {
            let row = table.row(n).expect("depth within table");
            let err = iv.offset(&(-row.value.clone())).abs();
            let (ceiling, ceiling_holds) = if n < e.len() {
                let next = table.row(n + 1).expect("next depth within table");
                let ceiling = next.q.recip();
                let holds = *err.hi() <= ceiling;
                (Some(ceiling), Some(holds))
            } else {
                (None, None)
            };
            DiagnosticsRow {
                depth: n,
                abs_error_lo: err.lo().clone(),
                abs_error_hi: err.hi().clone(),
                ceiling,
                ceiling_holds,
            }
        })
        .collect()
}

pub fn verify_cmd(args: &VerifyArgs) -> Result<(), Failure> {
    let base = base_of(args.base)?;
    let spec = parse_number(&args.value, base, args.precision).map_err(Failure::input)?;
    let report = audit(&[spec], &[base], args.max_digits);
    print!("{}", render::render_audit(&report, "verify", args.format));
    if report.any_violation() {
        Err(Failure::violation("verification found violated identities"))
    } else {
        Ok(())
    }
}

pub fn audit_cmd(args: &AuditArgs) -> Result<(), Failure> {
    let mut bases = Vec::with_capacity(args.bases.len());
    for &m in &args.bases {
        bases.push(base_of(m)?);
    }
    let max_value = bases.iter().map(|b| b.get()).max().unwrap_or(2) - 1;
    let config = GridConfig {
        max_value,
        exhaustive_q: args.grid_q,
        random_samples: args.samples,
        random_q_cap: 1_000_000,
        seed: args.seed,
    };
    let inputs = grid_inputs(&config);
    let report = audit(&inputs, &bases, args.max_digits);
    print!("{}", render::render_audit(&report, "audit", args.format));
    if report.any_violation() {
        Err(Failure::violation("audit found violated identities"))
    } else {
        Ok(())
    }
}

pub fn gauss_kuzmin_cmd(args: &GaussArgs) -> Result<(), Failure> {
    let rows = gauss_kuzmin_empirical(args.samples, args.n, &default_z_grid(), args.seed);
    print!(
        "{}",
        render::render_gauss(&rows, args.n, args.seed, args.format)
    );
    Ok(())
}

pub fn mcf_digits_cmd(args: &McfDigitsArgs) -> Result<(), Failure> {
    let base = base_of(args.base)?;
    let h = mcf_digit_histogram(base, args.samples, args.depth, args.seed, args.digit_cap);
    print!("{}", render::render_histogram(&h, args.format));
    Ok(())
}

pub fn rcf_cmd(args: &RcfArgs) -> Result<(), Failure> {
    let value = parse_rational(&args.value).map_err(Failure::input)?;
    let e = rcf_expand(&value, args.max_digits).map_err(lib_err)?;
    print!("{}", render::render_rcf(&e, args.format));
    Ok(())
}
