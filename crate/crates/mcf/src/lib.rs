//! Exact arithmetic for base-m continued fractions with digits drawn
//! from `{-1, 0, 1, 2, ...}`:
//!
//! ```text
//! x = m^(-b_1) / (1 + m^(-b_2) / (1 + m^(-b_3) / (1 + ...)))
//! ```
//!
//! The crate extracts digits by exact integer comparison (never by
//! floating-point logarithms), builds the convergents `p_n / q_n`,
//! evaluates the closed error formula and its two-sided bounds, and
//! audits every identity over configurable input grids. Irrational
//! inputs are handled through certified interval enclosures with
//! outward dyadic rounding, so every emitted digit is proven correct.
//!
//! A small statistics companion covers the classical continued fraction
//! (Gauss map) as a baseline plus a seeded, reproducible digit
//! histogram for the base-m remainder map.

pub mod analysis;
pub mod audit;
pub mod base;
pub mod convergents;
pub mod error;
pub mod expansion;
pub mod interval;
pub mod rational;
pub mod stats;

pub use analysis::{
    bounds_sweep, convergence_diagnostics, error_bounds, error_exact, q_floors, BoundsRow,
    DiagnosticsRow, ErrorBounds,
};
pub use audit::{
    audit, grid_inputs, AuditReport, Claim, ClaimResult, ClaimStatus, GridConfig, Witness,
};
pub use base::Base;
pub use convergents::{
    eval_finite, reconstruct_check, reconstruct_value, ConvergentRow, ConvergentTable,
};
pub use error::{Error, Result};
pub use expansion::{
    classify_orbit, digit_b1, expand, tau_iterate, tau_step, Digit, Expansion, NumberInput,
    OrbitClass, Remainder,
};
pub use interval::{interval_from_sqrt, IntervalOrdering, PrecisionInterval};
pub use rational::{cmp_power, fibonacci, make_rational, ExactRational};
pub use stats::{
    default_z_grid, gauss_kuzmin_empirical, gauss_map, mcf_digit_histogram, rcf_eval, rcf_expand,
    seeded_unit_sample, GaussKuzminRow, HistogramBin, HistogramResult, RcfExpansion,
};
