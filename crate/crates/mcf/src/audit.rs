use num_integer::Integer;
use num_traits::Signed;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::base::Base;
use crate::convergents::ConvergentTable;
use crate::error::Error;
use crate::expansion::{classify_orbit, expand, tau_step, Expansion, NumberInput, OrbitClass};
use crate::rational::{fibonacci, make_rational, ExactRational};

/// Maximum number of witnesses retained per claim and per failure kind;
/// counts keep accumulating past the cap.
pub const WITNESS_CAP: usize = 25;

/// The identities and inequalities the auditor checks, named by content.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Claim {
    DeterminantIdentity,
    TailReconstruction,
    ErrorFormula,
    ErrorSandwich,
    CoarseUpperBound,
    PowerFloor,
    FibonacciFloor,
}

impl Claim {
    pub const ALL: [Claim; 7] = [
        Claim::DeterminantIdentity,
        Claim::TailReconstruction,
        Claim::ErrorFormula,
        Claim::ErrorSandwich,
        Claim::CoarseUpperBound,
        Claim::PowerFloor,
        Claim::FibonacciFloor,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Claim::DeterminantIdentity => "determinant-identity",
            Claim::TailReconstruction => "tail-reconstruction",
            Claim::ErrorFormula => "error-formula",
            Claim::ErrorSandwich => "error-sandwich",
            Claim::CoarseUpperBound => "coarse-upper-bound",
            Claim::PowerFloor => "denominator-power-floor",
            Claim::FibonacciFloor => "denominator-fibonacci-floor",
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            Claim::DeterminantIdentity => "p[n] q[n+1] - p[n+1] q[n] = (-1)^(n+1) m^(b1+...+bn)",
            Claim::TailReconstruction => {
                "x = (p[n] + t m^(bn) p[n-1]) / (q[n] + t m^(bn) q[n-1]) \
                 with t the n-fold remainder iterate of x"
            }
            Claim::ErrorFormula => {
                "x - p[n]/q[n] = (-1)^n t m^(b1+...+bn) / (q[n] (q[n] + t m^(bn) q[n-1]))"
            }
            Claim::ErrorSandwich => {
                "lower bounds < |x - p[n]/q[n]| <= m^(b1+...+bn) / (q[n] q[n+1]) \
                 at non-terminated depths"
            }
            Claim::CoarseUpperBound => "|x - p[n]/q[n]| < 1 / max(F[n], m^(b1+...+bn))",
            Claim::PowerFloor => "q[n] >= m^(b1+...+bn)",
            Claim::FibonacciFloor => "q[n] >= F[n]",
        }
    }

    /// The digit-sign condition under which a conditional claim is
    /// asserted; `None` for unconditional claims.
    pub fn condition(self) -> Option<&'static str> {
        match self {
            Claim::CoarseUpperBound | Claim::FibonacciFloor => {
                Some("all digits b1..bn are nonnegative")
            }
            _ => None,
        }
    }

    pub fn is_conditional(self) -> bool {
        self.condition().is_some()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClaimStatus {
    Verified,
    ConditionallyVerified,
    Violated,
}

impl ClaimStatus {
    pub fn label(self) -> &'static str {
        match self {
            ClaimStatus::Verified => "verified",
            ClaimStatus::ConditionallyVerified => "conditionally-verified",
            ClaimStatus::Violated => "violated",
        }
    }
}

/// Replayable record of one failing (or otherwise notable) instance.
#[derive(Debug, Clone)]
pub struct Witness {
    pub base: u32,
    pub input: String,
    pub digits: Vec<i64>,
    pub depth: usize,
    pub detail: String,
}

/// Aggregate outcome for one claim across the whole sweep.
///
/// `violations` counts failures with the claim's condition satisfied
/// (or any failure of an unconditional claim); these flip the status to
/// `Violated`. `counterexamples` counts failures of a conditional claim
/// outside its condition; they are expected findings and leave the
/// status at `ConditionallyVerified`.
#[derive(Debug, Clone)]
pub struct ClaimResult {
    pub claim: Claim,
    pub status: ClaimStatus,
    pub checked: u64,
    pub violations: u64,
    pub counterexamples: u64,
    pub violation_witnesses: Vec<Witness>,
    pub counterexample_witnesses: Vec<Witness>,
}

/// Full audit outcome: one entry per claim, plus expansions that hit
/// the digit cap without terminating (a distinguished finding, since
/// termination of every rational is asserted but not bounded).
#[derive(Debug, Clone)]
pub struct AuditReport {
    pub entries: Vec<ClaimResult>,
    pub bases: Vec<u32>,
    pub inputs_checked: u64,
    pub depth_cap: usize,
    pub cap_hit_count: u64,
    pub cap_hits: Vec<Witness>,
}

impl AuditReport {
    pub fn any_violation(&self) -> bool {
        self.entries
            .iter()
            .any(|e| e.status == ClaimStatus::Violated)
    }

    pub fn entry(&self, claim: Claim) -> Option<&ClaimResult> {
        self.entries.iter().find(|e| e.claim == claim)
    }
}

#[derive(Default)]
struct ClaimAcc {
    checked: u64,
    violations: u64,
    counterexamples: u64,
    violation_witnesses: Vec<Witness>,
    counterexample_witnesses: Vec<Witness>,
}

#[derive(Default)]
struct AuditAcc {
    accs: [ClaimAcc; 7],
    inputs_checked: u64,
    cap_hit_count: u64,
    cap_hits: Vec<Witness>,
}

impl AuditAcc {
    fn record(
        &mut self,
        claim: Claim,
        ok: bool,
        condition_met: bool,
        witness: impl FnOnce() -> Witness,
    ) {
        let acc = &mut self.accs[Claim::ALL.iter().position(|&c| c == claim).unwrap()];
        acc.checked += 1;
        if ok {
            return;
        }
        if claim.is_conditional() && !condition_met {
            acc.counterexamples += 1;
            if acc.counterexample_witnesses.len() < WITNESS_CAP {
                acc.counterexample_witnesses.push(witness());
            }
        } else {
            acc.violations += 1;
            if acc.violation_witnesses.len() < WITNESS_CAP {
                acc.violation_witnesses.push(witness());
            }
        }
    }

    fn cap_hit(&mut self, witness: Witness) {
        self.cap_hit_count += 1;
        if self.cap_hits.len() < WITNESS_CAP {
            self.cap_hits.push(witness);
        }
    }

    fn finish(self, bases: &[Base], depth_cap: usize) -> AuditReport {
        let entries = if self.inputs_checked == 0 {
            Vec::new()
        } else {
            Claim::ALL
                .iter()
                .zip(self.accs)
                .map(|(&claim, acc)| {
                    let status = if acc.violations > 0 {
                        ClaimStatus::Violated
                    } else if claim.is_conditional() {
                        ClaimStatus::ConditionallyVerified
                    } else {
                        ClaimStatus::Verified
                    };
                    ClaimResult {
                        claim,
                        status,
                        checked: acc.checked,
                        violations: acc.violations,
                        counterexamples: acc.counterexamples,
                        violation_witnesses: acc.violation_witnesses,
                        counterexample_witnesses: acc.counterexample_witnesses,
                    }
                })
                .collect()
        };
        AuditReport {
            entries,
            bases: bases.iter().map(|b| b.get()).collect(),
            inputs_checked: self.inputs_checked,
            depth_cap,
            cap_hit_count: self.cap_hit_count,
            cap_hits: self.cap_hits,
        }
    }
}

/// Sweeps every claim over the cartesian product of `inputs` and
/// `bases`. Inputs outside `[0, m-1]` are skipped for that base. An
/// empty sweep yields a report with no entries.
pub fn audit(inputs: &[NumberInput], bases: &[Base], depth_cap: usize) -> AuditReport {
    let mut acc = AuditAcc::default();
    for &base in bases {
        for input in inputs {
            audit_one(input, base, depth_cap, &mut acc);
        }
    }
    acc.finish(bases, depth_cap)
}

/// Probe budget for explaining a cap hit: enough steps to catch every
/// cycle seen in practice, with a size guard that cuts growing orbits
/// off early.
const PROBE_STEP_CAP: usize = 2000;
const PROBE_SIZE_BITS: u64 = 128;

/// Explains why a rational ran past the digit cap, by classifying its
/// remainder orbit with a bounded probe.
fn cap_hit_detail(x: &ExactRational, base: Base, depth_cap: usize) -> String {
    match classify_orbit(x, base, PROBE_STEP_CAP.max(depth_cap), PROBE_SIZE_BITS) {
        Ok(OrbitClass::Terminates { digits }) => {
            format!("terminates after {digits} digits, beyond the cap of {depth_cap}")
        }
        Ok(OrbitClass::EventuallyPeriodic { transient, period }) => format!(
            "remainder orbit cycles (transient {transient}, period {period}); \
             the expansion never terminates"
        ),
        Ok(OrbitClass::Undecided { steps }) => {
            format!("no termination or cycle within a {steps}-step probe")
        }
        Err(_) => format!("rational did not terminate within {depth_cap} digits"),
    }
}

fn audit_one(input: &NumberInput, base: Base, depth_cap: usize, acc: &mut AuditAcc) {
    match input {
        NumberInput::Exact(x) => {
            if x.is_negative() || x > &base.range_end() {
                return;
            }
            let expansion = match expand(input, base, depth_cap) {
                Ok(e) => e,
                Err(_) => return,
            };
            acc.inputs_checked += 1;
            let label = x.to_string();
            if !expansion.terminated() {
                // Classify only witnesses that will actually be stored;
                // the probe is cheap but the count alone needs none of it.
                let detail = if acc.cap_hits.len() < WITNESS_CAP {
                    cap_hit_detail(x, base, depth_cap)
                } else {
                    String::new()
                };
                acc.cap_hit(Witness {
                    base: base.get(),
                    input: label.clone(),
                    digits: Vec::new(),
                    depth: expansion.len(),
                    detail,
                });
            }
            if expansion.is_empty() {
                return;
            }
            let table = match ConvergentTable::build_full(expansion.digits(), base) {
                Ok(t) => t,
                Err(_) => return,
            };
            audit_digit_claims(&label, &table, base, acc);
            audit_value_claims(x, &label, &expansion, &table, base, acc);
        }
        NumberInput::Approx(iv) => {
            if iv.lo().is_negative() || iv.hi() > &base.range_end() {
                return;
            }
            let expansion = match expand(input, base, depth_cap) {
                Ok(e) => e,
                Err(Error::PrecisionExhausted { partial }) => *partial,
                Err(_) => return,
            };
            acc.inputs_checked += 1;
            if expansion.is_empty() {
                return;
            }
            // Interval inputs have certified digits but no exact value,
            // so only the digit-level claims apply.
            let table = match ConvergentTable::build_full(expansion.digits(), base) {
                Ok(t) => t,
                Err(_) => return,
            };
            audit_digit_claims(&iv.to_string(), &table, base, acc);
        }
    }
}

/// Claims about the digit sequence alone: the determinant identity and
/// the two denominator floors.
fn audit_digit_claims(label: &str, table: &ConvergentTable, base: Base, acc: &mut AuditAcc) {
    let digits: Vec<i64> = table.digits().iter().map(|d| d.value()).collect();
    let k = digits.len();
    let mut prefix_nonneg = true;
    for n in 0..=k {
        if n >= 1 && digits[n - 1] < 0 {
            prefix_nonneg = false;
        }
        let row = table.row(n).expect("row within table depth");
        let power_floor = table.power_sum(n).expect("digit sum within range");
        acc.record(Claim::PowerFloor, row.q >= power_floor, true, || Witness {
            base: base.get(),
            input: label.to_string(),
            digits: digits.clone(),
            depth: n,
            detail: format!(
                "q_{n} = {} < m^(b1+...+b{n}) = {}",
                row.q,
                table.power_sum(n).unwrap()
            ),
        });
        let fib = fibonacci(n as u64);
        let fib_ok = row.q >= ExactRational::from(fib.clone());
        acc.record(Claim::FibonacciFloor, fib_ok, prefix_nonneg, || Witness {
            base: base.get(),
            input: label.to_string(),
            digits: digits.clone(),
            depth: n,
            detail: format!("q_{n} = {} < F_{n} = {}", row.q, fib),
        });
        if n < k {
            let det = table.determinant(n).expect("rows n and n+1 exist");
            let expected = table
                .determinant_expected(n)
                .expect("digits through n exist");
            acc.record(Claim::DeterminantIdentity, det == expected, true, || {
                Witness {
                    base: base.get(),
                    input: label.to_string(),
                    digits: digits.clone(),
                    depth: n,
                    detail: format!("determinant {det} != expected {expected}"),
                }
            });
        }
    }
}

/// Claims that need the exact value: reconstruction through the tail,
/// the closed error formula, and the error bounds.
fn audit_value_claims(
    x: &ExactRational,
    label: &str,
    expansion: &Expansion,
    table: &ConvergentTable,
    base: Base,
    acc: &mut AuditAcc,
) {
    let digits: Vec<i64> = expansion.digit_values();
    let k = expansion.len();
    let witness = |depth: usize, detail: String| Witness {
        base: base.get(),
        input: label.to_string(),
        digits: digits.clone(),
        depth,
        detail,
    };

    // remainder iterates t_n = tau^n(x), computed once
    let mut trace = Vec::with_capacity(k);
    let mut r = x.clone();
    for _ in 0..k {
        match tau_step(&r, base) {
            Ok((_, next)) => {
                trace.push(next.clone());
                r = next;
            }
            Err(_) => return,
        }
    }

    let mut prefix_nonneg = true;
    let mut digit_sum: i64 = 0;
    for n in 1..=k {
        let b_n = digits[n - 1];
        if b_n < 0 {
            prefix_nonneg = false;
        }
        digit_sum += b_n;
        let t = &trace[n - 1];
        let row = table.row(n).expect("row within depth");
        let prev = table.row(n - 1).expect("row within depth");
        let w = base.pow(b_n);
        let m_sum = base.pow(digit_sum);

        let rebuilt = table.moebius_with_tail(n, t).ok();
        acc.record(
            Claim::TailReconstruction,
            rebuilt.as_ref() == Some(x),
            true,
            || {
                witness(
                    n,
                    format!(
                        "tail form with t = {t} gives {}, expected {x}",
                        rebuilt
                            .as_ref()
                            .map(|v| v.to_string())
                            .unwrap_or_else(|| "no value".into())
                    ),
                )
            },
        );

        let direct = x - &row.value;
        let den = &row.q * &(&row.q + &(t * &w * &prev.q));
        let signed_t = if n % 2 == 0 { t.clone() } else { -t.clone() };
        let closed = signed_t * &m_sum / den;
        acc.record(Claim::ErrorFormula, closed == direct, true, || {
            witness(n, format!("direct error {direct} but closed form {closed}"))
        });

        let abs = direct.abs();
        if n < k {
            let next = table.row(n + 1).expect("row within depth");
            let w_next = base.pow(digits[n]);
            let linear = ExactRational::from(num_bigint::BigInt::from(base.get() - 1));
            let powered =
                ExactRational::from(num_bigint::BigInt::from(base.get() - 1).pow((n + 1) as u32));
            let lower_tight = &m_sum / (&row.q * &(&next.q + &(&linear * &w_next * &row.q)));
            let lower_loose = &m_sum / (&row.q * &(&next.q + &(&powered * &w_next * &row.q)));
            let upper_tight = &m_sum / (&row.q * &next.q);
            let sandwich_ok = lower_loose <= lower_tight && lower_tight < abs && abs <= upper_tight;
            acc.record(Claim::ErrorSandwich, sandwich_ok, true, || {
                witness(
                    n,
                    format!(
                        "|error| = {abs} not inside ({lower_tight}, {upper_tight}] \
                         (loose lower {lower_loose})"
                    ),
                )
            });
        }

        let coarse = m_sum.max(ExactRational::from(fibonacci(n as u64))).recip();
        acc.record(Claim::CoarseUpperBound, abs < coarse, prefix_nonneg, || {
            witness(n, format!("|error| = {abs} >= coarse bound {coarse}"))
        });
    }
}

/// Deterministic input grid for audits: every reduced `p/q` with
/// `q <= exhaustive_q` and `p/q <= max_value`, plus `random_samples`
/// seeded random rationals with denominators up to `random_q_cap`.
#[derive(Debug, Clone)]
pub struct GridConfig {
    pub max_value: u32,
    pub exhaustive_q: u64,
    pub random_samples: u64,
    pub random_q_cap: u64,
    pub seed: u64,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self {
            max_value: 9,
            exhaustive_q: 60,
            random_samples: 10_000,
            random_q_cap: 1_000_000,
            seed: 0,
        }
    }
}

pub fn grid_inputs(config: &GridConfig) -> Vec<NumberInput> {
    let mut out = Vec::new();
    for q in 1..=config.exhaustive_q {
        for p in 1..=(config.max_value as u64).saturating_mul(q) {
            if p.gcd(&q) == 1 {
                out.push(NumberInput::Exact(make_rational(p, q).expect("q >= 1")));
            }
        }
    }
    if config.random_samples > 0 && config.random_q_cap >= 2 && config.max_value >= 1 {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        for _ in 0..config.random_samples {
            let q = 2 + rng.next_u64() % (config.random_q_cap - 1);
            let p = 1 + rng.next_u64() % (config.max_value as u64 * q);
            out.push(NumberInput::Exact(make_rational(p, q).expect("q >= 2")));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::interval_from_sqrt;

    fn bases(ms: &[u32]) -> Vec<Base> {
        ms.iter().map(|&m| Base::new(m).unwrap()).collect()
    }

    fn small_grid() -> Vec<NumberInput> {
        grid_inputs(&GridConfig {
            max_value: 2,
            exhaustive_q: 25,
            random_samples: 0,
            random_q_cap: 2,
            seed: 0,
        })
    }

    #[test]
    fn empty_sweep_produces_empty_report() {
        let report = audit(&[], &bases(&[2, 3]), 100);
        assert!(report.entries.is_empty());
        assert_eq!(report.inputs_checked, 0);
        assert!(!report.any_violation());
    }

    #[test]
    fn cap_hit_witnesses_explain_the_orbit() {
        let five = bases(&[5]);
        let x = |p, q| NumberInput::Exact(make_rational::<i64, i64>(p, q).unwrap());

        // 2 in base 5 cycles, so the cap hit comes with a proof of
        // non-termination
        let report = audit(&[x(2, 1)], &five, 24);
        assert_eq!(report.cap_hit_count, 1);
        assert!(
            report.cap_hits[0].detail.contains("cycles"),
            "{}",
            report.cap_hits[0].detail
        );

        // 7/5 in base 5 terminates at depth 22, just past a cap of 10
        let report = audit(&[x(7, 5)], &five, 10);
        assert_eq!(report.cap_hit_count, 1);
        assert!(
            report.cap_hits[0]
                .detail
                .contains("terminates after 22 digits"),
            "{}",
            report.cap_hits[0].detail
        );

        // 2 in base 7 grows without ever revisiting a value
        let report = audit(&[x(2, 1)], &bases(&[7]), 24);
        assert_eq!(report.cap_hit_count, 1);
        assert!(
            report.cap_hits[0].detail.contains("probe"),
            "{}",
            report.cap_hits[0].detail
        );
    }

    #[test]
    fn small_exhaustive_grid_verifies_all_unconditional_claims() {
        let report = audit(&small_grid(), &bases(&[2, 3]), 1000);
        assert!(report.inputs_checked > 0);
        assert_eq!(report.cap_hit_count, 0);
        for claim in [
            Claim::DeterminantIdentity,
            Claim::TailReconstruction,
            Claim::ErrorFormula,
            Claim::ErrorSandwich,
            Claim::PowerFloor,
        ] {
            let entry = report.entry(claim).unwrap();
            assert_eq!(entry.status, ClaimStatus::Verified, "{}", claim.label());
            assert!(entry.checked > 0, "{}", claim.label());
            assert_eq!(entry.violations, 0, "{}", claim.label());
        }
        assert!(!report.any_violation());
    }

    #[test]
    fn fibonacci_floor_is_conditional_with_recorded_counterexample() {
        let inputs = vec![NumberInput::Exact(
            crate::rational::make_rational(2, 5).unwrap(),
        )];
        let report = audit(&inputs, &bases(&[3]), 100);
        let entry = report.entry(Claim::FibonacciFloor).unwrap();
        assert_eq!(entry.status, ClaimStatus::ConditionallyVerified);
        assert!(entry.counterexamples >= 1);
        let w = entry
            .counterexample_witnesses
            .iter()
            .find(|w| w.digits == vec![0, -1, 0] && w.depth == 3)
            .expect("the 2/5 base 3 counterexample is recorded");
        assert_eq!(w.base, 3);
        assert_eq!(w.input, "2/5");
        assert!(w.detail.contains("5/3"), "detail: {}", w.detail);
        assert!(!report.any_violation());
    }

    #[test]
    fn coarse_upper_bound_counterexample_has_negative_digit() {
        // 3/2 in base 3 has |error| = 3/2 at depth 1, above the coarse bound 1
        let inputs = vec![NumberInput::Exact(
            crate::rational::make_rational(3, 2).unwrap(),
        )];
        let report = audit(&inputs, &bases(&[3]), 100);
        let entry = report.entry(Claim::CoarseUpperBound).unwrap();
        assert_eq!(entry.status, ClaimStatus::ConditionallyVerified);
        assert!(entry.counterexamples >= 1);
        assert!(entry.counterexample_witnesses[0].digits.contains(&-1));
        assert!(!report.any_violation());
    }

    #[test]
    fn interval_inputs_contribute_digit_level_checks() {
        let iv = interval_from_sqrt(2, 256).offset(&crate::rational::make_rational(-1, 1).unwrap());
        let report = audit(&[NumberInput::Approx(iv)], &bases(&[2]), 20);
        assert_eq!(report.inputs_checked, 1);
        let det = report.entry(Claim::DeterminantIdentity).unwrap();
        assert!(det.checked > 0);
        assert_eq!(det.status, ClaimStatus::Verified);
        // value-level claims have nothing to check on interval inputs
        assert_eq!(report.entry(Claim::ErrorFormula).unwrap().checked, 0);
    }

    #[test]
    fn grid_is_deterministic_and_reduced() {
        let cfg = GridConfig {
            random_samples: 50,
            ..GridConfig::default()
        };
        let a = grid_inputs(&cfg);
        let b = grid_inputs(&cfg);
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            match (x, y) {
                (NumberInput::Exact(x), NumberInput::Exact(y)) => assert_eq!(x, y),
                _ => panic!("grid holds exact rationals only"),
            }
        }
    }
}
