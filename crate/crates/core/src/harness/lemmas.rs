//! Lemma-level property checks aggregated into one pass/fail summary.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::characters::{enumerate_fundamental_discriminants, QuadraticCharacter};
use crate::lfun::{find_real_zeros, l1_explicit_bound, l_value_real};
use crate::mellin::{inverse_mellin_exp, ContourSpec};
use crate::special::{
    gamma_with, stirling_decay_ratio, zeta_real, zeta_via_fractional_part_integral, Lanczos,
};

use super::HarnessError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LemmaCheck {
    GammaRecurrence,
    GammaDecay,
    MellinIdentity,
    ZetaNegativity,
    L1Bound,
    Positivity,
}

impl LemmaCheck {
    pub const ALL: [LemmaCheck; 6] = [
        LemmaCheck::GammaRecurrence,
        LemmaCheck::GammaDecay,
        LemmaCheck::MellinIdentity,
        LemmaCheck::ZetaNegativity,
        LemmaCheck::L1Bound,
        LemmaCheck::Positivity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LemmaCheck::GammaRecurrence => "gamma-recurrence",
            LemmaCheck::GammaDecay => "gamma-decay",
            LemmaCheck::MellinIdentity => "mellin-identity",
            LemmaCheck::ZetaNegativity => "zeta-negativity",
            LemmaCheck::L1Bound => "l1-bound",
            LemmaCheck::Positivity => "positivity",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == name)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LemmaConfig {
    pub checks: Vec<LemmaCheck>,
    /// Approximation used by the recurrence check only.
    pub lanczos: Lanczos,
    pub seed: u64,
    pub recurrence_samples: usize,
    pub l1_bound_limit: u64,
    pub positivity_limit: u64,
    pub zero_scan_limit: u64,
    pub zero_scan_step: f64,
    pub jobs: Option<usize>,
}

impl Default for LemmaConfig {
    fn default() -> Self {
        LemmaConfig {
            checks: LemmaCheck::ALL.to_vec(),
            lanczos: Lanczos::STANDARD,
            seed: 0x5eed,
            recurrence_samples: 500,
            l1_bound_limit: 1_000,
            positivity_limit: 10_000,
            zero_scan_limit: 100,
            zero_scan_step: 5e-3,
            jobs: None,
        }
    }
}

impl LemmaConfig {
    pub fn empty() -> Self {
        LemmaConfig {
            checks: Vec::new(),
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub cases: usize,
    /// Worst observed deviation, in the units of the check's tolerance.
    pub worst: f64,
    pub tolerance: f64,
    pub detail: String,
    /// Wall time; kept out of serialized reports so they stay reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteStatus {
    Passed,
    Failed,
    Empty,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaSuiteReport {
    pub status: SuiteStatus,
    pub total: usize,
    pub passed: usize,
    pub checks: Vec<CheckOutcome>,
}

struct Tally {
    cases: usize,
    worst: f64,
    worst_at: String,
}

impl Tally {
    fn new() -> Self {
        Tally {
            cases: 0,
            worst: 0.0,
            worst_at: String::new(),
        }
    }

    fn record(&mut self, deviation: f64, at: impl FnOnce() -> String) {
        self.cases += 1;
        // NaN counts as the worst possible deviation
        if !(deviation <= self.worst) {
            self.worst = if deviation.is_nan() {
                f64::INFINITY
            } else {
                deviation
            };
            self.worst_at = at();
        }
    }

    fn finish(self, name: &'static str, tolerance: f64) -> CheckOutcome {
        let passed = self.cases > 0 && self.worst <= tolerance;
        let detail = if self.worst_at.is_empty() {
            format!("{} cases", self.cases)
        } else {
            format!(
                "{} cases, worst {:e} at {}",
                self.cases, self.worst, self.worst_at
            )
        };
        CheckOutcome {
            name,
            passed,
            cases: self.cases,
            worst: self.worst,
            tolerance,
            detail,
            elapsed: Duration::ZERO,
        }
    }
}

fn distance_to_pole(s: Complex64) -> f64 {
    if s.re > 0.5 {
        return f64::INFINITY;
    }
    let nearest = s.re.round().min(0.0);
    (s - Complex64::new(nearest, 0.0)).norm()
}

fn gamma_recurrence(config: &LemmaConfig) -> Result<CheckOutcome, HarnessError> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut tally = Tally::new();
    let mut drawn = 0;
    while drawn < config.recurrence_samples {
        let s = Complex64::new(rng.gen_range(-50.0..50.0), rng.gen_range(-50.0..50.0));
        if s.norm() > 50.0 || distance_to_pole(s) < 0.1 || distance_to_pole(s + 1.0) < 0.1 {
            continue;
        }
        drawn += 1;
        let lhs = gamma_with(&config.lanczos, s + 1.0)?.value;
        let rhs = s * gamma_with(&config.lanczos, s)?.value;
        tally.record((lhs - rhs).norm() / rhs.norm(), || format!("s = {s}"));
    }
    for k in 1..100 {
        let x = k as f64 / 100.0;
        let g = |v: f64| gamma_with(&config.lanczos, Complex64::new(v, 0.0)).map(|r| r.value.re);
        let product = g(x)? * g(1.0 - x)? * (PI * x).sin() / PI;
        // reflection is held to 1e-9; scale so one tolerance covers both
        tally.record((product - 1.0).abs() * 0.1, || format!("reflection at {x}"));
    }
    Ok(tally.finish(LemmaCheck::GammaRecurrence.name(), 1e-10))
}

pub const DECAY_SIGMAS: [f64; 6] = [-1.0, 0.0, 0.5, 1.0, 2.0, 3.0];
pub const DECAY_HEIGHTS: [f64; 3] = [10.0, 20.0, 50.0];
pub const DECAY_BAND: (f64, f64) = (2.3, 2.7);

fn gamma_decay() -> Result<CheckOutcome, HarnessError> {
    let mut tally = Tally::new();
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for &sigma in &DECAY_SIGMAS {
        for &t in &DECAY_HEIGHTS {
            let r = stirling_decay_ratio(sigma, t)?;
            lo = lo.min(r);
            hi = hi.max(r);
            let outside = (DECAY_BAND.0 - r).max(r - DECAY_BAND.1).max(0.0);
            tally.record(outside, || format!("sigma = {sigma}, t = {t} (ratio {r})"));
        }
    }
    let mut outcome = tally.finish(LemmaCheck::GammaDecay.name(), 0.0);
    outcome.detail = format!("{}, ratios in [{lo}, {hi}]", outcome.detail);
    Ok(outcome)
}

pub const MELLIN_YS: [f64; 6] = [0.1, 0.5, 1.0, 2.0, 5.0, 10.0];

fn mellin_identity() -> Result<CheckOutcome, HarnessError> {
    let spec = ContourSpec::new(2.0, 40.0, 0.01)?;
    let mut tally = Tally::new();
    for &y in &MELLIN_YS {
        let r = inverse_mellin_exp(y, &spec)?;
        tally.record((r.value - (-y).exp()).abs(), || format!("y = {y}"));
    }
    Ok(tally.finish(LemmaCheck::MellinIdentity.name(), 1e-6))
}

fn zeta_negativity() -> Result<CheckOutcome, HarnessError> {
    let mut tally = Tally::new();
    let mut positive = None;
    for k in 1..20 {
        let sigma = k as f64 * 0.05;
        let a = zeta_real(sigma)?.value;
        let b = zeta_via_fractional_part_integral(sigma)?.value;
        if !(a < 0.0 && b < 0.0) && positive.is_none() {
            positive = Some(sigma);
        }
        tally.record((a - b).abs(), || format!("sigma = {sigma}"));
    }
    let mut outcome = tally.finish(LemmaCheck::ZetaNegativity.name(), 1e-9);
    if let Some(sigma) = positive {
        outcome.passed = false;
        outcome.detail = format!("zeta({sigma}) is not negative; {}", outcome.detail);
    }
    Ok(outcome)
}

fn l1_bound(config: &LemmaConfig) -> Result<CheckOutcome, HarnessError> {
    let ds = enumerate_fundamental_discriminants(config.l1_bound_limit)?;
    let excess = super::with_jobs(config.jobs, || {
        ds.par_iter()
            .map(|&d| {
                let chi = QuadraticCharacter::new(d)?;
                let l1 = l_value_real(&chi, 1.0)?.value;
                Ok((d, l1.abs() - l1_explicit_bound(&chi)?))
            })
            .collect::<Result<Vec<_>, HarnessError>>()
    })??;
    let mut tally = Tally::new();
    for (d, e) in excess {
        // deviation is how far |L| sits above the bound, floored at zero
        tally.record(e.max(0.0), || format!("d = {d}"));
    }
    Ok(tally.finish(LemmaCheck::L1Bound.name(), 0.0))
}

pub const ZERO_SCAN_INTERVAL: (f64, f64) = (0.5, 0.999);

fn positivity(config: &LemmaConfig) -> Result<CheckOutcome, HarnessError> {
    let ds = enumerate_fundamental_discriminants(config.positivity_limit)?;
    let values = super::with_jobs(config.jobs, || {
        ds.par_iter()
            .map(|&d| Ok((d, l_value_real(&QuadraticCharacter::new(d)?, 1.0)?.value)))
            .collect::<Result<Vec<_>, HarnessError>>()
    })??;
    let scan_ds = enumerate_fundamental_discriminants(config.zero_scan_limit)?;
    let zeros = super::with_jobs(config.jobs, || {
        scan_ds
            .par_iter()
            .map(|&d| {
                let chi = QuadraticCharacter::new(d)?;
                let r = find_real_zeros(
                    &chi,
                    ZERO_SCAN_INTERVAL.0,
                    ZERO_SCAN_INTERVAL.1,
                    config.zero_scan_step,
                    1e-12,
                )?;
                Ok((d, r.zeros))
            })
            .collect::<Result<Vec<_>, HarnessError>>()
    })??;

    let mut tally = Tally::new();
    let mut failures = Vec::new();
    for (d, l1) in values {
        tally.cases += 1;
        if !(l1 > 0.0) {
            failures.push(format!("L(1, chi_{d}) = {l1}"));
        }
    }
    for (d, z) in zeros {
        tally.cases += 1;
        if !z.is_empty() {
            failures.push(format!("chi_{d} has real zeros {z:?}"));
        }
    }
    let mut outcome = tally.finish(LemmaCheck::Positivity.name(), 0.0);
    if !failures.is_empty() {
        outcome.passed = false;
        outcome.worst = failures.len() as f64;
        outcome.detail = failures.join("; ");
    }
    Ok(outcome)
}

fn run_check(check: LemmaCheck, config: &LemmaConfig) -> CheckOutcome {
    let start = Instant::now();
    let result = match check {
        LemmaCheck::GammaRecurrence => gamma_recurrence(config),
        LemmaCheck::GammaDecay => gamma_decay(),
        LemmaCheck::MellinIdentity => mellin_identity(),
        LemmaCheck::ZetaNegativity => zeta_negativity(),
        LemmaCheck::L1Bound => l1_bound(config),
        LemmaCheck::Positivity => positivity(config),
    };
    let mut outcome = result.unwrap_or_else(|e| CheckOutcome {
        name: check.name(),
        passed: false,
        cases: 0,
        worst: f64::INFINITY,
        tolerance: 0.0,
        detail: format!("error: {e}"),
        elapsed: Duration::ZERO,
    });
    outcome.elapsed = start.elapsed();
    outcome
}

/// Runs the configured checks in order. Errors inside a check become a
/// failed outcome rather than aborting the suite.
pub fn lemma_suite(config: &LemmaConfig) -> LemmaSuiteReport {
    let checks: Vec<CheckOutcome> = config
        .checks
        .iter()
        .map(|&c| run_check(c, config))
        .collect();
    let passed = checks.iter().filter(|c| c.passed).count();
    let status = if checks.is_empty() {
        SuiteStatus::Empty
    } else if passed == checks.len() {
        SuiteStatus::Passed
    } else {
        SuiteStatus::Failed
    };
    LemmaSuiteReport {
        status,
        total: checks.len(),
        passed,
        checks,
    }
}
