//! End-to-end verification workflows and their reports.

mod lemmas;
pub mod report;

use std::f64::consts::E;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::characters::{enumerate_fundamental_discriminants, CharacterError, QuadraticCharacter};
use crate::coeffs::{
    coefficients_of_f, partial_sum_a, smoothed_sum_s, CoeffError, CoefficientSource,
};
use crate::lfun::{l_value_real, LfunError, BETA_CEILING};
use crate::mellin::{residue_decomposition_check, MellinError, ResidueRow};
use crate::special::SpecialError;

pub use lemmas::{
    lemma_suite, CheckOutcome, LemmaCheck, LemmaConfig, LemmaSuiteReport, SuiteStatus,
};

/// Discriminant pairs of the default sandwich grid.
pub const DEFAULT_PAIRS: [(i64, i64); 5] = [(-4, -3), (-4, 5), (-3, 5), (-3, 8), (5, -7)];
pub const DEFAULT_SANDWICH_X: [f64; 3] = [1.0, 10.0, 100.0];
pub const DEFAULT_SANDWICH_BETA: [f64; 2] = [0.8, 0.9];

/// Pairs and grid of the default residue-decay run.
pub const DEFAULT_RESIDUE_PAIRS: [(i64, i64); 3] = [(-4, -3), (-4, 5), (-3, 5)];
pub const DEFAULT_RESIDUE_GRID: [f64; 4] = [10.0, 100.0, 1_000.0, 10_000.0];
pub const DEFAULT_RESIDUE_BETA: f64 = 0.9;

/// Allowed spread `sup / inf` of `|R(x)| x^beta` over the grid. An
/// engineering tolerance: the decomposition only promises a bounded constant.
pub const DEFAULT_RESIDUE_THRESHOLD: f64 = 1e3;

/// Slack on the lower edge `1 <= A(x, beta)`.
pub const SANDWICH_LOWER_TOL: f64 = 1e-9;

/// Tail tolerance for smoothed sums computed by the harness.
pub const SMOOTHED_SUM_TOL: f64 = 1e-12;

pub const MAX_SCAN_LIMIT: u64 = 100_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HarnessError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Character(#[from] CharacterError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error(transparent)]
    Lfun(#[from] LfunError),
    #[error(transparent)]
    Mellin(#[from] MellinError),
    #[error(transparent)]
    Special(#[from] SpecialError),
    #[error("L(1, chi_{d}) = {value} is not positive; aborting scan")]
    NonPositiveL { d: i64, value: f64 },
    #[error("thread pool: {0}")]
    ThreadPool(String),
}

fn check_beta(beta: f64) -> Result<(), HarnessError> {
    if beta > 0.0 && beta < BETA_CEILING {
        Ok(())
    } else {
        Err(HarnessError::InvalidInput(format!(
            "beta must lie in (0, {BETA_CEILING}), got {beta}"
        )))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SandwichReport {
    pub d1: i64,
    pub d2: i64,
    pub x: f64,
    pub beta: f64,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "S")]
    pub s: f64,
    pub passed: bool,
    /// Upper-edge slack: `e * err(S)` plus rounding of `A`.
    #[serde(skip)]
    pub tolerance: f64,
}

/// Checks `1 <= A(x, beta) <= e * S(x, beta)`.
pub fn verify_sandwich(
    d1: i64,
    d2: i64,
    x: f64,
    beta: f64,
) -> Result<SandwichReport, HarnessError> {
    check_beta(beta)?;
    if !(x >= 1.0) || !x.is_finite() {
        return Err(HarnessError::InvalidInput(format!(
            "x must be at least 1, got {x}"
        )));
    }
    let chi1 = QuadraticCharacter::new(d1)?;
    let chi2 = QuadraticCharacter::new(d2)?;
    let table = coefficients_of_f(chi1, chi2, x.floor() as usize)?;
    let a = partial_sum_a(&table, x, beta)?;
    let s = smoothed_sum_s(
        CoefficientSource::Pair(chi1, chi2),
        x,
        beta,
        SMOOTHED_SUM_TOL,
    )?;
    let tolerance = E * s.err + 4.0 * f64::EPSILON * a;
    let passed = a >= 1.0 - SANDWICH_LOWER_TOL && a <= E * s.value + tolerance;
    Ok(SandwichReport {
        d1,
        d2,
        x,
        beta,
        a,
        s: s.value,
        passed,
        tolerance,
    })
}

/// Every combination of [`DEFAULT_PAIRS`], [`DEFAULT_SANDWICH_X`] and
/// [`DEFAULT_SANDWICH_BETA`].
pub fn default_sandwich_grid() -> Result<Vec<SandwichReport>, HarnessError> {
    let mut out = Vec::new();
    for &(d1, d2) in &DEFAULT_PAIRS {
        for &x in &DEFAULT_SANDWICH_X {
            for &beta in &DEFAULT_SANDWICH_BETA {
                out.push(verify_sandwich(d1, d2, x, beta)?);
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidueDecayReport {
    pub d1: i64,
    pub d2: i64,
    pub beta: f64,
    pub lambda: f64,
    pub gamma_one_minus_beta: f64,
    pub f_beta: f64,
    pub threshold: f64,
    /// `sup / inf` of `|R(x)| x^beta` over the grid.
    pub spread: f64,
    pub rows: Vec<ResidueRow>,
    pub passed: bool,
    pub failure: Option<String>,
}

/// Checks that `|R(x)| x^beta` stays within a factor `threshold` across the
/// grid and that `|R|` at the largest `x` is below `|R|` at the smallest.
pub fn verify_residue_decay(
    d1: i64,
    d2: i64,
    beta: f64,
    x_grid: &[f64],
    threshold: f64,
) -> Result<ResidueDecayReport, HarnessError> {
    check_beta(beta)?;
    if x_grid.is_empty() {
        return Err(HarnessError::InvalidInput("x grid is empty".into()));
    }
    if let Some(&bad) = x_grid.iter().find(|&&x| !(x >= 1.0) || !x.is_finite()) {
        return Err(HarnessError::InvalidInput(format!(
            "grid point {bad} is below 1"
        )));
    }
    if !(threshold >= 1.0) {
        return Err(HarnessError::InvalidInput(format!(
            "threshold must be at least 1, got {threshold}"
        )));
    }
    let chi1 = QuadraticCharacter::new(d1)?;
    let chi2 = QuadraticCharacter::new(d2)?;
    let decomposition = residue_decomposition_check(chi1, chi2, beta, x_grid)?;
    let rows = decomposition.rows;

    let scaled = |r: &ResidueRow| r.r_scaled.abs();
    let (arg_sup, sup) = rows.iter().map(|r| (r.x, scaled(r))).fold(
        (rows[0].x, f64::NEG_INFINITY),
        |acc, (x, v)| if v > acc.1 { (x, v) } else { acc },
    );
    let (arg_inf, inf) =
        rows.iter()
            .map(|r| (r.x, scaled(r)))
            .fold((rows[0].x, f64::INFINITY), |acc, (x, v)| {
                if v < acc.1 {
                    (x, v)
                } else {
                    acc
                }
            });
    let spread = if inf > 0.0 { sup / inf } else { f64::INFINITY };

    let mut failure = None;
    if spread > threshold {
        failure = Some(format!(
            "|R(x)| x^beta spread {spread:e} exceeds {threshold:e} (max at x = {arg_sup}, min at x = {arg_inf})"
        ));
    } else if rows.len() > 1 {
        let first = rows
            .iter()
            .min_by(|a, b| a.x.total_cmp(&b.x))
            .expect("nonempty");
        let last = rows
            .iter()
            .max_by(|a, b| a.x.total_cmp(&b.x))
            .expect("nonempty");
        if last.x > first.x && !(last.r.abs() < first.r.abs()) {
            failure = Some(format!(
                "|R| does not decay: |R({})| = {:e} >= |R({})| = {:e}",
                last.x,
                last.r.abs(),
                first.x,
                first.r.abs()
            ));
        }
    }

    Ok(ResidueDecayReport {
        d1,
        d2,
        beta,
        lambda: decomposition.lambda,
        gamma_one_minus_beta: decomposition.gamma_one_minus_beta,
        f_beta: decomposition.f_beta,
        threshold,
        spread,
        rows,
        passed: failure.is_none(),
        failure,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanRow {
    pub d: i64,
    pub q: u64,
    #[serde(rename = "L1")]
    pub l1: f64,
    /// `L(1, chi_d) q^epsilon`
    pub weighted: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub epsilon: f64,
    pub limit: u64,
    pub rows: Vec<ScanRow>,
    pub min_weighted: f64,
    pub argmin_d: i64,
}

/// Runs `f` on a pool of `jobs` workers, or on the global pool when `None`.
pub fn with_jobs<T: Send>(
    jobs: Option<usize>,
    f: impl FnOnce() -> T + Send,
) -> Result<T, HarnessError> {
    match jobs {
        None => Ok(f()),
        Some(0) => Err(HarnessError::InvalidInput(
            "--jobs must be at least 1".into(),
        )),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| HarnessError::ThreadPool(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

/// `L(1, chi_d)` and `L(1, chi_d) |d|^epsilon` for every fundamental
/// discriminant with `|d| <= limit`.
///
/// Rows are computed in parallel and returned in enumeration order; the
/// minimum keeps the first (smallest `|d|`) row on ties.
pub fn siegel_scan(
    limit: u64,
    epsilon: f64,
    jobs: Option<usize>,
) -> Result<ScanReport, HarnessError> {
    if !(3..=MAX_SCAN_LIMIT).contains(&limit) {
        return Err(HarnessError::InvalidInput(format!(
            "limit must lie in [3, {MAX_SCAN_LIMIT}], got {limit}"
        )));
    }
    if !(epsilon > 0.0 && epsilon <= 0.5) {
        return Err(HarnessError::InvalidInput(format!(
            "epsilon must lie in (0, 1/2], got {epsilon}"
        )));
    }
    let discriminants = enumerate_fundamental_discriminants(limit)?;
    let rows = with_jobs(jobs, || {
        discriminants
            .par_iter()
            .map(|&d| {
                let chi = QuadraticCharacter::new(d)?;
                let l1 = l_value_real(&chi, 1.0)?.value;
                if !(l1 > 0.0) {
                    return Err(HarnessError::NonPositiveL { d, value: l1 });
                }
                let q = chi.modulus();
                Ok(ScanRow {
                    d,
                    q,
                    l1,
                    weighted: l1 * (q as f64).powf(epsilon),
                })
            })
            .collect::<Result<Vec<_>, HarnessError>>()
    })??;

    let mut min_weighted = f64::INFINITY;
    let mut argmin_d = 0;
    for row in &rows {
        if row.weighted < min_weighted {
            min_weighted = row.weighted;
            argmin_d = row.d;
        }
    }
    Ok(ScanReport {
        epsilon,
        limit,
        rows,
        min_weighted,
        argmin_d,
    })
}
