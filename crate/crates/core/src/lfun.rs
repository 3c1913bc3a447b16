//! Dirichlet L-functions of quadratic characters and of their pointwise
//! products, the composite `f(s) = zeta(s) L(s, chi1) L(s, chi2) L(s, chi1 chi2)`,
//! its residue at `s = 1`, and real-zero scanning.
//!
//! Every L-value goes through `L(s, chi) = q^(-s) sum_{a=1}^{q} chi(a) zeta(s, a/q)`.
//! Because `sum chi(a) = 0` for a nonprincipal character, the pole parts cancel
//! exactly and the regularized Hurwitz function can be used instead, which
//! keeps `s = 1` and its neighbourhood well conditioned.

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::characters::{Character, ProductCharacter, QuadraticCharacter};
use crate::special::{multiply_errors, zeta, EvalResult, Method, RegularizedHurwitz, SpecialError};
use crate::sum::CompensatedSum;

/// Product characters with a larger modulus are refused.
pub const MAX_MODULUS: u64 = 1_000_000;

/// Largest admissible `beta` anywhere in the toolkit.
pub const BETA_CEILING: f64 = 1.0 - 1e-3;

/// Exclusion radius around the pole of `f` at `s = 1`.
pub const F_POLE_GUARD: f64 = 1e-3;

/// Grid spacing and bisection tolerance used by [`select_beta`].
pub const SELECT_GRID_STEP: f64 = 1e-3;
pub const SELECT_REFINE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LfunError {
    #[error(transparent)]
    Special(#[from] SpecialError),
    #[error("{0} is principal; its L-function is not evaluated here")]
    Principal(String),
    #[error("modulus {0} exceeds the supported maximum {MAX_MODULUS}")]
    ModulusTooLarge(u64),
    #[error("f(s) is evaluated only at |s - 1| >= {F_POLE_GUARD}, got s = {0}")]
    NearPole(Complex64),
    #[error("invalid scan interval ({lo}, {hi}); need 0 < lo < hi <= {BETA_CEILING}")]
    InvalidInterval { lo: f64, hi: f64 },
    #[error("grid step and refinement tolerance must be positive, got {step} and {tol}")]
    InvalidGrid { step: f64, tol: f64 },
    #[error("epsilon must lie in ({min}, 1/2], got {0}", min = 2.0 * (1.0 - BETA_CEILING))]
    InvalidEpsilon(f64),
    #[error("L(1, {character}) = {value} is not positive")]
    NonPositiveL { character: String, value: f64 },
    #[error("f({beta}) = {value} (err {err}) is not negative although no real zero was found")]
    NegativeModeViolated { beta: f64, value: f64, err: f64 },
    #[error("f({beta}) = {value} exceeds the zero-mode tolerance {tolerance}")]
    ZeroModeViolated {
        beta: f64,
        value: f64,
        tolerance: f64,
    },
}

fn check_character<C: Character + ?Sized>(chi: &C) -> Result<(), LfunError> {
    if chi.is_principal() {
        return Err(LfunError::Principal(chi.label()));
    }
    if chi.modulus() > MAX_MODULUS {
        return Err(LfunError::ModulusTooLarge(chi.modulus()));
    }
    Ok(())
}

/// `L(s, chi)` for a nonprincipal character and `Re(s) > 0`.
pub fn l_value<C: Character + ?Sized>(
    chi: &C,
    s: Complex64,
) -> Result<EvalResult<Complex64>, LfunError> {
    check_character(chi)?;
    let hurwitz = RegularizedHurwitz::<Complex64>::new(s)?;
    let q = chi.modulus();
    let qf = q as f64;
    let mut re = CompensatedSum::new();
    let mut im = CompensatedSum::new();
    let mut err = 0.0;
    let mut abs_sum = 0.0;
    let mut calls = 0;
    for a in 1..=q {
        let v = chi.value(a);
        if v == 0 {
            continue;
        }
        let h = hurwitz.eval(a as f64 / qf)?;
        let term = h.value * v as f64;
        re.add(term.re);
        im.add(term.im);
        err += h.err;
        abs_sum += h.value.norm();
        calls += 1;
    }
    let prefactor = (-s * qf.ln()).exp();
    let value = prefactor * Complex64::new(re.total(), im.total());
    let err = prefactor.norm() * (err + 4.0 * f64::EPSILON * abs_sum);
    Ok(EvalResult::new(
        value,
        err,
        Method::HurwitzDecomposition,
        calls,
    ))
}

/// `L(sigma, chi)` on the real axis, `sigma > 0`.
pub fn l_value_real<C: Character + ?Sized>(
    chi: &C,
    sigma: f64,
) -> Result<EvalResult<f64>, LfunError> {
    check_character(chi)?;
    let hurwitz = RegularizedHurwitz::<f64>::new(sigma)?;
    let q = chi.modulus();
    let qf = q as f64;
    let mut acc = CompensatedSum::new();
    let mut err = 0.0;
    let mut abs_sum = 0.0;
    let mut calls = 0;
    for a in 1..=q {
        let v = chi.value(a);
        if v == 0 {
            continue;
        }
        let h = hurwitz.eval(a as f64 / qf)?;
        acc.add(h.value * v as f64);
        err += h.err;
        abs_sum += h.value.abs();
        calls += 1;
    }
    let prefactor = (-sigma * qf.ln()).exp();
    let value = prefactor * acc.total();
    let err = prefactor * (err + 4.0 * f64::EPSILON * abs_sum);
    Ok(EvalResult::new(
        value,
        err,
        Method::HurwitzDecomposition,
        calls,
    ))
}

fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// One factor of `f`: `zeta(s)` for the trivial character, `zeta(s)` times
/// the missing Euler factors for a principal product, and `L(s, chi)` otherwise.
fn factor_value<C: Character + ?Sized>(
    chi: &C,
    s: Complex64,
) -> Result<EvalResult<Complex64>, LfunError> {
    if !chi.is_principal() {
        return l_value(chi, s);
    }
    let z = zeta(s)?;
    if chi.modulus() == 1 {
        return Ok(z);
    }
    let mut factors = vec![(z.value, z.err)];
    for p in distinct_prime_factors(chi.modulus()) {
        let euler = 1.0 - (-s * (p as f64).ln()).exp();
        factors.push((euler, 4.0 * f64::EPSILON * euler.norm()));
    }
    let (value, err) = multiply_errors(&factors);
    Ok(EvalResult::new(
        value,
        err,
        Method::EulerFactorCorrection,
        z.terms,
    ))
}

/// The four factors `zeta(s), L(s, chi1), L(s, chi2), L(s, chi1 chi2)`.
pub fn f_factors(
    chi1: QuadraticCharacter,
    chi2: QuadraticCharacter,
    s: Complex64,
) -> Result<[EvalResult<Complex64>; 4], LfunError> {
    if (s - 1.0).norm() < F_POLE_GUARD {
        return Err(LfunError::NearPole(s));
    }
    let product = ProductCharacter::new(chi1, chi2);
    if product.modulus() > MAX_MODULUS {
        return Err(LfunError::ModulusTooLarge(product.modulus()));
    }
    Ok([
        zeta(s)?,
        factor_value(&chi1, s)?,
        factor_value(&chi2, s)?,
        factor_value(&product, s)?,
    ])
}

/// `f(s) = zeta(s) L(s, chi1) L(s, chi2) L(s, chi1 chi2)`.
pub fn f_value(
    chi1: QuadraticCharacter,
    chi2: QuadraticCharacter,
    s: Complex64,
) -> Result<EvalResult<Complex64>, LfunError> {
    let factors = f_factors(chi1, chi2, s)?;
    let pairs: Vec<_> = factors.iter().map(|r| (r.value, r.err)).collect();
    let (value, err) = multiply_errors(&pairs);
    let terms = factors.iter().map(|r| r.terms).sum();
    Ok(EvalResult::new(value, err, Method::Product, terms))
}

pub fn f_value_real(
    chi1: QuadraticCharacter,
    chi2: QuadraticCharacter,
    sigma: f64,
) -> Result<EvalResult<f64>, LfunError> {
    f_value(chi1, chi2, Complex64::new(sigma, 0.0)).map(|r| r.re())
}

/// `lambda = L(1, chi1) L(1, chi2) L(1, chi1 chi2)`, the residue of `f` at 1.
///
/// Each factor is checked to be positive.
pub fn residue_lambda(
    chi1: QuadraticCharacter,
    chi2: QuadraticCharacter,
) -> Result<EvalResult<f64>, LfunError> {
    let product = ProductCharacter::new(chi1, chi2);
    let factors = [
        (chi1.to_string(), l_value_real(&chi1, 1.0)?),
        (chi2.to_string(), l_value_real(&chi2, 1.0)?),
        (product.to_string(), l_value_real(&product, 1.0)?),
    ];
    for (label, r) in &factors {
        if !(r.value > 0.0) {
            return Err(LfunError::NonPositiveL {
                character: label.clone(),
                value: r.value,
            });
        }
    }
    let pairs: Vec<_> = factors.iter().map(|(_, r)| (r.value, r.err)).collect();
    let (value, err) = multiply_errors(&pairs);
    Ok(EvalResult::new(
        value,
        err,
        Method::Product,
        factors.iter().map(|(_, r)| r.terms).sum(),
    ))
}

/// `3 + ln q`, an explicit upper bound for `|L(1, chi)|`.
///
/// Splitting `L(1, chi)` at `N`: the head is at most `1 + ln N`, and partial
/// summation bounds the tail by `2 phi(q) / N`. Taking `N = q` and
/// `phi(q) <= q` gives the constant.
pub fn l1_explicit_bound(chi: &QuadraticCharacter) -> Result<f64, LfunError> {
    if chi.is_principal() {
        return Err(LfunError::Principal(chi.to_string()));
    }
    Ok(3.0 + (chi.modulus() as f64).ln())
}

/// Located real zeros of `L(s, chi)` in an interval.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroScanResult {
    pub discriminant: i64,
    pub interval: (f64, f64),
    /// Ascending, each strictly inside `interval`.
    pub zeros: Vec<f64>,
    pub grid_step: f64,
    pub refined_tol: f64,
}

fn validate_scan(lo: f64, hi: f64, step: f64, tol: f64) -> Result<(), LfunError> {
    if !(lo > 0.0 && lo < hi && hi <= BETA_CEILING) {
        return Err(LfunError::InvalidInterval { lo, hi });
    }
    if !(step > 0.0 && step.is_finite() && tol > 0.0 && tol.is_finite()) {
        return Err(LfunError::InvalidGrid { step, tol });
    }
    Ok(())
}

/// Sign changes of `f` on a uniform grid over `[lo, hi]`, each refined by
/// bisection until `|f| <= tol` and the bracket is narrower than `tol`.
///
/// A zero of even order produces no sign change and is not reported.
pub fn sign_change_zeros<F>(
    f: F,
    lo: f64,
    hi: f64,
    step: f64,
    tol: f64,
) -> Result<Vec<f64>, LfunError>
where
    F: Fn(f64) -> Result<f64, LfunError>,
{
    validate_scan(lo, hi, step, tol)?;
    let count = ((hi - lo) / step).ceil() as usize;
    let node = |k: usize| if k >= count { hi } else { lo + k as f64 * step };

    let mut zeros = Vec::new();
    let mut prev_x = lo;
    let mut prev_f = f(lo)?;
    for k in 1..=count {
        let x = node(k);
        let fx = f(x)?;
        if fx == 0.0 {
            if x < hi {
                zeros.push(x);
            }
        } else if prev_f != 0.0 && (prev_f < 0.0) != (fx < 0.0) {
            zeros.push(bisect(&f, prev_x, prev_f, x, tol)?);
        }
        prev_x = x;
        prev_f = fx;
    }
    Ok(zeros)
}

fn bisect<F>(f: &F, mut a: f64, fa: f64, mut b: f64, tol: f64) -> Result<f64, LfunError>
where
    F: Fn(f64) -> Result<f64, LfunError>,
{
    let a_negative = fa < 0.0;
    let mut mid = 0.5 * (a + b);
    for _ in 0..200 {
        mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = f(mid)?;
        if fm == 0.0 || (fm.abs() <= tol && b - a <= tol) {
            break;
        }
        if (fm < 0.0) == a_negative {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(mid)
}

/// Real zeros of `L(s, chi)` in `(lo, hi)` detected by sign changes.
pub fn find_real_zeros<C: Character + ?Sized>(
    chi: &C,
    lo: f64,
    hi: f64,
    grid_step: f64,
    refine_tol: f64,
) -> Result<ZeroScanResult, LfunError> {
    check_character(chi)?;
    let zeros = sign_change_zeros(
        |s| Ok(l_value_real(chi, s)?.value),
        lo,
        hi,
        grid_step,
        refine_tol,
    )?;
    Ok(ZeroScanResult {
        discriminant: chi.discriminant(),
        interval: (lo, hi),
        zeros,
        grid_step,
        refined_tol: refine_tol,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BetaMode {
    /// `beta` is a located real zero of one of the L-factors.
    Zero,
    /// No zero was found; `f(beta) < 0` because `zeta(beta) < 0` and every
    /// L-factor is positive.
    Negative,
}

impl std::fmt::Display for BetaMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            BetaMode::Zero => "zero",
            BetaMode::Negative => "negative",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BetaSelection {
    pub beta: f64,
    pub mode: BetaMode,
    pub f_beta: EvalResult<f64>,
}

/// Picks `beta` in `(1 - epsilon, 1 - 10^-3)` with `f(beta) <= 0`.
///
/// The L-factors are scanned for real zeros on that interval; the largest
/// zero found wins. Without a zero, `beta = 1 - epsilon/2` and negativity of
/// `f(beta)` is verified by evaluation.
pub fn select_beta(
    chi1: QuadraticCharacter,
    chi2: QuadraticCharacter,
    epsilon: f64,
) -> Result<BetaSelection, LfunError> {
    check_epsilon(epsilon)?;
    let lo = 1.0 - epsilon;
    let product = ProductCharacter::new(chi1, chi2);
    let candidates: [&dyn Character; 3] = [&chi1, &chi2, &product];
    let mut zeros = Vec::new();
    for chi in candidates.into_iter().filter(|c| !c.is_principal()) {
        zeros.extend(
            find_real_zeros(chi, lo, BETA_CEILING, SELECT_GRID_STEP, SELECT_REFINE_TOL)?.zeros,
        );
    }
    choose_beta(epsilon, &zeros, |beta| {
        let factors = f_factors(chi1, chi2, Complex64::new(beta, 0.0))?;
        Ok(factors.map(|r| r.re()))
    })
}

fn check_epsilon(epsilon: f64) -> Result<(), LfunError> {
    if epsilon > 2.0 * (1.0 - BETA_CEILING) && epsilon <= 0.5 {
        Ok(())
    } else {
        Err(LfunError::InvalidEpsilon(epsilon))
    }
}

/// Selection rule shared by [`select_beta`] and its tests; `factors_at`
/// returns the four factors of `f` at a real point.
fn choose_beta<F>(epsilon: f64, zeros: &[f64], factors_at: F) -> Result<BetaSelection, LfunError>
where
    F: Fn(f64) -> Result<[EvalResult<f64>; 4], LfunError>,
{
    check_epsilon(epsilon)?;
    let largest = zeros.iter().copied().fold(None, |acc: Option<f64>, z| {
        Some(acc.map_or(z, |m| m.max(z)))
    });
    let (beta, mode) = match largest {
        Some(z) => (z, BetaMode::Zero),
        None => (1.0 - epsilon / 2.0, BetaMode::Negative),
    };
    let factors = factors_at(beta)?;
    let pairs: Vec<_> = factors.iter().map(|r| (r.value, r.err)).collect();
    let (value, err) = multiply_errors(&pairs);
    let f_beta = EvalResult::new(
        value,
        err,
        Method::Product,
        factors.iter().map(|r| r.terms).sum(),
    );

    match mode {
        BetaMode::Zero => {
            // one factor is within the refinement tolerance of zero
            let others = (0..4)
                .map(|skip| {
                    factors
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != skip)
                        .map(|(_, r)| r.value.abs() + r.err)
                        .product::<f64>()
                })
                .fold(0.0, f64::max);
            let tolerance = err + SELECT_REFINE_TOL * others;
            if value.abs() > tolerance {
                return Err(LfunError::ZeroModeViolated {
                    beta,
                    value,
                    tolerance,
                });
            }
        }
        BetaMode::Negative => {
            if !(value < 0.0) {
                return Err(LfunError::NegativeModeViolated { beta, value, err });
            }
        }
    }
    Ok(BetaSelection { beta, mode, f_beta })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn chi(d: i64) -> QuadraticCharacter {
        QuadraticCharacter::new(d).unwrap()
    }

    fn plain(v: f64) -> EvalResult<f64> {
        EvalResult::new(v, 1e-15, Method::Product, 0)
    }

    #[test]
    fn principal_characters_are_rejected() {
        assert!(matches!(
            l_value_real(&QuadraticCharacter::trivial(), 2.0),
            Err(LfunError::Principal(_))
        ));
        let square = ProductCharacter::new(chi(-4), chi(-4));
        assert!(matches!(
            l_value_real(&square, 2.0),
            Err(LfunError::Principal(_))
        ));
        assert!(l1_explicit_bound(&QuadraticCharacter::trivial()).is_err());
    }

    #[test]
    fn closed_forms_at_one() {
        let l4 = l_value_real(&chi(-4), 1.0).unwrap();
        assert!((l4.value - PI / 4.0).abs() < 1e-13);
        let l3 = l_value_real(&chi(-3), 1.0).unwrap();
        assert!((l3.value - PI / (3.0 * 3f64.sqrt())).abs() < 1e-13);
        // L(1, chi_5) = 2 ln(golden ratio) / sqrt 5
        let l5 = l_value_real(&chi(5), 1.0).unwrap();
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((l5.value - 2.0 * golden.ln() / 5f64.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn product_character_equals_kronecker_of_product() {
        // chi_{-4} chi_{-3} is the primitive character of discriminant 12
        let product = ProductCharacter::new(chi(-4), chi(-3));
        let direct = l_value_real(&chi(12), 1.0).unwrap();
        let via_product = l_value_real(&product, 1.0).unwrap();
        assert!((direct.value - via_product.value).abs() < 1e-13);
        // L(1, chi_12) = ln(2 + sqrt 3) / sqrt 3
        assert!((direct.value - (2.0 + 3f64.sqrt()).ln() / 3f64.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn imprimitive_product_carries_missing_euler_factor() {
        // chi_{-4} chi_{-8} = chi_8 restricted to odd n, same modulus 8; chi_{-3} chi_{-4}
        // has modulus 12. Take chi_5 chi_{-4}: primitive of discriminant -20.
        let prod = ProductCharacter::new(chi(5), chi(-4));
        let direct = l_value_real(&chi(-20), 2.0).unwrap();
        assert!((l_value_real(&prod, 2.0).unwrap().value - direct.value).abs() < 1e-13);
        // chi_{-3} chi_{12}: modulus 12, equals chi_{-4} off multiples of 3,
        // so L = L(s, chi_{-4}) (1 - chi_{-4}(3) 3^-s).
        let prod = ProductCharacter::new(chi(-3), chi(12));
        let base = l_value_real(&chi(-4), 2.0).unwrap().value;
        let expected = base * (1.0 + 3f64.powi(-2));
        assert!((l_value_real(&prod, 2.0).unwrap().value - expected).abs() < 1e-13);
    }

    #[test]
    fn degenerate_f_uses_euler_factors() {
        let s = 2.0;
        let f = f_value_real(chi(-4), chi(-4), s).unwrap().value;
        let z = crate::special::zeta_real(s).unwrap().value;
        let l = l_value_real(&chi(-4), s).unwrap().value;
        let expected = z * l * l * z * (1.0 - 0.25);
        assert!((f - expected).abs() < 1e-12);
    }

    #[test]
    fn f_pole_guard() {
        assert!(matches!(
            f_value_real(chi(-4), chi(-3), 1.0005),
            Err(LfunError::NearPole(_))
        ));
        assert!(f_value_real(chi(-4), chi(-3), 1.002).is_ok());
    }

    #[test]
    fn residue_is_symmetric_and_bounded() {
        let a = residue_lambda(chi(-4), chi(-3)).unwrap();
        let b = residue_lambda(chi(-3), chi(-4)).unwrap();
        assert!((a.value - b.value).abs() < 1e-14);
        let expected =
            (PI / 4.0) * (PI / (3.0 * 3f64.sqrt())) * (2.0 + 3f64.sqrt()).ln() / 3f64.sqrt();
        assert!((a.value - expected).abs() < 1e-13);
        let bound = (3.0 + 4f64.ln()) * (3.0 + 3f64.ln()) * (3.0 + 12f64.ln());
        assert!(a.value <= bound);
        assert!(residue_lambda(chi(-4), chi(-4)).is_err());
    }

    #[test]
    fn explicit_bound_formula() {
        assert!((l1_explicit_bound(&chi(-3)).unwrap() - 4.098_612_288_668_11).abs() < 1e-12);
        assert!(PI / 4.0 <= l1_explicit_bound(&chi(-4)).unwrap());
    }

    #[test]
    fn zero_scan_rejects_bad_intervals() {
        assert!(matches!(
            find_real_zeros(&chi(-4), 0.9, 0.9, 1e-3, 1e-10),
            Err(LfunError::InvalidInterval { .. })
        ));
        assert!(matches!(
            find_real_zeros(&chi(-4), 0.5, 0.9995, 1e-3, 1e-10),
            Err(LfunError::InvalidInterval { .. })
        ));
        assert!(matches!(
            find_real_zeros(&chi(-4), 0.5, 0.9, 0.0, 1e-10),
            Err(LfunError::InvalidGrid { .. })
        ));
    }

    #[test]
    fn zero_scan_small_characters_is_empty() {
        let r = find_real_zeros(&chi(-4), 0.5, 0.999, 1e-3, 1e-10).unwrap();
        assert!(r.zeros.is_empty());
        assert_eq!(r.discriminant, -4);
        assert!(find_real_zeros(&chi(-3), 0.8, 0.999, 1e-3, 1e-10)
            .unwrap()
            .zeros
            .is_empty());
    }

    #[test]
    fn sign_change_scan_finds_synthetic_zeros() {
        let zeros = sign_change_zeros(
            |s| Ok((s - 0.7312) * (s - 0.9) * (s - 0.95)),
            0.5,
            0.999,
            1e-2,
            1e-12,
        )
        .unwrap();
        assert_eq!(zeros.len(), 3);
        for (z, want) in zeros.iter().zip([0.7312, 0.9, 0.95]) {
            assert!((z - want).abs() < 1e-11);
        }
        // a double root is invisible to sign changes
        let touching =
            sign_change_zeros(|s| Ok((s - 0.8).powi(2) + 0.0), 0.5, 0.999, 1e-3, 1e-12).unwrap();
        assert!(touching.len() <= 1);
    }

    #[test]
    fn select_beta_negative_mode() {
        let sel = select_beta(chi(-4), chi(-3), 0.2).unwrap();
        assert_eq!(sel.mode, BetaMode::Negative);
        assert!((sel.beta - 0.9).abs() < 1e-15);
        assert!(sel.f_beta.value < 0.0);
        assert!(sel.beta > 0.8 && sel.beta < BETA_CEILING);
    }

    #[test]
    fn choose_beta_prefers_largest_zero() {
        let sel = choose_beta(0.3, &[0.75, 0.93, 0.81], |beta| {
            Ok([plain(-2.0), plain(beta - 0.93), plain(0.5), plain(1.0)])
        })
        .unwrap();
        assert_eq!(sel.mode, BetaMode::Zero);
        assert_eq!(sel.beta, 0.93);
        assert!(sel.f_beta.value.abs() <= 1e-12);
    }

    #[test]
    fn choose_beta_detects_contradictions() {
        let err = choose_beta(0.2, &[], |_| {
            Ok([plain(-1.0), plain(-0.5), plain(1.0), plain(1.0)])
        })
        .unwrap_err();
        assert!(matches!(err, LfunError::NegativeModeViolated { .. }));
        let err = choose_beta(0.2, &[0.85], |_| {
            Ok([plain(-1.0), plain(0.3), plain(1.0), plain(1.0)])
        })
        .unwrap_err();
        assert!(matches!(err, LfunError::ZeroModeViolated { .. }));
        assert!(matches!(
            choose_beta(0.001, &[], |_| unreachable!()),
            Err(LfunError::InvalidEpsilon(_))
        ));
        assert!(matches!(
            choose_beta(0.6, &[], |_| unreachable!()),
            Err(LfunError::InvalidEpsilon(_))
        ));
    }
}
