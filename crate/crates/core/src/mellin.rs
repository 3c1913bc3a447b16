//! Truncated vertical-line quadrature for inverse Mellin integrals.
//!
//! Integrals `(1/2 pi i) int_{c - i inf}^{c + i inf} F(s) ds` with `F` real on
//! the real axis satisfy `F(conj s) = conj F(s)`, so only `t >= 0` is
//! integrated and the real part is doubled. The composite trapezoid rule runs
//! on an even number of uniform nodes; dropping every other node gives the
//! coarse estimate used as the discretization error.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::characters::QuadraticCharacter;
use crate::coeffs::{smoothed_sum_s, CoeffError, CoefficientSource};
use crate::lfun::{f_value, f_value_real, residue_lambda, LfunError, BETA_CEILING};
use crate::special::{
    gamma, gamma_real, stirling_decay_ratio, zeta_real, EvalResult, Method, SpecialError,
};
use crate::sum::CompensatedSum;

/// Smallest abscissa accepted for integrands involving `f(s + beta)`.
pub const MIN_F_ABSCISSA: f64 = 1.5;

/// Target accuracy used for the smoothed sums inside the residue check.
const RESIDUE_SUM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MellinError {
    #[error("invalid contour: {0}")]
    InvalidContour(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Special(#[from] SpecialError),
    #[error(transparent)]
    Lfun(#[from] LfunError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error(
        "error budget exceeded: {dominant} contributes {value:e} against a target of {target:e}"
    )]
    ErrorBudget {
        dominant: &'static str,
        value: f64,
        target: f64,
    },
}

/// The segment `sigma0 + i t`, `|t| <= height`, sampled every `step`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContourSpec {
    pub abscissa: f64,
    pub height: f64,
    pub step: f64,
}

impl ContourSpec {
    /// Requires a finite abscissa, positive height, and at least 100 steps
    /// per half-line.
    pub fn new(abscissa: f64, height: f64, step: f64) -> Result<Self, MellinError> {
        let spec = Self {
            abscissa,
            height,
            step,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), MellinError> {
        if !self.abscissa.is_finite() || !(self.height > 0.0) || !self.height.is_finite() {
            return Err(MellinError::InvalidContour(format!(
                "abscissa {} and height {} must be finite with height > 0",
                self.abscissa, self.height
            )));
        }
        if !(self.step > 0.0) || self.step > self.height / 100.0 {
            return Err(MellinError::InvalidContour(format!(
                "step {} must be positive and at most height/100 = {}",
                self.step,
                self.height / 100.0
            )));
        }
        Ok(())
    }

    /// Even node count and the matching step that lands exactly on `height`.
    fn nodes(&self) -> (usize, f64) {
        let mut k = (self.height / self.step).round() as usize;
        if k % 2 == 1 {
            k += 1;
        }
        (k, self.height / k as f64)
    }
}

/// `int_T^inf t^a e^(-pi t / 2) dt = (2/pi)^(a+1) Gamma(a+1, pi T/2)`, bounded
/// through `Gamma(b, x) <= x^(b-1) e^(-x) / (1 - (b-1)/x)` for `x > b - 1`.
fn gamma_envelope_tail(a: f64, height: f64) -> f64 {
    let b = a + 1.0;
    let x = PI * height / 2.0;
    let upper_incomplete = if b <= 1.0 {
        x.powf(b - 1.0) * (-x).exp()
    } else if x > b - 1.0 {
        x.powf(b - 1.0) * (-x).exp() / (1.0 - (b - 1.0) / x)
    } else {
        return f64::INFINITY;
    };
    (2.0 / PI).powf(b) * upper_incomplete
}

/// Envelope constant `C` in `|Gamma(sigma + i t)| <= C t^(sigma - 1/2) e^(-pi t/2)`
/// for `t >= height`, taken with a 10% margin over the Stirling limit and the
/// observed ratio at the truncation height.
fn gamma_envelope_constant(sigma: f64, height: f64) -> Result<f64, SpecialError> {
    let at_height = stirling_decay_ratio(sigma, height.max(1.0))?;
    Ok(1.1 * at_height.max((2.0 * PI).sqrt()))
}

struct Quadrature {
    fine: f64,
    coarse: f64,
    abs_sum: f64,
    propagated: f64,
    nodes: usize,
}

/// Doubled real part of the trapezoid sum over `t in [0, T]`, divided by `2 pi`.
///
/// `integrand(s)` returns the integrand value and its absolute error.
fn half_line_trapezoid<F>(spec: &ContourSpec, integrand: F) -> Result<Quadrature, MellinError>
where
    F: Fn(Complex64) -> Result<(Complex64, f64), MellinError> + Sync,
{
    let (k, h) = spec.nodes();
    let values: Vec<(Complex64, f64)> = (0..=k)
        .into_par_iter()
        .map(|j| integrand(Complex64::new(spec.abscissa, j as f64 * h)))
        .collect::<Result<_, _>>()?;

    let mut fine = CompensatedSum::new();
    let mut coarse = CompensatedSum::new();
    let mut abs_sum = 0.0;
    let mut propagated = 0.0;
    for (j, &(v, e)) in values.iter().enumerate() {
        let w = if j == 0 || j == k { 0.5 } else { 1.0 };
        fine.add(w * v.re);
        abs_sum += w * v.norm();
        propagated += w * e;
        if j % 2 == 0 {
            let wc = if j == 0 || j == k { 0.5 } else { 1.0 };
            coarse.add(wc * v.re);
        }
    }
    // (1 / 2 pi) * 2 * h * sum
    let scale = h / PI;
    Ok(Quadrature {
        fine: scale * fine.total(),
        coarse: 2.0 * scale * coarse.total(),
        abs_sum: scale * abs_sum,
        propagated: scale * propagated,
        nodes: k + 1,
    })
}

/// `(1 / 2 pi i) int y^(-s) Gamma(s) ds` along the truncated line; equals
/// `e^(-y)` in the limit.
///
/// The error combines the Gamma-envelope truncation bound, the step-doubling
/// difference and accumulated rounding.
pub fn inverse_mellin_exp(y: f64, spec: &ContourSpec) -> Result<EvalResult<f64>, MellinError> {
    spec.validate()?;
    if !(y > 0.0) || !y.is_finite() {
        return Err(MellinError::InvalidArgument(format!(
            "y must be positive, got {y}"
        )));
    }
    if !(spec.abscissa > 0.0) {
        return Err(MellinError::InvalidContour(format!(
            "abscissa {} must lie right of the pole of Gamma at 0",
            spec.abscissa
        )));
    }
    let ln_y = y.ln();
    let q = half_line_trapezoid(spec, |s| {
        let g = gamma(s)?;
        let w = (-s * ln_y).exp();
        Ok((w * g.value, w.norm() * g.err))
    })?;

    let sigma = spec.abscissa;
    let truncation = (1.0 / PI)
        * y.powf(-sigma)
        * gamma_envelope_constant(sigma, spec.height)?
        * gamma_envelope_tail(sigma - 0.5, spec.height);
    let discretization = (q.fine - q.coarse).abs();
    let err = truncation + discretization + q.propagated + 16.0 * f64::EPSILON * q.abs_sum;
    Ok(EvalResult::new(q.fine, err, Method::Trapezoid, q.nodes))
}

/// Same integral over the full segment `[-T, T]` without using conjugate
/// symmetry; the imaginary part of the result measures the asymmetry.
pub fn inverse_mellin_exp_two_sided(y: f64, spec: &ContourSpec) -> Result<Complex64, MellinError> {
    spec.validate()?;
    let (k, h) = spec.nodes();
    let ln_y = y.ln();
    let mut re = CompensatedSum::new();
    let mut im = CompensatedSum::new();
    for j in 0..=2 * k {
        let t = (j as f64 - k as f64) * h;
        let s = Complex64::new(spec.abscissa, t);
        let v = (-s * ln_y).exp() * gamma(s)?.value;
        let w = if j == 0 || j == 2 * k { 0.5 } else { 1.0 };
        re.add(w * v.re);
        im.add(w * v.im);
    }
    Ok(Complex64::new(re.total(), im.total()) * (h / (2.0 * PI)))
}

fn check_beta(beta: f64) -> Result<(), MellinError> {
    if beta > 0.0 && beta < BETA_CEILING {
        Ok(())
    } else {
        Err(MellinError::InvalidArgument(format!(
            "beta must lie in (0, {BETA_CEILING}), got {beta}"
        )))
    }
}

/// `I = (1 / 2 pi i) int x^s Gamma(s) f(s + beta) ds` on the truncated line.
///
/// Shifting the contour is never needed here: the integrand is evaluated at
/// `Re(s + beta) >= 1.5`, where every factor of `f` is bounded by `zeta(Re)`.
pub fn contour_integral_i(
    chi1: QuadraticCharacter,
    chi2: QuadraticCharacter,
    x: f64,
    beta: f64,
    spec: &ContourSpec,
) -> Result<EvalResult<f64>, MellinError> {
    spec.validate()?;
    check_beta(beta)?;
    if !(x > 0.0) || !x.is_finite() {
        return Err(MellinError::InvalidArgument(format!(
            "x must be positive, got {x}"
        )));
    }
    if spec.abscissa < MIN_F_ABSCISSA {
        return Err(MellinError::InvalidContour(format!(
            "abscissa {} below {MIN_F_ABSCISSA}",
            spec.abscissa
        )));
    }
    let ln_x = x.ln();
    let q = half_line_trapezoid(spec, |s| {
        let g = gamma(s)?;
        let f = f_value(chi1, chi2, s + beta)?;
        let w = (s * ln_x).exp();
        let v = w * g.value * f.value;
        let e = w.norm() * (g.value.norm() * f.err + g.err * f.value.norm() + g.err * f.err);
        Ok((v, e))
    })?;

    let sigma = spec.abscissa;
    let f_bound = zeta_real(sigma + beta)?.value.powi(4);
    let truncation = (1.0 / PI)
        * x.powf(sigma)
        * f_bound
        * gamma_envelope_constant(sigma, spec.height)?
        * gamma_envelope_tail(sigma - 0.5, spec.height);
    let discretization = (q.fine - q.coarse).abs();
    let err = truncation + discretization + q.propagated + 16.0 * f64::EPSILON * q.abs_sum;
    Ok(EvalResult::new(q.fine, err, Method::Trapezoid, q.nodes))
}

/// Chooses the truncation height from the Gamma envelope so the certified
/// tail is below `tol / 2`, then halves the step until successive values
/// differ by less than `tol / 2`.
pub fn contour_integral_i_adaptive(
    chi1: QuadraticCharacter,
    chi2: QuadraticCharacter,
    x: f64,
    beta: f64,
    tol: f64,
) -> Result<(EvalResult<f64>, ContourSpec), MellinError> {
    check_beta(beta)?;
    if !(tol > 0.0) || !(x > 0.0) {
        return Err(MellinError::InvalidArgument(format!(
            "need x > 0 and tol > 0, got {x} and {tol}"
        )));
    }
    let sigma = 2.0;
    let f_bound = zeta_real(sigma + beta)?.value.powi(4);
    let mut height = 10.0;
    loop {
        let tail = (1.0 / PI)
            * x.powf(sigma)
            * f_bound
            * gamma_envelope_constant(sigma, height)?
            * gamma_envelope_tail(sigma - 0.5, height);
        if tail <= tol / 2.0 {
            break;
        }
        height += 5.0;
        if height > 200.0 {
            return Err(MellinError::ErrorBudget {
                dominant: "truncation",
                value: tail,
                target: tol / 2.0,
            });
        }
    }

    let mut spec = ContourSpec::new(sigma, height, height / 200.0)?;
    let mut previous = contour_integral_i(chi1, chi2, x, beta, &spec)?;
    for _ in 0..8 {
        spec = ContourSpec::new(sigma, height, spec.step / 2.0)?;
        let next = contour_integral_i(chi1, chi2, x, beta, &spec)?;
        if (next.value - previous.value).abs() <= tol / 2.0 {
            return Ok((next, spec));
        }
        previous = next;
    }
    Err(MellinError::ErrorBudget {
        dominant: "discretization",
        value: previous.err,
        target: tol / 2.0,
    })
}

/// One grid point of the residue decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResidueRow {
    pub x: f64,
    /// `S(x, beta) - x^(1-beta) Gamma(1-beta) lambda - f(beta)`
    pub r: f64,
    /// `R(x) * x^beta`
    pub r_scaled: f64,
    pub err: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidueDecomposition {
    pub d1: i64,
    pub d2: i64,
    pub beta: f64,
    pub lambda: f64,
    pub gamma_one_minus_beta: f64,
    pub f_beta: f64,
    pub rows: Vec<ResidueRow>,
}

/// Subtracts the residues at `s = 1 - beta` and `s = 0` from the smoothed
/// sum; what remains is the integral along `Re(s) = -beta`, which is
/// `O(x^(-beta))`. The integral itself is never evaluated.
pub fn residue_decomposition_check(
    chi1: QuadraticCharacter,
    chi2: QuadraticCharacter,
    beta: f64,
    x_grid: &[f64],
) -> Result<ResidueDecomposition, MellinError> {
    check_beta(beta)?;
    if let Some(&bad) = x_grid.iter().find(|&&x| !(x >= 1.0) || !x.is_finite()) {
        return Err(MellinError::InvalidArgument(format!(
            "grid point {bad} is below 1"
        )));
    }
    let lambda = residue_lambda(chi1, chi2)?;
    let g = gamma_real(1.0 - beta)?;
    let f_beta = f_value_real(chi1, chi2, beta)?;

    let rows = x_grid
        .iter()
        .map(|&x| {
            let s = smoothed_sum_s(
                CoefficientSource::Pair(chi1, chi2),
                x,
                beta,
                RESIDUE_SUM_TOL,
            )?;
            let growth = x.powf(1.0 - beta);
            let main = growth * g.value * lambda.value;
            let r = s.value - main - f_beta.value;
            let err = s.err
                + growth * (g.err * lambda.value + g.value * lambda.err)
                + f_beta.err
                + 4.0 * f64::EPSILON * (s.value.abs() + main.abs());
            Ok(ResidueRow {
                x,
                r,
                r_scaled: r * x.powf(beta),
                err,
            })
        })
        .collect::<Result<Vec<_>, MellinError>>()?;

    Ok(ResidueDecomposition {
        d1: chi1.discriminant(),
        d2: chi2.discriminant(),
        beta,
        lambda: lambda.value,
        gamma_one_minus_beta: g.value,
        f_beta: f_beta.value,
        rows,
    })
}
