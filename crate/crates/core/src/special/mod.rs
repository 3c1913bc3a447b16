//! Special functions: complex Gamma, Hurwitz and Riemann zeta.

mod gamma;
mod zeta;

use std::fmt;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

pub use gamma::{
    gamma, gamma_real, gamma_with, ln_gamma, ln_gamma_with, stirling_decay_ratio, Lanczos,
};
pub use zeta::{
    hurwitz_zeta, hurwitz_zeta_real, hurwitz_zeta_regularized, hurwitz_zeta_regularized_real, zeta,
    zeta_real, zeta_via_fractional_part_integral, RegularizedHurwitz, EULER_MACLAURIN_ORDER,
};

/// Radius of the exclusion disc around `s = 1` for zeta-type functions.
pub const POLE_GUARD: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecialError {
    #[error("{function}: argument {re}{im:+}i is within {radius:e} of a pole")]
    NearPole {
        function: &'static str,
        re: f64,
        im: f64,
        radius: f64,
    },
    #[error("{function}: argument outside the supported domain: {reason}")]
    Domain {
        function: &'static str,
        reason: String,
    },
    #[error("{function}: non-finite result at {re}{im:+}i")]
    NonFinite {
        function: &'static str,
        re: f64,
        im: f64,
    },
    #[error("{0}")]
    Invariant(String),
}

/// How a value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Lanczos,
    EulerMaclaurin,
    FractionalPartIntegral,
    HurwitzDecomposition,
    EulerFactorCorrection,
    Product,
    DirichletSeries,
    Trapezoid,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Method::Lanczos => "lanczos",
            Method::EulerMaclaurin => "euler-maclaurin",
            Method::FractionalPartIntegral => "fractional-part-integral",
            Method::HurwitzDecomposition => "hurwitz-decomposition",
            Method::EulerFactorCorrection => "euler-factor-correction",
            Method::Product => "product",
            Method::DirichletSeries => "dirichlet-series",
            Method::Trapezoid => "trapezoid",
        };
        f.write_str(s)
    }
}

/// A computed value with an absolute error estimate.
///
/// `value` is always finite and `err` is finite and nonnegative; poles
/// surface as errors rather than infinities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalResult<T = f64> {
    pub value: T,
    pub err: f64,
    pub method: Method,
    pub terms: usize,
}

impl<T> EvalResult<T> {
    pub fn new(value: T, err: f64, method: Method, terms: usize) -> Self {
        debug_assert!(
            err.is_finite() && err >= 0.0,
            "error estimate must be finite and nonnegative"
        );
        Self {
            value,
            err,
            method,
            terms,
        }
    }
}

impl EvalResult<Complex64> {
    pub fn re(&self) -> EvalResult<f64> {
        EvalResult::new(self.value.re, self.err, self.method, self.terms)
    }
}

/// Product of values with first- plus second-order error propagation.
pub(crate) fn multiply_errors<T>(factors: &[(T, f64)]) -> (T, f64)
where
    T: Copy + std::ops::Mul<Output = T> + Into<Complex64>,
{
    let mut value = factors[0].0;
    for &(v, _) in &factors[1..] {
        value = value * v;
    }
    // |prod(a_i + e_i) - prod(a_i)| <= prod(|a_i| + e_i) - prod(|a_i|)
    let with_err: f64 = factors.iter().map(|&(v, e)| v.into().norm() + e).product();
    let without: f64 = factors.iter().map(|&(v, _)| v.into().norm()).product();
    let roundoff = 4.0 * f64::EPSILON * factors.len() as f64 * without;
    (value, (with_err - without).max(0.0) + roundoff)
}
