//! Hurwitz and Riemann zeta functions for `Re(s) > 0`.
//!
//! The Euler-Maclaurin evaluator works with the regularized function
//! `zeta(s, a) - 1/(s - 1)`, which is entire in `s`. Its `(N + a)^(1-s)/(s-1)`
//! term is rewritten as `-ln(N + a) * exprel((1 - s) ln(N + a))` plus the
//! removed pole, so values near and at `s = 1` lose no precision.

use std::f64::consts::PI;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::LazyLock;

use num_complex::Complex64;

use super::{EvalResult, Method, SpecialError, POLE_GUARD};
use crate::sum::CompensatedSum;

/// Number of Bernoulli correction terms in the Euler-Maclaurin expansion.
pub const EULER_MACLAURIN_ORDER: usize = 12;

/// Absolute accuracy targeted by the Euler-Maclaurin cutoff.
const EM_TARGET: f64 = 1e-16;

/// `B_{2k}` as (numerator, denominator), `k = 1..=12`.
const BERNOULLI_EVEN: [(f64, f64); 12] = [
    (1.0, 6.0),
    (-1.0, 30.0),
    (1.0, 42.0),
    (-1.0, 30.0),
    (5.0, 66.0),
    (-691.0, 2730.0),
    (7.0, 6.0),
    (-3617.0, 510.0),
    (43867.0, 798.0),
    (-174611.0, 330.0),
    (854513.0, 138.0),
    (-236364091.0, 2730.0),
];

/// `B_{2k} / (2k)!`, `k = 1..=12`.
static BERNOULLI_OVER_FACTORIAL: LazyLock<[f64; 12]> = LazyLock::new(|| {
    let mut out = [0.0; 12];
    let mut factorial = 1.0f64;
    for (k, slot) in out.iter_mut().enumerate() {
        let m = 2 * (k + 1);
        factorial *= ((m - 1) * m) as f64;
        let (num, den) = BERNOULLI_EVEN[k];
        *slot = num / den / factorial;
    }
    out
});

pub(crate) trait Scalar:
    Copy
    + From<f64>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Add<f64, Output = Self>
    + Mul<f64, Output = Self>
{
    fn exp(self) -> Self;
    fn re(self) -> f64;
    fn im(self) -> f64;
    fn norm(self) -> f64;
    fn from_parts(re: f64, im: f64) -> Self;
}

impl Scalar for f64 {
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn re(self) -> f64 {
        self
    }
    fn im(self) -> f64 {
        0.0
    }
    fn norm(self) -> f64 {
        self.abs()
    }
    fn from_parts(re: f64, _im: f64) -> Self {
        re
    }
}

impl Scalar for Complex64 {
    fn exp(self) -> Self {
        Complex64::exp(self)
    }
    fn re(self) -> f64 {
        self.re
    }
    fn im(self) -> f64 {
        self.im
    }
    fn norm(self) -> f64 {
        Complex64::norm(self)
    }
    fn from_parts(re: f64, im: f64) -> Self {
        Complex64::new(re, im)
    }
}

/// `(e^z - 1) / z`, Taylor series for small `|z|`.
fn exprel<T: Scalar>(z: T) -> T {
    if z.norm() < 0.5 {
        // 1 + z/2! + z^2/3! + ... + z^15/16!
        let mut acc = T::from(1.0);
        for k in (2..=16).rev() {
            acc = acc * z * (1.0 / k as f64) + 1.0;
        }
        acc
    } else {
        (z.exp() + (-1.0)) / z
    }
}

/// `b^(-s)` for `b > 0`.
#[inline]
fn pow_neg<T: Scalar>(b: f64, s: T) -> T {
    (-s * b.ln()).exp()
}

fn check_domain<T: Scalar>(function: &'static str, s: T, a: f64) -> Result<(), SpecialError> {
    if !s.re().is_finite() || !s.im().is_finite() {
        return Err(SpecialError::Domain {
            function,
            reason: "non-finite argument".into(),
        });
    }
    if !(s.re() > 0.0) {
        return Err(SpecialError::Domain {
            function,
            reason: format!("requires Re(s) > 0, got {}", s.re()),
        });
    }
    if !(a > 0.0 && a <= 1.0) {
        return Err(SpecialError::Domain {
            function,
            reason: format!("requires 0 < a <= 1, got {a}"),
        });
    }
    Ok(())
}

/// Per-`s` constants of the Euler-Maclaurin remainder bound
/// `4 |(s)_24| / (2 pi)^24 * (N + a)^(1 - sigma - 24) / (sigma + 23)`.
///
/// Building the plan once and evaluating many shifts `a` is how the
/// L-function evaluator amortizes the Pochhammer logarithms.
#[derive(Debug, Clone, Copy)]
pub(crate) struct EmPlan<T> {
    s: T,
    exponent: f64,
    ln_const: f64,
}

impl<T: Scalar> EmPlan<T> {
    fn new(s: T) -> Self {
        let two_m = 2 * EULER_MACLAURIN_ORDER;
        let ln_poch: f64 = (0..two_m).map(|j| (s + j as f64).norm().ln()).sum();
        let exponent = s.re() + two_m as f64 - 1.0;
        let ln_const = 4f64.ln() + ln_poch - two_m as f64 * (2.0 * PI).ln() - exponent.ln();
        Self {
            s,
            exponent,
            ln_const,
        }
    }

    /// Smallest cutoff whose remainder bound is below the target.
    fn cutoff(&self, a: f64) -> usize {
        let ln_base = (self.ln_const - EM_TARGET.ln()) / self.exponent;
        let n = (ln_base.exp() - a).ceil();
        n.max(2.0) as usize
    }

    fn remainder_bound(&self, a: f64, n: usize) -> f64 {
        (self.ln_const - self.exponent * (n as f64 + a).ln()).exp()
    }

    /// Regularized value, error estimate and cutoff at shift `a`.
    fn eval(&self, a: f64) -> (T, f64, usize) {
        let s = self.s;
        let n = self.cutoff(a);
        let mut re_sum = CompensatedSum::new();
        let mut im_sum = CompensatedSum::new();
        let mut abs_sum = 0.0;
        let mut push = |term: T| {
            re_sum.add(term.re());
            im_sum.add(term.im());
            abs_sum += term.norm();
        };

        for k in 0..n {
            push(pow_neg(k as f64 + a, s));
        }

        let base = n as f64 + a;
        let ln_base = base.ln();
        // [(N + a)^(1 - s) - 1] / (s - 1)
        push(-exprel((-s + 1.0) * ln_base) * ln_base);

        let u = pow_neg(base, s);
        push(u * 0.5);

        let inv = 1.0 / base;
        let inv2 = inv * inv;
        let mut power = u * inv;
        let mut poch = s;
        for (k, &c) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
            if k > 0 {
                let j = (2 * k) as f64;
                poch = poch * (s + (j - 1.0)) * (s + j);
                power = power * inv2;
            }
            push(poch * power * c);
        }

        let value = T::from_parts(re_sum.total(), im_sum.total());
        let err = self.remainder_bound(a, n) + 8.0 * f64::EPSILON * abs_sum;
        (value, err, n)
    }
}

/// Evaluates `zeta(s, a) - 1/(s - 1)` for many shifts at one fixed `s`.
#[derive(Debug, Clone, Copy)]
pub struct RegularizedHurwitz<T>(EmPlan<T>);

impl RegularizedHurwitz<Complex64> {
    pub fn new(s: Complex64) -> Result<Self, SpecialError> {
        check_domain("hurwitz_zeta", s, 1.0)?;
        Ok(Self(EmPlan::new(s)))
    }

    pub fn eval(&self, a: f64) -> Result<EvalResult<Complex64>, SpecialError> {
        check_domain("hurwitz_zeta", self.0.s, a)?;
        let (v, e, terms) = self.0.eval(a);
        Ok(EvalResult::new(v, e, Method::EulerMaclaurin, terms))
    }
}

impl RegularizedHurwitz<f64> {
    pub fn new(s: f64) -> Result<Self, SpecialError> {
        check_domain("hurwitz_zeta", s, 1.0)?;
        Ok(Self(EmPlan::new(s)))
    }

    pub fn eval(&self, a: f64) -> Result<EvalResult<f64>, SpecialError> {
        check_domain("hurwitz_zeta", self.0.s, a)?;
        let (v, e, terms) = self.0.eval(a);
        Ok(EvalResult::new(v, e, Method::EulerMaclaurin, terms))
    }
}

/// `zeta(s, a) - 1/(s - 1)` for complex `s` with `Re(s) > 0`, `0 < a <= 1`.
///
/// At `s = 1` this equals `-digamma(a)`.
pub fn hurwitz_zeta_regularized(
    s: Complex64,
    a: f64,
) -> Result<EvalResult<Complex64>, SpecialError> {
    RegularizedHurwitz::<Complex64>::new(s)?.eval(a)
}

pub fn hurwitz_zeta_regularized_real(s: f64, a: f64) -> Result<EvalResult<f64>, SpecialError> {
    RegularizedHurwitz::<f64>::new(s)?.eval(a)
}
fn pole_guard(function: &'static str, s: Complex64) -> Result<(), SpecialError> {
    if (s - 1.0).norm() <= POLE_GUARD {
        return Err(SpecialError::NearPole {
            function,
            re: s.re,
            im: s.im,
            radius: POLE_GUARD,
        });
    }
    Ok(())
}

/// Hurwitz zeta `sum_{n >= 0} (n + a)^(-s)`, continued to `Re(s) > 0`.
pub fn hurwitz_zeta(s: Complex64, a: f64) -> Result<EvalResult<Complex64>, SpecialError> {
    check_domain("hurwitz_zeta", s, a)?;
    pole_guard("hurwitz_zeta", s)?;
    let reg = hurwitz_zeta_regularized(s, a)?;
    let pole = 1.0 / (s - 1.0);
    let err = reg.err + 2.0 * f64::EPSILON * pole.norm();
    Ok(EvalResult::new(
        reg.value + pole,
        err,
        reg.method,
        reg.terms,
    ))
}

pub fn hurwitz_zeta_real(s: f64, a: f64) -> Result<EvalResult<f64>, SpecialError> {
    check_domain("hurwitz_zeta", s, a)?;
    pole_guard("hurwitz_zeta", Complex64::new(s, 0.0))?;
    let reg = hurwitz_zeta_regularized_real(s, a)?;
    let pole = 1.0 / (s - 1.0);
    let err = reg.err + 2.0 * f64::EPSILON * pole.abs();
    Ok(EvalResult::new(
        reg.value + pole,
        err,
        reg.method,
        reg.terms,
    ))
}

/// Riemann zeta for `Re(s) > 0`, `s != 1`.
pub fn zeta(s: Complex64) -> Result<EvalResult<Complex64>, SpecialError> {
    if s.im == 0.0 {
        return zeta_real(s.re)
            .map(|r| EvalResult::new(Complex64::new(r.value, 0.0), r.err, r.method, r.terms));
    }
    hurwitz_zeta(s, 1.0)
}

/// Riemann zeta on the real axis. On `(0, 1)` the result is checked to be
/// negative; a nonnegative value is reported as an invariant violation.
pub fn zeta_real(sigma: f64) -> Result<EvalResult<f64>, SpecialError> {
    let r = hurwitz_zeta_real(sigma, 1.0)?;
    if sigma > 0.0 && sigma < 1.0 && !(r.value < 0.0) {
        return Err(SpecialError::Invariant(format!(
            "zeta({sigma}) = {} is not negative on (0, 1)",
            r.value
        )));
    }
    Ok(r)
}

/// Order of the tail expansion used by the fractional-part route.
const FRACTIONAL_TAIL_ORDER: usize = 6;

/// `zeta(sigma) = sigma/(sigma - 1) - sigma * int_1^inf {x} x^(-sigma-1) dx` for
/// `0 < sigma < 1`.
///
/// Each unit segment `[n, n+1)` is integrated in closed form. Past the cutoff
/// `N` the remaining integral is `N^(-sigma)/(2 sigma)` minus a short
/// Bernoulli correction, with an explicit remainder bound.
pub fn zeta_via_fractional_part_integral(sigma: f64) -> Result<EvalResult<f64>, SpecialError> {
    if !(sigma > 0.0 && sigma < 1.0) {
        return Err(SpecialError::Domain {
            function: "zeta_via_fractional_part_integral",
            reason: format!("requires 0 < sigma < 1, got {sigma}"),
        });
    }

    let mut cutoff = 256usize;
    let tail_remainder = loop {
        let r = fractional_tail_remainder(sigma, cutoff);
        if r < 1e-14 {
            break r;
        }
        cutoff *= 2;
    };

    let mut integral = CompensatedSum::new();
    let mut abs_sum = 0.0;
    for n in 1..cutoff {
        let nf = n as f64;
        let l = (1.0 / nf).ln_1p();
        let scale = nf.powf(1.0 - sigma);
        // int_n^{n+1} x^-sigma dx  -  n int_n^{n+1} x^(-sigma-1) dx
        let first = scale * ((1.0 - sigma) * l).exp_m1() / (1.0 - sigma);
        let second = scale * (-sigma * l).exp_m1() / sigma;
        integral.add(first);
        integral.add(second);
        abs_sum += first.abs() + second.abs();
    }

    let nf = cutoff as f64;
    integral.add(nf.powf(-sigma) / (2.0 * sigma));
    let mut poch = 1.0; // (sigma + 1)_{2k-2}
    for (k, &c) in BERNOULLI_OVER_FACTORIAL
        .iter()
        .take(FRACTIONAL_TAIL_ORDER)
        .enumerate()
    {
        if k > 0 {
            let j = (2 * k) as f64;
            poch *= (sigma + j - 1.0) * (sigma + j);
        }
        integral.add(-c * poch * nf.powf(-sigma - (2 * k + 1) as f64));
    }

    let main = sigma / (sigma - 1.0);
    let value = main - sigma * integral.total();
    let err = sigma * (tail_remainder + 8.0 * f64::EPSILON * abs_sum) + f64::EPSILON * main.abs();
    if !(value <= main) {
        return Err(SpecialError::Invariant(format!(
            "fractional-part evaluation {value} exceeds sigma/(sigma-1) = {main}"
        )));
    }
    Ok(EvalResult::new(
        value,
        err,
        Method::FractionalPartIntegral,
        cutoff,
    ))
}

/// `4 (sigma+1)_{2K-1} / (2 pi)^{2K} * N^(1 - sigma - 2K) / (sigma + 2K - 1)`.
fn fractional_tail_remainder(sigma: f64, n: usize) -> f64 {
    let two_k = 2 * FRACTIONAL_TAIL_ORDER;
    let poch: f64 = (0..two_k - 1).map(|j| sigma + 1.0 + j as f64).product();
    let exponent = sigma + two_k as f64 - 1.0;
    4.0 * poch / (2.0 * PI).powi(two_k as i32) * (n as f64).powf(-exponent) / exponent
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_table() {
        let c = &*BERNOULLI_OVER_FACTORIAL;
        assert!((c[0] - 1.0 / 12.0).abs() < 1e-17);
        assert!((c[1] + 1.0 / 720.0).abs() < 1e-18);
        assert!((c[2] - 1.0 / 30240.0).abs() < 1e-19);
    }

    #[test]
    fn exprel_is_continuous_across_branch() {
        for &z in &[0.499_999_9, 0.500_000_1, -0.499_999_9, -0.500_000_1] {
            let direct = (f64::exp_m1(z)) / z;
            assert!((exprel(z) - direct).abs() < 1e-15);
        }
        assert_eq!(exprel(0.0), 1.0);
    }

    #[test]
    fn zeta_two_closed_form() {
        let r = zeta_real(2.0).unwrap();
        assert!((r.value - PI * PI / 6.0).abs() < 1e-14);
        assert!(r.err < 1e-14);
    }

    #[test]
    fn hurwitz_half_relation() {
        // zeta(s, 1/2) = (2^s - 1) zeta(s)
        let r = hurwitz_zeta_real(2.0, 0.5).unwrap();
        assert!((r.value - PI * PI / 2.0).abs() < 1e-13);
        let s = Complex64::new(1.5, 3.0);
        let lhs = hurwitz_zeta(s, 0.5).unwrap().value;
        let rhs = (Complex64::new(2.0, 0.0).powc(s) - 1.0) * zeta(s).unwrap().value;
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn regularized_at_one_is_minus_digamma() {
        // -psi(1) = Euler's gamma, -psi(1/2) = gamma + 2 ln 2
        let euler = 0.577_215_664_901_532_9;
        let r1 = hurwitz_zeta_regularized_real(1.0, 1.0).unwrap().value;
        let rh = hurwitz_zeta_regularized_real(1.0, 0.5).unwrap().value;
        assert!((r1 - euler).abs() < 1e-14);
        assert!((rh - (euler + 2.0 * 2f64.ln())).abs() < 1e-14);
    }

    #[test]
    fn pole_and_domain_errors() {
        assert!(matches!(zeta_real(1.0), Err(SpecialError::NearPole { .. })));
        assert!(matches!(
            zeta_real(1.0 + 1e-7),
            Err(SpecialError::NearPole { .. })
        ));
        assert!(zeta_real(1.0 + 1e-5).is_ok());
        assert!(matches!(zeta_real(0.0), Err(SpecialError::Domain { .. })));
        assert!(matches!(
            hurwitz_zeta_real(2.0, 0.0),
            Err(SpecialError::Domain { .. })
        ));
        assert!(matches!(
            hurwitz_zeta_real(2.0, 1.5),
            Err(SpecialError::Domain { .. })
        ));
        assert!(zeta_via_fractional_part_integral(1.0).is_err());
    }

    #[test]
    fn complex_and_real_paths_agree_on_axis() {
        for &s in &[0.3, 0.9, 1.0, 1.7, 4.0] {
            for &a in &[0.01, 0.37, 1.0] {
                let c = hurwitz_zeta_regularized(Complex64::new(s, 0.0), a).unwrap();
                let r = hurwitz_zeta_regularized_real(s, a).unwrap();
                assert!((c.value.re - r.value).abs() <= 1e-15 * r.value.abs().max(1.0));
                assert_eq!(c.value.im, 0.0);
            }
        }
    }

    #[test]
    fn fractional_part_route_examples() {
        let r = zeta_via_fractional_part_integral(0.9).unwrap();
        assert!(r.value <= 0.9 / (0.9 - 1.0));
        let small = zeta_via_fractional_part_integral(0.01).unwrap();
        let em = zeta_real(0.01).unwrap();
        assert!((small.value - em.value).abs() < 1e-9);
        assert!((small.value + 0.508).abs() < 2e-3);
    }
}
