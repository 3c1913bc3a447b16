use std::f64::consts::PI;

use num_complex::Complex64;

use super::{EvalResult, Method, SpecialError};

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// Arguments closer than this to a nonpositive integer are treated as poles.
const GAMMA_POLE_RADIUS: f64 = 1e-12;

/// Coefficients of a Lanczos-type rational approximation of `Gamma`.
///
/// Exposed so that the identity checks can be run against a deliberately
/// perturbed table.
#[derive(Debug, Clone, PartialEq)]
pub struct Lanczos {
    pub g: f64,
    pub coefficients: [f64; 9],
}

impl Lanczos {
    /// `g = 7`, nine terms; relative error near 1e-15 in the right half-plane.
    pub const STANDARD: Lanczos = Lanczos {
        g: 7.0,
        coefficients: [
            0.999_999_999_999_809_9,
            676.520_368_121_885_1,
            -1_259.139_216_722_402_8,
            771.323_428_777_653_1,
            -176.615_029_162_140_6,
            12.507_343_278_686_905,
            -0.138_571_095_265_720_12,
            9.984_369_578_019_572e-6,
            1.505_632_735_149_311_6e-7,
        ],
    };

    fn ln_gamma_right(&self, s: Complex64) -> Complex64 {
        let z = s - 1.0;
        let mut series = Complex64::new(self.coefficients[0], 0.0);
        for (k, &c) in self.coefficients.iter().enumerate().skip(1) {
            series += c / (z + k as f64);
        }
        let t = z + self.g + 0.5;
        LN_SQRT_2PI + (z + 0.5) * t.ln() - t + series.ln()
    }
}

impl Default for Lanczos {
    fn default() -> Self {
        Self::STANDARD
    }
}

/// `ln sin(pi z)` on some branch, stable for large `|Im z|`.
fn ln_sin_pi(z: Complex64) -> Complex64 {
    let i = Complex64::i();
    let w = z * PI;
    if w.im.abs() < 20.0 {
        w.sin().ln()
    } else if w.im > 0.0 {
        // sin w = e^{-iw} (e^{2iw} - 1) / (2i)
        -i * w + (((2.0 * i * w).exp() - 1.0) / (2.0 * i)).ln()
    } else {
        // sin w = e^{iw} (1 - e^{-2iw}) / (2i)
        i * w + ((1.0 - (-2.0 * i * w).exp()) / (2.0 * i)).ln()
    }
}

fn check_gamma_argument(s: Complex64) -> Result<(), SpecialError> {
    if !s.re.is_finite() || !s.im.is_finite() {
        return Err(SpecialError::Domain {
            function: "gamma",
            reason: "non-finite argument".into(),
        });
    }
    let k = s.re.round();
    if k <= 0.0 && (s - k).norm() < GAMMA_POLE_RADIUS {
        return Err(SpecialError::NearPole {
            function: "gamma",
            re: s.re,
            im: s.im,
            radius: GAMMA_POLE_RADIUS,
        });
    }
    Ok(())
}

/// Principal-free logarithm of `Gamma(s)`: `exp` of the result is `Gamma(s)`,
/// and its real part is `ln|Gamma(s)|`.
pub fn ln_gamma_with(lanczos: &Lanczos, s: Complex64) -> Result<Complex64, SpecialError> {
    check_gamma_argument(s)?;
    if s.re < 0.5 {
        let reflected = lanczos.ln_gamma_right(1.0 - s);
        Ok(PI.ln() - ln_sin_pi(s) - reflected)
    } else {
        Ok(lanczos.ln_gamma_right(s))
    }
}

pub fn ln_gamma(s: Complex64) -> Result<Complex64, SpecialError> {
    ln_gamma_with(&Lanczos::STANDARD, s)
}

pub fn gamma_with(lanczos: &Lanczos, s: Complex64) -> Result<EvalResult<Complex64>, SpecialError> {
    let lg = ln_gamma_with(lanczos, s)?;
    let value = lg.exp();
    if !value.re.is_finite() || !value.im.is_finite() {
        return Err(SpecialError::NonFinite {
            function: "gamma",
            re: s.re,
            im: s.im,
        });
    }
    // approximation error plus the rounding of a log of size |lg| being exponentiated
    let rel = 2e-15 + 4.0 * f64::EPSILON * (1.0 + lg.norm());
    Ok(EvalResult::new(
        value,
        rel * value.norm(),
        Method::Lanczos,
        lanczos.coefficients.len(),
    ))
}

/// Complex Gamma function, reflecting through `Gamma(s) Gamma(1-s) = pi / sin(pi s)`
/// for `Re(s) < 1/2`.
pub fn gamma(s: Complex64) -> Result<EvalResult<Complex64>, SpecialError> {
    gamma_with(&Lanczos::STANDARD, s)
}

pub fn gamma_real(x: f64) -> Result<EvalResult<f64>, SpecialError> {
    gamma(Complex64::new(x, 0.0)).map(|r| r.re())
}

/// `|Gamma(sigma + i t)| / (t^(sigma - 1/2) e^(-pi t / 2))`, which tends to
/// `sqrt(2 pi)` as `t` grows. Requires `t >= 1`.
pub fn stirling_decay_ratio(sigma: f64, t: f64) -> Result<f64, SpecialError> {
    if !(t >= 1.0) || !sigma.is_finite() || !t.is_finite() {
        return Err(SpecialError::Domain {
            function: "stirling_decay_ratio",
            reason: format!("need finite sigma and t >= 1, got sigma={sigma}, t={t}"),
        });
    }
    let ln_abs = ln_gamma(Complex64::new(sigma, t))?.re;
    Ok((ln_abs - (sigma - 0.5) * t.ln() + PI * t / 2.0).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn small_integers_and_half() {
        assert!((gamma_real(1.0).unwrap().value - 1.0).abs() < 1e-14);
        assert!((gamma_real(5.0).unwrap().value - 24.0).abs() < 24.0 * 1e-14);
        // reflection oracle at 1/2: Gamma(1/2)^2 = pi / sin(pi/2)
        let oracle = (PI / (PI * 0.5).sin()).sqrt();
        assert!((gamma_real(0.5).unwrap().value - oracle).abs() < 1e-14);
        assert!((oracle - 1.772_453_850_9).abs() < 1e-10);
    }

    #[test]
    fn factorials_up_to_thirty() {
        let mut fact = 1.0f64;
        for n in 1..30u32 {
            let g = gamma_real(n as f64 + 1.0).unwrap().value;
            fact *= n as f64;
            assert!((g - fact).abs() / fact < 1e-13, "n={n}");
        }
    }

    #[test]
    fn poles_are_errors() {
        for k in 0..5 {
            let err = gamma(Complex64::new(-(k as f64), 0.0)).unwrap_err();
            assert!(matches!(err, SpecialError::NearPole { .. }));
        }
        assert!(gamma(Complex64::new(-2.0 + 1e-9, 0.0)).is_ok());
    }

    #[test]
    fn negative_half_integers() {
        // Gamma(-1/2) = -2 sqrt(pi)
        let g = gamma_real(-0.5).unwrap().value;
        assert!((g + 2.0 * PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn recurrence_off_axis() {
        for &(re, im) in &[
            (0.3, 7.0),
            (-3.7, 2.5),
            (12.0, -40.0),
            (-20.5, 0.25),
            (1.5, 90.0),
        ] {
            let s = Complex64::new(re, im);
            let lhs = gamma(s + 1.0).unwrap().value;
            let rhs = s * gamma(s).unwrap().value;
            assert!(rel(lhs, rhs) < 1e-12, "s={s}");
        }
    }

    #[test]
    fn large_imaginary_parts_stay_finite() {
        let r = stirling_decay_ratio(-1.0, 200.0).unwrap();
        assert!((r - (2.0 * PI).sqrt()).abs() < 0.01);
    }

    #[test]
    fn stirling_ratio_rejects_small_t() {
        assert!(stirling_decay_ratio(0.5, 0.5).is_err());
    }

    #[test]
    fn perturbed_coefficients_break_recurrence() {
        let mut bad = Lanczos::STANDARD;
        bad.coefficients[3] *= 1.0 + 1e-6;
        let s = Complex64::new(2.5, 1.0);
        let lhs = gamma_with(&bad, s + 1.0).unwrap().value;
        let rhs = s * gamma_with(&bad, s).unwrap().value;
        assert!(rel(lhs, rhs) > 1e-10);
    }
}
