//! Exact Dirichlet coefficients of `zeta(s) L(s, chi1) L(s, chi2) L(s, chi1 chi2)`
//! and the sharp and exponentially smoothed partial sums built from them.

use std::io::Write;

use thiserror::Error;

use crate::characters::{ProductCharacter, QuadraticCharacter};
use crate::special::{EvalResult, Method};
use crate::sum::CompensatedSum;

/// Hard cap on the number of coefficients generated for a smoothed sum.
pub const MAX_SMOOTHED_TERMS: usize = 1 << 24;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoeffError {
    #[error("sequences must be nonempty and of equal length (got {0} and {1})")]
    LengthMismatch(usize, usize),
    #[error("integer overflow in convolution at index {0}")]
    Overflow(usize),
    #[error("coefficient table invariant violated at n = {n}: {reason}")]
    InvariantViolation { n: usize, reason: String },
    #[error("table length must be at least 1")]
    EmptyTable,
    #[error("x = {x} outside [1, {len}] for a table of length {len}")]
    XOutOfRange { x: f64, len: usize },
    #[error("x must be finite and positive, got {0}")]
    InvalidX(f64),
    #[error("beta must lie in (0, 1), got {0}")]
    BetaOutOfRange(f64),
    #[error("tolerance must be finite and positive, got {0}")]
    InvalidTolerance(f64),
    #[error("could not certify the smoothed-sum tail for x = {x} within {max_terms} terms")]
    TailNotCertified { x: f64, max_terms: usize },
    #[error("smoothed sum needs {needed} coefficients but the table has {available}")]
    TableTooShort { needed: usize, available: usize },
    #[error("csv export failed: {0}")]
    Csv(String),
}

/// Dirichlet convolution `w_n = sum_{d | n} u_d v_{n/d}` of two sequences
/// indexed from 1, truncated at their common length.
pub fn dirichlet_convolve(u: &[i64], v: &[i64]) -> Result<Vec<i64>, CoeffError> {
    if u.is_empty() || u.len() != v.len() {
        return Err(CoeffError::LengthMismatch(u.len(), v.len()));
    }
    let n = u.len();
    let mut w = vec![0i64; n];
    for i in 1..=n {
        let ui = u[i - 1];
        if ui == 0 {
            continue;
        }
        for j in 1..=n / i {
            let idx = i * j - 1;
            let prod = ui
                .checked_mul(v[j - 1])
                .ok_or(CoeffError::Overflow(idx + 1))?;
            w[idx] = w[idx]
                .checked_add(prod)
                .ok_or(CoeffError::Overflow(idx + 1))?;
        }
    }
    Ok(w)
}

/// Coefficients `a_1..a_N` of `f(s)` for a pair of quadratic characters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientTable {
    values: Vec<i64>,
    d1: i64,
    d2: i64,
}

impl CoefficientTable {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `a_n` for `1 <= n <= len`.
    pub fn get(&self, n: usize) -> Option<i64> {
        n.checked_sub(1).and_then(|i| self.values.get(i).copied())
    }

    /// Coefficients in order, `values()[0] = a_1`.
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn discriminants(&self) -> (i64, i64) {
        (self.d1, self.d2)
    }

    /// Writes `n,a_n` rows under a header line.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<(), CoeffError> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(writer);
        let io = |e: csv::Error| CoeffError::Csv(e.to_string());
        w.write_record(["n", "a_n"]).map_err(io)?;
        for (i, a) in self.values.iter().enumerate() {
            w.write_record([(i + 1).to_string(), a.to_string()])
                .map_err(io)?;
        }
        w.flush().map_err(|e| CoeffError::Csv(e.to_string()))
    }

    /// Checks `a_1 = 1`, nonnegativity, and `a_{p^k m} = a_{p^k} a_m` for
    /// `p` the least prime factor of each index.
    fn validate(&self) -> Result<(), CoeffError> {
        let n = self.values.len();
        if self.values[0] != 1 {
            return Err(CoeffError::InvariantViolation {
                n: 1,
                reason: format!("a_1 = {} instead of 1", self.values[0]),
            });
        }
        if let Some(i) = self.values.iter().position(|&a| a < 0) {
            return Err(CoeffError::InvariantViolation {
                n: i + 1,
                reason: format!("negative coefficient {}", self.values[i]),
            });
        }
        let spf = smallest_prime_factors(n);
        for (m, &p) in spf.iter().enumerate().skip(2) {
            let mut prime_power = 1;
            let mut rest = m;
            while rest % p == 0 {
                rest /= p;
                prime_power *= p;
            }
            if rest > 1 {
                let expected = self.values[prime_power - 1] * self.values[rest - 1];
                if self.values[m - 1] != expected {
                    return Err(CoeffError::InvariantViolation {
                        n: m,
                        reason: format!(
                            "a_{m} = {} but a_{prime_power} * a_{rest} = {expected}",
                            self.values[m - 1]
                        ),
                    });
                }
            }
        }
        Ok(())
    }
}

fn smallest_prime_factors(n: usize) -> Vec<usize> {
    let mut spf = vec![0usize; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            let mut j = i;
            while j <= n {
                if spf[j] == 0 {
                    spf[j] = i;
                }
                j += i;
            }
        }
    }
    spf
}

/// `1 * chi1 * chi2 * (chi1 chi2)` truncated at `n` terms.
///
/// The result is validated; a negative coefficient or a broken
/// multiplicativity relation is a hard error naming the index.
pub fn coefficients_of_f(
    chi1: QuadraticCharacter,
    chi2: QuadraticCharacter,
    n: usize,
) -> Result<CoefficientTable, CoeffError> {
    if n == 0 {
        return Err(CoeffError::EmptyTable);
    }
    let product = ProductCharacter::new(chi1, chi2);
    let ones = vec![1i64; n];
    let seq = |f: &dyn Fn(u64) -> i8| (1..=n as u64).map(|k| f(k) as i64).collect::<Vec<_>>();
    let c1 = seq(&|k| chi1.value(k));
    let c2 = seq(&|k| chi2.value(k));
    let c12 = seq(&|k| product.value(k));

    let w = dirichlet_convolve(&ones, &c1)?;
    let w = dirichlet_convolve(&w, &c2)?;
    let values = dirichlet_convolve(&w, &c12)?;

    let table = CoefficientTable {
        values,
        d1: chi1.discriminant(),
        d2: chi2.discriminant(),
    };
    table.validate()?;
    Ok(table)
}

fn check_beta(beta: f64) -> Result<(), CoeffError> {
    if beta > 0.0 && beta < 1.0 {
        Ok(())
    } else {
        Err(CoeffError::BetaOutOfRange(beta))
    }
}

/// `A(x, beta) = sum_{n <= x} a_n n^(-beta)`.
pub fn partial_sum_a(table: &CoefficientTable, x: f64, beta: f64) -> Result<f64, CoeffError> {
    check_beta(beta)?;
    if !(x >= 1.0) || !x.is_finite() || x.floor() as usize > table.len() {
        return Err(CoeffError::XOutOfRange {
            x,
            len: table.len(),
        });
    }
    let upto = x.floor() as usize;
    let mut acc = CompensatedSum::new();
    for (i, &a) in table.values[..upto].iter().enumerate() {
        if a != 0 {
            acc.add(a as f64 * ((i + 1) as f64).powf(-beta));
        }
    }
    Ok(acc.total())
}

/// Where the coefficients of a smoothed sum come from.
#[derive(Debug, Clone, Copy)]
pub enum CoefficientSource<'a> {
    /// A precomputed table; it must be long enough for the certified cutoff.
    Table(&'a CoefficientTable),
    /// Generate exactly as many coefficients as the cutoff requires.
    Pair(QuadraticCharacter, QuadraticCharacter),
}

/// Cutoff `M` and the certified bound on `sum_{n > M} n^(3 - beta) e^(-n/x)`,
/// which dominates the true tail because `0 <= a_n <= tau_4(n) <= n^3`.
///
/// Starts from `M = ceil(8x)` and doubles until the bound is below `tol`.
pub fn certified_cutoff(x: f64, beta: f64, tol: f64) -> Result<(usize, f64), CoeffError> {
    let mut m = ((8.0 * x).ceil() as usize).max(1);
    loop {
        if m > MAX_SMOOTHED_TERMS {
            return Err(CoeffError::TailNotCertified {
                x,
                max_terms: MAX_SMOOTHED_TERMS,
            });
        }
        let first = (m + 1) as f64;
        // consecutive-term ratio bound for n >= M + 1
        let ln_ratio = 3.0 * (1.0 / first).ln_1p() - 1.0 / x;
        if ln_ratio < 0.0 {
            let one_minus_ratio = -ln_ratio.exp_m1();
            let ln_tail = (3.0 - beta) * first.ln() - first / x - one_minus_ratio.ln();
            let tail = ln_tail.exp();
            if tail < tol {
                return Ok((m, tail));
            }
        }
        m *= 2;
    }
}

/// `S(x, beta) = sum_{n >= 1} a_n n^(-beta) e^(-n/x)` with a certified tail.
pub fn smoothed_sum_s(
    source: CoefficientSource<'_>,
    x: f64,
    beta: f64,
    tol: f64,
) -> Result<EvalResult<f64>, CoeffError> {
    check_beta(beta)?;
    if !(x > 0.0) || !x.is_finite() {
        return Err(CoeffError::InvalidX(x));
    }
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(CoeffError::InvalidTolerance(tol));
    }
    let (cutoff, tail) = certified_cutoff(x, beta, tol)?;

    let generated;
    let table = match source {
        CoefficientSource::Table(t) => {
            if t.len() < cutoff {
                return Err(CoeffError::TableTooShort {
                    needed: cutoff,
                    available: t.len(),
                });
            }
            t
        }
        CoefficientSource::Pair(chi1, chi2) => {
            generated = coefficients_of_f(chi1, chi2, cutoff)?;
            &generated
        }
    };

    let mut acc = CompensatedSum::new();
    for (i, &a) in table.values[..cutoff].iter().enumerate() {
        if a != 0 {
            let n = (i + 1) as f64;
            acc.add(a as f64 * (-beta * n.ln() - n / x).exp());
        }
    }
    let value = acc.total();
    let err = tail + 8.0 * f64::EPSILON * value.abs();
    Ok(EvalResult::new(value, err, Method::DirichletSeries, cutoff))
}
