//! Command-line front end.
//!
//! Data goes to stdout (or `--out`) as CSV or JSON; everything else, timings
//! included, goes to stderr. Exit codes: 0 success, 1 a verification ran and
//! failed, 2 invalid input or a computation that could not complete.

use std::ffi::OsString;
use std::fs::File;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use crate::characters::{enumerate_fundamental_discriminants, QuadraticCharacter};
use crate::coeffs::coefficients_of_f;
use crate::harness::report::{fmt_f64, write_report, Format, Report};
use crate::harness::{
    default_sandwich_grid, lemma_suite, siegel_scan, verify_residue_decay, verify_sandwich,
    LemmaCheck, LemmaConfig, SandwichReport, SuiteStatus, DEFAULT_RESIDUE_BETA,
    DEFAULT_RESIDUE_GRID, DEFAULT_RESIDUE_THRESHOLD, MAX_SCAN_LIMIT,
};
use crate::lfun::{f_value, f_value_real, find_real_zeros, l_value, l_value_real, BETA_CEILING};
use crate::mellin::{inverse_mellin_exp, ContourSpec};
use crate::special::{EvalResult, Method};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

/// Largest coefficient table the CLI will build.
pub const MAX_COEFF_N: usize = 10_000_000;

#[derive(Debug, Parser)]
#[command(
    name = "siegel",
    version,
    about = "Numerical checks around L(1, chi) for quadratic characters"
)]
#[command(arg_required_else_help = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value_t = FormatArg::Csv, global = true)]
    pub format: FormatArg,
    /// Write data here instead of standard output
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List fundamental discriminants with |d| <= limit
    #[command(allow_negative_numbers = true)]
    Chars {
        #[arg(long)]
        limit: u64,
    },
    /// Coefficients a_1..a_n of zeta L(chi1) L(chi2) L(chi1 chi2)
    #[command(allow_negative_numbers = true)]
    Coeffs {
        #[arg(long)]
        d1: i64,
        #[arg(long)]
        d2: i64,
        #[arg(long, default_value_t = 100)]
        n: usize,
    },
    /// L(s, chi_d)
    #[command(allow_negative_numbers = true)]
    Lvalue {
        #[arg(long)]
        d: i64,
        /// Real part of s
        #[arg(long)]
        s: f64,
        /// Imaginary part of s
        #[arg(long, default_value_t = 0.0)]
        im: f64,
    },
    /// f(s) = zeta(s) L(s, chi1) L(s, chi2) L(s, chi1 chi2)
    #[command(allow_negative_numbers = true)]
    Fvalue {
        #[arg(long)]
        d1: i64,
        #[arg(long)]
        d2: i64,
        #[arg(long)]
        s: f64,
        #[arg(long, default_value_t = 0.0)]
        im: f64,
    },
    /// Real zeros of L(s, chi_d) found by sign changes
    #[command(allow_negative_numbers = true)]
    Zeros {
        #[arg(long)]
        d: i64,
        #[arg(long, default_value_t = 0.5)]
        lo: f64,
        #[arg(long, default_value_t = 0.999)]
        hi: f64,
        #[arg(long, default_value_t = 1e-3)]
        step: f64,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Compare the truncated inverse Mellin integral of Gamma with e^(-y)
    #[command(name = "mellin-check", allow_negative_numbers = true)]
    MellinCheck {
        #[arg(long, value_delimiter = ',', default_values_t = [0.1, 0.5, 1.0, 2.0, 5.0, 10.0])]
        y: Vec<f64>,
        #[arg(long, default_value_t = 2.0)]
        sigma0: f64,
        #[arg(long = "T", default_value_t = 40.0)]
        height: f64,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
        /// Allowed absolute deviation from e^(-y)
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Check 1 <= A(x, beta) <= e S(x, beta)
    #[command(allow_negative_numbers = true)]
    Sandwich {
        #[arg(long, required_unless_present = "default_grid")]
        d1: Option<i64>,
        #[arg(long, required_unless_present = "default_grid")]
        d2: Option<i64>,
        #[arg(long, required_unless_present = "default_grid")]
        x: Option<f64>,
        #[arg(long, required_unless_present = "default_grid")]
        beta: Option<f64>,
        /// Run the built-in grid of pairs, x and beta instead
        #[arg(long, conflicts_with_all = ["d1", "d2", "x", "beta"])]
        default_grid: bool,
    },
    /// Check that the residue-corrected smoothed sum decays like x^(-beta)
    #[command(name = "residue-decay", allow_negative_numbers = true)]
    ResidueDecay {
        #[arg(long)]
        d1: i64,
        #[arg(long)]
        d2: i64,
        #[arg(long, default_value_t = DEFAULT_RESIDUE_BETA)]
        beta: f64,
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_RESIDUE_GRID)]
        grid: Vec<f64>,
        /// Allowed sup/inf spread of |R(x)| x^beta
        #[arg(long, default_value_t = DEFAULT_RESIDUE_THRESHOLD)]
        threshold: f64,
    },
    /// L(1, chi_d) and L(1, chi_d) |d|^epsilon for all |d| <= limit
    #[command(allow_negative_numbers = true)]
    Scan {
        #[arg(long)]
        limit: u64,
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
        /// Worker threads (default: available parallelism)
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Run the lemma-level property checks
    #[command(name = "lemma-suite", allow_negative_numbers = true)]
    LemmaSuite {
        /// Checks to run; pass the flag with no value to run none
        #[arg(long, value_delimiter = ',', num_args = 0.., default_values_t = LemmaCheck::ALL.map(|c| c.name().to_string()))]
        checks: Vec<String>,
        #[arg(long, default_value_t = LemmaConfig::default().seed)]
        seed: u64,
        #[arg(long, default_value_t = LemmaConfig::default().recurrence_samples)]
        samples: usize,
        #[arg(long, default_value_t = LemmaConfig::default().l1_bound_limit)]
        l1_limit: u64,
        #[arg(long, default_value_t = LemmaConfig::default().positivity_limit)]
        positivity_limit: u64,
        #[arg(long, default_value_t = LemmaConfig::default().zero_scan_limit)]
        zero_limit: u64,
        #[arg(long, default_value_t = LemmaConfig::default().zero_scan_step)]
        zero_step: f64,
        #[arg(long)]
        jobs: Option<usize>,
    },
}

/// Parses `argv` (program name first) without running anything.
pub fn parse<I, T>(argv: I) -> Result<Cli, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    Cli::try_parse_from(argv)
}

fn need(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn discriminant(d: i64) -> Result<QuadraticCharacter, String> {
    QuadraticCharacter::new(d).map_err(|e| e.to_string())
}

fn beta_ok(beta: f64) -> Result<(), String> {
    need(beta > 0.0 && beta < BETA_CEILING, || {
        format!("--beta must lie in (0, {BETA_CEILING}), got {beta}")
    })
}

fn finite(name: &str, v: f64) -> Result<(), String> {
    need(v.is_finite(), || {
        format!("--{name} must be finite, got {v}")
    })
}

fn jobs_ok(jobs: Option<usize>) -> Result<(), String> {
    need(jobs != Some(0), || "--jobs must be at least 1".into())
}

impl Cli {
    /// Checks every parameter against the preconditions of the operation it
    /// feeds, before any computation.
    pub fn validate(&self) -> Result<(), String> {
        match &self.command {
            Command::Chars { limit } => need((3..=1u64 << 40).contains(limit), || {
                format!("--limit must lie in [3, 2^40], got {limit}")
            }),
            Command::Coeffs { d1, d2, n } => {
                discriminant(*d1)?;
                discriminant(*d2)?;
                need((1..=MAX_COEFF_N).contains(n), || {
                    format!("--n must lie in [1, {MAX_COEFF_N}], got {n}")
                })
            }
            Command::Lvalue { d, s, im } => {
                let chi = discriminant(*d)?;
                need(!chi.is_principal(), || {
                    "--d 1 is the principal character; use a nontrivial discriminant".into()
                })?;
                finite("s", *s)?;
                finite("im", *im)?;
                need(*s > 0.0, || format!("--s must be positive, got {s}"))
            }
            Command::Fvalue { d1, d2, s, im } => {
                discriminant(*d1)?;
                discriminant(*d2)?;
                finite("s", *s)?;
                finite("im", *im)?;
                need(*s > 0.0, || format!("--s must be positive, got {s}"))
            }
            Command::Zeros {
                d,
                lo,
                hi,
                step,
                tol,
            } => {
                let chi = discriminant(*d)?;
                need(!chi.is_principal(), || {
                    "--d 1 is the principal character".into()
                })?;
                need(*lo > 0.0 && lo < hi && *hi <= BETA_CEILING, || {
                    format!("need 0 < --lo < --hi <= {BETA_CEILING}, got {lo} and {hi}")
                })?;
                need(
                    *step > 0.0 && *tol > 0.0 && step.is_finite() && tol.is_finite(),
                    || "--step and --tol must be positive".into(),
                )?;
                need((hi - lo) / step <= 1e7, || {
                    "--step too small for the interval".into()
                })
            }
            Command::MellinCheck {
                y,
                sigma0,
                height,
                step,
                tol,
            } => {
                need(!y.is_empty(), || "--y needs at least one value".into())?;
                for v in y {
                    need(*v > 0.0 && v.is_finite(), || {
                        format!("--y values must be positive, got {v}")
                    })?;
                }
                need(*sigma0 > 0.0 && sigma0.is_finite(), || {
                    format!("--sigma0 must be positive, got {sigma0}")
                })?;
                need(*tol > 0.0, || format!("--tol must be positive, got {tol}"))?;
                ContourSpec::new(*sigma0, *height, *step).map_err(|e| e.to_string())?;
                need(height / step <= 1e7, || "--step too small for --T".into())
            }
            Command::Sandwich {
                d1,
                d2,
                x,
                beta,
                default_grid,
            } => {
                if *default_grid {
                    return Ok(());
                }
                let (Some(d1), Some(d2), Some(x), Some(beta)) = (d1, d2, x, beta) else {
                    return Err("--d1, --d2, --x and --beta are required".into());
                };
                discriminant(*d1)?;
                discriminant(*d2)?;
                beta_ok(*beta)?;
                need(*x >= 1.0 && x.is_finite(), || {
                    format!("--x must be at least 1, got {x}")
                })?;
                need(*x <= 1e7, || format!("--x must be at most 1e7, got {x}"))
            }
            Command::ResidueDecay {
                d1,
                d2,
                beta,
                grid,
                threshold,
            } => {
                discriminant(*d1)?;
                discriminant(*d2)?;
                beta_ok(*beta)?;
                need(!grid.is_empty(), || {
                    "--grid needs at least one value".into()
                })?;
                for x in grid {
                    need(*x >= 1.0 && *x <= 1e6, || {
                        format!("--grid values must lie in [1, 1e6], got {x}")
                    })?;
                }
                need(*threshold >= 1.0 && threshold.is_finite(), || {
                    format!("--threshold must be at least 1, got {threshold}")
                })
            }
            Command::Scan {
                limit,
                epsilon,
                jobs,
            } => {
                need((3..=MAX_SCAN_LIMIT).contains(limit), || {
                    format!("--limit must lie in [3, {MAX_SCAN_LIMIT}], got {limit}")
                })?;
                need(*epsilon > 0.0 && *epsilon <= 0.5, || {
                    format!("--epsilon must lie in (0, 0.5], got {epsilon}")
                })?;
                jobs_ok(*jobs)
            }
            Command::LemmaSuite { .. } => self.lemma_config().map(|_| ()),
        }
    }

    fn lemma_config(&self) -> Result<LemmaConfig, String> {
        let Command::LemmaSuite {
            checks,
            seed,
            samples,
            l1_limit,
            positivity_limit,
            zero_limit,
            zero_step,
            jobs,
        } = &self.command
        else {
            return Err("not a lemma-suite invocation".into());
        };
        let checks = checks
            .iter()
            .map(|name| {
                LemmaCheck::from_name(name).ok_or_else(|| format!("unknown check {name:?}"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        for (flag, v) in [
            ("l1-limit", l1_limit),
            ("positivity-limit", positivity_limit),
            ("zero-limit", zero_limit),
        ] {
            need((3..=MAX_SCAN_LIMIT).contains(v), || {
                format!("--{flag} must lie in [3, {MAX_SCAN_LIMIT}], got {v}")
            })?;
        }
        need(*zero_step >= 1e-5 && *zero_step <= 0.1, || {
            format!("--zero-step must lie in [1e-5, 0.1], got {zero_step}")
        })?;
        need(*samples <= 1_000_000, || {
            "--samples must be at most 1e6".into()
        })?;
        jobs_ok(*jobs)?;
        Ok(LemmaConfig {
            checks,
            seed: *seed,
            recurrence_samples: *samples,
            l1_bound_limit: *l1_limit,
            positivity_limit: *positivity_limit,
            zero_scan_limit: *zero_limit,
            zero_scan_step: *zero_step,
            jobs: *jobs,
            ..LemmaConfig::default()
        })
    }
}

#[derive(Serialize)]
struct CharsOut {
    limit: u64,
    rows: Vec<CharRow>,
}

#[derive(Serialize)]
struct CharRow {
    d: i64,
    q: u64,
}

impl Report for CharsOut {
    fn header(&self) -> Vec<&'static str> {
        vec!["d", "q"]
    }
    fn records(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| vec![r.d.to_string(), r.q.to_string()])
            .collect()
    }
}

#[derive(Serialize)]
struct CoeffsOut {
    d1: i64,
    d2: i64,
    a: Vec<i64>,
}

impl Report for CoeffsOut {
    fn header(&self) -> Vec<&'static str> {
        vec!["n", "a_n"]
    }
    fn records(&self) -> Vec<Vec<String>> {
        self.a
            .iter()
            .enumerate()
            .map(|(i, v)| vec![(i + 1).to_string(), v.to_string()])
            .collect()
    }
}

#[derive(Serialize)]
struct ValueOut {
    d1: i64,
    d2: Option<i64>,
    s_re: f64,
    s_im: f64,
    re: f64,
    im: f64,
    err: f64,
    method: Method,
    terms: usize,
}

impl ValueOut {
    fn new(d1: i64, d2: Option<i64>, s: Complex64, v: EvalResult<Complex64>) -> Self {
        ValueOut {
            d1,
            d2,
            s_re: s.re,
            s_im: s.im,
            re: v.value.re,
            im: v.value.im,
            err: v.err,
            method: v.method,
            terms: v.terms,
        }
    }
}

impl Report for ValueOut {
    fn header(&self) -> Vec<&'static str> {
        match self.d2 {
            None => vec!["d", "s_re", "s_im", "re", "im", "err", "method", "terms"],
            Some(_) => vec![
                "d1", "d2", "s_re", "s_im", "re", "im", "err", "method", "terms",
            ],
        }
    }
    fn records(&self) -> Vec<Vec<String>> {
        let mut r = vec![self.d1.to_string()];
        if let Some(d2) = self.d2 {
            r.push(d2.to_string());
        }
        r.extend([
            fmt_f64(self.s_re),
            fmt_f64(self.s_im),
            fmt_f64(self.re),
            fmt_f64(self.im),
            fmt_f64(self.err),
            self.method.to_string(),
            self.terms.to_string(),
        ]);
        vec![r]
    }
}

#[derive(Serialize)]
struct ZerosOut {
    d: i64,
    lo: f64,
    hi: f64,
    step: f64,
    tol: f64,
    zeros: Vec<f64>,
}

impl Report for ZerosOut {
    fn header(&self) -> Vec<&'static str> {
        vec!["d", "zero"]
    }
    fn records(&self) -> Vec<Vec<String>> {
        self.zeros
            .iter()
            .map(|z| vec![self.d.to_string(), fmt_f64(*z)])
            .collect()
    }
}

#[derive(Serialize)]
struct MellinRow {
    y: f64,
    value: f64,
    expected: f64,
    deviation: f64,
    err_bound: f64,
    passed: bool,
}

#[derive(Serialize)]
struct MellinOut {
    contour: ContourSpec,
    tol: f64,
    rows: Vec<MellinRow>,
    passed: bool,
}

impl Report for MellinOut {
    fn header(&self) -> Vec<&'static str> {
        vec!["y", "value", "expected", "deviation", "err_bound", "passed"]
    }
    fn records(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| {
                vec![
                    fmt_f64(r.y),
                    fmt_f64(r.value),
                    fmt_f64(r.expected),
                    fmt_f64(r.deviation),
                    fmt_f64(r.err_bound),
                    r.passed.to_string(),
                ]
            })
            .collect()
    }
}

#[derive(Serialize)]
struct SandwichGrid {
    reports: Vec<SandwichReport>,
}

impl Report for SandwichGrid {
    fn header(&self) -> Vec<&'static str> {
        vec!["d1", "d2", "x", "beta", "A", "S", "passed"]
    }
    fn records(&self) -> Vec<Vec<String>> {
        self.reports.iter().flat_map(|r| r.records()).collect()
    }
}

/// Rendered data plus whether the verification it carries passed.
struct Outcome {
    data: Vec<u8>,
    code: i32,
}

fn render<R: Report>(report: &R, format: Format, code: i32) -> Result<Outcome, String> {
    let mut data = Vec::new();
    write_report(report, format, &mut data).map_err(|e| e.to_string())?;
    Ok(Outcome { data, code })
}

fn execute(cli: &Cli, stderr: &mut dyn Write) -> Result<Outcome, String> {
    let format: Format = cli.output.format.into();
    let err = |e: &dyn std::fmt::Display| e.to_string();
    match &cli.command {
        Command::Chars { limit } => {
            let ds = enumerate_fundamental_discriminants(*limit).map_err(|e| err(&e))?;
            let rows = ds
                .into_iter()
                .map(|d| CharRow {
                    d,
                    q: d.unsigned_abs(),
                })
                .collect();
            render(
                &CharsOut {
                    limit: *limit,
                    rows,
                },
                format,
                EXIT_OK,
            )
        }
        Command::Coeffs { d1, d2, n } => {
            let table = coefficients_of_f(discriminant(*d1)?, discriminant(*d2)?, *n)
                .map_err(|e| err(&e))?;
            if format == Format::Csv {
                let mut data = Vec::new();
                table.write_csv(&mut data).map_err(|e| err(&e))?;
                return Ok(Outcome {
                    data,
                    code: EXIT_OK,
                });
            }
            let out = CoeffsOut {
                d1: *d1,
                d2: *d2,
                a: table.values().to_vec(),
            };
            render(&out, format, EXIT_OK)
        }
        Command::Lvalue { d, s, im } => {
            let chi = discriminant(*d)?;
            let z = Complex64::new(*s, *im);
            let v = if *im == 0.0 {
                let r = l_value_real(&chi, *s).map_err(|e| err(&e))?;
                EvalResult::new(Complex64::new(r.value, 0.0), r.err, r.method, r.terms)
            } else {
                l_value(&chi, z).map_err(|e| err(&e))?
            };
            render(&ValueOut::new(*d, None, z, v), format, EXIT_OK)
        }
        Command::Fvalue { d1, d2, s, im } => {
            let (c1, c2) = (discriminant(*d1)?, discriminant(*d2)?);
            let z = Complex64::new(*s, *im);
            let v = if *im == 0.0 {
                let r = f_value_real(c1, c2, *s).map_err(|e| err(&e))?;
                EvalResult::new(Complex64::new(r.value, 0.0), r.err, r.method, r.terms)
            } else {
                f_value(c1, c2, z).map_err(|e| err(&e))?
            };
            render(&ValueOut::new(*d1, Some(*d2), z, v), format, EXIT_OK)
        }
        Command::Zeros {
            d,
            lo,
            hi,
            step,
            tol,
        } => {
            let r =
                find_real_zeros(&discriminant(*d)?, *lo, *hi, *step, *tol).map_err(|e| err(&e))?;
            let out = ZerosOut {
                d: *d,
                lo: *lo,
                hi: *hi,
                step: *step,
                tol: *tol,
                zeros: r.zeros,
            };
            render(&out, format, EXIT_OK)
        }
        Command::MellinCheck {
            y,
            sigma0,
            height,
            step,
            tol,
        } => {
            let spec = ContourSpec::new(*sigma0, *height, *step).map_err(|e| err(&e))?;
            let rows = y
                .iter()
                .map(|&y| {
                    let r = inverse_mellin_exp(y, &spec)?;
                    let expected = (-y).exp();
                    let deviation = (r.value - expected).abs();
                    Ok(MellinRow {
                        y,
                        value: r.value,
                        expected,
                        deviation,
                        err_bound: r.err,
                        passed: deviation <= *tol,
                    })
                })
                .collect::<Result<Vec<_>, crate::mellin::MellinError>>()
                .map_err(|e| err(&e))?;
            let passed = rows.iter().all(|r| r.passed);
            let out = MellinOut {
                contour: spec,
                tol: *tol,
                rows,
                passed,
            };
            render(&out, format, if passed { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Sandwich {
            d1,
            d2,
            x,
            beta,
            default_grid,
        } => {
            let reports = if *default_grid {
                default_sandwich_grid().map_err(|e| err(&e))?
            } else {
                let (Some(d1), Some(d2), Some(x), Some(beta)) = (d1, d2, x, beta) else {
                    return Err("--d1, --d2, --x and --beta are required".into());
                };
                vec![verify_sandwich(*d1, *d2, *x, *beta).map_err(|e| err(&e))?]
            };
            for r in reports.iter().filter(|r| !r.passed) {
                let _ = writeln!(
                    stderr,
                    "sandwich failed: d1={} d2={} x={} beta={} A={} S={}",
                    r.d1, r.d2, r.x, r.beta, r.a, r.s
                );
            }
            let code = if reports.iter().all(|r| r.passed) {
                EXIT_OK
            } else {
                EXIT_FAILED
            };
            if reports.len() == 1 && !*default_grid {
                render(&reports[0], format, code)
            } else {
                render(&SandwichGrid { reports }, format, code)
            }
        }
        Command::ResidueDecay {
            d1,
            d2,
            beta,
            grid,
            threshold,
        } => {
            let r = verify_residue_decay(*d1, *d2, *beta, grid, *threshold).map_err(|e| err(&e))?;
            if let Some(f) = &r.failure {
                let _ = writeln!(stderr, "residue decay failed: {f}");
            }
            render(&r, format, if r.passed { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Scan {
            limit,
            epsilon,
            jobs,
        } => {
            let r = siegel_scan(*limit, *epsilon, *jobs).map_err(|e| err(&e))?;
            let _ = writeln!(
                stderr,
                "{} discriminants, min weighted {} at d = {}",
                r.rows.len(),
                r.min_weighted,
                r.argmin_d
            );
            render(&r, format, EXIT_OK)
        }
        Command::LemmaSuite { .. } => {
            let config = cli.lemma_config()?;
            let r = lemma_suite(&config);
            for c in &r.checks {
                let _ = writeln!(
                    stderr,
                    "{} {:<16} {:>9.3} s  {}",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.elapsed.as_secs_f64(),
                    c.detail
                );
            }
            let code = match r.status {
                SuiteStatus::Passed => EXIT_OK,
                SuiteStatus::Failed => EXIT_FAILED,
                SuiteStatus::Empty => {
                    let _ = writeln!(stderr, "no checks selected");
                    EXIT_INVALID
                }
            };
            render(&r, format, code)
        }
    }
}

/// Runs one invocation; `argv` starts with the program name.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match parse(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    EXIT_INVALID
                }
            };
        }
    };
    if let Err(msg) = cli.validate() {
        let _ = writeln!(stderr, "error: {msg}");
        return EXIT_INVALID;
    }
    let outcome = match execute(&cli, stderr) {
        Ok(o) => o,
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_INVALID;
        }
    };
    let written = match &cli.output.out {
        Some(path) => File::create(path).and_then(|mut f| f.write_all(&outcome.data)),
        None => stdout.write_all(&outcome.data).and_then(|_| stdout.flush()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write output: {e}");
        return EXIT_INVALID;
    }
    outcome.code
}
