//! Acceptance run: one line per criterion, nonzero exit if any fails.

mod common;

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use siegel::characters::{enumerate_fundamental_discriminants, gcd, QuadraticCharacter};
use siegel::coeffs::{coefficients_of_f, smoothed_sum_s, CoefficientSource};
use siegel::harness::{
    default_sandwich_grid, siegel_scan, verify_residue_decay, DEFAULT_RESIDUE_GRID,
    DEFAULT_RESIDUE_PAIRS, DEFAULT_RESIDUE_THRESHOLD,
};
use siegel::lfun::{find_real_zeros, l1_explicit_bound, l_value_real, SELECT_GRID_STEP};
use siegel::mellin::{contour_integral_i, inverse_mellin_exp, ContourSpec};
use siegel::special::{stirling_decay_ratio, zeta_real, zeta_via_fractional_part_integral};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn chi(d: i64) -> QuadraticCharacter {
    QuadraticCharacter::new(d).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn mellin_identity() -> Outcome {
    let spec = ContourSpec::new(2.0, 40.0, 0.01).map_err(|e| e.to_string())?;
    let mut worst = 0f64;
    for y in [0.1, 0.5, 1.0, 2.0, 5.0, 10.0] {
        let r = inverse_mellin_exp(y, &spec).map_err(|e| e.to_string())?;
        let dev = (r.value - (-y).exp()).abs();
        ensure(dev <= 1e-6, || format!("y = {y}: deviation {dev:e}"))?;
        worst = worst.max(dev);
    }
    Ok(format!("max |I - e^-y| = {worst:.2e}"))
}

fn coefficient_nonnegativity() -> Outcome {
    let ds = enumerate_fundamental_discriminants(30).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let n = 10_000;
    let mut pairs = 0;
    for &d1 in &ds {
        for &d2 in &ds {
            let t = coefficients_of_f(chi(d1), chi(d2), n).map_err(|e| e.to_string())?;
            ensure(t.get(1) == Some(1), || format!("({d1}, {d2}): a_1 != 1"))?;
            if let Some(k) = t.values().iter().position(|&a| a < 0) {
                return Err(format!("({d1}, {d2}): a_{} < 0", k + 1));
            }
            let mut checked = 0;
            while checked < 200 {
                let m = rng.gen_range(1..=100usize);
                let k = rng.gen_range(1..=n / m);
                if gcd(m as u64, k as u64) != 1 {
                    continue;
                }
                checked += 1;
                let (am, ak, amk) = (t.get(m).unwrap(), t.get(k).unwrap(), t.get(m * k).unwrap());
                ensure(amk == am * ak, || {
                    format!("({d1}, {d2}): a_{} != a_{m} a_{k}", m * k)
                })?;
            }
            pairs += 1;
        }
    }
    Ok(format!("{pairs} ordered pairs, N = {n}"))
}

fn sandwich() -> Outcome {
    let reports = default_sandwich_grid().map_err(|e| e.to_string())?;
    if let Some(r) = reports.iter().find(|r| !r.passed) {
        return Err(format!(
            "({}, {}) x = {} beta = {}: A = {}, S = {}",
            r.d1, r.d2, r.x, r.beta, r.a, r.s
        ));
    }
    let slack = reports
        .iter()
        .map(|r| std::f64::consts::E * r.s / r.a)
        .fold(f64::INFINITY, f64::min);
    Ok(format!(
        "{} reports, min e S / A = {slack:.3}",
        reports.len()
    ))
}

fn duality() -> Outcome {
    let spec = ContourSpec::new(2.0, 40.0, 0.02).map_err(|e| e.to_string())?;
    let mut worst = 0f64;
    for x in [5.0, 10.0, 50.0] {
        let i = contour_integral_i(chi(-4), chi(-3), x, 0.9, &spec).map_err(|e| e.to_string())?;
        let s = smoothed_sum_s(CoefficientSource::Pair(chi(-4), chi(-3)), x, 0.9, 1e-14)
            .map_err(|e| e.to_string())?;
        let rel = (i.value - s.value).abs() / s.value;
        ensure(rel <= 1e-6, || {
            format!("x = {x}: relative difference {rel:e}")
        })?;
        worst = worst.max(rel);
    }
    Ok(format!("max relative |I - S| / S = {worst:.2e}"))
}

fn residue_decay() -> Outcome {
    let mut spreads = Vec::new();
    for (d1, d2) in DEFAULT_RESIDUE_PAIRS {
        let r = verify_residue_decay(
            d1,
            d2,
            0.9,
            &DEFAULT_RESIDUE_GRID,
            DEFAULT_RESIDUE_THRESHOLD,
        )
        .map_err(|e| e.to_string())?;
        if let Some(f) = r.failure {
            return Err(format!("({d1}, {d2}): {f}"));
        }
        spreads.push(format!("{:.2}", r.spread));
    }
    Ok(format!("sup/inf of |R| x^beta: {}", spreads.join(", ")))
}

fn zeta_negativity() -> Outcome {
    let mut worst = 0f64;
    for k in 1..20 {
        let sigma = k as f64 * 0.05;
        let a = zeta_real(sigma).map_err(|e| e.to_string())?.value;
        let b = zeta_via_fractional_part_integral(sigma)
            .map_err(|e| e.to_string())?
            .value;
        ensure(a < 0.0 && b < 0.0, || format!("zeta({sigma}) = {a} / {b}"))?;
        ensure((a - b).abs() <= 1e-9, || {
            format!("sigma = {sigma}: paths differ by {:e}", (a - b).abs())
        })?;
        worst = worst.max((a - b).abs());
    }
    Ok(format!("19 points, max path difference {worst:.2e}"))
}

fn l1_bound() -> Outcome {
    let ds = enumerate_fundamental_discriminants(1000).map_err(|e| e.to_string())?;
    let mut closest = f64::INFINITY;
    for &d in &ds {
        let c = chi(d);
        let l = l_value_real(&c, 1.0).map_err(|e| e.to_string())?.value;
        let bound = l1_explicit_bound(&c).map_err(|e| e.to_string())?;
        ensure(l.abs() <= bound, || {
            format!("d = {d}: |L(1)| = {l} > {bound}")
        })?;
        closest = closest.min(bound - l.abs());
    }
    Ok(format!(
        "{} discriminants, min margin {closest:.3}",
        ds.len()
    ))
}

fn positivity() -> Outcome {
    let scan = siegel_scan(10_000, 0.1, None).map_err(|e| e.to_string())?;
    let mut zero_free = 0;
    for d in enumerate_fundamental_discriminants(100).map_err(|e| e.to_string())? {
        let r = find_real_zeros(&chi(d), 0.5, 0.999, SELECT_GRID_STEP, 1e-12)
            .map_err(|e| e.to_string())?;
        ensure(r.zeros.is_empty(), || {
            format!("d = {d}: zeros {:?}", r.zeros)
        })?;
        zero_free += 1;
    }
    Ok(format!(
        "{} values L(1) > 0 (min weighted {:.4} at d = {}), {zero_free} characters zero-free",
        scan.rows.len(),
        scan.min_weighted,
        scan.argmin_d
    ))
}

fn gamma_decay() -> Outcome {
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for sigma in [-1.0, 0.0, 0.5, 1.0, 2.0, 3.0] {
        for t in [10.0, 20.0, 50.0] {
            let r = stirling_decay_ratio(sigma, t).map_err(|e| e.to_string())?;
            ensure((2.3..=2.7).contains(&r), || {
                format!("sigma = {sigma}, t = {t}: ratio {r}")
            })?;
            lo = lo.min(r);
            hi = hi.max(r);
        }
    }
    Ok(format!("ratios in [{lo:.4}, {hi:.4}]"))
}

fn closed_forms() -> Outcome {
    let checks = [
        (
            "L(1, chi_-4)",
            l_value_real(&chi(-4), 1.0),
            common::leibniz_quarter_pi(),
            PI / 4.0,
        ),
        (
            "L(1, chi_-3)",
            l_value_real(&chi(-3), 1.0),
            common::l1_chi_minus3(),
            PI / (3.0 * 3f64.sqrt()),
        ),
        (
            "L(2, chi_-4)",
            l_value_real(&chi(-4), 2.0),
            common::catalan(),
            0.915_965_594_177_219,
        ),
        (
            "zeta(2)",
            zeta_real(2.0).map_err(Into::into),
            common::zeta_two(),
            PI * PI / 6.0,
        ),
    ];
    let mut worst = 0f64;
    for (name, value, oracle, closed) in checks {
        let v = value.map_err(|e| e.to_string())?.value;
        ensure((oracle - closed).abs() <= 1e-12, || {
            format!("{name}: oracle {oracle} disagrees with {closed}")
        })?;
        let dev = (v - oracle).abs();
        ensure(dev <= 1e-10, || format!("{name}: {v} vs oracle {oracle}"))?;
        worst = worst.max(dev);
    }
    Ok(format!("max deviation from oracles {worst:.2e}"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("Mellin identity", mellin_identity, Duration::from_secs(5)),
        (
            "coefficient nonnegativity",
            coefficient_nonnegativity,
            Duration::from_secs(30),
        ),
        ("sandwich inequality", sandwich, Duration::from_secs(60)),
        ("contour/series duality", duality, Duration::from_secs(120)),
        (
            "residue decomposition",
            residue_decay,
            Duration::from_secs(120),
        ),
        ("zeta negativity", zeta_negativity, Duration::from_secs(5)),
        ("L(1) log bound", l1_bound, Duration::from_secs(60)),
        (
            "positivity and zero-freeness",
            positivity,
            Duration::from_secs(600),
        ),
        ("Gamma decay", gamma_decay, Duration::from_secs(1)),
        ("oracle closed forms", closed_forms, Duration::from_secs(5)),
    ];
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|detail| {
            if elapsed <= limit {
                Ok(detail)
            } else {
                Err(format!(
                    "{detail}; took {:.2} s, limit {} s",
                    elapsed.as_secs_f64(),
                    limit.as_secs()
                ))
            }
        });
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        failed += outcome.is_err() as usize;
        println!(
            "[{tag}] criterion {:>2} {name}: {detail} ({:.3} s / {} s)",
            i + 1,
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
