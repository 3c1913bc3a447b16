mod common;

use std::f64::consts::PI;

use siegel::characters::{kronecker, QuadraticCharacter};
use siegel::lfun::l_value_real;
use siegel::mellin::residue_decomposition_check;
use siegel::special::{zeta_real, zeta_via_fractional_part_integral};

fn chi(d: i64) -> QuadraticCharacter {
    QuadraticCharacter::new(d).unwrap()
}

#[test]
fn oracles_agree_with_known_constants() {
    assert!((common::leibniz_quarter_pi() - PI / 4.0).abs() < 1e-14);
    assert!((common::l1_chi_minus3() - PI / (3.0 * 3f64.sqrt())).abs() < 1e-13);
    assert!((common::zeta_two() - PI * PI / 6.0).abs() < 1e-14);
    assert!((common::catalan() - 0.915_965_594_177_219).abs() < 1e-14);
}

#[test]
fn l_at_one_for_small_discriminants() {
    let l4 = l_value_real(&chi(-4), 1.0).unwrap();
    assert!((l4.value - common::leibniz_quarter_pi()).abs() < 1e-12);
    let l3 = l_value_real(&chi(-3), 1.0).unwrap();
    assert!((l3.value - common::l1_chi_minus3()).abs() < 1e-12);
}

#[test]
fn catalan_and_zeta_two() {
    let g = l_value_real(&chi(-4), 2.0).unwrap();
    assert!((g.value - common::catalan()).abs() < 1e-12);
    let z = zeta_real(2.0).unwrap();
    assert!((z.value - common::zeta_two()).abs() < 1e-13);
}

#[test]
fn l_at_two_matches_direct_series() {
    for d in [-3i64, -4, 5, -7, 8, -8, 12, -15, 40, -84, 97] {
        let c = chi(d);
        let (direct, tail) = common::l2_direct(|n| c.value(n), 1_000_000);
        let l = l_value_real(&c, 2.0).unwrap();
        assert!((l.value - direct).abs() <= tail + l.err + 1e-13, "d = {d}");
        assert!((l.value - direct).abs() < 1e-10 || tail > 1e-10);
    }
}

#[test]
fn kronecker_at_primes_matches_euler_criterion() {
    for d in [-3i64, -4, 5, -7, 8, 13, -20, 21, -23, 28] {
        for p in [3u64, 5, 7, 11, 13, 101, 1009, 65_537] {
            if (d.unsigned_abs() % p) == 0 {
                continue;
            }
            assert_eq!(
                kronecker(d, p).unwrap(),
                common::legendre(d, p),
                "d = {d}, p = {p}"
            );
        }
    }
}

#[test]
fn zeta_in_strip_frozen_values() {
    // 30-digit reference values, rounded to f64
    for (sigma, want) in [
        (0.5, -1.460_354_508_809_586_8),
        (0.9, -9.430_114_019_402_252),
        (0.01, -0.509_290_714_039_839_9),
    ] {
        let a = zeta_real(sigma).unwrap().value;
        let b = zeta_via_fractional_part_integral(sigma).unwrap().value;
        assert!(
            (a - want).abs() < 1e-12 * want.abs(),
            "sigma = {sigma}: {a}"
        );
        assert!((a - b).abs() < 1e-9);
    }
}

#[test]
fn residue_remainder_approaches_next_pole() {
    // R(x) ~ -f(beta - 1) / x for large x, from the pole of Gamma at -1
    let d = residue_decomposition_check(chi(-4), chi(-3), 0.9, &[10_000.0]).unwrap();
    let scaled = d.rows[0].r * 10_000.0;
    assert!((scaled + common::F_AT_MINUS_TENTH).abs() < 1e-6, "{scaled}");
}
