//! Reference computations that share no code with the library.
#![allow(dead_code)]

/// Leibniz series 1 - 1/3 + 1/5 - ... by repeated averaging of partial sums.
pub fn leibniz_quarter_pi() -> f64 {
    alternating(|k| 1.0 / (2 * k + 1) as f64)
}

/// Catalan's constant 1 - 1/9 + 1/25 - ... by the same acceleration.
pub fn catalan() -> f64 {
    alternating(|k| 1.0 / ((2 * k + 1) as f64).powi(2))
}

/// Sum of `(-1)^k term(k)` for decreasing positive terms. Partial sums of an
/// alternating series straddle the limit; repeated averaging of neighbours
/// (Euler's transform) converges geometrically.
fn alternating(term: impl Fn(u64) -> f64) -> f64 {
    const N: usize = 60;
    let mut partial = Vec::with_capacity(N);
    let mut acc = 0.0;
    for k in 0..N as u64 {
        acc += if k % 2 == 0 { term(k) } else { -term(k) };
        partial.push(acc);
    }
    while partial.len() > 1 {
        partial = partial.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    }
    partial[0]
}

/// sum 1/n^2 with the Euler-Maclaurin tail 1/N - 1/(2N^2) + 1/(6N^3) - 1/(30 N^5).
pub fn zeta_two() -> f64 {
    let n = 1000u64;
    let mut s = 0.0;
    for k in (1..n).rev() {
        s += 1.0 / (k as f64 * k as f64);
    }
    let nf = n as f64;
    s + 1.0 / nf + 0.5 / (nf * nf) + 1.0 / (6.0 * nf.powi(3)) - 1.0 / (30.0 * nf.powi(5))
}

/// Composite Simpson rule on [a, b] with `m` (even) panels.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, m: usize) -> f64 {
    assert!(m.is_multiple_of(2));
    let h = (b - a) / m as f64;
    let mut s = f(a) + f(b);
    for i in 1..m {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + i as f64 * h);
    }
    s * h / 3.0
}

/// L(1, chi_{-3}) = int_0^1 (1 - x) / (1 - x^3) dx = int_0^1 dx / (1 + x + x^2).
pub fn l1_chi_minus3() -> f64 {
    simpson(|x| 1.0 / (1.0 + x + x * x), 0.0, 1.0, 4000)
}

/// Legendre symbol by Euler's criterion, for odd prime p.
pub fn legendre(a: i64, p: u64) -> i8 {
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return 0;
    }
    let mut result = 1u128;
    let mut base = a as u128;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u128;
        }
        base = base * base % p as u128;
        e >>= 1;
    }
    if result == 1 {
        1
    } else {
        -1
    }
}

/// `sum chi(n) / n^2` for `n <= n_max` plus the bound `1 / n_max` on the tail.
pub fn l2_direct(chi: impl Fn(u64) -> i8, n_max: u64) -> (f64, f64) {
    let mut s = 0.0;
    for n in (1..=n_max).rev() {
        s += chi(n) as f64 / (n as f64 * n as f64);
    }
    (s, 1.0 / n_max as f64)
}

/// `f(-0.1)` for `(d1, d2) = (-4, -3)`, from a 50-digit evaluation of
/// `zeta L(chi_-4) L(chi_-3) L(chi_12)` by Hurwitz sums.
pub const F_AT_MINUS_TENTH: f64 = 0.008_035_615_561_995_921;
