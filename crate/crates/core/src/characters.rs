//! Kronecker symbols and the primitive quadratic characters they define.
//!
//! A primitive quadratic character is identified with its fundamental
//! discriminant `d`; its value at `n` is the Kronecker symbol `(d|n)` and its
//! modulus is `|d|`. Products of two such characters are kept pointwise and
//! may be imprimitive.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Largest magnitude accepted by [`kronecker`] and [`QuadraticCharacter::new`].
pub const MAX_ARGUMENT: u64 = 1 << 62;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharacterError {
    #[error("the Kronecker symbol (0|0) is undefined")]
    ZeroOverZero,
    #[error("argument {0} exceeds the supported magnitude 2^62")]
    OutOfRange(i128),
    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(i64),
    #[error("enumeration limit must be at least 3, got {0}")]
    LimitTooSmall(u64),
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Jacobi symbol `(a|n)` for odd `n > 0` and `0 <= a < n`.
fn jacobi(mut a: u64, mut n: u64) -> i8 {
    debug_assert!(n % 2 == 1);
    let mut sign = 1i8;
    while a != 0 {
        let tz = a.trailing_zeros();
        a >>= tz;
        // (2|n) = -1 iff n = 3, 5 (mod 8)
        if tz % 2 == 1 && matches!(n % 8, 3 | 5) {
            sign = -sign;
        }
        // reciprocity: flip when both are 3 (mod 4)
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// The Kronecker symbol `(d|n)` for `n >= 0`.
///
/// Both arguments are limited to magnitude `2^62`.
pub fn kronecker(d: i64, n: u64) -> Result<i8, CharacterError> {
    if d.unsigned_abs() > MAX_ARGUMENT {
        return Err(CharacterError::OutOfRange(d as i128));
    }
    if n > MAX_ARGUMENT {
        return Err(CharacterError::OutOfRange(n as i128));
    }
    match (d, n) {
        (0, 0) => return Err(CharacterError::ZeroOverZero),
        (_, 0) => return Ok(if d.unsigned_abs() == 1 { 1 } else { 0 }),
        (0, _) => return Ok(if n == 1 { 1 } else { 0 }),
        _ => {}
    }

    let mut n = n;
    let mut result = 1i8;
    let tz = n.trailing_zeros();
    if tz > 0 {
        if d % 2 == 0 {
            return Ok(0);
        }
        // (d|2) = 1 for d = 1, 7 (mod 8) and -1 for d = 3, 5 (mod 8)
        if tz % 2 == 1 && matches!(d.rem_euclid(8), 3 | 5) {
            result = -result;
        }
        n >>= tz;
    }
    if n == 1 {
        return Ok(result);
    }
    let a = d.rem_euclid(n as i64) as u64;
    Ok(result * jacobi(a, n))
}

fn is_squarefree(n: u64) -> bool {
    if n.is_multiple_of(4) {
        return false;
    }
    let mut m = n;
    if m.is_multiple_of(2) {
        m /= 2;
    }
    let mut p = 3u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return false;
            }
        }
        p += 2;
    }
    true
}

/// True when `d` is 1 (mod 4) and squarefree, or `d = 4m` with `m`
/// squarefree and 2 or 3 (mod 4). `d = 1` qualifies; `d = 0` does not.
pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d == 0 || d.unsigned_abs() > MAX_ARGUMENT {
        return false;
    }
    match d.rem_euclid(4) {
        1 => is_squarefree(d.unsigned_abs()),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && is_squarefree(m.unsigned_abs())
        }
        _ => false,
    }
}

/// All fundamental discriminants `d != 1` with `|d| <= limit`, ordered by
/// `|d|` with the positive one first on ties.
pub fn enumerate_fundamental_discriminants(limit: u64) -> Result<Vec<i64>, CharacterError> {
    if limit < 3 {
        return Err(CharacterError::LimitTooSmall(limit));
    }
    if limit > MAX_ARGUMENT {
        return Err(CharacterError::OutOfRange(limit as i128));
    }
    let mut out = Vec::new();
    for m in 2..=limit as i64 {
        for d in [m, -m] {
            if is_fundamental_discriminant(d) {
                out.push(d);
            }
        }
    }
    Ok(out)
}

/// A real Dirichlet character evaluated pointwise.
pub trait Character: Send + Sync {
    fn modulus(&self) -> u64;

    fn value(&self, n: u64) -> i8;

    fn is_principal(&self) -> bool;

    /// `D` with `value(n) = (D|n)`.
    fn discriminant(&self) -> i64;

    fn label(&self) -> String;
}

/// Primitive quadratic character attached to a fundamental discriminant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct QuadraticCharacter {
    discriminant: i64,
    modulus: u64,
}

impl QuadraticCharacter {
    pub fn new(discriminant: i64) -> Result<Self, CharacterError> {
        if discriminant.unsigned_abs() > MAX_ARGUMENT {
            return Err(CharacterError::OutOfRange(discriminant as i128));
        }
        if !is_fundamental_discriminant(discriminant) {
            return Err(CharacterError::NotFundamental(discriminant));
        }
        Ok(Self {
            discriminant,
            modulus: discriminant.unsigned_abs(),
        })
    }

    /// The principal character of modulus 1.
    pub fn trivial() -> Self {
        Self {
            discriminant: 1,
            modulus: 1,
        }
    }

    pub fn discriminant(&self) -> i64 {
        self.discriminant
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// `chi(n)`, reduced through periodicity so any `n` is accepted.
    pub fn value(&self, n: u64) -> i8 {
        if self.modulus == 1 {
            return 1;
        }
        let r = n % self.modulus;
        if r == 0 {
            return 0;
        }
        kronecker(self.discriminant, r).expect("reduced argument is in range")
    }

    pub fn is_principal(&self) -> bool {
        self.discriminant == 1
    }
}

impl fmt::Display for QuadraticCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chi_{}", self.discriminant)
    }
}

impl Character for QuadraticCharacter {
    fn modulus(&self) -> u64 {
        self.modulus
    }

    fn value(&self, n: u64) -> i8 {
        QuadraticCharacter::value(self, n)
    }

    fn is_principal(&self) -> bool {
        QuadraticCharacter::is_principal(self)
    }

    fn discriminant(&self) -> i64 {
        self.discriminant
    }

    fn label(&self) -> String {
        self.to_string()
    }
}

pub fn char_value(chi: &QuadraticCharacter, n: u64) -> i8 {
    chi.value(n)
}

/// Pointwise product of two quadratic characters, modulus `lcm(q1, q2)`.
///
/// The product is not reduced to its primitive inducing character.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProductCharacter {
    left: QuadraticCharacter,
    right: QuadraticCharacter,
    modulus: u64,
}

impl ProductCharacter {
    pub fn new(left: QuadraticCharacter, right: QuadraticCharacter) -> Self {
        Self {
            left,
            right,
            modulus: lcm(left.modulus, right.modulus),
        }
    }

    pub fn left(&self) -> QuadraticCharacter {
        self.left
    }

    pub fn right(&self) -> QuadraticCharacter {
        self.right
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn value(&self, n: u64) -> i8 {
        self.left.value(n) * self.right.value(n)
    }

    /// The product of a quadratic character with itself is principal.
    pub fn is_principal(&self) -> bool {
        self.left.discriminant == self.right.discriminant
    }

    /// Same character on both sides, so `f = zeta^2 L^2` up to Euler factors.
    pub fn is_degenerate(&self) -> bool {
        self.is_principal()
    }
}

impl fmt::Display for ProductCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*{}", self.left, self.right)
    }
}

impl Character for ProductCharacter {
    fn modulus(&self) -> u64 {
        self.modulus
    }

    fn value(&self, n: u64) -> i8 {
        ProductCharacter::value(self, n)
    }

    fn is_principal(&self) -> bool {
        ProductCharacter::is_principal(self)
    }

    /// The Kronecker symbol is multiplicative in its upper argument.
    fn discriminant(&self) -> i64 {
        self.left.discriminant * self.right.discriminant
    }

    fn label(&self) -> String {
        self.to_string()
    }
}

pub fn product_character(chi1: QuadraticCharacter, chi2: QuadraticCharacter) -> ProductCharacter {
    ProductCharacter::new(chi1, chi2)
}
