//! Modular exponentiation, deterministic primality, trial-division
//! factorization and primitive-root search, at the word sizes this library
//! needs (n fits in u64, with u128 intermediates).

use std::fmt;

/// Errors from the modular-arithmetic layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModularError {
    /// Modulus smaller than 2.
    BadModulus,
    /// An operation that requires a prime argument received a composite.
    NotPrime,
}

impl fmt::Display for ModularError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModularError::BadModulus => write!(f, "modulus must be at least 2"),
            ModularError::NotPrime => write!(f, "argument must be prime"),
        }
    }
}

impl std::error::Error for ModularError {}

/// base^exp mod m in [0, m), by square-and-multiply.
pub fn mod_pow(base: u64, exp: u64, m: u64) -> Result<u64, ModularError> {
    if m < 2 {
        return Err(ModularError::BadModulus);
    }
    let m128 = m as u128;
    let mut acc: u128 = 1;
    let mut b = (base as u128) % m128;
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        e >>= 1;
    }
    Ok(acc as u64)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Deterministic primality for all u64, via strong-pseudoprime tests with a
/// fixed base set after cheap trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    // n odd, > 37: write n-1 = d * 2^s
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    // this base set is deterministic for every n < 2^64
    'bases: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a, d, n).expect("modulus >= 2");
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Prime factorization as an ordered list of (prime, multiplicity).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Recompose the factored integer.
    pub fn product(&self) -> u64 {
        self.factors.iter().fold(1u64, |acc, &(p, k)| acc * p.pow(k))
    }

    pub fn iter(&self) -> impl Iterator<Item = &(u64, u32)> {
        self.factors.iter()
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for &(p, k) in &self.factors {
            if !first {
                write!(f, " * ")?;
            }
            first = false;
            if k == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{k}")?;
            }
        }
        Ok(())
    }
}

// increments that step over multiples of 2, 3 and 5 starting from 7
const WHEEL: [u64; 8] = [4, 2, 4, 2, 4, 6, 2, 6];

/// Factorize by trial division with a mod-30 wheel. Intended for
/// desk-scale inputs (the CLI caps n at 10^9).
pub fn factorize(mut n: u64) -> Factorization {
    assert!(n >= 1, "factorize requires n >= 1");
    let mut factors = Vec::new();
    for p in [2u64, 3, 5] {
        if n.is_multiple_of(p) {
            let mut k = 0;
            while n.is_multiple_of(p) {
                n /= p;
                k += 1;
            }
            factors.push((p, k));
        }
    }
    let mut d: u64 = 7;
    let mut wheel_idx = 0;
    while d.checked_mul(d).is_some_and(|dd| dd <= n) {
        if n.is_multiple_of(d) {
            let mut k = 0;
            while n.is_multiple_of(d) {
                n /= d;
                k += 1;
            }
            factors.push((d, k));
        }
        d += WHEEL[wheel_idx];
        wheel_idx = (wheel_idx + 1) % WHEEL.len();
    }
    if n > 1 {
        factors.push((n, 1));
    }
    Factorization { factors }
}

/// True iff p is prime and p - 1 is a power of two, i.e. p = 2^(2^s) + 1.
/// (If 2^m + 1 is prime, m is automatically a power of two.)
pub fn is_fermat_prime(p: u64) -> bool {
    p >= 3 && (p - 1).is_power_of_two() && is_prime(p)
}

/// Smallest primitive root modulo a prime p: the least g >= 2 with
/// g^((p-1)/q) != 1 mod p for every prime q dividing p - 1.
pub fn primitive_root(p: u64) -> Result<u64, ModularError> {
    if !is_prime(p) {
        return Err(ModularError::NotPrime);
    }
    if p == 2 {
        return Ok(1);
    }
    let phi = p - 1;
    let prime_divisors: Vec<u64> = factorize(phi).iter().map(|&(q, _)| q).collect();
    'g: for g in 2..p {
        for &q in &prime_divisors {
            if mod_pow(g, phi / q, p)? == 1 {
                continue 'g;
            }
        }
        return Ok(g);
    }
    unreachable!("every prime has a primitive root");
}

/// Extended gcd: returns (g, x, y) with a*x + b*y = g = gcd(a, b).
pub fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = egcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}
