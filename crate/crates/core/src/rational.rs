//! Thin helpers around the arbitrary-precision rationals used everywhere as
//! coefficient scalars. `num_rational::BigRational` already keeps the
//! canonical form we rely on (positive denominator, gcd-reduced after every
//! operation).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use num_rational::BigRational;

/// Rational from an integer.
pub fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Rational n/d. Panics on d = 0.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// 2^k as an exact rational, k possibly negative.
pub fn pow2(k: i64) -> BigRational {
    let one = BigInt::one();
    if k >= 0 {
        BigRational::from_integer(one << k as usize)
    } else {
        BigRational::new(one.clone(), one << (-k) as usize)
    }
}

/// Exact square root of a nonnegative rational, when it is itself rational.
pub fn sqrt_exact(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    if q.is_zero() {
        return Some(BigRational::zero());
    }
    let num = q.numer().sqrt();
    let den = q.denom().sqrt();
    if &(&num * &num) == q.numer() && &(&den * &den) == q.denom() {
        Some(BigRational::new(num, den))
    } else {
        None
    }
}

/// Exact square root of a nonnegative integer, when it is a perfect square.
pub fn isqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// Floor of log2(|q|) for a nonzero rational: the unique e with
/// 2^e <= |q| < 2^(e+1).
pub fn floor_log2(q: &BigRational) -> i64 {
    assert!(!q.is_zero());
    let num_bits = q.numer().abs().bits() as i64;
    let den_bits = q.denom().bits() as i64;
    // 2^(nb-1) <= |num| < 2^nb, so the quotient sits within one power of two.
    let mut e = num_bits - den_bits;
    let abs = q.abs();
    if abs < pow2(e) {
        e -= 1;
    } else if abs >= pow2(e + 1) {
        e += 1;
    }
    debug_assert!(pow2(e) <= abs && abs < pow2(e + 1));
    e
}

/// True when the rational is a dyadic number (denominator a power of two).
pub fn is_dyadic(q: &BigRational) -> bool {
    let den = q.denom();
    den.is_one() || (den.is_positive() && (den & &(den - 1u32)).is_zero())
}
