//! Dyadic numbers and outward-rounded interval arithmetic.
//!
//! A [`Dyadic`] is an exact value mantissa * 2^exponent. Addition,
//! subtraction and multiplication of dyadics are exact; the only operations
//! that can lose information are division, square root and re-rounding to a
//! working precision, and those are always rounded in a caller-chosen
//! direction. A [`DyadicInterval`] keeps a lower bound rounded down and an
//! upper bound rounded up, so every interval operation encloses the exact
//! real result.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::BigRational;

/// Errors from interval arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IntervalError {
    /// Division by an interval that contains zero.
    DivByZeroInterval,
    /// Square root of an interval whose lower endpoint is negative.
    NegativeRadicand,
}

impl fmt::Display for IntervalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntervalError::DivByZeroInterval => write!(f, "division by an interval containing 0"),
            IntervalError::NegativeRadicand => {
                write!(f, "square root of an interval with negative lower endpoint")
            }
        }
    }
}

impl std::error::Error for IntervalError {}

/// Shift right with floor semantics (towards negative infinity).
fn shr_floor(m: &BigInt, s: u64) -> BigInt {
    if s == 0 {
        return m.clone();
    }
    match m.sign() {
        Sign::NoSign | Sign::Plus => m >> s,
        Sign::Minus => {
            let mag = m.magnitude();
            let q = BigInt::from(mag >> s);
            let lost = mag.trailing_zeros().is_none_or(|tz| tz < s);
            if lost {
                -(q + BigInt::one())
            } else {
                -q
            }
        }
    }
}

/// Shift right with ceiling semantics (towards positive infinity).
fn shr_ceil(m: &BigInt, s: u64) -> BigInt {
    -shr_floor(&-m, s)
}

/// An exact dyadic number mantissa * 2^exponent, canonicalised so the
/// mantissa is odd (or the value is exactly zero with exponent zero).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dyadic {
    mantissa: BigInt,
    exponent: i64,
}

impl Dyadic {
    pub fn new(mantissa: BigInt, exponent: i64) -> Self {
        let mut d = Dyadic { mantissa, exponent };
        d.normalise();
        d
    }

    fn normalise(&mut self) {
        if self.mantissa.is_zero() {
            self.exponent = 0;
            return;
        }
        if let Some(tz) = self.mantissa.magnitude().trailing_zeros() {
            if tz > 0 {
                self.mantissa = &self.mantissa >> tz;
                self.exponent += tz as i64;
            }
        }
    }

    pub fn zero() -> Self {
        Dyadic { mantissa: BigInt::zero(), exponent: 0 }
    }

    pub fn one() -> Self {
        Dyadic { mantissa: BigInt::one(), exponent: 0 }
    }

    pub fn from_int(n: i64) -> Self {
        Dyadic::new(BigInt::from(n), 0)
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Dyadic::new(n, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mantissa.is_positive()
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    /// Number of significant bits of the mantissa (0 for zero).
    pub fn bits(&self) -> u64 {
        self.mantissa.magnitude().bits()
    }

    /// Exact value as a rational.
    pub fn to_rational(&self) -> BigRational {
        if self.exponent >= 0 {
            BigRational::from_integer(&self.mantissa << self.exponent as u64)
        } else {
            BigRational::new(self.mantissa.clone(), BigInt::one() << (-self.exponent) as u64)
        }
    }

    pub fn neg(&self) -> Self {
        Dyadic { mantissa: -&self.mantissa, exponent: self.exponent }
    }

    pub fn abs(&self) -> Self {
        Dyadic { mantissa: self.mantissa.abs(), exponent: self.exponent }
    }

    /// Exact sum.
    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exponent.min(other.exponent);
        let ma = &self.mantissa << (self.exponent - e) as u64;
        let mb = &other.mantissa << (other.exponent - e) as u64;
        Dyadic::new(ma + mb, e)
    }

    /// Exact difference.
    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Exact product.
    pub fn mul(&self, other: &Self) -> Self {
        Dyadic::new(&self.mantissa * &other.mantissa, self.exponent + other.exponent)
    }

    /// Exact doubling / halving by a power of two.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic { mantissa: self.mantissa.clone(), exponent: self.exponent + k }
    }

    /// Largest dyadic with at most `prec` mantissa bits that is <= self.
    pub fn round_down(&self, prec: u32) -> Self {
        let bits = self.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let s = bits - prec as u64;
        Dyadic::new(shr_floor(&self.mantissa, s), self.exponent + s as i64)
    }

    /// Smallest dyadic with at most `prec` mantissa bits that is >= self.
    pub fn round_up(&self, prec: u32) -> Self {
        let bits = self.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let s = bits - prec as u64;
        Dyadic::new(shr_ceil(&self.mantissa, s), self.exponent + s as i64)
    }

    /// Quotient rounded down (towards -inf) to about `prec` significant bits.
    pub fn div_down(&self, other: &Self, prec: u32) -> Self {
        assert!(!other.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let t = (prec as i64 + 2 + other.bits() as i64 - self.bits() as i64).max(0) as u64;
        let num = &self.mantissa << t;
        let q = num.div_floor(&other.mantissa);
        Dyadic::new(q, self.exponent - other.exponent - t as i64)
    }

    /// Quotient rounded up (towards +inf) to about `prec` significant bits.
    pub fn div_up(&self, other: &Self, prec: u32) -> Self {
        assert!(!other.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let t = (prec as i64 + 2 + other.bits() as i64 - self.bits() as i64).max(0) as u64;
        let num = &self.mantissa << t;
        let q = num.div_ceil(&other.mantissa);
        Dyadic::new(q, self.exponent - other.exponent - t as i64)
    }

    /// Square root rounded down, correct to about `prec` significant bits.
    /// Exact when the value is a perfect square on the working grid.
    pub fn sqrt_down(&self, prec: u32) -> Self {
        assert!(!self.is_negative(), "dyadic sqrt of negative value");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let (m, e) = self.even_exponent_form();
        let want = 2 * prec as u64 + 2;
        let have = m.magnitude().bits();
        let t = if have >= want { 0 } else { ((want - have) + 1) & !1 };
        let scaled = &m << t;
        let r = scaled.sqrt();
        Dyadic::new(r, (e - t as i64) / 2)
    }

    /// Square root rounded up, correct to about `prec` significant bits.
    pub fn sqrt_up(&self, prec: u32) -> Self {
        assert!(!self.is_negative(), "dyadic sqrt of negative value");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let (m, e) = self.even_exponent_form();
        let want = 2 * prec as u64 + 2;
        let have = m.magnitude().bits();
        let t = if have >= want { 0 } else { ((want - have) + 1) & !1 };
        let scaled = &m << t;
        let r = scaled.sqrt();
        let r = if &r * &r == scaled { r } else { r + 1 };
        Dyadic::new(r, (e - t as i64) / 2)
    }

    fn even_exponent_form(&self) -> (BigInt, i64) {
        if self.exponent % 2 == 0 {
            (self.mantissa.clone(), self.exponent)
        } else {
            (&self.mantissa << 1u32, self.exponent - 1)
        }
    }

    /// Largest dyadic with about `prec` significant bits that is <= q.
    pub fn from_rational_down(q: &BigRational, prec: u32) -> Self {
        let num = Dyadic::from_bigint(q.numer().clone());
        let den = Dyadic::from_bigint(q.denom().clone());
        num.div_down(&den, prec)
    }

    /// Smallest dyadic with about `prec` significant bits that is >= q.
    pub fn from_rational_up(q: &BigRational, prec: u32) -> Self {
        let num = Dyadic::from_bigint(q.numer().clone());
        let den = Dyadic::from_bigint(q.denom().clone());
        num.div_up(&den, prec)
    }

    /// Compare by value. Decided from magnitude ranges when possible so that
    /// wildly different exponents never force a huge mantissa alignment.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        let sa = self.mantissa.sign();
        let sb = other.mantissa.sign();
        let sign_rank = |s: Sign| match s {
            Sign::Minus => 0,
            Sign::NoSign => 1,
            Sign::Plus => 2,
        };
        if sign_rank(sa) != sign_rank(sb) {
            return sign_rank(sa).cmp(&sign_rank(sb));
        }
        if sa == Sign::NoSign {
            return Ordering::Equal;
        }
        // Same nonzero sign: compare magnitudes. |x| lies in
        // [2^(bits+e-1), 2^(bits+e)).
        let ha = self.bits() as i64 + self.exponent;
        let hb = other.bits() as i64 + other.exponent;
        let mag = if ha != hb {
            ha.cmp(&hb)
        } else {
            // Overlapping ranges: exponents differ by at most the mantissa
            // widths, so aligning is cheap.
            let e = self.exponent.min(other.exponent);
            let ma = self.mantissa.magnitude() << (self.exponent - e) as u64;
            let mb = other.mantissa.magnitude() << (other.exponent - e) as u64;
            ma.cmp(&mb)
        };
        if sa == Sign::Plus {
            mag
        } else {
            mag.reverse()
        }
    }

    /// Decimal rendering with `digits` fractional digits, rounded down.
    pub fn to_decimal_floor(&self, digits: u32) -> String {
        self.to_decimal(digits, false)
    }

    /// Decimal rendering with `digits` fractional digits, rounded up.
    pub fn to_decimal_ceil(&self, digits: u32) -> String {
        self.to_decimal(digits, true)
    }

    fn to_decimal(&self, digits: u32, ceil: bool) -> String {
        let pow10 = BigInt::from(10u32).pow(digits);
        // n = round(value * 10^digits) in the requested direction
        let scaled_num = &self.mantissa * &pow10;
        let n = if self.exponent >= 0 {
            scaled_num << self.exponent as u64
        } else if ceil {
            shr_ceil(&scaled_num, (-self.exponent) as u64)
        } else {
            shr_floor(&scaled_num, (-self.exponent) as u64)
        };
        let neg = n.is_negative();
        let mag = n.magnitude();
        let (int_part, frac_part) = mag.div_rem(pow10.magnitude());
        let mut s = String::new();
        if neg {
            s.push('-');
        }
        s.push_str(&int_part.to_string());
        if digits > 0 {
            let frac = frac_part.to_string();
            s.push('.');
            for _ in 0..(digits as usize - frac.len()) {
                s.push('0');
            }
            s.push_str(&frac);
        }
        s
    }

    /// Lossy f64 approximation, for diagnostics only.
    pub fn to_f64(&self) -> f64 {
        let bits = self.bits();
        if bits == 0 {
            return 0.0;
        }
        let (m, e) = if bits > 64 {
            let s = bits - 64;
            (shr_floor(&self.mantissa, s), self.exponent + s as i64)
        } else {
            (self.mantissa.clone(), self.exponent)
        };
        let m: f64 = i128::try_from(m).map(|v| v as f64).unwrap_or(f64::NAN);
        m * 2f64.powi(e.clamp(i32::MIN as i64, i32::MAX as i64) as i32)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_value(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_f64())
    }
}

/// A closed interval with dyadic endpoints, lo <= hi.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyadicInterval {
    lo: Dyadic,
    hi: Dyadic,
}

/// Arithmetic selector for fuzz-style tests and generic drivers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl DyadicInterval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Self {
        debug_assert!(lo.cmp_value(&hi) != Ordering::Greater, "inverted interval");
        DyadicInterval { lo, hi }
    }

    pub fn point(d: Dyadic) -> Self {
        DyadicInterval { lo: d.clone(), hi: d }
    }

    pub fn from_int(n: i64) -> Self {
        Self::point(Dyadic::from_int(n))
    }

    /// Outward-rounded enclosure of a rational (exact when the rational is
    /// dyadic and fits in `prec` bits).
    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        DyadicInterval {
            lo: Dyadic::from_rational_down(q, prec),
            hi: Dyadic::from_rational_up(q, prec),
        }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    /// Upper bound for |x| over the interval.
    pub fn mag_bound(&self) -> Dyadic {
        let a = self.lo.abs();
        let b = self.hi.abs();
        if a.cmp_value(&b) == Ordering::Greater {
            a
        } else {
            b
        }
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_strictly_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn contains_rational(&self, q: &BigRational) -> bool {
        self.lo.to_rational() <= *q && *q <= self.hi.to_rational()
    }

    pub fn contains(&self, other: &DyadicInterval) -> bool {
        self.lo.cmp_value(&other.lo) != Ordering::Greater
            && self.hi.cmp_value(&other.hi) != Ordering::Less
    }

    pub fn intersect(&self, other: &DyadicInterval) -> Option<DyadicInterval> {
        let lo = if self.lo.cmp_value(&other.lo) == Ordering::Greater {
            self.lo.clone()
        } else {
            other.lo.clone()
        };
        let hi = if self.hi.cmp_value(&other.hi) == Ordering::Less {
            self.hi.clone()
        } else {
            other.hi.clone()
        };
        if lo.cmp_value(&hi) == Ordering::Greater {
            None
        } else {
            Some(DyadicInterval { lo, hi })
        }
    }

    pub fn hull(&self, other: &DyadicInterval) -> DyadicInterval {
        let lo = if self.lo.cmp_value(&other.lo) == Ordering::Less {
            self.lo.clone()
        } else {
            other.lo.clone()
        };
        let hi = if self.hi.cmp_value(&other.hi) == Ordering::Greater {
            self.hi.clone()
        } else {
            other.hi.clone()
        };
        DyadicInterval { lo, hi }
    }

    pub fn neg(&self) -> DyadicInterval {
        DyadicInterval { lo: self.hi.neg(), hi: self.lo.neg() }
    }

    fn round_out(lo: Dyadic, hi: Dyadic, prec: u32) -> DyadicInterval {
        DyadicInterval { lo: lo.round_down(prec), hi: hi.round_up(prec) }
    }

    pub fn add(&self, other: &Self, prec: u32) -> DyadicInterval {
        Self::round_out(self.lo.add(&other.lo), self.hi.add(&other.hi), prec)
    }

    pub fn sub(&self, other: &Self, prec: u32) -> DyadicInterval {
        Self::round_out(self.lo.sub(&other.hi), self.hi.sub(&other.lo), prec)
    }

    pub fn mul(&self, other: &Self, prec: u32) -> DyadicInterval {
        let candidates = [
            self.lo.mul(&other.lo),
            self.lo.mul(&other.hi),
            self.hi.mul(&other.lo),
            self.hi.mul(&other.hi),
        ];
        let mut lo = candidates[0].clone();
        let mut hi = candidates[0].clone();
        for c in &candidates[1..] {
            if c.cmp_value(&lo) == Ordering::Less {
                lo = c.clone();
            }
            if c.cmp_value(&hi) == Ordering::Greater {
                hi = c.clone();
            }
        }
        Self::round_out(lo, hi, prec)
    }

    pub fn div(&self, other: &Self, prec: u32) -> Result<DyadicInterval, IntervalError> {
        if other.contains_zero() {
            return Err(IntervalError::DivByZeroInterval);
        }
        let mut lo: Option<Dyadic> = None;
        let mut hi: Option<Dyadic> = None;
        for a in [&self.lo, &self.hi] {
            for b in [&other.lo, &other.hi] {
                let d = a.div_down(b, prec);
                let u = a.div_up(b, prec);
                lo = Some(match lo {
                    Some(cur) if cur.cmp_value(&d) != Ordering::Greater => cur,
                    _ => d,
                });
                hi = Some(match hi {
                    Some(cur) if cur.cmp_value(&u) != Ordering::Less => cur,
                    _ => u,
                });
            }
        }
        Ok(DyadicInterval { lo: lo.unwrap(), hi: hi.unwrap() })
    }

    /// Enclosure of {sqrt(x) : x in self}. The lower endpoint must be >= 0.
    pub fn sqrt(&self, prec: u32) -> Result<DyadicInterval, IntervalError> {
        if self.lo.is_negative() {
            return Err(IntervalError::NegativeRadicand);
        }
        Ok(DyadicInterval { lo: self.lo.sqrt_down(prec), hi: self.hi.sqrt_up(prec) })
    }

    /// Multiply by an exact rational scalar, outward rounded.
    pub fn scale_rational(&self, q: &BigRational, prec: u32) -> DyadicInterval {
        let s = DyadicInterval::from_rational(q, prec + 4);
        self.mul(&s, prec)
    }

    pub fn apply(
        a: &Self,
        b: &Self,
        op: ArithOp,
        prec: u32,
    ) -> Result<DyadicInterval, IntervalError> {
        match op {
            ArithOp::Add => Ok(a.add(b, prec)),
            ArithOp::Sub => Ok(a.sub(b, prec)),
            ArithOp::Mul => Ok(a.mul(b, prec)),
            ArithOp::Div => a.div(b, prec),
        }
    }

    /// "[lo, hi]" with both endpoints rendered to `digits` decimal places,
    /// lo rounded down and hi rounded up, so the printed interval still
    /// encloses the value.
    pub fn to_decimal(&self, digits: u32) -> String {
        format!("[{}, {}]", self.lo.to_decimal_floor(digits), self.hi.to_decimal_ceil(digits))
    }
}

impl fmt::Display for DyadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo.to_f64(), self.hi.to_f64())
    }
}
