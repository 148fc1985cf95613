//! Executable non-constructibility witnesses: rational-root search, the
//! cubic constructibility test (a cubic's roots are constructible iff one of
//! them is rational), and irreducibility certificates for the cyclotomic
//! polynomials of p and p^2 by the Eisenstein criterion after the shift
//! x -> x + 1.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::modular::{factorize, is_prime};
use crate::rational::BigRational;

/// Errors from polynomial witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessError {
    /// Operation undefined for the zero polynomial.
    ZeroPolynomial,
    /// The cubic test needs degree exactly 3.
    BadDegree,
    /// A cyclotomic polynomial was requested for a composite index.
    NotPrime,
}

impl fmt::Display for WitnessError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessError::ZeroPolynomial => write!(f, "zero polynomial"),
            WitnessError::BadDegree => write!(f, "polynomial degree must be 3"),
            WitnessError::NotPrime => write!(f, "index must be prime"),
        }
    }
}

impl std::error::Error for WitnessError {}

/// Integer polynomial, coefficients in ascending degree order, no trailing
/// zeros (the zero polynomial is the empty sequence).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// The polynomial divided by its content.
    pub fn primitive_part(&self) -> IntPolynomial {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        IntPolynomial { coeffs: self.coeffs.iter().map(|a| a / &c).collect() }
    }

    /// Exact coefficients of f(x + 1), by Horner-style accumulation
    /// (multiply by (x + 1), add the next coefficient).
    pub fn shift_by_one(&self) -> IntPolynomial {
        let mut acc: Vec<BigInt> = Vec::with_capacity(self.coeffs.len());
        for c in self.coeffs.iter().rev() {
            // acc := acc * (x + 1) + c
            let mut next = vec![BigInt::zero(); acc.len() + 1];
            for (i, a) in acc.iter().enumerate() {
                next[i] += a;
                next[i + 1] += a;
            }
            next[0] += c;
            // the leading coefficient never vanishes under this map
            if next.last().is_some_and(Zero::is_zero) {
                next.pop();
            }
            acc = next;
        }
        IntPolynomial::new(acc)
    }

    /// All rational roots, by the rational root theorem: candidates
    /// +-(divisor of constant term)/(divisor of leading coefficient), each
    /// verified by exact evaluation. Sorted ascending, no duplicates.
    pub fn rational_roots(&self) -> Result<Vec<BigRational>, WitnessError> {
        if self.is_zero() {
            return Err(WitnessError::ZeroPolynomial);
        }
        let mut roots = Vec::new();
        // strip x^k: zero is a root iff the constant term vanishes
        let first_nonzero = self.coeffs.iter().position(|c| !c.is_zero()).expect("nonzero");
        if first_nonzero > 0 {
            roots.push(BigRational::zero());
        }
        let reduced = IntPolynomial::new(self.coeffs[first_nonzero..].to_vec());
        if reduced.degree() == Some(0) {
            roots.sort();
            return Ok(roots);
        }
        let constant = reduced.coeffs.first().expect("nonzero constant");
        let leading = reduced.coeffs.last().expect("nonzero leading");
        let ps = divisors_u64(constant);
        let qs = divisors_u64(leading);
        for p in &ps {
            for q in &qs {
                for cand in [
                    BigRational::new(BigInt::from(*p), BigInt::from(*q)),
                    BigRational::new(BigInt::from(-(*p as i64)), BigInt::from(*q)),
                ] {
                    if reduced.eval_rational(&cand).is_zero() && !roots.contains(&cand) {
                        roots.push(cand);
                    }
                }
            }
        }
        roots.sort();
        Ok(roots)
    }

    /// The roots of a cubic with rational coefficients are constructible
    /// iff one of them is rational.
    pub fn cubic_constructible(&self) -> Result<bool, WitnessError> {
        if self.degree() != Some(3) {
            return Err(WitnessError::BadDegree);
        }
        Ok(!self.rational_roots()?.is_empty())
    }

    /// Eisenstein criterion at the prime q, applied to the primitive part:
    /// leading coefficient not divisible by q, every other coefficient
    /// divisible by q, constant term not divisible by q^2. A pass certifies
    /// irreducibility over Z, hence over Q.
    pub fn eisenstein_check(&self, q: u64) -> bool {
        debug_assert!(is_prime(q));
        let f = self.primitive_part();
        let n = match f.degree() {
            Some(n) if n >= 1 => n,
            _ => return false,
        };
        let q = BigInt::from(q);
        let qq = &q * &q;
        if f.coeffs[n].is_multiple_of(&q) {
            return false;
        }
        if f.coeffs[..n].iter().any(|c| !c.is_multiple_of(&q)) {
            return false;
        }
        !f.coeffs[0].is_multiple_of(&qq)
    }
}

/// Phi_p = 1 + x + ... + x^(p-1), or Phi_(p^2) = 1 + x^p + ... + x^(p(p-1))
/// when `square` is set.
pub fn cyclotomic_poly(p: u64, square: bool) -> Result<IntPolynomial, WitnessError> {
    if !is_prime(p) {
        return Err(WitnessError::NotPrime);
    }
    let step = if square { p as usize } else { 1 };
    let degree = (p as usize - 1) * step;
    let mut coeffs = vec![BigInt::zero(); degree + 1];
    for i in (0..=degree).step_by(step) {
        coeffs[i] = BigInt::one();
    }
    Ok(IntPolynomial::new(coeffs))
}

/// Positive divisors of |n|, for desk-scale n (must fit in u64).
fn divisors_u64(n: &BigInt) -> Vec<u64> {
    let mag = n.magnitude();
    let n = u64::try_from(mag).expect("rational-root candidates need a word-sized coefficient");
    assert!(n > 0);
    let mut divs = vec![1u64];
    for &(p, k) in factorize(n).factors() {
        let base = divs.clone();
        let mut power = 1u64;
        for _ in 0..k {
            power *= p;
            divs.extend(base.iter().map(|d| d * power));
        }
    }
    divs.sort_unstable();
    divs
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.magnitude();
            if first {
                first = false;
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if i == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "x^{i}")?;
            } else {
                write!(f, "{mag}*x^{i}")?;
            }
        }
        Ok(())
    }
}
