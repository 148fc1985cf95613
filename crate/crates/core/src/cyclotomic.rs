//! Exact arithmetic in Z[x]/Phi_p(x) for prime p.
//!
//! Elements are integer coordinate vectors over the basis 1, eps, ...,
//! eps^(p-2), where eps is a primitive p-th root of unity. Phi_p is
//! irreducible, so equality of elements is coordinate equality, which makes
//! this ring the exact symbolic oracle for every period identity in the
//! library. The reduction rule is eps^(p-1) = -(1 + eps + ... + eps^(p-2)).

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::cosine::{cos_two_pi, sin_two_pi};
use crate::dyadic::DyadicInterval;

/// Errors from cyclotomic arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CycloError {
    /// Two elements from rings with different p were combined.
    ModulusMismatch,
    /// Period level outside 0..m for p = 2^m + 1, or class index out of range.
    BadLevel,
}

impl fmt::Display for CycloError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CycloError::ModulusMismatch => write!(f, "cyclotomic moduli differ"),
            CycloError::BadLevel => write!(f, "period level or class out of range"),
        }
    }
}

impl std::error::Error for CycloError {}

/// An element of Z[x]/Phi_p(x); `coeffs[i]` is the coordinate of eps^i,
/// 0 <= i <= p-2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloElement {
    p: u64,
    coeffs: Vec<BigInt>,
}

impl CycloElement {
    pub fn zero(p: u64) -> Self {
        debug_assert!(crate::modular::is_prime(p));
        CycloElement { p, coeffs: vec![BigInt::zero(); (p - 1) as usize] }
    }

    pub fn one(p: u64) -> Self {
        Self::from_integer(p, BigInt::one())
    }

    pub fn from_integer(p: u64, c: BigInt) -> Self {
        let mut e = Self::zero(p);
        e.coeffs[0] = c;
        e
    }

    /// eps^k, reduced.
    pub fn root_power(p: u64, k: u64) -> Self {
        let k = (k % p) as usize;
        let mut e = Self::zero(p);
        if k == (p - 1) as usize {
            for c in &mut e.coeffs {
                *c = BigInt::from(-1);
            }
        } else {
            e.coeffs[k] = BigInt::one();
        }
        e
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn check(&self, other: &Self) -> Result<(), CycloError> {
        if self.p != other.p {
            Err(CycloError::ModulusMismatch)
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, CycloError> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CycloElement { p: self.p, coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, CycloError> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(CycloElement { p: self.p, coeffs })
    }

    pub fn neg(&self) -> Self {
        CycloElement { p: self.p, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        CycloElement { p: self.p, coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// Product, reduced first by eps^p = 1 and then by Phi_p.
    pub fn mul(&self, other: &Self) -> Result<Self, CycloError> {
        self.check(other)?;
        // convolution indices run to 2p-4; fold by eps^p = 1 into 0..p-1
        let mut group = vec![BigInt::zero(); self.p as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let idx = (i + j) % self.p as usize;
                group[idx] += a * b;
            }
        }
        Ok(Self::reduce_group_vector(self.p, group))
    }

    /// Reduce a coordinate vector over 1, eps, ..., eps^(p-1) (group ring)
    /// to the Phi_p basis.
    pub fn reduce_group_vector(p: u64, mut group: Vec<BigInt>) -> Self {
        debug_assert_eq!(group.len(), p as usize);
        let top = group.pop().expect("nonempty");
        let coeffs = group.into_iter().map(|c| c - &top).collect();
        CycloElement { p, coeffs }
    }

    /// Some(c) iff the element equals the rational integer c.
    pub fn is_rational_constant(&self) -> Option<BigInt> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Gaussian period: the sum of eps^(g^e) over exponents e in one residue
    /// class mod `classes`, where `classes` divides p - 1.
    pub fn period(p: u64, g: u64, classes: u64, class: u64) -> Result<Self, CycloError> {
        if classes == 0 || !(p - 1).is_multiple_of(classes) || class >= classes {
            return Err(CycloError::BadLevel);
        }
        let mut group = vec![BigInt::zero(); p as usize];
        let mut power = 1u64; // g^e mod p
        for e in 0..p - 1 {
            if e % classes == class {
                group[power as usize] += 1;
            }
            power = power * g % p;
        }
        Ok(Self::reduce_group_vector(p, group))
    }

    /// Period A_w for a Fermat prime p = 2^m + 1: level x in 0..m, index
    /// value val(w) < 2^(x+1) of the length-(x+1) bit string w. Exponent
    /// classes are taken mod 2^(x+1).
    pub fn period_element(p: u64, g: u64, level: u32, w: u32) -> Result<Self, CycloError> {
        debug_assert!(crate::modular::is_fermat_prime(p));
        let m = (p - 1).trailing_zeros();
        if level >= m || w as u64 >= 1u64 << (level + 1) {
            return Err(CycloError::BadLevel);
        }
        Self::period(p, g, 1u64 << (level + 1), w as u64)
    }

    /// Rigorous enclosure of the element's value as a complex number:
    /// (real part, imaginary part).
    pub fn eval_complex(&self, prec: u32) -> (DyadicInterval, DyadicInterval) {
        let w = prec + 16;
        let mut re = DyadicInterval::from_int(0);
        let mut im = DyadicInterval::from_int(0);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let q = crate::rational::BigRational::from_integer(c.clone());
            re = re.add(&cos_two_pi(i as u64, self.p, w).scale_rational(&q, w), w);
            im = im.add(&sin_two_pi(i as u64, self.p, w).scale_rational(&q, w), w);
        }
        (re, im)
    }
}

impl fmt::Display for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                first = false;
                if i == 0 {
                    write!(f, "{c}")?;
                } else if c.is_one() {
                    write!(f, "e^{i}")?;
                } else {
                    write!(f, "{c}*e^{i}")?;
                }
            } else {
                let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
                if i == 0 {
                    write!(f, " {sign} {mag}")?;
                } else if mag.is_one() {
                    write!(f, " {sign} e^{i}")?;
                } else {
                    write!(f, " {sign} {mag}*e^{i}")?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
