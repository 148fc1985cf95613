//! The constructibility criterion for regular n-gons: n = 2^a * p1 * ... * pl
//! with the p_i distinct Fermat primes, together with the Euler-totient
//! cross-check (phi(n) a power of two).

use std::fmt;

use crate::modular::{factorize, is_fermat_prime};

/// Why a given n fails the criterion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Obstruction {
    /// An odd prime divides n more than once.
    RepeatedOddPrime { prime: u64, multiplicity: u32 },
    /// An odd prime divisor that is not a Fermat prime.
    NonFermatOddPrime { prime: u64 },
}

impl Obstruction {
    /// The prime the obstruction points at.
    pub fn prime(&self) -> u64 {
        match self {
            Obstruction::RepeatedOddPrime { prime, .. } => *prime,
            Obstruction::NonFermatOddPrime { prime } => *prime,
        }
    }

    /// The full obstructing divisor of n (prime, or prime power).
    pub fn divisor(&self) -> u64 {
        match self {
            Obstruction::RepeatedOddPrime { prime, multiplicity } => prime.pow(*multiplicity),
            Obstruction::NonFermatOddPrime { prime } => *prime,
        }
    }
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::RepeatedOddPrime { prime, multiplicity } => {
                write!(f, "{prime}^{multiplicity}")
            }
            Obstruction::NonFermatOddPrime { prime } => write!(f, "{prime}"),
        }
    }
}

/// Outcome of the constructibility decision for one n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub n: u64,
    pub constructible: bool,
    /// Exponent of 2 in n.
    pub two_power_part: u32,
    /// The distinct Fermat primes dividing n (each exactly once) when
    /// constructible; the Fermat primes found so far otherwise.
    pub fermat_prime_factors: Vec<u64>,
    /// Present exactly when not constructible; names a divisor of n.
    pub obstruction: Option<Obstruction>,
}

/// Decide constructibility of the regular n-gon.
///
/// n = 1 and n = 2 are constructible by convention (the criterion's form
/// with l = 0).
pub fn is_constructible(n: u64) -> Verdict {
    assert!(n >= 1, "is_constructible requires n >= 1");
    let mut two_power_part = 0;
    let mut fermat = Vec::new();
    let mut obstruction = None;
    for &(p, k) in factorize(n).factors() {
        if p == 2 {
            two_power_part = k;
            continue;
        }
        if k >= 2 {
            obstruction = Some(Obstruction::RepeatedOddPrime { prime: p, multiplicity: k });
            break;
        }
        if !is_fermat_prime(p) {
            obstruction = Some(Obstruction::NonFermatOddPrime { prime: p });
            break;
        }
        fermat.push(p);
    }
    Verdict {
        n,
        constructible: obstruction.is_none(),
        two_power_part,
        fermat_prime_factors: fermat,
        obstruction,
    }
}

/// Euler totient via factorization.
pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "euler_phi requires n >= 1");
    let mut phi = 1u64;
    for &(p, k) in factorize(n).factors() {
        phi *= p.pow(k - 1) * (p - 1);
    }
    phi
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdicts_for_named_cases() {
        let v7 = is_constructible(7);
        assert!(!v7.constructible);
        assert_eq!(v7.obstruction, Some(Obstruction::NonFermatOddPrime { prime: 7 }));

        let v17 = is_constructible(17);
        assert!(v17.constructible);
        assert_eq!(v17.fermat_prime_factors, vec![17]);

        let v289 = is_constructible(289);
        assert!(!v289.constructible);
        let ob = v289.obstruction.unwrap();
        assert_eq!(ob, Obstruction::RepeatedOddPrime { prime: 17, multiplicity: 2 });
        assert_eq!(ob.divisor(), 289);
        assert_eq!(ob.to_string(), "17^2");

        let v60 = is_constructible(60);
        assert!(v60.constructible);
        assert_eq!(v60.two_power_part, 2);
        assert_eq!(v60.fermat_prime_factors, vec![3, 5]);
        assert_eq!(euler_phi(60), 16);
        assert!(euler_phi(60).is_power_of_two());

        assert!(is_constructible(1).constructible);
        assert!(is_constructible(2).constructible);
    }

    #[test]
    fn obstruction_divides_n() {
        for n in 1..=3000u64 {
            let v = is_constructible(n);
            if let Some(ob) = &v.obstruction {
                assert!(!v.constructible);
                assert_eq!(n % ob.divisor(), 0, "obstruction must divide n = {n}");
            } else {
                assert!(v.constructible);
                let recomposed: u64 =
                    v.fermat_prime_factors.iter().product::<u64>() * 2u64.pow(v.two_power_part);
                assert_eq!(recomposed, n);
            }
        }
    }

    #[test]
    fn phi_examples() {
        assert_eq!(euler_phi(289), 272);
        assert_eq!(euler_phi(13), 12);
        assert_eq!(euler_phi(1), 1);
    }

    #[test]
    fn agrees_with_phi_power_of_two() {
        for n in 1..=20_000u64 {
            let a = is_constructible(n).constructible;
            let b = euler_phi(n).is_power_of_two();
            assert_eq!(a, b, "criterion vs totient disagree at n = {n}");
        }
    }

    #[test]
    fn multiplicativity_hooks() {
        let limit = 300u64;
        let table: Vec<bool> =
            (0..=limit * limit).map(|n| n >= 1 && is_constructible(n).constructible).collect();
        for m in 1..=limit {
            for n in 1..=limit {
                let mn = m * n;
                if crate::modular::egcd(m as i64, n as i64).0 == 1
                    && table[m as usize]
                    && table[n as usize]
                {
                    assert!(table[mn as usize], "coprime product {m}*{n} should be constructible");
                }
                if table[mn as usize] {
                    assert!(table[m as usize], "divisor {m} of constructible {mn}");
                }
            }
            if table[m as usize] {
                assert!(table[(2 * m) as usize], "doubling {m}");
            }
        }
    }
}
