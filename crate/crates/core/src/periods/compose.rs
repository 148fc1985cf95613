//! cos(2*pi/n) for general constructible n, composed from the Fermat-prime
//! syntheses: coprime parts are folded with the cosine addition formula via
//! a Bezout identity, and factors of two are peeled off last with the
//! half-angle formula.

use num_traits::ToPrimitive;

use crate::constructible::is_constructible;
use crate::cosine::cos_two_pi;
use crate::modular::egcd;
use crate::radical::RadicalExpr;
use crate::rational::pow2;

use super::{synthesize_radical, PeriodError};

/// Synthesize a nested square-root expression for cos(2*pi/n).
///
/// n must pass the constructibility criterion. Odd Fermat-prime factors are
/// folded in ascending order; halvings come last, so the result is
/// deterministic. The output is verified against the rigorous cosine
/// enclosure before being returned.
pub fn synthesize_cos(n: u64) -> Result<RadicalExpr, PeriodError> {
    let verdict = is_constructible(n);
    if !verdict.constructible {
        return Err(PeriodError::NotConstructible(Box::new(verdict)));
    }
    let expr = match n {
        1 => RadicalExpr::integer(1),
        2 => RadicalExpr::integer(-1),
        _ => {
            let odd_primes = &verdict.fermat_prime_factors;
            let halvings;
            let mut state: Angle;
            if odd_primes.is_empty() {
                // n = 2^a with a >= 2: start from cos(2*pi/4) = 0
                state = Angle { n: 4, cos: RadicalExpr::integer(0), sin: RadicalExpr::integer(1) };
                halvings = verdict.two_power_part - 2;
            } else {
                state = Angle::for_prime(odd_primes[0])?;
                for &q in &odd_primes[1..] {
                    state = state.fold(Angle::for_prime(q)?);
                }
                halvings = verdict.two_power_part;
            }
            for _ in 0..halvings {
                state = state.halve();
            }
            debug_assert_eq!(state.n, n);
            state.cos.simplify()
        }
    };
    let value = expr.eval_interval(128)?;
    let reference = cos_two_pi(1, n, 128);
    let joint = value.hull(&reference);
    assert!(
        value.intersect(&reference).is_some() && joint.width().to_rational() <= pow2(-100),
        "synthesized cos(2*pi/{n}) disagrees with its rigorous enclosure"
    );
    Ok(expr)
}

/// cos and sin of 2*pi/n as expressions.
struct Angle {
    n: u64,
    cos: RadicalExpr,
    sin: RadicalExpr,
}

impl Angle {
    fn for_prime(q: u64) -> Result<Angle, PeriodError> {
        let cos = synthesize_radical(q)?;
        // 2*pi/q is in (0, pi), so the sine is the nonnegative root
        let sin = RadicalExpr::integer(1).sub(&cos.mul(&cos)).sqrt();
        Ok(Angle { n: q, cos, sin })
    }

    /// Combine with a coprime angle: with x*m + y*q = 1,
    /// 1/(m q) = x/q + y/m, so the new angle is x*(2*pi/q) + y*(2*pi/m).
    fn fold(self, other: Angle) -> Angle {
        let (g, x, y) = egcd(self.n as i64, other.n as i64);
        assert_eq!(g, 1, "fold requires coprime moduli");
        let a = other.multiple(x);
        let b = self.multiple(y);
        Angle {
            n: self.n * other.n,
            cos: a.0.mul(&b.0).sub(&a.1.mul(&b.1)),
            sin: a.1.mul(&b.0).add(&a.0.mul(&b.1)),
        }
    }

    /// (cos, sin) of k times this angle, k any integer, by repeated angle
    /// addition (the expression stays compact through subtree sharing).
    fn multiple(&self, k: i64) -> (RadicalExpr, RadicalExpr) {
        let steps = k.unsigned_abs().to_usize().expect("small multiple");
        let mut c = RadicalExpr::integer(1);
        let mut s = RadicalExpr::integer(0);
        for _ in 0..steps {
            let nc = c.mul(&self.cos).sub(&s.mul(&self.sin));
            let ns = s.mul(&self.cos).add(&c.mul(&self.sin));
            c = nc;
            s = ns;
        }
        if k < 0 {
            s = RadicalExpr::integer(0).sub(&s);
        }
        (c, s)
    }

    /// Halve the angle: cos(t/2) = sqrt((1 + cos t)/2), valid because every
    /// angle here is at most 2*pi/3 so the half angle stays in the first
    /// quadrant. Only used after all coprime folds, so the sine is not
    /// maintained.
    fn halve(self) -> Angle {
        let cos = RadicalExpr::integer(1).add(&self.cos).div(&RadicalExpr::integer(2)).sqrt();
        Angle { n: self.n * 2, cos, sin: RadicalExpr::integer(0) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radical::Format;
    use crate::rational::{rat, rat_int};

    #[test]
    fn quarter_turn_is_zero() {
        let e = synthesize_cos(4).unwrap();
        assert_eq!(e, RadicalExpr::integer(0));
    }

    #[test]
    fn small_cases_match_known_forms() {
        assert_eq!(synthesize_cos(1).unwrap(), RadicalExpr::integer(1));
        assert_eq!(synthesize_cos(2).unwrap(), RadicalExpr::integer(-1));
        assert_eq!(synthesize_cos(3).unwrap(), RadicalExpr::rational(rat(-1, 2)));
        assert_eq!(synthesize_cos(6).unwrap(), RadicalExpr::rational(rat(1, 2)));
        // cos(2*pi/8) = sqrt(1/2)
        let e = synthesize_cos(8).unwrap();
        assert_eq!(e.serialize(Format::Sexpr), "(sqrt 1/2)");
    }

    #[test]
    fn fifteen_via_bezout() {
        let e = synthesize_cos(15).unwrap();
        let i = e.eval_interval(128).unwrap();
        // cos 24 degrees
        let lo = rat_int(913_545_457_642_600) / rat_int(10).pow(15);
        let hi = rat_int(913_545_457_642_602) / rat_int(10).pow(15);
        assert!(i.lo().to_rational() >= lo && i.hi().to_rational() <= hi);
    }

    #[test]
    fn not_constructible_is_reported() {
        match synthesize_cos(7) {
            Err(PeriodError::NotConstructible(v)) => {
                assert_eq!(v.n, 7);
                assert_eq!(v.obstruction.as_ref().unwrap().prime(), 7);
            }
            other => panic!("expected NotConstructible, got {other:?}"),
        }
        assert!(matches!(synthesize_cos(9), Err(PeriodError::NotConstructible(_))));
    }

    #[test]
    fn deterministic_output() {
        let a = synthesize_cos(40).unwrap();
        let b = synthesize_cos(40).unwrap();
        assert_eq!(a.serialize(Format::Sexpr), b.serialize(Format::Sexpr));
    }

    #[test]
    fn every_constructible_n_up_to_120() {
        for n in 1..=120u64 {
            if !is_constructible(n).constructible {
                assert!(matches!(synthesize_cos(n), Err(PeriodError::NotConstructible(_))));
                continue;
            }
            let expr = synthesize_cos(n).unwrap();
            let value = expr.eval_interval(128).unwrap();
            let reference = cos_two_pi(1, n, 128);
            let joint = value.hull(&reference);
            assert!(value.intersect(&reference).is_some(), "disjoint at n = {n}");
            assert!(
                joint.width().to_rational() <= crate::rational::pow2(-100),
                "joint width too large at n = {n}"
            );
        }
    }
}
