//! Rigorous enclosures of cos(2*pi*k/n) for rational angles.
//!
//! The angle is reduced with exact rational arithmetic to 2*pi*s with
//! s in [0, 1/8] (so the series argument stays in [0, pi/4]), the enclosure
//! of 2*pi comes from a Machin arctangent formula, and the cosine/sine
//! Taylor series is summed in interval arithmetic with the alternating-series
//! tail folded into the result. Enclosures are refined on a fixed
//! doubling chain of working precisions and intersected along the chain, so
//! raising the requested precision always yields a nested sub-interval.

use std::collections::BTreeMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::One;

use crate::dyadic::{Dyadic, DyadicInterval};
use crate::rational::{pow2, rat, rat_int, BigRational};

/// Enclosure of pi to roughly `w` bits, computed by
/// pi = 16*atan(1/5) - 4*atan(1/239) and cached per working precision.
pub fn pi_enclosure(w: u32) -> DyadicInterval {
    static CACHE: OnceLock<Mutex<BTreeMap<u32, DyadicInterval>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&w) {
        return v.clone();
    }
    let a5 = atan_inv(5, w + 8);
    let a239 = atan_inv(239, w + 8);
    let sixteen = DyadicInterval::from_int(16);
    let four = DyadicInterval::from_int(4);
    let pi = sixteen.mul(&a5, w + 8).sub(&four.mul(&a239, w + 8), w + 8);
    cache.lock().unwrap().insert(w, pi.clone());
    pi
}

/// Enclosure of atan(1/x) for integer x >= 2 by the alternating series
/// sum_j (-1)^j / ((2j+1) x^(2j+1)), tail bounded by the first omitted term.
fn atan_inv(x: u32, w: u32) -> DyadicInterval {
    let xx = BigInt::from(x) * BigInt::from(x);
    let mut power = BigInt::from(x); // x^(2j+1)
    let mut j: u64 = 0;
    let mut sum = DyadicInterval::from_int(0);
    let tail;
    loop {
        let c = &power * BigInt::from(2 * j + 1);
        let term = recip_enclosure(&c, w);
        // stop when the next term cannot move the sum at this precision
        if term.hi().bits() as i64 + term.hi().exponent() < -((w + 2) as i64) {
            tail = term;
            break;
        }
        if j.is_multiple_of(2) {
            sum = sum.add(&term, w + 8);
        } else {
            sum = sum.sub(&term, w + 8);
        }
        power *= &xx;
        j += 1;
    }
    // alternating series: truncation error within [0, first omitted term]
    let slack = DyadicInterval::new(tail.hi().neg(), tail.hi().clone());
    sum.add(&slack, w + 8)
}

/// Enclosure of 1/c for a positive integer c.
fn recip_enclosure(c: &BigInt, w: u32) -> DyadicInterval {
    let one = Dyadic::one();
    let d = Dyadic::from_bigint(c.clone());
    DyadicInterval::new(one.div_down(&d, w + 4), one.div_up(&d, w + 4))
}

/// Rigorous enclosure of cos(2*pi*k/n), width at most 2^(1-prec).
///
/// Enclosures are nested under refinement: the result for a larger `prec`
/// is contained in the result for any smaller one.
pub fn cos_two_pi(k: u64, n: u64, prec: u32) -> DyadicInterval {
    assert!(n >= 1, "modulus must be positive");
    cos_of_turn(&BigInt::from(k), &BigInt::from(n), prec)
}

/// cos(2*pi * num/den) for arbitrary integer num (den > 0).
pub fn cos_of_turn(num: &BigInt, den: &BigInt, prec: u32) -> DyadicInterval {
    use num_integer::Integer;
    // fraction of a full turn, reduced into [0, 1)
    let turn = BigRational::new(num.mod_floor(den), den.clone());
    let mut result: Option<DyadicInterval> = None;
    let target = pow2(1 - prec as i64);
    let mut w: u32 = 64;
    loop {
        let e = cos_turn_once(&turn, w);
        let merged = match &result {
            None => e,
            // both enclose the same value, so the intersection is nonempty
            Some(prev) => prev.intersect(&e).unwrap_or_else(|| prev.clone()),
        };
        result = Some(merged.clone());
        if merged.width().to_rational() <= target {
            return merged;
        }
        w = w.checked_mul(2).expect("cosine working precision overflow");
    }
}

/// sin(2*pi*k/n) via the quarter-turn shift sin(x) = cos(x - pi/2).
pub fn sin_two_pi(k: u64, n: u64, prec: u32) -> DyadicInterval {
    assert!(n >= 1, "modulus must be positive");
    // sin(2*pi*t) = cos(2*pi*(t - 1/4)), t = k/n
    let num = BigInt::from(4) * BigInt::from(k) - BigInt::from(n);
    let den = BigInt::from(4) * BigInt::from(n);
    cos_of_turn(&num, &den, prec)
}

/// One un-intersected enclosure of cos(2*pi*t), t in [0,1), at working
/// precision `w`.
fn cos_turn_once(turn: &BigRational, w: u32) -> DyadicInterval {
    let half = rat(1, 2);
    let quarter = rat(1, 4);
    let eighth = rat(1, 8);
    let mut t = turn.clone();
    if t > half {
        t = rat_int(1) - t;
    }
    let mut negate = false;
    if t > quarter {
        t = half - t;
        negate = true;
    }
    let enclosure = if t > eighth {
        let s = quarter - t;
        sin_taylor(&angle(&s, w), w)
    } else {
        cos_taylor(&angle(&t, w), w)
    };
    let enclosure = clamp_unit(enclosure);
    if negate {
        enclosure.neg()
    } else {
        enclosure
    }
}

/// Enclosure of 2*pi*s for exact rational s in [0, 1/8].
fn angle(s: &BigRational, w: u32) -> DyadicInterval {
    let pi = pi_enclosure(w);
    pi.scale_rational(&(rat_int(2) * s), w + 8)
}

fn clamp_unit(i: DyadicInterval) -> DyadicInterval {
    let unit = DyadicInterval::new(Dyadic::from_int(-1), Dyadic::from_int(1));
    i.intersect(&unit).unwrap_or(unit)
}

fn cos_taylor(theta: &DyadicInterval, w: u32) -> DyadicInterval {
    taylor(theta, DyadicInterval::from_int(1), 0, w)
}

fn sin_taylor(theta: &DyadicInterval, w: u32) -> DyadicInterval {
    taylor(theta, theta.clone(), 1, w)
}

/// Alternating Taylor sum with first term `t0` and term recurrence
/// t_{j+1} = t_j * theta^2 / ((base+2j+1)(base+2j+2)); base = 0 gives cosine,
/// base = 1 sine. Requires theta in [0, pi/4], which makes terms strictly
/// decreasing from the start.
fn taylor(theta: &DyadicInterval, t0: DyadicInterval, base: u64, w: u32) -> DyadicInterval {
    let wp = w + 16;
    let theta_sq = theta.mul(theta, wp);
    let mut term = t0;
    let mut j: u64 = 0;
    let mut sum = DyadicInterval::from_int(0);
    loop {
        if j.is_multiple_of(2) {
            sum = sum.add(&term, wp);
        } else {
            sum = sum.sub(&term, wp);
        }
        let d = BigInt::from(base + 2 * j + 1) * BigInt::from(base + 2 * j + 2);
        term = term.mul(&theta_sq, wp).scale_rational(&BigRational::new(BigInt::one(), d), wp);
        j += 1;
        let small = term.mag_bound();
        if small.is_zero() || (small.bits() as i64 + small.exponent()) < -((w + 2) as i64) {
            break;
        }
    }
    // remainder of the alternating series is at most the first omitted term
    let b = term.mag_bound();
    sum.add(&DyadicInterval::new(b.neg(), b), wp)
}

/// Precomputed enclosures of cos(2*pi*k/n) for a fixed set of residues k,
/// shared across the Gaussian-period machinery.
pub struct CosTable {
    n: u64,
    prec: u32,
    values: BTreeMap<u64, DyadicInterval>,
}

impl CosTable {
    pub fn build(n: u64, keys: impl IntoIterator<Item = u64>, prec: u32) -> Self {
        let mut values: BTreeMap<u64, DyadicInterval> = BTreeMap::new();
        for k in keys {
            let k = k % n;
            if values.contains_key(&k) {
                continue;
            }
            // cos is even in the angle: the mirror residue has the same value
            let mirror = (n - k) % n;
            let v = match values.get(&mirror) {
                Some(v) => v.clone(),
                None => cos_two_pi(k, n, prec),
            };
            values.insert(k, v);
        }
        CosTable { n, prec, values }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn get(&self, k: u64) -> &DyadicInterval {
        self.values.get(&(k % self.n)).expect("residue missing from cosine table")
    }

    /// Enclosure of the real part of sum_t eps^t over the given exponents.
    pub fn sum_cos(&self, terms: &[u64]) -> DyadicInterval {
        let mut acc = DyadicInterval::from_int(0);
        for &t in terms {
            acc = acc.add(self.get(t), self.prec + 16);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Num;

    fn rational_from_decimal(s: &str) -> BigRational {
        // "0.123" -> 123/1000 with sign support
        let neg = s.starts_with('-');
        let body = s.trim_start_matches('-');
        let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
        let digits = format!("{int_part}{frac_part}");
        let num = BigInt::from_str_radix(&digits, 10).unwrap();
        let den = BigInt::from(10u32).pow(frac_part.len() as u32);
        let q = BigRational::new(num, den);
        if neg {
            -q
        } else {
            q
        }
    }

    /// The enclosure must sit inside a one-last-digit ball around the given
    /// truncated decimal reference.
    fn assert_near_decimal(i: &DyadicInterval, s: &str) {
        let q = rational_from_decimal(s);
        let digits = s.split_once('.').map_or(0, |(_, f)| f.len()) as u32;
        let ulp =
            BigRational::new(BigInt::one(), BigInt::from(10u32).pow(digits.saturating_sub(1)));
        assert!(
            i.lo().to_rational() >= &q - &ulp && i.hi().to_rational() <= &q + &ulp,
            "enclosure {i} not within one digit of {s}"
        );
    }

    #[test]
    fn pi_enclosure_matches_reference_digits() {
        let p = pi_enclosure(160);
        assert_near_decimal(&p, "3.141592653589793238462643383279502884197");
        assert!(p.width().to_rational() < pow2(-150));
    }

    #[test]
    fn cos_zero_is_exactly_one() {
        let c = cos_two_pi(0, 1, 64);
        assert!(c.width().is_zero());
        assert!(c.contains_rational(&rat_int(1)));
    }

    #[test]
    fn cos_half_turn_is_exactly_minus_one() {
        let c = cos_two_pi(1, 2, 64);
        assert!(c.width().is_zero());
        assert!(c.contains_rational(&rat_int(-1)));
    }

    #[test]
    fn cos_quarter_turn_is_exactly_zero() {
        let c = cos_two_pi(1, 4, 64);
        assert!(c.width().is_zero());
        assert!(c.contains_rational(&rat_int(0)));
    }

    #[test]
    fn cos_fifth_matches_golden_ratio_route() {
        // cos(2*pi/5) = (sqrt(5) - 1)/4, checked through interval sqrt
        let c = cos_two_pi(1, 5, 128);
        let s5 = DyadicInterval::from_int(5).sqrt(160).unwrap();
        let alt = s5.sub(&DyadicInterval::from_int(1), 160).scale_rational(&rat(1, 4), 160);
        assert!(c.intersect(&alt).is_some());
        assert_near_decimal(&c, "0.3090169943749474241022934171828190588602");
    }

    #[test]
    fn cos_seventeenth_matches_taylor_oracle() {
        // reference digits from an independent high-precision evaluation
        let c = cos_two_pi(1, 17, 128);
        assert_near_decimal(&c, "0.9324722294043558045731158918215633862626");
        assert!(c.width().to_rational() <= pow2(-127));
    }

    #[test]
    fn cosine_symmetry_and_range() {
        for n in [7u64, 9, 13, 17, 31] {
            for k in 1..n {
                let a = cos_two_pi(k, n, 80);
                let b = cos_two_pi(n - k, n, 80);
                assert!(a.intersect(&b).is_some(), "symmetry failed at {k}/{n}");
                assert!(a.lo().to_rational() >= rat_int(-1));
                assert!(a.hi().to_rational() <= rat_int(1));
            }
        }
    }

    #[test]
    fn refinement_is_nested() {
        for (k, n) in [(1u64, 7u64), (3, 17), (5, 13), (100, 257)] {
            let coarse = cos_two_pi(k, n, 48);
            let mid = cos_two_pi(k, n, 96);
            let fine = cos_two_pi(k, n, 192);
            assert!(coarse.contains(&mid), "not nested at {k}/{n}");
            assert!(mid.contains(&fine), "not nested at {k}/{n}");
        }
    }

    #[test]
    fn width_meets_contract() {
        for prec in [32u32, 64, 128, 200] {
            let c = cos_two_pi(5, 17, prec);
            assert!(c.width().to_rational() <= pow2(1 - prec as i64));
        }
    }

    #[test]
    fn sine_values() {
        let s = sin_two_pi(1, 4, 64);
        assert!(s.width().is_zero());
        assert!(s.contains_rational(&rat_int(1)));
        let s5 = sin_two_pi(1, 5, 128);
        assert_near_decimal(&s5, "0.9510565162951535721164393333793821434057");
    }

    #[test]
    fn cos_table_shares_values() {
        let table = CosTable::build(17, 1..17, 96);
        for k in 1..17u64 {
            assert!(table.get(k).intersect(&cos_two_pi(k, 17, 96)).is_some());
        }
        let all: Vec<u64> = (1..17).collect();
        let s = table.sum_cos(&all);
        // sum of all nontrivial 17th roots of unity has real part -1
        assert!(s.contains_rational(&rat_int(-1)));
    }
}
