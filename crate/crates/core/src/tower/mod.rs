//! Exact arithmetic in a chain of quadratic extensions of Q.
//!
//! A [`TowerContext`] holds radicands a_0, a_1, ..., where a_k is an element
//! over the earlier radicands only; adjoining sqrt(a_k) is purely formal
//! (the ring Q_k[t]/(t^2 - a_k)), so no "sqrt(a_k) is really new" test is
//! made. Identities verified here stay true under the evaluation that sends
//! each generator to the nonnegative real root; if a radicand happens to be
//! a square the ring has zero divisors and inversion reports that instead of
//! silently misbehaving.
//!
//! Elements use a sparse nested-pair representation: a rational, or
//! alpha + beta * sqrt(a_k) with beta nonzero and alpha, beta built from
//! radicands of index below k. Equality is structural equality of that
//! canonical form.

mod embed;

pub use embed::{embed_synthesis, EmbedReport, Embedding};

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use num_traits::Zero;

use crate::dyadic::{Dyadic, DyadicInterval};
use crate::rational::{pow2, sqrt_exact, BigRational};

/// Errors from tower arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TowerError {
    /// Elements from different contexts were combined.
    ContextMismatch,
    /// Inversion met a nonzero element of zero norm (a radicand is a square
    /// in its base ring, so the formal ring has zero divisors).
    ZeroDivisor,
    /// Inversion of zero.
    DivByZero,
    /// A level index outside the context depth.
    BadLevel,
    /// A radicand that is provably negative cannot be adjoined to a real
    /// tower.
    NegativeRadicand,
    /// The synthesis embedding could not reconstruct or verify an element.
    VerificationFailed,
}

impl fmt::Display for TowerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TowerError::ContextMismatch => write!(f, "elements belong to different towers"),
            TowerError::ZeroDivisor => write!(f, "nonzero element with zero norm"),
            TowerError::DivByZero => write!(f, "division by zero"),
            TowerError::BadLevel => write!(f, "level out of range"),
            TowerError::NegativeRadicand => write!(f, "radicand is provably negative"),
            TowerError::VerificationFailed => write!(f, "tower verification failed"),
        }
    }
}

impl std::error::Error for TowerError {}

/// Canonical coordinate tree: either a rational, or alpha + beta*sqrt(a_k)
/// with beta nonzero and alpha, beta over radicands of index < k.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Coord {
    Rat(BigRational),
    Ext(usize, Box<Coord>, Box<Coord>),
}

impl Coord {
    fn zero() -> Coord {
        Coord::Rat(BigRational::zero())
    }

    fn is_zero(&self) -> bool {
        matches!(self, Coord::Rat(q) if q.is_zero())
    }

    /// Index of the highest radicand used, if any.
    fn top(&self) -> Option<usize> {
        match self {
            Coord::Rat(_) => None,
            Coord::Ext(k, ..) => Some(*k),
        }
    }

    /// Treat as alpha + beta*sqrt(a_k) for a given k at or above the top.
    fn split(&self, k: usize) -> (Coord, Coord) {
        match self {
            Coord::Ext(j, a, b) if *j == k => ((**a).clone(), (**b).clone()),
            _ => {
                debug_assert!(self.top().is_none_or(|t| t < k));
                (self.clone(), Coord::zero())
            }
        }
    }
}

/// Construct alpha + beta*sqrt(a_k), collapsing when beta is zero.
fn ext(k: usize, alpha: Coord, beta: Coord) -> Coord {
    debug_assert!(alpha.top().is_none_or(|t| t < k));
    debug_assert!(beta.top().is_none_or(|t| t < k));
    if beta.is_zero() {
        alpha
    } else {
        Coord::Ext(k, Box::new(alpha), Box::new(beta))
    }
}

fn coord_add(x: &Coord, y: &Coord) -> Coord {
    match (x, y) {
        (Coord::Rat(a), Coord::Rat(b)) => Coord::Rat(a + b),
        _ => {
            let k = x.top().max(y.top()).expect("not both rational");
            let (xa, xb) = x.split(k);
            let (ya, yb) = y.split(k);
            ext(k, coord_add(&xa, &ya), coord_add(&xb, &yb))
        }
    }
}

fn coord_neg(x: &Coord) -> Coord {
    match x {
        Coord::Rat(q) => Coord::Rat(-q),
        Coord::Ext(k, a, b) => Coord::Ext(*k, Box::new(coord_neg(a)), Box::new(coord_neg(b))),
    }
}

fn coord_sub(x: &Coord, y: &Coord) -> Coord {
    coord_add(x, &coord_neg(y))
}

/// A chain Q = Q_0 < Q_1 < ... with Q_(k+1) = Q_k[sqrt(a_k)].
#[derive(Debug)]
pub struct TowerContext {
    id: u64,
    radicands: Vec<Coord>,
}

/// An element of some level of a [`TowerContext`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerElement {
    ctx: u64,
    coord: Coord,
}

impl TowerElement {
    /// Number of extension levels the representation actually uses.
    pub fn level(&self) -> usize {
        self.coord.top().map_or(0, |t| t + 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coord.is_zero()
    }

    /// The rational value, for level-0 elements.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.coord {
            Coord::Rat(q) => Some(q),
            _ => None,
        }
    }
}

static NEXT_CONTEXT_ID: AtomicU64 = AtomicU64::new(1);

impl TowerContext {
    pub fn new() -> Self {
        TowerContext { id: NEXT_CONTEXT_ID.fetch_add(1, Ordering::Relaxed), radicands: Vec::new() }
    }

    /// Number of adjoined radicands.
    pub fn depth(&self) -> usize {
        self.radicands.len()
    }

    fn guard(&self, x: &TowerElement) -> Result<(), TowerError> {
        if x.ctx != self.id {
            Err(TowerError::ContextMismatch)
        } else {
            Ok(())
        }
    }

    fn wrap(&self, coord: Coord) -> TowerElement {
        TowerElement { ctx: self.id, coord }
    }

    pub fn rational(&self, q: BigRational) -> TowerElement {
        self.wrap(Coord::Rat(q))
    }

    pub fn integer(&self, n: i64) -> TowerElement {
        self.rational(crate::rational::rat_int(n))
    }

    /// sqrt(a_k) as an element.
    pub fn sqrt_gen(&self, k: usize) -> Result<TowerElement, TowerError> {
        if k >= self.depth() {
            return Err(TowerError::BadLevel);
        }
        Ok(self.wrap(ext(k, Coord::zero(), Coord::Rat(BigRational::from_integer(1.into())))))
    }

    /// The k-th radicand as an element.
    pub fn radicand(&self, k: usize) -> Result<TowerElement, TowerError> {
        self.radicands.get(k).map(|c| self.wrap(c.clone())).ok_or(TowerError::BadLevel)
    }

    /// Adjoin sqrt of the given element (which must not be provably
    /// negative). Returns the new radicand index.
    pub fn extend(&mut self, radicand: &TowerElement) -> Result<usize, TowerError> {
        self.guard(radicand)?;
        // refine the enclosure a few times before giving up on the sign
        let mut w = 64;
        loop {
            let enc = self.enclosure_at(&radicand.coord, w);
            if enc.is_strictly_negative() {
                return Err(TowerError::NegativeRadicand);
            }
            if !enc.lo().is_negative() || w >= 4096 {
                break;
            }
            w *= 2;
        }
        self.radicands.push(radicand.coord.clone());
        Ok(self.radicands.len() - 1)
    }

    pub fn add(&self, x: &TowerElement, y: &TowerElement) -> Result<TowerElement, TowerError> {
        self.guard(x)?;
        self.guard(y)?;
        Ok(self.wrap(coord_add(&x.coord, &y.coord)))
    }

    pub fn sub(&self, x: &TowerElement, y: &TowerElement) -> Result<TowerElement, TowerError> {
        self.guard(x)?;
        self.guard(y)?;
        Ok(self.wrap(coord_sub(&x.coord, &y.coord)))
    }

    pub fn neg(&self, x: &TowerElement) -> Result<TowerElement, TowerError> {
        self.guard(x)?;
        Ok(self.wrap(coord_neg(&x.coord)))
    }

    pub fn mul(&self, x: &TowerElement, y: &TowerElement) -> Result<TowerElement, TowerError> {
        self.guard(x)?;
        self.guard(y)?;
        Ok(self.wrap(self.coord_mul(&x.coord, &y.coord)))
    }

    pub fn scale(&self, x: &TowerElement, q: &BigRational) -> Result<TowerElement, TowerError> {
        self.guard(x)?;
        Ok(self.wrap(self.coord_mul(&x.coord, &Coord::Rat(q.clone()))))
    }

    fn coord_mul(&self, x: &Coord, y: &Coord) -> Coord {
        match (x, y) {
            (Coord::Rat(a), Coord::Rat(b)) => Coord::Rat(a * b),
            _ => {
                if x.is_zero() || y.is_zero() {
                    return Coord::zero();
                }
                let k = x.top().max(y.top()).expect("not both rational");
                let (xa, xb) = x.split(k);
                let (ya, yb) = y.split(k);
                // (xa + xb r)(ya + yb r) = xa ya + xb yb a_k + (xa yb + xb ya) r
                let a_k = &self.radicands[k];
                let alpha = coord_add(
                    &self.coord_mul(&xa, &ya),
                    &self.coord_mul(&self.coord_mul(&xb, &yb), a_k),
                );
                let beta = coord_add(&self.coord_mul(&xa, &yb), &self.coord_mul(&xb, &ya));
                ext(k, alpha, beta)
            }
        }
    }

    /// Exact inverse by iterated multiplication with the conjugate:
    /// 1/(alpha + beta sqrt a) = (alpha - beta sqrt a) / (alpha^2 - beta^2 a).
    pub fn inv(&self, x: &TowerElement) -> Result<TowerElement, TowerError> {
        self.guard(x)?;
        if x.is_zero() {
            return Err(TowerError::DivByZero);
        }
        Ok(self.wrap(self.coord_inv(&x.coord)?))
    }

    fn coord_inv(&self, x: &Coord) -> Result<Coord, TowerError> {
        match x {
            Coord::Rat(q) => {
                if q.is_zero() {
                    // only reachable through a zero norm one level up
                    Err(TowerError::ZeroDivisor)
                } else {
                    Ok(Coord::Rat(q.recip()))
                }
            }
            Coord::Ext(k, a, b) => {
                let a_k = &self.radicands[*k];
                let norm =
                    coord_sub(&self.coord_mul(a, a), &self.coord_mul(&self.coord_mul(b, b), a_k));
                if norm.is_zero() {
                    return Err(TowerError::ZeroDivisor);
                }
                let ninv = self.coord_inv(&norm)?;
                Ok(ext(*k, self.coord_mul(a, &ninv), coord_neg(&self.coord_mul(b, &ninv))))
            }
        }
    }

    pub fn div(&self, x: &TowerElement, y: &TowerElement) -> Result<TowerElement, TowerError> {
        let inv = self.inv(y)?;
        self.mul(x, &inv)
    }

    /// Negate the sqrt(a_k) coordinate, leaving deeper structure intact.
    pub fn conjugate(&self, x: &TowerElement, k: usize) -> Result<TowerElement, TowerError> {
        self.guard(x)?;
        if k >= self.depth() {
            return Err(TowerError::BadLevel);
        }
        fn go(c: &Coord, k: usize) -> Coord {
            match c {
                Coord::Rat(_) => c.clone(),
                Coord::Ext(j, a, b) => {
                    if *j == k {
                        // radicand indices below k cannot occur inside a or b
                        Coord::Ext(*j, a.clone(), Box::new(coord_neg(b)))
                    } else if *j > k {
                        Coord::Ext(*j, Box::new(go(a, k)), Box::new(go(b, k)))
                    } else {
                        c.clone()
                    }
                }
            }
        }
        Ok(self.wrap(go(&x.coord, k)))
    }

    /// True iff r^2 - S r + P = 0 exactly.
    pub fn verify_quadratic(
        &self,
        r: &TowerElement,
        s: &TowerElement,
        p: &TowerElement,
    ) -> Result<bool, TowerError> {
        let r2 = self.mul(r, r)?;
        let sr = self.mul(s, r)?;
        let res = self.add(&self.sub(&r2, &sr)?, p)?;
        Ok(res.is_zero())
    }

    /// Exact square root in the formal tower spanned by radicands
    /// 0..=`level`, if one exists there. The returned root's sign is
    /// unspecified; callers pick a sign numerically.
    pub fn sqrt_element(
        &self,
        x: &TowerElement,
        level: usize,
    ) -> Result<Option<TowerElement>, TowerError> {
        self.guard(x)?;
        if level >= self.depth() {
            return Err(TowerError::BadLevel);
        }
        Ok(self.sqrt_in(&x.coord, level as isize).map(|c| self.wrap(c)))
    }

    /// Square root of x within the span of radicands 0..=level (level = -1
    /// means the rationals).
    fn sqrt_in(&self, x: &Coord, level: isize) -> Option<Coord> {
        if level < 0 {
            return match x {
                Coord::Rat(q) => sqrt_exact(q).map(Coord::Rat),
                _ => None,
            };
        }
        let k = level as usize;
        let (c, d) = x.split(k);
        if d.is_zero() {
            // try sqrt in the subfield, then the pure sqrt(a_k) multiple:
            // x = (v sqrt a_k)^2 needs v = sqrt(x / a_k)
            if let Some(r) = self.sqrt_in(&c, level - 1) {
                return Some(r);
            }
            let a_k = &self.radicands[k];
            if let Ok(ainv) = self.coord_inv(a_k) {
                let q = self.coord_mul(&c, &ainv);
                if let Some(v) = self.sqrt_in(&q, level - 1) {
                    let cand = ext(k, Coord::zero(), v);
                    if self.coord_mul(&cand, &cand) == *x {
                        return Some(cand);
                    }
                }
            }
            return None;
        }
        // x = c + d sqrt(a_k), d != 0. A root u + v sqrt(a_k) needs
        // u^2 + v^2 a_k = c and 2uv = d, so u^2 solves
        // t^2 - c t + a_k d^2 / 4 = 0, whose discriminant is the norm
        // c^2 - a_k d^2.
        let a_k = &self.radicands[k];
        let norm =
            coord_sub(&self.coord_mul(&c, &c), &self.coord_mul(&self.coord_mul(&d, &d), a_k));
        let n = self.sqrt_in(&norm, level - 1)?;
        let half = Coord::Rat(crate::rational::rat(1, 2));
        for n_signed in [n.clone(), coord_neg(&n)] {
            let u2 = self.coord_mul(&coord_add(&c, &n_signed), &half);
            if let Some(u) = self.sqrt_in(&u2, level - 1) {
                if !u.is_zero() {
                    let two_u = coord_add(&u, &u);
                    if let Ok(inv2u) = self.coord_inv(&two_u) {
                        let v = self.coord_mul(&d, &inv2u);
                        let cand = ext(k, u, v);
                        if self.coord_mul(&cand, &cand) == *x {
                            return Some(cand);
                        }
                    }
                }
            }
        }
        None
    }

    /// Rigorous enclosure of an element under the evaluation sending every
    /// generator to the nonnegative real square root of its radicand.
    pub fn eval_interval(&self, x: &TowerElement, prec: u32) -> Result<DyadicInterval, TowerError> {
        self.guard(x)?;
        let mut w = 64u32.max(prec);
        loop {
            let enc = self.enclosure_at(&x.coord, w);
            let width = enc.width().to_rational();
            let mag = enc.mag_bound().to_rational();
            let unit =
                if mag < crate::rational::rat_int(1) { crate::rational::rat_int(1) } else { mag };
            if width <= pow2(1 - prec as i64) * unit {
                return Ok(enc);
            }
            w = w.checked_mul(2).ok_or(TowerError::VerificationFailed)?;
            if w > (1 << 16) {
                return Ok(enc);
            }
        }
    }

    fn enclosure_at(&self, x: &Coord, w: u32) -> DyadicInterval {
        // generator enclosures in dependency order
        let mut gens: Vec<DyadicInterval> = Vec::with_capacity(self.radicands.len());
        for k in 0..self.radicands.len() {
            let r = eval_coord(&self.radicands[k], &gens, w);
            // clamp tiny negative rounding slop; real-tower radicands are >= 0
            let r = if r.lo().is_negative() {
                DyadicInterval::new(Dyadic::zero(), r.hi().clone())
            } else {
                r
            };
            gens.push(r.sqrt(w).expect("clamped nonnegative"));
        }
        eval_coord(x, &gens, w)
    }
}

impl Default for TowerContext {
    fn default() -> Self {
        Self::new()
    }
}

fn eval_coord(x: &Coord, gens: &[DyadicInterval], w: u32) -> DyadicInterval {
    match x {
        Coord::Rat(q) => DyadicInterval::from_rational(q, w),
        Coord::Ext(k, a, b) => {
            let ea = eval_coord(a, gens, w);
            let eb = eval_coord(b, gens, w);
            ea.add(&eb.mul(&gens[*k], w), w)
        }
    }
}

/// Largest numerator/denominator bit size over all rational coordinates.
pub(crate) fn coefficient_bits(x: &TowerElement) -> u64 {
    fn go(c: &Coord) -> u64 {
        match c {
            Coord::Rat(q) => q.numer().magnitude().bits().max(q.denom().bits()),
            Coord::Ext(_, a, b) => go(a).max(go(b)),
        }
    }
    go(&x.coord)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn ctx_with(radicands: &[i64]) -> TowerContext {
        let mut ctx = TowerContext::new();
        for &a in radicands {
            let r = ctx.integer(a);
            ctx.extend(&r).unwrap();
        }
        ctx
    }

    #[test]
    fn conjugate_pair_sum_and_product() {
        let ctx = ctx_with(&[2]);
        let one = ctx.integer(1);
        let r = ctx.sqrt_gen(0).unwrap();
        let x = ctx.add(&one, &r).unwrap(); // 1 + sqrt 2
        let y = ctx.sub(&one, &r).unwrap(); // 1 - sqrt 2
        assert_eq!(ctx.add(&x, &y).unwrap(), ctx.integer(2));
        assert_eq!(ctx.mul(&x, &y).unwrap(), ctx.integer(-1));
    }

    #[test]
    fn lifting_rationals() {
        let ctx = ctx_with(&[2]);
        let three = ctx.integer(3);
        let r = ctx.sqrt_gen(0).unwrap();
        let s = ctx.add(&three, &r).unwrap();
        assert_eq!(s.level(), 1);
        assert_eq!(ctx.sub(&s, &r).unwrap(), three);
    }

    #[test]
    fn inverse_of_one_plus_sqrt2() {
        let ctx = ctx_with(&[2]);
        let x = ctx.add(&ctx.integer(1), &ctx.sqrt_gen(0).unwrap()).unwrap();
        let inv = ctx.inv(&x).unwrap();
        let expected = ctx.add(&ctx.integer(-1), &ctx.sqrt_gen(0).unwrap()).unwrap();
        assert_eq!(inv, expected);
        assert_eq!(ctx.mul(&x, &inv).unwrap(), ctx.integer(1));
    }

    #[test]
    fn inverse_of_zero() {
        let ctx = ctx_with(&[2]);
        assert_eq!(ctx.inv(&ctx.integer(0)), Err(TowerError::DivByZero));
    }

    #[test]
    fn square_radicand_gives_zero_divisor() {
        // a_0 = 4 makes 2 + sqrt(a_0) a zero divisor
        let ctx = ctx_with(&[4]);
        let x = ctx.add(&ctx.integer(2), &ctx.sqrt_gen(0).unwrap()).unwrap();
        assert_eq!(ctx.inv(&x), Err(TowerError::ZeroDivisor));
    }

    #[test]
    fn negative_radicand_rejected() {
        let mut ctx = TowerContext::new();
        let m = ctx.integer(-3);
        assert_eq!(ctx.extend(&m), Err(TowerError::NegativeRadicand));
    }

    #[test]
    fn context_mismatch_detected() {
        let ctx1 = ctx_with(&[2]);
        let ctx2 = ctx_with(&[2]);
        let x = ctx1.integer(1);
        let y = ctx2.integer(1);
        assert_eq!(ctx1.add(&x, &y), Err(TowerError::ContextMismatch));
    }

    #[test]
    fn conjugation_laws() {
        let ctx = ctx_with(&[2, 3]);
        let r0 = ctx.sqrt_gen(0).unwrap();
        let r1 = ctx.sqrt_gen(1).unwrap();
        // z = (1 + sqrt2) + (2 - sqrt2) sqrt3
        let z = ctx
            .add(
                &ctx.add(&ctx.integer(1), &r0).unwrap(),
                &ctx.mul(&ctx.sub(&ctx.integer(2), &r0).unwrap(), &r1).unwrap(),
            )
            .unwrap();
        let w = ctx.sub(&ctx.mul(&r0, &r1).unwrap(), &ctx.integer(5)).unwrap();
        for k in 0..2 {
            // involution
            let zz = ctx.conjugate(&ctx.conjugate(&z, k).unwrap(), k).unwrap();
            assert_eq!(zz, z);
            // ring homomorphism
            let lhs = ctx.conjugate(&ctx.mul(&z, &w).unwrap(), k).unwrap();
            let rhs =
                ctx.mul(&ctx.conjugate(&z, k).unwrap(), &ctx.conjugate(&w, k).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
            let lhs = ctx.conjugate(&ctx.add(&z, &w).unwrap(), k).unwrap();
            let rhs =
                ctx.add(&ctx.conjugate(&z, k).unwrap(), &ctx.conjugate(&w, k).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
        // fixed exactly when the coordinate is absent
        let fixed = ctx.add(&ctx.integer(7), &r0).unwrap();
        assert_eq!(ctx.conjugate(&fixed, 1).unwrap(), fixed);
        assert_ne!(ctx.conjugate(&fixed, 0).unwrap(), fixed);
        assert_eq!(ctx.conjugate(&z, 5), Err(TowerError::BadLevel));
    }

    #[test]
    fn golden_ratio_quadratic() {
        // r = (-1 + sqrt 5)/2 satisfies t^2 + t - 1 = 0
        let ctx = ctx_with(&[5]);
        let r = ctx
            .scale(&ctx.add(&ctx.integer(-1), &ctx.sqrt_gen(0).unwrap()).unwrap(), &rat(1, 2))
            .unwrap();
        let s = ctx.integer(-1);
        let p = ctx.integer(-1);
        assert!(ctx.verify_quadratic(&r, &s, &p).unwrap());
        // and fails with a perturbed constant term
        assert!(!ctx.verify_quadratic(&r, &s, &ctx.integer(1)).unwrap());
        // degenerate zero case
        let z = ctx.integer(0);
        assert!(ctx.verify_quadratic(&z, &z, &z).unwrap());
    }

    #[test]
    fn enclosure_matches_reality() {
        let ctx = ctx_with(&[2, 3]);
        // sqrt2 * sqrt3 = sqrt6 = 2.449489742783178...
        let x = ctx.mul(&ctx.sqrt_gen(0).unwrap(), &ctx.sqrt_gen(1).unwrap()).unwrap();
        let enc = ctx.eval_interval(&x, 100).unwrap();
        let lo = rat_int(2_449_489_742_783_177) / rat_int(10).pow(15);
        let hi = rat_int(2_449_489_742_783_179) / rat_int(10).pow(15);
        assert!(enc.lo().to_rational() >= lo && enc.hi().to_rational() <= hi);
    }

    #[test]
    fn sqrt_extraction_in_tower() {
        // sqrt(3 + 2 sqrt2) = 1 + sqrt2
        let ctx = ctx_with(&[2]);
        let r = ctx.sqrt_gen(0).unwrap();
        let x = ctx.add(&ctx.integer(3), &ctx.add(&r, &r).unwrap()).unwrap();
        let y = ctx.sqrt_element(&x, 0).unwrap().expect("has a root");
        assert_eq!(ctx.mul(&y, &y).unwrap(), x);
        let expected = ctx.add(&ctx.integer(1), &r).unwrap();
        assert!(y == expected || y == ctx.neg(&expected).unwrap());
        // rational square under the radical
        let nine = ctx.integer(9);
        let y = ctx.sqrt_element(&nine, 0).unwrap().expect("rational root");
        assert_eq!(ctx.mul(&y, &y).unwrap(), nine);
        // pure multiple of the generator: sqrt(2) itself from x = 2
        let two = ctx.integer(2);
        let y = ctx.sqrt_element(&two, 0).unwrap().expect("generator root");
        assert_eq!(ctx.mul(&y, &y).unwrap(), two);
        // no root in this tower
        let three = ctx.integer(3);
        assert!(ctx.sqrt_element(&three, 0).unwrap().is_none());
    }

    #[test]
    fn field_laws_on_mixed_elements() {
        let ctx = ctx_with(&[2, 7]);
        let r0 = ctx.sqrt_gen(0).unwrap();
        let r1 = ctx.sqrt_gen(1).unwrap();
        let xs = [
            ctx.add(&ctx.integer(1), &r0).unwrap(),
            ctx.sub(&r1, &ctx.rational(rat(2, 3))).unwrap(),
            ctx.mul(&r0, &r1).unwrap(),
            ctx.rational(rat(-5, 2)),
        ];
        for a in &xs {
            for b in &xs {
                assert_eq!(ctx.mul(a, b).unwrap(), ctx.mul(b, a).unwrap());
                for c in &xs {
                    let l = ctx.mul(&ctx.mul(a, b).unwrap(), c).unwrap();
                    let r = ctx.mul(a, &ctx.mul(b, c).unwrap()).unwrap();
                    assert_eq!(l, r);
                    let l = ctx.mul(a, &ctx.add(b, c).unwrap()).unwrap();
                    let r = ctx.add(&ctx.mul(a, b).unwrap(), &ctx.mul(a, c).unwrap()).unwrap();
                    assert_eq!(l, r);
                }
            }
            if !a.is_zero() {
                let inv = ctx.inv(a).unwrap();
                assert_eq!(ctx.mul(a, &inv).unwrap(), ctx.integer(1));
            }
        }
    }
}
