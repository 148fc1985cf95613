//! Nested square-root expression trees over the rationals.
//!
//! Expressions are immutable and share subtrees through `Rc`, so the deep
//! synthesis outputs (whose fully expanded trees grow multiplicatively per
//! period level) stay compact in memory and evaluate in time proportional to
//! the number of distinct nodes. Evaluation is rigorous interval arithmetic
//! with an adaptive working precision; `simplify` performs conservative,
//! value-preserving rewrites only.

mod serialize;

pub use serialize::{parse_sexpr, Format, ParseError};

use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use num_traits::{Signed, Zero};

use crate::dyadic::DyadicInterval;
use crate::rational::{pow2, sqrt_exact, BigRational};

/// Errors surfaced by interval evaluation of an expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalError {
    /// A radicand is provably negative (its refined upper bound is < 0).
    SqrtOfNegative,
    /// The width target is unreachable within the working-precision cap
    /// (for example a radicand that is exactly zero but not syntactically so).
    PrecisionCapExceeded,
    /// A denominator is zero or could not be bounded away from zero.
    DivByZeroInterval,
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::SqrtOfNegative => write!(f, "square root of a negative value"),
            EvalError::PrecisionCapExceeded => write!(f, "precision cap exceeded"),
            EvalError::DivByZeroInterval => write!(f, "division by zero"),
        }
    }
}

impl std::error::Error for EvalError {}

#[derive(Debug, PartialEq)]
pub(crate) enum Node {
    Rational(BigRational),
    Add(RadicalExpr, RadicalExpr),
    Sub(RadicalExpr, RadicalExpr),
    Mul(RadicalExpr, RadicalExpr),
    Div(RadicalExpr, RadicalExpr),
    Sqrt(RadicalExpr),
}

/// An expression built from rationals by +, -, *, / and square roots.
#[derive(Debug, Clone)]
pub struct RadicalExpr(pub(crate) Rc<Node>);

impl PartialEq for RadicalExpr {
    fn eq(&self, other: &Self) -> bool {
        Rc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for RadicalExpr {}

impl RadicalExpr {
    pub fn rational(q: BigRational) -> Self {
        RadicalExpr(Rc::new(Node::Rational(q)))
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(crate::rational::rat_int(n))
    }

    pub fn add(&self, other: &Self) -> Self {
        RadicalExpr(Rc::new(Node::Add(self.clone(), other.clone())))
    }

    pub fn sub(&self, other: &Self) -> Self {
        RadicalExpr(Rc::new(Node::Sub(self.clone(), other.clone())))
    }

    pub fn mul(&self, other: &Self) -> Self {
        RadicalExpr(Rc::new(Node::Mul(self.clone(), other.clone())))
    }

    pub fn div(&self, other: &Self) -> Self {
        RadicalExpr(Rc::new(Node::Div(self.clone(), other.clone())))
    }

    pub fn sqrt(&self) -> Self {
        RadicalExpr(Rc::new(Node::Sqrt(self.clone())))
    }

    /// The rational value, for leaf nodes.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match &*self.0 {
            Node::Rational(q) => Some(q),
            _ => None,
        }
    }

    /// Balanced sum of a nonempty list, keeping DAG paths logarithmic.
    pub fn balanced_sum(mut terms: Vec<RadicalExpr>) -> RadicalExpr {
        assert!(!terms.is_empty(), "balanced_sum of empty list");
        while terms.len() > 1 {
            let mut next = Vec::with_capacity(terms.len() / 2 + 1);
            let mut it = terms.into_iter();
            while let Some(a) = it.next() {
                match it.next() {
                    Some(b) => next.push(a.add(&b)),
                    None => next.push(a),
                }
            }
            terms = next;
        }
        terms.pop().unwrap()
    }

    /// Number of distinct nodes in the shared representation.
    pub fn node_count(&self) -> usize {
        fn walk(e: &RadicalExpr, seen: &mut HashMap<*const Node, ()>) {
            let ptr = Rc::as_ptr(&e.0);
            if seen.insert(ptr, ()).is_some() {
                return;
            }
            match &*e.0 {
                Node::Rational(_) => {}
                Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) => {
                    walk(a, seen);
                    walk(b, seen);
                }
                Node::Sqrt(a) => walk(a, seen),
            }
        }
        let mut seen = HashMap::new();
        walk(self, &mut seen);
        seen.len()
    }

    /// Size of the fully expanded tree (saturating).
    pub fn tree_size(&self) -> u128 {
        fn walk(e: &RadicalExpr, memo: &mut HashMap<*const Node, u128>) -> u128 {
            let ptr = Rc::as_ptr(&e.0);
            if let Some(&v) = memo.get(&ptr) {
                return v;
            }
            let v = match &*e.0 {
                Node::Rational(_) => 1,
                Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) => {
                    walk(a, memo).saturating_add(walk(b, memo)).saturating_add(1)
                }
                Node::Sqrt(a) => walk(a, memo).saturating_add(1),
            };
            memo.insert(ptr, v);
            v
        }
        walk(self, &mut HashMap::new())
    }

    /// Maximum nesting depth of square roots.
    pub fn radical_depth(&self) -> u32 {
        fn walk(e: &RadicalExpr, memo: &mut HashMap<*const Node, u32>) -> u32 {
            let ptr = Rc::as_ptr(&e.0);
            if let Some(&v) = memo.get(&ptr) {
                return v;
            }
            let v = match &*e.0 {
                Node::Rational(_) => 0,
                Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) => {
                    walk(a, memo).max(walk(b, memo))
                }
                Node::Sqrt(a) => walk(a, memo) + 1,
            };
            memo.insert(ptr, v);
            v
        }
        walk(self, &mut HashMap::new())
    }

    /// Rigorous enclosure of the expression's value.
    ///
    /// The working precision starts at 64 bits and doubles until the result
    /// width is at most 2^(1-prec) * max(1, |value|), so results for larger
    /// `prec` are nested inside results for smaller ones.
    pub fn eval_interval(&self, prec: u32) -> Result<DyadicInterval, EvalError> {
        let mut ev = Evaluator::new(64);
        loop {
            match ev.eval(self) {
                Ok(i) => {
                    if width_meets_target(&i, prec) {
                        return Ok(i);
                    }
                    ev.double_working_precision()?;
                }
                Err(EvalSignal::Hard(e)) => return Err(e),
                Err(EvalSignal::Refine) => ev.double_working_precision()?,
            }
        }
    }

    /// Constant-fold and remove arithmetic units; the value (and any
    /// evaluation error) is preserved.
    pub fn simplify(&self) -> RadicalExpr {
        let mut memo: HashMap<*const Node, RadicalExpr> = HashMap::new();
        let mut cur = simplify_rec(self, &mut memo);
        // further passes pick up patterns exposed by the first (for example
        // div-of-div collapsing after constant folding); simplify_rec keeps
        // node identity when nothing changes, so pointer equality detects
        // the fixpoint
        for _ in 0..2 {
            let mut memo = HashMap::new();
            let next = simplify_rec(&cur, &mut memo);
            if Rc::ptr_eq(&next.0, &cur.0) {
                break;
            }
            cur = next;
        }
        cur
    }
}

fn width_meets_target(i: &DyadicInterval, prec: u32) -> bool {
    let width = i.width().to_rational();
    let mag = i.mag_bound().to_rational();
    let unit = if mag < crate::rational::rat_int(1) { crate::rational::rat_int(1) } else { mag };
    width <= pow2(1 - prec as i64) * unit
}

/// Hard failures versus "raise the working precision and retry".
pub(crate) enum EvalSignal {
    Hard(EvalError),
    Refine,
}

/// Working-precision cap for adaptive refinement.
const PRECISION_CAP: u32 = 1 << 16;

/// Interval evaluator with a per-working-precision memo over shared nodes.
/// Holding the `RadicalExpr` clones in the memo pins the node addresses.
pub(crate) struct Evaluator {
    w: u32,
    cache: HashMap<*const Node, (RadicalExpr, Result<DyadicInterval, EvalSignalKind>)>,
}

#[derive(Clone, Copy)]
enum EvalSignalKind {
    SqrtOfNegative,
    DivByZero,
    Refine,
}

impl Evaluator {
    pub fn new(w: u32) -> Self {
        Evaluator { w, cache: HashMap::new() }
    }

    pub fn working_precision(&self) -> u32 {
        self.w
    }

    pub fn double_working_precision(&mut self) -> Result<(), EvalError> {
        if self.w >= PRECISION_CAP {
            return Err(EvalError::PrecisionCapExceeded);
        }
        self.w *= 2;
        self.cache.clear();
        Ok(())
    }

    pub fn eval(&mut self, e: &RadicalExpr) -> Result<DyadicInterval, EvalSignal> {
        match self.eval_node(e) {
            Ok(i) => Ok(i),
            Err(EvalSignalKind::SqrtOfNegative) => Err(EvalSignal::Hard(EvalError::SqrtOfNegative)),
            Err(EvalSignalKind::DivByZero) => Err(EvalSignal::Hard(EvalError::DivByZeroInterval)),
            Err(EvalSignalKind::Refine) => Err(EvalSignal::Refine),
        }
    }

    fn eval_node(&mut self, e: &RadicalExpr) -> Result<DyadicInterval, EvalSignalKind> {
        let ptr = Rc::as_ptr(&e.0);
        if let Some((_, cached)) = self.cache.get(&ptr) {
            return cached.clone();
        }
        let w = self.w;
        let result = match &*e.0 {
            Node::Rational(q) => Ok(DyadicInterval::from_rational(q, w)),
            Node::Add(a, b) => binop(self.eval_node(a), self.eval_node(b), |x, y| x.add(&y, w)),
            Node::Sub(a, b) => binop(self.eval_node(a), self.eval_node(b), |x, y| x.sub(&y, w)),
            Node::Mul(a, b) => binop(self.eval_node(a), self.eval_node(b), |x, y| x.mul(&y, w)),
            Node::Div(a, b) => match (self.eval_node(a), self.eval_node(b)) {
                (Ok(x), Ok(y)) => {
                    if y.contains_zero() {
                        if y.width().is_zero() {
                            Err(EvalSignalKind::DivByZero)
                        } else {
                            Err(EvalSignalKind::Refine)
                        }
                    } else {
                        Ok(x.div(&y, w).expect("zero excluded"))
                    }
                }
                (Err(s), _) | (_, Err(s)) => Err(s),
            },
            Node::Sqrt(a) => match self.eval_node(a) {
                Ok(r) => {
                    if r.is_strictly_negative() {
                        Err(EvalSignalKind::SqrtOfNegative)
                    } else if r.lo().is_negative() {
                        Err(EvalSignalKind::Refine)
                    } else {
                        Ok(r.sqrt(w).expect("nonnegative"))
                    }
                }
                Err(s) => Err(s),
            },
        };
        self.cache.insert(ptr, (e.clone(), result.clone()));
        result
    }
}

fn binop(
    a: Result<DyadicInterval, EvalSignalKind>,
    b: Result<DyadicInterval, EvalSignalKind>,
    f: impl FnOnce(DyadicInterval, DyadicInterval) -> DyadicInterval,
) -> Result<DyadicInterval, EvalSignalKind> {
    match (a, b) {
        (Ok(x), Ok(y)) => Ok(f(x, y)),
        (Err(s), _) | (_, Err(s)) => Err(s),
    }
}

fn same(a: &RadicalExpr, b: &RadicalExpr) -> bool {
    Rc::ptr_eq(&a.0, &b.0)
}

fn simplify_rec(e: &RadicalExpr, memo: &mut HashMap<*const Node, RadicalExpr>) -> RadicalExpr {
    let ptr = Rc::as_ptr(&e.0);
    if let Some(v) = memo.get(&ptr) {
        return v.clone();
    }
    // keep the original node whenever no rewrite fires, so sharing survives
    // and repeated simplification is cheap
    let out = match &*e.0 {
        Node::Rational(_) => e.clone(),
        Node::Add(a0, b0) => {
            let a = simplify_rec(a0, memo);
            let b = simplify_rec(b0, memo);
            match (a.as_rational(), b.as_rational()) {
                (Some(x), Some(y)) => RadicalExpr::rational(x + y),
                (Some(x), None) if x.is_zero() => b,
                (None, Some(y)) if y.is_zero() => a,
                _ if same(&a, a0) && same(&b, b0) => e.clone(),
                _ => a.add(&b),
            }
        }
        Node::Sub(a0, b0) => {
            let a = simplify_rec(a0, memo);
            let b = simplify_rec(b0, memo);
            match (a.as_rational(), b.as_rational()) {
                (Some(x), Some(y)) => RadicalExpr::rational(x - y),
                (None, Some(y)) if y.is_zero() => a,
                _ if same(&a, a0) && same(&b, b0) => e.clone(),
                _ => a.sub(&b),
            }
        }
        Node::Mul(a0, b0) => {
            let a = simplify_rec(a0, memo);
            let b = simplify_rec(b0, memo);
            match (a.as_rational(), b.as_rational()) {
                (Some(x), Some(y)) => RadicalExpr::rational(x * y),
                (Some(x), None) if x.is_one() => b,
                (None, Some(y)) if y.is_one() => a,
                (Some(x), None) if x.is_zero() => RadicalExpr::integer(0),
                (None, Some(y)) if y.is_zero() => RadicalExpr::integer(0),
                _ if same(&a, a0) && same(&b, b0) => e.clone(),
                _ => a.mul(&b),
            }
        }
        Node::Div(a0, b0) => {
            let a = simplify_rec(a0, memo);
            let b = simplify_rec(b0, memo);
            match (a.as_rational(), b.as_rational()) {
                (Some(x), Some(y)) if !y.is_zero() => RadicalExpr::rational(x / y),
                (None, Some(y)) if y.is_one() => a,
                (None, Some(y)) if !y.is_zero() => {
                    // (u / c) / d with rational c, d collapses to u / (c d)
                    if let Node::Div(u, c) = &*a.0 {
                        if let Some(cq) = c.as_rational() {
                            if !cq.is_zero() {
                                return insert_memo(
                                    memo,
                                    ptr,
                                    u.div(&RadicalExpr::rational(cq * y)),
                                );
                            }
                        }
                    }
                    if same(&a, a0) && same(&b, b0) {
                        e.clone()
                    } else {
                        a.div(&b)
                    }
                }
                _ if same(&a, a0) && same(&b, b0) => e.clone(),
                _ => a.div(&b),
            }
        }
        Node::Sqrt(a0) => {
            let a = simplify_rec(a0, memo);
            match a.as_rational() {
                Some(q) if !q.is_negative() => match sqrt_exact(q) {
                    Some(r) => RadicalExpr::rational(r),
                    None if same(&a, a0) => e.clone(),
                    None => a.sqrt(),
                },
                _ if same(&a, a0) => e.clone(),
                _ => a.sqrt(),
            }
        }
    };
    insert_memo(memo, ptr, out)
}

fn insert_memo(
    memo: &mut HashMap<*const Node, RadicalExpr>,
    ptr: *const Node,
    v: RadicalExpr,
) -> RadicalExpr {
    memo.insert(ptr, v.clone());
    v
}

trait IsOne {
    fn is_one(&self) -> bool;
}

impl IsOne for BigRational {
    fn is_one(&self) -> bool {
        *self == crate::rational::rat_int(1)
    }
}

impl fmt::Display for RadicalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.serialize(Format::Text))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn leaf(n: i64) -> RadicalExpr {
        RadicalExpr::integer(n)
    }

    #[test]
    fn leaf_evaluates_exactly() {
        let e = RadicalExpr::rational(rat(3, 4));
        let i = e.eval_interval(64).unwrap();
        assert!(i.width().is_zero());
        assert!(i.contains_rational(&rat(3, 4)));
    }

    #[test]
    fn golden_ratio_expression() {
        // (-1 + sqrt(5))/4 = cos(2*pi/5)
        let e = leaf(-1).add(&leaf(5).sqrt()).div(&leaf(4));
        let i = e.eval_interval(128).unwrap();
        let c = crate::cosine::cos_two_pi(1, 5, 128);
        assert!(i.intersect(&c).is_some());
    }

    #[test]
    fn sqrt_of_negative_leaf() {
        let e = leaf(-1).sqrt();
        assert_eq!(e.eval_interval(64), Err(EvalError::SqrtOfNegative));
    }

    #[test]
    fn division_by_exact_zero() {
        let e = leaf(1).div(&leaf(0));
        assert_eq!(e.eval_interval(64), Err(EvalError::DivByZeroInterval));
    }

    #[test]
    fn hidden_zero_radicand_hits_the_cap() {
        // sqrt(2)*sqrt(2) - 2 is exactly zero but never syntactically so
        let s = leaf(2).sqrt();
        let z = s.mul(&s).sub(&leaf(2));
        assert_eq!(z.sqrt().eval_interval(64), Err(EvalError::PrecisionCapExceeded));
    }

    #[test]
    fn straddling_radicand_refines_through() {
        // sqrt(sqrt(2) - 1.414) is positive but tiny; needs refinement
        let e = leaf(2).sqrt().sub(&RadicalExpr::rational(rat(1414, 1000))).sqrt();
        let i = e.eval_interval(64).unwrap();
        assert!(i.lo().to_rational() >= rat_int(0));
        assert!(i.is_strictly_positive() || i.contains_zero());
    }

    #[test]
    fn eval_monotone_in_prec() {
        let e = leaf(2).sqrt().add(&leaf(3).sqrt()).div(&leaf(7).sqrt());
        let coarse = e.eval_interval(40).unwrap();
        let mid = e.eval_interval(80).unwrap();
        let fine = e.eval_interval(160).unwrap();
        assert!(coarse.contains(&mid));
        assert!(mid.contains(&fine));
    }

    #[test]
    fn simplify_folds_constants_and_units() {
        assert_eq!(leaf(4).sqrt().simplify(), leaf(2));
        let x = leaf(7).sqrt();
        assert_eq!(leaf(1).mul(&x).simplify(), x);
        assert_eq!(x.add(&leaf(0)).simplify(), x);
        assert_eq!(x.div(&leaf(1)).simplify(), x);
        assert_eq!(leaf(3).add(&leaf(4)).simplify(), leaf(7));
        // nested rational division collapses
        let e = x.div(&leaf(2)).div(&leaf(2));
        assert_eq!(e.simplify(), x.div(&leaf(4)));
        // sqrt of a rational square of a rational
        let q = RadicalExpr::rational(rat(9, 16));
        assert_eq!(q.sqrt().simplify(), RadicalExpr::rational(rat(3, 4)));
    }

    #[test]
    fn simplify_preserves_value() {
        let e = leaf(2).sqrt().add(&leaf(4).sqrt()).mul(&leaf(1)).div(&leaf(2)).sub(&leaf(0));
        let s = e.simplify();
        let a = e.eval_interval(128).unwrap();
        let b = s.eval_interval(128).unwrap();
        assert!(a.intersect(&b).is_some());
    }

    #[test]
    fn balanced_sum_matches_sequential_sum() {
        let terms: Vec<RadicalExpr> = (1..=9).map(leaf).collect();
        let bal = RadicalExpr::balanced_sum(terms);
        let i = bal.eval_interval(64).unwrap();
        assert!(i.contains_rational(&rat_int(45)));
    }

    #[test]
    fn structural_equality_distinguishes_shapes() {
        let a = leaf(1).add(&leaf(2));
        let b = leaf(1).add(&leaf(2));
        let c = leaf(2).add(&leaf(1));
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn dag_statistics() {
        let s = leaf(2).sqrt();
        let e = s.mul(&s).add(&s);
        assert_eq!(e.node_count(), 4); // 2, sqrt, mul, add
        assert_eq!(e.tree_size(), 8); // expanded tree repeats the sqrt chain
        assert_eq!(e.radical_depth(), 1);
        assert_eq!(s.sqrt().radical_depth(), 2);
    }
}
