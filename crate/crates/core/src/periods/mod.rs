//! Gaussian-period bisection trees for Fermat primes and the synthesis of
//! nested square-root expressions for cos(2*pi/p) and general constructible n.
//!
//! For p = 2^m + 1 prime with primitive root g, the node for a bit string w
//! of length k holds the sum of eps^(g^e) over the exponents e in one residue
//! class mod 2^k (class val(w), bits least-significant first). The root
//! (empty string) holds every nonzero residue and equals -1; the deepest
//! level kept, k = m - 1, holds the two-term real periods
//! eps^s + eps^(-s) = 2 cos(2*pi*s/p). Sibling nodes are the roots of a
//! quadratic whose linear coefficient is their parent and whose constant term
//! is an integer combination of parent-level periods, which is what makes the
//! whole tree solvable by square roots alone.

mod compose;
mod synth;

pub use compose::synthesize_cos;
pub use synth::{synthesize_full, synthesize_radical, Synthesis};

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::constructible::Verdict;
use crate::cosine::CosTable;
use crate::cyclotomic::{CycloElement, CycloError};
use crate::dyadic::DyadicInterval;
use crate::modular::{is_fermat_prime, primitive_root};
use crate::radical::{EvalError, RadicalExpr};

/// Errors from period-tree construction and synthesis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PeriodError {
    /// The prime is not one of 3, 5, 17, 257, 65537 (or not prime at all).
    NotFermatPrime,
    /// Sibling product requested at a leaf of the tree.
    NoChildren,
    /// cos(2*pi/n) was requested for a non-constructible n.
    NotConstructible(Box<Verdict>),
    /// Interval evaluation failed while refining (precision cap and the like).
    Eval(EvalError),
}

impl fmt::Display for PeriodError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PeriodError::NotFermatPrime => write!(f, "p must be a Fermat prime"),
            PeriodError::NoChildren => write!(f, "node has no children"),
            PeriodError::NotConstructible(v) => {
                write!(f, "regular {}-gon is not constructible", v.n)
            }
            PeriodError::Eval(e) => write!(f, "interval evaluation failed: {e}"),
        }
    }
}

impl std::error::Error for PeriodError {}

impl From<EvalError> for PeriodError {
    fn from(e: EvalError) -> Self {
        PeriodError::Eval(e)
    }
}

/// A node index in the period tree: a bit string of length `len` with value
/// `val` (bit j of `val` is the j-th index symbol, least significant first).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct BitString {
    len: u8,
    val: u32,
}

impl BitString {
    pub fn root() -> Self {
        BitString { len: 0, val: 0 }
    }

    pub fn new(len: u8, val: u32) -> Self {
        assert!(len <= 31 && (val as u64) < (1u64 << len), "bit string out of range");
        BitString { len, val }
    }

    pub fn len(&self) -> u8 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn val(&self) -> u32 {
        self.val
    }

    /// Append one index bit (the new most significant position).
    pub fn child(&self, bit: u8) -> BitString {
        debug_assert!(bit <= 1);
        BitString { len: self.len + 1, val: self.val | ((bit as u32) << self.len) }
    }

    pub fn parent(&self) -> Option<BitString> {
        if self.len == 0 {
            None
        } else {
            Some(BitString { len: self.len - 1, val: self.val & !(1 << (self.len - 1)) })
        }
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len == 0 {
            return write!(f, "root");
        }
        for j in 0..self.len {
            write!(f, "{}", (self.val >> j) & 1)?;
        }
        Ok(())
    }
}

/// One period: the exponents of eps it sums (as residues mod p, sorted).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodNode {
    pub w: BitString,
    pub terms: Vec<u64>,
}

/// The complete bisection tree for a Fermat prime, from the root (all
/// residues, value -1) down to the two-term real periods at level m - 1.
#[derive(Debug, Clone)]
pub struct PeriodTree {
    p: u64,
    g: u64,
    m: u32,
    /// levels[k][v] is the node for the length-k bit string with value v.
    levels: Vec<Vec<PeriodNode>>,
    /// discrete log table: dlog[g^e mod p] = e
    dlog: Vec<u32>,
}

/// Build the period tree for a Fermat prime, using the smallest primitive
/// root.
pub fn build_period_tree(p: u64) -> Result<PeriodTree, PeriodError> {
    if !is_fermat_prime(p) {
        return Err(PeriodError::NotFermatPrime);
    }
    let g = primitive_root(p).expect("fermat primes are prime");
    Ok(PeriodTree::build_with_generator(p, g))
}

impl PeriodTree {
    /// Build with an explicit primitive root (callers normally want
    /// [`build_period_tree`]).
    pub fn build_with_generator(p: u64, g: u64) -> PeriodTree {
        assert!(is_fermat_prime(p));
        let m = (p - 1).trailing_zeros();
        let mut dlog = vec![0u32; p as usize];
        let mut power = 1u64;
        for e in 0..p - 1 {
            dlog[power as usize] = e as u32;
            power = power * g % p;
        }
        debug_assert_eq!(power, 1, "g is not a primitive root");
        let mut levels = Vec::new();
        for k in 0..m {
            let classes = 1u64 << k;
            let mut nodes: Vec<PeriodNode> = (0..classes)
                .map(|v| PeriodNode { w: BitString::new(k as u8, v as u32), terms: Vec::new() })
                .collect();
            let mut power = 1u64;
            for e in 0..p - 1 {
                nodes[(e % classes) as usize].terms.push(power);
                power = power * g % p;
            }
            for node in &mut nodes {
                node.terms.sort_unstable();
            }
            levels.push(nodes);
        }
        PeriodTree { p, g, m, levels, dlog }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn generator(&self) -> u64 {
        self.g
    }

    /// p = 2^m + 1.
    pub fn exponent(&self) -> u32 {
        self.m
    }

    /// Deepest stored level (the two-term real periods), m - 1.
    pub fn depth(&self) -> u32 {
        self.m - 1
    }

    pub fn node(&self, w: BitString) -> &PeriodNode {
        &self.levels[w.len() as usize][w.val() as usize]
    }

    pub fn level(&self, k: u32) -> &[PeriodNode] {
        &self.levels[k as usize]
    }

    pub fn has_children(&self, w: BitString) -> bool {
        (w.len() as u32) < self.depth()
    }

    /// All residues needed by cosine tables for this tree.
    pub fn residues(&self) -> impl Iterator<Item = u64> + '_ {
        1..self.p
    }

    /// Enclosure of a node's (real) value: the sum of cos(2*pi*t/p) over its
    /// terms. The root is exactly -1.
    pub fn enclosure(&self, w: BitString, table: &CosTable) -> DyadicInterval {
        if w.is_empty() {
            return DyadicInterval::from_int(-1);
        }
        table.sum_cos(&self.node(w).terms)
    }

    /// The node as an exact cyclotomic element.
    pub fn cyclo(&self, w: BitString) -> CycloElement {
        CycloElement::period(self.p, self.g, 1u64 << w.len(), w.val() as u64)
            .expect("valid tree level")
    }

    /// Product of the two children of `w`, expressed as an integer
    /// combination of level-|w| periods plus an integer constant. Computed by
    /// counting, for each residue s, the solutions of g^e0 + g^e1 = s with
    /// e0, e1 ranging over the children's exponent classes, and grouping the
    /// counts by the parent-level period containing eps^s.
    pub fn sibling_product(&self, w: BitString) -> Result<LinearCombination, PeriodError> {
        if !self.has_children(w) {
            return Err(PeriodError::NoChildren);
        }
        let c0 = self.node(w.child(0));
        let c1 = self.node(w.child(1));
        let p = self.p as usize;
        let mut alpha = vec![0u64; p];
        for &t0 in &c0.terms {
            for &t1 in &c1.terms {
                let s = t0 + t1;
                let s = if s >= self.p { s - self.p } else { s };
                alpha[s as usize] += 1;
            }
        }
        let classes = 1u32 << w.len();
        let mut coeffs: Vec<Option<u64>> = vec![None; classes as usize];
        for (s, &count) in alpha.iter().enumerate().skip(1) {
            let class = self.dlog[s] % classes;
            let slot = &mut coeffs[class as usize];
            match slot {
                None => *slot = Some(count),
                Some(b) => assert_eq!(
                    *b,
                    count,
                    "solution count not constant on a level-{} period",
                    w.len()
                ),
            }
        }
        let mut map = BTreeMap::new();
        for (class, b) in coeffs.into_iter().enumerate() {
            let b = b.expect("class nonempty");
            if b != 0 {
                map.insert(BitString::new(w.len(), class as u32), BigInt::from(b));
            }
        }
        Ok(LinearCombination { constant: BigInt::from(alpha[0]), coeffs: map })
    }

    /// Exact cross-check of a sibling product against cyclotomic
    /// multiplication.
    pub fn product_matches_cyclo(&self, w: BitString, lc: &LinearCombination) -> bool {
        let c0 = self.cyclo(w.child(0));
        let c1 = self.cyclo(w.child(1));
        let direct = c0.mul(&c1).expect("same modulus");
        match lc.to_cyclo(self) {
            Ok(e) => e == direct,
            Err(_) => false,
        }
    }
}

/// An integer combination of same-level periods plus an integer constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCombination {
    pub constant: BigInt,
    pub coeffs: BTreeMap<BitString, BigInt>,
}

impl LinearCombination {
    pub fn to_cyclo(&self, tree: &PeriodTree) -> Result<CycloElement, CycloError> {
        let mut acc = CycloElement::from_integer(tree.p(), self.constant.clone());
        for (w, b) in &self.coeffs {
            acc = acc.add(&tree.cyclo(*w).scale(b))?;
        }
        Ok(acc)
    }

    /// Rebuild the combination over already-solved expressions for the
    /// same-level periods.
    pub fn to_expr(&self, exprs: &BTreeMap<BitString, RadicalExpr>) -> RadicalExpr {
        let mut terms = Vec::with_capacity(self.coeffs.len() + 1);
        if !self.constant.is_zero() {
            terms.push(RadicalExpr::rational(crate::rational::BigRational::from_integer(
                self.constant.clone(),
            )));
        }
        for (w, b) in &self.coeffs {
            let e = exprs.get(w).expect("same-level period already solved");
            if b == &BigInt::from(1) {
                terms.push(e.clone());
            } else {
                let c =
                    RadicalExpr::rational(crate::rational::BigRational::from_integer(b.clone()));
                terms.push(c.mul(e));
            }
        }
        if terms.is_empty() {
            return RadicalExpr::integer(0);
        }
        RadicalExpr::balanced_sum(terms)
    }

    /// Enclosure of the combination from enclosures of the periods.
    pub fn enclosure(
        &self,
        values: &BTreeMap<BitString, DyadicInterval>,
        prec: u32,
    ) -> DyadicInterval {
        let mut acc = DyadicInterval::from_rational(
            &crate::rational::BigRational::from_integer(self.constant.clone()),
            prec,
        );
        for (w, b) in &self.coeffs {
            let v = values.get(w).expect("period value available");
            let scaled =
                v.scale_rational(&crate::rational::BigRational::from_integer(b.clone()), prec);
            acc = acc.add(&scaled, prec);
        }
        acc
    }
}
