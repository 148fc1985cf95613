//! Radical synthesis: descend the period tree, solving each sibling pair as
//! the two roots of t^2 - S t + P = 0 with S the parent period and P the
//! sibling product, and read off cos(2*pi/p) as half the two-term period
//! containing eps^1.

use std::collections::BTreeMap;

use crate::cosine::{cos_two_pi, CosTable};
use crate::radical::{EvalSignal, Evaluator, RadicalExpr};

use super::{build_period_tree, BitString, LinearCombination, PeriodError, PeriodTree};

/// Everything produced by one synthesis run.
pub struct Synthesis {
    pub tree: PeriodTree,
    /// Solved expression for every node, root included.
    pub exprs: BTreeMap<BitString, RadicalExpr>,
    /// Sibling product for every node with children.
    pub products: BTreeMap<BitString, LinearCombination>,
    /// Simplified expression for cos(2*pi/p).
    pub cos_expr: RadicalExpr,
}

/// Synthesize a nested square-root expression for cos(2*pi/p), p a Fermat
/// prime. The expression nests square roots m - 1 deep for p = 2^m + 1.
pub fn synthesize_radical(p: u64) -> Result<RadicalExpr, PeriodError> {
    Ok(synthesize_full(p)?.cos_expr)
}

/// Synthesis that keeps the tree, per-node expressions and sibling products
/// for further verification.
pub fn synthesize_full(p: u64) -> Result<Synthesis, PeriodError> {
    let tree = build_period_tree(p)?;
    let mut synth = Synthesizer {
        table: CosTable::build(p, tree.residues(), START_PRECISION),
        ev: Evaluator::new(START_PRECISION),
        exprs: BTreeMap::new(),
        products: BTreeMap::new(),
        tree,
    };
    synth.exprs.insert(BitString::root(), RadicalExpr::integer(-1));
    for k in 0..synth.tree.depth() {
        for v in 0..(1u32 << k) {
            synth.solve_pair(BitString::new(k as u8, v))?;
        }
    }
    let f1 = synth.exprs[&BitString::new(synth.tree.depth() as u8, 0)].clone();
    let cos_expr = f1.div(&RadicalExpr::integer(2)).simplify();
    // cross-check against the independent cosine enclosure
    let value = cos_expr.eval_interval(128)?;
    let reference = cos_two_pi(1, p, 128);
    assert!(
        value.intersect(&reference).is_some(),
        "synthesized cos(2*pi/{p}) disagrees with its rigorous enclosure"
    );
    Ok(Synthesis { tree: synth.tree, exprs: synth.exprs, products: synth.products, cos_expr })
}

const START_PRECISION: u32 = 128;

struct Synthesizer {
    tree: PeriodTree,
    table: CosTable,
    ev: Evaluator,
    exprs: BTreeMap<BitString, RadicalExpr>,
    products: BTreeMap<BitString, LinearCombination>,
}

impl Synthesizer {
    fn solve_pair(&mut self, w: BitString) -> Result<(), PeriodError> {
        let lc = self.tree.sibling_product(w)?;
        let s_expr = self.exprs[&w].clone();
        let p_expr = lc.to_expr(&self.exprs);
        self.products.insert(w, lc);
        // the siblings are the roots (S +- sqrt(S^2 - 4P)) / 2
        let disc = s_expr.mul(&s_expr).sub(&RadicalExpr::integer(4).mul(&p_expr));
        let root = disc.sqrt();
        let two = RadicalExpr::integer(2);
        let plus = s_expr.add(&root).div(&two);
        let minus = s_expr.sub(&root).div(&two);
        let c0 = w.child(0);
        let c1 = w.child(1);
        loop {
            if let Some(plus_is_c0) = self.decide(&plus, &minus, c0, c1)? {
                let (e0, e1) = if plus_is_c0 { (plus, minus) } else { (minus, plus) };
                self.exprs.insert(c0, e0);
                self.exprs.insert(c1, e1);
                return Ok(());
            }
            self.refine()?;
        }
    }

    /// Match the two candidate roots against the children's direct cosine
    /// enclosures. Some(true) assigns the + root to child 0. None means the
    /// current precision cannot separate them yet.
    fn decide(
        &mut self,
        plus: &RadicalExpr,
        minus: &RadicalExpr,
        c0: BitString,
        c1: BitString,
    ) -> Result<Option<bool>, PeriodError> {
        let ip = match self.ev.eval(plus) {
            Ok(i) => i,
            Err(EvalSignal::Refine) => return Ok(None),
            Err(EvalSignal::Hard(e)) => return Err(e.into()),
        };
        let im = match self.ev.eval(minus) {
            Ok(i) => i,
            Err(EvalSignal::Refine) => return Ok(None),
            Err(EvalSignal::Hard(e)) => return Err(e.into()),
        };
        if ip.intersect(&im).is_some() {
            return Ok(None); // candidates not separated yet
        }
        let e0 = self.tree.enclosure(c0, &self.table);
        let e1 = self.tree.enclosure(c1, &self.table);
        let p0 = ip.intersect(&e0).is_some();
        let m0 = im.intersect(&e0).is_some();
        let p1 = ip.intersect(&e1).is_some();
        let m1 = im.intersect(&e1).is_some();
        match (p0, m0, p1, m1) {
            (true, false, false, true) => Ok(Some(true)),
            (false, true, true, false) => Ok(Some(false)),
            _ => Ok(None),
        }
    }

    fn refine(&mut self) -> Result<(), PeriodError> {
        self.ev.double_working_precision()?;
        self.table =
            CosTable::build(self.tree.p(), self.tree.residues(), self.ev.working_precision());
        Ok(())
    }
}
