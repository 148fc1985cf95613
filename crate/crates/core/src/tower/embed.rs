//! Re-run the period synthesis inside the exact quadratic tower and verify
//! every node against its defining quadratic, with zero tolerance.
//!
//! One radicand is adjoined per period level: the discriminant S^2/4 - P of
//! the leftmost sibling pair. Every other pair at the same level lives in the
//! same extension, and its square root is recovered exactly by the in-tower
//! square-root extraction, so the whole level maps onto tower elements over
//! a context whose depth equals the number of period levels.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use crate::cosine::{cos_two_pi, CosTable};
use crate::periods::{build_period_tree, BitString, LinearCombination, PeriodTree};
use crate::rational::{rat, BigRational};

use super::{coefficient_bits, TowerContext, TowerElement, TowerError};

/// Statistics from one embedding run.
#[derive(Debug, Clone)]
pub struct EmbedReport {
    pub p: u64,
    /// Radicands adjoined (period levels completed).
    pub context_depth: usize,
    /// Child levels whose elements were built and verified.
    pub levels_completed: u32,
    /// Children that passed the exact quadratic check.
    pub nodes_verified: usize,
    /// Children the full tree would verify.
    pub nodes_total: usize,
    /// False when the time budget ran out first.
    pub completed: bool,
    /// Largest numerator/denominator bit length over all coordinates.
    pub max_coefficient_bits: u64,
    pub elapsed: Duration,
}

/// The exact tower image of a synthesis run.
pub struct Embedding {
    pub context: TowerContext,
    pub elements: BTreeMap<BitString, TowerElement>,
    pub report: EmbedReport,
}

/// Build the tower for cos(2*pi/p) and verify r^2 - S r + P = 0 exactly at
/// every period node. `budget` bounds wall-clock time; when it runs out a
/// partial embedding is returned with `report.completed = false`.
pub fn embed_synthesis(p: u64, budget: Option<Duration>) -> Result<Embedding, TowerError> {
    assert!(
        crate::modular::is_fermat_prime(p) && p <= 257,
        "embedding is sized for p in {{3, 5, 17, 257}}"
    );
    let start = Instant::now();
    let tree = build_period_tree(p).expect("fermat prime");
    let mut ctx = TowerContext::new();
    let mut elements: BTreeMap<BitString, TowerElement> = BTreeMap::new();
    elements.insert(BitString::root(), ctx.integer(-1));
    let mut numerics = Numerics::new(&tree);

    let depth = tree.depth();
    let nodes_total: usize = (1..=depth).map(|k| 1usize << k).sum();
    let mut nodes_verified = 0usize;
    let mut levels_completed = 0u32;
    let mut completed = true;

    'levels: for k in 0..depth {
        for v in 0..(1u32 << k) {
            if let Some(b) = budget {
                if start.elapsed() > b {
                    completed = false;
                    break 'levels;
                }
            }
            let w = BitString::new(k as u8, v);
            let lc = tree.sibling_product(w).expect("inner node");
            let s_el = elements[&w].clone();
            let p_el = lincomb_to_tower(&ctx, &lc, &elements)?;
            // discriminant of t^2 - S t + P, divided by 4
            let d_el = ctx.sub(&ctx.scale(&ctx.mul(&s_el, &s_el)?, &rat(1, 4))?, &p_el)?;
            let root = if v == 0 {
                // leftmost pair defines this level's radicand
                let idx = ctx.extend(&d_el)?;
                ctx.sqrt_gen(idx)?
            } else {
                // any other discriminant at this level has its square root in
                // the same extension; find it exactly
                let level = ctx.depth() - 1;
                let y = ctx.sqrt_element(&d_el, level)?.ok_or(TowerError::VerificationFailed)?;
                numerics.nonnegative(&ctx, y)?
            };
            let half_s = ctx.scale(&s_el, &rat(1, 2))?;
            let plus = ctx.add(&half_s, &root)?;
            let minus = ctx.sub(&half_s, &root)?;
            let c0 = w.child(0);
            let c1 = w.child(1);
            // the + root (nonnegative sqrt) is the numerically larger sibling
            let (e0, e1) = if numerics.first_is_larger(&tree, c0, c1)? {
                (plus, minus)
            } else {
                (minus, plus)
            };
            for (cw, el) in [(c0, &e0), (c1, &e1)] {
                if !ctx.verify_quadratic(el, &s_el, &p_el)? {
                    return Err(TowerError::VerificationFailed);
                }
                // tower value must agree with the direct cosine enclosure
                let enc = ctx.eval_interval(el, 100)?;
                if tree.enclosure(cw, &numerics.table).intersect(&enc).is_none() {
                    return Err(TowerError::VerificationFailed);
                }
                nodes_verified += 1;
            }
            elements.insert(c0, e0);
            elements.insert(c1, e1);
        }
        levels_completed = k + 1;
    }

    if completed {
        // cos(2*pi/p) = f_1 / 2 must land inside its rigorous enclosure
        let f1 = &elements[&BitString::new(depth as u8, 0)];
        let cos_el = ctx.scale(f1, &rat(1, 2))?;
        let enc = ctx.eval_interval(&cos_el, 100)?;
        if enc.intersect(&cos_two_pi(1, p, 100)).is_none() {
            return Err(TowerError::VerificationFailed);
        }
    }

    let max_coefficient_bits = elements
        .values()
        .map(coefficient_bits)
        .chain((0..ctx.depth()).map(|k| coefficient_bits(&ctx.radicand(k).expect("adjoined"))))
        .max()
        .unwrap_or(0);
    let report = EmbedReport {
        p,
        context_depth: ctx.depth(),
        levels_completed,
        nodes_verified,
        nodes_total,
        completed,
        max_coefficient_bits,
        elapsed: start.elapsed(),
    };
    Ok(Embedding { context: ctx, elements, report })
}

fn lincomb_to_tower(
    ctx: &TowerContext,
    lc: &LinearCombination,
    elements: &BTreeMap<BitString, TowerElement>,
) -> Result<TowerElement, TowerError> {
    let mut acc = ctx.rational(BigRational::from_integer(lc.constant.clone()));
    for (w, b) in &lc.coeffs {
        let el = elements.get(w).expect("same-level period present");
        let scaled = ctx.scale(el, &BigRational::from_integer(b.clone()))?;
        acc = ctx.add(&acc, &scaled)?;
    }
    Ok(acc)
}

/// Shared cosine table with on-demand refinement for sign decisions.
struct Numerics {
    table: CosTable,
    prec: u32,
    p: u64,
}

impl Numerics {
    fn new(tree: &PeriodTree) -> Self {
        let prec = 128;
        Numerics { table: CosTable::build(tree.p(), tree.residues(), prec), prec, p: tree.p() }
    }

    fn refine(&mut self) -> Result<(), TowerError> {
        if self.prec >= (1 << 14) {
            return Err(TowerError::VerificationFailed);
        }
        self.prec *= 2;
        self.table = CosTable::build(self.p, 1..self.p, self.prec);
        Ok(())
    }

    /// Orient an exact square root to the nonnegative real branch.
    fn nonnegative(
        &mut self,
        ctx: &TowerContext,
        y: TowerElement,
    ) -> Result<TowerElement, TowerError> {
        if y.is_zero() {
            return Err(TowerError::VerificationFailed);
        }
        let mut prec = 64;
        loop {
            let enc = ctx.eval_interval(&y, prec)?;
            if enc.is_strictly_positive() {
                return Ok(y);
            }
            if enc.is_strictly_negative() {
                return ctx.neg(&y);
            }
            if prec >= (1 << 14) {
                return Err(TowerError::VerificationFailed);
            }
            prec *= 2;
        }
    }

    /// Separate two sibling period values numerically.
    fn first_is_larger(
        &mut self,
        tree: &PeriodTree,
        c0: BitString,
        c1: BitString,
    ) -> Result<bool, TowerError> {
        loop {
            let e0 = tree.enclosure(c0, &self.table);
            let e1 = tree.enclosure(c1, &self.table);
            if e0.lo().cmp_value(e1.hi()) == std::cmp::Ordering::Greater {
                return Ok(true);
            }
            if e1.lo().cmp_value(e0.hi()) == std::cmp::Ordering::Greater {
                return Ok(false);
            }
            self.refine()?;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_is_rational_only() {
        let e = embed_synthesis(3, None).unwrap();
        assert_eq!(e.report.context_depth, 0);
        assert_eq!(e.report.nodes_total, 0);
        assert!(e.report.completed);
        assert_eq!(e.elements[&BitString::root()], e.context.integer(-1));
    }

    #[test]
    fn pentagon_embedding_verifies() {
        let e = embed_synthesis(5, None).unwrap();
        assert!(e.report.completed);
        assert_eq!(e.report.context_depth, 1);
        assert_eq!(e.report.nodes_verified, 2);
        // the solved top period is -1/2 + sqrt(5/4) = (-1 + sqrt 5)/2,
        // the positive root
        let ctx = &e.context;
        let a0 = &e.elements[&BitString::new(1, 0)];
        let expected = ctx.add(&ctx.rational(rat(-1, 2)), &ctx.sqrt_gen(0).unwrap()).unwrap();
        assert_eq!(a0, &expected);
        // and the adjoined radicand is the discriminant 5/4
        assert_eq!(ctx.radicand(0).unwrap(), ctx.rational(rat(5, 4)));
    }

    #[test]
    fn heptadecagon_embedding_verifies() {
        let e = embed_synthesis(17, None).unwrap();
        assert!(e.report.completed);
        assert_eq!(e.report.context_depth, 3);
        assert_eq!(e.report.nodes_verified, 2 + 4 + 8);
        assert!(e.report.max_coefficient_bits > 0);
    }

    #[test]
    fn budget_cuts_off_cleanly() {
        let e = embed_synthesis(17, Some(Duration::ZERO)).unwrap();
        assert!(!e.report.completed);
        assert_eq!(e.report.nodes_verified, 0);
    }

    #[test]
    fn conjugation_swaps_siblings() {
        // conjugating at the deepest level exchanges the two solved roots of
        // the leftmost pair, so each sibling satisfies the other's role in
        // the shared quadratic
        let e = embed_synthesis(17, None).unwrap();
        let ctx = &e.context;
        let depth = 3u8;
        let a = &e.elements[&BitString::new(depth, 0)];
        let sib = &e.elements[&BitString::new(depth, 1 << (depth - 1))];
        let conj = ctx.conjugate(a, (depth - 1) as usize).unwrap();
        assert_eq!(&conj, sib);
    }

    #[test]
    fn tower_and_expression_enclosures_agree() {
        let e = embed_synthesis(17, None).unwrap();
        let s = crate::periods::synthesize_full(17).unwrap();
        for (w, el) in &e.elements {
            let tower_enc = e.context.eval_interval(el, 96).unwrap();
            let expr_enc = s.exprs[w].eval_interval(96).unwrap();
            assert!(tower_enc.intersect(&expr_enc).is_some(), "enclosures disagree at {w}");
        }
    }
}
