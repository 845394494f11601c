//! Kauffman bracket evaluation and resolution states.
//!
//! Conventions: the empty diagram has bracket 1 and every circle is worth
//! `δ = -A² - A⁻²`. A plus smoothing contributes `A`, a minus smoothing `A⁻¹`.

mod contract;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagram::{Crossing, LinkDiagram};
use crate::dsu::UnionFind;
use crate::error::{Error, Result};
use crate::laurent::{loop_value, LaurentPoly};

pub use contract::{plan_sweep, SweepPlan};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Smoothing {
    Plus,
    Minus,
}

impl Smoothing {
    pub fn arcs(self) -> [(usize, usize); 2] {
        match self {
            Smoothing::Plus => Crossing::PLUS_ARCS,
            Smoothing::Minus => Crossing::MINUS_ARCS,
        }
    }
}

/// Guards for the two bracket engines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeinConfig {
    pub max_bruteforce_crossings: usize,
    pub max_contract_width: usize,
}

impl Default for SkeinConfig {
    fn default() -> Self {
        Self {
            max_bruteforce_crossings: 22,
            max_contract_width: 16,
        }
    }
}

/// A full resolution of a diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionState {
    pub choices: Vec<Smoothing>,
    pub circle_count: usize,
    /// For each crossing, the circles carrying its two replacement arcs.
    pub arc_circles: Vec<(usize, usize)>,
}

impl ResolutionState {
    pub fn resolve(d: &LinkDiagram, choices: Vec<Smoothing>) -> Self {
        assert_eq!(choices.len(), d.crossing_count());
        let mut uf = UnionFind::new(d.num_edges());
        for (c, s) in d.crossings().iter().zip(&choices) {
            for (p, q) in s.arcs() {
                uf.union(c.slots[p], c.slots[q]);
            }
        }
        let mut ids = BTreeMap::new();
        for e in 0..d.num_edges() {
            let r = uf.find(e);
            let next = ids.len();
            ids.entry(r).or_insert(next);
        }
        let arc_circles = d
            .crossings()
            .iter()
            .zip(&choices)
            .map(|(c, s)| {
                let [(p, _), (q, _)] = s.arcs();
                (ids[&uf.find(c.slots[p])], ids[&uf.find(c.slots[q])])
            })
            .collect();
        Self {
            choices,
            circle_count: ids.len() + d.free_loops().len(),
            arc_circles,
        }
    }

    /// `A^{#plus - #minus} δ^{circles}`.
    pub fn weight(&self) -> LaurentPoly {
        let plus = self.choices.iter().filter(|s| **s == Smoothing::Plus).count() as i64;
        let minus = self.choices.len() as i64 - plus;
        &LaurentPoly::monomial(plus - minus, 1) * &loop_value().pow(self.circle_count as u32)
    }
}

pub fn all_minus_state(d: &LinkDiagram) -> ResolutionState {
    ResolutionState::resolve(d, vec![Smoothing::Minus; d.crossing_count()])
}

/// True iff in the all-minus state every crossing joins two distinct circles.
pub fn is_minus_adequate(d: &LinkDiagram) -> bool {
    all_minus_state(d).arc_circles.iter().all(|(a, b)| a != b)
}

/// `-c - 2p`, the lowest bracket degree of a minus-adequate diagram.
pub fn adequate_mindeg(d: &LinkDiagram) -> Result<i64> {
    let st = all_minus_state(d);
    if st.arc_circles.iter().any(|(a, b)| a == b) {
        return Err(Error::NotAdequate);
    }
    Ok(-(d.crossing_count() as i64) - 2 * st.circle_count as i64)
}

/// Sum over all `2^c` states with union-find circle counting.
pub fn bracket_bruteforce(d: &LinkDiagram, max_crossings: usize) -> Result<LaurentPoly> {
    let c = d.crossing_count();
    if c > max_crossings {
        return Err(Error::BruteforceGuard { crossings: c, limit: max_crossings });
    }
    let edges = d.num_edges();
    let free = d.free_loops().len();
    let slots: Vec<[usize; 4]> = d.crossings().iter().map(|x| x.slots).collect();

    // split on the top bits so workers get equal slices of the state space
    let split = c.min(8);
    let low = c - split;
    let tally = |high: u64| -> BTreeMap<(u32, u32), u64> {
        let mut uf = UnionFind::new(edges);
        let mut counts = BTreeMap::new();
        for lo in 0..(1u64 << low) {
            let mask = (high << low) | lo;
            uf.reset();
            for (i, s) in slots.iter().enumerate() {
                let arcs = if mask >> i & 1 == 1 { Crossing::PLUS_ARCS } else { Crossing::MINUS_ARCS };
                for (p, q) in arcs {
                    uf.union(s[p], s[q]);
                }
            }
            let plus = mask.count_ones();
            *counts.entry((plus, uf.classes() as u32)).or_insert(0u64) += 1;
        }
        counts
    };
    let counts = (0..1u64 << split)
        .into_par_iter()
        .map(tally)
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });

    let mut out = LaurentPoly::zero();
    let delta = loop_value();
    let mut delta_pows: Vec<LaurentPoly> = vec![LaurentPoly::one()];
    for ((plus, circles), n) in counts {
        let p = circles as usize + free;
        while delta_pows.len() <= p {
            let next = delta_pows.last().unwrap() * &delta;
            delta_pows.push(next);
        }
        let shift = 2 * plus as i64 - c as i64;
        out += &delta_pows[p].shift(shift).scale(&BigInt::from(n));
    }
    Ok(out)
}

/// Bracket by sweeping the diagram over crossingless matchings of the cut.
pub fn bracket_contract(d: &LinkDiagram, max_width: usize) -> Result<LaurentPoly> {
    let plan = plan_sweep(d);
    if plan.width > max_width {
        return Err(Error::WidthGuard { width: plan.width, limit: max_width });
    }
    Ok(contract::evaluate(d, &plan, None))
}

/// Bracket terms of degree at most `cap`, exactly; higher terms are dropped.
///
/// States whose every completion lands above `cap` are pruned, so this stays
/// cheap near the bottom of the degree range even on wide diagrams.
pub fn bracket_lower_part(d: &LinkDiagram, cap: i64) -> LaurentPoly {
    let plan = plan_sweep(d);
    contract::evaluate(d, &plan, Some(cap))
}

/// Contraction when the sweep fits, brute force otherwise.
pub fn bracket(d: &LinkDiagram, cfg: &SkeinConfig) -> Result<LaurentPoly> {
    let plan = plan_sweep(d);
    if plan.width <= cfg.max_contract_width {
        return Ok(contract::evaluate(d, &plan, None));
    }
    if d.crossing_count() <= cfg.max_bruteforce_crossings {
        return bracket_bruteforce(d, cfg.max_bruteforce_crossings);
    }
    Err(Error::WidthGuard { width: plan.width, limit: cfg.max_contract_width })
}

/// Lowest bracket degree, computed with the pruned sweep.
///
/// Starts from the all-minus lower bound `-c - 2p` and widens the window until
/// a nonzero coefficient appears.
pub fn bracket_mindeg(d: &LinkDiagram) -> Result<i64> {
    let floor = -(d.crossing_count() as i64) - 2 * all_minus_state(d).circle_count as i64;
    let plan = plan_sweep(d);
    let mut window = 0;
    loop {
        let part = contract::evaluate(d, &plan, Some(floor + window));
        if let Ok(m) = part.mindeg() {
            return Ok(m);
        }
        if floor + window > d.crossing_count() as i64 + 2 * (d.num_edges() + d.free_loops().len()) as i64 {
            return Err(Error::DegreeOfZero);
        }
        window = if window == 0 { 4 } else { window * 2 };
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::diagram::KinkKind;

    fn p(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    fn both(d: &LinkDiagram) -> LaurentPoly {
        let a = bracket_bruteforce(d, 22).unwrap();
        let b = bracket_contract(d, 64).unwrap();
        assert_eq!(a, b);
        a
    }

    #[test]
    fn conventions() {
        assert_eq!(both(&LinkDiagram::empty()), LaurentPoly::one());
        assert_eq!(both(&LinkDiagram::unknot()), p(&[(2, -1), (-2, -1)]));
    }

    #[test]
    fn hopf_bracket() {
        let hopf = p(&[(6, 1), (2, 1), (-2, 1), (-6, 1)]);
        assert_eq!(both(&corpus::hopf()), hopf);
        // A²δ² + 2δ + A⁻²δ², enumerated by hand
        let delta = loop_value();
        let by_hand = &(&delta.pow(2).shift(2) + &delta.scale(&BigInt::from(2))) + &delta.pow(2).shift(-2);
        assert_eq!(by_hand, hopf);
        assert_eq!(both(&corpus::torus_braid(2, 2)), hopf);
    }

    #[test]
    fn trefoil_bracket() {
        // unnormalized bracket of the right-handed trefoil
        assert_eq!(both(&corpus::trefoil_right()), p(&[(7, 1), (3, 1), (-1, 1), (-9, -1)]));
        assert_eq!(both(&corpus::torus_braid(3, 2)), both(&corpus::trefoil_right()));
    }

    #[test]
    fn kink_factors() {
        let base = both(&corpus::figure_eight());
        for kind in KinkKind::ALL {
            let k = corpus::figure_eight().with_kink(3, kind);
            let factor = LaurentPoly::monomial(3 * kind.sign().value(), -1);
            assert_eq!(both(&k), &base * &factor, "{kind:?}");
        }
    }

    #[test]
    fn all_minus_examples() {
        let h = all_minus_state(&corpus::hopf());
        assert_eq!(h.circle_count, 2);
        assert!(is_minus_adequate(&corpus::hopf()));
        let unlink = LinkDiagram::from_braid(&crate::diagram::BraidWord::new(4, vec![]).unwrap());
        assert_eq!(all_minus_state(&unlink).circle_count, 4);
        let t = corpus::trefoil_right();
        let u = t.distant_union(&corpus::hopf());
        assert_eq!(
            all_minus_state(&u).circle_count,
            all_minus_state(&t).circle_count + h.circle_count
        );
    }

    #[test]
    fn kinked_unknot_not_adequate() {
        // minus-resolving a positive kink leaves a single circle
        let d = LinkDiagram::unknot().with_kink_on_free_loop(0, KinkKind::PositiveUnderFirst);
        let st = all_minus_state(&d);
        assert_eq!(st.circle_count, 1);
        assert!(!is_minus_adequate(&d));
        assert!(matches!(adequate_mindeg(&d), Err(Error::NotAdequate)));
    }

    #[test]
    fn adequate_mindeg_examples() {
        assert_eq!(adequate_mindeg(&corpus::hopf()).unwrap(), -6);
        assert_eq!(both(&corpus::hopf()).mindeg().unwrap(), -6);
        assert_eq!(adequate_mindeg(&LinkDiagram::unknot()).unwrap(), -2);
        let t = corpus::trefoil_right();
        assert_eq!(adequate_mindeg(&t).unwrap(), both(&t).mindeg().unwrap());
    }

    #[test]
    fn alternating_corpus_is_adequate() {
        for d in [
            corpus::trefoil_left(),
            corpus::trefoil_right(),
            corpus::figure_eight(),
            corpus::knot_5_2(),
            corpus::knot_6_2(),
        ] {
            assert!(is_minus_adequate(&d));
            assert!(is_minus_adequate(&d.mirror()));
        }
    }

    #[test]
    fn guards() {
        let d = corpus::knot_6_2();
        assert!(matches!(bracket_bruteforce(&d, 5), Err(Error::BruteforceGuard { .. })));
        assert!(matches!(bracket_contract(&d, 1), Err(Error::WidthGuard { .. })));
    }

    #[test]
    fn lower_part_matches_full() {
        for d in corpus::all() {
            let full = both(&d.diagram);
            let lo = full.mindeg().unwrap();
            for cap in [lo - 4, lo, lo + 4, lo + 8, lo + 20] {
                assert_eq!(bracket_lower_part(&d.diagram, cap), full.truncate_above(cap), "{} cap {cap}", d.name);
            }
            assert_eq!(bracket_mindeg(&d.diagram).unwrap(), lo);
        }
    }

    #[test]
    fn mirror_inverts_variable() {
        for d in corpus::all() {
            assert_eq!(both(&d.diagram.mirror()), both(&d.diagram).invert_variable());
        }
    }
}
