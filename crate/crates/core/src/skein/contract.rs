//! Bracket evaluation by sweeping crossings in a fixed order.
//!
//! After `t` crossings the cut consists of the edges with exactly one end
//! processed. Each partial state is a perfect matching of those open ends
//! (which ends are joined by arcs through processed crossings) carrying a
//! polynomial coefficient. Closing an arc into a circle multiplies by `δ`.
//!
//! With a degree cap, a state is dropped once every completion of it must
//! land above the cap. The lowest completion of a partial state is its
//! all-minus completion (flipping a smoothing from plus to minus never raises
//! the lowest degree), so its degree is known exactly from a precomputed
//! all-minus matching of the unprocessed part.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::diagram::{Crossing, LinkDiagram};
use crate::laurent::{loop_value, LaurentPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepPlan {
    pub order: Vec<usize>,
    /// Largest number of open edges at any cut.
    pub width: usize,
}

/// Greedy sweep: repeatedly take the crossing that leaves the fewest open
/// edges (ties: most edges already open, then lowest index). Every start
/// crossing is tried and the narrowest plan wins.
pub fn plan_sweep(d: &LinkDiagram) -> SweepPlan {
    let n = d.crossing_count();
    if n == 0 {
        return SweepPlan { order: Vec::new(), width: 0 };
    }
    let starts: Vec<usize> = if n <= 64 { (0..n).collect() } else { (0..64).map(|i| i * n / 64).collect() };
    starts
        .into_iter()
        .map(|s| greedy(d, s))
        .min_by_key(|(plan, area)| (plan.width, *area, plan.order[0]))
        .map(|(plan, _)| plan)
        .unwrap()
}

fn greedy(d: &LinkDiagram, start: usize) -> (SweepPlan, u64) {
    let n = d.crossing_count();
    let xs = d.crossings();
    let mut seen = vec![0u8; d.num_edges()];
    let mut done = vec![false; n];
    let mut open = 0usize;
    let mut order = Vec::with_capacity(n);
    let mut width = 0;
    let mut area = 0u64;

    let effect = |seen: &[u8], x: &Crossing| -> (isize, usize) {
        let mut delta = 0isize;
        let mut conn = 0;
        for (i, &e) in x.slots.iter().enumerate() {
            if x.slots[..i].contains(&e) {
                continue;
            }
            let m = x.slots.iter().filter(|f| **f == e).count() as u8;
            let old = seen[e];
            if old == 1 {
                conn += 1;
            }
            delta += ((old + m) == 1) as isize - (old == 1) as isize;
        }
        (delta, conn)
    };

    let mut x = start;
    loop {
        let (delta, _) = effect(&seen, &xs[x]);
        for &e in &xs[x].slots {
            seen[e] += 1;
        }
        open = (open as isize + delta) as usize;
        done[x] = true;
        order.push(x);
        width = width.max(open);
        area += open as u64;
        if order.len() == n {
            break;
        }
        let mut best: Option<(usize, isize, usize)> = None;
        for y in 0..n {
            if done[y] {
                continue;
            }
            let (delta, conn) = effect(&seen, &xs[y]);
            let key = ((open as isize + delta) as usize, -(conn as isize), y);
            if best.is_none_or(|b| key < b) {
                best = Some(key);
            }
        }
        x = best.unwrap().2;
    }
    (SweepPlan { order, width }, area)
}

const NONE: u8 = u8::MAX;

/// Joins the path ends reaching local nodes `x` and `y`; returns the number
/// of circles closed (0 or 1).
#[inline]
fn join(m: &mut [u8], x: usize, y: usize) -> u32 {
    if x == y {
        // both ends of an unopened edge: a loop inside this crossing
        return 1;
    }
    if m[x] as usize == y {
        m[x] = NONE;
        m[y] = NONE;
        return 1;
    }
    let px = if m[x] != NONE {
        let p = m[x];
        m[x] = NONE;
        p as usize
    } else {
        x
    };
    let py = if m[y] != NONE {
        let q = m[y];
        m[y] = NONE;
        q as usize
    } else {
        y
    };
    m[px] = py as u8;
    m[py] = px as u8;
    0
}

/// Same as [`join`] over edge ids, for the one-off all-minus pass.
fn join_edges(m: &mut HashMap<usize, usize>, x: usize, y: usize) -> u32 {
    if x == y && !m.contains_key(&x) {
        return 1;
    }
    if m.get(&x) == Some(&y) {
        m.remove(&x);
        m.remove(&y);
        return 1;
    }
    let px = m.remove(&x).unwrap_or(x);
    let py = m.remove(&y).unwrap_or(y);
    m.insert(px, py);
    m.insert(py, px);
    0
}

struct Step {
    old_width: usize,
    slot_local: [usize; 4],
    local_count: usize,
    /// Local node of each open position after the step.
    new_local: Vec<u8>,
    /// Position after the step of each local node (`NONE` if consumed).
    new_pos: Vec<u8>,
}

struct Schedule {
    steps: Vec<Step>,
    /// Open edges after `t` steps, sorted.
    open: Vec<Vec<usize>>,
}

fn schedule(d: &LinkDiagram, plan: &SweepPlan) -> Schedule {
    let xs = d.crossings();
    let mut seen = vec![0u8; d.num_edges()];
    let mut open: Vec<Vec<usize>> = vec![Vec::new()];
    let mut steps = Vec::with_capacity(plan.order.len());
    for &x in &plan.order {
        let cur = open.last().unwrap().clone();
        let slots = xs[x].slots;
        let mut local_edges: Vec<usize> = cur.clone();
        let mut slot_local = [0usize; 4];
        for (i, &e) in slots.iter().enumerate() {
            slot_local[i] = match local_edges.iter().position(|f| *f == e) {
                Some(p) => p,
                None => {
                    local_edges.push(e);
                    local_edges.len() - 1
                }
            };
        }
        for &e in &slots {
            seen[e] += 1;
        }
        let next: Vec<usize> = {
            let mut v: Vec<usize> = local_edges.iter().copied().filter(|e| seen[*e] == 1).collect();
            v.sort_unstable();
            v
        };
        let mut new_pos = vec![NONE; local_edges.len()];
        let mut new_local = vec![0u8; next.len()];
        for (k, e) in next.iter().enumerate() {
            let l = local_edges.iter().position(|f| f == e).unwrap();
            new_pos[l] = k as u8;
            new_local[k] = l as u8;
        }
        steps.push(Step {
            old_width: cur.len(),
            slot_local,
            local_count: local_edges.len(),
            new_local,
            new_pos,
        });
        open.push(next);
    }
    Schedule { steps, open }
}

/// All-minus matching of the unprocessed crossings on each cut, plus the
/// number of circles it closes entirely inside the unprocessed part.
fn future_minus(d: &LinkDiagram, plan: &SweepPlan, sched: &Schedule) -> Vec<(Vec<u8>, u32)> {
    let n = plan.order.len();
    let xs = d.crossings();
    let mut out = vec![(Vec::new(), 0u32); n + 1];
    let mut m: HashMap<usize, usize> = HashMap::new();
    let mut loops = 0u32;
    for t in (0..n).rev() {
        let c = &xs[plan.order[t]];
        for (p, q) in Crossing::MINUS_ARCS {
            loops += join_edges(&mut m, c.slots[p], c.slots[q]);
        }
        let cut = &sched.open[t];
        debug_assert_eq!(m.len(), cut.len());
        let nu = cut
            .iter()
            .map(|e| cut.binary_search(&m[e]).expect("matching stays on the cut") as u8)
            .collect();
        out[t] = (nu, loops);
    }
    out
}

fn cycles(mu: &[u8], nu: &[u8]) -> u32 {
    let mut seen = vec![false; mu.len()];
    let mut count = 0;
    for s in 0..mu.len() {
        if seen[s] {
            continue;
        }
        count += 1;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            let j = mu[i] as usize;
            seen[j] = true;
            i = nu[j] as usize;
        }
    }
    count
}

pub(crate) trait Coeff: Clone {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    /// `self += k * x`; false on overflow.
    fn add_mul(&mut self, x: &Self, k: i64) -> bool;
    fn to_bigint(&self) -> BigInt;
}

impl Coeff for i128 {
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    #[inline]
    fn add_mul(&mut self, x: &Self, k: i64) -> bool {
        match x.checked_mul(k as i128).and_then(|p| self.checked_add(p)) {
            Some(v) => {
                *self = v;
                true
            }
            None => false,
        }
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Coeff for BigInt {
    fn zero() -> Self {
        <BigInt as Zero>::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_mul(&mut self, x: &Self, k: i64) -> bool {
        *self += x * k;
        true
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

/// Dense coefficient block starting at exponent `lo`.
#[derive(Clone)]
struct Dense<C> {
    lo: i64,
    c: Vec<C>,
}

/// Exponent offsets and multipliers of `δ^k` for `k = 0, 1, 2`.
const DELTA_POW: [&[(i64, i64)]; 3] = [&[(0, 1)], &[(2, -1), (-2, -1)], &[(4, 1), (0, 2), (-4, 1)]];

impl<C: Coeff> Dense<C> {
    fn empty() -> Self {
        Self { lo: 0, c: Vec::new() }
    }

    fn hi(&self) -> i64 {
        self.lo + self.c.len() as i64 - 1
    }

    fn cover(&mut self, lo: i64, hi: i64) {
        if self.c.is_empty() {
            self.lo = lo;
            self.c = vec![C::zero(); (hi - lo + 1) as usize];
            return;
        }
        if lo < self.lo {
            let mut v = vec![C::zero(); (self.lo - lo) as usize];
            v.append(&mut self.c);
            self.c = v;
            self.lo = lo;
        }
        if hi > self.hi() {
            let extra = (hi - self.hi()) as usize;
            self.c.extend(std::iter::repeat_with(C::zero).take(extra));
        }
    }

    /// `self += src · A^shift · δ^loops`, keeping exponents `<= cap`.
    fn add_from(&mut self, src: &Dense<C>, shift: i64, loops: usize, cap: i64) -> bool {
        let terms = DELTA_POW[loops];
        let lo = src.lo + shift + terms.iter().map(|t| t.0).min().unwrap();
        let hi = (src.hi() + shift + terms.iter().map(|t| t.0).max().unwrap()).min(cap);
        if lo > hi {
            return true;
        }
        self.cover(lo, hi);
        for &(off, k) in terms {
            let base = src.lo + shift + off;
            for (i, x) in src.c.iter().enumerate() {
                let e = base + i as i64;
                if e > cap {
                    break;
                }
                if x.is_zero() {
                    continue;
                }
                let idx = (e - self.lo) as usize;
                if !self.c[idx].add_mul(x, k) {
                    return false;
                }
            }
        }
        true
    }

    fn trim(&mut self) {
        while self.c.last().is_some_and(|x| x.is_zero()) {
            self.c.pop();
        }
        let lead = self.c.iter().take_while(|x| x.is_zero()).count();
        if lead > 0 {
            self.c.drain(..lead);
            self.lo += lead as i64;
        }
    }
}

fn run<C: Coeff>(d: &LinkDiagram, plan: &SweepPlan, cap: Option<i64>, unit: C) -> Option<LaurentPoly> {
    let n = plan.order.len();
    let free = d.free_loops().len() as i64;
    let sched = schedule(d, plan);
    let future = cap.map(|_| future_minus(d, plan, &sched));

    // allowed top exponent for a state with matching `key` after `t` steps
    let allowed = |t: usize, key: &[u8]| -> i64 {
        match (cap, &future) {
            (Some(cap), Some(f)) => {
                let (nu, l0) = &f[t];
                let rem = (n - t) as i64;
                cap + rem + 2 * (*l0 as i64 + cycles(key, nu) as i64 + free)
            }
            _ => i64::MAX,
        }
    };

    let mut states: HashMap<Vec<u8>, Dense<C>> = HashMap::new();
    let start = Dense { lo: 0, c: vec![unit] };
    if allowed(0, &[]) >= 0 {
        states.insert(Vec::new(), start);
    }
    let mut m = vec![NONE; 0];
    for (t, step) in sched.steps.iter().enumerate() {
        let mut next: HashMap<Vec<u8>, (i64, Dense<C>)> = HashMap::with_capacity(states.len() * 2);
        for (key, poly) in &states {
            for (shift, arcs) in [(1i64, Crossing::PLUS_ARCS), (-1, Crossing::MINUS_ARCS)] {
                m.clear();
                m.extend_from_slice(key);
                m.resize(step.local_count, NONE);
                debug_assert_eq!(key.len(), step.old_width);
                let mut loops = 0;
                for (p, q) in arcs {
                    loops += join(&mut m, step.slot_local[p], step.slot_local[q]);
                }
                let new_key: Vec<u8> = step
                    .new_local
                    .iter()
                    .map(|&l| step.new_pos[m[l as usize] as usize])
                    .collect();
                let entry = match next.get_mut(&new_key) {
                    Some(e) => e,
                    None => {
                        let a = allowed(t + 1, &new_key);
                        let min_exp = poly.lo + shift - 2 * loops as i64;
                        if min_exp > a {
                            continue;
                        }
                        next.entry(new_key).or_insert((a, Dense::empty()))
                    }
                };
                if !entry.1.add_from(poly, shift, loops as usize, entry.0) {
                    return None;
                }
            }
        }
        states = next
            .into_iter()
            .filter_map(|(k, (_, mut p))| {
                p.trim();
                (!p.c.is_empty()).then_some((k, p))
            })
            .collect();
    }

    let mut out = LaurentPoly::zero();
    if let Some(p) = states.get(&Vec::new()) {
        for (i, x) in p.c.iter().enumerate() {
            out.add_term(p.lo + i as i64, x.to_bigint());
        }
    }
    let out = &out * &loop_value().pow(free as u32);
    Some(match cap {
        Some(c) => out.truncate_above(c),
        None => out,
    })
}

pub(crate) fn evaluate(d: &LinkDiagram, plan: &SweepPlan, cap: Option<i64>) -> LaurentPoly {
    run::<i128>(d, plan, cap, 1).unwrap_or_else(|| {
        run::<BigInt>(d, plan, cap, BigInt::from(1)).expect("arbitrary precision cannot overflow")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn join_closes_loops() {
        let mut m = vec![1, 0, NONE, NONE];
        assert_eq!(join(&mut m, 0, 1), 1);
        assert_eq!(m[..2], [NONE, NONE]);
        let mut m = vec![1, 0, NONE];
        assert_eq!(join(&mut m, 0, 2), 0);
        assert_eq!(m, vec![NONE, 2, 1]);
        let mut m = vec![NONE];
        assert_eq!(join(&mut m, 0, 0), 1);
    }

    #[test]
    fn cycle_count() {
        assert_eq!(cycles(&[1, 0, 3, 2], &[1, 0, 3, 2]), 2);
        assert_eq!(cycles(&[1, 0, 3, 2], &[3, 2, 1, 0]), 1);
        assert_eq!(cycles(&[], &[]), 0);
    }

    #[test]
    fn plan_covers_all_crossings() {
        for d in corpus::all() {
            let plan = plan_sweep(&d.diagram);
            let mut o = plan.order.clone();
            o.sort();
            assert_eq!(o, (0..d.diagram.crossing_count()).collect::<Vec<_>>());
            assert!(plan.width <= 8, "{} width {}", d.name, plan.width);
        }
    }

    #[test]
    fn bigint_and_i128_agree() {
        let d = corpus::knot_6_2();
        let plan = plan_sweep(&d);
        assert_eq!(
            run::<i128>(&d, &plan, None, 1).unwrap(),
            run::<BigInt>(&d, &plan, None, BigInt::from(1)).unwrap()
        );
    }
}
