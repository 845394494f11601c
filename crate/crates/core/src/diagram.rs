//! Oriented link diagrams.
//!
//! Crossings are stored in PD form: four edge ids read counterclockwise
//! starting from the incoming under-strand. The under-strand runs from
//! slot 0 to slot 2. The over-strand runs from slot 3 to slot 1 at a
//! positive crossing and from slot 1 to slot 3 at a negative one.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::dsu::UnionFind;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn from_int(x: i64) -> Option<Sign> {
        match x {
            1 => Some(Sign::Positive),
            -1 => Some(Sign::Negative),
            _ => None,
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub slots: [usize; 4],
    pub sign: Sign,
}

impl Crossing {
    /// Slot where the over-strand enters.
    pub fn over_in_slot(&self) -> usize {
        match self.sign {
            Sign::Positive => 3,
            Sign::Negative => 1,
        }
    }

    pub fn is_incoming(&self, slot: usize) -> bool {
        slot == 0 || slot == self.over_in_slot()
    }

    /// Slot pairs joined by the plus (A) smoothing.
    pub const PLUS_ARCS: [(usize, usize); 2] = [(0, 1), (2, 3)];
    /// Slot pairs joined by the minus (B) smoothing.
    pub const MINUS_ARCS: [(usize, usize); 2] = [(0, 3), (1, 2)];
}

/// Where a kink is inserted and how it looks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KinkKind {
    /// Positive crossing, strand passes under first.
    PositiveUnderFirst,
    /// Positive crossing, strand passes over first.
    PositiveOverFirst,
    NegativeUnderFirst,
    NegativeOverFirst,
}

impl KinkKind {
    pub const ALL: [KinkKind; 4] = [
        KinkKind::PositiveUnderFirst,
        KinkKind::PositiveOverFirst,
        KinkKind::NegativeUnderFirst,
        KinkKind::NegativeOverFirst,
    ];

    pub fn sign(self) -> Sign {
        match self {
            KinkKind::PositiveUnderFirst | KinkKind::PositiveOverFirst => Sign::Positive,
            _ => Sign::Negative,
        }
    }

    /// Crossing for a strand entering on `inc`, leaving on `out`, with loop edge `lp`.
    fn crossing(self, inc: usize, out: usize, lp: usize) -> Crossing {
        let slots = match self {
            KinkKind::PositiveUnderFirst => [inc, out, lp, lp],
            KinkKind::NegativeUnderFirst => [inc, lp, lp, out],
            KinkKind::PositiveOverFirst => [lp, lp, out, inc],
            KinkKind::NegativeOverFirst => [lp, inc, out, lp],
        };
        Crossing { slots, sign: self.sign() }
    }
}

/// Braid word on `strands` strands; letter `+i` is `σ_i`, `-i` is `σ_i^{-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidWord {
    pub strands: usize,
    pub letters: Vec<i64>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i64>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::InvalidBraid("need at least one strand".into()));
        }
        if let Some(l) = letters.iter().find(|l| **l == 0 || l.unsigned_abs() as usize >= strands) {
            return Err(Error::InvalidBraid(format!(
                "letter {l} out of range for {strands} strands"
            )));
        }
        Ok(Self { strands, letters })
    }

    /// `(σ_1 σ_2 ... σ_{s-1})^r`, inverted generators when `r < 0`.
    pub fn torus(r: i64, s: usize) -> Result<Self> {
        let sign = r.signum();
        let letters = (0..r.unsigned_abs())
            .flat_map(|_| (1..s as i64).map(move |i| sign * i))
            .collect();
        Self::new(s, letters)
    }

    /// Number of cycles of the underlying permutation.
    pub fn closure_components(&self) -> usize {
        let mut perm: Vec<usize> = (0..self.strands).collect();
        for l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            perm.swap(i, i + 1);
        }
        let mut seen = vec![false; self.strands];
        let mut cycles = 0;
        for start in 0..self.strands {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = perm[p];
            }
        }
        cycles
    }
}

/// An oriented link diagram with labelled components.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    edge_component: Vec<usize>,
    free_loops: Vec<usize>,
    num_components: usize,
}

/// Per-component-pair crossing counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingStats {
    pub c_plus: Vec<Vec<u64>>,
    pub c_minus: Vec<Vec<u64>>,
    pub writhe: Vec<i64>,
}

impl CrossingStats {
    pub fn num_components(&self) -> usize {
        self.writhe.len()
    }

    /// `c_ij = c⁺_ij + c⁻_ij`.
    pub fn total(&self, i: usize, j: usize) -> u64 {
        self.c_plus[i][j] + self.c_minus[i][j]
    }

    pub fn crossing_count(&self) -> u64 {
        let n = self.num_components();
        (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).map(|(i, j)| self.total(i, j)).sum()
    }
}

impl LinkDiagram {
    pub fn empty() -> Self {
        Self {
            crossings: Vec::new(),
            edge_component: Vec::new(),
            free_loops: Vec::new(),
            num_components: 0,
        }
    }

    /// `n` crossing-free circles.
    pub fn unlink(n: usize) -> Self {
        Self {
            crossings: Vec::new(),
            edge_component: Vec::new(),
            free_loops: (0..n).collect(),
            num_components: n,
        }
    }

    pub fn unknot() -> Self {
        Self::unlink(1)
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edge_component.len()
    }

    pub fn num_components(&self) -> usize {
        self.num_components
    }

    pub fn edge_component(&self, edge: usize) -> usize {
        self.edge_component[edge]
    }

    /// Component index of every crossing-free circle.
    pub fn free_loops(&self) -> &[usize] {
        &self.free_loops
    }

    pub fn is_empty(&self) -> bool {
        self.num_components == 0
    }

    /// Components of the under- and over-strand at crossing `x`.
    pub fn crossing_components(&self, x: usize) -> (usize, usize) {
        let c = &self.crossings[x];
        (self.edge_component[c.slots[0]], self.edge_component[c.slots[1]])
    }

    /// Builds a diagram from PD 4-tuples.
    ///
    /// Orientation is traced from the incoming under-strand slots. Components
    /// that never pass under fall back to consecutive edge numbering, and when
    /// that is ambiguous the optional `signs` (one `±1` per crossing) decide.
    /// Supplied signs are checked against every inferable orientation.
    pub fn from_pd(code: &[[i64; 4]], signs: Option<&[i64]>) -> Result<Self> {
        if let Some(s) = signs {
            if s.len() != code.len() {
                return Err(Error::MalformedPd(format!(
                    "{} signs for {} crossings",
                    s.len(),
                    code.len()
                )));
            }
            if let Some(bad) = s.iter().find(|x| Sign::from_int(**x).is_none()) {
                return Err(Error::MalformedPd(format!("sign {bad} is not ±1")));
            }
        }

        let mut uses: BTreeMap<i64, Vec<(usize, usize)>> = BTreeMap::new();
        for (x, tuple) in code.iter().enumerate() {
            for (s, label) in tuple.iter().enumerate() {
                uses.entry(*label).or_default().push((x, s));
            }
        }
        if let Some((label, occ)) = uses.iter().find(|(_, occ)| occ.len() != 2) {
            return Err(Error::MalformedPd(format!(
                "edge {label} used {} times, expected 2",
                occ.len()
            )));
        }
        let labels: Vec<i64> = uses.keys().copied().collect();
        let index: BTreeMap<i64, usize> = labels.iter().enumerate().map(|(i, l)| (*l, i)).collect();
        let occ: Vec<[(usize, usize); 2]> = uses.values().map(|o| [o[0], o[1]]).collect();
        let slots: Vec<[usize; 4]> = code.iter().map(|t| t.map(|l| index[&l])).collect();
        let num_edges = labels.len();

        let (edge_component, num_components) = trace_components(&slots, num_edges, |e| e as u64);

        // head[e]: occurrence index (0 or 1) where edge e enters its crossing.
        let mut head: Vec<Option<usize>> = vec![None; num_edges];
        let mut pending: Vec<Vec<usize>> = vec![Vec::new(); num_components];
        for e in 0..num_edges {
            pending[edge_component[e]].push(e);
        }

        for comp in 0..num_components {
            let edges = &pending[comp];
            // Seed: an under-strand slot gives the direction directly.
            let mut seed = None;
            'find: for &e in edges {
                for (k, &(_, s)) in occ[e].iter().enumerate() {
                    if s == 0 {
                        seed = Some((e, k));
                        break 'find;
                    }
                    if s == 2 {
                        seed = Some((e, 1 - k));
                        break 'find;
                    }
                }
            }
            if seed.is_none() {
                if let Some(signs) = signs {
                    for &e in edges {
                        for (k, &(x, s)) in occ[e].iter().enumerate() {
                            let sign = Sign::from_int(signs[x]).unwrap();
                            let over_in = match sign {
                                Sign::Positive => 3,
                                Sign::Negative => 1,
                            };
                            if s == over_in {
                                seed = Some((e, k));
                            }
                        }
                        if seed.is_some() {
                            break;
                        }
                    }
                }
            }
            if seed.is_none() {
                seed = numbering_seed(edges, &occ, &slots);
            }
            let Some((e0, k0)) = seed else {
                return Err(Error::AmbiguousOrientation { component: comp + 1 });
            };
            orient_cycle(e0, k0, &occ, &slots, &mut head)?;
        }

        let mut crossings = Vec::with_capacity(slots.len());
        for (x, sl) in slots.iter().enumerate() {
            let is_head = |slot: usize| {
                let e = sl[slot];
                let h = head[e].expect("every edge oriented");
                occ[e][h] == (x, slot)
            };
            if !is_head(0) || is_head(2) {
                return Err(Error::MalformedPd(format!(
                    "crossing {} is inconsistent with the incoming under-strand convention",
                    x + 1
                )));
            }
            let sign = match (is_head(3), is_head(1)) {
                (true, false) => Sign::Positive,
                (false, true) => Sign::Negative,
                _ => {
                    return Err(Error::MalformedPd(format!(
                        "over-strand at crossing {} is not coherently oriented",
                        x + 1
                    )))
                }
            };
            if let Some(s) = signs {
                if sign.value() != s[x] {
                    return Err(Error::MalformedPd(format!(
                        "sign annotation at crossing {} disagrees with the orientation",
                        x + 1
                    )));
                }
            }
            crossings.push(Crossing { slots: *sl, sign });
        }

        let d = Self {
            crossings,
            edge_component,
            free_loops: Vec::new(),
            num_components,
        };
        d.check_planar()?;
        Ok(d)
    }

    /// Closure of a braid, strands oriented coherently so that `σ_i` is a
    /// positive crossing.
    pub fn from_braid(w: &BraidWord) -> Self {
        let s = w.strands;
        let mut asm = Assembly::default();
        for p in 0..s {
            asm.fresh(p as u64);
        }
        let mut pos: Vec<usize> = (0..s).collect();
        for &l in &w.letters {
            let i = l.unsigned_abs() as usize - 1;
            let (in_l, in_r) = (pos[i], pos[i + 1]);
            let out_l = asm.fresh(u64::MAX);
            let out_r = asm.fresh(u64::MAX);
            let crossing = if l > 0 {
                // right-to-left strand is over
                Crossing { slots: [in_l, out_l, out_r, in_r], sign: Sign::Positive }
            } else {
                Crossing { slots: [in_r, in_l, out_l, out_r], sign: Sign::Negative }
            };
            asm.crossings.push(crossing);
            pos[i] = out_l;
            pos[i + 1] = out_r;
        }
        for (p, &e) in pos.iter().enumerate() {
            if e != p {
                asm.glue.push((e, p));
            }
        }
        asm.finish()
    }

    /// Swaps over and under at every crossing.
    pub fn mirror(&self) -> Self {
        let crossings = self
            .crossings
            .iter()
            .map(|c| {
                let [a, b, cc, d] = c.slots;
                let slots = match c.sign {
                    Sign::Positive => [d, a, b, cc],
                    Sign::Negative => [b, cc, d, a],
                };
                Crossing { slots, sign: c.sign.flipped() }
            })
            .collect();
        Self { crossings, ..self.clone() }
    }

    /// Side-by-side union; components of `other` come after those of `self`.
    pub fn distant_union(&self, other: &LinkDiagram) -> Self {
        let e_off = self.num_edges();
        let c_off = self.num_components;
        let mut crossings = self.crossings.clone();
        crossings.extend(other.crossings.iter().map(|c| Crossing {
            slots: c.slots.map(|e| e + e_off),
            sign: c.sign,
        }));
        let mut edge_component = self.edge_component.clone();
        edge_component.extend(other.edge_component.iter().map(|c| c + c_off));
        let mut free_loops = self.free_loops.clone();
        free_loops.extend(other.free_loops.iter().map(|c| c + c_off));
        Self {
            crossings,
            edge_component,
            free_loops,
            num_components: self.num_components + other.num_components,
        }
    }

    /// Inserts a Reidemeister-I kink on `edge`.
    pub fn with_kink(&self, edge: usize, kind: KinkKind) -> Self {
        let mut d = self.clone();
        let comp = self.edge_component[edge];
        let out = d.edge_component.len();
        let lp = out + 1;
        d.edge_component.push(comp);
        d.edge_component.push(comp);
        // the old head occurrence of `edge` now receives the continuation
        let (x, s) = self
            .crossings
            .iter()
            .enumerate()
            .flat_map(|(x, c)| (0..4).map(move |s| (x, s, c)))
            .find(|(_, s, c)| c.slots[*s] == edge && c.is_incoming(*s))
            .map(|(x, s, _)| (x, s))
            .expect("edge has an incoming end");
        d.crossings[x].slots[s] = out;
        d.crossings.push(kind.crossing(edge, out, lp));
        d
    }

    /// Inserts a kink into the `index`-th crossing-free circle.
    pub fn with_kink_on_free_loop(&self, index: usize, kind: KinkKind) -> Self {
        let mut d = self.clone();
        let comp = d.free_loops.remove(index);
        let e = d.edge_component.len();
        d.edge_component.push(comp);
        d.edge_component.push(comp);
        d.crossings.push(kind.crossing(e, e, e + 1));
        d
    }

    pub fn crossing_stats(&self) -> CrossingStats {
        let n = self.num_components;
        let mut c_plus = vec![vec![0u64; n]; n];
        let mut c_minus = vec![vec![0u64; n]; n];
        for x in 0..self.crossings.len() {
            let (i, j) = self.crossing_components(x);
            let m = match self.crossings[x].sign {
                Sign::Positive => &mut c_plus,
                Sign::Negative => &mut c_minus,
            };
            m[i][j] += 1;
            if i != j {
                m[j][i] += 1;
            }
        }
        let writhe = (0..n).map(|j| c_plus[j][j] as i64 - c_minus[j][j] as i64).collect();
        CrossingStats { c_plus, c_minus, writhe }
    }

    /// Checks that the rotation system is planar: every connected piece with
    /// `c` crossings must have `c + 2` faces.
    pub fn check_planar(&self) -> Result<()> {
        let n = self.crossings.len();
        if n == 0 {
            return Ok(());
        }
        let mut other = vec![[usize::MAX; 2]; self.num_edges()];
        for (x, c) in self.crossings.iter().enumerate() {
            for (s, &e) in c.slots.iter().enumerate() {
                let dart = 4 * x + s;
                if other[e][0] == usize::MAX {
                    other[e][0] = dart;
                } else {
                    other[e][1] = dart;
                }
            }
        }
        let alpha = |dart: usize| {
            let e = self.crossings[dart / 4].slots[dart % 4];
            if other[e][0] == dart {
                other[e][1]
            } else {
                other[e][0]
            }
        };
        let mut seen = vec![false; 4 * n];
        let mut faces = 0;
        for start in 0..4 * n {
            if seen[start] {
                continue;
            }
            faces += 1;
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                let t = alpha(d);
                d = 4 * (t / 4) + (t % 4 + 1) % 4;
            }
        }
        let mut uf = UnionFind::new(n);
        for e in &other {
            uf.union(e[0] / 4, e[1] / 4);
        }
        let pieces = uf.classes();
        if faces != n + 2 * pieces {
            return Err(Error::MalformedPd(format!(
                "not planar: {faces} faces for {n} crossings in {pieces} piece(s)"
            )));
        }
        Ok(())
    }

    pub(crate) fn from_parts(
        crossings: Vec<Crossing>,
        edge_component: Vec<usize>,
        free_loops: Vec<usize>,
        num_components: usize,
    ) -> Self {
        Self {
            crossings,
            edge_component,
            free_loops,
            num_components,
        }
    }
}

/// Labels each edge with a component (strands continue straight through
/// crossings), ordering components by the smallest key among their edges.
fn trace_components(
    slots: &[[usize; 4]],
    num_edges: usize,
    key: impl Fn(usize) -> u64,
) -> (Vec<usize>, usize) {
    let mut uf = UnionFind::new(num_edges);
    for s in slots {
        uf.union(s[0], s[2]);
        uf.union(s[1], s[3]);
    }
    let mut best: BTreeMap<usize, (u64, usize)> = BTreeMap::new();
    for e in 0..num_edges {
        let r = uf.find(e);
        let k = (key(e), e);
        best.entry(r).and_modify(|b| *b = (*b).min(k)).or_insert(k);
    }
    let mut order: Vec<(u64, usize, usize)> = best.iter().map(|(r, (k, e))| (*k, *e, *r)).collect();
    order.sort();
    let rank: BTreeMap<usize, usize> = order.iter().enumerate().map(|(i, t)| (t.2, i)).collect();
    let comps = (0..num_edges).map(|e| rank[&uf.find(e)]).collect();
    (comps, order.len())
}

/// Walks a component backwards from edge `e0` whose head is occurrence `k0`,
/// recording heads; fails on a contradiction.
fn orient_cycle(
    e0: usize,
    k0: usize,
    occ: &[[(usize, usize); 2]],
    slots: &[[usize; 4]],
    head: &mut [Option<usize>],
) -> Result<()> {
    let (mut e, mut k) = (e0, k0);
    loop {
        match head[e] {
            Some(h) if h == k => return Ok(()),
            Some(_) => {
                return Err(Error::MalformedPd("strand orientation is contradictory".into()));
            }
            None => head[e] = Some(k),
        }
        let (x, s) = occ[e][1 - k];
        let prev_slot = (s + 2) % 4;
        let f = slots[x][prev_slot];
        let kf = if occ[f][0] == (x, prev_slot) { 0 } else { 1 };
        e = f;
        k = kf;
    }
}

/// Orientation from consecutive numbering for a component of at least three
/// edges: the successor of the smallest edge must be the next label.
fn numbering_seed(
    edges: &[usize],
    occ: &[[(usize, usize); 2]],
    slots: &[[usize; 4]],
) -> Option<(usize, usize)> {
    if edges.len() < 3 {
        return None;
    }
    let e0 = *edges.iter().min()?;
    let e1 = *edges.iter().filter(|e| **e != e0).min()?;
    // successor of e0 if its head is occurrence k: the edge leaving opposite the head
    for k in 0..2 {
        let (x, s) = occ[e0][k];
        if slots[x][(s + 2) % 4] == e1 {
            return Some((e0, k));
        }
    }
    None
}

/// Incremental builder used by braid closure and cabling: raw edge ids may be
/// glued together; glued classes that meet no crossing become free circles.
#[derive(Default)]
pub(crate) struct Assembly {
    pub crossings: Vec<Crossing>,
    pub keys: Vec<u64>,
    pub glue: Vec<(usize, usize)>,
    pub loops: Vec<u64>,
}

impl Assembly {
    pub fn fresh(&mut self, key: u64) -> usize {
        self.keys.push(key);
        self.keys.len() - 1
    }

    pub fn finish(self) -> LinkDiagram {
        let n_raw = self.keys.len();
        let mut uf = UnionFind::new(n_raw);
        for &(a, b) in &self.glue {
            uf.union(a, b);
        }
        let mut used = vec![false; n_raw];
        for c in &self.crossings {
            for &e in &c.slots {
                used[uf.find(e)] = true;
            }
        }
        let mut class_key: BTreeMap<usize, u64> = BTreeMap::new();
        for e in 0..n_raw {
            let r = uf.find(e);
            let k = class_key.entry(r).or_insert(u64::MAX);
            *k = (*k).min(self.keys[e]);
        }
        // compact ids in order of class representative's smallest raw id
        let mut compact = vec![usize::MAX; n_raw];
        let mut next = 0;
        let mut edge_key = Vec::new();
        for e in 0..n_raw {
            let r = uf.find(e);
            if used[r] && compact[r] == usize::MAX {
                compact[r] = next;
                edge_key.push(class_key[&r]);
                next += 1;
            }
        }
        let crossings: Vec<Crossing> = self
            .crossings
            .iter()
            .map(|c| Crossing {
                slots: c.slots.map(|e| compact[uf.find(e)]),
                sign: c.sign,
            })
            .collect();
        let slots: Vec<[usize; 4]> = crossings.iter().map(|c| c.slots).collect();
        let (edge_comp, n_traced) = trace_components(&slots, next, |e| edge_key[e]);

        // merge traced components with free circles by key
        let mut comp_key = vec![u64::MAX; n_traced];
        for e in 0..next {
            comp_key[edge_comp[e]] = comp_key[edge_comp[e]].min(edge_key[e]);
        }
        let mut loop_keys: Vec<u64> = self.loops.clone();
        let mut seen_class = vec![false; n_raw];
        for e in 0..n_raw {
            let r = uf.find(e);
            if !used[r] && !seen_class[r] {
                seen_class[r] = true;
                loop_keys.push(class_key[&r]);
            }
        }
        let mut all: Vec<(u64, bool, usize)> = comp_key
            .iter()
            .enumerate()
            .map(|(i, k)| (*k, false, i))
            .chain(loop_keys.iter().enumerate().map(|(i, k)| (*k, true, i)))
            .collect();
        all.sort();
        let mut traced_rank = vec![0; n_traced];
        let mut free_loops = vec![0; loop_keys.len()];
        for (rank, (_, is_loop, i)) in all.iter().enumerate() {
            if *is_loop {
                free_loops[*i] = rank;
            } else {
                traced_rank[*i] = rank;
            }
        }
        free_loops.sort();
        let edge_component = edge_comp.iter().map(|c| traced_rank[*c]).collect();
        LinkDiagram::from_parts(crossings, edge_component, free_loops, all.len())
    }
}
