//! Blackboard cables, Chebyshev insertions and the colored Jones polynomial.
//!
//! `J_N(v) = ∏_j ((-1)^{N_j-1} v^{N_j²-1})^{w_j} · ⟨D(S_{N-1})⟩(A)` with
//! `v = A⁻¹`, where the colored bracket expands each `S_n` over parallel
//! cables of the diagram.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagram::{Assembly, Crossing, LinkDiagram};
use crate::error::{Error, Result};
use crate::laurent::{chebyshev, LaurentPoly};
use crate::skein::{self, SkeinConfig};

/// Colors `N = (N_1, …, N_ℓ)`, every entry at least 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct ColorVector(Vec<u32>);

impl ColorVector {
    pub fn new(colors: Vec<u32>) -> Result<Self> {
        if colors.contains(&0) {
            return Err(Error::InvalidColor);
        }
        Ok(Self(colors))
    }

    pub fn ones(len: usize) -> Self {
        Self(vec![1; len])
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|N| = Σ N_j`.
    pub fn total(&self) -> u64 {
        self.0.iter().map(|&n| n as u64).sum()
    }

    /// `|N|² = Σ N_j²`.
    pub fn square_norm(&self) -> u64 {
        self.0.iter().map(|&n| (n as u64).pow(2)).sum()
    }

    /// The cable `N - 1` carrying the Chebyshev insertions.
    pub fn shifted(&self) -> CableVector {
        CableVector(self.0.iter().map(|n| n - 1).collect())
    }
}

impl TryFrom<Vec<u32>> for ColorVector {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<ColorVector> for Vec<u32> {
    fn from(c: ColorVector) -> Self {
        c.0
    }
}

/// Number of parallel copies per component; 0 deletes the component.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CableVector(pub Vec<u32>);

impl CableVector {
    pub fn ones(len: usize) -> Self {
        Self(vec![1; len])
    }
}

/// A cabled diagram together with the parent component of each copy.
#[derive(Clone, Debug)]
pub struct Cable {
    pub diagram: LinkDiagram,
    pub parent: Vec<usize>,
}

fn copy_key(component: usize, copy: u32) -> u64 {
    ((component as u64) << 32) | copy as u64
}

fn check_len(d: &LinkDiagram, len: usize) -> Result<()> {
    if len != d.num_components() {
        return Err(Error::LengthMismatch { expected: d.num_components(), got: len });
    }
    Ok(())
}

/// Blackboard-framed parallel: component `j` is replaced by `k_j` copies,
/// each crossing by a grid of crossings of the same sign. Copy `t` runs at
/// offset `t` to the right of its parent.
pub fn cable_diagram(d: &LinkDiagram, k: &CableVector) -> Result<Cable> {
    check_len(d, k.0.len())?;
    let mult = |e: usize| k.0[d.edge_component(e)];
    let mut asm = Assembly::default();
    let copies: Vec<Vec<usize>> = (0..d.num_edges())
        .map(|e| {
            let j = d.edge_component(e);
            (0..mult(e)).map(|t| asm.fresh(copy_key(j, t))).collect()
        })
        .collect();

    for (x, c) in d.crossings().iter().enumerate() {
        let [a, b, cc, dd] = c.slots;
        let (i, j) = d.crossing_components(x);
        let (kk, mm) = (k.0[i], k.0[j]);
        if kk == 0 && mm == 0 {
            continue;
        }
        if mm == 0 {
            for t in 0..kk as usize {
                asm.glue.push((copies[a][t], copies[cc][t]));
            }
            continue;
        }
        if kk == 0 {
            for u in 0..mm as usize {
                asm.glue.push((copies[dd][u], copies[b][u]));
            }
            continue;
        }
        let (kk, mm) = (kk as usize, mm as usize);
        // vertical (under) copy t is cut into mm+1 pieces, south to north
        let vert: Vec<Vec<usize>> = (0..kk)
            .map(|t| {
                let mut v = vec![copies[a][t]];
                v.extend((1..mm).map(|_| asm.fresh(copy_key(i, t as u32))));
                v.push(copies[cc][t]);
                v
            })
            .collect();
        // horizontal (over) copy u is cut into kk+1 pieces, west to east
        let horiz: Vec<Vec<usize>> = (0..mm)
            .map(|u| {
                let mut h = vec![copies[dd][u]];
                h.extend((1..kk).map(|_| asm.fresh(copy_key(j, u as u32))));
                h.push(copies[b][u]);
                h
            })
            .collect();
        for t in 0..kk {
            for u in 0..mm {
                // the over strand heads east when positive, so its right-hand
                // copies lie south; heading west they lie north
                let r = match c.sign {
                    crate::diagram::Sign::Positive => mm - 1 - u,
                    crate::diagram::Sign::Negative => u,
                };
                asm.crossings.push(Crossing {
                    slots: [vert[t][r], horiz[u][t + 1], vert[t][r + 1], horiz[u][t]],
                    sign: c.sign,
                });
            }
        }
    }
    for &j in d.free_loops() {
        for t in 0..k.0[j] {
            asm.loops.push(copy_key(j, t));
        }
    }
    let diagram = asm.finish();
    let parent: Vec<usize> = (0..d.num_components())
        .flat_map(|j| std::iter::repeat_n(j, k.0[j] as usize))
        .collect();
    debug_assert_eq!(parent.len(), diagram.num_components());
    Ok(Cable { diagram, parent })
}

/// `c(D^k) = Σ_j k_j² c_jj + Σ_{i<j} k_i k_j c_ij`.
pub fn cabled_crossing_count(d: &LinkDiagram, k: &CableVector) -> u64 {
    let st = d.crossing_stats();
    let n = st.num_components();
    let mut total = 0;
    for i in 0..n {
        for j in i..n {
            total += k.0[i] as u64 * k.0[j] as u64 * st.total(i, j);
        }
    }
    total
}

/// Cables `m` with `m_j ≤ n_j`, `m_j ≡ n_j (mod 2)`, with their Chebyshev weights.
fn expansion(n: &CableVector) -> Vec<(CableVector, BigInt)> {
    let polys: Vec<_> = n.0.iter().map(|&x| chebyshev(x as usize)).collect();
    let mut out = vec![(Vec::new(), BigInt::from(1))];
    for (j, &nj) in n.0.iter().enumerate() {
        let mut next = Vec::new();
        for (m, w) in &out {
            for mj in (nj % 2..=nj).step_by(2) {
                let c = polys[j].coeff(mj as usize);
                if c.is_zero() {
                    continue;
                }
                let mut m2 = m.clone();
                m2.push(mj);
                next.push((m2, w * &c));
            }
        }
        out = next;
    }
    out.into_iter().map(|(m, w)| (CableVector(m), w)).collect()
}

/// `((-1)^{N_j-1} v^{N_j²-1})^{w_j}` over all components, as `(sign, exponent)`.
fn framing_factor(d: &LinkDiagram, n: &ColorVector) -> (i64, i64) {
    let st = d.crossing_stats();
    let mut sign = 1;
    let mut exp = 0;
    for (j, &w) in st.writhe.iter().enumerate() {
        let nj = n.0[j] as i64;
        exp += w * (nj * nj - 1);
        if (nj - 1) * w % 2 != 0 {
            sign = -sign;
        }
    }
    (sign, exp)
}

/// Colored bracket and Jones evaluation over one diagram, memoizing the
/// bracket of every cable it has seen.
pub struct ColoredEngine {
    diagram: LinkDiagram,
    cfg: SkeinConfig,
    full: Mutex<HashMap<CableVector, LaurentPoly>>,
    low: Mutex<HashMap<CableVector, (i64, LaurentPoly)>>,
    floors: Mutex<HashMap<CableVector, i64>>,
}

impl ColoredEngine {
    pub fn new(diagram: LinkDiagram, cfg: SkeinConfig) -> Self {
        Self {
            diagram,
            cfg,
            full: Mutex::default(),
            low: Mutex::default(),
            floors: Mutex::default(),
        }
    }

    pub fn diagram(&self) -> &LinkDiagram {
        &self.diagram
    }

    pub fn config(&self) -> &SkeinConfig {
        &self.cfg
    }

    /// Bracket of the cable `m`.
    pub fn cable_bracket(&self, m: &CableVector) -> Result<LaurentPoly> {
        if let Some(p) = self.full.lock().unwrap().get(m) {
            return Ok(p.clone());
        }
        let cable = cable_diagram(&self.diagram, m)?;
        let p = skein::bracket(&cable.diagram, &self.cfg)?;
        self.full.lock().unwrap().insert(m.clone(), p.clone());
        Ok(p)
    }

    /// `⟨D(S_{n_1}, …, S_{n_ℓ})⟩` in `A`.
    pub fn colored_bracket(&self, n: &CableVector) -> Result<LaurentPoly> {
        check_len(&self.diagram, n.0.len())?;
        let terms = expansion(n);
        let parts: Vec<LaurentPoly> = terms
            .par_iter()
            .map(|(m, w)| Ok(self.cable_bracket(m)?.scale(w)))
            .collect::<Result<_>>()?;
        Ok(parts.into_iter().sum())
    }

    /// `J_N` in `v`.
    pub fn colored_jones(&self, n: &ColorVector) -> Result<LaurentPoly> {
        check_len(&self.diagram, n.len())?;
        let b = self.colored_bracket(&n.shifted())?;
        let (sign, exp) = framing_factor(&self.diagram, n);
        Ok(b.invert_variable().shift(exp).scale(&BigInt::from(sign)))
    }

    fn floor(&self, m: &CableVector) -> Result<i64> {
        if let Some(f) = self.floors.lock().unwrap().get(m) {
            return Ok(*f);
        }
        let cable = cable_diagram(&self.diagram, m)?;
        let d = &cable.diagram;
        let f = -(d.crossing_count() as i64) - 2 * skein::all_minus_state(d).circle_count as i64;
        self.floors.lock().unwrap().insert(m.clone(), f);
        Ok(f)
    }

    fn cable_lower_part(&self, m: &CableVector, cap: i64) -> Result<LaurentPoly> {
        if let Some(p) = self.full.lock().unwrap().get(m) {
            return Ok(p.truncate_above(cap));
        }
        if let Some((c, p)) = self.low.lock().unwrap().get(m) {
            if *c >= cap {
                return Ok(p.truncate_above(cap));
            }
        }
        let cable = cable_diagram(&self.diagram, m)?;
        let p = skein::bracket_lower_part(&cable.diagram, cap);
        self.low.lock().unwrap().insert(m.clone(), (cap, p.clone()));
        Ok(p)
    }

    /// Lowest degree of the colored bracket, from truncated evaluations
    /// with a widening window above the all-minus lower bound.
    pub fn colored_bracket_mindeg(&self, n: &CableVector) -> Result<i64> {
        check_len(&self.diagram, n.0.len())?;
        let terms = expansion(n);
        let floors: Vec<i64> = terms.iter().map(|(m, _)| self.floor(m)).collect::<Result<_>>()?;
        let floor = floors.iter().copied().min().unwrap_or(0);
        // no bracket term can sit above c + 2·(edges + loops) of its cable
        let ceiling = terms
            .iter()
            .map(|(m, _)| {
                let c = cabled_crossing_count(&self.diagram, m) as i64;
                3 * c + 2 * m.0.iter().map(|&x| x as i64).sum::<i64>() + 2
            })
            .max()
            .unwrap_or(0);
        let mut window = 0;
        loop {
            let cap = floor + window;
            let parts: Vec<LaurentPoly> = terms
                .par_iter()
                .zip(&floors)
                .map(|((m, w), f)| {
                    if *f > cap {
                        return Ok(LaurentPoly::zero());
                    }
                    Ok(self.cable_lower_part(m, cap)?.scale(w))
                })
                .collect::<Result<_>>()?;
            let sum: LaurentPoly = parts.into_iter().sum();
            if let Ok(d) = sum.mindeg() {
                return Ok(d);
            }
            if cap > ceiling {
                return Err(Error::DegreeOfZero);
            }
            window = if window == 0 { 4 } else { window * 2 };
        }
    }

    /// `maxdeg J_N`, from the lowest bracket degree only.
    pub fn colored_jones_maxdeg(&self, n: &ColorVector) -> Result<i64> {
        check_len(&self.diagram, n.len())?;
        let (_, exp) = framing_factor(&self.diagram, n);
        Ok(exp - self.colored_bracket_mindeg(&n.shifted())?)
    }
}

pub fn colored_bracket(d: &LinkDiagram, n: &CableVector, cfg: &SkeinConfig) -> Result<LaurentPoly> {
    ColoredEngine::new(d.clone(), *cfg).colored_bracket(n)
}

pub fn colored_jones(d: &LinkDiagram, n: &ColorVector, cfg: &SkeinConfig) -> Result<LaurentPoly> {
    ColoredEngine::new(d.clone(), *cfg).colored_jones(n)
}

/// `Σ_j w_j(N_j²-1) + c(D^{N-1}) + 2p(D^{N-1})` for a minus-adequate diagram.
pub fn adequate_maxdeg(d: &LinkDiagram, n: &ColorVector) -> Result<i64> {
    check_len(d, n.len())?;
    if !skein::is_minus_adequate(d) {
        return Err(Error::NotAdequate);
    }
    let cable = cable_diagram(d, &n.shifted())?;
    let c = cable.diagram.crossing_count() as i64;
    let p = skein::all_minus_state(&cable.diagram).circle_count as i64;
    let (_, exp) = framing_factor(d, n);
    Ok(exp + c + 2 * p)
}
