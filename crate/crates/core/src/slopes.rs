//! Slope matrices from crossing counts and from fitted degrees, state-surface
//! boundary slopes, and the column-sum comparison between them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cabling::{ColorVector, ColoredEngine};
use crate::diagram::{CrossingStats, LinkDiagram};
use crate::error::{Error, Result};
use crate::skein::{self, SkeinConfig};

pub type Rational = BigRational;

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn parse_rational<E: serde::de::Error>(s: &str) -> std::result::Result<Rational, E> {
    let r = Rational::from_str(s.trim()).map_err(|_| E::custom(format!("not a rational: {s}")))?;
    Ok(r)
}

/// Symmetric `ℓ×ℓ` matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlopeMatrix {
    entries: Vec<Vec<Rational>>,
}

impl SlopeMatrix {
    /// Fails unless square and symmetric.
    pub fn new(entries: Vec<Vec<Rational>>) -> Result<Self> {
        let n = entries.len();
        let ok = entries.iter().all(|r| r.len() == n)
            && (0..n).all(|i| (0..i).all(|j| entries[i][j] == entries[j][i]));
        if !ok {
            return Err(Error::InvalidMatrix("must be square and symmetric".into()));
        }
        Ok(Self { entries })
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect())
    }

    pub fn zeros(n: usize) -> Self {
        Self { entries: vec![vec![Rational::zero(); n]; n] }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    /// `N S Nᵗ`.
    pub fn quadratic_form(&self, n: &[i64]) -> Rational {
        let mut s = Rational::zero();
        for (i, row) in self.entries.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                s += x * BigInt::from(n[i] * n[j]);
            }
        }
        s
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &SlopeMatrix) -> SlopeMatrix {
        let (a, b) = (self.size(), other.size());
        let mut m = SlopeMatrix::zeros(a + b);
        for i in 0..a {
            for j in 0..a {
                m.entries[i][j] = self.entries[i][j].clone();
            }
        }
        for i in 0..b {
            for j in 0..b {
                m.entries[a + i][a + j] = other.entries[i][j].clone();
            }
        }
        m
    }
}

impl fmt::Display for SlopeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, row) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", cells.join(", "))?;
        }
        write!(f, ")")
    }
}

impl Serialize for SlopeMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self.entries.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SlopeMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<String>> = Vec::deserialize(d)?;
        let entries = rows
            .iter()
            .map(|r| r.iter().map(|x| parse_rational(x)).collect())
            .collect::<std::result::Result<_, _>>()?;
        SlopeMatrix::new(entries).map_err(serde::de::Error::custom)
    }
}

/// A boundary slope `p/q`, possibly `1/0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Slope {
    Finite(Rational),
    Infinite,
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Finite(r) => write!(f, "{r}"),
            Slope::Infinite => write!(f, "1/0"),
        }
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Slope {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        if s.trim() == "1/0" {
            return Ok(Slope::Infinite);
        }
        parse_rational(&s).map(Slope::Finite)
    }
}

/// One slope per boundary component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BoundarySlope {
    pub slopes: Vec<Slope>,
}

impl BoundarySlope {
    pub fn finite(values: impl IntoIterator<Item = Rational>) -> Self {
        Self { slopes: values.into_iter().map(Slope::Finite).collect() }
    }

    pub fn from_integers(values: &[i64]) -> Self {
        Self::finite(values.iter().map(|&x| rat(x, 1)))
    }

    /// Concatenation, for distant unions.
    pub fn concat(&self, other: &BoundarySlope) -> Self {
        Self { slopes: self.slopes.iter().chain(&other.slopes).cloned().collect() }
    }
}

impl fmt::Display for BoundarySlope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.slopes.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", s.join(", "))
    }
}

/// Maximal degrees sampled on one parity coset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeSamples {
    #[serde(with = "grid_serde")]
    pub grid: BTreeMap<ColorVector, i64>,
    /// `N_j mod 2` for every sample.
    pub parity_offsets: Vec<u32>,
}

mod grid_serde {
    use super::*;

    #[derive(Serialize, Deserialize)]
    struct Point {
        colors: ColorVector,
        degree: i64,
    }

    pub fn serialize<S: Serializer>(g: &BTreeMap<ColorVector, i64>, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pts: Vec<Point> = g.iter().map(|(c, d)| Point { colors: c.clone(), degree: *d }).collect();
        pts.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BTreeMap<ColorVector, i64>, D::Error> {
        let pts: Vec<Point> = Vec::deserialize(d)?;
        Ok(pts.into_iter().map(|p| (p.colors, p.degree)).collect())
    }
}

impl DegreeSamples {
    pub fn new(parity_offsets: Vec<u32>) -> Self {
        Self { grid: BTreeMap::new(), parity_offsets }
    }

    /// Adds a sample; colors outside the coset are rejected.
    pub fn insert(&mut self, n: ColorVector, degree: i64) -> Result<()> {
        if n.len() != self.parity_offsets.len() {
            return Err(Error::LengthMismatch { expected: self.parity_offsets.len(), got: n.len() });
        }
        if n.as_slice().iter().zip(&self.parity_offsets).any(|(a, p)| a % 2 != p % 2) {
            return Err(Error::InvalidColor);
        }
        self.grid.insert(n, degree);
        Ok(())
    }

    /// Samples `f` at every coset point whose entries are at most `max_color`.
    pub fn collect(
        parity_offsets: Vec<u32>,
        max_color: u32,
        f: impl Fn(&ColorVector) -> Result<i64> + Sync,
    ) -> Result<Self> {
        let points = coset_points(&parity_offsets, max_color);
        let degrees: Vec<i64> = points.par_iter().map(&f).collect::<Result<_>>()?;
        let mut s = Self::new(parity_offsets);
        for (n, d) in points.into_iter().zip(degrees) {
            s.insert(n, d)?;
        }
        Ok(s)
    }
}

/// Colors in the coset with every entry in `1..=max_color`.
pub fn coset_points(parity_offsets: &[u32], max_color: u32) -> Vec<ColorVector> {
    let mut out: Vec<Vec<u32>> = vec![Vec::new()];
    for &p in parity_offsets {
        let first = if p % 2 == 1 { 1 } else { 2 };
        let vals: Vec<u32> = (first..=max_color).step_by(2).collect();
        out = out
            .into_iter()
            .flat_map(|v| {
                vals.iter().map(move |&x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out.into_iter().map(|v| ColorVector::new(v).expect("positive")).collect()
}

/// All `2^ℓ` parity offset vectors, odd-first.
pub fn all_cosets(len: usize) -> Vec<Vec<u32>> {
    (0..1u32 << len)
        .map(|mask| (0..len).map(|j| 1 - (mask >> j & 1)).collect())
        .collect()
}

/// `S_ij = c_ij / 2` off the diagonal, `S_jj = 2c⁺_jj`.
pub fn adequate_slope_matrix(stats: &CrossingStats) -> SlopeMatrix {
    let n = stats.num_components();
    let entries = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        rat(2 * stats.c_plus[i][i] as i64, 1)
                    } else {
                        rat(stats.total(i, j) as i64, 2)
                    }
                })
                .collect()
        })
        .collect();
    SlopeMatrix { entries }
}

fn surface_slope(stats: &CrossingStats, diagonal: &[Vec<u64>]) -> BoundarySlope {
    let n = stats.num_components();
    BoundarySlope::finite((0..n).map(|j| {
        let off: u64 = (0..n).filter(|&i| i != j).map(|i| stats.total(i, j)).sum();
        rat(2 * diagonal[j][j] as i64, 1) + rat(off as i64, 2)
    }))
}

/// `2c⁺_jj + ½ Σ_{i≠j} c_ij`, the boundary slope of the all-minus state
/// surface on each component.
pub fn state_surface_slope(stats: &CrossingStats) -> BoundarySlope {
    surface_slope(stats, &stats.c_plus)
}

/// The same sum with negative self-crossings weighted instead.
pub fn state_surface_slope_c_minus(stats: &CrossingStats) -> BoundarySlope {
    surface_slope(stats, &stats.c_minus)
}

pub fn column_sums(s: &SlopeMatrix) -> BoundarySlope {
    let n = s.size();
    BoundarySlope::finite((0..n).map(|j| (0..n).map(|i| s.entries[i][j].clone()).sum()))
}

/// Second differences with step 2, `/8`, at every base point whose stencil is
/// sampled; at least one base point is required per entry and all estimates
/// must coincide.
pub fn fit_slope_matrix(samples: &DegreeSamples) -> Result<SlopeMatrix> {
    fit_slope_matrix_with(samples, 1)
}

pub fn fit_slope_matrix_with(samples: &DegreeSamples, min_base_points: usize) -> Result<SlopeMatrix> {
    let n = samples.parity_offsets.len();
    let g = &samples.grid;
    let step = |b: &ColorVector, i: usize, by: u32| -> ColorVector {
        let mut v = b.as_slice().to_vec();
        v[i] += by;
        ColorVector::new(v).expect("positive")
    };
    let mut m = SlopeMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let mut estimates: Vec<Rational> = Vec::new();
            for (b, &d0) in g {
                let diff = if i == j {
                    let (p1, p2) = (step(b, i, 2), step(b, i, 4));
                    match (g.get(&p1), g.get(&p2)) {
                        (Some(&d1), Some(&d2)) => d2 - 2 * d1 + d0,
                        _ => continue,
                    }
                } else {
                    let (pi, pj) = (step(b, i, 2), step(b, j, 2));
                    let pij = step(&pi, j, 2);
                    match (g.get(&pi), g.get(&pj), g.get(&pij)) {
                        (Some(&di), Some(&dj), Some(&dij)) => dij - di - dj + d0,
                        _ => continue,
                    }
                };
                estimates.push(rat(diff, 8));
            }
            if estimates.len() < min_base_points.max(1) {
                return Err(Error::MissingGridPoints { i, j });
            }
            if estimates.iter().any(|e| *e != estimates[0]) {
                let list: Vec<String> = estimates.iter().map(|e| e.to_string()).collect();
                return Err(Error::NonQuadratic { i, j, estimates: list.join(", ") });
            }
            m.entries[i][j] = estimates[0].clone();
            m.entries[j][i] = estimates[0].clone();
        }
    }
    Ok(m)
}

/// Smallest sampling bound that determines every entry on every coset.
pub const MIN_FIT_COLOR: u32 = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// Minus-adequate; every coset fit equals the formula matrix and its
    /// column sums equal the surface slope.
    Agree,
    Disagree,
    /// Not minus-adequate: only fitted matrices are reported.
    FitOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetFit {
    pub parity_offsets: Vec<u32>,
    pub matrix: Option<SlopeMatrix>,
    pub column_sums: Option<BoundarySlope>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifierReport {
    pub adequate: bool,
    pub max_color: u32,
    pub formula_matrix: Option<SlopeMatrix>,
    pub fitted_matrices: Vec<CosetFit>,
    /// Column sums of the fitted matrix when all cosets agree on one.
    pub column_sums: Option<BoundarySlope>,
    pub surface_slope: Option<BoundarySlope>,
    pub surface_slope_c_minus: Option<BoundarySlope>,
    pub verdict: Verdict,
}

/// Fits slope matrices on every parity coset from colored Jones degrees
/// sampled up to `max_color` (raised to [`MIN_FIT_COLOR`] when smaller), and
/// compares them with the crossing-count formula and the state surface.
pub fn verify_conjecture(d: &LinkDiagram, max_color: u32, cfg: &SkeinConfig) -> Result<VerifierReport> {
    let max_color = max_color.max(MIN_FIT_COLOR);
    let l = d.num_components();
    let stats = d.crossing_stats();
    let adequate = skein::is_minus_adequate(d);
    let engine = ColoredEngine::new(d.clone(), *cfg);

    let mut fits = Vec::new();
    for offsets in all_cosets(l) {
        let samples = DegreeSamples::collect(offsets.clone(), max_color, |n| engine.colored_jones_maxdeg(n))?;
        let fit = match fit_slope_matrix(&samples) {
            Ok(m) => CosetFit {
                parity_offsets: offsets,
                column_sums: Some(column_sums(&m)),
                matrix: Some(m),
                error: None,
            },
            Err(e @ Error::NonQuadratic { .. }) => CosetFit {
                parity_offsets: offsets,
                matrix: None,
                column_sums: None,
                error: Some(e.to_string()),
            },
            Err(e) => return Err(e),
        };
        fits.push(fit);
    }

    let first = fits[0].matrix.clone();
    let unanimous = first.is_some() && fits.iter().all(|f| f.matrix == first);
    let column = if unanimous { first.as_ref().map(column_sums) } else { None };

    let (formula, surface, literal, verdict) = if adequate {
        let formula = adequate_slope_matrix(&stats);
        let surface = state_surface_slope(&stats);
        let ok = fits.iter().all(|f| f.matrix.as_ref() == Some(&formula))
            && fits.iter().all(|f| f.column_sums.as_ref() == Some(&surface));
        let verdict = if ok { Verdict::Agree } else { Verdict::Disagree };
        (Some(formula), Some(surface), Some(state_surface_slope_c_minus(&stats)), verdict)
    } else {
        (None, None, None, Verdict::FitOnly)
    };

    Ok(VerifierReport {
        adequate,
        max_color,
        formula_matrix: formula,
        fitted_matrices: fits,
        column_sums: column,
        surface_slope: surface,
        surface_slope_c_minus: literal,
        verdict,
    })
}
