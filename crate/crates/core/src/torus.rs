//! Torus links `T(r, s)`, the closure of `(σ_1 ⋯ σ_{s-1})^r`: closed-form
//! colored Jones polynomial, its top degree, and slope data.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::cabling::{ColorVector, ColoredEngine};
use crate::corpus;
use crate::error::{Error, Result};
use crate::laurent::{quantum_integer, LaurentPoly};
use crate::skein::SkeinConfig;
use crate::slopes::{column_sums, BoundarySlope, SlopeMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TorusParams {
    pub r: i64,
    pub s: i64,
}

impl TorusParams {
    pub fn new(r: i64, s: i64) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidTorus("r must be nonzero".into()));
        }
        if s < 1 {
            return Err(Error::InvalidTorus("s must be at least 1".into()));
        }
        Ok(Self { r, s })
    }

    /// Number of components, `gcd(|r|, s)`.
    pub fn g(&self) -> i64 {
        self.r.abs().gcd(&self.s)
    }

    pub fn a(&self) -> i64 {
        self.r / self.g()
    }

    pub fn b(&self) -> i64 {
        self.s / self.g()
    }

    fn check(&self, n: &ColorVector) -> Result<()> {
        if n.len() as i64 != self.g() {
            return Err(Error::LengthMismatch { expected: self.g() as usize, got: n.len() });
        }
        Ok(())
    }
}

fn norms(n: &ColorVector) -> (i64, i64) {
    (n.total() as i64, n.square_norm() as i64)
}

/// `∏_j [N_j]`, whose coefficient of `v^{2k}` is `{g choose k}_N`.
fn binom_poly(n: &ColorVector) -> LaurentPoly {
    n.as_slice().iter().map(|&x| quantum_integer(x as i64)).product()
}

/// Coefficient of `v^{2k}` in `∏_j [N_j]`.
pub fn torus_binom(params: &TorusParams, k: i64, n: &ColorVector) -> Result<BigInt> {
    params.check(n)?;
    Ok(binom_poly(n).coeff(2 * k))
}

/// `v^{ab(|N|²-g)} Σ_k {g choose k}_N v^{-ak(bk+2)} [bk+1]`, `k` from
/// `-(|N|-g)` to `|N|-g` in steps of two.
pub fn torus_colored_jones(params: &TorusParams, n: &ColorVector) -> Result<LaurentPoly> {
    params.check(n)?;
    let (g, a, b) = (params.g(), params.a(), params.b());
    let (total, sq) = norms(n);
    let top = total - g;
    let binom = binom_poly(n);
    let mut sum = LaurentPoly::zero();
    for k in (-top..=top).step_by(2) {
        let c = binom.coeff(2 * k);
        if c.is_zero() {
            continue;
        }
        sum += &quantum_integer(b * k + 1).shift(-a * k * (b * k + 2)).scale(&c);
    }
    Ok(sum.shift(a * b * (sq - g)))
}

/// Skein-side colored Jones of the standard braid closure.
pub fn torus_skein_jones(params: &TorusParams, n: &ColorVector, cfg: &SkeinConfig) -> Result<LaurentPoly> {
    params.check(n)?;
    let d = corpus::torus_braid(params.r, params.s as usize);
    ColoredEngine::new(d, *cfg).colored_jones(n)
}

/// The unit `ε` with `torus_colored_jones = ε · J_N(braid closure)`.
pub fn torus_vs_skein_sign(params: &TorusParams, n: &ColorVector, cfg: &SkeinConfig) -> Result<i64> {
    let formula = torus_colored_jones(params, n)?;
    let skein = torus_skein_jones(params, n, cfg)?;
    if formula == skein {
        Ok(1)
    } else if formula == -&skein {
        Ok(-1)
    } else {
        Err(Error::ConventionMismatch(format!(
            "T({}, {}) at {:?}: formula {formula}, skein {skein}",
            params.r,
            params.s,
            n.as_slice()
        )))
    }
}

/// `∏_j (-1)^{N_j-1}`.
pub fn expected_sign(n: &ColorVector) -> i64 {
    if n.as_slice().iter().filter(|&&x| x % 2 == 0).count() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The formula normalized to the skein convention.
pub fn torus_colored_jones_normalized(params: &TorusParams, n: &ColorVector) -> Result<LaurentPoly> {
    Ok(torus_colored_jones(params, n)?.scale(&BigInt::from(expected_sign(n))))
}

/// One summand `c · v^shift · [m]`: its coefficient at `v^e`.
fn term_coeff(c: &BigInt, shift: i64, m: i64, e: i64) -> BigInt {
    if m == 0 {
        return BigInt::zero();
    }
    let top = 2 * m.abs() - 2;
    let rel = e - shift;
    if rel > top || rel < -top || (top - rel) % 4 != 0 {
        return BigInt::zero();
    }
    if m > 0 {
        c.clone()
    } else {
        -c
    }
}

/// Top degree of the formula by scanning down from the highest term top,
/// summing each term's coefficient at every degree until one survives.
pub fn torus_predicted_maxdeg(params: &TorusParams, n: &ColorVector) -> Result<i64> {
    params.check(n)?;
    let (g, a, b) = (params.g(), params.a(), params.b());
    let (total, sq) = norms(n);
    let range = total - g;
    let binom = binom_poly(n);
    let prefactor = a * b * (sq - g);
    let terms: Vec<(BigInt, i64, i64)> = (-range..=range)
        .step_by(2)
        .filter_map(|k| {
            let c = binom.coeff(2 * k);
            let m = b * k + 1;
            (!c.is_zero() && m != 0).then(|| (c, prefactor - a * k * (b * k + 2), m))
        })
        .collect();
    let hi = terms.iter().map(|(_, sh, m)| sh + 2 * m.abs() - 2).max();
    let lo = terms.iter().map(|(_, sh, m)| sh - 2 * m.abs() + 2).min();
    let (Some(hi), Some(lo)) = (hi, lo) else {
        return Err(Error::DegreeOfZero);
    };
    for e in (lo..=hi).rev() {
        let c: BigInt = terms.iter().map(|(c, sh, m)| term_coeff(c, *sh, *m, e)).sum();
        if !c.is_zero() {
            return Ok(e);
        }
    }
    Err(Error::DegreeOfZero)
}

/// Which closed-form case applies to `(params, N)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DegreeCase {
    /// `r < 0`: the `k = |N| - g` term.
    NegativeTopTerm,
    /// `r > 0`, `|N| - g` even: the `k = 0` term.
    PositiveEven,
    /// `r > 0`, `|N| - g` odd: the `k = -1` term.
    PositiveOdd,
    /// `r > 0`, `|N| - g` odd, `min(a, b) = 1` with `ab ≤ 2` or `b = 1`:
    /// the `k = 1` term after arranging `b = 1`.
    PositiveOddUnitB,
}

/// The closed-form top degree of each case.
///
/// For `r < 0` the `k = |N| - g` term has top degree
/// `-|a|b(|N|²-g) + |a|b(|N|-g)² + 2|a|(|N|-g) + 2b(|N|-g)`.
pub fn torus_case_maxdeg(params: &TorusParams, n: &ColorVector) -> Result<(DegreeCase, i64)> {
    params.check(n)?;
    let (g, a, b) = (params.g(), params.a(), params.b());
    let (total, sq) = norms(n);
    let range = total - g;
    if a < 0 {
        let a = a.abs();
        let d = -a * b * (sq - g) + a * b * range * range + 2 * a * range + 2 * b * range;
        return Ok((DegreeCase::NegativeTopTerm, d));
    }
    let base = a * b * (sq - g);
    if range % 2 == 0 {
        return Ok((DegreeCase::PositiveEven, base));
    }
    if b == 1 || a * b <= 2 {
        // symmetric in a and b: arrange b = 1
        let (a, b) = if b == 1 { (a, b) } else { (b, a) };
        return Ok((DegreeCase::PositiveOddUnitB, base - a * b - 2 * a + 2 * b));
    }
    Ok((DegreeCase::PositiveOdd, base + a * b - 2 * a + 2 * b - 4))
}

/// `|a|b (1 - δ_ij)` for `r < 0`, `ab · I` for `r > 0`.
pub fn torus_slope_matrix(params: &TorusParams) -> SlopeMatrix {
    let g = params.g() as usize;
    let ab = params.a().abs() * params.b();
    let rows: Vec<Vec<i64>> = (0..g)
        .map(|i| {
            (0..g)
                .map(|j| match (params.r < 0, i == j) {
                    (true, true) => 0,
                    (true, false) => ab,
                    (false, true) => ab,
                    (false, false) => 0,
                })
                .collect()
        })
        .collect();
    SlopeMatrix::from_integers(&rows).expect("symmetric by construction")
}

/// `|a|b(g-1)` on every component for `r < 0`, `ab` for `r > 0`.
pub fn torus_boundary_slope(params: &TorusParams) -> BoundarySlope {
    let g = params.g();
    let ab = params.a().abs() * params.b();
    let v = if params.r < 0 { ab * (g - 1) } else { ab };
    let out = BoundarySlope::finite((0..g).map(|_| BigRational::from_integer(BigInt::from(v))));
    debug_assert_eq!(out, column_sums(&torus_slope_matrix(params)));
    out
}
