//! Exact integer Laurent polynomials in one variable.
//!
//! The same type carries polynomials in `A` (Kauffman brackets) and in
//! `v = A^{-1}` (colored Jones polynomials); the variable is contextual and
//! [`LaurentPoly::invert_variable`] converts between the two.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sparse polynomial with arbitrary-precision integer coefficients.
///
/// No stored coefficient is zero, so the zero polynomial is the empty map.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn constant<C: Into<BigInt>>(c: C) -> Self {
        Self::monomial(0, c)
    }

    /// `c * x^exp`.
    pub fn monomial<C: Into<BigInt>>(exp: i64, c: C) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I, C>(iter: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in iter {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of `x^exp` (zero when absent).
    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn add_term(&mut self, exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn maxdeg(&self) -> Result<i64> {
        self.terms.keys().next_back().copied().ok_or(Error::DegreeOfZero)
    }

    pub fn mindeg(&self) -> Result<i64> {
        self.terms.keys().next().copied().ok_or(Error::DegreeOfZero)
    }

    /// Replaces every exponent `e` by `-e`; realizes `A <-> v = A^{-1}`.
    pub fn invert_variable(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Drops every term of exponent above `cap`.
    pub fn truncate_above(&self, cap: i64) -> Self {
        Self {
            terms: self.terms.range(..=cap).map(|(e, c)| (*e, c.clone())).collect(),
        }
    }

    /// Substitutes a polynomial for the variable; exponents must be nonnegative.
    pub(crate) fn eval_poly_at(coeffs: &[BigInt], x: &LaurentPoly) -> LaurentPoly {
        // Horner
        let mut acc = LaurentPoly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * x) + &LaurentPoly::constant(c.clone());
        }
        acc
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (*e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}x")?,
                (e, true) => write!(f, "x^{e}")?,
                (e, false) => write!(f, "{mag}x^{e}")?,
            }
        }
        Ok(())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        let mut acc = LaurentPoly::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

impl std::iter::Product for LaurentPoly {
    fn product<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::one(), |acc, p| &acc * &p)
    }
}

/// Serialized as `{"exponent": "coefficient", ...}` with exponents ascending.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            map.serialize_entry(&e.to_string(), &c.to_string())?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw: BTreeMap<String, String> = BTreeMap::deserialize(deserializer)?;
        let mut p = LaurentPoly::zero();
        for (e, c) in raw {
            let e: i64 = e.trim().parse().map_err(de::Error::custom)?;
            let c: BigInt = c.trim().parse().map_err(de::Error::custom)?;
            p.add_term(e, c);
        }
        Ok(p)
    }
}

/// The loop value `-A^2 - A^{-2}`.
pub fn loop_value() -> LaurentPoly {
    LaurentPoly::from_terms([(2, -1), (-2, -1)])
}

/// Quantum integer `[m] = (v^{2m} - v^{-2m}) / (v^2 - v^{-2})` in expanded form.
pub fn quantum_integer(m: i64) -> LaurentPoly {
    let n = m.abs();
    let sign = if m < 0 { -1 } else { 1 };
    LaurentPoly::from_terms((0..n).map(|i| (2 * n - 2 - 4 * i, sign)))
}

/// Coefficients of the Chebyshev polynomial `S_n(x)`, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChebyshevCoeffs {
    pub n: usize,
    pub coeffs: Vec<BigInt>,
}

impl ChebyshevCoeffs {
    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// `S_n` evaluated at a Laurent polynomial.
    pub fn eval(&self, x: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::eval_poly_at(&self.coeffs, x)
    }
}

/// `S_n` from `S_{n+1} = x S_n - S_{n-1}`, `S_0 = 1`, `S_1 = x`.
pub fn chebyshev(n: usize) -> ChebyshevCoeffs {
    let mut prev: Vec<BigInt> = vec![BigInt::one()];
    if n == 0 {
        return ChebyshevCoeffs { n, coeffs: prev };
    }
    let mut cur: Vec<BigInt> = vec![BigInt::zero(), BigInt::one()];
    for _ in 1..n {
        let mut next = vec![BigInt::zero(); cur.len() + 1];
        for (k, c) in cur.iter().enumerate() {
            next[k + 1] += c;
        }
        for (k, c) in prev.iter().enumerate() {
            next[k] -= c;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    ChebyshevCoeffs { n, coeffs: cur }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn add_cancels_and_prunes() {
        assert!((&p(&[(2, 1)]) + &p(&[(2, -1)])).is_zero());
        assert_eq!(&p(&[(2, 1), (-2, 1)]) + &p(&[(-2, 1)]), p(&[(2, 1), (-2, 2)]));
        let q = p(&[(3, 4), (-1, -2)]);
        assert_eq!(&q + &LaurentPoly::zero(), q);
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&p(&[(1, 1), (-1, 1)]) * &p(&[(1, 1), (-1, -1)]), p(&[(2, 1), (-2, -1)]));
        let q = p(&[(5, 3), (0, -1)]);
        assert_eq!(&q * &LaurentPoly::one(), q);
        assert_eq!(loop_value().pow(2), p(&[(4, 1), (0, 2), (-4, 1)]));
    }

    #[test]
    fn invert_variable_examples() {
        assert_eq!(p(&[(6, 1), (-2, 1)]).invert_variable(), p(&[(-6, 1), (2, 1)]));
        assert_eq!(LaurentPoly::constant(5).invert_variable(), LaurentPoly::constant(5));
        let q = p(&[(4, 1), (1, -1)]);
        assert_eq!(q.invert_variable().invert_variable(), q);
    }

    #[test]
    fn degrees() {
        let q = p(&[(4, 1), (-2, -1)]);
        assert_eq!(q.maxdeg().unwrap(), 4);
        assert_eq!(q.mindeg().unwrap(), -2);
        assert_eq!(LaurentPoly::constant(7).maxdeg().unwrap(), 0);
        assert!(matches!(LaurentPoly::zero().maxdeg(), Err(Error::DegreeOfZero)));
        assert!(matches!(LaurentPoly::zero().mindeg(), Err(Error::DegreeOfZero)));
    }

    #[test]
    fn quantum_integers() {
        assert_eq!(quantum_integer(1), LaurentPoly::one());
        assert_eq!(quantum_integer(2), p(&[(2, 1), (-2, 1)]));
        assert_eq!(quantum_integer(-2), p(&[(2, -1), (-2, -1)]));
        assert!(quantum_integer(0).is_zero());
        assert_eq!(quantum_integer(3), p(&[(4, 1), (0, 1), (-4, 1)]));
    }

    #[test]
    fn chebyshev_small() {
        let c = |n| chebyshev(n).coeffs.iter().map(|x| i64::try_from(x).unwrap()).collect::<Vec<_>>();
        assert_eq!(c(0), vec![1]);
        assert_eq!(c(1), vec![0, 1]);
        assert_eq!(c(2), vec![-1, 0, 1]);
        assert_eq!(c(3), vec![0, -2, 0, 1]);
    }

    #[test]
    fn serde_ascending() {
        let q = p(&[(2, 1), (-2, 1)]);
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(s, r#"{"-2":"1","2":"1"}"#);
        let back: LaurentPoly = serde_json::from_str(r#"{"2": "1", "-2": "1", "0": "0"}"#).unwrap();
        assert_eq!(back, q);
    }

    #[test]
    fn display() {
        assert_eq!(p(&[(2, 1), (0, -3), (-2, 1)]).to_string(), "x^2 - 3 + x^-2");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }
}
