//! Exact polynomial carriers: univariate integer polynomials and truncated
//! multivariate series with rational coefficients.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{HikeError, Result};

/// Integer polynomial, index = degree. Trailing zeros are trimmed, so the
/// zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `z^k`; zero past the degree.
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Drops every term of degree above `max_degree`.
    pub fn truncated(&self, max_degree: usize) -> Self {
        Self::new(self.coeffs.iter().take(max_degree + 1).cloned().collect())
    }

    /// Coefficients `0..=max_degree`, zero padded.
    pub fn padded(&self, max_degree: usize) -> Vec<BigInt> {
        (0..=max_degree).map(|k| self.coeff(k)).collect()
    }

    /// `self(z)^-1` as a power series truncated at `max_degree`. Requires a
    /// constant term of `±1` so the inverse stays integral.
    pub fn inverse_series(&self, max_degree: usize) -> Result<Self> {
        let c0 = self.coeff(0);
        if !(c0.is_one() || (-&c0).is_one()) {
            return Err(HikeError::NotInvertible);
        }
        let mut inv: Vec<BigInt> = Vec::with_capacity(max_degree + 1);
        inv.push(c0.clone());
        for d in 1..=max_degree {
            let mut acc = BigInt::zero();
            for j in 1..=d.min(self.coeffs.len().saturating_sub(1)) {
                acc += &self.coeffs[j] * &inv[d - j];
            }
            // c0 is its own inverse
            inv.push(-acc * &c0);
        }
        Ok(Self::new(inv))
    }

    /// Product truncated at `max_degree`.
    pub fn mul_truncated(&self, other: &Self, max_degree: usize) -> Self {
        let mut out = vec![BigInt::zero(); max_degree + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(max_degree + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(max_degree + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// `(1 - z^len)^exponent` truncated at `max_degree`, for any integer
    /// exponent (negative exponents expand as a geometric-type series).
    pub fn cyclotomic_power(len: usize, exponent: i64, max_degree: usize) -> Self {
        assert!(len >= 1);
        let base = {
            let mut c = vec![BigInt::zero(); len + 1];
            c[0] = BigInt::one();
            c[len] = BigInt::from(-1);
            IntPoly::new(c)
        };
        let factor = if exponent >= 0 {
            base
        } else {
            base.inverse_series(max_degree).expect("constant term is 1")
        };
        let mut acc = IntPoly::one();
        for _ in 0..exponent.unsigned_abs() {
            acc = acc.mul_truncated(&factor, max_degree);
        }
        acc
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::default();
        }
        let deg = self.coeffs.len() + rhs.coeffs.len() - 2;
        self.mul_truncated(rhs, deg)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("z")?,
                (1, false) => write!(f, "{mag}z")?,
                (_, true) => write!(f, "z^{k}")?,
                (_, false) => write!(f, "{mag}z^{k}")?,
            }
        }
        Ok(())
    }
}

/// Serializes big integers as exact JSON numbers.
pub(crate) fn serialize_bigints<S: Serializer>(
    values: &[BigInt],
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    let numbers: Vec<serde_json::Number> = values
        .iter()
        .map(|c| serde_json::Number::from_str(&c.to_string()).expect("integer literal"))
        .collect();
    numbers.serialize(serializer)
}

/// JSON integer array, index = degree; the zero polynomial is `[0]`.
impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        if self.is_zero() {
            serialize_bigints(&[BigInt::zero()], serializer)
        } else {
            serialize_bigints(&self.coeffs, serializer)
        }
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let numbers = Vec::<serde_json::Number>::deserialize(deserializer)?;
        let coeffs = numbers
            .iter()
            .map(|n| BigInt::from_str(&n.to_string()).map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(IntPoly::new(coeffs))
    }
}

/// Exponent vector over the per-vertex weight variables `t_0..t_{n-1}`.
pub type Exponents = Vec<u32>;

/// Multivariate series in `vars` variables truncated at total degree `bound`.
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedMultiSeries {
    vars: usize,
    bound: usize,
    terms: BTreeMap<Exponents, BigRational>,
}

fn total_degree(e: &[u32]) -> usize {
    e.iter().map(|&x| x as usize).sum()
}

impl TruncatedMultiSeries {
    pub fn zero(vars: usize, bound: usize) -> Self {
        TruncatedMultiSeries {
            vars,
            bound,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: usize, bound: usize) -> Self {
        let mut s = Self::zero(vars, bound);
        s.add_term(vec![0; vars], BigRational::one());
        s
    }

    /// The variable `t_index`.
    pub fn variable(vars: usize, bound: usize, index: usize) -> Self {
        let mut e = vec![0; vars];
        e[index] = 1;
        let mut s = Self::zero(vars, bound);
        s.add_term(e, BigRational::one());
        s
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// Adds `coeff * t^exps`; terms above the bound are discarded.
    pub fn add_term(&mut self, exps: Exponents, coeff: BigRational) {
        assert_eq!(exps.len(), self.vars, "exponent vector length");
        if total_degree(&exps) > self.bound || coeff.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn coeff(&self, exps: &[u32]) -> BigRational {
        self.terms
            .get(exps)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_compatible(&self, other: &Self) {
        assert_eq!(self.vars, other.vars, "variable count mismatch");
    }

    pub fn scaled(&self, c: &BigRational) -> Self {
        let mut out = Self::zero(self.vars, self.bound);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    /// Part of total degree exactly `d`.
    fn homogeneous(&self, d: usize) -> Vec<(&Exponents, &BigRational)> {
        self.terms
            .iter()
            .filter(|(e, _)| total_degree(e) == d)
            .collect()
    }

    /// Multiplicative inverse up to the bound, by degree-graded substitution.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.coeff(&vec![0; self.vars]);
        if c0.is_zero() {
            return Err(HikeError::NotInvertible);
        }
        let inv_c0 = c0.recip();
        let mut inv = Self::zero(self.vars, self.bound);
        inv.add_term(vec![0; self.vars], inv_c0.clone());
        let parts: Vec<Vec<(&Exponents, &BigRational)>> =
            (0..=self.bound).map(|d| self.homogeneous(d)).collect();
        for d in 1..=self.bound {
            let mut acc = Self::zero(self.vars, self.bound);
            for (j, part) in parts.iter().enumerate().take(d + 1).skip(1) {
                let lower: Vec<(Exponents, BigRational)> = inv
                    .homogeneous(d - j)
                    .into_iter()
                    .map(|(e, v)| (e.clone(), v.clone()))
                    .collect();
                for (ea, va) in part {
                    for (eb, vb) in &lower {
                        let e: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                        acc.add_term(e, *va * vb);
                    }
                }
            }
            for (e, v) in acc.terms {
                inv.add_term(e, -v * &inv_c0);
            }
        }
        Ok(inv)
    }
}

impl Add for &TruncatedMultiSeries {
    type Output = TruncatedMultiSeries;
    fn add(self, rhs: &TruncatedMultiSeries) -> TruncatedMultiSeries {
        self.check_compatible(rhs);
        let mut out = self.clone();
        out.bound = self.bound.min(rhs.bound);
        out.terms.retain(|e, _| total_degree(e) <= out.bound);
        for (e, v) in &rhs.terms {
            out.add_term(e.clone(), v.clone());
        }
        out
    }
}

impl Neg for &TruncatedMultiSeries {
    type Output = TruncatedMultiSeries;
    fn neg(self) -> TruncatedMultiSeries {
        self.scaled(&-BigRational::one())
    }
}

impl Sub for &TruncatedMultiSeries {
    type Output = TruncatedMultiSeries;
    fn sub(self, rhs: &TruncatedMultiSeries) -> TruncatedMultiSeries {
        self + &(-rhs)
    }
}

impl Mul for &TruncatedMultiSeries {
    type Output = TruncatedMultiSeries;
    fn mul(self, rhs: &TruncatedMultiSeries) -> TruncatedMultiSeries {
        self.check_compatible(rhs);
        let mut out = TruncatedMultiSeries::zero(self.vars, self.bound.min(rhs.bound));
        for (ea, va) in &self.terms {
            let da = total_degree(ea);
            if da > out.bound {
                continue;
            }
            for (eb, vb) in &rhs.terms {
                if da + total_degree(eb) > out.bound {
                    continue;
                }
                let e: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, va * vb);
            }
        }
        out
    }
}
