//! Betti numbers of symmetric products of a closed orientable surface.
//!
//! The Poincaré polynomial of `Sym^n(X)` for a genus-`g` surface is the
//! coefficient of `t^n` in `(1 + x t)^{2g} / ((1 - t)(1 - x^2 t))`. Everything
//! here is exact integer (or rational) arithmetic.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenfunError {
    /// The rational closed form did not reduce to an integer. Never expected
    /// for valid input; indicates an arithmetic bug.
    #[error("closed form for g={g} evaluated to the non-integer {value}")]
    IntegralityViolation { g: u32, value: String },
    #[error("n={n} is below 2g-1={bound} for g={g}; the bundle formula does not apply")]
    RangeError { g: u32, n: u64, bound: i64 },
}

/// Genus of a closed orientable surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Genus(u32);

impl Genus {
    pub const fn new(g: u32) -> Self {
        Genus(g)
    }

    pub const fn get(self) -> u32 {
        self.0
    }

    /// First Betti number `2g` of the surface.
    pub fn b1(self) -> u64 {
        2 * u64::from(self.0)
    }
}

impl From<u32> for Genus {
    fn from(g: u32) -> Self {
        Genus(g)
    }
}

impl fmt::Display for Genus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Total Betti number of a space. Serialized as a decimal string so that
/// values beyond 64 bits survive JSON round trips.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BettiSum(BigUint);

impl BettiSum {
    pub fn new(value: impl Into<BigUint>) -> Self {
        BettiSum(value.into())
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn into_inner(self) -> BigUint {
        self.0
    }
}

impl From<u64> for BettiSum {
    fn from(v: u64) -> Self {
        BettiSum(BigUint::from(v))
    }
}

impl From<BigUint> for BettiSum {
    fn from(v: BigUint) -> Self {
        BettiSum(v)
    }
}

impl PartialEq<u64> for BettiSum {
    fn eq(&self, other: &u64) -> bool {
        self.0 == BigUint::from(*other)
    }
}

impl fmt::Display for BettiSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for BettiSum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_str_radix(10))
    }
}

impl<'de> Deserialize<'de> for BettiSum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        BigUint::parse_bytes(s.as_bytes(), 10)
            .map(BettiSum)
            .ok_or_else(|| serde::de::Error::custom(format!("not a decimal integer: {s:?}")))
    }
}

/// Polynomial in the grading variable `x` with nonnegative integer
/// coefficients; `coeffs[i]` multiplies `x^i`. Trailing zeros are trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GradedPoly {
    coeffs: Vec<BigUint>,
}

impl GradedPoly {
    pub fn from_coeffs(mut coeffs: Vec<BigUint>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        GradedPoly { coeffs }
    }

    pub fn from_u64s(coeffs: &[u64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigUint::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> BigUint {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval_at_one(&self) -> BigUint {
        self.coeffs.iter().sum()
    }

    /// Alternating sum of the coefficients (the Euler characteristic when the
    /// polynomial is a Poincaré polynomial).
    pub fn eval_at_minus_one(&self) -> BigInt {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let c = BigInt::from(c.clone());
                if i % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .sum()
    }

    /// `coeff(k) == coeff(top - k)` for all `k`.
    pub fn is_palindromic_about(&self, top: usize) -> bool {
        (0..=top).all(|k| self.coeff(k) == self.coeff(top - k)) && self.coeffs.len() <= top + 1
    }

    pub fn to_u64s(&self) -> Option<Vec<u64>> {
        self.coeffs.iter().map(ToPrimitive::to_u64).collect()
    }
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (i, c.is_one()) {
                (0, _) => write!(f, "{c}")?,
                (1, true) => f.write_str("x")?,
                (1, false) => write!(f, "{c}x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{c}x^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Power series in `t` truncated past `t^order`, with polynomial
/// coefficients in `x`. Signed, because the general product formula has
/// factors with negative coefficients before cancellation.
#[derive(Debug, Clone)]
struct BivariateSeries {
    order: usize,
    // terms[a][b] = coefficient of t^a x^b
    terms: Vec<Vec<BigInt>>,
}

impl BivariateSeries {
    fn one(order: usize) -> Self {
        let mut terms = vec![Vec::new(); order + 1];
        terms[0].push(BigInt::one());
        BivariateSeries { order, terms }
    }

    /// Series with `t^k` coefficient `c_k x^{step k}`.
    fn monomial_stream(order: usize, step: usize, coeff: impl Fn(usize) -> BigInt) -> Self {
        let terms = (0..=order)
            .map(|k| {
                let mut row = vec![BigInt::zero(); step * k + 1];
                row[step * k] = coeff(k);
                row
            })
            .collect();
        BivariateSeries { order, terms }
    }

    fn mul(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut terms: Vec<Vec<BigInt>> = vec![Vec::new(); order + 1];
        for (a, lhs) in self.terms.iter().enumerate().take(order + 1) {
            if lhs.iter().all(Zero::is_zero) {
                continue;
            }
            for (b, rhs) in other.terms.iter().enumerate().take(order + 1 - a) {
                let out = &mut terms[a + b];
                if out.len() < lhs.len() + rhs.len() {
                    out.resize(lhs.len() + rhs.len(), BigInt::zero());
                }
                for (i, x) in lhs.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in rhs.iter().enumerate() {
                        if !y.is_zero() {
                            out[i + j] += x * y;
                        }
                    }
                }
            }
        }
        BivariateSeries { order, terms }
    }

    fn t_coefficient(&self, n: usize) -> Vec<BigInt> {
        self.terms.get(n).cloned().unwrap_or_default()
    }
}

fn to_graded(coeffs: Vec<BigInt>) -> GradedPoly {
    GradedPoly::from_coeffs(
        coeffs
            .into_iter()
            .map(|c| {
                c.to_biguint()
                    .expect("Poincaré polynomial coefficients are nonnegative")
            })
            .collect(),
    )
}

/// Poincaré polynomial of `Sym^n(X)` for `X` a closed surface of genus `g`.
///
/// Expands `(1 + x t)^{2g}` by binomials, multiplies by `Σ t^a` and
/// `Σ x^{2b} t^b`, and reads off the `t^n` coefficient.
pub fn poincare_sym(g: Genus, n: u32) -> GradedPoly {
    let order = n as usize;
    let b1 = BigInt::from(g.b1());
    let odd = BivariateSeries::monomial_stream(order, 1, |k| binomial(b1.clone(), BigInt::from(k)));
    let points = BivariateSeries::monomial_stream(order, 0, |_| BigInt::one());
    let top = BivariateSeries::monomial_stream(order, 2, |_| BigInt::one());
    to_graded(odd.mul(&points).mul(&top).t_coefficient(order))
}

/// Poincaré polynomial of `Sym^n(Z)` for a space `Z` with Betti numbers
/// `betti[i]`, from the general product formula
/// `Π_{i odd} (1 + x^i t)^{B_i} / Π_{i even} (1 - x^i t)^{B_i}`.
pub fn macdonald_poincare(betti: &[u64], n: u32) -> GradedPoly {
    let order = n as usize;
    let mut acc = BivariateSeries::one(order);
    for (i, &b) in betti.iter().enumerate() {
        if b == 0 {
            continue;
        }
        let factor = if i % 2 == 1 {
            // (1 + x^i t)^b
            BivariateSeries::monomial_stream(order, i, |k| {
                binomial(BigInt::from(b), BigInt::from(k))
            })
        } else {
            // (1 - x^i t)^{-b} = Σ C(b + k - 1, k) x^{ik} t^k
            BivariateSeries::monomial_stream(order, i, |k| {
                binomial(BigInt::from(b + k as u64) - 1, BigInt::from(k))
            })
        };
        acc = acc.mul(&factor);
    }
    to_graded(acc.t_coefficient(order))
}

/// Sum of the Betti numbers of `Sym^n(X)`:
/// `Σ_{k=0}^{min(n, 2g)} C(2g, k) (n - k + 1)`.
pub fn betti_sum_sym(g: Genus, n: u32) -> BettiSum {
    let b1 = g.b1();
    let n = u64::from(n);
    let total: BigUint = (0..=n.min(b1))
        .map(|k| binomial(BigUint::from(b1), BigUint::from(k)) * BigUint::from(n - k + 1))
        .sum();
    BettiSum(total)
}

/// `3 + 3g + 2g^2`.
pub fn closed_form_sym2(g: Genus) -> BettiSum {
    let g = BigUint::from(g.get());
    BettiSum(BigUint::from(3u32) + BigUint::from(3u32) * &g + BigUint::from(2u32) * &g * &g)
}

/// `4 + 14g/3 + 2g^2 + 4g^3/3`, evaluated over the rationals.
pub fn closed_form_sym3(g: Genus) -> Result<BettiSum, GenfunError> {
    let q = |num: i64, den: i64| BigRational::new(BigInt::from(num), BigInt::from(den));
    let x = BigRational::from_integer(BigInt::from(g.get()));
    let value = q(4, 1) + q(14, 3) * &x + q(2, 1) * &x * &x + q(4, 3) * &x * &x * &x;
    rational_to_sum(g, value)
}

fn rational_to_sum(g: Genus, value: BigRational) -> Result<BettiSum, GenfunError> {
    if !value.is_integer() || value.is_negative() {
        return Err(GenfunError::IntegralityViolation {
            g: g.get(),
            value: value.to_string(),
        });
    }
    let int = value.to_integer().to_biguint().expect("checked nonnegative");
    Ok(BettiSum(int))
}

/// Betti sum of a projective bundle of fibre `CP^{n-g}` over a `2g`-torus:
/// `4^g (n - g + 1)`. Only defined for `n >= 2g - 1`.
pub fn betti_sum_large_n(g: Genus, n: u64) -> Result<BettiSum, GenfunError> {
    let bound = 2 * i64::from(g.get()) - 1;
    if (n as i128) < i128::from(bound) {
        return Err(GenfunError::RangeError { g: g.get(), n, bound });
    }
    let torus = BigUint::from(4u32).pow(g.get());
    // n >= 2g - 1 >= g - 1, so n - g + 1 >= 0.
    let fibre = BigUint::from(n + 1 - u64::from(g.get()));
    Ok(BettiSum(torus * fibre))
}
