//! Integer Laurent polynomials in one variable `t`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A Laurent polynomial with arbitrary-precision integer coefficients.
///
/// Stored sparsely as exponent -> coefficient; zero coefficients are never
/// stored, so the zero polynomial is the empty map.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `t`
    pub fn t() -> Self {
        Self::monomial(1, 1)
    }

    pub fn monomial(coeff: impl Into<BigInt>, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff.into());
        p
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents are summed.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// Dense constructor: `coeffs[i]` is the coefficient of `t^(low + i)`.
    pub fn from_coeffs(low: i64, coeffs: &[i64]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(i, &c)| (low + i as i64, c)))
    }

    fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Width of the exponent range, `max - min`; `None` for zero.
    pub fn span(&self) -> Option<i64> {
        Some(self.max_exp()? - self.min_exp()?)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.values().next_back()
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    /// `p(t) -> p(t^-1)`
    pub fn invert_variable(&self) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }

    /// Value at `t = 1`, the coefficient sum.
    pub fn eval_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Value at an integer point; `None` if negative exponents are present.
    pub fn eval_int(&self, t: &BigInt) -> Option<BigInt> {
        if self.min_exp().is_some_and(|e| e < 0) {
            return None;
        }
        Some(self.terms.iter().map(|(e, c)| c * num_traits::pow(t.clone(), *e as usize)).sum())
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.invert_variable()
    }

    /// Fixes the `±t^k` ambiguity of a knot's Alexander polynomial: returns the
    /// unique unit multiple `q` with `q(t) = q(t^-1)` and `q(1) = 1`.
    pub fn canonicalize_knot(&self) -> Result<Self> {
        let (lo, hi) = match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return Err(Error::NotKnotShaped("zero polynomial".into())),
        };
        if (lo + hi) % 2 != 0 {
            return Err(Error::NotKnotShaped(format!(
                "exponent range [{lo}, {hi}] has no symmetric centre"
            )));
        }
        let mut q = self.shift(-(lo + hi) / 2);
        let value = q.eval_one();
        if value == BigInt::from(-1) {
            q = -q;
        } else if !value.is_one() {
            return Err(Error::NotKnotShaped(format!("value {value} at t = 1")));
        }
        if !q.is_symmetric() {
            return Err(Error::NotKnotShaped(format!("{q} is not symmetric")));
        }
        Ok(q)
    }

    /// Fibered knots have monic Alexander polynomials.
    pub fn is_monic(&self) -> Result<bool> {
        self.leading_coeff().map(|c| c.abs().is_one()).ok_or(Error::ZeroPolynomial)
    }

    /// `self = ±t^k · other` for some `k`.
    pub fn equal_up_to_unit(&self, other: &Self) -> bool {
        match (self.min_exp(), other.min_exp()) {
            (None, None) => true,
            (Some(a), Some(b)) => {
                let s = self.shift(-a);
                let o = other.shift(-b);
                s == o || s == -o
            }
            _ => false,
        }
    }

    /// Exact division; `None` when `divisor` does not divide `self` in `Z[t, t^-1]`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let d_lo = divisor.min_exp()?;
        let d_hi = divisor.max_exp()?;
        let d_lead = divisor.terms[&d_hi].clone();
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(r_hi) = rem.max_exp() {
            let r_lo = rem.min_exp().unwrap();
            if r_hi - r_lo < d_hi - d_lo {
                return None;
            }
            let (q, r) = rem.terms[&r_hi].div_rem(&d_lead);
            if !r.is_zero() {
                return None;
            }
            let e = r_hi - d_hi;
            for (de, dc) in &divisor.terms {
                rem.add_term(de + e, -(&q * dc));
            }
            quot.add_term(e, q);
        }
        Some(quot)
    }

    /// Coefficient gcd, for content extraction.
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
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

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
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

impl fmt::Display for LaurentPoly {
    /// Lowest exponent first: `t^-1 - 1 + t`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            match *e {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    if *e == 1 {
                        f.write_str("t")?;
                    } else {
                        write!(f, "t^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

/// Serializes as `[[exp, coeff], ...]`, lowest exponent first. Coefficients
/// that do not fit in an `i64` are emitted as decimal strings.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        #[serde(untagged)]
        enum Coeff {
            Small(i64),
            Big(String),
        }
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            let coeff = c.to_i64().map(Coeff::Small).unwrap_or_else(|| Coeff::Big(c.to_string()));
            seq.serialize_element(&(e, coeff))?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(low: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_coeffs(low, c)
    }

    #[test]
    fn add_examples() {
        assert_eq!(p(0, &[-1, 1]) + LaurentPoly::one(), LaurentPoly::t());
        let q = p(-1, &[1, -1, 1]);
        assert_eq!(&q + &LaurentPoly::zero(), q);
        assert!((p(-1, &[1, -1, 1]) + p(-1, &[-1, 1, -1])).is_zero());
    }

    #[test]
    fn mul_examples() {
        assert_eq!(p(0, &[-1, 1]) * p(0, &[1, 1]), p(0, &[-1, 0, 1]));
        assert_eq!(p(0, &[1, -1, 1]) * p(0, &[1, -1, 1]), p(0, &[1, -2, 3, -2, 1]));
        let q = p(-2, &[3, 0, -1]);
        assert_eq!(&LaurentPoly::one() * &q, q);
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(p(0, &[1, -1, 1]).canonicalize_knot().unwrap(), p(-1, &[1, -1, 1]));
        assert_eq!(p(0, &[2, -3, 2]).canonicalize_knot().unwrap(), p(-1, &[2, -3, 2]));
        assert_eq!(LaurentPoly::one().canonicalize_knot().unwrap(), LaurentPoly::one());
        // sign fixed by the value at 1
        assert_eq!(p(3, &[-1, 1, -1]).canonicalize_knot().unwrap(), p(-1, &[1, -1, 1]));
    }

    #[test]
    fn canonical_rejects_non_knots() {
        assert!(p(0, &[-1, 1]).canonicalize_knot().is_err());
        assert!(p(0, &[1, 1, 1]).canonicalize_knot().is_err());
        assert!(p(0, &[1, 2]).canonicalize_knot().is_err());
        assert!(LaurentPoly::zero().canonicalize_knot().is_err());
    }

    #[test]
    fn monic() {
        assert!(p(-1, &[1, -1, 1]).is_monic().unwrap());
        assert!(!p(-1, &[2, -3, 2]).is_monic().unwrap());
        assert!(LaurentPoly::one().is_monic().unwrap());
        assert!(matches!(LaurentPoly::zero().is_monic(), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn unit_equivalence() {
        assert!(p(0, &[1, -1, 1]).equal_up_to_unit(&p(-1, &[1, -1, 1])));
        assert!(p(0, &[1, -1, 1]).equal_up_to_unit(&p(4, &[-1, 1, -1])));
        assert!(!p(0, &[1, -1, 1]).equal_up_to_unit(&p(0, &[1, -3, 1])));
        assert!(LaurentPoly::zero().equal_up_to_unit(&LaurentPoly::zero()));
        assert!(!LaurentPoly::zero().equal_up_to_unit(&LaurentPoly::one()));
    }

    #[test]
    fn exact_division() {
        let a = p(0, &[1, -1, 1]);
        let b = p(-3, &[2, -3, 2]);
        assert_eq!((&a * &b).div_exact(&b), Some(a.clone()));
        assert_eq!(p(0, &[1, 1]).div_exact(&p(0, &[2])), None);
        assert_eq!(p(0, &[1, 0, 1]).div_exact(&p(0, &[1, 1])), None);
    }

    #[test]
    fn display_low_to_high() {
        assert_eq!(p(-1, &[1, -1, 1]).to_string(), "t^-1 - 1 + t");
        assert_eq!(p(-1, &[2, -3, 2]).to_string(), "2t^-1 - 3 + 2t");
        assert_eq!(p(0, &[-1]).to_string(), "-1");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn eval_points() {
        let q = p(-1, &[1, -1, 1]);
        assert_eq!(q.eval_int(&BigInt::from(2)), None);
        assert_eq!(q.shift(1).eval_int(&BigInt::from(2)), Some(BigInt::from(3)));
        assert_eq!(q.eval_one(), BigInt::one());
    }
}
