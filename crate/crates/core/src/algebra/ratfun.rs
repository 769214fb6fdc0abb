//! Rational functions in the localization of `Q[t^{±1}]` at `t = 1`.

use std::fmt;

use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::laurent::LaurentPoly;
use super::ring::Rational;
use crate::error::{Error, Result};

/// `num / den` in lowest terms.
///
/// The denominator is stored as an ordinary monic polynomial with nonzero
/// constant term, and must not vanish at `t = 1`. Any unit `c t^k` is moved
/// into the numerator, so the representation is canonical.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct RatFun {
    num: LaurentPoly,
    den: LaurentPoly,
}

#[derive(Deserialize)]
struct RawRatFun {
    num: LaurentPoly,
    #[serde(default = "LaurentPoly::one")]
    den: LaurentPoly,
}

impl<'de> Deserialize<'de> for RatFun {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawRatFun::deserialize(d)?;
        RatFun::new(raw.num, raw.den).map_err(serde::de::Error::custom)
    }
}

impl RatFun {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::NotLocal);
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_zero() || g.is_one() {
            (num, den)
        } else {
            (num.checked_div(&g).unwrap(), den.checked_div(&g).unwrap())
        };
        let (den, lc, shift) = den.monic_normalize();
        if den.eval_one().is_zero() {
            return Err(Error::NotLocal);
        }
        let num = num.scale(&lc.recip()).shift(-shift);
        Ok(Self { num, den })
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Returns the Laurent polynomial if the denominator is trivial.
    pub fn as_poly(&self) -> Option<&LaurentPoly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn bar(&self) -> Self {
        Self::new(self.num.bar(), self.den.bar()).expect("bar preserves locality")
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            num: self.num.shift(k),
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.num * &other.num, &self.den * &other.den)
            .expect("product of local functions")
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
        .expect("sum of local functions")
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.num.eval_complex(z) / self.den.eval_complex(z)
    }

    /// Exact cross-multiplication test `a/b == c/d`.
    pub fn equals_fraction(&self, num: &LaurentPoly, den: &LaurentPoly) -> bool {
        &self.num * den == &self.den * num
    }
}

impl From<LaurentPoly> for RatFun {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFun({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::rat;

    fn lp(pairs: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_int_terms(pairs)
    }

    #[test]
    fn reduces_common_factors_and_units() {
        // (t^2 - 1) t^-3 / (2 t^2 + 2 t) is the polynomial (t - 1) t^-4 / 2
        let num = lp(&[(-3, -1), (-1, 1)]);
        let den = lp(&[(1, 2), (2, 2)]);
        let r = RatFun::new(num.clone(), den.clone()).unwrap();
        assert!(r.is_polynomial());
        assert!(r.equals_fraction(&num, &den));
        // 3 t^2 - 3 t^3 vanishes at t = 1
        assert_eq!(
            RatFun::new(lp(&[(0, 2), (1, 1)]), lp(&[(2, 3), (3, -3)])),
            Err(Error::NotLocal)
        );
        let r = RatFun::new(lp(&[(0, 1)]), lp(&[(2, 4), (3, 2)])).unwrap();
        assert_eq!(r.denominator(), &lp(&[(0, 2), (1, 1)]));
        assert_eq!(
            r.numerator(),
            &LaurentPoly::monomial(crate::algebra::ring::ratio(1, 2), -2)
        );
    }

    #[test]
    fn rejects_denominators_vanishing_at_one() {
        assert_eq!(
            RatFun::new(LaurentPoly::one(), lp(&[(0, -1), (1, 1)])),
            Err(Error::NotLocal)
        );
        assert_eq!(
            RatFun::new(LaurentPoly::one(), LaurentPoly::zero()),
            Err(Error::NotLocal)
        );
    }

    #[test]
    fn bar_is_an_involution() {
        let r = RatFun::new(lp(&[(0, 1), (2, 3)]), lp(&[(0, -2), (1, 1)])).unwrap();
        assert_eq!(r.bar().bar(), r);
        let z = Complex64::from_polar(1.0, 0.7);
        let lhs = r.bar().eval_complex(z);
        let rhs = r.eval_complex(z.conj());
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn json_shape() {
        let r: RatFun =
            serde_json::from_str(r#"{"num":{"0":"1"},"den":{"0":"-2","1":"1"}}"#).unwrap();
        assert_eq!(r.numerator(), &LaurentPoly::one());
        let again: RatFun = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(again, r);
        assert_eq!(r.scale(&rat(2)).numerator(), &LaurentPoly::from(2));
    }
}
