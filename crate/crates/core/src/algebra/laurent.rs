//! Sparse univariate Laurent polynomials over Q.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly;
use super::ring::{format_rational, parse_rational, rat, rational_to_f64, ExactRing, Rational};

/// A Laurent polynomial `sum c_k t^k` with rational coefficients.
///
/// Stored sparsely; no stored coefficient is ever zero, so structural
/// equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(rat(1))
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(rat(1), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: Rational, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// Builds from `(exponent, integer coefficient)` pairs; repeated exponents add up.
    pub fn from_int_terms(pairs: &[(i64, i64)]) -> Self {
        let mut out = Self::zero();
        for &(e, c) in pairs {
            out.add_term(e, &rat(c));
        }
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(pairs: I) -> Self {
        let mut out = Self::zero();
        for (e, c) in pairs {
            out.add_term(e, &c);
        }
        out
    }

    /// `t^shift * (c_0 + c_1 t + ...)`.
    pub fn from_dense(shift: i64, coeffs: &[Rational]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (shift + i as i64, c.clone())),
        )
    }

    pub fn add_term(&mut self, exp: i64, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// `max_exp - min_exp`, or `None` for the zero polynomial.
    pub fn span(&self) -> Option<i64> {
        Some(self.max_exp()? - self.min_exp()?)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&e| e == 0)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.values().next_back()
    }

    /// The involution `t -> t^{-1}`.
    pub fn bar(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn is_bar_symmetric(&self) -> bool {
        *self == self.bar()
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e + k, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e, c * s)).collect(),
        }
    }

    /// `f(t^k)`; `k` may be negative.
    pub fn substitute_power(&self, k: i64) -> Self {
        assert!(k != 0, "substitute_power needs a nonzero exponent");
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e * k, c.clone()))
                .collect(),
        }
    }

    /// Splits `f = t^shift * g(t)` with `g` an ordinary polynomial whose
    /// constant term is nonzero; `g` is returned low-to-high.
    pub fn cleared(&self) -> (i64, Vec<Rational>) {
        let Some(lo) = self.min_exp() else {
            return (0, Vec::new());
        };
        let hi = self.max_exp().unwrap();
        let mut dense = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (&e, c) in &self.terms {
            dense[(e - lo) as usize] = c.clone();
        }
        (lo, dense)
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        if x.is_zero() {
            assert!(
                self.min_exp().unwrap() >= 0,
                "evaluating a negative power at zero"
            );
        }
        let mut acc = Rational::zero();
        for (&e, c) in &self.terms {
            let pw = if e >= 0 {
                num_traits::pow::Pow::pow(x, e as u64)
            } else {
                num_traits::pow::Pow::pow(x.recip(), (-e) as u64)
            };
            acc += c * pw;
        }
        acc
    }

    /// Value at `t = 1`.
    pub fn eval_one(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |a, c| a + c)
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(&e, c)| z.powi(e as i32) * rational_to_f64(c))
            .sum()
    }

    pub fn derivative(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(&e, _)| e != 0)
                .map(|(&e, c)| (e - 1, c * rat(e))),
        )
    }

    /// Exact division; `None` if `divisor` does not divide `self` in `Q[t^{±1}]`.
    pub fn checked_div(&self, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (sa, a) = self.cleared();
        let (sb, b) = divisor.cleared();
        let (q, r) = poly::div_rem(&a, &b);
        if !r.is_empty() {
            return None;
        }
        Some(Self::from_dense(sa - sb, &q))
    }

    /// Greatest common divisor, normalized to be an ordinary monic polynomial
    /// with nonzero constant term (units `c t^k` are not part of a gcd).
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() && other.is_zero() {
            return Self::zero();
        }
        let g = poly::gcd(&self.cleared().1, &other.cleared().1);
        Self::from_dense(0, &g)
    }

    /// Makes the polynomial an ordinary polynomial (min exponent 0) with
    /// leading coefficient 1, returning the unit `c t^k` that was divided out.
    pub fn monic_normalize(&self) -> (Self, Rational, i64) {
        let (shift, dense) = self.cleared();
        let lc = dense
            .last()
            .cloned()
            .expect("normalizing the zero polynomial");
        let normalized: Vec<Rational> = dense.iter().map(|c| c / &lc).collect();
        (Self::from_dense(0, &normalized), lc, shift)
    }

    pub fn to_f64_terms(&self) -> Vec<(i64, f64)> {
        self.terms
            .iter()
            .map(|(&e, c)| (e, rational_to_f64(c)))
            .collect()
    }
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        LaurentPoly::one()
    }
}

impl ExactRing for LaurentPoly {
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn exact_div(&self, other: &Self) -> Self {
        self.checked_div(other)
            .unwrap_or_else(|| panic!("{other} does not divide {self}"))
    }
}

impl std::ops::Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c);
        }
        out
    }
}

impl std::ops::Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, &-c);
        }
        out
    }
}

impl std::ops::Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&ea, ca) in &self.terms {
            for (&eb, cb) in &rhs.terms {
                out.add_term(ea + eb, &(ca * cb));
            }
        }
        out
    }
}

impl std::ops::Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl std::ops::$tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::ops::Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(rat(c))
    }
}

impl From<Rational> for LaurentPoly {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl fmt::Display for LaurentPoly {
    /// Ascending exponents, e.g. `t^-1 - 1 + t`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            let var = match e {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{e}"),
            };
            if e == 0 {
                write!(f, "{}", format_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{}*{var}", format_rational(&mag))?;
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

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            map.serialize_entry(&e.to_string(), &format_rational(c))?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw: BTreeMap<String, serde_json::Value> = BTreeMap::deserialize(d)?;
        let mut out = LaurentPoly::zero();
        for (k, v) in raw {
            let e: i64 = k
                .trim()
                .parse()
                .map_err(|_| D::Error::custom(format!("bad exponent {k:?}")))?;
            let text = match &v {
                serde_json::Value::String(s) => s.clone(),
                serde_json::Value::Number(n) if n.is_i64() => n.to_string(),
                _ => return Err(D::Error::custom(format!("bad coefficient {v}"))),
            };
            let c = parse_rational(&text)
                .ok_or_else(|| D::Error::custom(format!("bad coefficient {text:?}")))?;
            out.add_term(e, &c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> LaurentPoly {
        LaurentPoly::from_int_terms(&[(-1, 1), (0, -1), (1, 1)])
    }

    #[test]
    fn canonical_form_drops_zeros() {
        let f = LaurentPoly::from_int_terms(&[(2, 1), (2, -1), (0, 3)]);
        assert_eq!(f.len(), 1);
        assert_eq!(f, LaurentPoly::from(3));
        assert!((&trefoil() - &trefoil()).is_zero());
    }

    #[test]
    fn display_is_ascending() {
        assert_eq!(trefoil().to_string(), "t^-1 - 1 + t");
        assert_eq!(LaurentPoly::one().to_string(), "1");
        let f = LaurentPoly::from_int_terms(&[(-1, -1), (0, 3), (1, -1)]);
        assert_eq!(f.to_string(), "-t^-1 + 3 - t");
    }

    #[test]
    fn json_round_trip_matches_documented_shape() {
        let json = serde_json::to_string(&trefoil()).unwrap();
        assert_eq!(json, r#"{"-1":"1","0":"-1","1":"1"}"#);
        let back: LaurentPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, trefoil());
        let half: LaurentPoly = serde_json::from_str(r#"{"3":"1/2","0":2}"#).unwrap();
        assert_eq!(half.coeff(3), super::super::ring::ratio(1, 2));
    }

    #[test]
    fn exact_division_and_gcd() {
        let a = LaurentPoly::from_int_terms(&[(0, -1), (1, 1)]); // t - 1
        let b = LaurentPoly::from_int_terms(&[(0, 1), (1, 1)]); // t + 1
        let prod = (&a * &b).shift(-3);
        assert_eq!(prod.checked_div(&a).unwrap(), b.shift(-3));
        assert!(trefoil().checked_div(&a).is_none());
        assert_eq!((&prod * &trefoil()).gcd(&(&a * &trefoil())), {
            let (g, _, _) = (&a * &trefoil()).monic_normalize();
            g
        });
    }

    #[test]
    fn evaluation() {
        assert_eq!(trefoil().eval_one(), rat(1));
        assert_eq!(trefoil().eval_rational(&rat(-1)), rat(-3));
        let z = trefoil().eval_complex(Complex64::from_polar(1.0, std::f64::consts::PI / 3.0));
        assert!(z.norm() < 1e-12);
    }
}
