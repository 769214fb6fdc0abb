//! Θ-classes: formal combinations `Σ c f(t1) g(t2) h(t3)` of edge labelings
//! of the Θ graph, read with `t1 t2 t3 = 1`. Provides the 12 automorphisms,
//! the residue `Res_p`, and the torus average.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::ring::{format_rational, parse_rational, rat, rational_to_f64};
use crate::algebra::roots::complex_roots;
use crate::algebra::{denominator_to_tp, regular_at_p, LaurentPoly, RatFun, Rational};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ThetaTerm {
    pub f: RatFun,
    pub g: RatFun,
    pub h: RatFun,
    #[serde(with = "rational_string")]
    pub c: Rational,
}

mod rational_string {
    use super::*;

    pub fn serialize<S: serde::Serializer>(
        r: &Rational,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: serde::Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Rational, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            S(String),
            I(i64),
        }
        match Raw::deserialize(d)? {
            Raw::S(s) => parse_rational(&s)
                .ok_or_else(|| serde::de::Error::custom(format!("bad rational {s:?}"))),
            Raw::I(i) => Ok(rat(i)),
        }
    }
}

impl ThetaTerm {
    pub fn new(f: RatFun, g: RatFun, h: RatFun, c: Rational) -> Self {
        Self { f, g, h, c }
    }

    /// Monomial term `c t1^a t2^b t3^e`.
    pub fn monomial(a: i64, b: i64, e: i64, c: Rational) -> Self {
        let m = |k| RatFun::from_poly(LaurentPoly::monomial(rat(1), k));
        Self::new(m(a), m(b), m(e), c)
    }

    fn slots(&self) -> [&RatFun; 3] {
        [&self.f, &self.g, &self.h]
    }

    pub fn eval(&self, z1: Complex64, z2: Complex64) -> Complex64 {
        let z3 = (z1 * z2).inv();
        self.f.eval_complex(z1)
            * self.g.eval_complex(z2)
            * self.h.eval_complex(z3)
            * rational_to_f64(&self.c)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct ThetaClass {
    pub terms: Vec<ThetaTerm>,
}

/// An element of `Aut(Θ) = Sym3 × Sym2`: a slot permutation, optionally
/// followed by barring all three slots.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ThetaAut {
    pub perm: [usize; 3],
    pub bar: bool,
}

pub fn theta_automorphisms() -> Vec<ThetaAut> {
    const PERMS: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    PERMS
        .iter()
        .flat_map(|&perm| [false, true].map(|bar| ThetaAut { perm, bar }))
        .collect()
}

/// Result of a functional that is exact in some cases and numeric in others.
#[derive(Clone, PartialEq, Debug)]
pub enum Value {
    Exact(Rational),
    Approx(f64),
}

impl Value {
    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(r) => rational_to_f64(r),
            Value::Approx(x) => *x,
        }
    }

    pub fn exact(&self) -> Option<&Rational> {
        match self {
            Value::Exact(r) => Some(r),
            Value::Approx(_) => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(r) => write!(f, "{}", format_rational(r)),
            Value::Approx(x) => write!(f, "{x:.12e}"),
        }
    }
}

impl ThetaClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self {
            terms: vec![ThetaTerm::monomial(0, 0, 0, c)],
        }
    }

    pub fn from_terms(terms: Vec<ThetaTerm>) -> Self {
        Self { terms }
    }

    /// Whether every slot is a Laurent monomial.
    pub fn is_monomial(&self) -> bool {
        self.terms.iter().all(|t| {
            t.slots()
                .iter()
                .all(|s| s.as_poly().is_some_and(LaurentPoly::is_monomial))
        })
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms
            .iter()
            .all(|t| t.slots().iter().all(|s| s.is_polynomial()))
    }

    /// Integer coefficients everywhere: slot numerators and denominators
    /// and the term coefficients.
    pub fn is_integral(&self) -> bool {
        self.terms.iter().all(|t| {
            t.c.is_integer()
                && t.slots()
                    .iter()
                    .all(|s| s.numerator().is_integral() && s.denominator().is_integral())
        })
    }

    pub fn apply(&self, aut: ThetaAut) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|t| {
                    let s = t.slots();
                    let pick = |i: usize| {
                        let r = s[aut.perm[i]];
                        if aut.bar {
                            r.bar()
                        } else {
                            r.clone()
                        }
                    };
                    ThetaTerm::new(pick(0), pick(1), pick(2), t.c.clone())
                })
                .collect(),
        }
    }

    /// Multiplies every slot by `t`.
    pub fn push(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|t| ThetaTerm::new(t.f.shift(1), t.g.shift(1), t.h.shift(1), t.c.clone()))
                .collect(),
        }
    }

    /// Merges equal slot triples and drops zero terms; terms come out sorted.
    pub fn collect(&self) -> Self {
        let mut acc: BTreeMap<(RatFun, RatFun, RatFun), Rational> = BTreeMap::new();
        for t in &self.terms {
            if t.c.is_zero() || t.slots().iter().any(|s| s.is_zero()) {
                continue;
            }
            *acc.entry((t.f.clone(), t.g.clone(), t.h.clone()))
                .or_insert_with(Rational::zero) += &t.c;
        }
        Self {
            terms: acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|((f, g, h), c)| ThetaTerm::new(f, g, h, c))
                .collect(),
        }
    }

    /// Average over the 12 automorphisms.
    pub fn symmetrize(&self) -> Self {
        let twelfth = Rational::new(1.into(), 12.into());
        let mut terms = Vec::new();
        for aut in theta_automorphisms() {
            for t in self.apply(aut).terms {
                terms.push(ThetaTerm::new(t.f, t.g, t.h, &t.c * &twelfth));
            }
        }
        Self { terms }.collect()
    }

    pub fn eval(&self, z1: Complex64, z2: Complex64) -> Complex64 {
        self.terms.iter().map(|t| t.eval(z1, z2)).sum()
    }

    pub fn regular_at_p(&self, p: u64) -> bool {
        self.terms
            .iter()
            .all(|t| t.slots().iter().all(|s| regular_at_p(s, p)))
    }
}

/// `Σ_k a_k t^k` reduced mod `t^p − 1` into `p` buckets, after dividing by
/// the constant `Qp(1)` that the denominator takes at every `p`-th root.
fn residue_buckets(r: &RatFun, p: u64) -> Vec<Rational> {
    let (num, qp) = denominator_to_tp(r, p);
    let at_roots = qp.eval_one();
    let mut out = vec![Rational::zero(); p as usize];
    for (e, c) in num.terms() {
        out[e.rem_euclid(p as i64) as usize] += c;
    }
    if !at_roots.is_one() {
        let inv = at_roots.recip();
        for v in out.iter_mut() {
            *v *= &inv;
        }
    }
    out
}

/// `Res_p(Q) = (1/p) Σ_{ω1^p = ω2^p = 1} Q(ω1, ω2, (ω1 ω2)^{-1})`, exact.
///
/// Every slot is rewritten as `P(t) / Qp(t^p)`; on `p`-th roots the
/// denominator is the constant `Qp(1)`, and `Σ ω1^(i−k) ω2^(j−k)` is
/// `p²` when `i ≡ j ≡ k (mod p)` and 0 otherwise.
pub fn res_p_theta(q: &ThetaClass, p: u64) -> Result<Rational> {
    if p == 0 {
        return Err(Error::ZeroP);
    }
    if !q.regular_at_p(p) {
        return Err(Error::QSingularAtP { p });
    }
    let mut total = Rational::zero();
    for t in &q.terms {
        if t.c.is_zero() {
            continue;
        }
        let a = residue_buckets(&t.f, p);
        let b = residue_buckets(&t.g, p);
        let c = residue_buckets(&t.h, p);
        let mut s = Rational::zero();
        for k in 0..p as usize {
            if !a[k].is_zero() && !b[k].is_zero() && !c[k].is_zero() {
                s += &a[k] * &b[k] * &c[k];
            }
        }
        total += s * &t.c;
    }
    Ok(total * rat(p as i64))
}

/// Floating cross-check of [`res_p_theta`] by the direct double sum.
pub fn res_p_theta_numeric(q: &ThetaClass, p: u64) -> Result<f64> {
    if !q.regular_at_p(p) {
        return Err(Error::QSingularAtP { p });
    }
    let mut acc = Complex64::zero();
    for i in 0..p as i64 {
        for j in 0..p as i64 {
            let z1 = crate::algebra::cyclotomic::unit_root(i, p);
            let z2 = crate::algebra::cyclotomic::unit_root(j, p);
            acc += q.eval(z1, z2);
        }
    }
    Ok(acc.re / p as f64)
}

fn has_root_on_circle(r: &RatFun, tol: f64) -> bool {
    if r.is_polynomial() {
        return false;
    }
    let (_, dense) = r.denominator().cleared();
    let coeffs: Vec<f64> = dense.iter().map(rational_to_f64).collect();
    complex_roots(&coeffs, tol * 1e-3)
        .iter()
        .any(|z| (z.norm() - 1.0).abs() < tol.sqrt())
}

/// `∫_{S¹×S¹} Q(s1, s2, (s1 s2)^{-1}) dμ`.
///
/// Exact for Laurent slots: `Σ_k a_k b_k c_k`. Otherwise the periodic
/// trapezoid rule on an `N × N` grid, doubling `N` until two successive
/// values agree to `tol`.
pub fn torus_average(q: &ThetaClass, tol: f64) -> Result<Value> {
    if q.is_polynomial() {
        let mut total = Rational::zero();
        for t in &q.terms {
            let (a, b, c) = (t.f.numerator(), t.g.numerator(), t.h.numerator());
            let mut s = Rational::zero();
            for (k, ak) in a.terms() {
                let (bk, ck) = (b.coeff(k), c.coeff(k));
                if !bk.is_zero() && !ck.is_zero() {
                    s += ak * bk * ck;
                }
            }
            total += s * &t.c;
        }
        return Ok(Value::Exact(total));
    }
    if q.terms
        .iter()
        .any(|t| t.slots().iter().any(|s| has_root_on_circle(s, tol)))
    {
        return Err(Error::SingularOnTorus);
    }
    let grid = |n: u64| -> f64 {
        let mut acc = Complex64::zero();
        for i in 0..n as i64 {
            for j in 0..n as i64 {
                let z1 = crate::algebra::cyclotomic::unit_root(i, n);
                let z2 = crate::algebra::cyclotomic::unit_root(j, n);
                acc += q.eval(z1, z2);
            }
        }
        acc.re / (n * n) as f64
    };
    let mut n = 16u64;
    let mut prev = grid(n);
    while n < 4096 {
        n *= 2;
        let next = grid(n);
        if (next - prev).abs() <= tol {
            return Ok(Value::Approx(next));
        }
        prev = next;
    }
    Ok(Value::Approx(prev))
}

/// Functional equality: equal `Res_p` for every `p ≤ pmax` where both are
/// regular, and equal symmetrized values at `samples` random torus points.
pub fn functionally_equal<R: Rng + ?Sized>(
    x: &ThetaClass,
    y: &ThetaClass,
    pmax: u64,
    samples: usize,
    tol: f64,
    rng: &mut R,
) -> bool {
    for p in 1..=pmax {
        match (res_p_theta(x, p), res_p_theta(y, p)) {
            (Ok(a), Ok(b)) if a != b => return false,
            _ => {}
        }
    }
    let (sx, sy) = (x.symmetrize(), y.symmetrize());
    (0..samples).all(|_| {
        let z1 = Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
        let z2 = Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
        (sx.eval(z1, z2) - sy.eval(z1, z2)).norm() <= tol * (1.0 + sx.eval(z1, z2).norm())
    })
}

/// Random class of `terms` monomial terms with exponents in `[-range, range]`
/// and integer coefficients in `[-5, 5]`.
pub fn random_monomial_class<R: Rng + ?Sized>(terms: usize, range: i64, rng: &mut R) -> ThetaClass {
    ThetaClass::from_terms(
        (0..terms)
            .map(|_| {
                ThetaTerm::monomial(
                    rng.gen_range(-range..=range),
                    rng.gen_range(-range..=range),
                    rng.gen_range(-range..=range),
                    rat(rng.gen_range(-5..=5)),
                )
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn mono(a: i64, b: i64, e: i64) -> ThetaClass {
        ThetaClass::from_terms(vec![ThetaTerm::monomial(a, b, e, rat(1))])
    }

    #[test]
    fn residue_examples() {
        assert_eq!(res_p_theta(&mono(0, 0, 0), 3), Ok(rat(3)));
        assert_eq!(res_p_theta(&mono(1, 0, 0), 2), Ok(rat(0)));
        assert_eq!(res_p_theta(&mono(2, 0, 0), 2), Ok(rat(2)));
        assert_eq!(res_p_theta(&ThetaClass::zero(), 5), Ok(rat(0)));
    }

    #[test]
    fn torus_examples() {
        assert_eq!(
            torus_average(&ThetaClass::constant(rat(7)), 1e-12),
            Ok(Value::Exact(rat(7)))
        );
        assert_eq!(
            torus_average(&mono(1, 0, 0), 1e-12),
            Ok(Value::Exact(rat(0)))
        );
        assert_eq!(
            torus_average(&mono(1, 1, 1), 1e-12),
            Ok(Value::Exact(rat(1)))
        );
    }

    #[test]
    fn symmetrize_examples() {
        let c = ThetaClass::constant(rat(3));
        assert_eq!(c.symmetrize(), c);
        let s = mono(1, 0, 0).symmetrize();
        assert_eq!(s.terms.len(), 6);
        assert!(s
            .terms
            .iter()
            .all(|t| t.c == Rational::new(1.into(), 6.into())));
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for _ in 0..100 {
            let x = random_monomial_class(3, 3, &mut rng);
            assert_eq!(x.symmetrize().symmetrize(), x.symmetrize());
        }
    }

    #[test]
    fn rational_slots() {
        // 1 / (1 - t/3): geometric series, torus average of (f, 1, 1) is the t^0 coefficient
        let f = RatFun::new(
            LaurentPoly::one(),
            LaurentPoly::from_int_terms(&[(0, 3), (1, -1)]),
        )
        .unwrap();
        let one = RatFun::one();
        let q = ThetaClass::from_terms(vec![ThetaTerm::new(
            f.clone(),
            one.clone(),
            one.clone(),
            rat(1),
        )]);
        let avg = torus_average(&q, 1e-13).unwrap();
        assert!((avg.to_f64() - 1.0 / 3.0).abs() < 1e-10);
        for p in 2..7 {
            let exact = rational_to_f64(&res_p_theta(&q, p).unwrap());
            assert!((exact - res_p_theta_numeric(&q, p).unwrap()).abs() < 1e-9);
        }
        let bad = RatFun::new(
            LaurentPoly::one(),
            LaurentPoly::from_int_terms(&[(0, 1), (1, 1)]),
        )
        .unwrap();
        let q = ThetaClass::from_terms(vec![ThetaTerm::new(bad, one.clone(), one, rat(1))]);
        assert_eq!(res_p_theta(&q, 2), Err(Error::QSingularAtP { p: 2 }));
        assert!(res_p_theta(&q, 3).is_ok());
        assert_eq!(torus_average(&q, 1e-12), Err(Error::SingularOnTorus));
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"terms":[{"f":{"num":{"1":"1"}},"g":{"num":{"0":1}},"h":{"num":{"0":"1"},"den":{"0":"-3","1":"1"}},"c":"1/2"}]}"#;
        let q: ThetaClass = serde_json::from_str(text).unwrap();
        assert_eq!(q.terms[0].c, Rational::new(1.into(), 2.into()));
        let again: ThetaClass = serde_json::from_str(&serde_json::to_string(&q).unwrap()).unwrap();
        assert_eq!(again, q);
    }
}
