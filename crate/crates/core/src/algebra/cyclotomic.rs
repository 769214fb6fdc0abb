//! Evaluation at roots of unity: numeric evaluation, exact norms via
//! resultants, p-regularity, and the rewriting `r(t) = P(t) / Qp(t^p)`.

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::Zero;

use super::laurent::LaurentPoly;
use super::poly;
use super::ratfun::RatFun;
use super::ring::{rat, ExactRing, Rational};

/// `e^(2 pi i k / p)`.
pub fn unit_root(k: i64, p: u64) -> Complex64 {
    assert!(p >= 1, "p must be positive");
    let k = k.rem_euclid(p as i64);
    // Exact special cases keep symmetric inputs real where they should be.
    if k == 0 {
        return Complex64::new(1.0, 0.0);
    }
    if 2 * k == p as i64 {
        return Complex64::new(-1.0, 0.0);
    }
    if 4 * k == p as i64 {
        return Complex64::new(0.0, 1.0);
    }
    if 4 * k == 3 * p as i64 {
        return Complex64::new(0.0, -1.0);
    }
    Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / p as f64)
}

/// `f(e^(2 pi i k / p))` in floating point.
pub fn eval_unit(f: &LaurentPoly, k: i64, p: u64) -> Complex64 {
    let p_i = p as i64;
    // Reduce exponents mod p first so large powers cost nothing.
    let mut acc = Complex64::zero();
    for (e, c) in f.to_f64_terms() {
        let m = (e * k).rem_euclid(p_i);
        acc += unit_root(m, p) * c;
    }
    acc
}

/// Exact value of `sum_{w^p = 1} w^m`, which is `p` if `p | m` and 0 otherwise.
pub fn root_power_sum(m: i64, p: u64) -> i64 {
    if m.rem_euclid(p as i64) == 0 {
        p as i64
    } else {
        0
    }
}

/// Exact `prod_{w^p = 1} f(w)`.
///
/// With `f = t^m g(t)` and `g` an ordinary polynomial, the product equals
/// `(prod w)^m * Res(x^p - 1, g)` and `prod w = (-1)^(p+1)`.
pub fn cyclotomic_norm(f: &LaurentPoly, p: u64) -> Rational {
    assert!(p >= 1, "p must be positive");
    if f.is_zero() {
        return Rational::zero();
    }
    let (shift, dense) = f.cleared();
    let mut xp = vec![Rational::zero(); p as usize + 1];
    xp[0] = rat(-1);
    xp[p as usize] = rat(1);
    let res = poly::resultant(&xp, &dense);
    if p.is_odd() || shift.is_even() {
        res
    } else {
        -res
    }
}

/// True iff no `p`-th root of unity is a pole of `r`.
pub fn regular_at_p(r: &RatFun, p: u64) -> bool {
    !cyclotomic_norm(r.denominator(), p).is_zero()
}

/// Rewrites `r(t) = P(t) / Qp(t^p)`; `Qp` is returned as a polynomial in its
/// own variable `s` and is monic.
///
/// `Qp(s)` is, up to a constant, `Res_z(z^p - s, q(z)) = prod_{z^p = s} q(z)`,
/// computed over `Q[s]` by the subresultant sequence. Since
/// `Qp(t^p) ∝ prod_i q(w^i t)` contains the factor `q(t)`, the division
/// producing `P` is exact.
pub fn denominator_to_tp(r: &RatFun, p: u64) -> (LaurentPoly, LaurentPoly) {
    assert!(p >= 1, "p must be positive");
    if r.is_polynomial() {
        return (r.numerator().clone(), LaurentPoly::one());
    }
    let q = r.denominator();
    let (_, q_dense) = q.cleared();
    let q_coeffs: Vec<LaurentPoly> = q_dense.into_iter().map(LaurentPoly::constant).collect();
    let mut zp = vec![LaurentPoly::zero(); p as usize + 1];
    zp[0] = -LaurentPoly::t();
    zp[p as usize] = LaurentPoly::one();
    let res = poly::resultant(&zp, &q_coeffs);
    let (qp, _, shift) = res.monic_normalize();
    debug_assert_eq!(shift, 0);
    let qp_in_t = qp.substitute_power(p as i64);
    let cofactor = qp_in_t.exact_div(q);
    (r.numerator() * &cofactor, qp)
}

/// Ramanujan sum `c_d(m) = sum over primitive d-th roots w of w^m`.
pub fn ramanujan_sum(d: u64, m: i64) -> i64 {
    let g = (m.unsigned_abs()).gcd(&d);
    let q = d / g;
    mobius(q) * (euler_phi(d) / euler_phi(q)) as i64
}

pub fn mobius(mut n: u64) -> i64 {
    let mut result = 1;
    let mut f = 2;
    while f * f <= n {
        if n % f == 0 {
            n /= f;
            if n % f == 0 {
                return 0;
            }
            result = -result;
        }
        f += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut f = 2;
    while f * f <= n {
        if n % f == 0 {
            while n % f == 0 {
                n /= f;
            }
            result -= result / f;
        }
        f += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn trefoil() -> LaurentPoly {
        LaurentPoly::from_int_terms(&[(-1, 1), (0, -1), (1, 1)])
    }

    fn brute_norm(f: &LaurentPoly, p: u64) -> Complex64 {
        (0..p as i64).map(|k| eval_unit(f, k, p)).product()
    }

    #[test]
    fn eval_unit_examples() {
        assert!((eval_unit(&trefoil(), 1, 2) - Complex64::new(-3.0, 0.0)).norm() < 1e-12);
        assert_eq!(
            eval_unit(&LaurentPoly::one(), 3, 7),
            Complex64::new(1.0, 0.0)
        );
        assert!(eval_unit(&trefoil(), 1, 6).norm() < 1e-12);
    }

    #[test]
    fn norm_examples() {
        assert_eq!(cyclotomic_norm(&trefoil(), 2), rat(-3));
        assert_eq!(cyclotomic_norm(&trefoil(), 5), rat(1));
        assert_eq!(cyclotomic_norm(&trefoil(), 6), rat(0));
        assert_eq!(cyclotomic_norm(&trefoil(), 1), rat(1));
        assert_eq!(
            cyclotomic_norm(&LaurentPoly::monomial(rat(1), 1), 2),
            rat(-1)
        );
    }

    #[test]
    fn regularity_examples() {
        let r = RatFun::new(LaurentPoly::one(), trefoil()).unwrap();
        assert!(regular_at_p(&r, 5));
        assert!(!regular_at_p(&r, 6));
        assert!(regular_at_p(&RatFun::one(), 12));
    }

    #[test]
    fn denominator_rewrite_examples() {
        let r = RatFun::new(
            LaurentPoly::one(),
            LaurentPoly::from_int_terms(&[(0, -2), (1, 1)]),
        )
        .unwrap();
        let (p2, q2) = denominator_to_tp(&r, 2);
        assert_eq!(p2, LaurentPoly::from_int_terms(&[(0, 2), (1, 1)]));
        assert_eq!(q2, LaurentPoly::from_int_terms(&[(0, -4), (1, 1)]));
        let (p3, q3) = denominator_to_tp(&r, 3);
        assert_eq!(p3, LaurentPoly::from_int_terms(&[(0, 4), (1, 2), (2, 1)]));
        assert_eq!(q3, LaurentPoly::from_int_terms(&[(0, -8), (1, 1)]));
        let c = RatFun::from_poly(LaurentPoly::from(3));
        assert_eq!(
            denominator_to_tp(&c, 5),
            (LaurentPoly::from(3), LaurentPoly::one())
        );
    }

    #[test]
    fn number_theory_helpers() {
        assert_eq!(euler_phi(200), 80);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(12), 0);
        // c_6(m) for m = 0..6 is 2, 1, -1, -2, -1, 1, 2
        let c6: Vec<i64> = (0..7).map(|m| ramanujan_sum(6, m)).collect();
        assert_eq!(c6, vec![2, 1, -1, -2, -1, 1, 2]);
        for d in 1..20u64 {
            for m in -10..10i64 {
                let direct: f64 = (0..d as i64)
                    .filter(|k| k.unsigned_abs().gcd(&d) == 1 || d == 1)
                    .map(|k| unit_root(k * m, d).re)
                    .sum();
                assert!(
                    (direct - ramanujan_sum(d, m) as f64).abs() < 1e-9,
                    "d={d} m={m}"
                );
            }
        }
    }

    fn arb_laurent() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-4i64..5, -5i64..6), 1..6)
            .prop_map(|v| LaurentPoly::from_int_terms(&v))
            .prop_filter("nonzero", |f| !f.is_zero())
    }

    proptest! {
        #[test]
        fn norm_matches_product_of_evaluations(f in arb_laurent(), p in 1u64..9) {
            let exact = crate::algebra::ring::rational_to_f64(&cyclotomic_norm(&f, p));
            let numeric = brute_norm(&f, p);
            prop_assert!(numeric.im.abs() <= 1e-9 * (1.0 + exact.abs()));
            prop_assert!((numeric.re - exact).abs() <= 1e-9 * (1.0 + exact.abs()));
        }

        #[test]
        fn rewrite_recombines_exactly(
            num in arb_laurent(),
            roots in prop::collection::vec(-3i64..4, 1..3),
            p in 1u64..6,
        ) {
            // denominators are products of (t - a), a != 1
            let mut den = LaurentPoly::one();
            for a in roots {
                let a = if a == 1 { 5 } else { a };
                den = &den * &LaurentPoly::from_int_terms(&[(0, -a), (1, 1)]);
            }
            prop_assume!(!den.is_zero());
            let r = RatFun::new(num, den).unwrap();
            let (big_p, qp) = denominator_to_tp(&r, p);
            let qp_t = qp.substitute_power(p as i64);
            prop_assert!(r.equals_fraction(&big_p, &qp_t));
        }
    }
}
