//! Hermitian matrices over `Λ = Q[t^{±1}]`, their normalized determinant,
//! signature functions, and the cyclic substitutions `t -> T^(p)`,
//! `t -> T_t^(p)`.

mod arcs;
mod inertia;
mod matrix;

pub use arcs::root_signature_sum_by_arcs;
pub use inertia::{numeric_inertia, signature_exact, Inertia};
pub use matrix::{LambdaMatrix, RatMatrix, SymRatMatrix};

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebra::cyclotomic::{divisors, euler_phi, ramanujan_sum};
use crate::algebra::{cyclotomic_norm, eval_unit, LaurentPoly, Rational};
use crate::error::{Error, Result};

/// Largest `np` for which `varsigma_p` builds `W(T^(p))` itself.
pub const DIRECT_SUBST_LIMIT: usize = 96;

/// `δ(W) = det W / det W(1)`.
pub fn normalized_determinant(w: &LambdaMatrix) -> Result<LaurentPoly> {
    let det = w.determinant();
    let at_one = det.eval_one();
    if at_one.is_zero() {
        return Err(Error::SingularAtOne);
    }
    Ok(det.scale(&at_one.recip()))
}

/// The `p`-cycle permutation matrix: ones at `(i, i + 1 mod p)`.
pub fn cycle_matrix(p: u64) -> Result<RatMatrix> {
    if p == 0 {
        return Err(Error::ZeroP);
    }
    let p = p as usize;
    Ok(RatMatrix::from_fn(p, |i, j| {
        if j == (i + 1) % p {
            Rational::one()
        } else {
            Rational::zero()
        }
    }))
}

/// `W(T^(p))`: each entry `c t^k` becomes `c T^k`, where `T^{-k} = (T^T)^k`.
pub fn subst_cycle(w: &LambdaMatrix, p: u64) -> Result<SymRatMatrix> {
    if p == 0 {
        return Err(Error::ZeroP);
    }
    let n = w.size();
    let pu = p as usize;
    let mut out = RatMatrix::zeros(n * pu);
    for i in 0..n {
        for j in 0..n {
            for (k, c) in w.get(i, j).terms() {
                // (T^k)_{a,b} = [b = a + k mod p]
                let shift = k.rem_euclid(p as i64) as usize;
                for a in 0..pu {
                    let b = (a + shift) % pu;
                    *out.get_mut(i * pu + a, j * pu + b) += c;
                }
            }
        }
    }
    SymRatMatrix::new(out)
}

/// `T_t^(p)`: superdiagonal ones and `t` in the bottom-left corner.
pub fn twisted_cycle_matrix(p: u64) -> Result<LambdaMatrix> {
    if p == 0 {
        return Err(Error::ZeroP);
    }
    let p = p as usize;
    Ok(LambdaMatrix::from_fn(p, |i, j| {
        if i + 1 == p && j == 0 {
            LaurentPoly::t()
        } else if j == i + 1 {
            LaurentPoly::one()
        } else {
            LaurentPoly::zero()
        }
    }))
}

/// `A(T_t^(p))`. Row `a` of `(T_t)^k` has the single entry `t^⌊(a+k)/p⌋`
/// in column `(a + k) mod p`, for every integer `k`.
pub fn subst_twisted(a: &LambdaMatrix, p: u64) -> Result<LambdaMatrix> {
    if p == 0 {
        return Err(Error::ZeroP);
    }
    let n = a.size();
    let pi = p as i64;
    let pu = p as usize;
    let mut out = LambdaMatrix::zeros(n * pu);
    for i in 0..n {
        for j in 0..n {
            for (k, c) in a.get(i, j).terms() {
                for r in 0..pu {
                    let (q, col) = (r as i64 + k).div_mod_floor(&pi);
                    let (row, col) = (i * pu + r, j * pu + col as usize);
                    let mut e = out.get(row, col).clone();
                    e.add_term(q, c);
                    out.set(row, col, e);
                }
            }
        }
    }
    Ok(out)
}

/// `ς_ω(W) = σ(W(ω)) − σ(W(1))` at `ω = e^(2πik/p)`, using floating
/// Hermitian eigenvalues at `ω` and exact inertia at 1.
pub fn varsigma_at(w: &LambdaMatrix, k: i64, p: u64, tol: f64) -> Result<i64> {
    if p == 0 {
        return Err(Error::ZeroP);
    }
    if k.rem_euclid(p as i64) == 0 {
        return Ok(0);
    }
    let at_one = signature_exact(&SymRatMatrix::new(w.eval_one())?);
    let at_w =
        numeric_inertia(&w.eval_unit(k, p), tol).ok_or(Error::SingularEvaluation { k, p })?;
    if at_w.null > 0 {
        return Err(Error::SingularEvaluation { k, p });
    }
    Ok(at_w.signature() - at_one.signature())
}

/// `ς_p(W) = σ(W(T^(p))) − p σ(W(1))`, an exact integer.
///
/// Small cases use the substituted `np × np` matrix directly. Larger ones
/// sum exact arc signatures (see [`root_signature_sum_by_arcs`]), falling
/// back to the cyclotomic trace forms when a root of unity lies too close
/// to a root of `δ(W)`.
///
/// Fails with `SingularEvaluation` when `δ(W)` vanishes at a `p`-th root of unity.
pub fn varsigma_p(w: &LambdaMatrix, p: u64) -> Result<i64> {
    if p == 0 {
        return Err(Error::ZeroP);
    }
    let delta = check_p_regular(w, p)?;
    let at_one = signature_exact(&SymRatMatrix::new(w.eval_one())?).signature();
    if w.size() * p as usize <= DIRECT_SUBST_LIMIT {
        let total = signature_exact(&subst_cycle(w, p)?).signature();
        return Ok(total - p as i64 * at_one);
    }
    if let Some(s) = root_signature_sum_by_arcs(w, &delta, p) {
        return Ok(s - (p as i64 - 1) * at_one);
    }
    Ok(cyclotomic_signature(w, p)? - p as i64 * at_one)
}

/// `σ(W(T^(p)))` computed directly from the `np × np` substituted matrix.
pub fn subst_signature_direct(w: &LambdaMatrix, p: u64) -> Result<i64> {
    Ok(signature_exact(&subst_cycle(w, p)?).signature())
}

/// `σ(W(T^(p)))` as a sum over `d | p` of the signatures of the trace forms
/// `Tr_{Q(ζ_d)/Q}` of `W` over the `d`-th cyclotomic field. In the power
/// basis `x^a` these have integer entries `Σ_k w_k c_d(k + b − a)` with
/// Ramanujan sums `c_d`.
pub fn cyclotomic_signature(w: &LambdaMatrix, p: u64) -> Result<i64> {
    if p == 0 {
        return Err(Error::ZeroP);
    }
    let mut total = 0;
    for d in divisors(p) {
        let block = cyclotomic_trace_form(w, d)?;
        total += signature_exact(&block).signature();
    }
    Ok(total)
}

/// Trace form of `W` over `Q(ζ_d)`, of size `n φ(d)`.
pub fn cyclotomic_trace_form(w: &LambdaMatrix, d: u64) -> Result<SymRatMatrix> {
    let n = w.size();
    let phi = euler_phi(d) as usize;
    let mut out = RatMatrix::zeros(n * phi);
    let c: Vec<i64> = (0..d as i64).map(|m| ramanujan_sum(d, m)).collect();
    for i in 0..n {
        for j in 0..n {
            for (k, coeff) in w.get(i, j).terms() {
                for a in 0..phi {
                    for b in 0..phi {
                        let m = (k + b as i64 - a as i64).rem_euclid(d as i64) as usize;
                        if c[m] != 0 {
                            *out.get_mut(i * phi + a, j * phi + b) +=
                                coeff * Rational::from_integer(c[m].into());
                        }
                    }
                }
            }
        }
    }
    SymRatMatrix::new(out)
}

/// Errors with the root of unity where `δ(W)` is closest to vanishing if
/// `δ(W)` has a `p`-th root-of-unity zero.
pub fn check_p_regular(w: &LambdaMatrix, p: u64) -> Result<LaurentPoly> {
    let delta = normalized_determinant(w)?;
    if !cyclotomic_norm(&delta, p).is_zero() {
        return Ok(delta);
    }
    let k = (0..p as i64)
        .min_by(|&a, &b| {
            let fa = eval_unit(&delta, a, p).norm();
            let fb = eval_unit(&delta, b, p).norm();
            fa.total_cmp(&fb)
        })
        .unwrap_or(0);
    Err(Error::SingularEvaluation { k, p })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::rat;

    fn lp(pairs: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_int_terms(pairs)
    }

    fn trefoil() -> LambdaMatrix {
        LambdaMatrix::from_rows(vec![
            vec![lp(&[(0, -1)]), lp(&[(-1, -1)])],
            vec![lp(&[(1, -1)]), lp(&[(-1, 1), (0, -2), (1, 1)])],
        ])
        .unwrap()
    }

    #[test]
    fn normalized_determinant_examples() {
        assert_eq!(
            normalized_determinant(&trefoil()).unwrap(),
            lp(&[(-1, 1), (0, -1), (1, 1)])
        );
        let one = LambdaMatrix::identity(1);
        assert_eq!(normalized_determinant(&one).unwrap(), LaurentPoly::one());
        let w = LambdaMatrix::from_rows(vec![vec![lp(&[(-1, 1), (0, -1), (1, 1)])]]).unwrap();
        assert_eq!(
            normalized_determinant(&w).unwrap(),
            lp(&[(-1, 1), (0, -1), (1, 1)])
        );
        let s = LambdaMatrix::from_rows(vec![vec![lp(&[(0, -1), (1, 1)])]]).unwrap();
        assert_eq!(normalized_determinant(&s), Err(Error::SingularAtOne));
    }

    #[test]
    fn cycle_matrix_shapes() {
        let t4 = cycle_matrix(4).unwrap();
        let expected = RatMatrix::from_i64_rows(&[
            vec![0, 1, 0, 0],
            vec![0, 0, 1, 0],
            vec![0, 0, 0, 1],
            vec![1, 0, 0, 0],
        ]);
        assert_eq!(t4, expected);
        assert_eq!(
            cycle_matrix(1).unwrap(),
            RatMatrix::from_i64_rows(&[vec![1]])
        );
        assert_eq!(
            cycle_matrix(2).unwrap(),
            RatMatrix::from_i64_rows(&[vec![0, 1], vec![1, 0]])
        );
    }

    #[test]
    fn subst_cycle_examples() {
        let s = subst_cycle(&trefoil(), 2).unwrap();
        let expected = SymRatMatrix::from_i64_rows(&[
            vec![-1, 0, 0, -1],
            vec![0, -1, -1, 0],
            vec![0, -1, -2, 2],
            vec![-1, 0, 2, -2],
        ])
        .unwrap();
        assert_eq!(s, expected);
        let c = LambdaMatrix::from_rows(vec![vec![lp(&[(0, 5)])]]).unwrap();
        let s = subst_cycle(&c, 3).unwrap();
        assert_eq!(
            s,
            SymRatMatrix::from_i64_rows(&[vec![5, 0, 0], vec![0, 5, 0], vec![0, 0, 5]]).unwrap()
        );
        let w = LambdaMatrix::from_rows(vec![vec![lp(&[(-1, 1), (0, -2), (1, 1)])]]).unwrap();
        let s = subst_cycle(&w, 3).unwrap();
        assert_eq!(
            s,
            SymRatMatrix::from_i64_rows(&[vec![-2, 1, 1], vec![1, -2, 1], vec![1, 1, -2]]).unwrap()
        );
    }

    #[test]
    fn non_hermitian_substitution_is_rejected() {
        let w = LambdaMatrix::from_rows(vec![vec![lp(&[(1, 1)])]]).unwrap();
        assert!(matches!(subst_cycle(&w, 3), Err(Error::NotHermitian(_, _))));
    }

    #[test]
    fn twisted_cycle_power_is_t() {
        for p in 1..6 {
            let tt = twisted_cycle_matrix(p).unwrap();
            let mut acc = LambdaMatrix::identity(p as usize);
            for _ in 0..p {
                acc = acc.mul(&tt);
            }
            assert_eq!(
                acc,
                LambdaMatrix::identity(p as usize).map(|e| e * &LaurentPoly::t())
            );
        }
        let t4 = twisted_cycle_matrix(4).unwrap();
        assert_eq!(t4.get(3, 0), &LaurentPoly::t());
        assert_eq!(t4.get(0, 1), &LaurentPoly::one());
        assert!(t4.get(0, 0).is_zero());
    }

    #[test]
    fn subst_twisted_matches_matrix_powers() {
        let w = trefoil();
        for p in 1..5u64 {
            let tt = twisted_cycle_matrix(p).unwrap();
            let inv = tt.adjoint();
            assert_eq!(tt.mul(&inv), LambdaMatrix::identity(p as usize));
            let got = subst_twisted(&w, p).unwrap();
            assert!(got.is_hermitian());
            let pu = p as usize;
            for i in 0..2 {
                for j in 0..2 {
                    let mut block = LambdaMatrix::zeros(pu);
                    for (k, c) in w.get(i, j).terms() {
                        let base = if k >= 0 { &tt } else { &inv };
                        let mut pow = LambdaMatrix::identity(pu);
                        for _ in 0..k.unsigned_abs() {
                            pow = pow.mul(base);
                        }
                        let scaled = pow.map(|e| e.scale(c));
                        block =
                            LambdaMatrix::from_fn(pu, |a, b| block.get(a, b) + scaled.get(a, b));
                    }
                    for a in 0..pu {
                        for b in 0..pu {
                            assert_eq!(got.get(i * pu + a, j * pu + b), block.get(a, b));
                        }
                    }
                }
            }
            assert_eq!(&got.eval_one(), subst_cycle(&w, p).unwrap().matrix());
        }
    }

    #[test]
    fn varsigma_examples() {
        let w = trefoil();
        assert_eq!(varsigma_p(&w, 2), Ok(-2));
        assert_eq!(varsigma_at(&w, 1, 2, 1e-9), Ok(-2));
        assert_eq!(varsigma_p(&w, 1), Ok(0));
        assert_eq!(varsigma_p(&w, 3), Ok(-4));
        assert!(matches!(
            varsigma_p(&w, 6),
            Err(Error::SingularEvaluation { p: 6, .. })
        ));
        assert!(matches!(
            varsigma_at(&w, 1, 6, 1e-9),
            Err(Error::SingularEvaluation { k: 1, p: 6 })
        ));
    }

    #[test]
    fn cyclotomic_route_agrees_with_direct() {
        let w = trefoil();
        for p in [1u64, 2, 3, 4, 5, 7, 8, 9, 10, 12] {
            if p % 6 == 0 {
                continue;
            }
            assert_eq!(
                cyclotomic_signature(&w, p).unwrap(),
                subst_signature_direct(&w, p).unwrap(),
                "p = {p}"
            );
        }
        for p in [7u64, 11, 25, 40] {
            let delta = normalized_determinant(&w).unwrap();
            let at_one = signature_exact(&SymRatMatrix::new(w.eval_one()).unwrap()).signature();
            let arcs = root_signature_sum_by_arcs(&w, &delta, p).unwrap() + at_one;
            assert_eq!(arcs, subst_signature_direct(&w, p).unwrap(), "p = {p}");
        }
        // trace form over Q is W(1)
        assert_eq!(
            cyclotomic_trace_form(&w, 1).unwrap().matrix(),
            &w.eval_one()
        );
        assert_eq!(cyclotomic_trace_form(&w, 1).unwrap().get(0, 1), &rat(-1));
    }
}
