//! Invariants of the `p`-fold cyclic branched cover: total signature,
//! torsion order, their growth rates, and the Casson–Walker assembly.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::algebra::ring::{log_abs_bigint, ratio, rational_to_f64};
use crate::algebra::roots::unit_circle_root_angles;
use crate::algebra::{cyclotomic_norm, mahler_measure, Rational};
use crate::error::{Error, Result};
use crate::lambda::{subst_cycle, varsigma_p};
use crate::seifert::{alexander, clover_matrix, signature_at, SeifertMatrix};
use crate::theta::{res_p_theta, torus_average, ThetaClass};

pub fn is_p_regular(a: &SeifertMatrix, p: u64) -> bool {
    p >= 1 && !cyclotomic_norm(&alexander(a), p).is_zero()
}

/// `σ_p = ς_p(W)`, exact.
pub fn total_sigma_p(a: &SeifertMatrix, p: u64) -> Result<i64> {
    if p == 0 {
        return Err(Error::ZeroP);
    }
    if !is_p_regular(a, p) {
        return Err(Error::NotPRegular { p });
    }
    varsigma_p(&clover_matrix(a)?, p)
}

/// `β_p = |Π_{ω^p = 1} Δ(ω)|` by the resultant.
pub fn torsion_order(a: &SeifertMatrix, p: u64) -> Result<BigInt> {
    if p == 0 {
        return Err(Error::ZeroP);
    }
    let n = cyclotomic_norm(&alexander(a), p);
    if n.is_zero() {
        return Err(Error::NotPRegular { p });
    }
    debug_assert!(n.is_integer());
    Ok(n.numer().abs())
}

/// `|det W(T^(p))|`, the determinant oracle for [`torsion_order`].
pub fn torsion_order_oracle(a: &SeifertMatrix, p: u64) -> Result<BigInt> {
    let det = subst_cycle(&clover_matrix(a)?, p)?.determinant();
    if det.is_zero() {
        return Err(Error::NotPRegular { p });
    }
    Ok(det.numer().abs())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthRow {
    pub p: u64,
    pub regular: bool,
    /// `log β_p / p`, absent for irregular `p`.
    pub log_ratio: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthTable {
    pub rows: Vec<GrowthRow>,
    /// Mahler measure of `Δ`, the limit of the ratio column.
    pub limit: f64,
}

pub fn torsion_growth(a: &SeifertMatrix, pmax: u64) -> GrowthTable {
    torsion_growth_at(a, &(1..=pmax).collect::<Vec<_>>())
}

pub fn torsion_growth_at(a: &SeifertMatrix, ps: &[u64]) -> GrowthTable {
    let delta = alexander(a);
    let rows = ps
        .iter()
        .map(|&p| {
            let n = cyclotomic_norm(&delta, p);
            if n.is_zero() {
                GrowthRow {
                    p,
                    regular: false,
                    log_ratio: None,
                }
            } else {
                GrowthRow {
                    p,
                    regular: true,
                    log_ratio: Some(log_abs_bigint(n.numer()) / p as f64),
                }
            }
        })
        .collect();
    GrowthTable {
        rows,
        limit: mahler_measure(&delta, crate::algebra::DEFAULT_TOL),
    }
}

/// Arcs of the unit circle between consecutive roots of `Δ`, as
/// `(start, end, σ on the arc)` with angles in `[0, 2π]`.
pub fn signature_arcs(a: &SeifertMatrix, tol: f64) -> Result<Vec<(f64, f64, i64)>> {
    let delta = alexander(a);
    let mut cuts = vec![0.0];
    cuts.extend(unit_circle_root_angles(&delta, tol));
    cuts.push(std::f64::consts::TAU);
    let mut arcs = Vec::new();
    for w in cuts.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        if hi - lo <= tol {
            continue;
        }
        let mid = Complex64::from_polar(1.0, 0.5 * (lo + hi));
        arcs.push((lo, hi, signature_at(a, mid, tol)?));
    }
    Ok(arcs)
}

/// `∫ σ_s dμ(s)`: `σ` at the midpoint of each arc, weighted by arc length.
pub fn signature_average(a: &SeifertMatrix, tol: f64) -> Result<f64> {
    Ok(signature_arcs(a, tol)?
        .iter()
        .map(|&(lo, hi, s)| s as f64 * (hi - lo))
        .sum::<f64>()
        / std::f64::consts::TAU)
}

/// `λ(Σ^p) = (1/3) Res_p Q + (1/8) σ_p`, exact.
pub fn casson_walker(a: &SeifertMatrix, q: &ThetaClass, p: u64) -> Result<Rational> {
    let sigma = total_sigma_p(a, p)?;
    let res = res_p_theta(q, p)?;
    Ok(res * ratio(1, 3) + ratio(sigma, 8))
}

/// `lim λ(Σ^p)/p = (1/3) ∫ Q dμ + (1/8) ∫ σ_s dμ`.
pub fn casson_growth(a: &SeifertMatrix, q: &ThetaClass, tol: f64) -> Result<f64> {
    let avg = torus_average(q, tol)?.to_f64();
    Ok(avg / 3.0 + signature_average(a, tol)? / 8.0)
}

/// One row of a branched-cover report; invariants are absent when `p` is
/// not regular.
#[derive(Clone, Debug, PartialEq)]
pub struct BranchedReport {
    pub p: u64,
    pub regular: bool,
    pub sigma_p: Option<i64>,
    pub beta_p: Option<BigInt>,
    pub casson: Option<Rational>,
}

impl BranchedReport {
    pub fn log_beta_over_p(&self) -> Option<f64> {
        self.beta_p
            .as_ref()
            .map(|b| log_abs_bigint(b) / self.p as f64)
    }

    pub fn casson_f64(&self) -> Option<f64> {
        self.casson.as_ref().map(rational_to_f64)
    }
}

/// Computes the report for one `p`. Irregular `p` gives a flagged row, not
/// an error; a `Q` singular at `p` leaves `casson` empty.
pub fn branched_report(
    a: &SeifertMatrix,
    q: Option<&ThetaClass>,
    p: u64,
) -> Result<BranchedReport> {
    if p == 0 {
        return Err(Error::ZeroP);
    }
    if !is_p_regular(a, p) {
        return Ok(BranchedReport {
            p,
            regular: false,
            sigma_p: None,
            beta_p: None,
            casson: None,
        });
    }
    let sigma = total_sigma_p(a, p)?;
    let beta = torsion_order(a, p)?;
    let casson = match q {
        Some(q) => res_p_theta(q, p)
            .ok()
            .map(|r| r * ratio(1, 3) + ratio(sigma, 8)),
        None => None,
    };
    Ok(BranchedReport {
        p,
        regular: true,
        sigma_p: Some(sigma),
        beta_p: Some(beta),
        casson,
    })
}

/// `Σ_{k=1}^{p-1} σ_{ω^k}` from Tristram–Levine signatures.
pub fn sigma_p_from_roots(a: &SeifertMatrix, p: u64, tol: f64) -> Result<i64> {
    let mut s = 0;
    for k in 1..p as i64 {
        s += crate::seifert::signature_function(a, k, p, tol)?;
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::rat;
    use crate::seifert::{figure_eight, trefoil};

    #[test]
    fn regularity() {
        assert!(is_p_regular(&trefoil(), 5));
        assert!(!is_p_regular(&trefoil(), 6));
        assert!(is_p_regular(&SeifertMatrix::empty(), 6));
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(total_sigma_p(&trefoil(), 2), Ok(-2));
        assert_eq!(total_sigma_p(&trefoil(), 1), Ok(0));
        assert_eq!(total_sigma_p(&trefoil(), 3), Ok(-4));
        assert_eq!(
            total_sigma_p(&trefoil(), 6),
            Err(Error::NotPRegular { p: 6 })
        );
        assert_eq!(total_sigma_p(&SeifertMatrix::empty(), 4), Ok(0));
    }

    #[test]
    fn torsion_examples() {
        assert_eq!(torsion_order(&trefoil(), 2), Ok(BigInt::from(3)));
        assert_eq!(torsion_order(&trefoil(), 5), Ok(BigInt::from(1)));
        assert_eq!(torsion_order(&trefoil(), 3), Ok(BigInt::from(4)));
        assert_eq!(torsion_order(&trefoil(), 1), Ok(BigInt::from(1)));
        for p in 1..9 {
            assert_eq!(
                torsion_order(&figure_eight(), p),
                torsion_order_oracle(&figure_eight(), p)
            );
        }
    }

    #[test]
    fn growth_and_averages() {
        let t = torsion_growth(&SeifertMatrix::empty(), 10);
        assert!(t.rows.iter().all(|r| r.log_ratio == Some(0.0)));
        let t = torsion_growth(&trefoil(), 12);
        assert!(!t.rows[5].regular && !t.rows[11].regular);
        assert!((signature_average(&trefoil(), 1e-9).unwrap() + 4.0 / 3.0).abs() < 1e-12);
        assert_eq!(signature_average(&SeifertMatrix::empty(), 1e-9), Ok(0.0));
        assert_eq!(signature_average(&figure_eight(), 1e-9), Ok(0.0));
    }

    #[test]
    fn casson_examples() {
        let zero = ThetaClass::zero();
        assert_eq!(casson_walker(&trefoil(), &zero, 2), Ok(ratio(-1, 4)));
        assert_eq!(casson_walker(&figure_eight(), &zero, 1), Ok(rat(0)));
        let c = ThetaClass::constant(rat(5));
        assert_eq!(
            casson_walker(&trefoil(), &c, 2),
            Ok(ratio(2 * 5, 3) - ratio(1, 4))
        );
        assert!((casson_growth(&trefoil(), &zero, 1e-9).unwrap() + 1.0 / 6.0).abs() < 1e-12);
        assert!((casson_growth(&figure_eight(), &c, 1e-9).unwrap() - 5.0 / 3.0).abs() < 1e-12);
    }
}
