//! Numeric root finding: all complex roots (Aberth–Ehrlich), exact real-root
//! isolation by Sturm sequences, and the Mahler measure.

use num_complex::Complex64;
use num_traits::{Signed, Zero};

use super::laurent::LaurentPoly;
use super::poly;
use super::ring::{rat, ratio, rational_to_f64, Rational};

/// Default tolerance of every floating-point path in the crate.
pub const DEFAULT_TOL: f64 = 1e-9;

fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// All complex roots (with multiplicity) of `c_0 + c_1 x + ... + c_n x^n`.
pub fn complex_roots(coeffs: &[f64], tol: f64) -> Vec<Complex64> {
    let mut c: Vec<f64> = coeffs.to_vec();
    while c.last().is_some_and(|x| *x == 0.0) {
        c.pop();
    }
    let mut zeros = 0;
    while c.first().is_some_and(|x| *x == 0.0) {
        c.remove(0);
        zeros += 1;
    }
    let n = c.len().saturating_sub(1);
    let mut roots = vec![Complex64::zero(); zeros];
    if n == 0 {
        return roots;
    }
    let cc: Vec<Complex64> = c.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    // Cauchy bound for the initial circle.
    let lead = c[n].abs();
    let radius = 1.0 + c[..n].iter().map(|x| x.abs() / lead).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            Complex64::from_polar(
                radius * 0.5,
                std::f64::consts::TAU * (k as f64 + 0.25) / n as f64,
            )
        })
        .collect();
    for _ in 0..500 {
        let mut max_step: f64 = 0.0;
        for i in 0..n {
            let (p, dp) = horner(&cc, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| {
                    let d = z[i] - z[j];
                    if d.norm() == 0.0 {
                        Complex64::zero()
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
            }
        }
        if max_step < tol * 1e-3 {
            break;
        }
    }
    roots.extend(z);
    roots
}

/// Mahler measure `m(f) = log|lc| + sum log max(1, |root|)`.
pub fn mahler_measure(f: &LaurentPoly, tol: f64) -> f64 {
    assert!(!f.is_zero(), "Mahler measure of zero");
    let (_, dense) = f.cleared();
    let lc = rational_to_f64(dense.last().unwrap()).abs();
    let coeffs: Vec<f64> = dense.iter().map(rational_to_f64).collect();
    let roots = complex_roots(&coeffs, tol);
    lc.ln() + roots.iter().map(|r| r.norm().max(1.0).ln()).sum::<f64>()
}

fn sturm_chain(p: &[Rational]) -> Vec<Vec<Rational>> {
    let mut chain = vec![p.to_vec(), poly::derivative(p)];
    loop {
        let n = chain.len();
        if chain[n - 1].is_empty() {
            chain.pop();
            break;
        }
        let (_, r) = poly::div_rem(&chain[n - 2], &chain[n - 1]);
        if r.is_empty() {
            break;
        }
        chain.push(r.iter().map(|c| -c).collect());
    }
    chain
}

fn sign_changes(chain: &[Vec<Rational>], x: &Rational) -> usize {
    let signs: Vec<i32> = chain
        .iter()
        .map(|q| {
            let v = poly::eval(q, x);
            if v.is_zero() {
                0
            } else if v.is_positive() {
                1
            } else {
                -1
            }
        })
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Distinct real roots of `p` in the closed interval `[lo, hi]`, each
/// located to within `tol` by exact-sign bisection.
pub fn real_roots_in(p: &[Rational], lo: &Rational, hi: &Rational, tol: f64) -> Vec<f64> {
    let mut p = p.to_vec();
    poly::trim(&mut p);
    if poly::degree(&p).unwrap_or(0) == 0 {
        return Vec::new();
    }
    // Square-free part: simple roots change sign.
    let g = poly::gcd(&p, &poly::derivative(&p));
    let sqfree = poly::make_monic(&poly::div_rem(&p, &g).0);
    let chain = sturm_chain(&sqfree);
    let count = |a: &Rational, b: &Rational| sign_changes(&chain, a) - sign_changes(&chain, b);

    let mut roots = Vec::new();
    if poly::eval(&sqfree, lo).is_zero() {
        roots.push(rational_to_f64(lo));
    }
    // Roots in (lo, hi].
    let mut stack = vec![(lo.clone(), hi.clone())];
    let tol_q = Rational::new(
        num_bigint::BigInt::from(1),
        num_bigint::BigInt::from(((1.0 / tol.max(1e-15)).ceil()) as u64),
    );
    while let Some((a, b)) = stack.pop() {
        let n = count(&a, &b);
        if n == 0 {
            continue;
        }
        if n == 1 {
            roots.push(refine(&sqfree, a, b, &tol_q));
            continue;
        }
        let mid = (&a + &b) * ratio(1, 2);
        stack.push((a, mid.clone()));
        stack.push((mid, b));
    }
    roots.sort_by(|x, y| x.partial_cmp(y).unwrap());
    roots
}

// Single simple root in (a, b].
fn refine(p: &[Rational], mut a: Rational, mut b: Rational, tol: &Rational) -> f64 {
    let sb = poly::eval(p, &b);
    if sb.is_zero() {
        return rational_to_f64(&b);
    }
    let b_pos = sb.is_positive();
    while &b - &a > *tol {
        let mid = (&a + &b) * ratio(1, 2);
        let v = poly::eval(p, &mid);
        if v.is_zero() {
            return rational_to_f64(&mid);
        }
        if v.is_positive() == b_pos {
            b = mid;
        } else {
            a = mid;
        }
    }
    rational_to_f64(&((&a + &b) * ratio(1, 2)))
}

/// For a bar-symmetric `f`, the polynomial `D` with `f(t) = D(t + t^{-1})`,
/// written via Dickson polynomials `V_k(z) = t^k + t^{-k}`.
pub fn symmetric_to_z(f: &LaurentPoly) -> Vec<Rational> {
    assert!(
        f.is_bar_symmetric(),
        "symmetric_to_z needs a symmetric polynomial"
    );
    let d = f.max_exp().unwrap_or(0).max(0) as usize;
    // V_k(z) = t^k + t^-k as a polynomial in z: V_0 = 2, V_1 = z, V_{k+1} = z V_k - V_{k-1}.
    let mut v: Vec<Vec<Rational>> = vec![vec![rat(2)], vec![rat(0), rat(1)]];
    for k in 1..d {
        let mut next = vec![rat(0)];
        next.extend(v[k].iter().cloned());
        for (i, c) in v[k - 1].iter().enumerate() {
            next[i] -= c;
        }
        v.push(next);
    }
    let mut dz = vec![f.coeff(0)];
    dz.resize(d + 1, rat(0));
    for k in 1..=d {
        let c = f.coeff(k as i64);
        for (i, vi) in v[k].iter().enumerate() {
            dz[i] += &c * vi;
        }
    }
    poly::trim(&mut dz);
    dz
}

/// Angles in `[0, 2 pi)` of the unit-circle roots of a bar-symmetric Laurent
/// polynomial, computed via the substitution `z = t + t^{-1}` (so the roots
/// on the circle correspond to real roots of a polynomial in `[-2, 2]`).
pub fn unit_circle_root_angles(f: &LaurentPoly, tol: f64) -> Vec<f64> {
    assert!(
        f.is_bar_symmetric(),
        "unit_circle_root_angles needs a symmetric polynomial"
    );
    if f.is_zero() {
        return Vec::new();
    }
    let dz = symmetric_to_z(f);
    let zs = real_roots_in(&dz, &rat(-2), &rat(2), tol * 1e-3);
    let mut angles = Vec::new();
    for z in zs {
        let theta = (z / 2.0).clamp(-1.0, 1.0).acos();
        angles.push(theta);
        if theta > 0.0 && theta < std::f64::consts::PI {
            angles.push(std::f64::consts::TAU - theta);
        }
    }
    angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
    angles.dedup_by(|a, b| (*a - *b).abs() < tol);
    angles
}
