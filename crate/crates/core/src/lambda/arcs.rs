//! `ς_p` from the arc structure of the signature function.
//!
//! For Hermitian `W`, `σ(W(ω))` is constant on each arc of the circle cut
//! out by the roots of `δ(W)`, and depends only on `z = ω + ω̄`. Each `p`-th
//! root is placed in its arc by comparing `z` with the Sturm-isolated real
//! roots of `δ(W)` written in `z`; the signature on an arc is computed
//! exactly at a rational point `((1 − s²) + 2is) / (1 + s²)` of the circle.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::inertia::signature_exact;
use super::matrix::{LambdaMatrix, RatMatrix, SymRatMatrix};
use crate::algebra::ring::{rat, rational_to_f64};
use crate::algebra::roots::{real_roots_in, symmetric_to_z};
use crate::algebra::{LaurentPoly, Rational};

/// A `p`-th root closer than this (in `z`) to a root of `δ` is not decided here.
const MARGIN: f64 = 1e-9;

#[derive(Clone, PartialEq, Debug)]
struct Gauss {
    re: Rational,
    im: Rational,
}

impl Gauss {
    fn one() -> Self {
        Self {
            re: Rational::one(),
            im: Rational::zero(),
        }
    }

    fn mul(&self, o: &Self) -> Self {
        Self {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -&self.im,
        }
    }
}

/// Rational point on the unit circle with argument in `(0, π]` close to `theta`.
fn circle_point(theta: f64) -> Gauss {
    if (theta - std::f64::consts::PI).abs() < 1e-12 {
        return Gauss {
            re: rat(-1),
            im: Rational::zero(),
        };
    }
    let s = Rational::from_float((theta / 2.0).tan()).expect("finite tangent");
    let d = Rational::one() + &s * &s;
    Gauss {
        re: (Rational::one() - &s * &s) / &d,
        im: (&s + &s) / &d,
    }
}

fn eval_gauss(f: &LaurentPoly, powers: &BTreeMap<i64, Gauss>) -> Gauss {
    let mut acc = Gauss {
        re: Rational::zero(),
        im: Rational::zero(),
    };
    for (k, c) in f.terms() {
        let w = &powers[&k];
        acc.re += c * &w.re;
        acc.im += c * &w.im;
    }
    acc
}

/// Exact `σ(W(ω))` at a rational point of the circle, via the real form
/// `[[X, −Y], [Y, X]]` of `X + iY`, which has twice the inertia. `None` if
/// `W(ω)` is singular.
fn signature_at_point(w: &LambdaMatrix, omega: &Gauss) -> Option<i64> {
    let n = w.size();
    let mut powers = BTreeMap::new();
    powers.insert(0, Gauss::one());
    for i in 0..n {
        for j in 0..n {
            for (k, _) in w.get(i, j).terms() {
                if powers.contains_key(&k) {
                    continue;
                }
                let base = if k > 0 { omega.clone() } else { omega.conj() };
                let mut acc = Gauss::one();
                for _ in 0..k.unsigned_abs() {
                    acc = acc.mul(&base);
                }
                powers.insert(k, acc);
            }
        }
    }
    let h: Vec<Gauss> = (0..n * n)
        .map(|x| eval_gauss(w.get(x / n, x % n), &powers))
        .collect();
    let real = RatMatrix::from_fn(2 * n, |r, c| {
        let e = &h[(r % n) * n + c % n];
        match (r < n, c < n) {
            (true, true) | (false, false) => e.re.clone(),
            (true, false) => -&e.im,
            (false, true) => e.im.clone(),
        }
    });
    let inertia = signature_exact(&SymRatMatrix::new(real).ok()?);
    (inertia.null == 0).then(|| inertia.signature() / 2)
}

/// `Σ_{k=1}^{p−1} σ(W(ω^k))` by arcs; `None` when a root of unity is too
/// close to a root of `δ(W)` to be placed with certainty.
pub fn root_signature_sum_by_arcs(w: &LambdaMatrix, delta: &LaurentPoly, p: u64) -> Option<i64> {
    if !delta.is_bar_symmetric() {
        return None;
    }
    let dz = symmetric_to_z(delta);
    let roots = real_roots_in(&dz, &rat(-2), &rat(2), 1e-15);
    let mut per_arc: BTreeMap<usize, i64> = BTreeMap::new();
    let mut total = 0;
    for k in 1..p {
        let mut theta = std::f64::consts::TAU * k as f64 / p as f64;
        if theta > std::f64::consts::PI {
            theta = std::f64::consts::TAU - theta;
        }
        let z = 2.0 * theta.cos();
        if roots.iter().any(|r| (r - z).abs() < MARGIN) {
            return None;
        }
        let arc = roots.iter().filter(|&&r| r < z).count();
        let sigma = match per_arc.get(&arc) {
            Some(&s) => s,
            None => {
                let omega = circle_point(theta);
                let zq = rational_to_f64(&(&omega.re + &omega.re));
                if roots.iter().filter(|&&r| r < zq).count() != arc
                    || roots.iter().any(|r| (r - zq).abs() < MARGIN)
                {
                    return None;
                }
                let s = signature_at_point(w, &omega)?;
                per_arc.insert(arc, s);
                s
            }
        };
        total += sigma;
    }
    Some(total)
}
