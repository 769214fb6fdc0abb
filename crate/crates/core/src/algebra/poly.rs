//! Dense univariate polynomial helpers (coefficients low to high) and the
//! fraction-free eliminations used throughout: subresultant resultants and
//! Bareiss determinants.

use num_traits::Zero;

use super::ring::{ExactRing, Rational};

/// Drops trailing zero coefficients. The zero polynomial is the empty vector.
pub fn trim<R: ExactRing>(p: &mut Vec<R>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Degree, with the zero polynomial reported as `None`.
pub fn degree<R: ExactRing>(p: &[R]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

/// Euclidean division over Q: `a = q b + r` with `deg r < deg b`.
pub fn div_rem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r: Vec<Rational> = a.to_vec();
    trim(&mut r);
    let mut b = b.to_vec();
    trim(&mut b);
    let db = degree(&b).expect("division by zero polynomial");
    let lb = b[db].clone();
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![Rational::zero(); r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = &r[dr] / &lb;
        let k = dr - db;
        for (i, bi) in b.iter().enumerate() {
            r[i + k] -= &c * bi;
        }
        q[k] = c;
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

/// Monic gcd over Q (zero if both inputs are zero).
pub fn gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = div_rem(&x, &y);
        x = y;
        y = r;
    }
    make_monic(&x)
}

pub fn make_monic(p: &[Rational]) -> Vec<Rational> {
    match p.last() {
        None => Vec::new(),
        Some(lc) => p.iter().map(|c| c / lc).collect(),
    }
}

pub fn mul<R: ExactRing>(a: &[R], b: &[R]) -> Vec<R> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![R::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add_ref(&x.mul_ref(y));
        }
    }
    trim(&mut out);
    out
}

pub fn derivative(p: &[Rational]) -> Vec<Rational> {
    let mut out: Vec<Rational> = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * Rational::from_integer((i as i64).into()))
        .collect();
    trim(&mut out);
    out
}

pub fn eval(p: &[Rational], x: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

/// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) a mod b`, computed without division.
pub fn pseudo_rem<R: ExactRing>(a: &[R], b: &[R]) -> Vec<R> {
    let db = degree(b).expect("pseudo-remainder by zero");
    let mut r: Vec<R> = a.to_vec();
    trim(&mut r);
    let Some(da) = degree(&r) else {
        return r;
    };
    if da < db {
        return r;
    }
    let lb = &b[db];
    let mut steps = da - db + 1;
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let lr = r[dr].clone();
        let k = dr - db;
        for c in r.iter_mut() {
            *c = c.mul_ref(lb);
        }
        for (i, bi) in b.iter().enumerate() {
            r[i + k] = r[i + k].sub_ref(&lr.mul_ref(bi));
        }
        trim(&mut r);
        steps -= 1;
    }
    let fix = lb.pow(steps as u64);
    r.iter().map(|c| c.mul_ref(&fix)).collect()
}

/// Resultant `Res(a, b) = lc(a)^deg(b) * prod_{a(x)=0} b(x)` by the
/// subresultant polynomial remainder sequence; exact over any domain with
/// exact division. Returns zero when either input is zero.
pub fn resultant<R: ExactRing>(a: &[R], b: &[R]) -> R {
    let (Some(da), Some(db)) = (degree(a), degree(b)) else {
        return R::zero();
    };
    let mut a: Vec<R> = a[..=da].to_vec();
    let mut b: Vec<R> = b[..=db].to_vec();
    if da == 0 {
        return a[0].pow(db as u64);
    }
    if db == 0 {
        return b[0].pow(da as u64);
    }
    let mut sign_neg = false;
    if da < db {
        std::mem::swap(&mut a, &mut b);
        if da % 2 == 1 && db % 2 == 1 {
            sign_neg = true;
        }
    }
    let mut g = R::one();
    let mut h = R::one();
    loop {
        let da = degree(&a).unwrap();
        let db = degree(&b).unwrap();
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign_neg = !sign_neg;
        }
        let r = pseudo_rem(&a, &b);
        a = b;
        let divisor = g.mul_ref(&h.pow(delta as u64));
        b = r.iter().map(|c| c.exact_div(&divisor)).collect();
        g = a[degree(&a).unwrap()].clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g.pow(delta as u64).exact_div(&h.pow(delta as u64 - 1)),
        };
        match degree(&b) {
            None => return R::zero(),
            Some(0) => {
                let da = degree(&a).unwrap() as u64;
                let lb = b[0].pow(da);
                let res = if da == 0 {
                    lb.mul_ref(&h)
                } else {
                    lb.exact_div(&h.pow(da - 1))
                };
                return if sign_neg { res.neg_ref() } else { res };
            }
            Some(_) => {}
        }
    }
}

/// Determinant by fraction-free Gaussian elimination with row pivoting.
pub fn bareiss_det<R: ExactRing>(matrix: &[Vec<R>]) -> R {
    let n = matrix.len();
    if n == 0 {
        return R::one();
    }
    let mut m: Vec<Vec<R>> = matrix.to_vec();
    let mut prev = R::one();
    let mut negate = false;
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return R::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j]
                    .mul_ref(&m[k][k])
                    .sub_ref(&m[i][k].mul_ref(&m[k][j]));
                m[i][j] = v.exact_div(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        det.neg_ref()
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::rat;

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&c| rat(c)).collect()
    }

    // Sylvester matrix for deg a = m, deg b = n.
    fn sylvester(a: &[Rational], b: &[Rational]) -> Vec<Vec<Rational>> {
        let m = a.len() - 1;
        let n = b.len() - 1;
        let size = m + n;
        let mut s = vec![vec![rat(0); size]; size];
        for i in 0..n {
            for (j, c) in a.iter().rev().enumerate() {
                s[i][i + j] = c.clone();
            }
        }
        for i in 0..m {
            for (j, c) in b.iter().rev().enumerate() {
                s[n + i][i + j] = c.clone();
            }
        }
        s
    }

    #[test]
    fn resultant_matches_sylvester_determinant() {
        let cases = [
            (q(&[-1, 0, 0, 0, 0, 1]), q(&[1, -1, 1])),
            (q(&[1, -1, 1]), q(&[-1, 0, 0, 0, 0, 0, 1])),
            (q(&[2, 0, -3, 1]), q(&[5, 4, 0, 7, -2])),
            (q(&[3, 1]), q(&[1, 1, 1, 1])),
            (q(&[1, 2, 3, 4]), q(&[-4, 0, 1])),
            (q(&[0, 1, 0, 1]), q(&[1, 0, 1])),
        ];
        for (a, b) in cases {
            assert_eq!(
                resultant(&a, &b),
                bareiss_det(&sylvester(&a, &b)),
                "{a:?} {b:?}"
            );
        }
    }

    #[test]
    fn resultant_of_cyclotomic_products() {
        // prod over 5th roots of (w^2 - w + 1) = 1
        assert_eq!(resultant(&q(&[-1, 0, 0, 0, 0, 1]), &q(&[1, -1, 1])), rat(1));
        // prod over square roots of unity: (1)(3)
        assert_eq!(resultant(&q(&[-1, 0, 1]), &q(&[1, -1, 1])), rat(3));
        // shared root t = -1
        assert_eq!(resultant(&q(&[1, 1]), &q(&[1, 0, 0, 1])), rat(0));
    }

    #[test]
    fn constants_and_zero() {
        assert_eq!(resultant(&q(&[3]), &q(&[1, 2, 1])), rat(9));
        assert_eq!(resultant(&q(&[1, 2, 1]), &q(&[-2])), rat(4));
        assert_eq!(resultant::<Rational>(&[], &q(&[1, 1])), rat(0));
    }

    #[test]
    fn div_rem_and_gcd() {
        let a = q(&[-8, 0, 0, 1]);
        let b = q(&[-2, 1]);
        let (quo, r) = div_rem(&a, &b);
        assert_eq!(quo, q(&[4, 2, 1]));
        assert!(r.is_empty());
        assert_eq!(gcd(&q(&[-1, 0, 1]), &q(&[1, 2, 1])), q(&[1, 1]));
    }

    #[test]
    fn bareiss_needs_pivoting() {
        let m = vec![q(&[0, 1, 2]), q(&[1, 0, 3]), q(&[4, -3, 8])];
        assert_eq!(bareiss_det(&m), rat(-2));
    }
}
