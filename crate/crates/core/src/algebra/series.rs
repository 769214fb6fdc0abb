//! Truncated formal power series over Q, and the wheels coefficients
//! `sum b_2n x^2n = (1/2) log(sinh(x/2) / (x/2))`.

use num_traits::{One, Zero};

use super::ring::{rat, ratio, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    /// Coefficients of `x^0 .. x^order`.
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    pub fn new(order: usize, coeffs: &[Rational]) -> Self {
        let mut c: Vec<Rational> = coeffs.iter().take(order + 1).cloned().collect();
        c.resize(order + 1, Rational::zero());
        Self { coeffs: c }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(order, &[])
    }

    pub fn one(order: usize) -> Self {
        Self::new(order, &[rat(1)])
    }

    /// The series `x`.
    pub fn x(order: usize) -> Self {
        Self::new(order, &[rat(0), rat(1)])
    }

    pub fn from_fn(order: usize, f: impl Fn(usize) -> Rational) -> Self {
        Self {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::from_fn(n, |i| &self.coeffs[i] + &other.coeffs[i])
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_fn(self.order(), |i| &self.coeffs[i] * c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Self { coeffs: out }
    }

    /// `log f` for `f(0) = 1`, from the recurrence `f * (log f)' = f'`.
    pub fn log(&self) -> Self {
        assert!(self.coeffs[0].is_one(), "log needs constant term 1");
        let n = self.order();
        let f = &self.coeffs;
        let mut g = vec![Rational::zero(); n + 1];
        for m in 1..=n {
            let mut acc = rat(m as i64) * &f[m];
            for k in 1..m {
                acc -= rat(k as i64) * &g[k] * &f[m - k];
            }
            g[m] = acc / rat(m as i64);
        }
        Self { coeffs: g }
    }

    /// `exp g` for `g(0) = 0`, from `(exp g)' = g' exp g`.
    pub fn exp(&self) -> Self {
        assert!(self.coeffs[0].is_zero(), "exp needs constant term 0");
        let n = self.order();
        let g = &self.coeffs;
        let mut h = vec![Rational::zero(); n + 1];
        h[0] = rat(1);
        for m in 1..=n {
            let mut acc = Rational::zero();
            for k in 1..=m {
                acc += rat(k as i64) * &g[k] * &h[m - k];
            }
            h[m] = acc / rat(m as i64);
        }
        Self { coeffs: h }
    }

    /// `self(inner(x))` for `inner(0) = 0`, by Horner's scheme.
    pub fn compose(&self, inner: &Self) -> Self {
        assert!(inner.coeffs[0].is_zero(), "composition needs inner(0) = 0");
        let n = self.order().min(inner.order());
        let mut acc = Self::zero(n);
        for c in self.coeffs.iter().take(n + 1).rev() {
            acc = acc.mul(inner);
            acc.coeffs[0] += c;
        }
        acc
    }
}

/// `sinh(x/2) / (x/2) = sum_k (x/2)^(2k) / (2k+1)!` through `x^order`.
pub fn sinhc_half(order: usize) -> PowerSeries {
    let mut fact = Rational::one();
    let mut out = vec![Rational::zero(); order + 1];
    for n in 0..=order {
        if n > 0 {
            fact *= rat(n as i64 + 1);
        }
        if n % 2 == 0 {
            // (x/2)^n / (n+1)!
            out[n] = Rational::one()
                / (&fact * Rational::from_integer(num_bigint::BigInt::from(2).pow(n as u32)));
        }
    }
    PowerSeries::new(order, &out)
}

/// `[b_2, b_4, ..., b_(2 nmax)]`.
pub fn wheels_coefficients(nmax: usize) -> Vec<Rational> {
    assert!(nmax >= 1);
    let series = sinhc_half(2 * nmax).log().scale(&ratio(1, 2));
    (1..=nmax).map(|n| series.coeff(2 * n).clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_wheels_coefficients() {
        assert_eq!(wheels_coefficients(1), vec![ratio(1, 48)]);
        assert_eq!(wheels_coefficients(2), vec![ratio(1, 48), ratio(-1, 5760)]);
    }

    #[test]
    fn odd_coefficients_vanish() {
        let s = sinhc_half(12).log();
        for n in (1..=12).step_by(2) {
            assert!(s.coeff(n).is_zero());
        }
    }

    #[test]
    fn exponential_identity() {
        // exp(2 sum b_2n x^2n) * (x/2) = sinh(x/2)
        let order = 14;
        let w = sinhc_half(order).log();
        let lhs = w.exp().mul(&PowerSeries::x(order).scale(&ratio(1, 2)));
        let sinh_half = PowerSeries::from_fn(order, |n| {
            if n % 2 == 1 {
                let mut f = Rational::one();
                for k in 1..=n {
                    f *= rat(k as i64);
                }
                Rational::one()
                    / (f * Rational::from_integer(num_bigint::BigInt::from(2).pow(n as u32)))
            } else {
                Rational::zero()
            }
        });
        assert_eq!(lhs, sinh_half);
    }

    #[test]
    fn log_exp_and_compose_agree() {
        let order = 10;
        let u = PowerSeries::new(order, &[rat(0), rat(3), ratio(-1, 2), rat(7)]);
        assert_eq!(u.exp().log(), u);
        // log(1 + u) as composition with the series of log(1 + y)
        let log1p = PowerSeries::from_fn(order, |n| {
            if n == 0 {
                Rational::zero()
            } else {
                let s = if n % 2 == 1 { 1 } else { -1 };
                ratio(s, n as i64)
            }
        });
        let one_plus_u = u.add(&PowerSeries::one(order));
        assert_eq!(log1p.compose(&u), one_plus_u.log());
    }
}
