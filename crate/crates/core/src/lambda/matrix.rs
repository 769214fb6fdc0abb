use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::poly::bareiss_det;
use crate::algebra::ring::rational_to_f64;
use crate::algebra::{LaurentPoly, Rational};
use crate::error::{Error, Result};

/// Square matrix over `Q[t^{±1}]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LambdaMatrix {
    n: usize,
    entries: Vec<LaurentPoly>,
}

impl LambdaMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            entries: vec![LaurentPoly::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, LaurentPoly::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::NotSquare);
        }
        Ok(Self {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> LaurentPoly) -> Self {
        Self {
            n,
            entries: (0..n * n).map(|k| f(k / n, k % n)).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: LaurentPoly) {
        self.entries[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<LaurentPoly>> {
        self.entries
            .chunks(self.n.max(1))
            .take(self.n)
            .map(|r| r.to_vec())
            .collect()
    }

    /// First `(i, j)` with `entry(j, i) != bar(entry(i, j))`.
    pub fn hermitian_violation(&self) -> Option<(usize, usize)> {
        for i in 0..self.n {
            for j in i..self.n {
                if *self.get(j, i) != self.get(i, j).bar() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian_violation().is_none()
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(LaurentPoly::is_integral)
    }

    /// Membership in `Herm(Λ_Z → Z)`: Hermitian, integral, and `det W(1) = ±1`.
    pub fn is_unimodular_hermitian(&self) -> bool {
        if !self.is_hermitian() || !self.is_integral() {
            return false;
        }
        let d = self.eval_one().determinant();
        d == crate::algebra::ring::rat(1) || d == crate::algebra::ring::rat(-1)
    }

    /// Conjugate transpose `entry(i, j) -> bar(entry(j, i))`.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).bar())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        Self::from_fn(self.n, |i, j| {
            let mut acc = LaurentPoly::zero();
            for k in 0..self.n {
                acc = &acc + &(self.get(i, k) * other.get(k, j));
            }
            acc
        })
    }

    pub fn map(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        Self {
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn determinant(&self) -> LaurentPoly {
        bareiss_det(&self.rows())
    }

    pub fn eval_one(&self) -> RatMatrix {
        RatMatrix::from_fn(self.n, |i, j| self.get(i, j).eval_one())
    }

    pub fn eval_complex(&self, z: Complex64) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.n, self.n, |i, j| self.get(i, j).eval_complex(z))
    }

    /// Evaluation at `e^(2 pi i k / p)`, with exponents reduced mod `p`.
    pub fn eval_unit(&self, k: i64, p: u64) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.n, self.n, |i, j| {
            crate::algebra::eval_unit(self.get(i, j), k, p)
        })
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let n = self.n + other.n;
        Self::from_fn(n, |i, j| match (i < self.n, j < self.n) {
            (true, true) => self.get(i, j).clone(),
            (false, false) => other.get(i - self.n, j - self.n).clone(),
            _ => LaurentPoly::zero(),
        })
    }
}

#[derive(Serialize, Deserialize)]
struct LambdaMatrixJson {
    n: usize,
    entries: Vec<Vec<LaurentPoly>>,
}

impl Serialize for LambdaMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LambdaMatrixJson {
            n: self.n,
            entries: self.rows(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LambdaMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = LambdaMatrixJson::deserialize(d)?;
        if raw.entries.len() != raw.n {
            return Err(D::Error::custom("entries must have n rows"));
        }
        LambdaMatrix::from_rows(raw.entries).map_err(D::Error::custom)
    }
}

/// Square matrix over Q.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatMatrix {
    n: usize,
    entries: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            entries: vec![Rational::zero(); n * n],
        }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Rational) -> Self {
        Self {
            n,
            entries: (0..n * n).map(|k| f(k / n, k % n)).collect(),
        }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_fn(rows.len(), |i, j| crate::algebra::ring::rat(rows[i][j]))
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.n + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut Rational {
        &mut self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        (0..self.n)
            .map(|i| self.entries[i * self.n..(i + 1) * self.n].to_vec())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        Self::from_fn(self.n, |i, j| {
            (0..self.n).fold(Rational::zero(), |acc, k| {
                acc + self.get(i, k) * other.get(k, j)
            })
        })
    }

    pub fn determinant(&self) -> Rational {
        bareiss_det(&self.rows())
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |i, j| rational_to_f64(self.get(i, j)))
    }
}

/// Symmetric rational matrix; symmetry is checked on construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymRatMatrix(RatMatrix);

impl SymRatMatrix {
    pub fn new(m: RatMatrix) -> Result<Self> {
        for i in 0..m.n {
            for j in i + 1..m.n {
                if m.get(i, j) != m.get(j, i) {
                    return Err(Error::NotHermitian(i, j));
                }
            }
        }
        Ok(Self(m))
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(RatMatrix::from_i64_rows(rows))
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        self.0.get(i, j)
    }

    pub fn determinant(&self) -> Rational {
        self.0.determinant()
    }
}
