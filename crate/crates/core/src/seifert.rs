//! Seifert matrices, the clover-view Hermitian matrix `W(t)`, the Alexander
//! polynomial and the Tristram–Levine signature function.
//!
//! A Seifert matrix of size `2g` is read in the basis `x_1..x_g, y_1..y_g`
//! with `A − Aᵀ = [[0, I], [−I, 0]]`. Matrices with `det(A − Aᵀ) = 1` in
//! another basis can be brought to this one with [`to_standard_basis`].

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::cyclotomic::unit_root;
use crate::algebra::poly::bareiss_det;
use crate::algebra::ring::rat;
use crate::algebra::{cyclotomic_norm, LaurentPoly, Rational};
use crate::error::{Error, Result};
use crate::lambda::{normalized_determinant, numeric_inertia, varsigma_at, LambdaMatrix};

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct SeifertMatrix {
    rows: Vec<Vec<i64>>,
}

impl SeifertMatrix {
    /// Checks shape only (square, even size). See [`validate_seifert`].
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::NotSquare);
        }
        if n % 2 == 1 {
            return Err(Error::OddSize(n));
        }
        Ok(Self { rows })
    }

    pub fn empty() -> Self {
        Self { rows: Vec::new() }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn genus(&self) -> usize {
        self.rows.len() / 2
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.rows[i][j]
    }

    pub fn transpose(&self) -> Self {
        let n = self.size();
        Self {
            rows: (0..n)
                .map(|i| (0..n).map(|j| self.rows[j][i]).collect())
                .collect(),
        }
    }

    /// `A − Aᵀ`.
    pub fn skew_part(&self) -> Vec<Vec<i64>> {
        let n = self.size();
        (0..n)
            .map(|i| (0..n).map(|j| self.rows[i][j] - self.rows[j][i]).collect())
            .collect()
    }

    /// Whether `A − Aᵀ = [[0, I], [−I, 0]]`.
    pub fn is_standard_basis(&self) -> bool {
        let g = self.genus();
        self.skew_part().iter().enumerate().all(|(i, row)| {
            row.iter().enumerate().all(|(j, &v)| {
                let want = if j == i + g && i < g {
                    1
                } else if i == j + g && j < g {
                    -1
                } else {
                    0
                };
                v == want
            })
        })
    }

    fn int_matrix(rows: &[Vec<i64>]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| rat(v)).collect())
            .collect()
    }
}

impl TryFrom<Vec<Vec<i64>>> for SeifertMatrix {
    type Error = Error;
    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self> {
        Self::new(rows)
    }
}

impl From<SeifertMatrix> for Vec<Vec<i64>> {
    fn from(a: SeifertMatrix) -> Self {
        a.rows
    }
}

/// `det(A − Aᵀ) = 1`.
pub fn validate_seifert(rows: &[Vec<i64>]) -> Result<bool> {
    let a = SeifertMatrix::new(rows.to_vec())?;
    Ok(bareiss_det(&SeifertMatrix::int_matrix(&a.skew_part())) == Rational::one())
}

/// Integral symplectic change of basis `A -> Pᵀ A P` that puts the skew
/// part in the form `[[0, I], [−I, 0]]`. Returns the new matrix and `P`.
pub fn to_standard_basis(a: &SeifertMatrix) -> Result<(SeifertMatrix, Vec<Vec<i64>>)> {
    if !validate_seifert(a.rows())? {
        let det = bareiss_det(&SeifertMatrix::int_matrix(&a.skew_part()));
        return Err(Error::NotUnimodular(det.to_string()));
    }
    let n = a.size();
    let mut j = a.skew_part();
    let mut p: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|k| i64::from(i == k)).collect())
        .collect();

    // Congruence by an elementary column operation, mirrored on rows.
    fn add_col(j: &mut [Vec<i64>], p: &mut [Vec<i64>], dst: usize, src: usize, c: i64) {
        for row in j.iter_mut() {
            row[dst] += c * row[src];
        }
        let src_row = j[src].clone();
        for (x, v) in j[dst].iter_mut().enumerate() {
            *v += c * src_row[x];
        }
        for row in p.iter_mut() {
            row[dst] += c * row[src];
        }
    }
    fn swap(j: &mut [Vec<i64>], p: &mut [Vec<i64>], x: usize, y: usize) {
        j.swap(x, y);
        for row in j.iter_mut() {
            row.swap(x, y);
        }
        for row in p.iter_mut() {
            row.swap(x, y);
        }
    }
    fn negate(j: &mut [Vec<i64>], p: &mut [Vec<i64>], x: usize) {
        for row in j.iter_mut() {
            row[x] = -row[x];
        }
        for v in j[x].iter_mut() {
            *v = -*v;
        }
        for row in p.iter_mut() {
            row[x] = -row[x];
        }
    }

    let mut base = 0;
    while base < n {
        // Euclid on row `base` over columns base+1..n.
        loop {
            let nz: Vec<usize> = (base + 1..n).filter(|&c| j[base][c] != 0).collect();
            if nz.len() <= 1 {
                break;
            }
            let piv = *nz.iter().min_by_key(|&&c| j[base][c].abs()).unwrap();
            for &c in &nz {
                if c != piv {
                    let q = j[base][c].div_euclid(j[base][piv]);
                    add_col(&mut j, &mut p, c, piv, -q);
                }
            }
        }
        let k = (base + 1..n)
            .find(|&c| j[base][c] != 0)
            .expect("unimodular skew form");
        swap(&mut j, &mut p, base + 1, k);
        if j[base][base + 1] < 0 {
            negate(&mut j, &mut p, base + 1);
        }
        debug_assert_eq!(j[base][base + 1], 1);
        for c in base + 2..n {
            let v = j[base + 1][c];
            if v != 0 {
                add_col(&mut j, &mut p, c, base, v);
            }
        }
        base += 2;
    }
    // Reorder (x1, y1, x2, y2, ..) to (x1.., y1..).
    let g = n / 2;
    let order: Vec<usize> = (0..g)
        .map(|i| 2 * i)
        .chain((0..g).map(|i| 2 * i + 1))
        .collect();
    let p: Vec<Vec<i64>> = p
        .iter()
        .map(|row| order.iter().map(|&c| row[c]).collect())
        .collect();
    let pa: Vec<Vec<i64>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| (0..n).map(|k| p[k][r] * a.rows[k][c]).sum())
                .collect()
        })
        .collect();
    let out: Vec<Vec<i64>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| (0..n).map(|k| pa[r][k] * p[k][c]).sum())
                .collect()
        })
        .collect();
    let out = SeifertMatrix::new(out)?;
    debug_assert!(out.is_standard_basis());
    Ok((out, p))
}

/// `W(t) = [[Lxx, (1−t⁻¹)Lxy − I], [(1−t)Lyx − I, (2−t−t⁻¹)Lyy]]` with
/// `Lyx = A_yx + I`.
pub fn clover_matrix(a: &SeifertMatrix) -> Result<LambdaMatrix> {
    if !a.is_standard_basis() {
        return Err(Error::NonStandardBasis);
    }
    let g = a.genus();
    let one_minus_tinv = LaurentPoly::from_int_terms(&[(0, 1), (-1, -1)]);
    let one_minus_t = LaurentPoly::from_int_terms(&[(0, 1), (1, -1)]);
    let two_minus = LaurentPoly::from_int_terms(&[(-1, -1), (0, 2), (1, -1)]);
    let w = LambdaMatrix::from_fn(2 * g, |i, j| {
        let delta = LaurentPoly::from(i64::from(i % g == j % g));
        let v = a.get(i, j);
        match (i < g, j < g) {
            (true, true) => LaurentPoly::from(v),
            (true, false) => &(&one_minus_tinv * &LaurentPoly::from(v)) - &delta,
            (false, true) => {
                let lyx = v + i64::from(i - g == j);
                &(&one_minus_t * &LaurentPoly::from(lyx)) - &delta
            }
            (false, false) => &two_minus * &LaurentPoly::from(v),
        }
    });
    if let Some((i, j)) = w.hermitian_violation() {
        return Err(Error::NotHermitian(i, j));
    }
    let d = w.eval_one().determinant();
    if d != rat(1) && d != rat(-1) {
        return Err(Error::NotUnimodularAtOne);
    }
    Ok(w)
}

/// Moves `±t^k` so that the result is bar-symmetric with value 1 at `t = 1`.
/// Returns `None` for polynomials where that is impossible.
pub fn symmetrize(f: &LaurentPoly) -> Option<LaurentPoly> {
    let (lo, hi) = (f.min_exp()?, f.max_exp()?);
    if (lo + hi) % 2 != 0 {
        return None;
    }
    let g = f.shift(-(lo + hi) / 2);
    let v = g.eval_one();
    if v.is_zero() {
        return None;
    }
    let g = g.scale(&v.recip());
    g.is_bar_symmetric().then_some(g)
}

/// `det(A − t Aᵀ)`, normalized to be symmetric with `Δ(1) = 1`.
pub fn alexander(a: &SeifertMatrix) -> LaurentPoly {
    let n = a.size();
    let rows: Vec<Vec<LaurentPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| LaurentPoly::from_int_terms(&[(0, a.get(i, j)), (1, -a.get(j, i))]))
                .collect()
        })
        .collect();
    let det = bareiss_det(&rows);
    symmetrize(&det).unwrap_or(det)
}

/// `(1 − ω̄)A + (1 − ω)Aᵀ`.
pub fn tristram_levine_matrix(a: &SeifertMatrix, w: Complex64) -> DMatrix<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    let n = a.size();
    DMatrix::from_fn(n, n, |i, j| {
        (one - w.conj()) * a.get(i, j) as f64 + (one - w) * a.get(j, i) as f64
    })
}

/// Tristram–Levine signature `σ_ω` at `ω = e^(2πik/p)`.
pub fn signature_function(a: &SeifertMatrix, k: i64, p: u64, tol: f64) -> Result<i64> {
    if p == 0 {
        return Err(Error::ZeroP);
    }
    if k.rem_euclid(p as i64) == 0 {
        return Err(Error::AtOne);
    }
    signature_at(a, unit_root(k, p), tol).map_err(|_| Error::SingularEvaluation { k, p })
}

/// `σ_ω` at an arbitrary point of the unit circle other than 1.
pub fn signature_at(a: &SeifertMatrix, w: Complex64, tol: f64) -> Result<i64> {
    if (w - Complex64::new(1.0, 0.0)).norm() <= tol {
        return Err(Error::AtOne);
    }
    match numeric_inertia(&tristram_levine_matrix(a, w), tol) {
        Some(i) if i.null == 0 => Ok(i.signature()),
        _ => Err(Error::SingularEvaluation { k: 0, p: 0 }),
    }
}

/// `(1 − t⁻¹)A + (1 − t)Aᵀ` as a Λ-matrix.
pub fn seifert_hermitian(a: &SeifertMatrix) -> LambdaMatrix {
    let n = a.size();
    LambdaMatrix::from_fn(n, |i, j| {
        LaurentPoly::from_int_terms(&[
            (0, a.get(i, j) + a.get(j, i)),
            (-1, -a.get(i, j)),
            (1, -a.get(j, i)),
        ])
    })
}

/// Checks `P W(t) P* = (1 − t⁻¹)A + (1 − t)Aᵀ` with `P = diag((1 − t)I, I)`,
/// `δ(W) = Δ` after symmetrization, and `ς_ω(W) = σ_ω(A)` at the regular
/// `p`-th roots of unity for `p ≤ 7`. Returns a description of the first
/// failure.
pub fn congruence_identity_mismatch(a: &SeifertMatrix) -> Option<String> {
    let w = match clover_matrix(a) {
        Ok(w) => w,
        Err(e) => return Some(format!("clover matrix: {e}")),
    };
    let g = a.genus();
    let one_minus_t = LaurentPoly::from_int_terms(&[(0, 1), (1, -1)]);
    let lhs = LambdaMatrix::from_fn(2 * g, |i, j| {
        let mut e = w.get(i, j).clone();
        if i < g {
            e = &e * &one_minus_t;
        }
        if j < g {
            e = &e * &one_minus_t.bar();
        }
        e
    });
    let rhs = seifert_hermitian(a);
    for i in 0..2 * g {
        for j in 0..2 * g {
            if lhs.get(i, j) != rhs.get(i, j) {
                return Some(format!(
                    "entry ({i}, {j}): {} != {}",
                    lhs.get(i, j),
                    rhs.get(i, j)
                ));
            }
        }
    }
    let delta = match normalized_determinant(&w) {
        Ok(d) => d,
        Err(e) => return Some(format!("normalized determinant: {e}")),
    };
    let alex = alexander(a);
    if symmetrize(&delta).as_ref() != Some(&alex) {
        return Some(format!("delta {delta} is not a unit multiple of {alex}"));
    }
    for p in 2..=7u64 {
        if cyclotomic_norm(&alex, p).is_zero() {
            continue;
        }
        for k in 1..p as i64 {
            let lhs = varsigma_at(&w, k, p, crate::algebra::DEFAULT_TOL);
            let rhs = signature_function(a, k, p, crate::algebra::DEFAULT_TOL);
            if lhs != rhs {
                return Some(format!("signature at k = {k}, p = {p}: {lhs:?} != {rhs:?}"));
            }
        }
    }
    None
}

pub fn congruence_identity_check(a: &SeifertMatrix) -> bool {
    congruence_identity_mismatch(a).is_none()
}

/// Random Seifert matrix of genus `g` in the standard basis: a symmetric
/// matrix plus `[[0, I], [0, 0]]`, all entries in `[-bound, bound]`.
pub fn random_seifert<R: Rng + ?Sized>(g: usize, bound: i64, rng: &mut R) -> SeifertMatrix {
    let n = 2 * g;
    let mut rows = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i..n {
            let lift = i64::from(i < g && j == i + g);
            let v = rng.gen_range(-bound..=bound - lift);
            rows[i][j] = v + lift;
            rows[j][i] = v;
        }
    }
    SeifertMatrix::new(rows).expect("even square matrix")
}

pub fn trefoil() -> SeifertMatrix {
    SeifertMatrix::new(vec![vec![-1, 1], vec![0, -1]]).unwrap()
}

pub fn figure_eight() -> SeifertMatrix {
    SeifertMatrix::new(vec![vec![1, 1], vec![0, -1]]).unwrap()
}
