use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use num_traits::{Signed, Zero};

use super::matrix::SymRatMatrix;
use crate::algebra::Rational;

/// Counts of positive, negative and zero eigenvalues.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Inertia {
    pub plus: usize,
    pub minus: usize,
    pub null: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.plus as i64 - self.minus as i64
    }

    /// Rank, `plus + minus`.
    pub fn mu(&self) -> usize {
        self.plus + self.minus
    }
}

/// Exact inertia by symmetric congruence over Q.
///
/// Takes any nonzero diagonal pivot; when the remaining diagonal is zero,
/// eliminates a hyperbolic `2 × 2` block `[[0, b], [b, 0]]`, which adds one
/// to each of `plus` and `minus`.
pub fn signature_exact(s: &SymRatMatrix) -> Inertia {
    let n = s.size();
    let mut a: Vec<Vec<Rational>> = s.matrix().rows();
    let mut live: Vec<usize> = (0..n).collect();
    let mut out = Inertia::default();
    while !live.is_empty() {
        if let Some(pos) = live.iter().position(|&i| !a[i][i].is_zero()) {
            let i = live.swap_remove(pos);
            let d = a[i][i].clone();
            if d.is_positive() {
                out.plus += 1;
            } else {
                out.minus += 1;
            }
            let col: Vec<Rational> = live.iter().map(|&r| &a[r][i] / &d).collect();
            for (x, &r) in live.iter().enumerate() {
                if col[x].is_zero() {
                    continue;
                }
                for &c in &live {
                    if !a[i][c].is_zero() {
                        let v = &col[x] * &a[i][c];
                        a[r][c] -= v;
                    }
                }
            }
            continue;
        }
        let pair = live.iter().enumerate().find_map(|(x, &i)| {
            live[x + 1..]
                .iter()
                .find(|&&j| !a[i][j].is_zero())
                .map(|&j| (i, j))
        });
        let Some((i, j)) = pair else {
            out.null += live.len();
            break;
        };
        live.retain(|&r| r != i && r != j);
        out.plus += 1;
        out.minus += 1;
        let b = a[i][j].clone();
        // a_rc -= (a_ri a_jc + a_rj a_ic) / b
        let ri: Vec<Rational> = live.iter().map(|&r| &a[r][i] / &b).collect();
        let rj: Vec<Rational> = live.iter().map(|&r| &a[r][j] / &b).collect();
        for (x, &r) in live.iter().enumerate() {
            if ri[x].is_zero() && rj[x].is_zero() {
                continue;
            }
            for &c in &live {
                let v = &ri[x] * &a[j][c] + &rj[x] * &a[i][c];
                if !v.is_zero() {
                    a[r][c] -= v;
                }
            }
        }
    }
    out
}

/// Inertia of a complex Hermitian matrix from its eigenvalues. Returns
/// `None` if the matrix is not Hermitian to within `tol`. Eigenvalues with
/// `|λ| ≤ tol · max(1, ‖H‖)` count as null.
pub fn numeric_inertia(h: &DMatrix<Complex64>, tol: f64) -> Option<Inertia> {
    if h.nrows() == 0 {
        return Some(Inertia::default());
    }
    let scale = h.iter().map(|z| z.norm()).fold(1.0, f64::max);
    if (h - h.adjoint()).iter().any(|z| z.norm() > tol * scale) {
        return None;
    }
    let eig = SymmetricEigen::new(h.clone());
    let mut out = Inertia::default();
    for &l in eig.eigenvalues.iter() {
        if l.abs() <= tol * scale {
            out.null += 1;
        } else if l > 0.0 {
            out.plus += 1;
        } else {
            out.minus += 1;
        }
    }
    Some(out)
}
