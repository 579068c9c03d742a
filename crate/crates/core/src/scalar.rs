//! Dual scalar support: complex floating point for numeric solving and exact
//! rational arithmetic for identities that must hold on the nose.
//!
//! Predicates that are rank checks in disguise (incidence, reality,
//! reducibility) route through [`Scalar::rank_le`]. The floating
//! implementation compares singular values against a relative tolerance; the
//! exact implementation runs Gaussian elimination and ignores the tolerance.

use num::complex::Complex64;
use num::{BigRational, One, ToPrimitive, Zero};
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Field scalar used by polynomials, subspaces and rational classes.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
{
    /// True when arithmetic is exact and tolerance arguments are ignored.
    const EXACT: bool;

    /// Embeds a finite `f64`. Panics on NaN or infinity.
    fn from_f64(x: f64) -> Self;

    /// Complex conjugate; the identity for real scalars.
    fn conj(&self) -> Self;

    /// Modulus as `f64`. Approximate for exact scalars, where it is only used
    /// to pick well-scaled pivots and to report norms.
    fn abs_f64(&self) -> f64;

    /// Real and imaginary parts as `f64` (approximate for exact scalars).
    fn re_f64(&self) -> f64;
    fn im_f64(&self) -> f64;

    /// Whether the matrix given by `rows` has rank at most `r`.
    ///
    /// `tol` is relative to the largest singular value and only consulted by
    /// inexact scalars.
    fn rank_le(rows: &[Vec<Self>], r: usize, tol: f64) -> bool;
}

impl Scalar for Complex64 {
    const EXACT: bool = false;

    fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "cannot embed non-finite value {x}");
        Complex64::new(x, 0.0)
    }

    fn conj(&self) -> Self {
        Complex64::conj(self)
    }

    fn abs_f64(&self) -> f64 {
        self.norm()
    }

    fn re_f64(&self) -> f64 {
        self.re
    }

    fn im_f64(&self) -> f64 {
        self.im
    }

    fn rank_le(rows: &[Vec<Self>], r: usize, tol: f64) -> bool {
        if rows.is_empty() || rows[0].is_empty() {
            return true;
        }
        let m = nalgebra::DMatrix::from_fn(rows.len(), rows[0].len(), |i, j| rows[i][j]);
        let sv = m.svd(false, false).singular_values;
        if r >= sv.len() {
            return true;
        }
        // Singular values come back sorted in descending order.
        sv[r] <= tol * sv[0]
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_f64(x: f64) -> Self {
        BigRational::from_float(x).expect("cannot embed non-finite value")
    }

    fn conj(&self) -> Self {
        self.clone()
    }

    fn abs_f64(&self) -> f64 {
        self.to_f64().map(f64::abs).unwrap_or(f64::INFINITY)
    }

    fn re_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::INFINITY)
    }

    fn im_f64(&self) -> f64 {
        0.0
    }

    fn rank_le(rows: &[Vec<Self>], r: usize, _tol: f64) -> bool {
        exact_rank(rows) <= r
    }
}

fn exact_rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = m[rank][col].clone();
        for i in rank + 1..m.len() {
            if m[i][col].is_zero() {
                continue;
            }
            let factor = &m[i][col] / &inv;
            for j in col..ncols {
                let s = &m[rank][j] * &factor;
                m[i][j] = &m[i][j] - s;
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn r(n: i64) -> BigRational {
        BigRational::from_f64(n as f64)
    }

    #[test]
    fn floating_rank_of_dependent_rows() {
        let rows = vec![vec![c(1.0, 0.0), c(2.0, 0.0)], vec![c(2.0, 0.0), c(4.0, 0.0)]];
        assert!(Complex64::rank_le(&rows, 1, 1e-12));
        assert!(!Complex64::rank_le(&rows, 0, 1e-12));
    }

    #[test]
    fn floating_rank_of_independent_rows() {
        let rows = vec![vec![c(1.0, 0.0), c(0.0, 1.0)], vec![c(0.0, 0.0), c(1.0, 0.0)]];
        assert!(!Complex64::rank_le(&rows, 1, 1e-12));
        assert!(Complex64::rank_le(&rows, 2, 1e-12));
    }

    #[test]
    fn exact_rank_ignores_tolerance() {
        let rows = vec![vec![r(1), r(2), r(3)], vec![r(2), r(4), r(6)], vec![r(0), r(1), r(0)]];
        assert!(BigRational::rank_le(&rows, 2, 0.0));
        assert!(!BigRational::rank_le(&rows, 1, 0.5));
    }

    #[test]
    fn rational_embedding_is_exact() {
        let x = BigRational::from_f64(0.1);
        assert!((x.to_f64().unwrap() - 0.1).abs() == 0.0);
    }
}
