//! Small dense linear algebra over a [`Scalar`], shared by the interpolation
//! solvers and the flag construction. Matrices are row-major `Vec<Vec<S>>`.

use crate::scalar::Scalar;

/// Relative pivot threshold below which a floating elimination treats an
/// entry as zero. Exact scalars use exact zero tests instead.
const PIVOT_FLOOR: f64 = 1e-13;

fn matrix_scale<S: Scalar>(rows: &[Vec<S>]) -> f64 {
    rows.iter()
        .flat_map(|r| r.iter())
        .map(Scalar::abs_f64)
        .fold(0.0f64, f64::max)
}

fn pivot_is_zero<S: Scalar>(entry: &S, scale: f64) -> bool {
    if S::EXACT {
        entry.is_zero()
    } else {
        entry.abs_f64() <= PIVOT_FLOOR * scale.max(f64::MIN_POSITIVE)
    }
}

/// Solves the square system `a * x = b` by elimination with partial pivoting.
/// Returns `None` when a pivot falls below the relative floor (singular or
/// numerically unusable system).
pub(crate) fn solve<S: Scalar>(a: &[Vec<S>], b: &[S]) -> Option<Vec<S>> {
    let n = a.len();
    assert!(a.iter().all(|row| row.len() == n) && b.len() == n);
    let scale = matrix_scale(a);
    let mut m: Vec<Vec<S>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();

    for col in 0..n {
        let pivot_row = (col..n).max_by(|&i, &j| {
            m[i][col]
                .abs_f64()
                .partial_cmp(&m[j][col].abs_f64())
                .unwrap_or(std::cmp::Ordering::Equal)
        })?;
        if pivot_is_zero(&m[pivot_row][col], scale) {
            return None;
        }
        m.swap(col, pivot_row);
        let inv = m[col][col].clone();
        for i in 0..n {
            if i == col || m[i][col].is_zero() {
                continue;
            }
            let factor = m[i][col].clone() / inv.clone();
            for j in col..=n {
                let s = m[col][j].clone() * factor.clone();
                m[i][j] = m[i][j].clone() - s;
            }
        }
    }
    Some(
        (0..n)
            .map(|i| m[i][n].clone() / m[i][i].clone())
            .collect(),
    )
}

/// Row-reduces `rows` in place and returns the pivot columns.
fn row_reduce<S: Scalar>(m: &mut Vec<Vec<S>>, tol: f64) -> Vec<usize> {
    let scale = matrix_scale(m).max(1e-300);
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let pivot_row = (row..m.len()).max_by(|&i, &j| {
            m[i][col]
                .abs_f64()
                .partial_cmp(&m[j][col].abs_f64())
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        let Some(pr) = pivot_row else { break };
        let treat_zero = if S::EXACT {
            m[pr][col].is_zero()
        } else {
            m[pr][col].abs_f64() <= tol * scale
        };
        if treat_zero {
            continue;
        }
        m.swap(row, pr);
        let inv = m[row][col].clone();
        for j in col..ncols {
            m[row][j] = m[row][j].clone() / inv.clone();
        }
        for i in 0..m.len() {
            if i == row || m[i][col].is_zero() {
                continue;
            }
            let factor = m[i][col].clone();
            for j in col..ncols {
                let s = m[row][j].clone() * factor.clone();
                m[i][j] = m[i][j].clone() - s;
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Basis of the row space, as reduced rows.
pub(crate) fn row_basis<S: Scalar>(rows: &[Vec<S>], tol: f64) -> Vec<Vec<S>> {
    let mut m = rows.to_vec();
    let pivots = row_reduce(&mut m, tol);
    m.truncate(pivots.len());
    m
}

/// Basis of the null space `{ x : rows * x = 0 }`.
pub(crate) fn kernel_basis<S: Scalar>(rows: &[Vec<S>], tol: f64) -> Vec<Vec<S>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut m = rows.to_vec();
    let pivots = row_reduce(&mut m, tol);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![S::zero(); ncols];
        v[free] = S::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[r][free].clone();
        }
        basis.push(v);
    }
    basis
}
