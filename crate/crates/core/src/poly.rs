//! Dense univariate polynomials as coefficient vectors in ascending degree
//! order. `vec![c0, c1, c2]` is `c0 + c1 z + c2 z^2`.

use crate::scalar::Scalar;
use num::{BigRational, Signed, Zero};

/// Degree of the polynomial, ignoring exactly-zero leading coefficients.
/// Returns `None` for the zero polynomial.
pub fn degree<S: Scalar>(c: &[S]) -> Option<usize> {
    c.iter().rposition(|x| !x.is_zero())
}

pub fn trim<S: Scalar>(c: &mut Vec<S>) {
    while c.len() > 1 && c.last().map_or(false, Zero::is_zero) {
        c.pop();
    }
}

/// Horner evaluation.
pub fn eval<S: Scalar>(c: &[S], z: &S) -> S {
    let mut acc = S::zero();
    for coeff in c.iter().rev() {
        acc = acc * z.clone() + coeff.clone();
    }
    acc
}

pub fn derivative<S: Scalar>(c: &[S]) -> Vec<S> {
    if c.len() <= 1 {
        return vec![S::zero()];
    }
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(k, coeff)| coeff.clone() * S::from_f64(k as f64))
        .collect()
}

pub fn add<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(S::zero);
            let y = b.get(i).cloned().unwrap_or_else(S::zero);
            x + y
        })
        .collect()
}

pub fn sub<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(S::zero);
            let y = b.get(i).cloned().unwrap_or_else(S::zero);
            x - y
        })
        .collect()
}

pub fn scale<S: Scalar>(a: &[S], s: &S) -> Vec<S> {
    a.iter().map(|x| x.clone() * s.clone()).collect()
}

pub fn mul<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    if a.is_empty() || b.is_empty() {
        return vec![S::zero()];
    }
    let mut out = vec![S::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    out
}

/// Quotient and remainder of `num / den`. The divisor's degree is taken after
/// trimming exact zeros; panics on a zero divisor.
pub fn divrem<S: Scalar>(num: &[S], den: &[S]) -> (Vec<S>, Vec<S>) {
    let dd = degree(den).expect("division by the zero polynomial");
    let lead = den[dd].clone();
    let mut rem = num.to_vec();
    if rem.len() <= dd {
        return (vec![S::zero()], rem);
    }
    let mut quo = vec![S::zero(); rem.len() - dd];
    for k in (dd..rem.len()).rev() {
        if rem[k].is_zero() {
            continue;
        }
        let c = rem[k].clone() / lead.clone();
        quo[k - dd] = c.clone();
        for i in 0..dd {
            let s = den[i].clone() * c.clone();
            rem[k - dd + i] = rem[k - dd + i].clone() - s;
        }
        rem[k] = S::zero();
    }
    rem.truncate(dd.max(1));
    (quo, rem)
}

/// Synthetic division by `(z - w)`: returns the quotient and the remainder
/// value `c(w)`.
pub fn synth_div<S: Scalar>(c: &[S], w: &S) -> (Vec<S>, S) {
    if c.len() <= 1 {
        return (vec![S::zero()], c.first().cloned().unwrap_or_else(S::zero));
    }
    let mut quo = vec![S::zero(); c.len() - 1];
    let mut carry = S::zero();
    for k in (0..c.len()).rev() {
        let v = c[k].clone() + carry.clone() * w.clone();
        if k == 0 {
            return (quo, v);
        }
        quo[k - 1] = v.clone();
        carry = v;
    }
    unreachable!()
}

/// Monic polynomial with the given roots and multiplicities.
pub fn from_roots<S: Scalar>(roots: &[(S, usize)]) -> Vec<S> {
    let mut out = vec![S::one()];
    for (r, m) in roots {
        for _ in 0..*m {
            let mut next = vec![S::zero(); out.len() + 1];
            for (i, c) in out.iter().enumerate() {
                next[i + 1] = next[i + 1].clone() + c.clone();
                next[i] = next[i].clone() - r.clone() * c.clone();
            }
            out = next;
        }
    }
    out
}

/// Wronskian `p' q - p q'`.
pub fn wronskian<S: Scalar>(p: &[S], q: &[S]) -> Vec<S> {
    sub(&mul(&derivative(p), q), &mul(p, &derivative(q)))
}

pub fn l2_norm<S: Scalar>(c: &[S]) -> f64 {
    c.iter().map(|x| x.abs_f64().powi(2)).sum::<f64>().sqrt()
}

/// Sylvester matrix of `p` and `q` at formal degrees `m` and `n`: the first
/// `n` rows carry shifts of `p`, the remaining `m` rows shifts of `q`.
/// Coefficients beyond a polynomial's stored length count as zero, so a
/// genuine degree drop shows up as a singular matrix.
pub fn sylvester<S: Scalar>(p: &[S], q: &[S], m: usize, n: usize) -> Vec<Vec<S>> {
    let size = m + n;
    let coeff = |c: &[S], k: usize| c.get(k).cloned().unwrap_or_else(S::zero);
    let mut rows = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = vec![S::zero(); size];
        for k in 0..=m {
            row[shift + k] = coeff(p, m - k);
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![S::zero(); size];
        for k in 0..=n {
            row[shift + k] = coeff(q, n - k);
        }
        rows.push(row);
    }
    rows
}

/// Determinant by fraction-producing elimination; intended for exact scalars,
/// where the zero test is meaningful.
pub fn determinant<S: Scalar>(rows: &[Vec<S>]) -> S {
    let n = rows.len();
    let mut m = rows.to_vec();
    let mut det = S::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&i| !m[i][col].is_zero()) else {
            return S::zero();
        };
        if pivot != col {
            m.swap(col, pivot);
            det = -det;
        }
        det = det * m[col][col].clone();
        let inv = m[col][col].clone();
        for i in col + 1..n {
            if m[i][col].is_zero() {
                continue;
            }
            let factor = m[i][col].clone() / inv.clone();
            for j in col..n {
                let s = m[col][j].clone() * factor.clone();
                m[i][j] = m[i][j].clone() - s;
            }
        }
    }
    det
}

/// Resultant of `p` and `q` at formal degrees `m`, `n`.
pub fn resultant<S: Scalar>(p: &[S], q: &[S], m: usize, n: usize) -> S {
    determinant(&sylvester(p, q, m, n))
}

/// Sturm chain of a rational-coefficient polynomial.
fn sturm_chain(p: &[BigRational]) -> Vec<Vec<BigRational>> {
    let mut chain: Vec<Vec<BigRational>> = Vec::new();
    let mut a = p.to_vec();
    trim(&mut a);
    if degree(&a).is_none() {
        return chain;
    }
    let mut b = derivative(&a);
    trim(&mut b);
    chain.push(a.clone());
    while degree(&b).is_some() {
        chain.push(b.clone());
        let (_, mut r) = divrem(&a, &b);
        trim(&mut r);
        let neg: Vec<BigRational> = r.iter().map(|c| -c.clone()).collect();
        a = b;
        b = neg;
        if degree(&b).is_none() {
            break;
        }
    }
    chain
}

fn sign_variations(chain: &[Vec<BigRational>], x: &BigRational) -> usize {
    let mut last: Option<bool> = None;
    let mut variations = 0;
    for poly in chain {
        let v = eval(poly, x);
        if v.is_zero() {
            continue;
        }
        let positive = v.is_positive();
        if let Some(prev) = last {
            if prev != positive {
                variations += 1;
            }
        }
        last = Some(positive);
    }
    variations
}

/// Exact count of distinct real roots of `p` in the open interval `(a, b)`.
/// Requires `p(a) != 0` and `p(b) != 0`.
pub fn count_real_roots_between(p: &[BigRational], a: &BigRational, b: &BigRational) -> usize {
    assert!(a < b, "empty interval");
    assert!(!eval(p, a).is_zero() && !eval(p, b).is_zero(), "root at an endpoint");
    let chain = sturm_chain(p);
    sign_variations(&chain, a) - sign_variations(&chain, b)
}
