//! The dictionary between codimension-two subspaces and classes of rational
//! functions.
//!
//! A subspace of codimension two in projective `d`-space is cut out by two
//! independent linear forms, stored as the rows of a `2 x (d+1)` matrix `B`.
//! Reading the rows as coefficient vectors of polynomials `p` and `q` turns
//! the same data into the rational function `f = p / q`, well defined up to
//! invertible row operations, which act on values by Mobius transformations.
//! Incidence of the subspace with an osculating span of the moment curve
//! `z -> (1, z, ..., z^d)` becomes the statement that `f` takes a single
//! value on a point block, derivatives included.
//!
//! Everything here is generic over a [`Scalar`], so predicates run either in
//! complex floating point with relative tolerances or in exact rational
//! arithmetic where the tolerance is ignored.

use crate::error::{Error, Result};
use crate::linalg;
use crate::poly;
use crate::scalar::Scalar;
use num::complex::Complex64;

/// Codimension-two subspace given by two independent equation rows of length
/// `d + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace<S: Scalar> {
    rows: [Vec<S>; 2],
    d: usize,
}

impl<S: Scalar> Subspace<S> {
    /// Builds the subspace, rejecting dependent rows (all `2 x 2` minors
    /// exactly zero).
    pub fn new(row0: Vec<S>, row1: Vec<S>) -> Result<Self> {
        if row0.len() != row1.len() || row0.len() < 2 {
            return Err(Error::InvalidConfig(format!(
                "equation rows must share a length of at least 2, got {} and {}",
                row0.len(),
                row1.len()
            )));
        }
        let d = row0.len() - 1;
        let s = Self {
            rows: [row0, row1],
            d,
        };
        if s.plucker().iter().all(|x| x.is_zero()) {
            return Err(Error::DegenerateSubspace);
        }
        Ok(s)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn rows(&self) -> (&[S], &[S]) {
        (&self.rows[0], &self.rows[1])
    }

    /// Raw coordinates of the row span on the exterior square: the minors
    /// `b0_i b1_j - b0_j b1_i` over column pairs `i < j`.
    pub fn plucker(&self) -> Vec<S> {
        let (r0, r1) = (&self.rows[0], &self.rows[1]);
        let mut out = Vec::with_capacity((self.d + 1) * self.d / 2);
        for i in 0..=self.d {
            for j in i + 1..=self.d {
                out.push(r0[i].clone() * r1[j].clone() - r0[j].clone() * r1[i].clone());
            }
        }
        out
    }
}

/// Equivalence class of rational functions `p / q` of ambient degree `d`,
/// carried by the pair of coefficient vectors (length `d + 1`, ascending)
/// together with a canonical key identifying the row span.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalClass<S: Scalar> {
    p: Vec<S>,
    q: Vec<S>,
    key: Vec<S>,
    d: usize,
}

impl<S: Scalar> RationalClass<S> {
    /// Builds the class from numerator and denominator coefficients. Shorter
    /// vectors are zero-padded to the longer length; the pair must be
    /// linearly independent.
    pub fn new(mut p: Vec<S>, mut q: Vec<S>) -> Result<Self> {
        let len = p.len().max(q.len()).max(2);
        p.resize(len, S::zero());
        q.resize(len, S::zero());
        let sub = Subspace::new(p.clone(), q.clone())?;
        let key = canonical_key(&sub);
        Ok(Self {
            p,
            q,
            key,
            d: len - 1,
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn p(&self) -> &[S] {
        &self.p
    }

    pub fn q(&self) -> &[S] {
        &self.q
    }

    /// Normalized coordinates of the row span; equal keys mean equal classes.
    pub fn canonical_key(&self) -> &[S] {
        &self.key
    }

    /// Value `f(z)` as a projective pair `(p(z), q(z))`.
    pub fn value_pair(&self, z: &S) -> (S, S) {
        (poly::eval(&self.p, z), poly::eval(&self.q, z))
    }

    /// The class with conjugated coefficients.
    pub fn conjugate(&self) -> Self {
        let p = self.p.iter().map(Scalar::conj).collect();
        let q = self.q.iter().map(Scalar::conj).collect();
        Self::new(p, q).expect("conjugation preserves independence")
    }
}

/// Normalized coordinate vector of the row span.
///
/// Exact scalars divide by the first nonzero minor, which is a genuine
/// canonical form. Floating scalars scale to unit norm and rotate the phase
/// so the largest-magnitude coordinate is positive real; comparisons then go
/// through the phase-invariant distance in [`key_distance`], so the discrete
/// choice only fixes a deterministic representative.
fn canonical_key<S: Scalar>(sub: &Subspace<S>) -> Vec<S> {
    let mut key = sub.plucker();
    if S::EXACT {
        let first = key
            .iter()
            .find(|x| !x.is_zero())
            .expect("independent rows have a nonzero minor")
            .clone();
        for x in &mut key {
            *x = x.clone() / first.clone();
        }
        return key;
    }
    let norm = poly::l2_norm(&key);
    assert!(norm > 0.0, "independent rows have a nonzero minor");
    let scale = S::from_f64(1.0 / norm);
    for x in &mut key {
        *x = x.clone() * scale.clone();
    }
    let mut best = 0;
    for (i, x) in key.iter().enumerate() {
        if x.abs_f64() > key[best].abs_f64() {
            best = i;
        }
    }
    let phase = key[best].clone() * S::from_f64(1.0 / key[best].abs_f64());
    let rotate = phase.conj();
    for x in &mut key {
        *x = x.clone() * rotate.clone();
    }
    key
}

/// Distance between two canonical keys.
///
/// Floating keys are unit vectors; the distance is the chordal metric on the
/// projective space of keys, realized as `|k1 - phase * k2|` with the phase
/// chosen from the inner product. Forming the difference before squaring
/// keeps the metric accurate near zero, where `sqrt(2 - 2|<k1, k2>|)` would
/// lose half the digits to cancellation. Exact keys are canonical, so the
/// distance is 0 or 1.
pub fn key_distance<S: Scalar>(k1: &[S], k2: &[S]) -> f64 {
    assert_eq!(k1.len(), k2.len(), "keys of different ambient degree");
    if S::EXACT {
        return if k1 == k2 { 0.0 } else { 1.0 };
    }
    let mut dot = S::zero();
    for (a, b) in k1.iter().zip(k2) {
        dot = dot + a.clone() * b.conj();
    }
    let mag = dot.abs_f64();
    if mag < 1e-150 {
        return 2.0f64.sqrt();
    }
    let phase = dot * S::from_f64(1.0 / mag);
    let mut sum = 0.0;
    for (a, b) in k1.iter().zip(k2) {
        let diff = a.clone() - phase.clone() * b.clone();
        sum += diff.abs_f64().powi(2);
    }
    sum.sqrt()
}

/// Whether two classes describe the same row span, within `tol` for floating
/// scalars (exact scalars compare canonically; the tolerance is ignored).
pub fn classes_equal<S: Scalar>(f1: &RationalClass<S>, f2: &RationalClass<S>, tol: f64) -> bool {
    if f1.d() != f2.d() {
        return false;
    }
    key_distance(f1.canonical_key(), f2.canonical_key()) <= tol
}

/// Columns of evaluation and derivative vectors of the moment curve
/// `E(z) = (1, z, ..., z^d)` at a block of points with multiplicities: a
/// point of multiplicity `m` contributes `E(z), E'(z), ..., E^(m-1)(z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveMatrix<S: Scalar> {
    cols: Vec<Vec<S>>,
    d: usize,
}

impl<S: Scalar> CurveMatrix<S> {
    pub fn d(&self) -> usize {
        self.d
    }

    /// Number of columns, `sum of multiplicities`.
    pub fn width(&self) -> usize {
        self.cols.len()
    }

    pub fn columns(&self) -> &[Vec<S>] {
        &self.cols
    }
}

/// Builds the curve matrix for a block of `(point, multiplicity)` pairs in
/// ambient degree `d`. The total number of columns may not exceed `d`.
pub fn curve_matrix<S: Scalar>(points: &[(S, usize)], d: usize) -> Result<CurveMatrix<S>> {
    let width: usize = points.iter().map(|(_, m)| *m).sum();
    if width > d {
        return Err(Error::BlockTooLarge {
            points: width,
            max: d,
        });
    }
    if points.iter().any(|(_, m)| *m == 0) {
        return Err(Error::InvalidConfig("zero multiplicity in block".into()));
    }
    let mut cols = Vec::with_capacity(width);
    for (z, m) in points {
        for order in 0..*m {
            let mut col = vec![S::zero(); d + 1];
            for k in order..=d {
                // d^order/dz^order of z^k = k (k-1) ... (k-order+1) z^(k-order)
                let mut falling = 1.0;
                for i in 0..order {
                    falling *= (k - i) as f64;
                }
                let mut term = S::from_f64(falling);
                for _ in 0..k - order {
                    term = term * z.clone();
                }
                col[k] = term;
            }
            cols.push(col);
        }
    }
    Ok(CurveMatrix { cols, d })
}

/// Reads the equation rows of a subspace as a rational function class.
pub fn rational_from_subspace<S: Scalar>(x: &Subspace<S>) -> Result<RationalClass<S>> {
    let (r0, r1) = x.rows();
    RationalClass::new(r0.to_vec(), r1.to_vec())
}

/// Writes a class back as the subspace cut out by its coefficient rows.
pub fn subspace_from_rational<S: Scalar>(f: &RationalClass<S>) -> Subspace<S> {
    Subspace::new(f.p().to_vec(), f.q().to_vec()).expect("class rows are independent")
}

/// Incidence of the subspace with the span of the curve columns: the product
/// `B * C` drops to rank at most one. Floating scalars compare the second
/// singular value against `tol` times the first; exact scalars require all
/// `2 x 2` minors to vanish.
pub fn incidence_check<S: Scalar>(x: &Subspace<S>, w: &CurveMatrix<S>, tol: f64) -> bool {
    assert_eq!(x.d(), w.d(), "ambient degree mismatch");
    let (r0, r1) = x.rows();
    let product: Vec<Vec<S>> = [r0, r1]
        .iter()
        .map(|row| {
            w.columns()
                .iter()
                .map(|col| {
                    let mut acc = S::zero();
                    for (a, b) in row.iter().zip(col) {
                        acc = acc + a.clone() * b.clone();
                    }
                    acc
                })
                .collect()
        })
        .collect();
    S::rank_le(&product, 1, tol)
}

/// Whether the class degenerates: numerator and denominator share a root, or
/// the represented function has degree below `d` because both leading
/// coefficients vanish.
///
/// The common-root test goes through the Sylvester matrix at formal degrees
/// `(d, d)`: exact scalars test the resultant for zero, floating scalars
/// compare the smallest singular value against `tol` times the largest.
pub fn is_reducible<S: Scalar>(f: &RationalClass<S>, tol: f64) -> bool {
    let d = f.d();
    let p = f.p();
    let q = f.q();
    let degree_drop = if S::EXACT {
        p[d].is_zero() && q[d].is_zero()
    } else {
        p[d].abs_f64() <= tol * poly::l2_norm(p) && q[d].abs_f64() <= tol * poly::l2_norm(q)
    };
    if degree_drop {
        return true;
    }
    if S::EXACT {
        poly::resultant(p, q, d, d).is_zero()
    } else {
        let rows = poly::sylvester(p, q, d, d);
        S::rank_le(&rows, 2 * d - 1, tol)
    }
}

/// Whether the row span is closed under conjugation, i.e. the class contains
/// a real representative. Decided by the rank of the rows of `B` stacked on
/// their conjugates: rank two means self-conjugate. On success the second
/// component carries a representative with real coefficient vectors.
pub fn is_real_class<S: Scalar>(f: &RationalClass<S>, tol: f64) -> (bool, Option<RationalClass<S>>) {
    if S::EXACT {
        // Exact scalars are real rationals, so every class is its own
        // real representative.
        return (true, Some(f.clone()));
    }
    let stacked: Vec<Vec<S>> = vec![
        f.p().to_vec(),
        f.q().to_vec(),
        f.p().iter().map(Scalar::conj).collect(),
        f.q().iter().map(Scalar::conj).collect(),
    ];
    if !S::rank_le(&stacked, 2, tol) {
        return (false, None);
    }
    // The real points of a self-conjugate span are spanned by the real and
    // imaginary parts of the rows; an SVD of that real 4 x (d+1) matrix
    // yields a stable orthonormal pair.
    let real_rows = nalgebra::DMatrix::from_fn(4, f.d() + 1, |i, j| match i {
        0 => f.p()[j].re_f64(),
        1 => f.p()[j].im_f64(),
        2 => f.q()[j].re_f64(),
        _ => f.q()[j].im_f64(),
    });
    let svd = real_rows.svd(false, true);
    let v_t = svd.v_t.expect("requested right singular vectors");
    let take = |r: usize| -> Vec<S> {
        (0..v_t.ncols()).map(|j| S::from_f64(v_t[(r, j)])).collect()
    };
    let rep = RationalClass::new(take(0), take(1)).expect("orthonormal rows are independent");
    (true, Some(rep))
}

/// Distance between the values `f(z1)` and `f(z2)` in the chordal metric on
/// the sphere of values, which stays meaningful across poles:
/// `|p1 q2 - p2 q1| / (|(p1, q1)| |(p2, q2)|)`.
pub fn chordal_value_distance<S: Scalar>(f: &RationalClass<S>, z1: &S, z2: &S) -> f64 {
    let (p1, q1) = f.value_pair(z1);
    let (p2, q2) = f.value_pair(z2);
    let cross = (p1.clone() * q2.clone() - p2.clone() * q1.clone()).abs_f64();
    let n1 = (p1.abs_f64().powi(2) + q1.abs_f64().powi(2)).sqrt();
    let n2 = (p2.abs_f64().powi(2) + q2.abs_f64().powi(2)).sqrt();
    cross / (n1 * n2)
}

/// Flag data attached to a solution of a configuration with one distinct
/// block and double points elsewhere: the class's subspace together with
/// generator bases for it and for its span with the distinct block's secant
/// span.
#[derive(Debug, Clone)]
pub struct Flag<S: Scalar> {
    f2: Subspace<S>,
    f2_generators: Vec<Vec<S>>,
    f1_generators: Vec<Vec<S>>,
}

impl<S: Scalar> Flag<S> {
    pub(crate) fn build(f2: Subspace<S>, secant: &CurveMatrix<S>, tol: f64) -> Result<Self> {
        let (r0, r1) = f2.rows();
        let f2_generators = linalg::kernel_basis(&[r0.to_vec(), r1.to_vec()], tol);
        if f2_generators.len() != f2.d() - 1 {
            return Err(Error::Internal(format!(
                "expected a kernel of dimension {}, got {}",
                f2.d() - 1,
                f2_generators.len()
            )));
        }
        let mut stacked = f2_generators.clone();
        stacked.extend(secant.columns().iter().cloned());
        let f1_generators = linalg::row_basis(&stacked, tol);
        Ok(Self {
            f2,
            f2_generators,
            f1_generators,
        })
    }

    pub fn subspace(&self) -> &Subspace<S> {
        &self.f2
    }

    /// Generators (as rows) of the solution subspace.
    pub fn f2_generators(&self) -> &[Vec<S>] {
        &self.f2_generators
    }

    /// Generators (as rows) of the span of the solution subspace with the
    /// distinct block's secant span.
    pub fn f1_generators(&self) -> &[Vec<S>] {
        &self.f1_generators
    }

    /// Projective dimension of the solution subspace (`d - 2`).
    pub fn f2_projective_dim(&self) -> usize {
        self.f2_generators.len() - 1
    }

    /// Projective dimension of the enlarged subspace (`d - 1` when the
    /// incidence is genuine).
    pub fn f1_projective_dim(&self) -> usize {
        self.f1_generators.len() - 1
    }
}

/// Convenience embedding of real points for the floating path.
pub fn complex_points(points: &[(f64, usize)]) -> Vec<(Complex64, usize)> {
    points
        .iter()
        .map(|&(x, m)| (Complex64::new(x, 0.0), m))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigRational;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn real_poly(coeffs: &[f64]) -> Vec<Complex64> {
        coeffs.iter().map(|&x| c(x, 0.0)).collect()
    }

    const TOL: f64 = 1e-9;

    #[test]
    fn curve_matrix_columns_for_double_point_at_zero() {
        let w = curve_matrix(&[(c(0.0, 0.0), 2)], 2).unwrap();
        assert_eq!(w.width(), 2);
        assert_eq!(w.columns()[0], real_poly(&[1.0, 0.0, 0.0]));
        assert_eq!(w.columns()[1], real_poly(&[0.0, 1.0, 0.0]));
    }

    #[test]
    fn curve_matrix_rejects_oversized_block() {
        let pts = vec![(c(0.0, 0.0), 2), (c(1.0, 0.0), 2)];
        assert!(matches!(
            curve_matrix(&pts, 3),
            Err(Error::BlockTooLarge { points: 4, max: 3 })
        ));
    }

    #[test]
    fn inverse_square_meets_symmetric_pair() {
        // f = 1 / z^2 takes the value 1 at both 1 and -1.
        let f = RationalClass::new(real_poly(&[1.0, 0.0, 0.0]), real_poly(&[0.0, 0.0, 1.0])).unwrap();
        let x = subspace_from_rational(&f);
        let w = curve_matrix(&[(c(1.0, 0.0), 1), (c(-1.0, 0.0), 1)], 2).unwrap();
        assert!(incidence_check(&x, &w, TOL));
        let off = curve_matrix(&[(c(1.0, 0.0), 1), (c(-1.1, 0.0), 1)], 2).unwrap();
        assert!(!incidence_check(&x, &off, TOL));
    }

    #[test]
    fn incidence_matches_constant_values_exactly() {
        // Exact path: p = 1, q = z^2 on the same block.
        let one = BigRational::from_f64(1.0);
        let zero = BigRational::from_f64(0.0);
        let f = RationalClass::new(
            vec![one.clone(), zero.clone(), zero.clone()],
            vec![zero.clone(), zero.clone(), one.clone()],
        )
        .unwrap();
        let x = subspace_from_rational(&f);
        let pts = vec![
            (BigRational::from_f64(1.0), 1),
            (BigRational::from_f64(-1.0), 1),
        ];
        let w = curve_matrix(&pts, 2).unwrap();
        assert!(incidence_check(&x, &w, 0.0));
    }

    #[test]
    fn reducibility_detects_shared_roots_and_degree_drops() {
        // p = z^2 - 1, q = z - 1 share the root 1.
        let shared =
            RationalClass::new(real_poly(&[-1.0, 0.0, 1.0]), real_poly(&[-1.0, 1.0])).unwrap();
        assert!(is_reducible(&shared, TOL));
        // p = z^2, q = z - 1 are coprime at full degree.
        let coprime =
            RationalClass::new(real_poly(&[0.0, 0.0, 1.0]), real_poly(&[-1.0, 1.0])).unwrap();
        assert!(!is_reducible(&coprime, TOL));
        // Ambient degree 3 but both leading coefficients vanish.
        let dropped = RationalClass::new(
            real_poly(&[1.0, 0.0, 1.0, 0.0]),
            real_poly(&[0.0, 0.0, 1.0, 0.0]),
        )
        .unwrap();
        assert!(is_reducible(&dropped, TOL));
    }

    #[test]
    fn exact_reducibility_uses_the_resultant() {
        let rat = |x: f64| BigRational::from_f64(x);
        let shared = RationalClass::new(
            vec![rat(-1.0), rat(0.0), rat(1.0)],
            vec![rat(-1.0), rat(1.0), rat(0.0)],
        )
        .unwrap();
        assert!(is_reducible(&shared, 0.0));
        let coprime = RationalClass::new(
            vec![rat(0.0), rat(0.0), rat(1.0)],
            vec![rat(-1.0), rat(1.0), rat(0.0)],
        )
        .unwrap();
        assert!(!is_reducible(&coprime, 0.0));
    }

    #[test]
    fn reality_of_rotated_real_class() {
        // p = i z^2, q = i spans the same plane as (z^2, 1).
        let f = RationalClass::new(
            vec![c(0.0, 0.0), c(0.0, 0.0), c(0.0, 1.0)],
            vec![c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0)],
        )
        .unwrap();
        let (real, rep) = is_real_class(&f, TOL);
        assert!(real);
        let rep = rep.unwrap();
        assert!(rep.p().iter().chain(rep.q()).all(|x| x.im.abs() < 1e-12));
        let plain =
            RationalClass::new(real_poly(&[0.0, 0.0, 1.0]), real_poly(&[1.0, 0.0, 0.0])).unwrap();
        assert!(classes_equal(&rep, &plain, 1e-8));
    }

    #[test]
    fn genuinely_complex_class_is_flagged() {
        // p = (z - i)^2, q = 1: the conjugate span differs, so the stacked
        // rows reach rank 3. (By contrast z^2 - i over 1 is a Moebius shift
        // of the real z^2.)
        let f = RationalClass::new(
            vec![c(-1.0, 0.0), c(0.0, -2.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
        )
        .unwrap();
        let (real, rep) = is_real_class(&f, TOL);
        assert!(!real);
        assert!(rep.is_none());
    }

    #[test]
    fn mobius_moves_do_not_change_the_class() {
        let p = real_poly(&[0.0, 1.0, 2.0]);
        let q = real_poly(&[1.0, -1.0, 0.5]);
        let f = RationalClass::new(p.clone(), q.clone()).unwrap();
        // (2 p + q) / (p - q)
        let num = poly::add(&poly::scale(&p, &c(2.0, 0.0)), &q);
        let den = poly::sub(&p, &q);
        let g = RationalClass::new(num, den).unwrap();
        assert!(classes_equal(&f, &g, 1e-10));
        // scaling by 7
        let h = RationalClass::new(poly::scale(&p, &c(7.0, 0.0)), poly::scale(&q, &c(7.0, 0.0)))
            .unwrap();
        assert!(classes_equal(&f, &h, 1e-12));
        // a genuinely different span
        let other = RationalClass::new(real_poly(&[0.0, 1.0, 1.0]), real_poly(&[1.0, 0.0, 0.0]))
            .unwrap();
        assert!(!classes_equal(&f, &other, 1e-6));
    }

    #[test]
    fn subspace_round_trip_preserves_class() {
        let f = RationalClass::new(real_poly(&[1.0, 2.0, 3.0]), real_poly(&[0.0, -1.0, 1.0]))
            .unwrap();
        let back = rational_from_subspace(&subspace_from_rational(&f)).unwrap();
        assert!(classes_equal(&f, &back, 1e-14));
    }

    #[test]
    fn degenerate_rows_are_rejected() {
        let row = real_poly(&[1.0, 2.0, 3.0]);
        let double = poly::scale(&row, &c(2.0, 0.0));
        assert!(matches!(
            Subspace::new(row.clone(), double),
            Err(Error::DegenerateSubspace)
        ));
        assert!(RationalClass::new(row.clone(), row).is_err());
    }

    #[test]
    fn chordal_distance_handles_poles() {
        // f = 1 / (z - 1) has a pole at 1; distances stay finite.
        let f = RationalClass::new(real_poly(&[1.0, 0.0]), real_poly(&[-1.0, 1.0])).unwrap();
        let dist = chordal_value_distance(&f, &c(1.0, 0.0), &c(1.0 + 1e-9, 0.0));
        assert!(dist < 1e-8);
        let far = chordal_value_distance(&f, &c(0.0, 0.0), &c(2.0, 0.0));
        assert!(far > 0.5);
    }
}
