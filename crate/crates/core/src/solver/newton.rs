//! Gauge-fixed square systems and the damped Newton iteration behind
//! [`solve_all`](super::solve_all).
//!
//! A gauge picks two blocks whose values are pinned to 0 and infinity and a
//! third block whose first node fixes the relative scale of numerator and
//! denominator. The unknowns are the free coefficients of the two cofactors;
//! the equations are the reduced cross-differences of the remaining blocks
//! plus the normalization row. Every solution class taking pairwise distinct
//! values on the three chosen blocks is a regular root of this system, and
//! rotating the gauge covers the classes a single choice misses.

use super::ProblemConfig;
use crate::linalg;
use crate::poly;
use crate::projective::{classes_equal, RationalClass};
use num::complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

type C = Complex64;

/// One constrained block: `f` must be constant on the roots of `modulus`.
struct BlockEquations {
    modulus: Vec<C>,
    anchor: C,
    count: usize,
}

pub(super) struct GaugedSystem {
    p_base: Vec<C>,
    q_base: Vec<C>,
    n_u: usize,
    n_v: usize,
    blocks: Vec<BlockEquations>,
    norm_anchor: C,
}

impl GaugedSystem {
    pub(super) fn new(config: &ProblemConfig, zero: usize, pole: usize, norm: usize) -> Self {
        let d = config.d();
        let weights = config.block_weights();
        let mut blocks = Vec::new();
        for l in 0..config.block_count() {
            if l == zero || l == pole {
                continue;
            }
            let pts = config.block_points::<C>(l);
            blocks.push(BlockEquations {
                anchor: pts[0].0,
                modulus: poly::from_roots(&pts),
                count: weights[l] - 1,
            });
        }
        Self {
            p_base: poly::from_roots(&config.block_points::<C>(zero)),
            q_base: poly::from_roots(&config.block_points::<C>(pole)),
            n_u: d - weights[zero],
            n_v: d + 1 - weights[pole],
            blocks,
            norm_anchor: config.block_points::<C>(norm)[0].0,
        }
    }

    pub(super) fn dim(&self) -> usize {
        self.n_u + self.n_v
    }

    /// Candidate pair for an unknown vector: `p` is the zero-block factor
    /// times a monic cofactor, `q` the pole-block factor times a free one.
    pub(super) fn assemble(&self, theta: &[C]) -> (Vec<C>, Vec<C>) {
        let mut u = theta[..self.n_u].to_vec();
        u.push(C::new(1.0, 0.0));
        let v = theta[self.n_u..].to_vec();
        (poly::mul(&self.p_base, &u), poly::mul(&self.q_base, &v))
    }

    /// The `count` equations of one block, extracted from a cross-difference
    /// polynomial: reduce modulo the block polynomial and strip the automatic
    /// root at the anchor.
    fn reduce(&self, g: &[C], b: &BlockEquations) -> Vec<C> {
        let (_, rem) = poly::divrem(g, &b.modulus);
        let (mut s, _) = poly::synth_div(&rem, &b.anchor);
        s.resize(b.count, C::new(0.0, 0.0));
        s
    }

    pub(super) fn residual(&self, p: &[C], q: &[C]) -> Vec<C> {
        let mut out = Vec::with_capacity(self.dim());
        for b in &self.blocks {
            let pw = poly::eval(p, &b.anchor);
            let qw = poly::eval(q, &b.anchor);
            let g = poly::sub(&poly::scale(p, &qw), &poly::scale(q, &pw));
            out.extend(self.reduce(&g, b));
        }
        out.push(poly::eval(p, &self.norm_anchor) - poly::eval(q, &self.norm_anchor));
        out
    }

    /// Derivative of the residual along `(dp, dq)`; exact because every step
    /// of the residual pipeline is linear in the pair.
    fn directional(&self, p: &[C], q: &[C], dp: &[C], dq: &[C]) -> Vec<C> {
        let mut out = Vec::with_capacity(self.dim());
        for b in &self.blocks {
            let pw = poly::eval(p, &b.anchor);
            let qw = poly::eval(q, &b.anchor);
            let dpw = poly::eval(dp, &b.anchor);
            let dqw = poly::eval(dq, &b.anchor);
            let g = poly::add(
                &poly::sub(&poly::scale(dp, &qw), &poly::scale(dq, &pw)),
                &poly::sub(&poly::scale(p, &dqw), &poly::scale(q, &dpw)),
            );
            out.extend(self.reduce(&g, b));
        }
        out.push(poly::eval(dp, &self.norm_anchor) - poly::eval(dq, &self.norm_anchor));
        out
    }

    pub(super) fn jacobian(&self, p: &[C], q: &[C]) -> Vec<Vec<C>> {
        let n = self.dim();
        let zero = vec![C::new(0.0, 0.0)];
        let mut rows = vec![Vec::with_capacity(n); n];
        for m in 0..n {
            let col = if m < self.n_u {
                self.directional(p, q, &shifted(&self.p_base, m), &zero)
            } else {
                self.directional(p, q, &zero, &shifted(&self.q_base, m - self.n_u))
            };
            for (row, value) in rows.iter_mut().zip(col) {
                row.push(value);
            }
        }
        rows
    }
}

/// `base * z^k`.
fn shifted(base: &[C], k: usize) -> Vec<C> {
    let mut out = vec![C::new(0.0, 0.0); k];
    out.extend_from_slice(base);
    out
}

fn residual_norm(sys: &GaugedSystem, theta: &[C]) -> f64 {
    let (p, q) = sys.assemble(theta);
    poly::l2_norm(&sys.residual(&p, &q))
}

/// Runs damped Newton from one start. Returns the converged pair, or `None`
/// when the iteration stalls, hits a singular Jacobian, or runs out of
/// iterations.
pub(super) fn newton_solve(
    sys: &GaugedSystem,
    start: Vec<C>,
    tol: f64,
    max_iter: usize,
) -> Option<(Vec<C>, Vec<C>)> {
    let mut theta = start;
    for _ in 0..max_iter {
        let (p, q) = sys.assemble(&theta);
        let f = sys.residual(&p, &q);
        let scale = poly::l2_norm(&p) * poly::l2_norm(&q) + 1.0;
        let fnorm = poly::l2_norm(&f);
        if fnorm <= tol * scale {
            polish(sys, &mut theta);
            let (p, q) = sys.assemble(&theta);
            return Some((p, q));
        }
        let jac = sys.jacobian(&p, &q);
        let rhs: Vec<C> = f.iter().map(|x| -x).collect();
        let step = linalg::solve(&jac, &rhs)?;
        let mut lambda = 1.0;
        loop {
            let trial: Vec<C> = theta
                .iter()
                .zip(&step)
                .map(|(t, s)| t + s * C::new(lambda, 0.0))
                .collect();
            if residual_norm(sys, &trial) < fnorm {
                theta = trial;
                break;
            }
            lambda *= 0.5;
            if lambda < 1e-10 {
                return None;
            }
        }
    }
    None
}

/// A couple of undamped steps after convergence push the residual from the
/// acceptance threshold down to rounding level.
fn polish(sys: &GaugedSystem, theta: &mut Vec<C>) {
    for _ in 0..2 {
        let (p, q) = sys.assemble(theta);
        let f = sys.residual(&p, &q);
        let fnorm = poly::l2_norm(&f);
        if fnorm == 0.0 {
            return;
        }
        let jac = sys.jacobian(&p, &q);
        let rhs: Vec<C> = f.iter().map(|x| -x).collect();
        let Some(step) = linalg::solve(&jac, &rhs) else {
            return;
        };
        let trial: Vec<C> = theta.iter().zip(&step).map(|(t, s)| t + s).collect();
        if residual_norm(sys, &trial) < fnorm {
            *theta = trial;
        } else {
            return;
        }
    }
}

/// Draws one start vector. Cofactors are built from random roots spread over
/// the configuration's span (with an imaginary spread, so complex solution
/// pairs are reachable), and the free cofactor is scaled to nearly satisfy
/// the normalization row.
pub(super) fn sample_start(
    sys: &GaugedSystem,
    rng: &mut ChaCha8Rng,
    center: f64,
    radius: f64,
) -> Vec<C> {
    let root = |rng: &mut ChaCha8Rng| {
        C::new(
            center + radius * (2.0 * rng.gen::<f64>() - 1.0),
            0.6 * radius * (2.0 * rng.gen::<f64>() - 1.0),
        )
    };
    let u_roots: Vec<(C, usize)> = (0..sys.n_u).map(|_| (root(rng), 1)).collect();
    let v_roots: Vec<(C, usize)> = (0..sys.n_v - 1).map(|_| (root(rng), 1)).collect();
    let u = poly::from_roots(&u_roots);
    let v_monic = poly::from_roots(&v_roots);
    let p = poly::mul(&sys.p_base, &u);
    let q_monic = poly::mul(&sys.q_base, &v_monic);
    let pn = poly::eval(&p, &sys.norm_anchor);
    let qn = poly::eval(&q_monic, &sys.norm_anchor);
    let scale = if qn.norm() > 1e-12 * pn.norm().max(1.0) {
        pn / qn
    } else {
        C::new(1.0, 0.0)
    };
    let mut theta = u[..sys.n_u].to_vec();
    theta.extend(poly::scale(&v_monic, &scale));
    theta
}

/// Collects distinct classes up to the structure count.
pub(super) struct ClassAccumulator {
    classes: Vec<RationalClass<C>>,
    target: usize,
    dedup_tol: f64,
}

impl ClassAccumulator {
    pub(super) fn new(target: usize, dedup_tol: f64) -> Self {
        Self {
            classes: Vec::new(),
            target,
            dedup_tol,
        }
    }

    /// Inserts the class unless an equivalent one is already present.
    ///
    /// # Panics
    ///
    /// When the insert would exceed the structure count: that means either
    /// deduplication is missing duplicates or the configuration breaks the
    /// counting assumptions, and silently keeping the extra class would
    /// corrupt every downstream statistic.
    pub(super) fn insert(&mut self, f: RationalClass<C>) -> bool {
        if self
            .classes
            .iter()
            .any(|g| classes_equal(g, &f, self.dedup_tol))
        {
            return false;
        }
        assert!(
            self.classes.len() < self.target,
            "found {} distinct classes, more than the tableau count {}; duplicates may be \
             evading dedup_tol = {:e} or the configuration is degenerate",
            self.classes.len() + 1,
            self.target,
            self.dedup_tol
        );
        self.classes.push(f);
        true
    }

    pub(super) fn len(&self) -> usize {
        self.classes.len()
    }

    pub(super) fn is_full(&self) -> bool {
        self.classes.len() == self.target
    }

    pub(super) fn into_classes(self) -> Vec<RationalClass<C>> {
        self.classes
    }
}
