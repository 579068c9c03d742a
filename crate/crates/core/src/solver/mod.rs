//! Interpolation solvers. [`solve_all`] enumerates every class of degree-`d`
//! rational functions constant on each prescribed block by multi-start Newton
//! iteration against the tableau count; [`solve_polynomial`] handles the
//! linear polynomial case; [`solve_critical_points`] prescribes critical
//! points through fully collided blocks.

mod newton;

use crate::combinatorics::{kostka, ContentVector};
use crate::error::{Error, Result};
use crate::exec;
use crate::linalg;
use crate::poly;
use crate::projective::{
    curve_matrix, incidence_check, is_real_class, is_reducible, subspace_from_rational, Flag,
    RationalClass,
};
use crate::scalar::Scalar;
use num::complex::Complex64;
use num::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

type C = Complex64;

/// Newton starts drawn per batch; the batch is generated sequentially and
/// solved in parallel, so results merge in a fixed order regardless of the
/// thread count.
const BATCH: usize = 32;
/// Relative rank tolerance for deciding whether a class is real.
const REALITY_TOL: f64 = 1e-8;
/// Relative size below which numerator and denominator count as jointly
/// vanishing at a configured node.
const NODE_TOL: f64 = 1e-8;
/// Conservative Sylvester-rank tolerance; a backstop behind the node test.
const REDUCIBILITY_BACKSTOP: f64 = 1e-12;
/// Accepted relative remainder of the Wronskian against a prescribed
/// critical divisor.
const WRONSKIAN_TOL: f64 = 1e-8;
/// Rank tolerance for flag construction.
const FLAG_TOL: f64 = 1e-9;

/// One interpolation node: location and multiplicity (1 for a plain point,
/// `m` for an `m`-fold collision).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConfigPoint {
    pub x: f64,
    #[serde(default = "default_mult")]
    pub m: usize,
}

fn default_mult() -> usize {
    1
}

impl ConfigPoint {
    pub fn new(x: f64) -> Self {
        Self { x, m: 1 }
    }

    pub fn with_mult(x: f64, m: usize) -> Self {
        Self { x, m }
    }
}

/// A degree bound `d` and blocks of nodes on which a function must be
/// constant. A block of total multiplicity `a + 1` imposes `a` conditions,
/// so its content entry is `a`.
///
/// Deserializes from JSON of the form
/// `{"d": 3, "blocks": [[{"x": 0.0, "m": 1}, {"x": 0.1}], ...]}` (the
/// multiplicity defaults to 1), running the same validation as [`Self::new`].
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "RawProblemConfig", into = "RawProblemConfig")]
pub struct ProblemConfig {
    d: usize,
    blocks: Vec<Vec<ConfigPoint>>,
    non_generic: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawProblemConfig {
    d: usize,
    blocks: Vec<Vec<ConfigPoint>>,
}

impl TryFrom<RawProblemConfig> for ProblemConfig {
    type Error = Error;

    fn try_from(raw: RawProblemConfig) -> Result<Self> {
        ProblemConfig::new(raw.d, raw.blocks)
    }
}

impl From<ProblemConfig> for RawProblemConfig {
    fn from(config: ProblemConfig) -> Self {
        RawProblemConfig {
            d: config.d,
            blocks: config.blocks,
        }
    }
}

impl ProblemConfig {
    /// Validates block shapes: nodes within a block are distinct and finite,
    /// multiplicities are positive, and each block's total multiplicity lies
    /// in `2..=d`. A node repeated across two blocks is allowed but marks the
    /// configuration [`non_generic`](Self::non_generic).
    pub fn new(d: usize, blocks: Vec<Vec<ConfigPoint>>) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidConfig(format!(
                "ambient degree must be at least 2, got {d}"
            )));
        }
        if blocks.is_empty() {
            return Err(Error::TooFewBlocks { got: 0 });
        }
        for (j, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidConfig(format!("block {j} is empty")));
            }
            for pt in block {
                if !pt.x.is_finite() {
                    return Err(Error::InvalidConfig(format!(
                        "non-finite node in block {j}"
                    )));
                }
                if pt.m == 0 {
                    return Err(Error::InvalidConfig(format!(
                        "node {} in block {j} has multiplicity 0",
                        pt.x
                    )));
                }
            }
            for (i, pt) in block.iter().enumerate() {
                if block[i + 1..].iter().any(|other| other.x == pt.x) {
                    return Err(Error::InvalidConfig(format!(
                        "node {} repeats within block {j}",
                        pt.x
                    )));
                }
            }
            let weight: usize = block.iter().map(|pt| pt.m).sum();
            if weight < 2 {
                return Err(Error::NonPositiveEntry { index: j });
            }
            if weight > d {
                return Err(Error::EntryTooLarge {
                    index: j,
                    value: weight - 1,
                    max: d - 1,
                    d,
                });
            }
        }
        let mut non_generic = false;
        for i in 0..blocks.len() {
            for j in i + 1..blocks.len() {
                if blocks[i]
                    .iter()
                    .any(|a| blocks[j].iter().any(|b| a.x == b.x))
                {
                    non_generic = true;
                }
            }
        }
        Ok(Self {
            d,
            blocks,
            non_generic,
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn blocks(&self) -> &[Vec<ConfigPoint>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Total multiplicity of each block.
    pub fn block_weights(&self) -> Vec<usize> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|pt| pt.m).sum())
            .collect()
    }

    /// The content vector (one entry per block, `weight - 1`), checked
    /// against this configuration's degree.
    pub fn content(&self) -> Result<ContentVector> {
        let entries: Vec<usize> = self.block_weights().iter().map(|w| w - 1).collect();
        let total: usize = entries.iter().sum();
        let content = ContentVector::new(entries)?;
        if content.d() != self.d {
            return Err(Error::WrongCodimension {
                expected: 2 * self.d - 2,
                got: total,
            });
        }
        Ok(content)
    }

    /// Whether some node appears in two different blocks.
    pub fn non_generic(&self) -> bool {
        self.non_generic
    }

    /// Whether the blocks' convex hulls are pairwise disjoint closed
    /// intervals.
    pub fn is_separated(&self) -> bool {
        self.separation_margin() > 0.0
    }

    /// Smallest gap between consecutive block hulls (sorted by left
    /// endpoint); positive exactly when separated, infinite for one block.
    pub fn separation_margin(&self) -> f64 {
        let mut hulls: Vec<(f64, f64)> = self
            .blocks
            .iter()
            .map(|b| {
                let lo = b.iter().map(|pt| pt.x).fold(f64::INFINITY, f64::min);
                let hi = b.iter().map(|pt| pt.x).fold(f64::NEG_INFINITY, f64::max);
                (lo, hi)
            })
            .collect();
        hulls.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
        hulls
            .windows(2)
            .map(|w| w[1].0 - w[0].1)
            .fold(f64::INFINITY, f64::min)
    }

    /// One block's nodes embedded into the scalar type.
    pub fn block_points<S: Scalar>(&self, j: usize) -> Vec<(S, usize)> {
        self.blocks[j]
            .iter()
            .map(|pt| (S::from_f64(pt.x), pt.m))
            .collect()
    }

    /// Every node with its multiplicity, in block order.
    pub fn all_points(&self) -> Vec<(f64, usize)> {
        self.blocks
            .iter()
            .flatten()
            .map(|pt| (pt.x, pt.m))
            .collect()
    }

    fn point_span(&self) -> (f64, f64) {
        let lo = self
            .blocks
            .iter()
            .flatten()
            .map(|pt| pt.x)
            .fold(f64::INFINITY, f64::min);
        let hi = self
            .blocks
            .iter()
            .flatten()
            .map(|pt| pt.x)
            .fold(f64::NEG_INFINITY, f64::max);
        (lo, hi)
    }
}

/// Knobs for the multi-start search; the defaults target desk-scale degrees.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct SolveParams {
    /// Seed of the deterministic start generator.
    pub seed: u64,
    /// Newton starts allowed per gauge; `None` resolves to 200 per expected
    /// class.
    pub starts_budget: Option<usize>,
    /// Relative residual below which an iterate counts as converged.
    pub newton_tol: f64,
    /// Canonical-key distance below which two classes are the same.
    pub dedup_tol: f64,
    /// Iteration cap per start.
    pub max_iter: usize,
}

impl Default for SolveParams {
    fn default() -> Self {
        Self {
            seed: 0,
            starts_budget: None,
            newton_tol: 1e-10,
            dedup_tol: 1e-6,
            max_iter: 200,
        }
    }
}

impl SolveParams {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    fn resolved_budget(&self, target: usize) -> usize {
        self.starts_budget.unwrap_or(200 * target.max(1))
    }
}

/// Everything the search found for one configuration, ordered by canonical
/// key for reproducibility.
#[derive(Debug, Clone)]
pub struct SolutionSet {
    d: usize,
    classes: Vec<RationalClass<C>>,
    residuals: Vec<f64>,
    reality: Vec<bool>,
    real_representatives: Vec<Option<RationalClass<C>>>,
    wronskian_residuals: Vec<f64>,
    target_count: usize,
    starts_used: usize,
    starts_budget: usize,
    deficit_note: Option<String>,
}

impl SolutionSet {
    pub fn classes(&self) -> &[RationalClass<C>] {
        &self.classes
    }

    pub fn count(&self) -> usize {
        self.classes.len()
    }

    /// Largest block residual of each class.
    pub fn residuals(&self) -> &[f64] {
        &self.residuals
    }

    pub fn reality_flags(&self) -> &[bool] {
        &self.reality
    }

    /// A representative with real coefficients for each real class.
    pub fn real_representatives(&self) -> &[Option<RationalClass<C>>] {
        &self.real_representatives
    }

    /// Relative remainder of each class's Wronskian against the factor the
    /// configuration's collided nodes force.
    pub fn wronskian_residuals(&self) -> &[f64] {
        &self.wronskian_residuals
    }

    /// The tableau count the search aimed for.
    pub fn target_count(&self) -> usize {
        self.target_count
    }

    pub fn starts_used(&self) -> usize {
        self.starts_used
    }

    pub fn starts_budget(&self) -> usize {
        self.starts_budget
    }

    pub fn deficit(&self) -> usize {
        self.target_count - self.classes.len()
    }

    pub fn deficit_note(&self) -> Option<&str> {
        self.deficit_note.as_deref()
    }

    pub fn num_real(&self) -> usize {
        self.reality.iter().filter(|&&r| r).count()
    }

    /// Whether the full target count was found and every class is real.
    pub fn all_real(&self) -> bool {
        self.deficit() == 0 && self.num_real() == self.count()
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }

    /// Re-checks every class against the configuration: incidence with each
    /// block's osculating span, irreducibility, and block residuals relative
    /// to the coefficient scale.
    pub fn verify(&self, config: &ProblemConfig, tol: f64) -> bool {
        self.classes.iter().all(|f| {
            let x = subspace_from_rational(f);
            let incident = (0..config.block_count()).all(|j| {
                curve_matrix(&config.block_points::<C>(j), config.d())
                    .map(|w| incidence_check(&x, &w, tol))
                    .unwrap_or(false)
            });
            incident && !is_reducible(f, tol) && max_relative_residual(f, config) <= tol
        })
    }

    /// Full JSON report: counts, budgets, and per-class coefficients as
    /// `[re, im]` pairs with residuals and reality data.
    pub fn report_json(&self) -> serde_json::Value {
        let classes: Vec<serde_json::Value> = (0..self.count())
            .map(|i| {
                serde_json::json!({
                    "p": coeffs_json(self.classes[i].p()),
                    "q": coeffs_json(self.classes[i].q()),
                    "residual": self.residuals[i],
                    "real": self.reality[i],
                    "real_representative": self.real_representatives[i].as_ref().map(|r| {
                        serde_json::json!({
                            "p": coeffs_json(r.p()),
                            "q": coeffs_json(r.q()),
                        })
                    }),
                    "wronskian_residual": self.wronskian_residuals[i],
                })
            })
            .collect();
        serde_json::json!({
            "d": self.d,
            "target_count": self.target_count,
            "found": self.count(),
            "deficit": self.deficit(),
            "num_real": self.num_real(),
            "starts_used": self.starts_used,
            "starts_budget": self.starts_budget,
            "deficit_note": self.deficit_note,
            "classes": classes,
        })
    }
}

fn coeffs_json(coeffs: &[C]) -> serde_json::Value {
    serde_json::Value::Array(
        coeffs
            .iter()
            .map(|z| serde_json::json!([z.re, z.im]))
            .collect(),
    )
}

/// Remainder of the cross-difference `p q(w) - q p(w)` modulo the block
/// polynomial, `w` being the block's first node. Identically zero exactly
/// when the function is constant on the block, derivatives included.
pub fn block_remainder<S: Scalar>(f: &RationalClass<S>, block: &[ConfigPoint]) -> Vec<S> {
    let pts: Vec<(S, usize)> = block
        .iter()
        .map(|pt| (S::from_f64(pt.x), pt.m))
        .collect();
    let modulus = poly::from_roots(&pts);
    let w = pts[0].0.clone();
    let pw = poly::eval(f.p(), &w);
    let qw = poly::eval(f.q(), &w);
    let g = poly::sub(&poly::scale(f.p(), &qw), &poly::scale(f.q(), &pw));
    poly::divrem(&g, &modulus).1
}

/// Norm of [`block_remainder`].
pub fn block_residual<S: Scalar>(f: &RationalClass<S>, block: &[ConfigPoint]) -> f64 {
    poly::l2_norm(&block_remainder(f, block))
}

fn max_relative_residual(f: &RationalClass<C>, config: &ProblemConfig) -> f64 {
    let scale = (poly::l2_norm(f.p()) * poly::l2_norm(f.q())).max(f64::MIN_POSITIVE);
    config
        .blocks
        .iter()
        .map(|b| block_residual(f, b))
        .fold(0.0, f64::max)
        / scale
}

/// Relative size of the part of the Wronskian `p'q - pq'` not divisible by
/// the factor the configuration forces, `prod (z - x)^(m-1)` over all nodes.
/// For a critical-point configuration that factor has the Wronskian's full
/// degree, so a small value certifies proportionality.
pub fn wronskian_residual(f: &RationalClass<C>, config: &ProblemConfig) -> f64 {
    let forced: Vec<(C, usize)> = config
        .all_points()
        .into_iter()
        .filter(|&(_, m)| m > 1)
        .map(|(x, m)| (C::new(x, 0.0), m - 1))
        .collect();
    if forced.is_empty() {
        return 0.0;
    }
    let w = poly::wronskian(f.p(), f.q());
    let t = poly::from_roots(&forced);
    let rem = poly::divrem(&w, &t).1;
    poly::l2_norm(&rem) / poly::l2_norm(&w).max(f64::MIN_POSITIVE)
}

fn pow<S: Scalar>(x: &S, k: usize) -> S {
    let mut out = S::one();
    for _ in 0..k {
        out = out * x.clone();
    }
    out
}

/// The unique monic polynomial `z^d + c_{d-1} z^{d-1} + ... + c_1 z` constant
/// on each block, as a class with denominator 1. Requires plain nodes whose
/// difference conditions number exactly `d - 1`, making the linear system
/// square.
///
/// With an exact scalar the block remainders of the result vanish exactly.
///
/// # Panics
///
/// A singular system for a separated configuration: separation provably
/// implies a unique solution, so that would be an internal bug.
pub fn solve_polynomial<S: Scalar>(config: &ProblemConfig) -> Result<RationalClass<S>> {
    let d = config.d();
    if config.blocks.iter().flatten().any(|pt| pt.m != 1) {
        return Err(Error::InvalidConfig(
            "the polynomial solver takes plain nodes only (every multiplicity 1)".into(),
        ));
    }
    let conditions: usize = config.block_weights().iter().map(|w| w - 1).sum();
    if conditions != d - 1 {
        return Err(Error::WrongCodimension {
            expected: d - 1,
            got: conditions,
        });
    }
    // Equations are the block remainders themselves: reduce each monomial
    // difference z^k - w0^k modulo the block polynomial and strip the
    // automatic root at the anchor. Solving in remainder coordinates keeps
    // the floating residual at rounding level even when a block's nodes are
    // tightly clustered, where the equivalent value-difference system leaves
    // remainders amplified by the inverse node spacing.
    let n = d - 1;
    let mut rows: Vec<Vec<S>> = Vec::with_capacity(n);
    let mut rhs: Vec<S> = Vec::with_capacity(n);
    for j in 0..config.blocks.len() {
        let pts = config.block_points::<S>(j);
        let modulus = poly::from_roots(&pts);
        let w0 = pts[0].0.clone();
        let count = pts.len() - 1;
        let reduce = |g: &[S]| -> Vec<S> {
            let rem = poly::divrem(g, &modulus).1;
            let (mut stripped, _) = poly::synth_div(&rem, &w0);
            stripped.resize(count, S::zero());
            stripped
        };
        let monomial = |k: usize| -> Vec<S> {
            let mut g = vec![S::zero(); k + 1];
            g[0] = S::zero() - pow(&w0, k);
            g[k] = S::one();
            g
        };
        let base = reduce(&monomial(d));
        let cols: Vec<Vec<S>> = (1..d).map(|k| reduce(&monomial(k))).collect();
        for i in 0..count {
            rows.push((0..n).map(|k| cols[k][i].clone()).collect());
            rhs.push(S::zero() - base[i].clone());
        }
    }
    let Some(coeffs) = linalg::solve(&rows, &rhs) else {
        assert!(
            !config.is_separated(),
            "separated configuration produced a singular polynomial interpolation system"
        );
        return Err(Error::SingularSystem);
    };
    let mut p = vec![S::zero()];
    p.extend(coeffs);
    p.push(S::one());
    let mut q = vec![S::zero(); d + 1];
    q[0] = S::one();
    RationalClass::new(p, q)
}

/// Finds every solution class for the configuration.
///
/// Two blocks force the unique direct construction. Otherwise the search
/// gauges the problem on a triple of blocks, runs batches of seeded Newton
/// starts (in parallel under the `parallel` feature, with identical results),
/// filters degenerate limits, deduplicates by canonical key, and rotates to
/// the next gauge when the budget expires before the tableau count is
/// reached. Classes come back sorted by canonical key; a shortfall is
/// reported in the set's deficit fields rather than as an error.
///
/// # Panics
///
/// Finding more distinct classes than the tableau count allows (a
/// deduplication failure or a counting bug).
pub fn solve_all(config: &ProblemConfig, params: &SolveParams) -> Result<SolutionSet> {
    let content = config.content()?;
    let target = kostka(&content)
        .to_usize()
        .ok_or_else(|| Error::Internal("structure count does not fit in usize".into()))?;
    let budget = params.resolved_budget(target);

    if config.block_count() == 2 {
        // Content (d-1, d-1): p must vanish on one block and q on the other,
        // which already spends both degrees of freedom.
        let f = RationalClass::new(
            poly::from_roots(&config.block_points::<C>(0)),
            poly::from_roots(&config.block_points::<C>(1)),
        )?;
        return Ok(finish(config, vec![f], target, 0, budget, None));
    }

    let mut acc = newton::ClassAccumulator::new(target, params.dedup_tol);
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let (lo, hi) = config.point_span();
    let center = 0.5 * (lo + hi);
    let radius = 0.5 * (hi - lo) + 1.0;
    let residual_gate = 1e3 * params.newton_tol;
    let n = config.block_count();
    let mut starts_used = 0usize;

    'gauges: for gauge_zero in 0..n {
        for gauge_pole in gauge_zero + 1..n {
            for gauge_norm in 0..n {
                if gauge_norm == gauge_zero || gauge_norm == gauge_pole {
                    continue;
                }
                if acc.is_full() {
                    break 'gauges;
                }
                let sys = newton::GaugedSystem::new(config, gauge_zero, gauge_pole, gauge_norm);
                let mut used_here = 0usize;
                while used_here < budget {
                    let batch = BATCH.min(budget - used_here);
                    let starts: Vec<Vec<C>> = (0..batch)
                        .map(|_| newton::sample_start(&sys, &mut rng, center, radius))
                        .collect();
                    used_here += batch;
                    starts_used += batch;
                    let converged = exec::map(starts, |s| {
                        newton::newton_solve(&sys, s, params.newton_tol, params.max_iter)
                    });
                    for (p, q) in converged.into_iter().flatten() {
                        let Ok(f) = RationalClass::new(p, q) else {
                            continue;
                        };
                        if shares_root_at_a_node(&f, config)
                            || is_reducible(&f, REDUCIBILITY_BACKSTOP)
                            || max_relative_residual(&f, config) > residual_gate
                        {
                            continue;
                        }
                        acc.insert(f);
                        if acc.is_full() {
                            break 'gauges;
                        }
                    }
                }
            }
        }
    }

    let found = acc.len();
    let note = (found < target).then(|| {
        format!(
            "stopped at {found} of {target} classes after {starts_used} starts; either the \
             start budget is too small for this configuration or it sits close enough to a \
             degeneration that some classes are numerically out of reach"
        )
    });
    Ok(finish(
        config,
        acc.into_classes(),
        target,
        starts_used,
        budget,
        note,
    ))
}

/// Solves for classes with prescribed critical points: `points` lists each
/// critical point with its multiplicity `a_k`, summing to `2d - 2`. Each
/// returned class is verified to have Wronskian proportional to
/// `prod (z - x_k)^{a_k}`.
pub fn solve_critical_points(
    points: &[(f64, usize)],
    d: usize,
    params: &SolveParams,
) -> Result<SolutionSet> {
    for (i, &(x, _)) in points.iter().enumerate() {
        if points[i + 1..].iter().any(|&(y, _)| y == x) {
            return Err(Error::InvalidConfig(format!("repeated critical point {x}")));
        }
    }
    let total: usize = points.iter().map(|&(_, a)| a).sum();
    if d < 2 || total != 2 * d.max(1) - 2 {
        return Err(Error::WrongCodimension {
            expected: 2 * d.max(1) - 2,
            got: total,
        });
    }
    let blocks = points
        .iter()
        .map(|&(x, a)| vec![ConfigPoint::with_mult(x, a + 1)])
        .collect();
    let config = ProblemConfig::new(d, blocks)?;
    let set = solve_all(&config, params)?;
    for (i, wr) in set.wronskian_residuals().iter().enumerate() {
        if *wr > WRONSKIAN_TOL {
            return Err(Error::WronskianMismatch(format!(
                "class {i} leaves a relative remainder of {wr:.3e} against the prescribed \
                 critical divisor"
            )));
        }
    }
    Ok(set)
}

/// Builds the flag attached to a solution of a configuration with one block
/// of plain nodes and a double point for every other condition: the class's
/// subspace together with its span against the plain block's secant span.
pub fn flags_from_solution(config: &ProblemConfig, f: &RationalClass<C>) -> Result<Flag<C>> {
    let mut distinct = None;
    for (j, block) in config.blocks.iter().enumerate() {
        if block.len() >= 2 {
            if block.iter().any(|pt| pt.m != 1) {
                return Err(Error::NotAFlagProblem(format!(
                    "block {j} mixes several nodes with higher multiplicities"
                )));
            }
            if distinct.replace(j).is_some() {
                return Err(Error::NotAFlagProblem(
                    "more than one block of plain nodes".into(),
                ));
            }
        } else if block[0].m != 2 {
            return Err(Error::NotAFlagProblem(format!(
                "block {j} is a single node of multiplicity {}, expected a double point",
                block[0].m
            )));
        }
    }
    let Some(j) = distinct else {
        return Err(Error::NotAFlagProblem("no block of plain nodes".into()));
    };
    let secant = curve_matrix(&config.block_points::<C>(j), config.d())?;
    Flag::build(subspace_from_rational(f), &secant, FLAG_TOL)
}

/// A pair whose numerator and denominator both vanish at a configured node
/// satisfies that node's block equations vacuously; such Newton limits
/// describe lower-degree functions, not solutions.
fn shares_root_at_a_node(f: &RationalClass<C>, config: &ProblemConfig) -> bool {
    let pn = poly::l2_norm(f.p()).max(f64::MIN_POSITIVE);
    let qn = poly::l2_norm(f.q()).max(f64::MIN_POSITIVE);
    for (x, _) in config.all_points() {
        let z = C::new(x, 0.0);
        let e = (0..=f.d())
            .map(|k| z.norm().powi(2 * k as i32))
            .sum::<f64>()
            .sqrt();
        let dp = poly::eval(f.p(), &z).norm() / (pn * e);
        let dq = poly::eval(f.q(), &z).norm() / (qn * e);
        if dp.max(dq) < NODE_TOL {
            return true;
        }
    }
    false
}

fn key_order(k1: &[C], k2: &[C]) -> Ordering {
    for (a, b) in k1.iter().zip(k2) {
        let ord = a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im));
        if ord != Ordering::Equal {
            return ord;
        }
    }
    Ordering::Equal
}

fn finish(
    config: &ProblemConfig,
    classes: Vec<RationalClass<C>>,
    target: usize,
    starts_used: usize,
    starts_budget: usize,
    deficit_note: Option<String>,
) -> SolutionSet {
    let mut items: Vec<_> = classes
        .into_iter()
        .map(|f| {
            let residual = config
                .blocks
                .iter()
                .map(|b| block_residual(&f, b))
                .fold(0.0, f64::max);
            let (real, rep) = is_real_class(&f, REALITY_TOL);
            let wr = wronskian_residual(&f, config);
            (f, residual, real, rep, wr)
        })
        .collect();
    items.sort_by(|a, b| key_order(a.0.canonical_key(), b.0.canonical_key()));
    let mut set = SolutionSet {
        d: config.d(),
        classes: Vec::new(),
        residuals: Vec::new(),
        reality: Vec::new(),
        real_representatives: Vec::new(),
        wronskian_residuals: Vec::new(),
        target_count: target,
        starts_used,
        starts_budget,
        deficit_note,
    };
    for (f, residual, real, rep, wr) in items {
        set.classes.push(f);
        set.residuals.push(residual);
        set.reality.push(real);
        set.real_representatives.push(rep);
        set.wronskian_residuals.push(wr);
    }
    set
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projective::classes_equal;
    use num::{BigInt, BigRational};

    fn c(re: f64) -> C {
        C::new(re, 0.0)
    }

    fn plain_blocks(blocks: &[&[f64]]) -> Vec<Vec<ConfigPoint>> {
        blocks
            .iter()
            .map(|b| b.iter().map(|&x| ConfigPoint::new(x)).collect())
            .collect()
    }

    fn config(d: usize, blocks: &[&[f64]]) -> ProblemConfig {
        ProblemConfig::new(d, plain_blocks(blocks)).unwrap()
    }

    #[test]
    fn config_validation_catches_bad_shapes() {
        assert!(matches!(
            ProblemConfig::new(1, plain_blocks(&[&[0.0, 1.0]])),
            Err(Error::InvalidConfig(_))
        ));
        assert!(matches!(
            ProblemConfig::new(3, vec![]),
            Err(Error::TooFewBlocks { got: 0 })
        ));
        assert!(matches!(
            ProblemConfig::new(3, vec![vec![]]),
            Err(Error::InvalidConfig(_))
        ));
        assert!(matches!(
            ProblemConfig::new(3, plain_blocks(&[&[0.0, 0.0]])),
            Err(Error::InvalidConfig(_))
        ));
        assert!(matches!(
            ProblemConfig::new(3, vec![vec![ConfigPoint::with_mult(0.0, 0)]]),
            Err(Error::InvalidConfig(_))
        ));
        assert!(matches!(
            ProblemConfig::new(3, plain_blocks(&[&[0.0], &[1.0, 2.0]])),
            Err(Error::NonPositiveEntry { index: 0 })
        ));
        assert!(matches!(
            ProblemConfig::new(3, plain_blocks(&[&[0.0, 1.0, 2.0, 3.0], &[4.0, 5.0]])),
            Err(Error::EntryTooLarge { index: 0, value: 3, .. })
        ));
        assert!(ProblemConfig::new(3, plain_blocks(&[&[0.0, f64::NAN]])).is_err());
    }

    #[test]
    fn cross_block_repeats_are_flagged_not_rejected() {
        let cfg = config(3, &[&[0.0, 1.0], &[1.0, 2.0], &[3.0, 4.0]]);
        assert!(cfg.non_generic());
        assert!(!config(3, &[&[0.0, 1.0], &[1.5, 2.0], &[3.0, 4.0]]).non_generic());
    }

    #[test]
    fn separation_of_interval_hulls() {
        assert!(config(2, &[&[0.0, 1.0], &[2.0, 3.0]]).is_separated());
        assert!(!config(2, &[&[0.0, 2.0], &[1.0, 3.0]]).is_separated());
        assert!(config(3, &[&[0.0, 1.0, 2.0]]).is_separated());
        let margin = config(2, &[&[0.0, 1.0], &[2.0, 3.0]]).separation_margin();
        assert!((margin - 1.0).abs() < 1e-12);
    }

    #[test]
    fn content_checks_the_degree() {
        let content = config(3, &[&[0.0, 1.0], &[2.0, 3.0], &[4.0, 5.0], &[6.0, 7.0]])
            .content()
            .unwrap();
        assert_eq!(content.entries(), &[1, 1, 1, 1]);
        assert!(matches!(
            config(3, &[&[0.0, 1.0], &[2.0, 3.0]]).content(),
            Err(Error::WrongCodimension { expected: 4, got: 2 })
        ));
    }

    #[test]
    fn config_json_round_trip_applies_validation_and_defaults() {
        let json = r#"{"d":3,"blocks":[[{"x":0.0},{"x":0.5,"m":1}],[{"x":2.0,"m":2}],[{"x":4.0},{"x":4.5}]]}"#;
        let cfg: ProblemConfig = serde_json::from_str(json).unwrap();
        assert_eq!(cfg.block_weights(), vec![2, 2, 2]);
        let back = serde_json::to_string(&cfg).unwrap();
        let again: ProblemConfig = serde_json::from_str(&back).unwrap();
        assert_eq!(again.blocks(), cfg.blocks());
        let invalid = r#"{"d":3,"blocks":[[{"x":0.0},{"x":0.0}]]}"#;
        assert!(serde_json::from_str::<ProblemConfig>(invalid).is_err());
    }

    #[test]
    fn block_residual_trivial_cases() {
        let square = RationalClass::new(vec![c(0.0), c(0.0), c(1.0)], vec![c(1.0)]).unwrap();
        let pair = [ConfigPoint::new(-1.0), ConfigPoint::new(1.0)];
        assert!(block_residual(&square, &pair) < 1e-14);
        let double = [ConfigPoint::with_mult(0.0, 2)];
        assert!(block_residual(&square, &double) < 1e-14);
        let line = RationalClass::new(vec![c(0.0), c(1.0)], vec![c(1.0)]).unwrap();
        let nodes = [ConfigPoint::new(0.0), ConfigPoint::new(1.0)];
        assert!(block_residual(&line, &nodes) > 0.5);
    }

    #[test]
    fn polynomial_solver_frozen_examples_exactly() {
        let rat = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        // d=2, single block {-1, 1}: symmetry forces z^2.
        let f = solve_polynomial::<BigRational>(&config(2, &[&[-1.0, 1.0]])).unwrap();
        assert_eq!(f.p(), &[rat(0, 1), rat(0, 1), rat(1, 1)]);
        // d=3, blocks {0,1},{2,3}.
        let f = solve_polynomial::<BigRational>(&config(3, &[&[0.0, 1.0], &[2.0, 3.0]])).unwrap();
        assert_eq!(f.p(), &[rat(0, 1), rat(7, 2), rat(-9, 2), rat(1, 1)]);
        // d=3, single block {0,1,2}: p vanishes at all three nodes.
        let f = solve_polynomial::<BigRational>(&config(3, &[&[0.0, 1.0, 2.0]])).unwrap();
        assert_eq!(f.p(), &[rat(0, 1), rat(2, 1), rat(-3, 1), rat(1, 1)]);
        // Exact block remainders vanish on the nose.
        let cfg = config(3, &[&[0.0, 1.0], &[2.0, 3.0]]);
        let f = solve_polynomial::<BigRational>(&cfg).unwrap();
        for block in cfg.blocks() {
            assert_eq!(block_residual(&f, block), 0.0);
        }
    }

    #[test]
    fn polynomial_solver_floating_path_is_consistent() {
        let cfg = config(4, &[&[0.0, 0.7], &[2.0, 2.6], &[4.0, 4.4]]);
        let f = solve_polynomial::<C>(&cfg).unwrap();
        let scale = poly::l2_norm(f.p());
        for block in cfg.blocks() {
            assert!(block_residual(&f, block) / scale < 1e-12);
        }
    }

    #[test]
    fn polynomial_solver_rejects_wrong_condition_counts() {
        assert!(matches!(
            solve_polynomial::<C>(&config(3, &[&[0.0, 1.0]])),
            Err(Error::WrongCodimension { expected: 2, got: 1 })
        ));
        let collided = ProblemConfig::new(3, vec![
            vec![ConfigPoint::with_mult(0.0, 2)],
            vec![ConfigPoint::new(2.0), ConfigPoint::new(3.0)],
        ])
        .unwrap();
        assert!(matches!(
            solve_polynomial::<C>(&collided),
            Err(Error::InvalidConfig(_))
        ));
    }

    #[test]
    fn polynomial_solver_reports_singular_overlapping_systems() {
        // Blocks {0,1} and {-1,2}: the 2x2 difference matrix is singular
        // because the node sums coincide, and the hulls overlap.
        let cfg = config(3, &[&[0.0, 1.0], &[-1.0, 2.0]]);
        assert!(!cfg.is_separated());
        assert!(matches!(
            solve_polynomial::<BigRational>(&cfg),
            Err(Error::SingularSystem)
        ));
    }

    #[test]
    fn rolle_gaps_hold_for_the_frozen_cubic() {
        let cfg = config(3, &[&[0.0, 1.0], &[2.0, 3.0]]);
        let f = solve_polynomial::<BigRational>(&cfg).unwrap();
        let dp = poly::derivative(f.p());
        let rat = |x: f64| BigRational::from_f64(x);
        assert_eq!(poly::count_real_roots_between(&dp, &rat(0.0), &rat(1.0)), 1);
        assert_eq!(poly::count_real_roots_between(&dp, &rat(2.0), &rat(3.0)), 1);
    }

    #[test]
    fn two_block_configuration_solves_directly() {
        let cfg = config(2, &[&[0.0, 1.0], &[2.0, 3.0]]);
        let set = solve_all(&cfg, &SolveParams::default()).unwrap();
        assert_eq!(set.count(), 1);
        assert_eq!(set.target_count(), 1);
        assert_eq!(set.deficit(), 0);
        assert_eq!(set.starts_used(), 0);
        assert!(set.reality_flags()[0]);
        assert!(set.max_residual() < 1e-12);
        let expected = RationalClass::new(
            poly::from_roots(&[(c(0.0), 1), (c(1.0), 1)]),
            poly::from_roots(&[(c(2.0), 1), (c(3.0), 1)]),
        )
        .unwrap();
        assert!(classes_equal(&set.classes()[0], &expected, 1e-10));
        assert!(set.verify(&cfg, 1e-8));
    }

    #[test]
    fn cubic_all_ones_finds_both_classes() {
        let cfg = config(3, &[&[1.0, 1.4], &[2.0, 2.4], &[3.0, 3.4], &[4.0, 4.4]]);
        let set = solve_all(&cfg, &SolveParams::with_seed(1)).unwrap();
        assert_eq!(set.count(), 2, "note: {:?}", set.deficit_note());
        assert!(set.all_real());
        assert!(set.max_residual() < 1e-8);
        assert!(set.verify(&cfg, 1e-7));
        for rep in set.real_representatives() {
            let rep = rep.as_ref().unwrap();
            assert!(rep
                .p()
                .iter()
                .chain(rep.q())
                .all(|z| z.im.abs() < 1e-9));
        }
    }

    #[test]
    fn three_block_mixed_content_finds_the_single_class() {
        let blocks = vec![
            vec![ConfigPoint::new(1.0), ConfigPoint::new(1.4)],
            vec![ConfigPoint::new(2.0), ConfigPoint::new(2.4)],
            vec![
                ConfigPoint::new(3.0),
                ConfigPoint::new(3.3),
                ConfigPoint::new(3.6),
            ],
        ];
        let cfg = ProblemConfig::new(3, blocks).unwrap();
        let set = solve_all(&cfg, &SolveParams::with_seed(5)).unwrap();
        assert_eq!(set.count(), 1, "note: {:?}", set.deficit_note());
        assert!(set.all_real());
    }

    #[test]
    fn solver_output_is_deterministic() {
        let cfg = config(3, &[&[1.0, 1.4], &[2.0, 2.4], &[3.0, 3.4], &[4.0, 4.4]]);
        let params = SolveParams::with_seed(42);
        let a = solve_all(&cfg, &params).unwrap().report_json();
        let b = solve_all(&cfg, &params).unwrap().report_json();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), b.to_string());
    }

    #[test]
    fn zero_budget_reports_a_deficit() {
        let cfg = config(3, &[&[1.0, 1.4], &[2.0, 2.4], &[3.0, 3.4], &[4.0, 4.4]]);
        let params = SolveParams {
            starts_budget: Some(0),
            ..SolveParams::default()
        };
        let set = solve_all(&cfg, &params).unwrap();
        assert_eq!(set.count(), 0);
        assert_eq!(set.deficit(), 2);
        assert!(set.deficit_note().is_some());
    }

    #[test]
    fn critical_points_of_degree_two_match_hand_expansion() {
        let params = SolveParams::default();
        let set = solve_critical_points(&[(0.0, 1), (2.0, 1)], 2, &params).unwrap();
        assert_eq!(set.count(), 1);
        let expected =
            RationalClass::new(vec![c(0.0), c(0.0), c(1.0)], vec![c(-1.0), c(1.0)]).unwrap();
        assert!(classes_equal(&set.classes()[0], &expected, 1e-10));
        assert!(set.wronskian_residuals()[0] < 1e-12);

        let set = solve_critical_points(&[(-1.0, 1), (1.0, 1)], 2, &params).unwrap();
        let expected =
            RationalClass::new(vec![c(1.0), c(0.0), c(1.0)], vec![c(0.0), c(1.0)]).unwrap();
        assert!(classes_equal(&set.classes()[0], &expected, 1e-10));
    }

    #[test]
    fn critical_point_validation() {
        let params = SolveParams::default();
        assert!(matches!(
            solve_critical_points(&[(0.0, 1), (0.0, 1)], 2, &params),
            Err(Error::InvalidConfig(_))
        ));
        assert!(matches!(
            solve_critical_points(&[(0.0, 1), (1.0, 1), (2.0, 1)], 2, &params),
            Err(Error::WrongCodimension { expected: 2, got: 3 })
        ));
    }

    #[test]
    fn flags_require_the_right_block_shapes() {
        let cfg = config(3, &[&[1.0, 1.4], &[2.0, 2.4], &[3.0, 3.4], &[4.0, 4.4]]);
        let set = solve_all(&cfg, &SolveParams::with_seed(1)).unwrap();
        assert!(matches!(
            flags_from_solution(&cfg, &set.classes()[0]),
            Err(Error::NotAFlagProblem(_))
        ));
    }

    #[test]
    fn flags_of_a_critical_point_solution() {
        // d=3: one block of three plain nodes (a=2) and two double points.
        let blocks = vec![
            vec![
                ConfigPoint::new(0.0),
                ConfigPoint::new(0.4),
                ConfigPoint::new(0.8),
            ],
            vec![ConfigPoint::with_mult(2.0, 2)],
            vec![ConfigPoint::with_mult(3.0, 2)],
        ];
        let cfg = ProblemConfig::new(3, blocks).unwrap();
        let set = solve_all(&cfg, &SolveParams::with_seed(3)).unwrap();
        assert!(set.count() >= 1, "note: {:?}", set.deficit_note());
        let flag = flags_from_solution(&cfg, &set.classes()[0]).unwrap();
        assert_eq!(flag.f2_projective_dim(), 1);
        assert_eq!(flag.f1_projective_dim(), 2);
    }
}
