//! Randomized experiments contrasting separated configurations, where every
//! solution class should be real, with overlapping ones, where conjugate
//! non-real pairs appear. Reports carry full provenance (seeds, tolerances,
//! crate version) so every aggregate number is replayable.

use crate::combinatorics::ContentVector;
use crate::error::{Error, Result};
use crate::exec;
use crate::projective::classes_equal;
use crate::solver::{solve_all, ConfigPoint, ProblemConfig, SolutionSet, SolveParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::time::{SystemTime, UNIX_EPOCH};

/// How trial configurations are prepared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentMode {
    /// Leave every configuration separated as generated.
    Separated,
    /// Shift every other block left by the full overlap amount.
    Overlapping,
    /// Ramp the shift linearly from 0 to the overlap amount across trials.
    Sweep,
}

/// A batch of trials over one degree and content vector.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub d: usize,
    pub content: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub mode: ExperimentMode,
    /// How far alternate blocks travel in overlapping or sweep mode.
    #[serde(default = "default_overlap")]
    pub overlap_amount: f64,
    #[serde(default)]
    pub params: SolveParams,
}

fn default_overlap() -> f64 {
    1.0
}

/// Outcome of a single trial; `error` is set (and the counts left at zero)
/// when the solver refused the configuration.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrialRecord {
    pub index: usize,
    pub seed: u64,
    pub overlap_applied: f64,
    /// Hex SHA-256 of the configuration's JSON form.
    pub config_digest: String,
    pub separated: bool,
    pub separation_margin: f64,
    pub target: usize,
    pub found: usize,
    pub num_real: usize,
    pub all_real: bool,
    /// Whether every non-real class has its conjugate among the classes.
    pub conjugate_pairs_ok: bool,
    pub max_residual: f64,
    pub deficit: usize,
    pub error: Option<String>,
}

/// Per-trial records plus aggregates and provenance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub spec: ExperimentSpec,
    pub version: String,
    pub timestamp_unix: u64,
    pub trials: Vec<TrialRecord>,
    /// Fraction of trials that found the full target with every class real.
    pub fraction_all_real: f64,
    /// Fraction of trials with no deficit.
    pub fraction_complete: f64,
    pub min_real_count: usize,
    pub total_deficit: usize,
    pub trials_with_nonreal: usize,
}

impl ExperimentReport {
    /// JSON with the timestamp zeroed: byte-identical across runs of the
    /// same spec.
    pub fn canonical_json(&self) -> String {
        let mut value = serde_json::to_value(self).expect("report serializes");
        value["timestamp_unix"] = serde_json::json!(0);
        serde_json::to_string_pretty(&value).expect("value prints")
    }
}

/// A separated configuration with plain nodes: block `j` (0-based) gets
/// `content[j] + 1` points drawn uniformly in the interval
/// `[j + 1, j + 1.8]`, so consecutive hulls are at least 0.2 apart.
/// Deterministic in `seed`.
pub fn random_separated_config(
    d: usize,
    content: &ContentVector,
    seed: u64,
) -> Result<ProblemConfig> {
    if d < 2 {
        return Err(Error::InvalidConfig(format!(
            "ambient degree must be at least 2, got {d}"
        )));
    }
    if content.d() != d {
        return Err(Error::WrongCodimension {
            expected: 2 * d - 2,
            got: content.total(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut blocks = Vec::with_capacity(content.block_count());
    for (j, &a) in content.entries().iter().enumerate() {
        let lo = (j + 1) as f64;
        let mut xs: Vec<f64>;
        loop {
            xs = (0..a + 1).map(|_| lo + 0.8 * rng.gen::<f64>()).collect();
            xs.sort_by(f64::total_cmp);
            if xs.windows(2).all(|w| w[0] < w[1]) {
                break;
            }
        }
        blocks.push(xs.into_iter().map(ConfigPoint::new).collect());
    }
    Ok(ProblemConfig::new(d, blocks).expect("disjoint intervals give a valid config"))
}

/// Translates every odd-indexed block left by `amount`, eroding and then
/// destroying separation; `amount` 0 is the identity and the separation
/// margin is non-increasing in `amount`. The translation is deterministic,
/// so `seed` is accepted only to keep generation call sites uniform.
pub fn perturb_to_overlap(config: &ProblemConfig, amount: f64, _seed: u64) -> ProblemConfig {
    assert!(
        amount.is_finite() && amount >= 0.0,
        "perturbation amount must be a nonnegative real"
    );
    let blocks = config
        .blocks()
        .iter()
        .enumerate()
        .map(|(j, block)| {
            let shift = if j % 2 == 1 { -amount } else { 0.0 };
            block
                .iter()
                .map(|pt| ConfigPoint::with_mult(pt.x + shift, pt.m))
                .collect()
        })
        .collect();
    ProblemConfig::new(config.d(), blocks).expect("translation preserves block shapes")
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

fn trial_seed(seed: u64, index: usize) -> u64 {
    splitmix64(seed ^ (index as u64).wrapping_mul(0x9e3779b97f4a7c15))
}

fn config_digest(config: &ProblemConfig) -> String {
    let json = serde_json::to_string(config).expect("config serializes");
    let digest = Sha256::digest(json.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn conjugate_pairs_ok(set: &SolutionSet, tol: f64) -> bool {
    let classes = set.classes();
    set.reality_flags().iter().enumerate().all(|(i, &real)| {
        if real {
            return true;
        }
        let conj = classes[i].conjugate();
        classes
            .iter()
            .enumerate()
            .any(|(j, other)| j != i && classes_equal(other, &conj, tol))
    })
}

fn run_trial(
    spec: &ExperimentSpec,
    index: usize,
    seed: u64,
    overlap_applied: f64,
    config: ProblemConfig,
) -> TrialRecord {
    let mut record = TrialRecord {
        index,
        seed,
        overlap_applied,
        config_digest: config_digest(&config),
        separated: config.is_separated(),
        separation_margin: config.separation_margin(),
        target: 0,
        found: 0,
        num_real: 0,
        all_real: false,
        conjugate_pairs_ok: true,
        max_residual: 0.0,
        deficit: 0,
        error: None,
    };
    let params = SolveParams {
        seed,
        ..spec.params.clone()
    };
    match solve_all(&config, &params) {
        Ok(set) => {
            record.target = set.target_count();
            record.found = set.count();
            record.num_real = set.num_real();
            record.all_real = set.all_real();
            record.conjugate_pairs_ok = conjugate_pairs_ok(&set, params.dedup_tol);
            record.max_residual = set.max_residual();
            record.deficit = set.deficit();
        }
        Err(e) => record.error = Some(e.to_string()),
    }
    record
}

/// Runs every trial of the spec (in parallel under the `parallel` feature,
/// with identical output) and aggregates the reality statistics. Solver
/// errors inside a trial are recorded on its record and the run continues;
/// only a malformed spec errors out.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentReport> {
    if spec.trials == 0 {
        return Err(Error::InvalidConfig("trials must be at least 1".into()));
    }
    if !(spec.overlap_amount.is_finite() && spec.overlap_amount >= 0.0) {
        return Err(Error::InvalidConfig(
            "overlap amount must be a nonnegative real".into(),
        ));
    }
    let content = ContentVector::new(spec.content.clone())?;
    if content.d() != spec.d {
        return Err(Error::WrongCodimension {
            expected: 2 * spec.d.max(1) - 2,
            got: content.total(),
        });
    }

    let jobs: Vec<(usize, u64, f64, ProblemConfig)> = (0..spec.trials)
        .map(|i| {
            let seed = trial_seed(spec.seed, i);
            let base = random_separated_config(spec.d, &content, seed)
                .expect("validated spec generates configs");
            let amount = match spec.mode {
                ExperimentMode::Separated => 0.0,
                ExperimentMode::Overlapping => spec.overlap_amount,
                ExperimentMode::Sweep if spec.trials == 1 => spec.overlap_amount,
                ExperimentMode::Sweep => {
                    spec.overlap_amount * i as f64 / (spec.trials - 1) as f64
                }
            };
            let config = if amount > 0.0 {
                perturb_to_overlap(&base, amount, seed)
            } else {
                base
            };
            (i, seed, amount, config)
        })
        .collect();

    let trials: Vec<TrialRecord> = exec::map(jobs, |(i, seed, amount, config)| {
        run_trial(spec, i, seed, amount, config)
    });

    let n = trials.len() as f64;
    let all_real = trials.iter().filter(|t| t.all_real).count() as f64;
    let complete = trials.iter().filter(|t| t.deficit == 0 && t.error.is_none()).count() as f64;
    let report = ExperimentReport {
        spec: spec.clone(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        timestamp_unix: SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
        fraction_all_real: all_real / n,
        fraction_complete: complete / n,
        min_real_count: trials.iter().map(|t| t.num_real).min().unwrap_or(0),
        total_deficit: trials.iter().map(|t| t.deficit).sum(),
        trials_with_nonreal: trials.iter().filter(|t| t.found > t.num_real).count(),
        trials,
    };
    Ok(report)
}
