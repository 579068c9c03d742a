//! Enumerative geometry of codimension-two incidence conditions at desk
//! scale, organized around one number: the Kostka count of a two-row
//! rectangle.
//!
//! Three views of the same problem live side by side and are checked against
//! each other:
//!
//! * [`combinatorics`]: content vectors, semistandard tableaux, and exact
//!   Kostka counting (dynamic programming plus closed forms);
//! * [`nets`]: noncrossing matchings on blocked vertices, in bijection with
//!   the tableaux;
//! * [`projective`] and [`solver`]: rational functions of degree `d` that are
//!   constant on prescribed point blocks, found numerically by a gauged
//!   multi-start Newton iteration, with reality and incidence certificates.
//!
//! The [`harness`] module drives randomized experiments on separated versus
//! overlapping configurations, and [`acceptance`] bundles the desk-scale
//! checks the crate promises to pass (`cargo test --test acceptance`, or the
//! `selftest` CLI subcommand).
//!
//! The `parallel` feature (on by default) runs solver starts, experiment
//! trials, and enumeration sweeps on a rayon pool; disabling it yields a
//! sequential build with identical results.

pub mod acceptance;
pub mod combinatorics;
pub mod error;
pub mod harness;
pub mod nets;
pub mod poly;
pub mod projective;
pub mod scalar;
pub mod solver;

mod exec;
mod linalg;

pub use combinatorics::{enumerate_ssyt, kostka, kostka_closed_form, ContentVector, Tableau};
pub use error::{Error, Result};
pub use nets::{enumerate_nets, net_to_ssyt, ssyt_to_net, BlockStructure, Net};
pub use harness::{
    perturb_to_overlap, random_separated_config, run_experiment, ExperimentMode,
    ExperimentReport, ExperimentSpec, TrialRecord,
};
pub use projective::{
    chordal_value_distance, classes_equal, curve_matrix, incidence_check, is_real_class,
    is_reducible, key_distance, rational_from_subspace, subspace_from_rational, CurveMatrix,
    Flag, RationalClass, Subspace,
};
pub use scalar::Scalar;
pub use solver::{
    block_remainder, block_residual, flags_from_solution, solve_all, solve_critical_points,
    solve_polynomial, wronskian_residual, ConfigPoint, ProblemConfig, SolutionSet, SolveParams,
};
