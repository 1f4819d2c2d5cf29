//! Verdict pipelines, the Kronecker table and the config-driven experiment runner.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod experiment;
pub mod kronecker;
pub mod verdict;

pub use config::{ExperimentConfig, ExperimentKind};
pub use experiment::{run_experiment, Assertion, ExperimentOutcome};
pub use kronecker::{kronecker_table, KroneckerRow};
pub use verdict::{product_verdict, sum_verdict, verdict_of, APVerdict, Verdict, VerdictParams};
