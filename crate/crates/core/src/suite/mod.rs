//! The inequality catalog, its evaluator and the randomized suite runner.

pub mod catalog;
pub mod checks;
pub mod ensemble;
pub mod operands;
pub mod report;
pub mod runner;

pub use catalog::{Arity, InequalityId};
pub use checks::{
    check_jensen_lemma23, check_lemma43, check_lemma_aujla, check_mixed_schwarz, check_refined_cauchy_schwarz,
    check_scalar_lemma22, check_theorem_main, check_wn_propositions, evaluate_check, CheckContext, MAX_EXPONENT,
};
pub use ensemble::{generate, EnsembleKind, EnsembleSpec};
pub use operands::{Operands, Params, VectorTriple};
pub use report::{normalized_slack, InequalityReport, ReportParams, Tolerance};
pub use runner::{
    replay_failure, run_suite, trial_operands, trial_seed, FailureRecord, IdSummary, RunReport, SuiteConfig,
    TrialOperands, TrialRow, REPORT_SCHEMA, SUITE_VERSION,
};
