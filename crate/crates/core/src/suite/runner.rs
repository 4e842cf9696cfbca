use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::catalog::{Arity, InequalityId};
use super::checks::CheckContext;
use super::ensemble::EnsembleKind;
use super::operands::{Operands, Params, VectorTriple};
use super::report::{InequalityReport, Tolerance};
use crate::convex::ConvexFunctionSpec;
use crate::error::{Error, Result};
use crate::linalg::{matrix_abs, vector_norm, ComplexMatrix, GramSpectrum};
use crate::norms::NormSpec;
use crate::radius::SUITE_TOL;
use crate::random::random_unit_vector;

pub const REPORT_SCHEMA: &str = "numrad-report/1";
pub const SUITE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Largest spectrum a convex function is applied to in a suite run.
pub const F_SPECTRUM_LIMIT: f64 = 50.0;

/// Failures kept per id in a report; the counts always cover all of them.
pub const MAX_RECORDED_FAILURES: usize = 50;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub seed: u64,
    pub trials: usize,
    pub ensembles: Vec<EnsembleKind>,
    pub dims: Vec<usize>,
    pub ids: Vec<InequalityId>,
    pub r_grid: Vec<f64>,
    pub alpha_grid: Vec<f64>,
    pub f_registry: Vec<ConvexFunctionSpec>,
    pub norms: Vec<NormSpec>,
    pub tolerance: Tolerance,
    pub radius_tol: f64,
    /// Every sampled operator is rescaled to an operator norm drawn
    /// uniformly from this range.
    pub scale: [f64; 2],
    /// Flip the direction of one id before judging it. Testing aid only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inject_reversed: Option<InequalityId>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 0x5eed,
            trials: 1000,
            ensembles: vec![EnsembleKind::Ginibre, EnsembleKind::Normal, EnsembleKind::Nilpotent],
            dims: (2..=8).collect(),
            ids: InequalityId::all().collect(),
            r_grid: vec![1.0, 1.5, 2.0, 3.0],
            alpha_grid: vec![0.1, 0.3, 0.5, 0.7, 0.9],
            f_registry: vec![
                ConvexFunctionSpec::Power { r: 1.0 },
                ConvexFunctionSpec::Power { r: 2.0 },
                ConvexFunctionSpec::ExpM1 { scale: 0.5 },
                ConvexFunctionSpec::AffineQuad { c: 1.0 },
            ],
            norms: vec![
                NormSpec::Operator,
                NormSpec::Trace,
                NormSpec::Frobenius,
                NormSpec::SchattenP(4.0),
                NormSpec::KyFan(2),
            ],
            tolerance: Tolerance::default(),
            radius_tol: SUITE_TOL,
            scale: [0.5, 1.2],
            inject_reversed: None,
        }
    }
}

impl SuiteConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let config: Self = serde_json::from_str(text).map_err(|e| Error::InvalidConfig(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        for (name, empty) in [
            ("ensembles", self.ensembles.is_empty()),
            ("dims", self.dims.is_empty()),
            ("ids", self.ids.is_empty()),
            ("r_grid", self.r_grid.is_empty()),
            ("alpha_grid", self.alpha_grid.is_empty()),
            ("f_registry", self.f_registry.is_empty()),
            ("norms", self.norms.is_empty()),
        ] {
            if empty {
                return bad(format!("{name} must not be empty"));
            }
        }
        if let Some(&n) = self.dims.iter().find(|&&n| n == 0) {
            return bad(format!("dimension {n} is not allowed"));
        }
        if let Some(r) = self.r_grid.iter().find(|r| !(r.is_finite() && **r >= 1.0)) {
            return bad(format!("r = {r} is below 1"));
        }
        if let Some(a) = self.alpha_grid.iter().find(|a| !(0.05..=0.95).contains(*a)) {
            return bad(format!("alpha = {a} lies outside [0.05, 0.95]"));
        }
        for f in &self.f_registry {
            f.validate().map_err(|e| Error::InvalidConfig(e.to_string()))?;
        }
        let n_min = *self.dims.iter().min().unwrap_or(&1);
        for norm in &self.norms {
            norm.validate(n_min).map_err(|e| Error::InvalidConfig(e.to_string()))?;
        }
        let [lo, hi] = self.scale;
        if !(lo > 0.0 && lo <= hi && hi.is_finite()) {
            return bad(format!("scale range [{lo}, {hi}] is invalid"));
        }
        if !(self.radius_tol > 0.0 && self.radius_tol.is_finite()) {
            return bad(format!("radius_tol = {} must be positive", self.radius_tol));
        }
        let t = self.tolerance;
        if !(t.abs >= 0.0 && t.rel >= 0.0 && t.abs.is_finite() && t.rel.is_finite()) {
            return bad("tolerances must be finite and non-negative".into());
        }
        let spectrum = hi.powf(self.largest_f_exponent());
        if spectrum > F_SPECTRUM_LIMIT {
            return bad(format!(
                "convex functions would see spectra up to {spectrum:.3e}, above {F_SPECTRUM_LIMIT}; shrink scale or alpha_grid"
            ));
        }
        Ok(())
    }

    /// Largest power of an operand a convex function is applied to.
    fn largest_f_exponent(&self) -> f64 {
        use InequalityId::*;
        let alpha_edge = self.alpha_grid.iter().map(|a| a.min(1.0 - a)).fold(f64::INFINITY, f64::min);
        self.ids
            .iter()
            .filter(|id| id.uses_f())
            .map(|id| match id {
                ThmMainSq | SingleFSq => 2.0 / alpha_edge,
                Cor12F => 4.0,
                _ => 2.0,
            })
            .fold(0.0, f64::max)
    }

    pub fn ensemble_for(&self, trial: usize) -> (EnsembleKind, usize) {
        let k = self.ensembles.len();
        (self.ensembles[trial % k], self.dims[(trial / k) % self.dims.len()])
    }

    /// Every parameter combination `id` is evaluated at.
    pub fn param_grid(&self, id: InequalityId) -> Vec<Params> {
        let base = Params::default();
        let r_values = if id.uses_r() { self.r_grid.clone() } else { vec![base.r] };
        let alpha_values = if id.uses_alpha() { self.alpha_grid.clone() } else { vec![base.alpha] };
        let f_values = if id.uses_f() { self.f_registry.clone() } else { vec![base.f] };
        let norm_values = if id.uses_norm() { self.norms.clone() } else { vec![base.norm] };
        let mut out = Vec::new();
        for &r in &r_values {
            for &alpha in &alpha_values {
                for &f in &f_values {
                    for &norm in &norm_values {
                        out.push(Params { r, alpha, f, norm });
                    }
                }
            }
        }
        out
    }
}

/// Seed of one trial's generator, derived from the master seed.
pub fn trial_seed(master: u64, trial: usize) -> u64 {
    let mut h = Sha256::new();
    h.update(master.to_le_bytes());
    h.update((trial as u64).to_le_bytes());
    let digest = h.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("digest has 32 bytes"))
}

/// Operands of one trial. Every id reads the slots matching its arity.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialOperands {
    pub ensemble: EnsembleKind,
    pub n: usize,
    pub seed: u64,
    /// `T`, `A`, `B`, `x`, `H = Re T`, `(|A|, |B|)`, `(Ax, B*x, x)` and
    /// `(‖Ax‖², ‖B*x‖²)`.
    pub operands: Operands,
    /// `|T|`, the Jensen operand for functions defined only on `[0, ∞)`.
    pub abs_t: ComplexMatrix,
}

fn rescale<R: Rng + ?Sized>(rng: &mut R, m: ComplexMatrix, [lo, hi]: [f64; 2]) -> Result<ComplexMatrix> {
    let target = if hi > lo { rng.random_range(lo..=hi) } else { lo };
    let norm = GramSpectrum::new(&m)?.operator_norm();
    if norm == 0.0 {
        return Ok(m);
    }
    Ok(m.scale_real(target / norm))
}

pub fn trial_operands(config: &SuiteConfig, trial: usize) -> Result<TrialOperands> {
    let (ensemble, n) = config.ensemble_for(trial);
    let seed = trial_seed(config.seed, trial);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| {
        let m = ensemble.sample(rng, n);
        rescale(rng, m, config.scale)
    };
    let t = draw(&mut rng)?;
    let a = draw(&mut rng)?;
    let b = draw(&mut rng)?;
    let x = random_unit_vector(&mut rng, n);
    let ax = a.mul_vec(x.components())?;
    let bsx = b.adjoint().mul_vec(x.components())?;
    let scalars = (vector_norm(&ax).powi(2), vector_norm(&bsx).powi(2));
    let operands = Operands {
        t: Some(t.clone()),
        h: Some(t.real_part()),
        psd: Some((matrix_abs(&a)?, matrix_abs(&b)?)),
        vectors: Some(VectorTriple { a: ax, b: bsx, e: x.clone() }),
        scalars: Some(scalars),
        a: Some(a),
        b: Some(b),
        x: Some(x),
    };
    Ok(TrialOperands { ensemble, n, seed, operands, abs_t: matrix_abs(&t)? })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FailureRecord {
    pub id: InequalityId,
    pub trial: usize,
    pub ensemble: EnsembleKind,
    pub n: usize,
    pub trial_seed: u64,
    pub params: Params,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<InequalityReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub numerical: bool,
}

/// Aggregate over all parameter combinations of one id in one trial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRow {
    pub id: InequalityId,
    pub trial: usize,
    pub ensemble: EnsembleKind,
    pub n: usize,
    pub evaluations: usize,
    pub failures: usize,
    pub min_slack: f64,
    pub worst_lhs: f64,
    pub worst_rhs: f64,
    pub digest: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdSummary {
    pub id: InequalityId,
    pub trials: usize,
    pub evaluations: usize,
    pub failures: usize,
    pub errors: usize,
    /// Smallest `(rhs − lhs)/max(1, |rhs|)` seen, over chain steps too.
    pub min_slack: f64,
    pub worst_digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst_trial: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst_params: Option<Params>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: String,
    pub suite_version: String,
    pub config: SuiteConfig,
    pub evaluations: usize,
    pub violations: usize,
    pub numerical_errors: usize,
    pub other_errors: usize,
    pub rows: Vec<IdSummary>,
    pub failures: Vec<FailureRecord>,
    #[serde(skip)]
    pub trial_rows: Vec<TrialRow>,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.violations == 0 && self.numerical_errors == 0 && self.other_errors == 0
    }

    pub fn row(&self, id: InequalityId) -> Option<&IdSummary> {
        self.rows.iter().find(|r| r.id == id)
    }

    pub fn min_slack(&self) -> f64 {
        self.rows.iter().map(|r| r.min_slack).fold(f64::INFINITY, f64::min)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// One line per (id, trial).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("id,trial,ensemble,n,evaluations,failures,min_slack,worst_lhs,worst_rhs,digest\n");
        for r in &self.trial_rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{:.16e},{:.16e},{:.16e},{}",
                r.id, r.trial, r.ensemble, r.n, r.evaluations, r.failures, r.min_slack, r.worst_lhs, r.worst_rhs, r.digest
            );
        }
        out
    }
}

struct Outcome {
    row: TrialRow,
    worst_params: Option<Params>,
    failures: Vec<FailureRecord>,
    violations: usize,
    numerical: usize,
    other: usize,
}

fn evaluate_one(config: &SuiteConfig, ctx: &CheckContext, id: InequalityId, params: &Params) -> Result<InequalityReport> {
    let report = ctx.evaluate(id, params)?;
    Ok(if config.inject_reversed == Some(id) { report.reversed() } else { report })
}

fn run_trial(config: &SuiteConfig, trial: usize) -> Vec<Outcome> {
    let (ensemble, n) = config.ensemble_for(trial);
    let seed = trial_seed(config.seed, trial);
    let prepared = trial_operands(config, trial).and_then(|ops| {
        let make = |o: Operands| -> Result<CheckContext> {
            Ok(CheckContext::new(o)?.with_tolerance(config.tolerance).with_radius_tol(config.radius_tol).with_seed(seed))
        };
        let jensen_half = make(Operands::hermitian(ops.abs_t.clone()).with_x(ops.operands.x.clone().expect("x is set")))?;
        Ok((make(ops.operands)?, jensen_half))
    });
    config
        .ids
        .iter()
        .map(|&id| {
            let mut out = Outcome {
                row: TrialRow {
                    id,
                    trial,
                    ensemble,
                    n,
                    evaluations: 0,
                    failures: 0,
                    min_slack: f64::INFINITY,
                    worst_lhs: f64::NAN,
                    worst_rhs: f64::NAN,
                    digest: String::new(),
                },
                worst_params: None,
                failures: Vec::new(),
                violations: 0,
                numerical: 0,
                other: 0,
            };
            for params in config.param_grid(id) {
                out.row.evaluations += 1;
                let result = match &prepared {
                    Ok((ctx, jensen_half)) => {
                        let ctx = if id.arity() == Arity::HermitianVector && params.f.domain_min() >= 0.0 {
                            jensen_half
                        } else {
                            ctx
                        };
                        evaluate_one(config, ctx, id, &params)
                    }
                    Err(e) => Err(e.clone()),
                };
                let record = |report: Option<InequalityReport>, error: Option<&Error>| FailureRecord {
                    id,
                    trial,
                    ensemble,
                    n,
                    trial_seed: seed,
                    params,
                    report,
                    error: error.map(ToString::to_string),
                    numerical: error.is_some_and(Error::is_numerical),
                };
                match result {
                    Ok(report) => {
                        let slack = report.min_normalized_slack();
                        if slack < out.row.min_slack || out.worst_params.is_none() {
                            out.row.min_slack = slack;
                            out.row.worst_lhs = report.lhs;
                            out.row.worst_rhs = report.rhs;
                            out.row.digest = report.operand_digest.clone();
                            out.worst_params = Some(params);
                        }
                        if !report.pass {
                            out.row.failures += 1;
                            out.violations += 1;
                            out.failures.push(record(Some(report), None));
                        }
                    }
                    Err(e) => {
                        out.row.failures += 1;
                        if e.is_numerical() {
                            out.numerical += 1;
                        } else {
                            out.other += 1;
                        }
                        out.failures.push(record(None, Some(&e)));
                    }
                }
            }
            out
        })
        .collect()
}

/// Run every configured id on every trial. Trials run in parallel; the
/// report does not depend on scheduling.
pub fn run_suite(config: &SuiteConfig) -> Result<RunReport> {
    config.validate()?;
    let per_trial: Vec<Vec<Outcome>> = (0..config.trials).into_par_iter().map(|t| run_trial(config, t)).collect();

    let mut rows: Vec<IdSummary> = config
        .ids
        .iter()
        .map(|&id| IdSummary {
            id,
            trials: 0,
            evaluations: 0,
            failures: 0,
            errors: 0,
            min_slack: f64::INFINITY,
            worst_digest: String::new(),
            worst_trial: None,
            worst_params: None,
        })
        .collect();
    let mut report = RunReport {
        schema: REPORT_SCHEMA.into(),
        suite_version: SUITE_VERSION.into(),
        config: config.clone(),
        evaluations: 0,
        violations: 0,
        numerical_errors: 0,
        other_errors: 0,
        rows: Vec::new(),
        failures: Vec::new(),
        trial_rows: Vec::with_capacity(config.trials * config.ids.len()),
    };
    let mut recorded = vec![0usize; config.ids.len()];
    for outcomes in per_trial {
        for (k, o) in outcomes.into_iter().enumerate() {
            let row = &mut rows[k];
            row.trials += 1;
            row.evaluations += o.row.evaluations;
            row.failures += o.row.failures;
            row.errors += o.numerical + o.other;
            if o.worst_params.is_some() && (o.row.min_slack < row.min_slack || row.worst_trial.is_none()) {
                row.min_slack = o.row.min_slack;
                row.worst_digest = o.row.digest.clone();
                row.worst_trial = Some(o.row.trial);
                row.worst_params = o.worst_params;
            }
            report.evaluations += o.row.evaluations;
            report.violations += o.violations;
            report.numerical_errors += o.numerical;
            report.other_errors += o.other;
            for f in o.failures {
                if recorded[k] < MAX_RECORDED_FAILURES {
                    recorded[k] += 1;
                    report.failures.push(f);
                }
            }
            report.trial_rows.push(o.row);
        }
    }
    report.rows = rows;
    Ok(report)
}

/// Re-evaluate a recorded failure from the configuration alone.
pub fn replay_failure(config: &SuiteConfig, failure: &FailureRecord) -> Result<InequalityReport> {
    let ops = trial_operands(config, failure.trial)?;
    let operands = if failure.id.arity() == Arity::HermitianVector && failure.params.f.domain_min() >= 0.0 {
        Operands::hermitian(ops.abs_t).with_x(ops.operands.x.clone().expect("x is set"))
    } else {
        ops.operands
    };
    let ctx = CheckContext::new(operands)?
        .with_tolerance(config.tolerance)
        .with_radius_tol(config.radius_tol)
        .with_seed(ops.seed);
    evaluate_one(config, &ctx, failure.id, &failure.params)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SuiteConfig {
        SuiteConfig { trials: 6, dims: vec![2, 3], ..SuiteConfig::default() }
    }

    #[test]
    fn default_config_is_valid_and_round_trips() {
        let c = SuiteConfig::default();
        c.validate().unwrap();
        let back = SuiteConfig::from_json(&serde_json::to_string(&c).unwrap()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn partial_config_files_take_defaults() {
        let c = SuiteConfig::from_json(r#"{"trials": 5, "ids": ["DRAG2", "COR12_POW"], "norms": ["op", "kyfan:2"]}"#)
            .unwrap();
        assert_eq!(c.trials, 5);
        assert_eq!(c.ids, vec![InequalityId::Drag2, InequalityId::Cor12Pow]);
        assert_eq!(c.r_grid, SuiteConfig::default().r_grid);
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let cases = [
            SuiteConfig { trials: 0, ..SuiteConfig::default() },
            SuiteConfig { ids: vec![], ..SuiteConfig::default() },
            SuiteConfig { alpha_grid: vec![0.0, 0.5], ..SuiteConfig::default() },
            SuiteConfig { r_grid: vec![0.5], ..SuiteConfig::default() },
            SuiteConfig { dims: vec![1, 2], ..SuiteConfig::default() },
            SuiteConfig { scale: [2.0, 1.0], ..SuiteConfig::default() },
            SuiteConfig { scale: [1.0, 3.0], ..SuiteConfig::default() },
        ];
        for c in cases {
            assert!(matches!(c.validate(), Err(Error::InvalidConfig(_))), "{c:?}");
        }
        assert!(SuiteConfig::from_json(r#"{"trails": 3}"#).is_err());
    }

    #[test]
    fn grids_cover_only_used_parameters() {
        let c = SuiteConfig::default();
        assert_eq!(c.param_grid(InequalityId::Eq38Lower).len(), 1);
        assert_eq!(c.param_grid(InequalityId::Eq41).len(), 4);
        assert_eq!(c.param_grid(InequalityId::Eq21).len(), 20);
        assert_eq!(c.param_grid(InequalityId::ThmMainSq).len(), 20);
        assert_eq!(c.param_grid(InequalityId::WnPropAlpha).len(), 100);
    }

    #[test]
    fn trial_seeds_are_distinct() {
        let seeds: std::collections::HashSet<u64> = (0..1000).map(|t| trial_seed(7, t)).collect();
        assert_eq!(seeds.len(), 1000);
    }

    #[test]
    fn trial_operands_are_scaled_and_consistent() {
        let c = small();
        for trial in 0..c.trials {
            let ops = trial_operands(&c, trial).unwrap();
            assert_eq!(ops.operands.dimension().unwrap(), Some(ops.n));
            for m in [ops.operands.t.as_ref().unwrap(), ops.operands.a.as_ref().unwrap()] {
                let norm = GramSpectrum::new(m).unwrap().operator_norm();
                assert!((0.5 - 1e-12..=1.2 + 1e-12).contains(&norm), "{norm}");
            }
            assert_eq!(ops, trial_operands(&c, trial).unwrap());
        }
    }

    #[test]
    fn small_run_passes_and_is_deterministic() {
        let c = small();
        let a = run_suite(&c).unwrap();
        assert!(a.passed(), "{:#?}", a.failures.first());
        assert_eq!(a.rows.len(), c.ids.len());
        assert!(a.rows.iter().all(|r| r.trials == c.trials && r.min_slack >= -1e-8));
        assert_eq!(a.trial_rows.len(), c.trials * c.ids.len());
        let b = run_suite(&c).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.to_csv(), b.to_csv());
    }

    #[test]
    fn injected_reversal_is_caught_and_replayable() {
        let c = SuiteConfig {
            trials: 3,
            ids: vec![InequalityId::Eq36],
            inject_reversed: Some(InequalityId::Eq36),
            ..SuiteConfig::default()
        };
        let report = run_suite(&c).unwrap();
        assert!(report.violations > 0);
        let f = &report.failures[0];
        let replayed = replay_failure(&c, f).unwrap();
        assert_eq!(Some(&replayed), f.report.as_ref());
    }

    #[test]
    fn csv_has_one_line_per_id_and_trial() {
        let c = SuiteConfig { trials: 2, ids: vec![InequalityId::Eq36, InequalityId::Lem22], ..SuiteConfig::default() };
        let csv = run_suite(&c).unwrap().to_csv();
        assert_eq!(csv.lines().count(), 1 + 4);
        assert!(csv.lines().nth(1).unwrap().starts_with("EQ36,0,ginibre,2,1,0,"));
    }
}
