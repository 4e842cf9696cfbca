use serde::{Deserialize, Serialize};

use super::catalog::InequalityId;
use crate::convex::ConvexFunctionSpec;
use crate::norms::NormSpec;

/// Pass rule: `lhs ≤ rhs + abs + rel·max(1, |rhs|)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { abs: 1e-9, rel: 1e-9 }
    }
}

impl Tolerance {
    pub fn holds(&self, lhs: f64, rhs: f64) -> bool {
        lhs.is_finite() && rhs.is_finite() && lhs <= rhs + self.abs + self.rel * rhs.abs().max(1.0)
    }
}

/// `(rhs − lhs) / max(1, |rhs|)`.
pub fn normalized_slack(lhs: f64, rhs: f64) -> f64 {
    if lhs.is_finite() && rhs.is_finite() {
        (rhs - lhs) / rhs.abs().max(1.0)
    } else {
        f64::NEG_INFINITY
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct ReportParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f: Option<ConvexFunctionSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub norm: Option<NormSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub n: usize,
}

/// One evaluated inequality instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub id: InequalityId,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs − lhs`.
    pub slack: f64,
    /// Values that must be non-decreasing. For chain ids this is the whole
    /// chain with `lhs` first and `rhs` last; empty for plain inequalities.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub chain: Vec<f64>,
    pub pass: bool,
    pub params: ReportParams,
    pub operand_digest: String,
    pub tolerance: Tolerance,
}

impl InequalityReport {
    pub fn new(
        id: InequalityId,
        lhs: f64,
        rhs: f64,
        chain: Vec<f64>,
        params: ReportParams,
        operand_digest: String,
        tolerance: Tolerance,
    ) -> Self {
        let mut report = Self {
            id,
            lhs,
            rhs,
            slack: rhs - lhs,
            chain,
            pass: false,
            params,
            operand_digest,
            tolerance,
        };
        report.pass = report.recompute_pass();
        report
    }

    fn recompute_pass(&self) -> bool {
        self.tolerance.holds(self.lhs, self.rhs)
            && self.chain.windows(2).all(|w| self.tolerance.holds(w[0], w[1]))
    }

    /// Smallest normalized slack over every comparison the report makes.
    pub fn min_normalized_slack(&self) -> f64 {
        self.chain
            .windows(2)
            .map(|w| normalized_slack(w[0], w[1]))
            .fold(normalized_slack(self.lhs, self.rhs), f64::min)
    }

    /// Normalized slack of each adjacent chain step.
    pub fn chain_steps(&self) -> Vec<f64> {
        self.chain.windows(2).map(|w| normalized_slack(w[0], w[1])).collect()
    }

    /// The same report with the inequality direction flipped; used to check
    /// that the harness notices a wrong-way inequality.
    pub fn reversed(mut self) -> Self {
        std::mem::swap(&mut self.lhs, &mut self.rhs);
        self.slack = -self.slack;
        self.chain.reverse();
        self.pass = self.recompute_pass();
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(lhs: f64, rhs: f64, chain: Vec<f64>) -> InequalityReport {
        InequalityReport::new(
            InequalityId::Eq36,
            lhs,
            rhs,
            chain,
            ReportParams::default(),
            String::new(),
            Tolerance::default(),
        )
    }

    #[test]
    fn pass_rule_uses_absolute_and_relative_slack() {
        assert!(report(1.0, 1.0, vec![]).pass);
        assert!(report(1.0 + 1.5e-9, 1.0, vec![]).pass);
        assert!(!report(1.0 + 3e-9, 1.0, vec![]).pass);
        assert!(report(1e6 + 1e-4, 1e6, vec![]).pass);
        assert!(!report(1e6 + 1e-2, 1e6, vec![]).pass);
        assert!(!report(f64::NAN, 1.0, vec![]).pass);
        assert!(!report(1.0, f64::INFINITY, vec![]).pass);
    }

    #[test]
    fn chains_need_every_step() {
        assert!(report(1.0, 3.0, vec![1.0, 2.0, 3.0]).pass);
        let r = report(1.0, 3.0, vec![1.0, 4.0, 3.0]);
        assert!(!r.pass);
        assert!(r.min_normalized_slack() < 0.0);
    }

    #[test]
    fn reversal_flips_verdict() {
        let r = report(1.0, 2.0, vec![]).reversed();
        assert!(!r.pass);
        assert_eq!((r.lhs, r.rhs, r.slack), (2.0, 1.0, -1.0));
        assert!(report(2.0, 2.0, vec![]).reversed().pass);
    }
}
