//! Closed registry of increasing convex functions on `[0, ∞)`.
//!
//! New families go here as additional variants; every variant must be
//! increasing and convex on `[0, ∞)` with `f(0) ≥ 0`, which the tests spot-check.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConvexFunctionSpec {
    /// `t^r`, `r ≥ 1`.
    Power { r: f64 },
    /// `e^{s·t} − 1`, `s > 0`.
    ExpM1 { scale: f64 },
    /// `t + c·t²`, `c ≥ 0`.
    AffineQuad { c: f64 },
}

impl ConvexFunctionSpec {
    pub fn power(r: f64) -> Result<Self> {
        let f = Self::Power { r };
        f.validate()?;
        Ok(f)
    }

    pub fn exp_m1(scale: f64) -> Result<Self> {
        let f = Self::ExpM1 { scale };
        f.validate()?;
        Ok(f)
    }

    pub fn affine_quad(c: f64) -> Result<Self> {
        let f = Self::AffineQuad { c };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            Self::Power { r } => r.is_finite() && r >= 1.0,
            Self::ExpM1 { scale } => scale.is_finite() && scale > 0.0,
            Self::AffineQuad { c } => c.is_finite() && c >= 0.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("{self} is not an increasing convex function on [0, inf)")))
        }
    }

    /// Smallest argument the formula accepts. Powers are only defined on `[0, ∞)`;
    /// the other families extend convexly to the whole line.
    pub fn domain_min(&self) -> f64 {
        match self {
            Self::Power { .. } => 0.0,
            Self::ExpM1 { .. } | Self::AffineQuad { .. } => f64::NEG_INFINITY,
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        match *self {
            Self::Power { r } => t.powf(r),
            Self::ExpM1 { scale } => (scale * t).exp_m1(),
            Self::AffineQuad { c } => t + c * t * t,
        }
    }

    /// Evaluate, reporting arguments outside the domain and overflow as errors.
    pub fn try_eval(&self, t: f64) -> Result<f64> {
        let value = if t < self.domain_min() { f64::NAN } else { self.eval(t) };
        if value.is_finite() {
            Ok(value)
        } else {
            Err(Error::FunctionUndefined { function: self.to_string(), argument: t })
        }
    }
}

impl fmt::Display for ConvexFunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Power { r } => write!(f, "power:{r}"),
            Self::ExpM1 { scale } => write!(f, "expm1:{scale}"),
            Self::AffineQuad { c } => write!(f, "affinequad:{c}"),
        }
    }
}

impl FromStr for ConvexFunctionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("unknown convex function {s:?}"));
        let (kind, arg) = s.split_once(':').ok_or_else(bad)?;
        let value: f64 = arg.trim().parse().map_err(|_| bad())?;
        match kind.trim() {
            "power" => Self::power(value),
            "expm1" => Self::exp_m1(value),
            "affinequad" => Self::affine_quad(value),
            _ => Err(bad()),
        }
    }
}
