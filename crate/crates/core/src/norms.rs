//! Unitarily invariant norms, all computed from singular values.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_singular_values, singular_values, ComplexMatrix};

/// Selector for a unitarily invariant norm.
///
/// Canonical string forms: `op`, `schatten:p`, `kyfan:k`, `trace`, `fro`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum NormSpec {
    Operator,
    SchattenP(f64),
    KyFan(usize),
    Trace,
    Frobenius,
}

impl NormSpec {
    pub fn validate(&self, n: usize) -> Result<()> {
        match *self {
            NormSpec::SchattenP(p) if !(p.is_finite() && p >= 1.0) => {
                Err(Error::InvalidParameter(format!("Schatten exponent must be finite and >= 1, got {p}")))
            }
            NormSpec::KyFan(k) if k == 0 || k > n => {
                Err(Error::InvalidParameter(format!("Ky Fan index {k} out of range 1..={n}")))
            }
            _ => Ok(()),
        }
    }

    /// Apply the norm to a descending singular-value vector.
    pub fn from_singular_values(&self, s: &[f64]) -> Result<f64> {
        self.validate(s.len())?;
        Ok(match *self {
            NormSpec::Operator => s.first().copied().unwrap_or(0.0),
            NormSpec::Trace => s.iter().sum(),
            NormSpec::KyFan(k) => s[..k].iter().sum(),
            NormSpec::Frobenius => s.iter().map(|x| x * x).sum::<f64>().sqrt(),
            NormSpec::SchattenP(p) => {
                let top = s.first().copied().unwrap_or(0.0);
                if top == 0.0 {
                    0.0
                } else {
                    top * s.iter().map(|x| (x / top).powf(p)).sum::<f64>().powf(1.0 / p)
                }
            }
        })
    }
}

impl fmt::Display for NormSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormSpec::Operator => write!(f, "op"),
            NormSpec::SchattenP(p) => write!(f, "schatten:{p}"),
            NormSpec::KyFan(k) => write!(f, "kyfan:{k}"),
            NormSpec::Trace => write!(f, "trace"),
            NormSpec::Frobenius => write!(f, "fro"),
        }
    }
}

impl FromStr for NormSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidNormSpec(s.to_string());
        match s.trim() {
            "op" => Ok(NormSpec::Operator),
            "trace" => Ok(NormSpec::Trace),
            "fro" => Ok(NormSpec::Frobenius),
            other => {
                let (kind, arg) = other.split_once(':').ok_or_else(bad)?;
                match kind {
                    "schatten" => {
                        let p: f64 = arg.parse().map_err(|_| bad())?;
                        if !(p.is_finite() && p >= 1.0) {
                            return Err(bad());
                        }
                        Ok(NormSpec::SchattenP(p))
                    }
                    "kyfan" => {
                        let k: usize = arg.parse().map_err(|_| bad())?;
                        if k == 0 {
                            return Err(bad());
                        }
                        Ok(NormSpec::KyFan(k))
                    }
                    _ => Err(bad()),
                }
            }
        }
    }
}

impl TryFrom<String> for NormSpec {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<NormSpec> for String {
    fn from(spec: NormSpec) -> String {
        spec.to_string()
    }
}

pub fn evaluate_norm(a: &ComplexMatrix, spec: NormSpec) -> Result<f64> {
    spec.validate(a.n())?;
    spec.from_singular_values(&singular_values(a)?)
}

/// Same as [`evaluate_norm`] for a matrix known to be Hermitian, using `|λ|`
/// instead of forming `A*A`.
pub fn evaluate_norm_hermitian(h: &ComplexMatrix, spec: NormSpec) -> Result<f64> {
    spec.validate(h.n())?;
    spec.from_singular_values(&hermitian_singular_values(h)?)
}

pub fn operator_norm(a: &ComplexMatrix) -> Result<f64> {
    evaluate_norm(a, NormSpec::Operator)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn norm_examples() {
        let t = ComplexMatrix::from_real_rows(&[vec![0.0, 4.0], vec![0.0, 0.0]]).unwrap();
        assert_eq!(evaluate_norm(&t, NormSpec::Operator).unwrap(), 4.0);

        let d = ComplexMatrix::diagonal(&[Complex64::new(3.0, 0.0), Complex64::new(0.0, 4.0)]);
        assert!((evaluate_norm(&d, NormSpec::SchattenP(2.0)).unwrap() - 5.0).abs() < 1e-14);
        assert!((evaluate_norm(&d, NormSpec::Trace).unwrap() - 7.0).abs() < 1e-14);
        assert!((evaluate_norm(&d, NormSpec::KyFan(1)).unwrap() - 4.0).abs() < 1e-14);

        let s = ComplexMatrix::from_real_diagonal(&[25.0, 25.0]);
        assert_eq!(evaluate_norm(&s, NormSpec::Operator).unwrap() / 4.0, 25.0 / 4.0);

        assert_eq!(operator_norm(&ComplexMatrix::identity(3)).unwrap(), 1.0);
        let r = ComplexMatrix::from_real_diagonal(&[0.0, 5f64.sqrt()]);
        assert!((operator_norm(&r).unwrap() - 5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn submultiplicative_on_second_example() {
        let t = ComplexMatrix::from_real_rows(&[vec![2.0, 1.0], vec![0.0, 1.0]]).unwrap();
        let n1 = operator_norm(&t).unwrap();
        let n2 = operator_norm(&t.matmul(&t).unwrap()).unwrap();
        assert!(n2 <= n1 * n1 + 1e-12);
    }

    #[test]
    fn rejects_out_of_range() {
        let i = ComplexMatrix::identity(2);
        assert!(evaluate_norm(&i, NormSpec::KyFan(3)).is_err());
        assert!(evaluate_norm(&i, NormSpec::KyFan(0)).is_err());
        assert!(evaluate_norm(&i, NormSpec::SchattenP(0.5)).is_err());
    }

    #[test]
    fn canonical_strings() {
        for (s, spec) in [
            ("op", NormSpec::Operator),
            ("schatten:4", NormSpec::SchattenP(4.0)),
            ("schatten:2.5", NormSpec::SchattenP(2.5)),
            ("kyfan:2", NormSpec::KyFan(2)),
            ("trace", NormSpec::Trace),
            ("fro", NormSpec::Frobenius),
        ] {
            assert_eq!(s.parse::<NormSpec>().unwrap(), spec);
            assert_eq!(spec.to_string(), s);
        }
        for bad in ["", "inf", "schatten:0.5", "schatten:x", "kyfan:0", "kyfan:-1", "nuclear"] {
            assert!(bad.parse::<NormSpec>().is_err(), "{bad}");
        }
        let json = serde_json::to_string(&NormSpec::KyFan(2)).unwrap();
        assert_eq!(json, "\"kyfan:2\"");
    }
}
