use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::convex::ConvexFunctionSpec;
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, UnitVector};
use crate::norms::NormSpec;

/// Parameters an inequality may read; ids ignore the ones they do not use.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Params {
    pub r: f64,
    pub alpha: f64,
    pub f: ConvexFunctionSpec,
    pub norm: NormSpec,
}

impl Default for Params {
    fn default() -> Self {
        Self { r: 1.0, alpha: 0.5, f: ConvexFunctionSpec::Power { r: 1.0 }, norm: NormSpec::Operator }
    }
}

impl Params {
    pub fn with_r(mut self, r: f64) -> Self {
        self.r = r;
        self
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn with_f(mut self, f: ConvexFunctionSpec) -> Self {
        self.f = f;
        self
    }

    pub fn with_norm(mut self, norm: NormSpec) -> Self {
        self.norm = norm;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VectorTriple {
    pub a: Vec<Complex64>,
    pub b: Vec<Complex64>,
    pub e: UnitVector,
}

/// Operand slots. Each id reads the slots named by its [`Arity`](super::Arity).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Operands {
    pub t: Option<ComplexMatrix>,
    pub a: Option<ComplexMatrix>,
    pub b: Option<ComplexMatrix>,
    pub x: Option<UnitVector>,
    /// Hermitian operand of the Jensen check.
    pub h: Option<ComplexMatrix>,
    /// Positive semidefinite pair of the convex norm check.
    pub psd: Option<(ComplexMatrix, ComplexMatrix)>,
    pub vectors: Option<VectorTriple>,
    pub scalars: Option<(f64, f64)>,
}

impl Operands {
    pub fn single(t: ComplexMatrix) -> Self {
        Self { t: Some(t), ..Self::default() }
    }

    pub fn pair(a: ComplexMatrix, b: ComplexMatrix) -> Self {
        Self { a: Some(a), b: Some(b), ..Self::default() }
    }

    pub fn hermitian(h: ComplexMatrix) -> Self {
        Self { h: Some(h), ..Self::default() }
    }

    pub fn psd_pair(a: ComplexMatrix, b: ComplexMatrix) -> Self {
        Self { psd: Some((a, b)), ..Self::default() }
    }

    pub fn vectors(a: Vec<Complex64>, b: Vec<Complex64>, e: UnitVector) -> Self {
        Self { vectors: Some(VectorTriple { a, b, e }), ..Self::default() }
    }

    pub fn scalars(a: f64, b: f64) -> Self {
        Self { scalars: Some((a, b)), ..Self::default() }
    }

    pub fn with_x(mut self, x: UnitVector) -> Self {
        self.x = Some(x);
        self
    }

    /// Common dimension of every present matrix or vector operand.
    pub fn dimension(&self) -> Result<Option<usize>> {
        let mut dims = Vec::new();
        dims.extend(self.t.as_ref().map(ComplexMatrix::n));
        dims.extend(self.a.as_ref().map(ComplexMatrix::n));
        dims.extend(self.b.as_ref().map(ComplexMatrix::n));
        dims.extend(self.x.as_ref().map(UnitVector::n));
        dims.extend(self.h.as_ref().map(ComplexMatrix::n));
        if let Some((p, q)) = &self.psd {
            dims.push(p.n());
            dims.push(q.n());
        }
        if let Some(v) = &self.vectors {
            dims.push(v.a.len());
            dims.push(v.b.len());
            dims.push(v.e.n());
        }
        match dims.first() {
            None => Ok(None),
            Some(&n) => match dims.iter().find(|&&d| d != n) {
                Some(&d) => Err(Error::DimensionMismatch { expected: n, found: d }),
                None => Ok(Some(n)),
            },
        }
    }
}

pub(crate) fn hash_matrix(hasher: &mut Sha256, tag: &[u8], m: &ComplexMatrix) {
    hasher.update(tag);
    hasher.update((m.n() as u64).to_le_bytes());
    hash_complex(hasher, m.entries());
}

pub(crate) fn hash_complex(hasher: &mut Sha256, values: &[Complex64]) {
    for z in values {
        hasher.update(z.re.to_le_bytes());
        hasher.update(z.im.to_le_bytes());
    }
}

pub(crate) fn short_hex(hasher: Sha256) -> String {
    hex::encode(&hasher.finalize()[..8])
}
