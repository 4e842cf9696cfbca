//! `{"n": 2, "entries": [[re, im], ...]}` matrix documents, row-major.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub n: usize,
    pub entries: Vec<[f64; 2]>,
}

impl MatrixFile {
    pub fn into_matrix(self) -> Result<ComplexMatrix> {
        if self.entries.len() != self.n * self.n {
            return Err(Error::InvalidMatrix(format!(
                "n = {} needs {} entries, found {}",
                self.n,
                self.n * self.n,
                self.entries.len()
            )));
        }
        ComplexMatrix::new(self.n, self.entries.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
    }
}

impl From<&ComplexMatrix> for MatrixFile {
    fn from(m: &ComplexMatrix) -> Self {
        Self { n: m.n(), entries: m.entries().iter().map(|z| [z.re, z.im]).collect() }
    }
}

pub fn parse_matrix(json: &str) -> Result<ComplexMatrix> {
    let file: MatrixFile =
        serde_json::from_str(json).map_err(|e| Error::InvalidMatrix(format!("malformed matrix file: {e}")))?;
    file.into_matrix()
}

pub fn matrix_to_json(m: &ComplexMatrix) -> String {
    serde_json::to_string(&MatrixFile::from(m)).expect("finite matrices serialize")
}
