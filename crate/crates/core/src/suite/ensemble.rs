use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::random::{complex_gaussian, ginibre, haar_unitary};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnsembleKind {
    Ginibre,
    Normal,
    Nilpotent,
    HaarUnitary,
    HermitianPsd,
}

impl EnsembleKind {
    pub const ALL: [EnsembleKind; 5] = [
        EnsembleKind::Ginibre,
        EnsembleKind::Normal,
        EnsembleKind::Nilpotent,
        EnsembleKind::HaarUnitary,
        EnsembleKind::HermitianPsd,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EnsembleKind::Ginibre => "ginibre",
            EnsembleKind::Normal => "normal",
            EnsembleKind::Nilpotent => "nilpotent",
            EnsembleKind::HaarUnitary => "haar_unitary",
            EnsembleKind::HermitianPsd => "hermitian_psd",
        }
    }

    /// Draw one `n × n` sample.
    pub fn sample<R: Rng + ?Sized>(self, rng: &mut R, n: usize) -> ComplexMatrix {
        match self {
            EnsembleKind::Ginibre => ginibre(rng, n),
            EnsembleKind::Normal => {
                let u = haar_unitary(rng, n);
                let d: Vec<Complex64> = (0..n).map(|_| complex_gaussian(rng)).collect();
                u.mul_unchecked(&ComplexMatrix::diagonal(&d)).mul_unchecked(&u.adjoint())
            }
            EnsembleKind::Nilpotent => {
                let mut t = ComplexMatrix::zeros(n);
                for i in 0..n {
                    for j in i + 1..n {
                        t.set(i, j, complex_gaussian(rng));
                    }
                }
                t
            }
            EnsembleKind::HaarUnitary => haar_unitary(rng, n),
            EnsembleKind::HermitianPsd => {
                let g = ginibre(rng, n);
                g.adjoint().mul_unchecked(&g).real_part()
            }
        }
    }
}

impl fmt::Display for EnsembleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EnsembleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        EnsembleKind::ALL
            .into_iter()
            .find(|k| k.name() == key || k.name().replace('_', "") == key)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown ensemble '{s}'")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSpec {
    pub kind: EnsembleKind,
    pub n: usize,
    pub seed: u64,
    pub trials: usize,
}

/// All `trials` samples of an ensemble, reproducible from its seed.
pub fn generate(spec: &EnsembleSpec) -> Result<Vec<ComplexMatrix>> {
    if spec.n == 0 {
        return Err(Error::InvalidConfig("ensemble dimension must be at least 1".into()));
    }
    if spec.trials == 0 {
        return Err(Error::InvalidConfig("ensemble needs at least one trial".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    Ok((0..spec.trials).map(|_| spec.kind.sample(&mut rng, spec.n)).collect())
}
