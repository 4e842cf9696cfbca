//! Cyclic Jacobi diagonalization of complex Hermitian matrices.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Default off-diagonal tolerance, relative to `1 + ‖H‖_F`.
pub const DEFAULT_EIG_TOL: f64 = 1e-12;
pub const MAX_SWEEPS: usize = 100;
/// Allowed `‖H − H*‖_F` relative to `‖H‖_F` before the input is rejected.
pub const HERMITIAN_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct HermitianEigenDecomposition {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors stored as columns, in eigenvalue order.
    pub eigenvectors: ComplexMatrix,
    /// `‖H·V − V·diag(λ)‖_F` against the symmetrized input.
    pub residual: f64,
}

impl HermitianEigenDecomposition {
    pub fn n(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn max_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().expect("n >= 1")
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    /// Column `k` of the eigenvector matrix.
    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        (0..self.n()).map(|i| self.eigenvectors.get(i, k)).collect()
    }

    /// `V · diag(values) · V*`.
    pub fn reconstruct_with(&self, values: &[f64]) -> ComplexMatrix {
        let n = self.n();
        let v = &self.eigenvectors;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for (k, &lambda) in values.iter().enumerate() {
                    if lambda != 0.0 {
                        acc += v.get(i, k) * v.get(j, k).conj() * lambda;
                    }
                }
                if i == j {
                    out.set(i, i, Complex64::new(acc.re, 0.0));
                } else {
                    out.set(i, j, acc);
                    out.set(j, i, acc.conj());
                }
            }
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.reconstruct_with(&self.eigenvalues)
    }
}

pub fn hermitian_eig(h: &ComplexMatrix, tol: f64) -> Result<HermitianEigenDecomposition> {
    let sym = checked_symmetric(h, tol)?;
    let n = sym.n();
    let mut v = ComplexMatrix::identity(n);
    let a = diagonalize(&sym, tol, Some(&mut v))?;

    // stable sort keeps discovery order for ties
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(i, i).re.total_cmp(&a.get(j, j).re));
    let eigenvalues: Vec<f64> = order.iter().map(|&k| a.get(k, k).re).collect();
    let mut vectors = ComplexMatrix::zeros(n);
    for (col, &k) in order.iter().enumerate() {
        for i in 0..n {
            vectors.set(i, col, v.get(i, k));
        }
    }

    let residual = residual(&sym, &vectors, &eigenvalues);
    Ok(HermitianEigenDecomposition { eigenvalues, eigenvectors: vectors, residual })
}

/// Eigenvalues only, ascending.
pub fn hermitian_eigenvalues(h: &ComplexMatrix) -> Result<Vec<f64>> {
    let sym = checked_symmetric(h, DEFAULT_EIG_TOL)?;
    let a = diagonalize(&sym, DEFAULT_EIG_TOL, None)?;
    let mut values: Vec<f64> = (0..a.n()).map(|k| a.get(k, k).re).collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Largest eigenvalue; closed form for `n ≤ 2`.
pub fn hermitian_max_eigenvalue(h: &ComplexMatrix) -> Result<f64> {
    match h.n() {
        0 => Err(Error::InvalidMatrix("empty matrix".into())),
        1 | 2 => {
            let sym = checked_symmetric(h, DEFAULT_EIG_TOL)?;
            if sym.n() == 1 {
                return Ok(sym.get(0, 0).re);
            }
            let (a, c) = (sym.get(0, 0).re, sym.get(1, 1).re);
            let mean = 0.5 * (a + c);
            let half_gap = 0.5 * (a - c);
            Ok(mean + half_gap.hypot(sym.get(0, 1).norm()))
        }
        _ => Ok(*hermitian_eigenvalues(h)?.last().expect("n >= 1")),
    }
}

/// Validate `tol` and Hermitian-ness; returns the exactly Hermitian part.
fn checked_symmetric(h: &ComplexMatrix, tol: f64) -> Result<ComplexMatrix> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidParameter(format!("eigen tolerance must be positive, got {tol}")));
    }
    let h_norm = h.frobenius_norm();
    let deviation = h.hermitian_deviation();
    let allowed = HERMITIAN_TOL * h_norm;
    if deviation > allowed {
        return Err(Error::NotHermitian { deviation, allowed });
    }
    Ok(h.real_part())
}

/// Cyclic Jacobi sweeps until the off-diagonal part is below
/// `tol·(1 + ‖H‖_F)`; accumulates rotations into `v` when given.
fn diagonalize(sym: &ComplexMatrix, tol: f64, mut v: Option<&mut ComplexMatrix>) -> Result<ComplexMatrix> {
    let n = sym.n();
    let mut a = sym.clone();
    let threshold = tol * (1.0 + sym.frobenius_norm());
    let mut converged = off_diagonal_norm(&a) <= threshold;
    let mut sweeps = 0;
    while !converged {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { what: "Hermitian Jacobi eigensolver", iterations: sweeps });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, v.as_deref_mut(), p, q);
            }
        }
        converged = off_diagonal_norm(&a) <= threshold;
    }
    Ok(a)
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.n();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a.get(i, j).norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Annihilate `a[p][q]` with the unitary `U = diag(1, e^{-iφ})·R(θ)` acting on
/// coordinates `p, q`, where `φ = arg a[p][q]` and `R` is the real Jacobi rotation
/// for `[[a_pp, |a_pq|], [|a_pq|, a_qq]]`.
fn rotate(a: &mut ComplexMatrix, v: Option<&mut ComplexMatrix>, p: usize, q: usize) {
    let apq = a.get(p, q);
    let modulus = apq.norm();
    if modulus == 0.0 {
        return;
    }
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;
    let theta = (aqq - app) / (2.0 * modulus);
    if !theta.is_finite() {
        // |a_pq| is negligible against the diagonal gap
        a.set(p, q, Complex64::new(0.0, 0.0));
        a.set(q, p, Complex64::new(0.0, 0.0));
        return;
    }
    let t = theta.signum() / (theta.abs() + theta.hypot(1.0));
    let c = 1.0 / t.hypot(1.0);
    let s = t * c;
    let phase = (apq / modulus).conj(); // e^{-iφ}

    let u00 = Complex64::new(c, 0.0);
    let u01 = Complex64::new(s, 0.0);
    let u10 = phase * (-s);
    let u11 = phase * c;

    let n = a.n();
    // A ← A·U
    for k in 0..n {
        let akp = a.get(k, p);
        let akq = a.get(k, q);
        a.set(k, p, akp * u00 + akq * u10);
        a.set(k, q, akp * u01 + akq * u11);
    }
    // A ← U*·A
    for k in 0..n {
        let apk = a.get(p, k);
        let aqk = a.get(q, k);
        a.set(p, k, u00.conj() * apk + u10.conj() * aqk);
        a.set(q, k, u01.conj() * apk + u11.conj() * aqk);
    }
    a.set(p, q, Complex64::new(0.0, 0.0));
    a.set(q, p, Complex64::new(0.0, 0.0));
    a.set(p, p, Complex64::new(a.get(p, p).re, 0.0));
    a.set(q, q, Complex64::new(a.get(q, q).re, 0.0));
    // V ← V·U
    let Some(v) = v else { return };
    for k in 0..n {
        let vkp = v.get(k, p);
        let vkq = v.get(k, q);
        v.set(k, p, vkp * u00 + vkq * u10);
        v.set(k, q, vkp * u01 + vkq * u11);
    }
}

fn residual(h: &ComplexMatrix, vectors: &ComplexMatrix, values: &[f64]) -> f64 {
    let n = h.n();
    let hv = h.mul_unchecked(vectors);
    let mut acc = 0.0;
    for i in 0..n {
        for (k, &lambda) in values.iter().enumerate() {
            acc += (hv.get(i, k) - vectors.get(i, k) * lambda).norm_sqr();
        }
    }
    acc.sqrt()
}
