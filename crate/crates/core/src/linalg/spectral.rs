//! Functions of Hermitian matrices through their eigendecomposition.

use num_complex::Complex64;

use super::eig::{hermitian_eig, hermitian_eigenvalues, HermitianEigenDecomposition, DEFAULT_EIG_TOL};
use super::matrix::ComplexMatrix;
use super::svd::graded_singular_values;
use crate::convex::ConvexFunctionSpec;
use crate::error::{Error, Result};

/// Relative size of negative eigenvalues that are treated as roundoff.
pub const PSD_CLAMP: f64 = 1e-10;

/// A scalar function applied to a spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpectralFn {
    /// `t ↦ t^p` for `p ≥ 0`, on `[0, ∞)`.
    Power(f64),
    Convex(ConvexFunctionSpec),
}

impl SpectralFn {
    fn domain_min(&self) -> f64 {
        match self {
            SpectralFn::Power(_) => 0.0,
            SpectralFn::Convex(f) => f.domain_min(),
        }
    }

    fn eval(&self, t: f64) -> Result<f64> {
        match self {
            SpectralFn::Power(p) => {
                let value = t.powf(*p);
                if value.is_finite() {
                    Ok(value)
                } else {
                    Err(Error::FunctionUndefined { function: format!("t^{p}"), argument: t })
                }
            }
            SpectralFn::Convex(f) => f.try_eval(t),
        }
    }
}

impl From<ConvexFunctionSpec> for SpectralFn {
    fn from(f: ConvexFunctionSpec) -> Self {
        SpectralFn::Convex(f)
    }
}

/// Replace roundoff-level negative eigenvalues with zero.
///
/// Values in `[−1e−10·(1+λmax), 0)` become 0; anything lower is an error.
pub fn clamp_psd(eigenvalues: &[f64]) -> Result<Vec<f64>> {
    let lmax = eigenvalues.iter().copied().fold(0.0f64, f64::max);
    let threshold = -PSD_CLAMP * (1.0 + lmax);
    eigenvalues
        .iter()
        .map(|&l| {
            if l >= 0.0 {
                Ok(l)
            } else if l >= threshold {
                Ok(0.0)
            } else {
                Err(Error::NegativeSpectrum { eigenvalue: l, threshold })
            }
        })
        .collect()
}

fn map_spectrum(eigenvalues: &[f64], f: SpectralFn) -> Result<Vec<f64>> {
    let spectrum = if f.domain_min() >= 0.0 {
        clamp_psd(eigenvalues)?
    } else {
        eigenvalues.to_vec()
    };
    spectrum.iter().map(|&l| f.eval(l)).collect()
}

/// `f(H)` with the eigenvectors of `H` and eigenvalues mapped through `f`.
///
/// For functions defined only on `[0, ∞)` the spectrum is clamped first.
pub fn apply_spectral_function(h: &ComplexMatrix, f: SpectralFn) -> Result<ComplexMatrix> {
    let decomposition = hermitian_eig(h, DEFAULT_EIG_TOL)?;
    apply_to_decomposition(&decomposition, f)
}

pub fn apply_to_decomposition(d: &HermitianEigenDecomposition, f: SpectralFn) -> Result<ComplexMatrix> {
    let mapped = map_spectrum(&d.eigenvalues, f)?;
    Ok(d.reconstruct_with(&mapped))
}

/// Singular values of `A`, descending.
pub fn singular_values(a: &ComplexMatrix) -> Result<Vec<f64>> {
    let gram = a.adjoint().mul_unchecked(a);
    let mut s: Vec<f64> = clamp_psd(&hermitian_eigenvalues(&gram)?)?.into_iter().map(f64::sqrt).collect();
    s.reverse();
    Ok(s)
}

/// Singular values of a Hermitian matrix, read off as `|λ|`, descending.
pub fn hermitian_singular_values(h: &ComplexMatrix) -> Result<Vec<f64>> {
    let mut s: Vec<f64> = hermitian_eigenvalues(h)?.iter().map(|l| l.abs()).collect();
    s.sort_by(|a, b| b.total_cmp(a));
    Ok(s)
}

/// `|A| = (A*A)^{1/2}`.
pub fn matrix_abs(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    GramSpectrum::new(a)?.abs_power(1.0)
}

/// Eigendecomposition of `A*A`, reusable for every power `|A|^p`.
#[derive(Debug, Clone)]
pub struct GramSpectrum {
    decomposition: HermitianEigenDecomposition,
    /// Clamped eigenvalues of `A*A`, ascending.
    gram_eigenvalues: Vec<f64>,
}

impl GramSpectrum {
    pub fn new(a: &ComplexMatrix) -> Result<Self> {
        Self::from_psd(&a.adjoint().mul_unchecked(a))
    }

    /// Wrap an already positive semidefinite matrix `P`, so `abs_power(p)` is `P^{p/2}`.
    pub fn from_psd(p: &ComplexMatrix) -> Result<Self> {
        let decomposition = hermitian_eig(p, DEFAULT_EIG_TOL)?;
        let gram_eigenvalues = clamp_psd(&decomposition.eigenvalues)?;
        Ok(Self { decomposition, gram_eigenvalues })
    }

    /// Eigenvalues of `|A|` (the singular values), ascending.
    pub fn abs_eigenvalues(&self) -> Vec<f64> {
        self.gram_eigenvalues.iter().map(|l| l.sqrt()).collect()
    }

    pub fn operator_norm(&self) -> f64 {
        self.gram_eigenvalues.last().copied().unwrap_or(0.0).sqrt()
    }

    /// `|A|^p`.
    pub fn abs_power(&self, p: f64) -> Result<ComplexMatrix> {
        let values = self
            .gram_eigenvalues
            .iter()
            .map(|&l| SpectralFn::Power(0.5 * p).eval(l))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.decomposition.reconstruct_with(&values))
    }

    /// `|⟨x, v_k⟩|²` for each eigenvector `v_k` of `A*A`, so that
    /// `⟨h(A*A)x, x⟩ = Σ h(λ_k)·w_k`.
    pub fn weights(&self, x: &[Complex64]) -> Vec<f64> {
        let v = &self.decomposition.eigenvectors;
        (0..self.decomposition.n())
            .map(|k| {
                let c: Complex64 = x.iter().enumerate().map(|(i, &xi)| v.get(i, k).conj() * xi).sum();
                c.norm_sqr()
            })
            .collect()
    }

    /// `⟨|A|^p x, x⟩` without forming the matrix.
    pub fn power_form(&self, p: f64, x: &[Complex64]) -> Result<f64> {
        self.weights(x)
            .iter()
            .zip(&self.gram_eigenvalues)
            .map(|(w, &l)| Ok(w * SpectralFn::Power(0.5 * p).eval(l)?))
            .sum()
    }

    /// `⟨g(|A|^p) x, x⟩` without forming the matrix.
    pub fn convex_form(&self, g: &ConvexFunctionSpec, p: f64, x: &[Complex64]) -> Result<f64> {
        self.weights(x)
            .iter()
            .zip(&self.gram_eigenvalues)
            .map(|(w, &l)| Ok(w * g.try_eval(l.powf(0.5 * p))?))
            .sum()
    }

    /// `g(|A|^p)` for a convex `g`.
    pub fn convex_of_abs_power(&self, g: &ConvexFunctionSpec, p: f64) -> Result<ComplexMatrix> {
        let values = self
            .gram_eigenvalues
            .iter()
            .map(|&l| g.try_eval(l.powf(0.5 * p)))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.decomposition.reconstruct_with(&values))
    }
}

/// Eigenvalues, descending, of `Σ w_k·|A_k|^{p_k}` for `w_k ≥ 0`.
///
/// Computed as squared singular values of the stacked factor
/// `[√w_k·λ^{p_k/4}·v*]`, so small eigenvalues keep relative accuracy
/// even when the terms span many orders of magnitude.
pub fn weighted_power_sum_eigenvalues(terms: &[(f64, &GramSpectrum, f64)]) -> Result<Vec<f64>> {
    let mut rows = Vec::new();
    for &(w, g, p) in terms {
        if !(w >= 0.0 && w.is_finite() && p >= 0.0 && p.is_finite()) {
            return Err(Error::InvalidParameter(format!("weight {w} and exponent {p} must be non-negative")));
        }
        let v = &g.decomposition.eigenvectors;
        for (k, &l) in g.gram_eigenvalues.iter().enumerate() {
            let scale = w.sqrt() * SpectralFn::Power(0.25 * p).eval(l)?;
            rows.push((0..v.n()).map(|i| v.get(i, k).conj() * scale).collect::<Vec<_>>());
        }
    }
    let s = graded_singular_values(&rows)?;
    let out: Vec<f64> = s.iter().map(|x| x * x).collect();
    match out.iter().find(|x| !x.is_finite()) {
        Some(&x) => Err(Error::FunctionUndefined { function: "weighted power sum".into(), argument: x }),
        None => Ok(out),
    }
}

/// Largest eigenvalue of `H` and a matching unit eigenvector.
pub fn top_eigenpair(h: &ComplexMatrix) -> Result<(f64, Vec<Complex64>)> {
    let d = hermitian_eig(h, DEFAULT_EIG_TOL)?;
    let k = d.n() - 1;
    Ok((d.eigenvalues[k], d.eigenvector(k)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn dist(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
        a.sub(b).unwrap().frobenius_norm()
    }

    #[test]
    fn singular_values_examples() {
        let t = ComplexMatrix::from_real_rows(&[vec![0.0, 4.0], vec![0.0, 0.0]]).unwrap();
        assert_eq!(singular_values(&t).unwrap(), vec![4.0, 0.0]);

        let a = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 2.0]]).unwrap();
        let s = singular_values(&a).unwrap();
        assert!((s[0] - 5f64.sqrt()).abs() < 1e-15 && s[1] == 0.0);

        let h = std::f64::consts::FRAC_1_SQRT_2;
        let u = ComplexMatrix::from_rows(&[vec![c(h, 0.0), c(0.0, h)], vec![c(0.0, h), c(h, 0.0)]]).unwrap();
        for s in singular_values(&u).unwrap() {
            assert!((s - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn abs_examples() {
        let a = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 2.0]]).unwrap();
        assert_eq!(matrix_abs(&a).unwrap(), ComplexMatrix::from_real_diagonal(&[0.0, 5f64.sqrt()]));

        let h = std::f64::consts::FRAC_1_SQRT_2;
        let u = ComplexMatrix::from_rows(&[vec![c(h, 0.0), c(0.0, h)], vec![c(0.0, h), c(h, 0.0)]]).unwrap();
        assert!(dist(&matrix_abs(&u).unwrap(), &ComplexMatrix::identity(2)) < 1e-14);

        let p = ComplexMatrix::from_rows(&[vec![c(2.0, 0.0), c(0.5, 0.5)], vec![c(0.5, -0.5), c(1.0, 0.0)]])
            .unwrap();
        let root = apply_spectral_function(&p, SpectralFn::Power(0.5)).unwrap();
        assert!(dist(&root.matmul(&root).unwrap(), &p) < 1e-9);
        assert!(dist(&matrix_abs(&p).unwrap(), &p) < 1e-12);
    }

    #[test]
    fn power_examples() {
        let h = ComplexMatrix::from_real_diagonal(&[0.0, 5f64.sqrt()]);
        let sq = apply_spectral_function(&h, SpectralFn::Power(2.0)).unwrap();
        assert!(dist(&sq, &ComplexMatrix::from_real_diagonal(&[0.0, 5.0])) < 1e-14);

        // 2r/(1−α) = 4 for r = 1, α = 1/2
        let exponent = 2.0 * 1.0 / (1.0 - 0.5);
        let d = apply_spectral_function(&ComplexMatrix::from_real_diagonal(&[1.0, 4.0]), SpectralFn::Power(exponent))
            .unwrap();
        assert_eq!(d, ComplexMatrix::from_real_diagonal(&[1.0, 256.0]));
    }

    #[test]
    fn clamp_rule() {
        assert_eq!(clamp_psd(&[-1e-12, 3.0]).unwrap(), vec![0.0, 3.0]);
        assert!(matches!(clamp_psd(&[-1e-3, 3.0]), Err(Error::NegativeSpectrum { .. })));
        let indefinite = ComplexMatrix::from_real_diagonal(&[-1.0, 1.0]);
        assert!(apply_spectral_function(&indefinite, SpectralFn::Power(0.5)).is_err());
        // functions defined on the whole line accept indefinite input
        let f = ConvexFunctionSpec::affine_quad(1.0).unwrap();
        let out = apply_spectral_function(&indefinite, f.into()).unwrap();
        assert_eq!(out, ComplexMatrix::from_real_diagonal(&[0.0, 2.0]));
    }

    #[test]
    fn overflow_is_reported() {
        let f = ConvexFunctionSpec::exp_m1(1.0).unwrap();
        let h = ComplexMatrix::from_real_diagonal(&[1e4, 0.0]);
        assert!(matches!(
            apply_spectral_function(&h, f.into()),
            Err(Error::FunctionUndefined { .. })
        ));
    }

    #[test]
    fn hermitian_singular_values_use_moduli() {
        let h = ComplexMatrix::from_real_diagonal(&[-3.0, 1.0, 2.0]);
        assert_eq!(hermitian_singular_values(&h).unwrap(), vec![3.0, 2.0, 1.0]);
    }

    #[test]
    fn weighted_power_sums_keep_small_eigenvalues() {
        let t = ComplexMatrix::diagonal(&[c(0.6, 0.8), c(0.0, -0.01), c(1e-3, 0.0)]);
        let g = GramSpectrum::new(&t).unwrap();
        let ga = GramSpectrum::new(&t.adjoint()).unwrap();
        let mu = weighted_power_sum_eigenvalues(&[(0.5, &g, 12.0), (0.5, &ga, 12.0)]).unwrap();
        for (got, want) in mu.iter().zip([1.0, 1e-24, 1e-36]) {
            assert!((got - want).abs() <= 1e-12 * want, "{got} vs {want}");
        }
    }

    #[test]
    fn weighted_power_sums_match_the_direct_sum() {
        let a = ComplexMatrix::from_rows(&[
            vec![c(1.0, 0.5), c(-0.3, 0.0), c(0.2, 0.2)],
            vec![c(0.0, 1.0), c(0.7, -0.1), c(0.0, 0.0)],
            vec![c(0.4, 0.0), c(0.1, 0.3), c(-0.9, 0.0)],
        ])
        .unwrap();
        let g = GramSpectrum::new(&a).unwrap();
        let ga = GramSpectrum::new(&a.adjoint()).unwrap();
        let direct = g.abs_power(3.0).unwrap().combine(0.3, &ga.abs_power(5.0).unwrap(), 0.7).unwrap();
        let mut want = hermitian_eig(&direct, 1e-14).unwrap().eigenvalues;
        want.reverse();
        let got = weighted_power_sum_eigenvalues(&[(0.3, &g, 3.0), (0.7, &ga, 5.0)]).unwrap();
        for (x, y) in got.iter().zip(&want) {
            assert!((x - y).abs() < 1e-12, "{x} vs {y}");
        }
        assert!(weighted_power_sum_eigenvalues(&[(-1.0, &g, 2.0)]).is_err());
    }
}
