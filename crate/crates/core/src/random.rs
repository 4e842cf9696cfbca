//! Seeded random matrices and vectors.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::{inner, vector_norm, ComplexMatrix, UnitVector};

/// Standard complex Gaussian: real and imaginary parts i.i.d. `N(0, 1/2)`, so `E|z|² = 1`.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn complex_gaussian_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Complex64> {
    (0..n).map(|_| complex_gaussian(rng)).collect()
}

/// Uniformly distributed point on the complex unit sphere.
pub fn random_unit_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> UnitVector {
    loop {
        let v = complex_gaussian_vector(rng, n);
        if vector_norm(&v) > 1e-8 {
            return UnitVector::normalize(v).expect("non-zero finite vector");
        }
    }
}

pub fn ginibre<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    ComplexMatrix::new(n, complex_gaussian_vector(rng, n * n)).expect("finite Gaussian sample")
}

/// Haar-distributed unitary: Gram–Schmidt on the columns of a Ginibre sample,
/// which yields the QR factor whose `R` has a positive diagonal.
pub fn haar_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let g = ginibre(rng, n);
    let mut columns: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut v: Vec<Complex64> = (0..n).map(|i| g.get(i, j)).collect();
        // two passes keep the columns orthonormal to working precision
        for _ in 0..2 {
            for q in &columns {
                let proj = inner(&v, q);
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= proj * qi;
                }
            }
        }
        let norm = vector_norm(&v);
        columns.push(v.into_iter().map(|z| z / norm).collect());
    }
    let mut data = vec![Complex64::new(0.0, 0.0); n * n];
    for (j, col) in columns.iter().enumerate() {
        for (i, &z) in col.iter().enumerate() {
            data[i * n + j] = z;
        }
    }
    ComplexMatrix::new(n, data).expect("finite unitary")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn haar_sample_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=8 {
            let u = haar_unitary(&mut rng, n);
            let defect = u.adjoint().matmul(&u).unwrap().sub(&ComplexMatrix::identity(n)).unwrap();
            assert!(defect.frobenius_norm() < 1e-13, "n = {n}");
        }
    }

    #[test]
    fn unit_vectors_have_unit_norm() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..6 {
            let x = random_unit_vector(&mut rng, n);
            assert!((vector_norm(x.components()) - 1.0).abs() < 1e-14);
        }
    }
}
