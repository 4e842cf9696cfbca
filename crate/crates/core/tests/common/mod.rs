#![allow(dead_code)]

use num_complex::Complex64;
use numrad_core::random::{ginibre, haar_unitary, random_unit_vector};
use numrad_core::{ComplexMatrix, UnitVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gin(seed: u64, n: usize) -> ComplexMatrix {
    ginibre(&mut rng(seed), n)
}

pub fn unitary(seed: u64, n: usize) -> ComplexMatrix {
    haar_unitary(&mut rng(seed), n)
}

pub fn unit(seed: u64, n: usize) -> UnitVector {
    random_unit_vector(&mut rng(seed), n)
}

pub fn hermitian(seed: u64, n: usize) -> ComplexMatrix {
    gin(seed, n).real_part()
}

pub fn dist(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    a.sub(b).unwrap().frobenius_norm()
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
