use std::fmt;
use std::ops::Index;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense square complex matrix, row-major.
///
/// Every value built through the public constructors is square, non-empty
/// and has finite entries.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMatrix", into = "RawMatrix")]
pub struct ComplexMatrix {
    n: usize,
    data: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct RawMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl TryFrom<RawMatrix> for ComplexMatrix {
    type Error = Error;
    fn try_from(raw: RawMatrix) -> Result<Self> {
        ComplexMatrix::new(raw.n, raw.data)
    }
}

impl From<ComplexMatrix> for RawMatrix {
    fn from(m: ComplexMatrix) -> Self {
        RawMatrix { n: m.n, data: m.data }
    }
}

impl ComplexMatrix {
    pub fn new(n: usize, data: Vec<Complex64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidMatrix("dimension must be at least 1".into()));
        }
        if data.len() != n * n {
            return Err(Error::InvalidMatrix(format!(
                "expected {} entries for n = {n}, found {}",
                n * n,
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidMatrix(format!(
                "non-finite entry at ({}, {})",
                pos / n,
                pos % n
            )));
        }
        Ok(Self { n, data })
    }

    /// Build without validation. Callers guarantee the shape; entries may
    /// overflow only in internal intermediate results.
    pub(crate) fn from_raw(n: usize, data: Vec<Complex64>) -> Self {
        debug_assert_eq!(data.len(), n * n);
        Self { n, data }
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::InvalidMatrix(format!(
                "row of length {} in a matrix with {n} rows",
                bad.len()
            )));
        }
        Self::new(n, rows.iter().flatten().copied().collect())
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn zeros(n: usize) -> Self {
        assert!(n > 0, "dimension must be at least 1");
        Self::from_raw(n, vec![Complex64::new(0.0, 0.0); n * n])
    }

    pub fn identity(n: usize) -> Self {
        Self::from_real_diagonal(&vec![1.0; n])
    }

    pub fn diagonal(values: &[Complex64]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n);
        for (i, &v) in values.iter().enumerate() {
            m.data[i * n + i] = v;
        }
        m
    }

    pub fn from_real_diagonal(values: &[f64]) -> Self {
        let values: Vec<Complex64> = values.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::diagonal(&values)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub(crate) fn set(&mut self, i: usize, j: usize, value: Complex64) {
        self.data[i * self.n + j] = value;
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let n = self.n;
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(self.get(j, i).conj());
            }
        }
        Self::from_raw(n, data)
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(self.mul_unchecked(other))
    }

    /// Product with a fixed i-k-j loop order so results are reproducible.
    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.n;
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            let row = &mut data[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let other_row = &other.data[k * n..(k + 1) * n];
                for (acc, &b) in row.iter_mut().zip(other_row) {
                    *acc += a * b;
                }
            }
        }
        Self::from_raw(n, data)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    pub(crate) fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect();
        Self::from_raw(self.n, data)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::from_raw(self.n, self.data.iter().map(|&z| z * c).collect())
    }

    pub fn scale_real(&self, c: f64) -> Self {
        Self::from_raw(self.n, self.data.iter().map(|&z| z * c).collect())
    }

    /// Linear combination `a·self + b·other` of equally sized matrices.
    pub fn combine(&self, a: f64, other: &Self, b: f64) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(self.zip_with(other, |x, y| x * a + y * b))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// `‖M − M*‖_F`.
    pub fn hermitian_deviation(&self) -> f64 {
        let n = self.n;
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                acc += (self.get(i, j) - self.get(j, i).conj()).norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// `(M + M*)/2`, conjugate symmetric by construction.
    pub fn real_part(&self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            out.set(i, i, Complex64::new(self.get(i, i).re, 0.0));
            for j in (i + 1)..n {
                let v = (self.get(i, j) + self.get(j, i).conj()) * 0.5;
                out.set(i, j, v);
                out.set(j, i, v.conj());
            }
        }
        out
    }

    /// `(M − M*)/(2i)`, so that `M = real_part + i·imag_part`.
    pub fn imag_part(&self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            out.set(i, i, Complex64::new(self.get(i, i).im, 0.0));
            for j in (i + 1)..n {
                let v = (self.get(i, j) - self.get(j, i).conj()) * Complex64::new(0.0, -0.5);
                out.set(i, j, v);
                out.set(j, i, v.conj());
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: x.len() });
        }
        Ok((0..self.n)
            .map(|i| {
                self.data[i * self.n..(i + 1) * self.n]
                    .iter()
                    .zip(x)
                    .map(|(&a, &b)| a * b)
                    .sum()
            })
            .collect())
    }

    /// `⟨Mx, x⟩ = x* M x`.
    pub fn quadratic_form(&self, x: &[Complex64]) -> Result<Complex64> {
        let mx = self.mul_vec(x)?;
        Ok(inner(&mx, x))
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.n, self.n)?;
        for i in 0..self.n {
            write!(f, "  ")?;
            for j in 0..self.n {
                let z = self.get(i, j);
                write!(f, "{:>11.4e}{:+.4e}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// `⟨u, v⟩ = Σ uᵢ·conj(vᵢ)`, linear in the first argument.
pub fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(&a, &b)| a * b.conj()).sum()
}

pub fn vector_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// A complex vector of Euclidean norm one (within 1e−12).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitVector(Vec<Complex64>);

impl UnitVector {
    pub const NORM_TOLERANCE: f64 = 1e-12;

    pub fn new(components: Vec<Complex64>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidVector("empty vector".into()));
        }
        let norm = vector_norm(&components);
        if !norm.is_finite() || (norm - 1.0).abs() > Self::NORM_TOLERANCE {
            return Err(Error::InvalidVector(format!("norm {norm} is not 1")));
        }
        Ok(Self(components))
    }

    /// Rescale a non-zero finite vector to unit length.
    pub fn normalize(components: Vec<Complex64>) -> Result<Self> {
        let norm = vector_norm(&components);
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::InvalidVector(format!("cannot normalize vector of norm {norm}")));
        }
        Self::new(components.into_iter().map(|z| z / norm).collect())
    }

    /// The standard basis vector `e_k`.
    pub fn basis(n: usize, k: usize) -> Result<Self> {
        if k >= n {
            return Err(Error::InvalidVector(format!("basis index {k} out of range for n = {n}")));
        }
        let mut v = vec![Complex64::new(0.0, 0.0); n];
        v[k] = Complex64::new(1.0, 0.0);
        Self::new(v)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[Complex64] {
        &self.0
    }
}

impl AsRef<[Complex64]> for UnitVector {
    fn as_ref(&self) -> &[Complex64] {
        &self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn adjoint_of_real_matrix_is_transpose() {
        let m = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 2.0]]).unwrap();
        let expected = ComplexMatrix::from_real_rows(&[vec![0.0, 0.0], vec![1.0, 2.0]]).unwrap();
        assert_eq!(m.adjoint(), expected);
        assert_eq!(m.adjoint().adjoint(), m);
    }

    #[test]
    fn adjoint_conjugates_diagonal() {
        let m = ComplexMatrix::diagonal(&[c(0.0, 1.0), c(0.0, -1.0)]);
        assert_eq!(m.adjoint(), ComplexMatrix::diagonal(&[c(0.0, -1.0), c(0.0, 1.0)]));
    }

    #[test]
    fn adjoint_fixes_hermitian() {
        let h = ComplexMatrix::from_rows(&[vec![c(2.0, 0.0), c(1.0, -3.0)], vec![c(1.0, 3.0), c(-1.0, 0.0)]])
            .unwrap();
        assert_eq!(h.adjoint(), h);
    }

    #[test]
    fn first_example_products() {
        let a = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 2.0]]).unwrap();
        let b = ComplexMatrix::from_real_rows(&[vec![2.0, 0.0], vec![1.0, 0.0]]).unwrap();
        let bsa = b.adjoint().matmul(&a).unwrap();
        assert_eq!(bsa, ComplexMatrix::from_real_rows(&[vec![0.0, 4.0], vec![0.0, 0.0]]).unwrap());

        let b2 = b.adjoint().matmul(&b).unwrap();
        let a2 = a.adjoint().matmul(&a).unwrap();
        assert_eq!(b2, ComplexMatrix::from_real_diagonal(&[5.0, 0.0]));
        assert_eq!(a2, ComplexMatrix::from_real_diagonal(&[0.0, 5.0]));
        assert_eq!(b2.matmul(&a2).unwrap(), ComplexMatrix::zeros(2));

        let i = ComplexMatrix::identity(2);
        assert_eq!(i.matmul(&a).unwrap(), a);
    }

    #[test]
    fn matmul_rejects_mismatched_dimensions() {
        let err = ComplexMatrix::identity(2).matmul(&ComplexMatrix::identity(3)).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { expected: 2, found: 3 });
    }

    #[test]
    fn real_part_examples() {
        let t = ComplexMatrix::from_real_rows(&[vec![0.0, 4.0], vec![0.0, 0.0]]).unwrap();
        assert_eq!(
            t.real_part(),
            ComplexMatrix::from_real_rows(&[vec![0.0, 2.0], vec![2.0, 0.0]]).unwrap()
        );
        let skew = ComplexMatrix::from_rows(&[vec![c(0.0, 1.0), c(2.0, 1.0)], vec![c(-2.0, 1.0), c(0.0, -3.0)]])
            .unwrap();
        assert_eq!(skew.real_part(), ComplexMatrix::zeros(2));
        let h = ComplexMatrix::from_rows(&[vec![c(1.0, 0.0), c(0.5, 2.0)], vec![c(0.5, -2.0), c(3.0, 0.0)]])
            .unwrap();
        assert_eq!(h.real_part(), h);
    }

    #[test]
    fn real_and_imaginary_parts_recombine() {
        let t = ComplexMatrix::from_rows(&[vec![c(1.0, 2.0), c(-0.5, 0.25)], vec![c(3.0, -1.0), c(0.0, 4.0)]])
            .unwrap();
        let back = t
            .real_part()
            .add(&t.imag_part().scale(c(0.0, 1.0)))
            .unwrap();
        assert!(back.sub(&t).unwrap().frobenius_norm() < 1e-15);
    }

    #[test]
    fn constructor_rejects_bad_input() {
        assert!(ComplexMatrix::new(0, vec![]).is_err());
        assert!(ComplexMatrix::new(2, vec![c(0.0, 0.0); 3]).is_err());
        assert!(ComplexMatrix::new(1, vec![c(f64::NAN, 0.0)]).is_err());
        assert!(ComplexMatrix::from_real_rows(&[vec![1.0, 2.0], vec![3.0]]).is_err());
    }

    #[test]
    fn unit_vector_validation() {
        assert!(UnitVector::new(vec![c(1.0, 0.0), c(1.0, 0.0)]).is_err());
        assert!(UnitVector::normalize(vec![c(0.0, 0.0)]).is_err());
        let x = UnitVector::normalize(vec![c(3.0, 0.0), c(0.0, 4.0)]).unwrap();
        assert!((vector_norm(x.components()) - 1.0).abs() < 1e-15);
        assert!(UnitVector::basis(2, 2).is_err());
    }

    #[test]
    fn quadratic_form_matches_definition() {
        let t = ComplexMatrix::from_real_rows(&[vec![0.0, 4.0], vec![0.0, 0.0]]).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let x = UnitVector::new(vec![c(s, 0.0), c(s, 0.0)]).unwrap();
        let z = t.quadratic_form(x.components()).unwrap();
        assert!((z - c(2.0, 0.0)).norm() < 1e-15);
    }
}
