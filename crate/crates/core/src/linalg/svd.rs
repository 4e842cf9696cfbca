//! Singular values with high relative accuracy for row-graded matrices.
//!
//! `H = D·B` with `D` diagonal and `B` well conditioned: sort rows by norm,
//! Householder QR with column pivoting, then one-sided Jacobi on `R*`.

use num_complex::Complex64;

use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;

/// Dense `m × n` matrix, column-major.
#[derive(Debug, Clone)]
struct Columns {
    m: usize,
    cols: Vec<Vec<Complex64>>,
}

fn norm_sqr(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

/// Singular values of the `m × n` matrix with the given rows, descending.
/// Requires `m ≥ n`.
pub fn graded_singular_values(rows: &[Vec<Complex64>]) -> Result<Vec<f64>> {
    let m = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidMatrix("rows have different lengths".into()));
    }
    if m < n {
        return Err(Error::InvalidMatrix(format!("need at least as many rows as columns, got {m} × {n}")));
    }
    if rows.iter().flatten().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(Error::InvalidMatrix("non-finite entry".into()));
    }
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&i, &j| norm_sqr(&rows[j]).total_cmp(&norm_sqr(&rows[i])));
    let mut h = Columns { m, cols: (0..n).map(|j| order.iter().map(|&i| rows[i][j]).collect()).collect() };
    let r = pivoted_qr_r(&mut h);
    // X = R*, lower triangular
    let mut x: Vec<Vec<Complex64>> = (0..n).map(|j| (0..n).map(|i| r[j][i].conj()).collect()).collect();
    one_sided_jacobi(&mut x)?;
    let mut s: Vec<f64> = x.iter().map(|c| norm_sqr(c).sqrt()).collect();
    s.sort_by(|a, b| b.total_cmp(a));
    Ok(s)
}

/// Householder QR with column pivoting; returns `R` as rows.
fn pivoted_qr_r(h: &mut Columns) -> Vec<Vec<Complex64>> {
    let (m, n) = (h.m, h.cols.len());
    for k in 0..n {
        let pivot = (k..n)
            .max_by(|&a, &b| norm_sqr(&h.cols[a][k..]).total_cmp(&norm_sqr(&h.cols[b][k..])))
            .unwrap_or(k);
        h.cols.swap(k, pivot);
        let norm = norm_sqr(&h.cols[k][k..]).sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = h.cols[k][k];
        let phase = if x0.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { x0 / x0.norm() };
        let alpha = -phase * norm;
        let mut v: Vec<Complex64> = h.cols[k][k..].to_vec();
        v[0] -= alpha;
        let vv = norm_sqr(&v);
        if vv == 0.0 {
            continue;
        }
        for j in k..n {
            let col = &mut h.cols[j][k..];
            let dot: Complex64 = v.iter().zip(col.iter()).map(|(vi, ci)| vi.conj() * ci).sum();
            let f = dot * (2.0 / vv);
            for (ci, vi) in col.iter_mut().zip(&v) {
                *ci -= vi * f;
            }
        }
        h.cols[k][k] = alpha;
        for i in k + 1..m {
            h.cols[k][i] = Complex64::new(0.0, 0.0);
        }
    }
    (0..n).map(|i| (0..n).map(|j| if i <= j { h.cols[j][i] } else { Complex64::new(0.0, 0.0) }).collect()).collect()
}

/// Rotate column pairs until all are numerically orthogonal.
fn one_sided_jacobi(x: &mut [Vec<Complex64>]) -> Result<()> {
    let n = x.len();
    let tol = f64::EPSILON * n.max(1) as f64;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let a = norm_sqr(&x[p]);
                let b = norm_sqr(&x[q]);
                let c: Complex64 = x[p].iter().zip(&x[q]).map(|(u, v)| u.conj() * v).sum();
                let modulus = c.norm();
                if modulus == 0.0 || modulus <= tol * (a * b).sqrt() {
                    continue;
                }
                rotated = true;
                let theta = (b - a) / (2.0 * modulus);
                let t = if theta.is_finite() { theta.signum() / (theta.abs() + theta.hypot(1.0)) } else { 0.0 };
                let cs = 1.0 / t.hypot(1.0);
                let sn = t * cs;
                let phase = (c / modulus).conj();
                let (u00, u01, u10, u11) = (Complex64::new(cs, 0.0), Complex64::new(sn, 0.0), phase * (-sn), phase * cs);
                let (left, right) = x.split_at_mut(q);
                for (xp, xq) in left[p].iter_mut().zip(right[0].iter_mut()) {
                    let (vp, vq) = (*xp, *xq);
                    *xp = vp * u00 + vq * u10;
                    *xq = vp * u01 + vq * u11;
                }
            }
        }
        if !rotated {
            return Ok(());
        }
    }
    Err(Error::NoConvergence { what: "one-sided Jacobi", iterations: MAX_SWEEPS })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::haar_unitary;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn graded_rows_keep_relative_accuracy() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let d = [1.0, 1e-5, 1e-10, 1e-20];
        for _ in 0..10 {
            let u = haar_unitary(&mut rng, 4);
            let rows: Vec<Vec<Complex64>> = (0..4).map(|i| (0..4).map(|j| u.get(i, j) * d[i]).collect()).collect();
            let s = graded_singular_values(&rows).unwrap();
            for (got, want) in s.iter().zip(d) {
                assert!((got - want).abs() <= 1e-12 * want, "{got} vs {want}");
            }
        }
    }

    #[test]
    fn tall_stacks_of_unitaries() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let u = haar_unitary(&mut rng, 3);
        // [U; U] has every singular value √2
        let rows: Vec<Vec<Complex64>> = (0..6).map(|i| (0..3).map(|j| u.get(i % 3, j)).collect()).collect();
        for s in graded_singular_values(&rows).unwrap() {
            assert!((s - 2f64.sqrt()).abs() < 1e-14);
        }
    }

    #[test]
    fn rank_deficient_and_zero() {
        let z = Complex64::new(0.0, 0.0);
        let o = Complex64::new(1.0, 0.0);
        let s = graded_singular_values(&[vec![o, o], vec![o, o], vec![z, z]]).unwrap();
        assert!((s[0] - 2.0).abs() < 1e-14 && s[1].abs() < 1e-15);
        assert_eq!(graded_singular_values(&[vec![z, z], vec![z, z]]).unwrap(), vec![0.0, 0.0]);
    }

    #[test]
    fn shape_errors() {
        let o = Complex64::new(1.0, 0.0);
        assert!(graded_singular_values(&[vec![o, o]]).is_err());
        assert!(graded_singular_values(&[vec![o, o], vec![o]]).is_err());
        assert!(graded_singular_values(&[vec![o, Complex64::new(f64::NAN, 0.0)], vec![o, o]]).is_err());
    }
}
