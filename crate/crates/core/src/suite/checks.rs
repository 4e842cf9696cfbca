//! Evaluation of catalog ids on concrete operands.
//!
//! A [`CheckContext`] owns one set of operands and caches the expensive
//! pieces (`|T|^p` spectra, radii) so that a whole parameter grid can be
//! evaluated against the same operands cheaply.

use std::cell::{OnceCell, RefCell};

use num_complex::Complex64;
use sha2::{Digest, Sha256};

use super::catalog::{Arity, InequalityId};
use super::operands::{hash_complex, hash_matrix, short_hex, Operands, Params, VectorTriple};
use super::report::{InequalityReport, ReportParams, Tolerance};
use crate::convex::ConvexFunctionSpec;
use crate::error::{Error, Result};
use crate::linalg::{
    apply_spectral_function, clamp_psd, inner, vector_norm, weighted_power_sum_eigenvalues, ComplexMatrix,
    GramSpectrum, SpectralFn, UnitVector,
};
use crate::norms::{evaluate_norm_hermitian, NormSpec};
use crate::radius::{generalized_numerical_radius, numerical_radius, DEFAULT_TOL};

/// Largest matrix power any check may form.
pub const MAX_EXPONENT: f64 = 80.0;

fn cached<T>(cell: &OnceCell<T>, init: impl FnOnce() -> Result<T>) -> Result<&T> {
    if let Some(v) = cell.get() {
        return Ok(v);
    }
    let v = init()?;
    Ok(cell.get_or_init(|| v))
}

fn missing(id: InequalityId, slot: &str) -> Error {
    Error::InvalidParameter(format!("{id} needs operand {slot}"))
}

/// Operator norm of a Hermitian matrix.
fn op_norm_h(h: &ComplexMatrix) -> Result<f64> {
    evaluate_norm_hermitian(h, NormSpec::Operator)
}

/// `Re⟨Hx, x⟩` for Hermitian `H`.
fn form(h: &ComplexMatrix, x: &UnitVector) -> Result<f64> {
    Ok(h.quadratic_form(x.components())?.re)
}

/// `N(μ^{q})` for a spectrum `μ` listed in descending order.
fn norm_of_spectrum_power(mu: &[f64], q: f64, norm: NormSpec) -> Result<f64> {
    let s: Vec<f64> = clamp_psd(mu)?.into_iter().map(|l| l.powf(q)).collect();
    norm.from_singular_values(&s)
}

#[derive(Default)]
struct SingleCache {
    abs: OnceCell<GramSpectrum>,
    abs_adj: OnceCell<GramSpectrum>,
    /// `|T||T*|`
    cross: OnceCell<ComplexMatrix>,
    omega: OnceCell<f64>,
    omega_cross: OnceCell<f64>,
    norm: OnceCell<f64>,
    norm_sq: OnceCell<f64>,
    omega_n_cross: RefCell<Vec<(NormSpec, f64)>>,
}

#[derive(Default)]
struct PairCache {
    abs_a: OnceCell<GramSpectrum>,
    abs_b: OnceCell<GramSpectrum>,
    abs_b_adj: OnceCell<GramSpectrum>,
    /// `ω(B*A)`
    omega_bsa: OnceCell<f64>,
    /// `ω(|B|²|A|²)`
    omega_grams: OnceCell<f64>,
}

pub struct CheckContext {
    ops: Operands,
    n: usize,
    tolerance: Tolerance,
    radius_tol: f64,
    seed: Option<u64>,
    single: SingleCache,
    pair: PairCache,
    digests: RefCell<Vec<(Arity, String)>>,
}

impl CheckContext {
    pub fn new(ops: Operands) -> Result<Self> {
        let n = ops.dimension()?.unwrap_or(0);
        Ok(Self {
            ops,
            n,
            tolerance: Tolerance::default(),
            radius_tol: DEFAULT_TOL,
            seed: None,
            single: SingleCache::default(),
            pair: PairCache::default(),
            digests: RefCell::new(Vec::new()),
        })
    }

    pub fn with_tolerance(mut self, tolerance: Tolerance) -> Self {
        self.tolerance = tolerance;
        self
    }

    /// Tolerance handed to every numerical radius computation.
    pub fn with_radius_tol(mut self, tol: f64) -> Self {
        self.radius_tol = tol;
        self
    }

    /// Seed recorded in reports so a run can be replayed.
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn operands(&self) -> &Operands {
        &self.ops
    }

    pub fn evaluate(&self, id: InequalityId, params: &Params) -> Result<InequalityReport> {
        let report_params = self.validate(id, params)?;
        let (lhs, rhs, chain) = match id.arity() {
            Arity::Scalars => self.scalar_check(id, params)?,
            Arity::Vectors => self.vector_check(id)?,
            Arity::Single => self.single_check(id, params)?,
            Arity::SingleVector => self.single_vector_check(id, params)?,
            Arity::HermitianVector => self.jensen_check(id, params)?,
            Arity::Pair => self.pair_check(id, params)?,
            Arity::PairVector => self.pair_vector_check(id, params)?,
            Arity::PsdPair => self.aujla_check(id, params)?,
        };
        Ok(InequalityReport::new(id, lhs, rhs, chain, report_params, self.digest(id)?, self.tolerance))
    }

    fn validate(&self, id: InequalityId, p: &Params) -> Result<ReportParams> {
        let mut out = ReportParams { n: self.n, seed: self.seed, ..ReportParams::default() };
        if id.uses_r() {
            if !(p.r.is_finite() && p.r >= 1.0) {
                return Err(Error::InvalidParameter(format!("{id}: r must be >= 1, got {}", p.r)));
            }
            out.r = Some(p.r);
        }
        if id.uses_alpha() {
            let interior = id.alpha_must_be_interior();
            let ok = if interior { p.alpha > 0.0 && p.alpha < 1.0 } else { (0.0..=1.0).contains(&p.alpha) };
            if !ok {
                let range = if interior { "(0, 1)" } else { "[0, 1]" };
                return Err(Error::InvalidParameter(format!("{id}: alpha must lie in {range}, got {}", p.alpha)));
            }
            out.alpha = Some(p.alpha);
        }
        if id.uses_f() {
            p.f.validate()?;
            out.f = Some(p.f);
        }
        if id.uses_norm() {
            p.norm.validate(self.n)?;
            out.norm = Some(p.norm);
        }
        let exponent = self.largest_exponent(id, p);
        if exponent > MAX_EXPONENT {
            return Err(Error::InvalidParameter(format!(
                "{id}: matrix power {exponent} exceeds the cap {MAX_EXPONENT}"
            )));
        }
        Ok(out)
    }

    fn largest_exponent(&self, id: InequalityId, p: &Params) -> f64 {
        use InequalityId::*;
        let r = if id.uses_r() { p.r } else { 1.0 };
        let alpha_exp = || 2.0 * r / p.alpha.min(1.0 - p.alpha);
        match id {
            ThmMainSq | Cor14Sq | SingleFSq | Eq21 | Prop33Alpha | Prop33AlphaPointwise | WnPropAlpha => alpha_exp(),
            Cor12F | Cor12Pow | Drag2 | Chain44 => 4.0 * r,
            _ => 2.0 * r,
        }
    }

    fn digest(&self, id: InequalityId) -> Result<String> {
        let arity = id.arity();
        if let Some((_, d)) = self.digests.borrow().iter().find(|(a, _)| *a == arity) {
            return Ok(d.clone());
        }
        let mut h = Sha256::new();
        let ops = &self.ops;
        match arity {
            Arity::Scalars => {
                let (a, b) = ops.scalars.ok_or_else(|| missing(id, "scalars"))?;
                h.update(b"scalars");
                h.update(a.to_le_bytes());
                h.update(b.to_le_bytes());
            }
            Arity::Vectors => {
                let v = ops.vectors.as_ref().ok_or_else(|| missing(id, "vectors"))?;
                h.update(b"vectors");
                hash_complex(&mut h, &v.a);
                hash_complex(&mut h, &v.b);
                hash_complex(&mut h, v.e.components());
            }
            Arity::Single | Arity::SingleVector => {
                hash_matrix(&mut h, b"T", self.t(id)?);
            }
            Arity::HermitianVector => {
                hash_matrix(&mut h, b"H", ops.h.as_ref().ok_or_else(|| missing(id, "H"))?);
            }
            Arity::Pair | Arity::PairVector => {
                let (a, b) = self.ab(id)?;
                hash_matrix(&mut h, b"A", a);
                hash_matrix(&mut h, b"B", b);
            }
            Arity::PsdPair => {
                let (a, b) = ops.psd.as_ref().ok_or_else(|| missing(id, "PSD pair"))?;
                hash_matrix(&mut h, b"P", a);
                hash_matrix(&mut h, b"Q", b);
            }
        }
        if matches!(arity, Arity::SingleVector | Arity::HermitianVector | Arity::PairVector) {
            h.update(b"x");
            hash_complex(&mut h, self.x(id)?.components());
        }
        let d = short_hex(h);
        self.digests.borrow_mut().push((arity, d.clone()));
        Ok(d)
    }

    fn t(&self, id: InequalityId) -> Result<&ComplexMatrix> {
        self.ops.t.as_ref().ok_or_else(|| missing(id, "T"))
    }

    fn ab(&self, id: InequalityId) -> Result<(&ComplexMatrix, &ComplexMatrix)> {
        match (&self.ops.a, &self.ops.b) {
            (Some(a), Some(b)) => Ok((a, b)),
            _ => Err(missing(id, "A and B")),
        }
    }

    fn x(&self, id: InequalityId) -> Result<&UnitVector> {
        self.ops.x.as_ref().ok_or_else(|| missing(id, "x"))
    }

    // ----- single-operator quantities -----

    fn abs_t(&self, id: InequalityId) -> Result<&GramSpectrum> {
        cached(&self.single.abs, || GramSpectrum::new(self.t(id)?))
    }

    fn abs_t_adj(&self, id: InequalityId) -> Result<&GramSpectrum> {
        cached(&self.single.abs_adj, || GramSpectrum::new(&self.t(id)?.adjoint()))
    }

    fn cross(&self, id: InequalityId) -> Result<&ComplexMatrix> {
        cached(&self.single.cross, || {
            Ok(self.abs_t(id)?.abs_power(1.0)?.mul_unchecked(&self.abs_t_adj(id)?.abs_power(1.0)?))
        })
    }

    fn omega_t(&self, id: InequalityId) -> Result<f64> {
        cached(&self.single.omega, || Ok(numerical_radius(self.t(id)?, self.radius_tol)?.value)).copied()
    }

    fn omega_cross(&self, id: InequalityId) -> Result<f64> {
        cached(&self.single.omega_cross, || Ok(numerical_radius(self.cross(id)?, self.radius_tol)?.value)).copied()
    }

    fn omega_n_cross(&self, id: InequalityId, norm: NormSpec) -> Result<f64> {
        if let Some(&(_, v)) = self.single.omega_n_cross.borrow().iter().find(|(s, _)| *s == norm) {
            return Ok(v);
        }
        let v = generalized_numerical_radius(self.cross(id)?, norm, self.radius_tol)?.value;
        self.single.omega_n_cross.borrow_mut().push((norm, v));
        Ok(v)
    }

    fn norm_t(&self, id: InequalityId) -> Result<f64> {
        cached(&self.single.norm, || Ok(self.abs_t(id)?.operator_norm())).copied()
    }

    /// `‖T²‖`
    fn norm_t_sq(&self, id: InequalityId) -> Result<f64> {
        cached(&self.single.norm_sq, || {
            let t = self.t(id)?;
            Ok(GramSpectrum::new(&t.mul_unchecked(t))?.operator_norm())
        })
        .copied()
    }

    /// `|T|^{p} + |T*|^{p}`
    fn abs_sum(&self, id: InequalityId, p: f64) -> Result<ComplexMatrix> {
        self.abs_t(id)?.abs_power(p)?.add(&self.abs_t_adj(id)?.abs_power(p)?)
    }

    /// `(1 − α)|T|^{2r/(1−α)} + α|T*|^{2r/α}`
    fn alpha_mix(&self, id: InequalityId, r: f64, alpha: f64) -> Result<ComplexMatrix> {
        let left = self.abs_t(id)?.abs_power(2.0 * r / (1.0 - alpha))?;
        let right = self.abs_t_adj(id)?.abs_power(2.0 * r / alpha)?;
        left.combine(1.0 - alpha, &right, alpha)
    }

    fn single_check(&self, id: InequalityId, p: &Params) -> Result<(f64, f64, Vec<f64>)> {
        use InequalityId::*;
        let (r, alpha, f) = (p.r, p.alpha, &p.f);
        Ok(match id {
            Eq38Lower => (0.5 * self.norm_t(id)?, self.omega_t(id)?, vec![]),
            Eq38Upper => (self.omega_t(id)?, self.norm_t(id)?, vec![]),
            Eq37 => {
                let rhs = 0.5 * (self.norm_t(id)? + self.norm_t_sq(id)?.sqrt());
                (self.omega_t(id)?, rhs, vec![])
            }
            Eq36 => (self.omega_t(id)?.powi(2), 0.5 * op_norm_h(&self.abs_sum(id, 2.0)?)?, vec![]),
            Eq41 => (
                self.omega_t(id)?.powf(2.0 * r),
                0.5 * op_norm_h(&self.abs_sum(id, 2.0 * r)?)?,
                vec![],
            ),
            SingleFSq => {
                let w = self.omega_t(id)?;
                let wx = self.omega_cross(id)?;
                let left = self.abs_t(id)?.convex_of_abs_power(f, 2.0 / (1.0 - alpha))?;
                let right = self.abs_t_adj(id)?.convex_of_abs_power(f, 2.0 / alpha)?;
                let mix = op_norm_h(&left.combine(1.0 - alpha, &right, alpha)?)?;
                (f.try_eval(w.powi(4))?, 0.5 * (f.try_eval(wx * wx)? + mix), vec![])
            }
            SingleF => {
                let w = self.omega_t(id)?;
                let wx = self.omega_cross(id)?;
                let sum = self
                    .abs_t(id)?
                    .convex_of_abs_power(f, 2.0)?
                    .add(&self.abs_t_adj(id)?.convex_of_abs_power(f, 2.0)?)?;
                (f.try_eval(w * w)?, 0.5 * f.try_eval(wx)? + 0.25 * op_norm_h(&sum)?, vec![])
            }
            Eq21 => {
                let lhs = self.omega_t(id)?.powf(4.0 * r);
                let mix = op_norm_h(&self.alpha_mix(id, r, alpha)?)?;
                (lhs, 0.5 * (self.omega_cross(id)?.powf(2.0 * r) + mix), vec![])
            }
            Eq31 => {
                let s = op_norm_h(&self.abs_sum(id, 2.0 * r)?)?;
                let rhs = 0.5 * self.omega_cross(id)?.powf(r) + 0.25 * s;
                (self.omega_t(id)?.powf(2.0 * r), rhs, vec![])
            }
            Prop33Alpha => (
                self.omega_cross(id)?.powf(2.0 * r),
                op_norm_h(&self.alpha_mix(id, r, alpha)?)?,
                vec![],
            ),
            Prop33Mean => (
                self.omega_cross(id)?.powf(r),
                0.5 * op_norm_h(&self.abs_sum(id, 2.0 * r)?)?,
                vec![],
            ),
            Chain35 => {
                let s = op_norm_h(&self.abs_sum(id, 2.0 * r)?)?;
                let chain = vec![
                    self.omega_t(id)?.powf(2.0 * r),
                    0.5 * self.omega_cross(id)?.powf(r) + 0.25 * s,
                    0.5 * s,
                ];
                (chain[0], chain[2], chain)
            }
            KittanehChain => {
                let s = op_norm_h(&self.abs_sum(id, 2.0)?)?;
                let chain = vec![
                    self.omega_t(id)?,
                    0.5 * (2.0 * self.omega_cross(id)? + s).sqrt(),
                    0.5 * (self.norm_t_sq(id)?.sqrt() + self.norm_t(id)?),
                ];
                (chain[0], chain[2], chain)
            }
            Lem43 => {
                let nt = self.norm_t(id)?;
                (op_norm_h(&self.abs_sum(id, 2.0)?)?, self.norm_t_sq(id)? + nt * nt, vec![])
            }
            WnPropAlpha => {
                let mu = weighted_power_sum_eigenvalues(&[
                    (1.0 - alpha, self.abs_t(id)?, 2.0 * r / (1.0 - alpha)),
                    (alpha, self.abs_t_adj(id)?, 2.0 * r / alpha),
                ])?;
                (self.omega_n_cross(id, p.norm)?, norm_of_spectrum_power(&mu, 1.0 / (2.0 * r), p.norm)?, vec![])
            }
            WnPropMean => {
                let mu = weighted_power_sum_eigenvalues(&[
                    (0.5, self.abs_t(id)?, 2.0 * r),
                    (0.5, self.abs_t_adj(id)?, 2.0 * r),
                ])?;
                (self.omega_n_cross(id, p.norm)?, norm_of_spectrum_power(&mu, 1.0 / r, p.norm)?, vec![])
            }
            _ => unreachable!("{id} is not a single-operator id"),
        })
    }

    fn single_vector_check(&self, id: InequalityId, p: &Params) -> Result<(f64, f64, Vec<f64>)> {
        use InequalityId::*;
        let x = self.x(id)?;
        let xs = x.components();
        let (r, alpha) = (p.r, p.alpha);
        Ok(match id {
            Lem16 => {
                let z = self.t(id)?.quadratic_form(xs)?;
                let rhs = self.abs_t(id)?.power_form(1.0, xs)? * self.abs_t_adj(id)?.power_form(1.0, xs)?;
                (z.norm_sqr(), rhs, vec![])
            }
            Prop33AlphaPointwise => {
                let z = self.cross(id)?.quadratic_form(xs)?.norm();
                let rhs = (1.0 - alpha) * self.abs_t(id)?.power_form(2.0 * r / (1.0 - alpha), xs)?
                    + alpha * self.abs_t_adj(id)?.power_form(2.0 * r / alpha, xs)?;
                (z.powf(2.0 * r), rhs, vec![])
            }
            Prop33MeanPointwise => {
                let z = self.cross(id)?.quadratic_form(xs)?.norm();
                let rhs = 0.5
                    * (self.abs_t(id)?.power_form(2.0 * r, xs)? + self.abs_t_adj(id)?.power_form(2.0 * r, xs)?);
                (z.powf(r), rhs, vec![])
            }
            _ => unreachable!("{id} is not a pointwise single-operator id"),
        })
    }

    fn jensen_check(&self, id: InequalityId, p: &Params) -> Result<(f64, f64, Vec<f64>)> {
        let h = self.ops.h.as_ref().ok_or_else(|| missing(id, "H"))?;
        let x = self.x(id)?;
        let f = &p.f;
        let fh = apply_spectral_function(h, SpectralFn::Convex(*f))?;
        let mut mean = form(h, x)?;
        if mean < 0.0 && f.domain_min() >= 0.0 {
            // H passed the PSD clamp inside apply_spectral_function; mean is roundoff
            mean = 0.0;
        }
        Ok((f.try_eval(mean)?, form(&fh, x)?, vec![]))
    }

    // ----- two-operator quantities -----

    fn abs_a(&self, id: InequalityId) -> Result<&GramSpectrum> {
        cached(&self.pair.abs_a, || GramSpectrum::new(self.ab(id)?.0))
    }

    fn abs_b(&self, id: InequalityId) -> Result<&GramSpectrum> {
        cached(&self.pair.abs_b, || GramSpectrum::new(self.ab(id)?.1))
    }

    fn abs_b_adj(&self, id: InequalityId) -> Result<&GramSpectrum> {
        cached(&self.pair.abs_b_adj, || GramSpectrum::new(&self.ab(id)?.1.adjoint()))
    }

    fn omega_bsa(&self, id: InequalityId) -> Result<f64> {
        cached(&self.pair.omega_bsa, || {
            let (a, b) = self.ab(id)?;
            Ok(numerical_radius(&b.adjoint().mul_unchecked(a), self.radius_tol)?.value)
        })
        .copied()
    }

    fn omega_grams(&self, id: InequalityId) -> Result<f64> {
        cached(&self.pair.omega_grams, || {
            let (a, b) = self.ab(id)?;
            let a2 = a.adjoint().mul_unchecked(a);
            let b2 = b.adjoint().mul_unchecked(b);
            Ok(numerical_radius(&b2.mul_unchecked(&a2), self.radius_tol)?.value)
        })
        .copied()
    }

    /// `‖|A|^{p} + |B|^{p}‖`
    fn pair_abs_sum_norm(&self, id: InequalityId, p: f64) -> Result<f64> {
        op_norm_h(&self.abs_a(id)?.abs_power(p)?.add(&self.abs_b(id)?.abs_power(p)?)?)
    }

    fn pair_check(&self, id: InequalityId, p: &Params) -> Result<(f64, f64, Vec<f64>)> {
        use InequalityId::*;
        let r = p.r;
        Ok(match id {
            Cor12F => {
                let f = &p.f;
                let sum = self
                    .abs_a(id)?
                    .convex_of_abs_power(f, 4.0)?
                    .add(&self.abs_b(id)?.convex_of_abs_power(f, 4.0)?)?;
                let w = self.omega_bsa(id)?;
                (f.try_eval(w * w)?, 0.5 * f.try_eval(self.omega_grams(id)?)? + 0.25 * op_norm_h(&sum)?, vec![])
            }
            Cor12Pow => {
                let q = self.pair_abs_sum_norm(id, 4.0 * r)?;
                let rhs = 0.5 * self.omega_grams(id)?.powf(r) + 0.25 * q;
                (self.omega_bsa(id)?.powf(2.0 * r), rhs, vec![])
            }
            Drag2 => (self.omega_bsa(id)?.powf(2.0 * r), 0.5 * self.pair_abs_sum_norm(id, 4.0 * r)?, vec![]),
            Chain44 => {
                let q = self.pair_abs_sum_norm(id, 4.0 * r)?;
                let chain = vec![
                    self.omega_bsa(id)?.powf(2.0 * r),
                    0.5 * self.omega_grams(id)?.powf(r) + 0.25 * q,
                    0.5 * q,
                ];
                (chain[0], chain[2], chain)
            }
            _ => unreachable!("{id} is not a two-operator id"),
        })
    }

    fn pair_vector_check(&self, id: InequalityId, p: &Params) -> Result<(f64, f64, Vec<f64>)> {
        use InequalityId::*;
        let (a, b) = self.ab(id)?;
        let xs = self.x(id)?.components();
        let ax = a.mul_vec(xs)?;
        let product = (inner(&ax, xs) * b.quadratic_form(xs)?).norm();
        let bax = inner(&b.mul_vec(&ax)?, xs).norm();
        let (r, alpha, f) = (p.r, p.alpha, &p.f);
        Ok(match id {
            Ineq30 => {
                let rhs = 0.5 * (bax + vector_norm(&ax) * vector_norm(&b.adjoint().mul_vec(xs)?));
                (product, rhs, vec![])
            }
            ThmMainSq => {
                let mix = alpha * self.abs_a(id)?.convex_form(f, 2.0 / alpha, xs)?
                    + (1.0 - alpha) * self.abs_b_adj(id)?.convex_form(f, 2.0 / (1.0 - alpha), xs)?;
                (f.try_eval(product * product)?, 0.5 * (f.try_eval(bax * bax)? + mix), vec![])
            }
            ThmMain => {
                let sum = self.abs_a(id)?.convex_form(f, 2.0, xs)? + self.abs_b_adj(id)?.convex_form(f, 2.0, xs)?;
                (f.try_eval(product)?, 0.5 * f.try_eval(bax)? + 0.25 * sum, vec![])
            }
            Cor14Sq => {
                let mix = alpha * self.abs_a(id)?.power_form(2.0 * r / alpha, xs)?
                    + (1.0 - alpha) * self.abs_b_adj(id)?.power_form(2.0 * r / (1.0 - alpha), xs)?;
                (product.powf(2.0 * r), 0.5 * (bax.powf(2.0 * r) + mix), vec![])
            }
            Cor14 => {
                let sum =
                    self.abs_a(id)?.power_form(2.0 * r, xs)? + self.abs_b_adj(id)?.power_form(2.0 * r, xs)?;
                (product.powf(r), 0.5 * bax.powf(r) + 0.25 * sum, vec![])
            }
            _ => unreachable!("{id} is not a pointwise two-operator id"),
        })
    }

    fn aujla_check(&self, id: InequalityId, p: &Params) -> Result<(f64, f64, Vec<f64>)> {
        let (a, b) = self.ops.psd.as_ref().ok_or_else(|| missing(id, "PSD pair"))?;
        let f = SpectralFn::Convex(p.f);
        let mean = a.combine(0.5, b, 0.5)?;
        let lhs = op_norm_h(&apply_spectral_function(&mean, f)?)?;
        let rhs = op_norm_h(&apply_spectral_function(a, f)?.combine(0.5, &apply_spectral_function(b, f)?, 0.5)?)?;
        Ok((lhs, rhs, vec![]))
    }

    // ----- scalar and vector lemmas -----

    fn scalar_check(&self, id: InequalityId, p: &Params) -> Result<(f64, f64, Vec<f64>)> {
        let (a, b) = self.ops.scalars.ok_or_else(|| missing(id, "scalars"))?;
        if !(a >= 0.0 && b >= 0.0 && a.is_finite() && b.is_finite()) {
            return Err(Error::InvalidParameter(format!("{id}: scalars must be finite and non-negative")));
        }
        let (alpha, r) = (p.alpha, p.r);
        let chain = vec![
            a.powf(alpha) * b.powf(1.0 - alpha),
            alpha * a + (1.0 - alpha) * b,
            (alpha * a.powf(r) + (1.0 - alpha) * b.powf(r)).powf(1.0 / r),
        ];
        Ok((chain[0], chain[2], chain))
    }

    fn vector_check(&self, id: InequalityId) -> Result<(f64, f64, Vec<f64>)> {
        let VectorTriple { a, b, e } = self.ops.vectors.as_ref().ok_or_else(|| missing(id, "vectors"))?;
        let e = e.components();
        let ae = inner(a, e);
        let eb = inner(e, b);
        let ab = inner(a, b);
        let projected = ae * eb;
        let norms = vector_norm(a) * vector_norm(b);
        let chain = vec![ab.norm(), projected.norm() + (ab - projected).norm(), norms];
        Ok((projected.norm(), 0.5 * (ab.norm() + norms), chain))
    }
}

/// Evaluate one id on fresh operands with library-default tolerances.
pub fn evaluate_check(id: InequalityId, operands: &Operands, params: &Params) -> Result<InequalityReport> {
    CheckContext::new(operands.clone())?.evaluate(id, params)
}

/// Both statements of the main inner-product theorem for `A, B`, unit `x`,
/// convex `f` and weight `α ∈ (0, 1)`: the squared form first.
pub fn check_theorem_main(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    x: &UnitVector,
    f: ConvexFunctionSpec,
    alpha: f64,
) -> Result<(InequalityReport, InequalityReport)> {
    let ctx = CheckContext::new(Operands::pair(a.clone(), b.clone()).with_x(x.clone()))?;
    let params = Params::default().with_f(f).with_alpha(alpha);
    Ok((ctx.evaluate(InequalityId::ThmMainSq, &params)?, ctx.evaluate(InequalityId::ThmMain, &params)?))
}

pub fn check_scalar_lemma22(a: f64, b: f64, alpha: f64, r: f64) -> Result<InequalityReport> {
    evaluate_check(InequalityId::Lem22, &Operands::scalars(a, b), &Params::default().with_alpha(alpha).with_r(r))
}

pub fn check_jensen_lemma23(h: &ComplexMatrix, x: &UnitVector, f: ConvexFunctionSpec) -> Result<InequalityReport> {
    evaluate_check(InequalityId::Lem23, &Operands::hermitian(h.clone()).with_x(x.clone()), &Params::default().with_f(f))
}

pub fn check_mixed_schwarz(t: &ComplexMatrix, x: &UnitVector) -> Result<InequalityReport> {
    evaluate_check(InequalityId::Lem16, &Operands::single(t.clone()).with_x(x.clone()), &Params::default())
}

pub fn check_lemma43(t: &ComplexMatrix) -> Result<InequalityReport> {
    evaluate_check(InequalityId::Lem43, &Operands::single(t.clone()), &Params::default())
}

pub fn check_lemma_aujla(a: &ComplexMatrix, b: &ComplexMatrix, f: ConvexFunctionSpec) -> Result<InequalityReport> {
    evaluate_check(InequalityId::LemAujla, &Operands::psd_pair(a.clone(), b.clone()), &Params::default().with_f(f))
}

pub fn check_refined_cauchy_schwarz(a: &[Complex64], b: &[Complex64], e: &UnitVector) -> Result<InequalityReport> {
    evaluate_check(InequalityId::RefinedCs, &Operands::vectors(a.to_vec(), b.to_vec(), e.clone()), &Params::default())
}

/// Both generalized-radius statements for `T`, norm `N`, `r ≥ 1` and
/// `α ∈ (0, 1)`: the weighted form first, then the mean form.
pub fn check_wn_propositions(
    t: &ComplexMatrix,
    norm: NormSpec,
    r: f64,
    alpha: f64,
) -> Result<(InequalityReport, InequalityReport)> {
    let ctx = CheckContext::new(Operands::single(t.clone()))?;
    let params = Params::default().with_norm(norm).with_r(r).with_alpha(alpha);
    Ok((ctx.evaluate(InequalityId::WnPropAlpha, &params)?, ctx.evaluate(InequalityId::WnPropMean, &params)?))
}
