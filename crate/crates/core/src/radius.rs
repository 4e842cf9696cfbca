//! Numerical radius `ω(T)` and generalized numerical radius `ω_N(T)`.
//!
//! Both are maxima of a rotation profile over the angle `θ`:
//!
//! * `θ ↦ λmax(ℜ(e^{iθ}T))` over `[0, 2π)` gives `ω(T)`;
//! * `θ ↦ N(ℜ(e^{iθ}T))` over `[0, π)` gives `ω_N(T)`.
//!
//! Writing `ℜ(e^{iθ}T) = cos θ·ℜ(T) − sin θ·ℑ(T)`, either profile is the
//! restriction to the unit circle of a sublinear function `φ` on `ℝ²`. Two
//! bounds on an angular bracket `[a, b]` follow and the search uses the smaller:
//!
//! * Lipschitz: the profile has slope at most `L` (`‖T‖` or `N(T)`), so its
//!   maximum on the bracket is at most `(g(a) + g(b))/2 + L·(b − a)/2`;
//! * chord: `u_θ` is a non-negative combination of `u_a` and `u_b`, so
//!   `g(θ) ≤ [sin(b − θ)·g(a) + sin(θ − a)·g(b)] / sin(b − a)`.
//!
//! The chord bound tightens quadratically under bisection, which is what makes
//! tolerances near `1e−10` reachable. Certification is exact up to the
//! eigensolver's own rounding.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_max_eigenvalue, top_eigenpair, ComplexMatrix};
use crate::norms::{evaluate_norm, evaluate_norm_hermitian, operator_norm, NormSpec};
use crate::random::random_unit_vector;

/// Tolerance for library calls.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Tolerance used by suite runs.
pub const SUITE_TOL: f64 = 1e-8;
/// Hard cap on profile evaluations per search.
pub const MAX_EVALUATIONS: usize = 1 << 20;
/// Points in the initial uniform grid.
pub const INITIAL_GRID: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadiusResult {
    pub value: f64,
    /// A maximizing angle in `[0, 2π)`; not unique on plateaus.
    pub theta_star: f64,
    pub certified_error: f64,
    pub evaluations: usize,
}

/// Which function of `ℜ(e^{iθ}T)` the profile measures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Profile {
    MaxEig,
    Norm(NormSpec),
}

/// `θ ↦ ℜ(e^{iθ}T)` with `ℜ(T)` and `ℑ(T)` precomputed.
#[derive(Debug, Clone)]
pub struct RotationFamily {
    re: ComplexMatrix,
    im: ComplexMatrix,
}

impl RotationFamily {
    pub fn new(t: &ComplexMatrix) -> Self {
        Self { re: t.real_part(), im: t.imag_part() }
    }

    /// `cos θ·ℜ(T) − sin θ·ℑ(T)`, Hermitian exactly.
    pub fn at(&self, theta: f64) -> ComplexMatrix {
        let (s, c) = theta.sin_cos();
        self.re.zip_with(&self.im, |a, b| a * c - b * s)
    }

    pub fn profile(&self, theta: f64, profile: Profile) -> Result<f64> {
        let h = self.at(theta);
        match profile {
            Profile::MaxEig => hermitian_max_eigenvalue(&h),
            Profile::Norm(spec) => evaluate_norm_hermitian(&h, spec),
        }
    }
}

pub fn rotation_profile(t: &ComplexMatrix, theta: f64, profile: Profile) -> Result<f64> {
    let h = t.scale(Complex64::from_polar(1.0, theta)).real_part();
    match profile {
        Profile::MaxEig => hermitian_max_eigenvalue(&h),
        Profile::Norm(spec) => evaluate_norm_hermitian(&h, spec),
    }
}

/// `ω(T) = max_θ λmax(ℜ(e^{iθ}T))`, certified to within `tol`.
pub fn numerical_radius(t: &ComplexMatrix, tol: f64) -> Result<RadiusResult> {
    check_tol(tol)?;
    let lipschitz = operator_norm(t)?;
    let family = RotationFamily::new(t);
    certified_max(|theta| family.profile(theta, Profile::MaxEig), 2.0 * PI, lipschitz, tol)
}

/// `ω_N(T) = max_θ N(ℜ(e^{iθ}T))`, certified to within `tol`.
///
/// The profile has period `π` because `N(−X) = N(X)`.
pub fn generalized_numerical_radius(t: &ComplexMatrix, spec: NormSpec, tol: f64) -> Result<RadiusResult> {
    check_tol(tol)?;
    spec.validate(t.n())?;
    let lipschitz = evaluate_norm(t, spec)?;
    let family = RotationFamily::new(t);
    certified_max(|theta| family.profile(theta, Profile::Norm(spec)), PI, lipschitz, tol)
}

/// Lower bound on `ω(T)` from random unit vectors improved by ascent.
///
/// Each start `x` is moved `iters` times to the top eigenvector of
/// `ℜ(e^{iφ}T)` with `φ = −arg⟨Tx, x⟩`; this never decreases `|⟨Tx, x⟩|`.
/// Independent of the angular search above except for the eigensolver.
pub fn numerical_radius_oracle(t: &ComplexMatrix, samples: usize, iters: usize, seed: u64) -> Result<f64> {
    if samples == 0 {
        return Err(Error::InvalidParameter("oracle needs at least one sample".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = t.n();
    let mut best = 0.0f64;
    for _ in 0..samples {
        let mut x = random_unit_vector(&mut rng, n).components().to_vec();
        let mut z = t.quadratic_form(&x)?;
        best = best.max(z.norm());
        for _ in 0..iters {
            let phi = if z.norm() == 0.0 { 0.0 } else { -z.arg() };
            let h = t.scale(Complex64::from_polar(1.0, phi)).real_part();
            x = top_eigenpair(&h)?.1;
            z = t.quadratic_form(&x)?;
            best = best.max(z.norm());
        }
    }
    Ok(best)
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")))
    }
}

#[derive(Debug, Clone, Copy)]
struct Bracket {
    lo: f64,
    hi: f64,
    g_lo: f64,
    g_hi: f64,
    bound: f64,
}

impl Bracket {
    fn new(lo: f64, hi: f64, g_lo: f64, g_hi: f64, lipschitz: f64) -> Self {
        let width = hi - lo;
        let lip = 0.5 * (g_lo + g_hi) + 0.5 * lipschitz * width;
        let bound = lip.min(chord_bound(g_lo, g_hi, width));
        Self { lo, hi, g_lo, g_hi, bound }
    }
}

impl PartialEq for Bracket {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Bracket {}
impl PartialOrd for Bracket {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Bracket {
    // ties broken by position so the search order is deterministic
    fn cmp(&self, other: &Self) -> Ordering {
        self.bound.total_cmp(&other.bound).then_with(|| other.lo.total_cmp(&self.lo))
    }
}

/// Max over `t ∈ [0, width]` of `g_lo·cos t + q·sin t`, the chord bound
/// written relative to the left end. Needs `0 < width < π`.
fn chord_bound(g_lo: f64, g_hi: f64, width: f64) -> f64 {
    let (s, c) = width.sin_cos();
    let q = (g_hi - g_lo * c) / s;
    let peak = q.atan2(g_lo);
    if (0.0..=width).contains(&peak) {
        g_lo.hypot(q)
    } else {
        g_lo.max(g_hi)
    }
}

/// Branch-and-bound maximization of a periodic sublinear profile.
fn certified_max(
    mut eval: impl FnMut(f64) -> Result<f64>,
    period: f64,
    lipschitz: f64,
    tol: f64,
) -> Result<RadiusResult> {
    let m = INITIAL_GRID;
    let step = period / m as f64;
    let mut values = Vec::with_capacity(m);
    for k in 0..m {
        values.push(eval(k as f64 * step)?);
    }
    let mut evaluations = m;

    let mut best = values[0];
    let mut theta_star = 0.0;
    for (k, &v) in values.iter().enumerate() {
        if v > best {
            best = v;
            theta_star = k as f64 * step;
        }
    }

    let mut heap = BinaryHeap::with_capacity(4 * m);
    for k in 0..m {
        let hi_value = values[(k + 1) % m];
        let hi = if k + 1 == m { period } else { (k + 1) as f64 * step };
        heap.push(Bracket::new(k as f64 * step, hi, values[k], hi_value, lipschitz));
    }

    loop {
        let top = *heap.peek().expect("brackets never run out");
        if top.bound - best <= tol {
            return Ok(RadiusResult {
                value: best,
                theta_star: theta_star % (2.0 * PI),
                certified_error: (top.bound - best).max(0.0),
                evaluations,
            });
        }
        if evaluations >= MAX_EVALUATIONS {
            return Err(Error::NoConvergence { what: "certified angular search", iterations: evaluations });
        }
        heap.pop();
        let mid = 0.5 * (top.lo + top.hi);
        let g_mid = eval(mid)?;
        evaluations += 1;
        if g_mid > best {
            best = g_mid;
            theta_star = mid;
        }
        heap.push(Bracket::new(top.lo, mid, top.g_lo, g_mid, lipschitz));
        heap.push(Bracket::new(mid, top.hi, g_mid, top.g_hi, lipschitz));
    }
}
