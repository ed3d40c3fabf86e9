//! Growth, derivative, coefficient and monotonicity estimates for functions
//! bounded by one on the unit polydisc, each paired with a checker that
//! tests a concrete series against the estimate.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::mvseries::{MultiIndex, SeriesError, TruncatedSeries};

/// Slack allowed above `1 − |a_0|²` before a coefficient is reported.
pub const COEFFICIENT_SLACK: f64 = 1e-12;

/// Default seed for sampled checks.
pub const DEFAULT_SEED: u64 = 0x5eed_b0b7;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundsError {
    #[error("{name} = {value} is outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },
    #[error("coefficient at {alpha} (degree {degree}) is nonzero below the zero multiplicity {k}")]
    LowOrderTerm { alpha: MultiIndex, degree: u32, k: u32 },
    #[error("{0}")]
    Series(#[from] SeriesError),
}

pub type Result<T> = std::result::Result<T, BoundsError>;

fn require(name: &'static str, value: f64, range: &'static str, ok: bool) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(BoundsError::OutOfRange { name, value, range })
    }
}

/// `|f(0)|` together with `||z||_∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthBound {
    a0: f64,
    sup_norm_z: f64,
}

impl GrowthBound {
    pub fn new(a0: f64, sup_norm_z: f64) -> Result<Self> {
        require("|f(0)|", a0, "[0, 1]", (0.0..=1.0).contains(&a0))?;
        require("||z||_inf", sup_norm_z, "[0, 1)", (0.0..1.0).contains(&sup_norm_z))?;
        Ok(GrowthBound { a0, sup_norm_z })
    }

    /// `(a0 + s)/(1 + a0 s)`.
    pub fn value(&self) -> f64 {
        let (a0, s) = (self.a0, self.sup_norm_z);
        (a0 + s) / (1.0 + a0 * s)
    }
}

/// Upper bound on `|f(z)|` from `|f(0)| = a0` and `||z||_∞ = s`.
pub fn schwarz_pick_bound(a0: f64, s: f64) -> Result<f64> {
    Ok(GrowthBound::new(a0, s)?.value())
}

/// Bound on `|∂^α f(z)|` given `|f(z)| = a_fz` and `||z||_∞ = s`:
/// `α! (1 − a_fz²) (1 + s)^{|α| − N} / (1 − s²)^{|α|}` with `N` the number of
/// nonzero entries of `α`.
pub fn derivative_bound(a_fz: f64, s: f64, alpha: &MultiIndex) -> Result<f64> {
    require("|f(z)|", a_fz, "[0, 1]", (0.0..=1.0).contains(&a_fz))?;
    require("||z||_inf", s, "[0, 1)", (0.0..1.0).contains(&s))?;
    let order = alpha.degree() as i32;
    let spread = alpha.support_size() as i32;
    let factorial = alpha
        .factorial()
        .map(|f| f as f64)
        .unwrap_or_else(|| alpha.exponents().iter().map(|&e| float_factorial(e)).product());
    Ok(factorial * (1.0 - a_fz * a_fz) * (1.0 + s).powi(order - spread) / (1.0 - s * s).powi(order))
}

fn float_factorial(e: u32) -> f64 {
    (1..=e).map(f64::from).product()
}

/// First-order directional consequence: `|∂_u f(z)| ≤ (1 − |f(z)|²)/(1 − s²)`
/// for any `u` with `Σ|u_j| = 1`.
pub fn directional_derivative_bound(a_fz: f64, s: f64) -> Result<f64> {
    derivative_bound(a_fz, s, &MultiIndex::new(vec![1]))
}

/// Coefficients exceeding `1 − |a_0|²`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoefficientReport {
    pub bound: f64,
    pub violations: Vec<MultiIndex>,
}

impl CoefficientReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Lists every nonconstant `α` with `|a_α| > 1 − |a_0|² + COEFFICIENT_SLACK`.
///
/// Only meaningful for series of functions bounded by one on the whole unit
/// polydisc.
pub fn coefficient_bound_check(series: &TruncatedSeries) -> CoefficientReport {
    let a0 = series.constant_term().norm();
    let bound = 1.0 - a0 * a0;
    let violations = series
        .terms()
        .filter(|(alpha, c)| alpha.degree() > 0 && c.norm() > bound + COEFFICIENT_SLACK)
        .map(|(alpha, _)| alpha.clone())
        .collect();
    CoefficientReport { bound, violations }
}

/// Largest sampled `|f(z)| / ||z||_∞^k` over `samples` points drawn uniformly
/// from the open unit polydisc.
///
/// Fails if `f` has a nonzero coefficient of degree below `k`.
pub fn zero_multiplicity_bound_check(
    series: &TruncatedSeries,
    k: u32,
    samples: usize,
    seed: u64,
) -> Result<f64> {
    require("k", f64::from(k), "k >= 1", k >= 1)?;
    if let Some((alpha, _)) = series
        .terms()
        .find(|(alpha, c)| alpha.degree() < k && c.norm() != 0.0)
    {
        return Err(BoundsError::LowOrderTerm {
            alpha: alpha.clone(),
            degree: alpha.degree(),
            k,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = series.n_vars();
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let z: Vec<Complex64> = (0..n)
            .map(|_| {
                let radius = rng.gen::<f64>().sqrt() * (1.0 - f64::EPSILON);
                let angle = rng.gen::<f64>() * std::f64::consts::TAU;
                Complex64::from_polar(radius, angle)
            })
            .collect();
        let sup = z.iter().map(|w| w.norm()).fold(0.0, f64::max);
        if sup == 0.0 {
            continue;
        }
        let ratio = series.eval(&z)?.norm() / sup.powi(k as i32);
        worst = worst.max(ratio);
    }
    Ok(worst)
}

/// Which of the two auxiliary functions to test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuxMode {
    /// `φ(x) = x + A(1 − x²)`, valid for `0 ≤ A ≤ 1/2`.
    Phi,
    /// `ψ(x) = x² + A(1 − x²)`, valid for `0 ≤ A ≤ 1`.
    Psi,
}

impl AuxMode {
    pub fn max_coefficient(self) -> f64 {
        match self {
            AuxMode::Phi => 0.5,
            AuxMode::Psi => 1.0,
        }
    }

    pub fn eval(self, coefficient: f64, x: f64) -> f64 {
        let lead = match self {
            AuxMode::Phi => x,
            AuxMode::Psi => x * x,
        };
        lead + coefficient * (1.0 - x * x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhiPsiParams {
    pub coefficient: f64,
    pub x: f64,
    pub x0: f64,
}

impl PhiPsiParams {
    pub fn new(coefficient: f64, x: f64, x0: f64) -> Result<Self> {
        require("A", coefficient, "A >= 0", coefficient >= 0.0)?;
        require("x", x, "[0, 1]", (0.0..=1.0).contains(&x))?;
        require("x0", x0, "[x, 1]", (x..=1.0).contains(&x0))?;
        Ok(PhiPsiParams { coefficient, x, x0 })
    }
}

/// Whether `φ(x) ≤ φ(x0)` (or the `ψ` analogue) holds, up to a few ulps of
/// rounding. Coefficients above the mode's cap are a caller error.
pub fn phi_psi_monotone(params: PhiPsiParams, mode: AuxMode) -> Result<bool> {
    let cap = mode.max_coefficient();
    require(
        "A",
        params.coefficient,
        match mode {
            AuxMode::Phi => "[0, 1/2]",
            AuxMode::Psi => "[0, 1]",
        },
        params.coefficient <= cap,
    )?;
    let lhs = mode.eval(params.coefficient, params.x);
    let rhs = mode.eval(params.coefficient, params.x0);
    Ok(lhs <= rhs + 4.0 * f64::EPSILON)
}

/// Exhaustive check on the admissible `(A, x, x0)` grid at spacing `1/steps`.
/// Returns the failing triples.
pub fn phi_psi_grid_failures(mode: AuxMode, steps: u32) -> Vec<PhiPsiParams> {
    let h = 1.0 / f64::from(steps);
    let a_steps = (mode.max_coefficient() * f64::from(steps)).round() as u32;
    let mut failures = Vec::new();
    for ia in 0..=a_steps {
        let coefficient = f64::from(ia) * h;
        for ix in 0..=steps {
            for ix0 in ix..=steps {
                let params = PhiPsiParams::new(coefficient, f64::from(ix) * h, f64::from(ix0) * h)
                    .expect("grid points are admissible");
                if !phi_psi_monotone(params, mode).expect("grid coefficients are within the cap") {
                    failures.push(params);
                }
            }
        }
    }
    failures
}
