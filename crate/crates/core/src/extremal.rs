//! The extremal family `f_a(z) = (a − Σz_j)/(1 − aΣz_j)` and the three
//! Bohr-type functionals, in majorant form (the upper-bound chain over
//! `a0 = |f(0)|`) and in extremal form (the exact value on `f_a` at the
//! alignment point `ω(z) = (−r^m, …, −r^m)`).
//!
//! Both directions of a radius claim are checked here: the extremal value
//! stays at or below one up to the radius, and some `a` pushes it above one
//! just beyond.

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::mvseries::{Direction, MultiIndex, SchwarzPowerMap, SeriesError, TruncatedSeries};
use crate::radii::{rho_to_radius, RadiusError, RadiusProblem, DERIV_RHO_MAX, SQ_DERIV_RHO_MAX};

/// Slack above one tolerated below the radius.
pub const SAFETY_TOLERANCE: f64 = 1e-12;

/// Uniform points in the default witness grid.
pub const WITNESS_GRID: usize = 512;

/// Largest `k` in the tail grid `1 − 2^(−k)`.
pub const TAIL_DEPTH: i32 = 30;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExtremalError {
    #[error("{name} = {value} is outside {range}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        range: &'static str,
    },
    #[error("no witness at rho = {rho}: best value {best_value} at a = {best_a}")]
    NoWitness {
        rho: f64,
        best_a: f64,
        best_value: f64,
    },
    #[error("threshold not bracketed on [{lo}, {hi}] (sup values {sup_lo}, {sup_hi})")]
    NotBracketed {
        lo: f64,
        hi: f64,
        sup_lo: f64,
        sup_hi: f64,
    },
    #[error(transparent)]
    Radius(#[from] RadiusError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

pub type Result<T> = std::result::Result<T, ExtremalError>;

fn invalid(name: &'static str, value: f64, range: &'static str) -> ExtremalError {
    ExtremalError::InvalidParameter { name, value, range }
}

/// Which functional, with its weight.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "theorem", rename_all = "snake_case")]
pub enum FunctionalKind {
    /// `t|f(ω)| + (1−t) Σ_{k≥0} Σ_{|α|=k} |a_α||ω|^α`
    Convex { t: f64 },
    /// `|f(ω)| + |∂_u f(ω)| ||ω|| + λ Σ_{k≥2} …`
    Deriv { lambda: f64 },
    /// `|f(ω)|² + |∂_u f(ω)| ||ω|| + λ Σ_{k≥2} …`
    SqDeriv { lambda: f64 },
}

impl FunctionalKind {
    pub fn of(problem: &RadiusProblem) -> Self {
        match *problem {
            RadiusProblem::Convex { t, .. } => FunctionalKind::Convex { t },
            RadiusProblem::Deriv { lambda, .. } => FunctionalKind::Deriv { lambda },
            RadiusProblem::SqDeriv { lambda, .. } => FunctionalKind::SqDeriv { lambda },
        }
    }

    /// Largest `ρ` for which the majorant chain is valid.
    pub fn majorant_rho_max(&self) -> f64 {
        match self {
            FunctionalKind::Convex { .. } => 1.0,
            FunctionalKind::Deriv { .. } => DERIV_RHO_MAX,
            FunctionalKind::SqDeriv { .. } => SQ_DERIV_RHO_MAX,
        }
    }

    /// Lowest degree in the coefficient sum.
    fn tail_start(&self) -> u32 {
        match self {
            FunctionalKind::Convex { .. } => 0,
            _ => 2,
        }
    }
}

/// Parameters of `f_a` in `n` variables, composed with `z ↦ z^m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtremalParams {
    pub a: f64,
    pub n: u32,
    pub m: u32,
}

impl ExtremalParams {
    pub fn new(a: f64, n: u32, m: u32) -> Result<Self> {
        if !(0.0..1.0).contains(&a) {
            return Err(invalid("a", a, "[0, 1)"));
        }
        if n == 0 {
            return Err(invalid("n", 0.0, "n >= 1"));
        }
        if m == 0 {
            return Err(invalid("m", 0.0, "m >= 1"));
        }
        Ok(ExtremalParams { a, n, m })
    }
}

/// A parameter `a` at which the functional exceeds one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Witness {
    pub kind: FunctionalKind,
    pub a: f64,
    pub value: f64,
    pub rho: f64,
}

/// Taylor series of `f_a` in `n` variables up to degree `max_degree`:
/// constant term `a`, and `−(1−a²) a^(k−1) k!/α!` at each `|α| = k ≥ 1`.
pub fn extremal_series(params: &ExtremalParams, max_degree: u32) -> Result<TruncatedSeries> {
    if max_degree == 0 {
        return Err(invalid("max_degree", 0.0, "max_degree >= 1"));
    }
    let n = params.n as usize;
    let a = params.a;
    let mut terms = vec![(MultiIndex::zero(n), Complex64::new(a, 0.0))];
    for k in 1..=max_degree {
        let weight = -(1.0 - a * a) * a.powi(k as i32 - 1);
        if weight == 0.0 && k > 1 {
            break;
        }
        for alpha in MultiIndex::all_of_degree(n, k) {
            let c = weight * alpha.multinomial();
            terms.push((alpha, Complex64::new(c, 0.0)));
        }
    }
    Ok(TruncatedSeries::from_terms(n, max_degree, terms)?)
}

/// `(ρ + a)/(1 + aρ)`.
fn mobius_modulus(a: f64, rho: f64) -> f64 {
    (rho + a) / (1.0 + a * rho)
}

/// Upper-bound expression of the proof chain at `|a_0| = a0`.
pub fn majorant_functional(kind: FunctionalKind, a0: f64, rho: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&a0) {
        return Err(invalid("a0", a0, "[0, 1]"));
    }
    let cap = kind.majorant_rho_max();
    let in_range = match kind {
        FunctionalKind::Convex { .. } => (0.0..cap).contains(&rho),
        _ => (0.0..=cap).contains(&rho),
    };
    if !in_range {
        return Err(invalid("rho", rho, "the functional's admissible range"));
    }
    let x0 = mobius_modulus(a0, rho);
    let deficit = 1.0 - a0 * a0;
    Ok(match kind {
        FunctionalKind::Convex { t } => {
            t * x0 + (1.0 - t) * (a0 + deficit * rho / (1.0 - rho))
        }
        FunctionalKind::Deriv { lambda } => {
            x0 + rho * deficit / (1.0 + a0 * rho).powi(2) + lambda * deficit * rho * rho / (1.0 - rho)
        }
        FunctionalKind::SqDeriv { lambda } => {
            x0 * x0
                + rho * deficit / (1.0 + a0 * rho).powi(2)
                + lambda * deficit * rho * rho / (1.0 - rho)
        }
    })
}

/// Exact value of the functional on `f_a` at the alignment point.
pub fn extremal_functional(kind: FunctionalKind, a: f64, rho: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&a) {
        return Err(invalid("a", a, "[0, 1)"));
    }
    if rho < 0.0 || a * rho >= 1.0 || rho.is_nan() {
        return Err(invalid("rho", rho, "rho >= 0 with a*rho < 1"));
    }
    let x = mobius_modulus(a, rho);
    let deficit = 1.0 - a * a;
    let slope_term = deficit * rho / (1.0 + a * rho).powi(2);
    Ok(match kind {
        FunctionalKind::Convex { t } => {
            t * x + (1.0 - t) * (a + deficit * rho / (1.0 - a * rho))
        }
        FunctionalKind::Deriv { lambda } => {
            x + slope_term + lambda * deficit * a * rho * rho / (1.0 - a * rho)
        }
        FunctionalKind::SqDeriv { lambda } => {
            x * x + slope_term + lambda * deficit * a * rho * rho / (1.0 - a * rho)
        }
    })
}

/// How the derivative term is weighted in [`series_functional`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivativeWeight {
    /// `Σ_j |ω_j(z)|`, which is `ρ` at the alignment point; this is the
    /// weighting the closed forms carry.
    L1,
    /// `||ω(z)||_∞ = r^m`.
    SupNorm,
}

/// Evaluates the functional on the truncated series of `f_a` at a point `z`
/// with `z_j^m = −r^m`, using [`compose_power_map`], the directional
/// derivative along `(1/n, …, 1/n)` and [`bohr_majorant_sum`].
///
/// [`compose_power_map`]: TruncatedSeries::compose_power_map
/// [`bohr_majorant_sum`]: TruncatedSeries::bohr_majorant_sum
pub fn series_functional(
    kind: FunctionalKind,
    params: &ExtremalParams,
    rho: f64,
    max_degree: u32,
    weight: DerivativeWeight,
) -> Result<f64> {
    let (n, m) = (params.n as usize, params.m);
    let r = rho_to_radius(rho, params.n, m);
    let z = vec![Complex64::from_polar(r, std::f64::consts::PI / f64::from(m)); n];
    let omega = SchwarzPowerMap::new(n, m);
    let cap = max_degree * m;

    let f = extremal_series(params, max_degree)?;
    let value = f.compose_power_map(&omega, cap)?.eval(&z)?.norm();
    let moduli: Vec<f64> = omega.apply(&z)?.iter().map(|w| w.norm()).collect();
    let tail = f.bohr_majorant_sum(&moduli, kind.tail_start())?;

    let slope = || -> Result<f64> {
        let df = f.directional_derivative(&Direction::uniform(n))?;
        let at = df.compose_power_map(&omega, cap)?.eval(&z)?.norm();
        let w = match weight {
            DerivativeWeight::L1 => moduli.iter().sum::<f64>(),
            DerivativeWeight::SupNorm => moduli.iter().copied().fold(0.0, f64::max),
        };
        Ok(at * w)
    };

    Ok(match kind {
        FunctionalKind::Convex { t } => t * value + (1.0 - t) * tail,
        FunctionalKind::Deriv { lambda } => value + slope()? + lambda * tail,
        FunctionalKind::SqDeriv { lambda } => value * value + slope()? + lambda * tail,
    })
}

/// `points` uniform values `i/points` on `[0, 1)` merged with the tail
/// `1 − 2^(−k)`, `k ≤ 30`, sorted and deduplicated.
pub fn a_grid(points: usize) -> Vec<f64> {
    let mut grid: Vec<f64> = (0..points).map(|i| i as f64 / points as f64).collect();
    grid.extend((1..=TAIL_DEPTH).map(|k| 1.0 - 2f64.powi(-k)));
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    grid
}

/// Iteration cap for [`golden_section_max`]; the interval shrinks by about
/// 0.618 per step, so this is far below any reachable float spacing.
const GOLDEN_MAX_STEPS: usize = 200;

/// Golden-section search for a maximum of a unimodal `f` on `[lo, hi]`,
/// stopping once the interval is no wider than `tol`.
pub fn golden_section_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..GOLDEN_MAX_STEPS {
        if hi - lo <= tol {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Maximum of the extremal functional over the a-grid, with its argmax.
fn grid_sup(kind: FunctionalKind, rho: f64, grid: &[f64]) -> (usize, f64) {
    grid.iter()
        .enumerate()
        .filter_map(|(i, &a)| extremal_functional(kind, a, rho).ok().map(|v| (i, v)))
        .fold((0, f64::NEG_INFINITY), |best, cur| if cur.1 > best.1 { cur } else { best })
}

/// Searches `a ∈ [0, 1)` for a value above one at `ρ = (1 + delta)·n·R^m`:
/// a coarse grid with a log-spaced tail toward `a = 1`, refined by
/// golden-section search around the best grid point.
pub fn sharpness_witness(problem: &RadiusProblem, delta: f64) -> Result<Witness> {
    if delta.is_nan() || delta <= 0.0 {
        return Err(invalid("delta", delta, "delta > 0"));
    }
    let radius = problem.solve()?;
    let rho = (1.0 + delta) * radius.rho_root;
    if rho >= 1.0 {
        return Err(invalid("rho", rho, "(1 + delta) * rho_root < 1"));
    }
    witness_at(FunctionalKind::of(problem), rho)
}

/// Witness search at a fixed `ρ`.
pub fn witness_at(kind: FunctionalKind, rho: f64) -> Result<Witness> {
    let grid = a_grid(WITNESS_GRID);
    let (i, grid_best) = grid_sup(kind, rho, &grid);
    let lo = grid[i.saturating_sub(1)];
    let hi = grid[(i + 1).min(grid.len() - 1)];
    let objective = |a: f64| extremal_functional(kind, a, rho).unwrap_or(f64::NEG_INFINITY);
    let (refined_a, refined) = golden_section_max(objective, lo, hi, 1e-15);
    let (a, value) = if refined > grid_best {
        (refined_a, refined)
    } else {
        (grid[i], grid_best)
    };
    if value > 1.0 {
        Ok(Witness { kind, a, value, rho })
    } else {
        Err(ExtremalError::NoWitness { rho, best_a: a, best_value: value })
    }
}

/// Threshold in `ρ` where the sup of the extremal functional over an a-grid
/// crosses one, located by bisection to width `tol`.
pub fn empirical_rho(kind: FunctionalKind, a_points: usize, tol: f64) -> Result<f64> {
    if a_points < 100 {
        return Err(invalid("a_grid", a_points as f64, "a_grid >= 100"));
    }
    if tol.is_nan() || tol < 1e-10 {
        return Err(invalid("tol", tol, "tol >= 1e-10"));
    }
    let grid = a_grid(a_points);
    let sup = |rho: f64| grid_sup(kind, rho, &grid).1;
    let (mut lo, mut hi) = match kind {
        FunctionalKind::Convex { .. } => (0.0, 1.0 - 1e-9),
        _ => (0.0, kind.majorant_rho_max()),
    };
    let (sup_lo, sup_hi) = (sup(lo), sup(hi));
    if sup_lo > 1.0 || sup_hi <= 1.0 {
        return Err(ExtremalError::NotBracketed { lo, hi, sup_lo, sup_hi });
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if sup(mid) > 1.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// [`empirical_rho`] mapped to `r = (ρ/n)^(1/m)`; an independent estimate of
/// the theorem radius.
pub fn empirical_radius(problem: &RadiusProblem, a_points: usize, tol: f64) -> Result<f64> {
    let rho = empirical_rho(FunctionalKind::of(problem), a_points, tol)?;
    Ok(rho_to_radius(rho, problem.n(), problem.m()))
}

/// One-variable functionals `|f(z)|^p + Σ_{k≥1} |a_k| r^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RogosinskiVariant {
    /// `p = 1`
    Modulus,
    /// `p = 2`
    SquaredModulus,
}

/// Value on the univariate `f_a` at `z = −r`.
pub fn rogosinski_functional(variant: RogosinskiVariant, a: f64, r: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&a) {
        return Err(invalid("a", a, "[0, 1)"));
    }
    if !(0.0..1.0).contains(&r) {
        return Err(invalid("r", r, "[0, 1)"));
    }
    let x = mobius_modulus(a, r);
    let lead = match variant {
        RogosinskiVariant::Modulus => x,
        RogosinskiVariant::SquaredModulus => x * x,
    };
    Ok(lead + (1.0 - a * a) * r / (1.0 - a * r))
}

/// Bisection for the radius at which the sup over the a-grid of
/// [`rogosinski_functional`] crosses one.
pub fn rogosinski_threshold(variant: RogosinskiVariant, a_points: usize, tol: f64) -> Result<f64> {
    let grid = a_grid(a_points);
    let sup = |r: f64| {
        grid.iter()
            .map(|&a| rogosinski_functional(variant, a, r).unwrap_or(f64::NEG_INFINITY))
            .fold(f64::NEG_INFINITY, f64::max)
    };
    let (mut lo, mut hi) = (0.0, 1.0 - 1e-9);
    let (sup_lo, sup_hi) = (sup(lo), sup(hi));
    if sup_lo > 1.0 || sup_hi <= 1.0 {
        return Err(ExtremalError::NotBracketed { lo, hi, sup_lo, sup_hi });
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if sup(mid) > 1.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// A grid point where a check failed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Violation {
    pub check: &'static str,
    pub a: f64,
    pub rho: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub rho_limit: f64,
    pub max_value: f64,
    pub max_at: (f64, f64),
    pub points: usize,
    pub violations: Vec<Violation>,
}

impl SweepReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Below-radius safety and majorant dominance on an `a × ρ` grid.
///
/// `ρ` runs over `rho_points` equally spaced values in
/// `[0, (1 + inflation)·n·R^m]`; `a` over the uniform grid `i/a_points`
/// plus the tail toward one. A point is a safety violation when the
/// extremal value exceeds `1 + 1e-12`, and a dominance violation when the
/// majorant at `a0 = a` falls below it by more than `1e-12`.
pub fn below_radius_sweep(
    problem: &RadiusProblem,
    a_points: usize,
    rho_points: usize,
    inflation: f64,
) -> Result<SweepReport> {
    if a_points < 2 || rho_points < 2 {
        return Err(invalid("grid", a_points.min(rho_points) as f64, "grid sizes >= 2"));
    }
    let kind = FunctionalKind::of(problem);
    let rho_limit = (1.0 + inflation) * problem.solve()?.rho_root;
    let grid = a_grid(a_points);
    let mut report = SweepReport {
        rho_limit,
        max_value: f64::NEG_INFINITY,
        max_at: (0.0, 0.0),
        points: 0,
        violations: Vec::new(),
    };
    for j in 0..rho_points {
        let rho = rho_limit * j as f64 / (rho_points - 1) as f64;
        for &a in &grid {
            let Ok(value) = extremal_functional(kind, a, rho) else {
                continue;
            };
            report.points += 1;
            if value > report.max_value {
                report.max_value = value;
                report.max_at = (a, rho);
            }
            if value > 1.0 + SAFETY_TOLERANCE {
                report.violations.push(Violation { check: "safety", a, rho, value });
            }
            if let Ok(bound) = majorant_functional(kind, a, rho) {
                if bound < value - SAFETY_TOLERANCE {
                    report.violations.push(Violation { check: "dominance", a, rho, value });
                }
            }
        }
    }
    Ok(report)
}
