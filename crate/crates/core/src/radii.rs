//! Radius-characterizing polynomials and their certified positive roots.
//!
//! Every radius equation is a polynomial in the normalized variable
//! `ρ = n·r^m`; a root `ρ*` maps back to `r = (ρ*/n)^(1/m)`. Roots are
//! isolated by bisection on a sign-change bracket and polished by Newton.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Right end of the DERIV bracket in `ρ`.
pub const DERIV_RHO_MAX: f64 = std::f64::consts::SQRT_2 - 1.0;

/// Right end of the SQ_DERIV bracket in `ρ`: `(√5 − 1)/2`.
pub const SQ_DERIV_RHO_MAX: f64 = 0.618_033_988_749_894_9;

/// Contract on `|p(root)|` for every returned root.
pub const RESIDUAL_TOLERANCE: f64 = 1e-12;

/// Bisection stops once the bracket is this narrow.
pub const BRACKET_WIDTH: f64 = 1e-14;

const NEWTON_STEPS: usize = 5;
const UNIQUENESS_SAMPLES: usize = 1024;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RadiusError {
    #[error("{name} = {value} is outside {range}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        range: &'static str,
    },
    #[error("{label} has no sign change on [{lo}, {hi}] (values {f_lo}, {f_hi})")]
    NoSignChange {
        label: PolyLabel,
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },
    #[error("{label} has {count} sign changes on [{lo}, {hi}]; expected exactly one")]
    NotUnique {
        label: PolyLabel,
        lo: f64,
        hi: f64,
        count: usize,
    },
    #[error("{label} residual {residual:e} at {root} exceeds 1e-12")]
    Residual {
        label: PolyLabel,
        root: f64,
        residual: f64,
    },
}

pub type Result<T> = std::result::Result<T, RadiusError>;

/// Which polynomial a coefficient vector represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PolyLabel {
    /// `Q_t(ρ) = (4t − 3)ρ² − 2ρ + 1`.
    QT,
    /// `ξ(ρ) = 2λρ⁴ + (4λ − 1)ρ³ + (2λ − 1)ρ² + 3ρ − 1`.
    Xi,
    /// `w(ρ) = ρ⁴ + ρ³ + 3ρ − 1`.
    W,
    /// `Ψ₁(ρ) = λρ⁴ + (2λ − 1)ρ³ + λρ² + 2ρ − 1`.
    Psi1,
    /// `S(ρ) = ρ⁴ + ρ³ + ρ² + 2ρ − 1`.
    S,
    /// `α(x)`, a cubic in `x = |a_0|` at fixed `(t, ρ)`.
    AlphaX,
    /// `K(a)`, a quartic in the witness parameter at fixed `(λ, ρ)`.
    K,
    /// Anything built directly from coefficients.
    Custom,
}

impl fmt::Display for PolyLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PolyLabel::QT => "Q_t",
            PolyLabel::Xi => "xi",
            PolyLabel::W => "w",
            PolyLabel::Psi1 => "Psi_1",
            PolyLabel::S => "S",
            PolyLabel::AlphaX => "alpha",
            PolyLabel::K => "K",
            PolyLabel::Custom => "p",
        };
        f.write_str(s)
    }
}

/// Real polynomial with coefficients in ascending order of degree.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    pub label: PolyLabel,
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(label: PolyLabel, coeffs: Vec<f64>) -> Self {
        Polynomial { label, coeffs }
    }

    pub fn custom(coeffs: Vec<f64>) -> Self {
        Self::new(PolyLabel::Custom, coeffs)
    }

    pub fn q_t(t: f64) -> Self {
        Self::new(PolyLabel::QT, vec![1.0, -2.0, 4.0 * t - 3.0])
    }

    pub fn xi(lambda: f64) -> Self {
        Self::new(
            PolyLabel::Xi,
            vec![-1.0, 3.0, 2.0 * lambda - 1.0, 4.0 * lambda - 1.0, 2.0 * lambda],
        )
    }

    pub fn w() -> Self {
        Self::new(PolyLabel::W, vec![-1.0, 3.0, 0.0, 1.0, 1.0])
    }

    pub fn psi1(lambda: f64) -> Self {
        Self::new(
            PolyLabel::Psi1,
            vec![-1.0, 2.0, lambda, 2.0 * lambda - 1.0, lambda],
        )
    }

    pub fn s() -> Self {
        Self::new(PolyLabel::S, vec![-1.0, 2.0, 1.0, 1.0, 1.0])
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial {
            label: self.label,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| k as f64 * c)
                .collect(),
        }
    }

    /// Sign changes of `p` on a uniform sample of `[lo, hi]`, exact zeros skipped.
    pub fn sign_changes(&self, lo: f64, hi: f64, samples: usize) -> usize {
        let mut prev = 0.0f64;
        let mut count = 0;
        for i in 0..=samples {
            let x = lo + (hi - lo) * i as f64 / samples as f64;
            let v = self.eval(x);
            if v == 0.0 {
                continue;
            }
            if prev != 0.0 && (v > 0.0) != (prev > 0.0) {
                count += 1;
            }
            prev = v;
        }
        count
    }
}

/// `α(x) = −(1−t)ρ²x³ − (1−t)ρ²x² + [(1−ρ)² + (1−t)ρ²]x − tρ² + 2ρ − 1`.
pub fn alpha_polynomial(t: f64, rho: f64) -> Polynomial {
    let c = (1.0 - t) * rho * rho;
    Polynomial::new(
        PolyLabel::AlphaX,
        vec![
            -rho * rho * t + 2.0 * rho - 1.0,
            (1.0 - rho).powi(2) + c,
            -c,
            -c,
        ],
    )
}

/// `K(a) = λρ⁴a⁴ + (λρ⁴ + 2λρ³)a³ + ((2λ−1)ρ³ + λρ²)a² + ((λ−1)ρ² + ρ)a + 2ρ − 1`.
pub fn k_polynomial(lambda: f64, rho: f64) -> Polynomial {
    let (r2, r3, r4) = (rho * rho, rho.powi(3), rho.powi(4));
    Polynomial::new(
        PolyLabel::K,
        vec![
            2.0 * rho - 1.0,
            (lambda - 1.0) * r2 + rho,
            (2.0 * lambda - 1.0) * r3 + lambda * r2,
            lambda * r4 + 2.0 * lambda * r3,
            lambda * r4,
        ],
    )
}

/// A root together with the bracket that certifies it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertifiedRoot {
    pub root: f64,
    pub residual: f64,
    pub bracket: (f64, f64),
}

/// Root of `poly` on a sign-change bracket: bisection down to
/// [`BRACKET_WIDTH`], then up to five Newton steps that must stay inside the
/// bracket and must not increase the residual.
pub fn solve_unique_positive_root(poly: &Polynomial, bracket: (f64, f64)) -> Result<CertifiedRoot> {
    let (mut lo, mut hi) = bracket;
    let (mut f_lo, f_hi) = (poly.eval(lo), poly.eval(hi));
    if f_lo == 0.0 {
        return Ok(CertifiedRoot { root: lo, residual: 0.0, bracket: (lo, lo) });
    }
    if f_hi == 0.0 {
        return Ok(CertifiedRoot { root: hi, residual: 0.0, bracket: (hi, hi) });
    }
    if (f_lo > 0.0) == (f_hi > 0.0) || f_lo.is_nan() || f_hi.is_nan() {
        return Err(RadiusError::NoSignChange {
            label: poly.label,
            lo,
            hi,
            f_lo,
            f_hi,
        });
    }
    while hi - lo > BRACKET_WIDTH {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = poly.eval(mid);
        if f_mid == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if (f_mid > 0.0) == (f_lo > 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    let mut root = 0.5 * (lo + hi);
    let mut residual = poly.eval(root).abs();
    let slope = poly.derivative();
    for _ in 0..NEWTON_STEPS {
        let d = slope.eval(root);
        if d == 0.0 || residual == 0.0 {
            break;
        }
        let next = root - poly.eval(root) / d;
        if !(lo..=hi).contains(&next) {
            break;
        }
        let next_residual = poly.eval(next).abs();
        if next_residual > residual {
            break;
        }
        root = next;
        residual = next_residual;
    }
    if residual > RESIDUAL_TOLERANCE {
        return Err(RadiusError::Residual {
            label: poly.label,
            root,
            residual,
        });
    }
    Ok(CertifiedRoot {
        root,
        residual,
        bracket: (lo, hi),
    })
}

/// Which theorem a radius belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem {
    /// `t|f(ω)| + (1−t) Σ_{k≥0} …`
    Convex,
    /// `|f(ω)| + |∂_u f(ω)| ||ω||_∞ + λ Σ_{k≥2} …`
    Deriv,
    /// `|f(ω)|² + |∂_u f(ω)| ||ω||_∞ + λ Σ_{k≥2} …`
    SqDeriv,
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theorem::Convex => "convex",
            Theorem::Deriv => "deriv",
            Theorem::SqDeriv => "sq_deriv",
        })
    }
}

/// A radius question: theorem, dimension `n`, zero multiplicity `m`, and the
/// weight `t` (CONVEX) or `λ` (DERIV, SQ_DERIV).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RadiusProblem {
    Convex { n: u32, m: u32, t: f64 },
    Deriv { n: u32, m: u32, lambda: f64 },
    SqDeriv { n: u32, m: u32, lambda: f64 },
}

fn check_dims(n: u32, m: u32) -> Result<()> {
    if n == 0 {
        return Err(RadiusError::InvalidParameter { name: "n", value: 0.0, range: "n >= 1" });
    }
    if m == 0 {
        return Err(RadiusError::InvalidParameter { name: "m", value: 0.0, range: "m >= 1" });
    }
    Ok(())
}

fn check_t(t: f64) -> Result<()> {
    if (0.0..=1.0).contains(&t) {
        Ok(())
    } else {
        Err(RadiusError::InvalidParameter { name: "t", value: t, range: "[0, 1]" })
    }
}

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda > 0.0 && lambda.is_finite() {
        Ok(())
    } else {
        Err(RadiusError::InvalidParameter { name: "lambda", value: lambda, range: "(0, inf)" })
    }
}

impl RadiusProblem {
    pub fn convex(n: u32, m: u32, t: f64) -> Result<Self> {
        check_dims(n, m)?;
        check_t(t)?;
        Ok(RadiusProblem::Convex { n, m, t })
    }

    pub fn deriv(n: u32, m: u32, lambda: f64) -> Result<Self> {
        check_dims(n, m)?;
        check_lambda(lambda)?;
        Ok(RadiusProblem::Deriv { n, m, lambda })
    }

    pub fn sq_deriv(n: u32, m: u32, lambda: f64) -> Result<Self> {
        check_dims(n, m)?;
        check_lambda(lambda)?;
        Ok(RadiusProblem::SqDeriv { n, m, lambda })
    }

    /// Builds a problem from a theorem tag and its single real parameter.
    pub fn from_parts(theorem: Theorem, n: u32, m: u32, param: f64) -> Result<Self> {
        match theorem {
            Theorem::Convex => Self::convex(n, m, param),
            Theorem::Deriv => Self::deriv(n, m, param),
            Theorem::SqDeriv => Self::sq_deriv(n, m, param),
        }
    }

    pub fn theorem(&self) -> Theorem {
        match self {
            RadiusProblem::Convex { .. } => Theorem::Convex,
            RadiusProblem::Deriv { .. } => Theorem::Deriv,
            RadiusProblem::SqDeriv { .. } => Theorem::SqDeriv,
        }
    }

    pub fn n(&self) -> u32 {
        match *self {
            RadiusProblem::Convex { n, .. }
            | RadiusProblem::Deriv { n, .. }
            | RadiusProblem::SqDeriv { n, .. } => n,
        }
    }

    pub fn m(&self) -> u32 {
        match *self {
            RadiusProblem::Convex { m, .. }
            | RadiusProblem::Deriv { m, .. }
            | RadiusProblem::SqDeriv { m, .. } => m,
        }
    }

    /// `t` or `λ`.
    pub fn param(&self) -> f64 {
        match *self {
            RadiusProblem::Convex { t, .. } => t,
            RadiusProblem::Deriv { lambda, .. } | RadiusProblem::SqDeriv { lambda, .. } => lambda,
        }
    }

    /// Interval in `ρ` on which the theorem's estimates are admissible.
    pub fn rho_range(&self) -> (f64, f64) {
        match self {
            RadiusProblem::Convex { .. } => (0.0, 1.0),
            RadiusProblem::Deriv { .. } => (0.0, DERIV_RHO_MAX),
            RadiusProblem::SqDeriv { .. } => (0.0, SQ_DERIV_RHO_MAX),
        }
    }

    pub fn solve(&self) -> Result<RadiusResult> {
        match *self {
            RadiusProblem::Convex { n, m, t } => radius_convex(n, m, t),
            RadiusProblem::Deriv { n, m, lambda } => radius_deriv(n, m, lambda),
            RadiusProblem::SqDeriv { n, m, lambda } => radius_sq_deriv(n, m, lambda),
        }
    }
}

/// Which case of a theorem produced the radius.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// `t ≠ 3/4`: smallest positive root of the quadratic `Q_t`.
    ConvexQuadratic,
    /// `t = 3/4`: `Q_t` degenerates to `1 − 2ρ`.
    ConvexLinear,
    /// `λ > 1/2`: root of `ξ`.
    DerivXi,
    /// `λ ≤ 1/2`: root of `w`.
    DerivW,
    /// `λ > 1`: root of `Ψ₁`.
    SqDerivPsi1,
    /// `λ ≤ 1`: root of `S`.
    SqDerivS,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::ConvexQuadratic => "convex_quadratic",
            Branch::ConvexLinear => "convex_linear",
            Branch::DerivXi => "deriv_xi",
            Branch::DerivW => "deriv_w",
            Branch::SqDerivPsi1 => "sq_deriv_psi1",
            Branch::SqDerivS => "sq_deriv_s",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadiusResult {
    pub radius: f64,
    pub rho_root: f64,
    pub residual: f64,
    pub branch: Branch,
    pub bracket: (f64, f64),
}

impl RadiusResult {
    fn from_rho(n: u32, m: u32, root: CertifiedRoot, branch: Branch) -> Self {
        RadiusResult {
            radius: rho_to_radius(root.root, n, m),
            rho_root: root.root,
            residual: root.residual,
            branch,
            bracket: root.bracket,
        }
    }
}

/// `r = (ρ/n)^(1/m)`.
pub fn rho_to_radius(rho: f64, n: u32, m: u32) -> f64 {
    let base = rho / f64::from(n);
    match m {
        1 => base,
        2 => base.sqrt(),
        _ => base.powf(1.0 / f64::from(m)),
    }
}

/// `ρ = n·r^m`.
pub fn radius_to_rho(r: f64, n: u32, m: u32) -> f64 {
    f64::from(n) * r.powi(m as i32)
}

/// Closed-form CONVEX radius.
///
/// The smallest positive root of `Q_t` is `(1 − 2√(1−t))/(4t − 3)`; it is
/// evaluated in the rationalized form `1/(1 + 2√(1−t))`, which has no
/// cancellation near `t = 3/4`. At `t = 3/4` exactly the linear branch
/// `ρ = 1/2` is taken.
pub fn radius_convex(n: u32, m: u32, t: f64) -> Result<RadiusResult> {
    check_dims(n, m)?;
    check_t(t)?;
    let q = Polynomial::q_t(t);
    let (rho, branch) = if t == 0.75 {
        (0.5, Branch::ConvexLinear)
    } else {
        (1.0 / (1.0 + 2.0 * (1.0 - t).sqrt()), Branch::ConvexQuadratic)
    };
    let residual = q.eval(rho).abs();
    if residual > RESIDUAL_TOLERANCE {
        return Err(RadiusError::Residual { label: PolyLabel::QT, root: rho, residual });
    }
    Ok(RadiusResult::from_rho(
        n,
        m,
        CertifiedRoot { root: rho, residual, bracket: (rho, rho) },
        branch,
    ))
}

fn unique_root(poly: &Polynomial, hi: f64) -> Result<CertifiedRoot> {
    let count = poly.sign_changes(0.0, hi, UNIQUENESS_SAMPLES);
    if count > 1 {
        return Err(RadiusError::NotUnique { label: poly.label, lo: 0.0, hi, count });
    }
    solve_unique_positive_root(poly, (0.0, hi))
}

/// DERIV radius: root of `ξ` on `(0, √2 − 1)` when `λ > 1/2`, of `w` otherwise.
pub fn radius_deriv(n: u32, m: u32, lambda: f64) -> Result<RadiusResult> {
    check_dims(n, m)?;
    check_lambda(lambda)?;
    let (poly, branch) = if lambda > 0.5 {
        (Polynomial::xi(lambda), Branch::DerivXi)
    } else {
        (Polynomial::w(), Branch::DerivW)
    };
    let root = unique_root(&poly, DERIV_RHO_MAX)?;
    Ok(RadiusResult::from_rho(n, m, root, branch))
}

/// SQ_DERIV radius: root of `Ψ₁` on `(0, (√5 − 1)/2)` when `λ > 1`, of `S`
/// otherwise.
pub fn radius_sq_deriv(n: u32, m: u32, lambda: f64) -> Result<RadiusResult> {
    check_dims(n, m)?;
    check_lambda(lambda)?;
    let (poly, branch) = if lambda > 1.0 {
        (Polynomial::psi1(lambda), Branch::SqDerivPsi1)
    } else {
        (Polynomial::s(), Branch::SqDerivS)
    };
    let root = unique_root(&poly, SQ_DERIV_RHO_MAX)?;
    Ok(RadiusResult::from_rho(n, m, root, branch))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Plain bisection to machine width, used as an oracle.
    fn bisect(p: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
        let neg_lo = p(lo) < 0.0;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if (p(mid) < 0.0) == neg_lo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn convex_examples() {
        let r = radius_convex(1, 1, 0.0).unwrap();
        assert!((r.radius - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(r.branch, Branch::ConvexQuadratic);

        let r = radius_convex(1, 1, 0.75).unwrap();
        assert_eq!(r.radius, 0.5);
        assert_eq!(r.branch, Branch::ConvexLinear);
        assert_eq!(r.residual, 0.0);

        let r = radius_convex(4, 2, 0.75).unwrap();
        assert!((r.radius - 0.125f64.sqrt()).abs() < 1e-15);

        assert!((radius_convex(1, 1, 1.0).unwrap().radius - 1.0).abs() < 1e-15);
        assert!(radius_convex(1, 1, 1.01).is_err());
        assert!(radius_convex(0, 1, 0.5).is_err());
    }

    #[test]
    fn convex_near_three_quarters_is_stable() {
        for &t in &[0.75 - 1e-9, 0.75 + 1e-9, 0.75 - 1e-13, 0.75 + 1e-13] {
            let r = radius_convex(1, 1, t).unwrap();
            assert!(r.residual <= 1e-15, "t={t}");
            assert!((r.rho_root - 0.5).abs() < 1e-8);
        }
    }

    #[test]
    fn deriv_examples() {
        let r = radius_deriv(1, 1, 0.5).unwrap();
        assert_eq!(r.branch, Branch::DerivW);
        assert!((r.radius - 0.3191).abs() < 5e-4);
        assert!(Polynomial::w().eval(r.rho_root).abs() <= 1e-12);

        let r = radius_deriv(1, 1, 1.0).unwrap();
        assert_eq!(r.branch, Branch::DerivXi);
        assert!((r.radius - (17f64.sqrt() - 3.0) / 4.0).abs() < 1e-12);

        let r2 = radius_deriv(2, 1, 0.5).unwrap();
        let r1 = radius_deriv(1, 1, 0.5).unwrap();
        assert_eq!(r2.rho_root, r1.rho_root);
        assert!((r2.radius - r1.rho_root / 2.0).abs() < 1e-16);
        assert!((r2.radius - 0.15955).abs() < 5e-5);

        assert!(radius_deriv(1, 1, 0.0).is_err());
        assert!(radius_deriv(1, 1, -1.0).is_err());
    }

    #[test]
    fn sq_deriv_examples() {
        let r = radius_sq_deriv(1, 1, 1.0).unwrap();
        assert_eq!(r.branch, Branch::SqDerivS);
        let oracle = bisect(|x| Polynomial::s().eval(x), 0.0, 0.618);
        assert!((r.rho_root - oracle).abs() < 1e-14);
        assert!((r.rho_root - 0.3858).abs() < 5e-4);

        let at2 = radius_sq_deriv(1, 1, 2.0).unwrap();
        let at10 = radius_sq_deriv(1, 1, 10.0).unwrap();
        assert!(at10.rho_root < at2.rho_root);
        let oracle2 = bisect(|x| Polynomial::psi1(2.0).eval(x), 0.0, 0.618);
        assert!((at2.rho_root - oracle2).abs() < 1e-14);

        // right end of the bracket: Ψ₁((√5−1)/2) = λ
        for &lambda in &[1.0, 2.5, 7.0] {
            assert!((Polynomial::psi1(lambda).eval(SQ_DERIV_RHO_MAX) - lambda).abs() < 1e-14);
        }
        assert!((Polynomial::s().eval(SQ_DERIV_RHO_MAX) - 1.0).abs() < 1e-14);
        assert!(radius_sq_deriv(1, 1, f64::NAN).is_err());
    }

    #[test]
    fn solver_examples() {
        let linear = Polynomial::custom(vec![-0.5, 1.0]);
        let root = solve_unique_positive_root(&linear, (0.0, 1.0)).unwrap();
        assert_eq!(root.root, 0.5);

        let w = Polynomial::w();
        assert_eq!(w.eval(0.0), -1.0);
        assert!((w.eval(DERIV_RHO_MAX) - (6.0 - 4.0 * 2f64.sqrt())).abs() < 1e-14);
        let root = solve_unique_positive_root(&w, (0.0, DERIV_RHO_MAX)).unwrap();
        assert!((root.root - 0.3191).abs() < 5e-4);
        assert!(root.residual <= RESIDUAL_TOLERANCE);
        assert!(root.bracket.1 - root.bracket.0 <= BRACKET_WIDTH);

        let at_half = solve_unique_positive_root(&Polynomial::xi(0.5), (0.0, DERIV_RHO_MAX)).unwrap().root;
        let at_one = solve_unique_positive_root(&Polynomial::xi(1.0), (0.0, DERIV_RHO_MAX)).unwrap().root;
        let mid = solve_unique_positive_root(&Polynomial::xi(0.75), (0.0, DERIV_RHO_MAX)).unwrap().root;
        assert!(at_one < mid && mid < at_half);
    }

    #[test]
    fn solver_rejects_missing_sign_change() {
        let p = Polynomial::custom(vec![1.0, 0.0, 1.0]);
        assert!(matches!(
            solve_unique_positive_root(&p, (0.0, 1.0)),
            Err(RadiusError::NoSignChange { .. })
        ));
    }

    #[test]
    fn xi_grows_with_lambda_at_fixed_rho() {
        for i in 1..40 {
            let rho = f64::from(i) / 100.0;
            let values: Vec<f64> = [0.5, 0.75, 1.0, 2.0].iter().map(|&l| Polynomial::xi(l).eval(rho)).collect();
            assert!(values.windows(2).all(|w| w[0] < w[1]), "rho={rho}");
        }
    }

    #[test]
    fn branch_polynomials_coincide_at_crossovers() {
        assert_eq!(Polynomial::xi(0.5).coefficients(), Polynomial::w().coefficients());
        assert_eq!(Polynomial::psi1(1.0).coefficients(), Polynomial::s().coefficients());
    }

    #[test]
    fn alpha_examples() {
        let a = alpha_polynomial(1.0, 0.4);
        assert!((a.eval(0.0) - (-0.36)).abs() < 1e-15);
        assert!((a.coefficients()[1] - 0.36).abs() < 1e-15);
        assert_eq!(a.coefficients()[2], 0.0);
        assert!(a.eval(1.0).abs() < 1e-15);
    }

    #[test]
    fn k_examples() {
        let k = k_polynomial(0.8, 0.3);
        assert!((k.eval(0.0) - (2.0 * 0.3 - 1.0)).abs() < 1e-15);
        assert!((k.eval(1.0) - Polynomial::xi(0.8).eval(0.3)).abs() < 1e-15);
        // λ = 1/2: K(a) ≤ w(ρ) for a ∈ [0, 1)
        for i in 0..=40 {
            let rho = f64::from(i) / 100.0;
            let k = k_polynomial(0.5, rho);
            for j in 0..100 {
                let a = f64::from(j) / 100.0;
                assert!(k.eval(a) <= Polynomial::w().eval(rho) + 1e-15);
            }
        }
    }

    #[test]
    fn rho_radius_round_trip() {
        for n in 1..5 {
            for m in 1..5 {
                let r = 0.37;
                let rho = radius_to_rho(r, n, m);
                assert!((rho_to_radius(rho, n, m) - r).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn problem_accessors() {
        let p = RadiusProblem::from_parts(Theorem::Deriv, 3, 2, 0.7).unwrap();
        assert_eq!((p.theorem(), p.n(), p.m(), p.param()), (Theorem::Deriv, 3, 2, 0.7));
        assert_eq!(p.rho_range(), (0.0, DERIV_RHO_MAX));
        assert_eq!(p.solve().unwrap(), radius_deriv(3, 2, 0.7).unwrap());
        assert!(RadiusProblem::from_parts(Theorem::Convex, 1, 1, 2.0).is_err());
        assert!(RadiusProblem::from_parts(Theorem::SqDeriv, 1, 0, 2.0).is_err());
    }
}
