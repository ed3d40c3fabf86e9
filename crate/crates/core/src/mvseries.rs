//! Multi-index combinatorics and truncated multivariate power series.
//!
//! A [`TruncatedSeries`] stores the Taylor coefficients of a function of
//! `n` complex variables up to a total degree `D`. Coefficients live in a
//! sparse map keyed by [`MultiIndex`], which keeps the extremal family thin
//! after composition with a power map (only exponents divisible by `m`
//! survive).

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

/// Default total-degree truncation.
pub const DEFAULT_MAX_DEGREE: u32 = 24;

/// Tolerance on `Σ|u_j| = 1` for a [`Direction`].
pub const DIRECTION_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SeriesError {
    #[error("dimension mismatch: expected {expected} components, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("direction is not in S_n: sum of moduli is {l1_norm}")]
    NotUnitDirection { l1_norm: f64 },
    #[error("composed degree {required} exceeds the degree cap {cap}")]
    DegreeCapExceeded { required: u32, cap: u32 },
    #[error("polyradius component {index} is negative ({value})")]
    NegativeRadius { index: usize, value: f64 },
    #[error("minimum degree {k_min} exceeds the truncation degree {max_degree}")]
    DegreeOutOfRange { k_min: u32, max_degree: u32 },
    #[error("a series needs at least one variable")]
    NoVariables,
}

pub type Result<T> = std::result::Result<T, SeriesError>;

/// Exponent vector `α = (α_1, …, α_n)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    /// The unit index `e_j`.
    pub fn unit(n: usize, j: usize) -> Self {
        let mut e = vec![0; n];
        e[j] = 1;
        MultiIndex(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// `|α| = Σ α_j`.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Number of nonzero entries.
    pub fn support_size(&self) -> usize {
        self.0.iter().filter(|&&e| e != 0).count()
    }

    /// `α! = Π α_j!`, exact while it fits in a `u128` (always for `|α| ≤ 34`).
    pub fn factorial(&self) -> Option<u128> {
        self.0.iter().try_fold(1u128, |acc, &e| {
            (2..=u128::from(e)).try_fold(acc, |p, k| p.checked_mul(k))
        })
    }

    /// Multinomial coefficient `|α|! / α!`.
    ///
    /// Built as a product of binomials so it never forms `|α|!` itself.
    pub fn multinomial(&self) -> f64 {
        let mut total = 0u32;
        let mut coeff = 1.0f64;
        for &e in &self.0 {
            for i in 1..=e {
                total += 1;
                coeff = coeff * f64::from(total) / f64::from(i);
            }
        }
        coeff
    }

    /// Exponent scaling `α ↦ mα`.
    pub fn scaled(&self, m: u32) -> Self {
        MultiIndex(self.0.iter().map(|&e| e * m).collect())
    }

    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        (self.len() == other.len())
            .then(|| MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    /// `z^α = Π z_j^{α_j}`.
    pub fn monomial(&self, z: &[Complex64]) -> Complex64 {
        self.0
            .iter()
            .zip(z)
            .fold(Complex64::new(1.0, 0.0), |acc, (&e, zj)| acc * zj.powu(e))
    }

    /// `|z|^α = Π |z_j|^{α_j}` for a non-negative polyradius.
    pub fn abs_monomial(&self, r: &[f64]) -> f64 {
        self.0
            .iter()
            .zip(r)
            .fold(1.0, |acc, (&e, rj)| acc * rj.powi(e as i32))
    }

    /// Every multi-index of length `n` and degree exactly `k`, in
    /// lexicographic order.
    pub fn all_of_degree(n: usize, k: u32) -> Vec<MultiIndex> {
        fn fill(prefix: &mut Vec<u32>, slots: usize, remaining: u32, out: &mut Vec<MultiIndex>) {
            if slots == 1 {
                prefix.push(remaining);
                out.push(MultiIndex(prefix.clone()));
                prefix.pop();
                return;
            }
            for e in 0..=remaining {
                prefix.push(e);
                fill(prefix, slots - 1, remaining - e, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            fill(&mut Vec::with_capacity(n), n, k, &mut out);
        }
        out
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        MultiIndex(v)
    }
}

/// Direction `u ∈ S_n`, i.e. `Σ|u_j| = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Direction(Vec<Complex64>);

impl Direction {
    /// Rejects (never renormalizes) vectors off the unit `ℓ¹` sphere.
    pub fn new(components: Vec<Complex64>) -> Result<Self> {
        if components.is_empty() {
            return Err(SeriesError::NoVariables);
        }
        let l1_norm: f64 = components.iter().map(|u| u.norm()).sum();
        if (l1_norm - 1.0).abs() > DIRECTION_TOLERANCE {
            return Err(SeriesError::NotUnitDirection { l1_norm });
        }
        Ok(Direction(components))
    }

    pub fn from_real(components: &[f64]) -> Result<Self> {
        Self::new(components.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// `(1/n, …, 1/n)`.
    pub fn uniform(n: usize) -> Self {
        Direction(vec![Complex64::new(1.0 / n as f64, 0.0); n])
    }

    /// The coordinate direction `e_j`.
    pub fn coordinate(n: usize, j: usize) -> Self {
        let mut u = vec![Complex64::new(0.0, 0.0); n];
        u[j] = Complex64::new(1.0, 0.0);
        Direction(u)
    }

    pub fn components(&self) -> &[Complex64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// The canonical Schwarz map `ω(z) = (z_1^m, …, z_n^m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SchwarzPowerMap {
    pub n_vars: usize,
    pub m: u32,
}

impl SchwarzPowerMap {
    pub fn new(n_vars: usize, m: u32) -> Self {
        assert!(n_vars > 0 && m > 0, "power map needs n ≥ 1 and m ≥ 1");
        SchwarzPowerMap { n_vars, m }
    }

    pub fn apply(&self, z: &[Complex64]) -> Result<Vec<Complex64>> {
        check_dim(self.n_vars, z.len())?;
        Ok(z.iter().map(|zj| zj.powu(self.m)).collect())
    }
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(SeriesError::DimensionMismatch { expected, found })
    }
}

/// Finitely supported power series in `n_vars` variables, truncated at
/// total degree `max_degree`. Absent keys are zero coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    n_vars: usize,
    max_degree: u32,
    coeffs: BTreeMap<MultiIndex, Complex64>,
}

impl TruncatedSeries {
    pub fn zero(n_vars: usize, max_degree: u32) -> Self {
        assert!(n_vars > 0, "a series needs at least one variable");
        TruncatedSeries {
            n_vars,
            max_degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(n_vars: usize, max_degree: u32, c: Complex64) -> Self {
        let mut s = Self::zero(n_vars, max_degree);
        s.insert(MultiIndex::zero(n_vars), c);
        s
    }

    /// The coordinate function `z_j`.
    pub fn variable(n_vars: usize, max_degree: u32, j: usize) -> Self {
        let mut s = Self::zero(n_vars, max_degree);
        s.insert(MultiIndex::unit(n_vars, j), Complex64::new(1.0, 0.0));
        s
    }

    /// Builds a series from `(α, a_α)` pairs. Terms above `max_degree` are
    /// truncated away; repeated keys accumulate.
    pub fn from_terms<I>(n_vars: usize, max_degree: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Complex64)>,
    {
        if n_vars == 0 {
            return Err(SeriesError::NoVariables);
        }
        let mut s = Self::zero(n_vars, max_degree);
        for (alpha, c) in terms {
            check_dim(n_vars, alpha.len())?;
            s.insert(alpha, c);
        }
        Ok(s)
    }

    fn insert(&mut self, alpha: MultiIndex, c: Complex64) {
        if alpha.degree() > self.max_degree || c == Complex64::new(0.0, 0.0) {
            return;
        }
        let entry = self.coeffs.entry(alpha).or_insert(Complex64::new(0.0, 0.0));
        *entry += c;
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn coefficient(&self, alpha: &MultiIndex) -> Complex64 {
        self.coeffs
            .get(alpha)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// `a_0 = f(0)`.
    pub fn constant_term(&self) -> Complex64 {
        self.coefficient(&MultiIndex::zero(self.n_vars))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Complex64)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(|c| *c == Complex64::new(0.0, 0.0))
    }

    /// Homogeneous part `P_k` of degree exactly `k`.
    pub fn degree_slice(&self, k: u32) -> TruncatedSeries {
        TruncatedSeries {
            n_vars: self.n_vars,
            max_degree: self.max_degree,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(alpha, _)| alpha.degree() == k)
                .map(|(alpha, c)| (alpha.clone(), *c))
                .collect(),
        }
    }

    /// `Σ_α a_α z^α`.
    pub fn eval(&self, z: &[Complex64]) -> Result<Complex64> {
        check_dim(self.n_vars, z.len())?;
        Ok(self
            .coeffs
            .iter()
            .map(|(alpha, c)| c * alpha.monomial(z))
            .sum())
    }

    pub fn scale(&self, factor: Complex64) -> TruncatedSeries {
        let mut out = Self::zero(self.n_vars, self.max_degree);
        for (alpha, c) in &self.coeffs {
            out.insert(alpha.clone(), c * factor);
        }
        out
    }

    /// Sum truncated at the larger of the two degrees.
    pub fn add_series(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        check_dim(self.n_vars, other.n_vars)?;
        let mut out = Self::zero(self.n_vars, self.max_degree.max(other.max_degree));
        for (alpha, c) in self.coeffs.iter().chain(other.coeffs.iter()) {
            out.insert(alpha.clone(), *c);
        }
        Ok(out)
    }

    pub fn sub_series(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.add_series(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// Cauchy product, truncated at `min(D1 + D2, cap)`.
    pub fn multiply(&self, other: &TruncatedSeries, cap: u32) -> Result<TruncatedSeries> {
        check_dim(self.n_vars, other.n_vars)?;
        let max_degree = (self.max_degree + other.max_degree).min(cap);
        let mut out = Self::zero(self.n_vars, max_degree);
        for (beta, b) in &self.coeffs {
            for (gamma, g) in &other.coeffs {
                if beta.degree() + gamma.degree() > max_degree {
                    continue;
                }
                let alpha = beta.checked_add(gamma).expect("lengths checked above");
                out.insert(alpha, b * g);
            }
        }
        Ok(out)
    }

    /// `self^k` by repeated multiplication, every intermediate truncated at `cap`.
    pub fn pow(&self, k: u32, cap: u32) -> TruncatedSeries {
        let mut acc = Self::constant(self.n_vars, 0, Complex64::new(1.0, 0.0));
        for _ in 0..k {
            acc = acc.multiply(self, cap).expect("same number of variables");
        }
        acc
    }

    /// `∂f/∂z_j`; the result has degree `D − 1`.
    pub fn partial_derivative(&self, j: usize) -> TruncatedSeries {
        let mut out = Self::zero(self.n_vars, self.max_degree.saturating_sub(1));
        for (alpha, c) in &self.coeffs {
            let e = alpha.exponents()[j];
            if e == 0 {
                continue;
            }
            let mut lowered = alpha.exponents().to_vec();
            lowered[j] -= 1;
            out.insert(MultiIndex(lowered), c * f64::from(e));
        }
        out
    }

    /// `∂_u f = Σ_j u_j ∂f/∂z_j`.
    pub fn directional_derivative(&self, u: &Direction) -> Result<TruncatedSeries> {
        check_dim(self.n_vars, u.len())?;
        let mut out = Self::zero(self.n_vars, self.max_degree.saturating_sub(1));
        for (alpha, c) in &self.coeffs {
            for (j, uj) in u.components().iter().enumerate() {
                let e = alpha.exponents()[j];
                if e == 0 {
                    continue;
                }
                let mut lowered = alpha.exponents().to_vec();
                lowered[j] -= 1;
                out.insert(MultiIndex(lowered), c * uj * f64::from(e));
            }
        }
        Ok(out)
    }

    /// `∂_u^k f`, applied inductively.
    pub fn directional_derivative_k(&self, u: &Direction, k: u32) -> Result<TruncatedSeries> {
        let mut acc = self.clone();
        for _ in 0..k {
            acc = acc.directional_derivative(u)?;
        }
        Ok(acc)
    }

    /// `f ∘ ω` for `ω(z) = (z_1^m, …, z_n^m)`: every key `α` becomes `mα`.
    pub fn compose_power_map(&self, omega: &SchwarzPowerMap, cap: u32) -> Result<TruncatedSeries> {
        check_dim(self.n_vars, omega.n_vars)?;
        let required = self.max_degree * omega.m;
        if required > cap {
            return Err(SeriesError::DegreeCapExceeded { required, cap });
        }
        Ok(TruncatedSeries {
            n_vars: self.n_vars,
            max_degree: required,
            coeffs: self
                .coeffs
                .iter()
                .map(|(alpha, c)| (alpha.scaled(omega.m), *c))
                .collect(),
        })
    }

    /// Majorant sum `Σ_{k ≥ k_min} Σ_{|α| = k} |a_α| r^α`.
    pub fn bohr_majorant_sum(&self, r: &[f64], k_min: u32) -> Result<f64> {
        check_dim(self.n_vars, r.len())?;
        if let Some((index, &value)) = r.iter().enumerate().find(|(_, &v)| v < 0.0 || v.is_nan()) {
            return Err(SeriesError::NegativeRadius { index, value });
        }
        if k_min > self.max_degree {
            return Err(SeriesError::DegreeOutOfRange {
                k_min,
                max_degree: self.max_degree,
            });
        }
        Ok(self
            .coeffs
            .iter()
            .filter(|(alpha, _)| alpha.degree() >= k_min)
            .map(|(alpha, c)| c.norm() * alpha.abs_monomial(r))
            .sum())
    }
}
