//! Central-configuration tests.
//!
//! A non-collinear realizable configuration is central exactly when, for every
//! pair `(i, j)`,
//!
//! ```text
//! Σ_{k≠i,j} m_k A_ikj Q_ikj = 0,   A_ikj = 1/q_ik³ − 1/q_kj³,   Q_ikj = q_ik × q_kj
//! ```
//!
//! which is the same as every pair angular momentum having zero derivative.
//! Collinear configurations are decided by fitting a single `λ` in
//! `q̈_ij = −λ q_ij`.

use serde::Serialize;

use crate::dynamics::pair_accelerations;
use crate::error::{Error, Result};
use crate::pairs::{check_indices, pairs_from_particles, MassVector, PairConfiguration, SystemState};
use crate::scalar::Real;
use crate::vector::Vec3;

/// Tolerance on the triangle violation accepted as realizable.
pub const REALIZABLE_TOL: f64 = 1e-10;

/// `A_ikj = 1/q_ik³ − 1/q_kj³`.
pub fn a_term<T: Real>(pc: &PairConfiguration<T>, i: usize, k: usize, j: usize) -> Result<T> {
    check_indices(&[i, k, j], pc.n())?;
    let a = pc.separation(i, k)?;
    let b = pc.separation(k, j)?;
    Ok(T::one() / (a * a * a) - T::one() / (b * b * b))
}

/// `1/q_ik³ + 1/q_kj³`, the magnitude scale of [`a_term`].
pub(crate) fn a_scale<T: Real>(pc: &PairConfiguration<T>, i: usize, k: usize, j: usize) -> Result<T> {
    let a = pc.separation(i, k)?;
    let b = pc.separation(k, j)?;
    Ok(T::one() / (a * a * a) + T::one() / (b * b * b))
}

/// `Q_ijk = q_ij × q_jk`, invariant under cyclic shifts and odd under
/// transpositions.
pub fn q_cross<T: Real>(pc: &PairConfiguration<T>, i: usize, j: usize, k: usize) -> Result<Vec3<T>> {
    check_indices(&[i, j, k], pc.n())?;
    Ok(pc.get(i, j).cross(pc.get(j, k)))
}

/// Configuration class, following the pair-angular-momentum characterization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Classification {
    /// Non-collinear and central.
    Central,
    /// Collinear and moving along its own line.
    CollinearFixedLine,
    /// Collinear, rotating, and central.
    CollinearCentral,
    Generic,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Central => "CENTRAL",
            Classification::CollinearFixedLine => "COLLINEAR_FIXED_LINE",
            Classification::CollinearCentral => "COLLINEAR_CENTRAL",
            Classification::Generic => "GENERIC",
        }
    }
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Residual of the centrality equations for one pair.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = "T: Real"))]
pub struct PairResidual<T> {
    pub i: usize,
    pub j: usize,
    pub residual: Vec3<T>,
    /// `|residual|` divided by `Σ_k m_k (1/q_ik³ + 1/q_kj³) |Q_ikj|`.
    pub scaled: T,
}

/// Outcome of the centrality test on one configuration.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = "T: Real"))]
pub struct CentralityReport<T> {
    pub residuals: Vec<PairResidual<T>>,
    /// Largest scaled pair residual (dimensionless).
    pub max_residual: T,
    /// Present only when the configuration passes the centrality test.
    pub lambda: Option<T>,
    /// Least-squares `λ` regardless of the verdict.
    pub fitted_lambda: T,
    /// RMS of `q̈ + λ q` over RMS of `q̈`.
    pub lambda_residual: T,
    pub collinear: bool,
    /// `None` when no velocities were supplied.
    pub fixed_line: Option<bool>,
    pub tolerance: T,
}

impl<T: Real> CentralityReport<T> {
    /// Central (collinear or not) at the report's tolerance.
    pub fn is_central(&self) -> bool {
        self.lambda.is_some()
    }
}

/// Per-pair vectors `Σ_{k≠i,j} m_k A_ikj Q_ikj`, with the dimensionless scaled
/// maximum.
///
/// The scale of each pair is `Σ_k m_k (1/q_ik³ + 1/q_kj³) |Q_ikj|`; pairs whose
/// scale is exactly zero (all triplets collinear) have scaled residual zero.
pub fn centrality_residual<T: Real>(
    mv: &MassVector<T>,
    pc: &PairConfiguration<T>,
) -> Result<(Vec<PairResidual<T>>, T)> {
    let n = pc.n();
    if n < 3 {
        return Err(Error::TooFewBodies { need: 3, got: n });
    }
    if mv.len() != n {
        return Err(Error::LengthMismatch {
            what: "masses",
            expected: n,
            got: mv.len(),
        });
    }
    pc.check_collisions()?;
    pc.ensure_realizable(T::lit(REALIZABLE_TOL))?;

    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    let mut worst = T::zero();
    for (i, j, _) in pc.iter() {
        let mut sum = Vec3::zero();
        let mut scale = T::zero();
        for k in (0..n).filter(|&k| k != i && k != j) {
            let q = q_cross(pc, i, k, j)?;
            let mk = mv.mass(k);
            sum += q * (mk * a_term(pc, i, k, j)?);
            scale = scale + mk * a_scale(pc, i, k, j)? * q.norm();
        }
        let scaled = if scale > T::zero() { sum.norm() / scale } else { T::zero() };
        worst = worst.max(scaled);
        out.push(PairResidual {
            i,
            j,
            residual: sum,
            scaled,
        });
    }
    Ok((out, worst))
}

/// Least-squares `λ` for `q̈_ij ≈ −λ q_ij` over all pairs.
///
/// Returns `(λ, r)` with `λ = −Σ q̈·q / Σ q·q` and `r` the RMS of `q̈ + λ q`
/// divided by the RMS of `q̈`.
pub fn fit_lambda<T: Real>(mv: &MassVector<T>, pc: &PairConfiguration<T>, g: T) -> Result<(T, T)> {
    let qq: T = pc.iter().map(|(_, _, q)| q.norm_squared()).sum();
    if !(qq > T::zero()) {
        return Err(Error::InvalidParameter("all pair vectors are zero".into()));
    }
    let acc = pair_accelerations(mv, pc, g)?;
    let aq: T = pc.iter().map(|(i, j, q)| acc.get(i, j).dot(q)).sum();
    let lambda = -aq / qq;
    let (res, norm): (T, T) = pc.iter().fold((T::zero(), T::zero()), |(r, a), (i, j, q)| {
        let qdd = acc.get(i, j);
        (r + (qdd + q * lambda).norm_squared(), a + qdd.norm_squared())
    });
    let ratio = if norm > T::zero() { (res / norm).sqrt() } else { T::zero() };
    Ok((lambda, ratio))
}

/// Largest `|Q_ijk|` over `(max q_ij)²`; zero for collinear configurations.
pub fn collinearity<T: Real>(pc: &PairConfiguration<T>) -> T {
    let n = pc.n();
    let d = pc.diameter();
    if n < 3 || !(d > T::zero()) {
        return T::zero();
    }
    let mut worst = T::zero();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                worst = worst.max(pc.get(i, j).cross(pc.get(j, k)).norm());
            }
        }
    }
    worst / (d * d)
}

/// Largest `|dL_ij/dt| / (μ_ij |q_ij| |q̈_ij|)`, i.e. the sine of the angle
/// between each pair vector and its acceleration.
pub fn pair_torque<T: Real>(mv: &MassVector<T>, pc: &PairConfiguration<T>, g: T) -> Result<T> {
    let acc = pair_accelerations(mv, pc, g)?;
    let mut worst = T::zero();
    for (i, j, q) in pc.iter() {
        let a = acc.get(i, j);
        let denom = q.norm() * a.norm();
        if denom > T::zero() {
            worst = worst.max(q.cross(a).norm() / denom);
        }
    }
    Ok(worst)
}

/// Runs the centrality test on a bare configuration (no velocities).
///
/// Non-collinear configurations pass when the scaled residual is at most
/// `tol`; collinear ones when the `λ` fit residual is.
pub fn centrality_report<T: Real>(
    mv: &MassVector<T>,
    pc: &PairConfiguration<T>,
    g: T,
    tol: T,
) -> Result<CentralityReport<T>> {
    let (residuals, max_residual) = centrality_residual(mv, pc)?;
    let (fitted, lambda_residual) = fit_lambda(mv, pc, g)?;
    let collinear = collinearity(pc) <= tol;
    let passes = if collinear {
        lambda_residual <= tol
    } else {
        max_residual <= tol
    };
    Ok(CentralityReport {
        residuals,
        max_residual,
        lambda: passes.then_some(fitted),
        fitted_lambda: fitted,
        lambda_residual,
        collinear,
        fixed_line: None,
        tolerance: tol,
    })
}

/// Classifies a state with velocities.
///
/// Collinearity uses `max |Q_ijk| ≤ tol (max q_ij)²`. A collinear state is on
/// a fixed line when every `q_ij × q̇_ij` vanishes relative to
/// `|q_ij| |q̇_ij|`; otherwise it is central only if one `λ` fits all pairs.
pub fn classify<T: Real>(
    mv: &MassVector<T>,
    state: &SystemState<T>,
    tol: T,
) -> Result<(Classification, CentralityReport<T>)> {
    state.check_masses(mv)?;
    let ps = pairs_from_particles(state);
    let mut report = centrality_report(mv, &ps.configuration, state.gravitational_constant, tol)?;
    let class = if report.collinear {
        let fixed = ps.configuration.iter().all(|(i, j, q)| {
            let v = ps.velocities.get(i, j);
            q.cross(v).norm() <= tol * q.norm() * v.norm()
        });
        report.fixed_line = Some(fixed);
        if fixed {
            Classification::CollinearFixedLine
        } else if report.is_central() {
            Classification::CollinearCentral
        } else {
            Classification::Generic
        }
    } else {
        report.fixed_line = Some(false);
        if report.is_central() {
            Classification::Central
        } else {
            Classification::Generic
        }
    };
    Ok((class, report))
}
