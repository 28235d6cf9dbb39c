//! Three-body collinear function, its quartic bound equations, and the
//! N-body bounds obtained by merging masses into an effective third body.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pairs::MassVector;
use crate::roots::positive_root;
use crate::scalar::Real;

/// `1 + 1/x² − 1/(1+x)²`, the `h` value of three collinear bodies with gaps
/// `1` and `x`.
#[inline]
pub fn h3<T: Real>(x: T) -> T {
    let one = T::one();
    one + one / (x * x) - one / ((one + x) * (one + x))
}

/// Three-body collinear function
/// `E(x) = M (x − 1/x²) + (m1 − m3 x) [1 + 1/x² − 1/(1+x)²]`
/// with `M = m1 + m2 + m3`. Strictly increasing on `x > 0`; its root is the
/// gap ratio `q_23/q_12` of the rotating collinear solution.
pub fn euler_e<T: Real>(x: T, m1: T, m2: T, m3: T) -> Result<T> {
    if !(x > T::zero()) {
        return Err(Error::Domain {
            what: "collinear function E",
            value: x.as_f64(),
        });
    }
    Ok(euler_e_unchecked(x, m1, m2, m3))
}

#[inline]
pub(crate) fn euler_e_unchecked<T: Real>(x: T, m1: T, m2: T, m3: T) -> T {
    let m = m1 + m2 + m3;
    m * (x - T::one() / (x * x)) + (m1 - m3 * x) * h3(x)
}

/// [`euler_e`] for a three-element mass vector in line order.
pub fn euler_e_masses<T: Real>(x: T, mv3: &MassVector<T>) -> Result<T> {
    let [m1, m2, m3] = three(mv3)?;
    euler_e(x, m1, m2, m3)
}

fn three<T: Real>(mv: &MassVector<T>) -> Result<[T; 3]> {
    match mv.masses() {
        &[a, b, c] => Ok([a, b, c]),
        other => Err(Error::LengthMismatch {
            what: "masses",
            expected: 3,
            got: other.len(),
        }),
    }
}

/// Which ratio an effective three-body function bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum EffectiveMode {
    /// Masses `m_3 … m_N` merged onto the far end: lower bound on `β = q_2N/q_12`.
    Beta,
    /// Masses `m_4 … m_N` merged onto `m_3`: upper bound on `α = q_23/q_12`.
    Alpha,
}

/// Effective third mass `m3* = M − m1 − m2`.
pub fn effective_third_mass<T: Real>(mv: &MassVector<T>) -> Result<T> {
    if mv.len() < 3 {
        return Err(Error::TooFewBodies { need: 3, got: mv.len() });
    }
    Ok(mv.masses()[2..].iter().copied().sum())
}

/// The three-body function with `m3` replaced by `m3* = M − m1 − m2`, masses
/// in line order.
///
/// Both modes evaluate the same expression; the mode records which bound the
/// root `β*` (`E ≥ 0` at the true `β`) or `α*` (`E ≤ 0` at the true `α`)
/// represents.
pub fn effective_e<T: Real>(x: T, mv: &MassVector<T>, _mode: EffectiveMode) -> Result<T> {
    let m3 = effective_third_mass(mv)?;
    euler_e(x, mv.mass(0), mv.mass(1), m3)
}

/// Root of `E` for three masses in line order.
pub fn euler_root<T: Real>(m1: T, m2: T, m3: T) -> Result<T> {
    positive_root(|x| euler_e_unchecked(x, m1, m2, m3))
}

/// `β*`, root of the effective function; `L/q_12 ≥ 1 + β*`.
pub fn beta_star<T: Real>(mv: &MassVector<T>) -> Result<T> {
    let m3 = effective_third_mass(mv)?;
    euler_root(mv.mass(0), mv.mass(1), m3)
}

/// `α*`, root of the effective function; `α ≤ α*`.
///
/// Numerically equal to [`beta_star`]: both merge every mass past the second
/// into a single third body.
pub fn alpha_star<T: Real>(mv: &MassVector<T>) -> Result<T> {
    beta_star(mv)
}

/// Positive root of `r σ² (1+σ)² − 1 − 2σ = 0`.
pub fn quartic_sigma<T: Real>(ratio: T) -> Result<T> {
    check_ratio(ratio)?;
    let one = T::one();
    let two = T::lit(2.0);
    positive_root(|s: T| ratio * s * s * (one + s) * (one + s) / (one + two * s) - one)
}

/// Positive root of `τ⁴ + 2τ³ − r (1+τ)² = 0`.
pub fn quartic_tau<T: Real>(ratio: T) -> Result<T> {
    check_ratio(ratio)?;
    let one = T::one();
    let two = T::lit(2.0);
    positive_root(|t: T| t * t * t * (t + two) / ((one + t) * (one + t)) - ratio)
}

fn check_ratio<T: Real>(ratio: T) -> Result<()> {
    if !(ratio.is_finite() && ratio > T::zero()) {
        return Err(Error::Domain {
            what: "quartic mass ratio",
            value: ratio.as_f64(),
        });
    }
    Ok(())
}

/// `(σ_k, τ_k)` for body `k` of a three-body line, using the ratio
/// `(m_i + m_j)/m_k` of the other two masses to mass `k`. The two roots are
/// reciprocal.
pub fn quartic_bound_roots<T: Real>(mv3: &MassVector<T>, k: usize) -> Result<(T, T)> {
    let m = three(mv3)?;
    if k >= 3 {
        return Err(Error::IndexOutOfRange { index: k, n: 3 });
    }
    let others: T = (0..3).filter(|&i| i != k).map(|i| m[i]).sum();
    let r = others / m[k];
    Ok((quartic_sigma(r)?, quartic_tau(r)?))
}

/// Quantity a [`BoundBracket`] constrains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum BoundQuantity {
    /// `α = q_23/q_12` of a three-body line.
    Alpha3Body,
    /// `L/q_12 = 1 + β` of an N-body line.
    LengthRatio,
    /// `α = q_23/q_12` of an N-body line.
    AlphaNbody,
}

/// Interval known to contain a collinear ratio. `case` numbers the mass
/// regime that produced it (1-based, in the order the regimes are listed).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(bound(serialize = "T: Real"))]
pub struct BoundBracket<T> {
    pub quantity: BoundQuantity,
    #[serde(rename = "case_id")]
    pub case: u8,
    pub lower: Option<T>,
    pub upper: Option<T>,
}

impl<T: Real> BoundBracket<T> {
    /// Smallest violation of the bracket by `value` (negative when outside).
    pub fn slack(&self, value: T) -> T {
        let lo = self.lower.map_or(T::infinity(), |l| value - l);
        let hi = self.upper.map_or(T::infinity(), |u| u - value);
        lo.min(hi)
    }
}

/// Bracket on the three-body gap ratio `α` from the mass regime.
///
/// With `s = √(m3/m1)`:
/// 1. `m1 > 4/3 (m2 + m3)`: `[s, τ_1]`
/// 2. `4/3 (m2 + m3) ≥ m1 ≥ m3`: `[s, 1]`
/// 3. `4/3 (m1 + m2) ≥ m3 ≥ m1`: `[1, s]`
/// 4. `m3 > 4/3 (m1 + m2)`: `[σ_3, s]`
pub fn three_body_bracket<T: Real>(mv3: &MassVector<T>) -> Result<BoundBracket<T>> {
    let [m1, m2, m3] = three(mv3)?;
    let four_thirds = T::lit(4.0) / T::lit(3.0);
    let s = (m3 / m1).sqrt();
    let one = T::one();
    let (case, lower, upper) = if m1 > four_thirds * (m3 + m2) {
        (1, s, quartic_tau((m2 + m3) / m1)?)
    } else if m1 >= m3 {
        (2, s, one)
    } else if four_thirds * (m1 + m2) >= m3 {
        (3, one, s)
    } else {
        (4, quartic_sigma((m1 + m2) / m3)?, s)
    };
    Ok(BoundBracket {
        quantity: BoundQuantity::Alpha3Body,
        case,
        lower: Some(lower),
        upper: Some(upper),
    })
}

/// Lower bound on the line length `L/q_12`, masses in line order.
///
/// With `m3* = M − m1 − m2`:
/// 1. `2 m1 + m2 ≥ M`: `1 + √(m3*/m1)`
/// 2. `7/3 (m1 + m2) ≥ M ≥ 2 m1 + m2`: `2`
/// 3. `M > 7/3 (m1 + m2)`: `1 + σ*` with `σ*` the quartic root for
///    `(m1 + m2)/m3*`
pub fn length_bound<T: Real>(mv: &MassVector<T>) -> Result<BoundBracket<T>> {
    let m3 = effective_third_mass(mv)?;
    let (m1, m2, m) = (mv.mass(0), mv.mass(1), mv.total());
    let two = T::lit(2.0);
    let seven_thirds = T::lit(7.0) / T::lit(3.0);
    let (case, lower) = if two * m1 + m2 >= m {
        (1, T::one() + (m3 / m1).sqrt())
    } else if seven_thirds * (m1 + m2) >= m {
        (2, two)
    } else {
        (3, T::one() + quartic_sigma((m1 + m2) / m3)?)
    };
    Ok(BoundBracket {
        quantity: BoundQuantity::LengthRatio,
        case,
        lower: Some(lower),
        upper: None,
    })
}

/// Upper bound on `α = q_23/q_12`, masses in line order.
///
/// 1. `7/4 m1 > M`: `τ*`, the quartic root for `(m2 + m3*)/m1`
/// 2. `2 m1 + m2 ≥ M ≥ 7/4 m1`: `1`
/// 3. `M ≥ 2 m1 + m2`: `√(m3*/m1)`
pub fn alpha_bound<T: Real>(mv: &MassVector<T>) -> Result<BoundBracket<T>> {
    let m3 = effective_third_mass(mv)?;
    let (m1, m2, m) = (mv.mass(0), mv.mass(1), mv.total());
    let seven_fourths = T::lit(7.0) / T::lit(4.0);
    let (case, upper) = if seven_fourths * m1 > m {
        (1, quartic_tau((m2 + m3) / m1)?)
    } else if T::lit(2.0) * m1 + m2 >= m {
        (2, T::one())
    } else {
        (3, (m3 / m1).sqrt())
    };
    Ok(BoundBracket {
        quantity: BoundQuantity::AlphaNbody,
        case,
        lower: None,
        upper: Some(upper),
    })
}
