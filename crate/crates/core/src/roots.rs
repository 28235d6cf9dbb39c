//! Bracketed bisection for monotone scalar functions.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Upper-end doublings tried before giving up on a sign change.
pub const MAX_EXPANSIONS: usize = 200;

const MAX_BISECTIONS: usize = 4096;

/// Root of a monotone `f` by bisection to relative width `rel_tol`.
///
/// When `f(lo)` and `f(hi)` share a sign the upper end is pushed out
/// geometrically (`hi ← lo + 2 (hi − lo)`) until they do not.
pub fn find_root_monotone<T: Real, F>(f: F, lo: T, hi: T, rel_tol: T) -> Result<T>
where
    F: Fn(T) -> T,
{
    if !(lo < hi) {
        return Err(Error::InvalidParameter(format!("empty bracket [{lo}, {hi}]")));
    }
    let mut lo = lo;
    let mut hi = hi;
    let mut f_lo = f(lo);
    let mut f_hi = f(hi);
    if f_lo == T::zero() {
        return Ok(lo);
    }
    let mut expansions = 0;
    while f_lo.signum() == f_hi.signum() && f_hi != T::zero() {
        if expansions == MAX_EXPANSIONS || !f_hi.is_finite() {
            return Err(Error::NoSignChange {
                lo: lo.as_f64(),
                hi: hi.as_f64(),
            });
        }
        let width = hi - lo;
        lo = hi;
        f_lo = f_hi;
        hi = hi + width * T::lit(2.0);
        f_hi = f(hi);
        expansions += 1;
    }
    if f_hi == T::zero() {
        return Ok(hi);
    }

    for _ in 0..MAX_BISECTIONS {
        let mid = lo + (hi - lo) * T::lit(0.5);
        if mid <= lo || mid >= hi || hi - lo <= rel_tol * lo.abs().max(hi.abs()) {
            break;
        }
        let f_mid = f(mid);
        if f_mid == T::zero() {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo + (hi - lo) * T::lit(0.5))
}

/// Positive root of a function increasing from negative values near zero,
/// starting from the bracket `[1e-6, 1]`.
pub fn positive_root<T: Real, F>(f: F) -> Result<T>
where
    F: Fn(T) -> T,
{
    find_root_monotone(f, T::lit(1e-6), T::one(), T::lit(T::BISECTION_TOL))
}
