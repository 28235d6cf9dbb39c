//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Floating point type the pair-space machinery is generic over.
///
/// Implemented for `f32` and `f64`. The associated tolerances are the
/// defaults used when a caller does not pass an explicit one; they are
/// expressed relative to the type's precision.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Sum
    + Default
    + Debug
    + Display
    + Serialize
    + DeserializeOwned
    + Send
    + Sync
    + 'static
{
    /// Convergence target for the collinear Newton solver (dimensionless).
    const SOLVER_TOL: f64;
    /// Relative width at which monotone bisection stops.
    const BISECTION_TOL: f64;
    /// Default threshold for zero tests on dimensionless residuals.
    const ZERO_TOL: f64;

    /// Lossless-enough conversion from an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    const SOLVER_TOL: f64 = 1e-12;
    const BISECTION_TOL: f64 = 1e-14;
    const ZERO_TOL: f64 = 1e-10;
}

impl Real for f32 {
    const SOLVER_TOL: f64 = 1e-5;
    const BISECTION_TOL: f64 = 1e-6;
    const ZERO_TOL: f64 = 1e-4;
}
