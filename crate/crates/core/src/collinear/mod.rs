//! Collinear central configurations.
//!
//! A line of `N` bodies is described by normalized coordinates: the body in
//! slot 0 sits at `x = 0`, slot 1 at `x = 1`, and the rest follow in strictly
//! increasing order. Slots are line positions; an ordering permutation says
//! which body occupies each slot.

pub mod bounds;
pub mod coefficients;
pub mod moulton;

pub use bounds::{
    alpha_bound, alpha_star, beta_star, effective_e, effective_third_mass, euler_e, euler_e_masses, euler_root, h3,
    length_bound, quartic_bound_roots, quartic_sigma, quartic_tau, three_body_bracket, BoundBracket, BoundQuantity,
    EffectiveMode,
};
pub use coefficients::{a_coefficient, a_coefficients, h_coefficient, ACoefficients};
pub use moulton::{
    collinear_residuals, distinct_orderings, residual_norm, solve_all_orderings, solve_moulton, solve_moulton_with,
    CollinearSolution, HSignMargins, MoultonOptions, MAX_ENUMERATED_BODIES,
};
pub use crate::roots::find_root_monotone;

/// Coefficients of the quintic `E(x) · x² (1+x)²` from highest degree down.
pub fn quintic_coefficients<T: crate::Real>(m1: T, m2: T, m3: T) -> [T; 6] {
    let c = |k: f64| T::lit(k);
    [
        m1 + m2,
        c(3.0) * m1 + c(2.0) * m2,
        c(3.0) * m1 + m2,
        -(m2 + c(3.0) * m3),
        -(c(2.0) * m2 + c(3.0) * m3),
        -(m2 + m3),
    ]
}

/// Horner evaluation of [`quintic_coefficients`].
pub fn quintic<T: crate::Real>(x: T, m1: T, m2: T, m3: T) -> T {
    quintic_coefficients(m1, m2, m3)
        .iter()
        .fold(T::zero(), |acc, &c| acc * x + c)
}
