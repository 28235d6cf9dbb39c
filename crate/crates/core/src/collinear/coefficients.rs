//! Distance-ratio coefficients of a collinear configuration.
//!
//! Bodies sit at coordinates `x_0 < x_1 < … < x_{N−1}` on a line, with body
//! slot 0 at one end. Every pair vector is a multiple of a reference pair,
//! `q_ij = a^{m,n}_{i,j} q_mn`, and with the orientation used here
//! `a^{m,n}_{i,j} = (x_j − x_i) / (x_n − x_m)`, so the coefficient is positive
//! when both pairs are listed in increasing order. The default reference is
//! the first pair `(0, 1)`; with `x_0 = 0, x_1 = 1` this gives
//! `a_{i,j} = x_j − x_i`, `a_{1,2} = α` and `a_{2,0} = −(1 + α)`.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// `a^{m,n}_{i,j}` for arbitrary reference pair `(m, n)`.
pub fn a_coefficient<T: Real>(x: &[T], reference: (usize, usize), i: usize, j: usize) -> Result<T> {
    let (m, n) = reference;
    crate::pairs::check_indices(&[m, n], x.len())?;
    if i >= x.len() || j >= x.len() {
        return Err(Error::IndexOutOfRange {
            index: i.max(j),
            n: x.len(),
        });
    }
    let d = x[n] - x[m];
    if d == T::zero() {
        return Err(Error::Collision {
            i: m.min(n),
            j: m.max(n),
            distance: 0.0,
        });
    }
    Ok((x[j] - x[i]) / d)
}

/// Antisymmetric table of `a^{0,1}_{i,j}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ACoefficients<T> {
    n: usize,
    values: Vec<T>,
}

impl<T: Real> ACoefficients<T> {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.values[i * self.n + j]
    }

    /// `a/|a|³`, erroring on a zero coefficient (coincident bodies).
    fn inverse_square(&self, i: usize, j: usize) -> Result<T> {
        let a = self.get(i, j);
        if a == T::zero() {
            return Err(Error::Collision {
                i: i.min(j),
                j: i.max(j),
                distance: 0.0,
            });
        }
        Ok(a.signum() / (a * a))
    }
}

/// All coefficients relative to the first pair.
///
/// Errors when any two coordinates coincide.
pub fn a_coefficients<T: Real>(x: &[T]) -> Result<ACoefficients<T>> {
    let n = x.len();
    if n < 2 {
        return Err(Error::TooFewBodies { need: 2, got: n });
    }
    for i in 0..n {
        for j in i + 1..n {
            if x[i] == x[j] {
                return Err(Error::Collision { i, j, distance: 0.0 });
            }
        }
    }
    let d = x[1] - x[0];
    let mut values = vec![T::zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            values[i * n + j] = (x[j] - x[i]) / d;
        }
    }
    Ok(ACoefficients { n, values })
}

/// `h_{i,j,k} = a_ij/|a_ij|³ + a_jk/|a_jk|³ + a_ki/|a_ki|³`.
///
/// Any permutation of `(i, j, k)` multiplies it by the permutation's sign.
pub fn h_coefficient<T: Real>(a: &ACoefficients<T>, i: usize, j: usize, k: usize) -> Result<T> {
    crate::pairs::check_indices(&[i, j, k], a.n())?;
    Ok(a.inverse_square(i, j)? + a.inverse_square(j, k)? + a.inverse_square(k, i)?)
}
