//! Small dense linear algebra: Gaussian elimination with partial pivoting.
//!
//! Matrices here are at most about 10×10, so rows are plain `Vec`s.

use crate::scalar::Real;

/// Square matrix stored row-major.
pub type Matrix<T> = Vec<Vec<T>>;

fn eliminate<T: Real>(a: &mut Matrix<T>, mut rhs: Option<&mut Vec<T>>) -> Option<T> {
    let n = a.len();
    let mut sign = T::one();
    for col in 0..n {
        let pivot = (col..n).max_by(|&r, &s| {
            a[r][col]
                .abs()
                .partial_cmp(&a[s][col].abs())
                .unwrap_or(std::cmp::Ordering::Equal)
        })?;
        if a[pivot][col] == T::zero() {
            return None;
        }
        if pivot != col {
            a.swap(pivot, col);
            if let Some(b) = rhs.as_deref_mut() {
                b.swap(pivot, col);
            }
            sign = -sign;
        }
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            if f == T::zero() {
                continue;
            }
            for c in col..n {
                let v = a[col][c];
                a[row][c] = a[row][c] - f * v;
            }
            if let Some(b) = rhs.as_deref_mut() {
                let v = b[col];
                b[row] = b[row] - f * v;
            }
        }
    }
    Some(sign)
}

/// Determinant by LU factorization; exactly zero for singular input.
pub fn determinant<T: Real>(a: &Matrix<T>) -> T {
    let mut m = a.clone();
    match eliminate(&mut m, None) {
        Some(sign) => (0..m.len()).fold(sign, |acc, i| acc * m[i][i]),
        None => T::zero(),
    }
}

/// Solves `a x = b`; `None` when `a` is singular.
pub fn solve<T: Real>(a: &Matrix<T>, b: &[T]) -> Option<Vec<T>> {
    let n = a.len();
    let mut m = a.clone();
    let mut rhs = b.to_vec();
    eliminate(&mut m, Some(&mut rhs))?;
    let mut x = vec![T::zero(); n];
    for i in (0..n).rev() {
        let s = (i + 1..n).fold(rhs[i], |acc, c| acc - m[i][c] * x[c]);
        x[i] = s / m[i][i];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}
