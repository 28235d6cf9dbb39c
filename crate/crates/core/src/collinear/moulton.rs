//! Ratio equations of a collinear central configuration and the Moulton
//! solver.

use serde::Serialize;

use super::coefficients::a_coefficients;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::pairs::{check_permutation, MassVector, SystemState};
use crate::scalar::Real;
use crate::vector::Vec3;

/// Largest N for which [`solve_all_orderings`] is allowed.
pub const MAX_ENUMERATED_BODIES: usize = 7;

fn check_line<T: Real>(x: &[T]) -> Result<()> {
    if x.len() < 3 {
        return Err(Error::TooFewBodies { need: 3, got: x.len() });
    }
    for (s, w) in x.windows(2).enumerate() {
        if !(w[0].is_finite() && w[1].is_finite()) {
            return Err(Error::InvalidParameter(format!("non-finite coordinate near slot {s}")));
        }
        if w[0] == w[1] {
            return Err(Error::Collision {
                i: s,
                j: s + 1,
                distance: 0.0,
            });
        }
        if w[0] > w[1] {
            return Err(Error::InvalidParameter(format!(
                "coordinates must be strictly increasing (slots {s} and {})",
                s + 1
            )));
        }
    }
    Ok(())
}

/// `a/|a|³` table and helpers for one line.
struct Line<T> {
    n: usize,
    a: Vec<T>,
    psi: Vec<T>,
}

impl<T: Real> Line<T> {
    fn new(x: &[T]) -> Result<Self> {
        let coeffs = a_coefficients(x)?;
        let n = x.len();
        let mut a = vec![T::zero(); n * n];
        let mut psi = vec![T::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let v = coeffs.get(i, j);
                    a[i * n + j] = v;
                    psi[i * n + j] = v.signum() / (v * v);
                }
            }
        }
        Ok(Line { n, a, psi })
    }

    fn h(&self, i: usize, j: usize, k: usize) -> T {
        let n = self.n;
        self.psi[i * n + j] + self.psi[j * n + k] + self.psi[k * n + i]
    }

    /// `M − Σ_{k≥2} m_k h_{0,1,k}`.
    fn lambda(&self, masses: &[T], total: T) -> T {
        total - (2..self.n).map(|k| masses[k] * self.h(0, 1, k)).sum::<T>()
    }

    fn residual(&self, masses: &[T], total: T, lambda: T, i: usize, j: usize) -> T {
        let n = self.n;
        let a = self.a[i * n + j];
        let coupling: T = (0..n)
            .filter(|&s| s != i && s != j)
            .map(|s| masses[s] * self.h(i, j, s))
            .sum();
        a * lambda - total * self.psi[i * n + j] + coupling
    }
}

/// Residuals of the ratio equations for masses in slot order and line
/// coordinates `x` (strictly increasing), one per pair `(i, j)`, `i < j`,
/// other than the reference pair `(0, 1)`, in lexicographic order:
///
/// `a_ij [M − Σ_{k≥2} m_k h_{0,1,k}] − M/a_ij² + Σ_{s≠i,j} m_s h_{i,j,s}`.
///
/// All vanish exactly on a collinear central configuration. They are additive,
/// `r_ij = r_0j − r_0i`, so the pairs `(0, j)` alone are independent.
pub fn collinear_residuals<T: Real>(mv: &MassVector<T>, x: &[T]) -> Result<Vec<T>> {
    check_masses(mv, x)?;
    check_line(x)?;
    let line = Line::new(x)?;
    let (m, total) = (mv.masses(), mv.total());
    let lambda = line.lambda(m, total);
    let n = x.len();
    let mut out = Vec::with_capacity(n * (n - 1) / 2 - 1);
    for i in 0..n {
        for j in i + 1..n {
            if (i, j) != (0, 1) {
                out.push(line.residual(m, total, lambda, i, j));
            }
        }
    }
    Ok(out)
}

fn check_masses<T: Real>(mv: &MassVector<T>, x: &[T]) -> Result<()> {
    if mv.len() != x.len() {
        return Err(Error::LengthMismatch {
            what: "coordinates",
            expected: mv.len(),
            got: x.len(),
        });
    }
    Ok(())
}

/// `max |r_ij| / M` over all pairs.
pub fn residual_norm<T: Real>(mv: &MassVector<T>, x: &[T]) -> Result<T> {
    let r = collinear_residuals(mv, x)?;
    Ok(r.iter().fold(T::zero(), |acc, v| acc.max(v.abs())) / mv.total())
}

/// Solver controls.
#[derive(Debug, Clone, PartialEq)]
pub struct MoultonOptions<T> {
    /// Target for `max |r_ij| / M`.
    pub tolerance: T,
    pub max_iterations: usize,
    /// Starting values for `x_2 … x_{N−1}`; equal spacing `x_k = k` when absent.
    pub initial: Option<Vec<T>>,
}

impl<T: Real> Default for MoultonOptions<T> {
    fn default() -> Self {
        MoultonOptions {
            tolerance: T::lit(T::SOLVER_TOL),
            max_iterations: 100,
            initial: None,
        }
    }
}

/// A collinear central configuration, normalized so that slot 0 sits at
/// `x = 0` and slot 1 at `x = 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = "T: Real"))]
pub struct CollinearSolution<T> {
    /// `ordering[s]` is the body placed in line slot `s` (0-based).
    pub ordering: Vec<usize>,
    /// Masses in slot order.
    pub masses: Vec<T>,
    /// Coordinates of every slot, `x[0] = 0`, `x[1] = 1`.
    pub x: Vec<T>,
    pub residual_norm: T,
    /// `q_23/q_12 = x_2 − 1`.
    pub alpha: T,
    /// `q_2N/q_12 = x_{N−1} − 1`.
    pub beta: T,
    /// `L/q_12 = x_{N−1}`.
    pub length_ratio: T,
    pub iterations: usize,
    /// Whether mass continuation from equal masses was needed.
    pub continuation: bool,
}

/// Margins of the `h` sign lemmas on a solved line; both are positive when
/// the lemmas hold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HSignMargins {
    /// `min_k h_{0,1,k} − (1 + 1/β² − 1/(1+β)²)` over interior slots `k`.
    pub first_pair: f64,
    /// `min_k −h_{1,N−1,k}` over interior slots `k`.
    pub far_pair: f64,
    /// Number of interior slots checked (`N − 3`).
    pub checked: usize,
}

impl<T: Real> CollinearSolution<T> {
    fn from_line(ordering: Vec<usize>, mv: &MassVector<T>, x: Vec<T>, iterations: usize, continuation: bool) -> Result<Self> {
        let residual_norm = residual_norm(mv, &x)?;
        let last = x[x.len() - 1];
        Ok(CollinearSolution {
            ordering,
            masses: mv.masses().to_vec(),
            alpha: x[2] - T::one(),
            beta: last - T::one(),
            length_ratio: last,
            x,
            residual_norm,
            iterations,
            continuation,
        })
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    /// Masses in slot order.
    pub fn mass_vector(&self) -> MassVector<T> {
        MassVector::new(self.masses.clone()).expect("solution masses were validated")
    }

    /// `h_{i,j,k}` on the solved line (slot indices).
    pub fn h(&self, i: usize, j: usize, k: usize) -> Result<T> {
        crate::pairs::check_indices(&[i, j, k], self.len())?;
        Ok(Line::new(&self.x)?.h(i, j, k))
    }

    /// Squared angular velocity `ω² = G (M − Σ m_k h_{0,1,k})` of the rigid
    /// rotation when `|q_01| = 1`; scales as `1/|q_01|³`.
    pub fn lambda(&self, g: T) -> T {
        let line = Line::new(&self.x).expect("solution coordinates are ordered");
        let total: T = self.masses.iter().copied().sum();
        g * line.lambda(&self.masses, total)
    }

    /// Slot positions along the x axis, barycentric, with `|q_01| = scale`.
    pub fn positions(&self, scale: T) -> Vec<Vec3<T>> {
        let total: T = self.masses.iter().copied().sum();
        let centre = self.masses.iter().zip(&self.x).map(|(&m, &x)| m * x).sum::<T>() / total;
        self.x
            .iter()
            .map(|&x| Vec3::new(scale * (x - centre), T::zero(), T::zero()))
            .collect()
    }

    /// Positions with velocities of rigid rotation about the z axis at the
    /// rate that makes the line a relative equilibrium.
    pub fn rotating_state(&self, scale: T, g: T) -> Result<SystemState<T>> {
        let omega = (self.lambda(g) / (scale * scale * scale)).sqrt();
        let positions = self.positions(scale);
        let velocities = positions
            .iter()
            .map(|r| Vec3::unit_z().cross(*r) * omega)
            .collect();
        SystemState::new(positions, velocities, g)
    }

    /// The mirror image: slots reversed and renormalized.
    pub fn reversed(&self) -> Result<Self> {
        let n = self.len();
        let last = self.x[n - 1];
        let unit = last - self.x[n - 2];
        let x: Vec<T> = self.x.iter().rev().map(|&v| (last - v) / unit).collect();
        let mut x = x;
        x[0] = T::zero();
        x[1] = T::one();
        let ordering: Vec<usize> = self.ordering.iter().rev().copied().collect();
        let mv = MassVector::new(self.masses.iter().rev().copied().collect())?;
        Self::from_line(ordering, &mv, x, self.iterations, self.continuation)
    }

    pub fn h_sign_margins(&self) -> HSignMargins {
        let line = Line::new(&self.x).expect("solution coordinates are ordered");
        let n = self.len();
        let one = T::one();
        let b = self.beta;
        let floor = one + one / (b * b) - one / ((one + b) * (one + b));
        let mut first = f64::INFINITY;
        let mut far = f64::INFINITY;
        for k in 2..n - 1 {
            first = first.min((line.h(0, 1, k) - floor).as_f64());
            far = far.min(-line.h(1, n - 1, k).as_f64());
        }
        HSignMargins {
            first_pair: first,
            far_pair: far,
            checked: n.saturating_sub(3),
        }
    }
}

enum Outcome<T> {
    Converged { x: Vec<T>, iterations: usize },
    Stalled { x: Vec<T>, norm: T, iterations: usize },
}

/// `r_0j` for `j = 2 … N−1`, scaled by `1/M`.
fn independent<T: Real>(m: &[T], total: T, x: &[T]) -> Option<Vec<T>> {
    let line = Line::new(x).ok()?;
    let lambda = line.lambda(m, total);
    let r: Vec<T> = (2..x.len()).map(|j| line.residual(m, total, lambda, 0, j) / total).collect();
    r.iter().all(|v| v.is_finite()).then_some(r)
}

fn max_abs<T: Real>(v: &[T]) -> T {
    v.iter().fold(T::zero(), |acc, r| acc.max(r.abs()))
}

fn sum_sq<T: Real>(v: &[T]) -> T {
    v.iter().map(|&r| r * r).sum()
}

fn jacobian<T: Real>(m: &[T], total: T, x: &[T]) -> Option<Matrix<T>> {
    let n = x.len();
    let u = n - 2;
    let rel = T::epsilon().cbrt();
    let mut jac = vec![vec![T::zero(); u]; u];
    let mut probe = x.to_vec();
    for c in 0..u {
        let s = c + 2;
        let left = x[s] - x[s - 1];
        let gap = if s + 1 < n { left.min(x[s + 1] - x[s]) } else { left };
        let d = rel * gap;
        probe[s] = x[s] + d;
        let plus = independent(m, total, &probe)?;
        probe[s] = x[s] - d;
        let minus = independent(m, total, &probe)?;
        probe[s] = x[s];
        for (row, (p, q)) in plus.iter().zip(&minus).enumerate() {
            jac[row][c] = (*p - *q) / (d + d);
        }
    }
    Some(jac)
}

/// Largest step fraction keeping every gap at least a tenth of its size.
fn ordered_fraction<T: Real>(x: &[T], dx: &[T]) -> T {
    let keep = T::lit(0.9);
    let mut t = T::one();
    for s in 1..x.len() - 1 {
        let gap = x[s + 1] - x[s];
        let shrink = dx[s] - dx[s + 1];
        if shrink > T::zero() {
            t = t.min(keep * gap / shrink);
        }
    }
    t
}

fn newton<T: Real>(m: &[T], total: T, start: Vec<T>, tol: T, max_iterations: usize) -> Outcome<T> {
    let n = start.len();
    let mut x = start;
    let Some(mut f) = independent(m, total, &x) else {
        return Outcome::Stalled { norm: T::infinity(), x, iterations: 0 };
    };
    // the independent residuals bound the full set by a factor of two
    let half = T::lit(0.5);
    let mut polish = 0;
    for it in 1..=max_iterations {
        let norm = max_abs(&f);
        if norm <= tol * half {
            polish += 1;
            if polish > 2 || norm == T::zero() {
                return Outcome::Converged { x, iterations: it - 1 };
            }
        }
        let Some(jac) = jacobian(m, total, &x) else {
            return Outcome::Stalled { x, norm, iterations: it };
        };
        let rhs: Vec<T> = f.iter().map(|&v| -v).collect();
        let Some(step) = linalg::solve(&jac, &rhs) else {
            return Outcome::Stalled { x, norm, iterations: it };
        };
        let mut dx = vec![T::zero(); n];
        dx[2..].copy_from_slice(&step);
        let mut t = ordered_fraction(&x, &dx);
        let merit = sum_sq(&f);
        let mut accepted = None;
        for _ in 0..40 {
            let trial: Vec<T> = x.iter().zip(&dx).map(|(&a, &b)| a + t * b).collect();
            if let Some(ft) = independent(m, total, &trial) {
                if sum_sq(&ft) < merit * (T::one() - T::lit(1e-4) * t) {
                    accepted = Some((trial, ft));
                    break;
                }
            }
            t = t * half;
        }
        match accepted {
            Some((xn, fn_)) => {
                x = xn;
                f = fn_;
            }
            None if norm <= tol * half => return Outcome::Converged { x, iterations: it },
            None => return Outcome::Stalled { x, norm, iterations: it },
        }
    }
    let norm = max_abs(&f);
    if norm <= tol * half {
        Outcome::Converged { x, iterations: max_iterations }
    } else {
        Outcome::Stalled { x, norm, iterations: max_iterations }
    }
}

fn equal_spacing<T: Real>(n: usize) -> Vec<T> {
    (0..n).map(|k| T::from_usize(k).expect("small integer")).collect()
}

fn start_line<T: Real>(n: usize, initial: &Option<Vec<T>>) -> Result<Vec<T>> {
    match initial {
        None => Ok(equal_spacing(n)),
        Some(tail) => {
            if tail.len() != n - 2 {
                return Err(Error::LengthMismatch {
                    what: "initial coordinates",
                    expected: n - 2,
                    got: tail.len(),
                });
            }
            let mut x = vec![T::zero(), T::one()];
            x.extend_from_slice(tail);
            check_line(&x)?;
            Ok(x)
        }
    }
}

/// Continuation from equal masses to the target masses at fixed total mass.
fn continuation<T: Real>(m: &[T], total: T, tol: T, max_iterations: usize) -> Option<(Vec<T>, usize)> {
    let n = m.len();
    let mean = total / T::from_usize(n).expect("small integer");
    let blend = |s: T| -> Vec<T> { m.iter().map(|&mk| mean + s * (mk - mean)).collect() };
    let mut used = 0;
    let mut x = match newton(&vec![mean; n], total, equal_spacing(n), tol, max_iterations) {
        Outcome::Converged { x, iterations } => {
            used += iterations;
            x
        }
        Outcome::Stalled { .. } => return None,
    };
    let mut s = T::zero();
    let mut ds = T::lit(0.25);
    let min_step = T::lit(1e-6);
    while s < T::one() {
        let next = (s + ds).min(T::one());
        match newton(&blend(next), total, x.clone(), tol, max_iterations) {
            Outcome::Converged { x: xn, iterations } => {
                used += iterations;
                x = xn;
                s = next;
                ds = (ds + ds).min(T::lit(0.5));
            }
            Outcome::Stalled { iterations, .. } => {
                used += iterations;
                ds = ds * T::lit(0.5);
                if ds < min_step {
                    return None;
                }
            }
        }
    }
    Some((x, used))
}

/// Collinear central configuration with body `ordering[s]` in slot `s`.
pub fn solve_moulton<T: Real>(mv: &MassVector<T>, ordering: &[usize]) -> Result<CollinearSolution<T>> {
    solve_moulton_with(mv, ordering, &MoultonOptions::default())
}

/// [`solve_moulton`] with explicit options.
///
/// Damped Newton from the initial line; if it stalls, the masses are deformed
/// from their mean to their target values at fixed total mass, re-solving at
/// each step.
pub fn solve_moulton_with<T: Real>(
    mv: &MassVector<T>,
    ordering: &[usize],
    options: &MoultonOptions<T>,
) -> Result<CollinearSolution<T>> {
    let n = mv.len();
    if n < 3 {
        return Err(Error::TooFewBodies { need: 3, got: n });
    }
    check_permutation(ordering, n)?;
    if !(options.tolerance > T::zero()) || options.max_iterations == 0 {
        return Err(Error::InvalidParameter("solver tolerance and iteration cap must be positive".into()));
    }
    let slots = mv.permuted(ordering)?;
    let (m, total) = (slots.masses(), slots.total());
    let start = start_line(n, &options.initial)?;
    let tol = options.tolerance;
    let (x, iterations, continued) = match newton(m, total, start, tol, options.max_iterations) {
        Outcome::Converged { x, iterations } => (x, iterations, false),
        Outcome::Stalled { x, norm, iterations } => match continuation(m, total, tol, options.max_iterations) {
            Some((x, used)) => (x, iterations + used, true),
            None => {
                return Err(Error::NonConvergence {
                    iterations,
                    residual: norm.as_f64(),
                    last_iterate: x.iter().map(|v| v.as_f64()).collect(),
                })
            }
        },
    };
    let mut x = x;
    if n == 3 {
        polish_three(m, &mut x);
    }
    let solution = CollinearSolution::from_line(ordering.to_vec(), &slots, x, iterations, continued)?;
    if !(solution.residual_norm <= tol) {
        return Err(Error::NonConvergence {
            iterations,
            residual: solution.residual_norm.as_f64(),
            last_iterate: solution.x.iter().map(|v| v.as_f64()).collect(),
        });
    }
    Ok(solution)
}

/// Refines `x_2` with Newton steps on the quintic form of the three-body
/// equation. When one mass dominates, `E` itself loses about `ε M α` to
/// cancellation, which the expanded coefficients avoid.
fn polish_three<T: Real>(m: &[T], x: &mut [T]) {
    let coeffs = super::quintic_coefficients(m[0], m[1], m[2]);
    let eval = |a: T| {
        coeffs
            .iter()
            .fold((T::zero(), T::zero()), |(q, dq), &c| (q * a + c, dq * a + q))
    };
    let mut alpha = x[2] - T::one();
    let (mut q, mut dq) = eval(alpha);
    for _ in 0..4 {
        if dq == T::zero() {
            break;
        }
        let next = alpha - q / dq;
        let (qn, dqn) = eval(next);
        if !(next > T::zero()) || !(qn.abs() < q.abs()) {
            break;
        }
        (alpha, q, dq) = (next, qn, dqn);
    }
    x[2] = T::one() + alpha;
}

/// Every distinct line arrangement of the bodies, one per mirror pair (the
/// first slot holds a lower body index than the last). Limited to
/// [`MAX_ENUMERATED_BODIES`] bodies.
pub fn solve_all_orderings<T: Real>(mv: &MassVector<T>) -> Result<Vec<CollinearSolution<T>>> {
    let n = mv.len();
    if n > MAX_ENUMERATED_BODIES {
        return Err(Error::InvalidParameter(format!(
            "enumeration limited to {MAX_ENUMERATED_BODIES} bodies, got {n}"
        )));
    }
    distinct_orderings(n)
        .into_iter()
        .map(|ordering| solve_moulton(mv, &ordering))
        .collect()
}

/// Permutations of `0..n` with `p[0] < p[n−1]`, in lexicographic order.
pub fn distinct_orderings(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if current.len() == n {
            if n < 2 || current[0] < current[n - 1] {
                out.push(current.clone());
            }
            return;
        }
        for b in 0..n {
            if !used[b] {
                used[b] = true;
                current.push(b);
                rec(n, current, used, out);
                current.pop();
                used[b] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collinear::bounds::euler_root;

    #[test]
    fn equal_masses_residuals_vanish() {
        let mv = MassVector::<f64>::equal(3, 1.0).unwrap();
        let r = collinear_residuals(&mv, &[0.0, 1.0, 2.0]).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|v| v.abs() < 1e-15));
    }

    #[test]
    fn three_body_residual_is_e_function() {
        let mv = MassVector::<f64>::new(vec![1.0, 2.0, 3.0]).unwrap();
        let alpha = 0.7;
        let r = collinear_residuals(&mv, &[0.0, 1.0, 1.0 + alpha]).unwrap();
        let e = crate::collinear::bounds::euler_e(alpha, 1.0, 2.0, 3.0).unwrap();
        assert!((r[1] - e).abs() < 1e-13, "{} vs {e}", r[1]);
        // r_02 = r_12 for three bodies since r_01 vanishes identically
        assert!((r[0] - r[1]).abs() < 1e-13);
    }

    #[test]
    fn bad_lines_are_rejected() {
        let mv = MassVector::equal(3, 1.0).unwrap();
        assert!(matches!(collinear_residuals(&mv, &[0.0, 1.0, 1.0]), Err(Error::Collision { .. })));
        assert!(collinear_residuals(&mv, &[0.0, 2.0, 1.0]).is_err());
        assert!(collinear_residuals(&mv, &[0.0, 1.0]).is_err());
    }

    #[test]
    fn three_body_solution_matches_root() {
        let mv = MassVector::<f64>::new(vec![3.0, 2.0, 1.0]).unwrap();
        let sol = solve_moulton(&mv, &[0, 1, 2]).unwrap();
        let root = euler_root(3.0, 2.0, 1.0).unwrap();
        assert!((sol.alpha - root).abs() < 1e-12);
        assert!(sol.residual_norm < 1e-12);
    }

    #[test]
    fn ordering_places_masses() {
        let mv = MassVector::<f64>::new(vec![3.0, 2.0, 1.0]).unwrap();
        let sol = solve_moulton(&mv, &[2, 0, 1]).unwrap();
        assert_eq!(sol.masses, vec![1.0, 3.0, 2.0]);
        let root = euler_root(1.0, 3.0, 2.0).unwrap();
        assert!((sol.alpha - root).abs() < 1e-12);
    }

    #[test]
    fn four_equal_masses_symmetric() {
        let mv = MassVector::<f64>::equal(4, 1.0).unwrap();
        let sol = solve_moulton(&mv, &[0, 1, 2, 3]).unwrap();
        assert!((sol.x[3] - sol.x[2] - 1.0).abs() < 1e-12);
        let margins = sol.h_sign_margins();
        assert!(margins.first_pair > 0.0 && margins.far_pair >= 0.0);
        assert_eq!(margins.checked, 1);
    }

    #[test]
    fn reversal_reflects_line() {
        let mv = MassVector::<f64>::new(vec![1.0, 4.0, 0.5, 2.0]).unwrap();
        let sol = solve_moulton(&mv, &[0, 1, 2, 3]).unwrap();
        let rev = sol.reversed().unwrap();
        let direct = solve_moulton(&mv, &[3, 2, 1, 0]).unwrap();
        for (a, b) in rev.x.iter().zip(&direct.x) {
            assert!((a - b).abs() < 1e-10);
        }
        assert!(rev.residual_norm < 1e-12);
    }

    #[test]
    fn lopsided_masses_converge() {
        let mv = MassVector::new(vec![1e-3, 50.0, 1e-3, 20.0, 1e-2]).unwrap();
        let sol = solve_moulton(&mv, &[0, 1, 2, 3, 4]).unwrap();
        assert!(sol.residual_norm < 1e-12);
        assert!(sol.x.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn orderings_enumeration() {
        assert_eq!(distinct_orderings(3).len(), 3);
        assert_eq!(distinct_orderings(4).len(), 12);
        let mv = MassVector::new(vec![1.0, 2.0, 3.0]).unwrap();
        assert_eq!(solve_all_orderings(&mv).unwrap().len(), 3);
        assert!(solve_all_orderings(&MassVector::equal(8, 1.0).unwrap()).is_err());
    }

    #[test]
    fn invalid_requests() {
        let mv = MassVector::equal(3, 1.0).unwrap();
        assert!(solve_moulton(&mv, &[0, 0, 1]).is_err());
        assert!(solve_moulton(&MassVector::equal(2, 1.0).unwrap(), &[0, 1]).is_err());
        let opts = MoultonOptions {
            initial: Some(vec![0.5]),
            ..MoultonOptions::default()
        };
        assert!(solve_moulton_with(&mv, &[0, 1, 2], &opts).is_err());
    }

    #[test]
    fn rotating_state_has_rigid_rate() {
        let mv = MassVector::<f64>::equal(3, 1.0).unwrap();
        let sol = solve_moulton(&mv, &[0, 1, 2]).unwrap();
        // equal masses at unit spacing: ω² = G(M − h) = 3 − 1.75
        assert!((sol.lambda(1.0) - 1.25).abs() < 1e-12);
        let state = sol.rotating_state(2.0, 1.0).unwrap();
        let omega = (1.25f64 / 8.0).sqrt();
        assert!((state.velocities[2].y - omega * state.positions[2].x).abs() < 1e-14);
    }
}
