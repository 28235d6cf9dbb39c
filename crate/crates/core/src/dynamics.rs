//! Newtonian dynamics in pair coordinates.
//!
//! The relative acceleration of a pair is the two-body Kepler term plus the
//! constraint force `J_ij / μ_ij = Σ_k (m_k / M) F_ijk`, where
//! `F_ijk = G M (q_ij/q_ij³ + q_jk/q_jk³ + q_ki/q_ki³)`. Trajectories are
//! integrated in particle coordinates; pair quantities are evaluated on the
//! samples.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pairs::{
    check_indices, pair_angular_momentum, pairs_from_particles, total_pair_angular_momentum,
    total_pair_energy, MassVector, PairConfiguration, PairVectors, SystemState,
};
use crate::scalar::Real;
use crate::vector::Vec3;

#[inline]
fn inverse_square_term<T: Real>(pc: &PairConfiguration<T>, a: usize, b: usize) -> Result<Vec3<T>> {
    let d = pc.separation(a, b)?;
    Ok(pc.get(a, b) / (d * d * d))
}

/// Triplet force term `F_ijk`.
///
/// Flips sign under any transposition of `(i, j, k)` and is unchanged by
/// cyclic shifts.
pub fn f_ijk<T: Real>(
    pc: &PairConfiguration<T>,
    i: usize,
    j: usize,
    k: usize,
    g: T,
    total_mass: T,
) -> Result<Vec3<T>> {
    check_indices(&[i, j, k], pc.n())?;
    let s = inverse_square_term(pc, i, j)? + inverse_square_term(pc, j, k)? + inverse_square_term(pc, k, i)?;
    Ok(s * (g * total_mass))
}

/// Constraint force per unit reduced mass, `J_ij / μ_ij = Σ_{k≠i,j} (m_k/M) F_ijk`.
pub fn j_over_mu<T: Real>(mv: &MassVector<T>, pc: &PairConfiguration<T>, i: usize, j: usize, g: T) -> Result<Vec3<T>> {
    check_sizes(mv, pc)?;
    check_indices(&[i, j], pc.n())?;
    let m = mv.total();
    let mut acc = Vec3::zero();
    for k in (0..pc.n()).filter(|&k| k != i && k != j) {
        acc += f_ijk(pc, i, j, k, g, m)? * (mv.mass(k) / m);
    }
    Ok(acc)
}

/// Relative acceleration `q̈_ij = −G M q_ij / q_ij³ + J_ij / μ_ij`.
pub fn pair_acceleration<T: Real>(
    mv: &MassVector<T>,
    pc: &PairConfiguration<T>,
    i: usize,
    j: usize,
    g: T,
) -> Result<Vec3<T>> {
    let kepler = inverse_square_term(pc, i, j)? * (-(g * mv.total()));
    Ok(kepler + j_over_mu(mv, pc, i, j, g)?)
}

/// All pair accelerations, stored for `i < j`.
pub fn pair_accelerations<T: Real>(mv: &MassVector<T>, pc: &PairConfiguration<T>, g: T) -> Result<PairVectors<T>> {
    check_sizes(mv, pc)?;
    pc.check_collisions()?;
    let upper = pc
        .iter()
        .map(|(i, j, _)| pair_acceleration(mv, pc, i, j, g))
        .collect::<Result<Vec<_>>>()?;
    PairVectors::from_upper(pc.n(), upper)
}

fn check_sizes<T: Real>(mv: &MassVector<T>, pc: &PairConfiguration<T>) -> Result<()> {
    if mv.len() != pc.n() {
        return Err(Error::LengthMismatch {
            what: "masses",
            expected: pc.n(),
            got: mv.len(),
        });
    }
    Ok(())
}

/// Direct Newtonian accelerations `a_i = Σ_{j≠i} G m_j (r_j − r_i)/|r_j − r_i|³`.
///
/// Independent of the pair formulation; used to cross-check it and to drive
/// the integrator.
pub fn particle_accelerations<T: Real>(mv: &MassVector<T>, positions: &[Vec3<T>], g: T) -> Result<Vec<Vec3<T>>> {
    let n = positions.len();
    if mv.len() != n {
        return Err(Error::LengthMismatch {
            what: "masses",
            expected: n,
            got: mv.len(),
        });
    }
    let mut diameter = T::zero();
    for i in 0..n {
        for j in i + 1..n {
            diameter = diameter.max((positions[i] - positions[j]).norm());
        }
    }
    let tol = diameter * T::lit(crate::pairs::COLLISION_FRACTION);
    let mut acc = vec![Vec3::zero(); n];
    for i in 0..n {
        for j in i + 1..n {
            let d = positions[j] - positions[i];
            let r = d.norm();
            if r <= tol {
                return Err(Error::Collision {
                    i,
                    j,
                    distance: r.as_f64(),
                });
            }
            let s = d * (g / (r * r * r));
            acc[i] += s * mv.mass(j);
            acc[j] -= s * mv.mass(i);
        }
    }
    Ok(acc)
}

/// Integration scheme.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Method {
    /// Classical fixed-step fourth-order Runge-Kutta.
    #[default]
    Rk4,
    /// RK4 with step-doubling error control; `tol` bounds the relative local
    /// error per accepted sub-step.
    Adaptive { tol: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorOptions {
    pub method: Method,
    /// The run stops with a collision flag once the minimum separation drops
    /// below this fraction of its initial value.
    pub collision_fraction: f64,
}

impl Default for IntegratorOptions {
    fn default() -> Self {
        Self {
            method: Method::Rk4,
            collision_fraction: 1e-3,
        }
    }
}

/// Why an integration stopped before the requested number of steps.
#[derive(Debug, Clone, PartialEq)]
pub struct Termination {
    pub time: f64,
    pub error: Error,
}

/// Sampled solution of the equations of motion.
#[derive(Debug, Clone)]
pub struct Trajectory<T> {
    pub times: Vec<T>,
    pub states: Vec<SystemState<T>>,
    pub method: Method,
    /// Output sampling interval.
    pub step: T,
    /// `Some` when the run was truncated, e.g. by a collision.
    pub termination: Option<Termination>,
}

impl<T: Real> Trajectory<T> {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.termination.is_none()
    }

    pub fn last(&self) -> &SystemState<T> {
        self.states.last().expect("trajectory holds the initial state")
    }
}

#[derive(Clone)]
struct Phase<T> {
    r: Vec<Vec3<T>>,
    v: Vec<Vec3<T>>,
}

impl<T: Real> Phase<T> {
    fn axpy(&self, h: T, dr: &[Vec3<T>], dv: &[Vec3<T>]) -> Self {
        Self {
            r: self.r.iter().zip(dr).map(|(&a, &b)| a + b * h).collect(),
            v: self.v.iter().zip(dv).map(|(&a, &b)| a + b * h).collect(),
        }
    }

    fn min_separation(&self) -> T {
        let n = self.r.len();
        let mut d = T::infinity();
        for i in 0..n {
            for j in i + 1..n {
                d = d.min((self.r[i] - self.r[j]).norm());
            }
        }
        d
    }
}

fn rk4_step<T: Real>(mv: &MassVector<T>, g: T, y: &Phase<T>, h: T) -> Result<Phase<T>> {
    let half = T::lit(0.5);
    let a1 = particle_accelerations(mv, &y.r, g)?;
    let y2 = y.axpy(h * half, &y.v, &a1);
    let a2 = particle_accelerations(mv, &y2.r, g)?;
    let y3 = y.axpy(h * half, &y2.v, &a2);
    let a3 = particle_accelerations(mv, &y3.r, g)?;
    let y4 = y.axpy(h, &y3.v, &a3);
    let a4 = particle_accelerations(mv, &y4.r, g)?;

    let sixth = h / T::lit(6.0);
    let two = T::lit(2.0);
    let n = y.r.len();
    let mut out = y.clone();
    for p in 0..n {
        out.r[p] += (y.v[p] + y2.v[p] * two + y3.v[p] * two + y4.v[p]) * sixth;
        out.v[p] += (a1[p] + a2[p] * two + a3[p] * two + a4[p]) * sixth;
    }
    Ok(out)
}

fn max_norm<T: Real>(xs: &[Vec3<T>]) -> T {
    xs.iter().map(|v| v.norm()).fold(T::zero(), T::max)
}

fn max_diff<T: Real>(a: &[Vec3<T>], b: &[Vec3<T>]) -> T {
    a.iter().zip(b).map(|(&x, &y)| (x - y).norm()).fold(T::zero(), T::max)
}

/// Advances `y` by `dt` with step doubling, updating the working sub-step `h`.
fn adaptive_interval<T: Real>(
    mv: &MassVector<T>,
    g: T,
    y: &Phase<T>,
    dt: T,
    h: &mut T,
    tol: T,
) -> Result<Phase<T>> {
    let half = T::lit(0.5);
    let min_h = dt * T::lit(1e-12);
    let mut y = y.clone();
    let mut remaining = dt;
    while remaining > T::zero() {
        let step = h.min(remaining);
        let full = rk4_step(mv, g, &y, step)?;
        let mid = rk4_step(mv, g, &y, step * half)?;
        let two_half = rk4_step(mv, g, &mid, step * half)?;

        let r_scale = max_norm(&two_half.r).max(T::min_positive_value());
        let v_scale = max_norm(&two_half.v).max(r_scale / dt);
        let err = (max_diff(&full.r, &two_half.r) / r_scale).max(max_diff(&full.v, &two_half.v) / v_scale);
        if err <= tol || step <= min_h {
            if step <= min_h && err > tol {
                return Err(Error::InvalidParameter(format!(
                    "adaptive step underflow (error {:e})",
                    err.as_f64()
                )));
            }
            y = two_half;
            remaining = remaining - step;
            if remaining <= dt * T::epsilon() {
                remaining = T::zero();
            }
            if err < tol / T::lit(64.0) {
                *h = (step * T::lit(2.0)).min(dt);
            }
        } else {
            *h = step * half;
        }
    }
    Ok(y)
}

/// Integrates the N-body equations from `state` for `steps` output intervals
/// of length `dt`.
///
/// A collision truncates the trajectory and is reported in
/// [`Trajectory::termination`]. Collisions are a pair closer than
/// `collision_fraction` times the initial minimum separation, non-finite
/// values, a fixed step over which some pair vector moves by more than its
/// own length, or a step-size underflow in adaptive mode. Invalid inputs are
/// errors.
pub fn integrate<T: Real>(
    mv: &MassVector<T>,
    state: &SystemState<T>,
    dt: T,
    steps: usize,
    options: IntegratorOptions,
) -> Result<Trajectory<T>> {
    state.check_masses(mv)?;
    state.check_collisions()?;
    if !(dt.is_finite() && dt > T::zero()) {
        return Err(Error::InvalidParameter(format!("time step must be positive, got {dt}")));
    }
    if let Method::Adaptive { tol } = options.method {
        if !(tol >= 100.0 * T::epsilon().as_f64()) {
            return Err(Error::InvalidParameter(format!(
                "adaptive tolerance {tol:e} is below 100 machine epsilons"
            )));
        }
    }

    let g = state.gravitational_constant;
    let mut y = Phase {
        r: state.positions.clone(),
        v: state.velocities.clone(),
    };
    let floor = y.min_separation() * T::lit(options.collision_fraction);
    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    times.push(T::zero());
    states.push(state.clone());
    let mut termination = None;
    let mut h = dt;

    for s in 1..=steps {
        let next = match options.method {
            Method::Rk4 => rk4_step(mv, g, &y, dt),
            Method::Adaptive { tol } => adaptive_interval(mv, g, &y, dt, &mut h, T::lit(tol)),
        };
        let t = dt * T::lit(s as f64);
        let next = match next {
            Ok(p) => p,
            Err(error) => {
                termination = Some(Termination { time: t.as_f64(), error });
                break;
            }
        };
        let finite = next.r.iter().chain(&next.v).all(|v| v.is_finite());
        let sep = next.min_separation();
        let jumped = match options.method {
            Method::Rk4 => unresolved_pair(&y.r, &next.r),
            Method::Adaptive { .. } => None,
        };
        if !finite || sep <= floor || jumped.is_some() {
            let (i, j) = jumped.or_else(|| closest_pair(&next.r)).unwrap_or((0, 1));
            termination = Some(Termination {
                time: t.as_f64(),
                error: Error::Collision {
                    i,
                    j,
                    distance: sep.as_f64(),
                },
            });
            break;
        }
        y = next;
        times.push(t);
        states.push(SystemState {
            positions: y.r.clone(),
            velocities: y.v.clone(),
            gravitational_constant: g,
        });
    }

    Ok(Trajectory {
        times,
        states,
        method: options.method,
        step: dt,
        termination,
    })
}

/// First pair whose separation vector moved by more than its length over
/// one step, i.e. a close approach the step did not resolve.
fn unresolved_pair<T: Real>(before: &[Vec3<T>], after: &[Vec3<T>]) -> Option<(usize, usize)> {
    let n = before.len();
    for i in 0..n {
        for j in i + 1..n {
            let q0 = before[i] - before[j];
            let q1 = after[i] - after[j];
            if (q1 - q0).norm() > q0.norm().min(q1.norm()) {
                return Some((i, j));
            }
        }
    }
    None
}

fn closest_pair<T: Real>(r: &[Vec3<T>]) -> Option<(usize, usize)> {
    let mut best = None;
    let mut d = T::infinity();
    for i in 0..r.len() {
        for j in i + 1..r.len() {
            let dij = (r[i] - r[j]).norm();
            if best.is_none() || dij < d {
                d = dij;
                best = Some((i, j));
            }
        }
    }
    best
}

/// Period `2π/√λ` of a rigid rotation with angular frequency `√λ`.
pub fn rotation_period<T: Real>(lambda: T) -> T {
    T::TAU() / lambda.sqrt()
}

/// Maximum relative drift of one pair angular momentum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairDrift {
    pub i: usize,
    pub j: usize,
    pub drift: f64,
}

/// Drift of pair and total conserved quantities along a trajectory, relative
/// to the initial sample.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConservationReport {
    pub pair_l_drift: Vec<PairDrift>,
    pub total_l_drift: f64,
    pub energy_drift: f64,
    pub samples: usize,
}

impl ConservationReport {
    pub fn max_pair_l_drift(&self) -> f64 {
        self.pair_l_drift.iter().map(|d| d.drift).fold(0.0, f64::max)
    }
}

/// Measures how far `|L_ij(t) − L_ij(0)|`, the total angular momentum and the
/// total pair energy wander from their initial values.
///
/// Angular-momentum drifts are divided by `max(|L(0)|, floor)`, with the floor
/// set to `1e-6 Σ μ_ij q_ij √(G M / q_ij)` at `t = 0` so pairs that start with
/// no angular momentum still get a finite relative measure.
pub fn conservation_report<T: Real>(mv: &MassVector<T>, traj: &Trajectory<T>, g: T) -> Result<ConservationReport> {
    if traj.len() < 2 {
        return Err(Error::InvalidParameter(
            "conservation report needs at least two samples".into(),
        ));
    }
    let first = pairs_from_particles(&traj.states[0]);
    let n = first.n();
    if mv.len() != n {
        return Err(Error::LengthMismatch {
            what: "masses",
            expected: n,
            got: mv.len(),
        });
    }
    let gm = g * mv.total();
    let floor = T::lit(1e-6)
        * first
            .configuration
            .iter()
            .map(|(i, j, q)| {
                let d = q.norm();
                mv.reduced_pair_mass(i, j).unwrap_or(T::zero()) * d * (gm / d).sqrt()
            })
            .filter(|x| x.is_finite())
            .sum::<T>();
    let floor = floor.max(T::min_positive_value());

    let l0: Vec<Vec3<T>> = first
        .configuration
        .iter()
        .map(|(i, j, _)| pair_angular_momentum(mv, &first, i, j))
        .collect();
    let total_l0 = total_pair_angular_momentum(mv, &first);
    let e0 = total_pair_energy(mv, &first, g)?;

    let mut pair_max = vec![T::zero(); l0.len()];
    let mut total_max = T::zero();
    let mut energy_max = T::zero();
    let e_denom = e0.abs().max(T::min_positive_value());
    let total_denom = total_l0.norm().max(floor);

    for state in &traj.states[1..] {
        let ps = pairs_from_particles(state);
        for (slot, (i, j, _)) in ps.configuration.iter().enumerate() {
            let l = pair_angular_momentum(mv, &ps, i, j);
            let denom = l0[slot].norm().max(floor);
            pair_max[slot] = pair_max[slot].max((l - l0[slot]).norm() / denom);
        }
        let lt = total_pair_angular_momentum(mv, &ps);
        total_max = total_max.max((lt - total_l0).norm() / total_denom);
        let e = total_pair_energy(mv, &ps, g)?;
        energy_max = energy_max.max((e - e0).abs() / e_denom);
    }

    let pair_l_drift = first
        .configuration
        .iter()
        .zip(pair_max)
        .map(|((i, j, _), d)| PairDrift { i, j, drift: d.as_f64() })
        .collect();
    Ok(ConservationReport {
        pair_l_drift,
        total_l_drift: total_max.as_f64(),
        energy_drift: energy_max.as_f64(),
        samples: traj.len(),
    })
}
