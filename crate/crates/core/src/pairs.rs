//! Pair-space data model.
//!
//! A system of `N` bodies is described either by particle positions `r_i` or
//! by the pair vectors `q_ij = r_i - r_j`. Only the `i < j` half is stored;
//! reading `(j, i)` returns the negated vector. A set of pair vectors is
//! *realizable* when every triangle `q_ij + q_jk + q_ki` closes.
//!
//! Body indices are zero-based throughout the library.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::vector::Vec3;

/// Fraction of the configuration diameter below which two bodies collide.
pub const COLLISION_FRACTION: f64 = 1e-10;

/// Positive body masses and their total.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = "T: Real"))]
pub struct MassVector<T> {
    masses: Vec<T>,
    total: T,
}

impl<T: Real> MassVector<T> {
    pub fn new(masses: Vec<T>) -> Result<Self> {
        if masses.len() < 2 {
            return Err(Error::TooFewBodies {
                need: 2,
                got: masses.len(),
            });
        }
        if let Some((index, &m)) = masses
            .iter()
            .enumerate()
            .find(|(_, m)| !(m.is_finite() && **m > T::zero()))
        {
            return Err(Error::InvalidMass {
                index,
                value: m.as_f64(),
            });
        }
        let total = masses.iter().copied().sum();
        Ok(Self { masses, total })
    }

    /// `n` equal masses of value `m`.
    pub fn equal(n: usize, m: T) -> Result<Self> {
        Self::new(vec![m; n])
    }

    pub fn len(&self) -> usize {
        self.masses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masses.is_empty()
    }

    pub fn masses(&self) -> &[T] {
        &self.masses
    }

    #[inline]
    pub fn mass(&self, i: usize) -> T {
        self.masses[i]
    }

    /// Total mass `M`.
    #[inline]
    pub fn total(&self) -> T {
        self.total
    }

    /// Masses rearranged so that slot `s` holds `masses[ordering[s]]`.
    pub fn permuted(&self, ordering: &[usize]) -> Result<Self> {
        check_permutation(ordering, self.len())?;
        Self::new(ordering.iter().map(|&i| self.masses[i]).collect())
    }

    /// All masses multiplied by `c > 0`.
    pub fn scaled(&self, c: T) -> Result<Self> {
        Self::new(self.masses.iter().map(|&m| m * c).collect())
    }

    /// `μ_ij = m_i m_j / M`.
    pub fn reduced_pair_mass(&self, i: usize, j: usize) -> Result<T> {
        self.check_distinct(&[i, j])?;
        Ok(self.masses[i] * self.masses[j] / self.total)
    }

    /// `μ_ijk = m_i m_j m_k / M²`.
    pub fn reduced_triplet_mass(&self, i: usize, j: usize, k: usize) -> Result<T> {
        self.check_distinct(&[i, j, k])?;
        Ok(self.masses[i] * self.masses[j] * self.masses[k] / (self.total * self.total))
    }

    #[inline]
    pub(crate) fn mu(&self, i: usize, j: usize) -> T {
        self.masses[i] * self.masses[j] / self.total
    }

    fn check_distinct(&self, idx: &[usize]) -> Result<()> {
        check_indices(idx, self.len())
    }
}

/// Checks that `ordering` is a permutation of `0..n`.
pub fn check_permutation(ordering: &[usize], n: usize) -> Result<()> {
    if ordering.len() != n {
        return Err(Error::LengthMismatch {
            what: "ordering",
            expected: n,
            got: ordering.len(),
        });
    }
    let mut seen = vec![false; n];
    for &i in ordering {
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
        if std::mem::replace(&mut seen[i], true) {
            return Err(Error::RepeatedIndex(ordering.to_vec()));
        }
    }
    Ok(())
}

pub(crate) fn check_indices(idx: &[usize], n: usize) -> Result<()> {
    for (a, &i) in idx.iter().enumerate() {
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
        if idx[..a].contains(&i) {
            return Err(Error::RepeatedIndex(idx.to_vec()));
        }
    }
    Ok(())
}

/// Particle positions and velocities together with the gravitational constant.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = "T: Real"))]
pub struct SystemState<T> {
    pub positions: Vec<Vec3<T>>,
    pub velocities: Vec<Vec3<T>>,
    pub gravitational_constant: T,
}

impl<T: Real> SystemState<T> {
    /// Validates shapes, finiteness and `G > 0`.
    ///
    /// Coincident bodies are accepted here; operations that need finite
    /// separations report a [`Error::Collision`].
    pub fn new(positions: Vec<Vec3<T>>, velocities: Vec<Vec3<T>>, g: T) -> Result<Self> {
        if positions.len() < 2 {
            return Err(Error::TooFewBodies {
                need: 2,
                got: positions.len(),
            });
        }
        if velocities.len() != positions.len() {
            return Err(Error::LengthMismatch {
                what: "velocities",
                expected: positions.len(),
                got: velocities.len(),
            });
        }
        if !(g.is_finite() && g > T::zero()) {
            return Err(Error::InvalidParameter(format!(
                "gravitational constant must be positive, got {g}"
            )));
        }
        if positions.iter().chain(&velocities).any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(
                "positions and velocities must be finite".into(),
            ));
        }
        Ok(Self {
            positions,
            velocities,
            gravitational_constant: g,
        })
    }

    /// Bodies at rest.
    pub fn at_rest(positions: Vec<Vec3<T>>, g: T) -> Result<Self> {
        let v = vec![Vec3::zero(); positions.len()];
        Self::new(positions, v, g)
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Center-of-mass position and velocity.
    pub fn center_of_mass(&self, mv: &MassVector<T>) -> Result<(Vec3<T>, Vec3<T>)> {
        self.check_masses(mv)?;
        let m = mv.total();
        let r = self
            .positions
            .iter()
            .zip(mv.masses())
            .map(|(&r, &mi)| r * mi)
            .sum::<Vec3<T>>()
            / m;
        let v = self
            .velocities
            .iter()
            .zip(mv.masses())
            .map(|(&v, &mi)| v * mi)
            .sum::<Vec3<T>>()
            / m;
        Ok((r, v))
    }

    /// Same state with the center of mass moved to the origin and at rest.
    pub fn into_barycentric(mut self, mv: &MassVector<T>) -> Result<Self> {
        let (r, v) = self.center_of_mass(mv)?;
        self.positions.iter_mut().for_each(|p| *p -= r);
        self.velocities.iter_mut().for_each(|p| *p -= v);
        Ok(self)
    }

    /// `|Σ m_p r_p| ≤ tol · M · max|r_p|`.
    pub fn is_barycentric(&self, mv: &MassVector<T>, tol: T) -> Result<bool> {
        let (r, _) = self.center_of_mass(mv)?;
        let rmax = self
            .positions
            .iter()
            .map(|p| p.norm())
            .fold(T::zero(), T::max);
        Ok(r.norm() <= tol * rmax)
    }

    /// Largest distance between any two bodies.
    pub fn diameter(&self) -> T {
        let n = self.len();
        let mut d = T::zero();
        for i in 0..n {
            for j in i + 1..n {
                d = d.max((self.positions[i] - self.positions[j]).norm());
            }
        }
        d
    }

    /// Fails on the first pair closer than the collision tolerance.
    pub fn check_collisions(&self) -> Result<()> {
        let tol = self.diameter() * T::lit(COLLISION_FRACTION);
        let n = self.len();
        for i in 0..n {
            for j in i + 1..n {
                let d = (self.positions[i] - self.positions[j]).norm();
                if d <= tol {
                    return Err(Error::Collision {
                        i,
                        j,
                        distance: d.as_f64(),
                    });
                }
            }
        }
        Ok(())
    }

    pub(crate) fn check_masses(&self, mv: &MassVector<T>) -> Result<()> {
        if mv.len() != self.len() {
            return Err(Error::LengthMismatch {
                what: "masses",
                expected: self.len(),
                got: mv.len(),
            });
        }
        Ok(())
    }
}

#[inline]
fn pair_slot(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// Antisymmetric field of 3-vectors over body pairs.
///
/// Storage covers `i < j` only; `get(j, i)` is `-get(i, j)` and `get(i, i)`
/// is the zero vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PairVectors<T> {
    n: usize,
    upper: Vec<Vec3<T>>,
}

/// Relative positions `q_ij = r_i - r_j`.
pub type PairConfiguration<T> = PairVectors<T>;

impl<T: Real> PairVectors<T> {
    /// Differences `v_i - v_j` of per-body vectors.
    pub fn from_particles(points: &[Vec3<T>]) -> Self {
        let n = points.len();
        let mut upper = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                upper.push(points[i] - points[j]);
            }
        }
        Self { n, upper }
    }

    /// Builds a field from the `i < j` entries listed in lexicographic order.
    ///
    /// The vectors need not be realizable.
    pub fn from_upper(n: usize, upper: Vec<Vec3<T>>) -> Result<Self> {
        let expected = n * n.saturating_sub(1) / 2;
        if upper.len() != expected {
            return Err(Error::LengthMismatch {
                what: "pair vectors",
                expected,
                got: upper.len(),
            });
        }
        Ok(Self { n, upper })
    }

    /// Number of bodies.
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Vec3<T> {
        assert!(i < self.n && j < self.n, "pair ({i}, {j}) out of range");
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.upper[pair_slot(self.n, i, j)],
            std::cmp::Ordering::Greater => -self.upper[pair_slot(self.n, j, i)],
            std::cmp::Ordering::Equal => Vec3::zero(),
        }
    }

    /// `|q_ij|`.
    #[inline]
    pub fn distance(&self, i: usize, j: usize) -> T {
        self.get(i, j).norm()
    }

    /// Iterates `(i, j, q_ij)` over `i < j`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, Vec3<T>)> + '_ {
        let n = self.n;
        (0..n)
            .flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
            .zip(self.upper.iter())
            .map(|((i, j), &v)| (i, j, v))
    }

    /// Largest pair length.
    pub fn diameter(&self) -> T {
        self.upper.iter().map(|v| v.norm()).fold(T::zero(), T::max)
    }

    pub fn collision_tolerance(&self) -> T {
        self.diameter() * T::lit(COLLISION_FRACTION)
    }

    /// Returns `|q_ij|`, or a collision error when it is below tolerance.
    pub fn separation(&self, i: usize, j: usize) -> Result<T> {
        let d = self.distance(i, j);
        if d <= self.collision_tolerance() {
            return Err(Error::Collision {
                i: i.min(j),
                j: i.max(j),
                distance: d.as_f64(),
            });
        }
        Ok(d)
    }

    /// Fails on the first colliding pair.
    pub fn check_collisions(&self) -> Result<()> {
        let tol = self.collision_tolerance();
        for (i, j, q) in self.iter() {
            let d = q.norm();
            if d <= tol {
                return Err(Error::Collision {
                    i,
                    j,
                    distance: d.as_f64(),
                });
            }
        }
        Ok(())
    }

    /// Largest relative triangle-closure error over all triplets,
    /// `|q_ij + q_jk + q_ki| / (|q_ij| + |q_jk| + |q_ki|)`.
    ///
    /// A triplet whose three vectors are all zero counts as an infinite
    /// violation.
    pub fn verify_triangle(&self) -> Result<T> {
        if self.n < 3 {
            return Err(Error::TooFewBodies {
                need: 3,
                got: self.n,
            });
        }
        let mut worst = T::zero();
        for i in 0..self.n {
            for j in i + 1..self.n {
                for k in j + 1..self.n {
                    let (a, b, c) = (self.get(i, j), self.get(j, k), self.get(k, i));
                    let scale = a.norm() + b.norm() + c.norm();
                    let v = if scale > T::zero() {
                        (a + b + c).norm() / scale
                    } else {
                        T::infinity()
                    };
                    worst = worst.max(v);
                }
            }
        }
        Ok(worst)
    }

    /// Errors with [`Error::NotRealizable`] when the triangle violation exceeds `tol`.
    pub fn ensure_realizable(&self, tol: T) -> Result<()> {
        let v = self.verify_triangle()?;
        if v > tol {
            return Err(Error::NotRealizable {
                violation: v.as_f64(),
            });
        }
        Ok(())
    }

    /// Applies `f` to every stored vector, e.g. a rotation or a scaling.
    pub fn map(&self, f: impl Fn(Vec3<T>) -> Vec3<T>) -> Self {
        Self {
            n: self.n,
            upper: self.upper.iter().map(|&v| f(v)).collect(),
        }
    }
}

/// Pair positions together with pair velocities `q̇_ij = v_i - v_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct PairState<T> {
    pub configuration: PairConfiguration<T>,
    pub velocities: PairVectors<T>,
}

impl<T: Real> PairState<T> {
    pub fn n(&self) -> usize {
        self.configuration.n()
    }
}

/// Converts particle coordinates into pair coordinates.
pub fn pairs_from_particles<T: Real>(state: &SystemState<T>) -> PairState<T> {
    PairState {
        configuration: PairVectors::from_particles(&state.positions),
        velocities: PairVectors::from_particles(&state.velocities),
    }
}

/// `μ_ij = m_i m_j / M`.
pub fn reduced_pair_mass<T: Real>(mv: &MassVector<T>, i: usize, j: usize) -> Result<T> {
    mv.reduced_pair_mass(i, j)
}

/// `μ_ijk = m_i m_j m_k / M²`.
pub fn reduced_triplet_mass<T: Real>(mv: &MassVector<T>, i: usize, j: usize, k: usize) -> Result<T> {
    mv.reduced_triplet_mass(i, j, k)
}

fn assert_sizes<T: Real>(mv: &MassVector<T>, ps: &PairState<T>) {
    assert_eq!(mv.len(), ps.n(), "mass vector and pair state sizes differ");
}

/// Kinetic energy of relative motion,
/// `Σ ½ μ_ij |q̇_ij|² − Σ ½ μ_ijk |q̇_ij + q̇_jk + q̇_ki|²`.
///
/// The triplet term vanishes for realizable velocities but is still summed.
///
/// # Panics
/// If `mv` and `ps` describe different numbers of bodies.
pub fn pair_kinetic_energy<T: Real>(mv: &MassVector<T>, ps: &PairState<T>) -> T {
    let (pair, triplet) = pair_kinetic_terms(mv, ps);
    pair - triplet
}

/// The pair sum and the triplet correction of [`pair_kinetic_energy`], separately.
pub fn pair_kinetic_terms<T: Real>(mv: &MassVector<T>, ps: &PairState<T>) -> (T, T) {
    assert_sizes(mv, ps);
    let half = T::lit(0.5);
    let n = ps.n();
    let pair = ps
        .velocities
        .iter()
        .map(|(i, j, v)| half * mv.mu(i, j) * v.norm_squared())
        .sum::<T>();
    let m2 = mv.total() * mv.total();
    let mut triplet = T::zero();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let closure = ps.velocities.get(i, j) + ps.velocities.get(j, k) + ps.velocities.get(k, i);
                let mu3 = mv.mass(i) * mv.mass(j) * mv.mass(k) / m2;
                triplet = triplet + half * mu3 * closure.norm_squared();
            }
        }
    }
    (pair, triplet)
}

/// Pair energy `e_ij = ½ μ_ij |q̇_ij|² − G M μ_ij / |q_ij|`.
pub fn pair_energy<T: Real>(mv: &MassVector<T>, ps: &PairState<T>, i: usize, j: usize, g: T) -> Result<T> {
    assert_sizes(mv, ps);
    check_indices(&[i, j], ps.n())?;
    let q = ps.configuration.separation(i, j)?;
    let mu = mv.mu(i, j);
    let v2 = ps.velocities.get(i, j).norm_squared();
    Ok(T::lit(0.5) * mu * v2 - g * mv.total() * mu / q)
}

/// Sum of all pair energies. Equals the particle energy with the center-of-mass
/// term removed.
pub fn total_pair_energy<T: Real>(mv: &MassVector<T>, ps: &PairState<T>, g: T) -> Result<T> {
    assert_sizes(mv, ps);
    ps.configuration.check_collisions()?;
    let n = ps.n();
    let mut e = T::zero();
    for i in 0..n {
        for j in i + 1..n {
            e = e + pair_energy(mv, ps, i, j, g)?;
        }
    }
    Ok(e)
}

/// Pair angular momentum `L_ij = q_ij × μ_ij q̇_ij`.
///
/// # Panics
/// On out-of-range indices or mismatched sizes.
pub fn pair_angular_momentum<T: Real>(mv: &MassVector<T>, ps: &PairState<T>, i: usize, j: usize) -> Vec3<T> {
    assert_sizes(mv, ps);
    if i == j {
        return Vec3::zero();
    }
    ps.configuration.get(i, j).cross(ps.velocities.get(i, j)) * mv.mu(i, j)
}

/// `Σ_{i<j} L_ij`; for barycentric coordinates this is `Σ r_p × m_p v_p`.
pub fn total_pair_angular_momentum<T: Real>(mv: &MassVector<T>, ps: &PairState<T>) -> Vec3<T> {
    assert_sizes(mv, ps);
    ps.configuration
        .iter()
        .map(|(i, j, q)| q.cross(ps.velocities.get(i, j)) * mv.mu(i, j))
        .sum()
}
