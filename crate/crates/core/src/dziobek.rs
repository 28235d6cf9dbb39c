//! Mass-independent relations satisfied by every non-collinear central
//! configuration.
//!
//! Projecting the centrality equations of the pairs `(α, j)` onto a probe
//! direction `h` gives, for each fixed `j`, a homogeneous linear system in the
//! masses `m_β` (`β ≠ j`) with matrix
//!
//! ```text
//! Γ^j_αβ = A_αβj (Q_αβj · h),   Γ^j_αα = 0.
//! ```
//!
//! Positive masses solve it only if `det Γ^j = 0` for every `j`. The
//! relations are necessary, not sufficient.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::central::{a_scale, a_term, q_cross};
use crate::error::{Error, Result};
use crate::linalg::{determinant, Matrix};
use crate::pairs::PairConfiguration;
use crate::scalar::Real;
use crate::vector::Vec3;

/// Default threshold on the scaled determinants.
pub const DEFAULT_TOLERANCE: f64 = 1e-8;

/// Default number of probe directions.
pub const DEFAULT_TRIALS: usize = 8;

/// Default probe seed.
pub const DEFAULT_SEED: u64 = 0x5eed;

/// `Γ^j` for one probe.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = "T: Real"))]
pub struct GammaMatrix<T> {
    /// Excluded body.
    pub j: usize,
    /// Bodies labelling rows and columns, increasing.
    pub indices: Vec<usize>,
    pub entries: Matrix<T>,
    pub probe: Vec3<T>,
    /// Euclidean norm of each row of entry bounds
    /// `(1/q_αβ³ + 1/q_βj³) |Q_αβj · h|`.
    pub row_scales: Vec<T>,
}

impl<T: Real> GammaMatrix<T> {
    pub fn determinant(&self) -> T {
        determinant(&self.entries)
    }

    /// `det Γ^j` over the product of row scales, in `[0, 1]` in magnitude.
    /// `None` when some row scale vanishes (probe orthogonal to every `Q`
    /// of that row).
    pub fn scaled_determinant(&self) -> Option<T> {
        let scale = self.row_scales.iter().fold(T::one(), |acc, &s| acc * s);
        (scale > T::zero()).then(|| self.determinant() / scale)
    }
}

pub fn gamma_matrix<T: Real>(pc: &PairConfiguration<T>, j: usize, h: Vec3<T>) -> Result<GammaMatrix<T>> {
    let n = pc.n();
    if n < 3 {
        return Err(Error::TooFewBodies { need: 3, got: n });
    }
    if j >= n {
        return Err(Error::IndexOutOfRange { index: j, n });
    }
    if !h.is_finite() {
        return Err(Error::InvalidParameter("probe must be finite".into()));
    }
    pc.check_collisions()?;
    let indices: Vec<usize> = (0..n).filter(|&k| k != j).collect();
    let mut entries = vec![vec![T::zero(); n - 1]; n - 1];
    let mut row_scales = Vec::with_capacity(n - 1);
    for (r, &alpha) in indices.iter().enumerate() {
        let mut sq = T::zero();
        for (c, &beta) in indices.iter().enumerate() {
            if r == c {
                continue;
            }
            let qbar = q_cross(pc, alpha, beta, j)?.dot(h);
            entries[r][c] = a_term(pc, alpha, beta, j)? * qbar;
            let bound = a_scale(pc, alpha, beta, j)? * qbar.abs();
            sq = sq + bound * bound;
        }
        row_scales.push(sq.sqrt());
    }
    Ok(GammaMatrix {
        j,
        indices,
        entries,
        probe: h,
        row_scales,
    })
}

/// Scaled `det Γ^j` for every `j`; `None` entries mark rows degenerate for
/// this probe.
pub fn determinant_relations<T: Real>(pc: &PairConfiguration<T>, h: Vec3<T>) -> Result<Vec<Option<T>>> {
    (0..pc.n())
        .map(|j| gamma_matrix(pc, j, h).map(|g| g.scaled_determinant()))
        .collect()
}

/// The four explicit four-body relations
///
/// ```text
/// A_321 A_431 A_241 − A_421 A_231 A_341
/// A_132 A_412 A_342 − A_142 A_312 A_432
/// A_413 A_123 A_243 − A_213 A_423 A_143
/// A_314 A_124 A_234 − A_214 A_324 A_134
/// ```
///
/// (bodies numbered from 1 here), each divided by the sum of the magnitude
/// bounds `Π (1/q³ + 1/q³)` of its two products.
pub fn dziobek_products<T: Real>(pc: &PairConfiguration<T>) -> Result<[T; 4]> {
    if pc.n() != 4 {
        return Err(Error::LengthMismatch {
            what: "bodies",
            expected: 4,
            got: pc.n(),
        });
    }
    pc.check_collisions()?;
    type Triple = [usize; 3];
    const TERMS: [([Triple; 3], [Triple; 3]); 4] = [
        ([[3, 2, 1], [4, 3, 1], [2, 4, 1]], [[4, 2, 1], [2, 3, 1], [3, 4, 1]]),
        ([[1, 3, 2], [4, 1, 2], [3, 4, 2]], [[1, 4, 2], [3, 1, 2], [4, 3, 2]]),
        ([[4, 1, 3], [1, 2, 3], [2, 4, 3]], [[2, 1, 3], [4, 2, 3], [1, 4, 3]]),
        ([[3, 1, 4], [1, 2, 4], [2, 3, 4]], [[2, 1, 4], [3, 2, 4], [1, 3, 4]]),
    ];
    let product = |t: &[Triple; 3]| -> Result<(T, T)> {
        t.iter().try_fold((T::one(), T::one()), |(p, s), &[i, k, j]| {
            Ok((p * a_term(pc, i - 1, k - 1, j - 1)?, s * a_scale(pc, i - 1, k - 1, j - 1)?))
        })
    };
    let mut out = [T::zero(); 4];
    for (slot, (plus, minus)) in out.iter_mut().zip(TERMS.iter()) {
        let (p, sp) = product(plus)?;
        let (q, sq) = product(minus)?;
        *slot = (p - q) / (sp + sq);
    }
    Ok(out)
}

/// Unit normal of a planar configuration, `None` if the bodies are collinear
/// or not coplanar.
pub fn plane_normal<T: Real>(pc: &PairConfiguration<T>) -> Option<Vec3<T>> {
    let crosses = all_crosses(pc);
    let largest = crosses
        .iter()
        .copied()
        .max_by(|a, b| a.norm().partial_cmp(&b.norm()).unwrap_or(std::cmp::Ordering::Equal))?;
    let normal = largest.normalized()?;
    let tol = T::lit(T::ZERO_TOL) * largest.norm();
    crosses
        .iter()
        .all(|q| q.cross(normal).norm() <= tol)
        .then_some(normal)
}

fn all_crosses<T: Real>(pc: &PairConfiguration<T>) -> Vec<Vec3<T>> {
    let n = pc.n();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                out.push(pc.get(i, j).cross(pc.get(j, k)));
            }
        }
    }
    out
}

/// Probe directions: the plane normal for planar configurations, the three
/// coordinate axes, then seeded random unit vectors, truncated to `trials`.
pub fn probes<T: Real>(pc: &PairConfiguration<T>, trials: usize, seed: u64) -> Vec<Vec3<T>> {
    let mut out: Vec<Vec3<T>> = plane_normal(pc).into_iter().collect();
    out.extend([Vec3::unit_x(), Vec3::unit_y(), Vec3::unit_z()]);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while out.len() < trials {
        let v = Vec3::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0f64..1.0),
        );
        let r = v.norm();
        if r > 0.1 && r <= 1.0 {
            out.push((v / r).cast());
        }
    }
    out.truncate(trials.max(1));
    out
}

/// Per-probe scaled determinants.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeResult {
    pub probe: [f64; 3],
    /// One entry per `j`; `None` when the probe is degenerate for that `j`.
    pub scaled_determinants: Vec<Option<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    pub tolerance: f64,
    /// Largest scaled `|det Γ^j|` over the usable probes, per `j`.
    pub max_per_j: Vec<f64>,
    pub max_scaled_determinant: f64,
    pub probes: Vec<ProbeResult>,
    /// Probes skipped because some `Γ^j` had a zero row scale.
    pub degenerate_probes: usize,
}

/// Checks every determinant relation over several probes.
///
/// Admissible when every scaled determinant is at most `tol` for every
/// usable probe. Collinear configurations have no usable probe and are
/// rejected.
pub fn shape_admissible<T: Real>(
    pc: &PairConfiguration<T>,
    trials: usize,
    tol: T,
    seed: u64,
) -> Result<AdmissibilityReport> {
    if !(tol >= T::zero()) {
        return Err(Error::InvalidParameter("tolerance must be non-negative".into()));
    }
    let n = pc.n();
    let mut max_per_j = vec![0.0f64; n];
    let mut results = Vec::new();
    let mut degenerate = 0;
    for h in probes(pc, trials, seed) {
        let dets = determinant_relations(pc, h)?;
        if dets.iter().any(Option::is_none) {
            degenerate += 1;
        } else {
            for (m, d) in max_per_j.iter_mut().zip(&dets) {
                *m = m.max(d.map_or(0.0, |v| v.abs().as_f64()));
            }
        }
        results.push(ProbeResult {
            probe: h.cast::<f64>().to_array(),
            scaled_determinants: dets.iter().map(|d| d.map(|v| v.as_f64())).collect(),
        });
    }
    if degenerate == results.len() {
        return Err(Error::InvalidParameter(
            "no usable probe direction (configuration is collinear)".into(),
        ));
    }
    let worst = max_per_j.iter().copied().fold(0.0, f64::max);
    Ok(AdmissibilityReport {
        admissible: worst <= tol.as_f64(),
        tolerance: tol.as_f64(),
        max_per_j,
        max_scaled_determinant: worst,
        probes: results,
        degenerate_probes: degenerate,
    })
}
