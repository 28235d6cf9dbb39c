#![allow(dead_code)]

use pairspace::{MassVector, SystemState, Vec3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.gen_range(lo.ln()..hi.ln()).exp()
}

pub fn random_vec(rng: &mut ChaCha8Rng, r: f64) -> Vec3<f64> {
    Vec3::new(rng.gen_range(-r..r), rng.gen_range(-r..r), rng.gen_range(-r..r))
}

pub fn random_masses(rng: &mut ChaCha8Rng, n: usize) -> MassVector<f64> {
    MassVector::new((0..n).map(|_| log_uniform(rng, 0.1, 10.0)).collect()).unwrap()
}

fn min_separation(p: &[Vec3<f64>]) -> f64 {
    let mut d = f64::INFINITY;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            d = d.min((p[i] - p[j]).norm());
        }
    }
    d
}

pub fn random_points(rng: &mut ChaCha8Rng, n: usize, min_sep: f64) -> Vec<Vec3<f64>> {
    loop {
        let p: Vec<Vec3<f64>> = (0..n).map(|_| random_vec(rng, 1.0)).collect();
        if min_separation(&p) >= min_sep {
            return p;
        }
    }
}

/// Barycentric state with well separated bodies.
pub fn random_state(rng: &mut ChaCha8Rng, n: usize) -> (MassVector<f64>, SystemState<f64>) {
    let mv = random_masses(rng, n);
    let positions = random_points(rng, n, 0.1);
    let velocities = (0..n).map(|_| random_vec(rng, 1.0)).collect();
    let g = log_uniform(rng, 0.5, 2.0);
    let state = SystemState::new(positions, velocities, g)
        .unwrap()
        .into_barycentric(&mv)
        .unwrap();
    (mv, state)
}

/// Newtonian accelerations by direct summation.
pub fn particle_accelerations(m: &[f64], r: &[Vec3<f64>], g: f64) -> Vec<Vec3<f64>> {
    (0..r.len())
        .map(|i| {
            let mut a = Vec3::zero();
            for j in 0..r.len() {
                if j != i {
                    let d = r[j] - r[i];
                    let d3 = d.norm().powi(3);
                    a += d * (g * m[j] / d3);
                }
            }
            a
        })
        .collect()
}

/// Kinetic minus potential energy in the frame given.
pub fn particle_energy(m: &[f64], s: &SystemState<f64>) -> f64 {
    let n = m.len();
    let mut e = 0.0;
    for i in 0..n {
        e += 0.5 * m[i] * s.velocities[i].norm_squared();
        for j in i + 1..n {
            e -= s.gravitational_constant * m[i] * m[j] / (s.positions[i] - s.positions[j]).norm();
        }
    }
    e
}

pub fn particle_angular_momentum(m: &[f64], s: &SystemState<f64>) -> Vec3<f64> {
    (0..m.len())
        .map(|i| s.positions[i].cross(s.velocities[i] * m[i]))
        .fold(Vec3::zero(), |a, b| a + b)
}

/// Three-body collinear function, written out directly.
pub fn e_oracle(x: f64, m1: f64, m2: f64, m3: f64) -> f64 {
    let m = m1 + m2 + m3;
    m * (x - 1.0 / (x * x)) + (m1 - m3 * x) * (1.0 + 1.0 / (x * x) - 1.0 / ((1.0 + x) * (1.0 + x)))
}

/// Plain bisection on a bracket that is known to change sign.
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let flo = f(lo);
    assert!(flo * f(hi) < 0.0, "bracket [{lo}, {hi}] has no sign change");
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) * flo > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Root of the three-body function: E → −∞ at 0⁺ and grows without bound.
pub fn e_root_oracle(m1: f64, m2: f64, m3: f64) -> f64 {
    let mut hi = 1.0;
    while e_oracle(hi, m1, m2, m3) <= 0.0 {
        hi *= 2.0;
    }
    bisect(|x| e_oracle(x, m1, m2, m3), 1e-9, hi)
}

/// `E · x² (1+x)²` expanded by hand.
pub fn quintic_oracle(x: f64, m1: f64, m2: f64, m3: f64) -> f64 {
    let c = [
        m1 + m2,
        3.0 * m1 + 2.0 * m2,
        3.0 * m1 + m2,
        -(m2 + 3.0 * m3),
        -(2.0 * m2 + 3.0 * m3),
        -(m2 + m3),
    ];
    c.iter().fold(0.0, |acc, &k| acc * x + k)
}

pub fn equilateral(side: f64) -> Vec<Vec3<f64>> {
    let h = side * 3f64.sqrt() / 2.0;
    vec![
        Vec3::new(0.0, 0.0, 0.0),
        Vec3::new(side, 0.0, 0.0),
        Vec3::new(0.5 * side, h, 0.0),
    ]
}

pub fn tetrahedron() -> Vec<Vec3<f64>> {
    vec![
        Vec3::new(1.0, 1.0, 1.0),
        Vec3::new(1.0, -1.0, -1.0),
        Vec3::new(-1.0, 1.0, -1.0),
        Vec3::new(-1.0, -1.0, 1.0),
    ]
}

pub fn square() -> Vec<Vec3<f64>> {
    vec![
        Vec3::new(0.0, 0.0, 0.0),
        Vec3::new(1.0, 0.0, 0.0),
        Vec3::new(1.0, 1.0, 0.0),
        Vec3::new(0.0, 1.0, 0.0),
    ]
}

/// Equilateral triangle with a fourth body at its centroid.
pub fn centred_triangle() -> Vec<Vec3<f64>> {
    let mut p = equilateral(1.0);
    let c = (p[0] + p[1] + p[2]) / 3.0;
    p.push(c);
    p
}

/// Rotation by `angle` about the unit `axis`.
pub fn rotate(v: Vec3<f64>, axis: Vec3<f64>, angle: f64) -> Vec3<f64> {
    let (s, c) = angle.sin_cos();
    v * c + axis.cross(v) * s + axis * (axis.dot(v) * (1.0 - c))
}
