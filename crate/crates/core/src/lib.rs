//! Pair-space formulation of the Newtonian N-body problem.
//!
//! Bodies are described through the pair vectors `q_ij = r_i − r_j` instead
//! of their positions. The crate provides
//!
//! - conversion between particle and pair coordinates, reduced masses, pair
//!   energies and pair angular momenta ([`pairs`]);
//! - pair equations of motion and a fixed/adaptive step integrator
//!   ([`dynamics`]);
//! - tests and classification of central configurations ([`central`]);
//! - collinear (Moulton) configurations and their bounds ([`collinear`]);
//! - the mass-independent determinant relations ([`dziobek`]).
//!
//! Every routine is generic over the scalar type through [`Real`]; the
//! aliases below fix it to `f64`. Body indices are zero-based throughout.

pub mod central;
pub mod collinear;
pub mod dynamics;
pub mod dziobek;
pub mod error;
pub mod io;
pub mod linalg;
pub mod pairs;
pub mod roots;
pub mod scalar;
pub mod vector;

pub use central::{
    centrality_report, centrality_residual, classify, collinearity, fit_lambda, Classification, CentralityReport,
};
pub use collinear::{solve_moulton, CollinearSolution};
pub use dynamics::{integrate, IntegratorOptions, Method, Trajectory};
pub use error::{Error, Result};
pub use pairs::{pairs_from_particles, MassVector, PairConfiguration, PairState, PairVectors, SystemState};
pub use scalar::Real;
pub use vector::Vec3;

pub type Vec3f = Vec3<f64>;
pub type MassVector64 = MassVector<f64>;
pub type SystemState64 = SystemState<f64>;
pub type PairConfiguration64 = PairConfiguration<f64>;
pub type PairState64 = PairState<f64>;
pub type Trajectory64 = Trajectory<f64>;
pub type CentralityReport64 = CentralityReport<f64>;
pub type CollinearSolution64 = CollinearSolution<f64>;
pub type BoundBracket64 = collinear::BoundBracket<f64>;
