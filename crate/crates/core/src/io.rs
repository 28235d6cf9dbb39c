//! State files and trajectory tables.
//!
//! A state file is a JSON object
//!
//! ```json
//! { "G": 1.0, "masses": [1, 1, 1], "positions": [[0,0,0], [1,0,0], [0,1,0]],
//!   "velocities": [[0,0,0], [0,0,0], [0,0,0]] }
//! ```
//!
//! where `G` defaults to 1 and `velocities` to zero.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::dynamics::Trajectory;
use crate::error::{Error, Result};
use crate::pairs::{MassVector, SystemState};
use crate::scalar::Real;
use crate::vector::Vec3;

fn one<T: Real>() -> T {
    T::one()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, bound(serialize = "T: Real", deserialize = "T: Real"))]
pub struct StateFile<T> {
    #[serde(rename = "G", default = "one")]
    pub g: T,
    pub masses: Vec<T>,
    pub positions: Vec<Vec3<T>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub velocities: Option<Vec<Vec3<T>>>,
}

impl<T: Real> StateFile<T> {
    /// Parses JSON text; `source_name` labels diagnostics.
    pub fn parse(text: &str, source_name: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            source_name: source_name.to_string(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn from_state(mv: &MassVector<T>, state: &SystemState<T>) -> Self {
        StateFile {
            g: state.gravitational_constant,
            masses: mv.masses().to_vec(),
            positions: state.positions.clone(),
            velocities: Some(state.velocities.clone()),
        }
    }

    /// Validated masses and state.
    pub fn into_system(self) -> Result<(MassVector<T>, SystemState<T>)> {
        let mv = MassVector::new(self.masses)?;
        let n = self.positions.len();
        let velocities = self.velocities.unwrap_or_else(|| vec![Vec3::zero(); n]);
        let state = SystemState::new(self.positions, velocities, self.g)?;
        if state.len() != mv.len() {
            return Err(Error::LengthMismatch {
                what: "positions",
                expected: mv.len(),
                got: state.len(),
            });
        }
        Ok((mv, state))
    }
}

/// Header of [`write_trajectory_csv`]: `t`, then `x,y,z,vx,vy,vz` per body
/// suffixed with the body number (from 1).
pub fn trajectory_header(n: usize) -> Vec<String> {
    let mut cols = vec!["t".to_string()];
    for b in 1..=n {
        for c in ["x", "y", "z", "vx", "vy", "vz"] {
            cols.push(format!("{c}{b}"));
        }
    }
    cols
}

/// Writes one row per stored sample, floats in shortest round-trip form.
pub fn write_trajectory_csv<T: Real, W: Write>(traj: &Trajectory<T>, mut out: W) -> std::io::Result<()> {
    let n = traj.states.first().map_or(0, SystemState::len);
    writeln!(out, "{}", trajectory_header(n).join(","))?;
    for (t, state) in traj.times.iter().zip(&traj.states) {
        let mut row = vec![format!("{t:?}")];
        for (r, v) in state.positions.iter().zip(&state.velocities) {
            for c in r.to_array().into_iter().chain(v.to_array()) {
                row.push(format!("{:?}", c.as_f64()));
            }
        }
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}
