//! Optional TOML configuration; command-line flags override file values.
//!
//! ```toml
//! [output]
//! dir = "out"
//! seed = 7
//! workers = 4
//!
//! [integrator]
//! rel_tol = 1e-10
//! abs_tol = 1e-12
//!
//! [hamiltonian]
//! tau = 0.0
//! eta = 0.0
//! b = 1.0
//! mu = "i"
//!
//! [curve]
//! family = "circular"
//! delta = "0.25"
//! rho = 1.0
//! omega = 6.283185307179586
//!
//! [sweep]
//! family = "elliptical"
//! alpha = 0.0
//! delta_min = -1.0
//! delta_max = 6.0
//! delta_count = 400
//! rho_min = 0.0
//! rho_max = 4.0
//! rho_count = 300
//! ```

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::cnum::CNum;

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub output: Option<OutputSection>,
    pub integrator: Option<IntegratorSection>,
    pub hamiltonian: Option<HamiltonianSection>,
    pub curve: Option<CurveSection>,
    pub sweep: Option<SweepSection>,
}

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub dir: Option<PathBuf>,
    pub seed: Option<u64>,
    pub workers: Option<usize>,
}

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegratorSection {
    pub rel_tol: Option<f64>,
    pub abs_tol: Option<f64>,
    pub initial_step: Option<f64>,
    pub max_step: Option<f64>,
    pub max_steps: Option<usize>,
}

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HamiltonianSection {
    pub tau: Option<CNum>,
    pub eta: Option<CNum>,
    pub b: Option<CNum>,
    pub mu: Option<CNum>,
}

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSection {
    pub family: Option<String>,
    pub delta: Option<CNum>,
    pub rho: Option<f64>,
    pub alpha: Option<f64>,
    pub omega: Option<f64>,
    pub speed: Option<f64>,
    pub b: Option<CNum>,
    pub eta: Option<CNum>,
}

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub family: Option<String>,
    pub alpha: Option<f64>,
    pub omega: Option<f64>,
    pub speed: Option<f64>,
    pub b: Option<CNum>,
    pub delta_min: Option<f64>,
    pub delta_max: Option<f64>,
    pub delta_count: Option<usize>,
    pub rho_min: Option<f64>,
    pub rho_max: Option<f64>,
    pub rho_count: Option<usize>,
    pub class_tol: Option<f64>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, String> {
        let Some(path) = path else { return Ok(Self::default()) };
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {}", path.display(), e))?;
        toml::from_str(&text).map_err(|e| format!("bad config {}: {}", path.display(), e))
    }

    pub fn output(&self) -> OutputSection {
        self.output.clone().unwrap_or_default()
    }
    pub fn integrator(&self) -> IntegratorSection {
        self.integrator.clone().unwrap_or_default()
    }
    pub fn hamiltonian(&self) -> HamiltonianSection {
        self.hamiltonian.clone().unwrap_or_default()
    }
    pub fn curve(&self) -> CurveSection {
        self.curve.clone().unwrap_or_default()
    }
    pub fn sweep(&self) -> SweepSection {
        self.sweep.clone().unwrap_or_default()
    }
}
