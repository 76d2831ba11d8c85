//! Run configuration: defaults, file/flag loading and validation.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::asymptotics::{geometric_grid, Accuracy};
use crate::data::{Component, Datum, DatumSpec};
use crate::error::{Error, Result};
use crate::quadrature::{oscillation_floor, GridMode, GridSpec, DEFAULT_CUTOFF};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    #[default]
    Geometric,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub dim: usize,
    pub gamma: f64,
    pub u0: DatumSpec,
    pub u1: DatumSpec,
    pub t_min: f64,
    pub t_max: f64,
    pub t_points: usize,
    pub spacing: Spacing,
    /// Radial nodes per unit length; must meet the oscillation rule at `t_max`.
    pub resolution: Option<f64>,
    pub grid: Option<GridSpec>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub only: Option<String>,
    /// Attach wall-clock runtimes to records (makes reports non-reproducible).
    pub timings: bool,
}

pub fn standard_gaussian_spec() -> DatumSpec {
    DatumSpec::Single(Component::Gaussian {
        center: Vec::new(),
        sigma: 1.0,
        amplitude: 1.0,
    })
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            dim: 3,
            gamma: 0.0,
            u0: standard_gaussian_spec(),
            u1: standard_gaussian_spec(),
            t_min: 1e2,
            t_max: 1e5,
            t_points: 7,
            spacing: Spacing::Geometric,
            resolution: None,
            grid: None,
            format: Format::Json,
            out: None,
            only: None,
            timings: false,
        }
    }
}

/// Parses a datum given inline as JSON or as a path to a JSON file.
pub fn parse_datum_arg(arg: &str) -> Result<DatumSpec> {
    let trimmed = arg.trim_start();
    let text = if trimmed.starts_with('{') || trimmed.starts_with('[') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg)
            .map_err(|e| Error::Config(format!("cannot read datum file {arg}: {e}")))?
    };
    serde_json::from_str(&text)
        .map_err(|e| Error::Config(format!("invalid datum spec {arg:?}: {e}")))
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| Error::Config(format!("invalid config {}: {e}", path.display())))
    }

    pub fn validate(&self) -> Result<()> {
        if !(1..=3).contains(&self.dim) {
            return Err(Error::Config(format!(
                "dimension must be 1, 2 or 3, got {}",
                self.dim
            )));
        }
        if !(self.gamma.is_finite() && self.gamma >= 0.0) {
            return Err(Error::Config(format!(
                "gamma must be finite and >= 0, got {}",
                self.gamma
            )));
        }
        if !(self.t_min >= 1.0) {
            return Err(Error::Config(format!(
                "t_min must be >= 1, got {}",
                self.t_min
            )));
        }
        geometric_grid(self.t_min, self.t_max, self.t_points)?;
        let floor = oscillation_floor(self.t_max);
        for (what, npu) in [
            ("resolution", self.resolution),
            (
                "grid.nodes_per_unit",
                self.grid.as_ref().map(|g| g.nodes_per_unit),
            ),
        ] {
            if let Some(npu) = npu {
                if !(npu >= floor) {
                    return Err(Error::Config(format!(
                        "{what} {npu} is below the oscillation rule {floor:.0} nodes per unit at t_max = {}",
                        self.t_max
                    )));
                }
            }
        }
        if let Some(g) = &self.grid {
            if !(g.cutoff > 1.0 && g.cutoff.is_finite()) {
                return Err(Error::Config(format!(
                    "grid cutoff must exceed 1, got {}",
                    g.cutoff
                )));
            }
        }
        self.data()?;
        Ok(())
    }

    pub fn data(&self) -> Result<(Datum, Datum)> {
        let u0 = self
            .u0
            .build(self.dim)
            .map_err(|e| Error::Config(format!("u0: {e}")))?;
        let u1 = self
            .u1
            .build(self.dim)
            .map_err(|e| Error::Config(format!("u1: {e}")))?;
        Ok((u0, u1))
    }

    pub fn t_grid(&self) -> Result<Vec<f64>> {
        geometric_grid(self.t_min, self.t_max, self.t_points)
    }

    pub fn accuracy(&self) -> Accuracy {
        let mut acc = Accuracy::default();
        if let Some(g) = &self.grid {
            acc.nodes_per_unit = Some(g.nodes_per_unit);
            acc.cutoff = g.cutoff;
            acc.force_tensor = g.mode == GridMode::Tensor;
        } else {
            acc.cutoff = DEFAULT_CUTOFF;
        }
        if let Some(r) = self.resolution {
            acc.nodes_per_unit = Some(acc.nodes_per_unit.unwrap_or(0.0).max(r));
        }
        acc
    }
}
