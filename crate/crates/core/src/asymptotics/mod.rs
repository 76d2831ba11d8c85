//! Expansion profiles, remainder norms, rate fits and the large-time
//! verifiers built on them.
//!
//! All norms are `L^2` norms in frequency space. Ball norms (`|xi| <= 1`) are
//! computed with oscillation-resolved grids whose resolution scales with
//! `t`; integrands decaying like `exp(-t |xi|^2)` are cut where that factor
//! drops below `exp(-200)`.

pub mod appendix;
pub mod bounds;
pub mod fit;
pub mod norms;
pub mod profile;

pub use appendix::{
    appendix_growth, appendix_limit, growth_bracket, log_coefficient_bracket, log_moment_constant,
    Bracket,
};
pub use bounds::{
    case_split, damped_weight_norm, kernel_lower_bounds, kernel_upper_bounds, lower_bound_constant,
    profile_decomposition, radial_constant, CaseSplitReport, CaseTag, KernelLowerBounds,
    KernelUpperBounds, ProfileDecomposition,
};
pub use fit::{fit_rate, RateFit, Transform};
pub use norms::{
    damped_taylor_remainder, expansion_admissible, leading_term_gap, remainder_norm_thm31,
    remainder_norm_thm31_unchecked, remainder_norm_thm32, solution_norm, thm33_sandwich,
    upper_bound_38, Sandwich, SplitNorm, UpperBoundRatio,
};
pub use profile::ExpansionProfile;

use crate::error::{Error, Result};
use crate::quadrature::{Grid, GridMode, DEFAULT_ANGULAR, DEFAULT_CUTOFF};

/// Resolution knobs shared by every verifier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Accuracy {
    /// Multiplies the default radial and angular resolution.
    pub refine: f64,
    pub angular: usize,
    pub cutoff: f64,
    /// Explicit radial resolution; raised to the oscillation rule if lower.
    pub nodes_per_unit: Option<f64>,
    /// Use the spherical product rule even for radial integrands.
    pub force_tensor: bool,
}

impl Default for Accuracy {
    fn default() -> Self {
        Self {
            refine: 1.0,
            angular: DEFAULT_ANGULAR,
            cutoff: DEFAULT_CUTOFF,
            nodes_per_unit: None,
            force_tensor: false,
        }
    }
}

impl Accuracy {
    /// Same settings at `factor` times the resolution (Richardson doubling uses 2).
    pub fn refined(&self, factor: f64) -> Self {
        Self {
            refine: self.refine * factor,
            ..*self
        }
    }

    /// Grid for integrands oscillating like `sin(t |xi|)` under `exp(-t |xi|^2)`.
    pub fn grid(&self, dim: usize, radial: bool, t: f64) -> Result<Grid> {
        let mode = if radial && !self.force_tensor {
            GridMode::Radial
        } else {
            GridMode::Tensor
        };
        let g = Grid::for_time(dim, mode, t, 1.0)?;
        let base = self.nodes_per_unit.unwrap_or(0.0).max(g.nodes_per_unit);
        let angular = ((self.angular as f64) * self.refine).round().max(2.0) as usize;
        Ok(g.with_resolution(base * self.refine)
            .with_angular(angular)
            .with_cutoff(self.cutoff))
    }
}

/// `points` geometrically spaced times from `t_min` to `t_max`.
pub fn geometric_grid(t_min: f64, t_max: f64, points: usize) -> Result<Vec<f64>> {
    if !(t_min > 0.0 && t_max >= t_min && t_max.is_finite()) || points < 2 {
        return Err(Error::Config(format!(
            "t-grid needs 0 < t_min <= t_max and at least 2 points, got [{t_min}, {t_max}] x {points}"
        )));
    }
    let ratio = (t_max / t_min).ln() / (points - 1) as f64;
    Ok((0..points)
        .map(|i| {
            if i + 1 == points {
                t_max
            } else {
                t_min * (ratio * i as f64).exp()
            }
        })
        .collect())
}

/// `{10^2, 10^2.5, ..., 10^5}`.
pub fn default_t_grid() -> Vec<f64> {
    (0..7).map(|i| 10f64.powf(2.0 + 0.5 * i as f64)).collect()
}

/// `true` when consecutive values strictly decrease.
pub fn strictly_decreasing(values: &[f64]) -> bool {
    values.windows(2).all(|w| w[1] < w[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        let g = geometric_grid(100.0, 1e5, 7).unwrap();
        let d = default_t_grid();
        for (a, b) in g.iter().zip(&d) {
            assert!((a / b - 1.0).abs() < 1e-12);
        }
        assert_eq!(g[6], 1e5);
        assert!(geometric_grid(10.0, 1.0, 3).is_err());
        assert!(geometric_grid(1.0, 10.0, 1).is_err());
    }

    #[test]
    fn accuracy_grid_meets_oscillation_rule() {
        let acc = Accuracy {
            nodes_per_unit: Some(100.0),
            ..Accuracy::default()
        };
        let g = acc.grid(2, false, 1e4).unwrap();
        assert!(g.validate().is_ok());
        let fine = acc.refined(2.0).grid(2, false, 1e4).unwrap();
        assert_eq!(fine.nodes_per_unit, 2.0 * g.nodes_per_unit);
        assert_eq!(fine.angular, 2 * g.angular);
    }
}
