//! Least-squares rate fits on transformed axes.

use serde::Serialize;

use crate::error::{Error, Result};

/// Axis transforms for `value ~ f(t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Transform {
    /// `log v` against `log t`: slope is a power-law exponent.
    PowerLaw,
    /// `v` against `log t`: slope is the coefficient of `log t`.
    LogLinear,
    /// `log v` against `log log t`: slope is the exponent of `log t`.
    IteratedLog,
}

impl Transform {
    fn abscissa(self, t: f64) -> f64 {
        match self {
            Transform::PowerLaw | Transform::LogLinear => t.ln(),
            Transform::IteratedLog => t.ln().ln(),
        }
    }

    fn ordinate(self, v: f64) -> f64 {
        match self {
            Transform::PowerLaw | Transform::IteratedLog => v.ln(),
            Transform::LogLinear => v,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RateFit {
    pub transform: Transform,
    pub slope: f64,
    pub intercept: f64,
    pub max_residual: f64,
    pub samples: Vec<(f64, f64)>,
}

pub const MIN_POINTS: usize = 4;
pub const MIN_DECADES: f64 = 2.0;

pub fn fit_rate(samples: &[(f64, f64)], transform: Transform) -> Result<RateFit> {
    if samples.len() < MIN_POINTS {
        return Err(Error::InvalidSamples(format!(
            "at least {MIN_POINTS} points, got {}",
            samples.len()
        )));
    }
    let (lo, hi) = samples.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), s| {
        (lo.min(s.0), hi.max(s.0))
    });
    if !(lo > 0.0) || (hi / lo).log10() < MIN_DECADES - 1e-9 {
        return Err(Error::InvalidSamples(format!(
            "samples spanning {MIN_DECADES} decades in t, got [{lo}, {hi}]"
        )));
    }
    if transform == Transform::IteratedLog && lo <= 1.0 {
        return Err(Error::InvalidSamples(
            "t > 1 for an iterated-log fit".into(),
        ));
    }
    if transform != Transform::LogLinear && samples.iter().any(|s| !(s.1 > 0.0)) {
        return Err(Error::InvalidSamples("positive values".into()));
    }
    if samples.iter().any(|s| !s.1.is_finite()) {
        return Err(Error::InvalidSamples("finite values".into()));
    }
    let pts: Vec<(f64, f64)> = samples
        .iter()
        .map(|&(t, v)| (transform.abscissa(t), transform.ordinate(v)))
        .collect();
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let max_residual = pts
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).abs())
        .fold(0.0, f64::max);
    Ok(RateFit {
        transform,
        slope,
        intercept,
        max_residual,
        samples: samples.to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> Vec<f64> {
        (0..7).map(|i| 10f64.powf(2.0 + 0.5 * i as f64)).collect()
    }

    #[test]
    fn exact_power_law() {
        let s: Vec<_> = grid()
            .into_iter()
            .map(|t| (t, 3.0 * t.powf(-0.5)))
            .collect();
        let f = fit_rate(&s, Transform::PowerLaw).unwrap();
        assert!((f.slope + 0.5).abs() < 1e-12);
        assert!((f.intercept - 3f64.ln()).abs() < 1e-10);
        assert!(f.max_residual < 1e-12);
    }

    #[test]
    fn exact_log_law() {
        let s: Vec<_> = grid().into_iter().map(|t| (t, 2.0 * t.ln())).collect();
        let f = fit_rate(&s, Transform::LogLinear).unwrap();
        assert!((f.slope - 2.0).abs() < 1e-12);
        let s: Vec<_> = grid().into_iter().map(|t| (t, t.ln().sqrt())).collect();
        assert!((fit_rate(&s, Transform::IteratedLog).unwrap().slope - 0.5).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_samples() {
        let s: Vec<_> = grid().into_iter().map(|t| (t, -t)).collect();
        assert!(fit_rate(&s, Transform::PowerLaw).is_err());
        assert!(fit_rate(&s[..3], Transform::LogLinear).is_err());
        let narrow: Vec<_> = (0..5).map(|i| (100.0 + i as f64, 1.0)).collect();
        assert!(fit_rate(&narrow, Transform::PowerLaw).is_err());
    }
}
