//! Remainder norms, leading-term gaps and solution norms.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::fit::{fit_rate, RateFit, Transform};
use super::profile::ExpansionProfile;
use super::Accuracy;
use crate::data::Datum;
use crate::error::{Error, Result};
use crate::quadrature::{integrate_ball, integrate_rn, integrate_shell, Grid, GridMode, TailBound};
use crate::symbols::{eval_pair, solution_hat, Symbol, SymbolQuery};

/// Exterior contributions below this fraction of the ball part are skipped.
const EXTERIOR_FRACTION: f64 = 1e-12;

/// Admissible `gamma` for the `E_1` expansion: `> 1/2` in 1-D, `> 0` in 2-D,
/// `>= 0` from 3-D on.
pub fn expansion_admissible(n: usize, gamma: f64) -> bool {
    match n {
        1 => gamma > 0.5,
        2 => gamma > 0.0,
        _ => gamma >= 0.0,
    }
}

fn check_time(t: f64) -> Result<()> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::InvalidQuery(format!(
            "time {t} must be finite and positive"
        )));
    }
    Ok(())
}

fn same_dim(a: &Datum, b: &Datum) -> Result<usize> {
    if a.dim() != b.dim() {
        return Err(Error::InvalidDatum(format!(
            "data live in different dimensions ({} vs {})",
            a.dim(),
            b.dim()
        )));
    }
    Ok(a.dim())
}

fn radius(xi: &[f64]) -> f64 {
    xi.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn finite(v: f64, what: &str) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::InvalidQuery(format!(
            "{what} evaluated to a non-finite value"
        )))
    }
}

/// `int_{|xi| <= 1} |g|^2` on the oscillation-resolved grid for time `t`.
pub(crate) fn ball_square<G>(dim: usize, radial: bool, t: f64, acc: &Accuracy, g: G) -> Result<f64>
where
    G: Fn(&[f64]) -> Result<Complex64> + Sync,
{
    let grid = acc.grid(dim, radial, t)?;
    let v = integrate_ball(&grid, |xi| g(xi).map(|z| z.norm_sqr()).unwrap_or(f64::NAN))?;
    finite(v, "ball integral")
}

fn exterior_square<G>(dim: usize, radial: bool, t: f64, acc: &Accuracy, g: G) -> Result<f64>
where
    G: Fn(&[f64]) -> Result<Complex64> + Sync,
{
    let mut grid: Grid = acc.grid(dim, radial, t)?;
    grid.envelope = None;
    let v = integrate_shell(
        &grid,
        |xi| g(xi).map(|z| z.norm_sqr()).unwrap_or(f64::NAN),
        1.0,
        grid.cutoff,
    )?;
    finite(v, "exterior integral")
}

/// Certified bound on `||E0 u0_hat + E1 (|xi|^2/2 u0_hat + u1_hat) - lead||_{L^2(|xi| >= 1)}`,
/// where `lead` is `P1 e^{-t|xi|^2/2} sin(t|xi|)/|xi|` when `leading` is set.
///
/// Uses `|E0| <= e^{-t/2}`, `|E1| <= t e^{-t/2}` and `|xi|^2 |E1| / 2 <= 4.5 max(t, 1) e^{-t/2}`
/// for `|xi| >= 1`, and Plancherel for the data.
pub fn exterior_bound(u0: &Datum, u1: &Datum, t: f64, leading: bool) -> f64 {
    let n = u0.dim();
    let plancherel = (2.0 * PI).powf(n as f64 / 2.0);
    let tt = t.max(1.0);
    let symbols =
        (-0.5 * t).exp() * plancherel * (u0.l2_norm() * (1.0 + 4.5 * tt) + tt * u1.l2_norm());
    let lead = if leading {
        u1.mass().abs()
            * TailBound {
                scale: 1.0,
                rate: t,
            }
            .mass_beyond(n, 1.0)
            .sqrt()
    } else {
        0.0
    };
    symbols + lead
}

/// An `L^2(R^n)` norm split at `|xi| = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SplitNorm {
    pub ball: f64,
    /// Integrated exterior part (zero when skipped).
    pub exterior: f64,
    /// Certified bound on the exterior part.
    pub exterior_bound: f64,
    pub exterior_integrated: bool,
}

impl SplitNorm {
    pub fn total(&self) -> f64 {
        self.ball.hypot(self.exterior)
    }
}

fn split_norm<G>(
    dim: usize,
    radial: bool,
    t: f64,
    acc: &Accuracy,
    bound: f64,
    g: G,
) -> Result<SplitNorm>
where
    G: Fn(&[f64]) -> Result<Complex64> + Sync,
{
    let ball = ball_square(dim, radial, t, acc, &g)?.sqrt();
    if bound <= EXTERIOR_FRACTION * ball {
        return Ok(SplitNorm {
            ball,
            exterior: 0.0,
            exterior_bound: bound,
            exterior_integrated: false,
        });
    }
    let exterior = exterior_square(dim, radial, t, acc, &g)?.sqrt();
    Ok(SplitNorm {
        ball,
        exterior,
        exterior_bound: bound,
        exterior_integrated: true,
    })
}

/// `||E1(t) u1_hat - profile||_{L^2(|xi| <= 1)}`; errors when `gamma` is not admissible.
pub fn remainder_norm_thm31(u1: &Datum, gamma: f64, t: f64, acc: &Accuracy) -> Result<f64> {
    if !expansion_admissible(u1.dim(), gamma) {
        return Err(Error::ConditionViolated { n: u1.dim(), gamma });
    }
    remainder_norm_thm31_unchecked(u1, gamma, t, acc)
}

/// Same norm without the admissibility check.
pub fn remainder_norm_thm31_unchecked(
    u1: &Datum,
    gamma: f64,
    t: f64,
    acc: &Accuracy,
) -> Result<f64> {
    remainder_norm(Symbol::One, u1, gamma, t, acc)
}

/// `||E0(t) u0_hat - profile||_{L^2(|xi| <= 1)}`.
pub fn remainder_norm_thm32(u0: &Datum, gamma: f64, t: f64, acc: &Accuracy) -> Result<f64> {
    remainder_norm(Symbol::Zero, u0, gamma, t, acc)
}

fn remainder_norm(sym: Symbol, f: &Datum, gamma: f64, t: f64, acc: &Accuracy) -> Result<f64> {
    check_time(t)?;
    let profile = ExpansionProfile::new(sym, f.clone(), gamma)?;
    Ok(ball_square(f.dim(), f.is_radial(), t, acc, |xi| {
        profile.remainder(t, xi)
    })?
    .sqrt())
}

/// `||e^{-c t |xi|^2} (f_hat - sum_{k <= [gamma]} m[f]^k)||_{L^2(R^n)}`.
pub fn damped_taylor_remainder(
    f: &Datum,
    gamma: f64,
    c: f64,
    t: f64,
    acc: &Accuracy,
) -> Result<f64> {
    check_time(t)?;
    let rate = 2.0 * c * t;
    if !(rate > 1.0) {
        return Err(Error::InvalidQuery(format!("need 2 c t > 1, got {rate}")));
    }
    let k = gamma.floor() as i32;
    let mode = if f.is_radial() && !acc.force_tensor {
        GridMode::Radial
    } else {
        GridMode::Tensor
    };
    let grid = Grid::new(f.dim(), mode)?
        .with_resolution(crate::quadrature::DEFAULT_NODES_PER_UNIT * acc.refine)
        .with_angular(((acc.angular as f64) * acc.refine).round() as usize)
        .with_cutoff(acc.cutoff)
        .with_envelope(rate);
    // |f_hat - sum m^k| <= (K + 2) (1 + r)^K ||f||_{1,K}; absorb (1 + r)^{2K} e^{-r^2}.
    let a = (k as f64 + 2.0) * f.weighted_l1_norm(k as f64);
    let peak = (0..4000)
        .map(|i| {
            let r = i as f64 * 0.005;
            (1.0 + r).powi(2 * k) * (-r * r).exp()
        })
        .fold(0.0, f64::max);
    let tail = TailBound {
        scale: a * a * peak * 1.01,
        rate: rate - 1.0,
    };
    let v = integrate_rn(
        &grid,
        |xi| {
            let r2: f64 = xi.iter().map(|v| v * v).sum();
            (-rate * r2).exp() * f.taylor_remainder(xi, gamma).norm_sqr()
        },
        tail,
    )?;
    Ok(v.value.max(0.0).sqrt())
}

/// `||u_hat(t) - P1 e^{-t|xi|^2/2} sin(t|xi|)/|xi|||_{L^2(R^n)}`.
pub fn leading_term_gap(u0: &Datum, u1: &Datum, t: f64, acc: &Accuracy) -> Result<SplitNorm> {
    check_time(t)?;
    let n = same_dim(u0, u1)?;
    let radial = u0.is_radial() && u1.is_radial();
    let bound = exterior_bound(u0, u1, t, true);
    split_norm(n, radial, t, acc, bound, |xi| {
        let r = radius(xi);
        let q = SymbolQuery::new(t, r)?;
        let (e0, e1) = eval_pair(q);
        let lead = (-0.5 * t * r * r).exp() * (t * r).sin() / r;
        let u0h = u0.fourier_hat(xi);
        let u1h = u1.fourier_hat(xi);
        // (E1 - e_1^0) u1_hat + e_1^0 (u1_hat - P1) avoids cancelling P1 terms.
        Ok(u0h * e0 + u0h * (0.5 * r * r * e1) + u1h * (e1 - lead) + u1.taylor_tail(xi, 0) * lead)
    })
}

/// `||u_hat(t)||_{L^2(R^n)}`.
pub fn solution_norm(u0: &Datum, u1: &Datum, t: f64, acc: &Accuracy) -> Result<SplitNorm> {
    check_time(t)?;
    let n = same_dim(u0, u1)?;
    let radial = u0.is_radial() && u1.is_radial();
    let bound = exterior_bound(u0, u1, t, false);
    split_norm(n, radial, t, acc, bound, |xi| {
        let q = SymbolQuery::new(t, radius(xi))?;
        Ok(solution_hat(q, u0.fourier_hat(xi), u1.fourier_hat(xi)))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UpperBoundRatio {
    pub t: f64,
    pub gap: f64,
    /// `||u1||_{1,1} + ||u0||_1 + ||u1||_2 + ||u0||_2`.
    pub data_scale: f64,
    /// `gap / (data_scale (1 + t)^{-n/4})`.
    pub ratio: f64,
}

pub fn upper_bound_38(u0: &Datum, u1: &Datum, t: f64, acc: &Accuracy) -> Result<UpperBoundRatio> {
    let n = same_dim(u0, u1)?;
    let gap = leading_term_gap(u0, u1, t, acc)?.total();
    let data_scale = u1.weighted_l1_norm(1.0) + u0.l1_norm() + u1.l2_norm() + u0.l2_norm();
    let ratio = if data_scale > 0.0 {
        gap / (data_scale * (1.0 + t).powf(-(n as f64) / 4.0))
    } else {
        0.0
    };
    Ok(UpperBoundRatio {
        t,
        gap,
        data_scale,
        ratio,
    })
}

/// Solution norms over a t-grid with the dimension's growth law.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sandwich {
    pub dim: usize,
    pub samples: Vec<(f64, f64)>,
    /// `||u_hat|| / (|P1| g_n(t))` with `g_1 = sqrt t`, `g_2 = sqrt(log t)`,
    /// `g_n = t^{-n/4 + 1/2}`; `|P1|` replaced by 1 when it vanishes.
    pub normalized: Vec<f64>,
    pub c1: f64,
    pub c2: f64,
    /// Power law in 1-D and from 3-D on, iterated log in 2-D.
    pub fit: RateFit,
}

pub fn growth_law(n: usize, t: f64) -> f64 {
    match n {
        1 => t.sqrt(),
        2 => t.ln().sqrt(),
        _ => t.powf(-(n as f64) / 4.0 + 0.5),
    }
}

pub fn thm33_sandwich(u0: &Datum, u1: &Datum, t_grid: &[f64], acc: &Accuracy) -> Result<Sandwich> {
    let n = same_dim(u0, u1)?;
    let mut samples = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        samples.push((t, solution_norm(u0, u1, t, acc)?.total()));
    }
    let p1 = u1.mass().abs();
    let scale = if p1 > 0.0 { p1 } else { 1.0 };
    let normalized: Vec<f64> = samples
        .iter()
        .map(|&(t, v)| v / (scale * growth_law(n, t)))
        .collect();
    let c1 = normalized.iter().cloned().fold(f64::INFINITY, f64::min);
    let c2 = normalized.iter().cloned().fold(0.0, f64::max);
    let transform = if n == 2 {
        Transform::IteratedLog
    } else {
        Transform::PowerLaw
    };
    let fit = fit_rate(&samples, transform)?;
    Ok(Sandwich {
        dim: n,
        samples,
        normalized,
        c1,
        c2,
        fit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn condition_thresholds() {
        assert!(!expansion_admissible(1, 0.5));
        assert!(expansion_admissible(1, 0.51));
        assert!(!expansion_admissible(2, 0.0));
        assert!(expansion_admissible(3, 0.0));
    }

    #[test]
    fn violated_condition_is_reported() {
        let u = Datum::standard_gaussian(1).unwrap();
        let acc = Accuracy::default();
        assert!(matches!(
            remainder_norm_thm31(&u, 0.4, 100.0, &acc),
            Err(Error::ConditionViolated { n: 1, .. })
        ));
        assert!(remainder_norm_thm31_unchecked(&u, 0.4, 100.0, &acc).unwrap() > 0.0);
    }

    #[test]
    fn gap_is_linear_in_data() {
        let u0 = Datum::gaussian(1, &[0.2], 1.0, 0.7).unwrap();
        let u1 = Datum::standard_gaussian(1).unwrap();
        let acc = Accuracy::default();
        let g = leading_term_gap(&u0, &u1, 200.0, &acc).unwrap().total();
        let g2 = leading_term_gap(&u0.scaled(2.0), &u1.scaled(2.0), 200.0, &acc)
            .unwrap()
            .total();
        assert!((g2 / g - 2.0).abs() < 1e-12);
    }

    #[test]
    fn exterior_integrated_at_small_times() {
        let u0 = Datum::standard_gaussian(1).unwrap();
        let u1 = Datum::standard_gaussian(1).unwrap();
        let acc = Accuracy::default();
        let s = solution_norm(&u0, &u1, 2.0, &acc).unwrap();
        assert!(s.exterior_integrated);
        assert!(s.exterior > 0.0 && s.exterior <= s.exterior_bound);
        let s = solution_norm(&u0, &u1, 300.0, &acc).unwrap();
        assert!(!s.exterior_integrated);
    }

    #[test]
    fn small_time_solution_norm_matches_plancherel() {
        // At t -> 0 the solution is u0, so ||u_hat|| -> (2 pi)^{n/2} ||u0||_2.
        let u0 = Datum::standard_gaussian(2).unwrap();
        let u1 = Datum::zero(2).unwrap();
        let acc = Accuracy::default().with_cutoff_for_test(20.0);
        let s = solution_norm(&u0, &u1, 1e-9, &acc).unwrap();
        let expect = 2.0 * PI * u0.l2_norm();
        assert!(
            (s.total() / expect - 1.0).abs() < 1e-6,
            "{} {}",
            s.total(),
            expect
        );
    }

    impl Accuracy {
        fn with_cutoff_for_test(mut self, c: f64) -> Self {
            self.cutoff = c;
            self
        }
    }
}
