//! Deterministic integration over the unit ball and over `R^n`, `n <= 3`.
//!
//! The radial direction uses composite Gauss–Legendre panels, geometrically
//! refined towards the origin so weak singularities such as `|xi|^{2 gamma - 2}`
//! integrate without special casing; the nodes never touch `r = 0`. Integrands
//! that depend on `|xi|` only are integrated along one ray (`Radial` mode).
//! General integrands use a product rule in polar / spherical coordinates
//! (`Tensor` mode): trapezoid in the azimuth and Gauss–Legendre in the polar
//! cosine. Both angular rules are symmetric under `xi_j -> -xi_j`.
//!
//! Integrands oscillating like `sin(t |xi|)` must be sampled with at least
//! [`NODES_PER_PERIOD`] radial nodes per period `2 pi / t`.
//!
//! Work is split into fixed chunks of panels whose partial sums are combined
//! in ascending radius with compensated summation, so the result does not
//! depend on the number of worker threads.

pub mod legendre;

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use legendre::{gauss_legendre, CompensatedSum};

pub const NODES_PER_PERIOD: f64 = 20.0;

/// Gauss–Legendre points per radial panel.
pub const PANEL_ORDER: usize = 12;

/// Default radial resolution when no oscillation is declared.
pub const DEFAULT_NODES_PER_UNIT: f64 = 480.0;

/// Default angular resolution (azimuthal nodes; half as many polar nodes in 3-D).
pub const DEFAULT_ANGULAR: usize = 32;

/// Default cutoff radius for integrals over `R^n`.
pub const DEFAULT_CUTOFF: f64 = 8.0;

/// Integrands declared with a Gaussian envelope `exp(-c r^2)` are cut where
/// `c r^2` exceeds this.
pub const ENVELOPE_EXPONENT: f64 = 200.0;

/// Largest tail bound accepted for `R^n` integrals, relative to the value.
pub const TAIL_FRACTION: f64 = 1e-12;

const GRADING_LEVELS: usize = 60;
const PANELS_PER_CHUNK: usize = 64;
const SPOT_CHECKS: usize = 8;
const SPOT_TOLERANCE: f64 = 1e-10;

/// Surface area of the unit sphere `S^{n-1}`, `2 pi^{n/2} / Gamma(n/2)`.
pub fn sphere_area(n: usize) -> f64 {
    match n {
        1 => 2.0,
        2 => 2.0 * PI,
        3 => 4.0 * PI,
        _ => 2.0 * PI.powf(n as f64 / 2.0) / statrs::function::gamma::gamma(n as f64 / 2.0),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GridMode {
    /// Integrand depends on `|xi|` only.
    Radial,
    /// General integrand; radial rule times an angular product rule.
    Tensor,
}

/// Wire form of the grid settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub mode: GridMode,
    pub nodes_per_unit: f64,
    #[serde(default = "default_cutoff")]
    pub cutoff: f64,
}

fn default_cutoff() -> f64 {
    DEFAULT_CUTOFF
}

#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub dim: usize,
    pub mode: GridMode,
    pub nodes_per_unit: f64,
    pub cutoff: f64,
    /// Declared oscillation scale `t` of `sin(t |xi|)`-type factors.
    pub oscillation: Option<f64>,
    /// Declared Gaussian envelope rate `c`: `|f| <= D exp(-c |xi|^2)`.
    pub envelope: Option<f64>,
    pub angular: usize,
}

/// Minimum radial nodes per unit length for oscillation scale `t`.
pub fn oscillation_floor(t: f64) -> f64 {
    NODES_PER_PERIOD * t / (2.0 * PI)
}

impl Grid {
    pub fn new(dim: usize, mode: GridMode) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(Error::InvalidGrid(format!("dimension {dim} not in 1..=3")));
        }
        Ok(Self {
            dim,
            mode,
            nodes_per_unit: DEFAULT_NODES_PER_UNIT,
            cutoff: DEFAULT_CUTOFF,
            oscillation: None,
            envelope: None,
            angular: DEFAULT_ANGULAR,
        })
    }

    pub fn from_spec(dim: usize, spec: &GridSpec) -> Result<Self> {
        Ok(Self::new(dim, spec.mode)?
            .with_resolution(spec.nodes_per_unit)
            .with_cutoff(spec.cutoff))
    }

    /// Grid for integrands oscillating like `sin(t |xi|)` under `exp(-c t |xi|^2)`:
    /// resolution is raised to 1.25 times the oscillation floor when needed.
    pub fn for_time(dim: usize, mode: GridMode, t: f64, envelope_per_t: f64) -> Result<Self> {
        let mut g = Self::new(dim, mode)?;
        g.oscillation = Some(t);
        g.envelope = Some(envelope_per_t * t);
        g.nodes_per_unit = g.nodes_per_unit.max((1.25 * oscillation_floor(t)).ceil());
        Ok(g)
    }

    pub fn with_resolution(mut self, nodes_per_unit: f64) -> Self {
        self.nodes_per_unit = nodes_per_unit;
        self
    }

    pub fn with_cutoff(mut self, cutoff: f64) -> Self {
        self.cutoff = cutoff;
        self
    }

    pub fn with_angular(mut self, angular: usize) -> Self {
        self.angular = angular;
        self
    }

    pub fn oscillating(mut self, t: f64) -> Self {
        self.oscillation = Some(t);
        self
    }

    pub fn with_envelope(mut self, c: f64) -> Self {
        self.envelope = Some(c);
        self
    }

    /// Same grid with `factor` times the radial and angular resolution.
    pub fn refined(&self, factor: f64) -> Self {
        let mut g = self.clone();
        g.nodes_per_unit *= factor;
        g.angular = ((self.angular as f64) * factor).round().max(2.0) as usize;
        g
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.nodes_per_unit.is_finite() && self.nodes_per_unit >= PANEL_ORDER as f64) {
            return Err(Error::InvalidGrid(format!(
                "nodes_per_unit {} below one panel",
                self.nodes_per_unit
            )));
        }
        if !(self.cutoff.is_finite() && self.cutoff >= 1.0) {
            return Err(Error::InvalidGrid(format!(
                "cutoff {} below 1",
                self.cutoff
            )));
        }
        if self.angular < 2 {
            return Err(Error::InvalidGrid("angular resolution below 2".into()));
        }
        if let Some(t) = self.oscillation {
            let required = oscillation_floor(t);
            if self.nodes_per_unit < required {
                return Err(Error::UnderResolved {
                    nodes_per_unit: self.nodes_per_unit,
                    required,
                    t,
                });
            }
        }
        Ok(())
    }

    /// Upper radius actually integrated to, after the envelope cut.
    pub fn effective_outer(&self, outer: f64) -> f64 {
        match self.envelope {
            Some(c) if c > 0.0 => outer.min((ENVELOPE_EXPONENT / c).sqrt()),
            _ => outer,
        }
    }

    /// Radial panels `[lo, hi]` covering `[inner, outer]`.
    fn panels(&self, inner: f64, outer: f64) -> Vec<(f64, f64)> {
        let outer = self.effective_outer(outer);
        if outer <= inner {
            return Vec::new();
        }
        let width = PANEL_ORDER as f64 / self.nodes_per_unit;
        let count = ((outer - inner) / width).ceil().max(1.0) as usize;
        let h = (outer - inner) / count as f64;
        let mut panels = Vec::with_capacity(count + GRADING_LEVELS + 1);
        let mut start = 0;
        if inner == 0.0 {
            let mut lo = h / 2f64.powi(GRADING_LEVELS as i32);
            panels.push((0.0, lo));
            for _ in 0..GRADING_LEVELS {
                panels.push((lo, 2.0 * lo));
                lo *= 2.0;
            }
            start = 1;
        }
        for p in start..count {
            let lo = inner + p as f64 * h;
            let hi = if p + 1 == count { outer } else { lo + h };
            panels.push((lo, hi));
        }
        panels
    }

    /// Unit directions and weights; weights sum to the sphere area.
    fn directions(&self) -> Vec<(Vec<f64>, f64)> {
        match (self.mode, self.dim) {
            (GridMode::Radial, n) => {
                let mut e = vec![0.0; n];
                e[0] = 1.0;
                vec![(e, sphere_area(n))]
            }
            (GridMode::Tensor, 1) => vec![(vec![1.0], 1.0), (vec![-1.0], 1.0)],
            (GridMode::Tensor, 2) => {
                let m = self.angular;
                (0..m)
                    .map(|j| {
                        let th = 2.0 * PI * (j as f64 + 0.5) / m as f64;
                        (vec![th.cos(), th.sin()], 2.0 * PI / m as f64)
                    })
                    .collect()
            }
            (GridMode::Tensor, _) => {
                let m = self.angular;
                let (zs, ws) = gauss_legendre((m / 2).max(2));
                let mut out = Vec::with_capacity(zs.len() * m);
                for (z, wz) in zs.iter().zip(&ws) {
                    let s = (1.0 - z * z).sqrt();
                    for j in 0..m {
                        let ph = 2.0 * PI * (j as f64 + 0.5) / m as f64;
                        out.push((
                            vec![s * ph.cos(), s * ph.sin(), *z],
                            wz * 2.0 * PI / m as f64,
                        ));
                    }
                }
                out
            }
        }
    }
}

/// Checks that `f` takes the same value at eight rotations of one point.
fn spot_check_radial<F: Fn(&[f64]) -> f64>(grid: &Grid, f: &F, radius: f64) -> Result<()> {
    let n = grid.dim;
    let mut base = vec![0.0; n];
    base[0] = radius;
    let reference = f(&base);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..SPOT_CHECKS {
        let dir: Vec<f64> = match n {
            1 => vec![-1.0],
            2 => {
                let th: f64 = rng.gen_range(0.0..2.0 * PI);
                vec![th.cos(), th.sin()]
            }
            _ => {
                let z: f64 = rng.gen_range(-1.0..1.0);
                let ph: f64 = rng.gen_range(0.0..2.0 * PI);
                let s = (1.0 - z * z).sqrt();
                vec![s * ph.cos(), s * ph.sin(), z]
            }
        };
        let p: Vec<f64> = dir.iter().map(|d| d * radius).collect();
        let v = f(&p);
        let scale = reference.abs().max(v.abs());
        if scale > 0.0 {
            let rel = (v - reference).abs() / scale;
            if rel > SPOT_TOLERANCE || !rel.is_finite() {
                return Err(Error::NotRadial(rel));
            }
        }
    }
    Ok(())
}

/// `int_{inner <= |xi| <= outer} f(xi) d xi`.
pub fn integrate_shell<F>(grid: &Grid, f: F, inner: f64, outer: f64) -> Result<f64>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    grid.validate()?;
    let panels = grid.panels(inner, outer);
    if panels.is_empty() {
        return Ok(0.0);
    }
    if grid.mode == GridMode::Radial {
        let hi = panels.last().map(|p| p.1).unwrap_or(outer);
        let radius = inner + 0.37 * (hi - inner);
        spot_check_radial(grid, &f, radius)?;
    }
    let directions = grid.directions();
    let rule = gauss_legendre(PANEL_ORDER);
    let n = grid.dim as i32;

    let chunk_sums: Vec<f64> = panels
        .par_chunks(PANELS_PER_CHUNK)
        .map(|chunk| {
            let mut acc = CompensatedSum::new();
            let mut xi = vec![0.0; grid.dim];
            for &(lo, hi) in chunk {
                let half = 0.5 * (hi - lo);
                let mid = 0.5 * (hi + lo);
                for (x, w) in rule.0.iter().zip(&rule.1) {
                    let r = mid + half * x;
                    let radial_w = half * w * r.powi(n - 1);
                    let mut ang = CompensatedSum::new();
                    for (dir, aw) in &directions {
                        for (slot, d) in xi.iter_mut().zip(dir) {
                            *slot = r * d;
                        }
                        ang.add(aw * f(&xi));
                    }
                    acc.add(radial_w * ang.value());
                }
            }
            acc.value()
        })
        .collect();
    let total: CompensatedSum = chunk_sums.into_iter().collect();
    Ok(total.value())
}

/// `int_{|xi| <= 1} f(xi) d xi`.
pub fn integrate_ball<F>(grid: &Grid, f: F) -> Result<f64>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    integrate_shell(grid, f, 0.0, 1.0)
}

/// Gaussian domination `|f(xi)| <= scale * exp(-rate |xi|^2)` beyond the cutoff.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailBound {
    pub scale: f64,
    pub rate: f64,
}

impl TailBound {
    /// `scale * int_{|xi| > R} exp(-rate |xi|^2) d xi`.
    pub fn mass_beyond(&self, dim: usize, radius: f64) -> f64 {
        let a = dim as f64 / 2.0;
        let x = self.rate * radius * radius;
        let upper = statrs::function::gamma::gamma_ur(a, x) * statrs::function::gamma::gamma(a);
        self.scale * sphere_area(dim) * upper / (2.0 * self.rate.powf(a))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RnIntegral {
    pub value: f64,
    /// Bound on the neglected part beyond the cutoff.
    pub tail_bound: f64,
}

/// `int_{R^n} f`, integrating to the grid cutoff (or the envelope cut, if
/// smaller) and bounding the rest with `tail`, which must hold beyond that radius.
pub fn integrate_rn<F>(grid: &Grid, f: F, tail: TailBound) -> Result<RnIntegral>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let value = integrate_shell(grid, f, 0.0, grid.cutoff)?;
    let tail_bound = tail.mass_beyond(grid.dim, grid.effective_outer(grid.cutoff));
    if tail_bound > TAIL_FRACTION * value.abs() {
        return Err(Error::CutoffTooSmall {
            cutoff: grid.cutoff,
            tail: tail_bound,
            value,
        });
    }
    Ok(RnIntegral { value, tail_bound })
}

/// `||g||_{L^2(|xi| <= 1)}`.
pub fn l2_norm_ball<G>(grid: &Grid, g: G) -> Result<f64>
where
    G: Fn(&[f64]) -> Complex64 + Sync,
{
    Ok(integrate_ball(grid, |xi| g(xi).norm_sqr())?.max(0.0).sqrt())
}

/// `int_a^b f` with the same panel layout as the radial rule (graded at 0 when `a = 0`).
pub fn integrate_1d<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, nodes_per_unit: f64) -> f64 {
    let grid = Grid {
        dim: 1,
        mode: GridMode::Radial,
        nodes_per_unit,
        cutoff: DEFAULT_CUTOFF,
        oscillation: None,
        envelope: None,
        angular: DEFAULT_ANGULAR,
    };
    let rule = gauss_legendre(PANEL_ORDER);
    let mut acc = CompensatedSum::new();
    for (lo, hi) in grid.panels(a, b) {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        for (x, w) in rule.0.iter().zip(&rule.1) {
            acc.add(half * w * f(mid + half * x));
        }
    }
    acc.value()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn volumes() {
        let g2 = Grid::new(2, GridMode::Radial).unwrap();
        assert!((integrate_ball(&g2, |_| 1.0).unwrap() - PI).abs() < 1e-13);
        let g3 = Grid::new(3, GridMode::Tensor).unwrap();
        assert!((integrate_ball(&g3, |_| 1.0).unwrap() - 4.0 * PI / 3.0).abs() < 1e-13);
        assert!((sphere_area(3) - 4.0 * PI).abs() < 1e-14);
        assert!((sphere_area(1) - 2.0).abs() < 1e-15);
        assert!((sphere_area(2) - 2.0 * PI).abs() < 1e-14);
    }

    #[test]
    fn change_of_variables() {
        let t = 100.0;
        let g = Grid::new(1, GridMode::Radial).unwrap();
        let direct = integrate_ball(&g, |xi| xi[0] * xi[0] * (-t * xi[0] * xi[0]).exp()).unwrap();
        let sub = t.powf(-1.5) * 2.0 * integrate_1d(|e| e * e * (-e * e).exp(), 0.0, 10.0, 200.0);
        assert!((direct - sub).abs() < 1e-9 * sub);
    }

    #[test]
    fn gaussians_over_rn() {
        let tail = TailBound {
            scale: 1.0,
            rate: 1.0,
        };
        let g1 = Grid::new(1, GridMode::Radial).unwrap();
        let v1 = integrate_rn(&g1, |xi| (-xi[0] * xi[0]).exp(), tail).unwrap();
        assert!((v1.value - PI.sqrt()).abs() < 1e-10);
        let g2 = Grid::new(2, GridMode::Tensor).unwrap();
        let v2 = integrate_rn(&g2, |xi| (-(xi[0] * xi[0] + xi[1] * xi[1])).exp(), tail).unwrap();
        assert!((v2.value - PI).abs() < 1e-10);
        assert!(v2.tail_bound < 1e-25);
    }

    #[test]
    fn cutoff_too_small() {
        let g = Grid::new(1, GridMode::Radial).unwrap().with_cutoff(2.0);
        let tail = TailBound {
            scale: 1.0,
            rate: 1.0,
        };
        assert!(matches!(
            integrate_rn(&g, |xi| (-xi[0] * xi[0]).exp(), tail),
            Err(Error::CutoffTooSmall { .. })
        ));
    }

    #[test]
    fn norms_on_ball() {
        let g1 = Grid::new(1, GridMode::Radial).unwrap();
        assert!(
            (l2_norm_ball(&g1, |_| Complex64::new(1.0, 0.0)).unwrap() - 2f64.sqrt()).abs() < 1e-14
        );
        let g2 = Grid::new(2, GridMode::Tensor).unwrap();
        let v = l2_norm_ball(&g2, |xi| Complex64::new(xi[0], 0.0)).unwrap();
        assert!((v - (PI / 4.0).sqrt()).abs() < 1e-13);
    }

    #[test]
    fn rejects_non_radial_integrand() {
        let g = Grid::new(2, GridMode::Radial).unwrap();
        assert!(matches!(
            integrate_ball(&g, |xi| xi[0]),
            Err(Error::NotRadial(_))
        ));
        let g1 = Grid::new(1, GridMode::Radial).unwrap();
        assert!(matches!(
            integrate_ball(&g1, |xi| xi[0].exp()),
            Err(Error::NotRadial(_))
        ));
    }

    #[test]
    fn rejects_under_resolved_grid() {
        let g = Grid::new(1, GridMode::Radial)
            .unwrap()
            .oscillating(1e4)
            .with_resolution(1000.0);
        assert!(matches!(
            integrate_ball(&g, |_| 1.0),
            Err(Error::UnderResolved { .. })
        ));
        let ok = Grid::for_time(1, GridMode::Radial, 1e4, 1.0).unwrap();
        assert!(ok.nodes_per_unit >= oscillation_floor(1e4));
    }

    #[test]
    fn integrable_singularity_at_origin() {
        // int_0^1 x^{-1/2} dx = 2
        let v = integrate_1d(|x| x.powf(-0.5), 0.0, 1.0, 200.0);
        assert!((v - 2.0).abs() < 1e-9, "{v}");
    }

    #[test]
    fn thread_count_does_not_change_results() {
        let g = Grid::for_time(2, GridMode::Tensor, 300.0, 1.0).unwrap();
        let f = |xi: &[f64]| {
            let r = (xi[0] * xi[0] + xi[1] * xi[1]).sqrt();
            (-300.0 * r * r).exp() * (300.0 * r).sin().powi(2) * (1.0 + xi[0])
        };
        let one = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let four = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap();
        let a = one.install(|| integrate_ball(&g, f).unwrap());
        let b = four.install(|| integrate_ball(&g, f).unwrap());
        assert_eq!(a.to_bits(), b.to_bits());
    }
}
