//! Explicit lower-bound constants and the ball integrals they control.

use num_complex::Complex64;
use serde::Serialize;

use super::norms::{ball_square, leading_term_gap};
use super::Accuracy;
use crate::data::Datum;
use crate::error::{Error, Result};
use crate::quadrature::{integrate_1d, integrate_ball, sphere_area};
use crate::symbols::{eval_e1, expansion_terms, Symbol, SymbolQuery};

/// Relative size below which a mass or moment counts as zero.
const ZERO_TOL: f64 = 1e-12;

/// Directions per circle for the decomposition integrals. Their integrands are
/// quadratic in the direction, which this rule integrates exactly.
const QUADRATIC_ANGULAR: usize = 8;

/// `int_a^b x^p e^{-x^2} dx` by composite Gauss–Legendre (graded at 0).
pub fn radial_constant(p: f64, a: f64, b: f64) -> f64 {
    integrate_1d(|x| x.powf(p) * (-x * x).exp(), a, b, 400.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseTag {
    /// `P1 != 0`.
    Mass,
    /// `P1 = 0`, first moments not all zero.
    FirstMoment,
    /// `P1 = 0`, first moments zero; informative when `P0 != 0`.
    InitialMass,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseSplitReport {
    pub p0: f64,
    pub p1: f64,
    pub first_moments: Vec<f64>,
    pub delta: Option<f64>,
    pub case: CaseTag,
    /// Explicit constant `c` with `gap >= c t^{-n/4}` for large `t`.
    pub lower_constant: f64,
    /// `(t, gap t^{n/4})`.
    pub measured: Vec<(f64, f64)>,
    /// Smallest measured `gap t^{n/4}`.
    pub measured_constant: f64,
}

fn is_zero(v: f64, scale: f64) -> bool {
    v.abs() <= ZERO_TOL * scale.max(1.0)
}

/// Case tag, `delta` and the constant `c` with `||profile||_{ball} >= c t^{-n/4}`.
pub fn lower_bound_constant(u0: &Datum, u1: &Datum) -> (CaseTag, Option<f64>, f64) {
    let n = u1.dim();
    let nf = n as f64;
    let w = sphere_area(n);
    let scale1 = u1.l1_norm();
    let p0 = u0.mass();
    let p1 = u1.mass();
    let m = u1.first_moments();
    let p1_zero = is_zero(p1, scale1);
    let p0_zero = is_zero(p0, u0.l1_norm());
    let moments_zero = m.iter().all(|&v| is_zero(v, u1.weighted_l1_norm(1.0)));

    let moment_part: f64 =
        m.iter().map(|v| v * v).sum::<f64>() * w / (4.0 * nf) * radial_constant(nf - 1.0, 0.0, 1.0);
    let (mass_part, delta) = if p1_zero {
        (
            p0 * p0 * w / 4.0 * radial_constant(nf - 1.0, 0.0, 1.0),
            None,
        )
    } else if p0_zero {
        (
            p1 * p1 * w / 256.0 * radial_constant(nf + 3.0, 0.0, 1.0),
            None,
        )
    } else {
        let d = 4.0 * (p0.abs() / p1.abs()).sqrt();
        let a = w / 4.0 * radial_constant(nf - 1.0, d, 2.0 * d) * p0 * p0;
        let b = w / 1024.0 * radial_constant(nf + 3.0, d, 2.0 * d) * p1 * p1;
        (a.max(b), Some(d))
    };
    let case = if !p1_zero {
        CaseTag::Mass
    } else if !moments_zero {
        CaseTag::FirstMoment
    } else {
        CaseTag::InitialMass
    };
    (case, delta, (moment_part + mass_part).sqrt())
}

pub fn case_split(
    u0: &Datum,
    u1: &Datum,
    t_grid: &[f64],
    acc: &Accuracy,
) -> Result<CaseSplitReport> {
    let n = u1.dim() as f64;
    let (case, delta, lower_constant) = lower_bound_constant(u0, u1);
    let mut measured = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        let gap = leading_term_gap(u0, u1, t, acc)?.total();
        measured.push((t, gap * t.powf(n / 4.0)));
    }
    let measured_constant = measured.iter().map(|m| m.1).fold(f64::INFINITY, f64::min);
    Ok(CaseSplitReport {
        p0: u0.mass(),
        p1: u1.mass(),
        first_moments: u1.first_moments(),
        delta,
        case,
        lower_constant,
        measured,
        measured_constant,
    })
}

/// The weighted ball integrals with sine and cosine kernels and their lower constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelLowerBounds {
    pub t: f64,
    /// `int_{|xi|<=1} |xi|^{2g} e^{-t|xi|^2} |sin(t|xi|)/|xi||^2`.
    pub sin_integral: f64,
    /// `int_{|xi|<=1} |xi|^{2g} e^{-t|xi|^2} cos^2(t|xi|)`.
    pub cos_integral: f64,
    /// `(w_n/4) int_0^1 x^{2g+n-3} e^{-x^2} t^{-n/2-g+1}`.
    pub sin_lower: f64,
    /// `(w_n/4) int_0^1 x^{2g+n-1} e^{-x^2} t^{-n/2-g}`.
    pub cos_lower: f64,
}

fn weighted_kernels(n: usize, gamma: f64, t: f64, acc: &Accuracy) -> Result<(f64, f64)> {
    let grid = acc.grid(n, true, t)?;
    let sin_integral = integrate_ball(&grid, |xi| {
        let r2: f64 = xi.iter().map(|v| v * v).sum();
        let r = r2.sqrt();
        let s = (t * r).sin();
        r.powf(2.0 * gamma - 2.0) * (-t * r2).exp() * s * s
    })?;
    let cos_integral = integrate_ball(&grid, |xi| {
        let r2: f64 = xi.iter().map(|v| v * v).sum();
        let c = (t * r2.sqrt()).cos();
        r2.powf(gamma) * (-t * r2).exp() * c * c
    })?;
    Ok((sin_integral, cos_integral))
}

pub fn kernel_lower_bounds(
    n: usize,
    gamma: f64,
    t: f64,
    acc: &Accuracy,
) -> Result<KernelLowerBounds> {
    let nf = n as f64;
    let (sin_integral, cos_integral) = weighted_kernels(n, gamma, t, acc)?;
    let w = sphere_area(n);
    Ok(KernelLowerBounds {
        t,
        sin_integral,
        cos_integral,
        sin_lower: w / 4.0
            * radial_constant(2.0 * gamma + nf - 3.0, 0.0, 1.0)
            * t.powf(-nf / 2.0 - gamma + 1.0),
        cos_lower: w / 4.0
            * radial_constant(2.0 * gamma + nf - 1.0, 0.0, 1.0)
            * t.powf(-nf / 2.0 - gamma),
    })
}

/// The same integrals against their explicit upper bounds
/// `e w_n (1+t)^{-e} int_0^{sqrt t} x^p e^{-x^2}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelUpperBounds {
    pub t: f64,
    pub sin_integral: f64,
    pub cos_integral: f64,
    pub sin_upper: f64,
    pub cos_upper: f64,
    /// `sin_integral / (1+t)^{-n/2-g+1}`.
    pub sin_ratio: f64,
    /// `cos_integral / (1+t)^{-n/2-g}`.
    pub cos_ratio: f64,
}

pub fn kernel_upper_bounds(
    n: usize,
    gamma: f64,
    t: f64,
    acc: &Accuracy,
) -> Result<KernelUpperBounds> {
    let nf = n as f64;
    let (sin_integral, cos_integral) = weighted_kernels(n, gamma, t, acc)?;
    let w = sphere_area(n);
    let e = std::f64::consts::E;
    let sin_scale = (1.0 + t).powf(-nf / 2.0 - gamma + 1.0);
    let cos_scale = (1.0 + t).powf(-nf / 2.0 - gamma);
    let reach = t.sqrt().min(12.0);
    Ok(KernelUpperBounds {
        t,
        sin_integral,
        cos_integral,
        sin_upper: e * w * sin_scale * radial_constant(nf + 2.0 * gamma - 3.0, 0.0, reach),
        cos_upper: e * w * cos_scale * radial_constant(2.0 * gamma + nf - 1.0, 0.0, reach),
        sin_ratio: sin_integral / sin_scale,
        cos_ratio: cos_integral / cos_scale,
    })
}

/// `||(|xi|^2/2) E1(t)||^2_{L^2(|xi| <= 1)}`.
pub fn damped_weight_norm(n: usize, t: f64, acc: &Accuracy) -> Result<f64> {
    ball_square(n, true, t, acc, |xi| {
        let r2: f64 = xi.iter().map(|v| v * v).sum();
        let q = SymbolQuery::new(t, r2.sqrt())?;
        Ok(Complex64::new(0.5 * r2 * eval_e1(q), 0.0))
    })
}

/// Squared ball norm of `e_1^0 m[u1]^1 + e_1^1 m[u1]^0 + e_0^0 m[u0]^0` by
/// direct quadrature and by the three-part decomposition.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProfileDecomposition {
    pub t: f64,
    pub direct: f64,
    pub decomposed: f64,
    /// `sum_j M_j^2 int e^{-t|xi|^2} |sin(t|xi|)/|xi| xi_j|^2`.
    pub diagonal: f64,
    /// `2 sum_{j<k} M_j M_k int e^{-t|xi|^2} |sin(t|xi|)/|xi||^2 xi_j xi_k`.
    pub cross: f64,
    /// `int e^{-t|xi|^2} ((P1/8) t |xi|^2 - P0)^2 cos^2(t|xi|)`.
    pub mass_part: f64,
    /// Largest `|int ... xi_j xi_k| / int ... xi_j^2` over `j < k`.
    pub cross_relative: f64,
}

pub fn profile_decomposition(
    u0: &Datum,
    u1: &Datum,
    t: f64,
    acc: &Accuracy,
) -> Result<ProfileDecomposition> {
    let n = u1.dim();
    if u0.dim() != n {
        return Err(Error::InvalidDatum(
            "data live in different dimensions".into(),
        ));
    }
    let grid = acc
        .grid(n, false, t)?
        .with_angular(((QUADRATIC_ANGULAR as f64) * acc.refine).round() as usize);
    let direct = integrate_ball(&grid, |xi| {
        let r: f64 = xi.iter().map(|v| v * v).sum::<f64>().sqrt();
        let terms = SymbolQuery::new(t, r).and_then(|q| {
            let e1 = expansion_terms(Symbol::One, q, 1)?;
            let e0 = expansion_terms(Symbol::Zero, q, 0)?;
            Ok((e1.coeff(0)?, e1.coeff(1)?, e0.coeff(0)?))
        });
        let Ok((e10, e11, e00)) = terms else {
            return f64::NAN;
        };
        let v =
            u1.moment_term(1, xi) * e10 + u1.moment_term(0, xi) * e11 + u0.moment_term(0, xi) * e00;
        v.norm_sqr()
    })?;

    let (p0, p1) = (u0.mass(), u1.mass());
    let m = u1.first_moments();
    let kernel = |xi: &[f64]| {
        let r2: f64 = xi.iter().map(|v| v * v).sum();
        let s = (t * r2.sqrt()).sin();
        (-t * r2).exp() * s * s / r2
    };
    let mut diagonal = 0.0;
    let mut cross = 0.0;
    let mut cross_relative: f64 = 0.0;
    for j in 0..n {
        let jj = integrate_ball(&grid, |xi| kernel(xi) * xi[j] * xi[j])?;
        diagonal += m[j] * m[j] * jj;
        for k in (j + 1)..n {
            let jk = integrate_ball(&grid, |xi| kernel(xi) * xi[j] * xi[k])?;
            cross += 2.0 * m[j] * m[k] * jk;
            cross_relative = cross_relative.max(jk.abs() / jj);
        }
    }
    let mass_part = integrate_ball(&grid, |xi| {
        let r2: f64 = xi.iter().map(|v| v * v).sum();
        let c = (t * r2.sqrt()).cos();
        let a = p1 / 8.0 * t * r2 - p0;
        (-t * r2).exp() * a * a * c * c
    })?;
    Ok(ProfileDecomposition {
        t,
        direct,
        decomposed: diagonal + cross + mass_part,
        diagonal,
        cross,
        mass_part,
        cross_relative,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn radial_constants() {
        // (sqrt(pi) / 2) erf(1)
        let exact = PI.sqrt() / 2.0 * 0.842_700_792_949_714_9;
        assert!((radial_constant(0.0, 0.0, 1.0) - exact).abs() < 1e-13);
        // int_0^1 x e^{-x^2} = (1 - e^{-1}) / 2
        assert!((radial_constant(1.0, 0.0, 1.0) - 0.5 * (1.0 - (-1.0f64).exp())).abs() < 1e-13);
        // x^{-1/2}: integrable singularity at 0
        assert!(radial_constant(-0.5, 0.0, 1.0).is_finite());
    }

    #[test]
    fn case_tags() {
        let g = Datum::standard_gaussian(1).unwrap();
        let h = Datum::hermite1(1, 1, 1.0, 1.0).unwrap();
        let z = Datum::zero(1).unwrap();
        assert_eq!(lower_bound_constant(&z, &g).0, CaseTag::Mass);
        assert_eq!(lower_bound_constant(&z, &h).0, CaseTag::FirstMoment);
        assert_eq!(lower_bound_constant(&g, &z).0, CaseTag::InitialMass);
        let (_, delta, c) = lower_bound_constant(&g.scaled(0.5), &g);
        assert!((delta.unwrap() - 4.0 * 0.5f64.sqrt()).abs() < 1e-12);
        assert!(c > 0.0);
        assert_eq!(lower_bound_constant(&z, &g).1, None);
        assert_eq!(lower_bound_constant(&z, &z).2, 0.0);
    }

    #[test]
    fn identity_two_ways() {
        let u1 = Datum::mixture(
            2,
            &[
                Datum::hermite1(2, 1, 1.0, 1.0).unwrap(),
                Datum::hermite1(2, 2, 0.8, 0.5).unwrap(),
                Datum::standard_gaussian(2).unwrap(),
            ],
        )
        .unwrap();
        let u0 = Datum::gaussian(2, &[0.0, 0.0], 1.2, -0.7).unwrap();
        let id = profile_decomposition(&u0, &u1, 300.0, &Accuracy::default()).unwrap();
        assert!((id.direct - id.decomposed).abs() < 1e-8 * id.direct);
        assert!(id.cross_relative < 1e-9);
    }
}
