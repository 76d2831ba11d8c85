//! Analytic initial-data families.
//!
//! Every datum is a finite combination of
//!
//! * `gaussian`: `A exp(-|x - mu|^2 / sigma^2)`,
//! * `hermite1`: `A x_j exp(-|x|^2 / sigma^2)` (zero mass, nonzero first
//!   moment on axis `j`),
//!
//! so moments, Fourier transforms and `L^2` norms are available in closed
//! form. Weighted `L^1` norms use one-dimensional radial quadrature for single
//! centred components and a tensor rule otherwise.
//!
//! Moment polynomials are evaluated two ways: [`MomentSet`] sums over
//! multi-indices, while [`Datum::moment_term`] projects each component onto
//! the direction of `xi`, where `x . xi` is Gaussian distributed and all
//! moments follow from a three-term recurrence. The projected form also gives
//! a cancellation-free Taylor remainder near `xi = 0`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::legendre::{gauss_legendre, integrate_interval, CompensatedSum};
pub use crate::quadrature::sphere_area;

/// Maximum number of components in a mixture.
pub const MAX_COMPONENTS: usize = 8;

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Component {
    Gaussian {
        #[serde(default)]
        center: Vec<f64>,
        sigma: f64,
        amplitude: f64,
    },
    /// `axis` is 1-based, matching `x_1 .. x_n`.
    Hermite1 {
        axis: usize,
        sigma: f64,
        amplitude: f64,
    },
}

impl Component {
    fn sigma(&self) -> f64 {
        match self {
            Component::Gaussian { sigma, .. } | Component::Hermite1 { sigma, .. } => *sigma,
        }
    }

    fn amplitude(&self) -> f64 {
        match self {
            Component::Gaussian { amplitude, .. } | Component::Hermite1 { amplitude, .. } => {
                *amplitude
            }
        }
    }

    fn center_or_origin(&self, dim: usize) -> Vec<f64> {
        match self {
            Component::Gaussian { center, .. } if !center.is_empty() => center.clone(),
            _ => vec![0.0; dim],
        }
    }

    fn is_centered(&self) -> bool {
        match self {
            Component::Gaussian { center, .. } => center.iter().all(|c| *c == 0.0),
            Component::Hermite1 { .. } => true,
        }
    }

    /// `A (sigma sqrt(pi))^n`: the mass of the underlying Gaussian profile.
    fn gauss_mass(&self, dim: usize) -> f64 {
        self.amplitude() * (self.sigma() * PI.sqrt()).powi(dim as i32)
    }

    fn eval(&self, x: &[f64]) -> f64 {
        let s2 = self.sigma() * self.sigma();
        match self {
            Component::Gaussian { amplitude, .. } => {
                let c = self.center_or_origin(x.len());
                let d2: f64 = x.iter().zip(&c).map(|(a, b)| (a - b) * (a - b)).sum();
                amplitude * (-d2 / s2).exp()
            }
            Component::Hermite1 {
                axis, amplitude, ..
            } => {
                let d2: f64 = x.iter().map(|a| a * a).sum();
                amplitude * x[axis - 1] * (-d2 / s2).exp()
            }
        }
    }
}

/// Wire form of a datum: a single component, a tagged mixture, or a bare
/// array of components.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DatumSpec {
    Single(Component),
    Mixture(MixtureSpec),
    List(Vec<DatumSpec>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MixtureSpec {
    Mixture { components: Vec<DatumSpec> },
    Zero,
}

impl DatumSpec {
    fn flatten_into(&self, out: &mut Vec<Component>) {
        match self {
            DatumSpec::Single(c) => out.push(c.clone()),
            DatumSpec::Mixture(MixtureSpec::Mixture { components })
            | DatumSpec::List(components) => {
                for c in components {
                    c.flatten_into(out);
                }
            }
            DatumSpec::Mixture(MixtureSpec::Zero) => {}
        }
    }

    pub fn build(&self, dim: usize) -> Result<Datum> {
        let mut comps = Vec::new();
        self.flatten_into(&mut comps);
        Datum::from_components(dim, comps)
    }
}

/// An initial datum on `R^n`, `n` in `{1, 2, 3}`. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct Datum {
    dim: usize,
    components: Vec<Component>,
}

fn check_dim(dim: usize) -> Result<()> {
    if !(1..=3).contains(&dim) {
        return Err(Error::InvalidDatum(format!("dimension {dim} not in 1..=3")));
    }
    Ok(())
}

impl Datum {
    pub fn from_components(dim: usize, components: Vec<Component>) -> Result<Self> {
        check_dim(dim)?;
        if components.len() > MAX_COMPONENTS {
            return Err(Error::InvalidDatum(format!(
                "{} components exceed the limit of {MAX_COMPONENTS}",
                components.len()
            )));
        }
        for c in &components {
            let (s, a) = (c.sigma(), c.amplitude());
            if !(s > 0.0 && s.is_finite()) {
                return Err(Error::InvalidDatum(format!(
                    "sigma must be positive, got {s}"
                )));
            }
            if !a.is_finite() {
                return Err(Error::InvalidDatum("amplitude must be finite".into()));
            }
            match c {
                Component::Gaussian { center, .. } => {
                    if !center.is_empty() && center.len() != dim {
                        return Err(Error::InvalidDatum(format!(
                            "center has {} coordinates in dimension {dim}",
                            center.len()
                        )));
                    }
                    if center.iter().any(|x| !x.is_finite()) {
                        return Err(Error::InvalidDatum("center must be finite".into()));
                    }
                }
                Component::Hermite1 { axis, .. } => {
                    if *axis == 0 || *axis > dim {
                        return Err(Error::InvalidDatum(format!("axis {axis} not in 1..={dim}")));
                    }
                }
            }
        }
        Ok(Self { dim, components })
    }

    pub fn zero(dim: usize) -> Result<Self> {
        Self::from_components(dim, Vec::new())
    }

    pub fn gaussian(dim: usize, center: &[f64], sigma: f64, amplitude: f64) -> Result<Self> {
        Self::from_components(
            dim,
            vec![Component::Gaussian {
                center: center.to_vec(),
                sigma,
                amplitude,
            }],
        )
    }

    /// Unit-width, unit-amplitude Gaussian at the origin.
    pub fn standard_gaussian(dim: usize) -> Result<Self> {
        Self::gaussian(dim, &vec![0.0; dim], 1.0, 1.0)
    }

    pub fn hermite1(dim: usize, axis: usize, sigma: f64, amplitude: f64) -> Result<Self> {
        Self::from_components(
            dim,
            vec![Component::Hermite1 {
                axis,
                sigma,
                amplitude,
            }],
        )
    }

    pub fn mixture(dim: usize, parts: &[Datum]) -> Result<Self> {
        let mut comps = Vec::new();
        for p in parts {
            if p.dim != dim {
                return Err(Error::InvalidDatum(
                    "mixture parts differ in dimension".into(),
                ));
            }
            comps.extend(p.components.iter().cloned());
        }
        Self::from_components(dim, comps)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.amplitude() == 0.0)
    }

    /// True when `f(x)` depends on `|x|` only, so `f_hat` is radial too.
    pub fn is_radial(&self) -> bool {
        self.components
            .iter()
            .all(|c| matches!(c, Component::Gaussian { .. }) && c.is_centered())
    }

    /// Same datum with every amplitude multiplied by `s`.
    pub fn scaled(&self, s: f64) -> Self {
        let components = self
            .components
            .iter()
            .map(|c| match c.clone() {
                Component::Gaussian {
                    center,
                    sigma,
                    amplitude,
                } => Component::Gaussian {
                    center,
                    sigma,
                    amplitude: amplitude * s,
                },
                Component::Hermite1 {
                    axis,
                    sigma,
                    amplitude,
                } => Component::Hermite1 {
                    axis,
                    sigma,
                    amplitude: amplitude * s,
                },
            })
            .collect();
        Self {
            dim: self.dim,
            components,
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.components.iter().map(|c| c.eval(x)).sum()
    }

    /// `int x^alpha f(x) dx`, exact.
    pub fn moment(&self, alpha: &[usize]) -> f64 {
        assert_eq!(
            alpha.len(),
            self.dim,
            "multi-index length must equal the dimension"
        );
        self.components
            .iter()
            .map(|c| {
                let s = c.sigma();
                let a = c.amplitude();
                match c {
                    Component::Gaussian { .. } => {
                        let mu = c.center_or_origin(self.dim);
                        a * alpha
                            .iter()
                            .zip(&mu)
                            .map(|(&k, &m)| gaussian_axis_moment(k, m, s))
                            .product::<f64>()
                    }
                    Component::Hermite1 { axis, .. } => {
                        a * alpha
                            .iter()
                            .enumerate()
                            .map(|(d, &k)| {
                                if d + 1 == *axis {
                                    gaussian_axis_moment(k + 1, 0.0, s)
                                } else {
                                    gaussian_axis_moment(k, 0.0, s)
                                }
                            })
                            .product::<f64>()
                    }
                }
            })
            .sum()
    }

    /// Total mass `int f`.
    pub fn mass(&self) -> f64 {
        self.moment(&vec![0; self.dim])
    }

    /// `(int x_j f)_j`.
    pub fn first_moments(&self) -> Vec<f64> {
        (0..self.dim)
            .map(|j| {
                let mut alpha = vec![0; self.dim];
                alpha[j] = 1;
                self.moment(&alpha)
            })
            .collect()
    }

    /// Moment coefficients of every order up to `up_to`.
    pub fn moments(&self, up_to: usize) -> MomentSet {
        let mut coefficients = BTreeMap::new();
        for k in 0..=up_to {
            for alpha in multi_indices(self.dim, k) {
                let fact: f64 = alpha.iter().map(|&a| factorial(a)).product();
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                let coeff = I.powu(k as u32) * (sign / fact * self.moment(&alpha));
                coefficients.insert(alpha, coeff);
            }
        }
        MomentSet {
            dim: self.dim,
            gamma_floor: up_to,
            coefficients,
        }
    }

    /// `f_hat(xi) = int exp(-i x.xi) f(x) dx`.
    pub fn fourier_hat(&self, xi: &[f64]) -> Complex64 {
        self.components
            .iter()
            .map(|c| {
                let p = Projection::new(c, self.dim, xi);
                p.weight * gaussian_exp_remainder(p.mean, p.std, p.shift_order(-1))
            })
            .sum()
    }

    /// `m[f]^k(xi)` through the one-dimensional projection of each component.
    pub fn moment_term(&self, k: usize, xi: &[f64]) -> Complex64 {
        self.components
            .iter()
            .map(|c| {
                let p = Projection::new(c, self.dim, xi);
                match p.shift {
                    0 => p.weight * gaussian_power_moment(p.mean, p.std, k),
                    _ if k == 0 => Complex64::new(0.0, 0.0),
                    _ => p.weight * gaussian_power_moment(p.mean, p.std, k - 1),
                }
            })
            .sum()
    }

    /// `sum_{k <= K} m[f]^k(xi)`.
    pub fn moment_sum(&self, up_to: usize, xi: &[f64]) -> Complex64 {
        (0..=up_to).map(|k| self.moment_term(k, xi)).sum()
    }

    /// `f_hat(xi) - sum_{k <= floor(gamma)} m[f]^k(xi)`, free of cancellation
    /// near `xi = 0`.
    pub fn taylor_remainder(&self, xi: &[f64], gamma: f64) -> Complex64 {
        self.taylor_tail(xi, gamma.floor() as isize)
    }

    /// `f_hat(xi) - sum_{k <= order} m[f]^k(xi)`; `order = -1` gives `f_hat`.
    pub fn taylor_tail(&self, xi: &[f64], order: isize) -> Complex64 {
        self.components
            .iter()
            .map(|c| {
                let p = Projection::new(c, self.dim, xi);
                p.weight * gaussian_exp_remainder(p.mean, p.std, p.shift_order(order))
            })
            .sum()
    }

    /// `||f||_{1,gamma} = int (1 + |x|)^gamma |f(x)| dx`.
    pub fn weighted_l1_norm(&self, gamma: f64) -> f64 {
        if self.components.is_empty() {
            return 0.0;
        }
        let n = self.dim;
        if self.components.len() == 1 && self.components[0].is_centered() {
            let c = &self.components[0];
            let s = c.sigma();
            let a = c.amplitude().abs();
            let rho_max = s * 10.0;
            let rule = gauss_legendre(16);
            return match c {
                Component::Gaussian { .. } => {
                    let radial = integrate_interval(
                        |r| {
                            (1.0 + r).powf(gamma)
                                * r.powi(n as i32 - 1)
                                * (-(r * r) / (s * s)).exp()
                        },
                        0.0,
                        rho_max,
                        64,
                        &rule,
                    );
                    a * sphere_area(n) * radial
                }
                Component::Hermite1 { .. } => {
                    let radial = integrate_interval(
                        |r| (1.0 + r).powf(gamma) * r.powi(n as i32) * (-(r * r) / (s * s)).exp(),
                        0.0,
                        rho_max,
                        64,
                        &rule,
                    );
                    a * abs_coordinate_sphere_integral(n) * radial
                }
            };
        }
        self.tensor_integral(|x, fx| {
            let r: f64 = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            (1.0 + r).powf(gamma) * fx.abs()
        })
    }

    pub fn l1_norm(&self) -> f64 {
        self.weighted_l1_norm(0.0)
    }

    /// `||f||_2`, from closed-form pairwise overlap integrals.
    pub fn l2_norm(&self) -> f64 {
        let mut acc = CompensatedSum::new();
        for a in &self.components {
            for b in &self.components {
                acc.add(overlap(a, b, self.dim));
            }
        }
        acc.value().max(0.0).sqrt()
    }

    /// Tensor Gauss–Legendre over a box holding the data to `exp(-100)`.
    fn tensor_integral<F: Fn(&[f64], f64) -> f64>(&self, g: F) -> f64 {
        let n = self.dim;
        let reach = self
            .components
            .iter()
            .map(|c| {
                let mu = c.center_or_origin(n);
                mu.iter().fold(0.0f64, |m, v| m.max(v.abs())) + 10.0 * c.sigma()
            })
            .fold(0.0f64, f64::max);
        let panels = match n {
            1 => 400,
            2 => 160,
            _ => 48,
        };
        let (gx, gw) = gauss_legendre(8);
        let h = 2.0 * reach / panels as f64;
        let mut axis_nodes = Vec::with_capacity(panels * gx.len());
        for p in 0..panels {
            let mid = -reach + (p as f64 + 0.5) * h;
            for (x, w) in gx.iter().zip(&gw) {
                axis_nodes.push((mid + 0.5 * h * x, 0.5 * h * w));
            }
        }
        let m = axis_nodes.len();
        let total = m.pow(n as u32);
        let mut acc = CompensatedSum::new();
        let mut x = vec![0.0; n];
        for idx in 0..total {
            let mut rem = idx;
            let mut w = 1.0;
            for d in 0..n {
                let (xv, wv) = axis_nodes[rem % m];
                rem /= m;
                x[d] = xv;
                w *= wv;
            }
            let fx = self.eval(&x);
            acc.add(w * g(&x, fx));
        }
        acc.value()
    }
}

/// Moments of `f` as multi-index coefficients: `m[f]^k(xi) = sum_{|alpha|=k} c_alpha xi^alpha`
/// with `c_alpha = ((-1)^|alpha| / alpha!) (int x^alpha f) i^|alpha|`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSet {
    pub dim: usize,
    pub gamma_floor: usize,
    pub coefficients: BTreeMap<Vec<usize>, Complex64>,
}

impl MomentSet {
    pub fn coefficient(&self, alpha: &[usize]) -> Option<Complex64> {
        self.coefficients.get(alpha).copied()
    }

    /// `m[f]^k(xi)`.
    pub fn eval(&self, k: usize, xi: &[f64]) -> Complex64 {
        self.coefficients
            .iter()
            .filter(|(alpha, _)| alpha.iter().sum::<usize>() == k)
            .map(|(alpha, c)| {
                let mono: f64 = alpha
                    .iter()
                    .zip(xi)
                    .map(|(&a, &x)| x.powi(a as i32))
                    .product();
                c * mono
            })
            .sum()
    }

    /// `sum_{k <= gamma_floor} m[f]^k(xi)`.
    pub fn eval_sum(&self, xi: &[f64]) -> Complex64 {
        (0..=self.gamma_floor).map(|k| self.eval(k, xi)).sum()
    }
}

/// All multi-indices of length `dim` with total degree `k`, lexicographic.
pub fn multi_indices(dim: usize, k: usize) -> Vec<Vec<usize>> {
    if dim == 1 {
        return vec![vec![k]];
    }
    let mut out = Vec::new();
    for first in (0..=k).rev() {
        for mut rest in multi_indices(dim - 1, k - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

fn double_factorial_odd(m: usize) -> f64 {
    // (m - 1)!! for even m
    (1..m).step_by(2).map(|i| i as f64).product()
}

/// `int x^k exp(-(x - mu)^2 / sigma^2) dx`.
pub fn gaussian_axis_moment(k: usize, mu: f64, sigma: f64) -> f64 {
    let mass = sigma * PI.sqrt();
    let var = 0.5 * sigma * sigma;
    let mut acc = 0.0;
    for m in (0..=k).step_by(2) {
        let binom = factorial(k) / (factorial(m) * factorial(k - m));
        acc += binom * mu.powi((k - m) as i32) * var.powi((m / 2) as i32) * double_factorial_odd(m);
    }
    mass * acc
}

/// `int_{S^{n-1}} |omega_j| dS`.
fn abs_coordinate_sphere_integral(n: usize) -> f64 {
    2.0 * PI.powf((n as f64 - 1.0) / 2.0) / statrs::function::gamma::gamma((n as f64 + 1.0) / 2.0)
}

/// Projection of one component onto `xi`: with `X` distributed as the
/// normalised Gaussian profile, `S = X . xi` is `N(mean, std^2)`.
struct Projection {
    weight: Complex64,
    mean: f64,
    std: f64,
    /// 1 for `hermite1` (moments shift down by one order), 0 otherwise.
    shift: usize,
}

impl Projection {
    fn new(c: &Component, dim: usize, xi: &[f64]) -> Self {
        let sigma = c.sigma();
        let norm: f64 = xi.iter().map(|v| v * v).sum::<f64>().sqrt();
        let std = sigma * norm / std::f64::consts::SQRT_2;
        let z = c.gauss_mass(dim);
        match c {
            Component::Gaussian { .. } => {
                let mu = c.center_or_origin(dim);
                let mean: f64 = mu.iter().zip(xi).map(|(a, b)| a * b).sum();
                Self {
                    weight: Complex64::new(z, 0.0),
                    mean,
                    std,
                    shift: 0,
                }
            }
            Component::Hermite1 { axis, .. } => {
                // E[X_j g(S)] = (sigma^2 / 2) xi_j E[g'(S)], and
                // d/dS (-iS)^k / k! = -i (-iS)^{k-1} / (k-1)!.
                let w = -I * (z * 0.5 * sigma * sigma * xi[axis - 1]);
                Self {
                    weight: w,
                    mean: 0.0,
                    std,
                    shift: 1,
                }
            }
        }
    }

    fn shift_order(&self, k: isize) -> isize {
        k - self.shift as isize
    }
}

/// `E[(-iS)^k] / k!` for `S ~ N(mean, std^2)`.
fn gaussian_power_moment(mean: f64, std: f64, k: usize) -> Complex64 {
    // nu_j = E[S^j] / j!,  nu_j = (mean nu_{j-1} + std^2 nu_{j-2}) / j
    let s2 = std * std;
    let (mut prev, mut cur) = (0.0, 1.0);
    for j in 1..=k {
        let next = (mean * cur + s2 * prev) / j as f64;
        prev = cur;
        cur = next;
    }
    (-I).powu(k as u32) * cur
}

/// `E[exp(-iS) - sum_{k <= order} (-iS)^k / k!]` for `S ~ N(mean, std^2)`;
/// a negative `order` gives the full characteristic function.
pub fn gaussian_exp_remainder(mean: f64, std: f64, order: isize) -> Complex64 {
    let full = (-I * mean).exp() * (-0.5 * std * std).exp();
    if order < 0 {
        return full;
    }
    let s2 = std * std;
    let order = order as usize;
    let small = mean.abs() + std <= 1.0;
    let mut phase = Complex64::new(1.0, 0.0);
    let (mut prev, mut cur) = (0.0, 1.0);
    if small {
        // tail of the series: sum_{k > order}
        let mut tail = Complex64::new(0.0, 0.0);
        for j in 1..=(order + 40) {
            let next = (mean * cur + s2 * prev) / j as f64;
            prev = cur;
            cur = next;
            phase *= -I;
            if j > order {
                tail += phase * cur;
            }
        }
        tail
    } else {
        let mut head = Complex64::new(1.0, 0.0);
        for j in 1..=order {
            let next = (mean * cur + s2 * prev) / j as f64;
            prev = cur;
            cur = next;
            phase *= -I;
            head += phase * cur;
        }
        full - head
    }
}

/// `int a(x) b(x) dx` for two components.
fn overlap(a: &Component, b: &Component, dim: usize) -> f64 {
    let pa = 1.0 / (a.sigma() * a.sigma());
    let pb = 1.0 / (b.sigma() * b.sigma());
    let p = pa + pb;
    let ma = a.center_or_origin(dim);
    let mb = b.center_or_origin(dim);
    let mut base = a.amplitude() * b.amplitude();
    let mut centre = vec![0.0; dim];
    for d in 0..dim {
        let diff = ma[d] - mb[d];
        base *= (PI / p).sqrt() * (-pa * pb * diff * diff / p).exp();
        centre[d] = (pa * ma[d] + pb * mb[d]) / p;
    }
    let var = 0.5 / p;
    let axis_of = |c: &Component| match c {
        Component::Hermite1 { axis, .. } => Some(axis - 1),
        _ => None,
    };
    match (axis_of(a), axis_of(b)) {
        (None, None) => base,
        (Some(j), None) | (None, Some(j)) => base * centre[j],
        (Some(j), Some(k)) => base * (centre[j] * centre[k] + if j == k { var } else { 0.0 }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force composite rule on `[-12, 12]`.
    fn quad_1d<F: Fn(f64) -> f64>(f: F) -> f64 {
        integrate_interval(f, -12.0, 12.0, 400, &gauss_legendre(12))
    }

    #[test]
    fn gaussian_moments_one_dimension() {
        let g = Datum::standard_gaussian(1).unwrap();
        let m = g.moments(2);
        assert!((m.eval(0, &[0.3]).re - PI.sqrt()).abs() < 1e-14);
        assert_eq!(m.eval(1, &[0.3]), Complex64::new(0.0, 0.0));
        // oracle: int x^2 exp(-x^2) = sqrt(pi)/2
        let second = quad_1d(|x| x * x * (-x * x).exp());
        assert!((second - PI.sqrt() / 2.0).abs() < 1e-10);
        let c = m.coefficient(&[2]).unwrap();
        assert!((c.re - (-0.5 * second)).abs() < 1e-10);
        assert!((c.re + PI.sqrt() / 4.0).abs() < 1e-14);
        assert_eq!(c.im, 0.0);
    }

    #[test]
    fn hermite_first_moment_two_dimensions() {
        let h = Datum::hermite1(2, 1, 1.0, 1.0).unwrap();
        assert_eq!(h.mass(), 0.0);
        // oracle: 2-D tensor quadrature of x1^2 exp(-|x|^2)
        let rule = gauss_legendre(12);
        let weighted = integrate_interval(
            |x1| {
                integrate_interval(
                    |x2| x1 * x1 * (-(x1 * x1 + x2 * x2)).exp(),
                    -12.0,
                    12.0,
                    200,
                    &rule,
                )
            },
            -12.0,
            12.0,
            200,
            &rule,
        );
        assert!((weighted - PI / 2.0).abs() < 1e-8);
        let m = h.moments(1);
        let xi = [0.4, -0.7];
        assert_eq!(m.eval(0, &xi), Complex64::new(0.0, 0.0));
        let expect = -I * xi[0] * weighted;
        assert!((m.eval(1, &xi) - expect).norm() < 1e-8);
    }

    #[test]
    fn fourier_transform_examples() {
        let g = Datum::standard_gaussian(1).unwrap();
        for xi in [0.0f64, 0.5, 2.0] {
            let expect = PI.sqrt() * (-xi * xi / 4.0).exp();
            assert!((g.fourier_hat(&[xi]) - expect).norm() < 1e-14);
        }
        let shifted = Datum::gaussian(2, &[0.5, -1.0], 0.8, 2.0).unwrap();
        assert!((shifted.fourier_hat(&[0.0, 0.0]).re - shifted.mass()).abs() < 1e-12);

        // oracle: direct quadrature of int exp(-i x xi) x exp(-x^2) dx at xi = 0.7
        let h = Datum::hermite1(1, 1, 1.0, 1.0).unwrap();
        let xi = 0.7;
        let re = quad_1d(|x| (x * xi).cos() * x * (-x * x).exp());
        let im = quad_1d(|x| -(x * xi).sin() * x * (-x * x).exp());
        let got = h.fourier_hat(&[xi]);
        assert!((got.re - re).abs() < 1e-8 && (got.im - im).abs() < 1e-8);
        assert!(got.re.abs() < 1e-15);
        assert!((h.fourier_hat(&[-xi]) + got).norm() < 1e-15);
    }

    #[test]
    fn projection_agrees_with_multi_index_moments() {
        let d = Datum::mixture(
            3,
            &[
                Datum::gaussian(3, &[0.3, -0.2, 0.5], 0.9, 1.5).unwrap(),
                Datum::hermite1(3, 2, 1.2, -0.7).unwrap(),
                Datum::gaussian(3, &[0.0, 0.0, 0.0], 1.4, -0.4).unwrap(),
            ],
        )
        .unwrap();
        let m = d.moments(4);
        for xi in [[0.1, 0.2, -0.3], [1.0, -0.5, 0.25], [0.0, 0.0, 0.9]] {
            for k in 0..=4 {
                let a = m.eval(k, &xi);
                let b = d.moment_term(k, &xi);
                assert!(
                    (a - b).norm() < 1e-12 * (1.0 + a.norm()),
                    "k={k}: {a} vs {b}"
                );
            }
        }
    }

    #[test]
    fn remainder_routes_agree() {
        // series tail vs direct subtraction where both are accurate
        for (m, s) in [(0.3, 0.4), (-0.5, 0.45), (0.0, 0.99)] {
            for k in 0..4 {
                let tail = gaussian_exp_remainder(m, s, k);
                let full = gaussian_exp_remainder(m, s, -1);
                let head: Complex64 = (0..=k as usize)
                    .map(|j| gaussian_power_moment(m, s, j))
                    .sum();
                assert!((tail - (full - head)).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn remainder_vanishes_at_origin() {
        let d = Datum::gaussian(2, &[0.5, 0.1], 1.0, 1.0).unwrap();
        for gamma in [0.0, 1.0, 2.5] {
            assert_eq!(d.taylor_remainder(&[0.0, 0.0], gamma).norm(), 0.0);
        }
    }

    #[test]
    fn l2_norm_closed_forms() {
        let g = Datum::standard_gaussian(2).unwrap();
        assert!((g.l2_norm() - (PI / 2.0).sqrt()).abs() < 1e-14);
        let d = Datum::mixture(
            1,
            &[
                Datum::gaussian(1, &[0.4], 0.8, 1.0).unwrap(),
                Datum::hermite1(1, 1, 1.1, 0.6).unwrap(),
            ],
        )
        .unwrap();
        let brute = quad_1d(|x| d.eval(&[x]).powi(2)).sqrt();
        assert!((d.l2_norm() - brute).abs() < 1e-10);
    }

    #[test]
    fn weighted_norms() {
        let g = Datum::standard_gaussian(1).unwrap();
        assert!((g.l1_norm() - PI.sqrt()).abs() < 1e-10);
        let brute = quad_1d(|x| (1.0 + x.abs()).powf(1.5) * (-x * x).exp());
        assert!((g.weighted_l1_norm(1.5) - brute).abs() < 1e-6);
        let h = Datum::hermite1(3, 3, 1.0, 2.0).unwrap();
        // int |x3| exp(-|x|^2) over R^3 = pi
        assert!((h.l1_norm() - 2.0 * PI).abs() < 1e-10);
        let shifted = Datum::gaussian(2, &[1.0, 0.0], 1.0, 1.0).unwrap();
        assert!((shifted.l1_norm() - PI).abs() < 1e-8);
    }

    #[test]
    fn rejects_invalid_data() {
        assert!(Datum::standard_gaussian(4).is_err());
        assert!(Datum::gaussian(2, &[0.0], 1.0, 1.0).is_err());
        assert!(Datum::gaussian(1, &[0.0], 0.0, 1.0).is_err());
        assert!(Datum::hermite1(2, 3, 1.0, 1.0).is_err());
        assert!(Datum::hermite1(2, 0, 1.0, 1.0).is_err());
        let nine: Vec<_> = (0..9)
            .map(|_| Datum::standard_gaussian(1).unwrap())
            .collect();
        assert!(Datum::mixture(1, &nine).is_err());
    }

    #[test]
    fn parses_wire_forms() {
        let g: DatumSpec = serde_json::from_str(
            r#"{"kind": "gaussian", "center": [0.5], "sigma": 1.0, "amplitude": 2.0}"#,
        )
        .unwrap();
        assert_eq!(g.build(1).unwrap().mass(), 2.0 * PI.sqrt());
        let mix: DatumSpec = serde_json::from_str(
            r#"{"kind": "mixture", "components": [
                {"kind": "gaussian", "sigma": 1.0, "amplitude": 1.0},
                {"kind": "hermite1", "axis": 1, "sigma": 1.0, "amplitude": 1.0}]}"#,
        )
        .unwrap();
        assert_eq!(mix.build(2).unwrap().components().len(), 2);
        let list: DatumSpec =
            serde_json::from_str(r#"[{"kind": "gaussian", "sigma": 1.0, "amplitude": 1.0}]"#)
                .unwrap();
        assert_eq!(list.build(3).unwrap().components().len(), 1);
        let zero: DatumSpec = serde_json::from_str(r#"{"kind": "zero"}"#).unwrap();
        assert!(zero.build(2).unwrap().is_zero());
    }

    #[test]
    fn multi_index_counts() {
        assert_eq!(multi_indices(3, 2).len(), 6);
        assert_eq!(multi_indices(2, 3).len(), 4);
        assert_eq!(multi_indices(1, 5), vec![vec![5]]);
    }
}
