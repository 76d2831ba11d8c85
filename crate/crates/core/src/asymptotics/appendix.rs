//! Growth of `int_{R^n} e^{-t|xi|^2} |sin(t|xi|)/|xi||^2 d xi` and the
//! explicit two-sided brackets for it.

use std::f64::consts::{E, PI};

use serde::Serialize;

use super::Accuracy;
use crate::error::{Error, Result};
use crate::quadrature::{integrate_1d, integrate_rn, TailBound};

pub const MIN_TIME: f64 = 10.0;

pub fn appendix_growth(n: usize, t: f64, acc: &Accuracy) -> Result<f64> {
    if !(t >= MIN_TIME && t.is_finite()) {
        return Err(Error::InvalidQuery(format!(
            "growth integral needs t >= {MIN_TIME}, got {t}"
        )));
    }
    let grid = acc.grid(n, true, t)?;
    // sin^2(t r) / r^2 <= t^2
    let tail = TailBound {
        scale: t * t,
        rate: t,
    };
    let v = integrate_rn(
        &grid,
        |xi| {
            let r2: f64 = xi.iter().map(|v| v * v).sum();
            let r = r2.sqrt();
            let s = (t * r).sin() / r;
            (-t * r2).exp() * s * s
        },
        tail,
    )?;
    Ok(v.value)
}

/// `C0 = int_0^inf |log r| r e^{-r^2} dr`.
pub fn log_moment_constant() -> f64 {
    integrate_1d(|r| r.ln().abs() * r * (-r * r).exp(), 0.0, 1.0, 400.0)
        + integrate_1d(|r| r.ln() * r * (-r * r).exp(), 1.0, 12.0, 400.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bracket {
    pub lower: f64,
    pub upper: f64,
}

impl Bracket {
    pub fn contains(&self, v: f64) -> bool {
        self.lower <= v && v <= self.upper
    }
}

/// Explicit bracket for the growth integral at time `t`.
pub fn growth_bracket(n: usize, t: f64) -> Bracket {
    let tail = (-PI * PI / 4.0).exp();
    match n {
        1 => Bracket {
            lower: 3.0 * t / (4.0 * E) - 2.0 * t.sqrt() * (tail / (2.0 * PI) + PI.sqrt() / 2.0),
            upper: 4.0 * t,
        },
        2 => {
            let c0 = log_moment_constant();
            Bracket {
                lower: PI / 4.0 * t * (-(-1.0 / t).exp_m1())
                    + PI / (4.0 * E) * t.ln()
                    + PI / 2.0 * (PI / 2.0).ln() * tail
                    - PI * c0,
                upper: PI + PI * t.ln() + 4.0 * PI * c0,
            }
        }
        _ => {
            let g = integrate_1d(|x| (-x * x).exp(), 0.0, 1.0, 200.0);
            Bracket {
                lower: PI * g / t.sqrt(),
                upper: 2.0 * PI.powf(1.5) / t.sqrt(),
            }
        }
    }
}

/// Limits of `value / t` (1-D), the `log t` coefficient (2-D) and `value sqrt t` (3-D).
pub fn appendix_limit(n: usize) -> f64 {
    match n {
        1 => PI,
        2 => PI / 2.0,
        _ => PI.powf(1.5),
    }
}

/// Bracket on the fitted `log t` coefficient in 2-D.
pub fn log_coefficient_bracket() -> Bracket {
    Bracket {
        lower: PI / (4.0 * E),
        upper: PI + 4.0 * PI * log_moment_constant(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_moment_constant_value() {
        // int_0^inf log(r) r e^{-r^2} dr = -gamma_E / 4; split at 1 by an independent rule.
        let rule = crate::quadrature::legendre::gauss_legendre(20);
        let inner = crate::quadrature::legendre::integrate_interval(
            |u: f64| {
                // r = u^4 removes the log singularity
                let r = u.powi(4);
                r.ln().abs() * r * (-r * r).exp() * 4.0 * u.powi(3)
            },
            0.0,
            1.0,
            40,
            &rule,
        );
        let outer = crate::quadrature::legendre::integrate_interval(
            |r: f64| r.ln() * r * (-r * r).exp(),
            1.0,
            12.0,
            200,
            &rule,
        );
        assert!((log_moment_constant() - (inner + outer)).abs() < 1e-10);
        let euler_gamma = 0.577_215_664_901_532_9;
        assert!((outer - inner + euler_gamma / 4.0).abs() < 1e-10);
    }

    #[test]
    fn growth_at_moderate_time() {
        let acc = Accuracy::default();
        let t = 1e3;
        let v1 = appendix_growth(1, t, &acc).unwrap();
        assert!(growth_bracket(1, t).contains(v1));
        assert!((v1 / t / PI - 1.0).abs() < 0.1);
        let v3 = appendix_growth(3, t, &acc).unwrap();
        assert!(growth_bracket(3, t).contains(v3));
        assert!((v3 * t.sqrt() / PI.powf(1.5) - 1.0).abs() < 0.1);
        assert!(appendix_growth(1, 5.0, &acc).is_err());
    }
}
