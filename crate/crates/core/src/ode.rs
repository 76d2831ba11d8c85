//! Fixed-step RK4 integration of one Fourier mode,
//! `u'' + r^2 u' + r^2 u = 0`, as ground truth for the closed-form symbols.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Longest supported integration time.
pub const MAX_T_END: f64 = 50.0;

/// Largest step allowed at frequency `r`.
pub fn step_bound(r: f64) -> f64 {
    0.01 / r.powi(2).max(1.0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct OdeRun {
    pub r: f64,
    pub t_end: f64,
    pub h: f64,
    pub initial: (Complex64, Complex64),
    /// `(t_i, u(t_i))`, ascending, ending at `t_end`.
    pub samples: Vec<(f64, Complex64)>,
}

impl OdeRun {
    pub fn final_value(&self) -> Complex64 {
        self.samples.last().map(|s| s.1).unwrap_or(self.initial.0)
    }
}

/// Integrates with the largest uniform step not exceeding [`step_bound`].
pub fn integrate_mode(r: f64, t_end: f64, u0_hat: Complex64, u1_hat: Complex64) -> Result<OdeRun> {
    check_range(r, t_end)?;
    let bound = step_bound(r);
    let steps = (t_end / bound).ceil().max(1.0) as usize;
    run(r, t_end, t_end / steps as f64, steps, u0_hat, u1_hat)
}

/// Integrates with step `h` (rounded down so it divides `t_end`).
pub fn integrate_mode_with_step(
    r: f64,
    t_end: f64,
    h: f64,
    u0_hat: Complex64,
    u1_hat: Complex64,
) -> Result<OdeRun> {
    check_range(r, t_end)?;
    let bound = step_bound(r);
    if !(h > 0.0 && h <= bound) {
        return Err(Error::StepTooLarge { step: h, bound });
    }
    let steps = (t_end / h).ceil().max(1.0) as usize;
    run(r, t_end, t_end / steps as f64, steps, u0_hat, u1_hat)
}

fn check_range(r: f64, t_end: f64) -> Result<()> {
    if !(r >= 0.0 && r.is_finite()) {
        return Err(Error::InvalidQuery(format!(
            "frequency {r} must be finite and >= 0"
        )));
    }
    if !(t_end > 0.0 && t_end <= MAX_T_END) {
        return Err(Error::OracleRange(t_end));
    }
    Ok(())
}

fn run(r: f64, t_end: f64, h: f64, steps: usize, u0: Complex64, u1: Complex64) -> Result<OdeRun> {
    let r2 = r * r;
    let rhs = |u: Complex64, v: Complex64| (v, -r2 * (u + v));
    // Keep about a thousand samples regardless of step count.
    let stride = (steps / 1000).max(1);
    let mut samples = Vec::with_capacity(steps / stride + 2);
    samples.push((0.0, u0));
    let (mut u, mut v) = (u0, u1);
    for i in 1..=steps {
        let (k1u, k1v) = rhs(u, v);
        let (k2u, k2v) = rhs(u + 0.5 * h * k1u, v + 0.5 * h * k1v);
        let (k3u, k3v) = rhs(u + 0.5 * h * k2u, v + 0.5 * h * k2v);
        let (k4u, k4v) = rhs(u + h * k3u, v + h * k3v);
        u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        if i % stride == 0 || i == steps {
            let t = if i == steps { t_end } else { i as f64 * h };
            samples.push((t, u));
        }
    }
    Ok(OdeRun {
        r,
        t_end,
        h,
        initial: (u0, u1),
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::{solution_hat, SymbolQuery};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn zero_frequency_is_linear() {
        let run = integrate_mode(0.0, 7.0, c(1.5, -0.5), c(0.25, 2.0)).unwrap();
        for &(t, u) in &run.samples {
            let exact = c(1.5, -0.5) + t * c(0.25, 2.0);
            assert!((u - exact).norm() < 1e-12, "t={t}");
        }
    }

    #[test]
    fn critical_damping() {
        let run = integrate_mode(2.0, 5.0, c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        for &(t, u) in &run.samples {
            assert!((u.re - t * (-2.0 * t).exp()).abs() < 1e-8, "t={t}");
        }
    }

    #[test]
    fn agrees_with_closed_form() {
        let run = integrate_mode(1.0, 1.0, c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        let exact = solution_hat(
            SymbolQuery::new(1.0, 1.0).unwrap(),
            c(1.0, 0.0),
            c(0.0, 0.0),
        );
        assert!((run.final_value() - exact).norm() < 1e-8);
        let run = integrate_mode(1.0, 1.0, c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        let exact = solution_hat(
            SymbolQuery::new(1.0, 1.0).unwrap(),
            c(0.0, 0.0),
            c(1.0, 0.0),
        );
        assert!((run.final_value() - exact).norm() < 1e-8);
    }

    #[test]
    fn fourth_order_convergence() {
        let (r, t) = (1.0, 20.0);
        let exact = solution_hat(SymbolQuery::new(t, r).unwrap(), c(1.0, 0.0), c(1.0, 0.0));
        let err = |h: f64| {
            let run = integrate_mode_with_step(r, t, h, c(1.0, 0.0), c(1.0, 0.0)).unwrap();
            (run.final_value() - exact).norm()
        };
        let p = (err(0.01) / err(0.005)).log2();
        assert!((3.7..=4.3).contains(&p), "order {p}");
    }

    #[test]
    fn range_and_step_errors() {
        assert!(matches!(
            integrate_mode(1.0, 51.0, c(1.0, 0.0), c(0.0, 0.0)),
            Err(Error::OracleRange(_))
        ));
        assert!(matches!(
            integrate_mode_with_step(3.0, 1.0, 0.01, c(1.0, 0.0), c(0.0, 0.0)),
            Err(Error::StepTooLarge { .. })
        ));
        let run = integrate_mode(3.0, 1.0, c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        assert!(run.h <= step_bound(3.0));
        assert_eq!(run.samples.last().unwrap().0, 1.0);
    }
}
