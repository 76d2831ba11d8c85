//! Truncated Taylor series in one scalar variable.
//!
//! A [`Jet`] of order `K` stores `c_0 .. c_K` and stands for
//! `c_0 + c_1 a + ... + c_K a^K + O(a^{K+1})`. All arithmetic is the
//! truncated power-series arithmetic; nothing above `a^K` is ever read or
//! written, so evaluating a pipeline at order `K` and at order `K + 2`
//! yields the same first `K + 1` coefficients.
//!
//! Coefficients live in a fixed-width inline array, which keeps the type
//! `Copy` and allocation free inside quadrature loops.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported order.
pub const MAX_ORDER: usize = 15;

/// Order used by the expansion machinery unless a caller asks otherwise.
pub const DEFAULT_ORDER: usize = 6;

const WIDTH: usize = MAX_ORDER + 1;

#[derive(Clone, Copy, PartialEq)]
pub struct Jet {
    order: usize,
    coeffs: [f64; WIDTH],
}

impl fmt::Debug for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs()).finish()
    }
}

fn check_order(order: usize) -> Result<()> {
    if order > MAX_ORDER {
        return Err(Error::OrderTooLarge {
            requested: order,
            max: MAX_ORDER,
        });
    }
    Ok(())
}

impl Jet {
    /// Builds a jet from explicit coefficients; the order is `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: &[f64]) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidQuery(
                "a jet needs at least one coefficient".into(),
            ));
        }
        let order = coeffs.len() - 1;
        check_order(order)?;
        let mut c = [0.0; WIDTH];
        c[..coeffs.len()].copy_from_slice(coeffs);
        Ok(Self { order, coeffs: c })
    }

    /// The constant `c` embedded at order `order`.
    pub fn constant(c: f64, order: usize) -> Result<Self> {
        check_order(order)?;
        let mut coeffs = [0.0; WIDTH];
        coeffs[0] = c;
        Ok(Self { order, coeffs })
    }

    /// The expansion variable `a` itself.
    pub fn variable(order: usize) -> Result<Self> {
        Self::variable_at(0.0, order)
    }

    /// `a0 + h`, i.e. the variable expanded around the base point `a0`.
    pub fn variable_at(a0: f64, order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::ZeroOrderVariable);
        }
        let mut j = Self::constant(a0, order)?;
        j.coeffs[1] = 1.0;
        Ok(j)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs[..=self.order]
    }

    /// Constant term.
    pub fn value(&self) -> f64 {
        self.coeffs[0]
    }

    fn same_order(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch(self.order, other.order));
        }
        Ok(())
    }

    fn zeros_like(&self) -> Self {
        Self {
            order: self.order,
            coeffs: [0.0; WIDTH],
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        let mut out = *self;
        for k in 0..=self.order {
            out.coeffs[k] += other.coeffs[k];
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        let mut out = *self;
        for k in 0..=self.order {
            out.coeffs[k] -= other.coeffs[k];
        }
        Ok(out)
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let mut out = self.zeros_like();
        for k in 0..=self.order {
            let mut acc = 0.0;
            for j in 0..=k {
                acc += self.coeffs[j] * other.coeffs[k - j];
            }
            out.coeffs[k] = acc;
        }
        out
    }

    /// Power-series division; the divisor must have a nonzero constant term.
    pub fn div(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        let d0 = other.coeffs[0];
        if d0 == 0.0 {
            return Err(Error::DivisionByZero);
        }
        let mut q = self.zeros_like();
        for k in 0..=self.order {
            let mut acc = self.coeffs[k];
            for j in 0..k {
                acc -= q.coeffs[j] * other.coeffs[k - j];
            }
            q.coeffs[k] = acc / d0;
        }
        Ok(q)
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = *self;
        for c in out.coeffs[..=self.order].iter_mut() {
            *c *= s;
        }
        out
    }

    pub fn add_const(&self, c: f64) -> Self {
        let mut out = *self;
        out.coeffs[0] += c;
        out
    }

    /// Truncated series of the square root; needs a positive constant term.
    pub fn sqrt(&self) -> Result<Self> {
        let x0 = self.coeffs[0];
        if !(x0 > 0.0) {
            return Err(Error::NonPositiveSqrt(x0));
        }
        let mut s = self.zeros_like();
        s.coeffs[0] = x0.sqrt();
        let two_s0 = 2.0 * s.coeffs[0];
        for k in 1..=self.order {
            let mut acc = self.coeffs[k];
            for j in 1..k {
                acc -= s.coeffs[j] * s.coeffs[k - j];
            }
            s.coeffs[k] = acc / two_s0;
        }
        Ok(s)
    }

    /// `(sin x, cos x)` by angle addition around the constant term.
    ///
    /// With `x = c0 + h`, `sin x = sin c0 cos h + cos c0 sin h`; the series of
    /// `sin h` and `cos h` terminate at the jet order because `h` has no
    /// constant term.
    pub fn sin_cos(&self) -> (Self, Self) {
        let c0 = self.coeffs[0];
        let mut h = *self;
        h.coeffs[0] = 0.0;

        let mut sin_h = self.zeros_like();
        let mut cos_h = self.zeros_like();
        cos_h.coeffs[0] = 1.0;

        // power = h^m / m!
        let mut power = self.zeros_like();
        power.coeffs[0] = 1.0;
        for m in 1..=self.order {
            power = power.mul_unchecked(&h).scale(1.0 / m as f64);
            let target = if m % 2 == 1 { &mut sin_h } else { &mut cos_h };
            let sign = if (m / 2) % 2 == 0 { 1.0 } else { -1.0 };
            for k in 0..=self.order {
                target.coeffs[k] += sign * power.coeffs[k];
            }
        }

        let (s0, k0) = c0.sin_cos();
        let mut sin = self.zeros_like();
        let mut cos = self.zeros_like();
        for k in 0..=self.order {
            sin.coeffs[k] = s0 * cos_h.coeffs[k] + k0 * sin_h.coeffs[k];
            cos.coeffs[k] = k0 * cos_h.coeffs[k] - s0 * sin_h.coeffs[k];
        }
        (sin, cos)
    }

    /// `k!` times the `k`-th coefficient: the `k`-th derivative at the base point.
    pub fn derivative_at_zero(&self, k: usize) -> Result<f64> {
        if k > self.order {
            return Err(Error::DerivativeOutOfRange {
                k,
                order: self.order,
            });
        }
        let fact: f64 = (1..=k).map(|i| i as f64).product();
        Ok(fact * self.coeffs[k])
    }

    /// Raw Taylor coefficient `c_k`, i.e. the `k`-th derivative divided by `k!`.
    pub fn coeff(&self, k: usize) -> Result<f64> {
        if k > self.order {
            return Err(Error::DerivativeOutOfRange {
                k,
                order: self.order,
            });
        }
        Ok(self.coeffs[k])
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs().iter().all(|c| c.is_finite())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn jet(c: &[f64]) -> Jet {
        Jet::from_coeffs(c).unwrap()
    }

    fn close(a: &[f64], b: &[f64], tol: f64) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() <= tol, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn constants_and_variable() {
        assert_eq!(Jet::constant(1.0, 2).unwrap().coeffs(), &[1.0, 0.0, 0.0]);
        assert_eq!(Jet::constant(0.0, 0).unwrap().coeffs(), &[0.0]);
        assert_eq!(Jet::constant(-3.5, 1).unwrap().coeffs(), &[-3.5, 0.0]);
        assert_eq!(Jet::variable(2).unwrap().coeffs(), &[0.0, 1.0, 0.0]);
        assert_eq!(Jet::variable(1).unwrap().coeffs(), &[0.0, 1.0]);
        assert_eq!(Jet::variable(0), Err(Error::ZeroOrderVariable));
        let a = Jet::variable(3).unwrap();
        assert_eq!(a.mul(&a).unwrap().coeffs(), &[0.0, 0.0, 1.0, 0.0]);
    }

    #[test]
    fn arithmetic_examples() {
        let p = jet(&[1.0, 1.0, 0.0]).mul(&jet(&[1.0, -1.0, 0.0])).unwrap();
        assert_eq!(p.coeffs(), &[1.0, 0.0, -1.0]);
        let q = jet(&[1.0, 0.0, 0.0]).div(&jet(&[1.0, 1.0, 0.0])).unwrap();
        assert_eq!(q.coeffs(), &[1.0, -1.0, 1.0]);
        let s = jet(&[0.0, 1.0]).add(&jet(&[2.0, 3.0])).unwrap();
        assert_eq!(s.coeffs(), &[2.0, 4.0]);
    }

    #[test]
    fn arithmetic_errors() {
        assert_eq!(
            jet(&[1.0, 0.0]).div(&jet(&[0.0, 1.0])),
            Err(Error::DivisionByZero)
        );
        assert_eq!(
            jet(&[1.0, 0.0]).add(&jet(&[1.0, 0.0, 0.0])),
            Err(Error::OrderMismatch(1, 2))
        );
        assert!(matches!(
            jet(&[0.0, 1.0]).sqrt(),
            Err(Error::NonPositiveSqrt(_))
        ));
        assert!(matches!(
            jet(&[-1.0, 1.0]).sqrt(),
            Err(Error::NonPositiveSqrt(_))
        ));
        assert!(Jet::constant(1.0, MAX_ORDER + 1).is_err());
    }

    #[test]
    fn sqrt_examples() {
        close(
            jet(&[4.0, 0.0, -1.0]).sqrt().unwrap().coeffs(),
            &[2.0, 0.0, -0.25],
            1e-15,
        );
        close(jet(&[1.0, 0.0]).sqrt().unwrap().coeffs(), &[1.0, 0.0], 0.0);
        close(
            jet(&[9.0, 6.0, 1.0]).sqrt().unwrap().coeffs(),
            &[3.0, 1.0, 0.0],
            1e-15,
        );
    }

    #[test]
    fn sin_cos_examples() {
        let (s, c) = jet(&[PI / 2.0, 0.0, 0.0]).sin_cos();
        close(s.coeffs(), &[1.0, 0.0, 0.0], 1e-15);
        close(c.coeffs(), &[0.0, 0.0, 0.0], 1e-15);

        let (s, c) = jet(&[0.0, 1.0, 0.0]).sin_cos();
        close(s.coeffs(), &[0.0, 1.0, 0.0], 1e-15);
        close(c.coeffs(), &[1.0, 0.0, -0.5], 1e-15);

        let (s, c) = jet(&[PI / 6.0, 1.0]).sin_cos();
        let r3 = 3f64.sqrt();
        close(s.coeffs(), &[0.5, r3 / 2.0], 1e-15);
        close(c.coeffs(), &[r3 / 2.0, -0.5], 1e-15);
    }

    #[test]
    fn sin_cos_matches_maclaurin_to_high_order() {
        let (s, c) = Jet::variable(9).unwrap().sin_cos();
        let mut fact = 1.0;
        for k in 0..=9 {
            if k > 0 {
                fact *= k as f64;
            }
            let (es, ec) = match k % 4 {
                0 => (0.0, 1.0),
                1 => (1.0, 0.0),
                2 => (0.0, -1.0),
                _ => (-1.0, 0.0),
            };
            assert!((s.coeffs()[k] - es / fact).abs() < 1e-16);
            assert!((c.coeffs()[k] - ec / fact).abs() < 1e-16);
        }
    }

    #[test]
    fn derivative_extraction() {
        assert_eq!(jet(&[1.0, 2.0, 3.0]).derivative_at_zero(2).unwrap(), 6.0);
        assert_eq!(jet(&[5.0, 0.0]).derivative_at_zero(0).unwrap(), 5.0);
        assert_eq!(
            jet(&[5.0, 0.0]).derivative_at_zero(2),
            Err(Error::DerivativeOutOfRange { k: 2, order: 1 })
        );
    }
}
