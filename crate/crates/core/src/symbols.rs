//! Fourier multipliers of the strongly damped wave equation.
//!
//! Each Fourier mode solves `v'' + r^2 v' + r^2 v = 0` with `r = |xi|`. The
//! characteristic roots are complex for `r < 2`, collide at `r = 2` and are
//! real and negative for `r > 2`. The two propagators `E0`, `E1` are written
//! here in forms that stay finite on every branch:
//!
//! * `r < 2`: `exp(-t r^2 / 2) cos(t beta)` and `exp(-t r^2 / 2) t sinc(t beta)`
//!   with `beta = r sqrt(4 - r^2) / 2`;
//! * `|r - 2|` tiny: short even series in `t^2 beta^2`;
//! * `r > 2`: combinations of `exp(lambda_pm t)`, both exponents non-positive,
//!   so large `t r^2` never overflows.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jet::{Jet, DEFAULT_ORDER};

/// Half-width of the band around `r = 2` handled by series.
pub const BRANCH_GUARD: f64 = 1e-6;

/// Below this argument `sin(x)/x` is summed as a series.
pub const SINC_GUARD: f64 = 1e-5;

/// A point `(t, |xi|)` at which the symbols are evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymbolQuery {
    t: f64,
    r: f64,
}

impl SymbolQuery {
    pub fn new(t: f64, r: f64) -> Result<Self> {
        if !t.is_finite() || !r.is_finite() || t < 0.0 || r < 0.0 {
            return Err(Error::InvalidQuery(format!(
                "need finite t >= 0 and r >= 0, got t = {t}, r = {r}"
            )));
        }
        Ok(Self { t, r })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn r(&self) -> f64 {
        self.r
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchTag {
    Oscillatory,
    Transitional,
    Hyperbolic,
}

/// Branch classification of a frequency magnitude, with the real
/// characteristic roots when they exist.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchForm {
    pub tag: BranchTag,
    pub lambda_plus: Option<f64>,
    pub lambda_minus: Option<f64>,
}

/// Real roots of `lambda^2 + r^2 lambda + r^2 = 0` for `r >= 2`, ordered
/// `(lambda_plus, lambda_minus)`. The smaller-magnitude root is obtained from
/// the product `lambda_plus * lambda_minus = r^2` to avoid cancellation.
pub fn real_roots(r: f64) -> Option<(f64, f64)> {
    if r < 2.0 {
        return None;
    }
    let disc = r * ((r - 2.0) * (r + 2.0)).sqrt();
    let minus = -0.5 * (r * r + disc);
    let plus = r * r / minus;
    Some((plus, minus))
}

pub fn branch(r: f64) -> BranchForm {
    let tag = if (r - 2.0).abs() <= BRANCH_GUARD {
        BranchTag::Transitional
    } else if r < 2.0 {
        BranchTag::Oscillatory
    } else {
        BranchTag::Hyperbolic
    };
    let (lambda_plus, lambda_minus) = match real_roots(r) {
        Some((p, m)) => (Some(p), Some(m)),
        None => (None, None),
    };
    BranchForm {
        tag,
        lambda_plus,
        lambda_minus,
    }
}

/// `sin(x) / x`, continuous at the origin.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < SINC_GUARD {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

/// Signed `beta^2 = r^2 (4 - r^2) / 4`; positive on the oscillatory side.
fn beta_squared(r: f64) -> f64 {
    0.25 * r * r * (2.0 - r) * (2.0 + r)
}

/// Uniform decay exponent: `|E_i(t, r)|` is dominated by `exp(-t * decay_rate(r))`
/// up to a non-exponential prefactor.
pub fn decay_rate(r: f64) -> f64 {
    match real_roots(r) {
        Some((plus, _)) => (0.5 * r * r).min(plus.abs()),
        None => 0.5 * r * r,
    }
}

/// `(E0, E1)` at one query.
pub fn eval_pair(q: SymbolQuery) -> (f64, f64) {
    let (t, r) = (q.t, q.r);
    let s = beta_squared(r);
    let damp = (-0.5 * t * r * r).exp();
    let tag = branch(r).tag;

    if tag == BranchTag::Transitional {
        let x = t * t * s;
        if x.abs() < 1e-3 {
            let e0 = damp * (1.0 - x / 2.0 + x * x / 24.0);
            let e1 = damp * t * (1.0 - x / 6.0 + x * x / 120.0);
            return (e0, e1);
        }
    }

    if s >= 0.0 {
        let beta = s.sqrt();
        let tb = t * beta;
        (damp * tb.cos(), damp * t * sinc(tb))
    } else {
        // r > 2 (possibly inside the guard band at large t)
        let (plus, minus) = real_roots(r).expect("r > 2 on this side");
        let gap = plus - minus;
        let ep = (plus * t).exp();
        let em = (minus * t).exp();
        let e0 = 0.5 * (ep + em);
        let e1 = -ep * (-gap * t).exp_m1() / gap;
        (e0, e1)
    }
}

pub fn eval_e0(q: SymbolQuery) -> f64 {
    eval_pair(q).0
}

pub fn eval_e1(q: SymbolQuery) -> f64 {
    eval_pair(q).1
}

/// Fourier transform of the solution at `(t, xi)` given the transformed data.
pub fn solution_hat(q: SymbolQuery, u0_hat: Complex64, u1_hat: Complex64) -> Complex64 {
    let (e0, e1) = eval_pair(q);
    let r2 = q.r * q.r;
    u0_hat * e0 + (u0_hat * (0.5 * r2) + u1_hat) * e1
}

/// Which propagator an expansion refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symbol {
    /// `E0`, `L0`, `e_0^k`
    Zero,
    /// `E1`, `L1`, `e_1^k`
    One,
}

impl Symbol {
    pub fn from_index(i: usize) -> Result<Self> {
        match i {
            0 => Ok(Symbol::Zero),
            1 => Ok(Symbol::One),
            _ => Err(Error::InvalidQuery(format!(
                "symbol index {i} is not 0 or 1"
            ))),
        }
    }
}

fn check_a(a: f64) -> Result<()> {
    if !(0.0..2.0).contains(&a) || !a.is_finite() {
        return Err(Error::ExpansionVariableOutOfRange(a));
    }
    Ok(())
}

/// Direct evaluation of the auxiliary functions `L0`, `L1` at `a`.
///
/// For `a = r < 2`, `exp(-t r^2 / 2) L_i(r, t, xi) = E_i(t, xi)`.
pub fn eval_l(sym: Symbol, a: f64, q: SymbolQuery) -> Result<f64> {
    check_a(a)?;
    let (t, r) = (q.t, q.r);
    let root = ((2.0 - a) * (2.0 + a)).sqrt();
    let phase = t * r - t * r * r * a / (4.0 + 2.0 * root);
    match sym {
        Symbol::Zero => Ok(phase.cos()),
        Symbol::One => {
            if r == 0.0 {
                return Err(Error::ZeroFrequency);
            }
            Ok(phase.sin() / (0.5 * r * root))
        }
    }
}

/// Taylor jet of `a -> L_i(a, t, xi)` around `a0`; coefficient `k` is
/// `(1/k!) d^k L_i / da^k (a0)`.
pub fn l_jet(sym: Symbol, a0: f64, q: SymbolQuery, order: usize) -> Result<Jet> {
    check_a(a0)?;
    let (t, r) = (q.t, q.r);
    if sym == Symbol::One && r == 0.0 {
        return Err(Error::ZeroFrequency);
    }
    let a = Jet::variable_at(a0, order.max(1))?;
    let root = a.mul(&a)?.scale(-1.0).add_const(4.0).sqrt()?;
    let shift = a.div(&root.scale(2.0).add_const(4.0))?;
    let phase = shift.scale(-t * r * r).add_const(t * r);
    let (sin, cos) = phase.sin_cos();
    let out = match sym {
        Symbol::Zero => cos,
        Symbol::One => sin.div(&root.scale(0.5 * r))?,
    };
    truncate(out, order)
}

fn truncate(j: Jet, order: usize) -> Result<Jet> {
    if j.order() == order {
        Ok(j)
    } else {
        Jet::from_coeffs(&j.coeffs()[..=order])
    }
}

/// All expansion terms `e_i^0 .. e_i^order` at one query, packed into a jet
/// whose `k`-th coefficient is `e_i^k(t, xi)`.
///
/// `e_i^k = exp(-t r^2 / 2) (1/k!) d^k L_i / da^k (0) r^k`. At `r = 0`, `e_1`
/// is continued by its limit: `t` for `k = 0` and `0` above.
pub fn expansion_terms(sym: Symbol, q: SymbolQuery, order: usize) -> Result<Jet> {
    let (t, r) = (q.t, q.r);
    if sym == Symbol::One && r == 0.0 {
        let mut c = vec![0.0; order + 1];
        c[0] = t;
        return Jet::from_coeffs(&c);
    }
    let l = l_jet(sym, 0.0, q, order)?;
    let damp = (-0.5 * t * r * r).exp();
    let mut c = [0.0; crate::jet::MAX_ORDER + 1];
    let mut rk = 1.0;
    for (k, ck) in l.coeffs().iter().enumerate() {
        c[k] = if damp == 0.0 { 0.0 } else { damp * ck * rk };
        rk *= r;
    }
    Jet::from_coeffs(&c[..=order])
}

/// One expansion term `e_i^k(t, xi)` computed at the default jet order.
pub fn eval_e_ik(sym: Symbol, k: usize, q: SymbolQuery) -> Result<f64> {
    if k > DEFAULT_ORDER {
        return Err(Error::DerivativeOutOfRange {
            k,
            order: DEFAULT_ORDER,
        });
    }
    expansion_terms(sym, q, DEFAULT_ORDER)?.coeff(k)
}
