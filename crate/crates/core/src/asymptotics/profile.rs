//! Expansion profiles `sum_{k <= [gamma]} e_i^k sum_{j <= [gamma] - k} m[f]^j`.

use num_complex::Complex64;

use crate::data::Datum;
use crate::error::{Error, Result};
use crate::jet::MAX_ORDER;
use crate::symbols::{eval_pair, expansion_terms, Symbol, SymbolQuery};

#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionProfile {
    symbol: Symbol,
    datum: Datum,
    gamma: f64,
    terms: usize,
}

impl ExpansionProfile {
    pub fn new(symbol: Symbol, datum: Datum, gamma: f64) -> Result<Self> {
        if !(gamma >= 0.0 && gamma.is_finite()) {
            return Err(Error::InvalidQuery(format!(
                "gamma = {gamma} must be finite and >= 0"
            )));
        }
        let terms = gamma.floor() as usize;
        if terms > MAX_ORDER {
            return Err(Error::OrderTooLarge {
                requested: terms,
                max: MAX_ORDER,
            });
        }
        Ok(Self {
            symbol,
            datum,
            gamma,
            terms,
        })
    }

    pub fn symbol(&self) -> Symbol {
        self.symbol
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn datum(&self) -> &Datum {
        &self.datum
    }

    /// `[gamma]`.
    pub fn terms(&self) -> usize {
        self.terms
    }

    fn query(t: f64, xi: &[f64]) -> Result<SymbolQuery> {
        let r = xi.iter().map(|v| v * v).sum::<f64>().sqrt();
        SymbolQuery::new(t, r)
    }

    /// `e_i^0 .. e_i^{[gamma]}` at `(t, xi)`.
    fn e_terms(&self, q: SymbolQuery) -> Result<Vec<f64>> {
        let jet = expansion_terms(self.symbol, q, self.terms.max(1))?;
        Ok(jet.coeffs()[..=self.terms].to_vec())
    }

    pub fn eval(&self, t: f64, xi: &[f64]) -> Result<Complex64> {
        let q = Self::query(t, xi)?;
        let e = self.e_terms(q)?;
        let m: Vec<Complex64> = (0..=self.terms)
            .map(|j| self.datum.moment_term(j, xi))
            .collect();
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, ek) in e.iter().enumerate() {
            let inner: Complex64 = m[..=(self.terms - k)].iter().sum();
            acc += inner * *ek;
        }
        Ok(acc)
    }

    /// `E_i(t) f_hat - profile`, evaluated as
    /// `(E_i - sum_k e^k) f_hat + sum_k e^k (f_hat - sum_{j <= [gamma]-k} m^j)`
    /// so the data part never cancels.
    pub fn remainder(&self, t: f64, xi: &[f64]) -> Result<Complex64> {
        let q = Self::query(t, xi)?;
        let (e0, e1) = eval_pair(q);
        let big = match self.symbol {
            Symbol::Zero => e0,
            Symbol::One => e1,
        };
        let e = self.e_terms(q)?;
        let f_hat = self.datum.fourier_hat(xi);
        let symbol_tail = big - e.iter().sum::<f64>();
        let mut acc = f_hat * symbol_tail;
        for (k, ek) in e.iter().enumerate() {
            acc += self.datum.taylor_tail(xi, (self.terms - k) as isize) * *ek;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::eval_e1;

    #[test]
    fn below_one_is_single_term() {
        let u = Datum::gaussian(2, &[0.3, -0.2], 0.8, 1.5).unwrap();
        let p = ExpansionProfile::new(Symbol::One, u.clone(), 0.7).unwrap();
        let xi = [0.2, 0.1];
        let r = (0.05f64).sqrt();
        let (t, mass) = (4.0, u.mass());
        let expect = (-0.5 * t * r * r).exp() * (t * r).sin() / r * mass;
        assert!((p.eval(t, &xi).unwrap() - expect).norm() < 1e-13);
    }

    #[test]
    fn stable_remainder_matches_direct_difference() {
        let u = Datum::mixture(
            2,
            &[
                Datum::gaussian(2, &[0.3, 0.1], 1.0, 1.0).unwrap(),
                Datum::hermite1(2, 2, 0.7, -0.4).unwrap(),
            ],
        )
        .unwrap();
        for gamma in [0.0, 1.0, 2.5] {
            for sym in [Symbol::Zero, Symbol::One] {
                let p = ExpansionProfile::new(sym, u.clone(), gamma).unwrap();
                for (t, xi) in [(3.0, [0.4, -0.3]), (10.0, [0.05, 0.02]), (50.0, [0.9, 0.1])] {
                    let q = ExpansionProfile::query(t, &xi).unwrap();
                    let (e0, e1) = eval_pair(q);
                    let big = if sym == Symbol::Zero { e0 } else { e1 };
                    let direct = u.fourier_hat(&xi) * big - p.eval(t, &xi).unwrap();
                    let stable = p.remainder(t, &xi).unwrap();
                    assert!((direct - stable).norm() < 1e-12, "{gamma} {sym:?} {t}");
                }
            }
        }
    }

    #[test]
    fn remainder_vanishes_faster_with_more_terms() {
        let u = Datum::standard_gaussian(1).unwrap();
        let t = 100.0;
        let xi = [0.01];
        let r0 = ExpansionProfile::new(Symbol::One, u.clone(), 0.0)
            .unwrap()
            .remainder(t, &xi)
            .unwrap();
        let r2 = ExpansionProfile::new(Symbol::One, u.clone(), 2.0)
            .unwrap()
            .remainder(t, &xi)
            .unwrap();
        assert!(r2.norm() < 1e-2 * r0.norm());
        let total = u.fourier_hat(&xi) * eval_e1(SymbolQuery::new(t, 0.01).unwrap());
        assert!(r0.norm() < 1e-2 * total.norm());
    }

    #[test]
    fn rejects_negative_gamma() {
        let u = Datum::standard_gaussian(1).unwrap();
        assert!(ExpansionProfile::new(Symbol::One, u, -0.5).is_err());
    }
}
