use num_complex::Complex64;
use proptest::prelude::*;

use sdwave::data::Datum;
use sdwave::jet::Jet;
use sdwave::ode::integrate_mode;
use sdwave::symbols::{
    decay_rate, eval_pair, expansion_terms, l_jet, solution_hat, Symbol, SymbolQuery,
};

fn jet_at(a0: f64, order: usize) -> Jet {
    Jet::variable_at(a0, order).unwrap()
}

proptest! {
    #[test]
    fn jet_sqrt_squares_back(a0 in 0.1f64..10.0, order in 1usize..8) {
        let x = jet_at(a0, order).mul(&jet_at(a0, order)).unwrap().add_const(1.0);
        let s = x.sqrt().unwrap();
        let back = s.mul(&s).unwrap();
        for (u, v) in back.coeffs().iter().zip(x.coeffs()) {
            prop_assert!((u - v).abs() <= 1e-12 * (1.0 + v.abs()));
        }
    }

    #[test]
    fn jet_pythagoras(a0 in -5.0f64..5.0, c in -3.0f64..3.0, order in 1usize..10) {
        let x = jet_at(a0, order).scale(c);
        let (s, co) = x.sin_cos();
        let one = s.mul(&s).unwrap().add(&co.mul(&co).unwrap()).unwrap();
        prop_assert!((one.value() - 1.0).abs() < 1e-13);
        for k in 1..=order {
            prop_assert!(one.coeff(k).unwrap().abs() < 1e-10);
        }
    }

    #[test]
    fn expansion_terms_truncate_consistently(t in 0.1f64..50.0, r in 0.01f64..1.5, low in 0usize..4) {
        let q = SymbolQuery::new(t, r).unwrap();
        for sym in [Symbol::Zero, Symbol::One] {
            let full = expansion_terms(sym, q, 6).unwrap();
            let short = expansion_terms(sym, q, low).unwrap();
            for k in 0..=low {
                let (a, b) = (full.coeff(k).unwrap(), short.coeff(k).unwrap());
                prop_assert!((a - b).abs() <= 1e-14 * (1.0 + a.abs()));
            }
        }
    }

    #[test]
    fn moments_of_real_data_are_hermitian(
        x in -2.0f64..2.0, y in -2.0f64..2.0, c in -1.0f64..1.0, k in 0usize..4,
    ) {
        let d = Datum::mixture(2, &[
            Datum::gaussian(2, &[c, 0.5], 0.9, 1.3).unwrap(),
            Datum::hermite1(2, 2, 1.1, -0.7).unwrap(),
        ]).unwrap();
        let a = d.moment_term(k, &[x, y]);
        let b = d.moment_term(k, &[-x, -y]);
        prop_assert!((a - b.conj()).norm() <= 1e-12 * (1.0 + a.norm()));
        let f = d.fourier_hat(&[x, y]);
        let g = d.fourier_hat(&[-x, -y]);
        prop_assert!((f - g.conj()).norm() <= 1e-12 * (1.0 + f.norm()));
    }

    #[test]
    fn closed_form_matches_rk4(t in 0.01f64..20.0, r in 0.0f64..4.0, a in -1.0f64..1.0, b in -1.0f64..1.0) {
        let (u0, u1) = (Complex64::new(a, 0.3), Complex64::new(b, -0.2));
        let closed = solution_hat(SymbolQuery::new(t, r).unwrap(), u0, u1);
        let rk = integrate_mode(r, t, u0, u1).unwrap().final_value();
        prop_assert!((closed - rk).norm() <= 1e-7 * (1.0 + rk.norm()));
    }

    /// `|E0| <= e^{-t lambda}`, `|E1| <= min(t, 1/|beta|) e^{-t lambda}`.
    #[test]
    fn propagators_decay(t in 0.0f64..200.0, r in 0.1f64..6.0) {
        let (e0, e1) = eval_pair(SymbolQuery::new(t, r).unwrap());
        let env = (-t * decay_rate(r)).exp();
        let beta = 0.5 * r * (4.0 - r * r).abs().sqrt();
        let pre = if beta > 0.0 { t.min(1.0 / beta) } else { t };
        prop_assert!(e0.abs() <= env * (1.0 + 1e-12) + 1e-300);
        prop_assert!(e1.abs() <= pre * env * (1.0 + 1e-9) + 1e-300);
    }

    /// `|d^k L1 / da^k| <= C (1/r) sum_{l <= k} (t r^2)^l` for `k <= 3`, `a in [0, 1)`, `r <= 1`.
    #[test]
    fn derivative_bound(t in 0.01f64..100.0, r in 0.01f64..1.0, a in 0.0f64..0.999) {
        const C: f64 = 4.0;
        let jet = l_jet(Symbol::One, a, SymbolQuery::new(t, r).unwrap(), 3).unwrap();
        let mut fact = 1.0;
        for k in 0..=3usize {
            if k > 0 {
                fact *= k as f64;
            }
            let d = jet.coeff(k).unwrap() * fact;
            let rhs: f64 = (0..=k).map(|l| (t * r * r).powi(l as i32)).sum::<f64>() / r;
            prop_assert!(d.abs() <= C * rhs, "k={} ratio {}", k, d.abs() / rhs);
        }
    }

    #[test]
    fn gap_scales_linearly(s in 0.1f64..10.0) {
        use sdwave::asymptotics::{leading_term_gap, Accuracy};
        let u0 = Datum::gaussian(1, &[0.3], 1.0, 0.5).unwrap();
        let u1 = Datum::hermite1(1, 1, 1.0, 1.0).unwrap();
        let acc = Accuracy::default();
        let g = leading_term_gap(&u0, &u1, 150.0, &acc).unwrap().total();
        let gs = leading_term_gap(&u0.scaled(s), &u1.scaled(s), 150.0, &acc).unwrap().total();
        prop_assert!((gs / (s * g) - 1.0).abs() < 1e-12);
    }
}
