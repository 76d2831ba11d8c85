//! Optimality of the leading term: explicit lower constants and bounded upper ratios.
use sdwave::asymptotics::{case_split, default_t_grid, upper_bound_38, Accuracy};
use sdwave::data::Datum;

fn main() -> sdwave::Result<()> {
    let acc = Accuracy::default();
    let n = 1;
    let g = Datum::standard_gaussian(n)?;
    let z = Datum::zero(n)?;
    let h = Datum::hermite1(n, 1, 1.0, 1.0)?;
    for (name, u0, u1) in [
        ("P1 != 0", &z, &g),
        ("P1 = 0, M != 0", &z, &h),
        ("P1 = M = 0, P0 != 0", &g, &z),
        ("P0, P1 != 0", &g.scaled(0.5), &g),
    ] {
        let rep = case_split(u0, u1, &[1e3, 1e4], &acc)?;
        let ratios: Vec<f64> = default_t_grid()
            .iter()
            .map(|&t| upper_bound_38(u0, u1, t, &acc).map(|u| u.ratio))
            .collect::<sdwave::Result<_>>()?;
        println!(
            "{name:<20} {:?}: gap t^(1/4) >= {:.4} (measured {:.4}), delta {:?}, upper ratios {:.3?}",
            rep.case, rep.lower_constant, rep.measured_constant, rep.delta, ratios
        );
    }
    Ok(())
}
