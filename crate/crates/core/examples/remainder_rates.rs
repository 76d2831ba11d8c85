//! Expansion remainders for both propagators over t in [1e2, 1e5] with rate fits.
use sdwave::asymptotics::{
    default_t_grid, fit_rate, remainder_norm_thm31, remainder_norm_thm32, Accuracy, Transform,
};
use sdwave::data::Datum;

fn main() -> sdwave::Result<()> {
    let acc = Accuracy::default();
    let ts = default_t_grid();
    for (n, gamma) in [(1, 1.0), (2, 1.0), (3, 0.0)] {
        let u = Datum::standard_gaussian(n)?;
        let s: Vec<(f64, f64)> = ts
            .iter()
            .map(|&t| Ok((t, remainder_norm_thm31(&u, gamma, t, &acc)?)))
            .collect::<sdwave::Result<_>>()?;
        let fit = fit_rate(&s, Transform::PowerLaw)?;
        println!(
            "E1  n={n} gamma={gamma}: slope {:+.4} (exponent {:+.4})",
            fit.slope,
            -(n as f64 / 4.0 + gamma / 2.0 - 0.5)
        );
    }
    for (n, gamma) in [(1, 1.0), (2, 0.0)] {
        let u = Datum::standard_gaussian(n)?;
        let s: Vec<(f64, f64)> = ts
            .iter()
            .map(|&t| Ok((t, remainder_norm_thm32(&u, gamma, t, &acc)?)))
            .collect::<sdwave::Result<_>>()?;
        let fit = fit_rate(&s, Transform::PowerLaw)?;
        println!(
            "E0  n={n} gamma={gamma}: slope {:+.4} (exponent {:+.4})",
            fit.slope,
            -(n as f64 / 4.0 + gamma / 2.0)
        );
    }
    let u = Datum::standard_gaussian(1)?;
    println!(
        "n=1, gamma=0.4: {}",
        remainder_norm_thm31(&u, 0.4, 100.0, &acc).unwrap_err()
    );
    Ok(())
}
