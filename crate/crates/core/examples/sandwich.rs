//! Two-sided growth of the solution norm in one, two and three dimensions.
use sdwave::asymptotics::{appendix_limit, default_t_grid, thm33_sandwich, Accuracy};
use sdwave::data::Datum;

fn main() -> sdwave::Result<()> {
    let acc = Accuracy::default();
    for n in 1..=3 {
        let u = Datum::standard_gaussian(n)?;
        let s = thm33_sandwich(&u, &u, &default_t_grid(), &acc)?;
        println!(
            "n={n}: norm / (|P1| g_n) in [{:.4}, {:.4}], limit {:.4}, fit {:?} slope {:+.4}",
            s.c1,
            s.c2,
            appendix_limit(n).sqrt(),
            s.fit.transform,
            s.fit.slope
        );
    }
    Ok(())
}
