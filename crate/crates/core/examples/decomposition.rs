//! Square norm of the three-term profile: direct quadrature against the split form.
use sdwave::asymptotics::{profile_decomposition, Accuracy};
use sdwave::data::Datum;

fn main() -> sdwave::Result<()> {
    let u1 = Datum::mixture(
        2,
        &[
            Datum::hermite1(2, 1, 1.0, 1.0)?,
            Datum::hermite1(2, 2, 0.8, 0.5)?,
            Datum::gaussian(2, &[0.3, -0.2], 1.0, 1.0)?,
        ],
    )?;
    let u0 = Datum::standard_gaussian(2)?;
    for t in [1e2, 1e3, 1e4] {
        let d = profile_decomposition(&u0, &u1, t, &Accuracy::default())?;
        println!(
            "t={t:e}: direct {:.12e} split {:.12e} (moments {:.4e}, mass {:.4e}, cross {:.1e})",
            d.direct, d.decomposed, d.diagonal, d.mass_part, d.cross
        );
    }
    Ok(())
}
