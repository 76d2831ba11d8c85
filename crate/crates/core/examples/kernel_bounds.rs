//! Weighted sine / cosine kernel integrals on the unit ball and the damped weight estimate.
use sdwave::asymptotics::{damped_weight_norm, kernel_lower_bounds, kernel_upper_bounds, Accuracy};

fn main() -> sdwave::Result<()> {
    let acc = Accuracy::default();
    for (n, g) in [(3, 0.0), (1, 1.0)] {
        for t in [1e3, 1e4] {
            let lo = kernel_lower_bounds(n, g, t, &acc)?;
            let up = kernel_upper_bounds(n, g, t, &acc)?;
            println!(
                "n={n} g={g} t={t:e}: sin {:.4e} in [{:.4e}, {:.4e}], cos {:.4e} in [{:.4e}, {:.4e}]",
                lo.sin_integral, lo.sin_lower, up.sin_upper, lo.cos_integral, lo.cos_lower, up.cos_upper
            );
        }
    }
    for t in [1.0, 1e2, 1e4] {
        let v = damped_weight_norm(2, t, &acc)?;
        println!(
            "n=2 t={t:e}: ||(r^2/2) E1||^2 (1+t)^2 = {:.5}",
            v * (1.0 + t).powi(2)
        );
    }
    Ok(())
}
