//! Growth of int e^{-t|xi|^2} |sin(t|xi|)/|xi||^2 with its explicit brackets.
use sdwave::asymptotics::{
    appendix_growth, appendix_limit, default_t_grid, fit_rate, growth_bracket,
    log_coefficient_bracket, Accuracy, Transform,
};

fn main() -> sdwave::Result<()> {
    let acc = Accuracy::default();
    for n in 1..=3 {
        let mut samples = Vec::new();
        for t in default_t_grid() {
            let v = appendix_growth(n, t, &acc)?;
            let b = growth_bracket(n, t);
            println!(
                "n={n} t={t:>9.1}: {:.6e} in [{:.4e}, {:.4e}]: {}",
                v,
                b.lower,
                b.upper,
                b.contains(v)
            );
            samples.push((t, v));
        }
        let (t, v) = *samples.last().unwrap();
        match n {
            1 => println!("  value / t = {:.5} -> {:.5}", v / t, appendix_limit(1)),
            2 => {
                let fit = fit_rate(&samples, Transform::LogLinear)?;
                println!(
                    "  log t coefficient {:.5} -> {:.5}, bracket {:?}",
                    fit.slope,
                    appendix_limit(2),
                    log_coefficient_bracket()
                );
            }
            _ => println!(
                "  value sqrt(t) = {:.5} -> {:.5}",
                v * t.sqrt(),
                appendix_limit(3)
            ),
        }
    }
    Ok(())
}
