//! RK4 integration of one Fourier mode against the closed-form solution.
use num_complex::Complex64;
use sdwave::ode::{integrate_mode, integrate_mode_with_step, step_bound};
use sdwave::symbols::{solution_hat, SymbolQuery};

fn main() -> sdwave::Result<()> {
    let (u0, u1) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, -0.5));
    for r in [0.3, 1.0, 2.0, 3.5] {
        let t = 15.0;
        let run = integrate_mode(r, t, u0, u1)?;
        let closed = solution_hat(SymbolQuery::new(t, r)?, u0, u1);
        println!(
            "r = {r}: h = {:.2e}, rk4 = {:.12e}, |rk4 - closed| = {:.2e}",
            run.h,
            run.final_value(),
            (run.final_value() - closed).norm()
        );
    }
    println!("step bound at r = 4: {}", step_bound(4.0));
    println!(
        "{}",
        integrate_mode_with_step(4.0, 1.0, 0.01, u0, u1).unwrap_err()
    );
    Ok(())
}
