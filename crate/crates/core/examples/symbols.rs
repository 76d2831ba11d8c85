//! Evolution symbols E0, E1 across the branch point r = 2 and the solution multiplier.
use num_complex::Complex64;
use sdwave::symbols::{branch, eval_pair, solution_hat, SymbolQuery};

fn main() -> sdwave::Result<()> {
    let t = 3.0;
    println!("{:>8} {:>14} {:>16} {:>16}", "r", "branch", "E0", "E1");
    for r in [0.0, 0.5, 1.0, 1.999_999, 2.0, 2.000_001, 3.0, 40.0] {
        let (e0, e1) = eval_pair(SymbolQuery::new(t, r)?);
        println!("{r:>8} {:>14?} {e0:>+16.9e} {e1:>+16.9e}", branch(r).tag);
    }
    // large damping: no overflow in the hyperbolic form
    let (e0, e1) = eval_pair(SymbolQuery::new(1e3, 30.0)?);
    println!("t = 1e3, r = 30: E0 = {e0:e}, E1 = {e1:e}");
    let u = solution_hat(
        SymbolQuery::new(t, 1.0)?,
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 1.0),
    );
    println!("u_hat(3, |xi| = 1) = {u}");
    Ok(())
}
