//! Expansion terms e_i^k from the jet pipeline next to their closed forms.
use sdwave::symbols::{eval_e_ik, eval_l, expansion_terms, Symbol, SymbolQuery};

fn main() -> sdwave::Result<()> {
    let (t, r) = (10.0, 0.3);
    let q = SymbolQuery::new(t, r)?;
    let d = (-0.5 * t * r * r).exp();
    let rows = [
        (
            "e_1^0",
            eval_e_ik(Symbol::One, 0, q)?,
            d * (t * r).sin() / r,
        ),
        ("e_0^0", eval_e_ik(Symbol::Zero, 0, q)?, d * (t * r).cos()),
        (
            "e_1^1",
            eval_e_ik(Symbol::One, 1, q)?,
            -t * r * r * d * (t * r).cos() / 8.0,
        ),
    ];
    for (name, jet, closed) in rows {
        println!("{name}: jet {jet:+.15e} closed {closed:+.15e}");
    }
    let all = expansion_terms(Symbol::One, q, 6)?;
    println!("e_1^0..6 = {:?}", all.coeffs());
    // E_i = exp(-t r^2 / 2) L_i(r) for r < 2
    let e1 = d * eval_l(Symbol::One, r, q)?;
    println!("exp(-tr^2/2) L1(r) = {e1:+.15e}");
    Ok(())
}
