//! Truncated Taylor arithmetic: derivatives of a composite function at a point.
use sdwave::jet::Jet;

fn main() -> sdwave::Result<()> {
    // f(a) = sin(3 a) / sqrt(4 - a^2) around a = 0.5
    let a = Jet::variable_at(0.5, 5)?;
    let root = a.mul(&a)?.scale(-1.0).add_const(4.0).sqrt()?;
    let (s, _) = a.scale(3.0).sin_cos();
    let f = s.div(&root)?;
    for k in 0..=5 {
        println!("f^({k})(0.5) = {:+.12e}", f.derivative_at_zero(k)?);
    }
    println!(
        "order mismatch: {:?}",
        Jet::variable(3)?.add(&Jet::variable(4)?).unwrap_err()
    );
    Ok(())
}
