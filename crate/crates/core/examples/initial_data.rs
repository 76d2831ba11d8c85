//! Gaussian / Hermite data: masses, moments, Fourier transforms and Taylor remainders.
use sdwave::data::DatumSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec: DatumSpec = serde_json::from_str(
        r#"[{"kind": "gaussian", "center": [0.5, 0.0], "sigma": 1.0, "amplitude": 2.0},
            {"kind": "hermite1", "axis": 2, "sigma": 0.7, "amplitude": 1.0}]"#,
    )?;
    let f = spec.build(2)?;
    println!("mass {:.12}", f.mass());
    println!("first moments {:?}", f.first_moments());
    println!(
        "||f||_1 {:.6}  ||f||_(1,1) {:.6}  ||f||_2 {:.6}",
        f.l1_norm(),
        f.weighted_l1_norm(1.0),
        f.l2_norm()
    );
    let m = f.moments(2);
    for (alpha, c) in &m.coefficients {
        println!("  m{alpha:?} = {c}");
    }
    for s in [1e-1, 1e-3, 1e-5] {
        let xi = [s, -0.5 * s];
        println!(
            "|xi| ~ {s:e}: f_hat = {:.6}, tail after k<=1 = {:.3e}",
            f.fourier_hat(&xi),
            f.taylor_tail(&xi, 1).norm()
        );
    }
    Ok(())
}
