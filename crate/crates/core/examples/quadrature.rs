//! Radial and spherical-product quadrature with certified tails.
use std::f64::consts::PI;

use sdwave::quadrature::{
    integrate_ball, integrate_rn, oscillation_floor, sphere_area, Grid, GridMode, TailBound,
};

fn main() -> sdwave::Result<()> {
    for n in 1..=3 {
        println!("w_{n} = {:.15}", sphere_area(n));
    }
    let g = Grid::new(3, GridMode::Radial)?;
    let v = integrate_rn(
        &g,
        |xi| (-xi.iter().map(|x| x * x).sum::<f64>()).exp(),
        TailBound {
            scale: 1.0,
            rate: 1.0,
        },
    )?;
    println!(
        "int_R3 exp(-|x|^2) = {:.15} (pi^1.5 = {:.15}), tail <= {:e}",
        v.value,
        PI.powf(1.5),
        v.tail_bound
    );

    let t = 1e4;
    println!(
        "oscillation floor at t = {t}: {:.0} nodes per unit",
        oscillation_floor(t)
    );
    for mode in [GridMode::Radial, GridMode::Tensor] {
        let grid = Grid::for_time(2, mode, t, 1.0)?;
        let k = integrate_ball(&grid, |xi| {
            let r2: f64 = xi.iter().map(|x| x * x).sum();
            (-t * r2).exp() * (t * r2.sqrt()).cos().powi(2)
        })?;
        println!("{mode:?}: int_ball e^(-t r^2) cos^2(t r) = {k:.12e}");
    }
    let coarse = Grid::new(2, GridMode::Radial)?.oscillating(t);
    println!("under-resolved grid: {}", coarse.validate().unwrap_err());
    Ok(())
}
