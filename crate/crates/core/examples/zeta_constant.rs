// The second-order constant ζ_x by two independent integrals, and its root.

use rotwave::asymptotics::{c1, f_of, find_x0, zeta, zeta_via_theta0};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    println!("ζ_x → 1/(8π) = {:.6} as x → 0", 1.0 / (8.0 * std::f64::consts::PI));
    for &x in &[1e-3, 0.5, 1.0, 4.0, 16.0] {
        let a = zeta(x)?;
        let b = zeta_via_theta0(x)?;
        println!("x = {x:>6}: c1 = {:.10}  ζ = {a:.12e}  via Θ₀ = {b:.12e}  diff {:.1e}", c1(x)?, (a - b).abs());
    }
    let x0 = find_x0()?;
    println!("ζ vanishes at x0 = {x0:.6}, f(x0) = {:.6}", f_of(x0)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
