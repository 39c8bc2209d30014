// Zeros of J_ν and their order derivative.

use rotwave::specfun::{bessel_j, bessel_j_zero, bessel_j_zero_grid, dzero_dnu};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for r in bessel_j_zero_grid(&[0.0, 2.5, 100.0], 3)? {
        println!("j_({}, {}) = {:.15}  residual {:.1e}  via {:?}", r.order, r.rank, r.value, r.residual, r.guess_source);
    }
    // Large order, moderate rank: the regime the spectrum code lives in.
    let z = bessel_j_zero(5000.0, 40)?;
    println!("j_(5000, 40) = {:.12}, J there = {:.1e}", z.value, bessel_j(5000.0, z.value)?);
    println!("dj/dν at (10, 3) = {:.15}", dzero_dnu(10.0, 3)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
