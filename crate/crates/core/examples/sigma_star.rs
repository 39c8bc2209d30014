// Eigenvalues along ℓ = σk − σ/4 and their limit.

use rotwave::spectrum::{accumulation_point, order_shift_correction, sigma_star_eigenvalues};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let (p, q) = (8, 3);
    for pt in sigma_star_eigenvalues(p, q, 12)?.iter().step_by(3) {
        println!("k = {:>3}, ℓ = {:>3}: λ = {:.10}", pt.k, pt.l, pt.eigenvalue);
    }
    let lim = accumulation_point(p, q)?;
    let corr = order_shift_correction(p, q)?;
    println!("2ασζ_σ = {lim:.6}; with the order-shift term = {:.6}", lim + corr);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
