// Residuals of j_{xk,k}/k against ι(x) − c₁/k + ζ/k², and the order
// derivative along ℓ = σk − σ/4.

use rotwave::asymptotics::{derivative_limit_check, expansion_residuals};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let p = expansion_residuals(1.0, &[100, 200, 400, 800])?;
    for r in &p.residual_orders {
        println!("k = {:>4}: r0 = {:+.3e}  r1 = {:+.3e}  k²·(…) = {:.8e}", r.k, r.r0, r.r1, r.r2);
    }
    println!("slopes {:.3} / {:.3}; extrapolated {:.8e} vs ζ = {:.8e}", p.first_order_slope, p.second_order_slope, p.extrapolated_zeta, p.zeta);
    let d = derivative_limit_check(1.0, &[50, 100, 200, 400])?;
    println!("dj/dν → g(f(1)) = {:.10}, deviation decays like k^-{:.3}", d.limit, d.fitted_exponent);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
