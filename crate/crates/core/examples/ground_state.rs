// Minimax ground state of the truncated problem against the radial one.

use rotwave::groundstate::{build_galerkin, check_resolution, nehari_minimax_with, radial_solution};
use rotwave::spectrum::classify;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let s = classify(1, 2)?;
    for &m in &[1.0, 30.0] {
        let model = build_galerkin(&s, m, 3.0, 8, 8)?;
        let rep = nehari_minimax_with(&model, 7, 3, 500)?;
        let rad = radial_solution(m, 3.0)?;
        let res = check_resolution(&model, &rep.coefficients, 1e-3)?;
        println!(
            "m = {m:>4}: dim {}  c = {:.8}  β = {:.8}  radial: {}  gradient {:.1e}  resolution change {:.1e}",
            model.dim(), rep.energy, rad.beta, rep.is_radial, rep.residual, res
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
