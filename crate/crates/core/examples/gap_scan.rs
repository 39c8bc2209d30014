// The empirical gap constant min |λ|/j with and without the Σ_* family.

use rotwave::spectrum::{classify, gap_scan};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for &(p, q) in &[(1, 2), (3, 1), (4, 1)] {
        let s = classify(p, q)?;
        for k_max in [64u64, 256] {
            let l_max = (s.sigma * k_max as f64).ceil() as u64 + 16;
            let all = gap_scan(&s, l_max, k_max, false)?;
            let ex = gap_scan(&s, l_max, k_max, true)?;
            println!(
                "σ = {p}/{q} ({}), K = {k_max}: c = {:.6} at {:?}; without Σ_*: {:.6}",
                s.condition, all.c_min, all.argmin, ex.c_min
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
