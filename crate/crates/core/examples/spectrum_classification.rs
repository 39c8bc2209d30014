// Classifying σ = p/q and listing the eigenvalues nearest zero.

use rotwave::spectrum::{classify, enumerate};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for &(p, q) in &[(1, 3), (3, 2), (8, 3), (6, 4)] {
        let s = classify(p, q)?;
        println!("{p}/{q} → {}/{}: {} (accumulation: {})", s.p, s.q, s.condition, s.has_accumulation);
    }
    let s = classify(8, 3)?;
    let sp = enumerate(&s, 64, 32)?;
    let mut near: Vec<_> = sp.entries.iter().collect();
    near.sort_by(|a, b| a.eigenvalue.abs().total_cmp(&b.eigenvalue.abs()));
    for e in near.iter().take(5) {
        println!("(ℓ={}, k={}) λ = {:+.8}  Σ_*: {}", e.l, e.k, e.eigenvalue, e.in_sigma_star);
    }
    println!("{} eigenvalues, {} repeated groups", sp.entries.len(), sp.multiplicities.len());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
