mod bessel_zeros { include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/bessel_zeros.rs")); }
mod zeta_constant { include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/zeta_constant.rs")); }
mod expansion_check { include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/expansion_check.rs")); }
mod spectrum_classification { include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/spectrum_classification.rs")); }
mod gap_scan { include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/gap_scan.rs")); }
mod sigma_star { include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/sigma_star.rs")); }
mod ground_state { include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/ground_state.rs")); }
mod cli_outputs { include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/cli_outputs.rs")); }

#[test]
fn bessel_zeros_runs() { bessel_zeros::run_example().unwrap(); }
#[test]
fn zeta_constant_runs() { zeta_constant::run_example().unwrap(); }
#[test]
fn expansion_check_runs() { expansion_check::run_example().unwrap(); }
#[test]
fn spectrum_classification_runs() { spectrum_classification::run_example().unwrap(); }
#[test]
fn gap_scan_runs() { gap_scan::run_example().unwrap(); }
#[test]
fn sigma_star_runs() { sigma_star::run_example().unwrap(); }
#[test]
fn ground_state_runs() { ground_state::run_example().unwrap(); }
#[test]
fn cli_outputs_runs() { cli_outputs::run_example().unwrap(); }
