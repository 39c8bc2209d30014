// Driving the command-line front end in-process.

use rotwave::cli::dispatch_to;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for args in [
        vec!["classify", "8", "3"],
        vec!["--format", "csv", "sigma-star", "4", "1", "--count", "3"],
        vec!["accumulation", "1", "2"],
    ] {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = dispatch_to(std::iter::once("rotwave").chain(args.iter().copied()), &mut out, &mut err);
        println!("$ rotwave {} → exit {code}", args.join(" "));
        print!("{}{}", String::from_utf8(out)?, String::from_utf8(err)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
