//! Command-line front end. Exit status: 0 success, 1 failed verification or
//! I/O, 2 domain/classification/configuration errors, 3 accuracy, range or
//! solver errors, 64 usage errors.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use crate::asymptotics::{expansion_residuals, f_of, find_x0, iota, zeta, zeta_via_theta0};
use crate::error::Error as NumError;
use crate::groundstate::{
    build_galerkin, nehari_minimax_with, radial_solution, symmetry_break_scan_with, SolutionReport,
};
use crate::output::{entry_json, num, write_json, write_spectrum_csv, Metadata};
use crate::specfun::bessel_j_zero_grid;
use crate::spectrum::{accumulation_point, classify, enumerate, gap_scan, sigma_star_eigenvalues};
use crate::verify::run_all;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_ACCURACY: i32 = 3;
pub const EXIT_USAGE: i32 = 64;
/// Environment variable giving the default worker count.
pub const THREADS_ENV: &str = "ROTWAVE_THREADS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Numerical(#[from] NumError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{0} criteria failed")]
    Verification(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Numerical(e) if e.is_domain() => EXIT_DOMAIN,
            CliError::Numerical(_) => EXIT_ACCURACY,
            CliError::Io(_) | CliError::Verification(_) => EXIT_FAILED,
            CliError::Usage(_) => EXIT_USAGE,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "rotwave", version, about = "Bessel-zero asymptotics, mixed-type spectra and rotating-wave ground states")]
pub struct Cli {
    /// Write results here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    /// Worker threads (default: $ROTWAVE_THREADS, else all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Rational {
    pub p: u64,
    pub q: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Zeros j_{ν,k} for k = 1..k_max.
    Zeros {
        #[arg(long, required = true, value_delimiter = ',')]
        nu: Vec<f64>,
        #[arg(long, default_value_t = 10)]
        k_max: u64,
    },
    /// ι(x) and f(x).
    Iota {
        #[arg(long)]
        x: f64,
    },
    /// ζ_x by both formulas.
    Zeta {
        #[arg(long)]
        x: f64,
    },
    /// The root of x ↦ ζ_x.
    X0,
    /// Expansion residuals of j_{xk,k}/k.
    Expansion {
        #[arg(long)]
        x: f64,
        #[arg(long, value_delimiter = ',', default_value = "250,500,1000,2000")]
        k_list: Vec<u64>,
    },
    /// Condition C1/C2/C3 of σ = p/q.
    Classify(Rational),
    /// Eigenvalues j²_{ℓ,k} − α²ℓ² for ℓ ≤ L, k ≤ K.
    Spectrum {
        #[command(flatten)]
        sigma: Rational,
        #[arg(long, default_value_t = 512)]
        l_max: u64,
        #[arg(long, default_value_t = 256)]
        k_max: u64,
    },
    /// Empirical gap constant min |λ|/j.
    Gap {
        #[command(flatten)]
        sigma: Rational,
        #[arg(long, default_value_t = 512)]
        l_max: u64,
        #[arg(long, default_value_t = 256)]
        k_max: u64,
        #[arg(long)]
        exclude_sigma_star: bool,
    },
    /// Indices and eigenvalues along ℓ = σk − σ/4.
    SigmaStar {
        #[command(flatten)]
        sigma: Rational,
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
    /// The limit 2ασζ_σ.
    Accumulation(Rational),
    /// Ground-state energy against the radial energy.
    Groundstate {
        #[command(flatten)]
        sigma: Rational,
        /// One value, or several (comma separated) for a scan.
        #[arg(long, value_delimiter = ',', default_value = "20")]
        m: Vec<f64>,
        #[arg(long, default_value_t = 3.0)]
        p_exponent: f64,
        #[arg(long, default_value_t = 12)]
        l_max: u64,
        #[arg(long, default_value_t = 12)]
        k_max: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        starts: usize,
        /// Also write the minimiser's coefficients as CSV (single m only).
        #[arg(long)]
        coefficients: Option<PathBuf>,
    },
    /// Runs the acceptance checks; nonzero exit if any fails.
    VerifyAll {
        /// Smaller ground-state truncation.
        #[arg(long)]
        quick: bool,
    },
}

fn config_of(cmd: &Command) -> Value {
    // The Debug text is a faithful, deterministic rendering of every parameter.
    json!({ "command": format!("{cmd:?}") })
}

fn csv_unsupported(name: &str) -> CliError {
    CliError::Usage(format!("`{name}` only emits JSON"))
}

fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let meta = Metadata::new(&config_of(&cli.command));
    let csv = cli.format == Format::Csv;
    match &cli.command {
        Command::Zeros { nu, k_max } => {
            let recs = bessel_j_zero_grid(nu, *k_max)?;
            if csv {
                meta.write_csv_comments(out)?;
                writeln!(out, "order,rank,value,residual,guess_source")?;
                for r in &recs {
                    writeln!(out, "{},{},{},{},{}", num(r.order), r.rank, num(r.value), num(r.residual), json!(r.guess_source).as_str().unwrap_or(""))?;
                }
            } else {
                let rows: Vec<Value> = recs
                    .iter()
                    .map(|r| json!({"order": num(r.order), "rank": r.rank, "value": num(r.value), "residual": num(r.residual), "guess_source": r.guess_source}))
                    .collect();
                write_json(out, &meta, json!({ "zeros": rows }))?;
            }
        }
        Command::Iota { x } => {
            if csv {
                return Err(csv_unsupported("iota"));
            }
            write_json(out, &meta, json!({"x": num(*x), "iota": num(iota(*x)?), "f": num(f_of(*x)?)}))?;
        }
        Command::Zeta { x } => {
            if csv {
                return Err(csv_unsupported("zeta"));
            }
            let z = zeta(*x)?;
            let zt = zeta_via_theta0(*x)?;
            write_json(out, &meta, json!({"x": num(*x), "zeta": num(z), "zeta_via_theta0": num(zt), "difference": num(z - zt)}))?;
        }
        Command::X0 => {
            if csv {
                return Err(csv_unsupported("x0"));
            }
            let x0 = find_x0()?;
            write_json(out, &meta, json!({"x0": num(x0), "f_x0": num(f_of(x0)?), "zeta_x0": num(zeta(x0)?)}))?;
        }
        Command::Expansion { x, k_list } => {
            if csv {
                return Err(csv_unsupported("expansion"));
            }
            let p = expansion_residuals(*x, k_list)?;
            let rows: Vec<Value> = p
                .residual_orders
                .iter()
                .map(|r| json!({"k": r.k, "r0": num(r.r0), "r1": num(r.r1), "r2": num(r.r2)}))
                .collect();
            write_json(
                out,
                &meta,
                json!({
                    "x": num(p.x), "iota": num(p.iota), "f": num(p.f_value), "c1": num(p.c1), "zeta": num(p.zeta),
                    "first_order_slope": num(p.first_order_slope), "second_order_slope": num(p.second_order_slope),
                    "extrapolated_zeta": num(p.extrapolated_zeta), "residuals": rows,
                }),
            )?;
        }
        Command::Classify(r) => {
            if csv {
                return Err(csv_unsupported("classify"));
            }
            let s = classify(r.p, r.q)?;
            write_json(
                out,
                &meta.with_sigma(&s),
                json!({
                    "p": s.p, "q": s.q, "sigma": num(s.sigma), "alpha": num(s.alpha),
                    "condition": s.condition.to_string(), "has_accumulation": s.has_accumulation,
                    "four_not_dividing_p": s.four_not_dividing_p, "q_even": s.q_even,
                }),
            )?;
        }
        Command::Spectrum { sigma, l_max, k_max } => {
            let s = classify(sigma.p, sigma.q)?;
            let sp = enumerate(&s, *l_max, *k_max)?;
            let meta = meta.with_sigma(&s).with("l_max", json!(l_max)).with("k_max", json!(k_max));
            if csv {
                write_spectrum_csv(out, &meta, &sp.entries)?;
            } else {
                let groups: Vec<Value> = sp
                    .multiplicities
                    .iter()
                    .map(|g| json!({"eigenvalue": num(g.eigenvalue), "members": g.members}))
                    .collect();
                write_json(
                    out,
                    &meta,
                    json!({
                        "entries": sp.entries.iter().map(entry_json).collect::<Vec<_>>(),
                        "multiplicities": groups,
                        "near_zero": sp.near_zero,
                    }),
                )?;
            }
        }
        Command::Gap { sigma, l_max, k_max, exclude_sigma_star } => {
            if csv {
                return Err(csv_unsupported("gap"));
            }
            let s = classify(sigma.p, sigma.q)?;
            let g = gap_scan(&s, *l_max, *k_max, *exclude_sigma_star)?;
            write_json(
                out,
                &meta.with_sigma(&s),
                json!({
                    "c_min": num(g.c_min), "argmin": [g.argmin.0, g.argmin.1], "zero": num(g.zero),
                    "eigenvalue": num(g.eigenvalue), "exclude_sigma_star": g.exclude_sigma_star,
                    "near_zero": g.near_zero, "l_max": l_max, "k_max": k_max,
                }),
            )?;
        }
        Command::SigmaStar { sigma, count } => {
            let s = classify(sigma.p, sigma.q)?;
            let pts = sigma_star_eigenvalues(sigma.p, sigma.q, *count)?;
            let meta = meta.with_sigma(&s);
            if csv {
                meta.write_csv_comments(out)?;
                writeln!(out, "k,l,zero,eigenvalue")?;
                for p in &pts {
                    writeln!(out, "{},{},{},{}", p.k, p.l, num(p.zero), num(p.eigenvalue))?;
                }
            } else {
                let rows: Vec<Value> = pts
                    .iter()
                    .map(|p| json!({"k": p.k, "l": p.l, "zero": num(p.zero), "eigenvalue": num(p.eigenvalue)}))
                    .collect();
                write_json(out, &meta, json!({ "points": rows }))?;
            }
        }
        Command::Accumulation(r) => {
            if csv {
                return Err(csv_unsupported("accumulation"));
            }
            let s = classify(r.p, r.q)?;
            let lim = accumulation_point(r.p, r.q)?;
            let corr = crate::spectrum::order_shift_correction(r.p, r.q)?;
            write_json(
                out,
                &meta.with_sigma(&s),
                json!({"limit": num(lim), "zeta_sigma": num(zeta(s.sigma)?), "order_shift_correction": num(corr)}),
            )?;
        }
        Command::Groundstate { sigma, m, p_exponent, l_max, k_max, seed, starts, coefficients } => {
            if csv {
                return Err(csv_unsupported("groundstate"));
            }
            let s = classify(sigma.p, sigma.q)?;
            let truncation = json!({"l_max": l_max, "k_max": k_max});
            if m.len() == 1 {
                let model = build_galerkin(&s, m[0], *p_exponent, *l_max, *k_max)?;
                let rep = nehari_minimax_with(&model, *seed, *starts, 2000)?;
                let rad = radial_solution(m[0], *p_exponent)?;
                if let Some(path) = coefficients {
                    write_coefficients(path, &meta, &model.modes, &rep)?;
                }
                write_json(
                    out,
                    &meta.with_sigma(&s),
                    json!({
                        "alpha": num(s.alpha), "m": num(m[0]), "p": num(*p_exponent),
                        "c": num(rep.energy), "beta": num(rad.beta), "nonradial": rep.energy < rad.beta,
                        "minimizer_radial": rep.is_radial, "nonradial_fraction": num(rep.nonradial_fraction),
                        "residuals": {
                            "gradient": num(rep.residual), "nehari": num(rep.nehari_residual),
                            "nehari_identity": num(rep.nehari_identity_error),
                            "radial_boundary": num(rad.boundary_residual), "radial_refinement": num(rad.refinement_error),
                        },
                        "truncation": truncation, "warnings": model.warnings,
                    }),
                )?;
            } else {
                if coefficients.is_some() {
                    return Err(CliError::Usage("--coefficients needs a single m".into()));
                }
                let scan = symmetry_break_scan_with(&s, *p_exponent, m, *l_max, *k_max, *seed, *starts)?;
                let rows: Vec<Value> = scan
                    .rows
                    .iter()
                    .map(|r| {
                        json!({
                            "m": num(r.m), "c": num(r.c), "beta": num(r.beta), "nonradial": r.nonradial,
                            "minimizer_radial": r.minimizer_radial,
                            "residuals": {"gradient": num(r.residual), "nehari": num(r.nehari_residual)},
                        })
                    })
                    .collect();
                write_json(
                    out,
                    &meta.with_sigma(&s),
                    json!({
                        "alpha": num(s.alpha), "p": num(*p_exponent), "rows": rows,
                        "m0": scan.m0.map(num), "c_slope": scan.c_slope.map(num), "beta_slope": scan.beta_slope.map(num),
                        "truncation": truncation,
                    }),
                )?;
            }
        }
        Command::VerifyAll { quick } => {
            let reports = run_all(*quick);
            for r in &reports {
                writeln!(out, "{}", r.line())?;
            }
            let failed = reports.iter().filter(|r| !r.passed).count();
            writeln!(out, "{} of {} criteria passed", reports.len() - failed, reports.len())?;
            if failed > 0 {
                return Err(CliError::Verification(failed));
            }
        }
    }
    Ok(())
}

fn write_coefficients(path: &PathBuf, meta: &Metadata, modes: &[crate::groundstate::Mode], rep: &SolutionReport) -> Result<(), CliError> {
    let mut w = BufWriter::new(File::create(path)?);
    meta.write_csv_comments(&mut w)?;
    writeln!(w, "l,k,parity,eigenvalue,coefficient")?;
    for (md, c) in modes.iter().zip(&rep.coefficients) {
        let parity = match md.parity {
            crate::groundstate::Parity::Cos => "cos",
            crate::groundstate::Parity::Sin => "sin",
        };
        writeln!(w, "{},{},{},{},{}", md.l, md.k, parity, num(md.eigenvalue), num(*c))?;
    }
    w.flush()?;
    Ok(())
}

fn thread_count(flag: Option<usize>) -> Result<Option<usize>, CliError> {
    if let Some(n) = flag {
        return Ok(Some(n));
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) => v.trim().parse().map(Some).map_err(|_| CliError::Usage(format!("{THREADS_ENV} must be a positive integer, got {v:?}"))),
        Err(_) => Ok(None),
    }
}

/// Parses `argv` (including the program name), runs one subcommand writing to
/// `stdout` (or `--output`), and returns the exit status.
pub fn dispatch_to<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { write!(stdout, "{text}") } else { write!(stderr, "{text}") };
            return code;
        }
    };
    let result = (|| -> Result<(), CliError> {
        let threads = thread_count(cli.threads)?;
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(n) = threads {
            if n == 0 {
                return Err(CliError::Usage("thread count must be positive".into()));
            }
            builder = builder.num_threads(n);
        }
        let pool = builder.build().map_err(|e| CliError::Usage(e.to_string()))?;
        let mut buf = Vec::new();
        let outcome = pool.install(|| run(&cli, &mut buf));
        // Partial output (e.g. verify-all lines before a failure) is still emitted.
        match &cli.output {
            Some(path) => std::fs::write(path, &buf)?,
            None => stdout.write_all(&buf)?,
        }
        outcome
    })();
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "rotwave: {e}");
            e.exit_code()
        }
    }
}

/// [`dispatch_to`] on the process's stdout and stderr.
pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    dispatch_to(argv, &mut stdout.lock(), &mut stderr.lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("rotwave").chain(args.iter().copied());
        let code = dispatch_to(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn classify_reports_c3() {
        let (code, out, _) = call(&["classify", "8", "3"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["condition"], "C3");
        assert_eq!(v["has_accumulation"], true);
        assert_eq!(v["metadata"]["condition"], "C3");
    }

    #[test]
    fn zeta_near_zero() {
        let (code, out, _) = call(&["zeta", "--x", "1e-3"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        let z: f64 = v["zeta"].as_str().unwrap().parse().unwrap();
        assert!((z - 1.0 / (8.0 * std::f64::consts::PI)).abs() < 1e-3);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["classify", "0", "3"]).0, EXIT_DOMAIN);
        assert_eq!(call(&["sigma-star", "1", "3"]).0, EXIT_DOMAIN);
        assert_eq!(call(&["zeta", "--bogus"]).0, EXIT_USAGE);
        assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(call(&["--format", "csv", "x0"]).0, EXIT_USAGE);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
        assert_eq!(CliError::Numerical(NumError::Solver("x".into())).exit_code(), EXIT_ACCURACY);
    }
}
