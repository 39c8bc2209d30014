use rotwave::cli::{dispatch_to, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = dispatch_to(std::iter::once("rotwave").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

#[test]
fn classify_8_3_is_c3() {
    let (code, out) = call(&["classify", "8", "3"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["condition"], "C3");
}

#[test]
fn zeta_small_x() {
    let (code, out) = call(&["zeta", "--x", "1e-3"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    let z: f64 = v["zeta"].as_str().unwrap().parse().unwrap();
    assert!((z - 1.0 / (8.0 * std::f64::consts::PI)).abs() < 1e-3);
    assert!(v["metadata"]["config_hash"].as_str().unwrap().len() == 64);
}

#[test]
fn exit_codes() {
    assert_eq!(call(&["classify", "3", "0"]).0, EXIT_DOMAIN);
    assert_eq!(call(&["accumulation", "1", "2"]).0, EXIT_DOMAIN);
    assert_eq!(call(&["spectrum"]).0, EXIT_USAGE);
    assert_eq!(call(&["--version"]).0, EXIT_OK);
}

#[test]
fn spectrum_csv_layout() {
    let (code, out) = call(&["--format", "csv", "spectrum", "8", "3", "--l-max", "6", "--k-max", "4"]);
    assert_eq!(code, EXIT_OK);
    let data: Vec<&str> = out.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(data[0], rotwave::output::CSV_HEADER);
    assert_eq!(data.len(), 1 + 7 * 4);
    assert!(out.lines().any(|l| l.starts_with("# condition")));
}

#[test]
fn output_is_independent_of_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let mut files = Vec::new();
    for threads in ["1", "2"] {
        let path = dir.path().join(format!("spectrum{threads}.json"));
        let p = path.to_str().unwrap().to_string();
        let (code, _) = call(&["--threads", threads, "--output", &p, "spectrum", "4", "1", "--l-max", "40", "--k-max", "30"]);
        assert_eq!(code, EXIT_OK);
        files.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(files[0], files[1]);
    let (code, _) = call(&["--threads", "0", "x0"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn groundstate_json_fields() {
    let (code, out) = call(&["groundstate", "1", "2", "--m", "1", "--l-max", "4", "--k-max", "4", "--starts", "2"]);
    assert_eq!(code, EXIT_OK, "{out}");
    let v: Value = serde_json::from_str(&out).unwrap();
    for key in ["alpha", "m", "p", "c", "beta", "nonradial", "residuals", "truncation"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}
