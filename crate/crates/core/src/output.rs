//! Bit-stable CSV and JSON emission. Floats are written with 17 significant
//! digits (`{:.16e}`); JSON carries them as strings so no reader re-rounds.

use std::io::Write;

use serde::Serialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::spectrum::{SigmaRational, SpectrumEntry};

pub const CSV_HEADER: &str = "l,k,zero,eigenvalue,gap_ratio,in_sigma_star";

/// Canonical float text.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// Provenance block embedded in every emitted file.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metadata {
    pub tool: &'static str,
    pub version: &'static str,
    /// SHA-256 of the canonical JSON of the run configuration.
    pub config_hash: String,
    pub tolerances: Map<String, Value>,
    /// Subcommand-specific fields (α, p, q, condition, …), floats as strings.
    pub extra: Map<String, Value>,
}

/// Default tolerances of the numerical kernels, recorded with every output.
pub fn default_tolerances() -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("moment_rel".into(), json!(num(crate::specfun::moments::MOMENT_REL_TOL)));
    m.insert("watson_abs".into(), json!(num(crate::specfun::watson::WATSON_TOL)));
    m.insert("zeta_abs".into(), json!(num(crate::asymptotics::zeta::ZETA_TOL)));
    m.insert("zero_eigenvalue_rel".into(), json!(num(crate::spectrum::enumerate::ZERO_EIGENVALUE_TOL)));
    m.insert("multiplicity_rel".into(), json!(num(crate::spectrum::enumerate::MULTIPLICITY_TOL)));
    m.insert("nehari_inner_rel".into(), json!(num(crate::groundstate::nehari::INNER_TOL)));
    m
}

/// SHA-256 hex digest of the canonical (key-sorted) JSON text of `config`.
pub fn config_hash(config: &Value) -> String {
    let text = serde_json::to_string(config).expect("JSON values always serialize");
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

impl Metadata {
    pub fn new(config: &Value) -> Self {
        Metadata {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            config_hash: config_hash(config),
            tolerances: default_tolerances(),
            extra: Map::new(),
        }
    }

    pub fn with(mut self, key: &str, value: Value) -> Self {
        self.extra.insert(key.into(), value);
        self
    }

    pub fn with_sigma(self, s: &SigmaRational) -> Self {
        self.with("alpha", json!(num(s.alpha)))
            .with("p", json!(s.p))
            .with("q", json!(s.q))
            .with("condition", json!(s.condition.to_string()))
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("tool".into(), json!(self.tool));
        m.insert("version".into(), json!(self.version));
        m.insert("config_hash".into(), json!(self.config_hash));
        m.insert("tolerances".into(), Value::Object(self.tolerances.clone()));
        for (k, v) in &self.extra {
            m.insert(k.clone(), v.clone());
        }
        Value::Object(m)
    }

    /// `# key: value` lines, keys in sorted order.
    pub fn write_csv_comments<W: Write + ?Sized>(&self, w: &mut W) -> std::io::Result<()> {
        if let Value::Object(m) = self.to_json() {
            for (k, v) in m {
                let text = match v {
                    Value::String(s) => s,
                    other => other.to_string(),
                };
                writeln!(w, "# {k}: {text}")?;
            }
        }
        Ok(())
    }
}

pub fn entry_json(e: &SpectrumEntry) -> Value {
    json!({
        "l": e.l,
        "k": e.k,
        "zero": num(e.zero),
        "eigenvalue": num(e.eigenvalue),
        "gap_ratio": num(e.gap_ratio),
        "in_sigma_star": e.in_sigma_star,
    })
}

pub fn write_spectrum_csv<W: Write + ?Sized>(w: &mut W, meta: &Metadata, entries: &[SpectrumEntry]) -> std::io::Result<()> {
    meta.write_csv_comments(w)?;
    writeln!(w, "{CSV_HEADER}")?;
    for e in entries {
        writeln!(w, "{},{},{},{},{},{}", e.l, e.k, num(e.zero), num(e.eigenvalue), num(e.gap_ratio), e.in_sigma_star)?;
    }
    Ok(())
}

/// `{"metadata": …, <body fields>}` as pretty JSON with a trailing newline.
pub fn write_json<W: Write + ?Sized>(w: &mut W, meta: &Metadata, body: Value) -> std::io::Result<()> {
    let mut m = Map::new();
    m.insert("metadata".into(), meta.to_json());
    match body {
        Value::Object(b) => m.extend(b),
        other => {
            m.insert("result".into(), other);
        }
    }
    serde_json::to_writer_pretty(&mut *w, &Value::Object(m))?;
    writeln!(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::{classify, enumerate};

    #[test]
    fn float_text_has_seventeen_digits() {
        assert_eq!(num(0.1), "1.0000000000000001e-1");
        assert_eq!(num(std::f64::consts::PI).parse::<f64>().unwrap(), std::f64::consts::PI);
    }

    #[test]
    fn hash_is_stable_and_key_order_free() {
        let a = json!({"p": 8, "q": 3});
        let b: Value = serde_json::from_str(r#"{"q": 3, "p": 8}"#).unwrap();
        assert_eq!(config_hash(&a), config_hash(&b));
        assert_eq!(config_hash(&a).len(), 64);
    }

    #[test]
    fn csv_layout() {
        let s = classify(8, 3).unwrap();
        let sp = enumerate(&s, 3, 2).unwrap();
        let meta = Metadata::new(&json!({"cmd": "spectrum"})).with_sigma(&s);
        let mut buf = Vec::new();
        write_spectrum_csv(&mut buf, &meta, &sp.entries).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let data: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(data[0], CSV_HEADER);
        assert_eq!(data.len(), 1 + sp.entries.len());
        assert!(text.contains("# condition: C3"));
        for (line, e) in data[1..].iter().zip(&sp.entries) {
            let cols: Vec<&str> = line.split(',').collect();
            assert_eq!(cols[3].parse::<f64>().unwrap(), e.eigenvalue);
        }
    }
}
