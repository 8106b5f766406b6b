use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::ValueEnum;

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// A finished report in both renderings.
pub struct Report {
    pub json: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// Set when the report documents a route mismatch or oracle
    /// disagreement; the report is still written, then the process exits 4.
    pub failure: Option<String>,
}

impl Report {
    pub fn new<T: serde::Serialize>(value: &T, header: &[&str], rows: Vec<Vec<String>>) -> Report {
        Report {
            json: serde_json::to_string_pretty(value).expect("reports serialize"),
            header: header.iter().map(|s| s.to_string()).collect(),
            rows,
            failure: None,
        }
    }

    pub fn failing_if(mut self, failed: bool, msg: impl Into<String>) -> Report {
        if failed {
            self.failure = Some(msg.into());
        }
        self
    }
}

fn render_csv(r: &Report) -> io::Result<Vec<u8>> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(&r.header)?;
    for row in &r.rows {
        w.write_record(row)?;
    }
    w.into_inner().map_err(|e| io::Error::other(e.to_string()))
}

fn resolve(path: &Path) -> PathBuf {
    match std::env::var_os("ORDINARITY_OUTPUT_DIR") {
        Some(dir) if path.is_relative() => PathBuf::from(dir).join(path),
        _ => path.to_path_buf(),
    }
}

pub fn emit(r: &Report, format: Format, output: Option<&Path>) -> io::Result<()> {
    let bytes = match format {
        Format::Json => {
            let mut b = r.json.clone().into_bytes();
            b.push(b'\n');
            b
        }
        Format::Csv => render_csv(r)?,
    };
    match output {
        Some(p) => {
            let p = resolve(p);
            std::fs::write(&p, bytes).map_err(|e| io::Error::new(e.kind(), format!("{}: {e}", p.display())))
        }
        None => io::stdout().lock().write_all(&bytes),
    }
}
