use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};

use crate::args::OutputArgs;
use crate::commands::Run;

/// Directory for output files when no explicit path is given; relative
/// paths are resolved against it too.
pub const OUT_DIR_VAR: &str = "PSRANGE_OUT_DIR";

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub params: BTreeMap<String, String>,
    pub seed: Option<u64>,
    pub version: String,
    pub duration_secs: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

fn destination(args: &OutputArgs, subcommand: &str, format: Format) -> Option<PathBuf> {
    let explicit = args.csv.clone().flatten().or_else(|| args.out.clone());
    let dir = std::env::var_os(OUT_DIR_VAR).map(PathBuf::from);
    match (explicit, dir) {
        (Some(p), Some(d)) if p.is_relative() => Some(d.join(p)),
        (Some(p), _) => Some(p),
        (None, Some(d)) => Some(d.join(format!("{}.{}", subcommand.replace(' ', "-"), format.extension()))),
        (None, None) => None,
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn render_csv(run: &Run) -> io::Result<Vec<u8>> {
    let mut headers: Vec<String> = Vec::new();
    for row in &run.rows {
        for k in row.keys() {
            if !headers.contains(k) {
                headers.push(k.clone());
            }
        }
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&headers)?;
    for row in &run.rows {
        w.write_record(headers.iter().map(|h| row.get(h).map(cell).unwrap_or_default()))?;
    }
    w.into_inner().map_err(|e| io::Error::other(e.to_string()))
}

fn write_to(path: Option<&Path>, bytes: &[u8]) -> io::Result<()> {
    match path {
        Some(p) => {
            if let Some(parent) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(parent)?;
            }
            fs::write(p, bytes)
        }
        None => io::stdout().lock().write_all(bytes),
    }
}

pub fn emit(args: &OutputArgs, manifest: &RunManifest, run: &Run) -> io::Result<()> {
    let format = if args.csv.is_some() { Format::Csv } else { Format::Json };
    let path = destination(args, &manifest.subcommand, format);
    match format {
        Format::Json => {
            let doc = json!({ "manifest": manifest, "result": run.result });
            let mut text = serde_json::to_string_pretty(&doc).map_err(io::Error::other)?;
            text.push('\n');
            write_to(path.as_deref(), text.as_bytes())
        }
        Format::Csv => {
            write_to(path.as_deref(), &render_csv(run)?)?;
            let manifest_json = serde_json::to_string(manifest).map_err(io::Error::other)?;
            match path {
                Some(p) => {
                    let mut side = p.into_os_string();
                    side.push(".manifest.json");
                    fs::write(side, manifest_json + "\n")
                }
                None => writeln!(io::stderr(), "{manifest_json}"),
            }
        }
    }
}
