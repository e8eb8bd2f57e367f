//! Run manifests, result documents, and CSV emission.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::CliError;

/// Echoed into every JSON artifact so a result is reproducible from its own
/// record.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub input_paths: Vec<String>,
    pub flags: BTreeMap<String, String>,
    pub seed: u64,
    pub tool_version: String,
}

impl RunManifest {
    pub fn new(subcommand: &str, seed: u64) -> Self {
        Self {
            subcommand: subcommand.to_string(),
            input_paths: Vec::new(),
            flags: BTreeMap::new(),
            seed,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn input(mut self, path: &Path) -> Self {
        self.input_paths.push(path.display().to_string());
        self
    }

    pub fn flag(mut self, key: &str, value: impl ToString) -> Self {
        self.flags.insert(key.to_string(), value.to_string());
        self
    }
}

/// Formats a float with 12 significant digits for CSV cells.
pub fn fmt12(x: f64) -> String {
    format!("{x:.11e}")
}

/// Renders an RFC-4180-style CSV document: header row first, CRLF line
/// endings, minimal quoting. Records must be rectangular.
pub fn csv_document(header: &[&str], rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut out = String::new();
    push_record(&mut out, header.iter().map(|s| s.to_string()));
    for (i, row) in rows.iter().enumerate() {
        if row.len() != header.len() {
            return Err(CliError::Internal(format!(
                "csv: row {i} has {} fields, header has {}",
                row.len(),
                header.len()
            )));
        }
        push_record(&mut out, row.iter().cloned());
    }
    Ok(out)
}

fn push_record(out: &mut String, fields: impl Iterator<Item = String>) {
    let mut first = true;
    for field in fields {
        if !first {
            out.push(',');
        }
        first = false;
        if field.contains(',')
            || field.contains('"')
            || field.contains('\n')
            || field.contains('\r')
        {
            out.push('"');
            out.push_str(&field.replace('"', "\"\""));
            out.push('"');
        } else {
            out.push_str(&field);
        }
    }
    out.push_str("\r\n");
}

/// Stdout format selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Common output flags shared by every subcommand.
#[derive(Debug, clap::Args)]
pub struct OutputArgs {
    /// Directory to write <subcommand>.json and <subcommand>.csv into
    #[arg(long, global = false)]
    pub output: Option<std::path::PathBuf>,
    /// Stdout format
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

/// Prints the result document and writes the artifacts when an output
/// directory was requested. The output flags themselves are folded into
/// the manifest here so every command records them the same way.
pub fn deliver<T: Serialize>(
    args: &OutputArgs,
    manifest: RunManifest,
    result: &T,
    csv_header: &[&str],
    csv_rows: &[Vec<String>],
) -> Result<(), CliError> {
    let mut manifest = manifest.flag(
        "format",
        match args.format {
            Format::Json => "json",
            Format::Csv => "csv",
        },
    );
    if let Some(dir) = &args.output {
        manifest = manifest.flag("output", dir.display());
    }
    let doc = serde_json::json!({ "manifest": manifest, "result": result });
    let json =
        serde_json::to_string_pretty(&doc).map_err(|e| CliError::Internal(format!("json: {e}")))?;
    let csv = csv_document(csv_header, csv_rows)?;

    match args.format {
        Format::Json => println!("{json}"),
        Format::Csv => print!("{csv}"),
    }

    if let Some(dir) = &args.output {
        fs::create_dir_all(dir).map_err(|e| {
            CliError::Internal(format!(
                "output: cannot create directory '{}': {e}",
                dir.display()
            ))
        })?;
        let json_path = dir.join(format!("{}.json", manifest.subcommand));
        fs::write(&json_path, format!("{json}\n")).map_err(|e| {
            CliError::Internal(format!(
                "output: cannot write '{}': {e}",
                json_path.display()
            ))
        })?;
        let csv_path = dir.join(format!("{}.csv", manifest.subcommand));
        fs::write(&csv_path, &csv).map_err(|e| {
            CliError::Internal(format!(
                "output: cannot write '{}': {e}",
                csv_path.display()
            ))
        })?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_header_only_for_empty_records() {
        let doc = csv_document(&["a", "b"], &[]).unwrap();
        assert_eq!(doc, "a,b\r\n");
    }

    #[test]
    fn csv_quotes_only_when_needed() {
        let rows = vec![vec!["plain".to_string(), "with,comma".to_string()]];
        let doc = csv_document(&["x", "y"], &rows).unwrap();
        assert_eq!(doc, "x,y\r\nplain,\"with,comma\"\r\n");

        let rows = vec![vec!["say \"hi\"".to_string(), "1".to_string()]];
        let doc = csv_document(&["x", "y"], &rows).unwrap();
        assert_eq!(doc, "x,y\r\n\"say \"\"hi\"\"\",1\r\n");
    }

    #[test]
    fn csv_rejects_ragged_rows() {
        let rows = vec![vec!["1".to_string()]];
        assert!(csv_document(&["a", "b"], &rows).is_err());
    }

    #[test]
    fn fmt12_gives_twelve_significant_digits_that_round_trip() {
        let x = 0.5310044064107188;
        let s = fmt12(x);
        assert_eq!(s, "5.31004406411e-1");
        let back: f64 = s.parse().unwrap();
        assert!((back - x).abs() / x < 1e-11);
        assert_eq!(fmt12(1.0), "1.00000000000e0");
    }
}
