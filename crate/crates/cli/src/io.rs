//! Atomic file output and the small CSV dialect used by every command:
//! one `#` line stating units, a column-name row, then numeric rows.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::{CliError, Result};

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io { path: path.to_path_buf(), source }
}

pub fn create_dir(path: &Path) -> Result<()> {
    fs::create_dir_all(path).map_err(io_err(path))
}

/// Writes to a sibling temporary file and renames it into place, so readers
/// never observe a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        create_dir(dir)?;
    }
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = path.with_file_name(format!(".{name}.tmp{}", std::process::id()));
    let mut f = fs::File::create(&tmp).map_err(io_err(&tmp))?;
    f.write_all(bytes).and_then(|()| f.sync_all()).map_err(io_err(&tmp))?;
    drop(f);
    fs::rename(&tmp, path).map_err(io_err(path))
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(io_err(path))
}

/// CSV text with a units comment, a header row and one row per record.
#[must_use]
pub fn csv_text(units: &str, columns: &[&str], rows: &[Vec<f64>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let _ = w.write_record(columns);
    for r in rows {
        let _ = w.write_record(r.iter().map(|x| x.to_string()));
    }
    let body = String::from_utf8(w.into_inner().unwrap_or_default()).unwrap_or_default();
    format!("# {units}\n{body}")
}

pub fn write_csv(path: &Path, units: &str, columns: &[&str], rows: &[Vec<f64>]) -> Result<()> {
    write_atomic(path, csv_text(units, columns, rows).as_bytes())
}

/// Named numeric columns read back from the CSV dialect.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn parse(text: &str, path: &Path) -> Result<Self> {
        let perr = |msg: String| CliError::Parse { path: path.to_path_buf(), msg };
        let mut r = csv::ReaderBuilder::new().comment(Some(b'#')).trim(csv::Trim::All).from_reader(text.as_bytes());
        let columns: Vec<String> = r.headers().map_err(|e| perr(e.to_string()))?.iter().map(str::to_string).collect();
        let mut rows = Vec::new();
        for (i, rec) in r.records().enumerate() {
            let rec = rec.map_err(|e| perr(e.to_string()))?;
            let row: std::result::Result<Vec<f64>, _> = rec.iter().map(str::parse::<f64>).collect();
            rows.push(row.map_err(|e| perr(format!("data row {}: {e}", i + 1)))?);
        }
        Ok(Self { columns, rows })
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::parse(&read_text(path)?, path)
    }

    /// Column by name.
    pub fn column(&self, name: &str, path: &Path) -> Result<Vec<f64>> {
        let i = self.columns.iter().position(|c| c == name).ok_or_else(|| CliError::Parse {
            path: path.to_path_buf(),
            msg: format!("missing column `{name}` (have {})", self.columns.join(",")),
        })?;
        Ok(self.rows.iter().map(|r| r[i]).collect())
    }
}

/// Expands a glob into a sorted list of files.
pub fn expand_glob(pattern: &str) -> Result<Vec<PathBuf>> {
    let paths = glob::glob(pattern).map_err(|e| CliError::Parse { path: pattern.into(), msg: e.to_string() })?;
    let mut out: Vec<PathBuf> = paths.filter_map(std::result::Result::ok).filter(|p| p.is_file()).collect();
    out.sort();
    if out.is_empty() {
        return Err(CliError::NoInput(pattern.to_string()));
    }
    Ok(out)
}
