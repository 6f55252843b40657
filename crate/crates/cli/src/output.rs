//! CSV tables, optional JSON mirrors and the per-run manifest.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Serialize;

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(i64),
    Text(String),
}

impl Cell {
    /// Floats print with 17 significant digits so values round-trip exactly.
    pub fn render(&self) -> String {
        match self {
            Cell::Float(x) if x.is_finite() => format!("{x:.16e}"),
            Cell::Float(x) => format!("{x}"),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Cell::Float(x) => serde_json::Number::from_f64(*x).map(serde_json::Value::Number).unwrap_or(serde_json::Value::Null),
            Cell::Int(i) => (*i).into(),
            Cell::Text(s) => s.clone().into(),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<i64> for Cell {
    fn from(x: i64) -> Self {
        Cell::Int(x)
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Text(b.to_string())
    }
}

#[derive(Clone, Debug)]
pub struct Table {
    pub name: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

#[macro_export]
macro_rules! row {
    ($($x:expr),* $(,)?) => { vec![$($crate::output::Cell::from($x)),*] };
}

impl Table {
    pub fn new(name: &str, header: &[&str]) -> Self {
        Table { name: name.to_string(), header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    fn write_csv(&self, path: &Path) -> anyhow::Result<()> {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r.iter().map(Cell::render))?;
        }
        w.flush()?;
        Ok(())
    }

    fn write_json(&self, path: &Path) -> anyhow::Result<()> {
        let rows: Vec<serde_json::Map<String, serde_json::Value>> =
            self.rows.iter().map(|r| self.header.iter().cloned().zip(r.iter().map(Cell::json)).collect()).collect();
        std::fs::write(path, serde_json::to_string_pretty(&rows)?)?;
        Ok(())
    }
}

#[derive(Serialize, Debug, Clone)]
pub struct Artifact {
    pub file: String,
    pub rows: usize,
}

#[derive(Serialize, Debug, Clone)]
pub struct ErrorRecord {
    pub kind: String,
    pub message: String,
}

#[derive(Serialize, Debug, Clone)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub core_version: String,
    pub command: String,
    pub config: BTreeMap<String, String>,
    pub artifacts: Vec<Artifact>,
    pub summary: BTreeMap<String, serde_json::Value>,
    pub warnings: Vec<String>,
    pub error: Option<ErrorRecord>,
}

impl Manifest {
    pub fn new(command: &str) -> Self {
        Manifest {
            tool: "phi4".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            core_version: phi4::VERSION.into(),
            command: command.into(),
            config: BTreeMap::new(),
            artifacts: Vec::new(),
            summary: BTreeMap::new(),
            warnings: Vec::new(),
            error: None,
        }
    }
}

/// Collected output of one run.
#[derive(Debug, Default)]
pub struct RunOutput {
    pub tables: Vec<Table>,
    pub summary: BTreeMap<String, serde_json::Value>,
    pub warnings: Vec<String>,
}

impl RunOutput {
    pub fn note(&mut self, key: &str, v: impl Into<serde_json::Value>) {
        self.summary.insert(key.to_string(), v.into());
    }
}

pub fn manifest_path(dir: &Path, command: &str) -> PathBuf {
    dir.join(format!("{command}.manifest.json"))
}

pub fn write_tables(dir: &Path, tables: &[Table], json: bool) -> anyhow::Result<Vec<Artifact>> {
    std::fs::create_dir_all(dir)?;
    let mut out = Vec::new();
    for t in tables {
        let file = format!("{}.csv", t.name);
        t.write_csv(&dir.join(&file))?;
        out.push(Artifact { file, rows: t.rows.len() });
        if json {
            let file = format!("{}.json", t.name);
            t.write_json(&dir.join(&file))?;
            out.push(Artifact { file, rows: t.rows.len() });
        }
    }
    Ok(out)
}

pub fn write_manifest(dir: &Path, m: &Manifest) -> anyhow::Result<()> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(manifest_path(dir, &m.command), serde_json::to_string_pretty(m)? + "\n")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits_round_trip() {
        for x in [0.1, 1.0 / 3.0, -2.0e-300, 6.02214076e23] {
            let s = Cell::Float(x).render();
            assert_eq!(s.parse::<f64>().unwrap(), x);
            let mantissa = s.split('e').next().unwrap().trim_start_matches('-').replace('.', "");
            assert_eq!(mantissa.len(), 17);
        }
    }
}
