//! Long-format tables and their CSV / JSON encodings.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use nonstatic::Space;
use serde::Serialize;

use crate::config::{Format, RunConfig};
use crate::error::CliError;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Row-major numeric table with named columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    values: Vec<f64>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self { columns, values: Vec::new() }
    }

    pub fn with_capacity(columns: Vec<&'static str>, rows: usize) -> Self {
        let values = Vec::with_capacity(rows * columns.len());
        Self { columns, values }
    }

    pub fn push(&mut self, row: &[f64]) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.values.extend_from_slice(row);
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks(self.columns.len())
    }

    pub fn len(&self) -> usize {
        self.values.len() / self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Shortest representation that parses back to the same `f64`.
pub fn fmt_num(v: f64) -> String {
    format!("{v:?}")
}

pub fn write_csv<W: Write>(out: W, table: &Table) -> io::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(&table.columns)?;
    for row in table.rows() {
        w.write_record(row.iter().map(|&v| fmt_num(v)))?;
    }
    w.flush()
}

#[derive(Serialize)]
struct Envelope<'a> {
    version: &'a str,
    command: &'a str,
    space: &'a str,
    config: &'a RunConfig,
    columns: &'a [&'static str],
    rows: Vec<&'a [f64]>,
}

pub fn write_json<W: Write>(
    mut out: W,
    table: &Table,
    command: &str,
    space: Space,
    config: &RunConfig,
) -> io::Result<()> {
    let env = Envelope {
        version: VERSION,
        command,
        space: space.label(),
        config,
        columns: &table.columns,
        rows: table.rows().collect(),
    };
    serde_json::to_writer(&mut out, &env)?;
    out.write_all(b"\n")?;
    out.flush()
}

/// Output path per space: the `--out` path itself for one space,
/// `<stem>_q.<ext>` and `<stem>_p.<ext>` for both, stdout when absent.
pub fn destinations(path: Option<&str>, spaces: &[Space]) -> Result<Vec<Option<PathBuf>>, CliError> {
    match path {
        None if spaces.len() > 1 => Err(CliError::Config(
            "--out is required when --space both (one file is written per space)".into(),
        )),
        None => Ok(vec![None]),
        Some(p) if spaces.len() == 1 => Ok(vec![Some(PathBuf::from(p))]),
        Some(p) => Ok(spaces.iter().map(|&s| Some(suffixed(Path::new(p), s))).collect()),
    }
}

fn suffixed(path: &Path, space: Space) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}_{}.{}", space.label(), ext.to_string_lossy()),
        None => format!("{stem}_{}", space.label()),
    };
    path.with_file_name(name)
}

pub fn emit(
    dest: Option<&Path>,
    table: &Table,
    command: &str,
    space: Space,
    config: &RunConfig,
) -> Result<(), CliError> {
    let write = |w: &mut dyn Write| match config.output.format {
        Format::Csv => write_csv(w, table),
        Format::Json => write_json(w, table, command, space, config),
    };
    match dest {
        None => {
            let stdout = io::stdout();
            let mut lock = BufWriter::new(stdout.lock());
            write(&mut lock).map_err(|e| CliError::Output(format!("stdout: {e}")))
        }
        Some(path) => {
            let io_err = |source| CliError::Io { path: path.to_path_buf(), source };
            let file = File::create(path).map_err(io_err)?;
            let mut w = BufWriter::new(file);
            write(&mut w).map_err(io_err)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_is_lf_terminated_with_header() {
        let mut t = Table::new(vec!["t", "x", "density"]);
        t.push(&[0.0, -1.5, 0.1 + 0.2]);
        t.push(&[1e-300, 2.0, 3.0]);
        let mut buf = Vec::new();
        write_csv(&mut buf, &t).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "t,x,density\n0.0,-1.5,0.30000000000000004\n1e-300,2.0,3.0\n");
    }

    #[test]
    fn numbers_round_trip() {
        for v in [0.1, -2.0 / 3.0, 1e-320, 6.02214076e23, std::f64::consts::PI] {
            assert_eq!(fmt_num(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn both_spaces_need_a_path() {
        assert!(destinations(None, &Space::BOTH).is_err());
        let d = destinations(Some("dir/fig1.csv"), &Space::BOTH).unwrap();
        assert_eq!(d[0].as_deref(), Some(Path::new("dir/fig1_q.csv")));
        assert_eq!(d[1].as_deref(), Some(Path::new("dir/fig1_p.csv")));
        assert_eq!(destinations(Some("a.json"), &[Space::P]).unwrap()[0].as_deref(), Some(Path::new("a.json")));
    }
}
