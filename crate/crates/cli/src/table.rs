//! CSV emission and parsing.

use std::fs;
use std::io::Write;
use std::path::Path;

use mbm_core::{Provenance, SurvivalCurve};

use crate::{CliError, CliResult};

/// 17 significant digits, enough to round-trip any `f64`.
pub(crate) fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// Header-first CSV held in memory until the run has succeeded, so a failing
/// command leaves no partial output.
pub(crate) struct Table {
    writer: csv::Writer<Vec<u8>>,
}

impl Table {
    pub(crate) fn new(header: &[&str]) -> CliResult<Self> {
        let mut writer = csv::WriterBuilder::new().from_writer(Vec::new());
        writer.write_record(header).map_err(csv_err)?;
        Ok(Table { writer })
    }

    pub(crate) fn row<I, S>(&mut self, fields: I) -> CliResult<()>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        self.writer.write_record(fields).map_err(csv_err)
    }

    pub(crate) fn into_bytes(self) -> CliResult<Vec<u8>> {
        self.writer
            .into_inner()
            .map_err(|e| CliError::Io(e.into_error()))
    }
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Usage(format!("csv: {e}"))
}

/// Writes `bytes` to `path`, or to `out` when `path` is `-`.
pub(crate) fn emit(path: &Path, bytes: &[u8], out: &mut dyn Write) -> CliResult<()> {
    if path.as_os_str() == "-" {
        out.write_all(bytes)?;
        out.flush()?;
    } else {
        fs::write(path, bytes)?;
    }
    Ok(())
}

/// Reads a survival curve from a CSV with at least the columns `t` and
/// `survival`; `stderr` and `provenance` are used when present.
pub(crate) fn read_curve(path: &Path) -> CliResult<SurvivalCurve> {
    let bad = |msg: String| CliError::Usage(format!("{}: {msg}", path.display()));
    let text = fs::read_to_string(path).map_err(|e| bad(e.to_string()))?;
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let headers = reader.headers().map_err(|e| bad(e.to_string()))?.clone();
    let column = |name: &str| headers.iter().position(|h| h.trim() == name);
    let t_col = column("t").ok_or_else(|| bad("no `t` column".into()))?;
    let s_col = column("survival").ok_or_else(|| bad("no `survival` column".into()))?;
    let se_col = column("stderr");
    let prov_col = column("provenance");

    let mut grid = Vec::new();
    let mut values = Vec::new();
    let mut stderr = Vec::new();
    let mut provenance = None;
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| bad(e.to_string()))?;
        let field = |c: usize| -> CliResult<f64> {
            let raw = record.get(c).unwrap_or("").trim();
            raw.parse()
                .map_err(|_| bad(format!("row {}: `{raw}` is not a number", i + 1)))
        };
        grid.push(field(t_col)?);
        values.push(field(s_col)?);
        if let Some(c) = se_col {
            stderr.push(field(c)?);
        }
        if let (Some(c), None) = (prov_col, provenance) {
            let raw = record.get(c).unwrap_or("").trim();
            provenance = Some(raw.parse::<Provenance>()?);
        }
    }
    let provenance = provenance.unwrap_or(if se_col.is_some() {
        Provenance::Empirical
    } else {
        Provenance::ClosedForm
    });
    let stderr = se_col.map(|_| stderr);
    Ok(SurvivalCurve::new(grid, values, provenance, stderr)?)
}
