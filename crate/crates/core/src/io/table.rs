use std::path::{Path, PathBuf};

use csv::{ReaderBuilder, StringRecord, Trim};

use crate::error::{Error, Result};

/// A headed CSV file held as raw records, with typed field access that
/// reports the offending line and column.
pub(crate) struct Table {
    path: PathBuf,
    headers: Vec<String>,
    rows: Vec<(usize, StringRecord)>,
}

pub(crate) struct Row<'a> {
    table: &'a Table,
    pub line: usize,
    record: &'a StringRecord,
}

impl Table {
    pub fn read(path: &Path) -> Result<Self> {
        Self::read_inner(path, false)
    }

    /// Like [`Table::read`] but a header-only file is fine.
    pub fn read_allow_empty(path: &Path) -> Result<Self> {
        Self::read_inner(path, true)
    }

    fn read_inner(path: &Path, allow_empty: bool) -> Result<Self> {
        let file = std::fs::File::open(path).map_err(|e| Error::File {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        let mut reader = ReaderBuilder::new().trim(Trim::All).comment(Some(b'#')).from_reader(file);
        let headers = reader
            .headers()
            .map_err(|e| file_error(path, e))?
            .iter()
            .map(|h| h.to_ascii_lowercase())
            .collect::<Vec<_>>();
        let mut rows = Vec::new();
        for rec in reader.records() {
            let rec = rec.map_err(|e| file_error(path, e))?;
            let line = rec.position().map_or(0, |p| p.line() as usize);
            if rec.iter().all(str::is_empty) {
                continue;
            }
            rows.push((line, rec));
        }
        if rows.is_empty() && !allow_empty {
            return Err(Error::File {
                path: path.to_path_buf(),
                message: "no data rows".into(),
            });
        }
        Ok(Self {
            path: path.to_path_buf(),
            headers,
            rows,
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn has(&self, column: &str) -> bool {
        self.headers.iter().any(|h| h == column)
    }

    pub fn require(&self, columns: &[&str]) -> Result<()> {
        let missing: Vec<&str> = columns.iter().copied().filter(|c| !self.has(c)).collect();
        if missing.is_empty() {
            Ok(())
        } else {
            Err(Error::File {
                path: self.path.clone(),
                message: format!("missing column(s): {}", missing.join(", ")),
            })
        }
    }

    pub fn rows(&self) -> impl Iterator<Item = Row<'_>> {
        self.rows.iter().map(move |(line, record)| Row {
            table: self,
            line: *line,
            record,
        })
    }
}

fn file_error(path: &Path, e: csv::Error) -> Error {
    Error::File {
        path: path.to_path_buf(),
        message: e.to_string(),
    }
}

impl Row<'_> {
    pub fn error(&self, column: &str, message: impl Into<String>) -> Error {
        Error::Row {
            path: self.table.path.clone(),
            row: self.line,
            column: column.to_string(),
            message: message.into(),
        }
    }

    pub fn str(&self, column: &str) -> Result<&str> {
        let idx = self
            .table
            .headers
            .iter()
            .position(|h| h == column)
            .ok_or_else(|| self.error(column, "column not present"))?;
        self.record.get(idx).ok_or_else(|| self.error(column, "missing field"))
    }

    pub fn opt_str(&self, column: &str) -> Option<&str> {
        let idx = self.table.headers.iter().position(|h| h == column)?;
        self.record.get(idx).filter(|s| !s.is_empty())
    }

    pub fn f64(&self, column: &str) -> Result<f64> {
        let raw = self.str(column)?;
        let v: f64 = raw
            .parse()
            .map_err(|_| self.error(column, format!("`{raw}` is not a number")))?;
        if !v.is_finite() {
            return Err(self.error(column, format!("`{raw}` is not finite")));
        }
        Ok(v)
    }

    pub fn opt_f64(&self, column: &str) -> Result<Option<f64>> {
        match self.opt_str(column) {
            None => Ok(None),
            Some(_) => self.f64(column).map(Some),
        }
    }

    /// Like [`Row::opt_f64`] but `inf` and `-inf` are accepted.
    pub fn opt_extended_f64(&self, column: &str) -> Result<Option<f64>> {
        let Some(raw) = self.opt_str(column) else {
            return Ok(None);
        };
        let v: f64 = raw
            .parse()
            .map_err(|_| self.error(column, format!("`{raw}` is not a number")))?;
        if v.is_nan() {
            return Err(self.error(column, "NaN is not allowed"));
        }
        Ok(Some(v))
    }

    /// Non-negative whole number, accepting `2` or `2.00`.
    pub fn count(&self, column: &str) -> Result<u64> {
        let v = self.f64(column)?;
        if v < 0.0 || v.fract() != 0.0 {
            return Err(self.error(column, format!("expected a non-negative whole number, got {v}")));
        }
        Ok(v as u64)
    }

    pub fn opt_count(&self, column: &str) -> Result<Option<u64>> {
        match self.opt_str(column) {
            None => Ok(None),
            Some(_) => self.count(column).map(Some),
        }
    }
}
