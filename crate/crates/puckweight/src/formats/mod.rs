//! Versioned text file formats.

pub mod design;
pub mod events;
pub mod features;
pub mod model;
pub mod shifts;
pub mod truth;

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

/// Reads a whole file, mapping failures to [`Error::Io`].
pub fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

/// Writes a whole file, mapping failures to [`Error::Io`].
pub fn write_file(path: &Path, contents: &[u8]) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::io(path, e))
}

/// Checks the version line and returns the rest of the text.
pub(crate) fn strip_version<'a>(text: &'a str, magic: &str, source: &str) -> Result<&'a str> {
    let (first, rest) = match text.find('\n') {
        Some(i) => (&text[..i], &text[i + 1..]),
        None => (text, ""),
    };
    let first = first.trim_end_matches('\r').trim_start_matches('\u{feff}');
    if first != magic {
        return Err(Error::SchemaVersion {
            path: source.to_string(),
            expected: magic.to_string(),
            found: first.to_string(),
        });
    }
    Ok(rest)
}

/// CSV reader over the body after the version line. Row line numbers from the
/// reader are off by one against the file; see [`file_line`].
pub(crate) fn body_reader(body: &str, flexible: bool) -> csv::Reader<&[u8]> {
    csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(flexible)
        .from_reader(body.as_bytes())
}

pub(crate) fn file_line(record: &csv::StringRecord) -> u64 {
    record.position().map_or(0, |p| p.line()) + 1
}

pub(crate) fn csv_error(source: &str, e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line() + 1);
    Error::Parse {
        path: source.to_string(),
        line,
        field: "row".to_string(),
        message: e.to_string(),
    }
}

/// Checks the header row against the expected column names.
pub(crate) fn expect_header(
    rows: &mut csv::StringRecordsIter<&[u8]>,
    columns: &[&str],
    source: &str,
) -> Result<()> {
    let header = match rows.next() {
        Some(r) => r.map_err(|e| csv_error(source, e))?,
        None => {
            return Err(Error::Parse {
                path: source.to_string(),
                line: 2,
                field: "header".to_string(),
                message: format!("missing header, expected `{}`", columns.join(",")),
            })
        }
    };
    if header.iter().ne(columns.iter().copied()) {
        return Err(Error::Parse {
            path: source.to_string(),
            line: file_line(&header),
            field: "header".to_string(),
            message: format!(
                "expected `{}`, found `{}`",
                columns.join(","),
                header.iter().collect::<Vec<_>>().join(",")
            ),
        });
    }
    Ok(())
}

/// Field access for one data row with line-numbered errors.
pub(crate) struct Row<'a> {
    pub record: &'a csv::StringRecord,
    pub columns: &'a [&'a str],
    pub source: &'a str,
}

impl Row<'_> {
    pub fn error(&self, field: &str, message: impl Into<String>) -> Error {
        Error::Parse {
            path: self.source.to_string(),
            line: file_line(self.record),
            field: field.to_string(),
            message: message.into(),
        }
    }

    pub fn raw(&self, field: &str) -> &str {
        let i = self.columns.iter().position(|c| *c == field).expect("known column");
        self.record.get(i).unwrap_or("").trim()
    }

    pub fn text(&self, field: &str) -> Result<String> {
        let v = self.raw(field);
        if v.is_empty() {
            return Err(self.error(field, "required value is empty"));
        }
        Ok(v.to_string())
    }

    pub fn optional_text(&self, field: &str) -> Option<String> {
        let v = self.raw(field);
        (!v.is_empty()).then(|| v.to_string())
    }

    pub fn parse<T: std::str::FromStr>(&self, field: &str) -> Result<T>
    where
        T::Err: std::fmt::Display,
    {
        let v = self.raw(field);
        v.parse()
            .map_err(|e| self.error(field, format!("cannot parse `{v}`: {e}")))
    }

    pub fn optional_f64(&self, field: &str) -> Result<Option<f64>> {
        if self.raw(field).is_empty() {
            return Ok(None);
        }
        let v: f64 = self.parse(field)?;
        if !v.is_finite() {
            return Err(self.error(field, "value must be finite"));
        }
        Ok(Some(v))
    }

    pub fn check_width(&self) -> Result<()> {
        if self.record.len() != self.columns.len() {
            return Err(self.error(
                "row",
                format!("expected {} fields, found {}", self.columns.len(), self.record.len()),
            ));
        }
        Ok(())
    }
}

/// Shortest decimal form that parses back to the same value.
pub(crate) fn fmt_f64(v: f64) -> String {
    format!("{v}")
}
