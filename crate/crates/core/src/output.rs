//! Machine-readable output: JSON result records and CSV threshold sets.

use std::io::{Read, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::rat::Rat;
use crate::sets::{Provenance, ThresholdSetSample};

pub const SCHEMA: &str = "lct/1";
/// Fractional digits in the advisory decimal CSV column.
pub const CSV_DECIMAL_DIGITS: usize = 20;

/// One JSON record per invocation (or per input line in batch mode).
#[derive(Clone, Debug, Serialize)]
pub struct ResultRecord {
    pub schema: &'static str,
    pub command: String,
    pub input: String,
    /// SHA-256 of `input`, hex.
    pub digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorBody>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorBody {
    pub code: i32,
    pub message: String,
}

pub fn digest(input: &str) -> String {
    hex::encode(Sha256::digest(input.as_bytes()))
}

impl ResultRecord {
    pub fn ok(command: &str, input: &str, result: Value) -> Self {
        ResultRecord {
            schema: SCHEMA,
            command: command.to_string(),
            input: input.to_string(),
            digest: digest(input),
            result: Some(result),
            error: None,
        }
    }

    pub fn err(command: &str, input: &str, code: i32, message: String) -> Self {
        ResultRecord {
            schema: SCHEMA,
            command: command.to_string(),
            input: input.to_string(),
            digest: digest(input),
            result: None,
            error: Some(ErrorBody { code, message }),
        }
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }
}

/// Writes `value_num,value_den,value_decimal`, one row per element.
pub fn write_csv<W: Write>(sample: &ThresholdSetSample, writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["value_num", "value_den", "value_decimal"])
        .map_err(csv_err)?;
    for v in &sample.values {
        w.write_record([
            v.numer().to_string(),
            v.denom().to_string(),
            v.to_decimal_string(CSV_DECIMAL_DIGITS),
        ])
        .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

pub fn emit_csv(sample: &ThresholdSetSample, path: &Path) -> Result<()> {
    let file = std::fs::File::create(path)?;
    write_csv(sample, std::io::BufWriter::new(file))
}

fn csv_err(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::InvalidArgument(format!("csv: {other:?}")),
    }
}

/// Reads a set written by [`write_csv`], or plain text with one rational
/// (`p` or `p/q`) per line. Blank lines and `#` comments are ignored.
pub fn read_sample<R: Read>(mut reader: R, source: &str) -> Result<ThresholdSetSample> {
    let mut text = String::new();
    reader.read_to_string(&mut text)?;
    let mut values = Vec::new();
    let is_csv = text
        .lines()
        .find(|l| !l.trim().is_empty())
        .is_some_and(|l| l.trim_start().starts_with("value_num"));
    if is_csv {
        let mut r = csv::Reader::from_reader(text.as_bytes());
        for row in r.records() {
            let row = row.map_err(csv_err)?;
            let (num, den) = (row.get(0).unwrap_or(""), row.get(1).unwrap_or(""));
            values.push(parse_value(&format!("{num}/{den}"))?);
        }
    } else {
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            values.push(parse_value(line)?);
        }
    }
    Ok(ThresholdSetSample::new(
        0,
        values,
        Provenance::External {
            source: source.to_string(),
        },
    ))
}

fn parse_value(s: &str) -> Result<Rat> {
    s.parse()
        .map_err(|e| Error::InvalidArgument(format!("set element `{s}`: {e}")))
}
