use std::path::Path;

use clap::ValueEnum;
use serde::Serialize;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <Format as ValueEnum>::from_str(s, true)
    }
}

impl Format {
    pub fn from_extension(path: &Path) -> Option<Format> {
        match path.extension()?.to_str()?.to_ascii_lowercase().as_str() {
            "json" => Some(Format::Json),
            "csv" => Some(Format::Csv),
            "txt" | "text" => Some(Format::Text),
            _ => None,
        }
    }
}

/// One command result, rendered in every supported format.
pub struct Rendered {
    pub json: String,
    pub csv: String,
    pub text: String,
}

impl Rendered {
    pub fn new<T: Serialize>(value: &T, csv: String, text: String) -> Result<Self, CliError> {
        let json = serde_json::to_string(value).map_err(|e| CliError::Internal(e.to_string()))?;
        Ok(Rendered { json, csv, text })
    }

    pub fn get(&self, format: Format) -> String {
        let body = match format {
            Format::Json => &self.json,
            Format::Csv => &self.csv,
            Format::Text => &self.text,
        };
        if body.ends_with('\n') {
            body.clone()
        } else {
            format!("{body}\n")
        }
    }
}

/// Small CSV tables for reports that have no table of their own.
pub fn csv_table<I, R>(header: &[&str], rows: I) -> Result<String, CliError>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator,
    R::Item: AsRef<[u8]>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)
        .map_err(|e| CliError::Internal(e.to_string()))?;
    for row in rows {
        w.write_record(row)
            .map_err(|e| CliError::Internal(e.to_string()))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Internal(e.to_string()))
}
