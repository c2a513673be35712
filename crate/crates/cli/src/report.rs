use std::io::{self, Write};

use clap::ValueEnum;
use degprobe::ExactProb;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
    #[default]
    Plain,
}

/// Ordered key/value output of a single-result command.
#[derive(Debug, Default)]
pub struct Report {
    headline: Option<String>,
    fields: Vec<(String, String)>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    /// First line in plain output; not part of csv or json.
    pub fn headline(mut self, line: impl Into<String>) -> Self {
        self.headline = Some(line.into());
        self
    }

    pub fn field(&mut self, key: impl Into<String>, value: impl ToString) {
        self.fields.push((key.into(), value.to_string()));
    }

    /// Adds `key` as a decimal and, when `exact` is set, `key_rational`.
    pub fn prob(&mut self, key: &str, p: &ExactProb, precision: usize, exact: bool) {
        if exact {
            self.field(format!("{key}_rational"), p.rational_string());
        }
        self.field(key, p.to_decimal(precision));
    }

    pub fn write(&self, format: OutputFormat, out: &mut impl Write) -> io::Result<()> {
        match format {
            OutputFormat::Plain => {
                if let Some(h) = &self.headline {
                    writeln!(out, "{h}")?;
                }
                for (k, v) in &self.fields {
                    writeln!(out, "{k}: {v}")?;
                }
            }
            OutputFormat::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(self.fields.iter().map(|(k, _)| k))?;
                w.write_record(self.fields.iter().map(|(_, v)| v))?;
                w.flush()?;
            }
            OutputFormat::Json => {
                let map: Map<String, Value> = self
                    .fields
                    .iter()
                    .map(|(k, v)| (k.clone(), Value::String(v.clone())))
                    .collect();
                serde_json::to_writer_pretty(&mut *out, &map)?;
                writeln!(out)?;
            }
        }
        Ok(())
    }
}
