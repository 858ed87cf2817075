use std::io::Write;

use serde_json::{Map, Value};

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Emits one record per call: a text block, or one JSON line carrying
/// `schema_version` and `record`.
pub struct Output {
    pub format: Format,
}

impl Output {
    pub fn emit(&self, record: &str, fields: Value, text: impl FnOnce() -> String) {
        match self.format {
            Format::Text => line(&text()),
            Format::Json => {
                let mut m = Map::new();
                m.insert("schema_version".into(), SCHEMA_VERSION.into());
                m.insert("record".into(), record.into());
                if let Value::Object(f) = fields {
                    m.extend(f);
                } else {
                    m.insert("value".into(), fields);
                }
                line(&Value::Object(m).to_string());
            }
        }
    }
}

/// A closed pipe (e.g. `| head`) ends output quietly.
fn line(s: &str) {
    if writeln!(std::io::stdout().lock(), "{s}").is_err() {
        std::process::exit(0);
    }
}
