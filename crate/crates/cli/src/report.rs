use std::fmt;
use std::io::{self, Write};

use hydralab::HydraError;
use serde_json::{Map, Value};

pub const SCHEMA: &str = "hydralab/v1";

pub const EXIT_OK: u8 = 0;
pub const EXIT_PROPERTY_FAILS: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_RESOURCE: u8 = 3;

/// A command that could not produce its result.
#[derive(Debug)]
pub enum Failure {
    /// Bad arguments or unreadable input.
    Usage(String),
    /// A check came out false.
    Property(String),
    /// A size or search limit was hit.
    Resource(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Property(_) => EXIT_PROPERTY_FAILS,
            Failure::Resource(_) => EXIT_RESOURCE,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Property(m) | Failure::Resource(m) => f.write_str(m),
        }
    }
}

impl From<HydraError> for Failure {
    fn from(e: HydraError) -> Self {
        let msg = e.to_string();
        match e {
            HydraError::TooLarge { .. } | HydraError::SearchLimit { .. } => Failure::Resource(msg),
            HydraError::NotHydra | HydraError::NotThreeHorn | HydraError::Infeasible { .. } => Failure::Property(msg),
            _ => Failure::Usage(msg),
        }
    }
}

/// Text lines plus the same content as JSON fields.
pub struct Report {
    pub command: &'static str,
    pub lines: Vec<String>,
    pub fields: Map<String, Value>,
    pub code: u8,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report {
            command,
            lines: Vec::new(),
            fields: Map::new(),
            code: EXIT_OK,
        }
    }

    pub fn line(&mut self, text: impl Into<String>) -> &mut Self {
        self.lines.push(text.into());
        self
    }

    pub fn field(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.fields.insert(key.to_string(), value.into());
        self
    }

    /// Writes to stdout; a closed pipe ends the output quietly.
    pub fn print(self, json: bool) {
        let mut out = io::stdout().lock();
        let _ = if json {
            let mut doc = Map::new();
            doc.insert("schema".into(), SCHEMA.into());
            doc.insert("command".into(), self.command.into());
            doc.extend(self.fields);
            writeln!(out, "{}", serde_json::to_string_pretty(&Value::Object(doc)).expect("serializable"))
        } else {
            self.lines.iter().try_for_each(|line| writeln!(out, "{line}"))
        };
    }
}
