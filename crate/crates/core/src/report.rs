//! Command reports in two formats.
//!
//! Text: one `key: value` line per entry, in insertion order. List values
//! repeat their key once per item. The last line is `status: ok` or
//! `status: error`, the latter followed by `error: <message>`.
//!
//! Machine: a single line holding one JSON object with the keys `command`,
//! `inputs`, `results`, `status` and `error`, in that order. `inputs` and
//! `results` are objects in insertion order.

use std::fmt::Write as _;

use serde_json::{Map, Value};

use crate::error::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReportValue {
    Bool(bool),
    Int(u64),
    Text(String),
    List(Vec<String>),
}

impl From<bool> for ReportValue {
    fn from(b: bool) -> Self {
        ReportValue::Bool(b)
    }
}

impl From<usize> for ReportValue {
    fn from(v: usize) -> Self {
        ReportValue::Int(v as u64)
    }
}

impl From<String> for ReportValue {
    fn from(s: String) -> Self {
        ReportValue::Text(s)
    }
}

impl From<&str> for ReportValue {
    fn from(s: &str) -> Self {
        ReportValue::Text(s.to_owned())
    }
}

impl From<Vec<String>> for ReportValue {
    fn from(v: Vec<String>) -> Self {
        ReportValue::List(v)
    }
}

impl ReportValue {
    fn to_json(&self) -> Value {
        match self {
            ReportValue::Bool(b) => Value::Bool(*b),
            ReportValue::Int(i) => Value::from(*i),
            ReportValue::Text(s) => Value::String(s.clone()),
            ReportValue::List(items) => {
                Value::Array(items.iter().cloned().map(Value::String).collect())
            }
        }
    }
}

/// Failure classes, each with its own process exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Usage,
    Input,
    CapExceeded,
    Invariant,
}

impl ErrorKind {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorKind::Usage => 1,
            ErrorKind::Input => 2,
            ErrorKind::CapExceeded => 3,
            ErrorKind::Invariant => 4,
        }
    }

    pub fn of(err: &Error) -> ErrorKind {
        match err {
            Error::DegreeTooLarge { .. } => ErrorKind::CapExceeded,
            Error::NotClosed { .. } | Error::MissingIdentity => ErrorKind::Invariant,
            Error::Parse { .. } | Error::Validation(_) => ErrorKind::Input,
            _ => ErrorKind::Usage,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Ok,
    Error { kind: ErrorKind, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<(String, String)>,
    pub results: Vec<(String, ReportValue)>,
    pub status: Status,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_owned(),
            inputs: Vec::new(),
            results: Vec::new(),
            status: Status::Ok,
        }
    }

    pub fn input(mut self, key: &str, value: impl ToString) -> Self {
        self.inputs.push((key.to_owned(), value.to_string()));
        self
    }

    pub fn push(&mut self, key: &str, value: impl Into<ReportValue>) {
        self.results.push((key.to_owned(), value.into()));
    }

    pub fn fail(&mut self, kind: ErrorKind, message: impl Into<String>) {
        self.status = Status::Error {
            kind,
            message: message.into(),
        };
    }

    pub fn fail_with(&mut self, err: &Error) {
        self.fail(ErrorKind::of(err), err.to_string());
    }

    pub fn is_ok(&self) -> bool {
        self.status == Status::Ok
    }

    pub fn exit_code(&self) -> i32 {
        match &self.status {
            Status::Ok => 0,
            Status::Error { kind, .. } => kind.exit_code(),
        }
    }

    pub fn get(&self, key: &str) -> Option<&ReportValue> {
        self.results.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        for (k, v) in &self.inputs {
            let _ = writeln!(out, "input.{k}: {v}");
        }
        for (k, v) in &self.results {
            match v {
                ReportValue::Bool(b) => {
                    let _ = writeln!(out, "{k}: {b}");
                }
                ReportValue::Int(i) => {
                    let _ = writeln!(out, "{k}: {i}");
                }
                ReportValue::Text(s) => {
                    let _ = writeln!(out, "{k}: {s}");
                }
                ReportValue::List(items) => {
                    for item in items {
                        let _ = writeln!(out, "{k}: {item}");
                    }
                }
            }
        }
        match &self.status {
            Status::Ok => out.push_str("status: ok\n"),
            Status::Error { message, .. } => {
                let _ = writeln!(out, "status: error\nerror: {message}");
            }
        }
        out
    }

    pub fn to_machine(&self) -> String {
        let inputs: Map<String, Value> = self
            .inputs
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.clone())))
            .collect();
        let results: Map<String, Value> = self
            .results
            .iter()
            .map(|(k, v)| (k.clone(), v.to_json()))
            .collect();
        let (status, error) = match &self.status {
            Status::Ok => ("ok", Value::Null),
            Status::Error { message, .. } => ("error", Value::String(message.clone())),
        };
        let mut record = Map::new();
        record.insert("command".into(), Value::String(self.command.clone()));
        record.insert("inputs".into(), Value::Object(inputs));
        record.insert("results".into(), Value::Object(results));
        record.insert("status".into(), Value::String(status.into()));
        record.insert("error".into(), error);
        let mut line = Value::Object(record).to_string();
        line.push('\n');
        line
    }

    pub fn render(&self, machine: bool) -> String {
        if machine {
            self.to_machine()
        } else {
            self.to_text()
        }
    }
}
