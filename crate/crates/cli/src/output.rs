use std::io::{self, Write};

use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
            Format::Text => "text",
        }
    }
}

/// The fully resolved configuration of a run, echoed ahead of its output.
pub struct Header {
    command: String,
    entries: Vec<(String, Value)>,
}

impl Header {
    pub fn new(command: &str) -> Self {
        Header { command: command.to_string(), entries: Vec::new() }
    }

    pub fn push(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.entries.push((key.to_string(), value.into()));
        self
    }

    /// `# dnp <command> key=value ...`
    pub fn comment_line(&self) -> String {
        let mut line = format!("# dnp {}", self.command);
        for (k, v) in &self.entries {
            line.push(' ');
            line.push_str(k);
            line.push('=');
            line.push_str(&scalar(v));
        }
        line
    }

    pub fn write_comment<W: Write + ?Sized>(&self, w: &mut W) -> io::Result<()> {
        writeln!(w, "{}", self.comment_line())
    }

    fn to_json(&self) -> Value {
        Value::Object(self.entries.iter().cloned().collect::<Map<_, _>>())
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn write_json<W: Write + ?Sized>(w: &mut W, header: &Header, result: Value) -> io::Result<()> {
    let doc = serde_json::json!({ "command": header.command, "config": header.to_json(), "result": result });
    serde_json::to_writer_pretty(&mut *w, &doc)?;
    writeln!(w)
}

/// `key: value` lines, nested keys joined with dots, arrays inline.
pub fn write_text<W: Write + ?Sized>(w: &mut W, header: &Header, result: &Value) -> io::Result<()> {
    header.write_comment(w)?;
    let mut lines = Vec::new();
    flatten("", result, &mut lines);
    for (k, v) in lines {
        if k.is_empty() {
            writeln!(w, "{v}")?;
        } else {
            writeln!(w, "{k}: {v}")?;
        }
    }
    Ok(())
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, inner) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, inner, out);
            }
        }
        Value::Array(items) if items.iter().any(|i| i.is_object()) => {
            for (i, inner) in items.iter().enumerate() {
                let key = if prefix.is_empty() { i.to_string() } else { format!("{prefix}.{i}") };
                flatten(&key, inner, out);
            }
        }
        other => out.push((prefix.to_string(), scalar(other))),
    }
}

pub fn write<W: Write + ?Sized>(w: &mut W, format: Format, header: &Header, result: Value) -> io::Result<()> {
    match format {
        Format::Text => write_text(w, header, &result),
        _ => write_json(w, header, result),
    }
}
