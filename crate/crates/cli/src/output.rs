//! Text and line-delimited JSON output. Machine records carry no timing
//! unless asked for, so identical invocations print identical bytes.

use std::io::Write;

use clap::ValueEnum;
use serde_json::{json, Value};

use bredon_core::homology::AbelianGroup;

pub const SCHEMA: &str = "bredon-result/1";

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

pub struct Output {
    format: Format,
    lines: Vec<String>,
}

impl Output {
    pub fn new(format: Format) -> Self {
        Output { format, lines: Vec::new() }
    }

    pub fn header(&mut self, command: &str, input: &str, sha256: &str) {
        match self.format {
            Format::Text => self.lines.push(format!("# {command} {input}")),
            Format::Machine => {
                self.record(json!({ "schema": SCHEMA, "command": command, "input": input, "input_sha256": sha256 }))
            }
        }
    }

    pub fn text(&mut self, line: String) {
        if self.format == Format::Text {
            self.lines.push(line.trim_end_matches('\n').to_string());
        }
    }

    pub fn record(&mut self, v: Value) {
        if self.format == Format::Machine {
            self.lines.push(v.to_string());
        }
    }

    /// Writes buffered lines; a closed pipe ends output quietly.
    pub fn flush(&mut self) {
        let mut out = std::io::stdout().lock();
        for l in self.lines.drain(..) {
            if writeln!(out, "{l}").is_err() {
                return;
            }
        }
    }
}

pub fn group_json(g: &AbelianGroup) -> Value {
    json!({ "free_rank": g.free_rank, "torsion": g.torsion_strings() })
}
