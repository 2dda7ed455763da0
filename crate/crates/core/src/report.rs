//! Verdict lists rendered as plain text or JSON.

use serde::Serialize;
use serde_json::Value;

/// Failure taxonomy, doubling as process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Failure {
    Other = 1,
    Parse = 2,
    Axiom = 3,
    NotInner = 4,
    ClassNontrivial = 5,
}

impl Failure {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub check: String,
    pub pass: bool,
    /// Witness on success, counterexample on failure.
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<Failure>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Output {
    pub name: String,
    pub value: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub verdicts: Vec<Verdict>,
    pub outputs: Vec<Output>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report { command: command.into(), verdicts: Vec::new(), outputs: Vec::new() }
    }

    pub fn pass(&mut self, check: impl Into<String>, detail: impl Into<String>) {
        self.verdicts.push(Verdict { check: check.into(), pass: true, detail: detail.into(), failure: None });
    }

    pub fn fail(&mut self, check: impl Into<String>, failure: Failure, detail: impl Into<String>) {
        self.verdicts.push(Verdict { check: check.into(), pass: false, detail: detail.into(), failure: Some(failure) });
    }

    pub fn verdict(&mut self, check: impl Into<String>, ok: bool, failure: Failure, detail: impl Into<String>) {
        if ok {
            self.pass(check, detail)
        } else {
            self.fail(check, failure, detail)
        }
    }

    pub fn output(&mut self, name: impl Into<String>, value: impl Into<Value>) {
        self.outputs.push(Output { name: name.into(), value: value.into() });
    }

    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    /// First failure decides the code.
    pub fn exit_code(&self) -> i32 {
        self.verdicts.iter().find_map(|v| v.failure).map_or(0, Failure::code)
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("{}\n", self.command);
        for v in &self.verdicts {
            let tag = if v.pass { "PASS" } else { "FAIL" };
            if v.detail.is_empty() {
                out.push_str(&format!("  [{tag}] {}\n", v.check));
            } else {
                out.push_str(&format!("  [{tag}] {}: {}\n", v.check, v.detail));
            }
        }
        for o in &self.outputs {
            render_value(&mut out, &o.name, &o.value, 1);
        }
        out
    }

    pub fn render_machine(&self) -> String {
        #[derive(Serialize)]
        struct Machine<'a> {
            #[serde(flatten)]
            report: &'a Report,
            exit_code: i32,
        }
        let mut s = serde_json::to_string_pretty(&Machine { report: self, exit_code: self.exit_code() })
            .expect("report serializes");
        s.push('\n');
        s
    }
}

fn render_value(out: &mut String, name: &str, value: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match value {
        Value::String(s) => out.push_str(&format!("{pad}{name}: {s}\n")),
        Value::Array(items) if items.iter().all(Value::is_string) && !items.is_empty() => {
            out.push_str(&format!("{pad}{name}:\n"));
            for it in items {
                out.push_str(&format!("{pad}  {}\n", it.as_str().expect("checked")));
            }
        }
        Value::Array(items) if items.iter().any(|v| v.is_object()) => {
            out.push_str(&format!("{pad}{name}:\n"));
            for (k, it) in items.iter().enumerate() {
                render_value(out, &format!("[{k}]"), it, depth + 1);
            }
        }
        Value::Object(map) => {
            out.push_str(&format!("{pad}{name}:\n"));
            for (k, v) in map {
                render_value(out, k, v, depth + 1);
            }
        }
        other => out.push_str(&format!("{pad}{name}: {other}\n")),
    }
}
