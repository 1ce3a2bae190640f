//! Uniform report shape shared by every command, with JSON and Markdown output.

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED",
        }
    }
}

impl From<tgs_core::catalog::Status> for Status {
    fn from(s: tgs_core::catalog::Status) -> Self {
        match s {
            tgs_core::catalog::Status::Pass => Status::Pass,
            tgs_core::catalog::Status::Fail => Status::Fail,
            tgs_core::catalog::Status::Skipped => Status::Skipped,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Item {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub space: Option<String>,
    pub seed: u64,
    pub status: Status,
    pub summary: Summary,
    pub items: Vec<Item>,
    pub data: Value,
}

impl Report {
    pub fn new(command: &str, space: Option<&str>, seed: u64, items: Vec<Item>, data: Value) -> Self {
        let n = |s: Status| items.iter().filter(|i| i.status == s).count();
        let summary = Summary { pass: n(Status::Pass), fail: n(Status::Fail), skipped: n(Status::Skipped) };
        Report {
            command: command.to_string(),
            space: space.map(str::to_string),
            seed,
            status: Status::from_bool(summary.fail == 0),
            summary,
            items,
            data,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_markdown(&self) -> String {
        let mut s = format!("# {}", self.command);
        if let Some(sp) = &self.space {
            s.push_str(&format!(" {sp}"));
        }
        s.push_str("\n\n");
        s.push_str(&format!(
            "status: **{}** ({} pass, {} fail, {} skipped; seed {})\n",
            self.status.name(),
            self.summary.pass,
            self.summary.fail,
            self.summary.skipped,
            self.seed
        ));
        if let Value::Object(m) = &self.data {
            let scalars: Vec<(&String, &Value)> = m.iter().filter(|(_, v)| !v.is_array() && !v.is_object() && !v.is_null()).collect();
            if !scalars.is_empty() {
                s.push('\n');
                for (k, v) in scalars {
                    let text = match v {
                        Value::String(t) => t.clone(),
                        other => other.to_string(),
                    };
                    s.push_str(&format!("- {k}: {text}\n"));
                }
            }
            let nested: Vec<(&String, &Value)> = m.iter().filter(|(_, v)| v.is_array() || v.is_object()).collect();
            for (k, v) in nested {
                s.push_str(&format!("\n## {k}\n\n```json\n{}\n```\n", serde_json::to_string_pretty(v).expect("value serializes")));
            }
        }
        if !self.items.is_empty() {
            s.push_str("\n| check | status | detail |\n|---|---|---|\n");
            for i in &self.items {
                s.push_str(&format!("| {} | {} | {} |\n", cell(&i.name), i.status.name(), cell(&i.detail)));
            }
        }
        s
    }
}

fn cell(t: &str) -> String {
    t.replace('|', "\\|").replace('\n', " ")
}

pub fn item(name: impl Into<String>, status: Status, detail: impl Into<String>) -> Item {
    Item { name: name.into(), status, detail: detail.into() }
}
