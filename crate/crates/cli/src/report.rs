//! Tables rendered as text or as versioned JSON with the same content.

use serde_json::{json, Map, Value};

pub const SCHEMA: u64 = 1;

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub command: String,
    pub params: Vec<(String, Value)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
    pub summary: Vec<(String, Value)>,
    /// `Some` for verification suites.
    pub passed: Option<bool>,
}

impl Report {
    pub fn new(command: &str, columns: &[&str]) -> Report {
        Report {
            command: command.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            ..Report::default()
        }
    }

    pub fn param(&mut self, k: &str, v: impl Into<Value>) -> &mut Self {
        self.params.push((k.to_string(), v.into()));
        self
    }

    pub fn row(&mut self, cells: Vec<Value>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    pub fn summary(&mut self, k: &str, v: impl Into<Value>) -> &mut Self {
        self.summary.push((k.to_string(), v.into()));
        self
    }

    pub fn to_json(&self) -> Value {
        let obj = |kv: &[(String, Value)]| Value::Object(kv.iter().cloned().collect::<Map<_, _>>());
        let mut v = json!({
            "schema": SCHEMA,
            "command": self.command,
            "params": obj(&self.params),
            "columns": self.columns,
            "rows": self.rows,
            "summary": obj(&self.summary),
        });
        if let Some(p) = self.passed {
            v["result"] = json!(if p { "pass" } else { "fail" });
        }
        v
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        for (k, v) in &self.params {
            out += &format!("{k}: {}\n", cell(v));
        }
        out.push('\n');
        let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(cell).collect()).collect();
        let widths: Vec<usize> = (0..self.columns.len())
            .map(|c| {
                cells
                    .iter()
                    .map(|r| r[c].chars().count())
                    .chain(std::iter::once(self.columns[c].chars().count()))
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |r: &[String]| {
            let parts: Vec<String> = r
                .iter()
                .zip(&widths)
                .map(|(s, w)| format!("{s:>w$}", w = *w))
                .collect();
            parts.join("  ").trim_end().to_string() + "\n"
        };
        out += &line(&self.columns);
        for r in &cells {
            out += &line(r);
        }
        out.push('\n');
        for (k, v) in &self.summary {
            out += &format!("{k}: {}\n", cell(v));
        }
        if let Some(p) = self.passed {
            out += &format!("result: {}\n", if p { "pass" } else { "fail" });
        }
        out
    }
}

/// Text form of a cell; tables never contain whitespace inside a cell.
pub fn cell(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.replace(' ', "_"),
        Value::Bool(b) => b.to_string(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_and_json_carry_the_same_cells() {
        let mut r = Report::new("demo", &["n", "dim", "status"]);
        r.param("algebra", "trunc:2,2");
        r.row(vec![json!(-1), json!(1), json!("stabilized")]);
        r.row(vec![json!(0), Value::Null, json!("not stabilized")]);
        let t = r.to_text();
        assert!(t.contains(" n  dim          status\n"));
        assert!(t.contains(" 0    -  not_stabilized\n"));
        assert_eq!(r.to_json()["schema"], 1);
        assert!(r.to_json().get("result").is_none());
    }
}
