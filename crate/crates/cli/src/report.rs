//! Report envelope and its json/md/csv renderings.

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{Map, Value};

use qdilog::qtorus::Verdict;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Md,
    Csv,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Table { headers: headers.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    pub params: Map<String, Value>,
    pub result: Value,
    #[serde(skip)]
    pub table: Table,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.into(),
            seed: None,
            verdict: None,
            params: Map::new(),
            result: Value::Null,
            table: Table::default(),
        }
    }

    pub fn param(&mut self, key: &str, v: impl Serialize) {
        self.params.insert(key.into(), serde_json::to_value(v).expect("serializable"));
    }

    pub fn passed(&self) -> bool {
        self.verdict != Some(Verdict::Fail)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("serializable") + "\n",
            Format::Md => self.markdown(),
            Format::Csv => csv_table(&self.table),
        }
    }

    fn markdown(&self) -> String {
        let mut out = format!("# {}\n\n", self.command);
        if let Some(seed) = &self.seed {
            out += &format!("- seed: `{}`\n", seed);
        }
        if let Some(v) = self.verdict {
            let tag = if v == Verdict::Pass { "PASS" } else { "FAIL" };
            out += &format!("- verdict: **{tag}**\n");
        }
        for (k, v) in &self.params {
            out += &format!("- {k}: `{v}`\n");
        }
        if !self.table.headers.is_empty() {
            out += "\n| ";
            out += &self.table.headers.join(" | ");
            out += " |\n|";
            out += &"---|".repeat(self.table.headers.len());
            out += "\n";
            for row in &self.table.rows {
                out += "| ";
                out += &row.join(" | ");
                out += " |\n";
            }
        }
        out
    }
}

fn csv_table(t: &Table) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&t.headers).expect("in-memory write");
    for row in &t.rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

pub fn sci(x: f64) -> String {
    format!("{x:.3e}")
}

pub fn joined<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("verify classical");
        r.verdict = Some(Verdict::Pass);
        r.param("trials", 2);
        r.table = Table::new(&["trial", "value"]);
        r.table.push(vec!["1".into(), "a,b".into()]);
        r
    }

    #[test]
    fn json_skips_table() {
        let v: Value = serde_json::from_str(&sample().render(Format::Json)).unwrap();
        assert_eq!(v["verdict"], "PASS");
        assert_eq!(v["params"]["trials"], 2);
        assert!(v.get("table").is_none());
    }

    #[test]
    fn csv_quotes_fields() {
        assert_eq!(sample().render(Format::Csv), "trial,value\n1,\"a,b\"\n");
    }

    #[test]
    fn markdown_has_table() {
        let md = sample().render(Format::Md);
        assert!(md.contains("**PASS**"));
        assert!(md.contains("| trial | value |\n|---|---|\n| 1 | a,b |"));
    }
}
