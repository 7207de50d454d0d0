use std::collections::BTreeMap;
use std::fmt::Write as _;

use coinv_core::comod::Status;
use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct Params {
    pub m: usize,
    pub n: usize,
    pub t: usize,
    #[serde(rename = "F")]
    pub f: Vec<Vec<String>>,
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
    /// Either a number or `"auto"`.
    pub d: Value,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Case {
    pub bidegree: Option<[usize; 2]>,
    pub dim_coinv: Option<usize>,
    pub dim_theta: Option<usize>,
    pub certified: bool,
    pub witness_degree: Option<usize>,
    pub millis: u64,
    pub status: Status,
    #[serde(flatten)]
    pub extra: BTreeMap<String, Value>,
}

impl Case {
    pub fn new(bidegree: Option<[usize; 2]>, status: Status) -> Self {
        Case {
            bidegree,
            dim_coinv: None,
            dim_theta: None,
            certified: status == Status::Certified,
            witness_degree: None,
            millis: 0,
            status,
            extra: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.extra.insert(key.to_string(), value.into());
        self
    }

    fn sort_key(&self) -> (Option<[usize; 2]>, String) {
        let label = self.extra.get("relation").map(|v| v.to_string()).unwrap_or_default();
        (self.bidegree, label)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub version: String,
    pub params: Params,
    pub cases: Vec<Case>,
    pub status: Status,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub summary: BTreeMap<String, Value>,
}

impl Report {
    pub fn new(command: &str, params: Params, mut cases: Vec<Case>, summary: BTreeMap<String, Value>) -> Self {
        cases.sort_by_key(Case::sort_key);
        let status = cases.iter().fold(Status::Certified, |s, c| s.combine(c.status));
        Report { schema: SCHEMA_VERSION, command: command.to_string(), version: env!("CARGO_PKG_VERSION").to_string(), params, cases, status, summary }
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Certified => 0,
            Status::Mismatch => 1,
            Status::Inconclusive => 2,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    fn columns(&self, timings: bool) -> Vec<String> {
        let mut cols: Vec<String> = ["bidegree", "dim_coinv", "dim_theta", "certified", "witness_degree"].map(String::from).to_vec();
        let mut extra: Vec<String> = Vec::new();
        for c in &self.cases {
            for k in c.extra.keys() {
                if !extra.contains(k) {
                    extra.push(k.clone());
                }
            }
        }
        extra.sort();
        cols.extend(extra);
        cols.push("status".into());
        if timings {
            cols.push("millis".into());
        }
        // Drop columns that are empty in every row.
        cols.into_iter().filter(|c| self.cases.iter().any(|case| !cell(case, c).is_empty())).collect()
    }

    fn table(&self, timings: bool) -> (Vec<String>, Vec<Vec<String>>) {
        let cols = self.columns(timings);
        let rows = self.cases.iter().map(|c| cols.iter().map(|k| cell(c, k)).collect()).collect();
        (cols, rows)
    }

    pub fn to_csv(&self, timings: bool) -> String {
        let (cols, rows) = self.table(timings);
        let mut out = cols.join(",");
        out.push('\n');
        for r in rows {
            let escaped: Vec<String> = r
                .into_iter()
                .map(|v| if v.contains([',', '"']) { format!("\"{}\"", v.replace('"', "\"\"")) } else { v })
                .collect();
            out.push_str(&escaped.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_text(&self, timings: bool) -> String {
        let p = &self.params;
        let mut out = format!("coinv {} {}  m={} n={} t={} F={}", self.version, self.command, p.m, p.n, p.t, format_f(&p.f));
        if let Some(i) = p.i {
            let _ = write!(out, " i={i}");
        }
        if let Some(j) = p.j {
            let _ = write!(out, " j={j}");
        }
        if let Some(k) = p.k {
            let _ = write!(out, " k={k}");
        }
        let _ = writeln!(out, " d={}", plain(&p.d));
        let (cols, rows) = self.table(timings);
        let widths: Vec<usize> =
            cols.iter().enumerate().map(|(i, c)| rows.iter().map(|r| r[i].chars().count()).max().unwrap_or(0).max(c.len())).collect();
        let line = |cells: &[String]| -> String {
            let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
            padded.join("  ").trim_end().to_string()
        };
        out.push_str(&line(&cols));
        out.push('\n');
        for r in &rows {
            out.push_str(&line(r));
            out.push('\n');
        }
        for (k, v) in &self.summary {
            let _ = writeln!(out, "{k}: {}", plain(v));
        }
        let _ = writeln!(out, "status: {}", self.status.as_str());
        out
    }
}

fn format_f(f: &[Vec<String>]) -> String {
    let rows: Vec<String> = f.iter().map(|r| format!("[{}]", r.join(","))).collect();
    format!("[{}]", rows.join(","))
}

fn plain(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn cell(c: &Case, key: &str) -> String {
    let opt = |x: Option<usize>| x.map(|v| v.to_string()).unwrap_or_default();
    match key {
        "bidegree" => c.bidegree.map(|[i, j]| format!("({i},{j})")).unwrap_or_default(),
        "dim_coinv" => opt(c.dim_coinv),
        "dim_theta" => opt(c.dim_theta),
        "certified" => c.certified.to_string(),
        "witness_degree" => opt(c.witness_degree),
        "status" => c.status.as_str().to_string(),
        "millis" => c.millis.to_string(),
        other => c.extra.get(other).map(plain).unwrap_or_default(),
    }
}
