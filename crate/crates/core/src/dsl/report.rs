use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StatementResult {
    pub line: usize,
    pub kind: &'static str,
    pub status: Status,
    pub detail: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub total: f64,
    /// One entry per result, same order.
    pub statements: Vec<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub version: String,
    pub scenario: String,
    pub field: Option<String>,
    pub overall: Status,
    pub results: Vec<StatementResult>,
    pub timing_ms: Timing,
}

impl Report {
    pub fn new(scenario: &str, field: Option<String>, results: Vec<StatementResult>, timing_ms: Timing) -> Report {
        let overall = if results.iter().all(|r| r.status == Status::Pass) {
            Status::Pass
        } else {
            Status::Fail
        };
        Report {
            version: env!("CARGO_PKG_VERSION").to_string(),
            scenario: scenario.to_string(),
            field,
            overall,
            results,
            timing_ms,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// JSON with the timing block zeroed, for comparing runs.
    pub fn to_json_untimed(&self) -> String {
        let mut r = self.clone();
        r.timing_ms.total = 0.0;
        r.timing_ms.statements.iter_mut().for_each(|t| *t = 0.0);
        r.to_json()
    }

    pub fn to_text(&self) -> String {
        let rows: Vec<[String; 5]> = self
            .results
            .iter()
            .zip(&self.timing_ms.statements)
            .map(|(r, t)| {
                [
                    r.line.to_string(),
                    r.kind.to_string(),
                    r.status.as_str().to_string(),
                    format!("{t:.1}"),
                    summarize(&r.detail),
                ]
            })
            .collect();
        let head = ["line", "kind", "status", "ms", "detail"];
        let mut w = [0usize; 4];
        for (k, h) in head.iter().take(4).enumerate() {
            w[k] = rows.iter().map(|r| r[k].len()).chain([h.len()]).max().unwrap();
        }
        let mut out = String::new();
        let _ = writeln!(out, "scenario {}", self.scenario);
        if let Some(f) = &self.field {
            let _ = writeln!(out, "field    {f}");
        }
        let line = |out: &mut String, r: [&str; 5]| {
            let _ = writeln!(
                out,
                "{:>w0$}  {:<w1$}  {:<w2$}  {:>w3$}  {}",
                r[0],
                r[1],
                r[2],
                r[3],
                r[4],
                w0 = w[0],
                w1 = w[1],
                w2 = w[2],
                w3 = w[3]
            );
        };
        line(&mut out, head);
        for r in &rows {
            line(&mut out, [&r[0], &r[1], &r[2], &r[3], &r[4]]);
        }
        let passed = self.results.iter().filter(|r| r.status == Status::Pass).count();
        let _ = writeln!(
            out,
            "{}: {passed}/{} passed in {:.1} ms",
            self.overall.as_str(),
            self.results.len(),
            self.timing_ms.total
        );
        out
    }

    pub fn exit_code(&self) -> i32 {
        match self.overall {
            Status::Pass => 0,
            _ => 1,
        }
    }
}

fn summarize(v: &Value) -> String {
    let s = match v {
        Value::Object(m) => match m.get("message").or_else(|| m.get("summary")) {
            Some(Value::String(s)) => s.clone(),
            _ => v.to_string(),
        },
        Value::String(s) => s.clone(),
        _ => v.to_string(),
    };
    let s = s.replace('\n', " ");
    if s.chars().count() > 100 {
        format!("{}...", s.chars().take(97).collect::<String>())
    } else {
        s
    }
}
