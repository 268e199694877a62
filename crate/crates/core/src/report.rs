//! The JSON document every `sdf` command prints.

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const REPORT_SCHEMA: &str = "sdf.report/1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub command: String,
    pub inputs: Value,
    pub results: Vec<Value>,
    pub anomalies: Vec<String>,
    /// Wall-clock time, only when asked for, so that reports stay
    /// byte-identical across runs and worker counts.
    pub timing: Option<Timing>,
}

impl Report {
    pub fn new(command: &str, inputs: Value) -> Report {
        Report {
            schema: REPORT_SCHEMA.into(),
            command: command.into(),
            inputs,
            results: Vec::new(),
            anomalies: Vec::new(),
            timing: None,
        }
    }

    pub fn push(&mut self, result: &impl Serialize) -> crate::Result<()> {
        self.results.push(serde_json::to_value(result)?);
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let mut r = Report::new("analyze", serde_json::json!({"code": "J1"}));
        r.push(&serde_json::json!({"d": 12})).unwrap();
        let text = r.to_json();
        assert!(text.contains("\"timing\": null"));
        let back: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.schema, REPORT_SCHEMA);
    }
}
