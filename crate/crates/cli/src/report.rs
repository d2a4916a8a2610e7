use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Fail,
    /// Informational: neither a pass nor a failure.
    Info,
}

#[derive(Debug, Serialize)]
pub struct ResultEntry {
    pub id: String,
    pub anchor: String,
    pub status: Outcome,
    #[serde(flatten)]
    pub detail: serde_json::Map<String, Value>,
}

impl ResultEntry {
    pub fn new(id: impl Into<String>, anchor: impl Into<String>, status: Outcome) -> ResultEntry {
        ResultEntry {
            id: id.into(),
            anchor: anchor.into(),
            status,
            detail: serde_json::Map::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl Serialize) -> ResultEntry {
        let v = serde_json::to_value(value).expect("plain data serializes");
        self.detail.insert(key.to_string(), v);
        self
    }
}

#[derive(Debug, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub wall_ms: u128,
}

/// The structured report every subcommand emits under `--json`.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub config: Value,
    pub results: Vec<ResultEntry>,
    pub summary: Summary,
}

impl Report {
    pub fn new(command: &'static str, config: Value, results: Vec<ResultEntry>, wall_ms: u128) -> Report {
        let count = |o| results.iter().filter(|r| r.status == o).count();
        let summary = Summary {
            pass: count(Outcome::Pass),
            fail: count(Outcome::Fail),
            wall_ms,
        };
        Report {
            command,
            config,
            results,
            summary,
        }
    }

    pub fn failed(&self) -> bool {
        self.summary.fail > 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
