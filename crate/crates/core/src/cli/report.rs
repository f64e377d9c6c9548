use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

/// Counts of passed, failed and skipped checks.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub passed: u64,
    pub failed: u64,
    /// Checks that could not be decided within the configured ceilings.
    pub skipped: u64,
}

impl Summary {
    pub fn record(&mut self, ok: bool) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
    }
}

/// The machine-readable result of one subcommand. Everything in it is a
/// function of `command`, `config` and `seed`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportDocument {
    pub command: String,
    pub config: BTreeMap<String, Value>,
    pub seed: u64,
    pub rows: Vec<Value>,
    pub summary: Summary,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub details: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip)]
    pub exit_code: i32,
}

impl ReportDocument {
    pub fn new(command: &str, seed: u64) -> Self {
        Self {
            command: command.to_string(),
            config: BTreeMap::new(),
            seed,
            rows: Vec::new(),
            summary: Summary::default(),
            details: Value::Null,
            error: None,
            exit_code: 0,
        }
    }

    pub fn with_config(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.config.insert(key.to_string(), value.into());
        self
    }

    /// Sets the exit code from the summary unless an error already set one.
    pub fn finish(mut self) -> Self {
        if self.error.is_none() {
            self.exit_code = i32::from(self.summary.failed > 0);
        }
        self
    }

    pub fn fail_with(mut self, code: i32, error: impl ToString) -> Self {
        self.error = Some(error.to_string());
        self.exit_code = code;
        self
    }

    pub fn passed(&self) -> bool {
        self.exit_code == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
