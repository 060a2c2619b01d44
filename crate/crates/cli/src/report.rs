use serde::Serialize;

use crate::model_file::ModelFile;

/// Outcome of one command. Field order is fixed; only `timing_ms` varies
/// between identical runs.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub verdict: String,
    pub affirmative: bool,
    pub output: Vec<String>,
    pub diagnostics: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<ModelFile>,
    pub seed: u64,
    pub timing_ms: f64,
}

impl Report {
    pub fn new(command: &str, seed: u64) -> Self {
        Report {
            command: command.to_string(),
            verdict: String::new(),
            affirmative: false,
            output: Vec::new(),
            diagnostics: Vec::new(),
            model: None,
            seed,
            timing_ms: 0.0,
        }
    }

    pub fn verdict(mut self, verdict: &str, affirmative: bool) -> Self {
        self.verdict = verdict.to_string();
        self.affirmative = affirmative;
        self
    }

    pub fn exit_code(&self) -> i32 {
        if self.affirmative {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Plain text form, without timing.
    pub fn to_text(&self) -> String {
        let mut s = format!("{}: {}\n", self.command, self.verdict);
        for line in &self.output {
            s.push_str(line);
            s.push('\n');
        }
        for d in &self.diagnostics {
            s.push_str("  - ");
            s.push_str(d);
            s.push('\n');
        }
        if let Some(m) = &self.model {
            s.push_str(&serde_json::to_string_pretty(m).expect("models serialize"));
            s.push('\n');
        }
        s
    }
}
