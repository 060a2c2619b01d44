//! Validity oracle backed by an external command.
//!
//! The command runs under `sh -c`, receives the formula on standard input
//! and answers with one line: `VALID`, `INVALID <assignment>` or `UNKNOWN`.
//! An assignment is a space-separated list of `x1=0.5` and `z1=1,-2` items.

use std::io::Write;
use std::process::{Command, Stdio};

use eqpl::arithmetic::{BuiltinOracle, Oracle, OracleVerdict, Tier};
use eqpl::semantics::Assignment;
use eqpl::structures::C64;
use eqpl::syntax::Quantum;

pub struct ExternalOracle {
    pub command: String,
}

fn number(s: &str) -> Option<f64> {
    s.trim().parse().ok()
}

pub fn parse_assignment(text: &str) -> Option<Assignment> {
    let mut rho = Assignment::new();
    for item in text.split_whitespace() {
        let (name, value) = item.split_once('=')?;
        if let Some(k) = name.strip_prefix('x') {
            rho = rho.with_real(k.parse().ok()?, number(value)?);
        } else {
            let k = name.strip_prefix('z')?;
            let z = match value.split_once(',') {
                Some((re, im)) => C64::new(number(re)?, number(im)?),
                None => C64::new(number(value)?, 0.0),
            };
            rho = rho.with_complex(k.parse().ok()?, z);
        }
    }
    Some(rho)
}

pub fn parse_verdict(line: &str) -> OracleVerdict {
    let line = line.trim();
    if line == "VALID" {
        return OracleVerdict::Valid(Tier::External);
    }
    if let Some(rest) = line.strip_prefix("INVALID") {
        return match parse_assignment(rest) {
            Some(rho) => OracleVerdict::Invalid(rho),
            None => OracleVerdict::Unknown(format!("unreadable assignment `{}`", rest.trim())),
        };
    }
    if line == "UNKNOWN" {
        return OracleVerdict::Unknown("external oracle gave no answer".into());
    }
    OracleVerdict::Unknown(format!("unexpected oracle reply `{line}`"))
}

impl Oracle for ExternalOracle {
    fn check(&self, phi: &Quantum) -> OracleVerdict {
        let child = Command::new("sh")
            .arg("-c")
            .arg(&self.command)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::null())
            .spawn();
        let mut child = match child {
            Ok(c) => c,
            Err(e) => return OracleVerdict::Unknown(format!("cannot start oracle: {e}")),
        };
        if let Some(mut stdin) = child.stdin.take() {
            let _ = writeln!(stdin, "{phi}");
        }
        match child.wait_with_output() {
            Ok(out) => parse_verdict(String::from_utf8_lossy(&out.stdout).lines().next().unwrap_or("")),
            Err(e) => OracleVerdict::Unknown(format!("oracle failed: {e}")),
        }
    }
}

/// The builtin oracle, falling back to an external one on `Unknown`.
pub struct Chained {
    pub builtin: BuiltinOracle,
    pub external: Option<ExternalOracle>,
}

impl Oracle for Chained {
    fn check(&self, phi: &Quantum) -> OracleVerdict {
        match (self.builtin.check(phi), &self.external) {
            (OracleVerdict::Unknown(_), Some(ext)) => ext.check(phi),
            (verdict, _) => verdict,
        }
    }
}
