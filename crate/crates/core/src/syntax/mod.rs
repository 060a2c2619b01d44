//! Syntax: AST types, the ASCII surface grammar, rendering, abbreviation
//! expansion and symbol extraction.

mod ast;
mod expand;
mod lexer;
mod parser;
mod render;
mod symbols;

use std::collections::BTreeMap;

use thiserror::Error;

pub use ast::*;
pub use expand::{
    cond_equations, expand, expand_classical, expand_complex, expand_quantum, expand_real, molecular_classical,
    ExpandError,
};
pub use parser::{parse, parse_classical, parse_complex, parse_quantum, parse_real, parse_with};
pub use render::{render, render_with};
pub(crate) use symbols::classical_qubits;
pub use symbols::{free_symbols, Symbols};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {line}:{col}: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("expected a {expected} expression, but the text is a {found} expression")]
    Category { expected: Category, found: Category },
}

/// Named aliases for qubit symbols, declared in a preamble with lines of the
/// form `alias cati = qb0`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Aliases {
    names: BTreeMap<String, Qubit>,
}

impl Aliases {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, name: impl Into<String>, q: Qubit) {
        self.names.insert(name.into(), q);
    }

    pub fn get(&self, name: &str) -> Option<Qubit> {
        self.names.get(name).copied()
    }

    pub fn name_of(&self, q: Qubit) -> Option<&str> {
        self.names.iter().find(|(_, v)| **v == q).map(|(k, _)| k.as_str())
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, Qubit)> {
        self.names.iter().map(|(k, v)| (k.as_str(), *v))
    }

    /// The alias table for the three cat qubits used throughout the examples.
    pub fn cat() -> Self {
        let mut a = Self::new();
        a.insert("cati", Qubit(0));
        a.insert("cata", Qubit(1));
        a.insert("catm", Qubit(2));
        a
    }
}

/// Resolves a qubit name: `qbN` or a declared alias.
pub fn qubit_from_name(name: &str, aliases: &Aliases) -> Option<Qubit> {
    if let Some(q) = aliases.get(name) {
        return Some(q);
    }
    let digits = name.strip_prefix("qb")?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok().map(Qubit)
}

/// Splits leading `alias NAME = qbN` lines (and blank or `#` comment lines)
/// off a document. Returns the alias table, the remaining body and the line
/// number the body starts on.
pub fn split_preamble(text: &str) -> Result<(Aliases, String, usize), ParseError> {
    let mut aliases = Aliases::new();
    let mut lines = text.lines().enumerate().peekable();
    let mut first_body = 1;
    while let Some((n, line)) = lines.peek().copied() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            lines.next();
            first_body = n + 2;
            continue;
        }
        let Some(rest) = t.strip_prefix("alias ") else { break };
        let Some((name, target)) = rest.split_once('=') else {
            return Err(ParseError::Syntax {
                line: n + 1,
                col: 1,
                message: "alias declaration needs `alias NAME = qbN`".into(),
            });
        };
        let name = name.trim();
        let q = qubit_from_name(target.trim(), &Aliases::new()).ok_or_else(|| ParseError::Syntax {
            line: n + 1,
            col: 1,
            message: format!("alias target `{}` is not a qubit symbol", target.trim()),
        })?;
        if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(ParseError::Syntax { line: n + 1, col: 1, message: format!("invalid alias name `{name}`") });
        }
        aliases.insert(name, q);
        lines.next();
        first_body = n + 2;
    }
    let body: Vec<&str> = lines.map(|(_, l)| l).collect();
    Ok((aliases, body.join("\n"), first_body))
}
