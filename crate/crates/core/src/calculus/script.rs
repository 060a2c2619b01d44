//! Text format for derivation scripts.
//!
//! ```text
//! alias cati = qb0
//! bound F = qb0,qb1
//! 1. [qb0,qb1] ; NETG_F
//! 2. ([qb0,qb1] ==> (sumsq{qb0,qb1} = 1)) ; UNIT({qb0,qb1})
//! 3. (sumsq{qb0,qb1} = 1) ; QMP(1,2)
//! ```

use thiserror::Error;

use super::{Axiom, Derivation, DerivationLine, Justification};
use crate::syntax::{
    parse_classical, parse_quantum, qubit_from_name, render_with, split_preamble, Aliases, Ast, QubitSet,
};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("script line {line}: {message}")]
pub struct ScriptError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ScriptError> {
    Err(ScriptError { line, message: message.into() })
}

fn qubit_set(text: &str, aliases: &Aliases, line: usize) -> Result<QubitSet, ScriptError> {
    let t = text.trim();
    let t = t.strip_prefix('{').and_then(|s| s.strip_suffix('}')).unwrap_or(t);
    let mut out = QubitSet::new();
    for name in t.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match qubit_from_name(name, aliases) {
            Some(q) => {
                out.insert(q);
            }
            None => return err(line, format!("`{name}` is not a qubit symbol")),
        }
    }
    Ok(out)
}

/// Position of the last `;` outside any bracket.
fn split_point(text: &str) -> Option<usize> {
    let mut depth = 0i32;
    let mut found = None;
    for (i, c) in text.char_indices() {
        match c {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            ';' if depth == 0 => found = Some(i),
            _ => {}
        }
    }
    found
}

fn justification(text: &str, aliases: &Aliases, line: usize) -> Result<Justification, ScriptError> {
    let t = text.trim();
    let (name, args) = match t.find('(') {
        Some(i) if t.ends_with(')') => (t[..i].trim(), Some(&t[i + 1..t.len() - 1])),
        Some(_) => return err(line, format!("malformed justification `{t}`")),
        None => (t, None),
    };
    let pair = |args: Option<&str>| -> Result<(QubitSet, QubitSet), ScriptError> {
        let Some((a, b)) = args.and_then(|a| a.split_once(';')) else {
            return err(line, format!("{name} takes two qubit sets separated by `;`"));
        };
        Ok((qubit_set(a, aliases, line)?, qubit_set(b, aliases, line)?))
    };
    let indices = |args: Option<&str>| -> Result<(usize, usize), ScriptError> {
        let parsed = args
            .and_then(|a| a.split_once(','))
            .and_then(|(i, j)| Some((i.trim().parse().ok()?, j.trim().parse().ok()?)));
        match parsed {
            Some(p) => Ok(p),
            None => err(line, format!("{name} takes two line numbers")),
        }
    };
    let one_set = |args: Option<&str>| match args {
        Some(a) => qubit_set(a, aliases, line),
        None => err(line, format!("{name} takes a qubit set")),
    };
    let no_args = |j: Justification| match args {
        None => Ok(j),
        Some(_) => err(line, format!("{name} takes no arguments")),
    };
    match name {
        "CTaut" | "CTAUT" => no_args(Justification::Axiom(Axiom::CTaut)),
        "QTaut" | "QTAUT" => no_args(Justification::Axiom(Axiom::QTaut)),
        "ORACLE" | "Oracle" => no_args(Justification::Axiom(Axiom::Oracle)),
        "LIFT" => no_args(Justification::Axiom(Axiom::Lift)),
        "REFCONJ" => no_args(Justification::Axiom(Axiom::RefConj)),
        "IFTOP" => no_args(Justification::Axiom(Axiom::IfTop)),
        "IFBOT" => no_args(Justification::Axiom(Axiom::IfBot)),
        "NETG_F" => no_args(Justification::Axiom(Axiom::NetgF)),
        "EMPTY" => no_args(Justification::Axiom(Axiom::Empty)),
        "PREMISE" => no_args(Justification::Premise),
        "NETG_BAR" => pair(args).map(|(a, b)| Justification::Axiom(Axiom::NetgBar(a, b))),
        "NETG_UNION" => pair(args).map(|(a, b)| Justification::Axiom(Axiom::NetgUnion(a, b))),
        "NETG_DIFF" => pair(args).map(|(a, b)| Justification::Axiom(Axiom::NetgDiff(a, b))),
        "NADM" => one_set(args).map(|a| Justification::Axiom(Axiom::NAdm(a))),
        "UNIT" => one_set(args).map(|g| Justification::Axiom(Axiom::Unit(g))),
        "PROB" => match args {
            Some(a) => parse_classical(a, aliases)
                .map(|alpha| Justification::Axiom(Axiom::Prob(alpha)))
                .or_else(|e| err(line, format!("PROB argument: {e}"))),
            None => err(line, "PROB takes a classical formula"),
        },
        "CMP" => indices(args).map(|(i, j)| Justification::Cmp(i, j)),
        "QMP" => indices(args).map(|(i, j)| Justification::Qmp(i, j)),
        _ => err(line, format!("unknown justification `{name}`")),
    }
}

/// Parses a derivation script. Returns the derivation and the alias table of
/// its preamble.
pub fn parse_script(text: &str) -> Result<(Derivation, Aliases), ScriptError> {
    let (aliases, body, first) = split_preamble(text).map_err(|e| ScriptError { line: 0, message: e.to_string() })?;
    let mut bound = None;
    let mut lines = Vec::new();
    for (k, raw) in body.lines().enumerate() {
        let n = first + k;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        if let Some(rest) = t.strip_prefix("bound") {
            let Some((name, set)) = rest.split_once('=') else {
                return err(n, "bound declaration needs `bound F = qb0,...`");
            };
            if name.trim().is_empty() || bound.is_some() || !lines.is_empty() {
                return err(n, "a single named bound must precede the lines");
            }
            bound = Some(qubit_set(set, &aliases, n)?);
            continue;
        }
        let Some((num, rest)) = t.split_once('.') else {
            return err(n, "expected `N. formula ; JUSTIFICATION`");
        };
        let Ok(index) = num.trim().parse::<usize>() else {
            return err(n, format!("`{}` is not a line number", num.trim()));
        };
        let Some(cut) = split_point(rest) else {
            return err(n, "missing `; JUSTIFICATION`");
        };
        let formula = parse_quantum(rest[..cut].trim(), &aliases).or_else(|e| err(n, e.to_string()))?;
        let justification = justification(&rest[cut + 1..], &aliases, n)?;
        lines.push(DerivationLine { index, formula, justification });
    }
    let Some(bound) = bound else {
        return err(first, "missing `bound F = ...` header");
    };
    Ok((Derivation { bound, lines }, aliases))
}

fn set_text(s: &QubitSet, aliases: &Aliases) -> String {
    let names: Vec<String> =
        s.iter().map(|q| aliases.name_of(*q).map(str::to_string).unwrap_or_else(|| q.to_string())).collect();
    format!("{{{}}}", names.join(","))
}

/// Renders a derivation in the script format.
pub fn render_script(d: &Derivation, aliases: &Aliases) -> String {
    let mut out = String::new();
    for (name, q) in aliases.iter() {
        out.push_str(&format!("alias {name} = {q}\n"));
    }
    let bound = set_text(&d.bound, aliases);
    out.push_str(&format!("bound F = {}\n", &bound[1..bound.len() - 1]));
    for l in &d.lines {
        let j = match &l.justification {
            Justification::Premise => "PREMISE".to_string(),
            Justification::Cmp(i, j) => format!("CMP({i},{j})"),
            Justification::Qmp(i, j) => format!("QMP({i},{j})"),
            Justification::Axiom(a) => match a {
                Axiom::CTaut => "CTaut".into(),
                Axiom::QTaut => "QTaut".into(),
                Axiom::Oracle => "ORACLE".into(),
                Axiom::Lift => "LIFT".into(),
                Axiom::RefConj => "REFCONJ".into(),
                Axiom::IfTop => "IFTOP".into(),
                Axiom::IfBot => "IFBOT".into(),
                Axiom::NetgF => "NETG_F".into(),
                Axiom::Empty => "EMPTY".into(),
                Axiom::NetgBar(a, b) => format!("NETG_BAR({};{})", set_text(a, aliases), set_text(b, aliases)),
                Axiom::NetgUnion(a, b) => format!("NETG_UNION({};{})", set_text(a, aliases), set_text(b, aliases)),
                Axiom::NetgDiff(a, b) => format!("NETG_DIFF({};{})", set_text(a, aliases), set_text(b, aliases)),
                Axiom::NAdm(a) => format!("NADM({})", set_text(a, aliases)),
                Axiom::Unit(g) => format!("UNIT({})", set_text(g, aliases)),
                Axiom::Prob(alpha) => format!("PROB({})", render_with(&Ast::Classical(alpha.clone()), aliases)),
            },
        };
        let f = render_with(&Ast::Quantum(l.formula.clone()), aliases);
        out.push_str(&format!("{}. {} ; {}\n", l.index, f, j));
    }
    out
}
