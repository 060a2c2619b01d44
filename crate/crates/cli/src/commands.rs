use std::path::Path;

use eqpl::arithmetic::BuiltinOracle;
use eqpl::calculus::{check_lines, parse_script};
use eqpl::modelfinder::{find_model, quantum_dnf, FindResult, FinderConfig, SearchReport};
use eqpl::semantics::{satisfies, Evaluator};
use eqpl::structures::{validate_structure, Tolerances};
use eqpl::syntax::{
    expand, parse_with, qubit_from_name, render_with, split_preamble, Aliases, Ast, Category, Quantum, QubitSet,
};

use crate::external::{Chained, ExternalOracle};
use crate::model_file::{Model, ModelFile};
use crate::report::Report;
use crate::CliError;

/// Settings shared by every command.
pub struct Globals {
    pub seed: u64,
    pub tol: Option<f64>,
    pub oracle_cmd: Option<String>,
}

impl Globals {
    fn tolerances(&self) -> Tolerances {
        let mut t = Tolerances::default();
        if let Some(x) = self.tol {
            t.cmp = x;
        }
        t
    }
}

/// Formula text from an argument that is either a file (with an optional
/// alias preamble) or the formula itself.
pub fn formula_text(arg: &str, aliases: &mut Aliases) -> Result<String, CliError> {
    let path = Path::new(arg);
    if !path.is_file() {
        return Ok(arg.to_string());
    }
    let text = std::fs::read_to_string(path)?;
    let (extra, body, _) = split_preamble(&text).map_err(|e| CliError::Input(format!("{arg}: {e}")))?;
    for (name, q) in extra.iter() {
        aliases.insert(name, q);
    }
    Ok(body)
}

fn parse_quantum_arg(arg: &str, aliases: &mut Aliases) -> Result<Quantum, CliError> {
    let text = formula_text(arg, aliases)?;
    match parse_with(&text, Category::Quantum, aliases) {
        Ok(Ast::Quantum(g)) => Ok(g),
        Ok(_) => unreachable!("parser returns the requested category"),
        Err(e) => Err(CliError::Input(e.to_string())),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn load_model(path: &Path) -> Result<Model, CliError> {
    let text = read(path)?;
    let file: ModelFile =
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    file.load()
}

fn valid_model(path: &Path) -> Result<Model, CliError> {
    let m = load_model(path)?;
    let diags = validate_structure(&m.structure, &Tolerances::default());
    if !diags.is_empty() {
        let list: Vec<String> = diags.iter().map(|d| d.to_string()).collect();
        return Err(CliError::Input(format!("invalid model: {}", list.join("; "))));
    }
    Ok(m)
}

pub fn parse(g: &Globals, formula: &str, category: Category) -> Result<Report, CliError> {
    let mut aliases = Aliases::new();
    let text = formula_text(formula, &mut aliases)?;
    let report = Report::new("parse", g.seed);
    Ok(match parse_with(&text, category, &aliases) {
        Ok(ast) => {
            let mut r = report.verdict("parsed", true);
            r.output.push(render_with(&ast, &aliases));
            r
        }
        Err(e) => {
            let mut r = report.verdict("rejected", false);
            r.diagnostics.push(e.to_string());
            r
        }
    })
}

pub fn expand_cmd(g: &Globals, formula: &str, category: Category) -> Result<Report, CliError> {
    let mut aliases = Aliases::new();
    let text = formula_text(formula, &mut aliases)?;
    let ast = parse_with(&text, category, &aliases).map_err(|e| CliError::Input(e.to_string()))?;
    let core = expand(&ast).map_err(|e| CliError::Input(e.to_string()))?;
    let mut r = Report::new("expand", g.seed).verdict("expanded", true);
    r.output.push(render_with(&core, &aliases));
    Ok(r)
}

pub fn check(g: &Globals, model: &Path, formula: &str) -> Result<Report, CliError> {
    let mut m = valid_model(model)?;
    let phi = parse_quantum_arg(formula, &mut m.aliases)?;
    let holds =
        satisfies(&m.structure, &m.assignment, &phi, &g.tolerances()).map_err(|e| CliError::Input(e.to_string()))?;
    let mut r = Report::new("check", g.seed);
    r = if holds { r.verdict("satisfied", true) } else { r.verdict("not satisfied", false) };
    r.output.push(render_with(&Ast::Quantum(phi), &m.aliases));
    Ok(r)
}

pub fn eval(g: &Globals, model: &Path, term: &str) -> Result<Report, CliError> {
    let mut m = valid_model(model)?;
    let text = formula_text(term, &mut m.aliases)?;
    let ev = Evaluator::new(&m.structure, &m.assignment, g.tolerances());
    let value = match parse_with(&text, Category::Real, &m.aliases) {
        Ok(Ast::Real(t)) => ev.real(&t).map(|x| format!("{x}")),
        _ => {
            let ast = parse_with(&text, Category::Complex, &m.aliases).map_err(|e| CliError::Input(e.to_string()))?;
            let Ast::Complex(u) = ast else { unreachable!("parser returns the requested category") };
            ev.complex(&u).map(|z| format!("{} + i {}", z.re, z.im))
        }
    }
    .map_err(|e| CliError::Input(e.to_string()))?;
    let mut r = Report::new("eval", g.seed).verdict("evaluated", true);
    r.output.push(value);
    Ok(r)
}

pub fn prove(g: &Globals, script: &Path) -> Result<Report, CliError> {
    let text = read(script)?;
    let (d, _) = parse_script(&text).map_err(|e| CliError::Input(e.to_string()))?;
    let oracle = Chained {
        builtin: BuiltinOracle::default(),
        external: g.oracle_cmd.clone().map(|command| ExternalOracle { command }),
    };
    let mut first_failure = None;
    let mut r = Report::new("prove", g.seed);
    for (index, verdict) in check_lines(&d, &oracle) {
        match verdict {
            Ok(()) => r.output.push(format!("{index}. ok")),
            Err(e) => {
                first_failure.get_or_insert(index);
                r.output.push(format!("{index}. rejected"));
                r.diagnostics.push(format!("line {index}: {e}"));
            }
        }
    }
    Ok(match first_failure {
        None => r.verdict("ok", true),
        Some(k) => r.verdict(&format!("rejected at line {k}"), false),
    })
}

pub fn dnf(g: &Globals, formula: &str, max_atoms: usize) -> Result<Report, CliError> {
    let mut aliases = Aliases::new();
    let phi = parse_quantum_arg(formula, &mut aliases)?;
    let rows = quantum_dnf(&phi, max_atoms).map_err(|e| CliError::Input(e.to_string()))?;
    let mut r = Report::new("dnf", g.seed).verdict(&format!("{} disjuncts", rows.len()), true);
    for m in rows {
        r.output.push(render_with(&Ast::Quantum(m.to_formula()), &aliases));
    }
    Ok(r)
}

fn search_lines(s: &SearchReport) -> Vec<String> {
    let mut out = vec![
        format!("systems: {}", s.systems),
        format!("refuted: {}", s.refuted),
        format!("rejected: {}", s.rejected),
        format!("truncated: {}", s.truncated),
    ];
    if let Some(b) = s.best_residual {
        out.push(format!("best residual: {b:e}"));
    }
    out
}

pub fn solve(g: &Globals, formula: &str, bound: &[String], out: Option<&Path>) -> Result<Report, CliError> {
    let mut aliases = Aliases::new();
    let phi = parse_quantum_arg(formula, &mut aliases)?;
    let bound: QubitSet = bound
        .iter()
        .map(|n| qubit_from_name(n, &aliases).ok_or_else(|| CliError::Input(format!("unknown qubit `{n}`"))))
        .collect::<Result<_, _>>()?;
    let mut cfg = FinderConfig::default();
    cfg.solver.seed = g.seed;
    cfg.tol = g.tolerances();
    let result = find_model(&phi, &bound, &cfg).map_err(|e| CliError::Input(e.to_string()))?;
    let r = Report::new("solve", g.seed);
    Ok(match result {
        FindResult::Model(w, rho) => {
            let file = ModelFile::save(&w, &rho, &aliases);
            if let Some(path) = out {
                std::fs::write(path, serde_json::to_string_pretty(&file)? + "\n")?;
            }
            let mut r = r.verdict("model found", true);
            r.model = Some(file);
            r
        }
        FindResult::NoModelFound(s) => {
            let mut r = r.verdict("no model found", false);
            r.output = search_lines(&s);
            r
        }
        FindResult::Inconsistent(s) => {
            let mut r = r.verdict("inconsistent", false);
            r.output = search_lines(&s);
            r
        }
    })
}

pub fn validate_model(g: &Globals, model: &Path) -> Result<Report, CliError> {
    let m = load_model(model)?;
    let diags = validate_structure(&m.structure, &g.tolerances());
    let mut r = Report::new("validate-model", g.seed);
    r = if diags.is_empty() { r.verdict("valid", true) } else { r.verdict("invalid", false) };
    r.diagnostics = diags.iter().map(|d| d.to_string()).collect();
    Ok(r)
}
