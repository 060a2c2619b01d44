use std::time::{Duration, Instant};

use eqpl::modelfinder::{find_model, FindResult, FinderConfig};
use eqpl::semantics::satisfies;
use eqpl::syntax::{parse_quantum, qubits, split_preamble, Aliases};

const SATISFIABLE: &[&str] = &[
    "[qb0,qb1,qb2]",
    "(qb2 -> qb1)",
    "(dia(qb1) && dia(~qb1))",
    "(! [qb1] && (Pr(qb1) = 1/3))",
    "poss{qb1,qb2}((qb1 /\\ qb2) : 1/sqrt(6), (qb1 /\\ ~qb2) : 1/sqrt(6), (~qb1 /\\ ~qb2) : sqrt(2/3) e^{i pi/3})",
    "! [qb0]",
    "(! [qb0] && [qb2])",
    "([qb0,qb1] && ! [qb0])",
    "(Pr(qb0) = 1/2)",
    "((Pr(qb0) = 1/4) && (Pr(qb1) = 3/4))",
    "((Pr((qb0 /\\ qb1)) = 1/2) && ! [qb0])",
    "((x1 <= Pr(qb0)) && (1/2 < x1))",
    "box((qb0 \\/ qb1))",
    "dia((qb0 /\\ ~qb1))",
    "(qb0 /\\ ~qb1)",
    "(abs(amp{qb0}{qb0}) = 1/2)",
    "((z1 = amp{qb0}{}) && (re(z1) = 1/2))",
    "((Pr(qb0) <= 1/3) || (Pr(qb1) = 1))",
    "(ite(qb0; z1; z2) = z2)",
];

const UNSATISFIABLE: &[&str] = &[
    "(qb0 /\\ ~qb0)",
    "(qb0 && ~qb0)",
    "((Pr(qb0) = 1/3) && (Pr(qb0) = 1/2))",
    "(x1 < x1)",
    "(Pr(qb0) = 2)",
    "((x1 <= 0) && (1 <= x1))",
    "(box(qb0) && dia(~qb0))",
    "([qb0] && (abs(amp{qb0}{qb0}) = 2))",
    "((qb0 -> ~qb0) /\\ qb0)",
    "(! [qb0] && ([qb0,qb1] && [qb1]))",
];

fn verdict(text: &str, aliases: &Aliases) -> (bool, String) {
    let g = parse_quantum(text, aliases).unwrap_or_else(|e| panic!("{text}: {e}"));
    let bound = qubits(0..3);
    let cfg = FinderConfig::default();
    match find_model(&g, &bound, &cfg).unwrap_or_else(|e| panic!("{text}: {e}")) {
        FindResult::Model(w, rho) => {
            assert!(satisfies(&w, &rho, &g, &cfg.tol).unwrap(), "returned model fails {text}");
            (true, "model".into())
        }
        other => (false, format!("{other:?}")),
    }
}

#[test]
fn corpus_models_satisfy_and_controls_have_none() {
    let start = Instant::now();
    let (aliases, cat, _) = split_preamble(include_str!("../../../fixtures/cat_all.eqpl")).unwrap();
    let (found, why) = verdict(&cat, &aliases);
    assert!(found, "cat: {why}");
    let mut missed = Vec::new();
    for text in SATISFIABLE {
        let (found, why) = verdict(text, &Aliases::default());
        if !found {
            missed.push(format!("{text}: {why}"));
        }
    }
    for text in UNSATISFIABLE {
        let (found, _) = verdict(text, &Aliases::default());
        assert!(!found, "control {text} has a model");
    }
    assert!(missed.is_empty(), "no model for:\n{}", missed.join("\n"));
    assert!(start.elapsed() < Duration::from_secs(60));
}
