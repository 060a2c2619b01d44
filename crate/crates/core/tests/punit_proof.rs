use eqpl::arithmetic::BuiltinOracle;
use eqpl::calculus::corpus::punit;
use eqpl::calculus::{check_derivation, parse_script, render_script};
use eqpl::syntax::qubits;

const SCRIPT: &str = include_str!("../../../fixtures/punit.proof");

fn failing_line(text: &str) -> Option<usize> {
    let (d, _) = parse_script(text).expect("mutation still parses");
    check_derivation(&d, &BuiltinOracle::default()).err().map(|f| f.line)
}

fn mutate(line: usize, from: &str, to: &str) -> String {
    SCRIPT
        .lines()
        .enumerate()
        .map(|(i, l)| if i == line { l.replacen(from, to, 1) } else { l.to_string() })
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn the_fixture_is_the_corpus_derivation() {
    let (d, _) = parse_script(SCRIPT).unwrap();
    assert_eq!(d, punit(&qubits(0..2)));
    assert_eq!(render_script(&d, &Default::default()), SCRIPT);
}

#[test]
fn the_derivation_checks() {
    assert_eq!(failing_line(SCRIPT), None);
}

#[test]
fn every_mutation_is_rejected_at_its_line() {
    let mutations = [
        (1, "NETG_F", "EMPTY"),
        (2, "UNIT({qb0,qb1})", "UNIT({qb0})"),
        (3, "QMP(1,2)", "QMP(2,1)"),
        (4, "PROB(top)", "PROB(qb0)"),
        (5, "(Pr(top) = 1)))", "(Pr(top) = 2)))"),
        (6, "QMP(4,5)", "QMP(4,7)"),
        (7, "(Pr(top) = 1)", "(Pr(top) = 1/2)"),
    ];
    for (line, from, to) in mutations {
        let text = mutate(line, from, to);
        assert_ne!(text, SCRIPT, "mutation {from} -> {to} changed nothing");
        assert_eq!(failing_line(&text), Some(line), "{from} -> {to}");
    }
}
