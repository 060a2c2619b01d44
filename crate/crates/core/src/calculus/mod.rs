//! Derivations in the Hilbert calculus for bound `F`: axiom recognition, the
//! two modus ponens rules, whole-script checking and a corpus of theorems.

mod axioms;
pub mod corpus;
mod script;
mod tautology;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::arithmetic::Oracle;
use crate::syntax::{free_symbols, Ast, Classical, Quantum, QubitSet};

pub use axioms::match_axiom;
pub use script::{parse_script, render_script, ScriptError};
pub use tautology::{classical_prop, classical_tautology, is_tautology, prop_valid, Mode, Prop, Skeleton};

/// An axiom schema together with the parameters the instance is taken at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Axiom {
    CTaut,
    QTaut,
    Oracle,
    Lift,
    RefConj,
    IfTop,
    IfBot,
    NetgF,
    NetgBar(QubitSet, QubitSet),
    NetgUnion(QubitSet, QubitSet),
    NetgDiff(QubitSet, QubitSet),
    Empty,
    NAdm(QubitSet),
    Unit(QubitSet),
    Prob(Classical),
}

impl Axiom {
    pub fn name(&self) -> &'static str {
        match self {
            Axiom::CTaut => "CTaut",
            Axiom::QTaut => "QTaut",
            Axiom::Oracle => "Oracle",
            Axiom::Lift => "Lift",
            Axiom::RefConj => "RefConj",
            Axiom::IfTop => "IfTop",
            Axiom::IfBot => "IfBot",
            Axiom::NetgF => "NEtgF",
            Axiom::NetgBar(..) => "NEtg|",
            Axiom::NetgUnion(..) => "NEtgUnion",
            Axiom::NetgDiff(..) => "NEtgDiff",
            Axiom::Empty => "Empty",
            Axiom::NAdm(_) => "NAdm",
            Axiom::Unit(_) => "Unit",
            Axiom::Prob(_) => "Prob",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    Axiom(Axiom),
    Cmp(usize, usize),
    Qmp(usize, usize),
    Premise,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationLine {
    pub index: usize,
    pub formula: Quantum,
    pub justification: Justification,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub bound: QubitSet,
    pub lines: Vec<DerivationLine>,
}

impl Derivation {
    pub fn premises(&self) -> Vec<&Quantum> {
        self.lines.iter().filter(|l| l.justification == Justification::Premise).map(|l| &l.formula).collect()
    }

    pub fn conclusion(&self) -> Option<&Quantum> {
        self.lines.last().map(|l| &l.formula)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LineError {
    #[error("line numbers must increase")]
    Numbering,
    #[error("cites line {0}, which is not an earlier line")]
    BadCitation(usize),
    #[error("formula mentions {0}, outside the bound")]
    OutOfBound(String),
    #[error("not an instance of {schema}: {reason}")]
    NotAnInstance { schema: &'static str, reason: String },
    #[error("oracle could not establish validity: {0}")]
    OracleUnknown(String),
    #[error("oracle refutes the formula: {0}")]
    OracleInvalid(String),
    #[error("line {0} is not a classical formula")]
    NotClassical(usize),
    #[error("line {0} is not an implication")]
    NotAnImplication(usize),
    #[error("the antecedent of line {implication} is not line {premise}")]
    MismatchedAntecedent { premise: usize, implication: usize },
    #[error("the consequent of line {0} is not this line's formula")]
    MismatchedConclusion(usize),
}

/// The first failing line of a derivation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub line: usize,
    pub error: LineError,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.error)
    }
}

/// Checks one line against the lines before it.
fn check_line(
    line: &DerivationLine,
    earlier: &BTreeMap<usize, &Quantum>,
    bound: &QubitSet,
    oracle: &dyn Oracle,
) -> Result<(), LineError> {
    let syms = free_symbols(&Ast::Quantum(line.formula.clone()));
    if let Some(q) = syms.qubits.difference(bound).next() {
        return Err(LineError::OutOfBound(q.to_string()));
    }
    let cited = |k: usize| earlier.get(&k).copied().ok_or(LineError::BadCitation(k));
    match &line.justification {
        Justification::Premise => Ok(()),
        Justification::Axiom(a) => match_axiom(a, &line.formula, bound, oracle),
        Justification::Cmp(i, j) => {
            let (first, second) = (cited(*i)?, cited(*j)?);
            let Quantum::Classical(a1) = first else { return Err(LineError::NotClassical(*i)) };
            let Quantum::Classical(imp) = second else { return Err(LineError::NotClassical(*j)) };
            let Quantum::Classical(own) = &line.formula else {
                return Err(LineError::NotClassical(line.index));
            };
            let Classical::Imp(ante, cons) = imp else { return Err(LineError::NotAnImplication(*j)) };
            if **ante != *a1 {
                return Err(LineError::MismatchedAntecedent { premise: *i, implication: *j });
            }
            if **cons != *own {
                return Err(LineError::MismatchedConclusion(*j));
            }
            Ok(())
        }
        Justification::Qmp(i, j) => {
            let (first, second) = (cited(*i)?, cited(*j)?);
            let Quantum::Imp(ante, cons) = second else { return Err(LineError::NotAnImplication(*j)) };
            if **ante != *first {
                return Err(LineError::MismatchedAntecedent { premise: *i, implication: *j });
            }
            if **cons != line.formula {
                return Err(LineError::MismatchedConclusion(*j));
            }
            Ok(())
        }
    }
}

/// Per-line verdicts, in order.
pub fn check_lines(d: &Derivation, oracle: &dyn Oracle) -> Vec<(usize, Result<(), LineError>)> {
    let mut earlier: BTreeMap<usize, &Quantum> = BTreeMap::new();
    let mut out = Vec::new();
    let mut last = None;
    for line in &d.lines {
        let verdict = if last.is_some_and(|k| line.index <= k) {
            Err(LineError::Numbering)
        } else {
            check_line(line, &earlier, &d.bound, oracle)
        };
        out.push((line.index, verdict));
        earlier.insert(line.index, &line.formula);
        last = Some(line.index);
    }
    out
}

/// Succeeds when every line is a premise, a verified axiom instance or a
/// correct application of a rule.
pub fn check_derivation(d: &Derivation, oracle: &dyn Oracle) -> Result<(), Failure> {
    for (line, verdict) in check_lines(d, oracle) {
        if let Err(error) = verdict {
            return Err(Failure { line, error });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::corpus::punit;
    use super::*;
    use crate::arithmetic::BuiltinOracle;
    use crate::syntax::{parse_quantum, qubits, Aliases};

    fn q(s: &str) -> Quantum {
        parse_quantum(s, &Aliases::new()).unwrap()
    }

    fn axiom(a: Axiom, s: &str, bound: &QubitSet) -> Result<(), LineError> {
        match_axiom(&a, &q(s), bound, &BuiltinOracle::default())
    }

    #[test]
    fn punit_checks_for_several_bounds() {
        for f in [qubits([]), qubits([0]), qubits([0, 1]), qubits([0, 2, 5])] {
            assert_eq!(check_derivation(&punit(&f), &BuiltinOracle::default()), Ok(()), "{f:?}");
        }
    }

    #[test]
    fn punit_survives_a_script_round_trip() {
        let d = punit(&qubits([0, 1]));
        let text = render_script(&d, &Aliases::new());
        let (back, _) = parse_script(&text).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn miscited_modus_ponens_fails_at_its_line() {
        let mut d = punit(&qubits([0, 1]));
        d.lines[2].justification = Justification::Qmp(1, 1);
        let err = check_derivation(&d, &BuiltinOracle::default()).unwrap_err();
        assert_eq!(err.line, 3);
        assert_eq!(err.error, LineError::NotAnImplication(1));
    }

    #[test]
    fn qmp_with_a_different_antecedent_is_rejected() {
        let text = "bound F = qb0\n1. (x1 <= x2) ; PREMISE\n2. ((x2 <= x3) ==> (x1 <= x3)) ; PREMISE\n3. (x1 <= x3) ; QMP(1,2)\n";
        let (d, _) = parse_script(text).unwrap();
        let err = check_derivation(&d, &BuiltinOracle::default()).unwrap_err();
        assert_eq!(err.error, LineError::MismatchedAntecedent { premise: 1, implication: 2 });
    }

    #[test]
    fn forward_citations_are_rejected() {
        let text = "bound F = qb0\n1. qb0 ; CMP(1,2)\n";
        let (d, _) = parse_script(text).unwrap();
        assert_eq!(check_derivation(&d, &BuiltinOracle::default()).unwrap_err().error, LineError::BadCitation(1));
    }

    #[test]
    fn cmp_is_replayed_by_lifting() {
        let d = corpus::cmp_via_qmp(&qubits([0, 1]), Classical::qb(0), Classical::qb(1));
        assert_eq!(check_derivation(&d, &BuiltinOracle::default()), Ok(()));
    }

    #[test]
    fn tautologies_in_both_modes() {
        assert!(is_tautology(&q("(qb1 -> qb1)"), Mode::Classical));
        assert!(!is_tautology(&q("(qb1 -> qb2)"), Mode::Classical));
        assert!(is_tautology(&q("((x1 <= x2) ==> (x1 <= x2))"), Mode::Quantum));
        assert!(is_tautology(&q("((! [qb0] ==> ! (x1 <= x2)) ==> ((x1 <= x2) ==> [qb0]))"), Mode::Quantum));
        assert!(!is_tautology(&q("((x1 <= x2) ==> (x2 <= x1))"), Mode::Quantum));
        assert!(!is_tautology(&q("((x1 <= x2) ==> (x1 <= x2))"), Mode::Classical));
    }

    #[test]
    fn classical_atoms_are_opaque_in_quantum_mode() {
        assert!(is_tautology(&q("(qb0 ==> qb0)"), Mode::Quantum));
        assert!(!is_tautology(&q("(qb0 \\/ ~ qb0)"), Mode::Quantum));
        assert!(is_tautology(&q("(qb0 \\/ ~ qb0)"), Mode::Classical));
    }

    #[test]
    fn structural_axioms() {
        let f = qubits([0, 1]);
        assert_eq!(axiom(Axiom::NetgF, "[qb0,qb1]", &f), Ok(()));
        assert!(axiom(Axiom::NetgF, "[qb0]", &f).is_err());
        assert_eq!(axiom(Axiom::Lift, "((qb0 -> qb1) ==> (qb0 ==> qb1))", &f), Ok(()));
        assert!(axiom(Axiom::Lift, "((qb0 -> qb1) ==> (qb1 ==> qb0))", &f).is_err());
        assert_eq!(axiom(Axiom::RefConj, "((qb0 && qb1) ==> (qb0 /\\ qb1))", &f), Ok(()));
        assert_eq!(axiom(Axiom::IfTop, "(qb0 ==> (ite(qb0; z1; z2) = z1))", &f), Ok(()));
        assert!(axiom(Axiom::IfTop, "(qb0 ==> (ite(qb0; z1; z2) = z2))", &f).is_err());
        assert_eq!(axiom(Axiom::IfBot, "(! qb0 ==> (ite(qb0; z1; z2) = z2))", &f), Ok(()));
        assert_eq!(axiom(Axiom::Empty, "(amp{}{} = 1)", &f), Ok(()));
        assert!(axiom(Axiom::Empty, "(amp{}{} = 0)", &f).is_err());
    }

    #[test]
    fn non_entanglement_axioms() {
        let f = qubits([0, 1, 2]);
        let (g1, g2) = (qubits([0]), qubits([0, 1]));
        assert_eq!(
            axiom(Axiom::NetgBar(g1.clone(), g2.clone()), "([qb0,qb1] ==> ([qb0] <=> [qb0 // qb0,qb1]))", &f),
            Ok(())
        );
        assert!(
            axiom(Axiom::NetgBar(g2.clone(), g1.clone()), "([qb0] ==> ([qb0,qb1] <=> [qb0,qb1 // qb0]))", &f).is_err()
        );
        assert_eq!(axiom(Axiom::NetgUnion(g1.clone(), qubits([2])), "([qb0] ==> ([qb2] ==> [qb0,qb2]))", &f), Ok(()));
        assert_eq!(axiom(Axiom::NetgDiff(g2.clone(), g1.clone()), "([qb0,qb1] ==> ([qb0] ==> [qb1]))", &f), Ok(()));
        assert!(axiom(Axiom::NetgDiff(g2, g1), "([qb0,qb1] ==> ([qb0] ==> [qb0]))", &f).is_err());
    }

    #[test]
    fn amplitude_axioms() {
        let f = qubits([0, 1]);
        assert_eq!(axiom(Axiom::NAdm(qubits([1])), "(~ mol{qb0,qb1}{qb1} ==> (amp{qb0,qb1}{qb1} = 0))", &f), Ok(()));
        assert!(axiom(Axiom::NAdm(qubits([1])), "(~ mol{qb0}{} ==> (amp{qb0}{} = 0))", &f).is_err());
        assert_eq!(axiom(Axiom::Unit(qubits([0])), "([qb0] ==> (sumsq{qb0} = 1))", &f), Ok(()));
        assert_eq!(axiom(Axiom::Prob(Classical::Top), "(Pr(top) = sumsq{qb0,qb1})", &f), Ok(()));
        assert_eq!(axiom(Axiom::Prob(Classical::qb(0)), "(Pr(qb0) = sumsq{qb0,qb1}[qb0])", &f), Ok(()));
        assert!(axiom(Axiom::Prob(Classical::qb(0)), "(Pr(qb0) = sumsq{qb0}[qb0])", &f).is_err());
    }

    #[test]
    fn oracle_lines_are_abstracted_then_checked() {
        let f = qubits([0]);
        assert_eq!(axiom(Axiom::Oracle, "((Pr(qb0) <= x1) ==> (Pr(qb0) <= (x1 + 1)))", &f), Ok(()));
        assert!(matches!(axiom(Axiom::Oracle, "(Pr(qb0) <= x1)", &f), Err(LineError::OracleInvalid(_))));
        assert!(matches!(axiom(Axiom::Oracle, "(qb0 ==> (x1 <= x1))", &f), Err(LineError::NotAnInstance { .. })));
    }

    #[test]
    fn lines_outside_the_bound_fail() {
        let text = "bound F = qb0\n1. [qb0,qb1] ; NETG_F\n";
        let (d, _) = parse_script(text).unwrap();
        assert!(matches!(check_derivation(&d, &BuiltinOracle::default()).unwrap_err().error, LineError::OutOfBound(_)));
    }

    #[test]
    fn script_errors_carry_line_numbers() {
        let err = parse_script("bound F = qb0\n1. qb0 ; NOPE\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(parse_script("1. qb0 ; CTaut\n").is_err());
    }
}
