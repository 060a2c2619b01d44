use super::*;
use crate::structures::schmidt_factor;
use crate::syntax::{parse_quantum, qubits, Aliases};

fn q(s: &str) -> Quantum {
    parse_quantum(s, &Aliases::new()).unwrap()
}

fn find(s: &str) -> FindResult {
    find_model(&q(s), &QubitSet::new(), &FinderConfig::default()).unwrap()
}

fn model(s: &str) -> (QuantumStructure, Assignment) {
    match find(s) {
        FindResult::Model(w, rho) => {
            assert!(satisfies(&w, &rho, &q(s), &Tolerances::default()).unwrap());
            (w, rho)
        }
        other => panic!("no model for {s}: {other:?}"),
    }
}

#[test]
fn partitions_of_three_qubits() {
    let ps = partitions(&qubits([0, 1, 2]));
    assert_eq!(ps.len(), 5);
    assert_eq!(ps[0].len(), 3);
    assert_eq!(ps[4].len(), 1);
    assert_eq!(partitions(&QubitSet::new()), vec![Vec::<QubitSet>::new()]);
}

#[test]
fn admissible_candidates_close_under_intersection() {
    let atoms = vec![QuantumAtom::Classical(Classical::qb(0)), QuantumAtom::Classical(Classical::qb(1))];
    let (sets, truncated) = admissible_candidates(&atoms, &qubits([0, 1]), 64);
    assert!(!truncated);
    assert_eq!(sets, vec![vec![0, 1, 2, 3], vec![1, 3], vec![2, 3], vec![3]]);
}

#[test]
fn classical_qubit_forces_its_valuation() {
    let (w, _) = model("qb0");
    assert_eq!(w.admissible_bits().iter().copied().collect::<Vec<_>>(), vec![1]);
}

#[test]
fn bell_state_needs_one_block() {
    let (w, _) = model(
        "(((amp{qb0,qb1}{} = amp{qb0,qb1}{qb0,qb1}) && (amp{qb0,qb1}{qb0} = 0)) && ((amp{qb0,qb1}{qb1} = 0) && (0 < abs(amp{qb0,qb1}{}))))",
    );
    assert_eq!(w.partition(), vec![qubits([0, 1])]);
    assert!(!schmidt_factor(w.psi(), &qubits([0]), 1e-7).factorizable);
}

#[test]
fn product_state_gets_the_finest_partition() {
    let (w, _) = model("(amp{qb0,qb1}{} = 1)");
    assert_eq!(w.partition().len(), 2);
}

#[test]
fn prescribed_probability() {
    let (w, rho) = model("(Pr(qb0) = 1/3)");
    let p = crate::semantics::Evaluator::new(&w, &rho, Tolerances::default()).prob(&Classical::qb(0)).unwrap();
    assert!((p - 1.0 / 3.0).abs() < 1e-9);
}

#[test]
fn variables_are_assigned() {
    let (_, rho) = model("((x1 <= 2) && ((1 < x1) && (z1 = (x1 + i 1))))");
    let x = rho.real(crate::syntax::RealVar(1)).unwrap();
    assert!(x > 1.0 && x <= 2.0 + 1e-9);
}

#[test]
fn entanglement_is_found() {
    let g = q("! [qb0]");
    let FindResult::Model(w, _) = find_model(&g, &qubits([0, 1]), &FinderConfig::default()).unwrap() else {
        panic!("expected a model")
    };
    assert_eq!(w.partition(), vec![qubits([0, 1])]);
    assert!(matches!(find("! [qb0]"), FindResult::Inconsistent(_)));
}

#[test]
fn classical_contradiction_is_inconsistent() {
    assert!(matches!(find("(qb0 && ! qb0)"), FindResult::Inconsistent(_)));
    assert!(matches!(find("! (qb0 -> qb0)"), FindResult::Inconsistent(_)));
}

#[test]
fn linear_contradiction_is_inconsistent() {
    assert!(matches!(find("((x1 <= 0) && (1 <= x1))"), FindResult::Inconsistent(_)));
}

#[test]
fn alternative_term_branches() {
    let (w, _) = model("(ite(qb0; 1; 0) = 1)");
    assert!(w.admissible_bits().iter().all(|k| k & 1 == 1));
    assert!(matches!(find("((ite(qb0; 1; 0) = 1) && ! qb0)"), FindResult::Inconsistent(_)));
}

#[test]
fn unsatisfiable_norm_finds_nothing() {
    let cfg =
        FinderConfig { solver: SolverConfig { restarts: 4, ..SolverConfig::default() }, ..FinderConfig::default() };
    let r = find_model(&q("(2 <= abs(amp{qb0}{}))"), &QubitSet::new(), &cfg).unwrap();
    assert!(matches!(r, FindResult::NoModelFound(_)));
}
