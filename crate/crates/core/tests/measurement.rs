use std::collections::{BTreeMap, BTreeSet};

use eqpl::semantics::{measure, Assignment, Evaluator};
use eqpl::structures::{make_vector, QuantumStructure, Tolerances, Valuation, C64};
use eqpl::syntax::{qubits, Classical};

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// `a1|00 w1> + a2|01 w2> + a3|01 w3> + a4|10 w4>` with `w1..w4 = 00, 01, 10, 11`.
fn four_term() -> (QuantumStructure, [C64; 4]) {
    let frame = qubits(0..4);
    let amps = [c(0.2, 0.0), c(0.0, 0.4), c(-0.4, 0.0), c(0.0, 0.8)];
    let kets = ["0000", "0101", "0110", "1011"];
    let entries: Vec<(Valuation, C64)> =
        kets.iter().zip(amps).map(|(k, a)| (Valuation::from_bits_str(&frame, k).unwrap(), a)).collect();
    let admissible: Vec<Valuation> = entries.iter().map(|(v, _)| v.clone()).collect();
    let psi = make_vector(&frame, entries, 1e-12).unwrap();
    let w = QuantumStructure::new(frame, admissible, vec![psi], BTreeMap::new()).unwrap();
    (w, amps)
}

#[test]
fn outcome_01_of_the_first_two_qubits() {
    let (w, a) = four_term();
    let f = qubits(0..2);
    let u: BTreeSet<Valuation> = [Valuation::from_bits_str(&f, "01").unwrap()].into();
    let mu = measure(&w, &f, &u).unwrap();
    assert!((mu - (a[1].norm_sqr() + a[2].norm_sqr())).abs() < 1e-12);
    assert!((mu - 8.0 / 25.0).abs() < 1e-12);
}

#[test]
fn outcomes_form_a_distribution() {
    let (w, a) = four_term();
    let f = qubits(0..2);
    let expected = [("00", a[0].norm_sqr()), ("01", 8.0 / 25.0), ("10", a[3].norm_sqr()), ("11", 0.0)];
    let mut total = 0.0;
    for (bits, p) in expected {
        let u: BTreeSet<Valuation> = [Valuation::from_bits_str(&f, bits).unwrap()].into();
        let mu = measure(&w, &f, &u).unwrap();
        assert!((mu - p).abs() < 1e-12, "{bits}");
        total += mu;
    }
    assert!((total - 1.0).abs() < 1e-12);
}

#[test]
fn probability_term_agrees_with_the_measure() {
    let (w, _) = four_term();
    let rho = Assignment::new();
    let ev = Evaluator::new(&w, &rho, Tolerances::default());
    let outcome = Classical::Molecular { frame: qubits(0..2), set: qubits([1]) };
    assert!((ev.prob(&outcome).unwrap() - 8.0 / 25.0).abs() < 1e-12);
}
