//! Theorem corpus: full derivations where one is known, and parametrized
//! statements for the remaining theorems.

use super::{Axiom, Derivation, DerivationLine, Justification};
use crate::syntax::{subsets, Classical, ComplexTerm, Quantum, QubitSet, RealTerm};

fn line(index: usize, formula: Quantum, justification: Justification) -> DerivationLine {
    DerivationLine { index, formula, justification }
}

/// The seven-line derivation of `(Pr(⊤) = 1)` for bound `f`.
pub fn punit(f: &QubitSet) -> Derivation {
    let sum = || RealTerm::SumSq { frame: f.clone(), guard: Classical::Top };
    let one = || RealTerm::int(1);
    let prob = || RealTerm::prob(Classical::Top);
    let unit = Quantum::eq_r(sum(), one());
    let law = Quantum::eq_r(prob(), sum());
    let goal = Quantum::eq_r(prob(), one());
    let step = Quantum::imp(unit.clone(), goal.clone());
    Derivation {
        bound: f.clone(),
        lines: vec![
            line(1, Quantum::netg(f.clone()), Justification::Axiom(Axiom::NetgF)),
            line(2, Quantum::imp(Quantum::netg(f.clone()), unit.clone()), Justification::Axiom(Axiom::Unit(f.clone()))),
            line(3, unit, Justification::Qmp(1, 2)),
            line(4, law.clone(), Justification::Axiom(Axiom::Prob(Classical::Top))),
            line(5, Quantum::imp(law, step.clone()), Justification::Axiom(Axiom::Oracle)),
            line(6, step, Justification::Qmp(4, 5)),
            line(7, goal, Justification::Qmp(3, 6)),
        ],
    }
}

/// Classical modus ponens replayed with quantum modus ponens and lifting:
/// from `a1` and `(a1 -> a2)` derive `a2`.
pub fn cmp_via_qmp(f: &QubitSet, a1: Classical, a2: Classical) -> Derivation {
    let c = |a: &Classical| Quantum::classical(a.clone());
    let imp = Classical::imp(a1.clone(), a2.clone());
    let lifted = Quantum::imp(c(&a1), c(&a2));
    Derivation {
        bound: f.clone(),
        lines: vec![
            line(1, c(&a1), Justification::Premise),
            line(2, c(&imp), Justification::Premise),
            line(3, Quantum::imp(c(&imp), lifted.clone()), Justification::Axiom(Axiom::Lift)),
            line(4, lifted, Justification::Qmp(2, 3)),
            line(5, c(&a2), Justification::Qmp(1, 4)),
        ],
    }
}

/// Parameters a theorem statement is instantiated at. `alpha1`, `alpha2`
/// should mention only qubits of `g1`, and `set ⊆ g1`.
#[derive(Clone, Debug, PartialEq)]
pub struct TheoremParams {
    pub g1: QubitSet,
    pub g2: QubitSet,
    pub alpha1: Classical,
    pub alpha2: Classical,
    pub set: QubitSet,
    pub u1: ComplexTerm,
    pub u2: ComplexTerm,
}

pub struct Theorem {
    pub name: &'static str,
    pub statement: fn(&TheoremParams) -> Quantum,
}

fn amp(p: &TheoremParams, a: &QubitSet, alpha: &Classical) -> ComplexTerm {
    ComplexTerm::amp_of(p.g1.clone(), a.clone(), alpha.clone())
}

fn vec_eq(p: &TheoremParams, part: impl Fn(&QubitSet) -> (ComplexTerm, ComplexTerm)) -> Quantum {
    Quantum::conj_all(subsets(&p.g1).iter().map(|a| {
        let (x, y) = part(a);
        Quantum::eq_c(x, y)
    }))
    .expect("a set has at least one subset")
}

fn vec_included(p: &TheoremParams, x: &Classical, y: &Classical) -> Quantum {
    Quantum::conj_all(subsets(&p.g1).iter().map(|a| {
        let nonzero = Quantum::not(Quantum::eq_c(amp(p, a, x), ComplexTerm::int(0)));
        Quantum::imp(nonzero, Quantum::eq_c(amp(p, a, x), amp(p, a, y)))
    }))
    .expect("a set has at least one subset")
}

fn poss(p: &TheoremParams, alpha: Classical, u: &ComplexTerm) -> Quantum {
    Quantum::Poss { frame: p.g1.clone(), items: vec![(alpha, u.clone())] }
}

fn c(a: &Classical) -> Quantum {
    Quantum::classical(a.clone())
}

fn or(p: &TheoremParams) -> Classical {
    Classical::or(p.alpha1.clone(), p.alpha2.clone())
}

fn and(p: &TheoremParams) -> Classical {
    Classical::and(p.alpha1.clone(), p.alpha2.clone())
}

fn prob(a: Classical) -> RealTerm {
    RealTerm::prob(a)
}

/// Statement-only theorems, each sound over every structure where the
/// amplitude sets involved are unions of blocks.
pub const THEOREMS: &[Theorem] = &[
    Theorem { name: "PUnit", statement: |_| Quantum::eq_r(prob(Classical::Top), RealTerm::int(1)) },
    Theorem {
        name: "NEtgCap",
        statement: |p| {
            let meet: QubitSet = p.g1.intersection(&p.g2).copied().collect();
            Quantum::imp(Quantum::netg(p.g1.clone()), Quantum::imp(Quantum::netg(p.g2.clone()), Quantum::netg(meet)))
        },
    },
    Theorem {
        name: "AAdd",
        statement: |p| {
            vec_eq(p, |a| {
                (
                    ComplexTerm::add(amp(p, a, &or(p)), amp(p, a, &and(p))),
                    ComplexTerm::add(amp(p, a, &p.alpha1), amp(p, a, &p.alpha2)),
                )
            })
        },
    },
    Theorem {
        name: "AMon",
        statement: |p| {
            Quantum::imp(c(&Classical::imp(p.alpha1.clone(), p.alpha2.clone())), vec_included(p, &p.alpha1, &p.alpha2))
        },
    },
    Theorem {
        name: "ASoE",
        statement: |p| {
            Quantum::imp(
                c(&Classical::iff(p.alpha1.clone(), p.alpha2.clone())),
                vec_eq(p, |a| (amp(p, a, &p.alpha1), amp(p, a, &p.alpha2))),
            )
        },
    },
    Theorem {
        name: "ANec",
        statement: |p| Quantum::imp(c(&p.alpha1), vec_eq(p, |a| (amp(p, a, &p.alpha1), amp(p, a, &Classical::Top)))),
    },
    Theorem {
        name: "AMExc",
        statement: |p| {
            vec_eq(p, |a| {
                (
                    ComplexTerm::add(amp(p, a, &p.alpha1), amp(p, a, &Classical::not(p.alpha1.clone()))),
                    amp(p, a, &Classical::Top),
                )
            })
        },
    },
    Theorem {
        name: "PAdd",
        statement: |p| {
            Quantum::eq_r(
                RealTerm::add(prob(or(p)), prob(and(p))),
                RealTerm::add(prob(p.alpha1.clone()), prob(p.alpha2.clone())),
            )
        },
    },
    Theorem {
        name: "Meas",
        statement: |p| {
            let m = Classical::Molecular { frame: p.g1.clone(), set: p.set.clone() };
            Quantum::imp(poss(p, m.clone(), &p.u1), Quantum::eq_r(prob(m), RealTerm::abs_sq(p.u1.clone())))
        },
    },
    Theorem {
        name: "PMon",
        statement: |p| {
            Quantum::imp(
                c(&Classical::imp(p.alpha1.clone(), p.alpha2.clone())),
                Quantum::leq(prob(p.alpha1.clone()), prob(p.alpha2.clone())),
            )
        },
    },
    Theorem {
        name: "QNorm",
        statement: |p| {
            Quantum::iff(
                poss(p, or(p), &p.u1),
                Quantum::or(poss(p, p.alpha1.clone(), &p.u1), poss(p, p.alpha2.clone(), &p.u1)),
            )
        },
    },
    Theorem {
        name: "QMon",
        statement: |p| {
            Quantum::imp(
                c(&Classical::imp(p.alpha1.clone(), p.alpha2.clone())),
                Quantum::imp(poss(p, p.alpha1.clone(), &p.u1), poss(p, p.alpha2.clone(), &p.u1)),
            )
        },
    },
    Theorem {
        name: "QCong",
        statement: |p| {
            Quantum::imp(
                Quantum::eq_c(p.u1.clone(), p.u2.clone()),
                Quantum::imp(poss(p, p.alpha1.clone(), &p.u1), poss(p, p.alpha1.clone(), &p.u2)),
            )
        },
    },
    Theorem { name: "PNec", statement: |p| Quantum::imp(c(&p.alpha1), Quantum::Box(p.alpha1.clone())) },
    Theorem {
        name: "PNorm",
        statement: |p| {
            Quantum::imp(
                Quantum::Box(Classical::imp(p.alpha1.clone(), p.alpha2.clone())),
                Quantum::imp(Quantum::Box(p.alpha1.clone()), Quantum::Box(p.alpha2.clone())),
            )
        },
    },
];

pub fn theorem(name: &str) -> Option<&'static Theorem> {
    THEOREMS.iter().find(|t| t.name == name)
}
