use std::collections::BTreeSet;

use super::ast::*;

/// The qubit symbols and term variables occurring in an expression.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Symbols {
    pub qubits: QubitSet,
    pub reals: BTreeSet<RealVar>,
    pub complexes: BTreeSet<ComplexVar>,
}

/// Collects `QB(·)` and the free variables. Sugared nodes report the
/// symbols of their expansion, so `QB(expand(a)) = QB(a)`.
pub fn free_symbols(ast: &Ast) -> Symbols {
    let mut s = Symbols::default();
    match ast {
        Ast::Classical(a) => s.classical(a),
        Ast::Real(t) => s.real(t),
        Ast::Complex(u) => s.complex(u),
        Ast::Quantum(g) => s.quantum(g),
    }
    s
}

pub(crate) fn classical_qubits(a: &Classical) -> QubitSet {
    let mut s = Symbols::default();
    s.classical(a);
    s.qubits
}

impl Symbols {
    fn classical(&mut self, a: &Classical) {
        match a {
            Classical::Qubit(q) => {
                self.qubits.insert(*q);
            }
            Classical::Top | Classical::Bot => {}
            Classical::Neg(b) => self.classical(b),
            Classical::Imp(x, y) | Classical::And(x, y) | Classical::Or(x, y) | Classical::Iff(x, y) => {
                self.classical(x);
                self.classical(y);
            }
            Classical::Molecular { frame, .. } => self.qubits.extend(frame.iter().copied()),
        }
    }

    fn real(&mut self, t: &RealTerm) {
        match t {
            RealTerm::Var(v) => {
                self.reals.insert(*v);
            }
            RealTerm::Const(_) => {}
            RealTerm::Prob(a) => self.classical(a),
            RealTerm::Add(a, b) | RealTerm::Mul(a, b) => {
                self.real(a);
                self.real(b);
            }
            RealTerm::Re(u) | RealTerm::Im(u) | RealTerm::Arg(u) | RealTerm::Abs(u) => self.complex(u),
            RealTerm::SumSq { frame, guard } => {
                self.qubits.extend(frame.iter().copied());
                self.classical(guard);
            }
        }
    }

    fn complex(&mut self, u: &ComplexTerm) {
        match u {
            ComplexTerm::Var(v) => {
                self.complexes.insert(*v);
            }
            ComplexTerm::Amp { frame, .. } => self.qubits.extend(frame.iter().copied()),
            ComplexTerm::AmpOf { frame, guard, .. } => {
                self.qubits.extend(frame.iter().copied());
                self.classical(guard);
            }
            ComplexTerm::Cart(a, b) | ComplexTerm::Polar(a, b) => {
                self.real(a);
                self.real(b);
            }
            ComplexTerm::Conj(a) => self.complex(a),
            ComplexTerm::Add(a, b) | ComplexTerm::Mul(a, b) => {
                self.complex(a);
                self.complex(b);
            }
            ComplexTerm::Ite(g, a, b) => {
                self.classical(g);
                self.complex(a);
                self.complex(b);
            }
        }
    }

    fn quantum(&mut self, g: &Quantum) {
        match g {
            Quantum::Classical(a) => self.classical(a),
            Quantum::Leq(a, b) | Quantum::Lt(a, b) | Quantum::EqR(a, b) => {
                self.real(a);
                self.real(b);
            }
            Quantum::EqC(a, b) => {
                self.complex(a);
                self.complex(b);
            }
            Quantum::NonEtg(f) | Quantum::Cond { frame: f, .. } => self.qubits.extend(f.iter().copied()),
            Quantum::Not(a) => self.quantum(a),
            Quantum::Imp(a, b) | Quantum::Or(a, b) | Quantum::And(a, b) | Quantum::Iff(a, b) => {
                self.quantum(a);
                self.quantum(b);
            }
            // The separating sets cover every qubit of the frame except `right`.
            Quantum::Entangled { left, frame, right } => {
                if left != right && frame.contains(left) && frame.contains(right) {
                    self.qubits.extend(frame.iter().copied().filter(|q| q != right));
                }
            }
            Quantum::Poss { frame, items } => {
                if !items.is_empty() {
                    self.qubits.extend(frame.iter().copied());
                }
                for (a, u) in items {
                    self.classical(a);
                    self.complex(u);
                }
            }
            Quantum::Dia(a) | Quantum::Box(a) => self.classical(a),
            Quantum::Molecular(lits) => {
                for (atom, _) in lits {
                    self.quantum(&atom.to_formula());
                }
            }
        }
    }
}
