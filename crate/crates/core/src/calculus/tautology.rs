//! Propositional skeletons and tautology checking in both modes.

use std::collections::BTreeMap;

use crate::syntax::{expand_quantum, Classical, ExpandError, Quantum, QuantumAtom, Qubit};

/// A propositional formula over numbered letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Prop {
    Const(bool),
    Var(usize),
    Not(Box<Prop>),
    Imp(Box<Prop>, Box<Prop>),
    And(Box<Prop>, Box<Prop>),
    Or(Box<Prop>, Box<Prop>),
    Iff(Box<Prop>, Box<Prop>),
}

impl Prop {
    pub fn eval(&self, val: &[bool]) -> bool {
        self.partial(&|i| Some(val[i])).expect("total valuation")
    }

    /// Three-valued evaluation: `None` when the value depends on unassigned
    /// letters.
    pub fn partial(&self, val: &dyn Fn(usize) -> Option<bool>) -> Option<bool> {
        match self {
            Prop::Const(b) => Some(*b),
            Prop::Var(i) => val(*i),
            Prop::Not(a) => a.partial(val).map(|b| !b),
            Prop::Imp(a, b) => match (a.partial(val), b.partial(val)) {
                (Some(false), _) | (_, Some(true)) => Some(true),
                (Some(true), Some(false)) => Some(false),
                _ => None,
            },
            Prop::And(a, b) => match (a.partial(val), b.partial(val)) {
                (Some(false), _) | (_, Some(false)) => Some(false),
                (Some(true), Some(true)) => Some(true),
                _ => None,
            },
            Prop::Or(a, b) => match (a.partial(val), b.partial(val)) {
                (Some(true), _) | (_, Some(true)) => Some(true),
                (Some(false), Some(false)) => Some(false),
                _ => None,
            },
            Prop::Iff(a, b) => Some(a.partial(val)? == b.partial(val)?),
        }
    }
}

/// True when `p` holds under every valuation of its `n` letters. Branches on
/// letters in order and stops as soon as a branch is decided.
pub fn prop_valid(p: &Prop, n: usize) -> bool {
    fn go(p: &Prop, val: &mut Vec<Option<bool>>, k: usize) -> bool {
        match p.partial(&|i| val[i]) {
            Some(b) => b,
            None => {
                let mut ok = true;
                for b in [true, false] {
                    val[k] = Some(b);
                    if !go(p, val, k + 1) {
                        ok = false;
                        break;
                    }
                }
                val[k] = None;
                ok
            }
        }
    }
    go(p, &mut vec![None; n], 0)
}

/// Classical formula as a proposition over its qubits, letters numbered in
/// qubit order.
pub fn classical_prop(a: &Classical) -> (Prop, Vec<Qubit>) {
    fn collect(a: &Classical, out: &mut BTreeMap<Qubit, usize>) {
        match a {
            Classical::Qubit(q) => {
                out.insert(*q, 0);
            }
            Classical::Top | Classical::Bot => {}
            Classical::Neg(b) => collect(b, out),
            Classical::Imp(b, c) | Classical::And(b, c) | Classical::Or(b, c) | Classical::Iff(b, c) => {
                collect(b, out);
                collect(c, out);
            }
            Classical::Molecular { frame, .. } => {
                for q in frame {
                    out.insert(*q, 0);
                }
            }
        }
    }
    fn build(a: &Classical, ix: &BTreeMap<Qubit, usize>) -> Prop {
        let b = |x: &Classical| Box::new(build(x, ix));
        match a {
            Classical::Qubit(q) => Prop::Var(ix[q]),
            Classical::Top => Prop::Const(true),
            Classical::Bot => Prop::Const(false),
            Classical::Neg(x) => Prop::Not(b(x)),
            Classical::Imp(x, y) => Prop::Imp(b(x), b(y)),
            Classical::And(x, y) => Prop::And(b(x), b(y)),
            Classical::Or(x, y) => Prop::Or(b(x), b(y)),
            Classical::Iff(x, y) => Prop::Iff(b(x), b(y)),
            Classical::Molecular { frame, set } => frame.iter().fold(Prop::Const(true), |acc, q| {
                let lit = if set.contains(q) { Prop::Var(ix[q]) } else { Prop::Not(Box::new(Prop::Var(ix[q]))) };
                Prop::And(Box::new(acc), Box::new(lit))
            }),
        }
    }
    let mut ix = BTreeMap::new();
    collect(a, &mut ix);
    let qubits: Vec<Qubit> = ix.keys().copied().collect();
    for (k, q) in qubits.iter().enumerate() {
        ix.insert(*q, k);
    }
    (build(a, &ix), qubits)
}

/// The propositional skeleton of a quantum formula: its core expansion with
/// each quantum atom replaced by a letter. Syntactically equal atoms share a
/// letter; letters are numbered by first occurrence.
#[derive(Clone, Debug, PartialEq)]
pub struct Skeleton {
    pub atoms: Vec<QuantumAtom>,
    pub prop: Prop,
}

impl Skeleton {
    pub fn of(g: &Quantum) -> Result<Skeleton, ExpandError> {
        let core = expand_quantum(g)?;
        let mut atoms = Vec::new();
        let prop = Self::build(&core, &mut atoms);
        Ok(Skeleton { atoms, prop })
    }

    /// Skeleton over a fixed, shared atom list; atoms not yet listed are
    /// appended.
    pub fn with_atoms(g: &Quantum, atoms: &mut Vec<QuantumAtom>) -> Result<Prop, ExpandError> {
        let core = expand_quantum(g)?;
        Ok(Self::build(&core, atoms))
    }

    fn build(g: &Quantum, atoms: &mut Vec<QuantumAtom>) -> Prop {
        let mut letter = |a: QuantumAtom| match atoms.iter().position(|x| *x == a) {
            Some(i) => Prop::Var(i),
            None => {
                atoms.push(a);
                Prop::Var(atoms.len() - 1)
            }
        };
        match g {
            Quantum::Classical(a) => letter(QuantumAtom::Classical(a.clone())),
            Quantum::Leq(a, b) => letter(QuantumAtom::Leq(a.clone(), b.clone())),
            Quantum::NonEtg(f) => letter(QuantumAtom::NonEtg(f.clone())),
            Quantum::Not(a) => Prop::Not(Box::new(Self::build(a, atoms))),
            Quantum::Imp(a, b) => {
                let a = Self::build(a, atoms);
                Prop::Imp(Box::new(a), Box::new(Self::build(b, atoms)))
            }
            _ => unreachable!("core expansion leaves only core connectives"),
        }
    }
}

/// Tautology checking mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Classical,
    Quantum,
}

/// Classical mode: `phi` must be a classical formula, checked by truth table
/// over its qubits. Quantum mode: the propositional skeleton is checked.
pub fn is_tautology(phi: &Quantum, mode: Mode) -> bool {
    match mode {
        Mode::Classical => match phi {
            Quantum::Classical(a) => classical_tautology(a),
            _ => false,
        },
        Mode::Quantum => match Skeleton::of(phi) {
            Ok(s) => prop_valid(&s.prop, s.atoms.len()),
            Err(_) => false,
        },
    }
}

pub fn classical_tautology(a: &Classical) -> bool {
    if crate::syntax::expand_classical(a).is_err() {
        return false;
    }
    let (p, qubits) = classical_prop(a);
    prop_valid(&p, qubits.len())
}
