//! Constraint systems for a fixed admissible set and partition.

use std::collections::BTreeMap;

use super::expr::{self, Ex};
use crate::semantics::eval_bits;
use crate::structures::{gather, mask_of, C64};
use crate::syntax::{Classical, ComplexTerm, ComplexVar, Qubit, QubitSet, RealTerm, RealVar};

/// Unknowns of a system: block amplitudes, free amplitude defaults and the
/// variables of the formula. Complex unknowns take two consecutive slots.
#[derive(Clone, Debug, PartialEq)]
pub struct Layout {
    pub frame: QubitSet,
    /// Admissible valuations as bit masks over the frame.
    pub admissible: Vec<u64>,
    pub partition: Vec<QubitSet>,
    /// Per block and local valuation: first slot of the amplitude, `None` when
    /// the valuation is not the restriction of an admissible one.
    pub blocks: Vec<Vec<Option<usize>>>,
    pub nu: BTreeMap<(QubitSet, QubitSet), usize>,
    pub reals: BTreeMap<RealVar, usize>,
    pub complexes: BTreeMap<ComplexVar, usize>,
    pub size: usize,
}

/// `lhs ≤ rhs` when `positive`, otherwise its negation.
#[derive(Clone, Debug, PartialEq)]
pub struct Literal {
    pub lhs: Ex,
    pub rhs: Ex,
    pub positive: bool,
}

/// A system to be solved: equations that must vanish and comparison
/// literals, over a [`Layout`].
#[derive(Clone, Debug, PartialEq)]
pub struct ConstraintSystem {
    pub layout: Layout,
    pub equations: Vec<Ex>,
    pub literals: Vec<Literal>,
}

impl ConstraintSystem {
    /// Number of unit-norm equations, one per block.
    pub fn unit_equations(&self) -> usize {
        self.layout.partition.len()
    }
}

/// Compiles terms once the admissible set and the partition are fixed.
pub struct Compiler {
    pub layout: Layout,
    qubits: Vec<Qubit>,
    positions: Vec<Vec<usize>>,
}

fn positions(frame: &QubitSet, sub: &QubitSet) -> Vec<usize> {
    frame.iter().enumerate().filter(|(_, q)| sub.contains(q)).map(|(i, _)| i).collect()
}

impl Compiler {
    pub fn new(frame: &QubitSet, admissible: &[u64], partition: &[QubitSet]) -> Compiler {
        let mut size = 0;
        let mut blocks = Vec::new();
        let mut all_pos = Vec::new();
        for b in partition {
            let pos = positions(frame, b);
            let mut entries = vec![None; 1 << b.len()];
            for k in admissible {
                let a = gather(*k, &pos) as usize;
                if entries[a].is_none() {
                    entries[a] = Some(size);
                    size += 2;
                }
            }
            blocks.push(entries);
            all_pos.push(pos);
        }
        Compiler {
            layout: Layout {
                frame: frame.clone(),
                admissible: admissible.to_vec(),
                partition: partition.to_vec(),
                blocks,
                nu: BTreeMap::new(),
                reals: BTreeMap::new(),
                complexes: BTreeMap::new(),
                size,
            },
            qubits: frame.iter().copied().collect(),
            positions: all_pos,
        }
    }

    fn slot(&mut self) -> usize {
        self.layout.size += 1;
        self.layout.size - 1
    }

    fn complex_param(re: usize) -> Ex {
        Ex::Param { re, im: Some(re + 1) }
    }

    fn entry(&self, block: usize, local: u64) -> Ex {
        match self.layout.blocks[block][local as usize] {
            Some(i) => Self::complex_param(i),
            None => Ex::zero(),
        }
    }

    /// `ψ(k)` as a product of block amplitudes.
    pub fn psi(&self, k: u64) -> Ex {
        expr::product((0..self.layout.partition.len()).map(|b| self.entry(b, gather(k, &self.positions[b]))))
    }

    /// Global truth of a classical formula: every admissible valuation
    /// satisfies it.
    pub fn classical(&self, a: &Classical) -> bool {
        self.layout.admissible.iter().all(|k| eval_bits(a, &self.qubits, *k))
    }

    pub fn is_union(&self, g: &QubitSet) -> bool {
        self.layout.partition.iter().all(|b| b.is_subset(g) || b.is_disjoint(g))
    }

    fn amp(&mut self, g: &QubitSet, a: &QubitSet) -> Ex {
        if self.is_union(g) {
            let parts: Vec<Ex> = (0..self.layout.partition.len())
                .filter(|b| self.layout.partition[*b].is_subset(g))
                .map(|b| self.entry(b, mask_of(&self.layout.partition[b], a)))
                .collect();
            expr::product(parts)
        } else {
            let key = (g.clone(), a.clone());
            let i = match self.layout.nu.get(&key) {
                Some(i) => *i,
                None => {
                    let i = self.slot();
                    self.slot();
                    self.layout.nu.insert(key, i);
                    i
                }
            };
            Self::complex_param(i)
        }
    }

    fn prob(&self, a: &Classical) -> Ex {
        let admitted: Vec<u64> =
            self.layout.admissible.iter().copied().filter(|k| eval_bits(a, &self.qubits, *k)).collect();
        expr::sum(admitted.into_iter().map(|k| expr::unary(Ex::Norm2, self.psi(k))))
    }

    pub fn real(&mut self, t: &RealTerm) -> Ex {
        match t {
            RealTerm::Var(v) => {
                let i = match self.layout.reals.get(v) {
                    Some(i) => *i,
                    None => {
                        let i = self.slot();
                        self.layout.reals.insert(*v, i);
                        i
                    }
                };
                Ex::Param { re: i, im: None }
            }
            RealTerm::Const(c) => Ex::Const(C64::new(c.value(), 0.0)),
            RealTerm::Prob(a) => self.prob(a),
            RealTerm::Add(a, b) => {
                let a = self.real(a);
                expr::add(a, self.real(b))
            }
            RealTerm::Mul(a, b) => {
                let a = self.real(a);
                expr::mul(a, self.real(b))
            }
            RealTerm::Re(u) => expr::unary(Ex::Re, self.complex(u)),
            RealTerm::Im(u) => expr::unary(Ex::Im, self.complex(u)),
            RealTerm::Arg(u) => expr::unary(Ex::Arg, self.complex(u)),
            RealTerm::Abs(u) => expr::unary(Ex::Abs, self.complex(u)),
            RealTerm::SumSq { .. } => match crate::syntax::expand_real(t) {
                Ok(core) => self.real(&core),
                Err(_) => Ex::zero(),
            },
        }
    }

    pub fn complex(&mut self, u: &ComplexTerm) -> Ex {
        match u {
            ComplexTerm::Var(v) => {
                let i = match self.layout.complexes.get(v) {
                    Some(i) => *i,
                    None => {
                        let i = self.slot();
                        self.slot();
                        self.layout.complexes.insert(*v, i);
                        i
                    }
                };
                Self::complex_param(i)
            }
            ComplexTerm::Amp { frame, set } => self.amp(frame, set),
            ComplexTerm::Cart(a, b) => {
                let re = self.real(a);
                let im = self.real(b);
                expr::add(expr::unary(Ex::Re, re), expr::mul(Ex::Const(C64::new(0.0, 1.0)), expr::unary(Ex::Re, im)))
            }
            ComplexTerm::Polar(r, t) => {
                let r = self.real(r);
                expr::polar(r, self.real(t))
            }
            ComplexTerm::Conj(a) => expr::unary(Ex::Conj, self.complex(a)),
            ComplexTerm::Add(a, b) => {
                let a = self.complex(a);
                expr::add(a, self.complex(b))
            }
            ComplexTerm::Mul(a, b) => {
                let a = self.complex(a);
                expr::mul(a, self.complex(b))
            }
            ComplexTerm::Ite(g, a, b) => {
                if self.classical(g) {
                    self.complex(a)
                } else {
                    self.complex(b)
                }
            }
            ComplexTerm::AmpOf { frame, set, guard } => {
                if **guard == Classical::Top {
                    return self.amp(frame, set);
                }
                let test = Classical::imp(crate::syntax::molecular_classical(frame, set), (**guard).clone());
                if self.classical(&test) {
                    self.amp(frame, set)
                } else {
                    Ex::zero()
                }
            }
        }
    }

    /// Unit norm of every block and vanishing amplitude outside the
    /// admissible set, split into real and imaginary parts.
    pub fn structural_equations(&self) -> Vec<Ex> {
        let mut out = Vec::new();
        for b in 0..self.layout.partition.len() {
            let norm =
                expr::sum((0..self.layout.blocks[b].len() as u64).map(|a| expr::unary(Ex::Norm2, self.entry(b, a))));
            out.push(expr::sub(norm, Ex::one()));
        }
        let n = self.qubits.len();
        for k in 0..(1u64 << n) {
            if self.layout.admissible.contains(&k) {
                continue;
            }
            let psi = self.psi(k);
            if psi.constant().is_none() {
                out.push(expr::unary(Ex::Re, psi.clone()));
                out.push(expr::unary(Ex::Im, psi));
            }
        }
        out
    }

    /// Exact-arithmetic view of a real term: alternative terms resolved,
    /// amplitudes and probabilities that are identically zero or one replaced
    /// by constants, everything else kept for opaque treatment.
    pub fn settle_real(&mut self, t: &RealTerm) -> RealTerm {
        match t {
            RealTerm::Var(_) | RealTerm::Const(_) | RealTerm::SumSq { .. } => t.clone(),
            RealTerm::Prob(a) => match self.prob(a).constant() {
                Some(z) if z.re == 0.0 => RealTerm::int(0),
                _ => t.clone(),
            },
            RealTerm::Add(a, b) => RealTerm::add(self.settle_real(a), self.settle_real(b)),
            RealTerm::Mul(a, b) => RealTerm::mul(self.settle_real(a), self.settle_real(b)),
            RealTerm::Re(u) => RealTerm::re(self.settle_complex(u)),
            RealTerm::Im(u) => RealTerm::im(self.settle_complex(u)),
            RealTerm::Arg(u) => RealTerm::arg(self.settle_complex(u)),
            RealTerm::Abs(u) => RealTerm::abs(self.settle_complex(u)),
        }
    }

    pub fn settle_complex(&mut self, u: &ComplexTerm) -> ComplexTerm {
        match u {
            ComplexTerm::Var(_) | ComplexTerm::AmpOf { .. } => u.clone(),
            ComplexTerm::Amp { frame, set } => match self.amp(frame, set).constant() {
                Some(z) if z == C64::new(0.0, 0.0) => ComplexTerm::int(0),
                Some(z) if z == C64::new(1.0, 0.0) => ComplexTerm::int(1),
                _ => u.clone(),
            },
            ComplexTerm::Cart(a, b) => ComplexTerm::cart(self.settle_real(a), self.settle_real(b)),
            ComplexTerm::Polar(a, b) => ComplexTerm::polar(self.settle_real(a), self.settle_real(b)),
            ComplexTerm::Conj(a) => ComplexTerm::conj(self.settle_complex(a)),
            ComplexTerm::Add(a, b) => ComplexTerm::add(self.settle_complex(a), self.settle_complex(b)),
            ComplexTerm::Mul(a, b) => ComplexTerm::mul(self.settle_complex(a), self.settle_complex(b)),
            ComplexTerm::Ite(g, a, b) => {
                if self.classical(g) {
                    self.settle_complex(a)
                } else {
                    self.settle_complex(b)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::qubits;

    #[test]
    fn single_qubit_layout() {
        let f = qubits([0]);
        let c = Compiler::new(&f, &[0, 1], std::slice::from_ref(&f));
        assert_eq!(c.layout.size, 4);
        let eqs = c.structural_equations();
        assert_eq!(eqs.len(), 1);
        assert!(eqs[0].eval(&[0.6, 0.0, 0.8, 0.0]).re.abs() < 1e-12);
    }

    #[test]
    fn refuted_valuation_has_no_unknown() {
        let f = qubits([0]);
        let mut c = Compiler::new(&f, &[1], std::slice::from_ref(&f));
        assert_eq!(c.layout.size, 2);
        assert_eq!(c.complex(&ComplexTerm::amp(f.clone(), QubitSet::new())), Ex::zero());
        assert_eq!(c.settle_complex(&ComplexTerm::amp(f, QubitSet::new())), ComplexTerm::int(0));
    }

    #[test]
    fn non_product_admissible_sets_get_vanishing_equations() {
        let f = qubits([0, 1]);
        let c = Compiler::new(&f, &[0, 3], &[qubits([0]), qubits([1])]);
        assert_eq!(c.structural_equations().len(), 2 + 4);
    }

    #[test]
    fn amplitudes_of_non_unions_are_free() {
        let f = qubits([0, 1]);
        let mut c = Compiler::new(&f, &[0, 1, 2, 3], std::slice::from_ref(&f));
        let before = c.layout.size;
        let z = c.complex(&ComplexTerm::amp(qubits([0]), QubitSet::new()));
        assert_eq!(z, Ex::Param { re: before, im: Some(before + 1) });
        assert_eq!(c.complex(&ComplexTerm::amp(qubits([0]), QubitSet::new())), z);
        assert_eq!(c.complex(&ComplexTerm::amp(QubitSet::new(), QubitSet::new())), Ex::one());
    }

    #[test]
    fn alternative_terms_follow_the_admissible_set() {
        let f = qubits([0]);
        let mut c = Compiler::new(&f, &[1], std::slice::from_ref(&f));
        let ite = ComplexTerm::ite(Classical::qb(0), ComplexTerm::int(1), ComplexTerm::int(0));
        assert_eq!(c.complex(&ite), Ex::one());
        assert_eq!(c.settle_complex(&ite), ComplexTerm::int(1));
    }
}
