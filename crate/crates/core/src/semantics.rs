//! Classical satisfaction, extents, the measurement measure, term denotation
//! and satisfaction of quantum formulas over finite structures.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::structures::{
    gather, positions, project_valuations, scatter, QuantumStructure, Side, StructureError, Tolerances, Valuation, C64,
};
use crate::syntax::{
    cond_equations, free_symbols, molecular_classical, subsets, Ast, Classical, ComplexTerm, ComplexVar, Quantum,
    Qubit, QubitSet, RealTerm, RealVar,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SemanticsError {
    #[error("real variable {0} is not assigned")]
    UnboundReal(RealVar),
    #[error("complex variable {0} is not assigned")]
    UnboundComplex(ComplexVar),
    #[error("qubit {0} is outside the frame")]
    OutOfFrame(Qubit),
    #[error("proviso violated: {0}")]
    Proviso(String),
}

impl From<StructureError> for SemanticsError {
    fn from(e: StructureError) -> Self {
        match e {
            StructureError::OutOfFrame(q) => SemanticsError::OutOfFrame(q),
            other => SemanticsError::Proviso(other.to_string()),
        }
    }
}

type Result<T> = std::result::Result<T, SemanticsError>;

/// Values for real and complex variables.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Assignment {
    pub reals: BTreeMap<RealVar, f64>,
    pub complexes: BTreeMap<ComplexVar, C64>,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_real(mut self, k: u32, x: f64) -> Self {
        self.reals.insert(RealVar(k), x);
        self
    }

    pub fn with_complex(mut self, k: u32, z: C64) -> Self {
        self.complexes.insert(ComplexVar(k), z);
        self
    }

    pub fn real(&self, v: RealVar) -> Result<f64> {
        self.reals.get(&v).copied().ok_or(SemanticsError::UnboundReal(v))
    }

    pub fn complex(&self, v: ComplexVar) -> Result<C64> {
        self.complexes.get(&v).copied().ok_or(SemanticsError::UnboundComplex(v))
    }
}

/// `v ⊨_c α`.
pub fn classical_sat(v: &Valuation, alpha: &Classical) -> Result<bool> {
    let frame = v.frame();
    check_qubits(&free_symbols(&Ast::Classical(alpha.clone())).qubits, &frame)?;
    Ok(eval_bits(alpha, &frame.iter().copied().collect::<Vec<_>>(), v.bits()))
}

/// `ext(α)^S_V = {v ∈ V_[S] : v ⊨_c α}`.
pub fn extent(alpha: &Classical, vals: &[Valuation], s: &QubitSet) -> Result<BTreeSet<Valuation>> {
    check_qubits(&free_symbols(&Ast::Classical(alpha.clone())).qubits, s)?;
    let items: Vec<Qubit> = s.iter().copied().collect();
    for v in vals {
        check_qubits(s, &v.frame())?;
    }
    Ok(project_valuations(vals, s, Side::Inside).into_iter().filter(|v| eval_bits(alpha, &items, v.bits())).collect())
}

/// `μ^F_w(U) = Σ_{v'∈U} Σ_{v''∈V_]F[} |⟨v'⊕v''|ψ⟩|²`.
pub fn measure(w: &QuantumStructure, f: &QubitSet, u: &BTreeSet<Valuation>) -> Result<f64> {
    check_qubits(f, w.frame())?;
    let inside = positions(w.frame(), f)?;
    let rest: QubitSet = w.frame().difference(f).copied().collect();
    let outside = positions(w.frame(), &rest)?;
    let outer: BTreeSet<u64> = w.admissible_bits().iter().map(|b| gather(*b, &outside)).collect();
    let mut total = 0.0;
    for v in u {
        if v.frame() != *f {
            return Err(SemanticsError::Proviso(format!("valuation {v} is not over the measured set")));
        }
        let hi = scatter(v.bits(), &inside);
        for lo in &outer {
            total += w.psi().amplitude_bits(hi | scatter(*lo, &outside)).norm_sqr();
        }
    }
    Ok(total)
}

/// Denotation of a real term.
pub fn denote_real(w: &QuantumStructure, rho: &Assignment, t: &RealTerm) -> Result<f64> {
    check_qubits(&free_symbols(&Ast::Real(t.clone())).qubits, w.frame())?;
    Evaluator::new(w, rho, Tolerances::default()).real(t)
}

/// Denotation of a complex term.
pub fn denote_complex(w: &QuantumStructure, rho: &Assignment, u: &ComplexTerm) -> Result<C64> {
    check_qubits(&free_symbols(&Ast::Complex(u.clone())).qubits, w.frame())?;
    Evaluator::new(w, rho, Tolerances::default()).complex(u)
}

/// `w ρ ⊨ γ` with comparison slack `tol.cmp`.
pub fn satisfies(w: &QuantumStructure, rho: &Assignment, g: &Quantum, tol: &Tolerances) -> Result<bool> {
    check_qubits(&free_symbols(&Ast::Quantum(g.clone())).qubits, w.frame())?;
    Evaluator::new(w, rho, *tol).quantum(g)
}

fn check_qubits(used: &QubitSet, frame: &QubitSet) -> Result<()> {
    match used.difference(frame).next() {
        Some(q) => Err(SemanticsError::OutOfFrame(*q)),
        None => Ok(()),
    }
}

/// Truth of `α` at the valuation with bit mask `bits` over the sorted `frame`.
/// Qubits outside the frame read as false.
pub(crate) fn eval_bits(alpha: &Classical, frame: &[Qubit], bits: u64) -> bool {
    match alpha {
        Classical::Qubit(q) => frame.binary_search(q).map(|i| bits & (1 << i) != 0).unwrap_or(false),
        Classical::Top => true,
        Classical::Bot => false,
        Classical::Neg(a) => !eval_bits(a, frame, bits),
        Classical::Imp(a, b) => !eval_bits(a, frame, bits) || eval_bits(b, frame, bits),
        Classical::And(a, b) => eval_bits(a, frame, bits) && eval_bits(b, frame, bits),
        Classical::Or(a, b) => eval_bits(a, frame, bits) || eval_bits(b, frame, bits),
        Classical::Iff(a, b) => eval_bits(a, frame, bits) == eval_bits(b, frame, bits),
        Classical::Molecular { frame: f, set } => f.iter().all(|q| {
            let value = frame.binary_search(q).map(|i| bits & (1 << i) != 0).unwrap_or(false);
            value == set.contains(q)
        }),
    }
}

/// Evaluates terms and formulas against one structure and assignment. Sugared
/// nodes are evaluated by their defining expansions, without building them.
pub struct Evaluator<'a> {
    w: &'a QuantumStructure,
    rho: &'a Assignment,
    tol: Tolerances,
    frame: Vec<Qubit>,
}

impl<'a> Evaluator<'a> {
    pub fn new(w: &'a QuantumStructure, rho: &'a Assignment, tol: Tolerances) -> Self {
        Evaluator { w, rho, tol, frame: w.frame().iter().copied().collect() }
    }

    /// Global classical satisfaction: every admissible valuation satisfies `α`.
    pub fn classical(&self, alpha: &Classical) -> bool {
        self.w.admissible_bits().iter().all(|b| eval_bits(alpha, &self.frame, *b))
    }

    fn leq(&self, a: f64, b: f64) -> bool {
        a <= b + self.tol.cmp
    }

    fn eq(&self, a: f64, b: f64) -> bool {
        self.leq(a, b) && self.leq(b, a)
    }

    fn eq_c(&self, a: C64, b: C64) -> bool {
        self.eq(a.re, b.re) && self.eq(a.im, b.im)
    }

    pub fn prob(&self, alpha: &Classical) -> Result<f64> {
        let s = crate::syntax::free_symbols(&Ast::Classical(alpha.clone())).qubits;
        let ext = extent(alpha, &self.w.admissible(), &s)?;
        measure(self.w, &s, &ext)
    }

    pub fn real(&self, t: &RealTerm) -> Result<f64> {
        Ok(match t {
            RealTerm::Var(v) => self.rho.real(*v)?,
            RealTerm::Const(c) => c.value(),
            RealTerm::Prob(a) => self.prob(a)?,
            RealTerm::Add(a, b) => self.real(a)? + self.real(b)?,
            RealTerm::Mul(a, b) => self.real(a)? * self.real(b)?,
            RealTerm::Re(u) => self.complex(u)?.re,
            RealTerm::Im(u) => self.complex(u)?.im,
            RealTerm::Arg(u) => {
                let z = self.complex(u)?;
                if z.norm() == 0.0 {
                    0.0
                } else {
                    z.arg()
                }
            }
            RealTerm::Abs(u) => self.complex(u)?.norm(),
            RealTerm::SumSq { frame, guard } => {
                let mut total = 0.0;
                for set in subsets(frame) {
                    total += self.amp_of(frame, &set, guard)?.norm_sqr();
                }
                total
            }
        })
    }

    fn amp_of(&self, frame: &QubitSet, set: &QubitSet, guard: &Classical) -> Result<C64> {
        let qb = free_symbols(&Ast::Classical(guard.clone())).qubits;
        if !qb.is_subset(frame) {
            return Err(SemanticsError::Proviso("amplitude guard mentions qubits outside its frame".into()));
        }
        let amp = self.w.nu(frame, set)?;
        if *guard == Classical::Top {
            return Ok(amp);
        }
        let test = Classical::imp(molecular_classical(frame, set), guard.clone());
        Ok(if self.classical(&test) { amp } else { C64::new(0.0, 0.0) })
    }

    pub fn complex(&self, u: &ComplexTerm) -> Result<C64> {
        Ok(match u {
            ComplexTerm::Var(v) => self.rho.complex(*v)?,
            ComplexTerm::Amp { frame, set } => self.w.nu(frame, set)?,
            ComplexTerm::AmpOf { frame, set, guard } => self.amp_of(frame, set, guard)?,
            ComplexTerm::Cart(a, b) => C64::new(self.real(a)?, self.real(b)?),
            ComplexTerm::Polar(a, b) => C64::from_polar(self.real(a)?, self.real(b)?),
            ComplexTerm::Conj(a) => self.complex(a)?.conj(),
            ComplexTerm::Add(a, b) => self.complex(a)? + self.complex(b)?,
            ComplexTerm::Mul(a, b) => self.complex(a)? * self.complex(b)?,
            ComplexTerm::Ite(g, a, b) => {
                if self.classical(g) {
                    self.complex(a)?
                } else {
                    self.complex(b)?
                }
            }
        })
    }

    pub fn quantum(&self, g: &Quantum) -> Result<bool> {
        Ok(match g {
            Quantum::Classical(a) => self.classical(a),
            Quantum::Leq(a, b) => self.leq(self.real(a)?, self.real(b)?),
            Quantum::NonEtg(f) => self.w.is_union_of_blocks(f),
            Quantum::Not(a) => !self.quantum(a)?,
            Quantum::Imp(a, b) => !self.quantum(a)? || self.quantum(b)?,
            Quantum::Or(a, b) => self.quantum(a)? || self.quantum(b)?,
            Quantum::And(a, b) => self.quantum(a)? && self.quantum(b)?,
            Quantum::Iff(a, b) => self.quantum(a)? == self.quantum(b)?,
            Quantum::Lt(a, b) => {
                let (x, y) = (self.real(a)?, self.real(b)?);
                self.leq(x, y) && !self.leq(y, x)
            }
            Quantum::EqR(a, b) => self.eq(self.real(a)?, self.real(b)?),
            Quantum::EqC(a, b) => self.eq_c(self.complex(a)?, self.complex(b)?),
            Quantum::Cond { sub, frame } => {
                if !sub.is_subset(frame) {
                    return Err(SemanticsError::Proviso("conditional set is not a subset of its frame".into()));
                }
                for eq in cond_equations(sub, frame) {
                    if !self.quantum(&eq)? {
                        return Ok(false);
                    }
                }
                true
            }
            Quantum::Entangled { left, frame, right } => {
                if !frame.contains(left) || !frame.contains(right) {
                    return Err(SemanticsError::Proviso("entangled qubits must lie in the frame set".into()));
                }
                !subsets(frame).into_iter().any(|s| {
                    s.len() < frame.len() && s.contains(left) && !s.contains(right) && self.w.is_union_of_blocks(&s)
                })
            }
            Quantum::Poss { frame, items } => {
                for (alpha, u) in items {
                    if !self.possible(frame, alpha, u)? {
                        return Ok(false);
                    }
                }
                true
            }
            Quantum::Dia(a) => {
                let p = self.prob(a)?;
                self.leq(0.0, p) && !self.leq(p, 0.0)
            }
            Quantum::Box(a) => self.eq(1.0, self.prob(a)?),
            Quantum::Molecular(lits) => {
                for (atom, positive) in lits {
                    if self.quantum(&atom.to_formula())? != *positive {
                        return Ok(false);
                    }
                }
                true
            }
        })
    }

    fn possible(&self, frame: &QubitSet, alpha: &Classical, u: &ComplexTerm) -> Result<bool> {
        let qb = free_symbols(&Ast::Classical(alpha.clone())).qubits;
        if !qb.is_subset(frame) {
            return Err(SemanticsError::Proviso("possibility formula mentions qubits outside its frame".into()));
        }
        if !self.w.is_union_of_blocks(frame) {
            return Ok(false);
        }
        let z = self.complex(u)?;
        if !(self.leq(0.0, z.norm()) && !self.leq(z.norm(), 0.0)) {
            return Ok(false);
        }
        for set in subsets(frame) {
            if self.eq_c(self.amp_of(frame, &set, alpha)?, z) {
                return Ok(true);
            }
        }
        Ok(false)
    }
}
