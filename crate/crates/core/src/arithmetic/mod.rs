//! The arithmetical language: evaluation and a sound, partial validity
//! oracle.
//!
//! The oracle answers in three tiers. An exact decision procedure covers
//! formulas whose atoms are linear over real variables and the real and
//! imaginary parts of complex variables. A polynomial tier treats nonlinear
//! monomials and transcendental nodes as bounded unknowns and consults a table
//! of algebraic schemas; it can only prove validity. A randomized search with
//! local descent looks for falsifying assignments. Every `Invalid` verdict
//! carries a witness that has been re-checked by evaluation.

mod falsify;
pub mod linear;
mod patterns;
pub mod poly;

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::semantics::{satisfies, Assignment, SemanticsError};
use crate::structures::{QuantumStructure, Tolerances, C64};
use crate::syntax::{expand_quantum, free_symbols, Ast, ComplexTerm, ComplexVar, Quantum, RealTerm, RealVar};

use linear::{feasible, Feasibility, LinearConstraint, Rel};
use poly::{Atom, Monomial, Normalizer, Poly};

pub use falsify::falsify;
pub use patterns::match_pattern;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ArithError {
    #[error("not an arithmetical formula: {0}")]
    NotArithmetical(String),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
}

/// Which tier settled a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tier {
    Linear,
    Pattern,
    Sampling,
    /// Reported by an attached external prover.
    External,
}

#[derive(Clone, Debug, PartialEq)]
pub enum OracleVerdict {
    Valid(Tier),
    Invalid(Assignment),
    Unknown(String),
}

impl OracleVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, OracleVerdict::Valid(_))
    }
}

/// Effort caps and the seed for the sampling tier.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleBudget {
    pub samples: usize,
    pub eliminations: usize,
    pub max_atoms: usize,
    pub seed: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { samples: 10_000, eliminations: 1_000, max_atoms: 16, seed: 0 }
    }
}

/// A validity oracle for arithmetical formulas.
pub trait Oracle {
    fn check(&self, phi: &Quantum) -> OracleVerdict;
}

/// The built-in three-tier oracle.
#[derive(Clone, Debug, Default)]
pub struct BuiltinOracle {
    pub budget: OracleBudget,
}

impl Oracle for BuiltinOracle {
    fn check(&self, phi: &Quantum) -> OracleVerdict {
        oracle_check(phi, &self.budget)
    }
}

/// Finds the first node that keeps `phi` out of the arithmetical language.
pub fn non_arithmetical_node(phi: &Quantum) -> Option<String> {
    fn real(t: &RealTerm) -> Option<String> {
        match t {
            RealTerm::Var(_) | RealTerm::Const(_) => None,
            RealTerm::Prob(_) => Some("probability term".into()),
            RealTerm::SumSq { .. } => Some("amplitude sum".into()),
            RealTerm::Add(a, b) | RealTerm::Mul(a, b) => real(a).or_else(|| real(b)),
            RealTerm::Re(u) | RealTerm::Im(u) | RealTerm::Arg(u) | RealTerm::Abs(u) => complex(u),
        }
    }
    fn complex(u: &ComplexTerm) -> Option<String> {
        match u {
            ComplexTerm::Var(_) => None,
            ComplexTerm::Amp { .. } | ComplexTerm::AmpOf { .. } => Some("amplitude term".into()),
            ComplexTerm::Ite(..) => Some("alternative term".into()),
            ComplexTerm::Cart(a, b) | ComplexTerm::Polar(a, b) => real(a).or_else(|| real(b)),
            ComplexTerm::Conj(a) => complex(a),
            ComplexTerm::Add(a, b) | ComplexTerm::Mul(a, b) => complex(a).or_else(|| complex(b)),
        }
    }
    match phi {
        Quantum::Leq(a, b) | Quantum::Lt(a, b) | Quantum::EqR(a, b) => real(a).or_else(|| real(b)),
        Quantum::EqC(a, b) => complex(a).or_else(|| complex(b)),
        Quantum::Not(a) => non_arithmetical_node(a),
        Quantum::Imp(a, b) | Quantum::Or(a, b) | Quantum::And(a, b) | Quantum::Iff(a, b) => {
            non_arithmetical_node(a).or_else(|| non_arithmetical_node(b))
        }
        Quantum::Molecular(lits) => lits.iter().find_map(|(a, _)| non_arithmetical_node(&a.to_formula())),
        Quantum::Classical(a) if crate::syntax::classical_qubits(a).is_empty() => None,
        Quantum::Classical(_) => Some("classical formula".into()),
        Quantum::NonEtg(_) | Quantum::Cond { .. } | Quantum::Entangled { .. } => {
            Some("non-entanglement assertion".into())
        }
        Quantum::Poss { .. } => Some("possibility assertion".into()),
        Quantum::Dia(_) | Quantum::Box(_) => Some("probability modality".into()),
    }
}

pub fn is_arithmetical(phi: &Quantum) -> bool {
    non_arithmetical_node(phi).is_none()
}

/// Truth of an arithmetical formula under `rho`, comparisons with slack
/// `tol.cmp`.
pub fn eval_arith(phi: &Quantum, rho: &Assignment, tol: &Tolerances) -> Result<bool, ArithError> {
    if let Some(node) = non_arithmetical_node(phi) {
        return Err(ArithError::NotArithmetical(node));
    }
    Ok(satisfies(&QuantumStructure::empty(), rho, phi, tol)?)
}

/// Replaces every minimal non-arithmetical term (probabilities, amplitude
/// terms, alternative terms) by a fresh variable, identical subterms by the
/// same variable. The result is arithmetical unless `phi` has classical or
/// non-entanglement subformulas.
pub fn abstract_terms(phi: &Quantum) -> Quantum {
    let syms = free_symbols(&Ast::Quantum(phi.clone()));
    let mut a = Abstractor {
        next_real: syms.reals.iter().map(|v| v.0 + 1).max().unwrap_or(0),
        next_complex: syms.complexes.iter().map(|v| v.0 + 1).max().unwrap_or(0),
        reals: BTreeMap::new(),
        complexes: BTreeMap::new(),
    };
    a.quantum(phi)
}

struct Abstractor {
    next_real: u32,
    next_complex: u32,
    reals: BTreeMap<RealTerm, RealVar>,
    complexes: BTreeMap<ComplexTerm, ComplexVar>,
}

impl Abstractor {
    fn fresh_real(&mut self, t: &RealTerm) -> RealTerm {
        if let Some(v) = self.reals.get(t) {
            return RealTerm::Var(*v);
        }
        let v = RealVar(self.next_real);
        self.next_real += 1;
        self.reals.insert(t.clone(), v);
        RealTerm::Var(v)
    }

    fn fresh_complex(&mut self, u: &ComplexTerm) -> ComplexTerm {
        if let Some(v) = self.complexes.get(u) {
            return ComplexTerm::Var(*v);
        }
        let v = ComplexVar(self.next_complex);
        self.next_complex += 1;
        self.complexes.insert(u.clone(), v);
        ComplexTerm::Var(v)
    }

    fn real(&mut self, t: &RealTerm) -> RealTerm {
        match t {
            RealTerm::Var(_) | RealTerm::Const(_) => t.clone(),
            RealTerm::Prob(_) | RealTerm::SumSq { .. } => self.fresh_real(t),
            RealTerm::Add(a, b) => RealTerm::add(self.real(a), self.real(b)),
            RealTerm::Mul(a, b) => RealTerm::mul(self.real(a), self.real(b)),
            RealTerm::Re(u) => RealTerm::re(self.complex(u)),
            RealTerm::Im(u) => RealTerm::im(self.complex(u)),
            RealTerm::Arg(u) => RealTerm::arg(self.complex(u)),
            RealTerm::Abs(u) => RealTerm::abs(self.complex(u)),
        }
    }

    fn complex(&mut self, u: &ComplexTerm) -> ComplexTerm {
        match u {
            ComplexTerm::Var(_) => u.clone(),
            ComplexTerm::Amp { .. } | ComplexTerm::AmpOf { .. } | ComplexTerm::Ite(..) => self.fresh_complex(u),
            ComplexTerm::Cart(a, b) => ComplexTerm::cart(self.real(a), self.real(b)),
            ComplexTerm::Polar(a, b) => ComplexTerm::polar(self.real(a), self.real(b)),
            ComplexTerm::Conj(a) => ComplexTerm::conj(self.complex(a)),
            ComplexTerm::Add(a, b) => ComplexTerm::add(self.complex(a), self.complex(b)),
            ComplexTerm::Mul(a, b) => ComplexTerm::mul(self.complex(a), self.complex(b)),
        }
    }

    fn quantum(&mut self, g: &Quantum) -> Quantum {
        match g {
            Quantum::Leq(a, b) => Quantum::Leq(self.real(a), self.real(b)),
            Quantum::Lt(a, b) => Quantum::Lt(self.real(a), self.real(b)),
            Quantum::EqR(a, b) => Quantum::EqR(self.real(a), self.real(b)),
            Quantum::EqC(a, b) => Quantum::EqC(self.complex(a), self.complex(b)),
            Quantum::Not(a) => Quantum::not(self.quantum(a)),
            Quantum::Imp(a, b) => Quantum::imp(self.quantum(a), self.quantum(b)),
            Quantum::Or(a, b) => Quantum::or(self.quantum(a), self.quantum(b)),
            Quantum::And(a, b) => Quantum::and(self.quantum(a), self.quantum(b)),
            Quantum::Iff(a, b) => Quantum::iff(self.quantum(a), self.quantum(b)),
            Quantum::Dia(a) => Quantum::Lt(RealTerm::int(0), self.fresh_real(&RealTerm::prob(a.clone()))),
            Quantum::Box(a) => Quantum::EqR(RealTerm::int(1), self.fresh_real(&RealTerm::prob(a.clone()))),
            other => other.clone(),
        }
    }
}

/// Boolean skeleton over deduplicated polynomial atoms `p ≥ 0`.
#[derive(Clone, Debug)]
enum Skel {
    Const(bool),
    Atom(usize),
    Not(Box<Skel>),
    Imp(Box<Skel>, Box<Skel>),
}

impl Skel {
    fn eval(&self, val: &[Option<bool>]) -> Option<bool> {
        match self {
            Skel::Const(b) => Some(*b),
            Skel::Atom(i) => val[*i],
            Skel::Not(a) => a.eval(val).map(|b| !b),
            Skel::Imp(a, b) => match (a.eval(val), b.eval(val)) {
                (Some(false), _) | (_, Some(true)) => Some(true),
                (Some(true), Some(false)) => Some(false),
                _ => None,
            },
        }
    }
}

struct Problem {
    norm: Normalizer,
    atoms: Vec<Poly>,
    skel: Skel,
}

fn build(phi: &Quantum) -> Option<Problem> {
    let core = expand_quantum(phi).ok()?;
    let mut p = Problem { norm: Normalizer::new(), atoms: Vec::new(), skel: Skel::Atom(0) };
    let mut index: BTreeMap<Poly, usize> = BTreeMap::new();
    fn go(g: &Quantum, p: &mut Problem, index: &mut BTreeMap<Poly, usize>) -> Option<Skel> {
        Some(match g {
            Quantum::Leq(a, b) => {
                let pa = p.norm.real(a);
                let pb = p.norm.real(b);
                let d = pb.sub(&pa);
                let i = *index.entry(d.clone()).or_insert_with(|| {
                    p.atoms.push(d);
                    p.atoms.len() - 1
                });
                Skel::Atom(i)
            }
            Quantum::Classical(a) => Skel::Const(crate::semantics::eval_bits(a, &[], 0)),
            Quantum::Not(a) => Skel::Not(Box::new(go(a, p, index)?)),
            Quantum::Imp(a, b) => Skel::Imp(Box::new(go(a, p, index)?), Box::new(go(b, p, index)?)),
            _ => return None,
        })
    }
    p.skel = go(&core, &mut p, &mut index)?;
    Some(p)
}

enum RowOutcome {
    Infeasible,
    Counterexample(BTreeMap<usize, BigRational>),
    Undecided,
}

impl Problem {
    /// True when every atom is linear over plain variables.
    fn is_linear(&self) -> bool {
        self.atoms.iter().all(|p| p.degree() <= 1 && p.atoms().all(|i| self.norm.atoms[i].is_variable()))
    }

    fn check_row(&self, val: &[Option<bool>], budget: usize) -> RowOutcome {
        let mut vars: BTreeMap<Monomial, usize> = BTreeMap::new();
        let mut cs = Vec::new();
        let linear = |p: &Poly, vars: &mut BTreeMap<Monomial, usize>| {
            let mut coeffs = BTreeMap::new();
            let mut constant = BigRational::zero();
            for (m, c) in &p.terms {
                if m.is_empty() {
                    constant = c.clone();
                } else {
                    let n = vars.len();
                    let v = *vars.entry(m.clone()).or_insert(n);
                    coeffs.insert(v, c.clone());
                }
            }
            (coeffs, constant)
        };
        for (i, b) in val.iter().enumerate() {
            let Some(b) = b else { continue };
            let (coeffs, constant) = linear(&self.atoms[i], &mut vars);
            cs.push(if *b {
                LinearConstraint::new(coeffs, constant, Rel::Ge)
            } else {
                LinearConstraint::new(coeffs.into_iter().map(|(k, c)| (k, -c)).collect(), -constant, Rel::Gt)
            });
        }
        let mut exact = true;
        for (m, v) in &vars {
            let plain = m.len() == 1 && m[0].1 == 1 && self.norm.atoms[m[0].0].is_variable();
            if plain {
                continue;
            }
            exact = false;
            let unit = |k: usize| BTreeMap::from([(k, BigRational::one())]);
            let nonneg = m.iter().all(|(i, e)| e % 2 == 0 || matches!(self.norm.atoms[*i], Atom::Abs(_)));
            if nonneg {
                cs.push(LinearConstraint::new(unit(*v), BigRational::zero(), Rel::Ge));
            }
            if let Some((lo, hi)) = self.monomial_bounds(m) {
                cs.push(LinearConstraint::new(unit(*v), -lo, Rel::Ge));
                let neg = BTreeMap::from([(*v, -BigRational::one())]);
                cs.push(LinearConstraint::new(neg, hi, Rel::Ge));
            } else if m.len() == 1 && m[0].1 == 1 {
                let (lo, hi) = self.norm.bounds(m[0].0);
                if let Some(lo) = lo {
                    cs.push(LinearConstraint::new(unit(*v), -lo, Rel::Ge));
                }
                if let Some(hi) = hi {
                    let neg = BTreeMap::from([(*v, -BigRational::one())]);
                    cs.push(LinearConstraint::new(neg, hi, Rel::Ge));
                }
            }
        }
        match feasible(&cs, budget) {
            Feasibility::Infeasible => RowOutcome::Infeasible,
            Feasibility::Feasible(x) if exact => {
                let mut point = BTreeMap::new();
                for (m, v) in &vars {
                    point.insert(m[0].0, x.get(v).cloned().unwrap_or_else(BigRational::zero));
                }
                RowOutcome::Counterexample(point)
            }
            _ => RowOutcome::Undecided,
        }
    }

    /// Bounds for a monomial built only from numeric constants.
    fn monomial_bounds(&self, m: &Monomial) -> Option<(BigRational, BigRational)> {
        let mut value = 1.0f64;
        for (i, e) in m {
            let Atom::Numeric(t) = &self.norm.atoms[*i] else { return None };
            value *= poly::numeric_value(t)?.powi(*e as i32);
        }
        if m.len() == 1 && m[0].1 == 1 {
            return None;
        }
        let d = 1e-12 * value.abs().max(1.0);
        let r = |x: f64| BigRational::from_float(x);
        Some((r(value - d)?, r(value + d)?))
    }

    fn witness(&self, point: &BTreeMap<usize, BigRational>, phi: &Quantum) -> Assignment {
        let mut rho = zero_assignment(phi);
        for (i, x) in point {
            let x = x.to_f64().unwrap_or(0.0);
            match &self.norm.atoms[*i] {
                Atom::Real(v) => {
                    rho.reals.insert(*v, x);
                }
                Atom::Re(z) => rho.complexes.entry(*z).or_insert(C64::new(0.0, 0.0)).re = x,
                Atom::Im(z) => rho.complexes.entry(*z).or_insert(C64::new(0.0, 0.0)).im = x,
                _ => {}
            }
        }
        rho
    }
}

/// The assignment mapping every free variable of `phi` to zero.
pub fn zero_assignment(phi: &Quantum) -> Assignment {
    let s = free_symbols(&Ast::Quantum(phi.clone()));
    Assignment {
        reals: s.reals.into_iter().map(|v| (v, 0.0)).collect(),
        complexes: s.complexes.into_iter().map(|v| (v, C64::new(0.0, 0.0))).collect(),
    }
}

enum Search {
    Valid,
    Counterexample(BTreeMap<usize, BigRational>),
    Undecided,
}

fn search(p: &Problem, budget: &OracleBudget) -> Search {
    let n = p.atoms.len();
    let mut val = vec![None; n];
    let mut undecided = false;
    let mut leaves = 0usize;
    fn rec(
        p: &Problem,
        val: &mut Vec<Option<bool>>,
        k: usize,
        budget: &OracleBudget,
        undecided: &mut bool,
        leaves: &mut usize,
    ) -> Option<BTreeMap<usize, BigRational>> {
        match p.skel.eval(val) {
            Some(true) => return None,
            Some(false) => {
                *leaves += 1;
                if *leaves > budget.eliminations {
                    *undecided = true;
                    return None;
                }
                return match p.check_row(val, budget.eliminations) {
                    RowOutcome::Infeasible => None,
                    RowOutcome::Counterexample(x) => Some(x),
                    RowOutcome::Undecided => {
                        *undecided = true;
                        None
                    }
                };
            }
            None => {}
        }
        for b in [true, false] {
            val[k] = Some(b);
            if let Some(x) = rec(p, val, k + 1, budget, undecided, leaves) {
                return Some(x);
            }
        }
        val[k] = None;
        None
    }
    match rec(p, &mut val, 0, budget, &mut undecided, &mut leaves) {
        Some(x) => Search::Counterexample(x),
        None if undecided => Search::Undecided,
        None => Search::Valid,
    }
}

/// Sound, partial validity check for an arithmetical formula.
pub fn oracle_check(phi: &Quantum, budget: &OracleBudget) -> OracleVerdict {
    if let Some(node) = non_arithmetical_node(phi) {
        return OracleVerdict::Unknown(format!("not arithmetical: {node}"));
    }
    let tol = Tolerances::default();
    let verified = |rho: &Assignment| matches!(eval_arith(phi, rho, &tol), Ok(false));
    if let Some(p) = build(phi) {
        if p.atoms.len() <= budget.max_atoms {
            let linear = p.is_linear();
            match search(&p, budget) {
                Search::Valid => return OracleVerdict::Valid(if linear { Tier::Linear } else { Tier::Pattern }),
                Search::Counterexample(x) => {
                    let rho = p.witness(&x, phi);
                    if verified(&rho) {
                        return OracleVerdict::Invalid(rho);
                    }
                }
                Search::Undecided => {}
            }
        }
    }
    if match_pattern(phi).is_some() {
        return OracleVerdict::Valid(Tier::Pattern);
    }
    if let Some(rho) = falsify(phi, budget) {
        if verified(&rho) {
            return OracleVerdict::Invalid(rho);
        }
    }
    OracleVerdict::Unknown("no tier settled the formula".into())
}

/// Feasibility of a conjunction of linear atoms given as `(lhs, rhs, strict)`
/// meaning `lhs ≤ rhs` or `lhs < rhs`; nonlinear parts are treated as bounded
/// unknowns. `Some(false)` is a proof of infeasibility.
pub fn linear_feasible(atoms: &[(RealTerm, RealTerm, bool)], budget: usize) -> Option<bool> {
    let mut norm = Normalizer::new();
    let mut polys = Vec::new();
    for (a, b, strict) in atoms {
        let d = norm.real(b).sub(&norm.real(a));
        polys.push((d, *strict));
    }
    // A strict atom `a < b` is the negation of `b ≤ a`.
    let flipped = Problem {
        norm,
        atoms: polys.iter().map(|(d, strict)| if *strict { d.neg() } else { d.clone() }).collect(),
        skel: Skel::Atom(0),
    };
    let cs_val: Vec<Option<bool>> = polys.iter().map(|(_, strict)| Some(!strict)).collect();
    match flipped.check_row(&cs_val, budget) {
        RowOutcome::Infeasible => Some(false),
        RowOutcome::Counterexample(_) => Some(true),
        RowOutcome::Undecided => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_quantum, Aliases};

    fn q(s: &str) -> Quantum {
        parse_quantum(s, &Aliases::new()).unwrap()
    }

    fn check(s: &str) -> OracleVerdict {
        oracle_check(&q(s), &OracleBudget::default())
    }

    #[test]
    fn transitivity_is_valid_by_the_linear_tier() {
        let v = check("(((x1 <= x2) && (x2 <= x3)) ==> (x1 <= x3))");
        assert_eq!(v, OracleVerdict::Valid(Tier::Linear));
    }

    #[test]
    fn square_roots_of_minus_one_are_valid_by_pattern() {
        let v = check("(((z1 * z1) = -1) ==> ((z1 = (0 + i 1)) || (z1 = (0 + i -1))))");
        assert_eq!(v, OracleVerdict::Valid(Tier::Pattern));
    }

    #[test]
    fn successor_bound_is_valid() {
        assert_eq!(check("(x1 <= (x1 + 1))"), OracleVerdict::Valid(Tier::Linear));
    }

    #[test]
    fn comparison_of_two_variables_is_invalid_with_a_checked_witness() {
        let phi = q("(x1 <= x2)");
        let OracleVerdict::Invalid(rho) = oracle_check(&phi, &OracleBudget::default()) else {
            panic!("expected a witness");
        };
        assert!(rho.reals[&RealVar(1)] > rho.reals[&RealVar(2)]);
        assert_eq!(eval_arith(&phi, &rho, &Tolerances::default()), Ok(false));
    }

    #[test]
    fn squares_are_nonnegative() {
        assert!(check("(0 <= (x1 * x1))").is_valid());
        assert!(check("(0 <= ((x1 * x1) + (x2 * x2)))").is_valid());
        assert!(check("(0 <= abs(z1))").is_valid());
        assert!(check("(0 <= (abs(z1) * abs(z1)))").is_valid());
    }

    #[test]
    fn modulus_square_expands_into_parts() {
        assert!(check("((abs(z1) * abs(z1)) = ((re(z1) * re(z1)) + (im(z1) * im(z1))))").is_valid());
    }

    #[test]
    fn nonlinear_falsehoods_get_witnesses() {
        for s in ["((x1 * x1) <= x1)", "(abs(z1) <= 1)", "((x1 * x2) <= 3)"] {
            let phi = q(s);
            match oracle_check(&phi, &OracleBudget::default()) {
                OracleVerdict::Invalid(rho) => {
                    assert_eq!(eval_arith(&phi, &rho, &Tolerances::default()), Ok(false), "{s}")
                }
                v => panic!("{s}: {v:?}"),
            }
        }
    }

    #[test]
    fn strict_self_comparison_is_false() {
        let rho = Assignment::new().with_real(1, 0.25);
        assert_eq!(eval_arith(&q("(x1 < x1)"), &rho, &Tolerances::default()), Ok(false));
    }

    #[test]
    fn probabilities_are_not_arithmetical() {
        assert!(!is_arithmetical(&q("(Pr(qb0) <= 1)")));
        assert!(matches!(check("(Pr(qb0) <= 1)"), OracleVerdict::Unknown(_)));
    }

    #[test]
    fn abstraction_shares_variables_for_equal_subterms() {
        let phi = q("((Pr(top) = sumsq{qb0}) ==> ((sumsq{qb0} = 1) ==> (Pr(top) = 1)))");
        let a = abstract_terms(&phi);
        assert!(is_arithmetical(&a));
        assert_eq!(free_symbols(&Ast::Quantum(a.clone())).reals.len(), 2);
        assert_eq!(oracle_check(&a, &OracleBudget::default()), OracleVerdict::Valid(Tier::Linear));
    }

    #[test]
    fn the_oracle_is_deterministic() {
        let phi = q("((x1 * x2) <= (x1 + x2))");
        let b = OracleBudget { seed: 7, ..OracleBudget::default() };
        assert_eq!(oracle_check(&phi, &b), oracle_check(&phi, &b));
    }

    #[test]
    fn linear_feasibility_of_atoms() {
        let x = || RealTerm::var(1);
        let atoms = [(x(), RealTerm::int(0), true), (RealTerm::int(0), x(), false)];
        assert_eq!(linear_feasible(&atoms, 100), Some(false));
        let atoms = [(x(), RealTerm::int(1), true), (RealTerm::int(0), x(), true)];
        assert_eq!(linear_feasible(&atoms, 100), Some(true));
    }
}
