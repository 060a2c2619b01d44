use thiserror::Error;

use super::ast::*;
use super::symbols::classical_qubits;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExpandError {
    #[error("proviso violated: {0}")]
    ProvisoViolation(String),
}

type Result<T> = std::result::Result<T, ExpandError>;

fn proviso(ok: bool, what: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(ExpandError::ProvisoViolation(what()))
    }
}

fn show(set: &QubitSet) -> String {
    let names: Vec<String> = set.iter().map(|q| q.to_string()).collect();
    format!("{{{}}}", names.join(","))
}

/// Rewrites every abbreviation into the core constructors.
pub fn expand(ast: &Ast) -> Result<Ast> {
    Ok(match ast {
        Ast::Classical(a) => Ast::Classical(expand_classical(a)?),
        Ast::Real(t) => Ast::Real(expand_real(t)?),
        Ast::Complex(u) => Ast::Complex(expand_complex(u)?),
        Ast::Quantum(g) => Ast::Quantum(expand_quantum(g)?),
    })
}

/// `(⋀_F A)` as a sugared conjunction: the qubits of `A` in order, then the
/// negated qubits of `F ∖ A`. Empty `F` gives `⊤`.
pub fn molecular_classical(frame: &QubitSet, set: &QubitSet) -> Classical {
    let pos = set.iter().map(|q| Classical::Qubit(*q));
    let neg = frame.difference(set).map(|q| Classical::not(Classical::Qubit(*q)));
    pos.chain(neg).reduce(Classical::and).unwrap_or(Classical::Top)
}

fn core_and(a: Classical, b: Classical) -> Classical {
    Classical::not(Classical::imp(a, Classical::not(b)))
}

pub fn expand_classical(a: &Classical) -> Result<Classical> {
    Ok(match a {
        Classical::Qubit(_) | Classical::Top => a.clone(),
        Classical::Neg(b) => Classical::not(expand_classical(b)?),
        Classical::Imp(x, y) => Classical::imp(expand_classical(x)?, expand_classical(y)?),
        Classical::Bot => Classical::not(Classical::Top),
        Classical::And(x, y) => core_and(expand_classical(x)?, expand_classical(y)?),
        Classical::Or(x, y) => Classical::imp(Classical::not(expand_classical(x)?), expand_classical(y)?),
        Classical::Iff(x, y) => {
            let (x, y) = (expand_classical(x)?, expand_classical(y)?);
            core_and(Classical::imp(x.clone(), y.clone()), Classical::imp(y, x))
        }
        Classical::Molecular { frame, set } => {
            proviso(set.is_subset(frame), || {
                format!("molecular set {} is not a subset of {}", show(set), show(frame))
            })?;
            expand_classical(&molecular_classical(frame, set))?
        }
    })
}

pub fn expand_real(t: &RealTerm) -> Result<RealTerm> {
    Ok(match t {
        RealTerm::Var(_) | RealTerm::Const(_) => t.clone(),
        RealTerm::Prob(a) => RealTerm::Prob(expand_classical(a)?),
        RealTerm::Add(a, b) => RealTerm::add(expand_real(a)?, expand_real(b)?),
        RealTerm::Mul(a, b) => RealTerm::mul(expand_real(a)?, expand_real(b)?),
        RealTerm::Re(u) => RealTerm::re(expand_complex(u)?),
        RealTerm::Im(u) => RealTerm::im(expand_complex(u)?),
        RealTerm::Arg(u) => RealTerm::arg(expand_complex(u)?),
        RealTerm::Abs(u) => RealTerm::abs(expand_complex(u)?),
        RealTerm::SumSq { frame, guard } => {
            let mut sum: Option<RealTerm> = None;
            for set in subsets(frame) {
                let amp = ComplexTerm::amp_of(frame.clone(), set, guard.clone());
                let sq = RealTerm::abs_sq(amp);
                sum = Some(match sum {
                    None => sq,
                    Some(s) => RealTerm::add(s, sq),
                });
            }
            expand_real(&sum.expect("a frame has at least one subset"))?
        }
    })
}

pub fn expand_complex(u: &ComplexTerm) -> Result<ComplexTerm> {
    Ok(match u {
        ComplexTerm::Var(_) => u.clone(),
        ComplexTerm::Amp { frame, set } => {
            proviso(set.is_subset(frame), || {
                format!("amplitude set {} is not a subset of {}", show(set), show(frame))
            })?;
            u.clone()
        }
        ComplexTerm::Cart(a, b) => ComplexTerm::cart(expand_real(a)?, expand_real(b)?),
        ComplexTerm::Polar(a, b) => ComplexTerm::polar(expand_real(a)?, expand_real(b)?),
        ComplexTerm::Conj(a) => ComplexTerm::conj(expand_complex(a)?),
        ComplexTerm::Add(a, b) => ComplexTerm::add(expand_complex(a)?, expand_complex(b)?),
        ComplexTerm::Mul(a, b) => ComplexTerm::mul(expand_complex(a)?, expand_complex(b)?),
        ComplexTerm::Ite(g, a, b) => ComplexTerm::ite(expand_classical(g)?, expand_complex(a)?, expand_complex(b)?),
        ComplexTerm::AmpOf { frame, set, guard } => {
            proviso(set.is_subset(frame), || {
                format!("amplitude set {} is not a subset of {}", show(set), show(frame))
            })?;
            let qb = classical_qubits(guard);
            proviso(qb.is_subset(frame), || format!("guard qubits {} are not within {}", show(&qb), show(frame)))?;
            let amp = ComplexTerm::amp(frame.clone(), set.clone());
            if **guard == Classical::Top {
                amp
            } else {
                let test = Classical::imp(molecular_classical(frame, set), (**guard).clone());
                ComplexTerm::ite(expand_classical(&test)?, amp, ComplexTerm::int(0))
            }
        }
    })
}

/// The amplitude product equations whose conjunction is `[G|F]`, outer index
/// `A' ⊆ G`, inner index `A'' ⊆ F ∖ G`.
pub fn cond_equations(sub: &QubitSet, frame: &QubitSet) -> Vec<Quantum> {
    let rest: QubitSet = frame.difference(sub).copied().collect();
    let mut out = Vec::new();
    for a1 in subsets(sub) {
        for a2 in subsets(&rest) {
            let joint: QubitSet = a1.union(&a2).copied().collect();
            let lhs = ComplexTerm::amp(frame.clone(), joint);
            let rhs = ComplexTerm::mul(ComplexTerm::amp(sub.clone(), a1.clone()), ComplexTerm::amp(rest.clone(), a2));
            out.push(Quantum::eq_c(lhs, rhs));
        }
    }
    out
}

fn q_or(a: Quantum, b: Quantum) -> Quantum {
    Quantum::imp(Quantum::not(a), b)
}

fn q_and(a: Quantum, b: Quantum) -> Quantum {
    Quantum::not(q_or(Quantum::not(a), Quantum::not(b)))
}

fn q_eq_r(a: RealTerm, b: RealTerm) -> Quantum {
    q_and(Quantum::leq(a.clone(), b.clone()), Quantum::leq(b, a))
}

fn falsum() -> Quantum {
    Quantum::Classical(Classical::not(Classical::Top))
}

fn verum() -> Quantum {
    Quantum::Classical(Classical::Top)
}

pub fn expand_quantum(g: &Quantum) -> Result<Quantum> {
    Ok(match g {
        Quantum::Classical(a) => Quantum::Classical(expand_classical(a)?),
        Quantum::Leq(a, b) => Quantum::leq(expand_real(a)?, expand_real(b)?),
        Quantum::NonEtg(_) => g.clone(),
        Quantum::Not(a) => Quantum::not(expand_quantum(a)?),
        Quantum::Imp(a, b) => Quantum::imp(expand_quantum(a)?, expand_quantum(b)?),
        Quantum::Or(a, b) => q_or(expand_quantum(a)?, expand_quantum(b)?),
        Quantum::And(a, b) => q_and(expand_quantum(a)?, expand_quantum(b)?),
        Quantum::Iff(a, b) => {
            let (a, b) = (expand_quantum(a)?, expand_quantum(b)?);
            q_and(Quantum::imp(a.clone(), b.clone()), Quantum::imp(b, a))
        }
        Quantum::Lt(a, b) => {
            let (a, b) = (expand_real(a)?, expand_real(b)?);
            q_and(Quantum::leq(a.clone(), b.clone()), Quantum::not(Quantum::leq(b, a)))
        }
        Quantum::EqR(a, b) => q_eq_r(expand_real(a)?, expand_real(b)?),
        Quantum::EqC(a, b) => {
            let (a, b) = (expand_complex(a)?, expand_complex(b)?);
            q_and(q_eq_r(RealTerm::re(a.clone()), RealTerm::re(b.clone())), q_eq_r(RealTerm::im(a), RealTerm::im(b)))
        }
        Quantum::Cond { sub, frame } => {
            proviso(sub.is_subset(frame), || {
                format!("conditional set {} is not a subset of {}", show(sub), show(frame))
            })?;
            let eqs = cond_equations(sub, frame);
            expand_quantum(&Quantum::conj_all(eqs).expect("at least one equation"))?
        }
        Quantum::Entangled { left, frame, right } => {
            proviso(frame.contains(left) && frame.contains(right), || {
                format!("entangled qubits {left}, {right} must both lie in {}", show(frame))
            })?;
            let separating = subsets(frame)
                .into_iter()
                .filter(|s| s.len() < frame.len() && s.contains(left) && !s.contains(right))
                .map(Quantum::NonEtg);
            match Quantum::disj_all(separating) {
                Some(d) => Quantum::not(expand_quantum(&d)?),
                None => Quantum::not(falsum()),
            }
        }
        Quantum::Poss { frame, items } => {
            let mut parts = Vec::new();
            for (alpha, u) in items {
                let qb = classical_qubits(alpha);
                proviso(qb.is_subset(frame), || {
                    format!("possibility formula qubits {} are not within {}", show(&qb), show(frame))
                })?;
                let positive = Quantum::Lt(RealTerm::int(0), RealTerm::abs(u.clone()));
                let witnesses = subsets(frame)
                    .into_iter()
                    .map(|set| Quantum::eq_c(ComplexTerm::amp_of(frame.clone(), set, alpha.clone()), u.clone()));
                let any = Quantum::disj_all(witnesses).expect("a frame has at least one subset");
                parts.push(Quantum::and(Quantum::and(Quantum::NonEtg(frame.clone()), positive), any));
            }
            match Quantum::conj_all(parts) {
                Some(c) => expand_quantum(&c)?,
                None => verum(),
            }
        }
        Quantum::Dia(a) => expand_quantum(&Quantum::Lt(RealTerm::int(0), RealTerm::prob(a.clone())))?,
        Quantum::Box(a) => expand_quantum(&Quantum::eq_r(RealTerm::int(1), RealTerm::prob(a.clone())))?,
        Quantum::Molecular(lits) => {
            let pos = Quantum::conj_all(lits.iter().filter(|(_, p)| *p).map(|(a, _)| a.to_formula()));
            let neg = Quantum::conj_all(lits.iter().filter(|(_, p)| !*p).map(|(a, _)| Quantum::not(a.to_formula())));
            let whole = match (pos, neg) {
                (Some(p), Some(n)) => Quantum::and(p, n),
                (Some(p), None) => p,
                (None, Some(n)) => n,
                (None, None) => verum(),
            };
            expand_quantum(&whole)?
        }
    })
}
