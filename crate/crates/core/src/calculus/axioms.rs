use num_rational::BigRational;

use super::{classical_tautology, is_tautology, Axiom, LineError, Mode};
use crate::arithmetic::poly::{Normalizer, Poly};
use crate::arithmetic::{abstract_terms, non_arithmetical_node, Oracle, OracleVerdict};
use crate::syntax::{Classical, ComplexTerm, Quantum, QubitSet, RealTerm};

fn miss(a: &Axiom, reason: impl Into<String>) -> LineError {
    LineError::NotAnInstance { schema: a.name(), reason: reason.into() }
}

fn show(s: &QubitSet) -> String {
    let items: Vec<String> = s.iter().map(|q| q.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

fn is_real_constant(t: &RealTerm, value: i64) -> bool {
    let mut n = Normalizer::new();
    n.real(t) == Poly::constant(BigRational::from_integer(value.into()))
}

fn is_complex_constant(u: &ComplexTerm, value: i64) -> bool {
    let mut n = Normalizer::new();
    let (re, im) = n.complex(u);
    re == Poly::constant(BigRational::from_integer(value.into())) && im.is_zero()
}

fn classical(g: &Quantum) -> Option<&Classical> {
    match g {
        Quantum::Classical(a) => Some(a),
        _ => None,
    }
}

fn netg(g: &Quantum) -> Option<&QubitSet> {
    match g {
        Quantum::NonEtg(f) => Some(f),
        _ => None,
    }
}

fn imp(g: &Quantum) -> Option<(&Quantum, &Quantum)> {
    match g {
        Quantum::Imp(a, b) => Some((a, b)),
        _ => None,
    }
}

/// Decides whether `phi` is an instance of the schema `axiom` for bound
/// `bound`. Matching is exact: no reassociation or reordering is applied.
pub fn match_axiom(axiom: &Axiom, phi: &Quantum, bound: &QubitSet, oracle: &dyn Oracle) -> Result<(), LineError> {
    let within = |g: &QubitSet| {
        if g.is_subset(bound) {
            Ok(())
        } else {
            Err(miss(axiom, format!("{} is not within the bound", show(g))))
        }
    };
    match axiom {
        Axiom::CTaut => match classical(phi) {
            Some(a) if classical_tautology(a) => Ok(()),
            Some(_) => Err(miss(axiom, "not a classical tautology")),
            None => Err(miss(axiom, "not a classical formula")),
        },
        Axiom::QTaut => {
            if is_tautology(phi, Mode::Quantum) {
                Ok(())
            } else {
                Err(miss(axiom, "atom abstraction is not a tautology"))
            }
        }
        Axiom::Oracle => {
            let general = abstract_terms(phi);
            if let Some(node) = non_arithmetical_node(&general) {
                return Err(miss(axiom, format!("contains a {node}")));
            }
            match oracle.check(&general) {
                OracleVerdict::Valid(_) => Ok(()),
                OracleVerdict::Invalid(rho) => Err(LineError::OracleInvalid(format!("{rho:?}"))),
                OracleVerdict::Unknown(r) => Err(LineError::OracleUnknown(r)),
            }
        }
        Axiom::Lift => {
            let shape = || -> Option<()> {
                let (l, r) = imp(phi)?;
                let Classical::Imp(a1, a2) = classical(l)? else { return None };
                let (r1, r2) = imp(r)?;
                (classical(r1)? == &**a1 && classical(r2)? == &**a2).then_some(())
            };
            shape().ok_or_else(|| miss(axiom, "expected ((a1 -> a2) ==> (a1 ==> a2))"))
        }
        Axiom::RefConj => {
            let shape = || -> Option<()> {
                let (l, r) = imp(phi)?;
                let Quantum::And(q1, q2) = l else { return None };
                let Classical::And(c1, c2) = classical(r)? else { return None };
                (classical(q1)? == &**c1 && classical(q2)? == &**c2).then_some(())
            };
            shape().ok_or_else(|| miss(axiom, "expected ((a1 && a2) ==> (a1 /\\ a2))"))
        }
        Axiom::IfTop | Axiom::IfBot => {
            let top = *axiom == Axiom::IfTop;
            let shape = || -> Option<()> {
                let (l, r) = imp(phi)?;
                let alpha = if top {
                    classical(l)?
                } else {
                    let Quantum::Not(inner) = l else { return None };
                    classical(inner)?
                };
                let Quantum::EqC(lhs, rhs) = r else { return None };
                let ComplexTerm::Ite(g, u1, u2) = lhs else { return None };
                let chosen = if top { u1 } else { u2 };
                (**g == *alpha && **chosen == *rhs).then_some(())
            };
            let expected = if top { "(a ==> (ite(a; u1; u2) = u1))" } else { "(! a ==> (ite(a; u1; u2) = u2))" };
            shape().ok_or_else(|| miss(axiom, format!("expected {expected}")))
        }
        Axiom::NetgF => match netg(phi) {
            Some(f) if f == bound => Ok(()),
            Some(f) => Err(miss(axiom, format!("{} is not the bound {}", show(f), show(bound)))),
            None => Err(miss(axiom, "not a non-entanglement atom")),
        },
        Axiom::NetgBar(g1, g2) => {
            within(g2)?;
            if !g1.is_subset(g2) {
                return Err(miss(axiom, format!("{} is not a subset of {}", show(g1), show(g2))));
            }
            let expected = Quantum::imp(
                Quantum::NonEtg(g2.clone()),
                Quantum::iff(Quantum::NonEtg(g1.clone()), Quantum::Cond { sub: g1.clone(), frame: g2.clone() }),
            );
            exact(axiom, phi, &expected)
        }
        Axiom::NetgUnion(g1, g2) | Axiom::NetgDiff(g1, g2) => {
            within(g1)?;
            within(g2)?;
            let target: QubitSet = if matches!(axiom, Axiom::NetgUnion(..)) {
                g1.union(g2).copied().collect()
            } else {
                g1.difference(g2).copied().collect()
            };
            let expected = Quantum::imp(
                Quantum::NonEtg(g1.clone()),
                Quantum::imp(Quantum::NonEtg(g2.clone()), Quantum::NonEtg(target)),
            );
            exact(axiom, phi, &expected)
        }
        Axiom::Empty => match phi {
            Quantum::EqC(ComplexTerm::Amp { frame, set }, one)
                if frame.is_empty() && set.is_empty() && is_complex_constant(one, 1) =>
            {
                Ok(())
            }
            _ => Err(miss(axiom, "expected (amp{}{} = 1)")),
        },
        Axiom::NAdm(a) => {
            if !a.is_subset(bound) {
                return Err(miss(axiom, format!("{} is not a subset of the bound", show(a))));
            }
            let shape = || -> Option<()> {
                let (l, r) = imp(phi)?;
                let Classical::Neg(m) = classical(l)? else { return None };
                let Classical::Molecular { frame, set } = &**m else { return None };
                let Quantum::EqC(ComplexTerm::Amp { frame: f2, set: a2 }, zero) = r else { return None };
                (frame == bound && f2 == bound && set == a && a2 == a && is_complex_constant(zero, 0)).then_some(())
            };
            shape().ok_or_else(|| {
                miss(axiom, format!("expected ((~ mol{{F}}{a}) ==> (amp{{F}}{a} = 0)) over the bound", a = show(a)))
            })
        }
        Axiom::Unit(g) => {
            within(g)?;
            let shape = || -> Option<()> {
                let (l, r) = imp(phi)?;
                let Quantum::EqR(sum, one) = r else { return None };
                let RealTerm::SumSq { frame, guard } = sum else { return None };
                (netg(l)? == g && frame == g && *guard == Classical::Top && is_real_constant(one, 1)).then_some(())
            };
            shape().ok_or_else(|| miss(axiom, format!("expected ([G] ==> (sumsq{} = 1))", show(g))))
        }
        Axiom::Prob(alpha) => {
            let shape = || -> Option<()> {
                let Quantum::EqR(RealTerm::Prob(a), RealTerm::SumSq { frame, guard }) = phi else { return None };
                (a == alpha && guard == alpha && frame == bound).then_some(())
            };
            shape().ok_or_else(|| miss(axiom, "expected (Pr(a) = sumsq{F}[a]) over the bound"))
        }
    }
}

fn exact(axiom: &Axiom, phi: &Quantum, expected: &Quantum) -> Result<(), LineError> {
    if phi == expected {
        Ok(())
    } else {
        Err(miss(axiom, format!("expected {expected}")))
    }
}
