//! Quantum disjunctive normal forms over the atoms of a formula.

use std::collections::BTreeSet;

use super::FinderError;
use crate::calculus::{Prop, Skeleton};
use crate::syntax::{cond_equations, Classical, Quantum, QuantumAtom, QubitSet};

/// `(⊓_Q D)`: the atoms of `Q` listed once, `positive` holding the indices of
/// those in `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MolecularFormula {
    pub atoms: Vec<QuantumAtom>,
    pub positive: BTreeSet<usize>,
}

impl MolecularFormula {
    pub fn literals(&self) -> impl Iterator<Item = (&QuantumAtom, bool)> {
        self.atoms.iter().enumerate().map(|(i, a)| (a, self.positive.contains(&i)))
    }

    pub fn to_formula(&self) -> Quantum {
        Quantum::Molecular(self.literals().map(|(a, b)| (a.clone(), b)).collect())
    }
}

/// Every molecular formula over the atoms of `g` whose atom abstraction
/// implies that of `g`.
pub fn quantum_dnf(g: &Quantum, max_atoms: usize) -> Result<Vec<MolecularFormula>, FinderError> {
    let s = Skeleton::of(g).map_err(|e| FinderError::Expand(e.to_string()))?;
    let n = s.atoms.len();
    if n > max_atoms {
        return Err(FinderError::AtomBudgetExceeded { atoms: n, budget: max_atoms });
    }
    let mut rows = Vec::new();
    for implicant in implicants(&s.prop, vec![None; n], usize::MAX) {
        let free: Vec<usize> = (0..n).filter(|i| implicant[*i].is_none()).collect();
        for bits in 0..(1u64 << free.len()) {
            let mut positive = BTreeSet::new();
            for (i, fixed) in implicant.iter().enumerate() {
                let value = match fixed {
                    Some(b) => *b,
                    None => bits & (1 << free.iter().position(|f| *f == i).unwrap()) != 0,
                };
                if value {
                    positive.insert(i);
                }
            }
            rows.push(MolecularFormula { atoms: s.atoms.clone(), positive });
        }
    }
    Ok(rows)
}

/// Partial assignments extending `init` that decide `p` true, found by
/// branching on the undecided letters in order (true first). The results are
/// pairwise disjoint and cover every satisfying extension of `init`. At most
/// `limit` are returned.
pub fn implicants(p: &Prop, init: Vec<Option<bool>>, limit: usize) -> Vec<Vec<Option<bool>>> {
    fn go(p: &Prop, val: &mut Vec<Option<bool>>, out: &mut Vec<Vec<Option<bool>>>, limit: usize) {
        if out.len() >= limit {
            return;
        }
        match p.partial(&|i| val[i]) {
            Some(true) => out.push(val.clone()),
            Some(false) => {}
            None => {
                let Some(k) = val.iter().position(Option::is_none) else { return };
                for b in [true, false] {
                    val[k] = Some(b);
                    go(p, val, out, limit);
                }
                val[k] = None;
            }
        }
    }
    let mut val = init;
    let mut out = Vec::new();
    go(p, &mut val, &mut out, limit);
    out
}

/// Replaces each non-entanglement literal `[G]` of `m` by the product
/// equations of `[G|F]` (negated for negative literals). `[F]` itself becomes
/// `⊤`.
pub fn eliminate_nonentanglement(m: &MolecularFormula, f: &QubitSet) -> Quantum {
    let parts = m.literals().map(|(a, positive)| {
        let g = match a {
            QuantumAtom::NonEtg(g) if g == f => Quantum::classical(Classical::Top),
            QuantumAtom::NonEtg(g) => Quantum::conj_all(cond_equations(g, f)).expect("at least one equation"),
            other => other.to_formula(),
        };
        if positive {
            g
        } else {
            Quantum::not(g)
        }
    });
    Quantum::conj_all(parts).unwrap_or_else(|| Quantum::classical(Classical::Top))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::prop_valid;
    use crate::syntax::{parse_quantum, qubits, Aliases};

    fn q(s: &str) -> Quantum {
        parse_quantum(s, &Aliases::new()).unwrap()
    }

    #[test]
    fn atomic_formula_has_one_row() {
        let rows = quantum_dnf(&q("(x1 <= 0)"), 20).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].positive, BTreeSet::from([0]));
    }

    #[test]
    fn excluded_middle_has_both_rows() {
        let rows = quantum_dnf(&q("((x1 <= 0) || ! (x1 <= 0))"), 20).unwrap();
        assert_eq!(rows.len(), 2);
    }

    #[test]
    fn conjunction_has_exactly_the_all_true_row() {
        let rows = quantum_dnf(&q("((x1 <= 0) && [qb0])"), 20).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].positive, BTreeSet::from([0, 1]));
    }

    #[test]
    fn budget_is_enforced() {
        let err = quantum_dnf(&q("((x1 <= 0) && [qb0])"), 1).unwrap_err();
        assert_eq!(err, FinderError::AtomBudgetExceeded { atoms: 2, budget: 1 });
    }

    #[test]
    fn disjunction_of_rows_is_equivalent() {
        let g = q("(([qb0] ==> (x1 <= x2)) && ! ((x2 <= x1) && qb0))");
        let rows = quantum_dnf(&g, 20).unwrap();
        let mut atoms = Skeleton::of(&g).unwrap().atoms;
        let pg = Skeleton::with_atoms(&g, &mut atoms).unwrap();
        let d = Quantum::disj_all(rows.iter().map(|m| m.to_formula())).unwrap();
        let pd = Skeleton::with_atoms(&d, &mut atoms).unwrap();
        let iff = Prop::Iff(Box::new(pg), Box::new(pd));
        assert!(prop_valid(&iff, atoms.len()));
    }

    #[test]
    fn nonentanglement_of_the_bound_disappears() {
        let f = qubits([0, 1]);
        let m = MolecularFormula { atoms: vec![QuantumAtom::NonEtg(f.clone())], positive: BTreeSet::from([0]) };
        assert_eq!(eliminate_nonentanglement(&m, &f), Quantum::classical(Classical::Top));
    }

    #[test]
    fn nonentanglement_becomes_product_equations() {
        let f = qubits([0, 1]);
        let m = MolecularFormula { atoms: vec![QuantumAtom::NonEtg(qubits([0]))], positive: BTreeSet::from([0]) };
        let e = eliminate_nonentanglement(&m, &f);
        let eqs = cond_equations(&qubits([0]), &f);
        assert_eq!(eqs.len(), 4);
        assert_eq!(e, Quantum::conj_all(eqs.clone()).unwrap());
        let neg = MolecularFormula { positive: BTreeSet::new(), ..m };
        assert_eq!(eliminate_nonentanglement(&neg, &f), Quantum::not(Quantum::conj_all(eqs).unwrap()));
    }
}
