//! Table of algebraic schemas beyond the reach of the linearized decider.
//! Terms are compared after polynomial normalization, so each entry matches
//! every syntactic variant with the same normal form.

use super::poly::{Normalizer, Poly};
use crate::syntax::{ComplexTerm, Quantum, RealTerm};

type Matcher = fn(&Quantum) -> bool;

const TABLE: &[(&str, Matcher)] = &[
    ("square roots of minus one", square_roots_of_minus_one),
    ("triangle inequality", triangle),
    ("modulus of a product", modulus_product),
    ("modulus of a conjugate", modulus_conj),
];

/// Name of the first schema that `phi` instantiates.
pub fn match_pattern(phi: &Quantum) -> Option<&'static str> {
    TABLE.iter().find(|(_, m)| m(phi)).map(|(name, _)| *name)
}

fn complex_diff(n: &mut Normalizer, a: &ComplexTerm, b: &ComplexTerm) -> (Poly, Poly) {
    let (ar, ai) = n.complex(a);
    let (br, bi) = n.complex(b);
    (ar.sub(&br), ai.sub(&bi))
}

fn same_up_to_sign(p: &(Poly, Poly), q: &(Poly, Poly)) -> bool {
    p == q || (p.0.neg() == q.0 && p.1.neg() == q.1)
}

fn real_diff(n: &mut Normalizer, a: &RealTerm, b: &RealTerm) -> Poly {
    let pa = n.real(a);
    n.real(b).sub(&pa)
}

/// `(u·u = −1) ⊐ ((u = i) ⊔ (u = −i))`, either disjunct order.
fn square_roots_of_minus_one(phi: &Quantum) -> bool {
    let Quantum::Imp(h, c) = phi else { return false };
    let Quantum::EqC(a, b) = &**h else { return false };
    let Quantum::Or(c1, c2) = &**c else { return false };
    let (Quantum::EqC(c, d), Quantum::EqC(e, f)) = (&**c1, &**c2) else { return false };
    let i = ComplexTerm::cart(RealTerm::int(0), RealTerm::int(1));
    let minus_i = ComplexTerm::cart(RealTerm::int(0), RealTerm::int(-1));
    for u in [c, d, e, f] {
        let mut n = Normalizer::new();
        let hyp = complex_diff(&mut n, a, b);
        let sq = complex_diff(&mut n, &ComplexTerm::mul(u.clone(), u.clone()), &ComplexTerm::int(-1));
        let first = complex_diff(&mut n, c, d);
        let second = complex_diff(&mut n, e, f);
        let plus = complex_diff(&mut n, u, &i);
        let minus = complex_diff(&mut n, u, &minus_i);
        if same_up_to_sign(&hyp, &sq)
            && ((same_up_to_sign(&first, &plus) && same_up_to_sign(&second, &minus))
                || (same_up_to_sign(&first, &minus) && same_up_to_sign(&second, &plus)))
        {
            return true;
        }
    }
    false
}

/// `|u + v| ≤ |u| + |v|`.
fn triangle(phi: &Quantum) -> bool {
    let Quantum::Leq(lhs, rhs) = phi else { return false };
    let RealTerm::Abs(s) = lhs else { return false };
    let ComplexTerm::Add(u, v) = &**s else { return false };
    let mut n = Normalizer::new();
    let bound = RealTerm::add(RealTerm::abs((**u).clone()), RealTerm::abs((**v).clone()));
    real_diff(&mut n, rhs, &bound).is_zero()
}

fn equation(phi: &Quantum) -> Option<(&RealTerm, &RealTerm)> {
    match phi {
        Quantum::EqR(a, b) => Some((a, b)),
        _ => None,
    }
}

/// `|u·v| = |u|·|v|`, either side first.
fn modulus_product(phi: &Quantum) -> bool {
    let Some((a, b)) = equation(phi) else { return false };
    [(a, b), (b, a)].into_iter().any(|(l, r)| {
        let RealTerm::Abs(p) = l else { return false };
        let ComplexTerm::Mul(u, v) = &**p else { return false };
        let mut n = Normalizer::new();
        let rhs = RealTerm::mul(RealTerm::abs((**u).clone()), RealTerm::abs((**v).clone()));
        real_diff(&mut n, r, &rhs).is_zero()
    })
}

/// `|conj(u)| = |u|`, either side first.
fn modulus_conj(phi: &Quantum) -> bool {
    let Some((a, b)) = equation(phi) else { return false };
    [(a, b), (b, a)].into_iter().any(|(l, r)| {
        let RealTerm::Abs(p) = l else { return false };
        let ComplexTerm::Conj(u) = &**p else { return false };
        let mut n = Normalizer::new();
        real_diff(&mut n, r, &RealTerm::abs((**u).clone())).is_zero()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_quantum, Aliases};

    fn q(s: &str) -> Quantum {
        parse_quantum(s, &Aliases::new()).unwrap()
    }

    #[test]
    fn matches_square_roots_in_both_orders() {
        assert!(match_pattern(&q("(((z1 * z1) = -1) ==> ((z1 = (0 + i 1)) || (z1 = (0 + i -1))))")).is_some());
        assert!(match_pattern(&q("(((z1 * z1) = -1) ==> ((z1 = (0 + i -1)) || (z1 = (0 + i 1))))")).is_some());
        assert!(match_pattern(&q("(((z1 * z1) = -1) ==> ((z1 = (0 + i 1)) || (z1 = (0 + i 1))))")).is_none());
    }

    #[test]
    fn matches_modulus_schemas() {
        assert!(match_pattern(&q("(abs((z1 + z2)) <= (abs(z1) + abs(z2)))")).is_some());
        assert!(match_pattern(&q("(abs((z1 * z2)) = (abs(z1) * abs(z2)))")).is_some());
        assert!(match_pattern(&q("(abs(z1) = abs(conj(z1)))")).is_some());
        assert!(match_pattern(&q("(abs((z1 + z2)) <= abs(z1))")).is_none());
    }
}
