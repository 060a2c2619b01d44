//! Normalization of real and complex terms into real polynomials over atoms.
//!
//! Complex variables split into real and imaginary parts. Nodes outside the
//! polynomial fragment (moduli, arguments, trigonometric parts of polar forms,
//! irrational constants, and any non-arithmetical subterm) become opaque atoms
//! with known sound bounds.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, Zero};

use crate::semantics::{Assignment, Evaluator};
use crate::structures::{QuantumStructure, Tolerances};
use crate::syntax::{ComplexTerm, ComplexVar, Const, RealTerm, RealVar};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    Real(RealVar),
    Re(ComplexVar),
    Im(ComplexVar),
    /// `|u|`, with the normalized parts of `u` kept for squaring.
    Abs(ComplexTerm),
    Arg(ComplexTerm),
    Cos(RealTerm),
    Sin(RealTerm),
    /// A closed real term with no exact rational value.
    Numeric(RealTerm),
    /// Any other real subterm, e.g. a probability.
    Opaque(RealTerm),
    ReOf(ComplexTerm),
    ImOf(ComplexTerm),
}

impl Atom {
    /// Plain variables keep the fragment linear-decidable; every other atom
    /// makes a result one-sided.
    pub fn is_variable(&self) -> bool {
        matches!(self, Atom::Real(_) | Atom::Re(_) | Atom::Im(_))
    }
}

/// Monomial: sorted `(atom index, exponent)` pairs; empty for the constant.
pub type Monomial = Vec<(usize, u32)>;

/// Real polynomial with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    pub terms: BTreeMap<Monomial, BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(Vec::new(), c);
        }
        p
    }

    pub fn atom(i: usize) -> Self {
        let mut p = Poly::zero();
        p.terms.insert(vec![(i, 1)], BigRational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            let e = out.terms.entry(m.clone()).or_insert_with(BigRational::zero);
            *e += c;
            if e.is_zero() {
                out.terms.remove(m);
            }
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &BigRational) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let m = mul_monomials(m1, m2);
                let e = out.terms.entry(m.clone()).or_insert_with(BigRational::zero);
                *e += c1 * c2;
                if e.is_zero() {
                    out.terms.remove(&m);
                }
            }
        }
        out
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().map(|(_, e)| e).sum()).max().unwrap_or(0)
    }

    pub fn atoms(&self) -> impl Iterator<Item = usize> + '_ {
        self.terms.keys().flat_map(|m| m.iter().map(|(i, _)| *i))
    }
}

fn mul_monomials(a: &Monomial, b: &Monomial) -> Monomial {
    let mut map: BTreeMap<usize, u32> = a.iter().copied().collect();
    for (i, e) in b {
        *map.entry(*i).or_insert(0) += e;
    }
    map.into_iter().collect()
}

/// Interning table of atoms and the term normalizer.
#[derive(Clone, Debug, Default)]
pub struct Normalizer {
    pub atoms: Vec<Atom>,
    index: HashMap<Atom, usize>,
    abs_parts: HashMap<usize, (Poly, Poly)>,
}

impl Normalizer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern(&mut self, a: Atom) -> usize {
        if let Some(i) = self.index.get(&a) {
            return *i;
        }
        let i = self.atoms.len();
        self.atoms.push(a.clone());
        self.index.insert(a, i);
        i
    }

    pub fn real(&mut self, t: &RealTerm) -> Poly {
        match t {
            RealTerm::Var(v) => Poly::atom(self.intern(Atom::Real(*v))),
            RealTerm::Const(c) => self.constant(c),
            RealTerm::Add(a, b) => {
                let (a, b) = (self.real(a), self.real(b));
                a.add(&b)
            }
            RealTerm::Mul(a, b) => {
                let (a, b) = (self.real(a), self.real(b));
                let p = a.mul(&b);
                self.reduce_abs(p)
            }
            RealTerm::Re(u) => self.complex(u).0,
            RealTerm::Im(u) => self.complex(u).1,
            RealTerm::Abs(u) => {
                let (re, im) = self.complex(u);
                if let (Some(x), Some(y)) = (re.as_constant(), im.as_constant()) {
                    let sq = &x * &x + &y * &y;
                    if let Some(r) = rational_sqrt(&sq) {
                        return Poly::constant(r);
                    }
                }
                if self.is_closed(&re) && self.is_closed(&im) {
                    return Poly::atom(self.intern(Atom::Numeric(t.clone())));
                }
                let i = self.intern(Atom::Abs((**u).clone()));
                self.abs_parts.insert(i, (re, im));
                Poly::atom(i)
            }
            RealTerm::Arg(u) => {
                let (re, im) = self.complex(u);
                if self.is_closed(&re) && self.is_closed(&im) {
                    return Poly::atom(self.intern(Atom::Numeric(t.clone())));
                }
                Poly::atom(self.intern(Atom::Arg((**u).clone())))
            }
            RealTerm::Prob(_) | RealTerm::SumSq { .. } => Poly::atom(self.intern(Atom::Opaque(t.clone()))),
        }
    }

    pub fn complex(&mut self, u: &ComplexTerm) -> (Poly, Poly) {
        match u {
            ComplexTerm::Var(z) => (Poly::atom(self.intern(Atom::Re(*z))), Poly::atom(self.intern(Atom::Im(*z)))),
            ComplexTerm::Cart(a, b) => (self.real(a), self.real(b)),
            ComplexTerm::Polar(r, theta) => {
                let r = self.real(r);
                let th = self.real(theta);
                let (c, s) = if th.is_zero() {
                    (Poly::constant(BigRational::one()), Poly::zero())
                } else if self.is_closed(&th) {
                    (
                        Poly::atom(self.intern(Atom::Numeric(RealTerm::re(ComplexTerm::polar(
                            RealTerm::int(1),
                            (**theta).clone(),
                        ))))),
                        Poly::atom(self.intern(Atom::Numeric(RealTerm::im(ComplexTerm::polar(
                            RealTerm::int(1),
                            (**theta).clone(),
                        ))))),
                    )
                } else {
                    (
                        Poly::atom(self.intern(Atom::Cos((**theta).clone()))),
                        Poly::atom(self.intern(Atom::Sin((**theta).clone()))),
                    )
                };
                (r.mul(&c), r.mul(&s))
            }
            ComplexTerm::Conj(a) => {
                let (re, im) = self.complex(a);
                (re, im.neg())
            }
            ComplexTerm::Add(a, b) => {
                let (ar, ai) = self.complex(a);
                let (br, bi) = self.complex(b);
                (ar.add(&br), ai.add(&bi))
            }
            ComplexTerm::Mul(a, b) => {
                let (ar, ai) = self.complex(a);
                let (br, bi) = self.complex(b);
                let re = ar.mul(&br).sub(&ai.mul(&bi));
                let im = ar.mul(&bi).add(&ai.mul(&br));
                (self.reduce_abs(re), self.reduce_abs(im))
            }
            ComplexTerm::Amp { .. } | ComplexTerm::AmpOf { .. } | ComplexTerm::Ite(..) => {
                (Poly::atom(self.intern(Atom::ReOf(u.clone()))), Poly::atom(self.intern(Atom::ImOf(u.clone()))))
            }
        }
    }

    /// True when every atom of `p` is a closed numeric constant.
    pub fn is_closed(&self, p: &Poly) -> bool {
        p.atoms().all(|i| matches!(self.atoms[i], Atom::Numeric(_)))
    }

    fn constant(&mut self, c: &Const) -> Poly {
        match c.rational() {
            Some(r) => Poly::constant(r),
            None => Poly::atom(self.intern(Atom::Numeric(RealTerm::Const(c.clone())))),
        }
    }

    /// Rewrites even powers of modulus atoms: `|u|² = re(u)² + im(u)²`.
    fn reduce_abs(&self, p: Poly) -> Poly {
        let needs = p.terms.keys().any(|m| m.iter().any(|(i, e)| *e >= 2 && self.abs_parts.contains_key(i)));
        if !needs {
            return p;
        }
        let mut out = Poly::zero();
        for (m, c) in p.terms {
            let mut term = Poly::constant(c);
            for (i, e) in m {
                match self.abs_parts.get(&i) {
                    Some((re, im)) if e >= 2 => {
                        let sq = re.mul(re).add(&im.mul(im));
                        for _ in 0..e / 2 {
                            term = term.mul(&sq);
                        }
                        if e % 2 == 1 {
                            term = term.mul(&Poly::atom(i));
                        }
                    }
                    _ => {
                        let mut a = Poly::atom(i);
                        for _ in 1..e {
                            a = a.mul(&Poly::atom(i));
                        }
                        term = term.mul(&a);
                    }
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Sound rational bounds `(lo, hi)` on the value of an atom, when known.
    pub fn bounds(&self, i: usize) -> (Option<BigRational>, Option<BigRational>) {
        let r = |x: f64| BigRational::from_f64(x).expect("finite bound");
        match &self.atoms[i] {
            Atom::Abs(_) => (Some(BigRational::zero()), None),
            Atom::Arg(_) => (Some(r(-3.2)), Some(r(3.2))),
            Atom::Cos(_) | Atom::Sin(_) => (Some(r(-1.0)), Some(r(1.0))),
            Atom::Numeric(t) => match numeric_value(t) {
                Some(v) => {
                    let d = 1e-12 * v.abs().max(1.0);
                    (Some(r(v - d)), Some(r(v + d)))
                }
                None => (None, None),
            },
            _ => (None, None),
        }
    }
}

/// Value of a closed arithmetical real term.
pub fn numeric_value(t: &RealTerm) -> Option<f64> {
    let w = QuantumStructure::empty();
    let rho = Assignment::new();
    Evaluator::new(&w, &rho, Tolerances::default()).real(t).ok()
}

fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}
