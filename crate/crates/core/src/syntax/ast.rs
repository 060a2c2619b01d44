//! Abstract syntax for the four syntactic categories: classical formulas,
//! real terms, complex terms and quantum formulas.
//!
//! Every type carries both core constructors and the sugared forms that the
//! surface grammar offers. [`crate::syntax::expand`] rewrites the sugar away.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// A qubit symbol `qb_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Qubit(pub u32);

impl fmt::Display for Qubit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "qb{}", self.0)
    }
}

/// Finite set of qubit symbols, kept sorted.
pub type QubitSet = BTreeSet<Qubit>;

/// Builds a [`QubitSet`] from raw indices.
pub fn qubits<I: IntoIterator<Item = u32>>(it: I) -> QubitSet {
    it.into_iter().map(Qubit).collect()
}

/// Real variable `x_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RealVar(pub u32);

/// Complex variable `z_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ComplexVar(pub u32);

impl fmt::Display for RealVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

impl fmt::Display for ComplexVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z{}", self.0)
    }
}

/// Closed real constant expression: decimal literals, `pi`, `e`, square
/// roots, quotients and negation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Const {
    /// Non-negative decimal literal, stored exactly.
    Num(BigRational),
    Pi,
    E,
    Sqrt(Box<Const>),
    Div(Box<Const>, Box<Const>),
    Neg(Box<Const>),
}

impl Const {
    pub fn int(n: i64) -> Const {
        let c = Const::Num(BigRational::from_integer(BigInt::from(n.unsigned_abs())));
        if n < 0 {
            Const::Neg(Box::new(c))
        } else {
            c
        }
    }

    pub fn zero() -> Const {
        Const::int(0)
    }

    pub fn one() -> Const {
        Const::int(1)
    }

    pub fn ratio(n: i64, d: i64) -> Const {
        Const::Div(Box::new(Const::int(n)), Box::new(Const::int(d)))
    }

    pub fn value(&self) -> f64 {
        match self {
            Const::Num(r) => r.to_f64().unwrap_or(f64::NAN),
            Const::Pi => std::f64::consts::PI,
            Const::E => std::f64::consts::E,
            Const::Sqrt(c) => c.value().sqrt(),
            Const::Div(a, b) => a.value() / b.value(),
            Const::Neg(c) => -c.value(),
        }
    }

    /// Exact rational value when the expression has one that can be
    /// computed without approximation.
    pub fn rational(&self) -> Option<BigRational> {
        match self {
            Const::Num(r) => Some(r.clone()),
            Const::Pi | Const::E => None,
            Const::Sqrt(c) => rational_sqrt(&c.rational()?),
            Const::Div(a, b) => {
                let d = b.rational()?;
                if d.is_zero() {
                    None
                } else {
                    Some(a.rational()? / d)
                }
            }
            Const::Neg(c) => Some(-c.rational()?),
        }
    }
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

/// Classical formula α.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Classical {
    Qubit(Qubit),
    Top,
    Neg(Box<Classical>),
    Imp(Box<Classical>, Box<Classical>),
    // sugar
    Bot,
    And(Box<Classical>, Box<Classical>),
    Or(Box<Classical>, Box<Classical>),
    Iff(Box<Classical>, Box<Classical>),
    /// `(⋀_F A)`: the unique valuation over `frame` true exactly on `set`.
    Molecular {
        frame: QubitSet,
        set: QubitSet,
    },
}

/// Real term t.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RealTerm {
    Var(RealVar),
    Const(Const),
    Prob(Classical),
    Add(Box<RealTerm>, Box<RealTerm>),
    Mul(Box<RealTerm>, Box<RealTerm>),
    Re(Box<ComplexTerm>),
    Im(Box<ComplexTerm>),
    Arg(Box<ComplexTerm>),
    Abs(Box<ComplexTerm>),
    // sugar
    /// `Σ_{A⊆F} |α⟩_FA · |α⟩_FA` written with moduli, i.e. the squared norm of
    /// the amplitude vector `|α⟩_F`.
    SumSq {
        frame: QubitSet,
        guard: Classical,
    },
}

/// Complex term u.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ComplexTerm {
    Var(ComplexVar),
    /// `|⊤⟩_FA`
    Amp {
        frame: QubitSet,
        set: QubitSet,
    },
    /// `t1 + i t2`
    Cart(Box<RealTerm>, Box<RealTerm>),
    /// `t1 e^{i t2}`
    Polar(Box<RealTerm>, Box<RealTerm>),
    Conj(Box<ComplexTerm>),
    Add(Box<ComplexTerm>, Box<ComplexTerm>),
    Mul(Box<ComplexTerm>, Box<ComplexTerm>),
    Ite(Box<Classical>, Box<ComplexTerm>, Box<ComplexTerm>),
    // sugar
    /// `|α⟩_FA`
    AmpOf {
        frame: QubitSet,
        set: QubitSet,
        guard: Box<Classical>,
    },
}

/// Quantum atom: the three alternatives of the atom grammar.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum QuantumAtom {
    Classical(Classical),
    Leq(RealTerm, RealTerm),
    NonEtg(QubitSet),
}

/// Quantum formula γ.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Quantum {
    Classical(Classical),
    Leq(RealTerm, RealTerm),
    NonEtg(QubitSet),
    Not(Box<Quantum>),
    Imp(Box<Quantum>, Box<Quantum>),
    // sugar
    Or(Box<Quantum>, Box<Quantum>),
    And(Box<Quantum>, Box<Quantum>),
    Iff(Box<Quantum>, Box<Quantum>),
    Lt(RealTerm, RealTerm),
    EqR(RealTerm, RealTerm),
    EqC(ComplexTerm, ComplexTerm),
    /// `[G|F]`
    Cond {
        sub: QubitSet,
        frame: QubitSet,
    },
    /// `(qb ~_F qb')`
    Entangled {
        left: Qubit,
        frame: QubitSet,
        right: Qubit,
    },
    /// `◇_F(α1:u1, …)` listing of possible valuations with amplitudes.
    Poss {
        frame: QubitSet,
        items: Vec<(Classical, ComplexTerm)>,
    },
    Dia(Classical),
    Box(Classical),
    /// `(⊓_Q D)`: each atom with its polarity, listed in order.
    Molecular(Vec<(QuantumAtom, bool)>),
}

/// Syntactic category of a piece of text.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Category {
    Classical,
    Real,
    Complex,
    Quantum,
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Category::Classical => "classical",
            Category::Real => "real",
            Category::Complex => "complex",
            Category::Quantum => "quantum",
        })
    }
}

/// A parsed AST of any category.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ast {
    Classical(Classical),
    Real(RealTerm),
    Complex(ComplexTerm),
    Quantum(Quantum),
}

impl Ast {
    pub fn category(&self) -> Category {
        match self {
            Ast::Classical(_) => Category::Classical,
            Ast::Real(_) => Category::Real,
            Ast::Complex(_) => Category::Complex,
            Ast::Quantum(_) => Category::Quantum,
        }
    }
}

impl QuantumAtom {
    pub fn to_formula(&self) -> Quantum {
        match self {
            QuantumAtom::Classical(a) => Quantum::Classical(a.clone()),
            QuantumAtom::Leq(a, b) => Quantum::Leq(a.clone(), b.clone()),
            QuantumAtom::NonEtg(f) => Quantum::NonEtg(f.clone()),
        }
    }
}

// Builders. These keep call sites in the calculus and the model finder short.

#[allow(clippy::should_implement_trait)]
impl Classical {
    pub fn qb(k: u32) -> Classical {
        Classical::Qubit(Qubit(k))
    }
    pub fn not(a: Classical) -> Classical {
        Classical::Neg(Box::new(a))
    }
    pub fn imp(a: Classical, b: Classical) -> Classical {
        Classical::Imp(Box::new(a), Box::new(b))
    }
    pub fn and(a: Classical, b: Classical) -> Classical {
        Classical::And(Box::new(a), Box::new(b))
    }
    pub fn or(a: Classical, b: Classical) -> Classical {
        Classical::Or(Box::new(a), Box::new(b))
    }
    pub fn iff(a: Classical, b: Classical) -> Classical {
        Classical::Iff(Box::new(a), Box::new(b))
    }
}

#[allow(clippy::should_implement_trait)]
impl RealTerm {
    pub fn constant(c: Const) -> RealTerm {
        RealTerm::Const(c)
    }
    pub fn int(n: i64) -> RealTerm {
        RealTerm::Const(Const::int(n))
    }
    pub fn var(k: u32) -> RealTerm {
        RealTerm::Var(RealVar(k))
    }
    pub fn add(a: RealTerm, b: RealTerm) -> RealTerm {
        RealTerm::Add(Box::new(a), Box::new(b))
    }
    pub fn mul(a: RealTerm, b: RealTerm) -> RealTerm {
        RealTerm::Mul(Box::new(a), Box::new(b))
    }
    pub fn re(u: ComplexTerm) -> RealTerm {
        RealTerm::Re(Box::new(u))
    }
    pub fn im(u: ComplexTerm) -> RealTerm {
        RealTerm::Im(Box::new(u))
    }
    pub fn abs(u: ComplexTerm) -> RealTerm {
        RealTerm::Abs(Box::new(u))
    }
    pub fn arg(u: ComplexTerm) -> RealTerm {
        RealTerm::Arg(Box::new(u))
    }
    /// `|u|²` written as the product of two moduli.
    pub fn abs_sq(u: ComplexTerm) -> RealTerm {
        RealTerm::mul(RealTerm::abs(u.clone()), RealTerm::abs(u))
    }
    pub fn prob(a: Classical) -> RealTerm {
        RealTerm::Prob(a)
    }
}

#[allow(clippy::should_implement_trait)]
impl ComplexTerm {
    pub fn var(k: u32) -> ComplexTerm {
        ComplexTerm::Var(ComplexVar(k))
    }
    pub fn cart(a: RealTerm, b: RealTerm) -> ComplexTerm {
        ComplexTerm::Cart(Box::new(a), Box::new(b))
    }
    pub fn polar(a: RealTerm, b: RealTerm) -> ComplexTerm {
        ComplexTerm::Polar(Box::new(a), Box::new(b))
    }
    /// Embeds a real term as `t + i0`.
    pub fn real(t: RealTerm) -> ComplexTerm {
        ComplexTerm::cart(t, RealTerm::int(0))
    }
    pub fn int(n: i64) -> ComplexTerm {
        ComplexTerm::real(RealTerm::int(n))
    }
    pub fn amp(frame: QubitSet, set: QubitSet) -> ComplexTerm {
        ComplexTerm::Amp { frame, set }
    }
    pub fn amp_of(frame: QubitSet, set: QubitSet, guard: Classical) -> ComplexTerm {
        ComplexTerm::AmpOf { frame, set, guard: Box::new(guard) }
    }
    pub fn add(a: ComplexTerm, b: ComplexTerm) -> ComplexTerm {
        ComplexTerm::Add(Box::new(a), Box::new(b))
    }
    pub fn mul(a: ComplexTerm, b: ComplexTerm) -> ComplexTerm {
        ComplexTerm::Mul(Box::new(a), Box::new(b))
    }
    pub fn conj(a: ComplexTerm) -> ComplexTerm {
        ComplexTerm::Conj(Box::new(a))
    }
    pub fn ite(g: Classical, a: ComplexTerm, b: ComplexTerm) -> ComplexTerm {
        ComplexTerm::Ite(Box::new(g), Box::new(a), Box::new(b))
    }
}

#[allow(clippy::should_implement_trait)]
impl Quantum {
    pub fn classical(a: Classical) -> Quantum {
        Quantum::Classical(a)
    }
    pub fn not(a: Quantum) -> Quantum {
        Quantum::Not(Box::new(a))
    }
    pub fn imp(a: Quantum, b: Quantum) -> Quantum {
        Quantum::Imp(Box::new(a), Box::new(b))
    }
    pub fn or(a: Quantum, b: Quantum) -> Quantum {
        Quantum::Or(Box::new(a), Box::new(b))
    }
    pub fn and(a: Quantum, b: Quantum) -> Quantum {
        Quantum::And(Box::new(a), Box::new(b))
    }
    pub fn iff(a: Quantum, b: Quantum) -> Quantum {
        Quantum::Iff(Box::new(a), Box::new(b))
    }
    pub fn leq(a: RealTerm, b: RealTerm) -> Quantum {
        Quantum::Leq(a, b)
    }
    pub fn eq_r(a: RealTerm, b: RealTerm) -> Quantum {
        Quantum::EqR(a, b)
    }
    pub fn eq_c(a: ComplexTerm, b: ComplexTerm) -> Quantum {
        Quantum::EqC(a, b)
    }
    pub fn netg(f: QubitSet) -> Quantum {
        Quantum::NonEtg(f)
    }

    /// Left-nested sugared conjunction; `None` for an empty list.
    pub fn conj_all<I: IntoIterator<Item = Quantum>>(items: I) -> Option<Quantum> {
        items.into_iter().reduce(Quantum::and)
    }

    /// Left-nested sugared disjunction; `None` for an empty list.
    pub fn disj_all<I: IntoIterator<Item = Quantum>>(items: I) -> Option<Quantum> {
        items.into_iter().reduce(Quantum::or)
    }
}

/// Subsets of `frame` in canonical order: subset number `k` contains
/// `frame[i]` iff bit `i` of `k` is set.
pub fn subsets(frame: &QubitSet) -> Vec<QubitSet> {
    let items: Vec<Qubit> = frame.iter().copied().collect();
    assert!(items.len() < 31, "subset enumeration limited to 30 qubits");
    (0u32..(1u32 << items.len()))
        .map(|k| items.iter().enumerate().filter(|(i, _)| k & (1 << i) != 0).map(|(_, q)| *q).collect())
        .collect()
}
