//! Recursive-descent parser for the fully parenthesized ASCII grammar.
//!
//! Binary forms are always wrapped in parentheses, so at every `(` the parser
//! looks ahead for the first operator at the same nesting depth and picks the
//! production from it. No backtracking is needed.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{pow, Zero};

use super::ast::*;
use super::lexer::{tokenize, Pos, Tok};
use super::{qubit_from_name, Aliases, ParseError};

/// Parses `text` as an expression of the given category with no aliases.
pub fn parse(text: &str, category: Category) -> Result<Ast, ParseError> {
    parse_with(text, category, &Aliases::new())
}

/// Parses `text` as an expression of the given category. If the text does not
/// parse in that category but does in another, a category error is reported.
pub fn parse_with(text: &str, category: Category, aliases: &Aliases) -> Result<Ast, ParseError> {
    match parse_in(text, category, aliases) {
        Ok(ast) => Ok(ast),
        Err(err) => {
            for other in [Category::Classical, Category::Real, Category::Complex, Category::Quantum] {
                if other == category || is_subcategory(other, category) {
                    continue;
                }
                if parse_in(text, other, aliases).is_ok() {
                    return Err(ParseError::Category { expected: category, found: other });
                }
            }
            Err(err)
        }
    }
}

// A classical formula is also a quantum formula, and real terms embed into
// complex ones; neither case is a category mismatch.
fn is_subcategory(sub: Category, sup: Category) -> bool {
    matches!((sub, sup), (Category::Classical, Category::Quantum) | (Category::Real, Category::Complex))
}

fn parse_in(text: &str, category: Category, aliases: &Aliases) -> Result<Ast, ParseError> {
    let toks = tokenize(text, 1)?;
    let mut p = Parser { toks, pos: 0, aliases };
    let ast = match category {
        Category::Classical => Ast::Classical(p.classical()?),
        Category::Real => match p.term()? {
            Term::Real(t) => Ast::Real(t),
            Term::Complex(_) => {
                return Err(ParseError::Category { expected: Category::Real, found: Category::Complex })
            }
        },
        Category::Complex => Ast::Complex(p.term()?.into_complex()),
        Category::Quantum => Ast::Quantum(p.quantum()?),
    };
    p.expect_end()?;
    Ok(ast)
}

pub fn parse_classical(text: &str, aliases: &Aliases) -> Result<Classical, ParseError> {
    match parse_with(text, Category::Classical, aliases)? {
        Ast::Classical(a) => Ok(a),
        _ => unreachable!(),
    }
}

pub fn parse_real(text: &str, aliases: &Aliases) -> Result<RealTerm, ParseError> {
    match parse_with(text, Category::Real, aliases)? {
        Ast::Real(a) => Ok(a),
        _ => unreachable!(),
    }
}

pub fn parse_complex(text: &str, aliases: &Aliases) -> Result<ComplexTerm, ParseError> {
    match parse_with(text, Category::Complex, aliases)? {
        Ast::Complex(a) => Ok(a),
        _ => unreachable!(),
    }
}

pub fn parse_quantum(text: &str, aliases: &Aliases) -> Result<Quantum, ParseError> {
    match parse_with(text, Category::Quantum, aliases)? {
        Ast::Quantum(a) => Ok(a),
        _ => unreachable!(),
    }
}

/// A term whose category is decided by its shape.
enum Term {
    Real(RealTerm),
    Complex(ComplexTerm),
}

impl Term {
    fn into_complex(self) -> ComplexTerm {
        match self {
            Term::Real(t) => ComplexTerm::real(t),
            Term::Complex(u) => u,
        }
    }
}

/// Amplitude vector terms exist only during parsing; each is a list of
/// component terms indexed by the canonical subset order of its frame.
struct VecTerm {
    frame: QubitSet,
    parts: Vec<ComplexTerm>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Shape {
    Classical,
    Quantum,
    Compare,
    Entangle,
    Cart,
    Sum,
    Product,
    Group,
}

struct Parser<'a> {
    toks: Vec<(Tok, Pos)>,
    pos: usize,
    aliases: &'a Aliases,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|(t, _)| t)
    }

    fn here(&self) -> Pos {
        self.toks.get(self.pos).or_else(|| self.toks.last()).map(|(_, p)| *p).unwrap_or(Pos { line: 1, col: 1 })
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        let p = self.here();
        let found = match self.peek() {
            Some(t) => format!(" (found {})", t.describe()),
            None => " (found end of input)".into(),
        };
        Err(ParseError::Syntax { line: p.line, col: p.col, message: format!("{}{found}", message.into()) })
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.peek().cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(format!("expected {}", tok.describe()))
        }
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        if self.pos < self.toks.len() {
            self.error("unexpected trailing input")
        } else {
            Ok(())
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn ident_is(&self, name: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == name)
    }

    fn keyword(&mut self, name: &str) -> Result<(), ParseError> {
        if self.ident_is(name) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(format!("expected `{name}`"))
        }
    }

    fn qubit_name(&self, name: &str) -> Option<Qubit> {
        qubit_from_name(name, self.aliases)
    }

    /// Classifies the parenthesized form starting at the current `(`.
    fn shape(&self) -> Option<Shape> {
        let mut depth = 0usize;
        let mut k = 1;
        while let Some(t) = self.peek_at(k) {
            match t {
                Tok::LParen | Tok::LBrace | Tok::LBrack | Tok::EPow => depth += 1,
                Tok::TildeBrace if depth == 0 => return Some(Shape::Entangle),
                Tok::TildeBrace => depth += 1,
                Tok::RParen | Tok::RBrace | Tok::RBrack => {
                    if depth == 0 {
                        return Some(Shape::Group);
                    }
                    depth -= 1;
                }
                _ if depth > 0 => {}
                Tok::Arrow | Tok::Wedge | Tok::Vee | Tok::DArrow => return Some(Shape::Classical),
                Tok::QImp | Tok::QAnd | Tok::QOr | Tok::QIff => return Some(Shape::Quantum),
                Tok::Le | Tok::Lt | Tok::Eq => return Some(Shape::Compare),
                Tok::Plus => {
                    return Some(if matches!(self.peek_at(k + 1), Some(Tok::Ident(s)) if s == "i") {
                        Shape::Cart
                    } else {
                        Shape::Sum
                    })
                }
                Tok::Star => return Some(Shape::Product),
                _ => {}
            }
            k += 1;
        }
        None
    }

    // ---- sets -------------------------------------------------------------

    fn qubit_list(&mut self, close: Tok) -> Result<QubitSet, ParseError> {
        let mut set = QubitSet::new();
        if self.eat(&close) || (close == Tok::RBrack && self.peek() == Some(&Tok::DSlash)) {
            return Ok(set);
        }
        loop {
            let q = self.qubit()?;
            if !set.insert(q) {
                return self.error(format!("duplicate qubit {q} in set"));
            }
            if self.eat(&Tok::Comma) {
                continue;
            }
            if close == Tok::RBrack && self.peek() == Some(&Tok::DSlash) {
                return Ok(set);
            }
            self.expect(close.clone())?;
            return Ok(set);
        }
    }

    fn braced_set(&mut self) -> Result<QubitSet, ParseError> {
        self.expect(Tok::LBrace)?;
        self.qubit_list(Tok::RBrace)
    }

    fn qubit(&mut self) -> Result<Qubit, ParseError> {
        match self.peek() {
            Some(Tok::Ident(name)) => match self.qubit_name(name) {
                Some(q) => {
                    self.pos += 1;
                    Ok(q)
                }
                None => self.error("expected a qubit symbol"),
            },
            _ => self.error("expected a qubit symbol"),
        }
    }

    // ---- classical ----------------------------------------------------------

    fn classical(&mut self) -> Result<Classical, ParseError> {
        match self.peek() {
            Some(Tok::Tilde) => {
                self.pos += 1;
                Ok(Classical::not(self.classical()?))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let a = self.classical()?;
                let op = self.bump();
                let b = self.classical()?;
                self.expect(Tok::RParen)?;
                match op {
                    Some(Tok::Arrow) => Ok(Classical::imp(a, b)),
                    Some(Tok::Wedge) => Ok(Classical::and(a, b)),
                    Some(Tok::Vee) => Ok(Classical::or(a, b)),
                    Some(Tok::DArrow) => Ok(Classical::iff(a, b)),
                    _ => {
                        self.pos -= 1;
                        self.error("expected a classical connective")
                    }
                }
            }
            Some(Tok::Ident(name)) => {
                let name = name.clone();
                match name.as_str() {
                    "top" => {
                        self.pos += 1;
                        Ok(Classical::Top)
                    }
                    "bot" => {
                        self.pos += 1;
                        Ok(Classical::Bot)
                    }
                    "mol" => {
                        self.pos += 1;
                        let frame = self.braced_set()?;
                        let set = self.braced_set()?;
                        Ok(Classical::Molecular { frame, set })
                    }
                    _ => match self.qubit_name(&name) {
                        Some(q) => {
                            self.pos += 1;
                            Ok(Classical::Qubit(q))
                        }
                        None => self.error("expected a classical formula"),
                    },
                }
            }
            _ => self.error("expected a classical formula"),
        }
    }

    // ---- quantum ------------------------------------------------------------

    fn quantum(&mut self) -> Result<Quantum, ParseError> {
        match self.peek() {
            Some(Tok::Bang) => {
                self.pos += 1;
                Ok(Quantum::not(self.quantum()?))
            }
            Some(Tok::LBrack) => {
                self.pos += 1;
                let sub = self.qubit_list(Tok::RBrack)?;
                if self.eat(&Tok::DSlash) {
                    let frame = self.qubit_list(Tok::RBrack)?;
                    Ok(Quantum::Cond { sub, frame })
                } else {
                    Ok(Quantum::NonEtg(sub))
                }
            }
            Some(Tok::LParen) => match self.shape() {
                Some(Shape::Classical) => Ok(Quantum::Classical(self.classical()?)),
                Some(Shape::Quantum) => {
                    self.pos += 1;
                    let a = self.quantum()?;
                    let op = self.bump();
                    let b = self.quantum()?;
                    self.expect(Tok::RParen)?;
                    Ok(match op {
                        Some(Tok::QImp) => Quantum::imp(a, b),
                        Some(Tok::QAnd) => Quantum::and(a, b),
                        Some(Tok::QOr) => Quantum::or(a, b),
                        Some(Tok::QIff) => Quantum::iff(a, b),
                        _ => {
                            self.pos -= 1;
                            return self.error("expected a quantum connective");
                        }
                    })
                }
                Some(Shape::Compare) => self.comparison(),
                Some(Shape::Entangle) => {
                    self.pos += 1;
                    let left = self.qubit()?;
                    self.expect(Tok::TildeBrace)?;
                    let frame = self.qubit_list(Tok::RBrace)?;
                    let right = self.qubit()?;
                    self.expect(Tok::RParen)?;
                    Ok(Quantum::Entangled { left, frame, right })
                }
                _ => self.error("expected a quantum formula"),
            },
            Some(Tok::Ident(name)) => match name.as_str() {
                "dia" | "box" => {
                    let is_dia = name == "dia";
                    self.pos += 1;
                    self.expect(Tok::LParen)?;
                    let a = self.classical()?;
                    self.expect(Tok::RParen)?;
                    Ok(if is_dia { Quantum::Dia(a) } else { Quantum::Box(a) })
                }
                "poss" => {
                    self.pos += 1;
                    let frame = self.braced_set()?;
                    self.expect(Tok::LParen)?;
                    let mut items = Vec::new();
                    loop {
                        let a = self.classical()?;
                        self.expect(Tok::Colon)?;
                        let u = self.term()?.into_complex();
                        items.push((a, u));
                        if !self.eat(&Tok::Comma) {
                            break;
                        }
                    }
                    self.expect(Tok::RParen)?;
                    Ok(Quantum::Poss { frame, items })
                }
                "qmol" => {
                    self.pos += 1;
                    self.expect(Tok::LBrace)?;
                    let mut lits = Vec::new();
                    if !self.eat(&Tok::RBrace) {
                        loop {
                            let g = self.quantum()?;
                            let lit = match g {
                                Quantum::Not(inner) => (atom_of(*inner), false),
                                other => (atom_of(other), true),
                            };
                            match lit {
                                (Some(a), pol) => lits.push((a, pol)),
                                (None, _) => return self.error("molecular entries must be quantum literals"),
                            }
                            if !self.eat(&Tok::Comma) {
                                break;
                            }
                        }
                        self.expect(Tok::RBrace)?;
                    }
                    Ok(Quantum::Molecular(lits))
                }
                "veq" | "vsub" => {
                    let is_eq = name == "veq";
                    self.pos += 1;
                    self.expect(Tok::LParen)?;
                    let a = self.vec_term()?;
                    self.expect(Tok::Comma)?;
                    let b = self.vec_term()?;
                    self.expect(Tok::RParen)?;
                    if a.frame != b.frame {
                        return self.error("vector terms compared over different frames");
                    }
                    Ok(if is_eq { vec_equal(a, b) } else { vec_included(a, b) })
                }
                _ => Ok(Quantum::Classical(self.classical()?)),
            },
            _ => Ok(Quantum::Classical(self.classical()?)),
        }
    }

    fn comparison(&mut self) -> Result<Quantum, ParseError> {
        self.expect(Tok::LParen)?;
        let a = self.term()?;
        let op = self.bump();
        let b = self.term()?;
        self.expect(Tok::RParen)?;
        match op {
            Some(Tok::Eq) => match (a, b) {
                (Term::Real(a), Term::Real(b)) => Ok(Quantum::EqR(a, b)),
                (a, b) => Ok(Quantum::EqC(a.into_complex(), b.into_complex())),
            },
            Some(Tok::Le) | Some(Tok::Lt) => match (a, b) {
                (Term::Real(a), Term::Real(b)) => {
                    Ok(if op == Some(Tok::Le) { Quantum::Leq(a, b) } else { Quantum::Lt(a, b) })
                }
                _ => self.error("order comparisons need real terms"),
            },
            _ => self.error("expected a comparison"),
        }
    }

    // ---- vectors ------------------------------------------------------------

    fn vec_term(&mut self) -> Result<VecTerm, ParseError> {
        let Some(Tok::Ident(name)) = self.peek().cloned() else {
            return self.error("expected an amplitude vector term");
        };
        self.pos += 1;
        match name.as_str() {
            "vec" => {
                let frame = self.braced_set()?;
                let guard = if self.eat(&Tok::LBrack) {
                    let g = self.classical()?;
                    self.expect(Tok::RBrack)?;
                    Some(g)
                } else {
                    None
                };
                let parts = subsets(&frame)
                    .into_iter()
                    .map(|a| match &guard {
                        Some(g) => ComplexTerm::amp_of(frame.clone(), a, g.clone()),
                        None => ComplexTerm::amp(frame.clone(), a),
                    })
                    .collect();
                Ok(VecTerm { frame, parts })
            }
            "vzero" => {
                let frame = self.braced_set()?;
                let parts = subsets(&frame)
                    .into_iter()
                    .map(|a| ComplexTerm::mul(ComplexTerm::int(0), ComplexTerm::amp(frame.clone(), a)))
                    .collect();
                Ok(VecTerm { frame, parts })
            }
            "vscale" => {
                self.expect(Tok::LParen)?;
                let u = self.term()?.into_complex();
                self.expect(Tok::Comma)?;
                let w = self.vec_term()?;
                self.expect(Tok::RParen)?;
                let parts = w.parts.into_iter().map(|p| ComplexTerm::mul(u.clone(), p)).collect();
                Ok(VecTerm { frame: w.frame, parts })
            }
            "vadd" => {
                self.expect(Tok::LParen)?;
                let a = self.vec_term()?;
                self.expect(Tok::Comma)?;
                let b = self.vec_term()?;
                self.expect(Tok::RParen)?;
                if a.frame != b.frame {
                    return self.error("vector terms added over different frames");
                }
                let parts = a.parts.into_iter().zip(b.parts).map(|(x, y)| ComplexTerm::add(x, y)).collect();
                Ok(VecTerm { frame: a.frame, parts })
            }
            _ => {
                self.pos -= 1;
                self.error("expected an amplitude vector term")
            }
        }
    }

    // ---- terms --------------------------------------------------------------

    fn term(&mut self) -> Result<Term, ParseError> {
        let t = self.term_primary()?;
        if self.peek() == Some(&Tok::EPow) {
            let Term::Real(modulus) = t else {
                return self.error("polar form needs a real modulus");
            };
            self.pos += 1;
            self.keyword("i")?;
            let angle = self.real_term()?;
            self.expect(Tok::RBrace)?;
            return Ok(Term::Complex(ComplexTerm::polar(modulus, angle)));
        }
        Ok(t)
    }

    fn real_term(&mut self) -> Result<RealTerm, ParseError> {
        match self.term()? {
            Term::Real(t) => Ok(t),
            Term::Complex(_) => self.error("expected a real term"),
        }
    }

    fn complex_term(&mut self) -> Result<ComplexTerm, ParseError> {
        Ok(self.term()?.into_complex())
    }

    fn term_primary(&mut self) -> Result<Term, ParseError> {
        match self.peek().cloned() {
            Some(Tok::LParen) => match self.shape() {
                Some(Shape::Cart) => {
                    self.pos += 1;
                    let a = self.real_term()?;
                    self.expect(Tok::Plus)?;
                    self.keyword("i")?;
                    let b = self.real_term()?;
                    self.expect(Tok::RParen)?;
                    Ok(Term::Complex(ComplexTerm::cart(a, b)))
                }
                Some(Shape::Sum) | Some(Shape::Product) => {
                    let is_sum = self.shape() == Some(Shape::Sum);
                    self.pos += 1;
                    let a = self.term()?;
                    self.expect(if is_sum { Tok::Plus } else { Tok::Star })?;
                    let b = self.term()?;
                    self.expect(Tok::RParen)?;
                    Ok(match (a, b, is_sum) {
                        (Term::Real(a), Term::Real(b), true) => Term::Real(RealTerm::add(a, b)),
                        (Term::Real(a), Term::Real(b), false) => Term::Real(RealTerm::mul(a, b)),
                        (a, b, true) => Term::Complex(ComplexTerm::add(a.into_complex(), b.into_complex())),
                        (a, b, false) => Term::Complex(ComplexTerm::mul(a.into_complex(), b.into_complex())),
                    })
                }
                Some(Shape::Group) => Ok(Term::Real(RealTerm::Const(self.constant()?))),
                _ => self.error("expected a term"),
            },
            Some(Tok::Number(_)) | Some(Tok::Minus) => Ok(Term::Real(RealTerm::Const(self.constant()?))),
            Some(Tok::Ident(name)) => self.named_term(&name),
            _ => self.error("expected a term"),
        }
    }

    fn named_term(&mut self, name: &str) -> Result<Term, ParseError> {
        if let Some(k) = var_index(name, 'x') {
            self.pos += 1;
            return Ok(Term::Real(RealTerm::var(k)));
        }
        if let Some(k) = var_index(name, 'z') {
            self.pos += 1;
            return Ok(Term::Complex(ComplexTerm::var(k)));
        }
        match name {
            "pi" | "e" | "sqrt" => Ok(Term::Real(RealTerm::Const(self.constant()?))),
            "Pr" => {
                self.pos += 1;
                self.expect(Tok::LParen)?;
                let a = self.classical()?;
                self.expect(Tok::RParen)?;
                Ok(Term::Real(RealTerm::Prob(a)))
            }
            "re" | "im" | "arg" | "abs" | "conj" => {
                let name = name.to_string();
                self.pos += 1;
                self.expect(Tok::LParen)?;
                let u = self.complex_term()?;
                self.expect(Tok::RParen)?;
                let u = Box::new(u);
                Ok(match name.as_str() {
                    "re" => Term::Real(RealTerm::Re(u)),
                    "im" => Term::Real(RealTerm::Im(u)),
                    "arg" => Term::Real(RealTerm::Arg(u)),
                    "abs" => Term::Real(RealTerm::Abs(u)),
                    _ => Term::Complex(ComplexTerm::Conj(u)),
                })
            }
            "amp" => {
                self.pos += 1;
                let frame = self.braced_set()?;
                let set = self.braced_set()?;
                if self.eat(&Tok::LBrack) {
                    let g = self.classical()?;
                    self.expect(Tok::RBrack)?;
                    Ok(Term::Complex(ComplexTerm::amp_of(frame, set, g)))
                } else {
                    Ok(Term::Complex(ComplexTerm::amp(frame, set)))
                }
            }
            "sumsq" => {
                self.pos += 1;
                let frame = self.braced_set()?;
                let guard = if self.eat(&Tok::LBrack) {
                    let g = self.classical()?;
                    self.expect(Tok::RBrack)?;
                    g
                } else {
                    Classical::Top
                };
                Ok(Term::Real(RealTerm::SumSq { frame, guard }))
            }
            "ite" => {
                self.pos += 1;
                self.expect(Tok::LParen)?;
                let g = self.classical()?;
                self.expect(Tok::Semi)?;
                let a = self.complex_term()?;
                self.expect(Tok::Semi)?;
                let b = self.complex_term()?;
                self.expect(Tok::RParen)?;
                Ok(Term::Complex(ComplexTerm::ite(g, a, b)))
            }
            _ => self.error("expected a term"),
        }
    }

    // ---- constants ----------------------------------------------------------

    fn constant(&mut self) -> Result<Const, ParseError> {
        let mut c = self.const_unary()?;
        while self.eat(&Tok::Slash) {
            let d = self.const_unary()?;
            c = Const::Div(Box::new(c), Box::new(d));
        }
        Ok(c)
    }

    fn const_unary(&mut self) -> Result<Const, ParseError> {
        if self.eat(&Tok::Minus) {
            return Ok(Const::Neg(Box::new(self.const_unary()?)));
        }
        match self.peek().cloned() {
            Some(Tok::Number(s)) => {
                self.pos += 1;
                Ok(Const::Num(decimal(&s)))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let c = self.constant()?;
                self.expect(Tok::RParen)?;
                Ok(c)
            }
            Some(Tok::Ident(s)) if s == "pi" => {
                self.pos += 1;
                Ok(Const::Pi)
            }
            Some(Tok::Ident(s)) if s == "e" => {
                self.pos += 1;
                Ok(Const::E)
            }
            Some(Tok::Ident(s)) if s == "sqrt" => {
                self.pos += 1;
                self.expect(Tok::LParen)?;
                let c = self.constant()?;
                self.expect(Tok::RParen)?;
                Ok(Const::Sqrt(Box::new(c)))
            }
            _ => self.error("expected a constant"),
        }
    }
}

fn var_index(name: &str, prefix: char) -> Option<u32> {
    let digits = name.strip_prefix(prefix)?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

fn decimal(s: &str) -> BigRational {
    match s.split_once('.') {
        None => BigRational::from_integer(s.parse::<BigInt>().unwrap_or_else(|_| BigInt::zero())),
        Some((int, frac)) => {
            let digits: BigInt = format!("{int}{frac}").parse().unwrap_or_else(|_| BigInt::zero());
            BigRational::new(digits, pow(BigInt::from(10), frac.len()))
        }
    }
}

fn atom_of(g: Quantum) -> Option<QuantumAtom> {
    match g {
        Quantum::Classical(a) => Some(QuantumAtom::Classical(a)),
        Quantum::Leq(a, b) => Some(QuantumAtom::Leq(a, b)),
        Quantum::NonEtg(f) => Some(QuantumAtom::NonEtg(f)),
        _ => None,
    }
}

fn vec_equal(a: VecTerm, b: VecTerm) -> Quantum {
    Quantum::conj_all(a.parts.into_iter().zip(b.parts).map(|(x, y)| Quantum::eq_c(x, y)))
        .expect("vector terms have at least one component")
}

fn vec_included(a: VecTerm, b: VecTerm) -> Quantum {
    Quantum::conj_all(a.parts.into_iter().zip(b.parts).map(|(x, y)| {
        let nonzero = Quantum::not(Quantum::eq_c(x.clone(), ComplexTerm::int(0)));
        Quantum::imp(nonzero, Quantum::eq_c(x, y))
    }))
    .expect("vector terms have at least one component")
}
