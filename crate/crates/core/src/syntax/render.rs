use std::fmt::{self, Write};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::ast::*;
use super::Aliases;

/// Renders an AST in the ASCII surface grammar with `qbN` qubit names.
pub fn render(ast: &Ast) -> String {
    render_with(ast, &Aliases::new())
}

/// Renders an AST, writing qubits with their alias names where one exists.
pub fn render_with(ast: &Ast, aliases: &Aliases) -> String {
    let mut r = Renderer { out: String::new(), aliases };
    match ast {
        Ast::Classical(a) => r.classical(a),
        Ast::Real(t) => r.real(t),
        Ast::Complex(u) => r.complex(u),
        Ast::Quantum(g) => r.quantum(g),
    }
    r.out
}

struct Renderer<'a> {
    out: String,
    aliases: &'a Aliases,
}

impl Renderer<'_> {
    fn s(&mut self, text: &str) {
        self.out.push_str(text);
    }

    fn qubit(&mut self, q: Qubit) {
        match self.aliases.name_of(q) {
            Some(name) => {
                let name = name.to_string();
                self.s(&name)
            }
            None => {
                let _ = write!(self.out, "{q}");
            }
        }
    }

    fn set_items(&mut self, set: &QubitSet) {
        for (i, q) in set.iter().enumerate() {
            if i > 0 {
                self.s(",");
            }
            self.qubit(*q);
        }
    }

    fn braced(&mut self, set: &QubitSet) {
        self.s("{");
        self.set_items(set);
        self.s("}");
    }

    fn classical(&mut self, a: &Classical) {
        match a {
            Classical::Qubit(q) => self.qubit(*q),
            Classical::Top => self.s("top"),
            Classical::Bot => self.s("bot"),
            Classical::Neg(b) => {
                self.s("~ ");
                self.classical(b);
            }
            Classical::Imp(x, y) => self.classical_bin(x, "->", y),
            Classical::And(x, y) => self.classical_bin(x, "/\\", y),
            Classical::Or(x, y) => self.classical_bin(x, "\\/", y),
            Classical::Iff(x, y) => self.classical_bin(x, "<->", y),
            Classical::Molecular { frame, set } => {
                self.s("mol");
                self.braced(frame);
                self.braced(set);
            }
        }
    }

    fn classical_bin(&mut self, x: &Classical, op: &str, y: &Classical) {
        self.s("(");
        self.classical(x);
        self.s(" ");
        self.s(op);
        self.s(" ");
        self.classical(y);
        self.s(")");
    }

    fn constant(&mut self, c: &Const) {
        match c {
            Const::Num(r) => {
                let text = decimal_text(r.numer(), r.denom());
                self.s(&text)
            }
            Const::Pi => self.s("pi"),
            Const::E => self.s("e"),
            Const::Sqrt(x) => {
                self.s("sqrt(");
                self.constant(x);
                self.s(")");
            }
            Const::Neg(x) => {
                self.s("-");
                if matches!(**x, Const::Div(..)) {
                    self.s("(");
                    self.constant(x);
                    self.s(")");
                } else {
                    self.constant(x);
                }
            }
            Const::Div(x, y) => {
                self.constant(x);
                self.s("/");
                if matches!(**y, Const::Div(..)) {
                    self.s("(");
                    self.constant(y);
                    self.s(")");
                } else {
                    self.constant(y);
                }
            }
        }
    }

    fn real(&mut self, t: &RealTerm) {
        match t {
            RealTerm::Var(v) => {
                let _ = write!(self.out, "{v}");
            }
            RealTerm::Const(c) => self.constant(c),
            RealTerm::Prob(a) => {
                self.s("Pr(");
                self.classical(a);
                self.s(")");
            }
            RealTerm::Add(a, b) => {
                self.s("(");
                self.real(a);
                self.s(" + ");
                self.real(b);
                self.s(")");
            }
            RealTerm::Mul(a, b) => {
                self.s("(");
                self.real(a);
                self.s(" * ");
                self.real(b);
                self.s(")");
            }
            RealTerm::Re(u) => self.call("re", u),
            RealTerm::Im(u) => self.call("im", u),
            RealTerm::Arg(u) => self.call("arg", u),
            RealTerm::Abs(u) => self.call("abs", u),
            RealTerm::SumSq { frame, guard } => {
                self.s("sumsq");
                self.braced(frame);
                if *guard != Classical::Top {
                    self.s("[");
                    self.classical(guard);
                    self.s("]");
                }
            }
        }
    }

    fn call(&mut self, name: &str, u: &ComplexTerm) {
        self.s(name);
        self.s("(");
        self.complex(u);
        self.s(")");
    }

    fn complex(&mut self, u: &ComplexTerm) {
        match u {
            ComplexTerm::Var(v) => {
                let _ = write!(self.out, "{v}");
            }
            ComplexTerm::Amp { frame, set } => {
                self.s("amp");
                self.braced(frame);
                self.braced(set);
            }
            ComplexTerm::AmpOf { frame, set, guard } => {
                self.s("amp");
                self.braced(frame);
                self.braced(set);
                self.s("[");
                self.classical(guard);
                self.s("]");
            }
            ComplexTerm::Cart(a, b) => {
                self.s("(");
                self.real(a);
                self.s(" + i ");
                self.real(b);
                self.s(")");
            }
            ComplexTerm::Polar(a, b) => {
                self.real(a);
                self.s(" e^{i ");
                self.real(b);
                self.s("}");
            }
            ComplexTerm::Conj(a) => self.call("conj", a),
            ComplexTerm::Add(a, b) => {
                self.s("(");
                self.complex(a);
                self.s(" + ");
                self.complex(b);
                self.s(")");
            }
            ComplexTerm::Mul(a, b) => {
                self.s("(");
                self.complex(a);
                self.s(" * ");
                self.complex(b);
                self.s(")");
            }
            ComplexTerm::Ite(g, a, b) => {
                self.s("ite(");
                self.classical(g);
                self.s("; ");
                self.complex(a);
                self.s("; ");
                self.complex(b);
                self.s(")");
            }
        }
    }

    fn quantum(&mut self, g: &Quantum) {
        match g {
            Quantum::Classical(a) => self.classical(a),
            Quantum::Leq(a, b) => self.compare_r(a, "<=", b),
            Quantum::Lt(a, b) => self.compare_r(a, "<", b),
            Quantum::EqR(a, b) => self.compare_r(a, "=", b),
            Quantum::EqC(a, b) => {
                self.s("(");
                self.complex(a);
                self.s(" = ");
                self.complex(b);
                self.s(")");
            }
            Quantum::NonEtg(f) => {
                self.s("[");
                self.set_items(f);
                self.s("]");
            }
            Quantum::Cond { sub, frame } => {
                self.s("[");
                self.set_items(sub);
                self.s(" // ");
                self.set_items(frame);
                self.s("]");
            }
            Quantum::Not(a) => {
                self.s("! ");
                self.quantum(a);
            }
            Quantum::Imp(a, b) => self.quantum_bin(a, "==>", b),
            Quantum::Or(a, b) => self.quantum_bin(a, "||", b),
            Quantum::And(a, b) => self.quantum_bin(a, "&&", b),
            Quantum::Iff(a, b) => self.quantum_bin(a, "<=>", b),
            Quantum::Entangled { left, frame, right } => {
                self.s("(");
                self.qubit(*left);
                self.s(" ~");
                self.braced(frame);
                self.s(" ");
                self.qubit(*right);
                self.s(")");
            }
            Quantum::Poss { frame, items } => {
                self.s("poss");
                self.braced(frame);
                self.s("(");
                for (i, (a, u)) in items.iter().enumerate() {
                    if i > 0 {
                        self.s(", ");
                    }
                    self.classical(a);
                    self.s(" : ");
                    self.complex(u);
                }
                self.s(")");
            }
            Quantum::Dia(a) => {
                self.s("dia(");
                self.classical(a);
                self.s(")");
            }
            Quantum::Box(a) => {
                self.s("box(");
                self.classical(a);
                self.s(")");
            }
            Quantum::Molecular(lits) => {
                self.s("qmol{");
                for (i, (atom, positive)) in lits.iter().enumerate() {
                    if i > 0 {
                        self.s(", ");
                    }
                    if !positive {
                        self.s("! ");
                    }
                    self.quantum(&atom.to_formula());
                }
                self.s("}");
            }
        }
    }

    fn compare_r(&mut self, a: &RealTerm, op: &str, b: &RealTerm) {
        self.s("(");
        self.real(a);
        self.s(" ");
        self.s(op);
        self.s(" ");
        self.real(b);
        self.s(")");
    }

    fn quantum_bin(&mut self, a: &Quantum, op: &str, b: &Quantum) {
        self.s("(");
        self.quantum(a);
        self.s(" ");
        self.s(op);
        self.s(" ");
        self.quantum(b);
        self.s(")");
    }
}

/// Exact decimal text when the denominator divides a power of ten, otherwise
/// a 17-digit approximation.
fn decimal_text(num: &BigInt, den: &BigInt) -> String {
    if den.is_one() {
        return num.to_string();
    }
    let ten = BigInt::from(10);
    let mut scale = BigInt::one();
    for digits in 1..=40usize {
        scale *= &ten;
        if (&scale % den).is_zero() {
            let scaled = num * (&scale / den);
            let mut text = scaled.to_string();
            while text.len() <= digits {
                text.insert(0, '0');
            }
            text.insert(text.len() - digits, '.');
            return text;
        }
    }
    let v = num.to_string().parse::<f64>().unwrap_or(0.0) / den.to_string().parse::<f64>().unwrap_or(1.0);
    format!("{v:.17}")
}

macro_rules! display_via_render {
    ($ty:ty, $variant:ident) => {
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&render(&Ast::$variant(self.clone())))
            }
        }
    };
}

display_via_render!(Classical, Classical);
display_via_render!(RealTerm, Real);
display_via_render!(ComplexTerm, Complex);
display_via_render!(Quantum, Quantum);

impl fmt::Display for Ast {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}
