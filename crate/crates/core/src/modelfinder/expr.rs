//! Numeric expressions over a flat parameter vector.

use crate::structures::C64;

/// A complex-valued expression. Real quantities are carried with a zero
/// imaginary part.
#[derive(Clone, Debug, PartialEq)]
pub enum Ex {
    Const(C64),
    /// Parameter `re`, plus parameter `im` for complex unknowns.
    Param {
        re: usize,
        im: Option<usize>,
    },
    Add(Box<Ex>, Box<Ex>),
    Mul(Box<Ex>, Box<Ex>),
    Conj(Box<Ex>),
    Re(Box<Ex>),
    Im(Box<Ex>),
    Abs(Box<Ex>),
    Arg(Box<Ex>),
    /// `r e^{iθ}` from the real parts of both operands.
    Polar(Box<Ex>, Box<Ex>),
    /// `|e|²`
    Norm2(Box<Ex>),
}

impl Ex {
    pub fn zero() -> Ex {
        Ex::Const(C64::new(0.0, 0.0))
    }

    pub fn one() -> Ex {
        Ex::Const(C64::new(1.0, 0.0))
    }

    pub fn constant(&self) -> Option<C64> {
        match self {
            Ex::Const(z) => Some(*z),
            _ => None,
        }
    }

    pub fn eval(&self, p: &[f64]) -> C64 {
        match self {
            Ex::Const(z) => *z,
            Ex::Param { re, im } => C64::new(p[*re], im.map(|i| p[i]).unwrap_or(0.0)),
            Ex::Add(a, b) => a.eval(p) + b.eval(p),
            Ex::Mul(a, b) => a.eval(p) * b.eval(p),
            Ex::Conj(a) => a.eval(p).conj(),
            Ex::Re(a) => C64::new(a.eval(p).re, 0.0),
            Ex::Im(a) => C64::new(a.eval(p).im, 0.0),
            Ex::Abs(a) => C64::new(a.eval(p).norm(), 0.0),
            Ex::Arg(a) => C64::new(arg(a.eval(p)), 0.0),
            Ex::Polar(r, t) => C64::from_polar(r.eval(p).re, t.eval(p).re),
            Ex::Norm2(a) => C64::new(a.eval(p).norm_sqr(), 0.0),
        }
    }
}

fn arg(z: C64) -> f64 {
    if z.norm() == 0.0 {
        0.0
    } else {
        z.arg()
    }
}

fn fold(e: Ex) -> Ex {
    let closed = match &e {
        Ex::Add(a, b) | Ex::Mul(a, b) | Ex::Polar(a, b) => a.constant().is_some() && b.constant().is_some(),
        Ex::Conj(a) | Ex::Re(a) | Ex::Im(a) | Ex::Abs(a) | Ex::Arg(a) | Ex::Norm2(a) => a.constant().is_some(),
        _ => false,
    };
    if closed {
        Ex::Const(e.eval(&[]))
    } else {
        e
    }
}

pub fn add(a: Ex, b: Ex) -> Ex {
    match (a.constant(), b.constant()) {
        (Some(z), _) if z == C64::new(0.0, 0.0) => b,
        (_, Some(z)) if z == C64::new(0.0, 0.0) => a,
        _ => fold(Ex::Add(Box::new(a), Box::new(b))),
    }
}

pub fn mul(a: Ex, b: Ex) -> Ex {
    let zero = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    match (a.constant(), b.constant()) {
        (Some(z), _) | (_, Some(z)) if z == zero => Ex::zero(),
        (Some(z), _) if z == one => b,
        (_, Some(z)) if z == one => a,
        _ => fold(Ex::Mul(Box::new(a), Box::new(b))),
    }
}

pub fn sub(a: Ex, b: Ex) -> Ex {
    add(a, mul(Ex::Const(C64::new(-1.0, 0.0)), b))
}

pub fn unary(f: fn(Box<Ex>) -> Ex, a: Ex) -> Ex {
    fold(f(Box::new(a)))
}

pub fn polar(r: Ex, t: Ex) -> Ex {
    fold(Ex::Polar(Box::new(r), Box::new(t)))
}

pub fn sum(items: impl IntoIterator<Item = Ex>) -> Ex {
    items.into_iter().fold(Ex::zero(), add)
}

pub fn product(items: impl IntoIterator<Item = Ex>) -> Ex {
    items.into_iter().fold(Ex::one(), mul)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Ex {
        Ex::Const(C64::new(x, 0.0))
    }

    #[test]
    fn constants_fold() {
        let e = add(mul(c(2.0), c(3.0)), unary(Ex::Norm2, Ex::Const(C64::new(3.0, 4.0))));
        assert_eq!(e, c(31.0));
    }

    #[test]
    fn zero_annihilates_products() {
        let p = Ex::Param { re: 0, im: Some(1) };
        assert_eq!(mul(p.clone(), Ex::zero()), Ex::zero());
        assert_eq!(add(Ex::zero(), p.clone()), p);
    }

    #[test]
    fn parameters_evaluate() {
        let z = Ex::Param { re: 0, im: Some(1) };
        let e = mul(z.clone(), unary(Ex::Conj, z));
        assert_eq!(e.eval(&[3.0, 4.0]), C64::new(25.0, 0.0));
        assert_eq!(unary(Ex::Arg, c(0.0)), c(0.0));
    }
}
