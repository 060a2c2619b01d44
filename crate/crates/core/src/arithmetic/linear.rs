//! Exact feasibility of linear constraint systems over the rationals by
//! Gaussian substitution of equalities followed by Fourier–Motzkin
//! elimination, with witness reconstruction.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Relation of a linear form to zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rel {
    /// `form ≥ 0`
    Ge,
    /// `form > 0`
    Gt,
    /// `form = 0`
    Eq,
}

/// `Σ coeffs[v]·v + constant  rel  0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearConstraint {
    pub coeffs: BTreeMap<usize, BigRational>,
    pub constant: BigRational,
    pub rel: Rel,
}

impl LinearConstraint {
    pub fn new(coeffs: BTreeMap<usize, BigRational>, constant: BigRational, rel: Rel) -> Self {
        let mut c = LinearConstraint { coeffs, constant, rel };
        c.coeffs.retain(|_, a| !a.is_zero());
        c
    }

    fn eval(&self, x: &BTreeMap<usize, BigRational>) -> BigRational {
        let mut s = self.constant.clone();
        for (v, a) in &self.coeffs {
            if let Some(val) = x.get(v) {
                s += a * val;
            }
        }
        s
    }

    pub fn holds(&self, x: &BTreeMap<usize, BigRational>) -> bool {
        let s = self.eval(x);
        match self.rel {
            Rel::Ge => !s.is_negative(),
            Rel::Gt => s.is_positive(),
            Rel::Eq => s.is_zero(),
        }
    }

    fn constant_truth(&self) -> bool {
        match self.rel {
            Rel::Ge => !self.constant.is_negative(),
            Rel::Gt => self.constant.is_positive(),
            Rel::Eq => self.constant.is_zero(),
        }
    }

    /// Replaces `var` by `expr` (a linear form with constant).
    fn substitute(&self, var: usize, expr: &(BTreeMap<usize, BigRational>, BigRational)) -> Self {
        let Some(a) = self.coeffs.get(&var).cloned() else {
            return self.clone();
        };
        let mut coeffs = self.coeffs.clone();
        coeffs.remove(&var);
        for (v, b) in &expr.0 {
            *coeffs.entry(*v).or_insert_with(BigRational::zero) += &a * b;
        }
        LinearConstraint::new(coeffs, &self.constant + &a * &expr.1, self.rel)
    }

    /// Scales so that the leading coefficient has absolute value one.
    fn normalized(mut self) -> Self {
        let lead = self.coeffs.values().next().map(|a| a.abs());
        if let Some(l) = lead {
            for a in self.coeffs.values_mut() {
                *a = &*a / &l;
            }
            self.constant = &self.constant / &l;
        }
        self
    }
}

/// Outcome of a feasibility check.
#[derive(Clone, Debug, PartialEq)]
pub enum Feasibility {
    /// A satisfying point; variables not mentioned are absent (read as 0).
    Feasible(BTreeMap<usize, BigRational>),
    Infeasible,
    /// Elimination exceeded its constraint budget.
    Unknown,
}

enum Step {
    Subst(usize, (BTreeMap<usize, BigRational>, BigRational)),
    Eliminated(usize, Vec<LinearConstraint>),
}

/// Decides feasibility of the conjunction of `constraints`. `budget` caps the
/// number of constraints alive at any stage of elimination.
pub fn feasible(constraints: &[LinearConstraint], budget: usize) -> Feasibility {
    let mut work: BTreeSet<LinearConstraint> = BTreeSet::new();
    for c in constraints {
        let c = LinearConstraint::new(c.coeffs.clone(), c.constant.clone(), c.rel);
        if c.coeffs.is_empty() {
            if !c.constant_truth() {
                return Feasibility::Infeasible;
            }
        } else {
            work.insert(c.normalized());
        }
    }
    let mut steps: Vec<Step> = Vec::new();
    // Equalities first.
    while let Some(eq) = work.iter().find(|c| c.rel == Rel::Eq).cloned() {
        work.remove(&eq);
        let (&var, a) = eq.coeffs.iter().next().expect("nonconstant");
        let a = a.clone();
        let mut rest = BTreeMap::new();
        for (v, b) in &eq.coeffs {
            if *v != var {
                rest.insert(*v, -(b / &a));
            }
        }
        let expr = (rest, -(&eq.constant / &a));
        let mut next = BTreeSet::new();
        for c in &work {
            let s = c.substitute(var, &expr);
            if s.coeffs.is_empty() {
                if !s.constant_truth() {
                    return Feasibility::Infeasible;
                }
            } else {
                next.insert(s.normalized());
            }
        }
        work = next;
        steps.push(Step::Subst(var, expr));
    }
    // Fourier–Motzkin on the inequalities.
    loop {
        let vars: BTreeSet<usize> = work.iter().flat_map(|c| c.coeffs.keys().copied()).collect();
        let Some(var) = vars.iter().copied().min_by_key(|v| {
            let pos = work.iter().filter(|c| c.coeffs.get(v).is_some_and(|a| a.is_positive())).count();
            let neg = work.iter().filter(|c| c.coeffs.get(v).is_some_and(|a| a.is_negative())).count();
            pos * neg
        }) else {
            break;
        };
        let (with, without): (Vec<_>, Vec<_>) = work.into_iter().partition(|c| c.coeffs.contains_key(&var));
        let lower: Vec<&LinearConstraint> = with.iter().filter(|c| c.coeffs[&var].is_positive()).collect();
        let upper: Vec<&LinearConstraint> = with.iter().filter(|c| c.coeffs[&var].is_negative()).collect();
        let mut next: BTreeSet<LinearConstraint> = without.into_iter().collect();
        for l in &lower {
            for u in &upper {
                let a = l.coeffs[&var].clone();
                let b = -u.coeffs[&var].clone();
                let mut coeffs: BTreeMap<usize, BigRational> = BTreeMap::new();
                for (v, x) in &l.coeffs {
                    *coeffs.entry(*v).or_insert_with(BigRational::zero) += x * &b;
                }
                for (v, x) in &u.coeffs {
                    *coeffs.entry(*v).or_insert_with(BigRational::zero) += x * &a;
                }
                coeffs.remove(&var);
                let rel = if l.rel == Rel::Gt || u.rel == Rel::Gt { Rel::Gt } else { Rel::Ge };
                let c = LinearConstraint::new(coeffs, &l.constant * &b + &u.constant * &a, rel);
                if c.coeffs.is_empty() {
                    if !c.constant_truth() {
                        return Feasibility::Infeasible;
                    }
                } else {
                    next.insert(c.normalized());
                }
            }
            if next.len() > budget {
                return Feasibility::Unknown;
            }
        }
        steps.push(Step::Eliminated(var, with));
        work = next;
    }
    Feasibility::Feasible(back_substitute(steps))
}

fn back_substitute(steps: Vec<Step>) -> BTreeMap<usize, BigRational> {
    let mut x: BTreeMap<usize, BigRational> = BTreeMap::new();
    for step in steps.into_iter().rev() {
        match step {
            Step::Eliminated(var, cs) => {
                let mut lo: Option<(BigRational, bool)> = None;
                let mut hi: Option<(BigRational, bool)> = None;
                for c in &cs {
                    let a = c.coeffs[&var].clone();
                    let mut rest = c.clone();
                    rest.coeffs.remove(&var);
                    // a·var + r (rel) 0
                    let bound = -(rest.eval(&x)) / &a;
                    let strict = c.rel == Rel::Gt;
                    if a.is_positive() {
                        if lo.as_ref().is_none_or(|(b, s)| bound > *b || (bound == *b && strict && !s)) {
                            lo = Some((bound, strict));
                        }
                    } else if hi.as_ref().is_none_or(|(b, s)| bound < *b || (bound == *b && strict && !s)) {
                        hi = Some((bound, strict));
                    }
                }
                let one = BigRational::one();
                let value = match (lo, hi) {
                    (Some((l, _)), Some((h, _))) => {
                        if l == h {
                            l
                        } else {
                            (l + h) / BigRational::from_integer(2.into())
                        }
                    }
                    (Some((l, s)), None) => {
                        if s {
                            l + one
                        } else {
                            l
                        }
                    }
                    (None, Some((h, s))) => {
                        if s {
                            h - one
                        } else {
                            h
                        }
                    }
                    (None, None) => BigRational::zero(),
                };
                x.insert(var, value);
            }
            Step::Subst(var, (coeffs, constant)) => {
                let mut v = constant;
                for (w, a) in &coeffs {
                    v += a * x.get(w).cloned().unwrap_or_else(BigRational::zero);
                }
                x.insert(var, v);
            }
        }
    }
    x
}
