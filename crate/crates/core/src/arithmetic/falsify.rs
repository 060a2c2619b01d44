//! Randomized search for falsifying assignments, refined by local descent on
//! a robustness score.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{zero_assignment, OracleBudget};
use crate::semantics::{Assignment, Evaluator};
use crate::structures::{QuantumStructure, Tolerances, C64};
use crate::syntax::{expand_quantum, Quantum};

/// Signed distance from falsity: negative exactly when the formula is false
/// with comparison slack `cmp`.
fn score(ev: &Evaluator, g: &Quantum, cmp: f64) -> f64 {
    match g {
        Quantum::Leq(a, b) => match (ev.real(a), ev.real(b)) {
            (Ok(x), Ok(y)) if x.is_finite() && y.is_finite() => y - x + cmp,
            _ => f64::INFINITY,
        },
        Quantum::Not(a) => -score(ev, a, cmp),
        Quantum::Imp(a, b) => (-score(ev, a, cmp)).max(score(ev, b, cmp)),
        Quantum::Classical(a) => {
            if ev.classical(a) {
                1.0
            } else {
                -1.0
            }
        }
        _ => f64::INFINITY,
    }
}

const SPECIAL: [f64; 7] = [0.0, 1.0, -1.0, 0.5, -0.5, 2.0, -2.0];

fn sample(rng: &mut ChaCha8Rng) -> f64 {
    match rng.gen_range(0..4) {
        0 => *SPECIAL.choose(rng).expect("nonempty"),
        1 => rng.gen_range(-3i32..=3) as f64,
        2 => rng.gen_range(-1.0..1.0),
        _ => rng.gen_range(-10.0..10.0),
    }
}

struct Coords {
    reals: Vec<u32>,
    complexes: Vec<u32>,
}

impl Coords {
    fn len(&self) -> usize {
        self.reals.len() + 2 * self.complexes.len()
    }

    fn get(&self, rho: &Assignment, k: usize) -> f64 {
        if k < self.reals.len() {
            rho.reals[&crate::syntax::RealVar(self.reals[k])]
        } else {
            let j = k - self.reals.len();
            let z = rho.complexes[&crate::syntax::ComplexVar(self.complexes[j / 2])];
            if j.is_multiple_of(2) {
                z.re
            } else {
                z.im
            }
        }
    }

    fn set(&self, rho: &mut Assignment, k: usize, x: f64) {
        if k < self.reals.len() {
            rho.reals.insert(crate::syntax::RealVar(self.reals[k]), x);
        } else {
            let j = k - self.reals.len();
            let z = rho.complexes.entry(crate::syntax::ComplexVar(self.complexes[j / 2])).or_insert(C64::new(0.0, 0.0));
            if j.is_multiple_of(2) {
                z.re = x;
            } else {
                z.im = x;
            }
        }
    }
}

/// Looks for an assignment under which `phi` is false. Deterministic given
/// `budget.seed`.
pub fn falsify(phi: &Quantum, budget: &OracleBudget) -> Option<Assignment> {
    let core = expand_quantum(phi).ok()?;
    let base = zero_assignment(phi);
    let coords = Coords {
        reals: base.reals.keys().map(|v| v.0).collect(),
        complexes: base.complexes.keys().map(|v| v.0).collect(),
    };
    let w = QuantumStructure::empty();
    let tol = Tolerances::default();
    let eval = |rho: &Assignment| score(&Evaluator::new(&w, rho, tol), &core, tol.cmp);
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let mut best: Option<(f64, Assignment)> = None;
    let descents = (budget.samples / 100).max(1);
    for n in 0..budget.samples {
        let mut rho = base.clone();
        for k in 0..coords.len() {
            coords.set(&mut rho, k, sample(&mut rng));
        }
        let s = eval(&rho);
        if s < 0.0 {
            return Some(rho);
        }
        if best.as_ref().is_none_or(|(b, _)| s < *b) {
            best = Some((s, rho));
        }
        if n % (budget.samples / descents).max(1) == 0 {
            if let Some((s, rho)) = best.take() {
                let (s, rho) = descend(&coords, rho, s, &eval);
                if s < 0.0 {
                    return Some(rho);
                }
                best = Some((s, rho));
            }
        }
    }
    None
}

fn descend(coords: &Coords, mut rho: Assignment, mut s: f64, eval: &dyn Fn(&Assignment) -> f64) -> (f64, Assignment) {
    let mut step = 1.0;
    while step > 1e-6 && s >= 0.0 {
        let mut improved = false;
        for k in 0..coords.len() {
            let x = coords.get(&rho, k);
            for d in [step, -step] {
                let mut next = rho.clone();
                coords.set(&mut next, k, x + d);
                let t = eval(&next);
                if t < s {
                    s = t;
                    rho = next;
                    improved = true;
                    break;
                }
            }
        }
        if !improved {
            step /= 2.0;
        }
    }
    (s, rho)
}
