//! Penalty minimization by Levenberg-Marquardt with seeded restarts.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::system::ConstraintSystem;

/// Solver settings.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverConfig {
    pub seed: u64,
    pub restarts: usize,
    /// Largest residual accepted as a solution.
    pub tol: f64,
    /// Slack demanded of negated comparisons.
    pub margin: f64,
    pub iterations: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { seed: 0, restarts: 64, tol: 1e-10, margin: 1e-7, iterations: 200 }
    }
}

/// Outcome of solving one system.
#[derive(Clone, Debug, PartialEq)]
pub enum Solution {
    Found(Vec<f64>),
    NotFound { best_residual: f64 },
}

/// Residual vector: equations first, then one hinge per literal.
pub fn residuals(sys: &ConstraintSystem, p: &[f64], margin: f64) -> Vec<f64> {
    let mut r: Vec<f64> = sys.equations.iter().map(|e| e.eval(p).re).collect();
    for l in &sys.literals {
        let (a, b) = (l.lhs.eval(p).re, l.rhs.eval(p).re);
        r.push(if l.positive { (a - b).max(0.0) } else { (b + margin - a).max(0.0) });
    }
    r
}

fn max_abs(r: &[f64]) -> f64 {
    r.iter().fold(0.0, |m, x| if x.is_finite() { m.max(x.abs()) } else { f64::INFINITY })
}

fn cost(r: &[f64]) -> f64 {
    r.iter().map(|x| x * x).sum()
}

/// Starting point for restart `round`: round zero is a uniform superposition
/// with small variables, later rounds are random.
pub fn start(sys: &ConstraintSystem, round: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let mut p = vec![0.0; sys.layout.size];
    if round > 0 {
        for x in p.iter_mut() {
            *x = rng.gen_range(-1.0..1.0);
        }
    } else {
        for x in p.iter_mut() {
            *x = 0.1;
        }
    }
    for block in &sys.layout.blocks {
        let slots: Vec<usize> = block.iter().flatten().copied().collect();
        if round == 0 {
            for i in &slots {
                p[*i] = 1.0;
                p[*i + 1] = 0.0;
            }
        }
        let norm: f64 = slots.iter().map(|i| p[*i] * p[*i] + p[*i + 1] * p[*i + 1]).sum::<f64>().sqrt();
        if norm > 0.0 {
            for i in &slots {
                p[*i] /= norm;
                p[*i + 1] /= norm;
            }
        }
    }
    p
}

/// One local descent from `p`. Returns the final point and its largest
/// residual.
pub fn descend(sys: &ConstraintSystem, mut p: Vec<f64>, cfg: &SolverConfig) -> (Vec<f64>, f64) {
    let n = p.len();
    let mut r = residuals(sys, &p, cfg.margin);
    let mut c = cost(&r);
    let mut lambda = 1e-3;
    for _ in 0..cfg.iterations {
        if max_abs(&r) <= cfg.tol || n == 0 {
            break;
        }
        let m = r.len();
        let mut jac = DMatrix::<f64>::zeros(m, n);
        for j in 0..n {
            let h = 1e-7 * (1.0 + p[j].abs());
            let saved = p[j];
            p[j] = saved + h;
            let rp = residuals(sys, &p, cfg.margin);
            p[j] = saved;
            for i in 0..m {
                jac[(i, j)] = (rp[i] - r[i]) / h;
            }
        }
        let rv = DVector::from_vec(r.clone());
        let jt = jac.transpose();
        let jtj = &jt * &jac;
        let g = &jt * &rv;
        let mut improved = false;
        while lambda < 1e12 {
            let mut a = jtj.clone();
            for d in 0..n {
                a[(d, d)] += lambda;
            }
            let Some(step) = a.cholesky().map(|ch| ch.solve(&(-&g))) else {
                lambda *= 10.0;
                continue;
            };
            let q: Vec<f64> = p.iter().zip(step.iter()).map(|(x, d)| x + d).collect();
            let rq = residuals(sys, &q, cfg.margin);
            let cq = cost(&rq);
            if cq.is_finite() && cq < c {
                p = q;
                r = rq;
                c = cq;
                lambda = (lambda / 3.0).max(1e-15);
                improved = true;
                break;
            }
            lambda *= 4.0;
        }
        if !improved {
            break;
        }
    }
    let best = max_abs(&r);
    (p, best)
}

/// Seeded generator for restart `round` of system `index`.
pub fn restart_rng(seed: u64, index: usize, round: usize) -> ChaCha8Rng {
    let mix =
        seed ^ (index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ (round as u64).wrapping_mul(0xC2B2_AE3D_27D4_EB4F);
    ChaCha8Rng::seed_from_u64(mix)
}

/// Multi-start search for a point with every residual within `cfg.tol`.
pub fn solve(sys: &ConstraintSystem, cfg: &SolverConfig) -> Solution {
    let mut best = f64::INFINITY;
    for round in 0..cfg.restarts.max(1) {
        let mut rng = restart_rng(cfg.seed, 0, round);
        let (p, res) = descend(sys, start(sys, round, &mut rng), cfg);
        if res <= cfg.tol {
            return Solution::Found(p);
        }
        best = best.min(res);
    }
    Solution::NotFound { best_residual: best }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modelfinder::expr::{self, Ex};
    use crate::modelfinder::system::{Compiler, Literal};
    use crate::structures::C64;
    use crate::syntax::qubits;

    fn one_qubit(literals: Vec<Literal>) -> ConstraintSystem {
        let f = qubits([0]);
        let c = Compiler::new(&f, &[0, 1], std::slice::from_ref(&f));
        ConstraintSystem { equations: c.structural_equations(), layout: c.layout, literals }
    }

    #[test]
    fn unit_norm_alone_is_solved_at_the_start() {
        let sys = one_qubit(vec![]);
        let Solution::Found(p) = solve(&sys, &SolverConfig::default()) else { panic!() };
        let norm: f64 = p.iter().map(|x| x * x).sum();
        assert!((norm - 1.0).abs() < 1e-9);
    }

    #[test]
    fn prescribed_probability_is_reached() {
        let third = Ex::Const(C64::new(1.0 / 3.0, 0.0));
        let prob = expr::unary(Ex::Norm2, Ex::Param { re: 2, im: Some(3) });
        let lits = vec![
            Literal { lhs: prob.clone(), rhs: third.clone(), positive: true },
            Literal { lhs: third, rhs: prob, positive: true },
        ];
        let sys = one_qubit(lits);
        let Solution::Found(p) = solve(&sys, &SolverConfig::default()) else { panic!() };
        assert!((p[2] * p[2] + p[3] * p[3] - 1.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn impossible_norm_is_not_found() {
        let two = Ex::Const(C64::new(2.0, 0.0));
        let amp = expr::unary(Ex::Abs, Ex::Param { re: 0, im: Some(1) });
        let sys = one_qubit(vec![Literal { lhs: two, rhs: amp, positive: true }]);
        let cfg = SolverConfig { restarts: 4, ..SolverConfig::default() };
        assert!(matches!(solve(&sys, &cfg), Solution::NotFound { .. }));
    }
}
