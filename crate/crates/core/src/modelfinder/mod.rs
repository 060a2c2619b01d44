//! Model finding for quantum formulas over a finite frame.
//!
//! The search fixes, in turn, an admissible set `V`, a partition of the frame
//! and a propositional branch of the formula's skeleton. Classical atoms,
//! alternative terms and non-entanglement atoms are then decided, and the
//! remaining comparisons become a numeric system over the block amplitudes,
//! free amplitude defaults and variables. Every returned model is checked
//! against the original formula.

mod build;
mod dnf;
mod expr;
mod solver;
mod system;

use thiserror::Error;

use crate::arithmetic::linear_feasible;
use crate::calculus::Skeleton;
use crate::semantics::{eval_bits, satisfies, Assignment};
use crate::structures::{QuantumStructure, Tolerances};
use crate::syntax::{free_symbols, Ast, Classical, ComplexTerm, Quantum, QuantumAtom, QubitSet, RealTerm};

pub use build::{build_model, BuildError};
pub use dnf::{eliminate_nonentanglement, implicants, quantum_dnf, MolecularFormula};
pub use expr::Ex;
pub use solver::{descend, residuals, restart_rng, solve, start, Solution, SolverConfig};
pub use system::{Compiler, ConstraintSystem, Layout, Literal};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FinderError {
    #[error("{0}")]
    Expand(String),
    #[error("formula has {atoms} quantum atoms, more than the budget of {budget}")]
    AtomBudgetExceeded { atoms: usize, budget: usize },
    #[error("frame has {size} qubits, more than the supported {max}")]
    FrameTooLarge { size: usize, max: usize },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FinderConfig {
    pub solver: SolverConfig,
    pub tol: Tolerances,
    pub max_atoms: usize,
    pub max_frame: usize,
    pub max_admissible_sets: usize,
    pub max_implicants: usize,
    pub max_systems: usize,
    /// Elimination budget of the exact linear check.
    pub eliminations: usize,
}

impl Default for FinderConfig {
    fn default() -> Self {
        FinderConfig {
            solver: SolverConfig::default(),
            tol: Tolerances::default(),
            max_atoms: 256,
            max_frame: 6,
            max_admissible_sets: 64,
            max_implicants: 64,
            max_systems: 128,
            eliminations: 1_000,
        }
    }
}

/// What the search did.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SearchReport {
    /// Systems handed to the numeric solver.
    pub systems: usize,
    /// Branches refuted by evaluation or by the exact linear check.
    pub refuted: usize,
    /// Numeric solutions whose structure failed validation or the final check.
    pub rejected: usize,
    pub best_residual: Option<f64>,
    /// Some enumeration hit its cap, so refutation is not exhaustive.
    pub truncated: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub enum FindResult {
    Model(QuantumStructure, Assignment),
    NoModelFound(SearchReport),
    /// Every branch was refuted exactly.
    Inconsistent(SearchReport),
}

impl FindResult {
    pub fn is_model(&self) -> bool {
        matches!(self, FindResult::Model(..))
    }
}

/// All set partitions of `frame`, finest first.
pub fn partitions(frame: &QubitSet) -> Vec<Vec<QubitSet>> {
    let items: Vec<_> = frame.iter().copied().collect();
    let mut out: Vec<Vec<QubitSet>> = Vec::new();
    fn go(items: &[crate::syntax::Qubit], k: usize, blocks: &mut Vec<QubitSet>, out: &mut Vec<Vec<QubitSet>>) {
        if k == items.len() {
            out.push(blocks.clone());
            return;
        }
        for i in 0..blocks.len() {
            blocks[i].insert(items[k]);
            go(items, k + 1, blocks, out);
            blocks[i].remove(&items[k]);
        }
        blocks.push(QubitSet::from([items[k]]));
        go(items, k + 1, blocks, out);
        blocks.pop();
    }
    go(&items, 0, &mut Vec::new(), &mut out);
    out.sort_by_key(|p| std::cmp::Reverse(p.len()));
    out
}

fn guards_real(t: &RealTerm, out: &mut Vec<Classical>) {
    match t {
        RealTerm::Var(_) | RealTerm::Const(_) | RealTerm::Prob(_) | RealTerm::SumSq { .. } => {}
        RealTerm::Add(a, b) | RealTerm::Mul(a, b) => {
            guards_real(a, out);
            guards_real(b, out);
        }
        RealTerm::Re(u) | RealTerm::Im(u) | RealTerm::Arg(u) | RealTerm::Abs(u) => guards_complex(u, out),
    }
}

fn guards_complex(u: &ComplexTerm, out: &mut Vec<Classical>) {
    match u {
        ComplexTerm::Var(_) | ComplexTerm::Amp { .. } | ComplexTerm::AmpOf { .. } => {}
        ComplexTerm::Cart(a, b) | ComplexTerm::Polar(a, b) => {
            guards_real(a, out);
            guards_real(b, out);
        }
        ComplexTerm::Conj(a) => guards_complex(a, out),
        ComplexTerm::Add(a, b) | ComplexTerm::Mul(a, b) => {
            guards_complex(a, out);
            guards_complex(b, out);
        }
        ComplexTerm::Ite(g, a, b) => {
            out.push((**g).clone());
            guards_complex(a, out);
            guards_complex(b, out);
        }
    }
}

/// Candidate admissible sets, largest first: the nonempty intersections of
/// extents of the classical atoms and alternative-term guards. Any model can
/// be moved to one of them without changing the truth of any atom. The flag
/// reports truncation at `limit`.
pub fn admissible_candidates(atoms: &[QuantumAtom], frame: &QubitSet, limit: usize) -> (Vec<Vec<u64>>, bool) {
    let mut tests = Vec::new();
    for a in atoms {
        match a {
            QuantumAtom::Classical(c) => tests.push(c.clone()),
            QuantumAtom::Leq(x, y) => {
                guards_real(x, &mut tests);
                guards_real(y, &mut tests);
            }
            QuantumAtom::NonEtg(_) => {}
        }
    }
    let qubits: Vec<_> = frame.iter().copied().collect();
    let n = 1u64 << qubits.len();
    let ext = |c: &Classical| -> Vec<bool> { (0..n).map(|k| eval_bits(c, &qubits, k)).collect() };
    let mut sets: Vec<Vec<bool>> = vec![vec![true; n as usize]];
    let mut truncated = false;
    for t in &tests {
        let e = ext(t);
        let new: Vec<Vec<bool>> = sets.iter().map(|s| s.iter().zip(&e).map(|(a, b)| *a && *b).collect()).collect();
        for s in new {
            if s.iter().any(|b| *b) && !sets.contains(&s) {
                if sets.len() >= limit {
                    truncated = true;
                } else {
                    sets.push(s);
                }
            }
        }
    }
    let mut out: Vec<Vec<u64>> = sets.into_iter().map(|s| (0..n).filter(|k| s[*k as usize]).collect()).collect();
    out.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    (out, truncated)
}

/// Branches for one admissible set and partition.
pub struct Branches {
    pub systems: Vec<ConstraintSystem>,
    pub refuted: usize,
    pub truncated: bool,
}

/// Decides the atoms fixed by `admissible` and `partition`, then turns each
/// remaining propositional branch into a constraint system. Branches refuted
/// by evaluation or by the exact linear check are dropped and counted.
pub fn emit_systems(
    skeleton: &Skeleton,
    frame: &QubitSet,
    admissible: &[u64],
    partition: &[QubitSet],
    cfg: &FinderConfig,
) -> Branches {
    let mut c = Compiler::new(frame, admissible, partition);
    let mut init = Vec::new();
    let mut pending = Vec::new();
    for a in &skeleton.atoms {
        init.push(match a {
            QuantumAtom::Classical(alpha) => Some(c.classical(alpha)),
            QuantumAtom::NonEtg(g) => Some(c.is_union(g)),
            QuantumAtom::Leq(x, y) => {
                let (ex, ey) = (c.real(x), c.real(y));
                match (ex.constant(), ey.constant()) {
                    (Some(u), Some(v)) => Some(u.re <= v.re + cfg.tol.cmp),
                    _ => {
                        let (sx, sy) = (c.settle_real(x), c.settle_real(y));
                        pending.push((init.len(), ex, ey, sx, sy));
                        None
                    }
                }
            }
        });
    }
    let equations = c.structural_equations();
    let rows = implicants(&skeleton.prop, init, cfg.max_implicants);
    let mut out = Branches { systems: Vec::new(), refuted: 0, truncated: rows.len() >= cfg.max_implicants };
    if rows.is_empty() {
        out.refuted += 1;
    }
    for row in rows {
        let mut literals = Vec::new();
        let mut exact = Vec::new();
        for (i, ex, ey, sx, sy) in &pending {
            let Some(positive) = row[*i] else { continue };
            literals.push(Literal { lhs: ex.clone(), rhs: ey.clone(), positive });
            exact.push(if positive { (sx.clone(), sy.clone(), false) } else { (sy.clone(), sx.clone(), true) });
        }
        if linear_feasible(&exact, cfg.eliminations) == Some(false) {
            out.refuted += 1;
            continue;
        }
        let (extra, literals) = merge_equalities(literals);
        let mut all = equations.clone();
        all.extend(extra);
        out.systems.push(ConstraintSystem { layout: c.layout.clone(), equations: all, literals });
    }
    out
}

/// Pairs `a ≤ b`, `b ≤ a` of positive literals become the smooth equation
/// `a - b = 0`.
fn merge_equalities(literals: Vec<Literal>) -> (Vec<Ex>, Vec<Literal>) {
    let mut used = vec![false; literals.len()];
    let mut eqs = Vec::new();
    for i in 0..literals.len() {
        if used[i] || !literals[i].positive {
            continue;
        }
        let mate = (i + 1..literals.len()).find(|j| {
            !used[*j]
                && literals[*j].positive
                && literals[*j].lhs == literals[i].rhs
                && literals[*j].rhs == literals[i].lhs
        });
        if let Some(j) = mate {
            used[i] = true;
            used[j] = true;
            eqs.push(expr::sub(literals[i].lhs.clone(), literals[i].rhs.clone()));
        }
    }
    let rest = literals.into_iter().zip(used).filter(|(_, u)| !u).map(|(l, _)| l).collect();
    (eqs, rest)
}

/// Searches for a structure over `bound ∪ QB(γ)` and an assignment satisfying
/// `γ`.
pub fn find_model(g: &Quantum, bound: &QubitSet, cfg: &FinderConfig) -> Result<FindResult, FinderError> {
    let skeleton = Skeleton::of(g).map_err(|e| FinderError::Expand(e.to_string()))?;
    if skeleton.atoms.len() > cfg.max_atoms {
        return Err(FinderError::AtomBudgetExceeded { atoms: skeleton.atoms.len(), budget: cfg.max_atoms });
    }
    let mut frame = free_symbols(&Ast::Quantum(g.clone())).qubits;
    frame.extend(bound.iter().copied());
    if frame.len() > cfg.max_frame {
        return Err(FinderError::FrameTooLarge { size: frame.len(), max: cfg.max_frame });
    }
    let mut report = SearchReport::default();
    let (candidates, truncated) = admissible_candidates(&skeleton.atoms, &frame, cfg.max_admissible_sets);
    report.truncated |= truncated;
    let mut systems = Vec::new();
    'outer: for partition in partitions(&frame) {
        for v in &candidates {
            let b = emit_systems(&skeleton, &frame, v, &partition, cfg);
            report.refuted += b.refuted;
            report.truncated |= b.truncated;
            for s in b.systems {
                if systems.len() >= cfg.max_systems {
                    report.truncated = true;
                    break 'outer;
                }
                systems.push(s);
            }
        }
    }
    report.systems = systems.len();
    if systems.is_empty() && !report.truncated {
        return Ok(FindResult::Inconsistent(report));
    }
    let mut best = f64::INFINITY;
    for round in 0..cfg.solver.restarts.max(1) {
        for (i, sys) in systems.iter().enumerate() {
            let mut rng = restart_rng(cfg.solver.seed, i, round);
            let (p, res) = descend(sys, start(sys, round, &mut rng), &cfg.solver);
            best = best.min(res);
            if res > cfg.solver.tol {
                continue;
            }
            match accept(g, sys, &p, &cfg.tol) {
                Some((w, rho)) => return Ok(FindResult::Model(w, rho)),
                None => report.rejected += 1,
            }
        }
    }
    report.best_residual = best.is_finite().then_some(best);
    Ok(FindResult::NoModelFound(report))
}

fn accept(g: &Quantum, sys: &ConstraintSystem, p: &[f64], tol: &Tolerances) -> Option<(QuantumStructure, Assignment)> {
    for snap in [0.0, 1e-8] {
        if let Ok((w, rho)) = build_model(&sys.layout, p, snap, tol) {
            if satisfies(&w, &rho, g, tol) == Ok(true) {
                return Some((w, rho));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests;
