//! Random structures, assignments, formulas and axiom instances for property
//! tests.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::semantics::Assignment;
use crate::structures::{schmidt_factor, tensor, QuantumStructure, StateVector, Tolerances, Valuation, C64};
use crate::syntax::{subsets, Classical, ComplexTerm, Const, Quantum, QuantumAtom, Qubit, QubitSet, RealTerm};

fn pick<'a, T, R: Rng>(rng: &mut R, items: &'a [T]) -> &'a T {
    items.choose(rng).expect("nonempty choice")
}

/// A uniformly random subset of `s`.
pub fn subset<R: Rng>(rng: &mut R, s: &QubitSet) -> QubitSet {
    s.iter().copied().filter(|_| rng.gen_bool(0.5)).collect()
}

/// A random partition of `frame`.
pub fn partition<R: Rng>(rng: &mut R, frame: &QubitSet) -> Vec<QubitSet> {
    let n = frame.len().max(1);
    let mut blocks: BTreeMap<usize, QubitSet> = BTreeMap::new();
    for q in frame {
        blocks.entry(rng.gen_range(0..n)).or_default().insert(*q);
    }
    blocks.into_values().collect()
}

fn entangled(carrier: &QubitSet, amps: &[C64]) -> bool {
    let v = StateVector::from_dense(carrier, amps.to_vec(), 1e-6).expect("normalized");
    let first = *carrier.iter().next().expect("nonempty");
    subsets(carrier)
        .into_iter()
        .filter(|p| p.contains(&first) && p.len() < carrier.len())
        .all(|p| !schmidt_factor(&v, &p, Tolerances::default().rank).factorizable)
}

/// A random unit state over `carrier` that does not factor across any split.
pub fn block_state<R: Rng>(rng: &mut R, carrier: &QubitSet) -> StateVector {
    let dim = 1usize << carrier.len();
    for _ in 0..32 {
        let sparsity = rng.gen_range(0.0..0.5);
        let mut amps: Vec<C64> = (0..dim)
            .map(|_| {
                if rng.gen_bool(sparsity) {
                    C64::new(0.0, 0.0)
                } else {
                    C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
                }
            })
            .collect();
        let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-3 {
            continue;
        }
        for z in amps.iter_mut() {
            *z /= norm;
        }
        if carrier.len() == 1 || entangled(carrier, &amps) {
            return StateVector::from_dense(carrier, amps, 1e-9).expect("normalized");
        }
    }
    let mut amps = vec![C64::new(0.0, 0.0); dim];
    amps[0] = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    amps[dim - 1] = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    StateVector::from_dense(carrier, amps, 1e-9).expect("normalized")
}

/// A random structure over `frame` that passes validation. The admissible
/// set is the support of the state plus random extra valuations; some
/// non-union amplitude defaults are set.
pub fn structure<R: Rng>(rng: &mut R, frame: &QubitSet) -> QuantumStructure {
    let blocks: Vec<StateVector> = partition(rng, frame).iter().map(|b| block_state(rng, b)).collect();
    let mut psi = StateVector::from_dense(&QubitSet::new(), vec![C64::new(1.0, 0.0)], 1e-9).expect("unit");
    for b in &blocks {
        psi = tensor(&psi, b).expect("disjoint blocks");
    }
    let admissible: Vec<Valuation> = (0..1u64 << frame.len())
        .filter(|k| psi.amplitude_bits(*k).norm() > 0.0 || rng.gen_bool(0.2))
        .map(|k| Valuation::new(frame, k))
        .collect();
    let carriers: Vec<QubitSet> = blocks.iter().map(|b| b.carrier().clone()).collect();
    let mut nu = BTreeMap::new();
    for g in subsets(frame) {
        let union = carriers.iter().all(|b| b.is_subset(&g) || b.is_disjoint(&g));
        if union || !rng.gen_bool(0.5) {
            continue;
        }
        for a in subsets(&g) {
            if rng.gen_bool(0.5) {
                nu.insert((g.clone(), a), C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            }
        }
    }
    QuantumStructure::new(frame.clone(), admissible, blocks, nu).expect("well formed")
}

/// Values for `x1..x3` and `z1..z3`, drawn from quarters in `[-2, 2]`.
pub fn assignment<R: Rng>(rng: &mut R) -> Assignment {
    let mut quarter = || rng.gen_range(-8..=8) as f64 / 4.0;
    let mut rho = Assignment::new();
    for k in 1..=3 {
        rho = rho.with_real(k, quarter());
    }
    for k in 1..=3 {
        let z = C64::new(quarter(), quarter());
        rho = rho.with_complex(k, z);
    }
    rho
}

/// A random classical formula over `qubits`, sugar included.
pub fn classical<R: Rng>(rng: &mut R, qubits: &QubitSet, depth: u32) -> Classical {
    let items: Vec<Qubit> = qubits.iter().copied().collect();
    let leaf = |rng: &mut R| {
        if items.is_empty() || rng.gen_bool(0.1) {
            if rng.gen_bool(0.5) {
                Classical::Top
            } else {
                Classical::Bot
            }
        } else {
            Classical::Qubit(*pick(rng, &items))
        }
    };
    if depth == 0 || rng.gen_bool(0.3) {
        return leaf(rng);
    }
    let sub = |rng: &mut R| classical(rng, qubits, depth - 1);
    match rng.gen_range(0..6) {
        0 => Classical::not(sub(rng)),
        1 => Classical::imp(sub(rng), sub(rng)),
        2 => Classical::and(sub(rng), sub(rng)),
        3 => Classical::or(sub(rng), sub(rng)),
        4 => Classical::iff(sub(rng), sub(rng)),
        _ if !qubits.is_empty() => {
            let frame = subset(rng, qubits);
            let set = subset(rng, &frame);
            Classical::Molecular { frame, set }
        }
        _ => leaf(rng),
    }
}

fn small_const<R: Rng>(rng: &mut R) -> RealTerm {
    match rng.gen_range(0..3) {
        0 => RealTerm::int(rng.gen_range(-2..=2)),
        1 => RealTerm::constant(Const::ratio(rng.gen_range(-4..=4), rng.gen_range(1..=4))),
        _ => RealTerm::var(rng.gen_range(1..=3)),
    }
}

/// A random real term whose qubits lie in `frame`.
pub fn real_term<R: Rng>(rng: &mut R, frame: &QubitSet, depth: u32) -> RealTerm {
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..3) {
            0 => RealTerm::prob(classical(rng, frame, 2)),
            _ => small_const(rng),
        };
    }
    match rng.gen_range(0..6) {
        0 => RealTerm::add(real_term(rng, frame, depth - 1), real_term(rng, frame, depth - 1)),
        1 => RealTerm::mul(real_term(rng, frame, depth - 1), real_term(rng, frame, depth - 1)),
        2 => RealTerm::re(complex_term(rng, frame, depth - 1)),
        3 => RealTerm::im(complex_term(rng, frame, depth - 1)),
        4 => RealTerm::abs(complex_term(rng, frame, depth - 1)),
        _ => RealTerm::SumSq { frame: subset(rng, frame), guard: Classical::Top },
    }
}

/// A random amplitude term `|α⟩_GA` or `|⊤⟩_GA` with `G ⊆ frame`.
pub fn amp_term<R: Rng>(rng: &mut R, frame: &QubitSet) -> ComplexTerm {
    let g = subset(rng, frame);
    let a = subset(rng, &g);
    if rng.gen_bool(0.5) {
        ComplexTerm::amp(g, a)
    } else {
        let guard = classical(rng, &g, 2);
        ComplexTerm::amp_of(g, a, guard)
    }
}

/// A random complex term whose qubits lie in `frame`.
pub fn complex_term<R: Rng>(rng: &mut R, frame: &QubitSet, depth: u32) -> ComplexTerm {
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..3) {
            0 => ComplexTerm::var(rng.gen_range(1..=3)),
            1 => amp_term(rng, frame),
            _ => ComplexTerm::cart(small_const(rng), small_const(rng)),
        };
    }
    let sub = |rng: &mut R| complex_term(rng, frame, depth - 1);
    match rng.gen_range(0..5) {
        0 => ComplexTerm::add(sub(rng), sub(rng)),
        1 => ComplexTerm::mul(sub(rng), sub(rng)),
        2 => ComplexTerm::conj(sub(rng)),
        3 => ComplexTerm::ite(classical(rng, frame, 2), sub(rng), sub(rng)),
        _ => ComplexTerm::polar(small_const(rng), small_const(rng)),
    }
}

/// A random quantum atom over `frame`.
pub fn atom<R: Rng>(rng: &mut R, frame: &QubitSet) -> QuantumAtom {
    match rng.gen_range(0..3) {
        0 => QuantumAtom::Classical(classical(rng, frame, 2)),
        1 => QuantumAtom::Leq(real_term(rng, frame, 2), real_term(rng, frame, 2)),
        _ => QuantumAtom::NonEtg(subset(rng, frame)),
    }
}

/// A random quantum formula built from the given atoms with every
/// connective, sugar included.
pub fn quantum_over<R: Rng>(rng: &mut R, atoms: &[QuantumAtom], depth: u32) -> Quantum {
    if depth == 0 || rng.gen_bool(0.2) {
        return pick(rng, atoms).to_formula();
    }
    let sub = |rng: &mut R| quantum_over(rng, atoms, depth - 1);
    match rng.gen_range(0..5) {
        0 => Quantum::not(sub(rng)),
        1 => Quantum::imp(sub(rng), sub(rng)),
        2 => Quantum::or(sub(rng), sub(rng)),
        3 => Quantum::and(sub(rng), sub(rng)),
        _ => Quantum::iff(sub(rng), sub(rng)),
    }
}

/// A random valid arithmetical formula over abstracted terms, checked by the
/// builtin oracle; falls back to a linear tautology.
fn oracle_instance<R: Rng>(rng: &mut R, frame: &QubitSet) -> Quantum {
    use crate::arithmetic::{BuiltinOracle, Oracle};
    let oracle = BuiltinOracle::default();
    for _ in 0..16 {
        let (t1, t2, t3) = (real_term(rng, frame, 1), real_term(rng, frame, 1), real_term(rng, frame, 1));
        let phi = match rng.gen_range(0..4) {
            0 => Quantum::imp(
                Quantum::leq(t1.clone(), t2.clone()),
                Quantum::leq(RealTerm::add(t1, t3.clone()), RealTerm::add(t2, t3)),
            ),
            1 => Quantum::or(Quantum::leq(t1.clone(), t2.clone()), Quantum::leq(t2, t1)),
            2 => Quantum::imp(Quantum::eq_r(t1.clone(), t2.clone()), Quantum::eq_r(t2, t1)),
            _ => {
                let u = complex_term(rng, frame, 1);
                Quantum::leq(RealTerm::int(0), RealTerm::mul(RealTerm::abs(u.clone()), RealTerm::abs(u)))
            }
        };
        let general = crate::arithmetic::abstract_terms(&phi);
        if oracle.check(&general).is_valid() {
            return phi;
        }
    }
    let x = RealTerm::var(1);
    Quantum::leq(x.clone(), RealTerm::add(x, RealTerm::int(1)))
}

fn quantum_formula<R: Rng>(rng: &mut R, frame: &QubitSet) -> Quantum {
    let atoms: Vec<QuantumAtom> = (0..3).map(|_| atom(rng, frame)).collect();
    quantum_over(rng, &atoms, 2)
}

/// A random instance of a random axiom schema for bound `frame`.
pub fn axiom_instance<R: Rng>(rng: &mut R, frame: &QubitSet) -> (crate::calculus::Axiom, Quantum) {
    use crate::calculus::Axiom;
    let c = |a: Classical| Quantum::classical(a);
    let alpha = classical(rng, frame, 2);
    let beta = classical(rng, frame, 2);
    match rng.gen_range(0..15) {
        0 => {
            let gamma = classical(rng, frame, 1);
            let taut = match rng.gen_range(0..4) {
                0 => Classical::imp(alpha.clone(), Classical::imp(beta, alpha)),
                1 => Classical::or(alpha.clone(), Classical::not(alpha)),
                2 => Classical::imp(
                    Classical::imp(alpha.clone(), Classical::imp(beta.clone(), gamma.clone())),
                    Classical::imp(Classical::imp(alpha.clone(), beta), Classical::imp(alpha, gamma)),
                ),
                _ => Classical::imp(
                    Classical::imp(Classical::not(alpha.clone()), Classical::not(beta.clone())),
                    Classical::imp(beta, alpha),
                ),
            };
            (Axiom::CTaut, c(taut))
        }
        1 => {
            let (g1, g2) = (quantum_formula(rng, frame), quantum_formula(rng, frame));
            let taut = match rng.gen_range(0..3) {
                0 => Quantum::imp(g1.clone(), Quantum::imp(g2, g1)),
                1 => Quantum::or(g1.clone(), Quantum::not(g1)),
                _ => Quantum::imp(Quantum::and(g1.clone(), g2), g1),
            };
            (Axiom::QTaut, taut)
        }
        2 => (Axiom::Oracle, oracle_instance(rng, frame)),
        3 => {
            (Axiom::Lift, Quantum::imp(c(Classical::imp(alpha.clone(), beta.clone())), Quantum::imp(c(alpha), c(beta))))
        }
        4 => (
            Axiom::RefConj,
            Quantum::imp(Quantum::and(c(alpha.clone()), c(beta.clone())), c(Classical::and(alpha, beta))),
        ),
        5 | 6 => {
            let (u1, u2) = (complex_term(rng, frame, 1), complex_term(rng, frame, 1));
            let ite = ComplexTerm::ite(alpha.clone(), u1.clone(), u2.clone());
            if rng.gen_bool(0.5) {
                (Axiom::IfTop, Quantum::imp(c(alpha), Quantum::eq_c(ite, u1)))
            } else {
                (Axiom::IfBot, Quantum::imp(Quantum::not(c(alpha)), Quantum::eq_c(ite, u2)))
            }
        }
        7 => (Axiom::NetgF, Quantum::netg(frame.clone())),
        8 => {
            let g2 = subset(rng, frame);
            let g1 = subset(rng, &g2);
            let phi = Quantum::imp(
                Quantum::netg(g2.clone()),
                Quantum::iff(Quantum::netg(g1.clone()), Quantum::Cond { sub: g1.clone(), frame: g2.clone() }),
            );
            (Axiom::NetgBar(g1, g2), phi)
        }
        9 | 10 => {
            let (g1, g2) = (subset(rng, frame), subset(rng, frame));
            let union = rng.gen_bool(0.5);
            let target: QubitSet =
                if union { g1.union(&g2).copied().collect() } else { g1.difference(&g2).copied().collect() };
            let phi =
                Quantum::imp(Quantum::netg(g1.clone()), Quantum::imp(Quantum::netg(g2.clone()), Quantum::netg(target)));
            (if union { Axiom::NetgUnion(g1, g2) } else { Axiom::NetgDiff(g1, g2) }, phi)
        }
        11 => (Axiom::Empty, Quantum::eq_c(ComplexTerm::amp(QubitSet::new(), QubitSet::new()), ComplexTerm::int(1))),
        12 => {
            let a = subset(rng, frame);
            let m = Classical::Molecular { frame: frame.clone(), set: a.clone() };
            let phi = Quantum::imp(
                c(Classical::not(m)),
                Quantum::eq_c(ComplexTerm::amp(frame.clone(), a.clone()), ComplexTerm::int(0)),
            );
            (Axiom::NAdm(a), phi)
        }
        13 => {
            let g = subset(rng, frame);
            let phi = Quantum::imp(
                Quantum::netg(g.clone()),
                Quantum::eq_r(RealTerm::SumSq { frame: g.clone(), guard: Classical::Top }, RealTerm::int(1)),
            );
            (Axiom::Unit(g), phi)
        }
        _ => {
            let phi = Quantum::eq_r(
                RealTerm::prob(alpha.clone()),
                RealTerm::SumSq { frame: frame.clone(), guard: alpha.clone() },
            );
            (Axiom::Prob(alpha), phi)
        }
    }
}

/// Theorem parameters for `w`: `g1` is a random union of blocks of `w`, the
/// classical parameters mention only qubits of `g1`, and `set ⊆ g1`.
pub fn theorem_params<R: Rng>(rng: &mut R, w: &QuantumStructure) -> crate::calculus::corpus::TheoremParams {
    let frame = w.frame().clone();
    let g1: QubitSet = w.partition().into_iter().filter(|_| rng.gen_bool(0.6)).flatten().collect();
    crate::calculus::corpus::TheoremParams {
        g2: subset(rng, &frame),
        alpha1: classical(rng, &g1, 2),
        alpha2: classical(rng, &g1, 2),
        set: subset(rng, &g1),
        u1: complex_term(rng, &frame, 1),
        u2: complex_term(rng, &frame, 1),
        g1,
    }
}
