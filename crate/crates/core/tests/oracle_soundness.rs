use eqpl::arithmetic::{eval_arith, BuiltinOracle, Oracle, OracleBudget, OracleVerdict, Tier};
use eqpl::semantics::Assignment;
use eqpl::structures::{Tolerances, C64};
use eqpl::syntax::{parse_quantum, Aliases, ComplexTerm, Const, Quantum, RealTerm};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SAMPLES: usize = 100_000;

fn q(text: &str) -> Quantum {
    parse_quantum(text, &Aliases::default()).expect("parses")
}

fn value(rng: &mut ChaCha8Rng) -> f64 {
    if rng.gen_bool(0.5) {
        rng.gen_range(-8..=8) as f64 / 4.0
    } else {
        rng.gen_range(-3.0..3.0)
    }
}

fn sample(rng: &mut ChaCha8Rng) -> Assignment {
    let mut rho = Assignment::new();
    for k in 1..=3 {
        rho = rho.with_real(k, value(rng));
        rho = rho.with_complex(k, C64::new(value(rng), value(rng)));
    }
    rho
}

fn real(rng: &mut ChaCha8Rng, depth: u32) -> RealTerm {
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..3) {
            0 => RealTerm::int(rng.gen_range(-2..=2)),
            1 => RealTerm::constant(Const::ratio(rng.gen_range(-3..=3), 2)),
            _ => RealTerm::var(rng.gen_range(1..=3)),
        };
    }
    match rng.gen_range(0..5) {
        0 | 1 => RealTerm::add(real(rng, depth - 1), real(rng, depth - 1)),
        2 => RealTerm::mul(real(rng, depth - 1), real(rng, depth - 1)),
        3 => RealTerm::re(complex(rng, depth - 1)),
        _ => RealTerm::abs(complex(rng, depth - 1)),
    }
}

fn complex(rng: &mut ChaCha8Rng, depth: u32) -> ComplexTerm {
    if depth == 0 || rng.gen_bool(0.4) {
        return ComplexTerm::var(rng.gen_range(1..=3));
    }
    match rng.gen_range(0..3) {
        0 => ComplexTerm::add(complex(rng, depth - 1), complex(rng, depth - 1)),
        1 => ComplexTerm::mul(complex(rng, depth - 1), complex(rng, depth - 1)),
        _ => ComplexTerm::conj(complex(rng, depth - 1)),
    }
}

fn formula(rng: &mut ChaCha8Rng, depth: u32) -> Quantum {
    if depth == 0 || rng.gen_bool(0.3) {
        let (a, b) = (real(rng, 2), real(rng, 2));
        return match rng.gen_range(0..3) {
            0 => Quantum::eq_r(a, b),
            _ => Quantum::leq(a, b),
        };
    }
    let (a, b) = (formula(rng, depth - 1), formula(rng, depth - 1));
    match rng.gen_range(0..4) {
        0 => Quantum::not(a),
        1 => Quantum::imp(a, b),
        2 => Quantum::or(a, b),
        _ => Quantum::and(a, b),
    }
}

/// Formulas that are often valid, so that the `Valid` branch is exercised.
fn plausible(rng: &mut ChaCha8Rng) -> Quantum {
    let (t1, t2, t3) = (real(rng, 1), real(rng, 1), real(rng, 1));
    match rng.gen_range(0..5) {
        0 => Quantum::imp(
            Quantum::leq(t1.clone(), t2.clone()),
            Quantum::leq(RealTerm::add(t1, t3.clone()), RealTerm::add(t2, t3)),
        ),
        1 => Quantum::or(Quantum::leq(t1.clone(), t2.clone()), Quantum::leq(t2, t1)),
        2 => Quantum::imp(
            Quantum::and(Quantum::leq(t1.clone(), t2.clone()), Quantum::leq(t2, t3.clone())),
            Quantum::leq(t1, t3),
        ),
        3 => Quantum::leq(RealTerm::int(0), RealTerm::mul(t1.clone(), t1)),
        _ => Quantum::imp(
            Quantum::leq(t1.clone(), t2.clone()),
            Quantum::leq(t1, RealTerm::add(t2, RealTerm::mul(t3.clone(), t3))),
        ),
    }
}

#[test]
fn valid_verdicts_survive_random_sampling() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let tol = Tolerances::default();
    let oracle = BuiltinOracle { budget: OracleBudget { samples: 2_000, ..OracleBudget::default() } };
    let mut valid = Vec::new();
    let mut invalid = 0;
    for i in 0..400 {
        let phi = if i % 2 == 0 { plausible(&mut rng) } else { formula(&mut rng, 2) };
        match oracle.check(&phi) {
            OracleVerdict::Valid(_) => valid.push(phi),
            OracleVerdict::Invalid(witness) => {
                assert_eq!(eval_arith(&phi, &witness, &tol), Ok(false), "witness does not falsify {phi}");
                invalid += 1;
            }
            OracleVerdict::Unknown(_) => {}
        }
    }
    assert!(valid.len() >= 20 && invalid >= 20, "{} valid, {invalid} invalid", valid.len());
    for k in 0..SAMPLES {
        let rho = sample(&mut rng);
        let phi = &valid[k % valid.len()];
        assert_eq!(eval_arith(phi, &rho, &tol), Ok(true), "{phi} falsified by {rho:?}");
    }
}

#[test]
fn transitivity_is_valid_by_the_linear_tier() {
    let phi = q("(((x1 <= x2) && (x2 <= x3)) ==> (x1 <= x3))");
    assert_eq!(BuiltinOracle::default().check(&phi), OracleVerdict::Valid(Tier::Linear));
}

#[test]
fn square_roots_of_minus_one_are_valid_by_the_pattern_tier() {
    let phi = q("(((z1 * z1) = -1) ==> ((z1 = (0 + i 1)) || (z1 = (0 + i -1))))");
    assert_eq!(BuiltinOracle::default().check(&phi), OracleVerdict::Valid(Tier::Pattern));
}

#[test]
fn verdicts_are_deterministic() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let oracle = BuiltinOracle { budget: OracleBudget { samples: 500, ..OracleBudget::default() } };
    for _ in 0..30 {
        let phi = formula(&mut rng, 2);
        assert_eq!(oracle.check(&phi), oracle.check(&phi));
    }
}
