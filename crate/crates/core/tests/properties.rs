use eqpl::gen;
use eqpl::semantics::{satisfies, Evaluator};
use eqpl::structures::{validate_structure, Tolerances};
use eqpl::syntax::{expand_quantum, parse_quantum, qubits, Aliases, Classical, Quantum, QuantumAtom};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn formula(seed: u64, n: u32) -> (Quantum, ChaCha8Rng) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let frame = qubits(0..n);
    let atoms: Vec<QuantumAtom> = (0..3).map(|_| gen::atom(&mut rng, &frame)).collect();
    (gen::quantum_over(&mut rng, &atoms, 3), rng)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rendering_parses_back(seed in any::<u64>(), n in 1u32..4) {
        let (g, _) = formula(seed, n);
        let text = g.to_string();
        prop_assert_eq!(parse_quantum(&text, &Aliases::default()).unwrap(), g);
    }

    #[test]
    fn expansion_preserves_truth(seed in any::<u64>(), n in 1u32..4) {
        let (g, mut rng) = formula(seed, n);
        let w = gen::structure(&mut rng, &qubits(0..n));
        let rho = gen::assignment(&mut rng);
        let tol = Tolerances::default();
        let core = expand_quantum(&g).unwrap();
        prop_assert_eq!(satisfies(&w, &rho, &g, &tol).unwrap(), satisfies(&w, &rho, &core, &tol).unwrap());
    }

    #[test]
    fn generated_structures_are_valid(seed in any::<u64>(), n in 1u32..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = gen::structure(&mut rng, &qubits(0..n));
        prop_assert!(validate_structure(&w, &Tolerances::default()).is_empty());
    }

    #[test]
    fn probabilities_are_monotone_and_bounded(seed in any::<u64>(), n in 1u32..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let frame = qubits(0..n);
        let w = gen::structure(&mut rng, &frame);
        let rho = gen::assignment(&mut rng);
        let ev = Evaluator::new(&w, &rho, Tolerances::default());
        let a = gen::classical(&mut rng, &frame, 2);
        let b = gen::classical(&mut rng, &frame, 2);
        let (pa, pab) = (ev.prob(&a).unwrap(), ev.prob(&Classical::or(a.clone(), b)).unwrap());
        prop_assert!((-1e-12..=1.0 + 1e-9).contains(&pa));
        prop_assert!(pa <= pab + 1e-9);
        let total = pa + ev.prob(&Classical::not(a)).unwrap();
        prop_assert!((total - 1.0).abs() < 1e-9);
    }
}
