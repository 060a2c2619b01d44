use eqpl::arithmetic::BuiltinOracle;
use eqpl::calculus::match_axiom;
use eqpl::gen;
use eqpl::semantics::satisfies;
use eqpl::structures::Tolerances;
use eqpl::syntax::qubits;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

#[test]
fn random_axiom_instances_are_matched_and_true() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let oracle = BuiltinOracle::default();
    let tol = Tolerances::default();
    let mut seen: BTreeMap<&'static str, usize> = BTreeMap::new();
    for _ in 0..1000 {
        let n = rng.gen_range(1..=4u32);
        let frame = qubits(0..n);
        let w = gen::structure(&mut rng, &frame);
        let rho = gen::assignment(&mut rng);
        let (axiom, phi) = gen::axiom_instance(&mut rng, &frame);
        *seen.entry(axiom.name()).or_default() += 1;
        if let Err(e) = match_axiom(&axiom, &phi, &frame, &oracle) {
            panic!("{} does not match {}: {e}", axiom.name(), phi);
        }
        let holds = satisfies(&w, &rho, &phi, &tol).expect("closed formula");
        assert!(holds, "{} instance {} fails in {:?}", axiom.name(), phi, w);
    }
    assert_eq!(seen.len(), 15, "schemas exercised: {seen:?}");
}
