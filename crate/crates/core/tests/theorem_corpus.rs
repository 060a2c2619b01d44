use eqpl::calculus::corpus::THEOREMS;
use eqpl::gen;
use eqpl::semantics::satisfies;
use eqpl::structures::Tolerances;
use eqpl::syntax::{qubits, Classical, Quantum, RealTerm};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn every_theorem_holds_on_random_structures() {
    let tol = Tolerances::default();
    for (i, thm) in THEOREMS.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(100 + i as u64);
        for _ in 0..100 {
            let frame = qubits(0..rng.gen_range(1..=4u32));
            let w = gen::structure(&mut rng, &frame);
            let rho = gen::assignment(&mut rng);
            let params = gen::theorem_params(&mut rng, &w);
            let phi = (thm.statement)(&params);
            let holds = satisfies(&w, &rho, &phi, &tol).expect("closed formula");
            assert!(holds, "{} fails: {phi}\nin {w:?}", thm.name);
        }
    }
}

#[test]
fn unit_norm_needs_a_union_of_blocks() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let tol = Tolerances::default();
    let rho = gen::assignment(&mut rng);
    let (mut off, mut failures) = (0, 0);
    for _ in 0..200 {
        let frame = qubits(0..3);
        let w = gen::structure(&mut rng, &frame);
        let g = gen::subset(&mut rng, &frame);
        let unit = Quantum::eq_r(RealTerm::SumSq { frame: g.clone(), guard: Classical::Top }, RealTerm::int(1));
        let holds = satisfies(&w, &rho, &unit, &tol).unwrap();
        if w.is_union_of_blocks(&g) {
            assert!(holds, "{unit} fails over a union of blocks");
        } else {
            off += 1;
            failures += usize::from(!holds);
        }
    }
    assert!(off > 0 && failures > 0, "{failures} failures in {off} samples");
}
