//! Acceptance run: prints one PASS or FAIL line per criterion.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use eqpl::arithmetic::{eval_arith, BuiltinOracle, Oracle, OracleVerdict, Tier};
use eqpl::calculus::corpus::{punit, THEOREMS};
use eqpl::calculus::{check_derivation, match_axiom, parse_script, Skeleton};
use eqpl::gen;
use eqpl::modelfinder::{find_model, quantum_dnf, FindResult, FinderConfig};
use eqpl::semantics::{measure, satisfies, Assignment};
use eqpl::structures::{
    make_vector, schmidt_factor, tensor, QuantumStructure, StateVector, Tolerances, Valuation, C64,
};
use eqpl::syntax::{parse_quantum, qubits, split_preamble, subsets, Aliases, Quantum, QuantumAtom, QubitSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q(text: &str) -> Quantum {
    parse_quantum(text, &Aliases::default()).expect("parses")
}

fn cat_fixture() -> Outcome {
    let model = fixture("cat.model.json");
    let assertions = [
        "[cati,cata,catm]",
        "(catm -> cata)",
        "(dia(cata) && dia(~cata))",
        "! [cata]",
        "(Pr(cata) = 1/3)",
        "poss{cata,catm}((cata /\\ catm) : 1/sqrt(6), (cata /\\ ~catm) : 1/sqrt(6), (~cata /\\ ~catm) : sqrt(2/3) e^{i pi/3})",
    ];
    let run = |args: &[&str]| Command::new(env!("CARGO_BIN_EXE_eqpl")).args(args).output().expect("binary runs");
    for f in assertions {
        let out = run(&["check", "--model", model.to_str().unwrap(), "--formula", f]);
        ensure(out.status.code() == Some(0), || format!("check {f} exited {:?}", out.status.code()))?;
    }
    let out = run(&["eval", "--model", model.to_str().unwrap(), "--term", "Pr(cata)"]);
    let text = String::from_utf8_lossy(&out.stdout).to_string();
    let p: f64 = text.lines().nth(1).and_then(|l| l.parse().ok()).ok_or(format!("eval printed {text:?}"))?;
    ensure((p - 1.0 / 3.0).abs() <= 1e-9, || format!("Pr(cata) = {p}"))?;
    Ok(format!("6 assertions satisfied, Pr(cata) = {p}"))
}

fn measurement() -> Outcome {
    let frame = qubits(0..4);
    let amps = [C64::new(0.2, 0.0), C64::new(0.0, 0.4), C64::new(-0.4, 0.0), C64::new(0.0, 0.8)];
    let kets = ["0000", "0101", "0110", "1011"];
    let entries: Vec<(Valuation, C64)> =
        kets.iter().zip(amps).map(|(k, a)| (Valuation::from_bits_str(&frame, k).unwrap(), a)).collect();
    let admissible: Vec<Valuation> = entries.iter().map(|(v, _)| v.clone()).collect();
    let psi = make_vector(&frame, entries, 1e-12).map_err(|e| e.to_string())?;
    let w = QuantumStructure::new(frame, admissible, vec![psi], BTreeMap::new()).map_err(|e| e.to_string())?;
    let f = qubits(0..2);
    let u: BTreeSet<Valuation> = [Valuation::from_bits_str(&f, "01").unwrap()].into();
    let mu = measure(&w, &f, &u).map_err(|e| e.to_string())?;
    let expected = amps[1].norm_sqr() + amps[2].norm_sqr();
    ensure((mu - expected).abs() <= 1e-12, || format!("mu = {mu}, expected {expected}"))?;
    Ok(format!("mu(01) = {mu}"))
}

fn punit_checker() -> Outcome {
    let script = std::fs::read_to_string(fixture("punit.proof")).map_err(|e| e.to_string())?;
    let oracle = BuiltinOracle::default();
    let (d, _) = parse_script(&script).map_err(|e| e.to_string())?;
    ensure(d == punit(&qubits(0..2)), || "fixture differs from the corpus derivation".into())?;
    check_derivation(&d, &oracle).map_err(|e| e.to_string())?;
    let mutations = [
        (1, "NETG_F", "EMPTY"),
        (2, "UNIT({qb0,qb1})", "UNIT({qb0})"),
        (3, "QMP(1,2)", "QMP(2,1)"),
        (4, "PROB(top)", "PROB(qb0)"),
        (5, "(Pr(top) = 1)))", "(Pr(top) = 2)))"),
        (6, "QMP(4,5)", "QMP(4,7)"),
        (7, "(Pr(top) = 1)", "(Pr(top) = 1/2)"),
    ];
    for (line, from, to) in mutations {
        let text: Vec<String> = script
            .lines()
            .enumerate()
            .map(|(i, l)| if i == line { l.replacen(from, to, 1) } else { l.into() })
            .collect();
        let (m, _) = parse_script(&text.join("\n")).map_err(|e| e.to_string())?;
        let failed = check_derivation(&m, &oracle).err().map(|f| f.line);
        ensure(failed == Some(line), || format!("mutation {from} -> {to} failed at {failed:?}"))?;
    }
    Ok("accepted; 7 of 7 mutations rejected".into())
}

fn axiom_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let oracle = BuiltinOracle::default();
    let tol = Tolerances::default();
    let mut schemas = BTreeSet::new();
    for _ in 0..1000 {
        let frame = qubits(0..rng.gen_range(1..=4u32));
        let w = gen::structure(&mut rng, &frame);
        let rho = gen::assignment(&mut rng);
        let (axiom, phi) = gen::axiom_instance(&mut rng, &frame);
        schemas.insert(axiom.name());
        match_axiom(&axiom, &phi, &frame, &oracle).map_err(|e| format!("{}: {e}", axiom.name()))?;
        let holds = satisfies(&w, &rho, &phi, &tol).map_err(|e| e.to_string())?;
        ensure(holds, || format!("{} instance {phi} violated", axiom.name()))?;
    }
    ensure(schemas.len() == 15, || format!("only {} schemas drawn", schemas.len()))?;
    Ok("1000 instances over 15 schemas, 0 violations".into())
}

fn theorem_corpus() -> Outcome {
    let tol = Tolerances::default();
    for (i, thm) in THEOREMS.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(100 + i as u64);
        for _ in 0..100 {
            let frame = qubits(0..rng.gen_range(1..=4u32));
            let w = gen::structure(&mut rng, &frame);
            let rho = gen::assignment(&mut rng);
            let phi = (thm.statement)(&gen::theorem_params(&mut rng, &w));
            let holds = satisfies(&w, &rho, &phi, &tol).map_err(|e| e.to_string())?;
            ensure(holds, || format!("{} fails: {phi}", thm.name))?;
        }
    }
    Ok(format!("{} theorems x 100 structures", THEOREMS.len()))
}

fn dnf_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let tol = Tolerances::default();
    let mut checked = 0;
    while checked < 500 {
        let frame = qubits(0..rng.gen_range(1..=3u32));
        let atoms: Vec<QuantumAtom> = (0..rng.gen_range(1..=5)).map(|_| gen::atom(&mut rng, &frame)).collect();
        let g = gen::quantum_over(&mut rng, &atoms, 3);
        let skeleton = Skeleton::of(&g).map_err(|e| e.to_string())?;
        if skeleton.atoms.len() > 10 {
            continue;
        }
        checked += 1;
        let rows = quantum_dnf(&g, 10).map_err(|e| e.to_string())?;
        let n = skeleton.atoms.len();
        for bits in 0..1u32 << n {
            let val: Vec<bool> = (0..n).map(|i| bits >> i & 1 == 1).collect();
            let in_dnf = rows.iter().any(|m| {
                m.literals().all(|(a, pos)| {
                    let i = skeleton.atoms.iter().position(|b| b == a).expect("row atoms are skeleton atoms");
                    val[i] == pos
                })
            });
            ensure(skeleton.prop.eval(&val) == in_dnf, || format!("truth tables differ for {g}"))?;
        }
        let w = gen::structure(&mut rng, &frame);
        let rho = gen::assignment(&mut rng);
        let lhs = satisfies(&w, &rho, &g, &tol).map_err(|e| e.to_string())?;
        let rhs = rows.iter().any(|m| satisfies(&w, &rho, &m.to_formula(), &tol).unwrap_or(false));
        ensure(lhs == rhs, || format!("semantic disagreement on {g}"))?;
    }
    Ok("500 formulas, identical truth tables".into())
}

fn rank_one(v: &StateVector, part: &QubitSet) -> bool {
    let carrier = v.carrier();
    let rest: QubitSet = carrier.difference(part).copied().collect();
    let mut m = vec![vec![C64::new(0.0, 0.0); 1 << rest.len()]; 1 << part.len()];
    for k in 0..1u64 << carrier.len() {
        let val = Valuation::new(carrier, k);
        m[val.restrict(part).bits() as usize][val.restrict(&rest).bits() as usize] = v.amplitude_bits(k);
    }
    let (rows, cols) = (m.len(), m[0].len());
    (0..rows).all(|i| {
        (i + 1..rows)
            .all(|k| (0..cols).all(|j| (j + 1..cols).all(|l| (m[i][j] * m[k][l] - m[i][l] * m[k][j]).norm() <= 1e-6)))
    })
}

fn factorizability() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut entangled, mut product) = (0, 0);
    for i in 0..200 {
        let carrier = qubits(0..rng.gen_range(2..=6u32));
        let dim = 1usize << carrier.len();
        let v = match i % 4 {
            0 => gen::block_state(&mut rng, &carrier),
            1 => {
                let mut psi = StateVector::unit();
                for b in gen::partition(&mut rng, &carrier) {
                    psi = tensor(&psi, &gen::block_state(&mut rng, &b)).map_err(|e| e.to_string())?;
                }
                psi
            }
            2 => {
                let mut amps = vec![C64::new(0.0, 0.0); dim];
                amps[0] = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
                amps[dim - 1] = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
                StateVector::from_dense(&carrier, amps, 1e-9).map_err(|e| e.to_string())?
            }
            _ => StateVector::basis(&carrier, rng.gen_range(0..dim as u64)),
        };
        for part in subsets(&carrier) {
            if part.is_empty() || part.len() == carrier.len() {
                continue;
            }
            let fast = schmidt_factor(&v, &part, 1e-7).factorizable;
            ensure(fast == rank_one(&v, &part), || format!("disagreement on split {part:?}"))?;
            if fast {
                product += 1;
            } else {
                entangled += 1;
            }
        }
    }
    Ok(format!("200 vectors, {product} factorizable and {entangled} entangled splits agree"))
}

fn model_finder() -> Outcome {
    let start = Instant::now();
    let satisfiable = [
        "[qb0,qb1,qb2]",
        "(qb2 -> qb1)",
        "(dia(qb1) && dia(~qb1))",
        "(! [qb1] && (Pr(qb1) = 1/3))",
        "poss{qb1,qb2}((qb1 /\\ qb2) : 1/sqrt(6), (qb1 /\\ ~qb2) : 1/sqrt(6), (~qb1 /\\ ~qb2) : sqrt(2/3) e^{i pi/3})",
        "! [qb0]",
        "(! [qb0] && [qb2])",
        "([qb0,qb1] && ! [qb0])",
        "(Pr(qb0) = 1/2)",
        "((Pr(qb0) = 1/4) && (Pr(qb1) = 3/4))",
        "((Pr((qb0 /\\ qb1)) = 1/2) && ! [qb0])",
        "((x1 <= Pr(qb0)) && (1/2 < x1))",
        "box((qb0 \\/ qb1))",
        "dia((qb0 /\\ ~qb1))",
        "(qb0 /\\ ~qb1)",
        "(abs(amp{qb0}{qb0}) = 1/2)",
        "((z1 = amp{qb0}{}) && (re(z1) = 1/2))",
        "((Pr(qb0) <= 1/3) || (Pr(qb1) = 1))",
        "(ite(qb0; z1; z2) = z2)",
    ];
    let controls = [
        "(qb0 /\\ ~qb0)",
        "(qb0 && ~qb0)",
        "((Pr(qb0) = 1/3) && (Pr(qb0) = 1/2))",
        "(x1 < x1)",
        "(Pr(qb0) = 2)",
        "((x1 <= 0) && (1 <= x1))",
        "(box(qb0) && dia(~qb0))",
        "([qb0] && (abs(amp{qb0}{qb0}) = 2))",
        "((qb0 -> ~qb0) /\\ qb0)",
        "(! [qb0] && ([qb0,qb1] && [qb1]))",
    ];
    let (aliases, cat, _) = split_preamble(&std::fs::read_to_string(fixture("cat_all.eqpl")).unwrap()).unwrap();
    let mut corpus = vec![(parse_quantum(&cat, &aliases).map_err(|e| e.to_string())?, true)];
    corpus.extend(satisfiable.iter().map(|t| (q(t), true)));
    corpus.extend(controls.iter().map(|t| (q(t), false)));
    let cfg = FinderConfig::default();
    let bound = qubits(0..3);
    let mut models = 0;
    for (g, expect_model) in &corpus {
        match find_model(g, &bound, &cfg).map_err(|e| e.to_string())? {
            FindResult::Model(w, rho) => {
                ensure(*expect_model, || format!("control {g} has a model"))?;
                let ok = satisfies(&w, &rho, g, &cfg.tol).map_err(|e| e.to_string())?;
                ensure(ok, || format!("returned model fails {g}"))?;
                models += 1;
            }
            other => ensure(!expect_model, || format!("no model for {g}: {other:?}"))?,
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("{} formulas, {models} models verified, 10 controls without model, {elapsed:.1?}", corpus.len()))
}

fn oracle() -> Outcome {
    let tol = Tolerances::default();
    let builtin = BuiltinOracle::default();
    let first = q("(((x1 <= x2) && (x2 <= x3)) ==> (x1 <= x3))");
    let second = q("(((z1 * z1) = -1) ==> ((z1 = (0 + i 1)) || (z1 = (0 + i -1))))");
    ensure(builtin.check(&first) == OracleVerdict::Valid(Tier::Linear), || "transitivity not settled linearly".into())?;
    ensure(builtin.check(&second) == OracleVerdict::Valid(Tier::Pattern), || {
        "square roots not settled by pattern".into()
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut valid = Vec::new();
    for _ in 0..200 {
        let frame = QubitSet::new();
        let (t1, t2, t3) = (
            gen::real_term(&mut rng, &frame, 2),
            gen::real_term(&mut rng, &frame, 2),
            gen::real_term(&mut rng, &frame, 2),
        );
        let phi = match rng.gen_range(0..3) {
            0 => Quantum::imp(Quantum::leq(t1.clone(), t2.clone()), Quantum::leq(t1, t3)),
            1 => Quantum::or(Quantum::leq(t1.clone(), t2.clone()), Quantum::leq(t2, t1)),
            _ => Quantum::leq(t1, t2),
        };
        if builtin.check(&phi).is_valid() {
            valid.push(phi);
        }
    }
    ensure(!valid.is_empty(), || "no valid formulas drawn".into())?;
    let value = |rng: &mut ChaCha8Rng| {
        if rng.gen_bool(0.5) {
            rng.gen_range(-12..=12) as f64 / 4.0
        } else {
            rng.gen_range(-3.0..3.0)
        }
    };
    for phi in &valid {
        for _ in 0..100_000 {
            let mut rho = Assignment::new();
            for v in 1..=3 {
                rho = rho.with_real(v, value(&mut rng));
                rho = rho.with_complex(v, C64::new(value(&mut rng), value(&mut rng)));
            }
            ensure(eval_arith(phi, &rho, &tol) == Ok(true), || format!("{phi} falsified"))?;
        }
    }
    Ok(format!("both examples valid; {} valid verdicts each survive 100000 samples", valid.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("cat fixture", cat_fixture),
        ("measurement", measurement),
        ("PUnit proof checking", punit_checker),
        ("axiom soundness", axiom_soundness),
        ("theorem corpus", theorem_corpus),
        ("DNF equivalence", dnf_equivalence),
        ("factorizability", factorizability),
        ("model finder", model_finder),
        ("oracle", oracle),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
