//! JSON model files: a structure over named qubits plus an assignment.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use eqpl::semantics::Assignment;
use eqpl::structures::{make_vector, QuantumStructure, Valuation, C64};
use eqpl::syntax::{qubit_from_name, Aliases, ComplexVar, Qubit, QubitSet, RealVar};

use crate::CliError;

/// On-disk form of a model. Bit strings list one character per qubit, in
/// the order the qubits are listed in `frame` (for `admissible`) or in the
/// block (for `blocks`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub frame: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub aliases: BTreeMap<String, String>,
    pub admissible: Vec<String>,
    pub partition: Vec<Vec<String>>,
    pub blocks: Vec<BTreeMap<String, [f64; 2]>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub nu_overrides: Vec<NuOverride>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub assignment: BTreeMap<String, Scalar>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NuOverride {
    #[serde(rename = "F")]
    pub frame: Vec<String>,
    #[serde(rename = "A")]
    pub set: Vec<String>,
    pub value: [f64; 2],
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Real(f64),
    Complex([f64; 2]),
}

/// A loaded model.
#[derive(Clone, Debug)]
pub struct Model {
    pub structure: QuantumStructure,
    pub assignment: Assignment,
    pub aliases: Aliases,
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

fn resolve(names: &[String], aliases: &Aliases) -> Result<Vec<Qubit>, CliError> {
    names.iter().map(|n| qubit_from_name(n, aliases).ok_or_else(|| bad(format!("unknown qubit `{n}`")))).collect()
}

/// The valuation over `carrier` whose true qubits are marked by `bits`,
/// one character per entry of `order`.
fn valuation(bits: &str, order: &[Qubit], carrier: &QubitSet) -> Result<Valuation, CliError> {
    if bits.chars().count() != order.len() {
        return Err(bad(format!("bit string `{bits}` does not have {} characters", order.len())));
    }
    let mut set = QubitSet::new();
    for (c, q) in bits.chars().zip(order) {
        match c {
            '1' => {
                set.insert(*q);
            }
            '0' => {}
            _ => return Err(bad(format!("bit string `{bits}` has a character other than 0 and 1"))),
        }
    }
    Ok(Valuation::from_true_set(carrier, &set))
}

fn variable(name: &str, value: Scalar, rho: Assignment) -> Result<Assignment, CliError> {
    let index = |prefix: &str| name.strip_prefix(prefix).and_then(|d| d.parse::<u32>().ok());
    match (index("x"), index("z"), value) {
        (Some(k), _, Scalar::Real(x)) => Ok(rho.with_real(k, x)),
        (_, Some(k), Scalar::Complex([re, im])) => Ok(rho.with_complex(k, C64::new(re, im))),
        (_, Some(k), Scalar::Real(re)) => Ok(rho.with_complex(k, C64::new(re, 0.0))),
        _ => Err(bad(format!("cannot assign {value:?} to `{name}`"))),
    }
}

impl ModelFile {
    pub fn load(&self) -> Result<Model, CliError> {
        let mut aliases = Aliases::new();
        for (name, target) in &self.aliases {
            let q = qubit_from_name(target, &Aliases::new())
                .ok_or_else(|| bad(format!("alias target `{target}` is not a qubit symbol")))?;
            aliases.insert(name.clone(), q);
        }
        let order = resolve(&self.frame, &aliases)?;
        let frame: QubitSet = order.iter().copied().collect();
        if frame.len() != order.len() {
            return Err(bad("frame lists a qubit twice"));
        }
        let admissible = self.admissible.iter().map(|b| valuation(b, &order, &frame)).collect::<Result<Vec<_>, _>>()?;
        if self.blocks.len() != self.partition.len() {
            return Err(bad("there must be one amplitude table per block"));
        }
        let mut blocks = Vec::new();
        for (names, table) in self.partition.iter().zip(&self.blocks) {
            let block_order = resolve(names, &aliases)?;
            let carrier: QubitSet = block_order.iter().copied().collect();
            let entries = table
                .iter()
                .map(|(bits, [re, im])| Ok((valuation(bits, &block_order, &carrier)?, C64::new(*re, *im))))
                .collect::<Result<Vec<_>, CliError>>()?;
            blocks.push(make_vector(&carrier, entries, 1e-6).map_err(|e| bad(e.to_string()))?);
        }
        let mut nu = BTreeMap::new();
        for o in &self.nu_overrides {
            let g: QubitSet = resolve(&o.frame, &aliases)?.into_iter().collect();
            let a: QubitSet = resolve(&o.set, &aliases)?.into_iter().collect();
            nu.insert((g, a), C64::new(o.value[0], o.value[1]));
        }
        let structure = QuantumStructure::new(frame, admissible, blocks, nu).map_err(|e| bad(e.to_string()))?;
        let mut assignment = Assignment::new();
        for (name, value) in &self.assignment {
            assignment = variable(name, *value, assignment)?;
        }
        Ok(Model { structure, assignment, aliases })
    }

    pub fn save(w: &QuantumStructure, rho: &Assignment, aliases: &Aliases) -> ModelFile {
        let name = |q: &Qubit| aliases.name_of(*q).map(str::to_string).unwrap_or_else(|| q.to_string());
        let names = |s: &QubitSet| s.iter().map(name).collect::<Vec<_>>();
        let bits = |v: &Valuation, s: &QubitSet| {
            s.iter().map(|q| if v.get(*q) == Some(true) { '1' } else { '0' }).collect::<String>()
        };
        let frame = w.frame();
        let blocks = w
            .blocks()
            .iter()
            .map(|b| {
                (0..1u64 << b.carrier().len())
                    .map(|k| (Valuation::new(b.carrier(), k), b.amplitude_bits(k)))
                    .filter(|(_, z)| z.norm() > 0.0)
                    .map(|(v, z)| (bits(&v, b.carrier()), [z.re, z.im]))
                    .collect()
            })
            .collect();
        let nu_overrides = w
            .nu_defaults()
            .iter()
            .map(|((g, a), z)| NuOverride { frame: names(g), set: names(a), value: [z.re, z.im] })
            .collect();
        let mut assignment = BTreeMap::new();
        for (RealVar(k), x) in &rho.reals {
            assignment.insert(format!("x{k}"), Scalar::Real(*x));
        }
        for (ComplexVar(k), z) in &rho.complexes {
            assignment.insert(format!("z{k}"), Scalar::Complex([z.re, z.im]));
        }
        let used: BTreeMap<String, String> =
            aliases.iter().filter(|(_, q)| frame.contains(q)).map(|(n, q)| (n.to_string(), q.to_string())).collect();
        ModelFile {
            frame: names(frame),
            aliases: used,
            admissible: w.admissible().iter().map(|v| bits(v, frame)).collect(),
            partition: w.partition().iter().map(names).collect(),
            blocks,
            nu_overrides,
            assignment,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use eqpl::gen;
    use eqpl::structures::{validate_structure, Tolerances};
    use eqpl::syntax::qubits;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn saved_models_load_back() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in [1u32, 2, 3, 4, 4, 3] {
            let w = gen::structure(&mut rng, &qubits(0..n));
            let rho = gen::assignment(&mut rng);
            let file = ModelFile::save(&w, &rho, &Aliases::cat());
            let text = serde_json::to_string(&file).unwrap();
            let back = serde_json::from_str::<ModelFile>(&text).unwrap().load().unwrap();
            assert!(validate_structure(&back.structure, &Tolerances::default()).is_empty());
            assert_eq!(back.structure.admissible_bits(), w.admissible_bits());
            assert_eq!(back.structure.partition(), w.partition());
            assert_eq!(back.structure.nu_defaults(), w.nu_defaults());
            assert!(back.structure.psi().distance(w.psi()) < 1e-12);
            assert_eq!(back.assignment, rho);
        }
    }

    #[test]
    fn unknown_fields_and_bad_bits_are_rejected() {
        assert!(serde_json::from_str::<ModelFile>(r#"{"frame":[],"admissible":[],"partition":[],"blocks":[],"x":1}"#)
            .is_err());
        let file: ModelFile = serde_json::from_str(
            r#"{"frame":["qb0"],"admissible":["2"],"partition":[["qb0"]],"blocks":[{"1":[1,0]}]}"#,
        )
        .unwrap();
        assert!(file.load().is_err());
    }
}
