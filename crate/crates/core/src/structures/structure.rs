use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::vector::{schmidt_factor, tensor, StateVector};
use super::{mask_of, StructureError, Tolerances, Valuation, C64};
use crate::syntax::{subsets, QubitSet};

/// A quantum interpretation structure over a finite frame.
///
/// The global state is stored as one state vector per partition block; the
/// state of any union of blocks is their tensor product. Amplitude defaults
/// `ν_GA` are kept only for sets `G` that are not unions of blocks.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumStructure {
    frame: QubitSet,
    admissible: BTreeSet<u64>,
    blocks: Vec<StateVector>,
    nu: BTreeMap<(QubitSet, QubitSet), C64>,
    psi: StateVector,
}

impl QuantumStructure {
    /// Assembles a structure. Fails when the block carriers do not partition
    /// the frame or an admissible valuation is not over the frame; semantic
    /// clauses are checked separately by [`validate_structure`].
    pub fn new<I>(
        frame: QubitSet,
        admissible: I,
        mut blocks: Vec<StateVector>,
        nu: BTreeMap<(QubitSet, QubitSet), C64>,
    ) -> Result<Self, StructureError>
    where
        I: IntoIterator<Item = Valuation>,
    {
        let mut covered = QubitSet::new();
        for b in &blocks {
            if b.carrier().is_empty() {
                return Err(StructureError::Shape("partition blocks must be nonempty".into()));
            }
            if !b.carrier().is_disjoint(&covered) {
                return Err(StructureError::Shape("partition blocks overlap".into()));
            }
            covered.extend(b.carrier().iter().copied());
        }
        if let Some(q) = covered.difference(&frame).next() {
            return Err(StructureError::OutOfFrame(*q));
        }
        if let Some(q) = frame.difference(&covered).next() {
            return Err(StructureError::Shape(format!("qubit {q} is not in any partition block")));
        }
        let mut masks = BTreeSet::new();
        for v in admissible {
            if v.frame() != frame {
                return Err(StructureError::Shape(format!("admissible valuation {v} is not over the frame")));
            }
            masks.insert(v.bits());
        }
        for (g, a) in nu.keys() {
            if let Some(q) = g.difference(&frame).next() {
                return Err(StructureError::OutOfFrame(*q));
            }
            if !a.is_subset(g) {
                return Err(StructureError::Shape("amplitude default set is not a subset".into()));
            }
        }
        blocks.sort_by(|a, b| a.carrier().iter().next().cmp(&b.carrier().iter().next()));
        let mut psi = StateVector::unit();
        for b in &blocks {
            psi = tensor(&psi, b)?;
        }
        Ok(QuantumStructure { frame, admissible: masks, blocks, nu, psi })
    }

    /// The structure over the empty frame, enough to interpret formulas that
    /// mention no qubits.
    pub fn empty() -> Self {
        QuantumStructure {
            frame: QubitSet::new(),
            admissible: BTreeSet::from([0]),
            blocks: Vec::new(),
            nu: BTreeMap::new(),
            psi: StateVector::unit(),
        }
    }

    pub fn frame(&self) -> &QubitSet {
        &self.frame
    }

    /// The admissible set `V` as bit masks over the frame.
    pub fn admissible_bits(&self) -> &BTreeSet<u64> {
        &self.admissible
    }

    pub fn admissible(&self) -> Vec<Valuation> {
        self.admissible.iter().map(|b| Valuation::new(&self.frame, *b)).collect()
    }

    pub fn is_admissible(&self, v: &Valuation) -> bool {
        v.frame() == self.frame && self.admissible.contains(&v.bits())
    }

    pub fn blocks(&self) -> &[StateVector] {
        &self.blocks
    }

    pub fn partition(&self) -> Vec<QubitSet> {
        self.blocks.iter().map(|b| b.carrier().clone()).collect()
    }

    /// Stored amplitude defaults.
    pub fn nu_defaults(&self) -> &BTreeMap<(QubitSet, QubitSet), C64> {
        &self.nu
    }

    /// The full-frame state `ψ_[W]`.
    pub fn psi(&self) -> &StateVector {
        &self.psi
    }

    /// `F ∈ ∪𝒮`: `F` lies in the frame and is a union of blocks.
    pub fn is_union_of_blocks(&self, f: &QubitSet) -> bool {
        f.is_subset(&self.frame) && self.blocks.iter().all(|b| b.carrier().is_subset(f) || b.carrier().is_disjoint(f))
    }

    /// `ψ_[R]` for `R ∈ ∪𝒮`.
    pub fn state_of(&self, r: &QubitSet) -> Option<StateVector> {
        if !self.is_union_of_blocks(r) {
            return None;
        }
        let mut out = StateVector::unit();
        for b in self.blocks.iter().filter(|b| b.carrier().is_subset(r)) {
            out = tensor(&out, b).expect("blocks are disjoint");
        }
        Some(out)
    }

    /// `ν_GA`: the amplitude of `v^G_A` in `ψ_[G]` when `G ∈ ∪𝒮`, otherwise the
    /// stored default (zero when none was given).
    pub fn nu(&self, g: &QubitSet, a: &QubitSet) -> Result<C64, StructureError> {
        if let Some(q) = g.difference(&self.frame).next() {
            return Err(StructureError::OutOfFrame(*q));
        }
        if !a.is_subset(g) {
            return Err(StructureError::Shape("amplitude set is not a subset of its frame".into()));
        }
        if self.is_union_of_blocks(g) {
            let mut z = C64::new(1.0, 0.0);
            for b in self.blocks.iter().filter(|b| b.carrier().is_subset(g)) {
                z *= b.amplitude_bits(mask_of(b.carrier(), a));
            }
            Ok(z)
        } else {
            Ok(self.nu.get(&(g.clone(), a.clone())).copied().unwrap_or(C64::new(0.0, 0.0)))
        }
    }
}

/// Which part of each valuation [`project_valuations`] keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `V_[S]`: restriction to `S`.
    Inside,
    /// `V_]S[`: restriction to the complement of `S` in the frame.
    Outside,
}

/// `V_[S]` or `V_]S[`, duplicates collapsed.
pub fn project_valuations(vals: &[Valuation], s: &QubitSet, side: Side) -> BTreeSet<Valuation> {
    vals.iter()
        .map(|v| match side {
            Side::Inside => v.restrict(s),
            Side::Outside => {
                let rest: QubitSet = v.frame().difference(s).copied().collect();
                v.restrict(&rest)
            }
        })
        .collect()
}

/// A violated clause of the structure definition.
#[derive(Clone, Debug, PartialEq)]
pub enum Diagnostic {
    EmptyAdmissibleSet,
    NotUnitBlock { block: QubitSet, norm: f64 },
    NonFactorizableBlockViolation { block: QubitSet, part: QubitSet },
    AdmissibilityViolation { valuation: Valuation, amplitude: C64 },
    AmplitudeDefaultViolation { frame: QubitSet, set: QubitSet },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |s: &QubitSet| s.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(",");
        match self {
            Diagnostic::EmptyAdmissibleSet => write!(f, "admissible set V is empty"),
            Diagnostic::NotUnitBlock { block, norm } => {
                write!(f, "block state over {{{}}} has norm {norm}, not 1", show(block))
            }
            Diagnostic::NonFactorizableBlockViolation { block, part } => write!(
                f,
                "block state over {{{}}} is not non-factorizable: it splits off {{{}}}",
                show(block),
                show(part)
            ),
            Diagnostic::AdmissibilityViolation { valuation, amplitude } => {
                write!(f, "valuation {valuation} is not admissible but has amplitude {amplitude}")
            }
            Diagnostic::AmplitudeDefaultViolation { frame, set } => write!(
                f,
                "stored amplitude for ({{{}}}, {{{}}}) disagrees with the state of a union of blocks",
                show(frame),
                show(set)
            ),
        }
    }
}

/// Checks the defining clauses of a quantum interpretation structure. The
/// result is empty exactly when all clauses hold.
pub fn validate_structure(w: &QuantumStructure, tol: &Tolerances) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    if w.admissible.is_empty() {
        out.push(Diagnostic::EmptyAdmissibleSet);
    }
    for b in &w.blocks {
        let n = b.norm();
        if (n - 1.0).abs() > tol.norm {
            out.push(Diagnostic::NotUnitBlock { block: b.carrier().clone(), norm: n });
        }
        let first = *b.carrier().iter().next().expect("blocks are nonempty");
        for part in subsets(b.carrier()) {
            if !part.contains(&first) || part.len() == b.carrier().len() {
                continue;
            }
            if schmidt_factor(b, &part, tol.rank).factorizable {
                out.push(Diagnostic::NonFactorizableBlockViolation { block: b.carrier().clone(), part });
                break;
            }
        }
    }
    for (k, a) in w.psi.amps().iter().enumerate() {
        if a.norm() > tol.norm && !w.admissible.contains(&(k as u64)) {
            out.push(Diagnostic::AdmissibilityViolation {
                valuation: Valuation::new(&w.frame, k as u64),
                amplitude: *a,
            });
        }
    }
    for ((g, a), z) in &w.nu {
        if w.is_union_of_blocks(g) {
            let actual = w.nu(g, a).expect("stored defaults are checked at construction");
            if (actual - z).norm() > tol.norm {
                out.push(Diagnostic::AmplitudeDefaultViolation { frame: g.clone(), set: a.clone() });
            }
        }
    }
    out
}
