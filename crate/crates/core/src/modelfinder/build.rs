//! Turning a numeric solution into a structure and an assignment.

use std::collections::BTreeMap;

use thiserror::Error;

use super::system::Layout;
use crate::semantics::Assignment;
use crate::structures::{
    validate_structure, Diagnostic, QuantumStructure, StateVector, StructureError, Tolerances, Valuation, C64,
};

#[derive(Clone, Debug, PartialEq, Error)]
pub enum BuildError {
    #[error("block over {0:?} has zero norm")]
    ZeroBlock(Vec<u32>),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("structure fails validation: {}", .0.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; "))]
    ValidationFailed(Vec<Diagnostic>),
}

fn complex_at(p: &[f64], i: usize) -> C64 {
    C64::new(p[i], p[i + 1])
}

/// Builds the structure and assignment encoded by `p`. Block amplitudes with
/// modulus below `snap` are set to zero; each block is then renormalized.
pub fn build_model(
    layout: &Layout,
    p: &[f64],
    snap: f64,
    tol: &Tolerances,
) -> Result<(QuantumStructure, Assignment), BuildError> {
    let mut blocks = Vec::new();
    for (carrier, entries) in layout.partition.iter().zip(&layout.blocks) {
        let mut amps: Vec<C64> = entries
            .iter()
            .map(|e| match e {
                Some(i) => complex_at(p, *i),
                None => C64::new(0.0, 0.0),
            })
            .map(|z| if z.norm() < snap { C64::new(0.0, 0.0) } else { z })
            .collect();
        let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(BuildError::ZeroBlock(carrier.iter().map(|q| q.0).collect()));
        }
        for z in amps.iter_mut() {
            *z /= norm;
        }
        blocks.push(StateVector::from_dense(carrier, amps, tol.norm)?);
    }
    let nu: BTreeMap<_, _> = layout.nu.iter().map(|(k, i)| (k.clone(), complex_at(p, *i))).collect();
    let admissible = layout.admissible.iter().map(|k| Valuation::new(&layout.frame, *k));
    let w = QuantumStructure::new(layout.frame.clone(), admissible, blocks, nu)?;
    let diags = validate_structure(&w, tol);
    if !diags.is_empty() {
        return Err(BuildError::ValidationFailed(diags));
    }
    let mut rho = Assignment::new();
    for (v, i) in &layout.reals {
        rho = rho.with_real(v.0, p[*i]);
    }
    for (v, i) in &layout.complexes {
        rho = rho.with_complex(v.0, complex_at(p, *i));
    }
    Ok((w, rho))
}
