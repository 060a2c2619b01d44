//! Finite-frame quantum interpretation structures: classical valuations,
//! state vectors, tensor products, factorizability and structure validation.
//!
//! A structure over frame `W` stands for the structure on all qubit symbols in
//! which every qubit outside `W` is false in every admissible valuation and
//! sits in the all-false basis state.

mod structure;
mod vector;

use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use crate::syntax::{Qubit, QubitSet};

pub use structure::{project_valuations, validate_structure, Diagnostic, QuantumStructure, Side};
pub use vector::{make_vector, schmidt_factor, tensor, Factorization, StateVector};

pub type C64 = Complex64;

/// Numerical tolerances used throughout the workbench.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Unit-norm check for state vectors.
    pub norm: f64,
    /// Singular value ratio below which a matrix counts as rank one.
    pub rank: f64,
    /// Slack for comparisons between denoted reals.
    pub cmp: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { norm: 1e-9, rank: 1e-7, cmp: 1e-9 }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StructureError {
    #[error("state vector is not unit norm (norm {0})")]
    NotUnitNorm(f64),
    #[error("tensor factors have overlapping carriers")]
    OverlappingCarriers,
    #[error("qubit {0} is outside the frame")]
    OutOfFrame(Qubit),
    #[error("{0}")]
    Shape(String),
}

/// A total truth assignment on a finite frame. Bit `i` of `bits` is the value
/// of the `i`-th frame qubit in increasing order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Valuation {
    frame: Vec<Qubit>,
    bits: u64,
}

impl Valuation {
    pub fn new(frame: &QubitSet, bits: u64) -> Self {
        assert!(frame.len() <= 63, "frames are limited to 63 qubits");
        let mask = low_mask(frame.len());
        Valuation { frame: frame.iter().copied().collect(), bits: bits & mask }
    }

    /// `v^F_A`: true exactly on `set`.
    pub fn from_true_set(frame: &QubitSet, set: &QubitSet) -> Self {
        Valuation::new(frame, mask_of(frame, set))
    }

    /// Parses a bit string such as `"01"`, one character per frame qubit in
    /// increasing order.
    pub fn from_bits_str(frame: &QubitSet, text: &str) -> Option<Self> {
        if text.len() != frame.len() {
            return None;
        }
        let mut bits = 0u64;
        for (i, c) in text.chars().enumerate() {
            match c {
                '1' => bits |= 1 << i,
                '0' => {}
                _ => return None,
            }
        }
        Some(Valuation::new(frame, bits))
    }

    pub fn frame(&self) -> QubitSet {
        self.frame.iter().copied().collect()
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn get(&self, q: Qubit) -> Option<bool> {
        let i = self.frame.binary_search(&q).ok()?;
        Some(self.bits & (1 << i) != 0)
    }

    pub fn true_set(&self) -> QubitSet {
        self.frame.iter().enumerate().filter(|(i, _)| self.bits & (1 << i) != 0).map(|(_, q)| *q).collect()
    }

    /// Restriction to `sub`; qubits of `sub` outside the frame are false.
    pub fn restrict(&self, sub: &QubitSet) -> Valuation {
        let set: QubitSet = self.true_set().intersection(sub).copied().collect();
        Valuation::from_true_set(sub, &set)
    }

    /// `v' ⊕ v''` for valuations on disjoint frames.
    pub fn join(&self, other: &Valuation) -> Valuation {
        let frame: QubitSet = self.frame.iter().chain(other.frame.iter()).copied().collect();
        let set: QubitSet = self.true_set().union(&other.true_set()).copied().collect();
        Valuation::from_true_set(&frame, &set)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.frame.len() {
            f.write_str(if self.bits & (1 << i) != 0 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Bit mask of `set` relative to the sorted `frame`; members outside the frame
/// are ignored.
pub fn mask_of(frame: &QubitSet, set: &QubitSet) -> u64 {
    frame.iter().enumerate().filter(|(_, q)| set.contains(q)).fold(0, |m, (i, _)| m | (1 << i))
}

/// Positions of the qubits of `sub` inside the sorted `frame`.
pub(crate) fn positions(frame: &QubitSet, sub: &QubitSet) -> Result<Vec<usize>, StructureError> {
    let items: Vec<Qubit> = frame.iter().copied().collect();
    sub.iter().map(|q| items.binary_search(q).map_err(|_| StructureError::OutOfFrame(*q))).collect()
}

/// Extracts the bits at `pos` into a compact mask over the sub-frame.
pub(crate) fn gather(bits: u64, pos: &[usize]) -> u64 {
    pos.iter().enumerate().fold(0, |m, (j, &i)| if bits & (1 << i) != 0 { m | (1 << j) } else { m })
}

/// Inverse of [`gather`]: spreads a compact mask into the frame positions.
pub(crate) fn scatter(bits: u64, pos: &[usize]) -> u64 {
    pos.iter().enumerate().fold(0, |m, (j, &i)| if bits & (1 << j) != 0 { m | (1 << i) } else { m })
}
