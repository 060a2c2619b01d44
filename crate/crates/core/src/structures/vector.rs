use nalgebra::DMatrix;

use super::{gather, low_mask, positions, scatter, StructureError, Valuation, C64};
use crate::syntax::QubitSet;

/// A unit vector over the valuations of a finite carrier. Amplitudes are
/// stored densely, index `k` being the valuation whose bit mask is `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    carrier: QubitSet,
    amps: Vec<C64>,
}

/// Builds a state vector from `(valuation, amplitude)` entries; absent
/// valuations get amplitude zero. The norm is checked, never corrected.
pub fn make_vector<I>(carrier: &QubitSet, entries: I, eps_norm: f64) -> Result<StateVector, StructureError>
where
    I: IntoIterator<Item = (Valuation, C64)>,
{
    let mut amps = vec![C64::new(0.0, 0.0); 1usize << carrier.len()];
    for (v, a) in entries {
        if v.frame() != *carrier {
            return Err(StructureError::Shape(format!("valuation {v} is not over the carrier of the vector")));
        }
        amps[v.bits() as usize] += a;
    }
    StateVector::from_dense(carrier, amps, eps_norm)
}

impl StateVector {
    pub fn from_dense(carrier: &QubitSet, amps: Vec<C64>, eps_norm: f64) -> Result<Self, StructureError> {
        if amps.len() != 1usize << carrier.len() {
            return Err(StructureError::Shape(format!(
                "expected {} amplitudes, got {}",
                1usize << carrier.len(),
                amps.len()
            )));
        }
        let v = StateVector { carrier: carrier.clone(), amps };
        let n = v.norm();
        if (n - 1.0).abs() > eps_norm {
            return Err(StructureError::NotUnitNorm(n));
        }
        Ok(v)
    }

    /// Dense vector without the norm check.
    pub(crate) fn raw(carrier: QubitSet, amps: Vec<C64>) -> Self {
        debug_assert_eq!(amps.len(), 1usize << carrier.len());
        StateVector { carrier, amps }
    }

    /// The logical basis vector `|v⟩`.
    pub fn basis(carrier: &QubitSet, bits: u64) -> Self {
        let mut amps = vec![C64::new(0.0, 0.0); 1usize << carrier.len()];
        amps[(bits & low_mask(carrier.len())) as usize] = C64::new(1.0, 0.0);
        StateVector { carrier: carrier.clone(), amps }
    }

    /// The vector `ψ_[∅] = 1` on the empty carrier.
    pub fn unit() -> Self {
        StateVector { carrier: QubitSet::new(), amps: vec![C64::new(1.0, 0.0)] }
    }

    pub fn carrier(&self) -> &QubitSet {
        &self.carrier
    }

    pub fn amps(&self) -> &[C64] {
        &self.amps
    }

    pub fn amplitude(&self, v: &Valuation) -> C64 {
        if v.frame() == self.carrier {
            self.amps[v.bits() as usize]
        } else {
            self.amps[v.restrict(&self.carrier).bits() as usize]
        }
    }

    pub fn amplitude_bits(&self, bits: u64) -> C64 {
        self.amps[(bits & low_mask(self.carrier.len())) as usize]
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Valuations with nonzero amplitude, in increasing bit order.
    pub fn support(&self) -> Vec<Valuation> {
        self.amps
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm_sqr() > 0.0)
            .map(|(k, _)| Valuation::new(&self.carrier, k as u64))
            .collect()
    }

    /// Largest componentwise distance to `other` over the same carrier.
    pub fn distance(&self, other: &StateVector) -> f64 {
        if self.carrier != other.carrier {
            return f64::INFINITY;
        }
        self.amps.iter().zip(&other.amps).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

/// `a ⊗ b` on disjoint carriers.
pub fn tensor(a: &StateVector, b: &StateVector) -> Result<StateVector, StructureError> {
    if !a.carrier.is_disjoint(&b.carrier) {
        return Err(StructureError::OverlappingCarriers);
    }
    let carrier: QubitSet = a.carrier.union(&b.carrier).copied().collect();
    let pa = positions(&carrier, &a.carrier)?;
    let pb = positions(&carrier, &b.carrier)?;
    let mut amps = vec![C64::new(0.0, 0.0); 1usize << carrier.len()];
    for (i, x) in a.amps.iter().enumerate() {
        if x.norm_sqr() == 0.0 {
            continue;
        }
        let hi = scatter(i as u64, &pa);
        for (j, y) in b.amps.iter().enumerate() {
            amps[(hi | scatter(j as u64, &pb)) as usize] = x * y;
        }
    }
    Ok(StateVector { carrier, amps })
}

/// Result of a bipartition rank test.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization {
    pub factorizable: bool,
    /// Factor over the chosen part; carries the global phase.
    pub left: Option<StateVector>,
    /// Factor over the rest of the carrier; first nonzero amplitude is real
    /// and positive.
    pub right: Option<StateVector>,
    /// Ratio of the second to the first singular value.
    pub ratio: f64,
}

/// Decides whether `v` is `part`-factorizable by the rank of its amplitude
/// matrix (rows: valuations of `part`, columns: valuations of the rest).
pub fn schmidt_factor(v: &StateVector, part: &QubitSet, eps_rank: f64) -> Factorization {
    let part: QubitSet = part.intersection(&v.carrier).copied().collect();
    let rest: QubitSet = v.carrier.difference(&part).copied().collect();
    let pl = positions(&v.carrier, &part).expect("part lies in the carrier");
    let pr = positions(&v.carrier, &rest).expect("rest lies in the carrier");
    let (rows, cols) = (1usize << part.len(), 1usize << rest.len());
    let mut m = DMatrix::<C64>::zeros(rows, cols);
    for (k, a) in v.amps.iter().enumerate() {
        let k = k as u64;
        m[(gather(k, &pl) as usize, gather(k, &pr) as usize)] = *a;
    }
    let svd = m.clone().svd(false, true);
    let sv = &svd.singular_values;
    let mut order: Vec<usize> = (0..sv.len()).collect();
    order.sort_by(|&i, &j| sv[j].total_cmp(&sv[i]));
    let s1 = sv[order[0]];
    let s2 = order.get(1).map(|&i| sv[i]).unwrap_or(0.0);
    let ratio = if s1 > 0.0 { s2 / s1 } else { 0.0 };
    if s1 == 0.0 || ratio >= eps_rank {
        return Factorization { factorizable: false, left: None, right: None, ratio };
    }
    let vt = svd.v_t.expect("right singular vectors were requested");
    let mut r: Vec<C64> = (0..cols).map(|j| vt[(order[0], j)]).collect();
    let lead = r.iter().copied().find(|x| x.norm() > 1e-12).unwrap_or(C64::new(1.0, 0.0));
    let phase = lead.conj() / lead.norm();
    for x in r.iter_mut() {
        *x *= phase;
    }
    let mut l: Vec<C64> = (0..rows).map(|i| (0..cols).map(|j| m[(i, j)] * r[j].conj()).sum()).collect();
    let ln = l.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    for x in l.iter_mut() {
        *x /= ln;
    }
    Factorization {
        factorizable: true,
        left: Some(StateVector::raw(part, l)),
        right: Some(StateVector::raw(rest, r)),
        ratio,
    }
}
