use serde::Serialize;

use super::Partition;
use crate::error::PartitionError;
use crate::gf::Subspace;

/// Counting data for one choice of a minimum-dimension component `V_1` and a
/// complement `W` of it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplementWitness {
    pub component_index: usize,
    pub complement: Subspace,
    /// Number of dimension-`t` components meeting `W` trivially.
    pub s_prime: usize,
    pub s_prime_divisible: bool,
    pub s_prime_positive: bool,
    /// `sum (q^{m_j} - 1)` over components meeting `W`, `m_j = dim(V_j ∩ W)`.
    pub induced_point_sum: u128,
    /// `q^{n-t} - 1`
    pub induced_expected: u128,
    pub induced_count_ok: bool,
}

impl ComplementWitness {
    pub fn holds(&self) -> bool {
        self.s_prime_divisible && self.s_prime_positive && self.induced_count_ok
    }
}

/// Lower and upper bounds on the minimum-dimension components of a
/// non-trivial partition, evaluated on one partition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub q: u32,
    pub n: usize,
    pub t: usize,
    pub s: usize,
    pub r: usize,
    /// `q + t`
    pub min_count_bound: u64,
    pub min_count_ok: bool,
    /// `q^t + 1`
    pub r_lower: u128,
    /// `floor((q^n - 1) / (q^t - 1))`
    pub r_upper: u128,
    pub r_bounds_ok: bool,
    /// `r mod q^t`, expected to be 1
    pub r_residue: u128,
    pub r_residue_ok: bool,
    /// `s >= q^t + 1`; reported only, never required
    pub s_at_least_qt_plus_1: bool,
    pub witness: ComplementWitness,
}

impl BoundReport {
    pub fn all_hold(&self) -> bool {
        self.min_count_ok && self.r_bounds_ok && self.r_residue_ok && self.witness.holds()
    }
}

/// Counts for an arbitrary complement `w` of the component at `index`.
pub fn complement_witness(p: &Partition, index: usize, w: Subspace) -> Result<ComplementWitness, PartitionError> {
    let comps = p.components();
    let v1 = comps.get(index).ok_or(PartitionError::NotAComponent)?;
    let t = v1.dim();
    let q = p.q() as u128;
    let mut s_prime = 0;
    let mut induced_point_sum = 0u128;
    for c in comps {
        let m = c.meet(&w)?;
        if m.is_zero() {
            if c.dim() == t {
                s_prime += 1;
            }
        } else {
            induced_point_sum += q.pow(m.dim() as u32) - 1;
        }
    }
    let induced_expected = q.pow(w.dim() as u32) - 1;
    Ok(ComplementWitness {
        component_index: index,
        complement: w,
        s_prime,
        s_prime_divisible: (s_prime as u128).is_multiple_of(q),
        s_prime_positive: s_prime >= 1,
        induced_point_sum,
        induced_expected,
        induced_count_ok: induced_point_sum == induced_expected,
    })
}

impl Partition {
    /// Evaluates the minimum-dimension bounds for a non-trivial partition.
    /// The complement witness uses the first minimum-dimension component and
    /// its deterministic complement.
    pub fn bound_report(&self) -> Result<BoundReport, PartitionError> {
        if self.r() < 2 {
            return Err(PartitionError::TrivialPartition);
        }
        let t = self.min_dim().expect("nonempty");
        if t == 0 {
            return Err(PartitionError::ZeroSubspace);
        }
        let q = self.q();
        let qt = (q as u128).pow(t as u32);
        let qn = (q as u128).pow(self.n() as u32);
        let s = self.components().iter().filter(|c| c.dim() == t).count();
        let r = self.r();
        let r_lower = qt + 1;
        let r_upper = (qn - 1) / (qt - 1);
        let first = self.components().iter().position(|c| c.dim() == t).unwrap();
        let w = self.components()[first].complement();
        let witness = complement_witness(self, first, w)?;
        Ok(BoundReport {
            q,
            n: self.n(),
            t,
            s,
            r,
            min_count_bound: q as u64 + t as u64,
            min_count_ok: s as u64 >= q as u64 + t as u64,
            r_lower,
            r_upper,
            r_bounds_ok: r_lower <= r as u128 && r as u128 <= r_upper,
            r_residue: r as u128 % qt,
            r_residue_ok: r as u128 % qt == 1,
            s_at_least_qt_plus_1: s as u128 >= r_lower,
            witness,
        })
    }
}
