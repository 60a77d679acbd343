use super::Partition;
use crate::error::PartitionError;
use crate::gf::Subspace;

impl Partition {
    /// The partition `{V_i ∩ W : V_i ∩ W ≠ 0}` of `w`, expressed in the
    /// coordinates of `w`'s canonical basis.
    pub fn induce(&self, w: &Subspace) -> Result<Partition, PartitionError> {
        if w.ambient() != self.ambient() {
            return Err(crate::error::GfError::AmbientMismatch.into());
        }
        if w.is_zero() {
            return Err(PartitionError::ZeroSubspace);
        }
        let mut parts = Vec::new();
        for c in self.components() {
            let m = c.meet(w)?;
            if !m.is_zero() {
                parts.push(w.relative(&m).expect("meet lies in w"));
            }
        }
        Partition::new(self.ambient().with_dim(w.dim()), parts)
    }

    /// Replaces the component `victim` by the components of `sub`, a
    /// partition of `victim` given in its own canonical coordinates.
    pub fn refine(&self, victim: &Subspace, sub: &Partition) -> Result<Partition, PartitionError> {
        let idx = self
            .components()
            .iter()
            .position(|c| c == victim)
            .ok_or(PartitionError::NotAComponent)?;
        if sub.n() != victim.dim() || sub.ambient().field() != self.ambient().field() {
            return Err(PartitionError::InvalidSubPartition(format!(
                "expected a partition of V_{}({}), got V_{}({})",
                victim.dim(),
                self.q(),
                sub.n(),
                sub.q()
            )));
        }
        let report = sub.verify();
        if !report.valid {
            return Err(PartitionError::InvalidSubPartition(format!("{:?}", report.failure)));
        }
        let mut comps: Vec<Subspace> = self
            .components()
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != idx)
            .map(|(_, c)| c.clone())
            .collect();
        comps.extend(sub.components().iter().map(|s| victim.absolute(s)));
        Partition::new(self.ambient().clone(), comps)
    }
}
