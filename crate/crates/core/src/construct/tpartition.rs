//! Partitions with a prescribed set of component dimensions.

use std::sync::Arc;

use serde::Serialize;

use super::{checked, lift, near_spread_over, spread_over};
use crate::error::ConstructError;
use crate::gf::{enumerate_subspaces, Ambient, FieldSpec, Subspace, DEFAULT_SUBSPACE_BUDGET};
use crate::partition::{Partition, TSpec};
use crate::search::{find_partition, Goal, SearchOptions, SearchOutcome, SEARCH_LIMIT};

/// Node budget for the search fallback.
pub const DEFAULT_BUILD_BUDGET: u64 = 50_000_000;

/// How a partition was assembled; sub-constructions appear as `steps`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub rule: &'static str,
    pub detail: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub steps: Vec<Provenance>,
}

impl Provenance {
    fn leaf(rule: &'static str, detail: String) -> Provenance {
        Provenance {
            rule,
            detail,
            steps: Vec::new(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct TPartition {
    pub partition: Partition,
    pub provenance: Provenance,
}

/// Builds a partition of `V_n(q)` whose set of component dimensions is
/// exactly `t`.
pub fn build_t_partition(q: u64, t: &TSpec, n: usize) -> Result<TPartition, ConstructError> {
    build_t_partition_with_budget(q, t, n, DEFAULT_BUILD_BUDGET)
}

pub fn build_t_partition_with_budget(q: u64, t: &TSpec, n: usize, budget: u64) -> Result<TPartition, ConstructError> {
    let field = crate::gf::field_of_order(q)?;
    if t.is_empty() || t.smallest() == 0 {
        return Err(ConstructError::BadDimensions("T must hold positive dimensions".into()));
    }
    if t.largest() > n || (t.largest() == n && t.len() > 1) {
        return Err(ConstructError::BadDimensions(format!(
            "every dimension in {t} must be below n = {n}, unless T = {{n}}"
        )));
    }
    Builder { field, budget }.build(t, n)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Least element of `t` dividing `m`.
fn divisor_in(t: &TSpec, m: usize) -> Option<usize> {
    t.dims().iter().copied().find(|&d| m.is_multiple_of(d))
}

struct Builder {
    field: Arc<FieldSpec>,
    budget: u64,
}

impl Builder {
    fn ambient(&self, n: usize) -> Ambient {
        Ambient::new(self.field.clone(), n)
    }

    fn finish(&self, t: &TSpec, partition: Partition, provenance: Provenance) -> Result<TPartition, ConstructError> {
        let partition = checked(partition)?;
        if !partition.is_t_partition(t) {
            return Err(ConstructError::Internal(format!(
                "{} produced dimensions {}, expected {t}",
                provenance.rule,
                partition.dim_image()
            )));
        }
        Ok(TPartition { partition, provenance })
    }

    fn build(&self, t: &TSpec, n: usize) -> Result<TPartition, ConstructError> {
        let dims = t.dims();
        let k = dims.len();
        let nk = t.largest();

        if k == 1 && n.is_multiple_of(nk) {
            let p = spread_over(&self.field, n, nk)?;
            return self.finish(t, p, Provenance::leaf("spread", format!("{nk}-spread of V_{n}")));
        }
        if k > 1 && n == 2 * nk {
            return if t.smallest() == 1 {
                self.refine_into_lines(t, n)
            } else {
                self.halves(t, n)
            };
        }
        if k > 1 && n > 2 * nk {
            if let Some(d) = divisor_in(t, gcd(n, 2 * nk)) {
                return self.gcd_composition(t, n, d);
            }
        }
        if k > 1 && n >= 3 * nk {
            if let Some(d) = divisor_in(t, n - 2 * nk) {
                return self.complement_composition(t, n, d);
            }
        }
        if k > 1 && 2 * nk > n {
            let nk1 = dims[k - 2];
            if n == nk + nk1 && dims[0] == 1 {
                return self.near_spread_refinement(t, n);
            }
            if n >= nk + 2 * nk1 && divisor_in(t, gcd(n, 2 * nk1)).is_some() {
                return self.lower_composition(t, n);
            }
        }
        Err(ConstructError::UncoveredCase(format!(
            "no construction for T = {t} in V_{n}({})",
            self.field.q()
        )))
    }

    /// `n = 2 max T` with `1 ∈ T`: build without lines, then split one
    /// component of the next smallest dimension into all of its lines.
    fn refine_into_lines(&self, t: &TSpec, n: usize) -> Result<TPartition, ConstructError> {
        let rest = t.without(1).expect("1 in T");
        let base = self.build(&rest, n)?;
        let n2 = rest.smallest();
        let victim = base
            .partition
            .components()
            .iter()
            .find(|c| c.dim() == n2)
            .expect("base uses every dimension of T")
            .clone();
        let local = self.ambient(n2);
        let lines = Partition::new(local.clone(), enumerate_subspaces(&local, 1, DEFAULT_SUBSPACE_BUDGET)?)?;
        let p = base.partition.refine(&victim, &lines)?;
        let prov = Provenance {
            rule: "refine-into-lines",
            detail: format!("split the first {n2}-dimensional component into its lines"),
            steps: vec![base.provenance],
        };
        self.finish(t, p, prov)
    }

    /// `n = 2 max T`, `min T >= 2`: a partition of `V` (dim `n_k`) by
    /// `T \ {n_k}` lifted across a second copy of `V`, or search when no such
    /// partition can be built.
    fn halves(&self, t: &TSpec, n: usize) -> Result<TPartition, ConstructError> {
        let nk = t.largest();
        let lower = t.without(nk).expect("|T| > 1");
        let attempt = self.build(&lower, nk);
        if let Ok(inner) = attempt {
            let l = lift(&inner.partition, nk)?;
            let target = l.partition.ambient().clone();
            let mut comps: Vec<Subspace> = inner.partition.components().iter().map(|c| c.embed(&target, 0)).collect();
            comps.extend(l.bar);
            comps.push(Subspace::coordinate(&target, nk..n));
            let prov = Provenance {
                rule: "lift-halves",
                detail: format!("{lower}-partition of V_{nk} lifted across V_{nk}"),
                steps: vec![inner.provenance],
            };
            return self.finish(t, Partition::new(target, comps)?, prov);
        }
        let reason = attempt.err().map(|e| e.to_string()).unwrap_or_default();
        let ambient = self.ambient(n);
        if ambient.size().is_none_or(|s| s > SEARCH_LIMIT) {
            return Err(ConstructError::UncoveredCase(format!(
                "T = {t} in V_{n}: no closed form ({reason}) and the space is too large to search"
            )));
        }
        let opts = SearchOptions {
            budget: self.budget,
            ..SearchOptions::default()
        };
        let report = find_partition(&ambient, &Goal::Dims(t.clone()), &opts).map_err(|e| ConstructError::Internal(e.to_string()))?;
        match report.outcome {
            SearchOutcome::Found(p) => {
                let prov = Provenance::leaf(
                    "search",
                    format!("exact-cover search after {} nodes ({reason})", report.nodes),
                );
                self.finish(t, p, prov)
            }
            SearchOutcome::BudgetExceeded => Err(ConstructError::BudgetExceeded),
            SearchOutcome::Exhausted => Err(ConstructError::Internal(format!(
                "search found no {t}-partition of V_{n}"
            ))),
        }
    }

    /// `n > 2 n_k`, `d ∈ T` dividing `gcd(n, 2 n_k)`: a `T`-partition of the
    /// first `2 n_k` coordinates, a `d`-spread of the rest, and the lift of a
    /// `d`-spread of the first part across the rest.
    fn gcd_composition(&self, t: &TSpec, n: usize, d: usize) -> Result<TPartition, ConstructError> {
        let a = 2 * t.largest();
        let inner = self.build(t, a)?;
        let tail = spread_over(&self.field, n - a, d)?;
        let head_spread = spread_over(&self.field, a, d)?;
        let l = lift(&head_spread, n - a)?;
        let target = l.partition.ambient().clone();
        let mut comps: Vec<Subspace> = inner.partition.components().iter().map(|c| c.embed(&target, 0)).collect();
        comps.extend(tail.components().iter().map(|c| c.embed(&target, a)));
        comps.extend(l.bar);
        let prov = Provenance {
            rule: "gcd-composition",
            detail: format!("V_{a} ⊕ V_{}, {d}-spreads lifted across the complement", n - a),
            steps: vec![inner.provenance],
        };
        self.finish(t, Partition::new(target, comps)?, prov)
    }

    /// `n >= 3 n_k`, `d ∈ T` dividing `n - 2 n_k`: a `T`-partition of the
    /// first `2 n_k` coordinates, lifted across a `d`-spread of the rest.
    fn complement_composition(&self, t: &TSpec, n: usize, d: usize) -> Result<TPartition, ConstructError> {
        let a = 2 * t.largest();
        let inner = self.build(t, a)?;
        let tail = spread_over(&self.field, n - a, d)?;
        let l = lift(&inner.partition, n - a)?;
        let target = l.partition.ambient().clone();
        let mut comps: Vec<Subspace> = inner.partition.components().iter().map(|c| c.embed(&target, 0)).collect();
        comps.extend(tail.components().iter().map(|c| c.embed(&target, a)));
        comps.extend(l.bar);
        let prov = Provenance {
            rule: "complement-composition",
            detail: format!("V_{a} ⊕ V_{}, {d}-spread on the complement", n - a),
            steps: vec![inner.provenance],
        };
        self.finish(t, Partition::new(target, comps)?, prov)
    }

    /// `n = n_k + n_{k-1} < 2 n_k`, `1 ∈ T`: a near-spread with one
    /// `n_k`-component, where the first `k - 2` components of dimension
    /// `n_{k-1}` are each split into a fixed `n_i`-subspace and the lines
    /// outside it.
    fn near_spread_refinement(&self, t: &TSpec, n: usize) -> Result<TPartition, ConstructError> {
        let dims = t.dims();
        let k = dims.len();
        let nk1 = dims[k - 2];
        let mut p = near_spread_over(&self.field, n, nk1)?;
        let victims: Vec<Subspace> = p.components().iter().filter(|c| c.dim() == nk1).take(k - 2).cloned().collect();
        if victims.len() < k - 2 || p.components().iter().filter(|c| c.dim() == nk1).count() <= k - 2 {
            return Err(ConstructError::Internal("near-spread has too few components to refine".into()));
        }
        let local = self.ambient(nk1);
        let lines = enumerate_subspaces(&local, 1, DEFAULT_SUBSPACE_BUDGET)?;
        for (victim, &ni) in victims.iter().zip(dims) {
            let w = Subspace::coordinate(&local, 0..ni);
            let mut comps: Vec<Subspace> = if ni == 1 {
                lines.clone()
            } else {
                lines.iter().filter(|l| !l.is_subspace_of(&w)).cloned().collect()
            };
            if ni > 1 {
                comps.push(w);
            }
            p = p.refine(victim, &Partition::new(local.clone(), comps)?)?;
        }
        let prov = Provenance {
            rule: "near-spread-refinement",
            detail: format!(
                "near-spread of type [({},{nk1}),(1,{})], components split: {}",
                (self.field.q() as u128).pow(t.largest() as u32),
                t.largest(),
                k - 2
            ),
            steps: Vec::new(),
        };
        self.finish(t, p, prov)
    }

    /// `n_k + 2 n_{k-1} <= n < 2 n_k`: a `T \ {n_k}`-partition of the first
    /// `n - n_k` coordinates, lifted across the last `n_k`, which become one
    /// component.
    fn lower_composition(&self, t: &TSpec, n: usize) -> Result<TPartition, ConstructError> {
        let nk = t.largest();
        let lower = t.without(nk).expect("|T| > 1");
        let a = n - nk;
        let inner = self.build(&lower, a).map_err(|e| {
            ConstructError::UncoveredCase(format!(
                "T = {t} in V_{n} needs a {lower}-partition of V_{a}, which failed: {e}"
            ))
        })?;
        let l = lift(&inner.partition, nk)?;
        let target = l.partition.ambient().clone();
        let mut comps: Vec<Subspace> = inner.partition.components().iter().map(|c| c.embed(&target, 0)).collect();
        comps.extend(l.bar);
        comps.push(Subspace::coordinate(&target, a..n));
        let prov = Provenance {
            rule: "lower-composition",
            detail: format!("{lower}-partition of V_{a} lifted across V_{nk}"),
            steps: vec![inner.provenance],
        };
        self.finish(t, Partition::new(target, comps)?, prov)
    }
}
