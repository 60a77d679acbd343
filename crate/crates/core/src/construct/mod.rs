//! Explicit partition constructions.
//!
//! Every constructor returns a partition in canonical form. Outputs in spaces
//! small enough for a full cover scan are verified before being returned.

mod tpartition;

use crate::dioph::{annotate, TypeSolution};
use crate::error::ConstructError;
use crate::gf::{field_of_order, Ambient, ExtField, FieldSpec, Subspace};
use crate::partition::{Partition, PartitionType, FULL_SCAN_LIMIT};

use std::sync::Arc;

pub use tpartition::{build_t_partition, build_t_partition_with_budget, Provenance, TPartition, DEFAULT_BUILD_BUDGET};

/// Constructions refuse to materialize more components than this.
pub const MAX_COMPONENTS: u128 = 1 << 22;

fn guard(count: u128) -> Result<(), ConstructError> {
    if count > MAX_COMPONENTS {
        return Err(ConstructError::TooLarge {
            count,
            limit: MAX_COMPONENTS,
        });
    }
    Ok(())
}

fn qpow(q: u64, k: usize) -> u128 {
    (q as u128).saturating_pow(k as u32)
}

/// Verifies `p` when a full scan is cheap.
pub(crate) fn checked(p: Partition) -> Result<Partition, ConstructError> {
    if p.ambient().size().is_some_and(|s| s <= FULL_SCAN_LIMIT) {
        let report = p.verify();
        if !report.valid {
            return Err(ConstructError::Internal(format!("{:?}", report.failure)));
        }
    }
    Ok(p)
}

/// The `d`-dimensional subspaces spanned over GF(q) by `{x^j y}` for the
/// normalized nonzero `y` in GF(q^d)^{n/d}.
pub fn spread(q: u64, n: usize, d: usize) -> Result<Partition, ConstructError> {
    let field = field_of_order(q)?;
    spread_over(&field, n, d)
}

pub(crate) fn spread_over(field: &Arc<FieldSpec>, n: usize, d: usize) -> Result<Partition, ConstructError> {
    if d == 0 || n == 0 {
        return Err(ConstructError::BadDimensions("dimensions must be positive".into()));
    }
    if !n.is_multiple_of(d) {
        return Err(ConstructError::NotDivisible { n, d });
    }
    let ambient = Ambient::new(field.clone(), n);
    if d == n {
        return Ok(Partition::trivial(&ambient));
    }
    let q = field.q() as u64;
    guard((qpow(q, n) - 1) / (qpow(q, d) - 1))?;
    let ext = ExtField::new(field.clone(), d);
    let k = n / d;
    let order = ext.order();
    let mut comps = Vec::new();
    for lead in 0..k {
        let tail_len = k - 1 - lead;
        let tails = order.pow(tail_len as u32);
        for code in 0..tails {
            let mut y = vec![vec![0u32; d]; k];
            y[lead] = ext.one();
            let mut c = code;
            for entry in y.iter_mut().skip(lead + 1) {
                *entry = ext.from_code(c % order);
                c /= order;
            }
            let rows: Vec<Vec<u32>> = (0..d)
                .map(|j| {
                    let xj = ext.basis(j);
                    y.iter().flat_map(|e| ext.mul(&xj, e)).collect()
                })
                .collect();
            comps.push(Subspace::span(&ambient, &rows)?);
        }
    }
    checked(Partition::new(ambient, comps)?)
}

/// Result of lifting a partition `P` of `V` across a space `V'`.
#[derive(Clone, Debug)]
pub struct Lift {
    /// The `(q^{dim V'} - 1) |P|` new components.
    pub bar: Vec<Subspace>,
    /// `{V, V'} ∪ bar`, a partition of `V ⊕ V'` with `V` on the first
    /// coordinates.
    pub partition: Partition,
}

/// Lifts `p` across a space of dimension `m_prime`: identifying `V'` with
/// GF(q^{m'}), each component `U` yields `{(u, α φ_U(u))}` for every nonzero
/// `α`, where `φ_U` sends the canonical basis of `U` to `1, x, x^2, ...`.
pub fn lift(p: &Partition, m_prime: usize) -> Result<Lift, ConstructError> {
    let max_dim = p.components().iter().map(Subspace::dim).max().unwrap_or(0);
    if max_dim > m_prime || m_prime == 0 {
        return Err(ConstructError::DimensionTooSmall { max_dim, m: m_prime });
    }
    let field = p.ambient().field().clone();
    let q = field.q() as u64;
    let m = p.n();
    guard((qpow(q, m_prime) - 1) * p.r() as u128)?;
    let ext = ExtField::new(field.clone(), m_prime);
    let target = Ambient::new(field, m + m_prime);
    let mut bar = Vec::with_capacity(((ext.order() - 1) as usize) * p.r());
    for u in p.components() {
        for code in 1..ext.order() {
            let alpha = ext.from_code(code);
            let rows: Vec<Vec<u32>> = u
                .rows()
                .iter()
                .enumerate()
                .map(|(j, b)| {
                    let mut row = b.clone();
                    row.extend(ext.mul(&alpha, &ext.basis(j)));
                    row
                })
                .collect();
            bar.push(Subspace::span(&target, &rows)?);
        }
    }
    let mut comps = bar.clone();
    comps.push(Subspace::coordinate(&target, 0..m));
    comps.push(Subspace::coordinate(&target, m..m + m_prime));
    let partition = checked(Partition::new(target, comps)?)?;
    bar.sort();
    Ok(Lift { bar, partition })
}

/// A partition of type `[(q^{n-d}, d), (1, n-d)]`; the spread when `2d = n`.
pub fn near_spread(q: u64, n: usize, d: usize) -> Result<Partition, ConstructError> {
    let field = field_of_order(q)?;
    near_spread_over(&field, n, d)
}

pub(crate) fn near_spread_over(field: &Arc<FieldSpec>, n: usize, d: usize) -> Result<Partition, ConstructError> {
    if d == 0 || 2 * d > n {
        return Err(ConstructError::BadDimensions(format!("need 0 < d <= n/2, got d={d}, n={n}")));
    }
    if 2 * d == n {
        return spread_over(field, n, d);
    }
    let v = Partition::trivial(&Ambient::new(field.clone(), d));
    Ok(lift(&v, n - d)?.partition)
}

/// The `d`-spread of `V_{kd}(q)` restricted to the hyperplane where the last
/// coordinate vanishes, a partition of `V_{kd-1}(q)`.
pub fn hyperplane_section(q: u64, k: usize, d: usize) -> Result<Partition, ConstructError> {
    if d <= 1 || k == 0 {
        return Err(ConstructError::BadDimensions(format!("need d > 1 and k >= 1, got d={d}, k={k}")));
    }
    let n = k * d;
    let s = spread(q, n, d)?;
    let h = Subspace::coordinate(s.ambient(), 0..n - 1);
    checked(s.induce(&h)?)
}

/// Builds a partition of a requested type when it has one dimension, or two
/// dimensions summing to `n` with the larger used at most once.
pub fn typed_construct(q: u64, n: usize, ty: &PartitionType) -> Result<Partition, ConstructError> {
    let field = field_of_order(q)?;
    let sol = annotate(&TypeSolution::from_type(ty), q, n)
        .map_err(|e| ConstructError::UnsupportedType(format!("{ty} is not a type of V_{n}({q}): {e}")))?;
    let failures = sol.flags.as_ref().map(|f| f.failures()).unwrap_or_default();
    if !failures.is_empty() {
        return Err(ConstructError::UnsupportedType(format!(
            "{ty} violates necessary conditions: {}",
            failures.join(", ")
        )));
    }
    let pairs = ty.pairs();
    let built = match *pairs {
        [(_, d)] => spread_over(&field, n, d)?,
        [(_, n1), (0, n2)] if n1 + n2 == n => spread_over(&field, n, n1)?,
        [(_, n1), (1, n2)] if n1 + n2 == n => near_spread_over(&field, n, n1)?,
        _ => {
            return Err(ConstructError::UnsupportedType(format!(
                "no closed-form construction for {ty}; use search"
            )))
        }
    };
    if built.type_of() != ty.normalized() {
        return Err(ConstructError::UnsupportedType(format!(
            "closed-form construction gives {}, not {ty}",
            built.type_of()
        )));
    }
    Ok(built)
}
