//! The partition model: components, types, dimension sets, and the
//! operations that check or transform a partition.

mod bounds;
mod format;
mod ops;
mod verify;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::PartitionError;
use crate::gf::{Ambient, Subspace};

pub use bounds::{complement_witness, BoundReport, ComplementWitness};
pub use format::{read_partition, write_partition, ReadOutcome, FORMAT_NAME};
pub use verify::{Failure, VerificationReport, VerifyMethod, FULL_SCAN_LIMIT};

/// A set of subspaces of V_n(q) that is claimed to partition it.
///
/// Components are kept in canonical order, so equal partitions compare equal
/// and serialize identically. Construction does not verify; call
/// [`Partition::verify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    ambient: Ambient,
    components: Vec<Subspace>,
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.components.cmp(&other.components)
    }
}

impl Partition {
    pub fn new(ambient: Ambient, mut components: Vec<Subspace>) -> Result<Partition, PartitionError> {
        for c in &components {
            if c.ambient() != &ambient {
                return Err(crate::error::GfError::AmbientMismatch.into());
            }
        }
        components.sort();
        Ok(Partition { ambient, components })
    }

    /// The one-component partition `{V_n(q)}`.
    pub fn trivial(ambient: &Ambient) -> Partition {
        Partition {
            ambient: ambient.clone(),
            components: vec![Subspace::full(ambient)],
        }
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }
    pub fn components(&self) -> &[Subspace] {
        &self.components
    }
    pub fn into_components(self) -> Vec<Subspace> {
        self.components
    }
    pub fn r(&self) -> usize {
        self.components.len()
    }
    pub fn n(&self) -> usize {
        self.ambient.n()
    }
    pub fn q(&self) -> u32 {
        self.ambient.q()
    }
    pub fn is_trivial(&self) -> bool {
        self.components.len() == 1
    }

    /// Smallest component dimension, `t`.
    pub fn min_dim(&self) -> Option<usize> {
        self.components.iter().map(Subspace::dim).min()
    }

    pub fn type_of(&self) -> PartitionType {
        let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
        for c in &self.components {
            *counts.entry(c.dim()).or_default() += 1;
        }
        PartitionType {
            pairs: counts.into_iter().map(|(d, x)| (x, d)).collect(),
        }
    }

    /// The set of component dimensions.
    pub fn dim_image(&self) -> TSpec {
        TSpec {
            dims: self.type_of().pairs.iter().map(|&(_, d)| d).collect(),
        }
    }

    /// True when the component dimensions are exactly `t`.
    pub fn is_t_partition(&self, t: &TSpec) -> bool {
        self.dim_image() == *t
    }
}

/// A partition type `[(x_1,n_1),...,(x_k,n_k)]`: `x_i` components of
/// dimension `n_i`, with `n_1 < ... < n_k`. Zero multiplicities are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PartitionType {
    pairs: Vec<(u64, usize)>,
}

impl PartitionType {
    pub fn new(pairs: Vec<(u64, usize)>) -> Result<PartitionType, PartitionError> {
        if pairs.is_empty() {
            return Err(PartitionError::BadType("empty type".into()));
        }
        if pairs.iter().any(|&(_, d)| d == 0) {
            return Err(PartitionError::BadType("dimension 0".into()));
        }
        if pairs.windows(2).any(|w| w[0].1 >= w[1].1) {
            return Err(PartitionError::BadType("dimensions must be strictly increasing".into()));
        }
        Ok(PartitionType { pairs })
    }

    pub fn pairs(&self) -> &[(u64, usize)] {
        &self.pairs
    }
    pub fn dims(&self) -> Vec<usize> {
        self.pairs.iter().map(|&(_, d)| d).collect()
    }
    pub fn counts(&self) -> Vec<u64> {
        self.pairs.iter().map(|&(x, _)| x).collect()
    }
    /// Total number of components.
    pub fn r(&self) -> u64 {
        self.pairs.iter().map(|&(x, _)| x).sum()
    }

    /// Same type with zero-multiplicity entries dropped.
    pub fn normalized(&self) -> PartitionType {
        PartitionType {
            pairs: self.pairs.iter().copied().filter(|&(x, _)| x > 0).collect(),
        }
    }

    /// Dimensions with nonzero multiplicity.
    pub fn support(&self) -> TSpec {
        TSpec {
            dims: self.pairs.iter().filter(|&&(x, _)| x > 0).map(|&(_, d)| d).collect(),
        }
    }
}

impl fmt::Display for PartitionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, (x, d)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "({x},{d})")?;
        }
        write!(f, "]")
    }
}

/// Parses `COUNTxDIM` items separated by commas, e.g. `1x2,4x3`.
/// Items may be given in any order.
impl FromStr for PartitionType {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut pairs = Vec::new();
        for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (x, d) = item
                .split_once(['x', 'X'])
                .ok_or_else(|| PartitionError::BadType(format!("expected COUNTxDIM, got {item:?}")))?;
            let x: u64 = x.trim().parse().map_err(|_| PartitionError::BadType(format!("bad count in {item:?}")))?;
            let d: usize = d.trim().parse().map_err(|_| PartitionError::BadType(format!("bad dimension in {item:?}")))?;
            pairs.push((x, d));
        }
        pairs.sort_by_key(|&(_, d)| d);
        PartitionType::new(pairs)
    }
}

/// A set of component dimensions `T = {n_1 < ... < n_k}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TSpec {
    dims: Vec<usize>,
}

impl TSpec {
    pub fn new(mut dims: Vec<usize>) -> Result<TSpec, PartitionError> {
        dims.sort_unstable();
        dims.dedup();
        if dims.is_empty() || dims[0] == 0 {
            return Err(PartitionError::BadType("T must be a nonempty set of positive integers".into()));
        }
        Ok(TSpec { dims })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
    pub fn smallest(&self) -> usize {
        self.dims[0]
    }
    pub fn largest(&self) -> usize {
        *self.dims.last().unwrap()
    }
    pub fn len(&self) -> usize {
        self.dims.len()
    }
    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }
    pub fn contains(&self, d: usize) -> bool {
        self.dims.binary_search(&d).is_ok()
    }

    /// `T` with one element removed; `None` if that leaves it empty.
    pub fn without(&self, d: usize) -> Option<TSpec> {
        let dims: Vec<usize> = self.dims.iter().copied().filter(|&x| x != d).collect();
        (!dims.is_empty()).then_some(TSpec { dims })
    }
}

impl fmt::Display for TSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, d) in self.dims.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "}}")
    }
}

impl FromStr for TSpec {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let dims: Result<Vec<usize>, _> = s
            .trim_matches(|c| c == '{' || c == '}')
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>())
            .collect();
        TSpec::new(dims.map_err(|_| PartitionError::BadType(format!("bad dimension list {s:?}")))?)
    }
}
