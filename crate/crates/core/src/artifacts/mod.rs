//! The perfect mixed code and the resolvable design carried by a partition.

mod code;
mod design;

pub use code::{code_from_partition, verify_perfect, DistanceMethod, MixedCode, PerfectReport, MATERIALIZE_LIMIT, PAIRWISE_LIMIT};
pub use design::{
    design_from_partition, verify_design, ClassSummary, CosetDesign, DesignReport, PairMethod, DESIGN_LIMIT,
    EXPLICIT_PAIRS_LIMIT,
};
