//! Partitions of the finite vector space V_n(q) into subspaces.
//!
//! The crate covers field arithmetic and canonical subspaces ([`gf`]),
//! the partition model with verification and bound reports ([`partition`]),
//! the type equation and its necessary conditions ([`dioph`]), explicit
//! constructions ([`construct`]), exact-cover search ([`search`]) and the
//! code and design correspondences ([`artifacts`]).

pub mod artifacts;
pub mod construct;
pub mod dioph;
pub mod error;
pub mod gf;
pub mod partition;
pub mod search;

pub use error::{ArtifactError, ConstructError, DiophError, FormatError, GfError, PartitionError, SearchError};
pub use gf::{make_field, Ambient, FieldSpec, Subspace, Vector};
pub use partition::{Partition, PartitionType, TSpec};
