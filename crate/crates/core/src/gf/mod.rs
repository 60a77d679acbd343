//! Arithmetic in GF(p^e) and canonical linear algebra over it.

mod arith;
mod enumerate;
mod extension;
mod field;
mod space;
mod subspace;

pub use arith::{is_prime, Arith};
pub use enumerate::{enumerate_subspaces, gaussian_binomial, DEFAULT_SUBSPACE_BUDGET};
pub use extension::ExtField;
pub use field::{field_of_order, make_field, prime_power, FieldSpec, MAX_FIELD_ORDER};
pub use space::{Ambient, Vector};
pub use subspace::{Subspace, MAX_ENUMERATION};
