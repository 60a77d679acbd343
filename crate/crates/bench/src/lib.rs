//! Shared inputs for the benchmarks.

use vspart_core::gf::field_of_order;
use vspart_core::Ambient;

/// `V_n(q)` for a prime power `q`.
pub fn ambient(q: u64, n: usize) -> Ambient {
    Ambient::new(field_of_order(q).expect("prime power"), n)
}

/// Spread parameters `(q, n, d)` from small to moderately large.
pub const SPREADS: [(u64, usize, usize); 4] = [(2, 4, 2), (2, 8, 4), (3, 6, 3), (2, 12, 4)];
